import json
import subprocess
import sys

import pytest

from qcrb import __version__
from qcrb.cli import main
from qcrb.verify import run_oracle_suite


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def cplx(pair):
    return complex(pair[0], pair[1])


class TestFisher:
    def test_coherent_bound(self, capsys):
        code, out, _ = run(capsys, "fisher", "--generators", "mechanical", "--state", "pure", "--eB", "1")
        assert code == 0
        doc = json.loads(out)
        g = [[cplx(v) for v in row] for row in doc["g_r_inv"]]
        assert g == [[0.5, 0.5j], [-0.5j, 0.5]]
        assert doc["generalized_rld"] is True
        assert doc["ordering_case"] == "NoOrdering"

    def test_default_eB_is_lambda_one(self, capsys):
        _, out, _ = run(capsys, "fisher", "--generators", "mechanical", "--state", "pure")
        doc = json.loads(out)
        assert doc["lam_sq"] == 1.0
        assert cplx(doc["g_r_inv"][0][1]) == 0.25j

    def test_thermal_fig2(self, capsys):
        code, out, _ = run(
            capsys,
            "fisher",
            "--generators", "canonical",
            "--state", "thermal",
            "--beta-omega", "1.0986123",
            "--L0", "1",
            "--eB", "1",
        )
        assert code == 0
        doc = json.loads(out)
        assert cplx(doc["g_s_inv"][0][0]).real == pytest.approx(3.75, abs=1e-6)
        assert cplx(doc["g_s_inv"][1][1]).real == pytest.approx(3.75, abs=1e-6)
        assert doc["d_invariant"] is False

    def test_verify_flag(self, capsys):
        code, out, _ = run(
            capsys, "fisher", "--generators", "mechanical", "--state", "pure", "--verify", "--cutoff", "8"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["cutoff"] == [8, 8]
        assert max(doc["max_rel_err"].values()) < 1e-12

    def test_pure_with_L0_is_config_error(self, capsys):
        code, _, err = run(capsys, "fisher", "--generators", "canonical", "--state", "pure", "--L0", "1")
        assert code == 2 and "qcrb:" in err

    def test_config_file_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"generators": "canonical", "state": "thermal", "beta_omega": 1.0, "L0": 0.0, "eB": 1.0}))
        _, out, _ = run(capsys, "fisher", "--config", str(cfg))
        base = json.loads(out)
        assert base["params"]["mu"] == pytest.approx(0.5)
        _, out, _ = run(capsys, "fisher", "--config", str(cfg), "--L0", "1")
        assert json.loads(out)["params"]["L0"] == 1.0
        cfg.write_text(json.dumps({"generators": "canonical", "colour": 3}))
        assert run(capsys, "fisher", "--config", str(cfg))[0] == 2

    def test_missing_config_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "fisher", "--config", str(tmp_path / "absent.json"))
        assert code in (2, 5)

    def test_cutoff_too_small_exit(self, capsys):
        code, _, _ = run(
            capsys,
            "fisher",
            "--generators", "canonical",
            "--state", "thermal",
            "--beta-omega", "1.0986123",
            "--L0", "1",
            "--verify",
            "--cutoff", "6",
        )
        assert code == 3


class TestChempot:
    def test_symmetric(self, capsys):
        code, out, _ = run(capsys, "chempot", "--beta-omega", "2", "--L0", "0")
        assert code == 0 and out.strip() == "1.0"

    def test_negative_branch(self, capsys):
        _, out, _ = run(capsys, "chempot", "--beta-omega", "1", "--L0", "-1")
        # 0.37988549...: matches 0.3798854 to 7 decimals by truncation
        assert abs(float(out) - 0.3798854) < 1e-7

    def test_sweep_rows(self, capsys):
        code, out, _ = run(capsys, "chempot", "--sweep", "0.1,1,5:-4:4:0.05")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == f"# qcrb {__version__}" and lines[1] == "beta_omega,L0,mu"
        assert len(lines) - 2 == 483

    def test_bad_inputs(self, capsys):
        assert run(capsys, "chempot", "--beta-omega", "0", "--L0", "1")[0] == 2
        assert run(capsys, "chempot", "--L0", "1")[0] == 2
        assert run(capsys, "chempot", "--sweep", "1:0")[0] == 2


class TestRegion:
    def test_coherent_samples(self, capsys):
        code, out, _ = run(
            capsys,
            "region",
            "--generators", "mechanical",
            "--state", "pure",
            "--eB", "1",
            "--raw-units",
            "--v11-max", "2.5",
            "--samples", "3",
        )
        assert code == 0
        assert "region_rld,RLDHyperbola,1,1" in out.splitlines()

    def test_summary_output(self, capsys, tmp_path):
        target = tmp_path / "r.csv"
        code, out, _ = run(
            capsys,
            "region",
            "--generators", "canonical",
            "--state", "thermal",
            "--beta-omega", "1.0986122886681098",
            "--L0", "1",
            "--eB", "1",
            "--raw-units",
            "--output", str(target),
        )
        assert code == 0 and target.exists()
        summary = json.loads(out)
        assert summary["intersections"][0] == pytest.approx([4.5, 3.75], abs=1e-10)
        assert summary["delta_v_rs"] == pytest.approx(0.75, abs=1e-10)

    def test_invalid_window(self, capsys):
        code, _, _ = run(
            capsys, "region", "--generators", "mechanical", "--state", "pure", "--v11-max", "0.1"
        )
        assert code == 2


class TestFigure:
    @pytest.mark.parametrize("number", [1, 2, 3, 4])
    def test_writes_files(self, capsys, tmp_path, number):
        code, out, _ = run(capsys, "figure", str(number), "--output-dir", str(tmp_path))
        assert code == 0
        assert (tmp_path / f"figure-{number}.csv").exists()
        assert (tmp_path / f"figure-{number}.svg").exists()
        assert len(out.splitlines()) == 2

    def test_byte_identical(self, capsys, tmp_path):
        for sub in ("a", "b"):
            run(capsys, "figure", "3", "--output-dir", str(tmp_path / sub), "--no-svg")
        assert (tmp_path / "a" / "figure-3.csv").read_bytes() == (tmp_path / "b" / "figure-3.csv").read_bytes()

    def test_fig4_lines(self, capsys, tmp_path):
        run(capsys, "figure", "4", "--output-dir", str(tmp_path), "--eB", "1", "--raw-units")
        text = (tmp_path / "figure-4.csv").read_text()
        assert "model1_sld_vertical,SLDLines,1,1" in text
        assert "model2_sld_vertical,SLDLines,0.5,0.5" in text
        assert "model2_rld,RLDHyperbola,1,1" in text

    def test_unwritable_dir(self, capsys, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        code, _, _ = run(capsys, "figure", "1", "--output-dir", str(blocker / "sub"))
        assert code == 5


@pytest.fixture(scope="module")
def oracle_tables():
    return run_oracle_suite(), run_oracle_suite(cutoff_bump=8)


class TestVerify:
    def test_default_passes(self, capsys):
        code, out, _ = run(capsys, "verify")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "scenario,matrix,max_rel_err,tolerance,pass"
        assert len(lines) == 1 + 4 * 5
        assert all(line.endswith(",pass") for line in lines[1:])

    def test_bump_reduces_thermal_errors(self, oracle_tables):
        base, bumped = oracle_tables
        for a, b in zip(base, bumped):
            assert (a.scenario, a.matrix) == (b.scenario, b.matrix)
            if a.scenario.endswith("thermal"):
                assert b.max_rel_err < a.max_rel_err, (a.scenario, a.matrix)
            else:
                assert b.max_rel_err <= a.max_rel_err + 1e-14

    def test_unattainable_tolerance(self, capsys):
        code, out, _ = run(capsys, "verify", "--tolerance", "1e-15")
        assert code == 4
        assert ",fail" in out

    def test_negative_bump(self, capsys):
        assert run(capsys, "verify", "--cutoff-bump", "-1")[0] == 2


class TestDumpOperators:
    def test_dump(self, capsys, tmp_path):
        code, out, _ = run(capsys, "dump-operators", "--cutoff", "3,2", "--operators", "a,x", "--output-dir", str(tmp_path))
        assert code == 0
        assert (tmp_path / "a.txt").read_text().splitlines()[0] == "6 3 2 a"
        assert len(out.splitlines()) == 2

    def test_unknown_operator(self, capsys, tmp_path):
        assert run(capsys, "dump-operators", "--operators", "q", "--output-dir", str(tmp_path))[0] == 2

    def test_env_cutoff(self, capsys, monkeypatch):
        monkeypatch.setenv("QCRB_DEFAULT_CUTOFF", "6,4")
        _, out, _ = run(capsys, "fisher", "--generators", "canonical", "--state", "pure", "--verify")
        assert json.loads(out)["cutoff"] == [6, 4]


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "qcrb", "chempot", "--beta-omega", "2", "--L0", "0"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0 and res.stdout.strip() == "1.0"
    res = subprocess.run([sys.executable, "-m", "qcrb", "--version"], capture_output=True, text=True)
    assert res.stdout.strip() == f"qcrb {__version__}"
