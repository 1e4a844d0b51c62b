import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcrb.fock import (
    FockCutoff,
    OperatorMatrix,
    PhysicalConstants,
    all_operators,
    canonical_operators,
    commutator,
    displacement_factorization_check,
    dump_operator,
    hamiltonian_and_angular_momentum,
    ladder_operators,
    load_operator,
    mechanical_operators,
)


def interior(cutoff, M, margin=2):
    return np.asarray(M)[np.ix_(cutoff.interior_mask(margin), cutoff.interior_mask(margin))]


def test_cutoff_validation():
    with pytest.raises(ValueError):
        FockCutoff(1, 4)
    with pytest.raises(ValueError):
        FockCutoff(3, 2.5)
    assert FockCutoff(3, 4).dim == 12
    assert FockCutoff(3, 4).index(2, 1) == 9


def test_constants_lambda():
    c = PhysicalConstants(2.0)
    assert c.lam == 1.0
    assert PhysicalConstants(0.8).lam_sq * 0.8 == pytest.approx(2.0, abs=1e-15)
    with pytest.raises(ValueError):
        PhysicalConstants(0.0)


def test_ladder_elements():
    a, _, _, _ = ladder_operators(FockCutoff(2, 2))
    assert a.element((0, 0), (1, 0)) == 1
    a, _, _, _ = ladder_operators(FockCutoff(3, 2))
    assert a.element((1, 0), (2, 0)) == pytest.approx(np.sqrt(2), abs=0)


def test_ladder_commutator_exact_below_top_level():
    cut = FockCutoff(20, 20)
    a, ad, b, bd = ladder_operators(cut)
    i_a, _ = cut.levels()
    keep = i_a < 19
    c = commutator(a, ad)[np.ix_(keep, keep)]
    assert np.max(np.abs(c - np.eye(keep.sum()))) < 1e-13
    assert np.array_equal(np.asarray(ad), np.asarray(a).conj().T)
    assert np.array_equal(np.asarray(bd), np.asarray(b).conj().T)


def test_operator_matrix_is_read_only():
    op = ladder_operators(FockCutoff(2, 2))[0]
    with pytest.raises(ValueError):
        op.entries[0, 0] = 5
    with pytest.raises(ValueError):
        OperatorMatrix(np.eye(3), FockCutoff(2, 2))


def test_canonical_commutators(eb2):
    cut = FockCutoff(10, 10)
    p_x, p_y, x, y = canonical_operators(cut, eb2)
    eye = np.eye(cut.interior_mask().sum())
    assert np.max(np.abs(interior(cut, commutator(x, p_x)) - 1j * eye)) < 1e-13
    assert np.max(np.abs(interior(cut, commutator(y, p_y)) - 1j * eye)) < 1e-13
    assert np.max(np.abs(interior(cut, commutator(p_x, p_y)))) < 1e-14
    assert np.max(np.abs(interior(cut, commutator(x, y)))) < 1e-13


def test_canonical_pair_boundary_defect(eb1):
    # truncation leaves [p_x, p_y] = -(i / 2 lam^2)(C_a - C_b), C_m = [m, m_dag]
    cut = FockCutoff(5, 3)
    p_x, p_y, _, _ = canonical_operators(cut, eb1)
    a, ad, b, bd = ladder_operators(cut)
    expected = -(1j / (2 * eb1.lam_sq)) * (commutator(a, ad) - commutator(b, bd))
    assert np.max(np.abs(commutator(p_x, p_y) - expected)) < 1e-14


def test_vacuum_position_spread(eb2):
    cut = FockCutoff(10, 10)
    _, _, x, _ = canonical_operators(cut, eb2)
    assert (x @ x).element((0, 0), (0, 0)) == pytest.approx(eb2.lam_sq / 2, abs=1e-15)


def test_mechanical_momenta(eb2):
    cut = FockCutoff(12, 2)
    pi_x, pi_y = mechanical_operators(cut, eb2)
    _, _, b, bd = ladder_operators(cut)
    keep = cut.block_mask(11, 2)
    c = commutator(pi_x, pi_y)[np.ix_(keep, keep)]
    assert np.max(np.abs(c + 1j * eb2.eB * np.eye(keep.sum()))) < 1e-13
    assert np.max(np.abs(commutator(pi_x, b))) == 0.0
    assert np.max(np.abs(commutator(pi_y, bd))) == 0.0
    assert (pi_x @ pi_x).element((0, 0), (0, 0)) == pytest.approx(1 / eb2.lam_sq)


def test_mechanical_from_canonical(eb1):
    # pi_x = p_x - (eB/2) y, pi_y = p_y + (eB/2) x
    cut = FockCutoff(6, 6)
    p_x, p_y, x, y = canonical_operators(cut, eb1)
    pi_x, pi_y = mechanical_operators(cut, eb1)
    assert np.allclose(np.asarray(pi_x), np.asarray(p_x - 0.5 * eb1.eB * y), atol=1e-14)
    assert np.allclose(np.asarray(pi_y), np.asarray(p_y + 0.5 * eb1.eB * x), atol=1e-14)


def test_hamiltonian_and_angular_momentum(eb2):
    cut = FockCutoff(4, 4)
    H, L = hamiltonian_and_angular_momentum(cut, eb2, m=1.0)
    assert H.element((2, 1), (2, 1)) == 5.0
    assert L.element((2, 1), (2, 1)) == 1.0
    assert L.element((0, 0), (0, 0)) == 0.0
    assert H.element((0, 0), (0, 0)) == eb2.eB / 2
    with pytest.raises(ValueError):
        hamiltonian_and_angular_momentum(cut, eb2, m=0.0)


def test_hamiltonian_from_mechanical_momenta(eb1):
    cut = FockCutoff(8, 3)
    H, _ = hamiltonian_and_angular_momentum(cut, eb1, m=2.0)
    pi_x, pi_y = mechanical_operators(cut, eb1)
    kinetic = np.asarray(pi_x @ pi_x + pi_y @ pi_y) / (2 * 2.0)
    i_a, _ = cut.levels()
    keep = i_a < cut.n_a - 2
    diff = (kinetic - np.asarray(H))[np.ix_(keep, keep)]
    assert np.max(np.abs(diff)) < 1e-13


def test_all_operators_hermitian(eb1):
    ops = all_operators(FockCutoff(5, 4), eb1)
    for name in ("p_x", "p_y", "x", "y", "pi_x", "pi_y", "H", "L"):
        assert ops[name].is_hermitian(atol=0.0), name


def test_displacement_factorization(eb2):
    cut = FockCutoff(24, 24)
    assert displacement_factorization_check(0.0, 0.0, cut, eb2) < 1e-15
    assert displacement_factorization_check(0.1, 0.2, cut, eb2) < 1e-10
    assert displacement_factorization_check(0.3, 0.0, cut, eb2) < 1e-10


@settings(max_examples=10, deadline=None)
@given(
    a=st.integers(2, 6),
    b=st.integers(2, 6),
    eB=st.floats(0.2, 5.0),
)
def test_commutation_properties(a, b, eB):
    cut = FockCutoff(a, b)
    c = PhysicalConstants(eB)
    ops = all_operators(cut, c)
    mask = cut.block_mask(a - 1, b - 1)
    assert np.max(np.abs(commutator(ops["p_x"], ops["p_y"])[np.ix_(mask, mask)])) < 1e-13
    for mode_a in ("a", "a_dag", "pi_x", "pi_y"):
        for mode_b in ("b", "b_dag"):
            assert np.max(np.abs(commutator(ops[mode_a], ops[mode_b]))) == 0.0


def test_dump_round_trip(tmp_path, eb1):
    op = canonical_operators(FockCutoff(3, 2), eb1)[3]
    path = tmp_path / "y.txt"
    dump_operator(op, path)
    header = path.read_text().splitlines()[0]
    assert header == "6 3 2 y"
    back = load_operator(path)
    assert back.label == "y"
    assert np.array_equal(np.asarray(back), np.asarray(op))
