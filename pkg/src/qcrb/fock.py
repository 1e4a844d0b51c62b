"""Operators on a truncated two-mode bosonic Fock space.

The electron in a uniform field (symmetric gauge) is described by two
independent oscillators ``a`` and ``b``.  All operators live on the product
space ``|i_a> (x) |i_b>`` with the basis ordered mode-a major::

    index = i_a * n_b + i_b

Truncation corrupts only the highest retained level of each mode, so checks
of commutation relations are made on an interior block.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "FockCutoff",
    "OperatorMatrix",
    "PhysicalConstants",
    "ladder_operators",
    "canonical_operators",
    "mechanical_operators",
    "hamiltonian_and_angular_momentum",
    "commutator",
    "expm_hermitian",
    "displacement_factorization_check",
    "all_operators",
    "dump_operator",
    "load_operator",
]


@dataclass(frozen=True)
class FockCutoff:
    """Number of retained Fock levels per mode (levels ``0 .. n-1``)."""

    n_a: int
    n_b: int

    def __post_init__(self):
        for name in ("n_a", "n_b"):
            value = getattr(self, name)
            if int(value) != value or value < 2:
                raise ValueError(f"{name} must be an integer >= 2, got {value!r}")
            object.__setattr__(self, name, int(value))

    @property
    def dim(self) -> int:
        return self.n_a * self.n_b

    def index(self, i_a: int, i_b: int) -> int:
        return i_a * self.n_b + i_b

    def levels(self) -> tuple[np.ndarray, np.ndarray]:
        """Occupation numbers ``(i_a, i_b)`` of every basis index."""
        i_a, i_b = np.divmod(np.arange(self.dim), self.n_b)
        return i_a, i_b

    def block_mask(self, max_a: int, max_b: int) -> np.ndarray:
        """Boolean mask of indices with ``i_a < max_a`` and ``i_b < max_b``."""
        i_a, i_b = self.levels()
        return (i_a < max_a) & (i_b < max_b)

    def interior_mask(self, margin: int = 2) -> np.ndarray:
        """Indices at least ``margin`` levels below each cutoff."""
        return self.block_mask(self.n_a - margin, self.n_b - margin)

    def bumped(self, extra: int) -> "FockCutoff":
        return FockCutoff(self.n_a + extra, self.n_b + extra)


@dataclass(frozen=True)
class PhysicalConstants:
    """Field strength in natural units; ``lam`` is the LLL length sqrt(2/eB)."""

    eB: float = 2.0

    def __post_init__(self):
        if not self.eB > 0:
            raise ValueError(f"eB must be positive, got {self.eB!r}")

    @property
    def lam_sq(self) -> float:
        return 2.0 / self.eB

    @property
    def lam(self) -> float:
        return float(np.sqrt(self.lam_sq))


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense complex matrix on the truncated two-mode basis.

    The underlying array is made read-only; arithmetic returns new objects.
    """

    entries: np.ndarray
    cutoff: FockCutoff
    label: str = ""

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex)
        if arr.shape != (self.cutoff.dim, self.cutoff.dim):
            raise ValueError(
                f"matrix shape {arr.shape} does not match cutoff dim {self.cutoff.dim}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.cutoff.dim

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)

    def _wrap(self, arr, label=""):
        return OperatorMatrix(arr, self.cutoff, label)

    @staticmethod
    def _raw(other):
        return other.entries if isinstance(other, OperatorMatrix) else other

    def __add__(self, other):
        return self._wrap(self.entries + self._raw(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.entries - self._raw(other))

    def __rsub__(self, other):
        return self._wrap(self._raw(other) - self.entries)

    def __neg__(self):
        return self._wrap(-self.entries)

    def __mul__(self, scalar):
        if isinstance(scalar, OperatorMatrix):
            raise TypeError("use @ for operator products")
        return self._wrap(self.entries * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self._wrap(self.entries / scalar)

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return self._wrap(self.entries @ other.entries)
        return self.entries @ other

    def dag(self) -> "OperatorMatrix":
        return self._wrap(self.entries.conj().T, f"{self.label}^dag" if self.label else "")

    def with_label(self, label: str) -> "OperatorMatrix":
        return OperatorMatrix(self.entries, self.cutoff, label)

    def element(self, bra: tuple[int, int], ket: tuple[int, int]) -> complex:
        """Matrix element ``<bra| O |ket>`` for occupation pairs ``(i_a, i_b)``."""
        return complex(self.entries[self.cutoff.index(*bra), self.cutoff.index(*ket)])

    def restrict(self, mask: np.ndarray) -> np.ndarray:
        return self.entries[np.ix_(mask, mask)]

    def is_hermitian(self, atol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= atol)


def _single_mode_lowering(n: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), k=1)


def ladder_operators(cutoff: FockCutoff):
    """Return ``(a, a_dag, b, b_dag)`` as two-mode operators."""
    eye_a = np.eye(cutoff.n_a)
    eye_b = np.eye(cutoff.n_b)
    a = np.kron(_single_mode_lowering(cutoff.n_a), eye_b)
    b = np.kron(eye_a, _single_mode_lowering(cutoff.n_b))
    return (
        OperatorMatrix(a, cutoff, "a"),
        OperatorMatrix(a.T, cutoff, "a_dag"),
        OperatorMatrix(b, cutoff, "b"),
        OperatorMatrix(b.T, cutoff, "b_dag"),
    )


def canonical_operators(cutoff: FockCutoff, constants: PhysicalConstants):
    """Canonical momenta and positions ``(p_x, p_y, x, y)``."""
    a, ad, b, bd = ladder_operators(cutoff)
    lam = constants.lam
    p_x = (1j / (2 * lam)) * ((ad - a) + (bd - b))
    p_y = (1 / (2 * lam)) * ((ad + a) - (bd + b))
    x = (lam / 2) * ((ad + a) + (bd + b))
    y = (-1j * lam / 2) * ((ad - a) - (bd - b))
    return (
        p_x.with_label("p_x"),
        p_y.with_label("p_y"),
        x.with_label("x"),
        y.with_label("y"),
    )


def mechanical_operators(cutoff: FockCutoff, constants: PhysicalConstants):
    """Mechanical momenta ``(pi_x, pi_y)``; they act on mode a only."""
    a, ad, _, _ = ladder_operators(cutoff)
    lam = constants.lam
    pi_x = (1j / lam) * (ad - a)
    pi_y = (1 / lam) * (ad + a)
    return pi_x.with_label("pi_x"), pi_y.with_label("pi_y")


def hamiltonian_and_angular_momentum(
    cutoff: FockCutoff, constants: PhysicalConstants, m: float = 1.0
):
    """``H = omega (n_a + 1/2)`` with ``omega = eB/m`` and ``L = n_a - n_b``."""
    if not m > 0:
        raise ValueError(f"mass must be positive, got {m!r}")
    omega = constants.eB / m
    i_a, i_b = cutoff.levels()
    H = OperatorMatrix(np.diag(omega * (i_a + 0.5)), cutoff, "H")
    L = OperatorMatrix(np.diag((i_a - i_b).astype(float)), cutoff, "L")
    return H, L


def all_operators(cutoff: FockCutoff, constants: PhysicalConstants, m: float = 1.0):
    """Every named operator, keyed by label."""
    ops = [*ladder_operators(cutoff), *canonical_operators(cutoff, constants)]
    ops += [*mechanical_operators(cutoff, constants)]
    ops += [*hamiltonian_and_angular_momentum(cutoff, constants, m)]
    return {op.label: op for op in ops}


def commutator(A, B) -> np.ndarray:
    A = np.asarray(A)
    B = np.asarray(B)
    return A @ B - B @ A


def expm_hermitian(K, t: float = 1.0) -> np.ndarray:
    """``exp(-i t K)`` for Hermitian ``K`` via its eigendecomposition."""
    K = np.asarray(K)
    w, V = np.linalg.eigh(K)
    return (V * np.exp(-1j * t * w)) @ V.conj().T


def displacement_factorization_check(
    theta1: float,
    theta2: float,
    cutoff: FockCutoff,
    constants: PhysicalConstants,
) -> float:
    """Compare ``exp(-i th1 p_x) exp(-i th2 p_y)`` with the product of
    single-mode displacements ``D_a(xi) D_b(xi*)``, ``xi = (th1 - i th2)/(2 lam)``.

    Returns the largest entrywise deviation on the block ``i < n/2`` of each
    mode.  Truncation errors stay small there as long as ``|xi|^2`` is well
    below the cutoffs.
    """
    p_x, p_y, _, _ = canonical_operators(cutoff, constants)
    a, ad, b, bd = ladder_operators(cutoff)
    lhs = expm_hermitian(p_x, theta1) @ expm_hermitian(p_y, theta2)

    xi = (theta1 - 1j * theta2) / (2 * constants.lam)
    # exp(A) with A anti-Hermitian equals exp(-i K) for K = i A
    gen_a = 1j * (xi * ad - np.conj(xi) * a)
    gen_b = 1j * (np.conj(xi) * bd - xi * b)
    rhs = expm_hermitian(gen_a) @ expm_hermitian(gen_b)

    mask = cutoff.block_mask(cutoff.n_a // 2, cutoff.n_b // 2)
    diff = (lhs - rhs)[np.ix_(mask, mask)]
    return float(np.max(np.abs(diff)))


def dump_operator(op: OperatorMatrix, path) -> None:
    """Write ``op`` as ``dim n_a n_b label`` followed by ``row col re im`` lines."""
    path = Path(path)
    label = op.label or "unnamed"
    lines = [f"{op.dim} {op.cutoff.n_a} {op.cutoff.n_b} {label}"]
    rows, cols = np.indices((op.dim, op.dim))
    for r, c, v in zip(rows.ravel(), cols.ravel(), op.entries.ravel()):
        lines.append(f"{r} {c} {v.real:.17g} {v.imag:.17g}")
    path.write_text("\n".join(lines) + "\n")


def load_operator(path) -> OperatorMatrix:
    with open(path) as fh:
        header = fh.readline().split(maxsplit=3)
        dim, n_a, n_b = (int(v) for v in header[:3])
        label = header[3].strip() if len(header) > 3 else ""
        cutoff = FockCutoff(n_a, n_b)
        if cutoff.dim != dim:
            raise ValueError(f"header dim {dim} inconsistent with cutoff {n_a}x{n_b}")
        data = np.loadtxt(fh, ndmin=2)
    if data.shape != (dim * dim, 4):
        raise ValueError(f"expected {dim * dim} entries, found {data.shape[0]}")
    mat = np.zeros((dim, dim), dtype=complex)
    mat[data[:, 0].astype(int), data[:, 1].astype(int)] = data[:, 2] + 1j * data[:, 3]
    return OperatorMatrix(mat, cutoff, label)
