"""Numerical SLD, RLD, generalized-RLD and Z matrices for two-parameter
unitary shift models ``rho_theta = U(theta) rho U(theta)^dag``.

Everything is evaluated at ``theta = 0`` where ``d_i rho = -i [G_i, rho]``.
The logarithmic derivatives are solved in the eigenbasis of ``rho``:

* SLD: ``(L_S)_jk = 2 (d rho)_jk / (p_j + p_k)`` on the support,
* RLD: ``(L_R)_jk = (d rho)_jk / p_j`` (needs full rank).

Pure states have no RLD; the generalized RLD matrix is used instead.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .fock import FockCutoff, OperatorMatrix, PhysicalConstants, canonical_operators
from .fock import commutator, expm_hermitian, mechanical_operators

__all__ = [
    "RankDeficient",
    "SingularFisherMatrix",
    "OrderingCase",
    "GeneratorPair",
    "FisherBundle",
    "inv2",
    "eigen_spectrum",
    "derivative_states",
    "solve_sld",
    "solve_rld",
    "generalized_rld_pure",
    "generalized_rld_bound",
    "fisher_matrices",
    "gauge_invariance_check",
    "EPS_SUPPORT",
    "EPS_RANK",
]

EPS_SUPPORT = 1e-12
EPS_RANK = 1e-40


class RankDeficient(np.linalg.LinAlgError):
    """``rho`` is not invertible, so the RLD does not exist."""


class SingularFisherMatrix(np.linalg.LinAlgError):
    pass


class OrderingCase(str, enum.Enum):
    SLD_DOMINATES = "SLD_dominates"
    NO_ORDERING = "NoOrdering"

    def __str__(self):
        return self.value


def inv2(m) -> np.ndarray:
    """Closed-form inverse of a 2x2 matrix with a determinant guard."""
    m = np.asarray(m)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    scale = np.max(np.abs(m)) ** 2
    if not abs(det) > 1e-14 * scale:
        raise SingularFisherMatrix(f"determinant {det!r} too small for inversion")
    adj = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
    return adj / det


@dataclass(frozen=True)
class GeneratorPair:
    G1: OperatorMatrix
    G2: OperatorMatrix
    name: str = ""

    def __post_init__(self):
        for G in (self.G1, self.G2):
            A = np.asarray(G)
            if np.max(np.abs(A - A.conj().T)) > 1e-12 * max(1.0, np.max(np.abs(A))):
                raise ValueError(f"generator {getattr(G, 'label', '')!r} is not Hermitian")

    def __iter__(self):
        return iter((self.G1, self.G2))

    @classmethod
    def canonical(cls, cutoff: FockCutoff, constants: PhysicalConstants):
        p_x, p_y, _, _ = canonical_operators(cutoff, constants)
        return cls(p_x, p_y, "canonical")

    @classmethod
    def mechanical(cls, cutoff: FockCutoff, constants: PhysicalConstants):
        pi_x, pi_y = mechanical_operators(cutoff, constants)
        return cls(pi_x, pi_y, "mechanical")


@dataclass(frozen=True, eq=False)
class FisherBundle:
    """Fisher-type matrices of a two-parameter model and derived flags.

    For pure reference states ``g_r`` holds the generalized RLD matrix and
    ``generalized_rld`` is set; ``g_r_inv`` is then the bound matrix of the
    coherent model rather than a plain matrix inverse.
    """

    g_s: np.ndarray
    g_r: np.ndarray
    z: np.ndarray
    g_s_inv: np.ndarray
    g_r_inv: np.ndarray
    generalized_rld: bool
    d_invariant: bool
    ordering_case: OrderingCase

    @property
    def g_r_tilde(self):
        return self.g_r if self.generalized_rld else None

    def matrices(self) -> dict[str, np.ndarray]:
        return {
            "g_s": self.g_s,
            "g_r": self.g_r,
            "z": self.z,
            "g_s_inv": self.g_s_inv,
            "g_r_inv": self.g_r_inv,
        }

    def scaled(self, lam_sq: float) -> dict[str, np.ndarray]:
        """Matrices in natural units: Fisher matrices times ``lam^2``, inverses over it."""
        return {
            "g_s": self.g_s * lam_sq,
            "g_r": self.g_r * lam_sq,
            "z": self.z / lam_sq,
            "g_s_inv": self.g_s_inv / lam_sq,
            "g_r_inv": self.g_r_inv / lam_sq,
        }

    @classmethod
    def assemble(
        cls,
        g_s,
        g_r,
        z,
        *,
        generalized_rld: bool,
        g_s_inv=None,
        g_r_inv=None,
        d_tol: float = 1e-8,
        order_tol: float = 1e-9,
        d_invariant: bool | None = None,
        ordering_case: OrderingCase | None = None,
    ) -> "FisherBundle":
        g_s = np.real(np.asarray(g_s)).astype(float)
        g_r = np.asarray(g_r, dtype=complex)
        z = np.asarray(z, dtype=complex)
        g_s_inv = inv2(g_s) if g_s_inv is None else np.real(np.asarray(g_s_inv)).astype(float)
        if g_r_inv is None:
            g_r_inv = inv2(g_r)
        g_r_inv = np.asarray(g_r_inv, dtype=complex)
        if d_invariant is None:
            ref = max(np.max(np.abs(g_r_inv)), np.finfo(float).tiny)
            d_invariant = bool(np.max(np.abs(z - g_r_inv)) <= d_tol * ref)
        if ordering_case is None:
            diff = g_s_inv - g_r_inv
            diff = 0.5 * (diff + diff.conj().T)
            lowest = np.linalg.eigvalsh(diff)[0]
            ok = lowest >= -order_tol * np.max(np.abs(g_s_inv))
            ordering_case = OrderingCase.SLD_DOMINATES if ok else OrderingCase.NO_ORDERING
        return cls(g_s, g_r, z, g_s_inv, g_r_inv, generalized_rld, d_invariant, ordering_case)


def eigen_spectrum(rho):
    """Eigenvalues and eigenvectors of ``rho``.

    Matrices that are exactly diagonal are read off directly, so that
    geometric populations far below machine epsilon keep full relative
    precision.
    """
    spectrum = getattr(rho, "spectrum", None)
    if callable(spectrum):
        return spectrum()
    R = np.asarray(rho)
    off = R - np.diag(np.diag(R))
    if not np.any(off):
        return np.real(np.diag(R)).copy(), np.eye(R.shape[0])
    p, V = np.linalg.eigh(0.5 * (R + R.conj().T))
    return p, V


def _matrix(rho):
    R = getattr(rho, "rho", rho)
    return np.asarray(R)


def _cutoff_of(obj):
    for candidate in (obj, getattr(obj, "rho", None)):
        cutoff = getattr(candidate, "cutoff", None)
        if isinstance(cutoff, FockCutoff):
            return cutoff
    return None


def _as_operator(arr, like, label):
    cutoff = _cutoff_of(like)
    if cutoff is None:
        return np.asarray(arr)
    return OperatorMatrix(arr, cutoff, label)


def derivative_states(rho, gens):
    """``d_i rho = -i [G_i, rho]`` for both generators."""
    R = _matrix(rho)
    out = []
    for k, G in enumerate(gens, start=1):
        d = -1j * commutator(G, R)
        d = 0.5 * (d + d.conj().T)
        out.append(_as_operator(d, rho, f"d{k}rho"))
    return tuple(out)


def _to_eigenbasis(A, V):
    A = np.asarray(A)
    if V is None:
        return A
    return V.conj().T @ A @ V


def _from_eigenbasis(A, V):
    if V is None:
        return A
    return V @ A @ V.conj().T


def _support(p, eps_supp):
    pmax = np.max(p)
    denom = p[:, None] + p[None, :]
    return denom, denom > eps_supp * pmax


def _sld_eig(d, p, eps_supp):
    denom, keep = _support(p, eps_supp)
    out = np.zeros_like(d, dtype=complex)
    out[keep] = 2 * d[keep] / denom[keep]
    return out


def _check_rank(p, eps_rank):
    pmin, pmax = np.min(p), np.max(p)
    if not pmin > eps_rank * pmax:
        raise RankDeficient(
            f"smallest eigenvalue {pmin:.3e} <= {eps_rank:g} x largest {pmax:.3e}"
        )


def _rld_eig(d, p):
    return d / p[:, None]


def _is_diag_basis(V):
    return V is None or (V.shape[0] == V.shape[1] and np.array_equal(V, np.eye(V.shape[0])))


def solve_sld(rho, drho, eps_supp: float = EPS_SUPPORT, spectrum=None):
    """Hermitian ``L`` with ``drho = (rho L + L rho)/2`` on the support of ``rho``."""
    p, V = spectrum if spectrum is not None else eigen_spectrum(rho)
    V = None if _is_diag_basis(V) else V
    L = _sld_eig(_to_eigenbasis(drho, V), p, eps_supp)
    return _as_operator(_from_eigenbasis(L, V), rho, "L_S")


def solve_rld(rho, drho, eps_rank: float = EPS_RANK, spectrum=None):
    """``L = rho^{-1} drho``; raises :class:`RankDeficient` if ``rho`` is singular."""
    p, V = spectrum if spectrum is not None else eigen_spectrum(rho)
    _check_rank(p, eps_rank)
    V = None if _is_diag_basis(V) else V
    L = _rld_eig(_to_eigenbasis(drho, V), p)
    return _as_operator(_from_eigenbasis(L, V), rho, "L_R")


def generalized_rld_pure(psi, gens) -> np.ndarray:
    """``4 (<d_i psi|d_j psi> + <psi|d_i psi><psi|d_j psi>)`` with ``|d_i psi> = -i G_i |psi>``."""
    psi = np.asarray(psi).ravel()
    dpsi = [-1j * (np.asarray(G) @ psi) for G in gens]
    g = np.empty((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            g[i, j] = 4 * (
                np.vdot(dpsi[i], dpsi[j]) + np.vdot(psi, dpsi[i]) * np.vdot(psi, dpsi[j])
            )
    return g


def generalized_rld_bound(g_tilde) -> np.ndarray:
    """Bound matrix ``J^{-1} g~^T J^{-1}`` with ``J = Re g~`` (the SLD matrix).

    For a coherent model ``g~`` is rank deficient and has no inverse; this
    combination is what enters the Cramer-Rao inequality.  It reduces to
    ``g~^{-1}`` when ``g~`` is real.
    """
    g_tilde = np.asarray(g_tilde)
    J_inv = inv2(np.real(g_tilde))
    return J_inv @ g_tilde.T @ J_inv


def _trace_rho_ab(p, A, B):
    """``tr(rho A B)`` in the eigenbasis of ``rho``."""
    return np.sum(p[:, None] * A * B.T)


def fisher_matrices(
    rho,
    gens,
    *,
    eps_supp: float = EPS_SUPPORT,
    eps_rank: float = EPS_RANK,
    d_tol: float = 1e-8,
    order_tol: float = 1e-9,
    spectrum=None,
    drhos=None,
) -> FisherBundle:
    """Numerical :class:`FisherBundle` of the shift model generated by ``gens``.

    ``drhos`` may supply externally computed derivatives (e.g. finite
    differences); otherwise the commutator form is used.  ``spectrum``
    overrides the eigendecomposition of ``rho``.
    """
    p, V = spectrum if spectrum is not None else eigen_spectrum(rho)
    p = np.asarray(p, dtype=float)
    V = None if _is_diag_basis(V) else V

    if drhos is None:
        d = []
        for G in gens:
            Ge = _to_eigenbasis(G, V)
            d.append(-1j * Ge * (p[None, :] - p[:, None]))
    else:
        d = [_to_eigenbasis(x, V) for x in drhos]

    sld = [_sld_eig(x, p, eps_supp) for x in d]
    g_s = np.empty((2, 2))
    for i in range(2):
        for j in range(2):
            g_s[i, j] = np.real(_trace_rho_ab(p, sld[j], sld[i]))
    g_s = 0.5 * (g_s + g_s.T)
    g_s_inv = inv2(g_s)

    raised = [sum(g_s_inv[j, i] * sld[j] for j in range(2)) for i in range(2)]
    z = np.empty((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            z[i, j] = _trace_rho_ab(p, raised[j], raised[i].conj().T)

    try:
        _check_rank(p, eps_rank)
    except RankDeficient:
        support = p > eps_supp * np.max(p)
        if np.count_nonzero(support) != 1 or drhos is not None:
            raise
        k = int(np.argmax(p))
        psi = np.zeros(len(p), dtype=complex)
        psi[k] = 1.0
        if V is not None:
            psi = V @ psi
        g_r = generalized_rld_pure(psi, gens)
        return FisherBundle.assemble(
            g_s,
            g_r,
            z,
            generalized_rld=True,
            g_s_inv=g_s_inv,
            g_r_inv=generalized_rld_bound(g_r),
            d_tol=d_tol,
            order_tol=order_tol,
        )

    rld = [_rld_eig(x, p) for x in d]
    g_r = np.empty((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            g_r[i, j] = _trace_rho_ab(p, rld[j], rld[i].conj().T)
    g_r = 0.5 * (g_r + g_r.conj().T)
    return FisherBundle.assemble(
        g_s, g_r, z, generalized_rld=False, g_s_inv=g_s_inv, d_tol=d_tol, order_tol=order_tol
    )


def _max_dev(bundle_a: FisherBundle, bundle_b: FisherBundle) -> float:
    dev = 0.0
    for key, A in bundle_a.matrices().items():
        B = bundle_b.matrices()[key]
        dev = max(dev, float(np.max(np.abs(A - B))))
    return dev


def _compress(state, mask):
    rho = np.asarray(_matrix(state))[np.ix_(mask, mask)]
    return rho / np.real(np.trace(rho))


def gauge_invariance_check(
    cutoff: FockCutoff,
    constants: PhysicalConstants,
    state,
    trivial: bool = False,
    margin: int | None = None,
) -> float:
    """Largest change of the Model-2 bundle under the symmetric-to-Landau gauge map.

    With ``U = exp(-i eB (xy + yx)/4)`` the Landau-gauge mechanical momenta
    are ``(p_x, p_y + eB x) = U pi U^dag`` and the state maps to
    ``U rho U^dag``.  The Landau generators are pulled back by ``U`` on the
    full truncated space, where ``U`` is only accurate well below the
    cutoff.  Both bundles are therefore evaluated on the state compressed to
    the inner block ``levels < n - margin`` (default: a fifth of each
    cutoff) and renormalized.  Gauge independence holds for any state, so the
    compressed one is as good a witness as the original.  ``trivial=True``
    uses a zero gauge function and returns exactly 0.
    """
    if margin is None:
        inner = FockCutoff(max(2, round(cutoff.n_a / 5)), max(2, round(cutoff.n_b / 5)))
    else:
        inner = FockCutoff(cutoff.n_a - margin, cutoff.n_b - margin)
    block = cutoff.block_mask(inner.n_a, inner.n_b)
    rho = OperatorMatrix(_compress(state, block), inner, "rho_inner")
    spectrum = eigen_spectrum(rho)
    reference = fisher_matrices(
        rho, GeneratorPair.mechanical(inner, constants), spectrum=spectrum
    )
    if trivial:
        gens = GeneratorPair.mechanical(inner, constants)
    else:
        p_x, p_y, x, y = canonical_operators(cutoff, constants)
        xy = 0.5 * (np.asarray(x @ y) + np.asarray(y @ x))
        U = expm_hermitian(xy, constants.eB / 2)
        pulled = []
        for G in (p_x, p_y + constants.eB * x):
            back = (U.conj().T @ np.asarray(G) @ U)[np.ix_(block, block)]
            pulled.append(OperatorMatrix(0.5 * (back + back.conj().T), inner))
        gens = GeneratorPair(pulled[0], pulled[1], "landau")
    transformed = fisher_matrices(rho, gens, spectrum=spectrum)
    return _max_dev(reference, transformed)
