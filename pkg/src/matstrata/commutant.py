"""Numerical solution spaces of the commutation constraints S J = J S and
Q Sigma = Sigma P.

The commutation operator is materialized as a dense n^2-by-n^2 matrix and
its null space read off a full singular value decomposition; this favors
transparency over scalability and is cheap at desk scale.  Structure
checks confirm what the closed forms predict: cross-eigenvalue blocks of a
commuting matrix vanish, same-eigenvalue blocks are upper-trapezoidal
Toeplitz, and the orthogonal pairs fixing a singular value matrix couple
blockwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .formulas import jordan_commutant_dim, qp_pair_dim
from .profiles import JordanStructure, SingularProfile
from .ranktools import (
    DEFAULT_TOLERANCE,
    InconclusiveRankError,
    RankDecision,
    decide_rank,
)

__all__ = [
    "CommutantBasis",
    "ToeplitzPattern",
    "ToeplitzStructureReport",
    "ToeplitzViolationError",
    "QPPairReport",
    "commutation_operator",
    "commutant_basis",
    "commutant_dimension",
    "commutant_structured_dim",
    "restricted_commutant_nullity",
    "skew_symmetric_basis",
    "skew_hermitian_basis",
    "verify_toeplitz_structure",
    "solve_qp_pair",
    "InconclusiveRankError",
]


def commutation_operator(J: np.ndarray, field: str = "auto") -> np.ndarray:
    """Matrix of S -> S J - J S acting on column-stacked vec(S).

    ``field`` is ``complex`` for complex J, ``real`` for real J; ``auto``
    infers it from the dtype.  Requesting the real field for a genuinely
    complex J is rejected.
    """
    J = np.asarray(J)
    if J.ndim != 2 or J.shape[0] != J.shape[1]:
        raise ValueError(f"J must be square, got shape {J.shape}")
    field = _resolve_field(J, field)
    J = J.astype(complex if field == "complex" else float)
    eye = np.eye(J.shape[0], dtype=J.dtype)
    return np.kron(J.T, eye) - np.kron(eye, J)


def _resolve_field(J, field):
    is_complex = np.iscomplexobj(J) and np.any(J.imag != 0)
    if field == "auto":
        return "complex" if is_complex else "real"
    if field not in ("real", "complex"):
        raise ValueError(f"unknown field {field!r}")
    if field == "real" and is_complex:
        raise ValueError("cannot treat a complex matrix over the real field")
    return field


@dataclass(frozen=True)
class CommutantBasis:
    """Orthonormal basis of the numerical null space of the commutation map.

    ``null_basis`` has shape (dimension, n, n): each slice commutes with J
    up to ``tolerance_used`` relative residual, and the slices are
    orthonormal under the Frobenius inner product.
    """

    operator_matrix: np.ndarray
    null_basis: np.ndarray
    dimension: int
    tolerance_used: float
    singular_values: np.ndarray
    gap_ratio: float


def commutant_basis(
    J: np.ndarray, field: str = "auto", tol: float = DEFAULT_TOLERANCE
) -> CommutantBasis:
    """Null space of S -> S J - J S, resolved with the indecision band."""
    J = np.asarray(J)
    n = J.shape[0]
    op = commutation_operator(J, field)
    _, s, vh = np.linalg.svd(op)
    decision = decide_rank(s, op.shape[1], tol)
    null_rows = vh[decision.rank :].conj()
    # vec was column-stacked, so undo it per slice.
    basis = np.transpose(null_rows.reshape(decision.nullity, n, n), (0, 2, 1))
    return CommutantBasis(
        operator_matrix=op,
        null_basis=basis,
        dimension=decision.nullity,
        tolerance_used=tol,
        singular_values=decision.singular_values,
        gap_ratio=decision.gap_ratio,
    )


def commutant_dimension(
    J: np.ndarray, field: str = "auto", tol: float = DEFAULT_TOLERANCE
) -> int:
    """Numerical nullity of the commutation map for J, over J's field."""
    return commutant_basis(J, field, tol).dimension


def commutant_structured_dim(js: JordanStructure) -> int:
    """Closed-form commutant dimension from the block structure alone."""
    return jordan_commutant_dim(js)


def skew_symmetric_basis(n: int) -> list[np.ndarray]:
    """Standard basis of real antisymmetric n-by-n matrices."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            x = np.zeros((n, n))
            x[i, j], x[j, i] = 1.0, -1.0
            out.append(x)
    return out


def skew_hermitian_basis(n: int) -> list[np.ndarray]:
    """Real basis of skew-Hermitian n-by-n matrices (n^2 elements)."""
    out = []
    for j in range(n):
        x = np.zeros((n, n), dtype=complex)
        x[j, j] = 1j
        out.append(x)
    for i in range(n):
        for j in range(i + 1, n):
            x = np.zeros((n, n), dtype=complex)
            x[i, j], x[j, i] = 1.0, -1.0
            out.append(x)
            x = np.zeros((n, n), dtype=complex)
            x[i, j], x[j, i] = 1j, 1j
            out.append(x)
    return out


def realify(M: np.ndarray) -> np.ndarray:
    """Real coordinate vector of a complex matrix: real parts then imaginary."""
    M = np.asarray(M)
    return np.concatenate([M.real.ravel(), M.imag.ravel()])


def restricted_commutant_nullity(
    L: np.ndarray, restriction: str, tol: float = DEFAULT_TOLERANCE
) -> RankDecision:
    """Real dimension of the commuting directions within a tangent restriction.

    ``skew-hermitian`` counts skew-Hermitian X with X L = L X (the tangent
    space at the identity of the unitary commuting group); ``skew-symmetric``
    does the same for the orthogonal group.  Group dimensions equal their
    tangent dimensions, which is what makes this the numerically stable way
    to count them.
    """
    L = np.asarray(L)
    n = L.shape[0]
    if restriction == "skew-hermitian":
        basis = skew_hermitian_basis(n)
        cols = [realify(x @ L - L @ x) for x in basis]
    elif restriction == "skew-symmetric":
        if np.iscomplexobj(L) and np.any(L.imag != 0):
            raise ValueError("skew-symmetric restriction needs a real matrix")
        basis = skew_symmetric_basis(n)
        Lr = L.real
        cols = [(x @ Lr - Lr @ x).ravel() for x in basis]
    else:
        raise ValueError(f"unknown restriction {restriction!r}")
    op = np.array(cols).T if cols else np.zeros((n * n, 0))
    s = np.linalg.svd(op, compute_uv=False) if min(op.shape) else np.zeros(0)
    return decide_rank(s, op.shape[1], tol)


@dataclass(frozen=True)
class ToeplitzPattern:
    """Constraint pattern of one same-eigenvalue block of a commuting matrix.

    For a block of shape (k_i, k_j) the entries with t < s + max(k_j - k_i, 0)
    (1-based) vanish and the rest is constant along diagonals, leaving
    min(k_i, k_j) free diagonals.
    """

    sizes: tuple[int, int]
    zero_mask: np.ndarray
    free_count: int

    @classmethod
    def for_sizes(cls, k_i: int, k_j: int) -> "ToeplitzPattern":
        shift = max(k_j - k_i, 0)
        s_idx, t_idx = np.indices((k_i, k_j))
        mask = (t_idx + 1) < (s_idx + 1) + shift
        return cls((k_i, k_j), mask, min(k_i, k_j))


class ToeplitzViolationError(Exception):
    """A commutant basis element breaks the predicted block pattern."""

    def __init__(self, condition, block_pair, entry, magnitude):
        super().__init__(
            f"{condition} violation of {magnitude:.3e} in block {block_pair}, "
            f"entry (s, t) = {entry} (1-based)"
        )
        self.condition = condition
        self.block_pair = block_pair
        self.entry = entry
        self.magnitude = magnitude


@dataclass(frozen=True)
class ToeplitzStructureReport:
    basis_size: int
    max_cross_violation: float
    max_toeplitz_violation: float
    max_mask_violation: float
    tolerance: float

    @property
    def max_violation(self) -> float:
        return max(
            self.max_cross_violation,
            self.max_toeplitz_violation,
            self.max_mask_violation,
        )


def _block_layout(js: JordanStructure):
    layout = []
    offset = 0
    for eig_index, sizes in enumerate(js.blocks):
        for size in sizes:
            layout.append((eig_index, size, offset))
            offset += size
    return layout


def verify_toeplitz_structure(
    J: np.ndarray,
    js: JordanStructure,
    basis: CommutantBasis,
    tol: float = DEFAULT_TOLERANCE,
) -> ToeplitzStructureReport:
    """Check every basis element against the predicted commutant block shape.

    Three conditions, each a set of linear functionals that must vanish on
    the whole null space: (a) blocks joining different eigenvalues are zero;
    (b) same-eigenvalue blocks are constant along diagonals; (c) their
    leading diagonals below the trapezoid shift are zero.  Returns the
    largest violation seen per condition, or raises with the offending block
    and entry when one exceeds ``tol``.
    """
    if J.shape[0] != js.n:
        raise ValueError("matrix and structure order disagree")
    layout = _block_layout(js)
    worst = {"cross-block": 0.0, "toeplitz": 0.0, "zero-mask": 0.0}
    locate = {}
    for element in basis.null_basis:
        for u, (eig_u, k_u, off_u) in enumerate(layout):
            for v, (eig_v, k_v, off_v) in enumerate(layout):
                block = element[off_u : off_u + k_u, off_v : off_v + k_v]
                if eig_u != eig_v:
                    _track(worst, locate, "cross-block", np.abs(block), (u, v))
                    continue
                if k_u > 1 and k_v > 1:
                    diffs = np.abs(block[:-1, :-1] - block[1:, 1:])
                    _track(worst, locate, "toeplitz", diffs, (u, v))
                pattern = ToeplitzPattern.for_sizes(k_u, k_v)
                if pattern.zero_mask.any():
                    masked = np.where(pattern.zero_mask, np.abs(block), 0.0)
                    _track(worst, locate, "zero-mask", masked, (u, v))
    for condition, magnitude in worst.items():
        if magnitude > tol:
            block_pair, entry = locate[condition]
            raise ToeplitzViolationError(condition, block_pair, entry, magnitude)
    return ToeplitzStructureReport(
        basis_size=basis.dimension,
        max_cross_violation=worst["cross-block"],
        max_toeplitz_violation=worst["toeplitz"],
        max_mask_violation=worst["zero-mask"],
        tolerance=tol,
    )


def _track(worst, locate, condition, magnitudes, block_pair):
    if magnitudes.size == 0:
        return
    peak = float(magnitudes.max())
    if peak > worst[condition]:
        worst[condition] = peak
        s, t = np.unravel_index(int(np.argmax(magnitudes)), magnitudes.shape)
        locate[condition] = (block_pair, (int(s) + 1, int(t) + 1))


@dataclass(frozen=True)
class QPPairReport:
    """Outcome of counting the orthogonal pairs (Q, P) with Q Sigma = Sigma P.

    The count is the nullity of the tangent map (X, Y) -> X Sigma - Sigma Y
    over skew pairs, compared against the closed form; the structure fields
    measure how far the null basis strays from the predicted coupled block
    diagonal shape.
    """

    dimension: int
    predicted_dimension: int
    max_offdiag_violation: float
    max_coupling_violation: float
    gap_ratio: float
    tolerance: float

    @property
    def matches_formula(self) -> bool:
        return self.dimension == self.predicted_dimension

    @property
    def structure_ok(self) -> bool:
        return (
            self.max_offdiag_violation <= self.tolerance
            and self.max_coupling_violation <= self.tolerance
        )

    @property
    def ok(self) -> bool:
        return self.matches_formula and self.structure_ok


def solve_qp_pair(
    Sigma: np.ndarray, profile: SingularProfile, tol: float = DEFAULT_TOLERANCE
) -> QPPairReport:
    """Dimension and structure of the orthogonal pairs fixing Sigma.

    Works at the tangent level: skew pairs (X, Y) with X Sigma = Sigma Y,
    whose solution dimension equals the group's.  The null basis must be
    block diagonal along the singular value groups, with the leading blocks
    of X and Y equal and the trailing (n-r) and (m-r) blocks free.
    """
    Sigma = np.asarray(Sigma, dtype=float)
    n, m = Sigma.shape
    if (n, m) != (profile.n, profile.m):
        raise ValueError(f"Sigma shape {Sigma.shape} does not match profile")
    x_basis = skew_symmetric_basis(n)
    y_basis = skew_symmetric_basis(m)
    cols = [(x @ Sigma).ravel() for x in x_basis]
    cols += [(-Sigma @ y).ravel() for y in y_basis]
    dof = len(cols)
    if dof == 0:
        return QPPairReport(0, qp_pair_dim(profile), 0.0, 0.0, np.inf, tol)
    op = np.array(cols).T
    _, s, vh = np.linalg.svd(op)
    decision = decide_rank(s, dof, tol)
    max_offdiag = 0.0
    max_coupling = 0.0
    x_count = len(x_basis)
    x_blocks = [k for k in (*profile.parts, n - profile.rank) if k]
    y_blocks = [k for k in (*profile.parts, m - profile.rank) if k]
    for row in vh[decision.rank :]:
        X = _assemble_skew(row[:x_count], n)
        Y = _assemble_skew(row[x_count:], m)
        max_offdiag = max(
            max_offdiag, _offdiag_magnitude(X, x_blocks), _offdiag_magnitude(Y, y_blocks)
        )
        pos = 0
        for k in profile.parts:
            sl = slice(pos, pos + k)
            max_coupling = max(max_coupling, float(np.abs(X[sl, sl] - Y[sl, sl]).max()))
            pos += k
    return QPPairReport(
        dimension=decision.nullity,
        predicted_dimension=qp_pair_dim(profile),
        max_offdiag_violation=max_offdiag,
        max_coupling_violation=max_coupling,
        gap_ratio=decision.gap_ratio,
        tolerance=tol,
    )


def _assemble_skew(params: np.ndarray, n: int) -> np.ndarray:
    X = np.zeros((n, n))
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            X[i, j] = params[idx]
            X[j, i] = -params[idx]
            idx += 1
    return X


def _offdiag_magnitude(M: np.ndarray, block_sizes) -> float:
    mask = np.ones(M.shape, dtype=bool)
    pos = 0
    for k in block_sizes:
        mask[pos : pos + k, pos : pos + k] = False
        pos += k
    return float(np.abs(M[mask]).max()) if mask.any() else 0.0
