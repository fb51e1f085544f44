"""Tangent-space rank oracle for every dimension formula.

Each matrix class is a parametrized set: transforms act on a base matrix
whose multiplicities are prescribed, and the values themselves may move.
The oracle assembles the differential of that parametrization at a generic
base point and counts its numerical rank, which must equal the closed-form
stratum dimension.  Differentials are assembled in the frame where the
base transform is the identity; rank is invariant under the dropped outer
conjugation, and :func:`conjugation_consistency` validates exactly that
shortcut.

Complex-valued images are realified (two coordinates per entry), so ranks
are always real ranks and complex formula values are doubled before
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import factory
from .commutant import realify, skew_hermitian_basis, skew_symmetric_basis
from .formulas import MatrixClass, dimension_report, resolve_alias
from .profiles import JordanStructure, MultiplicityProfile, SingularProfile
from .ranktools import (
    DEFAULT_GAP_REQUIREMENT,
    DEFAULT_TOLERANCE,
    InconclusiveRankError,
    decide_rank,
)

_MEMBERSHIP_TOL = 1e-10

_SPECTRUM_KIND = {
    MatrixClass.DIAGONALIZABLE_COMPLEX: "complex",
    MatrixClass.NORMAL: "complex",
    MatrixClass.HERMITIAN: "real",
    MatrixClass.SKEW_HERMITIAN: "real",
    MatrixClass.UNITARY: "unimodular",
    MatrixClass.REAL_SYMMETRIC: "real",
    MatrixClass.JORDAN: "complex",
    MatrixClass.SINGULAR_VALUES: "positive-decreasing",
}


@dataclass(frozen=True)
class RankProbe:
    """One assembled differential and its resolved rank.

    ``ambient_dim`` counts the real coordinates the image lives in (the
    rows), ``parameter_dim`` the real parameters (the columns).  A probe is
    conclusive only when the kept/dropped singular value gap is at least the
    required ratio; otherwise assembly raises instead of returning."""

    matrix_class: MatrixClass
    parameter_dim: int
    ambient_dim: int
    differential: np.ndarray
    singular_values: np.ndarray
    tolerance: float
    rank: int
    gap_ratio: float


def predicted_rank(matrix_class: MatrixClass, data, free_values: bool = True) -> int:
    """Stratum dimension the probe must reproduce, as a real rank."""
    report = dimension_report(matrix_class, data)
    if report.field_kind == "complex":
        report = report.realified()
    if free_values:
        return report.stratum_dim
    return report.stratum_dim - dict(report.terms).get("value-parameters", 0)


def _coord_complex(M):
    return realify(M)


def _coord_hermitian(M):
    n = M.shape[0]
    scaled = np.asarray(M, dtype=complex)
    residual = np.abs(scaled - scaled.conj().T).max()
    if residual > _MEMBERSHIP_TOL * (1.0 + np.abs(scaled).max()):
        raise ValueError(f"image is not Hermitian (residual {residual:.3e})")
    iu = np.triu_indices(n, 1)
    return np.concatenate([np.diag(scaled).real, scaled[iu].real, scaled[iu].imag])


def _coord_symmetric(M):
    M = np.asarray(M, dtype=float)
    residual = np.abs(M - M.T).max()
    if residual > _MEMBERSHIP_TOL * (1.0 + np.abs(M).max()):
        raise ValueError(f"image is not symmetric (residual {residual:.3e})")
    iu = np.triu_indices(M.shape[0])
    return M[iu]


def _complex_unit_directions(n):
    out = []
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1.0
            out.append(e)
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1j
            out.append(e)
    return out


def _block_indicators(parts, n, dtype=complex):
    """Diagonal indicator of each value's slots, in profile order."""
    out = []
    pos = 0
    for k in parts:
        d = np.zeros((n, n), dtype=dtype)
        d[range(pos, pos + k), range(pos, pos + k)] = 1.0
        out.append(d)
        pos += k
    return out


def _parametrization(matrix_class, data, spectrum, free_values):
    """Base matrix, tangent directions, and image coordinate map per class."""
    cls = resolve_alias(matrix_class)
    if cls is MatrixClass.DIAGONALIZABLE_COMPLEX:
        lam = factory.make_block_diagonal_lambda(data, spectrum)
        cols = [x @ lam - lam @ x for x in _complex_unit_directions(data.n)]
        if free_values:
            for d in _block_indicators(data.parts, data.n):
                cols += [d, 1j * d]
        return lam, cols, _coord_complex
    if cls is MatrixClass.NORMAL:
        lam = factory.make_block_diagonal_lambda(data, spectrum)
        cols = [x @ lam - lam @ x for x in skew_hermitian_basis(data.n)]
        if free_values:
            for d in _block_indicators(data.parts, data.n):
                cols += [d, 1j * d]
        return lam, cols, _coord_complex
    if cls is MatrixClass.HERMITIAN:
        lam = factory.make_block_diagonal_lambda(data, spectrum).astype(complex)
        cols = [x @ lam - lam @ x for x in skew_hermitian_basis(data.n)]
        if free_values:
            cols += _block_indicators(data.parts, data.n)
        return lam, cols, _coord_hermitian
    if cls is MatrixClass.UNITARY:
        lam = factory.make_block_diagonal_lambda(data, spectrum)
        cols = [x @ lam - lam @ x for x in skew_hermitian_basis(data.n)]
        if free_values:
            indicators = _block_indicators(data.parts, data.n)
            cols += [1j * v * d for v, d in zip(spectrum.values, indicators)]
        for col in cols:
            drift = col @ lam.conj().T + lam @ col.conj().T
            if np.abs(drift).max() > _MEMBERSHIP_TOL * (1.0 + np.abs(col).max()):
                raise ValueError("direction leaves the unitary tangent space")
        return lam, cols, _coord_complex
    if cls is MatrixClass.REAL_SYMMETRIC:
        lam = factory.make_block_diagonal_lambda(data, spectrum)
        cols = [x @ lam - lam @ x for x in skew_symmetric_basis(data.n)]
        if free_values:
            cols += _block_indicators(data.parts, data.n, dtype=float)
        return lam, cols, _coord_symmetric
    if cls is MatrixClass.JORDAN:
        base = factory.make_jordan(data, spectrum)
        cols = [x @ base - base @ x for x in _complex_unit_directions(data.n)]
        if free_values:
            # One shared shift per eigenvalue, acting on all of its blocks.
            for d in _block_indicators(data.multiplicities, data.n):
                cols += [d, 1j * d]
        return base, cols, _coord_complex
    if cls is MatrixClass.SINGULAR_VALUES:
        sigma = factory.make_sigma(data, spectrum)
        n, m = data.n, data.m
        cols = [x @ sigma for x in skew_symmetric_basis(n)]
        cols += [-sigma @ y for y in skew_symmetric_basis(m)]
        if free_values:
            for d in _block_indicators(data.parts, data.rank, dtype=float):
                full = np.zeros((n, m))
                full[: data.rank, : data.rank] = d[: data.rank, : data.rank]
                cols.append(full)
        return sigma, cols, np.ravel
    raise ValueError(f"unknown matrix class {matrix_class}")


def _spectrum_for(matrix_class, data, seed):
    kind = _SPECTRUM_KIND[matrix_class]
    min_gap = factory.DEFAULT_MIN_GAP
    if isinstance(data, MultiplicityProfile):
        count = data.num_distinct
    elif isinstance(data, JordanStructure):
        count = data.num_eigenvalues
        min_gap = factory.JORDAN_SPECTRUM_GAP
    elif isinstance(data, SingularProfile):
        count = data.num_distinct
        if count == 0:
            return None
    else:
        raise TypeError(f"unsupported data {type(data)}")
    return factory.sample_spectrum(count, kind, seed, min_gap)


def _stack(columns, coord, rows_hint):
    if not columns:
        return np.zeros((rows_hint, 0))
    return np.column_stack([coord(c) for c in columns])


def _rows_hint(matrix_class, data):
    cls = resolve_alias(matrix_class)
    if cls is MatrixClass.SINGULAR_VALUES:
        return data.n * data.m
    if cls is MatrixClass.REAL_SYMMETRIC:
        return data.n * (data.n + 1) // 2
    if cls is MatrixClass.HERMITIAN:
        return data.n * data.n
    return 2 * data.n * data.n


def assemble_differential(
    matrix_class: MatrixClass,
    data,
    base_seed: int,
    free_values: bool = True,
    tol: float = DEFAULT_TOLERANCE,
    gap_requirement: float | None = DEFAULT_GAP_REQUIREMENT,
) -> RankProbe:
    """Differential of the class parametrization at a seeded generic point.

    Raises :class:`InconclusiveRankError` (carrying the singular value
    spectrum) when the rank decision has no usable gap.
    """
    spectrum = _spectrum_for(matrix_class, data, base_seed)
    _, cols, coord = _parametrization(matrix_class, data, spectrum, free_values)
    differential = _stack(cols, coord, _rows_hint(matrix_class, data))
    s = (
        np.linalg.svd(differential, compute_uv=False)
        if min(differential.shape)
        else np.zeros(0)
    )
    decision = decide_rank(s, differential.shape[1], tol, require_gap=gap_requirement)
    return RankProbe(
        matrix_class=matrix_class,
        parameter_dim=differential.shape[1],
        ambient_dim=differential.shape[0],
        differential=differential,
        singular_values=decision.singular_values,
        tolerance=tol,
        rank=decision.rank,
        gap_ratio=decision.gap_ratio,
    )


@dataclass(frozen=True)
class TrialResult:
    rank_free: int
    gap_free: float
    rank_fixed: int
    gap_fixed: float


@dataclass(frozen=True)
class ClassVerdict:
    verdict: str  # PASS | FAIL | INCONCLUSIVE
    predicted_free: int
    predicted_fixed: int
    trials: tuple[TrialResult, ...]
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def verify_class(
    matrix_class: MatrixClass,
    data,
    trials: int = 5,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCE,
    gap_requirement: float = DEFAULT_GAP_REQUIREMENT,
) -> ClassVerdict:
    """Probe the class at independent base points against the closed form.

    PASS means every probe was conclusive and reproduced the predicted rank
    with values both free and frozen; a single bad gap makes the verdict
    INCONCLUSIVE (not FAIL, which is reserved for a genuine rank mismatch).
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    predicted_free = predicted_rank(matrix_class, data, free_values=True)
    predicted_fixed = predicted_rank(matrix_class, data, free_values=False)
    results = []
    for trial in range(trials):
        probe_seed = factory.derive_seed(seed, trial)
        try:
            free = assemble_differential(
                matrix_class, data, probe_seed, True, tol, gap_requirement
            )
            fixed = assemble_differential(
                matrix_class, data, probe_seed, False, tol, gap_requirement
            )
        except InconclusiveRankError as err:
            return ClassVerdict(
                "INCONCLUSIVE",
                predicted_free,
                predicted_fixed,
                tuple(results),
                f"trial {trial}: {err}",
            )
        results.append(
            TrialResult(free.rank, free.gap_ratio, fixed.rank, fixed.gap_ratio)
        )
        if free.rank != predicted_free or fixed.rank != predicted_fixed:
            return ClassVerdict(
                "FAIL",
                predicted_free,
                predicted_fixed,
                tuple(results),
                f"trial {trial}: observed ({free.rank}, {fixed.rank}), "
                f"predicted ({predicted_free}, {predicted_fixed})",
            )
    return ClassVerdict("PASS", predicted_free, predicted_fixed, tuple(results))


@dataclass(frozen=True)
class ConsistencyCheck:
    verdict: str
    identity_rank: int
    conjugated_rank: int
    condition: float


_TRANSFORM_FOR = {
    MatrixClass.DIAGONALIZABLE_COMPLEX: "general-complex",
    MatrixClass.NORMAL: "unitary",
    MatrixClass.HERMITIAN: "unitary",
    MatrixClass.SKEW_HERMITIAN: "unitary",
    MatrixClass.UNITARY: "unitary",
    MatrixClass.REAL_SYMMETRIC: "orthogonal",
    MatrixClass.JORDAN: "general-complex",
    MatrixClass.SINGULAR_VALUES: "orthogonal",
}


def _bounded_general_transform(order, seed, cond_cap=1e3):
    for attempt in range(100):
        t = factory.random_transform(
            order, "general-complex", factory.derive_seed(seed, attempt)
        )
        if np.linalg.cond(t) <= cond_cap:
            return t
    raise RuntimeError(f"no transform with condition <= {cond_cap:g}")


def conjugation_consistency(
    matrix_class: MatrixClass,
    data,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCE,
) -> ConsistencyCheck:
    """Recompute the differential in a conjugated frame and compare ranks.

    Conjugation by an invertible transform cannot change the rank; a
    mismatch signals a conditioning problem or an assembly bug.  For general
    complex transforms the rank tolerance is loosened in proportion to the
    transform's condition number.
    """
    spectrum = _spectrum_for(matrix_class, data, factory.derive_seed(seed, 0))
    _, cols, coord = _parametrization(matrix_class, data, spectrum, True)
    kind = _TRANSFORM_FOR[resolve_alias(matrix_class)]
    if resolve_alias(matrix_class) is MatrixClass.SINGULAR_VALUES:
        u = factory.random_transform(data.n, "orthogonal", factory.derive_seed(seed, 1))
        v = factory.random_transform(data.m, "orthogonal", factory.derive_seed(seed, 2))
        moved = [u @ c @ v.T for c in cols]
        cond = 1.0
    else:
        if kind == "general-complex":
            t = _bounded_general_transform(data.n, seed)
            t_inv = np.linalg.inv(t)
            cond = float(np.linalg.cond(t))
        else:
            t = factory.random_transform(data.n, kind, factory.derive_seed(seed, 1))
            t_inv = t.conj().T
            cond = 1.0
        moved = [t @ c @ t_inv for c in cols]
    rows = _rows_hint(matrix_class, data)
    d_id = _stack(cols, coord, rows)
    d_moved = _stack(moved, coord, rows)
    loose = min(tol * cond, 9e-3)
    rank_id = decide_rank(
        np.linalg.svd(d_id, compute_uv=False) if min(d_id.shape) else np.zeros(0),
        d_id.shape[1],
        tol,
    ).rank
    rank_moved = decide_rank(
        np.linalg.svd(d_moved, compute_uv=False) if min(d_moved.shape) else np.zeros(0),
        d_moved.shape[1],
        loose,
    ).rank
    verdict = "PASS" if rank_id == rank_moved else "FAIL"
    return ConsistencyCheck(verdict, rank_id, rank_moved, cond)
