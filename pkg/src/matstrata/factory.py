"""Construction of matrices realizing a profile, and seeded random transforms.

Spectra are sampled with an enforced minimum separation so that downstream
rank decisions never sit near their thresholds, and transforms are rejected
above a condition cap for the same reason.  Everything is deterministic
given a seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .profiles import JordanStructure, MultiplicityProfile, SingularProfile

SPECTRUM_KINDS = ("complex", "real", "unimodular", "positive-decreasing")
TRANSFORM_KINDS = ("general-complex", "unitary", "orthogonal")

#: Default separation between distinct spectrum values, on unit scale.
DEFAULT_MIN_GAP = 0.1
#: Wider separation for Jordan spectra.  A cross-eigenvalue block pair of
#: sizes (k_i, k_j) shrinks the commutation operator's smallest singular
#: value like gap**(k_i + k_j - 1); 0.5 keeps desk-scale orders (n <= 8,
#: chains up to 7) far above the rank-decision band.
JORDAN_SPECTRUM_GAP = 0.5
#: Condition-number cap for general transforms (near-singular samples would
#: corrupt rank estimates downstream).
CONDITION_CAP = 1e6
_TRANSFORM_ATTEMPTS = 100
_SPECTRUM_ATTEMPTS = 1000


@dataclass(frozen=True)
class SpectrumSpec:
    """Distinct eigenvalue or singular-value samples with a guaranteed gap.

    ``kind`` fixes the admissible values: ``real`` and ``complex`` scalars,
    ``unimodular`` points on the unit circle, or ``positive-decreasing``
    singular values.  Multiplicities are attached later, by pairing the spec
    with a profile at matrix construction.
    """

    kind: str
    values: tuple[complex, ...]
    min_gap: float = DEFAULT_MIN_GAP

    def __post_init__(self):
        if self.kind not in SPECTRUM_KINDS:
            raise ValueError(f"unknown spectrum kind {self.kind!r}")
        if self.min_gap <= 0:
            raise ValueError("min_gap must be positive")
        values = tuple(complex(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValueError("at least one value is required")
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                if abs(values[i] - values[j]) < self.min_gap:
                    raise ValueError(
                        f"values {values[i]} and {values[j]} closer than min_gap={self.min_gap}"
                    )
        if self.kind in ("real", "positive-decreasing"):
            if any(v.imag != 0 for v in values):
                raise ValueError(f"{self.kind} spectrum must be real")
        if self.kind == "unimodular":
            if any(abs(abs(v) - 1.0) > 1e-12 for v in values):
                raise ValueError("unimodular values must have absolute value 1")
        if self.kind == "positive-decreasing":
            reals = [v.real for v in values]
            if any(v <= 0 for v in reals):
                raise ValueError("singular values must be positive")
            if any(reals[i] <= reals[i + 1] for i in range(len(reals) - 1)):
                raise ValueError("singular values must be strictly decreasing")

    @property
    def real_values(self) -> tuple[float, ...]:
        if self.kind not in ("real", "positive-decreasing"):
            raise ValueError(f"{self.kind} spectrum has no real view")
        return tuple(v.real for v in self.values)


def make_block_diagonal_lambda(
    profile: MultiplicityProfile, spec: SpectrumSpec
) -> np.ndarray:
    """Diagonal matrix with spec value i repeated k_i times, in profile order."""
    if len(spec.values) != profile.num_distinct:
        raise ValueError(
            f"spectrum has {len(spec.values)} values, profile needs {profile.num_distinct}"
        )
    diag = np.repeat(np.asarray(spec.values), profile.parts)
    if spec.kind in ("real", "positive-decreasing"):
        diag = diag.real
    return np.diag(diag)


def _jordan_block(lam: complex, size: int) -> np.ndarray:
    block = lam * np.eye(size, dtype=complex)
    block += np.diag(np.ones(size - 1), 1)
    return block


def make_jordan(js: JordanStructure, spec: SpectrumSpec) -> np.ndarray:
    """Jordan matrix of the given structure: per-eigenvalue runs of blocks in
    weakly decreasing size order, ones on each block's first superdiagonal."""
    if len(spec.values) != js.num_eigenvalues:
        raise ValueError(
            f"spectrum has {len(spec.values)} values, structure needs {js.num_eigenvalues}"
        )
    out = np.zeros((js.n, js.n), dtype=complex)
    pos = 0
    for lam, sizes in zip(spec.values, js.blocks):
        for size in sizes:
            out[pos : pos + size, pos : pos + size] = _jordan_block(lam, size)
            pos += size
    return out


def make_sigma(profile: SingularProfile, spec: SpectrumSpec | None) -> np.ndarray:
    """Rectangular diagonal matrix: sigma_j repeated k_j times on the leading
    diagonal slots, zeros elsewhere.  ``spec`` may be None only for rank 0."""
    out = np.zeros((profile.n, profile.m))
    if profile.rank == 0:
        return out
    if spec is None:
        raise ValueError("a spectrum is required for positive rank")
    if spec.kind != "positive-decreasing":
        raise ValueError("singular values must come from a positive-decreasing spectrum")
    if len(spec.values) != profile.num_distinct:
        raise ValueError(
            f"spectrum has {len(spec.values)} values, profile needs {profile.num_distinct}"
        )
    diag = np.repeat(spec.real_values, profile.parts)
    out[range(profile.rank), range(profile.rank)] = diag
    return out


def random_transform(order: int, kind: str, seed: int) -> np.ndarray:
    """Seeded random transform: ``general-complex`` entries are independent
    standard complex normals (resampled while the condition number exceeds
    the cap); ``unitary`` and ``orthogonal`` orthonormalize such samples,
    made unique by forcing the triangular factor's diagonal positive."""
    if order < 1:
        raise ValueError("order must be positive")
    if kind not in TRANSFORM_KINDS:
        raise ValueError(f"unknown transform kind {kind!r}")
    rng = np.random.default_rng(seed)
    if kind == "general-complex":
        for _ in range(_TRANSFORM_ATTEMPTS):
            sample = (
                rng.standard_normal((order, order))
                + 1j * rng.standard_normal((order, order))
            ) / np.sqrt(2)
            if np.linalg.cond(sample) <= CONDITION_CAP:
                return sample
        raise RuntimeError(
            f"no transform with condition <= {CONDITION_CAP:g} in "
            f"{_TRANSFORM_ATTEMPTS} attempts"
        )
    if kind == "unitary":
        sample = (
            rng.standard_normal((order, order))
            + 1j * rng.standard_normal((order, order))
        ) / np.sqrt(2)
    else:
        sample = rng.standard_normal((order, order))
    q, r = np.linalg.qr(sample)
    d = np.diag(r).copy()
    d[d == 0] = 1.0
    return q * (d / np.abs(d))


def sample_spectrum(
    count: int,
    kind: str,
    seed: int,
    min_gap: float = DEFAULT_MIN_GAP,
) -> SpectrumSpec:
    """Sample ``count`` distinct values of the given kind with pairwise
    separation at least ``min_gap``, deterministically per seed.

    Positive-decreasing values are also kept at least ``min_gap`` away from
    zero so a zero singular value never crowds the spectrum.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if kind not in SPECTRUM_KINDS:
        raise ValueError(f"unknown spectrum kind {kind!r}")
    rng = np.random.default_rng(seed)
    for _ in range(_SPECTRUM_ATTEMPTS):
        if kind == "complex":
            values = rng.standard_normal(count) + 1j * rng.standard_normal(count)
        elif kind == "real":
            values = rng.standard_normal(count) + 0j
        elif kind == "unimodular":
            values = np.exp(2j * np.pi * rng.random(count))
        else:
            values = np.sort(min_gap + 2.5 * rng.random(count))[::-1] + 0j
        separated = all(
            abs(values[i] - values[j]) >= min_gap
            for i in range(count)
            for j in range(i + 1, count)
        )
        if separated:
            return SpectrumSpec(kind, tuple(values), min_gap)
    raise RuntimeError(
        f"no {kind} spectrum of {count} values with gap {min_gap} in "
        f"{_SPECTRUM_ATTEMPTS} attempts"
    )


def derive_seed(*components: int) -> int:
    """Mix integers into a child seed, stable across platforms and runs."""
    return int(np.random.SeedSequence(tuple(components)).generate_state(1)[0])
