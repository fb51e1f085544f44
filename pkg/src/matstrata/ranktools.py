"""Numerical rank and nullity decisions with an explicit indecision band.

A rank decision keeps the singular values above ``tol * s_max`` and drops
the rest.  Any singular value landing within a factor of ``band`` on either
side of that threshold makes the decision unreliable, so it raises instead
of silently resolving; callers that need a stronger certificate can also
require a minimum kept/dropped gap ratio.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOLERANCE = 1e-8
DEFAULT_BAND = 10.0
DEFAULT_GAP_REQUIREMENT = 1e4


class InconclusiveRankError(Exception):
    """A rank decision whose singular value spectrum has no usable gap."""

    def __init__(self, message: str, singular_values: np.ndarray, threshold: float):
        super().__init__(message)
        self.singular_values = singular_values
        self.threshold = threshold


@dataclass(frozen=True)
class RankDecision:
    rank: int
    nullity: int
    singular_values: np.ndarray
    threshold: float
    gap_ratio: float


def decide_rank(
    singular_values: np.ndarray,
    size: int,
    tol: float = DEFAULT_TOLERANCE,
    band: float = DEFAULT_BAND,
    require_gap: float | None = None,
) -> RankDecision:
    """Resolve a singular value spectrum into an integer rank.

    ``size`` is the domain dimension (column count), so ``nullity`` is
    ``size - rank`` even when the spectrum is shorter than the domain.
    Raises :class:`InconclusiveRankError` when a singular value falls inside
    the indecision band around the threshold, or when ``require_gap`` is set
    and the kept/dropped ratio falls short of it.
    """
    if not 0 < tol < 1e-2:
        raise ValueError(f"tolerance must be in (0, 1e-2), got {tol}")
    s = np.sort(np.abs(np.asarray(singular_values, dtype=float)))[::-1]
    s_max = s[0] if s.size else 0.0
    if s_max == 0.0:
        # Zero (or empty) operator: exact rank 0, nothing borderline.
        return RankDecision(0, size, s, 0.0, np.inf)
    threshold = tol * s_max
    in_band = (s >= threshold / band) & (s <= threshold * band)
    if np.any(in_band):
        raise InconclusiveRankError(
            f"singular value {s[in_band][0]:.3e} inside the indecision band "
            f"[{threshold / band:.3e}, {threshold * band:.3e}]",
            s,
            threshold,
        )
    rank = int(np.sum(s > threshold))
    kept = s[:rank]
    dropped = s[rank:]
    if dropped.size == 0 or dropped[0] == 0.0:
        gap_ratio = np.inf
    else:
        gap_ratio = float(kept[-1] / dropped[0]) if kept.size else 0.0
    if require_gap is not None and gap_ratio < require_gap:
        raise InconclusiveRankError(
            f"kept/dropped gap ratio {gap_ratio:.3e} below required {require_gap:.3e}",
            s,
            threshold,
        )
    return RankDecision(rank, size - rank, s, threshold, gap_ratio)
