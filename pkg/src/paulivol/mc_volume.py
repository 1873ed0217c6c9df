"""Seeded Monte Carlo volume estimators.

Hilbert-Schmidt estimates sample the positivity cube [-1,1]^3, whose
total HS measure is exactly 1, so a hit fraction already is a volume
and no scale factor ever enters.  Fisher-Rao estimates importance
sample the channel tetrahedron through Dirichlet(1/2,...) weights.

Determinism: samples are drawn in chunks and chunk c uses the
generator seeded with (seed, c), so a fixed (seed, samples,
chunk_size) triple reproduces the estimate bit for bit no matter how
chunks would be scheduled.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .channel import EigenvalueTriple
from .regions import RegionExpr, RegionId, region_mask

__all__ = [
    "SamplerConfig",
    "VolumeEstimate",
    "FisherRaoDomainError",
    "region_hit_count",
    "hs_volume_mc",
    "ratio_mc",
    "fr_volume_mc",
    "sample_region",
]

DEFAULT_CHUNK_SIZE = 2**16

# Total Fisher-Rao volume of the channel tetrahedron; see fr_volume_mc.
FR_TOTAL = 2.0 * math.pi * math.pi

_ACCEPTANCE_FLOOR = 1e-4


class FisherRaoDomainError(ValueError):
    """Raised for Fisher-Rao requests outside the channel tetrahedron."""


@dataclass(frozen=True)
class SamplerConfig:
    """Sampling budget and seeding for the Monte Carlo estimators."""

    samples: int
    seed: int
    chunk_size: int = DEFAULT_CHUNK_SIZE

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.chunk_size < 1:
            raise ValueError(f"chunk_size must be >= 1, got {self.chunk_size}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")

    def chunks(self) -> Iterator[tuple[int, int]]:
        """Yield (chunk_index, chunk_length) covering the sample budget."""
        full, rem = divmod(self.samples, self.chunk_size)
        for c in range(full):
            yield c, self.chunk_size
        if rem:
            yield full, rem


@dataclass(frozen=True)
class VolumeEstimate:
    """Volume (or ratio) result with its statistical error.

    ``method`` is "exact" for rational results (value a Fraction,
    std_error 0), "mc-hs" for Hilbert-Schmidt sampling and "mc-fr" for
    Fisher-Rao sampling.  ``seed`` is None for exact results.
    """

    value: float | Fraction
    std_error: float
    samples: int
    method: str
    seed: int | None = None

    def __post_init__(self):
        if self.method not in ("exact", "mc-hs", "mc-fr"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.samples < 0:
            raise ValueError("sample count must be >= 0")
        if not math.isnan(self.std_error) and self.std_error < 0:
            raise ValueError("std_error must be >= 0")


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    return np.random.default_rng([seed, chunk_index])


def _binomial_error(f: float, n: int, scale: float = 1.0) -> float:
    return scale * math.sqrt(f * (1.0 - f) / n)


def region_hit_count(expr: RegionExpr, cfg: SamplerConfig) -> tuple[int, int]:
    """Count cube samples landing in the region.

    Returns ``(hits, samples)`` from uniform draws over the positivity
    cube; both Monte Carlo HS estimators reduce to this count, and
    exposing it lets callers form complement or joint estimates from
    one stream.
    """
    hits = 0
    for c, n in cfg.chunks():
        lam = _chunk_rng(cfg.seed, c).uniform(-1.0, 1.0, size=(n, 3))
        hits += int(region_mask(expr, lam).sum())
    return hits, cfg.samples


def hs_volume_mc(expr: RegionExpr, cfg: SamplerConfig) -> VolumeEstimate:
    """Hilbert-Schmidt volume of the region clipped to the cube.

    The reference measure (uniform on the cube, total HS measure 1)
    makes the hit fraction itself the unbiased volume estimate.
    """
    hits, n = region_hit_count(expr, cfg)
    f = hits / n
    return VolumeEstimate(f, _binomial_error(f, n), n, "mc-hs", cfg.seed)


def ratio_mc(num: RegionExpr, den: RegionExpr, cfg: SamplerConfig) -> VolumeEstimate:
    """Volume ratio V(num & den) / V(den) by conditional counting.

    Numerator and denominator are counted on the same sample stream.
    The standard error is binomial on the conditional count, i.e. uses
    the number of denominator hits as the sample size.  When nothing
    hits the denominator the result is NaN with a warning.
    """
    joint = RegionExpr(num.conjuncts | den.conjuncts)
    den_hits = 0
    num_hits = 0
    for c, n in cfg.chunks():
        lam = _chunk_rng(cfg.seed, c).uniform(-1.0, 1.0, size=(n, 3))
        den_mask = region_mask(den, lam)
        den_hits += int(den_mask.sum())
        num_hits += int((region_mask(joint, lam) & den_mask).sum())
    if den_hits == 0:
        warnings.warn(
            f"no sample hit the denominator region {den}; ratio undefined",
            stacklevel=2,
        )
        return VolumeEstimate(math.nan, math.nan, cfg.samples, "mc-hs", cfg.seed)
    r = num_hits / den_hits
    return VolumeEstimate(r, _binomial_error(r, den_hits), cfg.samples, "mc-hs", cfg.seed)


def _lambda_columns(p: np.ndarray) -> np.ndarray:
    l1 = p[:, 0] + p[:, 1] - p[:, 2] - p[:, 3]
    l2 = p[:, 0] - p[:, 1] + p[:, 2] - p[:, 3]
    l3 = p[:, 0] - p[:, 1] - p[:, 2] + p[:, 3]
    return np.stack([l1, l2, l3], axis=1)


def fr_volume_mc(expr: RegionExpr, cfg: SamplerConfig) -> VolumeEstimate:
    """Fisher-Rao volume of a region inside the channel tetrahedron.

    The Fisher-Rao volume element in eigenvalue coordinates is
    dV = dl1 dl2 dl3 / (8 sqrt(p0 p1 p2 p3)), defined only where all
    Pauli weights p_a are nonnegative, so the expression must contain
    CPT.  The estimator importance samples it:

    * the linear change to weight coordinates has |d(lambda)/d(p)| = 16,
      so the integral becomes 2 * integral of (p0 p1 p2 p3)^(-1/2) dp
      over (part of) the probability simplex;
    * the full-simplex integral is the Dirichlet(1/2,1/2,1/2,1/2)
      normalization Gamma(1/2)^4 / Gamma(2) = pi^2, so drawing
      p ~ Dirichlet(1/2^4) and counting hits estimates the integral as
      2 pi^2 times the hit fraction.

    Dirichlet(1/2) draws come from squared standard normals
    (Gamma(1/2, scale 1) = Z^2/2), normalized; no rejection involved.
    """
    if RegionId.CPT not in expr.conjuncts:
        raise FisherRaoDomainError(
            f"Fisher-Rao volume needs a CPT-conjoined region, got {expr}"
        )
    hits = 0
    for c, n in cfg.chunks():
        z = _chunk_rng(cfg.seed, c).standard_normal(size=(n, 4))
        g = 0.5 * z * z
        p = g / g.sum(axis=1, keepdims=True)
        hits += int(region_mask(expr, _lambda_columns(p)).sum())
    f = hits / cfg.samples
    return VolumeEstimate(
        FR_TOTAL * f,
        _binomial_error(f, cfg.samples, FR_TOTAL),
        cfg.samples,
        "mc-fr",
        cfg.seed,
    )


def sample_region(expr: RegionExpr, cfg: SamplerConfig) -> Iterator[EigenvalueTriple]:
    """Stream cfg.samples triples uniform (HS measure) over the region.

    Proposals are uniform over the channel tetrahedron (via
    p ~ Dirichlet(1,1,1,1) mapped linearly to eigenvalues) when the
    expression contains CPT, else uniform over the positivity cube;
    rejection against the full expression keeps the output uniform.
    Warns once if the observed acceptance rate drops below 1e-4.
    """
    simplex = RegionId.CPT in expr.conjuncts
    produced = 0
    proposed = 0
    accepted = 0
    warned = False
    c = 0
    while produced < cfg.samples:
        rng = _chunk_rng(cfg.seed, c)
        c += 1
        if simplex:
            lam = _lambda_columns(rng.dirichlet(np.ones(4), size=cfg.chunk_size))
        else:
            lam = rng.uniform(-1.0, 1.0, size=(cfg.chunk_size, 3))
        mask = region_mask(expr, lam)
        proposed += cfg.chunk_size
        accepted += int(mask.sum())
        if not warned and accepted < _ACCEPTANCE_FLOOR * proposed:
            warnings.warn(
                f"acceptance rate {accepted}/{proposed} below {_ACCEPTANCE_FLOOR}"
                f" while sampling {expr}",
                stacklevel=2,
            )
            warned = True
        for row in lam[mask]:
            yield EigenvalueTriple(row[0], row[1], row[2])
            produced += 1
            if produced == cfg.samples:
                break
