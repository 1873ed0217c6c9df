"""Membership predicates for the geometric regions of Pauli maps.

Every region lives in eigenvalue space (lambda_1, lambda_2, lambda_3):

* ``PT``    positive maps, max_a |lambda_a| <= 1 (a cube),
* ``CPT``   channels, the Fujiwara-Algoet conditions (a tetrahedron),
* ``EBC``   entanglement breaking, sum_a |lambda_a| <= 1 (an octahedron),
* ``TLG``   reachable by a time-local generator, all lambda_a >= 0,
* ``PDIV``  P-divisible, lambda_1 lambda_2 lambda_3 >= 0,
* ``CPDIV`` CP-divisible, 0 < lambda_1 lambda_2 lambda_3 <= min_a (lambda_a)^2.

All boundaries are inclusive except the strict product positivity in
``CPDIV``.  Comparisons are exact float comparisons, no epsilon, so the
predicates agree bit for bit with the rational half-space descriptions.
Every region except ``CPDIV`` is a finite union of convex polytopes;
``halfspace_description`` emits that union for the exact volume engine.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .channel import EigenvalueTriple

__all__ = [
    "RegionId",
    "RegionExpr",
    "HalfSpace",
    "NonPolytopalRegionError",
    "is_positive",
    "is_cp",
    "is_ebc",
    "is_tlg",
    "is_p_divisible",
    "is_cp_divisible",
    "contains",
    "region_mask",
    "halfspace_description",
]


class NonPolytopalRegionError(ValueError):
    """Raised when a half-space description is requested for CPDIV."""


class RegionId(str, enum.Enum):
    PT = "PT"
    CPT = "CPT"
    EBC = "EBC"
    TLG = "TLG"
    PDIV = "PDIV"
    CPDIV = "CPDIV"

    def __str__(self) -> str:
        return self.value


# Canonical display order for conjunctions.
_TAG_ORDER = [RegionId.PT, RegionId.CPT, RegionId.EBC, RegionId.TLG, RegionId.PDIV, RegionId.CPDIV]


@dataclass(frozen=True)
class RegionExpr:
    """Conjunction of region tags; membership is the AND of the predicates."""

    conjuncts: frozenset

    def __init__(self, tags: Iterable[RegionId | str]):
        parsed = frozenset(RegionId(t) if not isinstance(t, RegionId) else t for t in tags)
        if not parsed:
            raise ValueError("region expression needs at least one tag")
        object.__setattr__(self, "conjuncts", parsed)

    @classmethod
    def parse(cls, text: str) -> "RegionExpr":
        """Parse a comma-separated tag list such as ``"CPT,EBC"``."""
        tags = []
        for part in text.split(","):
            name = part.strip().upper()
            if not name:
                continue
            try:
                tags.append(RegionId(name))
            except ValueError:
                raise ValueError(f"unknown region tag {part.strip()!r}") from None
        return cls(tags)

    def __contains__(self, tag: RegionId) -> bool:
        return tag in self.conjuncts

    def __str__(self) -> str:
        return ",".join(t.value for t in _TAG_ORDER if t in self.conjuncts)


def is_positive(l: EigenvalueTriple) -> bool:
    """Positivity of the map: every |lambda_a| <= 1."""
    return abs(l.l1) <= 1.0 and abs(l.l2) <= 1.0 and abs(l.l3) <= 1.0


def is_cp(l: EigenvalueTriple) -> bool:
    """Complete positivity (Fujiwara-Algoet): 1 +- l3 dominates |l1 +- l2|.

    The four linear inequalities are exactly nonnegativity of the Choi
    spectrum, i.e. of the Pauli weights p_a.
    """
    return (1.0 + l.l3 >= abs(l.l1 + l.l2)) and (1.0 - l.l3 >= abs(l.l1 - l.l2))


def is_ebc(l: EigenvalueTriple) -> bool:
    """Entanglement breaking: |l1| + |l2| + |l3| <= 1."""
    return abs(l.l1) + abs(l.l2) + abs(l.l3) <= 1.0


def is_tlg(l: EigenvalueTriple) -> bool:
    """Reachable by a time-local generator: all eigenvalues nonnegative."""
    return l.l1 >= 0.0 and l.l2 >= 0.0 and l.l3 >= 0.0


def is_p_divisible(l: EigenvalueTriple) -> bool:
    """P-divisibility: the eigenvalue product is nonnegative."""
    return l.l1 * l.l2 * l.l3 >= 0.0


def is_cp_divisible(l: EigenvalueTriple) -> bool:
    """CP-divisibility: 0 < l1 l2 l3 <= min_a (l_a)^2.

    The bound is the smallest squared eigenvalue.  That makes the
    predicate invariant under double sign flips (composition with a
    Pauli unitary), as divisibility must be, so each even-sign orthant
    carries the same CP-divisible share; reading the bound as the
    square of the signed minimum would break the invariance on triples
    with negative eigenvalues.
    """
    prod = l.l1 * l.l2 * l.l3
    low = min(l.l1 * l.l1, l.l2 * l.l2, l.l3 * l.l3)
    return prod > 0.0 and prod <= low


_PREDICATES = {
    RegionId.PT: is_positive,
    RegionId.CPT: is_cp,
    RegionId.EBC: is_ebc,
    RegionId.TLG: is_tlg,
    RegionId.PDIV: is_p_divisible,
    RegionId.CPDIV: is_cp_divisible,
}


def contains(expr: RegionExpr, l: EigenvalueTriple) -> bool:
    """Membership in a conjunction of regions."""
    return all(_PREDICATES[tag](l) for tag in expr.conjuncts)


# --- vectorized membership -------------------------------------------------
#
# Column-wise twins of the predicates for (n, 3) arrays of triples.  The
# expressions mirror the scalar ones operation for operation so that both
# agree bit for bit; the Monte Carlo engine relies on this.


def _mask_positive(lam: np.ndarray) -> np.ndarray:
    return (
        (np.abs(lam[:, 0]) <= 1.0)
        & (np.abs(lam[:, 1]) <= 1.0)
        & (np.abs(lam[:, 2]) <= 1.0)
    )


def _mask_cp(lam: np.ndarray) -> np.ndarray:
    l1, l2, l3 = lam[:, 0], lam[:, 1], lam[:, 2]
    return (1.0 + l3 >= np.abs(l1 + l2)) & (1.0 - l3 >= np.abs(l1 - l2))


def _mask_ebc(lam: np.ndarray) -> np.ndarray:
    return np.abs(lam[:, 0]) + np.abs(lam[:, 1]) + np.abs(lam[:, 2]) <= 1.0


def _mask_tlg(lam: np.ndarray) -> np.ndarray:
    return (lam[:, 0] >= 0.0) & (lam[:, 1] >= 0.0) & (lam[:, 2] >= 0.0)


def _mask_p_divisible(lam: np.ndarray) -> np.ndarray:
    return lam[:, 0] * lam[:, 1] * lam[:, 2] >= 0.0


def _mask_cp_divisible(lam: np.ndarray) -> np.ndarray:
    prod = lam[:, 0] * lam[:, 1] * lam[:, 2]
    low = np.minimum(
        np.minimum(lam[:, 0] * lam[:, 0], lam[:, 1] * lam[:, 1]),
        lam[:, 2] * lam[:, 2],
    )
    return (prod > 0.0) & (prod <= low)


_MASKS = {
    RegionId.PT: _mask_positive,
    RegionId.CPT: _mask_cp,
    RegionId.EBC: _mask_ebc,
    RegionId.TLG: _mask_tlg,
    RegionId.PDIV: _mask_p_divisible,
    RegionId.CPDIV: _mask_cp_divisible,
}


def region_mask(expr: RegionExpr, lam: np.ndarray) -> np.ndarray:
    """Vectorized membership for an (n, 3) array of eigenvalue triples."""
    lam = np.asarray(lam, dtype=float)
    if lam.ndim != 2 or lam.shape[1] != 3:
        raise ValueError(f"expected an (n, 3) array, got shape {lam.shape}")
    mask = np.ones(lam.shape[0], dtype=bool)
    for tag in _TAG_ORDER:
        if tag in expr.conjuncts:
            mask &= _MASKS[tag](lam)
    return mask


# --- exact half-space descriptions ------------------------------------------


@dataclass(frozen=True)
class HalfSpace:
    """Rational constraint a1*l1 + a2*l2 + a3*l3 <= b."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    b: Fraction

    def __init__(self, a1, a2, a3, b):
        a1, a2, a3, b = Fraction(a1), Fraction(a2), Fraction(a3), Fraction(b)
        if a1 == 0 and a2 == 0 and a3 == 0:
            raise ValueError("half-space normal must be nonzero")
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)
        object.__setattr__(self, "a3", a3)
        object.__setattr__(self, "b", b)

    @property
    def normal(self) -> tuple:
        return (self.a1, self.a2, self.a3)

    def contains(self, v) -> bool:
        """Exact membership of a rational point."""
        return self.a1 * v[0] + self.a2 * v[1] + self.a3 * v[2] <= self.b

    def is_tight(self, v) -> bool:
        return self.a1 * v[0] + self.a2 * v[1] + self.a3 * v[2] == self.b

    def canonical(self) -> tuple:
        """Primitive integer form (a1, a2, a3, b), unique per half-space."""
        import math as _math

        denoms = [self.a1.denominator, self.a2.denominator, self.a3.denominator, self.b.denominator]
        scale = _math.lcm(*denoms)
        ints = [int(x * scale) for x in (self.a1, self.a2, self.a3, self.b)]
        g = _math.gcd(*(abs(i) for i in ints))
        if g > 1:
            ints = [i // g for i in ints]
        return tuple(ints)


def _pt_system() -> list:
    out = []
    for axis in range(3):
        for sign in (1, -1):
            a = [0, 0, 0]
            a[axis] = sign
            out.append(HalfSpace(a[0], a[1], a[2], 1))
    return out


def _cpt_system() -> list:
    # Nonnegativity of the four Pauli weights.
    return [
        HalfSpace(-1, -1, -1, 1),
        HalfSpace(-1, 1, 1, 1),
        HalfSpace(1, -1, 1, 1),
        HalfSpace(1, 1, -1, 1),
    ]


def _ebc_system() -> list:
    return [
        HalfSpace(s1, s2, s3, 1)
        for s1 in (1, -1)
        for s2 in (1, -1)
        for s3 in (1, -1)
    ]


def _tlg_system() -> list:
    return [HalfSpace(-1, 0, 0, 0), HalfSpace(0, -1, 0, 0), HalfSpace(0, 0, -1, 0)]


def _pdiv_orthants() -> list:
    # The even-sign orthants: the eigenvalue product is >= 0 exactly on
    # their union, overlapping only on the coordinate planes.
    pieces = []
    for signs in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
        pieces.append([
            HalfSpace(-signs[0], 0, 0, 0),
            HalfSpace(0, -signs[1], 0, 0),
            HalfSpace(0, 0, -signs[2], 0),
        ])
    return pieces


_SYSTEMS = {
    RegionId.PT: lambda: [_pt_system()],
    RegionId.CPT: lambda: [_cpt_system()],
    RegionId.EBC: lambda: [_ebc_system()],
    RegionId.TLG: lambda: [_tlg_system()],
    RegionId.PDIV: _pdiv_orthants,
}


def halfspace_description(expr: RegionExpr) -> list:
    """Union of convex half-space systems covering the region.

    Returns a list of systems (each a list of :class:`HalfSpace`) whose
    union equals the region; distinct systems overlap only on sets of
    measure zero.  Only PDIV contributes more than one system (its four
    even-sign orthants).  CPDIV is not a polytope union and is rejected.
    """
    if RegionId.CPDIV in expr.conjuncts:
        raise NonPolytopalRegionError(
            "CPDIV is a non-polytopal region; only Monte Carlo volumes are available"
        )
    pieces = [[]]
    for tag in _TAG_ORDER:
        if tag not in expr.conjuncts:
            continue
        pieces = [old + new for old in pieces for new in _SYSTEMS[tag]()]
    out = []
    for system in pieces:
        seen = set()
        deduped = []
        for hs in system:
            key = hs.canonical()
            if key not in seen:
                seen.add(key)
                deduped.append(hs)
        out.append(deduped)
    return out
