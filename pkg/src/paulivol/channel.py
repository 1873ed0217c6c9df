"""Qubit Pauli maps in eigenvalue and probability coordinates.

A Pauli map acts as rho -> sum_a p_a sigma_a rho sigma_a.  It is diagonal
in the Pauli basis, Lambda[sigma_a] = lambda_a sigma_a with lambda_0 = 1,
so the triple (lambda_1, lambda_2, lambda_3) fixes the map completely.
This module converts between the two coordinate systems, builds the
Choi-Jamiolkowski state of a map, and applies a map to qubit states in
Bloch form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EigenvalueTriple",
    "ProbabilityVector",
    "ChoiMatrix",
    "QubitState",
    "p_to_lambda",
    "lambda_to_p",
    "choi_matrix",
    "apply_map",
]

# Trace preservation / hermiticity checks share one tolerance.
_ATOL = 1e-12


@dataclass(frozen=True)
class EigenvalueTriple:
    """Eigenvalues (lambda_1, lambda_2, lambda_3) of a Pauli map.

    lambda_0 = 1 is implied by trace preservation and never stored.  No
    range restriction is imposed: triples outside the positivity cube are
    representable and classify as "not positive".
    """

    l1: float
    l2: float
    l3: float

    def __post_init__(self):
        for name in ("l1", "l2", "l3"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"eigenvalue {name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))

    def __iter__(self):
        yield self.l1
        yield self.l2
        yield self.l3

    def as_array(self) -> np.ndarray:
        return np.array([self.l1, self.l2, self.l3])


@dataclass(frozen=True)
class ProbabilityVector:
    """Pauli weights (p_0, p_1, p_2, p_3) of a map.

    The entries sum to 1 (trace preservation) but may be negative: maps
    that are positive without being completely positive carry
    quasi-probabilities.
    """

    p0: float
    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        vals = []
        for name in ("p0", "p1", "p2", "p3"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"weight {name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))
            vals.append(float(v))
        total = vals[0] + vals[1] + vals[2] + vals[3]
        if abs(total - 1.0) > _ATOL:
            raise ValueError(f"weights must sum to 1 within {_ATOL}, got sum {total!r}")

    def __iter__(self):
        yield self.p0
        yield self.p1
        yield self.p2
        yield self.p3

    def as_array(self) -> np.ndarray:
        return np.array([self.p0, self.p1, self.p2, self.p3])

    def min(self) -> float:
        return min(self.p0, self.p1, self.p2, self.p3)


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    """4x4 Choi-Jamiolkowski state of a Pauli map.

    Only the diagonal and anti-diagonal can be nonzero; the matrix is
    Hermitian with unit trace.  Both 2x2 invariant blocks (indices {0,3}
    and {1,2}) are kept implicit, which gives the spectrum in closed form.
    """

    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"Choi matrix must be 4x4, got shape {m.shape}")
        if np.abs(m - m.conj().T).max() > _ATOL:
            raise ValueError("Choi matrix must be Hermitian")
        if abs(m.trace() - 1.0) > _ATOL:
            raise ValueError("Choi matrix must have unit trace")
        mask = np.zeros((4, 4), dtype=bool)
        for i in range(4):
            mask[i, i] = True
            mask[i, 3 - i] = True
        if np.abs(m[~mask]).max() > _ATOL:
            raise ValueError("entries off the diagonal and anti-diagonal must vanish")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def eigenvalues(self) -> np.ndarray:
        """Spectrum from the two 2x2 blocks, no general eigensolver.

        Each Hermitian block [[a, c], [conj(c), d]] contributes
        (a + d)/2 +- sqrt(((a - d)/2)^2 + |c|^2).
        """
        out = []
        for i, j in ((0, 3), (1, 2)):
            a = self.entries[i, i].real
            d = self.entries[j, j].real
            c = self.entries[i, j]
            half_sum = 0.5 * (a + d)
            radius = math.hypot(0.5 * (a - d), abs(c))
            out.extend([half_sum + radius, half_sum - radius])
        return np.array(out)


@dataclass(frozen=True)
class QubitState:
    """Qubit state as a Bloch vector, rho = (I + r . sigma)/2.

    The raw constructor accepts any finite vector (useful for probing
    maps); ``from_density_matrix`` enforces physicality |r| <= 1.
    """

    r1: float
    r2: float
    r3: float

    def __post_init__(self):
        for name in ("r1", "r2", "r3"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"Bloch component {name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))

    @classmethod
    def from_density_matrix(cls, rho: np.ndarray) -> "QubitState":
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (2, 2):
            raise ValueError(f"density matrix must be 2x2, got shape {rho.shape}")
        if np.abs(rho - rho.conj().T).max() > 1e-10:
            raise ValueError("density matrix must be Hermitian")
        if abs(rho.trace() - 1.0) > 1e-10:
            raise ValueError("density matrix must have unit trace")
        r1 = 2.0 * rho[0, 1].real
        r2 = -2.0 * rho[0, 1].imag
        r3 = (rho[0, 0] - rho[1, 1]).real
        if r1 * r1 + r2 * r2 + r3 * r3 > 1.0 + _ATOL:
            raise ValueError("Bloch vector lies outside the unit ball")
        return cls(r1, r2, r3)

    def to_density_matrix(self) -> np.ndarray:
        return 0.5 * np.array(
            [
                [1.0 + self.r3, self.r1 - 1j * self.r2],
                [self.r1 + 1j * self.r2, 1.0 - self.r3],
            ]
        )

    def bloch(self) -> np.ndarray:
        return np.array([self.r1, self.r2, self.r3])


def p_to_lambda(p: ProbabilityVector) -> EigenvalueTriple:
    """Map Pauli weights to eigenvalues.

    lambda_a = p_0 + p_a - p_b - p_c for {a, b, c} = {1, 2, 3}.
    """
    return EigenvalueTriple(
        p.p0 + p.p1 - p.p2 - p.p3,
        p.p0 - p.p1 + p.p2 - p.p3,
        p.p0 - p.p1 - p.p2 + p.p3,
    )


def lambda_to_p(l: EigenvalueTriple) -> ProbabilityVector:
    """Map eigenvalues to Pauli weights (inverse of :func:`p_to_lambda`).

    p_0 = (1 + l1 + l2 + l3)/4 and cyclic sign flips for p_1, p_2, p_3.
    The weights equal the Choi spectrum of the map.
    """
    return ProbabilityVector(
        0.25 * (1.0 + l.l1 + l.l2 + l.l3),
        0.25 * (1.0 + l.l1 - l.l2 - l.l3),
        0.25 * (1.0 - l.l1 + l.l2 - l.l3),
        0.25 * (1.0 - l.l1 - l.l2 + l.l3),
    )


def choi_matrix(l: EigenvalueTriple) -> ChoiMatrix:
    """Choi-Jamiolkowski state (1/4) sum_ij |i><j| (x) Lambda[|i><j|].

    Diagonal entries are (1 +- l3)/4, anti-diagonal entries
    (l1 +- l2)/4; everything else vanishes.
    """
    dp = 0.25 * (1.0 + l.l3)
    dm = 0.25 * (1.0 - l.l3)
    op = 0.25 * (l.l1 + l.l2)
    om = 0.25 * (l.l1 - l.l2)
    entries = np.array(
        [
            [dp, 0.0, 0.0, op],
            [0.0, dm, om, 0.0],
            [0.0, om, dm, 0.0],
            [op, 0.0, 0.0, dp],
        ],
        dtype=complex,
    )
    return ChoiMatrix(entries)


def apply_map(l: EigenvalueTriple, s: QubitState) -> QubitState:
    """Apply the map to a state: the Bloch vector scales componentwise."""
    return QubitState(l.l1 * s.r1, l.l2 * s.r2, l.l3 * s.r3)
