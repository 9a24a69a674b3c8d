"""Eulerian polynomials, by recurrence and by counting descents.

Position ``i`` of a permutation is a descent when ``pi(i) > pi(i+1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

from .exact_math import CapabilityError, IntPolynomial

DESCENT_MAX_N = 9


@dataclass(frozen=True)
class EulerianPolynomial:
    n: int
    poly: IntPolynomial

    def __post_init__(self):
        if self.poly(1) != factorial(self.n):
            raise ValueError(f"coefficients do not sum to {self.n}!")


def eulerian_recurrence(n: int) -> EulerianPolynomial:
    """Triangle recurrence ``A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)``."""
    if n < 1:
        raise ValueError("Eulerian polynomials are indexed by n >= 1")
    row = [1]
    for m in range(2, n + 1):
        prev = row + [0]
        row = [(k + 1) * prev[k] + (m - k) * (prev[k - 1] if k else 0) for k in range(m)]
    return EulerianPolynomial(n, IntPolynomial(tuple(row)))


def descents(perm) -> int:
    return sum(1 for a, b in zip(perm, perm[1:]) if a > b)


def eulerian_descents(n: int) -> EulerianPolynomial:
    if not 1 <= n <= DESCENT_MAX_N:
        raise CapabilityError(f"descent enumeration supports 1 <= n <= {DESCENT_MAX_N}")
    counts = [0] * n
    for perm in itertools.permutations(range(1, n + 1)):
        counts[descents(perm)] += 1
    return EulerianPolynomial(n, IntPolynomial(tuple(counts)))
