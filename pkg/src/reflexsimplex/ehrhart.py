"""Lattice-point enumerator, Ehrhart polynomial and delta-vector of a lattice polytope."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .exact_math import IntPolynomial, RatPolynomial, lagrange_interpolate
from .polytope import LatticePolytope, count_lattice_points

log = logging.getLogger(__name__)


class InvariantViolation(RuntimeError):
    """A computed quantity contradicts a theorem; always an internal bug."""


@lru_cache(maxsize=4096)
def count_points(P: LatticePolytope, k: int) -> int:
    """``i(P, k) = #(kP cap Z^d)``, with ``i(P, 0) = 1``."""
    if k < 0:
        raise ValueError("dilation index must be >= 0; use reciprocity for negative arguments")
    if k == 0:
        return 1
    return count_lattice_points(P, "closed", k)


def interior_count(P: LatticePolytope, k: int = 1) -> int:
    return count_lattice_points(P, "interior", k)


@dataclass
class EhrhartData:
    dim: int
    counts: dict[int, int] = field(default_factory=dict)
    ehrhart_poly: RatPolynomial | None = None
    delta: IntPolynomial | None = None

    @property
    def delta_vector(self) -> tuple[int, ...]:
        """delta_0..delta_d, trailing zeros kept."""
        return self.delta.padded(self.dim + 1)


def _is_reflexive(P: LatticePolytope) -> bool:
    from .reflexive import is_reflexive

    return is_reflexive(P)


def _reciprocity_samples(P: LatticePolytope, data: EhrhartData) -> list[tuple[int, int]]:
    d = P.dim
    m = (d + 1) // 2
    for k in range(m + 1):
        data.counts[k] = count_points(P, k)
    samples = [(k, data.counts[k]) for k in range(m + 1)]
    # reflexive: interior of kP is (k-1)P, so i(P,-k) = (-1)^d i(P,k-1)
    sign = -1 if d % 2 else 1
    samples += [(-k, sign * data.counts[k - 1]) for k in range(1, m + 2)]
    return samples


def ehrhart_data(P: LatticePolytope, use_reciprocity: bool = False) -> EhrhartData:
    d = P.dim
    data = EhrhartData(d)
    if use_reciprocity:
        if not _is_reflexive(P):
            raise ValueError("reciprocity fast path requires a reflexive polytope")
        poly = lagrange_interpolate(_reciprocity_samples(P, data))
        check_k = (d + 1) // 2 + 1
        direct = count_points(P, check_k)
        if poly(check_k) != direct:
            raise InvariantViolation(f"reciprocity polynomial disagrees with direct count at k={check_k}")
        data.counts[check_k] = direct
        log.debug("reciprocity path verified at k=%d", check_k)
    else:
        for k in range(d + 1):
            data.counts[k] = count_points(P, k)
        poly = lagrange_interpolate([(k, data.counts[k]) for k in range(d + 1)])
    if poly.degree != d:
        raise InvariantViolation(f"Ehrhart polynomial has degree {poly.degree}, expected {d}")
    data.ehrhart_poly = poly
    values = [poly(k) for k in range(d + 1)]
    if any(v.denominator != 1 for v in values):
        raise InvariantViolation("Ehrhart polynomial is not integer-valued")
    values = [int(v) for v in values]
    delta = []
    for j in range(d + 1):
        delta.append(sum((-1) ** i * comb(d + 1, i) * values[j - i] for i in range(j + 1)))
    if any(c < 0 for c in delta):
        raise InvariantViolation(f"negative delta coefficient in {delta}")
    data.delta = IntPolynomial(tuple(delta))
    return data


def ehrhart_polynomial(P: LatticePolytope, use_reciprocity: bool = False) -> RatPolynomial:
    return ehrhart_data(P, use_reciprocity).ehrhart_poly


def delta_polynomial(P: LatticePolytope, use_reciprocity: bool = False) -> IntPolynomial:
    return ehrhart_data(P, use_reciprocity).delta


@dataclass(frozen=True)
class Check:
    ok: bool
    witness: str

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class DeltaReport:
    delta: IntPolynomial
    dim: int
    checks: dict[str, Check]

    @property
    def all_passed(self) -> bool:
        """Every check except palindromicity, which only holds for reflexive-equivalent P."""
        return all(c.ok for name, c in self.checks.items() if name != "palindromic")

    @property
    def palindromic(self) -> bool:
        return self.checks["palindromic"].ok


def validate_delta(P: LatticePolytope, use_reciprocity: bool = False) -> DeltaReport:
    data = ehrhart_data(P, use_reciprocity)
    d = P.dim
    c = data.delta_vector
    i1 = count_points(P, 1)
    interior = interior_count(P)
    checks = {
        "delta0": Check(c[0] == 1, f"delta_0 = {c[0]}"),
        "delta1_identity": Check(c[1] == i1 - (d + 1), f"delta_1 = {c[1]}, i(P,1) - (d+1) = {i1 - (d + 1)}"),
        "deltad_interior": Check(c[d] == interior, f"delta_d = {c[d]}, interior points = {interior}"),
        "nonnegativity": Check(all(x >= 0 for x in c), f"delta = {list(c)}"),
    }
    if c[d] != 0:
        # delta_0 = 1 is excluded: the bound concerns 1 <= i <= d-1
        bad = [i for i in range(1, d) if c[1] > c[i]]
        checks["delta1_lower_bound"] = Check(not bad, f"delta_1 = {c[1]} exceeds delta_i at i in {bad}" if bad
                                           else f"delta_1 = {c[1]} <= delta_i for 1 <= i <= d-1")
    else:
        checks["delta1_lower_bound"] = Check(True, "not applicable: delta_d = 0")
    pal = data.delta.degree == d and data.delta.is_palindromic(d)
    checks["palindromic"] = Check(pal, f"delta = {list(c)}, degree {data.delta.degree} (d = {d})")
    return DeltaReport(data.delta, d, checks)
