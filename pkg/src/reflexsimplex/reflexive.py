"""Reflexivity, polar duals, and unimodular equivalence of lattice simplices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exact_math import CapabilityError, DimensionError, det, inverse, vecmat, vsub
from .polytope import AffineUnimodularMap, LatticePolytope, apply_map, lattice_points, normalized_volume

__all__ = [
    "AffineUnimodularMap",
    "ReflexivityReport",
    "reflexivity_report",
    "is_reflexive",
    "dual_polytope",
    "find_equivalence",
    "is_self_dual",
]


@dataclass(frozen=True)
class ReflexivityReport:
    interior_points: tuple[tuple[int, ...], ...]
    facet_offsets: tuple[int, ...]

    @property
    def unique_interior_origin(self) -> bool:
        return len(self.interior_points) == 1 and not any(self.interior_points[0])

    @property
    def offsets_one(self) -> bool:
        return all(b == 1 for b in self.facet_offsets)

    def __bool__(self) -> bool:
        return self.unique_interior_origin and self.offsets_one


def reflexivity_report(P: LatticePolytope) -> ReflexivityReport:
    return ReflexivityReport(tuple(lattice_points(P, "interior")), tuple(h.b for h in P.hrep))


def is_reflexive(P: LatticePolytope) -> bool:
    """Origin is the only interior lattice point and every primitive facet has offset 1."""
    return bool(reflexivity_report(P))


def dual_polytope(P: LatticePolytope) -> LatticePolytope:
    """For reflexive P the vertices of the dual are the primitive facet normals."""
    if not is_reflexive(P):
        raise CapabilityError("dual of a non-reflexive polytope is not a lattice polytope")
    return LatticePolytope([h.a for h in P.hrep])


def _adjugate(m) -> tuple[tuple[int, ...], ...]:
    dm = det(m)
    inv = inverse(m)
    return tuple(tuple(int(x * dm) for x in r) for r in inv), dm


def _solve_integral(adj, dm, E2):
    """``U = E1^-1 E2`` if integral, else None; bails at the first fractional entry."""
    d = len(E2)
    U = [[0] * d for _ in range(d)]
    for c in range(d):
        col = [E2[i][c] for i in range(d)]
        for r in range(d):
            s = 0
            row = adj[r]
            for i in range(d):
                s += row[i] * col[i]
            q, rem = divmod(s, dm)
            if rem:
                return None
            U[r][c] = q
    return U


def find_equivalence(P1: LatticePolytope, P2: LatticePolytope) -> AffineUnimodularMap | None:
    """An affine unimodular map taking simplex P1 onto simplex P2, or None.

    The first vertex of P1 is sent to each vertex ``w`` of P2 in turn, and the
    remaining vertices to every ordering of the rest; the edge matrices then
    determine ``U``. The first success in this lexicographic order is returned.
    """
    if not (P1.is_simplex and P2.is_simplex):
        raise CapabilityError("equivalence search is implemented for simplices only")
    if P1.dim != P2.dim:
        raise DimensionError("polytopes of different dimension")
    if normalized_volume(P1) != normalized_volume(P2):
        return None
    v0, *rest1 = P1.vertices
    E1 = [vsub(v, v0) for v in rest1]
    adj, dm = _adjugate(E1)
    target = P2.vertices
    for wi, w in enumerate(target):
        others = target[:wi] + target[wi + 1:]
        diffs = [vsub(u, w) for u in others]
        for order in itertools.permutations(range(len(others))):
            U = _solve_integral(adj, dm, [diffs[j] for j in order])
            if U is None or det(U) not in (1, -1):
                continue
            shift = vsub(w, vecmat(v0, U))
            m = AffineUnimodularMap(U, shift)
            if apply_map(P1, m) == P2:
                return m
    return None


def is_self_dual(P: LatticePolytope) -> AffineUnimodularMap | None:
    """A verified map from P onto its dual, or None if the simplex is not self-dual."""
    if not P.is_simplex:
        raise CapabilityError("self-duality decision is implemented for simplices only")
    dual = dual_polytope(P)
    m = find_equivalence(P, dual)
    if m is not None and apply_map(P, m) != dual:
        raise AssertionError("equivalence search returned a map that does not reproduce the dual")
    return m
