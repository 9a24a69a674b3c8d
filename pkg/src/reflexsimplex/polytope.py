"""Full-dimensional lattice polytopes in V-representation with cached facets."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Literal, Sequence

from .exact_math import (
    CapabilityError,
    DegenerateInputError,
    DimensionError,
    IntMatrix,
    IntVector,
    det,
    dot,
    fm_projection_chain,
    hyperplane_normal,
    identity,
    int_inverse,
    matmul,
    primitive,
    rank,
    vadd,
    vecmat,
    vsub,
)

Mode = Literal["closed", "interior"]


@dataclass(frozen=True)
class HalfSpace:
    """The inequality ``a . x <= b`` with primitive integer ``a``."""

    a: IntVector
    b: int

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        if primitive(a) != a:
            raise ValueError(f"normal {a} is not primitive")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", int(self.b))

    def value(self, x: Sequence[int]) -> int:
        return dot(self.a, x)

    def slack(self, x: Sequence[int]) -> int:
        return self.b - dot(self.a, x)

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": self.b}


@dataclass(frozen=True)
class HRep:
    halfspaces: tuple[HalfSpace, ...]
    dim: int

    def __iter__(self) -> Iterator[HalfSpace]:
        return iter(self.halfspaces)

    def __len__(self) -> int:
        return len(self.halfspaces)

    def as_set(self) -> frozenset[HalfSpace]:
        return frozenset(self.halfspaces)

    def scaled(self, k: int) -> HRep:
        return HRep(tuple(HalfSpace(h.a, k * h.b) for h in self), self.dim)

    def shifted(self, v: Sequence[int]) -> HRep:
        return HRep(tuple(HalfSpace(h.a, h.b + dot(h.a, v)) for h in self), self.dim)


@dataclass(frozen=True)
class AffineUnimodularMap:
    """``x -> x U + v`` with ``det U = +-1`` (row-vector convention)."""

    U: IntMatrix
    v: IntVector

    def __post_init__(self):
        U = tuple(tuple(int(x) for x in r) for r in self.U)
        v = tuple(int(x) for x in self.v)
        if len(U) != len(v) or any(len(r) != len(v) for r in U):
            raise DimensionError("U must be d x d and v of length d")
        if det(U) not in (1, -1):
            raise ValueError("U is not unimodular")
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "v", v)

    @classmethod
    def identity(cls, d: int) -> AffineUnimodularMap:
        return cls(identity(d), (0,) * d)

    @property
    def dim(self) -> int:
        return len(self.v)

    def __call__(self, x: Sequence[int]) -> IntVector:
        return vadd(vecmat(x, self.U), self.v)

    def then(self, other: AffineUnimodularMap) -> AffineUnimodularMap:
        """Apply ``self`` first, then ``other``."""
        return AffineUnimodularMap(matmul(self.U, other.U), other(self.v))

    def inverse(self) -> AffineUnimodularMap:
        inv = int_inverse(self.U)
        return AffineUnimodularMap(inv, tuple(-x for x in vecmat(self.v, inv)))

    def to_json(self) -> dict:
        return {"U": [list(r) for r in self.U], "v": list(self.v)}

    @classmethod
    def from_json(cls, data: dict) -> AffineUnimodularMap:
        return cls(data["U"], data["v"])


@dataclass(frozen=True, eq=False)
class LatticePolytope:
    """Convex hull of integer points, stored as a sorted irredundant vertex list.

    Construction drops points that are not vertices and rejects inputs that
    are not full-dimensional. ``labels`` optionally tags each (sorted) vertex.
    """

    vertices: tuple[IntVector, ...]
    labels: tuple | None = field(default=None, compare=False)
    _hrep: HRep | None = field(default=None, compare=False, repr=False)

    def __init__(self, vertices: Iterable[Sequence[int]], labels: Sequence | None = None,
                 _hrep: HRep | None = None):
        pts = [tuple(int(x) for x in p) for p in vertices]
        if not pts:
            raise DegenerateInputError("empty vertex list")
        d = len(pts[0])
        if d < 1 or any(len(p) != d for p in pts):
            raise DimensionError("vertices must share a common dimension >= 1")
        if labels is not None:
            if len(labels) != len(pts):
                raise DimensionError("one label per vertex required")
            tagged = dict(zip(pts, labels))
        uniq = sorted(set(pts))
        if len(uniq) < d + 1 or rank([vsub(p, uniq[0]) for p in uniq[1:]]) < d:
            raise DegenerateInputError(f"vertices do not span a {d}-dimensional polytope")
        if len(uniq) > d + 1:
            facets = _facets_bruteforce(uniq)
            uniq = [p for p in uniq if _is_vertex(p, facets)]
            if _hrep is None:
                _hrep = HRep(tuple(facets), d)
        object.__setattr__(self, "vertices", tuple(uniq))
        object.__setattr__(self, "labels", tuple(tagged[p] for p in uniq) if labels is not None else None)
        object.__setattr__(self, "_hrep", _hrep)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        kind = "simplex" if self.is_simplex else "polytope"
        return f"LatticePolytope({self.dim}-{kind}, vertices={[list(v) for v in self.vertices]})"

    @cached_property
    def hrep(self) -> HRep:
        if self._hrep is not None:
            return self._hrep
        return simplex_hrep(self)

    def vertex(self, label) -> IntVector:
        if self.labels is None:
            raise KeyError("polytope carries no labels")
        return self.vertices[self.labels.index(label)]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": [list(v) for v in self.vertices],
            "inequalities": [h.to_json() for h in self.hrep],
        }

    @classmethod
    def from_json(cls, data: dict) -> LatticePolytope:
        try:
            verts = data["vertices"]
        except (KeyError, TypeError):
            raise ValueError("polytope JSON needs a 'vertices' field") from None
        if not isinstance(verts, list) or not all(
            isinstance(v, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in v) for v in verts
        ):
            raise ValueError("'vertices' must be a list of integer lists")
        P = cls(verts)
        if "dim" in data and data["dim"] != P.dim:
            raise DimensionError(f"'dim' is {data['dim']} but vertices live in dimension {P.dim}")
        for i, ineq in enumerate(data.get("inequalities") or []):
            a, b = ineq["a"], ineq["b"]
            if len(a) != P.dim:
                raise DimensionError(f"'inequalities[{i}].a' has length {len(a)}, expected {P.dim}")
            if any(dot(a, v) > b for v in P.vertices):
                raise ValueError(f"'inequalities[{i}]' is violated by a vertex")
        return P


def dumps(P: LatticePolytope) -> str:
    return json.dumps(P.to_json())


def loads(text: str) -> LatticePolytope:
    return LatticePolytope.from_json(json.loads(text))


def _oriented_facet(facet_pts: Sequence[IntVector], reference: Sequence[IntVector]) -> HalfSpace | None:
    normal = hyperplane_normal(facet_pts)
    if not any(normal):
        return None
    a = primitive(normal)
    b = dot(a, facet_pts[0])
    vals = [dot(a, p) for p in reference]
    if all(x <= b for x in vals):
        return HalfSpace(a, b)
    if all(x >= b for x in vals):
        return HalfSpace(tuple(-x for x in a), -b)
    return None


def _facets_bruteforce(points: Sequence[IntVector]) -> list[HalfSpace]:
    """Facets of conv(points) by testing every d-subset as a supporting hyperplane."""
    d = len(points[0])
    found: dict[HalfSpace, None] = {}
    for subset in itertools.combinations(points, d):
        h = _oriented_facet(subset, points)
        if h is not None:
            found.setdefault(h)
    return list(found)


def _is_vertex(p: IntVector, facets: Sequence[HalfSpace]) -> bool:
    tight = [h.a for h in facets if h.value(p) == h.b]
    return len(tight) >= len(p) and rank(tight) == len(p)


def simplex_hrep(S: LatticePolytope) -> HRep:
    """One primitive outward facet inequality per vertex, facet ``i`` omitting vertex ``i``."""
    if not S.is_simplex:
        raise CapabilityError("simplex_hrep needs a simplex; general polytopes use their cached facets")
    verts = S.vertices
    out = []
    for i, opposite in enumerate(verts):
        facet = verts[:i] + verts[i + 1:]
        h = _oriented_facet(facet, verts)
        if h is None or h.value(opposite) == h.b:
            raise DegenerateInputError("simplex is not full-dimensional")
        out.append(h)
    return HRep(tuple(out), S.dim)


def contains(H: HRep, p: Sequence[int], mode: Mode = "closed") -> bool:
    if len(p) != H.dim:
        raise DimensionError(f"point of dimension {len(p)} tested against {H.dim}-dimensional H-rep")
    if mode == "closed":
        return all(h.value(p) <= h.b for h in H)
    if mode == "interior":
        return all(h.value(p) < h.b for h in H)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# enumeration


def _prepare_levels(rows: Sequence[tuple[IntVector, int]]):
    chain = fm_projection_chain(rows)
    levels = []
    for j, lvl in enumerate(chain):
        uppers, lowers = [], []
        for a, b in lvl:
            c = a[j]
            if c > 0:
                uppers.append((c, a[:j], b))
            elif c < 0:
                lowers.append((-c, a[:j], b))
        if not uppers or not lowers:
            raise DegenerateInputError("system is unbounded; cannot enumerate")
        levels.append((tuple(uppers), tuple(lowers)))
    return tuple(levels)


@lru_cache(maxsize=256)
def _levels_for(rows: tuple[tuple[IntVector, int], ...]):
    return _prepare_levels(rows)


def _bounds(level, prefix, scale):
    uppers, lowers = level
    hi = min((scale * b - sum(x * y for x, y in zip(a, prefix))) // c for c, a, b in uppers)
    lo = max(-((scale * b - sum(x * y for x, y in zip(a, prefix))) // c) for c, a, b in lowers)
    return lo, hi


def _walk(levels, scale: int, count_only: bool):
    d = len(levels)
    last = d - 1
    out: list[IntVector] = []
    total = 0

    def rec(j: int, prefix: list[int]):
        nonlocal total
        lo, hi = _bounds(levels[j], prefix, scale)
        if hi < lo:
            return
        if j == last:
            if count_only:
                total += hi - lo + 1
            else:
                base = tuple(prefix)
                out.extend(base + (x,) for x in range(lo, hi + 1))
            return
        for x in range(lo, hi + 1):
            prefix.append(x)
            rec(j + 1, prefix)
            prefix.pop()

    rec(0, [])
    return total if count_only else out


def _scaled_rows(P: LatticePolytope, mode: Mode, k: int):
    rows = tuple((h.a, h.b) for h in P.hrep)
    if mode == "closed":
        return _levels_for(rows), k
    if mode == "interior":
        # for integer points a.x < kb is a.x <= kb - 1; not a scaling of P's chain
        return _levels_for(tuple((a, k * b - 1) for a, b in rows)), 1
    raise ValueError(f"unknown mode {mode!r}")


def lattice_points(P: LatticePolytope, mode: Mode = "closed") -> list[IntVector]:
    """All integer points of P (or of its interior), sorted lexicographically.

    Coordinates are fixed one at a time, ``x_j`` ranging over the exact
    bounds of the projection of P onto ``x_1..x_j`` at the current prefix.
    """
    levels, scale = _scaled_rows(P, mode, 1)
    return _walk(levels, scale, count_only=False)


def count_lattice_points(P: LatticePolytope, mode: Mode = "closed", k: int = 1) -> int:
    """``#(kP cap Z^d)`` (or interior) without materializing the points."""
    if k < 1:
        raise ValueError("dilation factor must be positive")
    levels, scale = _scaled_rows(P, mode, k)
    return _walk(levels, scale, count_only=True)


# ---------------------------------------------------------------------------
# constructions


def normalized_volume(S: LatticePolytope) -> int:
    """``d!`` times Euclidean volume of a simplex."""
    if not S.is_simplex:
        raise CapabilityError("normalized_volume is defined here for simplices only")
    v0 = S.vertices[0]
    return abs(det([vsub(v, v0) for v in S.vertices[1:]]))


def dilate(P: LatticePolytope, k: int) -> LatticePolytope:
    if k < 1:
        raise ValueError("dilation factor must be a positive integer")
    return LatticePolytope([tuple(k * x for x in v) for v in P.vertices], P.labels, P.hrep.scaled(k))


def translate(P: LatticePolytope, v: Sequence[int]) -> LatticePolytope:
    if len(v) != P.dim:
        raise DimensionError("translation vector dimension mismatch")
    return LatticePolytope([vadd(p, v) for p in P.vertices], P.labels, P.hrep.shifted(v))


def negate(P: LatticePolytope) -> LatticePolytope:
    d = P.dim
    return apply_map(P, AffineUnimodularMap(tuple(tuple(-int(i == j) for j in range(d)) for i in range(d)), (0,) * d))


def pyramid(P: LatticePolytope) -> LatticePolytope:
    """``conv(P x {0}, e_{d+1})``."""
    apex = (0,) * P.dim + (1,)
    if P.labels is None:
        return LatticePolytope([v + (0,) for v in P.vertices] + [apex])
    return LatticePolytope([v + (0,) for v in P.vertices] + [apex], list(P.labels) + ["apex"])


def apply_map(P: LatticePolytope, m: AffineUnimodularMap) -> LatticePolytope:
    if m.dim != P.dim:
        raise DimensionError(f"{m.dim}-dimensional map applied to {P.dim}-dimensional polytope")
    return LatticePolytope([m(v) for v in P.vertices], P.labels)
