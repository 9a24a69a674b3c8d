"""Triangulation certificates: covering, unimodularity, flagness and regularity.

Regularity is only ever certified by an explicit height vector. Random
searches draw heights from a seeded generator, so every certificate can
be reproduced from ``(seed, trial)``.
"""

from __future__ import annotations

import itertools
import json
import logging
from math import lcm
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import networkx as nx
import numpy as np

from .exact_math import (
    CapabilityError,
    DegenerateInputError,
    DimensionError,
    IntVector,
    det,
    dot,
    fm_feasible,
    solve_exact,
    vsub,
)
from .polytope import LatticePolytope, _oriented_facet, contains, lattice_points, normalized_volume

log = logging.getLogger(__name__)

MAX_LIFT_DIM = 5
MAX_LIFT_POINTS = 40
HEIGHT_RANGE = 2**20


class DegenerateHeightsError(DegenerateInputError):
    """Heights do not induce a triangulation (some lower face is not a simplex)."""


@dataclass(frozen=True)
class PointConfiguration:
    points: tuple[IntVector, ...]

    def __init__(self, points: Sequence[Sequence[int]]):
        pts = tuple(tuple(int(x) for x in p) for p in points)
        if not pts or any(len(p) != len(pts[0]) for p in pts):
            raise DimensionError("points must be nonempty and share a dimension")
        if len(set(pts)) != len(pts):
            raise ValueError("configuration points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Triangulation:
    config: PointConfiguration
    cells: tuple[tuple[int, ...], ...]
    heights: tuple | None = None

    def __init__(self, config: PointConfiguration, cells, heights=None):
        d = config.dim
        norm = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in cells))
        for c in norm:
            if len(c) != d + 1 or len(set(c)) != d + 1:
                raise ValueError(f"cell {list(c)} does not have {d + 1} distinct indices")
            if c[0] < 0 or c[-1] >= len(config):
                raise IndexError(f"cell {list(c)} references a missing point")
            if cell_det(config, c) == 0:
                raise DegenerateInputError(f"cell {list(c)} is affinely dependent")
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate cells")
        if heights is not None:
            heights = tuple(heights)
            if len(heights) != len(config):
                raise DimensionError("one height per point required")
        object.__setattr__(self, "config", config)
        object.__setattr__(self, "cells", norm)
        object.__setattr__(self, "heights", heights)

    @property
    def used_points(self) -> frozenset[int]:
        return frozenset(i for c in self.cells for i in c)

    @property
    def uses_all_points(self) -> bool:
        return len(self.used_points) == len(self.config)

    def to_json(self) -> dict:
        out = {"points": [list(p) for p in self.config.points], "cells": [list(c) for c in self.cells]}
        if self.heights is not None:
            out["heights"] = [int(h) if Fraction(h).denominator == 1 else str(h) for h in self.heights]
        return out

    @classmethod
    def from_json(cls, data: dict) -> Triangulation:
        for key in ("points", "cells"):
            if key not in data:
                raise ValueError(f"triangulation JSON needs a '{key}' field")
        heights = data.get("heights")
        if heights is not None:
            heights = [Fraction(h) for h in heights]
        return cls(PointConfiguration(data["points"]), data["cells"], heights)


def dumps(T: Triangulation) -> str:
    return json.dumps(T.to_json())


def loads(text: str) -> Triangulation:
    return Triangulation.from_json(json.loads(text))


def cell_det(config: PointConfiguration, cell: Sequence[int]) -> int:
    p0 = config.points[cell[0]]
    return det([vsub(config.points[i], p0) for i in cell[1:]])


def _cell_hrep(config: PointConfiguration, cell: Sequence[int]):
    pts = [config.points[i] for i in cell]
    rows = []
    for i in range(len(pts)):
        h = _oriented_facet(pts[:i] + pts[i + 1:], pts)
        rows.append((h.a, h.b))
    return rows


def interiors_intersect(config: PointConfiguration, c1: Sequence[int], c2: Sequence[int]) -> bool:
    rows = _cell_hrep(config, c1) + _cell_hrep(config, c2)
    return fm_feasible(rows, [True] * len(rows))


def polytope_volume(P: LatticePolytope, seed: int = 0) -> int:
    """Normalized volume; non-simplices are triangulated by a random lift of their vertices."""
    if P.is_simplex:
        return normalized_volume(P)
    config = PointConfiguration(P.vertices)
    rng = np.random.default_rng(seed)
    for _ in range(100):
        w = [int(x) for x in rng.integers(0, HEIGHT_RANGE, size=len(config))]
        try:
            T = _lower_envelope(config, w)
        except DegenerateHeightsError:
            continue
        return sum(abs(cell_det(config, c)) for c in T)
    raise RuntimeError("could not find generic heights for the vertex configuration")


@dataclass(frozen=True)
class CoveringReport:
    volume_sum: int
    target_volume: int | None
    overlapping: tuple[tuple[int, int], ...]
    boundary_ok: bool
    uses_all_points: bool
    allow_sub_configuration: bool = False

    @property
    def covering(self) -> bool:
        if self.overlapping:
            return False
        if self.target_volume is not None:
            return self.volume_sum == self.target_volume
        return self.boundary_ok

    def __bool__(self) -> bool:
        return self.covering and (self.uses_all_points or self.allow_sub_configuration)


def _pseudomanifold_boundary_ok(T: Triangulation) -> bool:
    """Every ridge is shared by two cells or lies on a facet of conv(points)."""
    pts = T.config.points
    ridges: dict[tuple[int, ...], int] = {}
    for c in T.cells:
        for i in range(len(c)):
            r = c[:i] + c[i + 1:]
            ridges[r] = ridges.get(r, 0) + 1
    for r, n in ridges.items():
        if n == 2:
            continue
        if n > 2:
            return False
        if _oriented_facet([pts[i] for i in r], pts) is None:
            return False
    return True


def check_covering(T: Triangulation, P: LatticePolytope | None = None,
                   allow_sub_configuration: bool = False) -> CoveringReport:
    """Cells tile P: interiors pairwise disjoint and volumes summing to Vol(P).

    Without ``P`` the tiling is checked against conv(points) by ridge pairing:
    each ridge must be shared by two cells or lie on the hull boundary.
    """
    config = T.config
    target = None
    if P is not None:
        if P.dim != config.dim:
            raise DimensionError(f"{config.dim}-dimensional triangulation against {P.dim}-dimensional polytope")
        outside = [p for p in config.points if not contains(P.hrep, p)]
        if outside:
            raise ValueError(f"configuration points outside the polytope: {outside}")
        target = polytope_volume(P)
    overlapping = tuple(
        (i, j)
        for (i, c1), (j, c2) in itertools.combinations(enumerate(T.cells), 2)
        if interiors_intersect(config, c1, c2)
    )
    return CoveringReport(
        volume_sum=sum(abs(cell_det(config, c)) for c in T.cells),
        target_volume=target,
        overlapping=overlapping,
        boundary_ok=_pseudomanifold_boundary_ok(T),
        uses_all_points=T.uses_all_points,
        allow_sub_configuration=allow_sub_configuration,
    )


def check_unimodular(T: Triangulation) -> bool:
    return all(abs(cell_det(T.config, c)) == 1 for c in T.cells)


def faces_of(cells) -> set[frozenset]:
    faces: set[frozenset] = set()
    for c in cells:
        for k in range(1, len(c) + 1):
            faces.update(frozenset(s) for s in itertools.combinations(c, k))
    return faces


def is_flag_complex(cells) -> bool:
    """True iff every clique of the 1-skeleton is a face (minimal non-faces are edges)."""
    faces = faces_of(cells)
    g = nx.Graph()
    g.add_nodes_from(i for c in cells for i in c)
    g.add_edges_from(tuple(f) for f in faces if len(f) == 2)
    # faces are closed under subsets, so maximal cliques suffice
    return all(frozenset(q) in faces for q in nx.find_cliques(g))


def check_flag(T: Triangulation) -> bool:
    return is_flag_complex(T.cells)


def _lift_plane(config: PointConfiguration, cell: Sequence[int], w: Sequence):
    """Affine function ``h(x) = c.x + c0`` with ``h(p_i) = w_i`` on the cell."""
    pts = [config.points[i] for i in cell]
    # unknowns (c_1..c_d, c0); rows p_i . c + c0 = w_i
    fr = [Fraction(w[i]) for i in cell]
    denom = lcm(*(f.denominator for f in fr))
    A = [list(p) + [1] for p in pts]
    b = [int(f * denom) for f in fr]
    sol = solve_exact(A, b)
    return tuple(x / denom for x in sol[:-1]), sol[-1] / denom


@dataclass(frozen=True)
class RegularityReport:
    ok: bool
    witness: str

    def __bool__(self) -> bool:
        return self.ok


def check_regular_with_heights(T: Triangulation, w: Sequence | None = None,
                               allow_sub_configuration: bool = False) -> RegularityReport:
    """Each cell's lifted hyperplane lies strictly below every other lifted point."""
    w = T.heights if w is None else w
    if w is None:
        raise ValueError("no height vector supplied")
    config = T.config
    if len(w) != len(config):
        raise DimensionError("one height per point required")
    used = T.used_points
    if not T.uses_all_points and not allow_sub_configuration:
        missing = sorted(set(range(len(config))) - used)
        return RegularityReport(False, f"points {missing} unused under the all-points policy")
    others = sorted(used) if allow_sub_configuration else range(len(config))
    for c in T.cells:
        a, a0 = _lift_plane(config, c, w)
        cs = set(c)
        for i in others:
            if i in cs:
                continue
            if Fraction(w[i]) <= dot(a, config.points[i]) + a0:
                return RegularityReport(False, f"point {i} not strictly above the lift of cell {list(c)}")
    return RegularityReport(True, "all cells are strict lower faces of the lift")


def _lower_envelope(config: PointConfiguration, w: Sequence) -> list[tuple[int, ...]]:
    d = config.dim
    n = len(config)
    pts = config.points
    cells = []
    for cell in itertools.combinations(range(n), d + 1):
        if cell_det(config, cell) == 0:
            continue
        a, a0 = _lift_plane(config, cell, w)
        cs = set(cell)
        lower, tight = True, []
        for i in range(n):
            if i in cs:
                continue
            gap = Fraction(w[i]) - dot(a, pts[i]) - a0
            if gap < 0:
                lower = False
                break
            if gap == 0:
                tight.append(i)
        if not lower:
            continue
        if tight:
            raise DegenerateHeightsError(f"points {tight} lie on the lifted plane of cell {list(cell)}")
        cells.append(cell)
    return cells


def regular_from_heights(config: PointConfiguration, w: Sequence,
                         polytope: LatticePolytope | None = None) -> Triangulation:
    """Regular triangulation induced by the lower envelope of the lift ``p -> (p, w_p)``."""
    if config.dim > MAX_LIFT_DIM or len(config) > MAX_LIFT_POINTS:
        raise CapabilityError(f"lifting limited to dimension <= {MAX_LIFT_DIM} and <= {MAX_LIFT_POINTS} points")
    if len(w) != len(config):
        raise DimensionError("one height per point required")
    T = Triangulation(config, _lower_envelope(config, w), tuple(w))
    if not check_covering(T, polytope, allow_sub_configuration=True).covering:
        raise AssertionError("lower envelope does not cover the configuration")
    return T


@dataclass(frozen=True)
class RFUCertificate:
    triangulation: Triangulation
    heights: tuple[int, ...]
    seed: int
    trial: int

    def to_json(self) -> dict:
        out = self.triangulation.to_json()
        out.update(seed=self.seed, trial=self.trial)
        return out


def trial_heights(seed: int, trial: int, n: int) -> tuple[int, ...]:
    rng = np.random.default_rng([seed, trial])
    return tuple(int(x) for x in rng.integers(0, HEIGHT_RANGE, size=n))


def search_rfu(P: LatticePolytope, trials: int = 1000, seed: int = 0) -> RFUCertificate | None:
    """Look for a regular, flag, unimodular triangulation of all lattice points of P.

    Returns the lowest-index successful trial, or None; None is not a proof
    that no such triangulation exists.
    """
    config = PointConfiguration(lattice_points(P))
    if config.dim > MAX_LIFT_DIM or len(config) > MAX_LIFT_POINTS:
        raise CapabilityError(f"lifting limited to dimension <= {MAX_LIFT_DIM} and <= {MAX_LIFT_POINTS} points")
    for t in range(trials):
        w = trial_heights(seed, t, len(config))
        try:
            T = regular_from_heights(config, w, P)
        except DegenerateHeightsError:
            continue
        if not T.uses_all_points:
            continue
        if check_unimodular(T) and check_flag(T) and check_covering(T, P):
            log.info("trial %d produced a regular flag unimodular triangulation", t)
            return RFUCertificate(T, w, seed, t)
    return None
