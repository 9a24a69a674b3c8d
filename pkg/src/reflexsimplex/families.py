"""Closed-form constructors: the self-dual simplices Q_n and the lecture hall simplices R_n.

Displayed vertex matrices are read bottom row first: the last row of the
display is coordinate ``x_1``. Columns are the vertices, and each vertex
carries its column index as its label.
"""

from __future__ import annotations

from .exact_math import IntMatrix, vecmat
from .polytope import AffineUnimodularMap, HalfSpace, HRep, LatticePolytope


def _check(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"family index must be an integer >= 2, got {n!r}")


def _from_display(rows: list[list[int]]) -> LatticePolytope:
    """Polytope whose vertices are the columns of a displayed matrix (bottom row = x_1)."""
    coords = rows[::-1]
    cols = [tuple(r[j] for r in coords) for j in range(len(rows[0]))]
    return LatticePolytope(cols, labels=list(range(len(cols))))


def qn_display(n: int) -> list[list[int]]:
    """Rows of the Q_n vertex matrix, top to bottom."""
    _check(n)
    rows = []
    for r in range(1, n):
        rows.append([1] * r + [r - n] + [0] * (n - 1 - r))
    return rows


def make_Qn(n: int) -> LatticePolytope:
    return _from_display(qn_display(n))


def qn_functional(n: int, k: int):
    """Coefficient vector of the k-th facet functional of Q_n, ``1 <= k <= n``."""
    _check(n)
    if not 1 <= k <= n:
        raise ValueError(f"functional index must lie in 1..{n}")
    if k == n:
        return tuple([-1] * (n - 1))
    return tuple([-1] * (k - 1) + [k] + [0] * (n - 1 - k))


def hrep_Qn(n: int) -> HRep:
    """``k x_k - sum_{i<k} x_i <= 1`` for ``1 <= k <= n-1`` and ``-sum x_i <= 1``."""
    _check(n)
    return HRep(tuple(HalfSpace(qn_functional(n, k), 1) for k in range(1, n + 1)), n - 1)


def rn_display(n: int) -> list[list[int]]:
    """Rows of the R_n vertex matrix, top to bottom: row r holds n-r+1 from column r on."""
    _check(n)
    return [[0] * r + [n - r + 1] * (n + 1 - r) for r in range(1, n + 1)]


def make_Rn(n: int) -> LatticePolytope:
    return _from_display(rn_display(n))


def make_Rn_tilde(n: int) -> LatticePolytope:
    """R_n with its last column and its n-th (bottom) displayed row removed."""
    rows = [r[:-1] for r in rn_display(n)[:-1]]
    return _from_display(rows)


def make_Un(n: int) -> IntMatrix:
    _check(n)
    m = n - 1
    return tuple(tuple(int(i <= j) for j in range(m)) for i in range(m))


def ones(n: int) -> tuple[int, ...]:
    _check(n)
    return (1,) * (n - 1)


def zeros(n: int) -> tuple[int, ...]:
    _check(n)
    return (0,) * (n - 1)


def qn_to_rntilde(n: int) -> AffineUnimodularMap:
    """``x -> -((x - 1) U_n)`` as one map: ``U = -U_n``, ``v = 1 U_n``."""
    Un = make_Un(n)
    return AffineUnimodularMap(tuple(tuple(-x for x in r) for r in Un), vecmat(ones(n), Un))


FAMILIES = {"qn": make_Qn, "rn": make_Rn, "rntilde": make_Rn_tilde}
