"""Exact integer/rational linear algebra, polynomials and Fourier-Motzkin elimination.

Vectors are tuples of Python ints (or ``Fraction``), matrices are tuples of
row tuples. Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]
RatVector = tuple[Fraction, ...]

FM_MAX_DIM = 8


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class SingularMatrixError(ValueError):
    pass


class DegenerateInputError(ValueError):
    pass


class CapabilityError(ValueError):
    """Input lies outside the guarded range an algorithm supports."""


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    if a and len(a[0]) != len(b):
        raise DimensionError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def vecmat(v: Sequence, m: Sequence[Sequence]) -> tuple:
    """Row vector times matrix, ``v M``."""
    if len(v) != len(m):
        raise DimensionError(f"vector of length {len(v)} against {len(m)} matrix rows")
    n = len(m[0]) if m else 0
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(n))


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionError(f"dot of lengths {len(u)} and {len(v)}")
    return sum(x * y for x, y in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(u, v))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(u, v))


def _check_square(m: Sequence[Sequence]) -> int:
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("matrix is not square")
    return n


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination.

    >>> det([[0, -3], [-2, -1]])
    -6
    """
    n = _check_square(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in r] for r in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def solve_exact(a: Sequence[Sequence[int]], b: Sequence[int]) -> RatVector:
    """Solve ``A x = b`` exactly.

    Forward elimination is fraction-free on the augmented matrix; only the
    back substitution produces rationals.
    """
    n = _check_square(a)
    if len(b) != n:
        raise DimensionError("right-hand side length does not match matrix")
    m = [list(r) + [bi] for r, bi in zip(a, b)]
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            m[k], m[piv] = m[piv], m[k]
        akk = m[k][k]
        for i in range(k + 1, n):
            aik = m[i][k]
            for j in range(k + 1, n + 1):
                m[i][j] = (m[i][j] * akk - aik * m[k][j]) // prev
            m[i][k] = 0
        prev = akk
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(m[i][n]) - sum(m[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / m[i][i]
    return tuple(x)


def inverse(m: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact rational inverse by Gauss-Jordan."""
    n = _check_square(m)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(r[n:]) for r in a)


def int_inverse(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Inverse of a unimodular integer matrix; raises if it is not integral."""
    inv = inverse(m)
    if any(x.denominator != 1 for r in inv for x in r):
        raise ValueError("matrix inverse is not integral")
    return tuple(tuple(int(x) for x in r) for r in inv)


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    try:
        return det(m) in (1, -1)
    except DimensionError:
        return False


def primitive(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries."""
    g = reduce(gcd, (abs(x) for x in v), 0)
    if g == 0:
        raise DegenerateInputError("zero vector has no primitive direction")
    return tuple(x // g for x in v)


def hyperplane_normal(points: Sequence[Sequence[int]]) -> IntVector:
    """Nonzero integer normal of the affine hyperplane through ``d`` points of Z^d.

    Uses the generalized cross product of the edge vectors. Returns the zero
    vector when the points are affinely dependent.
    """
    d = len(points[0])
    if len(points) != d:
        raise DimensionError(f"need {d} points in dimension {d}, got {len(points)}")
    if d == 1:
        return (1,)
    edges = [vsub(p, points[0]) for p in points[1:]]
    normal = []
    for col in range(d):
        minor = [e[:col] + e[col + 1:] for e in edges]
        normal.append((-1) ** col * det(minor))
    return tuple(normal)


# ---------------------------------------------------------------------------
# polynomials


def _strip(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _format_poly(coeffs: Sequence, var: str) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial ``c_0 + c_1 z + ...``; trailing zeros are stripped."""

    coeffs: IntVector = ()

    def __post_init__(self):
        stripped = _strip(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", stripped)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def padded(self, length: int) -> IntVector:
        if length < len(self.coeffs):
            raise ValueError("padding shorter than the polynomial")
        return self.coeffs + (0,) * (length - len(self.coeffs))

    def is_palindromic(self, degree: int | None = None) -> bool:
        """Symmetric about ``degree/2`` (defaults to the actual degree)."""
        d = self.degree if degree is None else degree
        if self.degree > d:
            return False
        c = self.padded(d + 1)
        return c == c[::-1]

    def __str__(self) -> str:
        return _format_poly(self.coeffs, "z")


@dataclass(frozen=True)
class RatPolynomial:
    """Rational polynomial in ``k``, coefficients stored reduced."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(Fraction(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, k):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __str__(self) -> str:
        return _format_poly(self.coeffs, "k")


def lagrange_interpolate(samples: Sequence[tuple[int, int]]) -> RatPolynomial:
    """Unique polynomial of degree < len(samples) through the given points.

    Built in Newton form with divided differences, then expanded.
    """
    xs = [Fraction(x) for x, _ in samples]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae in interpolation samples")
    n = len(xs)
    table = [Fraction(y) for _, y in samples]
    newton = [table[0]]
    for level in range(1, n):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
        newton.append(table[0])
    poly = [Fraction(0)] * n
    basis = [Fraction(1)]
    for i, c in enumerate(newton):
        for j, b in enumerate(basis):
            poly[j] += c * b
        # basis *= (k - xs[i])
        nxt = [Fraction(0)] * (len(basis) + 1)
        for j, b in enumerate(basis):
            nxt[j + 1] += b
            nxt[j] -= xs[i] * b
        basis = nxt
    return RatPolynomial(tuple(poly))


# ---------------------------------------------------------------------------
# Fourier-Motzkin


def _row_of(h) -> tuple[IntVector, int]:
    if hasattr(h, "a"):
        return tuple(h.a), int(h.b)
    a, b = h
    return tuple(int(x) for x in a), int(b)


def _normalize(a: IntVector, b: int) -> tuple[IntVector, int]:
    g = reduce(gcd, (abs(x) for x in a), abs(b))
    if g > 1:
        return tuple(x // g for x in a), b // g
    return a, b


@dataclass(frozen=True)
class _Row:
    a: IntVector
    b: int
    strict: bool
    history: frozenset


def _dedupe(rows: list[_Row]) -> list[_Row]:
    best: dict[IntVector, tuple[Fraction, _Row]] = {}
    for r in rows:
        g = reduce(gcd, (abs(x) for x in r.a), 0)
        key = tuple(x // g for x in r.a)
        bound = Fraction(r.b, g)
        cur = best.get(key)
        if cur is None or bound < cur[0] or (bound == cur[0] and r.strict and not cur[1].strict):
            best[key] = (bound, r)
    return [r for _, r in best.values()]


def _eliminate_last(rows: list[_Row], eliminated: int, prune: bool = True) -> list[_Row] | None:
    """Project out the last coordinate. Returns None when a contradiction appears."""
    pos, neg, out = [], [], []
    for r in rows:
        c = r.a[-1]
        if c > 0:
            pos.append(r)
        elif c < 0:
            neg.append(r)
        else:
            out.append(_Row(r.a[:-1], r.b, r.strict, r.history))
    for p in pos:
        cp = p.a[-1]
        for q in neg:
            hist = p.history | q.history
            # Chernikov: after k eliminations a combination of more than k+1
            # original rows is redundant.
            if prune and len(hist) > eliminated + 2:
                continue
            cq = -q.a[-1]
            a = tuple(cq * x + cp * y for x, y in zip(p.a[:-1], q.a[:-1]))
            b = cq * p.b + cp * q.b
            a, b = _normalize(a, b)
            out.append(_Row(a, b, p.strict or q.strict, hist))
    kept = []
    for r in out:
        if all(x == 0 for x in r.a):
            if r.b < 0 or (r.b == 0 and r.strict):
                return None
            continue
        kept.append(r)
    return _dedupe(kept)


def _initial_rows(constraints, strict_mask) -> list[_Row]:
    rows = []
    for i, h in enumerate(constraints):
        a, b = _normalize(*_row_of(h))
        rows.append(_Row(a, b, bool(strict_mask[i]) if strict_mask else False, frozenset([i])))
    return rows


def _pick(rows: list[_Row], prefix: list[Fraction]) -> Fraction | None:
    """Value for the next coordinate given fixed earlier ones, or None if none fits."""
    lo, lo_strict, hi, hi_strict = None, False, None, False
    for r in rows:
        c = r.a[-1]
        rest = r.b - sum(x * y for x, y in zip(r.a[:-1], prefix))
        if c == 0:
            if rest < 0 or (rest == 0 and r.strict):
                return None
            continue
        bound = Fraction(rest) / c
        if c > 0:
            if hi is None or bound < hi or (bound == hi and r.strict):
                hi, hi_strict = bound, r.strict
        else:
            if lo is None or bound > lo or (bound == lo and r.strict):
                lo, lo_strict = bound, r.strict
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    if lo < hi:
        return (lo + hi) / 2
    if lo == hi and not lo_strict and not hi_strict:
        return lo
    return None


def fm_witness(constraints: Sequence, strict_mask: Sequence[bool] | None = None) -> RatVector | None:
    """A rational point satisfying the mixed system, or None if it is infeasible.

    Infeasibility is always backed by a derived contradiction; feasibility by
    a back-substituted point checked against the original rows.
    """
    if not constraints:
        return ()
    dim = len(_row_of(constraints[0])[0])
    if dim > FM_MAX_DIM:
        raise CapabilityError(f"Fourier-Motzkin limited to dimension {FM_MAX_DIM}, got {dim}")
    if strict_mask is not None and len(strict_mask) != len(constraints):
        raise DimensionError("strict_mask length differs from constraint count")
    rows = _initial_rows(constraints, strict_mask)
    if any(len(r.a) != dim for r in rows):
        raise DimensionError("constraints of mixed dimension")
    for r in rows:
        if all(x == 0 for x in r.a) and (r.b < 0 or (r.b == 0 and r.strict)):
            return None
    for prune in (True, False):
        levels = [[r for r in rows if any(r.a)]]
        for t in range(dim):
            nxt = _eliminate_last(levels[-1], t, prune)
            if nxt is None:
                return None
            levels.append(nxt)
        point: list[Fraction] = []
        for lvl in reversed(levels[:-1]):
            x = _pick(lvl, point)
            if x is None:
                break
            point.append(x)
        else:
            if all(_satisfies(r, point) for r in rows):
                return tuple(point)
    raise AssertionError("unpruned Fourier-Motzkin failed to produce a witness")


def _satisfies(r: _Row, x: Sequence[Fraction]) -> bool:
    s = sum(a * v for a, v in zip(r.a, x))
    return s < r.b if r.strict else s <= r.b


def fm_feasible(constraints: Sequence, strict_mask: Sequence[bool] | None = None) -> bool:
    """Decide feasibility of a mixed strict/non-strict system ``a.x <= b`` / ``a.x < b``.

    ``constraints`` holds ``(a, b)`` pairs or objects with ``.a`` and ``.b``.
    """
    return fm_witness(constraints, strict_mask) is not None


def fm_projection_chain(constraints: Sequence) -> list[list[tuple[IntVector, int]]]:
    """Successive projections of a non-strict system onto x_1..x_j.

    Entry ``j-1`` of the result is the system for coordinates ``x_1..x_j``;
    the last entry is the (normalized) input itself. Projections may keep
    redundant rows but are never tighter than the true shadow.
    """
    rows = _initial_rows(constraints, None)
    dim = len(rows[0].a)
    levels = [rows]
    for t in range(dim - 1):
        nxt = _eliminate_last(levels[-1], t)
        if nxt is None:
            nxt = _infeasible_rows(dim - t - 1)
        levels.append(nxt)
    return [[(r.a, r.b) for r in lvl] for lvl in reversed(levels)]


def _infeasible_rows(dim: int) -> list[_Row]:
    e = tuple(int(i == 0) for i in range(dim))
    f = tuple(-x for x in e)
    return [_Row(e, -1, False, frozenset()), _Row(f, 0, False, frozenset())]
