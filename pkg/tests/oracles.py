"""Slow, independent reference computations used to cross-check the library.

Nothing here goes through Fourier-Motzkin or the cached facet lists.
"""

from fractions import Fraction
import itertools


def det_cofactor(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det_cofactor([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(n) if m[0][j])


def gauss_solve(a, b):
    """Plain rational Gauss-Jordan elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        m[c] = [x / m[c][c] for x in m[c]]
        for i in range(n):
            if i != c:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return tuple(r[n] for r in m)


def barycentric(simplex_vertices, p):
    """Barycentric coordinates of p in a d-simplex."""
    v0 = simplex_vertices[0]
    d = len(v0)
    # columns are edge vectors
    a = [[simplex_vertices[j + 1][i] - v0[i] for j in range(d)] for i in range(d)]
    lam = gauss_solve(a, [p[i] - v0[i] for i in range(d)])
    return (1 - sum(lam),) + tuple(lam)


def brute_points(simplex_vertices, k=1, interior=False):
    """Lattice points of k*simplex by scanning the bounding box."""
    verts = [tuple(k * x for x in v) for v in simplex_vertices]
    d = len(verts[0])
    box = [range(min(v[i] for v in verts), max(v[i] for v in verts) + 1) for i in range(d)]
    out = []
    for p in itertools.product(*box):
        lam = barycentric(verts, p)
        if all((x > 0) if interior else (x >= 0) for x in lam):
            out.append(p)
    return sorted(out)


def delta_by_series(counts, d):
    """Multiply sum_k i(k) z^k by (1-z)^(d+1) and truncate at degree d."""
    series = [counts[k] for k in range(d + 1)]
    for _ in range(d + 1):
        series = [series[0]] + [series[i] - series[i - 1] for i in range(1, len(series))]
    return series


def random_unimodular(rng, d, steps=6):
    """Product of random elementary integer matrices and sign flips."""
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2) if d > 1 else (0, 0)
        c = rng.choice([-2, -1, 1, 2])
        if i != j:
            m[i] = [x + c * y for x, y in zip(m[i], m[j])]
        if rng.random() < 0.3:
            r = rng.randrange(d)
            m[r] = [-x for x in m[r]]
        if rng.random() < 0.3 and d > 1:
            a, b = rng.sample(range(d), 2)
            m[a], m[b] = m[b], m[a]
    return m
