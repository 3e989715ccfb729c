"""Exact rational polytopes: hulls, polar duals and lattice points.

Polytopes are always full-dimensional.  The hull is computed by the double
description method on the homogenized cone, in integer arithmetic, so no
genericity assumption is made about the input points.

Facet convention: ``<normal, x> >= offset`` with a primitive integer normal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from lgcompact.errors import (
    DuplicateRayError,
    NotFullDimensionalError,
    OriginNotInteriorError,
)


def _frac_point(p) -> tuple:
    return tuple(x if isinstance(x, Fraction) else Fraction(x) for x in p)


def _lcm(values):
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][col]
        for i in range(r + 1, len(m)):
            if m[i][col]:
                f = m[i][col] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def _solve(A, b):
    """Solve the square nonsingular system ``A x = b`` exactly."""
    n = len(A)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col])
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * c for a, c in zip(m[i], m[col])]
    return [row[n] for row in m]


@dataclass(frozen=True)
class Facet:
    normal: tuple
    offset: Fraction

    def value(self, x) -> Fraction:
        return _dot(self.normal, x)

    def contains(self, x) -> bool:
        return self.value(x) >= self.offset

    def is_tight(self, x) -> bool:
        return self.value(x) == self.offset

    def to_json(self):
        return {"normal": list(self.normal), "offset": str(self.offset)}


class RationalPolytope:
    """A full-dimensional polytope with both V- and H-representation.

    Build one with :func:`convex_hull`; the constructor trusts its input.
    """

    __slots__ = ("dim", "vertices", "facets")

    def __init__(self, vertices, facets):
        self.vertices = tuple(sorted(_frac_point(v) for v in vertices))
        self.facets = tuple(sorted(facets, key=lambda f: (f.normal, f.offset)))
        self.dim = len(self.vertices[0])

    def __eq__(self, other):
        if not isinstance(other, RationalPolytope):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        verts = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"RationalPolytope([{verts}])"

    def contains(self, x) -> bool:
        return all(f.contains(x) for f in self.facets)

    def on_boundary(self, x) -> bool:
        return self.contains(x) and any(f.is_tight(x) for f in self.facets)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def has_interior_origin(self) -> bool:
        return all(f.offset < 0 for f in self.facets)

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def to_json(self):
        return {
            "dim": self.dim,
            "vertices": [[str(x) for x in v] for v in self.vertices],
            "facets": [f.to_json() for f in self.facets],
        }


def _affine_basis(pts):
    """Indices of ``d+1`` affinely independent points, or None."""
    d = len(pts[0])
    chosen = [0]
    diffs = []
    for i in range(1, len(pts)):
        cand = [a - b for a, b in zip(pts[i], pts[0])]
        if rank(diffs + [cand]) > len(diffs):
            diffs.append(cand)
            chosen.append(i)
            if len(chosen) == d + 1:
                return chosen
    return None


def _dd_cone(gens, start):
    """Extreme rays of ``{y : <g, y> >= 0 for g in gens}``.

    ``gens`` are integer vectors spanning the space and ``start`` indexes a
    basis among them.  Returns primitive integer rays.
    """
    n = len(gens[0])
    order = list(start) + [i for i in range(len(gens)) if i not in set(start)]
    # the simplicial start cone: rays are the columns of the basis inverse
    basis = [gens[i] for i in start]
    rays = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        col = _solve(basis, e)
        den = _lcm(x.denominator for x in col)
        rays.append(_primitive([int(x * den) for x in col]))
    # tight sets as bitmasks over the processed constraints
    tight = []
    for r in rays:
        mask = 0
        for pos in range(n):
            if _dot(gens[order[pos]], r) == 0:
                mask |= 1 << pos
        tight.append(mask)

    for pos in range(n, len(order)):
        g = gens[order[pos]]
        vals = [_dot(g, r) for r in rays]
        plus = [i for i, v in enumerate(vals) if v > 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        if not minus:
            bit = 1 << pos
            tight = [t | bit if v == 0 else t for t, v in zip(tight, vals)]
            continue
        new_rays, new_tight = [], []
        for i, v in enumerate(vals):
            if v >= 0:
                new_rays.append(rays[i])
                new_tight.append(tight[i] | (1 << pos) if v == 0 else tight[i])
        for i in plus:
            for j in minus:
                common = tight[i] & tight[j]
                if bin(common).count("1") < n - 2:
                    continue
                if any(k != i and k != j and (tight[k] & common) == common
                       for k in range(len(rays))):
                    continue
                vi, vj = vals[i], vals[j]
                r = _primitive([vi * b - vj * a for a, b in zip(rays[i], rays[j])])
                new_rays.append(r)
                new_tight.append(common | (1 << pos))
        rays, tight = new_rays, new_tight
    return rays


def convex_hull(points: Iterable[Sequence]) -> RationalPolytope:
    """Exact convex hull of finitely many rational points.

    Raises :class:`NotFullDimensionalError` if the points do not affinely span
    their ambient space.
    """
    pts = sorted(set(_frac_point(p) for p in points))
    if not pts:
        raise NotFullDimensionalError("no points")
    d = len(pts[0])
    if d == 0 or any(len(p) != d for p in pts):
        raise NotFullDimensionalError("points must share a positive dimension")
    basis = _affine_basis(pts)
    if basis is None:
        raise NotFullDimensionalError(f"points do not span {d}-space affinely")
    L = _lcm(x.denominator for p in pts for x in p)
    gens = [(L,) + tuple(int(x * L) for x in p) for p in pts]
    facets = []
    for ray in _dd_cone(gens, basis):
        b, a = ray[0], ray[1:]
        g = 0
        for x in a:
            g = math.gcd(g, x)
        facets.append(Facet(tuple(x // g for x in a), Fraction(-b, g)))
    verts = []
    for p in pts:
        tight = [f.normal for f in facets if f.is_tight(p)]
        if len(tight) >= d and rank(tight) == d:
            verts.append(p)
    return RationalPolytope(verts, facets)


def polar_dual(P: RationalPolytope) -> RationalPolytope:
    """``{x : <x, y> >= -1 for all y in P}``.

    Each facet ``<n, y> >= c`` (c < 0) of ``P`` gives the dual vertex ``n/|c|``.
    """
    if not P.has_interior_origin():
        raise OriginNotInteriorError("origin is not strictly inside the polytope")
    pts = [tuple(Fraction(x) / -f.offset for x in f.normal) for f in P.facets]
    return convex_hull(pts)


def is_reflexive(P: RationalPolytope) -> bool:
    return P.is_integral() and polar_dual(P).is_integral()


def integral_points(P: RationalPolytope) -> list:
    """All lattice points of ``P`` by a bounding-box scan, sorted."""
    ranges = []
    for i in range(P.dim):
        lo = math.ceil(min(v[i] for v in P.vertices))
        hi = math.floor(max(v[i] for v in P.vertices))
        ranges.append(range(lo, hi + 1))
    return [p for p in itertools.product(*ranges) if P.contains(p)]


def integral_boundary_points(P: RationalPolytope) -> list:
    return [p for p in integral_points(P) if any(f.is_tight(p) for f in P.facets)]


def interior_points(P: RationalPolytope) -> list:
    return [p for p in integral_points(P) if all(f.value(p) > f.offset for f in P.facets)]


def givental_toric_polynomial(rays: Sequence[Sequence[int]]):
    """Sum of the monomials ``x^v`` over the ray generators ``v``."""
    from lgcompact.laurent import LaurentPolynomial

    rays = [tuple(int(x) for x in r) for r in rays]
    if not rays:
        raise ValueError("at least one ray is required")
    n = len(rays[0])
    seen = set()
    for r in rays:
        if len(r) != n:
            raise ValueError("rays have different lengths")
        if _primitive(r) != r or not any(r):
            raise ValueError(f"ray {r} is not a primitive integer vector")
        if r in seen:
            raise DuplicateRayError(f"duplicate ray {r}")
        seen.add(r)
    return LaurentPolynomial({r: 1 for r in rays}, n)


def parse_vertex_list(text: str) -> list:
    """``"1,0; 0,1; -1/2,-1/2"`` -> list of rational points."""
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("()")
        if not chunk:
            continue
        pts.append(tuple(Fraction(x.strip()) for x in chunk.split(",")))
    if not pts:
        raise ValueError("empty vertex list")
    return pts


def polytope_from_json(data) -> RationalPolytope:
    return convex_hull([tuple(Fraction(x) for x in v) for v in data["vertices"]])
