"""Rational polyhedral geometry on exact arithmetic.

Cones are stored by their canonical generators: primitive extreme rays
(reduced modulo the lineality space) plus a plus/minus pair for each
Hermite-basis vector of the lineality lattice.  Strongly convex cones
therefore store exactly their extreme rays.  Polyhedra are stored by
integer inequalities (a, c) meaning <a, x> >= -c.  Vertex enumeration,
dual cones and Hilbert bases all run on exact rational linear algebra;
feasibility questions go through a small Fraction simplex.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .latcore import (
    LatticeMap,
    cokernel_presentation,
    hermite_normal_form,
    kernel_basis,
    rank,
    smith_normal_form,
    solve_integral,
    solve_rational,
)

Vec = tuple[int, ...]


class EmptyPolyhedronError(ValueError):
    pass


class UnboundedFiberError(ValueError):
    pass


def primitive(v: Sequence[int]) -> Vec:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(0 for _ in v)
    return tuple(x // g for x in v)


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _neg(v: Sequence[int]) -> Vec:
    return tuple(-x for x in v)


# ---------------------------------------------------------------------------
# exact simplex


def simplex(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction],
            c: Sequence[Fraction]) -> tuple[str, Fraction | None, list[Fraction] | None]:
    """Maximize c.x over {x >= 0 : a x = b} with Bland's rule.

    Returns (status, value, x) where status is "optimal", "infeasible" or
    "unbounded"; x is a maximizer when optimal.
    """
    m = len(a)
    n = len(c)
    rows = []
    for i in range(m):
        ri = [Fraction(x) for x in a[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            ri = [-x for x in ri]
            rhs = -rhs
        rows.append(ri + [Fraction(0)] * m + [rhs])
        rows[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]
    width = n + m

    def run(obj: list[Fraction], limit_cols: int) -> None:
        # obj[j] = z_j - c_j for j < limit_cols, obj[-1] = current value
        while True:
            col = next((j for j in range(limit_cols) if obj[j] < 0), None)
            if col is None:
                return
            pivot_row = None
            best = None
            for i in range(m):
                if rows[i][col] > 0:
                    ratio = rows[i][-1] / rows[i][col]
                    if best is None or ratio < best or \
                       (ratio == best and basis[i] < basis[pivot_row]):
                        best = ratio
                        pivot_row = i
            if pivot_row is None:
                raise _Unbounded
            piv = rows[pivot_row][col]
            rows[pivot_row] = [x / piv for x in rows[pivot_row]]
            for i in range(m):
                if i != pivot_row and rows[i][col]:
                    f = rows[i][col]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[pivot_row])]
            if obj[col]:
                f = obj[col]
                obj[:] = [x - f * y for x, y in zip(obj, rows[pivot_row])]
            basis[pivot_row] = col

    class _Unbounded(Exception):
        pass

    # phase 1: maximize -(sum of artificials)
    obj = [Fraction(0)] * (width + 1)
    for i in range(m):
        obj = [x - y for x, y in zip(obj, rows[i])]
    for i in range(m):
        obj[n + i] = Fraction(0)
    try:
        run(obj, width)
    except _Unbounded:  # cannot happen in phase 1
        raise AssertionError("phase 1 unbounded")
    if obj[-1] != 0:
        return "infeasible", None, None
    # drive artificials out of the basis; drop redundant rows
    i = 0
    while i < m:
        if basis[i] >= n:
            col = next((j for j in range(n) if rows[i][j]), None)
            if col is None:
                del rows[i], basis[i]
                m -= 1
                continue
            piv = rows[i][col]
            rows[i] = [x / piv for x in rows[i]]
            for k in range(m):
                if k != i and rows[k][col]:
                    f = rows[k][col]
                    rows[k] = [x - f * y for x, y in zip(rows[k], rows[i])]
            basis[i] = col
        i += 1
    # phase 2
    cc = [Fraction(x) for x in c]
    obj = [Fraction(0)] * (width + 1)
    for j in range(n):
        obj[j] = -cc[j]
    for i in range(m):
        if basis[i] < n and cc[basis[i]]:
            f = cc[basis[i]]
            obj = [x + f * y for x, y in zip(obj, rows[i])]
    for i in range(m):
        obj[basis[i]] = Fraction(0)
    try:
        run(obj, n)
    except _Unbounded:
        return "unbounded", None, None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = rows[i][-1]
    return "optimal", obj[-1], x


def cone_contains_vector(generators: Sequence[Sequence[int]], v: Sequence) -> bool:
    """Exact test for v in cone(generators)."""
    if all(x == 0 for x in v):
        return True
    if not generators:
        return False
    d = len(v)
    a = [[Fraction(g[i]) for g in generators] for i in range(d)]
    status, _, _ = simplex(a, [Fraction(x) for x in v],
                           [Fraction(0)] * len(generators))
    return status != "infeasible"


def solve_inequalities(n: int, eqs: Sequence[tuple[Sequence[int], int]],
                       ineqs: Sequence[tuple[Sequence[int], int]]) -> list[Fraction] | None:
    """A rational point satisfying <a,x> = r for eqs and <a,x> >= r for ineqs.

    Variables are free.  Returns None when the system is infeasible.
    """
    # x = u - w with u, w >= 0; one slack per inequality
    k = len(ineqs)
    rows = []
    rhs = []
    for coeffs, r in eqs:
        rows.append([Fraction(c) for c in coeffs] + [Fraction(-c) for c in coeffs]
                    + [Fraction(0)] * k)
        rhs.append(Fraction(r))
    for idx, (coeffs, r) in enumerate(ineqs):
        row = [Fraction(c) for c in coeffs] + [Fraction(-c) for c in coeffs] \
            + [Fraction(0)] * k
        row[2 * n + idx] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(r))
    status, _, x = simplex(rows, rhs, [Fraction(0)] * (2 * n + k))
    if status == "infeasible":
        return None
    assert x is not None
    return [x[i] - x[n + i] for i in range(n)]


# ---------------------------------------------------------------------------
# cones


def _saturated_span_columns(vectors: Sequence[Vec], d: int) -> LatticeMap:
    """Columns: canonical basis of (Q-span of vectors) intersected with Z^d."""
    if not vectors:
        return LatticeMap([[] for _ in range(d)], d, 0)
    m = LatticeMap(list(vectors))
    perp = kernel_basis(m)
    return kernel_basis(perp.transpose())


class Cone:
    """A rational polyhedral cone, canonicalized on construction."""

    __slots__ = ("ambient_dim", "generators", "rays", "lineality")

    def __init__(self, ambient_dim: int, generators: Iterable[Sequence[int]]):
        gens: list[Vec] = []
        for g in generators:
            g = primitive(g)
            if len(g) != ambient_dim:
                raise ValueError("generator has wrong dimension")
            if any(g) and g not in gens:
                gens.append(g)
        lin_gens = [g for g in gens if cone_contains_vector(gens, _neg(g))]
        lin_cols = _saturated_span_columns(lin_gens, ambient_dim)
        lin_rows, _ = hermite_normal_form(lin_cols.transpose())
        lin_basis = tuple(r for r in lin_rows.entries if any(r))
        if lin_basis:
            _, _, proj = cokernel_presentation(
                LatticeMap([list(r) for r in lin_basis]).transpose())
            reduced: list[Vec] = []
            for g in gens:
                q = primitive(proj.apply(g))
                if any(q) and q not in reduced:
                    reduced.append(q)
            extreme = [q for q in reduced
                       if not cone_contains_vector([r for r in reduced if r != q], q)]
            rays = []
            for q in extreme:
                lift = solve_integral(proj, q)
                assert lift is not None
                rays.append(lift)
        else:
            rays = [g for g in gens
                    if not cone_contains_vector([h for h in gens if h != g], g)]
        rays = sorted(rays)
        full = sorted(rays + [v for b in lin_basis for v in (b, _neg(b))])
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "generators", tuple(full))
        object.__setattr__(self, "rays", tuple(rays))
        object.__setattr__(self, "lineality", lin_basis)

    def __setattr__(self, name, value):
        raise AttributeError("Cone is immutable")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cone) and self.ambient_dim == other.ambient_dim
                and self.generators == other.generators)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.generators))

    def __repr__(self) -> str:
        return f"Cone({self.ambient_dim}, {list(map(list, self.generators))!r})"

    def is_strongly_convex(self) -> bool:
        return not self.lineality

    def dim(self) -> int:
        if not self.generators:
            return 0
        return rank(LatticeMap(list(self.generators)))

    def is_simplicial(self) -> bool:
        return not self.lineality and len(self.rays) == self.dim()

    def is_smooth(self) -> bool:
        """Rays extend to a basis of Z^d (cone of a smooth toric chart)."""
        if not self.is_simplicial():
            return False
        if not self.rays:
            return True
        snf = smith_normal_form(LatticeMap(list(self.rays)))
        return all(x == 1 for x in snf.d if x != 0) and \
            sum(1 for x in snf.d if x) == len(self.rays)

    def contains(self, v: Sequence) -> bool:
        return cone_contains_vector(self.generators, v)

    def to_json(self) -> str:
        return json.dumps({"ambient_dim": self.ambient_dim,
                           "generators": [list(g) for g in self.generators]})

    @staticmethod
    def from_json(text: str) -> "Cone":
        data = json.loads(text)
        return Cone(data["ambient_dim"], data["generators"])


def cone_from_inequalities(normals: Sequence[Sequence[int]], d: int) -> Cone:
    """The cone {u : <u, n> >= 0 for all n}, via extreme-ray enumeration."""
    ns = []
    for n in normals:
        p = primitive(n)
        if any(p) and p not in ns:
            ns.append(p)
    if not ns:
        basis = LatticeMap.identity(d)
        return Cone(d, [row for row in basis.entries] +
                    [_neg(row) for row in basis.entries])
    m = LatticeMap(ns)
    r = rank(m)
    lin = kernel_basis(m)  # lineality of the dual, as columns
    hnf_rows, _ = hermite_normal_form(m)
    row_basis = [list(row) for row in hnf_rows.entries if any(row)]
    rt = LatticeMap(row_basis).transpose()  # d x r, columns span rowspace
    candidates: list[Vec] = []
    for subset in itertools.combinations(range(len(ns)), r - 1):
        s_rows = [ns[i] for i in subset]
        if s_rows and rank(LatticeMap(list(s_rows))) != r - 1:
            continue
        prod = LatticeMap(list(s_rows)) @ rt if s_rows else LatticeMap.zero(0, r)
        k = kernel_basis(prod) if s_rows else LatticeMap.identity(r)
        if k.cols != 1:
            continue
        u = primitive(rt.apply(k.column(0)))
        for cand in (u, _neg(u)):
            if all(_dot(cand, n) >= 0 for n in ns) and cand not in candidates:
                candidates.append(cand)
    lin_gens = [v for j in range(lin.cols) for v in (lin.column(j), _neg(lin.column(j)))]
    return Cone(d, candidates + lin_gens)


def dual_cone(c: Cone) -> Cone:
    """{u : <u, v> >= 0 for all v in c}."""
    return cone_from_inequalities(c.generators, c.ambient_dim)


def hilbert_basis(c: Cone, lattice: LatticeMap | None = None) -> list[Vec]:
    """Minimal generating set of the semigroup c intersect L, sorted lex.

    L defaults to Z^d; a sublattice is passed as a column-basis matrix, in
    which case c must lie in the span of L and the result uses ambient
    coordinates.
    """
    if not c.is_strongly_convex():
        raise ValueError("hilbert_basis requires a strongly convex cone")
    if lattice is not None:
        coords = []
        for ray in c.rays:
            sol = solve_rational(lattice, [Fraction(x) for x in ray])
            if sol is None:
                raise ValueError("cone does not lie in the span of the lattice")
            den = 1
            for f in sol:
                den = den * f.denominator // gcd(den, f.denominator)
            coords.append(primitive([int(f * den) for f in sol]))
        inner = hilbert_basis(Cone(lattice.cols, coords))
        return sorted(lattice.apply(h) for h in inner)
    if not c.rays:
        return []
    d = c.ambient_dim
    dual = dual_cone(c)
    halfspaces = dual.generators

    def in_cone(v: Sequence[int]) -> bool:
        return all(_dot(h, v) >= 0 for h in halfspaces)

    rays = list(c.rays)
    lo = [sum(min(0, r[j]) for r in rays) for j in range(d)]
    hi = [sum(max(0, r[j]) for r in rays) for j in range(d)]
    gmat = [[Fraction(r[j]) for r in rays] for j in range(d)]
    k = len(rays)
    candidates = []
    for point in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if not any(point) or not in_cone(point):
            continue
        # inside the zonotope of the rays: G lam = point with 0 <= lam <= 1
        a = [row + [Fraction(0)] * k for row in gmat]
        for i in range(k):
            slack = [Fraction(0)] * (2 * k)
            slack[i] = Fraction(1)
            slack[k + i] = Fraction(1)
            a.append(slack)
        status, _, _ = simplex(a, [Fraction(x) for x in point] + [Fraction(1)] * k,
                               [Fraction(0)] * (2 * k))
        if status != "infeasible":
            candidates.append(point)
    weight = [sum(h[j] for h in dual.rays) for j in range(d)]
    candidates.sort(key=lambda v: (_dot(weight, v), v))
    basis: list[Vec] = []
    for v in candidates:
        if not any(in_cone([x - y for x, y in zip(v, h)]) for h in basis):
            basis.append(tuple(v))
    return sorted(basis)


# ---------------------------------------------------------------------------
# polyhedra


class RationalPolyhedron:
    """{x : <a, x> >= -c for each inequality (a, c)} with integer a, c."""

    __slots__ = ("ambient_dim", "inequalities", "_vrep")

    def __init__(self, ambient_dim: int,
                 inequalities: Iterable[tuple[Sequence[int], int]]):
        ineqs = []
        for a, c in inequalities:
            a = tuple(int(x) for x in a)
            if len(a) != ambient_dim:
                raise ValueError("inequality normal has wrong dimension")
            ineqs.append((a, int(c)))
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "inequalities", tuple(ineqs))
        object.__setattr__(self, "_vrep", None)

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolyhedron is immutable")

    def __repr__(self) -> str:
        return f"RationalPolyhedron({self.ambient_dim}, {list(self.inequalities)!r})"

    def contains(self, x: Sequence) -> bool:
        return all(_dot(a, x) >= -c for a, c in self.inequalities)

    def sample_point(self) -> list[Fraction] | None:
        return solve_inequalities(
            self.ambient_dim, [],
            [(a, -c) for a, c in self.inequalities])

    def to_json(self) -> str:
        data = {"ambient_dim": self.ambient_dim,
                "inequalities": [{"normal": list(a), "offset": c}
                                 for a, c in self.inequalities]}
        if self._vrep is not None:
            verts, rays = self._vrep
            data["vertices"] = [[[f.numerator, f.denominator] for f in v]
                                for v in verts]
            data["rays"] = [list(r) for r in rays.generators]
        return json.dumps(data)

    @staticmethod
    def from_json(text: str) -> "RationalPolyhedron":
        data = json.loads(text)
        return RationalPolyhedron(
            data["ambient_dim"],
            [(i["normal"], i["offset"]) for i in data["inequalities"]])


def vertices_and_rays(p: RationalPolyhedron) -> tuple[list[tuple[Fraction, ...]], Cone]:
    """Exact V-representation (sorted vertices, recession cone)."""
    if p._vrep is not None:
        return p._vrep
    d = p.ambient_dim
    if p.sample_point() is None:
        raise EmptyPolyhedronError("polyhedron is empty")
    recession = cone_from_inequalities([a for a, _ in p.inequalities], d)
    vertices: list[tuple[Fraction, ...]] = []
    if not recession.lineality:
        ineqs = list(p.inequalities)
        for subset in itertools.combinations(range(len(ineqs)), d):
            mat = LatticeMap([list(ineqs[i][0]) for i in subset])
            if rank(mat) != d:
                continue
            sol = solve_rational(mat, [Fraction(-ineqs[i][1]) for i in subset])
            if sol is None:
                continue
            v = tuple(sol)
            if v not in vertices and p.contains(v):
                vertices.append(v)
        vertices.sort()
    object.__setattr__(p, "_vrep", (vertices, recession))
    return vertices, recession


def polyhedron_from_generators(vertices: Sequence[Sequence[Fraction | int]],
                               rays: Sequence[Sequence[int]],
                               ambient_dim: int) -> RationalPolyhedron:
    """H-representation of conv(vertices) + cone(rays).

    Works by dualizing the homogenization cone at height one; inequality
    normals come out integral and primitive.
    """
    if not vertices:
        raise EmptyPolyhedronError("need at least one vertex or point")
    hom: list[Vec] = []
    for v in vertices:
        fs = [Fraction(x) for x in v]
        den = 1
        for f in fs:
            den = den * f.denominator // gcd(den, f.denominator)
        hom.append(tuple(int(f * den) for f in fs) + (den,))
    for r in rays:
        hom.append(tuple(int(x) for x in r) + (0,))
    dual = cone_from_inequalities(hom, ambient_dim + 1)
    ineqs = [(g[:-1], g[-1]) for g in dual.generators]
    return RationalPolyhedron(ambient_dim, ineqs)


def lattice_points(p: RationalPolyhedron) -> list[Vec]:
    """All lattice points of a bounded polyhedron, sorted lex."""
    verts, recession = vertices_and_rays(p)
    if recession.generators:
        raise UnboundedFiberError("polyhedron is unbounded")
    if not verts:
        return []
    d = p.ambient_dim
    lo = [min(v[j] for v in verts) for j in range(d)]
    hi = [max(v[j] for v in verts) for j in range(d)]
    out = []
    rng = []
    for j in range(d):
        a = lo[j].numerator // lo[j].denominator  # floor
        b = -((-hi[j].numerator) // hi[j].denominator)  # ceil
        rng.append(range(a, b + 1))
    for point in itertools.product(*rng):
        if p.contains(point):
            out.append(point)
    return sorted(out)


def lattice_points_in_fiber(a: LatticeMap, b: Sequence[int],
                            bound: int | None = None) -> list[Vec]:
    """All x in N^n with a @ x == b, sorted lex.

    The fiber must be bounded unless ``bound`` caps every coordinate.
    """
    n = a.cols
    rows = [[Fraction(x) for x in row] for row in a.entries]
    target = [Fraction(x) for x in b]
    status, _, _ = simplex(rows, target, [Fraction(0)] * n)
    if status == "infeasible":
        return []
    if bound is None:
        status, _, _ = simplex(rows, [Fraction(0)] * a.rows, [Fraction(1)] * n)
        if status == "unbounded":
            raise UnboundedFiberError("fiber is unbounded; supply a bound")
    out: list[Vec] = []
    prefix: list[int] = []

    def rest_feasible(residual: list[Fraction], start: int) -> bool:
        cols = n - start
        if cols == 0:
            return all(x == 0 for x in residual)
        sub = [[rows[i][j] for j in range(start, n)] for i in range(a.rows)]
        status, _, _ = simplex(sub, residual, [Fraction(0)] * cols)
        return status != "infeasible"

    def coord_max(residual: list[Fraction], start: int) -> int:
        cols = n - start
        sub = [[rows[i][j] for j in range(start, n)] for i in range(a.rows)]
        obj = [Fraction(0)] * cols
        obj[0] = Fraction(1)
        status, val, _ = simplex(sub, residual, obj)
        if status != "optimal":
            return bound if bound is not None else 0
        top = val.numerator // val.denominator
        if bound is not None:
            top = min(top, bound)
        return top

    def walk(residual: list[Fraction], start: int) -> None:
        if start == n:
            if all(x == 0 for x in residual):
                out.append(tuple(prefix))
            return
        if not rest_feasible(residual, start):
            return
        for t in range(coord_max(residual, start) + 1):
            nxt = [residual[i] - t * rows[i][start] for i in range(a.rows)]
            prefix.append(t)
            walk(nxt, start + 1)
            prefix.pop()

    walk(target, 0)
    return sorted(out)


# ---------------------------------------------------------------------------
# fans


def _is_face(f: Cone, sigma: Cone, sigma_dual: Cone) -> bool:
    """Is f a face of the strongly convex cone sigma."""
    if any(not sigma.contains(r) for r in f.rays):
        return False
    w = [0] * sigma.ambient_dim
    for u in sigma_dual.generators:
        if all(_dot(u, r) == 0 for r in f.rays):
            w = [x + y for x, y in zip(w, u)]
    span = [r for r in sigma.rays if _dot(w, r) == 0]
    return Cone(sigma.ambient_dim, span) == f


def intersect_cones(a: Cone, b: Cone) -> Cone:
    return cone_from_inequalities(
        list(dual_cone(a).generators) + list(dual_cone(b).generators),
        a.ambient_dim)


class Fan:
    """A fan given by its maximal cones; face compatibility is validated."""

    __slots__ = ("rank", "maximal_cones")

    def __init__(self, rank: int, maximal_cones: Iterable[Cone], validate: bool = True):
        cones = []
        for c in maximal_cones:
            if c.ambient_dim != rank:
                raise ValueError("cone has wrong ambient dimension")
            if c not in cones:
                cones.append(c)
        cones.sort(key=lambda c: c.generators)
        if validate:
            for c in cones:
                if not c.is_strongly_convex():
                    raise ValueError("fan cones must be strongly convex")
            duals = [dual_cone(c) for c in cones]
            for i in range(len(cones)):
                for j in range(i + 1, len(cones)):
                    if all(cones[j].contains(r) for r in cones[i].rays) or \
                       all(cones[i].contains(r) for r in cones[j].rays):
                        raise ValueError("fan cones must be inclusion-maximal")
                    meet = intersect_cones(cones[i], cones[j])
                    if not _is_face(meet, cones[i], duals[i]) or \
                       not _is_face(meet, cones[j], duals[j]):
                        raise ValueError("cones fail face compatibility")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "maximal_cones", tuple(cones))

    def __setattr__(self, name, value):
        raise AttributeError("Fan is immutable")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Fan) and self.rank == other.rank
                and self.maximal_cones == other.maximal_cones)

    def __hash__(self) -> int:
        return hash((self.rank, self.maximal_cones))

    def __repr__(self) -> str:
        return f"Fan(rank={self.rank}, {len(self.maximal_cones)} maximal cones)"

    def rays(self) -> list[Vec]:
        seen: list[Vec] = []
        for c in self.maximal_cones:
            for r in c.rays:
                if r not in seen:
                    seen.append(r)
        return sorted(seen)

    def is_smooth(self) -> bool:
        return all(c.is_smooth() for c in self.maximal_cones)

    def is_simplicial(self) -> bool:
        return all(c.is_simplicial() for c in self.maximal_cones)

    def to_json(self) -> str:
        return json.dumps({
            "rank": self.rank,
            "maximal_cones": [[list(g) for g in c.generators]
                              for c in self.maximal_cones]})

    @staticmethod
    def from_json(text: str) -> "Fan":
        data = json.loads(text)
        return Fan(data["rank"],
                   [Cone(data["rank"], gens) for gens in data["maximal_cones"]])


def inner_normal_fan(p: RationalPolyhedron) -> Fan:
    """Fan of inner normal cones at the vertices of a full-dimensional p."""
    verts, recession = vertices_and_rays(p)
    if not verts:
        raise ValueError("polyhedron has no vertex")
    d = p.ambient_dim
    directions = [[x - y for x, y in zip(v, verts[0])] for v in verts[1:]]
    dirs = []
    for vec in directions:
        den = 1
        for f in vec:
            den = den * Fraction(f).denominator // gcd(den, Fraction(f).denominator)
        dirs.append([int(Fraction(f) * den) for f in vec])
    dirs += [list(r) for r in recession.generators]
    if not dirs or rank(LatticeMap(dirs)) < d:
        raise ValueError("polyhedron is not full-dimensional")
    cones = []
    for v in verts:
        active = [a for a, c in p.inequalities if _dot(a, v) == -c]
        cones.append(Cone(d, active))
    return Fan(d, cones)


def fan_isomorphism(f1: Fan, f2: Fan) -> LatticeMap | None:
    """A unimodular U with U(f1) = f2 mapping rays to rays and maximal
    cones to maximal cones, or None."""
    if f1.rank != f2.rank:
        return None
    rays1, rays2 = f1.rays(), f2.rays()
    if len(rays1) != len(rays2) or len(f1.maximal_cones) != len(f2.maximal_cones):
        return None
    d = f1.rank
    base_idx = None
    for subset in itertools.combinations(range(len(rays1)), d):
        if rank(LatticeMap([list(rays1[i]) for i in subset])) == d:
            base_idx = subset
            break
    if base_idx is None:
        return None
    basis = LatticeMap.from_columns([rays1[i] for i in base_idx])
    cones2 = {tuple(sorted(c.rays)) for c in f2.maximal_cones}
    for images in itertools.permutations(rays2, d):
        target = LatticeMap.from_columns(list(images))
        u_cols = []
        ok = True
        for j in range(d):
            col = solve_rational(basis.transpose(),
                                 [Fraction(target.entries[j][i]) for i in range(d)])
            if col is None or any(f.denominator != 1 for f in col):
                ok = False
                break
            u_cols.append([int(f) for f in col])
        if not ok:
            continue
        u = LatticeMap(u_cols)
        if abs(_int_det(u)) != 1:
            continue
        image_rays = sorted(primitive(u.apply(r)) for r in rays1)
        if image_rays != rays2:
            continue
        mapped = {tuple(sorted(primitive(u.apply(r)) for r in c.rays))
                  for c in f1.maximal_cones}
        if mapped == cones2:
            return u
    return None


def _int_det(m: LatticeMap) -> int:
    a = [[Fraction(x) for x in row] for row in m.entries]
    n = m.rows
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    assert det.denominator == 1
    return int(det)
