"""Quivers of sections of basepoint-free line bundles on a toric variety.

Sections of Hom(L_i, L_j) are the lattice points of a fiber of the degree
map on the ray lattice.  On a variety that is only semiprojective the
fiber is unbounded; the finitely many points that are minimal against the
effective degree-zero semigroup then generate the Hom space as a module
over the invariant ring, and all constructions below work with those
generators.  Arrows of the quiver of sections are the indecomposable
generators, relations are equal-divisor path pairs up to a path bound,
and the section lattice map pins down the image of the variety inside
the multilinear series.
"""

from __future__ import annotations

import json
from typing import Sequence

from .binom import BinomialIdeal, equal, groebner, saturate, toric_ideal
from .latcore import LatticeMap, solve_integral
from .polycone import (
    Fan,
    RationalPolyhedron,
    UnboundedFiberError,
    hilbert_basis,
    inner_normal_fan,
    lattice_points_in_fiber,
    vertices_and_rays,
)
from .quivrep import Quiver, Weight, arborescence_ideal, incidence_data, \
    moduli_fan
from .torvar import CoxData, cox_data

Vec = tuple[int, ...]


class PolarizedToric:
    """Cox data together with a sequence of basepoint-free classes.

    Classes are written in the coordinates of the class group fixed by the
    Cox presentation, which must be torsion free so that the coordinates
    determine line bundles.  The first class is the trivial one and the
    classes are pairwise distinct; every class is checked to admit, on
    each maximal cone, a section not vanishing there.
    """

    __slots__ = ("cox", "bundles", "_minimal")

    def __init__(self, cox: CoxData, bundles: Sequence[Sequence[int]]) -> None:
        if cox.class_torsion:
            raise ValueError("class group has torsion, so free coordinates "
                             "do not determine line bundles")
        rk = cox.deg.rows
        classes = []
        for b in bundles:
            b = tuple(int(v) for v in b)
            if len(b) != rk:
                raise ValueError("bundle class has wrong length for the "
                                 "class group")
            classes.append(b)
        if not classes or any(classes[0]):
            raise ValueError("the first bundle must be the trivial class")
        if len(set(classes)) != len(classes):
            raise ValueError("bundle classes must be pairwise distinct")
        object.__setattr__(self, "cox", cox)
        object.__setattr__(self, "bundles", tuple(classes))
        object.__setattr__(self, "_minimal", {})
        for i, b in enumerate(classes):
            bad = self._basepoint_obstruction(b)
            if bad is not None:
                raise ValueError(
                    f"class {b} of bundle {i} has a base point on the cone "
                    f"spanned by {bad}")

    def __setattr__(self, name, value):
        raise AttributeError("PolarizedToric is immutable")

    @classmethod
    def from_fan(cls, fan: Fan, bundles) -> "PolarizedToric":
        return cls(cox_data(fan), bundles)

    def __repr__(self) -> str:
        return f"PolarizedToric({self.cox!r}, {len(self.bundles)} bundles)"

    def _cone_rows(self, cone) -> tuple[int, ...]:
        div = self.cox.div
        where = {div.row(i): i for i in range(div.rows)}
        return tuple(where[r] for r in cone.rays)

    def _basepoint_obstruction(self, b: Vec):
        secs = self._fiber_generators(b)
        for cone in self.cox.fan.maximal_cones:
            rows = self._cone_rows(cone)
            if not any(all(s[i] == 0 for i in rows) for s in secs):
                return cone.rays
        return None

    def _fiber_generators(self, b: Vec) -> tuple[Vec, ...]:
        got = self._minimal.get(b)
        if got is None:
            got = _minimal_fiber_points(self.cox.deg, b)
            self._minimal[b] = got
        return got


def _minimal_fiber_points(deg: LatticeMap, b: Vec) -> tuple[Vec, ...]:
    """Points of {u in N^n : deg(u) = b} minimal against the effective
    degree-zero semigroup; every point when the fiber is bounded.

    A minimal point u satisfies, coordinatewise, u <= ceil(max vertex) +
    sum of the degree-zero Hilbert basis: were some Hilbert coefficient of
    the recession part of u at least one, subtracting that basis element
    would keep u in the fiber.
    """
    try:
        return tuple(lattice_points_in_fiber(deg, list(b)))
    except UnboundedFiberError:
        pass
    n = deg.cols
    ineqs = [(tuple(int(j == i) for j in range(n)), 0) for i in range(n)]
    for i in range(deg.rows):
        row = deg.row(i)
        ineqs.append((row, -b[i]))
        ineqs.append((tuple(-v for v in row), b[i]))
    verts, recession = vertices_and_rays(RationalPolyhedron(n, ineqs))
    invariants = hilbert_basis(recession)
    cap = 0
    for i in range(n):
        top = max(v[i] for v in verts)
        cap = max(cap, -(-top.numerator // top.denominator)
                  + sum(h[i] for h in invariants))
    points = lattice_points_in_fiber(deg, list(b), bound=cap)
    return tuple(u for u in points
                 if all(any(p < q for p, q in zip(u, h)) for h in invariants))


def _class_difference(x: PolarizedToric, from_class, to_class) -> Vec:
    rk = x.cox.deg.rows
    f = tuple(int(v) for v in from_class)
    t = tuple(int(v) for v in to_class)
    if len(f) != rk or len(t) != rk:
        raise ValueError("bundle class has wrong length for the class group")
    return tuple(p - q for p, q in zip(t, f))


def sections(x: PolarizedToric, from_class, to_class) -> list[Vec]:
    """Divisor vectors of the generating sections of Hom(L_from, L_to).

    These are the points u >= 0 with deg(u) = to - from: all of them when
    the fiber is bounded (a vector space basis), otherwise the points
    minimal against the degree-zero invariants (module generators over
    the invariant ring).  Sorted lex; empty when the difference is not
    effective.
    """
    return list(x._fiber_generators(_class_difference(x, from_class, to_class)))


def indecomposable_sections(x: PolarizedToric, from_class, to_class) -> list[Vec]:
    """The generating sections that do not factor through any bundle of x.

    A section s factors when div(s) = div(s') + div(s'') with s' a nonzero
    section into some intermediate bundle and s'' a nonzero section out of
    it; it is enough to scan the generating s', since any factor reduces
    to a generating one by shedding invariants.
    """
    b = _class_difference(x, from_class, to_class)
    out = []
    for s in x._fiber_generators(b):
        if not _factors(x, s, from_class):
            out.append(s)
    return out


def _factors(x: PolarizedToric, s: Vec, from_class) -> bool:
    for mid in x.bundles:
        c = _class_difference(x, from_class, mid)
        if not any(c):
            continue
        for t in x._fiber_generators(c):
            if t != s and all(p <= q for p, q in zip(t, s)):
                return True
    return False


class SectionQuiver:
    """A quiver of sections with its relations and section lattice map.

    Arrows carry divisor labels and are sorted by (tail, head, label).
    ``relations`` is a tuple of path pairs, each path a tuple of arrow
    indices read tail to head, with equal endpoints and equal divisor.
    ``section_lattice`` stacks the vertex incidence rows over the divisor
    rows, one column per arrow.  ``stabilized`` records whether the
    relation ideal stayed the same when the path bound grew by one.
    """

    __slots__ = ("x", "quiver", "relations", "section_lattice", "path_bound",
                 "stabilized")

    def __init__(self, x: PolarizedToric, quiver: Quiver, relations,
                 section_lattice: LatticeMap, path_bound: int,
                 stabilized: bool) -> None:
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "relations", tuple(relations))
        object.__setattr__(self, "section_lattice", section_lattice)
        object.__setattr__(self, "path_bound", int(path_bound))
        object.__setattr__(self, "stabilized", bool(stabilized))

    def __setattr__(self, name, value):
        raise AttributeError("SectionQuiver is immutable")

    def __repr__(self) -> str:
        return (f"SectionQuiver({self.quiver.vertices} vertices, "
                f"{len(self.quiver.arrows)} arrows, "
                f"{len(self.relations)} relations)")

    def relation_ideal(self) -> BinomialIdeal:
        return _relation_ideal(len(self.quiver.arrows), self.relations)

    def to_json(self) -> str:
        return json.dumps({
            "vertices": self.quiver.vertices,
            "bundles": [list(b) for b in self.x.bundles],
            "arrows": [[t, h, list(lab)] for t, h, lab in self.quiver.arrows],
            "relations": [[list(p), list(q)] for p, q in self.relations],
            "path_bound": self.path_bound,
            "stabilized": self.stabilized,
        })


def _path_exponent(path, nvars: int) -> Vec:
    e = [0] * nvars
    for a in path:
        e[a] += 1
    return tuple(e)


def _relation_ideal(nvars: int, relations) -> BinomialIdeal:
    gens = [(_path_exponent(p, nvars), _path_exponent(q, nvars))
            for p, q in relations]
    return BinomialIdeal(nvars, gens)


def _path_groups(q: Quiver, bound: int, cap: int = 500000) -> dict:
    """Paths of length 2..bound grouped by (tail, head, total divisor)."""
    nvars = len(q.arrows[0][2]) if q.arrows else 0
    out: list[list[int]] = [[] for _ in range(q.vertices)]
    for a, (tail, _, _) in enumerate(q.arrows):
        out[tail].append(a)
    groups: dict = {}
    total = 0
    for start in range(q.vertices):
        frontier = [((), start, (0,) * nvars)]
        for _ in range(bound):
            grown = []
            for path, at, div in frontier:
                for a in out[at]:
                    _, head, label = q.arrows[a]
                    grown.append((path + (a,), head,
                                  tuple(u + v for u, v in zip(div, label))))
            total += len(grown)
            if total > cap:
                raise ValueError("path enumeration blew past the cap; "
                                 "lower the path bound")
            for path, at, div in grown:
                if len(path) >= 2:
                    groups.setdefault((start, at, div), []).append(path)
            frontier = grown
    return groups


def _relations(q: Quiver, bound: int) -> list[tuple[Vec, Vec]]:
    """Equal-divisor path pairs up to the bound, discarding pairs implied
    by strictly shorter ones.

    Single arrows never take part: an arrow matching a longer path would
    factor, contradicting indecomposability.  Pairs of equal total length
    are all kept even when they imply each other, so symmetric families
    such as the cyclic relations of a quotient singularity survive whole;
    pairs repeating an already kept binomial are dropped.
    """
    n = len(q.arrows)
    candidates = []
    for (tail, head, div), paths in _path_groups(q, bound).items():
        if len(paths) < 2:
            continue
        paths.sort(key=lambda p: (len(p), p))
        base = paths[0]
        for other in paths[1:]:
            candidates.append((len(base) + len(other), div, base, other))
    candidates.sort()
    kept = []
    gens = []
    seen = set()
    shorter = None
    bucket = -1
    for length, _, base, other in candidates:
        binomial = (_path_exponent(base, n), _path_exponent(other, n))
        if binomial[0] == binomial[1] or binomial in seen:
            continue
        if length > bucket:
            shorter = BinomialIdeal(n, gens) if gens else None
            bucket = length
        if shorter is not None and shorter.contains(binomial):
            continue
        seen.add(binomial)
        gens.append(binomial)
        kept.append((base, other))
    return kept


def _section_lattice(q: Quiver, nrays: int) -> LatticeMap:
    inc, _, _ = incidence_data(q)
    rows = [list(inc.row(i)) for i in range(q.vertices)]
    for i in range(nrays):
        rows.append([q.arrows[a][2][i] for a in range(len(q.arrows))])
    return LatticeMap(rows)


def quiver_of_sections(x: PolarizedToric,
                       path_bound: int | None = None) -> SectionQuiver:
    """The complete quiver of sections of the bundles of x.

    One vertex per bundle, arrows the indecomposable generating sections
    for every ordered pair, relations the minimal equal-divisor path pairs
    up to ``path_bound`` (default twice the number of bundles).  The
    relation ideal is recomputed at path_bound + 1 and the ``stabilized``
    flag reports whether it stayed the same.
    """
    r = len(x.bundles)
    if r < 2:
        raise ValueError("a quiver of sections needs at least two bundles")
    arrows = []
    for i in range(r):
        for j in range(r):
            if i != j:
                for s in indecomposable_sections(x, x.bundles[i], x.bundles[j]):
                    arrows.append((i, j, s))
    arrows.sort()
    quiver = Quiver(r, arrows)
    bound = 2 * r if path_bound is None else int(path_bound)
    if bound < 2:
        raise ValueError("the path bound must be at least two")
    relations = _relations(quiver, bound)
    ideal = _relation_ideal(len(arrows), relations)
    grown = _relation_ideal(len(arrows), _relations(quiver, bound + 1))
    pi = _section_lattice(quiver, x.cox.div.rows)
    return SectionQuiver(x, quiver, relations, pi, bound, equal(ideal, grown))


def multilinear_series_fan(sq: SectionQuiver, theta: Weight) -> Fan:
    """Fan of the multilinear series: the moduli of theta-stable thin
    representations of the section quiver.

    The weight must be positive away from vertex 0.
    """
    if len(theta) != sq.quiver.vertices:
        raise ValueError("weight length does not match the bundle count")
    if any(v <= 0 for v in theta.values[1:]):
        raise ValueError("weight must be positive on the nonzero vertices")
    fan, _, _ = moduli_fan(sq.quiver, theta)
    return fan


class ImageTest:
    """Outcome of comparing the toric ideal of the section lattice with
    the relation ideal saturated by the arborescence ideal; the reduced
    bases of both sides certify the verdict."""

    __slots__ = ("verdict", "toric", "saturated")

    def __init__(self, verdict: str, toric: BinomialIdeal,
                 saturated: BinomialIdeal) -> None:
        object.__setattr__(self, "verdict", verdict)
        object.__setattr__(self, "toric", toric)
        object.__setattr__(self, "saturated", saturated)

    def __setattr__(self, name, value):
        raise AttributeError("ImageTest is immutable")

    def __repr__(self) -> str:
        return f"ImageTest({self.verdict!r})"

    def to_json(self) -> str:
        return json.dumps({
            "verdict": self.verdict,
            "toric_ideal": json.loads(self.toric.to_json()),
            "saturated_relations": json.loads(self.saturated.to_json()),
        })


def image_equals_moduli(sq: SectionQuiver) -> ImageTest:
    """Whether the variety fills its multilinear series.

    The toric ideal of the section lattice cuts out the image of the
    variety; the moduli of the bound quiver is cut out by the relation
    ideal saturated at the arborescence ideal.  Verdict ``equal`` when
    the two ideals agree, ``proper_inclusion`` otherwise (the saturation
    always sits inside the toric ideal).
    """
    n = len(sq.quiver.arrows)
    toric = toric_ideal(sq.section_lattice)
    trees = [_path_exponent(t, n) for t in arborescence_ideal(sq.quiver)]
    saturated = saturate(sq.relation_ideal(), trees)
    if equal(toric, saturated):
        verdict = "equal"
    else:
        if not toric.contains_ideal(saturated):
            raise ValueError("saturated relation ideal escaped the toric "
                             "ideal; the relations are inconsistent")
        verdict = "proper_inclusion"
    return ImageTest(verdict, groebner(toric), groebner(saturated))


def multiplication_surjective(x: PolarizedToric, classes) -> bool:
    """Whether every section of the tensor product of the given classes
    splits as a product of sections of the factors.

    Checked exactly on the generating sections of the product fiber,
    splitting off generating factors left to right; shed invariants ride
    along with the last factor.
    """
    cls = [tuple(int(v) for v in c) for c in classes]
    if not cls:
        raise ValueError("need at least one bundle class")
    rk = x.cox.deg.rows
    if any(len(c) != rk for c in cls):
        raise ValueError("bundle class has wrong length for the class group")
    total = tuple(sum(v) for v in zip(*cls))
    return all(_splits(x, u, cls) for u in x._fiber_generators(total))


def _splits(x: PolarizedToric, u: Vec, cls) -> bool:
    if len(cls) == 1:
        return True
    for s in x._fiber_generators(cls[0]):
        if all(p <= q for p, q in zip(s, u)):
            rest = tuple(q - p for p, q in zip(s, u))
            if _splits(x, rest, cls[1:]):
                return True
    return False


def _is_complete_smooth(fan: Fan) -> bool:
    """Completeness of a smooth fan: every facet of a maximal cone must
    be shared by exactly two maximal cones."""
    d = fan.rank
    seen: dict = {}
    for cone in fan.maximal_cones:
        if len(cone.rays) != d:
            return False
        for drop in range(d):
            key = tuple(sorted(r for k, r in enumerate(cone.rays) if k != drop))
            seen[key] = seen.get(key, 0) + 1
    return bool(seen) and all(v == 2 for v in seen.values())


def embedding_verdict(x: PolarizedToric) -> str:
    """``closed_immersion`` when the variety certifiably embeds into its
    multilinear series, ``not_decided`` otherwise.

    Certified when the multiplication map of the nontrivial bundles is
    surjective and their tensor product is very ample.  Very ampleness is
    only decided on a smooth complete fan, where it follows from
    ampleness: the inner normal fan of the section polyhedron of the
    total class must equal the fan.
    """
    if len(x.bundles) < 2:
        raise ValueError("need at least one nontrivial bundle")
    if not multiplication_surjective(x, x.bundles[1:]):
        return "not_decided"
    fan = x.cox.fan
    if not fan.is_smooth() or not _is_complete_smooth(fan):
        return "not_decided"
    total = tuple(sum(v) for v in zip(*x.bundles[1:]))
    coeffs = solve_integral(x.cox.deg, total)
    if coeffs is None:
        return "not_decided"
    ineqs = [(x.cox.div.row(i), coeffs[i]) for i in range(x.cox.div.rows)]
    try:
        normal = inner_normal_fan(RationalPolyhedron(fan.rank, ineqs))
    except ValueError:
        return "not_decided"
    return "closed_immersion" if normal == fan else "not_decided"
