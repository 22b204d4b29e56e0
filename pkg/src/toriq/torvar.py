"""Affine and semiprojective toric varieties.

Invariant semigroups of cyclic quotient singularities, Jung-Hirzebruch
expansions, normality with witnesses, Proj charts of graded semigroup
algebras, GIT quotient semigroups of a torus action by a character, and
Cox presentations of fans.
"""

from __future__ import annotations

import json
from math import gcd
from typing import Iterable, Sequence

from .latcore import LatticeMap, cokernel_presentation, hermite_normal_form, \
    kernel_basis, rank
from .polycone import (
    Cone,
    Fan,
    RationalPolyhedron,
    cone_from_inequalities,
    cone_contains_vector,
    hilbert_basis,
    lattice_points_in_fiber,
    polyhedron_from_generators,
    vertices_and_rays,
)

Vec = tuple[int, ...]


class GradedSemigroup:
    """A finitely generated subsemigroup of Z^d with a grading Z^d -> Z^k.

    The semigroup is the set of N-combinations of ``generators``; it is not
    assumed saturated or normal.
    """

    __slots__ = ("rank", "generators", "grading")

    def __init__(self, rank_: int, generators: Iterable[Sequence[int]],
                 grading: LatticeMap):
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != rank_:
                raise ValueError("generator has wrong dimension")
            if g not in gens:
                gens.append(g)
        if grading.cols != rank_:
            raise ValueError("grading has wrong source rank")
        object.__setattr__(self, "rank", rank_)
        object.__setattr__(self, "generators", tuple(sorted(gens)))
        object.__setattr__(self, "grading", grading)

    def __setattr__(self, name, value):
        raise AttributeError("GradedSemigroup is immutable")

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedSemigroup) and self.rank == other.rank
                and self.generators == other.generators
                and self.grading == other.grading)

    def __repr__(self) -> str:
        return f"GradedSemigroup(rank={self.rank}, {len(self.generators)} generators)"

    def generator_matrix(self) -> LatticeMap:
        return LatticeMap.from_columns(list(self.generators), ambient=self.rank)

    def contains(self, v: Sequence[int]) -> bool:
        return bool(lattice_points_in_fiber(self.generator_matrix(), list(v)))

    def to_json(self) -> str:
        return json.dumps({"rank": self.rank,
                           "generators": [list(g) for g in self.generators],
                           "grading": json.loads(self.grading.to_json())})

    @staticmethod
    def from_json(text: str) -> "GradedSemigroup":
        data = json.loads(text)
        g = data["grading"]
        return GradedSemigroup(data["rank"], data["generators"],
                               LatticeMap(g["entries"], g["rows"], g["cols"]))


class CyclicActionType:
    """A diagonal action of Z/r on A^n with weights (a_1, ..., a_n)."""

    __slots__ = ("r", "weights")

    def __init__(self, r: int, weights: Sequence[int]):
        if r < 1 or not weights:
            raise ValueError("need r >= 1 and at least one weight")
        ws = tuple(int(a) % r for a in weights)
        object.__setattr__(self, "r", int(r))
        object.__setattr__(self, "weights", ws)

    def __setattr__(self, name, value):
        raise AttributeError("CyclicActionType is immutable")

    def __repr__(self) -> str:
        return f"CyclicActionType(1/{self.r}({', '.join(map(str, self.weights))}))"


class CoxData:
    __slots__ = ("fan", "div", "deg", "class_torsion", "irrelevant_ideal")

    def __init__(self, fan: Fan, div: LatticeMap, deg: LatticeMap,
                 class_torsion: Sequence[int],
                 irrelevant_ideal: Sequence[tuple[int, ...]]):
        object.__setattr__(self, "fan", fan)
        object.__setattr__(self, "div", div)
        object.__setattr__(self, "deg", deg)
        object.__setattr__(self, "class_torsion", tuple(class_torsion))
        object.__setattr__(self, "irrelevant_ideal", tuple(irrelevant_ideal))

    def __setattr__(self, name, value):
        raise AttributeError("CoxData is immutable")

    def __repr__(self) -> str:
        return (f"CoxData(rays={self.div.rows}, class_rank={self.deg.rows - len(self.class_torsion)}, "
                f"torsion={list(self.class_torsion)})")


def invariant_lattice(t: CyclicActionType) -> LatticeMap:
    """Columns: basis of {u in Z^n : sum a_i u_i = 0 mod r}."""
    n = len(t.weights)
    aug = LatticeMap([list(t.weights) + [t.r]])
    ker = kernel_basis(aug)
    u_parts = [[ker.entries[i][j] for i in range(n)] for j in range(ker.cols)]
    h, _ = hermite_normal_form(LatticeMap(u_parts))
    basis = [list(row) for row in h.entries if any(row)]
    return LatticeMap(basis).transpose()


def invariant_semigroup(t: CyclicActionType) -> GradedSemigroup:
    """Hilbert basis of {u in N^n : sum a_i u_i = 0 mod r}, trivially graded."""
    n = len(t.weights)
    orthant = Cone(n, LatticeMap.identity(n).entries)
    gens = hilbert_basis(orthant, lattice=invariant_lattice(t))
    return GradedSemigroup(n, gens, LatticeMap.zero(0, n))


def jung_hirzebruch(r: int, a: int) -> tuple[list[int], list[Vec]]:
    """Continued fraction r/(r-a) = [b_1, ..., b_t] and the semigroup
    generators u_0=(r,0), u_1=(r-a,1), u_{i+1} = b_i u_i - u_{i-1}."""
    if not (0 < a < r) or gcd(a, r) != 1:
        raise ValueError("need 0 < a < r with gcd(a, r) = 1")
    coeffs = []
    x, y = r, r - a
    while y:
        b = -(-x // y)  # ceil
        coeffs.append(b)
        x, y = y, b * y - x
    gens = [(r, 0), (r - a, 1)]
    for b in coeffs:
        gens.append(tuple(b * p - q for p, q in zip(gens[-1], gens[-2])))
    return coeffs, gens


def is_normal(s: GradedSemigroup) -> tuple[bool, Vec | None]:
    """Whether s equals cone(s) intersected with the lattice its generators
    span; returns (True, None) or (False, witness)."""
    cone = Cone(s.rank, s.generators)
    rows = [list(g) for g in s.generators]
    h, _ = hermite_normal_form(LatticeMap(rows))
    basis = [list(row) for row in h.entries if any(row)]
    lattice = LatticeMap(basis).transpose() if basis else None
    hb = hilbert_basis(cone, lattice=lattice)
    for v in hb:
        if not s.contains(v):
            return False, v
    return True, None


def _piece(s: GradedSemigroup, degree: Sequence[int]) -> list[Vec]:
    """All semigroup elements of the given degree, as ambient vectors."""
    gmat = s.generator_matrix()
    comp = s.grading @ gmat
    expos = lattice_points_in_fiber(comp, list(degree))
    seen = []
    for e in expos:
        v = gmat.apply(e)
        if v not in seen:
            seen.append(v)
    return sorted(seen)


def proj_charts(s: GradedSemigroup, max_degree: int = 8) -> list[tuple[Vec, list[Vec]]]:
    """Toric charts of Proj k[S] for a semigroup graded to N.

    Picks the smallest degree l whose piece generates the Veronese (checked
    on the degree 2l and 3l pieces), then returns one chart per vertex of
    conv(S_l): (vertex, Hilbert basis of the chart cone inside Ker(grading)).
    """
    if s.grading.rows != 1:
        raise ValueError("proj_charts needs a rank-one grading")
    if any(s.grading.apply(g)[0] < 0 for g in s.generators):
        raise ValueError("grading must be nonnegative on generators")
    chosen = None
    for ell in range(1, max_degree + 1):
        piece = _piece(s, [ell])
        if not piece:
            continue
        ok = True
        for m in (2, 3):
            target = set(_piece(s, [m * ell]))
            sums = set()
            lower = _piece(s, [(m - 1) * ell]) if m > 2 else piece
            for u in piece:
                for v in lower:
                    sums.add(tuple(x + y for x, y in zip(u, v)))
            if not target <= sums:
                ok = False
                break
        if ok:
            chosen = (ell, piece)
            break
    if chosen is None:
        raise ValueError(f"no generating degree certified up to {max_degree}")
    ell, piece = chosen
    poly = polyhedron_from_generators(piece, [], s.rank)
    verts, _ = vertices_and_rays(poly)
    m_lattice = kernel_basis(s.grading)
    charts = []
    for v in verts:
        vertex = tuple(int(x) for x in v)
        diffs = [tuple(a - b for a, b in zip(u, vertex)) for u in piece
                 if u != vertex]
        cone = Cone(s.rank, diffs)
        gens = hilbert_basis(cone, lattice=m_lattice) if diffs else []
        charts.append((vertex, gens))
    return charts


def git_quotient_semigroup(s: GradedSemigroup, chi: Sequence[int],
                           j_max: int = 6) -> GradedSemigroup:
    """The N-graded semigroup of chi-semi-invariants, elements (v, j) with
    grading(v) = j * chi, generated minimally within degrees <= j_max.

    Raises when chi is ineffective up to j_max or when a minimal generator
    still appears in degree j_max (generation not certified).
    """
    chi = tuple(int(x) for x in chi)
    if len(chi) != s.grading.rows:
        raise ValueError("character has wrong rank")
    d = s.rank
    if not any(chi):
        gmat = s.generator_matrix()
        comp = s.grading @ gmat
        normals = [[1 if j == i else 0 for j in range(gmat.cols)]
                   for i in range(gmat.cols)]
        for row in comp.entries:
            normals.append(list(row))
            normals.append([-x for x in row])
        cone = cone_from_inequalities(normals, gmat.cols)
        inv = sorted({gmat.apply(h) for h in hilbert_basis(cone)})
        gens = [v + (0,) for v in _minimalize(inv)]
        gens.append(tuple([0] * d) + (1,))
        grading = LatticeMap([[0] * d + [1]])
        return GradedSemigroup(d + 1, gens, grading)
    pieces = {0: _piece(s, [0] * s.grading.rows)}
    piece_sets = {0: set(pieces[0])}
    effective = False
    gens: list[Vec] = []
    top_degree_gen = False
    for j in range(1, j_max + 1):
        pieces[j] = _piece(s, [j * c for c in chi])
        piece_sets[j] = set(pieces[j])
        if pieces[j]:
            effective = True
        for v in pieces[j]:
            reducible = False
            for j1 in range(0, j // 2 + 1):
                for u in pieces[j1]:
                    if j1 == 0 and not any(u):
                        continue
                    w = tuple(a - b for a, b in zip(v, u))
                    if w in piece_sets[j - j1]:
                        reducible = True
                        break
                if reducible:
                    break
            if not reducible:
                gens.append(v + (j,))
                if j == j_max:
                    top_degree_gen = True
    if not effective:
        raise ValueError(f"character is ineffective up to degree {j_max}")
    if top_degree_gen:
        raise ValueError(f"generation not certified within degree {j_max}")
    for v in _minimalize([u for u in pieces[0] if any(u)]):
        gens.append(v + (0,))
    grading = LatticeMap([[0] * d + [1]])
    return GradedSemigroup(d + 1, gens, grading)


def _minimalize(vectors: list[Vec]) -> list[Vec]:
    """Drop vectors that are N-combinations of the others."""
    out = list(vectors)
    changed = True
    while changed:
        changed = False
        for v in list(out):
            others = [u for u in out if u != v]
            if not others:
                continue
            mat = LatticeMap.from_columns(others)
            if lattice_points_in_fiber(mat, list(v)):
                out.remove(v)
                changed = True
                break
    return sorted(out)


def cox_data(f: Fan) -> CoxData:
    rays = f.rays()
    d = f.rank
    if not rays or rank(LatticeMap([list(r) for r in rays])) < d:
        raise ValueError("fan rays must span the ambient lattice")
    div = LatticeMap([list(r) for r in rays])
    free, torsion, deg = cokernel_presentation(div)
    irrelevant = []
    for c in f.maximal_cones:
        comp = tuple(i for i, r in enumerate(rays) if r not in c.rays)
        irrelevant.append(comp)
    return CoxData(f, div, deg, torsion, sorted(irrelevant))


def is_smooth(f: Fan) -> bool:
    return f.is_smooth()


def is_simplicial(f: Fan) -> bool:
    return f.is_simplicial()
