"""Quivers, stability for thin representations, and toric quiver moduli.

A quiver here is a finite connected directed graph with a distinguished
vertex 0.  Representations always have dimension vector (1, ..., 1), so a
representation up to rescaling is a subset of arrows (its support), and its
subrepresentations are the vertex subsets closed under the supported arrows.
The moduli space of stable representations for a weight theta is the toric
variety whose fan is the inner normal fan of the fiber polyhedron
{x >= 0 : inc(x) = theta}, written in coordinates dual to the circuit
lattice of the underlying graph.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import gcd, lcm

from .latcore import LatticeMap, kernel_basis, rank, solve_integral
from .polycone import (
    Cone,
    Fan,
    RationalPolyhedron,
    dual_cone,
    inner_normal_fan,
    solve_inequalities,
    vertices_and_rays,
)

Vec = tuple[int, ...]


class IneffectiveWeightError(ValueError):
    """The fiber polyhedron of the weight is empty."""


class NonGenericWeightError(ValueError):
    """The weight lies on a stability wall."""


def _exact(x) -> int | Fraction:
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


class Quiver:
    """Connected directed graph; arrows may carry divisor exponent labels."""

    __slots__ = ("vertices", "arrows")

    def __init__(self, vertices: int, arrows) -> None:
        vertices = int(vertices)
        if vertices <= 0:
            raise ValueError("a quiver needs at least one vertex")
        label_len = None
        norm = []
        for arrow in arrows:
            tail, head = int(arrow[0]), int(arrow[1])
            label = arrow[2] if len(arrow) > 2 else None
            if not (0 <= tail < vertices and 0 <= head < vertices):
                raise ValueError("arrow endpoint out of range")
            if label is not None:
                label = tuple(int(c) for c in label)
                if any(c < 0 for c in label):
                    raise ValueError("arrow labels must be nonnegative")
                if label_len is None:
                    label_len = len(label)
                elif len(label) != label_len:
                    raise ValueError("arrow labels must share one length")
            norm.append((tail, head, label))
        self.vertices = vertices
        self.arrows = tuple(norm)
        seen = {0}
        stack = [0]
        neighbours: list[set[int]] = [set() for _ in range(vertices)]
        for tail, head, _ in norm:
            neighbours[tail].add(head)
            neighbours[head].add(tail)
        while stack:
            for u in neighbours[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) < vertices:
            raise ValueError("quiver is not connected")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        return f"Quiver({self.vertices}, {list(self.arrows)!r})"

    def is_acyclic(self) -> bool:
        out: list[list[int]] = [[] for _ in range(self.vertices)]
        for tail, head, _ in self.arrows:
            out[tail].append(head)
        state = [0] * self.vertices
        for root in range(self.vertices):
            if state[root]:
                continue
            stack = [(root, iter(out[root]))]
            state[root] = 1
            while stack:
                v, it = stack[-1]
                advanced = False
                for u in it:
                    if state[u] == 1:
                        return False
                    if state[u] == 0:
                        state[u] = 1
                        stack.append((u, iter(out[u])))
                        advanced = True
                        break
                if not advanced:
                    state[v] = 2
                    stack.pop()
        return True

    def to_json(self) -> str:
        arrows = []
        for tail, head, label in self.arrows:
            rec: dict = {"tail": tail, "head": head}
            if label is not None:
                rec["label"] = list(label)
            arrows.append(rec)
        return json.dumps({"vertices": self.vertices, "arrows": arrows})

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        data = json.loads(text)
        arrows = []
        for rec in data["arrows"]:
            if "label" in rec and rec["label"] is not None:
                arrows.append((rec["tail"], rec["head"], rec["label"]))
            else:
                arrows.append((rec["tail"], rec["head"]))
        return cls(data["vertices"], arrows)

    def to_dot(self, variable: str = "x") -> str:
        lines = ["digraph quiver {"]
        for i in range(self.vertices):
            lines.append(f'  v{i} [label="{i}"];')
        for tail, head, label in self.arrows:
            if label is None:
                lines.append(f"  v{tail} -> v{head};")
            else:
                text = monomial_string(label, variable)
                lines.append(f'  v{tail} -> v{head} [label="{text}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def monomial_string(exponents, variable: str = "x") -> str:
    parts = []
    for i, e in enumerate(exponents):
        if e == 0:
            continue
        parts.append(f"{variable}{i + 1}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts) if parts else "1"


class Weight:
    """Rational weight on the vertices, summing to zero."""

    __slots__ = ("values",)

    def __init__(self, values) -> None:
        vals = tuple(_exact(v) for v in values)
        if sum(vals) != 0:
            raise ValueError("weight entries must sum to zero")
        self.values = vals

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Weight) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"Weight({list(self.values)!r})"

    def of_subset(self, subset):
        return sum(self.values[i] for i in subset)

    def scaled_integral(self) -> Vec:
        """Clear denominators; stability only sees the ray through theta."""
        scale = lcm(*(Fraction(v).denominator for v in self.values), 1)
        return tuple(int(v * scale) for v in self.values)


class SupportRep:
    """Torus-fixed representation with dimension vector (1, ..., 1)."""

    __slots__ = ("quiver", "support")

    def __init__(self, quiver: Quiver, support) -> None:
        support = tuple(sorted({int(a) for a in support}))
        if support and not (0 <= support[0] and support[-1] < len(quiver.arrows)):
            raise ValueError("support contains an invalid arrow index")
        self.quiver = quiver
        self.support = support

    def __eq__(self, other) -> bool:
        return (isinstance(other, SupportRep) and self.quiver == other.quiver
                and self.support == other.support)

    def __hash__(self) -> int:
        return hash((self.quiver, self.support))

    def __repr__(self) -> str:
        return f"SupportRep({self.quiver!r}, {list(self.support)!r})"


def incidence_data(q: Quiver) -> tuple[LatticeMap, int, LatticeMap]:
    """Incidence map, its rank, and a basis of the circuit lattice."""
    entries = [[0] * len(q.arrows) for _ in range(q.vertices)]
    for j, (tail, head, _) in enumerate(q.arrows):
        entries[tail][j] -= 1
        entries[head][j] += 1
    if q.arrows:
        inc = LatticeMap(entries)
    else:
        inc = LatticeMap.zero(q.vertices, 0)
    return inc, rank(inc), kernel_basis(inc)


def _closed_subset_masks(vertices: int, arrows) -> list[int]:
    """Proper nonzero vertex subsets closed under the given (tail, head) pairs."""
    out = []
    for mask in range(1, (1 << vertices) - 1):
        if all((mask >> t) & 1 == 0 or (mask >> h) & 1 for t, h in arrows):
            out.append(mask)
    return out


def is_theta_stable(w: SupportRep, theta: Weight) -> tuple[str, Vec | None]:
    """Classify a thin support representation under a weight.

    Returns one of "stable", "semistable-not-stable", "unstable" together
    with a violating closed vertex subset (None when stable).  A subset is
    closed when every supported arrow with tail inside has its head inside;
    these are exactly the subrepresentation dimension supports.
    """
    q = w.quiver
    if len(theta) != q.vertices:
        raise ValueError("weight length does not match the vertex count")
    pairs = [(q.arrows[a][0], q.arrows[a][1]) for a in w.support]
    best = None
    for mask in _closed_subset_masks(q.vertices, pairs):
        subset = tuple(i for i in range(q.vertices) if (mask >> i) & 1)
        key = (theta.of_subset(subset), len(subset), subset)
        if best is None or key < best:
            best = key
    if best is None or best[0] > 0:
        return "stable", None
    if best[0] < 0:
        return "unstable", best[2]
    return "semistable-not-stable", best[2]


def arborescence_ideal(q: Quiver) -> list[Vec]:
    """Squarefree monomials, one per spanning out-tree rooted at vertex 0.

    Each monomial is the sorted tuple of its arrow indices.
    """
    out: list[list[int]] = [[] for _ in range(q.vertices)]
    for j, (tail, head, _) in enumerate(q.arrows):
        out[tail].append(head)
    seen = {0}
    stack = [0]
    while stack:
        for u in out[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    for v in range(q.vertices):
        if v not in seen:
            raise ValueError(f"vertex {v} is not reachable from vertex 0")
    in_arrows: list[list[int]] = [[] for _ in range(q.vertices)]
    for j, (tail, head, _) in enumerate(q.arrows):
        in_arrows[head].append(j)
    monomials = []
    for choice in itertools.product(*(in_arrows[v] for v in range(1, q.vertices))):
        parent = {v: q.arrows[a][0] for v, a in zip(range(1, q.vertices), choice)}
        rooted = True
        for v in range(1, q.vertices):
            trail = set()
            u = v
            while u != 0:
                if u in trail:
                    rooted = False
                    break
                trail.add(u)
                u = parent[u]
            if not rooted:
                break
        if rooted:
            monomials.append(tuple(sorted(choice)))
    return sorted(monomials)


def tautological_classes(q: Quiver) -> list[Weight]:
    """Classes of the tautological bundles: the 0th is trivial, then chi_i - chi_0."""
    classes = []
    for i in range(q.vertices):
        vals = [0] * q.vertices
        if i != 0:
            vals[0] = -1
            vals[i] = 1
        classes.append(Weight(vals))
    return classes


def moduli_fan(q: Quiver, theta: Weight) -> tuple[Fan, bool, bool]:
    """Fan of the moduli of theta-stable thin representations.

    The fan lives in the dual of the circuit lattice, with coordinates fixed
    by kernel_basis of the incidence map.  Also reports smoothness of the
    fan and projectivity (equivalent to acyclicity of the quiver).
    """
    if len(theta) != q.vertices:
        raise ValueError("weight length does not match the vertex count")
    inc, _, circuits = incidence_data(q)
    th = theta.scaled_integral()
    n = len(q.arrows)
    eqs = [(inc.row(i), th[i]) for i in range(q.vertices)]
    nonneg = [(tuple(1 if b == a else 0 for b in range(n)), 0) for a in range(n)]
    if solve_inequalities(n, eqs, nonneg) is None:
        raise IneffectiveWeightError("the fiber polyhedron of the weight is empty")
    c = circuits.cols
    if c == 0:
        return Fan(0, [Cone(0, [])]), True, q.is_acyclic()
    x0 = solve_integral(inc, th)
    if x0 is None:
        raise IneffectiveWeightError("weight is not integral on the vertex lattice")
    fiber = RationalPolyhedron(c, [(circuits.row(a), x0[a]) for a in range(n)])
    points, _ = vertices_and_rays(fiber)
    for y in points:
        support = tuple(
            a for a in range(n)
            if x0[a] + sum(circuits.entries[a][j] * y[j] for j in range(c)) != 0)
        verdict, witness = is_theta_stable(SupportRep(q, support), theta)
        if verdict != "stable":
            raise NonGenericWeightError(
                f"weight lies on a wall: the fixed point with support "
                f"{support} is {verdict} (subset {witness})")
    try:
        fan = inner_normal_fan(fiber)
    except ValueError as exc:
        raise NonGenericWeightError(str(exc)) from exc
    return fan, fan.is_smooth(), q.is_acyclic()


class Chamber:
    """Union of arrangement cells sharing one family of stable supports."""

    __slots__ = ("cells", "sample")

    def __init__(self, cells, sample) -> None:
        self.cells = tuple(tuple(s) for s in cells)
        self.sample = tuple(sample)

    def __repr__(self) -> str:
        return f"Chamber(cells={list(self.cells)!r}, sample={list(self.sample)!r})"


class ChamberComplex:
    """GIT chamber decomposition of the weight space of a quiver."""

    __slots__ = ("vertices", "walls", "chambers", "effective_normals")

    def __init__(self, vertices, walls, chambers, effective_normals) -> None:
        self.vertices = vertices
        self.walls = tuple(tuple(w) for w in walls)
        self.chambers = tuple(chambers)
        self.effective_normals = tuple(tuple(g) for g in effective_normals)

    def chamber_containing(self, theta: Weight) -> int | None:
        """Index of the chamber whose interior holds theta, else None.

        Walls where theta vanishes are treated as wildcards; this keeps
        weights on merged-away interior walls inside their chamber while
        genuine wall weights (matching several chambers) return None.
        """
        signs = []
        for w in self.walls:
            val = sum(a * t for a, t in zip(w, theta.values))
            signs.append(0 if val == 0 else (1 if val > 0 else -1))
        matches = set()
        for i, chamber in enumerate(self.chambers):
            for cell in chamber.cells:
                if all(s == 0 or s == c for s, c in zip(signs, cell)):
                    matches.add(i)
                    break
        return matches.pop() if len(matches) == 1 else None


def _integral_sample(point) -> Vec:
    scale = lcm(*(Fraction(x).denominator for x in point), 1)
    vals = [int(x * scale) for x in point]
    g = gcd(*vals) if any(vals) else 1
    return tuple(v // g for v in vals)


def chamber_decomposition(q: Quiver, restrict_to: Cone | None = None) -> ChamberComplex:
    """Chamber decomposition of the effective weight cone.

    Walls are the hyperplanes where some vertex subset has weight zero; open
    cells of the arrangement are merged whenever they classify every support
    representation identically, which recovers the GIT equivalence classes.
    """
    n = q.vertices
    inc, _, _ = incidence_data(q)
    if restrict_to is None:
        columns = [inc.column(j) for j in range(inc.cols)]
        effective = Cone(n, columns)
    else:
        effective = restrict_to
    eff_normals = list(dual_cone(effective).generators)

    walls = []
    for mask in range(1, 1 << (n - 1)):
        indicator = tuple(
            1 if i > 0 and (mask >> (i - 1)) & 1 else 0 for i in range(n))
        if all(sum(a * b for a, b in zip(indicator, g)) == 0
               for g in effective.generators):
            continue
        walls.append(indicator)
    walls.sort()

    base = [(g, 0) for g in eff_normals]
    if not walls:
        if not effective.generators:
            return ChamberComplex(n, [], [], eff_normals)
        interior = tuple(sum(col) for col in zip(*effective.generators))
        chamber = Chamber([()], _integral_sample(interior))
        return ChamberComplex(n, [], [chamber], eff_normals)
    cells: list[tuple[int, ...]] = [()]
    samples: dict[tuple[int, ...], tuple] = {}
    for wall in walls:
        refined = []
        for signs in cells:
            for sigma in (1, -1):
                ineqs = list(base)
                for j, sj in enumerate(signs):
                    ineqs.append((tuple(sj * a for a in walls[j]), 1))
                ineqs.append((tuple(sigma * a for a in wall), 1))
                point = solve_inequalities(n, [], ineqs)
                if point is not None:
                    refined.append(signs + (sigma,))
                    samples[signs + (sigma,)] = point
        cells = refined

    subset_masks = list(range(1, (1 << n) - 1))
    arrow_pairs = [(t, h) for t, h, _ in q.arrows]
    closed_by_support: list[list[int]] = []
    for smask in range(1 << len(q.arrows)):
        pairs = [arrow_pairs[a] for a in range(len(q.arrows)) if (smask >> a) & 1]
        closed_by_support.append(_closed_subset_masks(n, pairs))

    groups: dict[frozenset, list[tuple[int, ...]]] = {}
    for signs in cells:
        theta = samples[signs]
        positive = {}
        for mask in subset_masks:
            val = sum(theta[i] for i in range(n) if (mask >> i) & 1)
            positive[mask] = val > 0
        family = frozenset(
            smask for smask, masks in enumerate(closed_by_support)
            if all(positive[m] for m in masks))
        groups.setdefault(family, []).append(signs)

    chambers = []
    for family in sorted(groups, key=lambda f: sorted(groups[f])[0]):
        members = sorted(groups[family])
        chambers.append(Chamber(members, _integral_sample(samples[members[0]])))
    return ChamberComplex(n, walls, chambers, eff_normals)


def chamber_facets(cc: ChamberComplex, index: int) -> list[tuple[int, int | None]]:
    """Walls supporting facets of a chamber, with the neighbour across each.

    Returns (wall index, neighbouring chamber index) pairs; the neighbour is
    None when the facet lies on the boundary of the effective cone.
    """
    chamber = cc.chambers[index]
    cell_to_chamber = {}
    for i, ch in enumerate(cc.chambers):
        for cell in ch.cells:
            cell_to_chamber[cell] = i
    found: dict[int, int | None] = {}
    base = [(g, 0) for g in cc.effective_normals]
    for cell in chamber.cells:
        for i, wall in enumerate(cc.walls):
            if i in found:
                continue
            flipped = cell[:i] + (-cell[i],) + cell[i + 1:]
            neighbour = cell_to_chamber.get(flipped)
            if neighbour == index:
                continue
            ineqs = list(base)
            for j, sj in enumerate(cell):
                if j != i:
                    ineqs.append((tuple(sj * a for a in cc.walls[j]), 1))
            eqs = [(wall, 0)]
            if solve_inequalities(cc.vertices, eqs, ineqs) is not None:
                found[i] = neighbour
    return sorted(found.items())
