"""McKay quivers of finite abelian diagonal actions and their moduli.

A finite abelian subgroup of GL(n) acting diagonally is stored as cyclic
factors plus a weight matrix.  Its McKay quiver has one vertex per
character and one arrow per (character, variable) pair, bound by monomial
commutation relations.  Torus-fixed G-constellations are 0/1 arrow
supports; each stable one is a torus-fixed point of the moduli space, and
the fan of the coherent component is assembled from one normal cone per
fixed point.  Wall reports compare the stable constellations and the
component fans on the two sides of a GIT wall.
"""

from __future__ import annotations

import itertools
import json
import time
from fractions import Fraction

from .binom import BinomialIdeal
from .latcore import LatticeMap, hermite_normal_form, kernel_basis
from .polycone import Cone, Fan, cone_from_inequalities
from .quivrep import (
    NonGenericWeightError,
    Quiver,
    SupportRep,
    Weight,
    incidence_data,
    monomial_string,
)

Vec = tuple[int, ...]

# Stability bookkeeping walks every vertex subset, so the group order is
# capped well below the point where 2^|G| tables stop fitting in memory.
_MAX_GROUP_ORDER = 16


class AbelianAction:
    """Diagonal action of a product of cyclic groups on affine n-space.

    ``factors`` lists the cyclic orders (r_1, ..., r_k) and ``weights``
    gives, for each coordinate, the character through which the group
    scales it, written additively as a length-k tuple mod the factors.
    """

    __slots__ = ("factors", "weights", "order", "characters", "_index")

    def __init__(self, factors, weights) -> None:
        facs = tuple(int(r) for r in factors)
        if not facs or any(r < 1 for r in facs):
            raise ValueError("cyclic factors must be positive integers")
        wts = []
        for w in weights:
            w = tuple(int(c) for c in w)
            if len(w) != len(facs):
                raise ValueError("weight length does not match the factors")
            wts.append(tuple(c % r for c, r in zip(w, facs)))
        if not wts:
            raise ValueError("the action needs at least one coordinate")
        order = 1
        for r in facs:
            order *= r
        chars = tuple(itertools.product(*(range(r) for r in facs)))
        self.factors = facs
        self.weights = tuple(wts)
        self.order = order
        self.characters = chars
        self._index = {c: i for i, c in enumerate(chars)}

    @classmethod
    def cyclic(cls, r: int, weights) -> "AbelianAction":
        """The action written 1/r(a_1, ..., a_n)."""
        return cls((r,), [(int(a),) for a in weights])

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def char_index(self, c) -> int:
        return self._index[tuple(c)]

    def char_add(self, a, b) -> Vec:
        return tuple((x + y) % r for x, y, r in zip(a, b, self.factors))

    def char_sub(self, a, b) -> Vec:
        return tuple((x - y) % r for x, y, r in zip(a, b, self.factors))

    def monomial_character(self, exponents) -> Vec:
        c = tuple(0 for _ in self.factors)
        for e, w in zip(exponents, self.weights):
            c = tuple((x + e * y) % r for x, y, r in zip(c, w, self.factors))
        return c

    def is_sl(self) -> bool:
        total = tuple(0 for _ in self.factors)
        for w in self.weights:
            total = self.char_add(total, w)
        return not any(total)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AbelianAction) and self.factors == other.factors
                and self.weights == other.weights)

    def __hash__(self) -> int:
        return hash((self.factors, self.weights))

    def __repr__(self) -> str:
        if len(self.factors) == 1:
            inner = ",".join(str(w[0]) for w in self.weights)
            return f"AbelianAction.cyclic({self.factors[0]}, ({inner}))"
        return f"AbelianAction({self.factors!r}, {list(self.weights)!r})"

    def to_json(self) -> str:
        return json.dumps({"factors": list(self.factors),
                           "weights": [list(w) for w in self.weights]})

    @classmethod
    def from_json(cls, text: str) -> "AbelianAction":
        data = json.loads(text)
        return cls(data["factors"], data["weights"])


class McKayQuiver:
    """Quiver on the characters with one arrow per (character, variable).

    The arrow for variable i at character rho runs rho -> rho + alpha_i in
    the multiplication direction and carries the label of x_i.  Arrows are
    ordered by (tail, variable), so arrow v*n + i starts at vertex v.  Each
    relation pairs the two length-2 paths x_i-then-x_j and x_j-then-x_i out
    of one vertex, stored as tuples of arrow indices.
    """

    __slots__ = ("action", "quiver", "relations", "arrow_variable")

    def __init__(self, action: AbelianAction, quiver: Quiver,
                 relations, arrow_variable) -> None:
        self.action = action
        self.quiver = quiver
        self.relations = tuple((tuple(p), tuple(q)) for p, q in relations)
        self.arrow_variable = tuple(arrow_variable)

    def arrow_index(self, vertex: int, variable: int) -> int:
        return vertex * self.action.nvars + variable

    def describe_arrow(self, a: int) -> str:
        tail, head, _ = self.quiver.arrows[a]
        return f"{tail} --x{self.arrow_variable[a] + 1}--> {head}"

    def __eq__(self, other) -> bool:
        return isinstance(other, McKayQuiver) and self.action == other.action

    def __hash__(self) -> int:
        return hash(self.action)

    def __repr__(self) -> str:
        return (f"McKayQuiver({self.action!r}, {self.quiver.vertices} vertices, "
                f"{len(self.quiver.arrows)} arrows, "
                f"{len(self.relations)} relations)")

    def to_json(self) -> str:
        return json.dumps({
            "action": json.loads(self.action.to_json()),
            "quiver": json.loads(self.quiver.to_json()),
            "relations": [[list(p), list(q)] for p, q in self.relations]})


def mckay_quiver(a: AbelianAction) -> McKayQuiver:
    """McKay quiver with commutation relations of a diagonal action.

    The weights must generate the character group (a faithful action);
    otherwise the quiver is disconnected and rejected.
    """
    n = a.nvars
    chars = a.characters
    arrows = []
    arrow_variable = []
    for v, chi in enumerate(chars):
        for i in range(n):
            head = a.char_index(a.char_add(chi, a.weights[i]))
            label = tuple(1 if j == i else 0 for j in range(n))
            arrows.append((v, head, label))
            arrow_variable.append(i)
    quiver = Quiver(len(chars), arrows)
    relations = []
    for v, chi in enumerate(chars):
        for i in range(n):
            head_i = a.char_index(a.char_add(chi, a.weights[i]))
            for j in range(i + 1, n):
                head_j = a.char_index(a.char_add(chi, a.weights[j]))
                p = (v * n + i, head_i * n + j)
                q = (v * n + j, head_j * n + i)
                relations.append((p, q))
    return McKayQuiver(a, quiver, relations, arrow_variable)


class MonomialGCluster:
    """Order ideal of monomials carrying each character exactly once."""

    __slots__ = ("action", "staircase", "_by_char")

    def __init__(self, action: AbelianAction, staircase) -> None:
        stairs = tuple(sorted(tuple(int(e) for e in m) for m in staircase))
        if len(set(stairs)) != len(stairs):
            raise ValueError("staircase monomials must be distinct")
        as_set = set(stairs)
        n = action.nvars
        for m in stairs:
            if len(m) != n or any(e < 0 for e in m):
                raise ValueError("staircase entries must be exponent vectors")
            for i in range(n):
                if m[i] > 0:
                    below = m[:i] + (m[i] - 1,) + m[i + 1:]
                    if below not in as_set:
                        raise ValueError("staircase is not closed under division")
        if len(stairs) != action.order:
            raise ValueError("staircase size must equal the group order")
        by_char = {}
        for m in stairs:
            c = action.monomial_character(m)
            if c in by_char:
                raise ValueError("two staircase monomials share a character")
            by_char[c] = m
        self.action = action
        self.staircase = stairs
        self._by_char = by_char

    def monomial_of_character(self, c) -> Vec:
        return self._by_char[tuple(c)]

    def __eq__(self, other) -> bool:
        return (isinstance(other, MonomialGCluster) and self.action == other.action
                and self.staircase == other.staircase)

    def __hash__(self) -> int:
        return hash((self.action, self.staircase))

    def __repr__(self) -> str:
        monos = ", ".join(monomial_string(m) for m in self.staircase)
        return f"MonomialGCluster({{{monos}}})"

    def to_json(self) -> str:
        return json.dumps({"staircase": [list(m) for m in self.staircase]})


def fixed_g_clusters(a: AbelianAction, cap: int = 64) -> list[MonomialGCluster]:
    """All monomial clusters of the action: torus-fixed points of G-Hilb.

    Enumerates order ideals of exponent vectors, growing one monomial at a
    time and pruning as soon as a character repeats; an ideal of size |G|
    with pairwise distinct characters is a cluster.  Sorted canonically.
    """
    if a.order > cap:
        raise ValueError(f"group order {a.order} exceeds the cap {cap}")
    n = a.nvars
    origin = tuple(0 for _ in range(n))
    found = set()
    seen = set()

    def grow(ideal: frozenset, chars_used: frozenset) -> None:
        if len(ideal) == a.order:
            found.add(tuple(sorted(ideal)))
            return
        for m in sorted(ideal):
            for i in range(n):
                cand = m[:i] + (m[i] + 1,) + m[i + 1:]
                if cand in ideal:
                    continue
                if any(cand[j] > 0 and
                       cand[:j] + (cand[j] - 1,) + cand[j + 1:] not in ideal
                       for j in range(n)):
                    continue
                c = a.monomial_character(cand)
                if c in chars_used:
                    continue
                nxt = ideal | {cand}
                if nxt in seen:
                    continue
                seen.add(nxt)
                grow(nxt, chars_used | {c})

    start = frozenset([origin])
    seen.add(start)
    if a.order == 1:
        found.add((origin,))
    else:
        grow(start, frozenset([a.monomial_character(origin)]))
    return [MonomialGCluster(a, stairs) for stairs in sorted(found)]


class TorusFixedConstellation:
    """Torus-fixed G-constellation as a 0/1 support of McKay-quiver arrows.

    Bit b(i, rho) records whether x_i acts nonzero into the rho-graded
    piece.  Construction validates the commutation rule: for every
    relation, either both paths are fully supported or neither is.
    """

    __slots__ = ("mq", "support")

    def __init__(self, mq: McKayQuiver, support) -> None:
        supp = tuple(sorted({int(x) for x in support}))
        m = len(mq.quiver.arrows)
        if supp and not (0 <= supp[0] and supp[-1] < m):
            raise ValueError("support contains an invalid arrow index")
        in_s = set(supp)
        for p, q in mq.relations:
            if (set(p) <= in_s) != (set(q) <= in_s):
                raise ValueError(
                    f"support breaks the commutation relation {p} = {q}")
        self.mq = mq
        self.support = supp

    def bit(self, variable: int, char_index: int) -> int:
        a = self.mq.action
        tail = a.char_sub(a.characters[char_index], a.weights[variable])
        return 1 if self.mq.arrow_index(a.char_index(tail), variable) \
            in self.support else 0

    def support_rep(self) -> SupportRep:
        return SupportRep(self.mq.quiver, self.support)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TorusFixedConstellation)
                and self.mq.action == other.mq.action
                and self.support == other.support)

    def __hash__(self) -> int:
        return hash((self.mq.action, self.support))

    def __repr__(self) -> str:
        inner = ", ".join(self.mq.describe_arrow(a) for a in self.support)
        return f"TorusFixedConstellation([{inner}])"

    def to_json(self) -> str:
        return json.dumps({"support": list(self.support)})


def cluster_to_rep(c: MonomialGCluster, mq: McKayQuiver) -> TorusFixedConstellation:
    """Constellation of a cluster: arrows where multiplication stays inside.

    Bit b(i, rho) is set when x_i times the staircase monomial of weight
    rho - alpha_i is again a staircase monomial (necessarily the one of
    weight rho).
    """
    if c.action != mq.action:
        raise ValueError("cluster and quiver carry different actions")
    a = mq.action
    n = a.nvars
    stairs = set(c.staircase)
    support = []
    for v, chi in enumerate(a.characters):
        m = c.monomial_of_character(chi)
        for i in range(n):
            up = m[:i] + (m[i] + 1,) + m[i + 1:]
            if up in stairs:
                support.append(mq.arrow_index(v, i))
    return TorusFixedConstellation(mq, support)


class ConstellationSearch:
    """Search outcome; complete=False marks budget exhaustion.

    ``wall_evidence`` is set when some torus-fixed commutation-consistent
    support came out strictly semistable, which certifies that the weight
    lies on a GIT wall.
    """

    __slots__ = ("constellations", "complete", "nodes", "wall_evidence")

    def __init__(self, constellations, complete, nodes, wall_evidence) -> None:
        self.constellations = tuple(constellations)
        self.complete = complete
        self.nodes = nodes
        self.wall_evidence = wall_evidence

    def __iter__(self):
        return iter(self.constellations)

    def __len__(self) -> int:
        return len(self.constellations)

    def __getitem__(self, i):
        return self.constellations[i]

    def __repr__(self) -> str:
        return (f"ConstellationSearch(count={len(self.constellations)}, "
                f"complete={self.complete}, nodes={self.nodes})")


def _variable_degree_map(mq: McKayQuiver) -> LatticeMap:
    """Map sending each arrow to the exponent vector of its variable."""
    n = mq.action.nvars
    m = len(mq.quiver.arrows)
    entries = [[0] * m for _ in range(n)]
    for a, i in enumerate(mq.arrow_variable):
        entries[i][a] = 1
    return LatticeMap(entries, n, m)


def _is_vardeg_rigid(mq: McKayQuiver, inc: LatticeMap, support) -> bool:
    """Torus-fixedness: circuits inside the support have zero variable sums."""
    supp = list(support)
    if not supp:
        return True
    sub = LatticeMap.from_columns([inc.column(a) for a in supp],
                                  ambient=mq.quiver.vertices)
    kern = kernel_basis(sub)
    n = mq.action.nvars
    for j in range(kern.cols):
        coeffs = kern.column(j)
        sums = [0] * n
        for pos, arrow in enumerate(supp):
            sums[mq.arrow_variable[arrow]] += coeffs[pos]
        if any(sums):
            return False
    return True


def _fixed_stable(mq: McKayQuiver, theta: Weight,
                  max_nodes: int | None, time_ms: int | None):
    """Depth-first search over arrow bits shared by the public operations.

    Prunes a branch as soon as the arrows still possible leave some vertex
    subset closed with nonpositive weight (closedness only grows as bits
    drop to zero, so no stable completion survives), as soon as a relation
    is forced out of balance, and as soon as the chosen arrows contain a
    directed cycle (cycles have nonzero variable sums, so fixed supports
    are acyclic).
    """
    g = mq.quiver.vertices
    n = mq.action.nvars
    arrows = mq.quiver.arrows
    m = len(arrows)
    if len(theta) != g:
        raise ValueError("weight length does not match the group order")
    if g > _MAX_GROUP_ORDER:
        raise ValueError(
            f"group order {g} exceeds the enumeration limit {_MAX_GROUP_ORDER}")
    inc, _, _ = incidence_data(mq.quiver)

    full = (1 << g) - 1
    theta_sign = [0] * (full + 1)
    for mask in range(1, full):
        val = sum(theta[i] for i in range(g) if (mask >> i) & 1)
        theta_sign[mask] = 0 if val == 0 else (1 if val > 0 else -1)
    violating: list[list[int]] = [[] for _ in range(m)]
    count = [0] * (full + 1)
    for a, (tail, head, _) in enumerate(arrows):
        if tail == head:
            continue
        for mask in range(1, full):
            if (mask >> tail) & 1 and not (mask >> head) & 1:
                violating[a].append(mask)
                count[mask] += 1
    rel_by_arrow: list[list[int]] = [[] for _ in range(m)]
    for r, (p, q) in enumerate(mq.relations):
        for a in set(p) | set(q):
            rel_by_arrow[a].append(r)

    bits: list[int | None] = [None] * m
    out_edges: list[list[int]] = [[] for _ in range(g)]
    deadline = None if time_ms is None else time.monotonic() + time_ms / 1000.0
    state = {"neg": 0, "zero": 0, "nodes": 0, "complete": True,
             "wall": False}
    supports: list[Vec] = []

    def path_value(path) -> int | None:
        val = 1
        for a in path:
            b = bits[a]
            if b == 0:
                return 0
            if b is None:
                val = None
        return val

    def relations_ok(arrow: int) -> bool:
        for r in rel_by_arrow[arrow]:
            p, q = mq.relations[r]
            vp, vq = path_value(p), path_value(q)
            if vp is not None and vq is not None and vp != vq:
                return False
        return True

    def creates_cycle(tail: int, head: int) -> bool:
        seen = {head}
        stack = [head]
        while stack:
            v = stack.pop()
            if v == tail:
                return True
            for u in out_edges[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return False

    def dfs(k: int) -> None:
        if not state["complete"]:
            return
        state["nodes"] += 1
        if max_nodes is not None and state["nodes"] > max_nodes:
            state["complete"] = False
            return
        if deadline is not None and state["nodes"] % 512 == 0 \
                and time.monotonic() > deadline:
            state["complete"] = False
            return
        if k == m:
            support = tuple(a for a in range(m) if bits[a])
            if not _is_vardeg_rigid(mq, inc, support):
                return
            if state["zero"] > 0:
                state["wall"] = True
            else:
                supports.append(support)
            return
        tail, head, _ = arrows[k]

        bits[k] = 1
        if relations_ok(k) and not creates_cycle(tail, head):
            out_edges[tail].append(head)
            dfs(k + 1)
            out_edges[tail].pop()
        bits[k] = None

        bits[k] = 0
        if relations_ok(k):
            closed_now = []
            for mask in violating[k]:
                count[mask] -= 1
                if count[mask] == 0:
                    closed_now.append(mask)
                    if theta_sign[mask] < 0:
                        state["neg"] += 1
                    elif theta_sign[mask] == 0:
                        state["zero"] += 1
            if state["neg"] == 0 and not (state["zero"] > 0 and state["wall"]):
                dfs(k + 1)
            for mask in closed_now:
                if theta_sign[mask] < 0:
                    state["neg"] -= 1
                elif theta_sign[mask] == 0:
                    state["zero"] -= 1
            for mask in violating[k]:
                count[mask] += 1
        bits[k] = None

    dfs(0)
    items = [TorusFixedConstellation(mq, s) for s in sorted(supports)]
    return ConstellationSearch(items, state["complete"], state["nodes"],
                               state["wall"])


def fixed_stable_constellations(a: AbelianAction, theta: Weight,
                                max_nodes: int | None = None,
                                time_ms: int | None = None) -> ConstellationSearch:
    """All torus-fixed theta-stable constellations, sorted by support.

    The weight must be generic; a strictly semistable fixed support only
    raises the ``wall_evidence`` flag on the result, it is never listed.
    Budget overruns return the partial list with complete=False.
    """
    return _fixed_stable(mckay_quiver(a), theta, max_nodes, time_ms)


def cmt_lattice_map(a: AbelianAction) -> LatticeMap:
    """Incidence map of the McKay quiver stacked over variable degrees.

    Columns are indexed by arrows; the column of arrow a_i at vertex v is
    the incidence vector of the arrow followed by the i-th unit vector.
    The toric ideal of this map cuts out the coherent component of the
    moduli of stable constellations inside the arrow space.
    """
    mq = mckay_quiver(a)
    g = mq.quiver.vertices
    n = a.nvars
    m = len(mq.quiver.arrows)
    entries = [[0] * m for _ in range(g + n)]
    for j, (tail, head, _) in enumerate(mq.quiver.arrows):
        entries[tail][j] -= 1
        entries[head][j] += 1
        entries[g + mq.arrow_variable[j]][j] += 1
    return LatticeMap(entries, g + n, m)


def relations_ideal(mq: McKayQuiver) -> BinomialIdeal:
    """Commutation relations as binomials in one variable per arrow."""
    m = len(mq.quiver.arrows)
    gens = []
    for p, q in mq.relations:
        plus = [0] * m
        minus = [0] * m
        for a in p:
            plus[a] += 1
        for a in q:
            minus[a] += 1
        gens.append((tuple(plus), tuple(minus)))
    return BinomialIdeal(m, gens)


def _section_basis(mq: McKayQuiver) -> LatticeMap:
    """Row basis of the lattice of variable degrees of quiver circuits.

    The rows span the degree vectors of cycle monomials, i.e. the
    invariant monomials of the action; the fan of the coherent component
    lives in the dual of this lattice.
    """
    inc, _, circuits = incidence_data(mq.quiver)
    degrees = _variable_degree_map(mq) @ circuits
    h, _ = hermite_normal_form(degrees.transpose())
    rows = [list(r) for r in h.entries if any(r)]
    if len(rows) != mq.action.nvars:
        raise ValueError("invariant monomials do not span the full lattice")
    return LatticeMap(rows, len(rows), mq.action.nvars)


def _chart_cone(mq: McKayQuiver, support, basis: LatticeMap) -> Cone:
    """Normal cone of the component at a fixed stable constellation.

    A potential assigns each vertex the monomial reaching it through the
    support; the chart inequalities say every missing arrow moves at least
    as fast as the potential difference it would bridge.  Coordinates are
    taken in the dual of the invariant-monomial lattice.
    """
    n = mq.action.nvars
    g = mq.quiver.vertices
    arrows = mq.quiver.arrows
    in_support = set(support)
    mu: list[list[int] | None] = [None] * g
    mu[0] = [0] * n
    queue = [0]
    while queue:
        v = queue.pop()
        for a in in_support:
            tail, head, _ = arrows[a]
            step = mq.arrow_variable[a]
            if tail == v and mu[head] is None:
                mu[head] = list(mu[v])
                mu[head][step] += 1
                queue.append(head)
            elif head == v and mu[tail] is None:
                mu[tail] = list(mu[v])
                mu[tail][step] -= 1
                queue.append(tail)
    if any(p is None for p in mu):
        raise ValueError("support does not connect the quiver")
    normals = []
    for a in range(len(arrows)):
        if a in in_support:
            continue
        tail, head, _ = arrows[a]
        row = [x - y for x, y in zip(mu[tail], mu[head])]
        row[mq.arrow_variable[a]] += 1
        if any(row) and tuple(row) not in normals:
            normals.append(tuple(row))
    sigma = cone_from_inequalities(normals, n)
    return Cone(n, [basis.apply(gen) for gen in sigma.generators])


def coherent_component_fan(a: AbelianAction, theta: Weight,
                           max_nodes: int | None = None,
                           time_ms: int | None = None) -> Fan:
    """Fan of the coherent component of the moduli space at a weight.

    The fan of the GIT quotient is the inner normal fan of the fiber
    polyhedron {x >= 0 : inc x = theta} pushed along variable degrees into
    the invariant-monomial lattice; each stable fixed constellation maps
    to a vertex of the pushed polyhedron and contributes its normal cone,
    which is computed chart by chart from a vertex potential.
    """
    mq = mckay_quiver(a)
    search = _fixed_stable(mq, theta, max_nodes, time_ms)
    if not search.complete:
        raise ValueError("constellation search exhausted its budget")
    if search.wall_evidence:
        raise NonGenericWeightError(
            "weight lies on a wall: a torus-fixed support is strictly semistable")
    if not search.constellations:
        raise NonGenericWeightError("no stable torus-fixed constellation")
    basis = _section_basis(mq)
    cones = []
    for w in search.constellations:
        sigma = _chart_cone(mq, w.support, basis)
        if sigma.dim() < a.nvars or not sigma.is_strongly_convex():
            raise NonGenericWeightError(
                f"fixed constellation with support {w.support} does not give "
                "a full-dimensional chart")
        cones.append(sigma)
    try:
        return Fan(a.nvars, cones)
    except ValueError as exc:
        raise NonGenericWeightError(
            f"charts do not glue to a fan: {exc}") from exc


class WallReport:
    """Comparison of stable constellations and fans across one GIT wall."""

    __slots__ = ("theta_from", "theta_to", "walls_crossed", "kept", "lost",
                 "gained", "fan_from", "fan_to", "fans_equal",
                 "cones_removed", "cones_added")

    def __init__(self, theta_from, theta_to, walls_crossed, kept, lost,
                 gained, fan_from, fan_to) -> None:
        self.theta_from = theta_from
        self.theta_to = theta_to
        self.walls_crossed = tuple(tuple(w) for w in walls_crossed)
        self.kept = tuple(kept)
        self.lost = tuple(lost)
        self.gained = tuple(gained)
        self.fan_from = fan_from
        self.fan_to = fan_to
        self.fans_equal = fan_from == fan_to
        self.cones_removed = tuple(
            c for c in fan_from.maximal_cones if c not in fan_to.maximal_cones)
        self.cones_added = tuple(
            c for c in fan_to.maximal_cones if c not in fan_from.maximal_cones)

    def __repr__(self) -> str:
        kind = "fan unchanged" if self.fans_equal else "fan changes"
        return (f"WallReport(kept={len(self.kept)}, lost={len(self.lost)}, "
                f"gained={len(self.gained)}, {kind})")

    def to_json(self) -> str:
        return json.dumps({
            "theta_from": [str(v) for v in self.theta_from.values],
            "theta_to": [str(v) for v in self.theta_to.values],
            "walls_crossed": [list(w) for w in self.walls_crossed],
            "kept": [list(w.support) for w in self.kept],
            "lost": [list(w.support) for w in self.lost],
            "gained": [list(w.support) for w in self.gained],
            "fans_equal": self.fans_equal,
            "fan_from": json.loads(self.fan_from.to_json()),
            "fan_to": json.loads(self.fan_to.to_json()),
            "cones_removed": [[list(g) for g in c.generators]
                              for c in self.cones_removed],
            "cones_added": [[list(g) for g in c.generators]
                            for c in self.cones_added]})


def _segment_weight(theta_from: Weight, theta_to: Weight, t: Fraction) -> Weight:
    return Weight(tuple(Fraction(x) + t * (Fraction(y) - Fraction(x))
                        for x, y in zip(theta_from.values, theta_to.values)))


def wall_report(a: AbelianAction, theta_from: Weight, theta_to: Weight,
                max_nodes: int | None = None,
                time_ms: int | None = None) -> WallReport:
    """Report on crossing the wall between two adjacent chambers.

    Adjacency is certified on the segment joining the weights: each subset
    hyperplane it crosses must be met at its own parameter, and the family
    of stable fixed constellations must change at exactly one of those
    crossings, which is the wall.  Both endpoint weights must be generic.
    """
    mq = mckay_quiver(a)
    g = mq.quiver.vertices
    for th in (theta_from, theta_to):
        if len(th) != g:
            raise ValueError("weight length does not match the group order")
    search_from = _fixed_stable(mq, theta_from, max_nodes, time_ms)
    search_to = _fixed_stable(mq, theta_to, max_nodes, time_ms)
    for name, search in (("theta_from", search_from), ("theta_to", search_to)):
        if not search.complete:
            raise ValueError(f"constellation search for {name} exhausted its budget")
        if search.wall_evidence:
            raise NonGenericWeightError(
                f"{name} lies on a wall: a torus-fixed support is strictly semistable")

    family_from = {w.support for w in search_from}
    family_to = {w.support for w in search_to}
    if family_from == family_to:
        raise ValueError("weights lie in the same chamber; no wall separates them")

    crossings: dict[Fraction, list[Vec]] = {}
    for mask in range(1, 1 << (g - 1)):
        subset = tuple(i for i in range(1, g) if (mask >> (i - 1)) & 1)
        va = Fraction(theta_from.of_subset(subset))
        vb = Fraction(theta_to.of_subset(subset))
        if va * vb < 0:
            crossings.setdefault(va / (va - vb), []).append(subset)
    params = sorted(crossings)
    if not params:
        raise ValueError("stable families differ but no subset hyperplane "
                         "separates the weights; adjacency cannot be certified")
    for t in params:
        if len(crossings[t]) > 1:
            raise ValueError(
                "several subset hyperplanes meet the segment at one point; "
                "adjacency cannot be certified, perturb the weights")
    families = [frozenset(family_from)]
    cuts = [Fraction(0)] + params + [Fraction(1)]
    for lo, hi in zip(cuts[1:-2], cuts[2:-1]):
        mid = _segment_weight(theta_from, theta_to, (lo + hi) / 2)
        sample = _fixed_stable(mq, mid, max_nodes, time_ms)
        if not sample.complete:
            raise ValueError("constellation search exhausted its budget "
                             "while walking the segment")
        families.append(frozenset(w.support for w in sample))
    families.append(frozenset(family_to))
    changes = [i for i in range(len(params))
               if families[i] != families[i + 1]]
    if len(changes) != 1:
        raise ValueError(
            f"weights are not in adjacent chambers: the segment meets "
            f"{len(changes)} stability changes")
    walls_crossed = tuple(crossings[params[changes[0]]])

    by_support_from = {w.support: w for w in search_from}
    by_support_to = {w.support: w for w in search_to}
    kept = [by_support_from[s] for s in sorted(family_from & family_to)]
    lost = [by_support_from[s] for s in sorted(family_from - family_to)]
    gained = [by_support_to[s] for s in sorted(family_to - family_from)]

    basis = _section_basis(mq)
    fan_from = Fan(a.nvars, [_chart_cone(mq, w.support, basis)
                             for w in search_from])
    fan_to = Fan(a.nvars, [_chart_cone(mq, w.support, basis)
                           for w in search_to])
    return WallReport(theta_from, theta_to, walls_crossed, kept, lost,
                      gained, fan_from, fan_to)
