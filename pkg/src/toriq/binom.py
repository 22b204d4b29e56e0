"""Pure-difference binomial and monomial ideal engine.

Every ideal handled here is generated by differences of monomials
y^u - y^v and by monomials.  This class is closed under S-pairs and
reduction, so Buchberger completion stays inside it; saturation rides on
one auxiliary variable and an elimination order.  Intersection needs the
(1 - t) multiplier trick, whose intermediate polynomials leave the class,
so a small exact sparse-polynomial engine handles that one computation and
the result is checked back into the class.

Binomials are normalised by sign only: the leading monomial comes first.
Common factors are never cancelled, since y^c(y^u - y^v) and y^u - y^v
generate different ideals.
"""

from __future__ import annotations

import json
import time
from fractions import Fraction
from functools import cmp_to_key

from .latcore import LatticeMap, kernel_basis

Expo = tuple[int, ...]


class ClosureError(ValueError):
    """A computation left the binomial-plus-monomial class."""


class MonomialOrder:
    """Degrevlex with an explicit priority list and optional elimination block.

    Monomials are compared block by block: first by degrevlex on the
    elimination variables (so auxiliary variables dominate), then by
    degrevlex on the main variables in priority order.
    """

    __slots__ = ("priority", "elim")

    def __init__(self, priority, elim=()) -> None:
        self.priority = tuple(int(v) for v in priority)
        self.elim = tuple(int(v) for v in elim)
        if set(self.priority) & set(self.elim):
            raise ValueError("elimination block overlaps the priority list")

    @classmethod
    def degrevlex(cls, nvars: int) -> "MonomialOrder":
        return cls(range(nvars))

    def with_block(self, aux) -> "MonomialOrder":
        return MonomialOrder(self.priority, tuple(aux) + self.elim)

    def compare(self, a: Expo, b: Expo) -> int:
        for seq in (self.elim, self.priority):
            if not seq:
                continue
            da = sum(a[v] for v in seq)
            db = sum(b[v] for v in seq)
            if da != db:
                return 1 if da > db else -1
            for v in reversed(seq):
                if a[v] != b[v]:
                    return -1 if a[v] > b[v] else 1
        return 0

    def sort_key(self):
        return cmp_to_key(self.compare)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MonomialOrder)
                and self.priority == other.priority and self.elim == other.elim)

    def __hash__(self) -> int:
        return hash((self.priority, self.elim))

    def __repr__(self) -> str:
        return f"MonomialOrder({list(self.priority)!r}, elim={list(self.elim)!r})"


def _add(a: Expo, b: Expo) -> Expo:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Expo, b: Expo) -> Expo:
    return tuple(x - y for x, y in zip(a, b))


def _divides(d: Expo, e: Expo) -> bool:
    return all(x <= y for x, y in zip(d, e))


def _join(a: Expo, b: Expo) -> Expo:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Expo, b: Expo) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _normalize(gen, order: MonomialOrder, nvars: int):
    """Normalise one generator to ("m", e) or ("b", plus, minus), or None."""
    if gen and gen[0] == "m":
        gen = gen[1]
    elif gen and gen[0] == "b":
        gen = (gen[1], gen[2])
    if isinstance(gen[0], (tuple, list)):
        plus = tuple(int(x) for x in gen[0])
        minus = tuple(int(x) for x in gen[1])
        if len(plus) != nvars or len(minus) != nvars:
            raise ValueError("exponent length does not match the variable count")
        if any(x < 0 for x in plus + minus):
            raise ValueError("exponents must be nonnegative")
        if plus == minus:
            return None
        if order.compare(plus, minus) < 0:
            plus, minus = minus, plus
        return ("b", plus, minus)
    expo = tuple(int(x) for x in gen)
    if len(expo) != nvars:
        raise ValueError("exponent length does not match the variable count")
    if any(x < 0 for x in expo):
        raise ValueError("exponents must be nonnegative")
    return ("m", expo)


def _reduce(elem, basis, order: MonomialOrder):
    """Normal form of an element modulo a list of elements (None if zero)."""
    while elem is not None:
        if elem[0] == "m":
            e = elem[1]
            for g in basis:
                if g[0] == "m" and _divides(g[1], e):
                    return None
                if g[0] == "b" and _divides(g[1], e):
                    e = _add(_sub(e, g[1]), g[2])
                    break
            else:
                return ("m", e)
            elem = ("m", e)
            continue
        a, b = elem[1], elem[2]
        changed = False
        for g in basis:
            if g[0] == "m" and _divides(g[1], a):
                elem = ("m", b)
                changed = True
                break
            if g[0] == "b" and _divides(g[1], a):
                a2 = _add(_sub(a, g[1]), g[2])
                if a2 == b:
                    return None
                elem = ("b", a2, b) if order.compare(a2, b) > 0 else ("b", b, a2)
                changed = True
                break
        if changed:
            continue
        for g in basis:
            if g[0] == "m" and _divides(g[1], b):
                elem = ("m", a)
                changed = True
                break
            if g[0] == "b" and _divides(g[1], b):
                elem = ("b", a, _add(_sub(b, g[1]), g[2]))
                changed = True
                break
        if not changed:
            return elem
    return None


def _s_pair(f, g, order: MonomialOrder):
    if f[0] == "m" and g[0] == "m":
        return None
    lead_f, lead_g = f[1], g[1]
    join = _join(lead_f, lead_g)
    if f[0] == "b" and g[0] == "b":
        plus = _add(_sub(join, lead_g), g[2])
        minus = _add(_sub(join, lead_f), f[2])
        if plus == minus:
            return None
        if order.compare(plus, minus) < 0:
            plus, minus = minus, plus
        return ("b", plus, minus)
    if f[0] == "b":
        return ("m", _add(_sub(join, lead_f), f[2]))
    return ("m", _add(_sub(join, lead_g), g[2]))


def _completion(elements, order: MonomialOrder) -> list:
    basis = [e for e in elements if e is not None]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    head = 0
    while head < len(pairs):
        i, j = pairs[head]
        head += 1
        f, g = basis[i], basis[j]
        if _coprime(f[1], g[1]):
            continue
        s = _s_pair(f, g, order)
        if s is None:
            continue
        r = _reduce(s, basis, order)
        if r is not None:
            basis.append(r)
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return basis


def _reduced_basis(basis, order: MonomialOrder) -> tuple:
    items = [e for e in basis if e is not None]
    minimal = []
    for i, e in enumerate(items):
        keep = True
        for j, f in enumerate(items):
            if i == j:
                continue
            if _divides(f[1], e[1]) and (f[1] != e[1] or j < i):
                keep = False
                break
        if keep:
            minimal.append(e)
    while True:
        step = []
        for i, e in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1:]
            step.append(_reduce(e, others, order))
        step = [e for e in step if e is not None]
        if step == minimal:
            break
        minimal = step
    key = order.sort_key()
    return tuple(sorted(minimal, key=lambda e: key(e[1])))


class BinomialIdeal:
    """Immutable ideal generated by pure-difference binomials and monomials.

    A generator is written either as a pair (plus, minus) of exponent
    tuples or as a bare exponent tuple for a monomial.  The reduced
    Groebner basis for the fixed order is computed on first use and cached.
    """

    __slots__ = ("vars", "gens", "order", "_reduced")

    def __init__(self, nvars: int, gens, order: MonomialOrder | None = None) -> None:
        self.vars = int(nvars)
        self.order = order if order is not None else MonomialOrder.degrevlex(nvars)
        if len(self.order.priority) + len(self.order.elim) != self.vars:
            raise ValueError("order does not cover the variables")
        normalised = []
        for gen in gens:
            elem = _normalize(gen, self.order, self.vars)
            if elem is not None:
                normalised.append(elem)
        self.gens = tuple(normalised)
        self._reduced = None

    def groebner_basis(self) -> tuple:
        if self._reduced is None:
            self._reduced = _reduced_basis(
                _completion(list(self.gens), self.order), self.order)
        return self._reduced

    def is_zero(self) -> bool:
        return not self.groebner_basis()

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0][0] == "m" and not any(gb[0][1])

    def contains(self, gen) -> bool:
        elem = _normalize(gen, self.order, self.vars)
        if elem is None:
            return True
        return _reduce(elem, self.groebner_basis(), self.order) is None

    def contains_ideal(self, other: "BinomialIdeal") -> bool:
        return all(_reduce(g, self.groebner_basis(), self.order) is None
                   for g in other.gens)

    def to_json(self) -> str:
        gens = []
        for e in self.gens:
            if e[0] == "m":
                gens.append({"mono": list(e[1])})
            else:
                gens.append({"plus": list(e[1]), "minus": list(e[2])})
        return json.dumps({"vars": self.vars, "gens": gens})

    @classmethod
    def from_json(cls, text: str, order: MonomialOrder | None = None) -> "BinomialIdeal":
        data = json.loads(text)
        gens = []
        for rec in data["gens"]:
            if "mono" in rec:
                gens.append(tuple(rec["mono"]))
            else:
                gens.append((tuple(rec["plus"]), tuple(rec["minus"])))
        return cls(data["vars"], gens, order)

    def __repr__(self) -> str:
        return f"BinomialIdeal({self.vars}, {list(self.gens)!r})"


def groebner(ideal: BinomialIdeal) -> BinomialIdeal:
    """The reduced Groebner basis of the ideal, as an ideal."""
    out = BinomialIdeal(ideal.vars, ideal.groebner_basis(), ideal.order)
    out._reduced = out.gens
    return out


def equal(a: BinomialIdeal, b: BinomialIdeal) -> bool:
    if a.vars != b.vars or a.order != b.order:
        raise ValueError("ideals live in different rings or orders")
    return a.groebner_basis() == b.groebner_basis()


def toric_ideal(a: LatticeMap, order: MonomialOrder | None = None) -> BinomialIdeal:
    """Lattice ideal of Ker(a): binomials y^u - y^v over u - v in the kernel.

    Kernel-basis binomials are saturated by the product of all variables,
    which yields a Markov basis of the full lattice ideal.
    """
    n = a.cols
    kernel = kernel_basis(a)
    gens = []
    for j in range(kernel.cols):
        u = kernel.column(j)
        plus = tuple(max(x, 0) for x in u)
        minus = tuple(max(-x, 0) for x in u)
        gens.append((plus, minus))
    ideal = BinomialIdeal(n, gens, order)
    if not gens:
        return ideal
    return _saturate_single(ideal, tuple([1] * n))


def _saturate_single(ideal: BinomialIdeal, mono: Expo) -> BinomialIdeal:
    """(ideal : y^mono ^ infinity) via t * y^mono - 1 and elimination of t."""
    if not any(mono):
        return groebner(ideal)
    n = ideal.vars
    order = ideal.order.with_block((n,))
    lifted = []
    for e in ideal.gens:
        if e[0] == "m":
            lifted.append(("m", e[1] + (0,)))
        else:
            lifted.append(("b", e[1] + (0,), e[2] + (0,)))
    lifted.append(("b", tuple(mono) + (1,), (0,) * (n + 1)))
    gb = _reduced_basis(_completion(lifted, order), order)
    kept = []
    for e in gb:
        if e[1][n] != 0:
            continue
        if e[0] == "b":
            if e[2][n] != 0:
                raise ClosureError("eliminated element still involves the auxiliary")
            kept.append((e[1][:n], e[2][:n]))
        else:
            kept.append(e[1][:n])
    return groebner(BinomialIdeal(n, kept, ideal.order))


def _monomial_list(m, nvars: int) -> list[Expo]:
    if isinstance(m, BinomialIdeal):
        monos = []
        for e in m.gens:
            if e[0] != "m":
                raise ValueError("saturating ideal must be monomial")
            monos.append(e[1])
        return monos
    m = list(m)
    if m and isinstance(m[0], int):
        return [tuple(m)]
    return [tuple(int(x) for x in mono) for mono in m]


def saturate(ideal: BinomialIdeal, m) -> BinomialIdeal:
    """(ideal : m^infinity) for a monomial or a monomial ideal.

    For a monomial ideal the saturation is the intersection of the
    saturations at each monomial generator.
    """
    monos = _monomial_list(m, ideal.vars)
    if not monos:
        raise ValueError("cannot saturate by the zero ideal")
    for mono in monos:
        if len(mono) != ideal.vars or any(x < 0 for x in mono):
            raise ValueError("bad saturating monomial")
    parts = [_saturate_single(ideal, mono) for mono in monos]
    result = parts[0]
    for part in parts[1:]:
        result = intersect(result, part)
    return result


# ---------------------------------------------------------------------------
# sparse polynomials over Q, used only for the intersection elimination


def _poly_lead(p: dict, key) -> Expo:
    return max(p, key=key)


def _poly_reduce(p: dict, basis, order: MonomialOrder) -> dict:
    key = order.sort_key()
    remainder: dict = {}
    work = dict(p)
    while work:
        lead = _poly_lead(work, key)
        coeff = work[lead]
        for g, g_lead, g_coeff in basis:
            if _divides(g_lead, lead):
                shift = _sub(lead, g_lead)
                factor = coeff / g_coeff
                for expo, c in g.items():
                    target = _add(expo, shift)
                    val = work.get(target, Fraction(0)) - factor * c
                    if val:
                        work[target] = val
                    else:
                        work.pop(target, None)
                break
        else:
            remainder[lead] = coeff
            del work[lead]
    return remainder


def _poly_buchberger(polys, order: MonomialOrder) -> list[dict]:
    key = order.sort_key()
    basis = []
    for p in polys:
        p = {e: c for e, c in p.items() if c}
        if p:
            lead = _poly_lead(p, key)
            basis.append((p, lead, p[lead]))
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    head = 0
    while head < len(pairs):
        i, j = pairs[head]
        head += 1
        f, f_lead, f_coeff = basis[i]
        g, g_lead, g_coeff = basis[j]
        if _coprime(f_lead, g_lead):
            continue
        join = _join(f_lead, g_lead)
        s: dict = {}
        for expo, c in f.items():
            target = _add(expo, _sub(join, f_lead))
            s[target] = s.get(target, Fraction(0)) + c / f_coeff
        for expo, c in g.items():
            target = _add(expo, _sub(join, g_lead))
            s[target] = s.get(target, Fraction(0)) - c / g_coeff
        s = {e: c for e, c in s.items() if c}
        r = _poly_reduce(s, basis, order)
        if r:
            lead = _poly_lead(r, key)
            basis.append((r, lead, r[lead]))
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    reduced = []
    for i, (p, lead, _) in enumerate(basis):
        if any(_divides(other[1], lead) and (other[1] != lead or j < i)
               for j, other in enumerate(basis) if j != i):
            continue
        reduced.append((p, lead))
    out = []
    for i, (p, lead) in enumerate(reduced):
        others = [(q, ql, q[ql]) for j, (q, ql) in enumerate(reduced) if j != i]
        r = _poly_reduce(p, others, order)
        if r:
            scale = r[_poly_lead(r, order.sort_key())]
            out.append({e: c / scale for e, c in r.items()})
    return out


def intersect(a: BinomialIdeal, b: BinomialIdeal) -> BinomialIdeal:
    """a intersect b via t*a + (1-t)*b and elimination of t.

    The intermediate basis contains genuine four-term polynomials, so this
    runs on the sparse-polynomial engine; the eliminated generators are
    checked back into the binomial-plus-monomial class.
    """
    if a.vars != b.vars or a.order != b.order:
        raise ValueError("ideals live in different rings or orders")
    n = a.vars
    t = n
    order = a.order.with_block((t,))
    polys = []
    for e in a.gens:
        if e[0] == "m":
            polys.append({e[1] + (1,): Fraction(1)})
        else:
            polys.append({e[1] + (1,): Fraction(1), e[2] + (1,): Fraction(-1)})
    for e in b.gens:
        if e[0] == "m":
            polys.append({e[1] + (0,): Fraction(1), e[1] + (1,): Fraction(-1)})
        else:
            polys.append({e[1] + (0,): Fraction(1), e[2] + (0,): Fraction(-1),
                          e[1] + (1,): Fraction(-1), e[2] + (1,): Fraction(1)})
    gb = _poly_buchberger(polys, order)
    kept = []
    key = order.sort_key()
    for p in gb:
        lead = _poly_lead(p, key)
        if lead[t] != 0:
            continue
        if any(expo[t] != 0 for expo in p):
            raise ClosureError("eliminated element still involves the auxiliary")
        terms = sorted(p.items(), key=lambda item: key(item[0]), reverse=True)
        if len(terms) == 1:
            kept.append(terms[0][0][:n])
        elif len(terms) == 2 and terms[0][1] == 1 and terms[1][1] == -1:
            kept.append((terms[0][0][:n], terms[1][0][:n]))
        else:
            raise ClosureError("intersection left the binomial class")
    return groebner(BinomialIdeal(n, kept, a.order))


# ---------------------------------------------------------------------------
# cellular component census


class CensusComponent:
    """One minimal cellular component: vanishing variables and its ideal."""

    __slots__ = ("vanishing", "ideal", "lattice")

    def __init__(self, vanishing, ideal, lattice) -> None:
        self.vanishing = tuple(vanishing)
        self.ideal = ideal
        self.lattice = lattice

    def __repr__(self) -> str:
        return f"CensusComponent(vanishing={list(self.vanishing)!r})"


class CensusResult:
    """Component census outcome; complete=False marks budget exhaustion."""

    __slots__ = ("components", "complete", "scanned")

    def __init__(self, components, complete, scanned) -> None:
        self.components = tuple(components)
        self.complete = complete
        self.scanned = scanned

    def __repr__(self) -> str:
        return (f"CensusResult(count={len(self.components)}, "
                f"complete={self.complete}, scanned={self.scanned})")


def _cellular_lattice(ideal: BinomialIdeal) -> LatticeMap:
    columns = []
    for e in ideal.groebner_basis():
        if e[0] == "b":
            columns.append(_sub(e[1], e[2]))
    if not columns:
        return LatticeMap.zero(ideal.vars, 0)
    return LatticeMap.from_columns(columns, ambient=ideal.vars)


def component_census(ideal: BinomialIdeal, max_candidates: int | None = None,
                     time_ms: int | None = None) -> CensusResult:
    """Census of minimal cellular components of a binomial scheme.

    For each variable subset Z consistent with the generators (a binomial
    vanishes on a cell iff both or neither of its monomials meet Z; a
    monomial generator must meet Z), saturate ideal + (y_i : i in Z) by
    the product of the remaining variables and keep the proper results;
    candidates whose ideal strictly contains another's are discarded.
    """
    n = ideal.vars
    deadline = None if time_ms is None else time.monotonic() + time_ms / 1000.0
    supports = []
    for e in ideal.gens:
        if e[0] == "m":
            supports.append((frozenset(i for i, x in enumerate(e[1]) if x), None))
        else:
            supports.append((frozenset(i for i, x in enumerate(e[1]) if x),
                             frozenset(i for i, x in enumerate(e[2]) if x)))
    candidates = []
    scanned = 0
    complete = True
    for zmask in range(1 << n):
        z = frozenset(i for i in range(n) if (zmask >> i) & 1)
        ok = True
        for plus, minus in supports:
            if minus is None:
                if not (plus & z):
                    ok = False
                    break
            elif bool(plus & z) != bool(minus & z):
                ok = False
                break
        if not ok:
            continue
        scanned += 1
        if max_candidates is not None and scanned > max_candidates:
            complete = False
            break
        if deadline is not None and time.monotonic() > deadline:
            complete = False
            break
        added = [tuple(1 if j == i else 0 for j in range(n)) for i in sorted(z)]
        cell = BinomialIdeal(n, list(ideal.gens) + added, ideal.order)
        torus = tuple(0 if i in z else 1 for i in range(n))
        sat = _saturate_single(cell, torus)
        if sat.is_unit():
            continue
        candidates.append((tuple(sorted(z)), sat))
    distinct: dict[tuple, tuple] = {}
    for z, sat in candidates:
        fingerprint = sat.groebner_basis()
        if fingerprint not in distinct:
            distinct[fingerprint] = (z, sat)
    kept = []
    entries = list(distinct.values())
    for i, (z, sat) in enumerate(entries):
        minimal = True
        for j, (_, other) in enumerate(entries):
            if i == j:
                continue
            if sat.contains_ideal(other) and sat.groebner_basis() != other.groebner_basis():
                minimal = False
                break
        if minimal:
            kept.append(CensusComponent(z, sat, _cellular_lattice(sat)))
    kept.sort(key=lambda c: (len(c.vanishing), c.vanishing))
    return CensusResult(kept, complete, scanned)
