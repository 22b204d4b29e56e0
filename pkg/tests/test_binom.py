import random

import pytest

from toriq.latcore import LatticeMap
from toriq.binom import (
    BinomialIdeal,
    ClosureError,
    MonomialOrder,
    _reduce,
    _s_pair,
    component_census,
    equal,
    groebner,
    intersect,
    saturate,
    toric_ideal,
)
from toriq.quivrep import Quiver, arborescence_ideal

TWISTED = LatticeMap([[3, 2, 1, 0], [0, 1, 2, 3]])

GHILB = LatticeMap([
    [-1, -1, 0, 1, 1, 0],
    [1, 0, -1, -1, 0, 1],
    [0, 1, 1, 0, -1, -1],
    [1, 0, 1, 0, 1, 0],
    [0, 0, 1, 1, 1, 0],
    [0, 0, 0, 1, 1, 1],
    [0, 1, 0, 1, 0, 1],
])


def unordered_binomials(ideal: BinomialIdeal) -> set:
    out = set()
    for e in ideal.groebner_basis():
        assert e[0] == "b"
        out.add(frozenset((e[1], e[2])))
    return out


def f1four_quiver() -> Quiver:
    return Quiver(4, [(0, 1), (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 3)])


def f1four_iq() -> BinomialIdeal:
    return BinomialIdeal(7, [
        ((0, 0, 1, 0, 0, 1, 0), (1, 0, 0, 0, 1, 0, 0)),
        ((0, 0, 1, 0, 0, 0, 1), (0, 1, 0, 0, 1, 0, 0)),
        ((0, 1, 0, 0, 0, 1, 0), (1, 0, 0, 0, 0, 0, 1)),
    ])


def f1four_irho() -> BinomialIdeal:
    return BinomialIdeal(7, [
        ((0, 0, 1, 0, 0, 1, 0), (1, 0, 0, 0, 1, 0, 0)),
        ((0, 0, 1, 0, 0, 0, 1), (0, 1, 0, 0, 1, 0, 0)),
        ((0, 1, 0, 1, 0, 1, 0), (1, 0, 0, 1, 0, 0, 1)),
    ])


def reducible_17_ideal() -> BinomialIdeal:
    # bound McKay relations of 1/7(1,2): variable (i, j) -> 7*(i-1) + j
    gens = []
    for j in range(7):
        plus = [0] * 14
        minus = [0] * 14
        plus[7 + j] += 1
        plus[(j - 1) % 7] += 1
        minus[(j + 1) % 7] += 1
        minus[7 + (j - 1) % 7] += 1
        gens.append((tuple(plus), tuple(minus)))
    return BinomialIdeal(14, gens)


def test_monomial_order():
    order = MonomialOrder.degrevlex(4)
    # x2^2 beats x1x3 in degrevlex
    assert order.compare((0, 2, 0, 0), (1, 0, 1, 0)) > 0
    assert order.compare((2, 0, 0, 0), (1, 1, 0, 0)) > 0
    assert order.compare((1, 0, 0, 0), (0, 0, 0, 2)) < 0
    elim = order.with_block((4,))
    assert elim.compare((0, 0, 0, 0, 1), (3, 3, 3, 3, 0)) > 0


def test_toric_ideal_twisted_cubic():
    ideal = toric_ideal(TWISTED)
    assert unordered_binomials(ideal) == {
        frozenset(((1, 0, 1, 0), (0, 2, 0, 0))),
        frozenset(((1, 0, 0, 1), (0, 1, 1, 0))),
        frozenset(((0, 1, 0, 1), (0, 0, 2, 0))),
    }


def test_toric_ideal_ghilb():
    ideal = toric_ideal(GHILB)
    listed = BinomialIdeal(6, [
        ((1, 0, 0, 1, 0, 0), (0, 1, 0, 0, 1, 0)),
        ((0, 0, 1, 0, 0, 1), (1, 0, 0, 1, 0, 0)),
        ((0, 1, 0, 0, 1, 0), (0, 0, 1, 0, 0, 1)),
    ])
    assert equal(ideal, groebner(listed))


def test_toric_ideal_injective():
    ideal = toric_ideal(LatticeMap([[1, 0], [0, 1], [1, 1]]))
    assert ideal.is_zero()


def test_groebner_idempotent_and_linear():
    single = BinomialIdeal(4, [((1, 0, 1, 0), (0, 2, 0, 0))])
    assert groebner(single).gens == single.gens
    linear = BinomialIdeal(3, [((1, 0, 0), (0, 1, 0)), ((0, 1, 0), (0, 0, 1))])
    gb = groebner(linear)
    assert unordered_binomials(gb) == {
        frozenset(((1, 0, 0), (0, 0, 1))),
        frozenset(((0, 1, 0), (0, 0, 1))),
    }
    assert equal(gb, groebner(gb))
    assert equal(linear, gb)


def test_spair_certification():
    for ideal in (toric_ideal(TWISTED), toric_ideal(GHILB), f1four_iq()):
        gb = ideal.groebner_basis()
        for i in range(len(gb)):
            for j in range(i + 1, len(gb)):
                s = _s_pair(gb[i], gb[j], ideal.order)
                if s is not None:
                    assert _reduce(s, list(gb), ideal.order) is None


def test_membership_random_kernel_pairs():
    rng = random.Random(20260815)
    for matrix in (TWISTED, GHILB):
        ideal = toric_ideal(matrix)
        from toriq.latcore import kernel_basis

        kernel = kernel_basis(matrix)
        n = matrix.cols
        for _ in range(120):
            w = [0] * n
            for j in range(kernel.cols):
                c = rng.randint(-3, 3)
                col = kernel.column(j)
                w = [x + c * y for x, y in zip(w, col)]
            shift = [rng.randint(0, 2) for _ in range(n)]
            u = tuple(max(x, 0) + s for x, s in zip(w, shift))
            v = tuple(max(-x, 0) + s for x, s in zip(w, shift))
            assert ideal.contains((u, v))


def test_saturate_f1four():
    bq = arborescence_ideal(f1four_quiver())
    assert len(bq) == 12
    monomials = []
    for mono in bq:
        expo = [0] * 7
        for a in mono:
            expo[a] += 1
        monomials.append(tuple(expo))
    sat = saturate(f1four_irho(), monomials)
    assert equal(sat, groebner(f1four_iq()))
    assert not equal(groebner(f1four_irho()), groebner(f1four_iq()))


def test_saturate_fixpoint_and_zero():
    cubic = toric_ideal(TWISTED)
    sat = saturate(cubic, (1, 0, 0, 0))
    assert equal(sat, cubic)
    again = saturate(sat, (1, 0, 0, 0))
    assert equal(again, sat)
    zero = BinomialIdeal(3, [])
    assert saturate(zero, (1, 1, 1)).is_zero()


def test_saturate_idempotent_monomial_ideal():
    ideal = f1four_irho()
    m = [(0, 0, 1, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0, 0)]
    once = saturate(ideal, m)
    twice = saturate(once, m)
    assert equal(once, twice)


def test_intersect_f1four():
    iq = f1four_iq()
    span = BinomialIdeal(7, [
        (0, 0, 1, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 1, 0, 0)])
    meet = intersect(groebner(iq), span)
    assert equal(meet, groebner(f1four_irho()))


def test_intersect_basics():
    y1 = BinomialIdeal(2, [(1, 0)])
    y2 = BinomialIdeal(2, [(0, 1)])
    meet = intersect(y1, y2)
    assert meet.groebner_basis() == (("m", (1, 1)),)
    cubic = toric_ideal(TWISTED)
    assert equal(intersect(cubic, cubic), cubic)


def test_intersect_containments():
    a = toric_ideal(TWISTED)
    b = BinomialIdeal(4, [(0, 1, 0, 0)])
    meet = intersect(a, b)
    for e in meet.gens:
        assert a.contains(e)
        assert b.contains(e)
    for ea in a.gens:
        for eb in b.gens:
            if ea[0] == "b":
                prod = ((tuple(x + y for x, y in zip(ea[1], eb[1]))),
                        (tuple(x + y for x, y in zip(ea[2], eb[1]))))
            else:
                prod = tuple(x + y for x, y in zip(ea[1], eb[1]))
            assert meet.contains(prod)


def test_census_reducible():
    result = component_census(reducible_17_ideal())
    assert result.complete
    assert len(result.components) == 8


def test_census_prime_and_monomial():
    result = component_census(toric_ideal(TWISTED))
    assert result.complete
    assert len(result.components) == 1
    assert result.components[0].vanishing == ()
    pair = component_census(BinomialIdeal(2, [(1, 1)]))
    assert len(pair.components) == 2
    assert sorted(c.vanishing for c in pair.components) == [(0,), (1,)]


def test_census_budget_marking():
    result = component_census(reducible_17_ideal(), max_candidates=2)
    assert not result.complete


def test_json_roundtrip():
    ideal = f1four_irho()
    back = BinomialIdeal.from_json(ideal.to_json())
    assert back.vars == ideal.vars and back.gens == ideal.gens
    mono = BinomialIdeal(2, [(1, 1)])
    assert BinomialIdeal.from_json(mono.to_json()).gens == mono.gens


def test_order_mismatch_rejected():
    a = BinomialIdeal(2, [(1, 0)])
    b = BinomialIdeal(3, [(0, 1, 0)])
    with pytest.raises(ValueError):
        equal(a, b)
    with pytest.raises(ValueError):
        intersect(a, b)
