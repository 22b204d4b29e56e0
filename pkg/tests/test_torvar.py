import pytest

from toriq.latcore import LatticeMap, hermite_normal_form, solve_rational
from toriq.polycone import Cone, Fan, cone_contains_vector
from toriq.torvar import (
    CoxData,
    CyclicActionType,
    GradedSemigroup,
    cox_data,
    git_quotient_semigroup,
    invariant_semigroup,
    is_normal,
    is_simplicial,
    is_smooth,
    jung_hirzebruch,
    proj_charts,
)

from fractions import Fraction


def f1_fan() -> Fan:
    return Fan(2, [Cone(2, [(1, 0), (0, 1)]), Cone(2, [(0, 1), (-1, 1)]),
                   Cone(2, [(-1, 1), (0, -1)]), Cone(2, [(0, -1), (1, 0)])])


def test_invariant_semigroup_pinned():
    s = invariant_semigroup(CyclicActionType(3, [1, 1]))
    assert s.generators == ((0, 3), (1, 2), (2, 1), (3, 0))
    s = invariant_semigroup(CyclicActionType(7, [1, 4]))
    assert s.generators == ((0, 7), (1, 5), (2, 3), (3, 1), (7, 0))
    s = invariant_semigroup(CyclicActionType(1, [0, 0, 0]))
    assert s.generators == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_jung_hirzebruch_pinned():
    coeffs, gens = jung_hirzebruch(7, 4)
    assert coeffs == [3, 2, 2]
    assert sorted(gens) == [(0, 7), (1, 5), (2, 3), (3, 1), (7, 0)]
    coeffs, gens = jung_hirzebruch(3, 2)
    assert coeffs == [3]
    assert sorted(gens) == [(0, 3), (1, 1), (3, 0)]
    coeffs, gens = jung_hirzebruch(2, 1)
    assert coeffs == [2]
    assert sorted(gens) == [(0, 2), (1, 1), (2, 0)]
    with pytest.raises(ValueError):
        jung_hirzebruch(4, 2)
    with pytest.raises(ValueError):
        jung_hirzebruch(3, 3)


def test_jung_hirzebruch_matches_invariants_exhaustively():
    from math import gcd

    for r in range(2, 13):
        for a in range(1, r):
            if gcd(a, r) != 1:
                continue
            coeffs, gens = jung_hirzebruch(r, a)
            assert all(b >= 2 for b in coeffs)
            inv = invariant_semigroup(CyclicActionType(r, [1, a]))
            assert sorted(gens) == list(inv.generators)


def test_is_normal_pinned():
    trivial = LatticeMap.zero(0, 2)
    cusp = GradedSemigroup(2, [(4, 0), (3, 1), (1, 3), (0, 4)], trivial)
    ok, witness = is_normal(cusp)
    assert not ok and witness == (2, 2)
    orthant = GradedSemigroup(2, [(1, 0), (0, 1)], trivial)
    assert is_normal(orthant) == (True, None)
    inv = invariant_semigroup(CyclicActionType(7, [1, 4]))
    assert is_normal(inv) == (True, None)


def weighted_p123() -> GradedSemigroup:
    return GradedSemigroup(3, LatticeMap.identity(3).entries,
                           LatticeMap([[1, 2, 3]]))


def chart_order(chart_gens, m_lattice: LatticeMap) -> int:
    """Index of the Z-span of the chart cone's rays inside the chart lattice."""
    cone = Cone(len(chart_gens[0]), chart_gens)
    coords = []
    for ray in cone.rays:
        sol = solve_rational(m_lattice, [Fraction(x) for x in ray])
        coords.append([int(f) for f in sol])
    h, _ = hermite_normal_form(LatticeMap(coords))
    det = 1
    for i in range(h.rows):
        det *= h.entries[i][i]
    return det


def test_proj_charts_weighted_projective():
    charts = proj_charts(weighted_p123())
    assert len(charts) == 3
    by_vertex = {v: gens for v, gens in charts}
    assert set(by_vertex) == {(6, 0, 0), (0, 3, 0), (0, 0, 2)}
    from toriq.latcore import kernel_basis

    m = kernel_basis(LatticeMap([[1, 2, 3]]))
    # chart at x^6 is smooth, the others are cyclic of orders 2 and 3
    assert len(by_vertex[(6, 0, 0)]) == 2
    assert chart_order(by_vertex[(6, 0, 0)], m) == 1
    assert len(by_vertex[(0, 3, 0)]) == 3
    assert chart_order(by_vertex[(0, 3, 0)], m) == 2
    assert len(by_vertex[(0, 0, 2)]) == 3
    assert chart_order(by_vertex[(0, 0, 2)], m) == 3


def test_proj_charts_trivial():
    s = GradedSemigroup(1, [(1,)], LatticeMap.identity(1))
    charts = proj_charts(s)
    assert charts == [((1,), [])]


def test_proj_charts_gluing():
    for s in (weighted_p123(),):
        charts = proj_charts(s)
        for vi, gi in charts:
            cone_i = [g for g in gi]
            for vj, gj in charts:
                if vi == vj:
                    continue
                w = tuple(a - b for a, b in zip(vj, vi))
                gens = cone_i + [w, tuple(-x for x in w)]
                for g in gj:
                    assert cone_contains_vector(gens, g)


F1_DEG = LatticeMap([[1, -1, 1, 0], [0, 1, 0, 1]])


def f1_semigroup() -> GradedSemigroup:
    return GradedSemigroup(4, LatticeMap.identity(4).entries, F1_DEG)


def test_git_quotient_weighted():
    s = git_quotient_semigroup(weighted_p123(), [6], j_max=4)
    degree_one = sorted(g[:3] for g in s.generators if g[3] == 1)
    assert degree_one == sorted([(6, 0, 0), (4, 1, 0), (2, 2, 0), (0, 3, 0),
                                 (3, 0, 1), (1, 1, 1), (0, 0, 2)])
    assert all(g[3] == 1 for g in s.generators)


def test_git_quotient_f1():
    s = git_quotient_semigroup(f1_semigroup(), [1, 1], j_max=4)
    degree_one = sorted(g[:4] for g in s.generators if g[4] == 1)
    assert degree_one == sorted([(0, 0, 1, 1), (1, 0, 0, 1), (1, 1, 1, 0),
                                 (2, 1, 0, 0), (0, 1, 2, 0)])
    assert len(s.generators) == 5


def test_git_quotient_chi_zero():
    s = git_quotient_semigroup(weighted_p123(), [0], j_max=4)
    assert s.generators == ((0, 0, 0, 1),)
    diag = GradedSemigroup(2, [(1, 0), (0, 1)], LatticeMap([[1, -1]]))
    s = git_quotient_semigroup(diag, [0], j_max=4)
    assert s.generators == ((0, 0, 1), (1, 1, 0))


def test_git_quotient_errors():
    with pytest.raises(ValueError):
        git_quotient_semigroup(weighted_p123(), [-1], j_max=4)
    spread = GradedSemigroup(2, [(1, 0), (0, 1)], LatticeMap([[2, 3]]))
    with pytest.raises(ValueError):
        git_quotient_semigroup(spread, [1], j_max=3)
    s = git_quotient_semigroup(spread, [1], j_max=5)
    assert s.generators == ((0, 1, 3), (1, 0, 2))


def test_git_then_proj_charts_f1():
    s_chi = git_quotient_semigroup(f1_semigroup(), [1, 1], j_max=3)
    charts = proj_charts(s_chi)
    assert len(charts) == 4
    by_vertex = {v[:4]: sorted(g[:4] for g in gens) for v, gens in charts}
    assert by_vertex[(0, 0, 1, 1)] == sorted([(1, 0, -1, 0), (0, 1, 1, -1)])


def test_cox_data_f1():
    data = cox_data(f1_fan())
    rays = f1_fan().rays()
    assert rays == [(-1, 1), (0, -1), (0, 1), (1, 0)]
    assert data.div.entries == tuple(tuple(r) for r in rays)
    assert (data.deg @ data.div) == LatticeMap.zero(2, 2)
    assert data.class_torsion == ()
    want, _ = hermite_normal_form(LatticeMap([[1, 0, -1, 1], [0, 1, 1, 0]]))
    got, _ = hermite_normal_form(data.deg)
    assert got == want
    assert sorted(data.irrelevant_ideal) == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_cox_data_p2():
    fan = Fan(2, [Cone(2, [(1, 0), (0, 1)]), Cone(2, [(0, 1), (-1, -1)]),
                  Cone(2, [(-1, -1), (1, 0)])])
    data = cox_data(fan)
    got, _ = hermite_normal_form(data.deg)
    want, _ = hermite_normal_form(LatticeMap([[1, 1, 1]]))
    assert got == want
    assert all(len(m) == 1 for m in data.irrelevant_ideal)
    assert len(data.irrelevant_ideal) == 3


def resolution_fan_13() -> Fan:
    # fan of the 1/3(1,2) resolution, written in the basis
    # {(1,2)/3, (2,1)/3} of N = Z^2 + Z*(1,2)/3
    v = [(-1, 2), (0, 1), (1, 0), (2, -1)]
    return Fan(2, [Cone(2, [v[0], v[1]]), Cone(2, [v[1], v[2]]),
                   Cone(2, [v[2], v[3]])])


def test_cox_data_resolution():
    data = cox_data(resolution_fan_13())
    assert sorted(data.irrelevant_ideal) == [(0, 1), (0, 3), (2, 3)]
    assert len(data.irrelevant_ideal) == len(data.fan.maximal_cones)
    assert (data.deg @ data.div) == LatticeMap.zero(data.deg.rows, 2)


def test_cox_data_torsion():
    half = Fan(2, [Cone(2, [(1, 0), (1, 2)])])
    data = cox_data(half)
    assert data.class_torsion == (2,)


def test_smooth_simplicial():
    assert is_smooth(f1_fan())
    assert is_smooth(resolution_fan_13())
    p123 = Fan(2, [Cone(2, [(1, 0), (0, 1)]), Cone(2, [(0, 1), (-2, -3)]),
                   Cone(2, [(-2, -3), (1, 0)])])
    assert is_simplicial(p123)
    assert not is_smooth(p123)
    orthant_fan = Fan(2, [Cone(2, [(1, 0), (0, 1)])])
    assert is_smooth(orthant_fan)


def test_graded_semigroup_json():
    s = weighted_p123()
    assert GradedSemigroup.from_json(s.to_json()) == s
