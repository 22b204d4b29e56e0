import json

import pytest
from hypothesis import given, strategies as st

from toriq import binom
from toriq.latcore import LatticeMap
from toriq.mckay import (
    AbelianAction,
    MonomialGCluster,
    TorusFixedConstellation,
    cluster_to_rep,
    cmt_lattice_map,
    coherent_component_fan,
    fixed_g_clusters,
    fixed_stable_constellations,
    mckay_quiver,
    relations_ideal,
    wall_report,
)
from toriq.polycone import Cone, Fan, fan_isomorphism
from toriq.quivrep import (
    NonGenericWeightError,
    Weight,
    chamber_decomposition,
    chamber_facets,
    incidence_data,
    is_theta_stable,
)


def third_12() -> AbelianAction:
    return AbelianAction.cyclic(3, (1, 2))


def sl3_22() -> AbelianAction:
    return AbelianAction((2, 2), [(1, 1), (1, 0), (0, 1)])


def klein_222() -> AbelianAction:
    return AbelianAction((2, 2, 2), [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])


def ghilb_weight(a: AbelianAction) -> Weight:
    return Weight((1 - a.order,) + (1,) * (a.order - 1))


def a2_resolution_fan() -> Fan:
    rays = [(-1, 2), (0, 1), (1, 0), (2, -1)]
    return Fan(2, [Cone(2, [rays[i], rays[i + 1]]) for i in range(3)])


def test_action_validation():
    a = third_12()
    assert a.factors == (3,) and a.order == 3 and a.nvars == 2
    assert a.characters == ((0,), (1,), (2,))
    assert AbelianAction.cyclic(3, (4, 2)).weights == ((1,), (2,))
    assert a.is_sl()
    assert not AbelianAction.cyclic(3, (1, 1)).is_sl()
    assert klein_222().is_sl()
    assert a.char_add((2,), (2,)) == (1,)
    assert a.char_sub((0,), (1,)) == (2,)
    assert a.monomial_character((2, 1)) == ((2 * 1 + 1 * 2) % 3,)
    with pytest.raises(ValueError):
        AbelianAction((3,), [(1, 0)])
    with pytest.raises(ValueError):
        AbelianAction((0,), [(1,)])
    with pytest.raises(ValueError):
        AbelianAction((3,), [])


def test_action_json_roundtrip():
    for a in (third_12(), sl3_22(), klein_222()):
        assert AbelianAction.from_json(a.to_json()) == a


def test_mckay_quiver_third():
    mq = mckay_quiver(third_12())
    assert mq.quiver.vertices == 3
    assert mq.quiver.arrows == (
        (0, 1, (1, 0)), (0, 2, (0, 1)),
        (1, 2, (1, 0)), (1, 0, (0, 1)),
        (2, 0, (1, 0)), (2, 1, (0, 1)))
    assert mq.relations == (((0, 3), (1, 4)), ((2, 5), (3, 0)), ((4, 1), (5, 2)))
    assert mq.arrow_variable == (0, 1, 0, 1, 0, 1)
    assert mq.arrow_index(2, 1) == 5
    assert mq.describe_arrow(0) == "0 --x1--> 1"


def test_mckay_quiver_beilinson_cycle():
    a = AbelianAction.cyclic(4, (1, 1, 1))
    mq = mckay_quiver(a)
    assert len(mq.quiver.arrows) == 12
    for k, (tail, head, label) in enumerate(mq.quiver.arrows):
        assert tail == k // 3 and head == (tail + 1) % 4
        assert label == tuple(1 if j == k % 3 else 0 for j in range(3))
    assert len(mq.relations) == 12


def test_mckay_quiver_trivial_group():
    mq = mckay_quiver(AbelianAction.cyclic(1, (0, 0)))
    assert mq.quiver.vertices == 1
    assert mq.quiver.arrows == ((0, 0, (1, 0)), (0, 0, (0, 1)))
    assert mq.relations == (((0, 1), (1, 0)),)


def test_mckay_quiver_invariants():
    for a in (third_12(), sl3_22(), klein_222(), AbelianAction.cyclic(7, (1, 2))):
        mq = mckay_quiver(a)
        n, g = a.nvars, a.order
        assert len(mq.quiver.arrows) == n * g
        assert len(mq.relations) == g * n * (n - 1) // 2
        out = [0] * g
        into = [0] * g
        for tail, head, _ in mq.quiver.arrows:
            out[tail] += 1
            into[head] += 1
        assert out == [n] * g and into == [n] * g
        inc = incidence_data(mq.quiver)[0]
        for c in range(inc.cols):
            assert sum(inc.entries[r][c] for r in range(inc.rows)) == 0


def test_mckay_quiver_rejects_unfaithful_action():
    with pytest.raises(ValueError):
        mckay_quiver(AbelianAction.cyclic(2, (0, 0)))


def test_fixed_g_clusters_third():
    clusters = fixed_g_clusters(third_12())
    assert [c.staircase for c in clusters] == [
        ((0, 0), (0, 1), (0, 2)),
        ((0, 0), (0, 1), (1, 0)),
        ((0, 0), (1, 0), (2, 0))]
    assert clusters[1].monomial_of_character((2,)) == (0, 1)


def test_fixed_g_clusters_trivial_group():
    clusters = fixed_g_clusters(AbelianAction.cyclic(1, (0, 0)))
    assert [c.staircase for c in clusters] == [((0, 0),)]


def test_fixed_g_clusters_counts():
    assert len(fixed_g_clusters(sl3_22())) == 4
    klein = fixed_g_clusters(klein_222())
    assert len(klein) == 12
    assert all(len(c.staircase) == 8 for c in klein)
    cube = tuple(sorted(
        (0, e2, e3, e4) for e2 in (0, 1) for e3 in (0, 1) for e4 in (0, 1)))
    assert cube in [c.staircase for c in klein]


def test_fixed_g_clusters_cap():
    with pytest.raises(ValueError):
        fixed_g_clusters(AbelianAction.cyclic(7, (1, 2)), cap=5)


def test_cluster_validation():
    a = third_12()
    with pytest.raises(ValueError):
        MonomialGCluster(a, [(0, 0), (1, 0)])
    with pytest.raises(ValueError):
        MonomialGCluster(a, [(0, 0), (0, 2), (1, 0)])
    with pytest.raises(ValueError):
        MonomialGCluster(AbelianAction.cyclic(4, (1, 2)),
                         [(0, 0), (1, 0), (2, 0), (0, 1)])


def test_cluster_to_rep_third():
    a = third_12()
    mq = mckay_quiver(a)
    clusters = fixed_g_clusters(a)
    supports = {c.staircase: cluster_to_rep(c, mq).support for c in clusters}
    assert supports == {
        ((0, 0), (0, 1), (0, 2)): (1, 5),
        ((0, 0), (0, 1), (1, 0)): (0, 1),
        ((0, 0), (1, 0), (2, 0)): (0, 2)}
    theta = ghilb_weight(a)
    for c in clusters:
        rep = cluster_to_rep(c, mq)
        assert is_theta_stable(rep.support_rep(), theta)[0] == "stable"
    chain = cluster_to_rep(clusters[2], mq)
    assert chain.bit(0, 1) == 1 and chain.bit(1, 2) == 0


def test_cluster_to_rep_trivial_group():
    a = AbelianAction.cyclic(1, (0, 0))
    rep = cluster_to_rep(fixed_g_clusters(a)[0], mckay_quiver(a))
    assert rep.support == ()


def test_constellation_validation():
    mq = mckay_quiver(third_12())
    with pytest.raises(ValueError):
        TorusFixedConstellation(mq, (0, 3))
    with pytest.raises(ValueError):
        TorusFixedConstellation(mq, (9,))
    w = TorusFixedConstellation(mq, (0, 2))
    assert w == TorusFixedConstellation(mq, [2, 0])
    assert hash(w) == hash(TorusFixedConstellation(mq, (0, 2)))
    assert json.loads(w.to_json()) == {"support": [0, 2]}


def test_fixed_stable_third_both_chambers():
    a = third_12()
    search = fixed_stable_constellations(a, Weight((-2, 1, 1)))
    assert search.complete and not search.wall_evidence
    assert {w.support for w in search} == {(0, 1), (0, 2), (1, 5)}
    other = fixed_stable_constellations(a, Weight((-1, -1, 2)))
    assert {w.support for w in other} == {(0, 2), (1, 2), (1, 3)}
    assert len(other) == 3 and other[0].support in {(0, 2), (1, 2), (1, 3)}
    for w in list(search) + list(other):
        assert is_theta_stable(w.support_rep(), Weight((-2, 1, 1))
                               if w in search.constellations
                               else Weight((-1, -1, 2)))[0] == "stable"


def test_fixed_stable_matches_clusters():
    for a in (third_12(), sl3_22(), klein_222()):
        mq = mckay_quiver(a)
        clusters = fixed_g_clusters(a)
        search = fixed_stable_constellations(a, ghilb_weight(a))
        assert search.complete and not search.wall_evidence
        assert {cluster_to_rep(c, mq) for c in clusters} == set(search)


def test_fixed_stable_wall_weight():
    a = third_12()
    search = fixed_stable_constellations(a, Weight((-1, 0, 1)))
    assert search.complete and search.wall_evidence
    with pytest.raises(NonGenericWeightError):
        coherent_component_fan(a, Weight((-1, 0, 1)))


def test_fixed_stable_budget_marks_partial():
    search = fixed_stable_constellations(klein_222(), ghilb_weight(klein_222()),
                                         max_nodes=50)
    assert not search.complete
    assert len(search) < 12


def test_fixed_stable_group_order_limit():
    factors = (2, 2, 2, 2, 2)
    weights = [tuple(1 if j == i else 0 for j in range(5)) for i in range(5)]
    a = AbelianAction(factors, weights)
    with pytest.raises(ValueError):
        fixed_stable_constellations(a, ghilb_weight(a))


def test_cmt_lattice_map_third():
    cmt = cmt_lattice_map(third_12())
    assert (cmt.rows, cmt.cols) == (5, 6)
    assert cmt.entries == (
        (-1, -1, 0, 1, 1, 0),
        (1, 0, -1, -1, 0, 1),
        (0, 1, 1, 0, -1, -1),
        (1, 0, 1, 0, 1, 0),
        (0, 1, 0, 1, 0, 1))
    ideal = binom.toric_ideal(cmt)
    assert binom.equal(ideal, relations_ideal(mckay_quiver(third_12())))


def test_cmt_lattice_map_trivial_group():
    cmt = cmt_lattice_map(AbelianAction.cyclic(1, (0, 0)))
    assert cmt.entries == ((0, 0), (1, 0), (0, 1))


def test_cmt_seventh_strictly_contains_relations():
    a = AbelianAction.cyclic(7, (1, 2))
    cmt = cmt_lattice_map(a)
    assert (cmt.rows, cmt.cols) == (9, 14)
    toric = binom.toric_ideal(cmt)
    commutation = relations_ideal(mckay_quiver(a))
    assert toric.contains_ideal(commutation)
    assert not commutation.contains_ideal(toric)


def test_coherent_fan_third_is_a2_resolution():
    a = third_12()
    fan = coherent_component_fan(a, Weight((-2, 1, 1)))
    assert len(fan.maximal_cones) == len(fixed_g_clusters(a))
    assert fan.is_smooth()
    assert fan_isomorphism(fan, a2_resolution_fan()) is not None
    assert coherent_component_fan(a, Weight((-1, -1, 2))) == fan


def test_coherent_fan_a1():
    fan = coherent_component_fan(AbelianAction.cyclic(2, (1, 1)),
                                 Weight((-1, 1)))
    expected = Fan(2, [Cone(2, [(1, 0), (0, 1)]), Cone(2, [(0, 1), (-1, 2)])])
    assert fan.is_smooth()
    assert fan_isomorphism(fan, expected) is not None


def test_coherent_fan_sl3_22():
    # basis of the quotient lattice: b1 = (0,1,1)/2, b2 = (1,0,1)/2, b3 = e3
    e1, e2, e3 = (0, 2, -1), (2, 0, -1), (0, 0, 1)
    m1, m2, m3 = (1, 0, 0), (0, 1, 0), (1, 1, -1)
    expected = Fan(3, [Cone(3, [e1, m2, m3]), Cone(3, [e2, m1, m3]),
                       Cone(3, [e3, m1, m2]), Cone(3, [m1, m2, m3])])
    fan = coherent_component_fan(sl3_22(), ghilb_weight(sl3_22()))
    assert len(fan.maximal_cones) == 4
    assert fan.is_smooth()
    assert fan_isomorphism(fan, expected) is not None


def test_coherent_fan_klein_222():
    fan = coherent_component_fan(klein_222(), ghilb_weight(klein_222()))
    assert len(fan.maximal_cones) == 12
    assert len(fan.rays()) == 11
    assert fan.is_smooth()


def test_wall_report_a2():
    a = third_12()
    report = wall_report(a, Weight((-2, 1, 1)), Weight((-1, -1, 2)))
    assert report.walls_crossed == ((1,),)
    assert {w.support for w in report.kept} == {(0, 2)}
    assert {w.support for w in report.lost} == {(0, 1), (1, 5)}
    assert {w.support for w in report.gained} == {(1, 2), (1, 3)}
    assert report.fans_equal
    assert report.cones_removed == () and report.cones_added == ()
    data = json.loads(report.to_json())
    assert data["walls_crossed"] == [[1]]
    assert data["fans_equal"] is True


def test_wall_report_matches_chamber_complex():
    a = third_12()
    mq = mckay_quiver(a)
    cc = chamber_decomposition(mq.quiver)
    assert len(cc.chambers) == 6
    i_from = cc.chamber_containing(Weight((-2, 1, 1)))
    i_to = cc.chamber_containing(Weight((-1, -1, 2)))
    assert i_from is not None and i_to is not None and i_from != i_to
    shared = [w for w, nb in chamber_facets(cc, i_from) if nb == i_to]
    assert len(shared) == 1
    normal = cc.walls[shared[0]]
    before = sum(x * t for x, t in zip(normal, (-2, 1, 1)))
    after = sum(x * t for x, t in zip(normal, (-1, -1, 2)))
    assert before * after < 0


def test_wall_report_rejects_bad_pairs():
    a = third_12()
    with pytest.raises(ValueError, match="same chamber"):
        wall_report(a, Weight((-2, 1, 1)), Weight((-3, 1, 2)))
    with pytest.raises(ValueError, match="cannot be certified"):
        wall_report(a, Weight((-2, 1, 1)), Weight((2, -1, -1)))
    with pytest.raises(NonGenericWeightError):
        wall_report(a, Weight((-1, 0, 1)), Weight((-1, -1, 2)))
    with pytest.raises(ValueError, match="budget"):
        wall_report(klein_222(), ghilb_weight(klein_222()),
                    Weight((-17, 3, 3, -1, 3, 3, 3, 3)), max_nodes=50)


def test_wall_report_klein_contraction():
    a = klein_222()
    theta_to = [3] * 8
    theta_to[3] = -1
    theta_to[0] = -sum(theta_to[1:])
    report = wall_report(a, ghilb_weight(a), Weight(theta_to))
    assert report.walls_crossed == ((3,),)
    assert len(report.kept) == 4
    assert len(report.lost) == 8
    assert len(report.gained) == 4
    assert not report.fans_equal
    rays_from = set(report.fan_from.rays())
    rays_to = set(report.fan_to.rays())
    assert rays_to < rays_from and len(rays_from - rays_to) == 1
    assert len(report.fan_from.maximal_cones) == 12
    assert len(report.fan_to.maximal_cones) == 8
    assert report.fan_to.is_smooth()


@given(st.integers(2, 6), st.integers(0, 5))
def test_cyclic_cluster_constellation_bijection(r, w2):
    a = AbelianAction.cyclic(r, (1, w2))
    mq = mckay_quiver(a)
    assert len(mq.quiver.arrows) == 2 * r
    assert len(mq.relations) == r
    clusters = fixed_g_clusters(a)
    search = fixed_stable_constellations(a, ghilb_weight(a))
    assert search.complete and not search.wall_evidence
    assert {cluster_to_rep(c, mq) for c in clusters} == set(search)
