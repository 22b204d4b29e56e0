"""Command line front door for the toriq toolkit.

Each subcommand prints exactly one artifact on stdout.  The default
format is canonical JSON (sorted keys, two-space indent), which is
bit-stable across runs; ``--format text`` renders vectors and monomials
for reading and ``--format dot`` emits Graphviz source for quivers and
fans.  Inline vectors are comma-separated integers, lists of vectors are
semicolon-separated (``--bundles "0;1,0;0,1;1,1"``, where ``0`` expands
to the zero class).  Structured inputs are JSON files written by other
subcommands; pass ``-`` to read one from stdin.

Exit status: 0 success, 1 bad input, 2 computational error reported by
the library verbatim, 3 exhausted time or size budget.
"""

import argparse
import json
import re
import sys

from .binom import (
    BinomialIdeal,
    MonomialOrder,
    component_census,
    equal,
    groebner,
    intersect,
    saturate,
    toric_ideal,
)
from .latcore import LatticeMap, cokernel_presentation, solve_integral
from .mckay import (
    AbelianAction,
    coherent_component_fan,
    fixed_g_clusters,
    fixed_stable_constellations,
    mckay_quiver,
    relations_ideal,
    wall_report,
)
from .polycone import (
    Cone,
    Fan,
    RationalPolyhedron,
    fan_isomorphism,
    inner_normal_fan,
    vertices_and_rays,
)
from .qsec import (
    PolarizedToric,
    embedding_verdict,
    image_equals_moduli,
    indecomposable_sections,
    multilinear_series_fan,
    multiplication_surjective,
    quiver_of_sections,
    sections,
)
from .quivrep import (
    Quiver,
    SupportRep,
    Weight,
    arborescence_ideal,
    chamber_decomposition,
    chamber_facets,
    incidence_data,
    is_theta_stable,
    moduli_fan,
    monomial_string,
    tautological_classes,
)
from .torvar import (
    CoxData,
    CyclicActionType,
    GradedSemigroup,
    cox_data,
    git_quotient_semigroup,
    invariant_semigroup,
    is_normal,
    jung_hirzebruch,
    proj_charts,
)

EXIT_INPUT = 1
EXIT_COMPUTE = 2
EXIT_BUDGET = 3


class InputError(ValueError):
    """Bad command line input, reported with exit status 1."""


# ---------------------------------------------------------------------------
# input parsing


def _build(fn, *args, **kwargs):
    """Run a constructor as input validation: errors become exit 1."""
    try:
        return fn(*args, **kwargs)
    except ValueError as e:
        raise InputError(str(e)) from e


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise InputError(f"cannot parse {what} {text!r}: expected "
                         "comma-separated integers") from None


def _vectors(text: str, what: str) -> list[tuple]:
    return [tuple(_ints(part, what)) for part in text.split(";")
            if part.strip() != ""]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(str(e)) from e


def _load(parser, path: str, what: str):
    text = _read_text(path)
    try:
        return parser(text)
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"cannot parse {what} from {path}: {e}") from e


def _weight(text: str, vertices: int) -> Weight:
    values = _ints(text, "weight")
    if len(values) != vertices:
        raise InputError(f"weight has {len(values)} entries, expected "
                         f"{vertices}")
    return _build(Weight, values)


def _action(text: str) -> AbelianAction:
    """Group spec: cyclic "r,w1,w2,..." or "f1,f2;w11,w12;w21,w22;..."."""
    if ";" in text:
        factors, *weights = _vectors(text, "type")
        if not weights:
            raise InputError("type needs weight vectors after the factors")
        return _build(AbelianAction, factors, weights)
    r, *ws = _ints(text, "type")
    if not ws:
        raise InputError("type needs weights after the group order")
    return _build(AbelianAction.cyclic, r, ws)


def _monomial_order(spec: str | None, nvars: int) -> MonomialOrder | None:
    if spec is None:
        return None
    priority = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        digits = token.lstrip("abcdefghijklmnopqrstuvwxyz_")
        try:
            k = int(digits)
        except ValueError:
            raise InputError(f"cannot parse order entry {token!r}") from None
        priority.append(k - 1 if digits != token else k)
    if sorted(priority) != list(range(nvars)):
        raise InputError(f"order must list each of the {nvars} variables "
                         "exactly once")
    return MonomialOrder(priority)


def _load_ideal(args, path: str) -> BinomialIdeal:
    text = _read_text(path)
    try:
        nvars = json.loads(text)["vars"]
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"cannot parse ideal from {path}: {e}") from e
    order = _monomial_order(args.order, nvars)
    return _load(lambda t: BinomialIdeal.from_json(t, order), path, "ideal")


def _bundle_list(spec: str, class_rank: int) -> list[tuple]:
    out = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        if part == "0":
            out.append((0,) * class_rank)
        else:
            out.append(tuple(_ints(part, "bundle")))
    if len(out) < 2:
        raise InputError("need at least two bundle classes")
    return out


def _polarized(args) -> PolarizedToric:
    fan = _load(Fan.from_json, args.fan, "fan")
    class_rank = len(fan.rays()) - fan.rank
    bundles = _bundle_list(args.bundles, class_rank)
    return _build(PolarizedToric.from_fan, fan, bundles)


# ---------------------------------------------------------------------------
# rendering


class _Result:
    """One artifact with its renderings and the process exit status."""

    def __init__(self, data, text: str | None = None, dot: str | None = None,
                 status: int = 0) -> None:
        self.data = data
        self.text = text
        self.dot = dot
        self.status = status

    def render(self, fmt: str) -> str:
        if fmt == "dot":
            if self.dot is None:
                raise InputError("dot output is not available for this "
                                 "command")
            return self.dot
        if fmt == "text" and self.text is not None:
            return self.text
        return json.dumps(self.data, indent=2, sort_keys=True)


def _vec_text(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _laurent_string(e, variable: str = "x") -> str:
    top = monomial_string(tuple(max(k, 0) for k in e), variable)
    if all(k >= 0 for k in e):
        return top
    bottom = monomial_string(tuple(max(-k, 0) for k in e), variable)
    if "*" in bottom:
        bottom = f"({bottom})"
    return f"{top}/{bottom}"


def _gen_text(gen, variable: str = "y") -> str:
    if gen[0] == "m":
        return monomial_string(gen[1], variable)
    return (monomial_string(gen[1], variable) + " - "
            + monomial_string(gen[2], variable))


def _ideal_lines(ideal: BinomialIdeal, variable: str = "y") -> str:
    if not ideal.gens:
        return "  0"
    return "\n".join("  " + _gen_text(g, variable) for g in ideal.gens)


def _fan_text(fan: Fan) -> str:
    rays = fan.rays()
    index = {r: i for i, r in enumerate(rays)}
    lines = [f"rank {fan.rank}, {len(rays)} rays, "
             f"{len(fan.maximal_cones)} maximal cones"]
    for i, r in enumerate(rays):
        lines.append(f"  ray {i}: {_vec_text(r)}")
    for k, cone in enumerate(fan.maximal_cones):
        members = " ".join(str(index[r]) for r in cone.rays)
        lines.append(f"  cone {k}: rays {members}")
    return "\n".join(lines)


def _fan_dot(fan: Fan) -> str:
    rays = fan.rays()
    index = {r: i for i, r in enumerate(rays)}
    lines = ["graph fan {"]
    for i, r in enumerate(rays):
        lines.append(f'  r{i} [label="{_vec_text(r)}"];')
    for k, cone in enumerate(fan.maximal_cones):
        lines.append(f'  c{k} [label="cone {k}", shape=box];')
        for r in cone.rays:
            lines.append(f"  c{k} -- r{index[r]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fan_result(fan: Fan, extra: dict | None = None,
                extra_text: str = "") -> _Result:
    data = json.loads(fan.to_json())
    if extra:
        data = {"fan": data, **extra}
    return _Result(data, _fan_text(fan) + extra_text, _fan_dot(fan))


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_quotient(args) -> _Result:
    r, *ws = _ints(args.type, "type")
    s = invariant_semigroup(_build(CyclicActionType, r, ws))
    matrix = LatticeMap.from_columns([list(g) for g in s.generators],
                                     ambient=s.rank)
    ideal = toric_ideal(matrix, order=_monomial_order(args.order,
                                                      len(s.generators)))
    data = {"type": [r] + list(ws),
            "generators": [list(g) for g in s.generators],
            "toric_ideal": json.loads(ideal.to_json())}
    text = ("generators:\n"
            + "\n".join("  " + monomial_string(g) for g in s.generators)
            + "\ntoric ideal:\n" + _ideal_lines(ideal))
    return _Result(data, text)


def _cmd_jh(args) -> _Result:
    spec = _ints(args.type, "type")
    if len(spec) != 2:
        raise InputError("jh needs --type r,a")
    coeffs, gens = _build(jung_hirzebruch, spec[0], spec[1])
    data = {"type": spec, "coefficients": coeffs,
            "generators": [list(g) for g in sorted(gens)]}
    text = ("coefficients: " + ", ".join(str(b) for b in coeffs)
            + "\ngenerators: "
            + ", ".join(monomial_string(g) for g in sorted(gens)))
    return _Result(data, text)


def _semigroup_arg(args) -> GradedSemigroup:
    if args.semigroup:
        return _load(GradedSemigroup.from_json, args.semigroup, "semigroup")
    r, *ws = _ints(args.type, "type")
    return invariant_semigroup(_build(CyclicActionType, r, ws))


def _cmd_normal_check(args) -> _Result:
    ok, witness = is_normal(_semigroup_arg(args))
    data = {"normal": ok,
            "witness": None if witness is None else list(witness)}
    text = "normal" if ok else f"not normal, witness {_vec_text(witness)}"
    return _Result(data, text)


def _cmd_proj(args) -> _Result:
    s = _load(GradedSemigroup.from_json, args.semigroup, "semigroup")
    charts = proj_charts(s, max_degree=args.max_degree)
    data = {"charts": [{"vertex": list(v),
                        "generators": [list(g) for g in gens]}
                       for v, gens in charts]}
    lines = []
    for v, gens in charts:
        body = ", ".join(_laurent_string(g) for g in gens) or "(none)"
        lines.append(f"chart at {monomial_string(v)}: {body}")
    return _Result(data, "\n".join(lines))


def _cmd_git(args) -> _Result:
    s = _load(GradedSemigroup.from_json, args.semigroup, "semigroup")
    chi = _ints(args.chi, "chi")
    out = git_quotient_semigroup(s, chi, j_max=args.j_max)
    lines = [f"{monomial_string(g[:-1])}  (level {g[-1]})"
             for g in out.generators]
    return _Result(json.loads(out.to_json()), "\n".join(lines))


def _cmd_cox(args) -> _Result:
    fan = _load(Fan.from_json, args.fan, "fan")
    data = cox_data(fan)
    payload = {
        "rays": [list(r) for r in data.div.entries],
        "degree": [list(r) for r in data.deg.entries],
        "class_torsion": list(data.class_torsion),
        "irrelevant_ideal": [list(m) for m in data.irrelevant_ideal],
        "fan": json.loads(fan.to_json()),
    }
    monomials = ", ".join("*".join(f"x{i + 1}" for i in m)
                          for m in data.irrelevant_ideal)
    text = ("rays: " + ", ".join(_vec_text(r) for r in data.div.entries)
            + "\ndegree rows: "
            + "; ".join(_vec_text(r) for r in data.deg.entries)
            + "\nclass torsion: "
            + (_vec_text(data.class_torsion) if data.class_torsion else "none")
            + "\nirrelevant ideal: " + monomials)
    return _Result(payload, text)


def _cmd_quiver_moduli(args) -> _Result:
    q = _load(Quiver.from_json, args.quiver, "quiver")
    theta = _weight(args.theta, q.vertices)
    fan, smooth, projective = moduli_fan(q, theta)
    extra_text = f"\nsmooth: {smooth}\nprojective: {projective}"
    return _fan_result(fan, {"smooth": smooth, "projective": projective},
                       extra_text)


def _cmd_chambers(args) -> _Result:
    q = _load(Quiver.from_json, args.quiver, "quiver")
    cc = chamber_decomposition(q)
    data = {
        "vertices": cc.vertices,
        "walls": [list(w) for w in cc.walls],
        "effective_normals": [list(g) for g in cc.effective_normals],
        "chambers": [{"sample": list(c.sample),
                      "cells": [list(s) for s in c.cells]}
                     for c in cc.chambers],
    }
    lines = [f"{len(cc.chambers)} chambers, {len(cc.walls)} walls"]
    for i, w in enumerate(cc.walls):
        lines.append(f"  wall {i}: {_vec_text(w)}")
    for i, c in enumerate(cc.chambers):
        lines.append(f"  chamber {i}: sample {_vec_text(c.sample)}")
    return _Result(data, "\n".join(lines))


def _ideal_result(ideal: BinomialIdeal) -> _Result:
    return _Result(json.loads(ideal.to_json()), _ideal_lines(ideal))


def _cmd_ideal_toric(args) -> _Result:
    if bool(args.matrix) == bool(args.matrix_file):
        raise InputError("pass exactly one of --matrix or --matrix-file")
    if args.matrix_file:
        matrix = _load(LatticeMap.from_json, args.matrix_file, "matrix")
    else:
        matrix = _build(LatticeMap, _vectors(args.matrix, "matrix"))
    ideal = toric_ideal(matrix, order=_monomial_order(args.order, matrix.cols))
    return _ideal_result(ideal)


def _cmd_ideal_saturate(args) -> _Result:
    ideal = _load_ideal(args, args.ideal)
    monomials = _vectors(args.by, "monomial")
    for m in monomials:
        if len(m) != ideal.vars:
            raise InputError(f"monomial {_vec_text(m)} has wrong length for "
                             f"{ideal.vars} variables")
    return _ideal_result(saturate(ideal, monomials))


def _cmd_ideal_intersect(args) -> _Result:
    a = _load_ideal(args, args.ideal)
    b = _load_ideal(args, args.other)
    return _ideal_result(intersect(a, b))


def _cmd_ideal_equal(args) -> _Result:
    a = _load_ideal(args, args.ideal)
    b = _load_ideal(args, args.other)
    verdict = equal(a, b)
    return _Result({"equal": verdict}, "equal" if verdict else "not equal")


def _cmd_ideal_census(args) -> _Result:
    ideal = _load_ideal(args, args.ideal)
    result = component_census(ideal, max_candidates=args.budget_items,
                              time_ms=args.budget_ms)
    data = {
        "complete": result.complete,
        "scanned": result.scanned,
        "components": [{"vanishing": list(c.vanishing),
                        "ideal": json.loads(c.ideal.to_json())}
                       for c in result.components],
    }
    lines = [f"{len(result.components)} minimal components, "
             f"complete: {result.complete}, scanned: {result.scanned}"]
    for c in result.components:
        where = ", ".join(f"y{i + 1}" for i in c.vanishing) or "nothing"
        lines.append(f"  vanishing {where}: {len(c.ideal.gens)} generators")
    return _Result(data, "\n".join(lines),
                   status=0 if result.complete else EXIT_BUDGET)


def _cmd_mckay_quiver(args) -> _Result:
    mq = mckay_quiver(_action(args.type))
    lines = [mq.describe_arrow(i) for i in range(len(mq.quiver.arrows))]
    lines.append(f"{len(mq.relations)} commutation relations")
    return _Result(json.loads(mq.to_json()), "\n".join(lines),
                   mq.quiver.to_dot())


def _cmd_mckay_clusters(args) -> _Result:
    a = _action(args.type)
    clusters = fixed_g_clusters(a, cap=args.budget_items or 64)
    data = {"count": len(clusters),
            "clusters": [[list(m) for m in c.staircase] for c in clusters]}
    lines = [f"{len(clusters)} torus-fixed clusters"]
    for c in clusters:
        lines.append("  " + ", ".join(monomial_string(m) for m in c.staircase))
    return _Result(data, "\n".join(lines))


def _cmd_mckay_constellations(args) -> _Result:
    a = _action(args.type)
    theta = _weight(args.theta, a.order)
    search = fixed_stable_constellations(a, theta,
                                         max_nodes=args.budget_items,
                                         time_ms=args.budget_ms)
    data = {
        "constellations": [list(w.support) for w in search],
        "complete": search.complete,
        "nodes": search.nodes,
        "wall_evidence": search.wall_evidence,
    }
    lines = [f"{len(search)} stable torus-fixed constellations "
             f"(complete: {search.complete}, "
             f"wall evidence: {search.wall_evidence})"]
    for w in search:
        lines.append("  arrows " + _vec_text(w.support))
    return _Result(data, "\n".join(lines),
                   status=0 if search.complete else EXIT_BUDGET)


def _ghilb_weight(a: AbelianAction) -> Weight:
    return Weight((1 - a.order,) + (1,) * (a.order - 1))


def _cmd_mckay_ghilb(args) -> _Result:
    a = _action(args.type)
    theta = (_weight(args.theta, a.order) if args.theta
             else _ghilb_weight(a))
    fan = coherent_component_fan(a, theta, max_nodes=args.budget_items,
                                 time_ms=args.budget_ms)
    return _fan_result(fan)


def _cmd_mckay_walls(args) -> _Result:
    a = _action(args.type)
    theta_from = _weight(args.theta_from, a.order)
    theta_to = _weight(args.theta_to, a.order)
    report = wall_report(a, theta_from, theta_to,
                         max_nodes=args.budget_items, time_ms=args.budget_ms)
    lines = [
        "walls crossed: " + (", ".join(_vec_text(w)
                                       for w in report.walls_crossed)
                             or "none"),
        f"kept {len(report.kept)}, lost {len(report.lost)}, "
        f"gained {len(report.gained)}",
        f"fans equal: {report.fans_equal}",
    ]
    if not report.fans_equal:
        lines.append(f"cones removed {len(report.cones_removed)}, "
                     f"added {len(report.cones_added)}")
    return _Result(json.loads(report.to_json()), "\n".join(lines))


def _cmd_qsec_build(args) -> _Result:
    x = _polarized(args)
    sq = quiver_of_sections(x, path_bound=args.path_bound)
    lines = []
    for t, h, lab in sq.quiver.arrows:
        lines.append(f"  {t} --{monomial_string(lab)}--> {h}")
    lines.append(f"{len(sq.relations)} relations:")
    for p, q in sq.relations:
        lines.append("  " + _path_text(p) + " = " + _path_text(q))
    return _Result(json.loads(sq.to_json()), "\n".join(lines),
                   sq.quiver.to_dot())


def _path_text(path) -> str:
    return "*".join(f"a{i + 1}" for i in path)


def _cmd_qsec_series_fan(args) -> _Result:
    x = _polarized(args)
    theta = _weight(args.theta, len(x.bundles))
    if any(v <= 0 for v in theta.values[1:]):
        raise InputError("weight must be positive away from the first bundle")
    sq = quiver_of_sections(x, path_bound=args.path_bound)
    return _fan_result(multilinear_series_fan(sq, theta))


def _cmd_qsec_image_test(args) -> _Result:
    x = _polarized(args)
    sq = quiver_of_sections(x, path_bound=args.path_bound)
    test = image_equals_moduli(sq)
    text = (f"verdict: {test.verdict}\ntoric ideal:\n"
            + _ideal_lines(test.toric)
            + "\nsaturated relation ideal:\n" + _ideal_lines(test.saturated))
    return _Result(json.loads(test.to_json()), text)


def _cmd_qsec_mult_check(args) -> _Result:
    x = _polarized(args)
    class_rank = len(x.cox.fan.rays()) - x.cox.fan.rank
    classes = _bundle_list(args.classes, class_rank)
    ok = multiplication_surjective(x, classes)
    data = {"classes": [list(c) for c in classes], "surjective": ok}
    return _Result(data, "surjective" if ok else "not surjective")


# ---------------------------------------------------------------------------
# golden example suite
#
# Each case is keyed by the label of the worked example it reproduces, so
# a failure points straight at the source computation.  The checks reuse
# the library's public entry points only.


def _wp123() -> GradedSemigroup:
    return GradedSemigroup(3, LatticeMap.identity(3).entries,
                           LatticeMap([[1, 2, 3]]))


F1_RAYS = [(1, 0), (0, 1), (-1, 1), (0, -1)]
F1_DEG = [[1, -1, 1, 0], [0, 1, 0, 1]]


def _f1_fan() -> Fan:
    pairs = [(0, 1), (1, 2), (2, 3), (3, 0)]
    return Fan(2, [Cone(2, [F1_RAYS[i], F1_RAYS[j]]) for i, j in pairs])


def _f1_semigroup() -> GradedSemigroup:
    return GradedSemigroup(4, LatticeMap.identity(4).entries,
                           LatticeMap(F1_DEG))


def _manual_cox(rays, cones, deg_rows=None) -> CoxData:
    """Cox data keeping the given ray order, so variables match a figure."""
    d = len(rays[0])
    fan = Fan(d, [Cone(d, [rays[i] for i in c]) for c in cones])
    div = LatticeMap([list(r) for r in rays])
    if deg_rows is None:
        _, torsion, deg = cokernel_presentation(div)
        assert not torsion
    else:
        deg = LatticeMap(deg_rows)
    irrelevant = sorted(tuple(i for i, r in enumerate(rays)
                              if r not in c.rays)
                        for c in fan.maximal_cones)
    return CoxData(fan, div, deg, (), irrelevant)


def _f1_variety(bundles) -> PolarizedToric:
    data = _manual_cox(F1_RAYS, [(0, 1), (1, 2), (2, 3), (3, 0)], F1_DEG)
    return PolarizedToric(data, bundles)


def _res_fan_13() -> Fan:
    rays = [(-1, 2), (0, 1), (1, 0), (2, -1)]
    return Fan(2, [Cone(2, [rays[i], rays[i + 1]]) for i in range(3)])


def _third12_variety() -> PolarizedToric:
    data = cox_data(_res_fan_13())
    return PolarizedToric(data, [(0, 0), data.deg.column(0),
                                 data.deg.column(3)])


def _pn_fan(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append((-1,) * n)
    return Fan(n, [Cone(n, [r for j, r in enumerate(rays) if j != drop])
                   for drop in range(n + 1)])


def _p2_variety(*powers) -> PolarizedToric:
    return PolarizedToric(cox_data(_pn_fan(2)), [(k,) for k in powers])


def _p1_variety(*powers) -> PolarizedToric:
    fan = Fan(1, [Cone(1, [(1,)]), Cone(1, [(-1,)])])
    return PolarizedToric(cox_data(fan), [(k,) for k in powers])


def _fig2_quiver() -> Quiver:
    return Quiver(3, [(0, 1), (1, 2), (0, 1), (0, 2)])


def _unit(i: int, n: int) -> tuple:
    return tuple(int(j == i) for j in range(n))


def _g_third11() -> None:
    s = invariant_semigroup(CyclicActionType(3, [1, 1]))
    assert s.generators == ((0, 3), (1, 2), (2, 1), (3, 0))


def _g_twisted_cubic() -> None:
    ideal = toric_ideal(LatticeMap([[3, 2, 1, 0], [0, 1, 2, 3]]))
    got = {frozenset((e[1], e[2])) for e in ideal.groebner_basis()}
    assert got == {frozenset(((1, 0, 1, 0), (0, 2, 0, 0))),
                   frozenset(((1, 0, 0, 1), (0, 1, 1, 0))),
                   frozenset(((0, 1, 0, 1), (0, 0, 2, 0)))}


def _g_714() -> None:
    s = invariant_semigroup(CyclicActionType(7, [1, 4]))
    assert s.generators == ((0, 7), (1, 5), (2, 3), (3, 1), (7, 0))
    coeffs, gens = jung_hirzebruch(7, 4)
    assert coeffs == [3, 2, 2]
    assert sorted(gens) == list(s.generators)
    # 2x2 minors of [[y1, y2, y3, y4], [y2^2, y3, y4, y5]]
    top = [_unit(i, 5) for i in range(4)]
    bottom = [(0, 2, 0, 0, 0)] + [_unit(i, 5) for i in range(2, 5)]
    minors = []
    for i in range(4):
        for j in range(i + 1, 4):
            minors.append((tuple(a + b for a, b in zip(top[i], bottom[j])),
                           tuple(a + b for a, b in zip(top[j], bottom[i]))))
    ideal = toric_ideal(LatticeMap([[7, 3, 2, 1, 0], [0, 1, 3, 5, 7]]))
    assert equal(ideal, groebner(BinomialIdeal(5, minors)))


def _g_jh_32() -> None:
    coeffs, gens = jung_hirzebruch(3, 2)
    assert coeffs == [3]
    assert sorted(gens) == [(0, 3), (1, 1), (3, 0)]


def _g_wpn() -> None:
    s = git_quotient_semigroup(_wp123(), [6], j_max=4)
    degree_one = sorted(g[:3] for g in s.generators if g[3] == 1)
    assert degree_one == sorted([(6, 0, 0), (4, 1, 0), (2, 2, 0), (0, 3, 0),
                                 (3, 0, 1), (1, 1, 1), (0, 0, 2)])
    assert all(g[3] == 1 for g in s.generators)


def _g_dualseq() -> None:
    charts = {v: sorted(gens) for v, gens in proj_charts(_wp123())}
    assert set(charts) == {(6, 0, 0), (0, 3, 0), (0, 0, 2)}
    assert charts[(6, 0, 0)] == [(-3, 0, 1), (-2, 1, 0)]
    assert charts[(0, 3, 0)] == [(0, -3, 2), (1, -2, 1), (2, -1, 0)]
    assert charts[(0, 0, 2)] == [(0, 3, -2), (1, 1, -1), (3, 0, -1)]


def _g_cusp() -> None:
    cusp = GradedSemigroup(2, [(4, 0), (3, 1), (1, 3), (0, 4)],
                           LatticeMap.zero(0, 2))
    assert is_normal(cusp) == (False, (2, 2))


def _g_f1_fan() -> None:
    s = git_quotient_semigroup(_f1_semigroup(), [1, 1], j_max=4)
    gens = sorted(g[:4] for g in s.generators if g[4] == 1)
    ineqs = [(_unit(i, 4), 0) for i in range(4)]
    for r in range(2):
        row = tuple(F1_DEG[r])
        ineqs.append((row, -1))
        ineqs.append((tuple(-x for x in row), 1))
    verts, recession = vertices_and_rays(RationalPolyhedron(4, ineqs))
    assert recession.generators == ()
    vset = {tuple(int(x) for x in v) for v in verts}
    assert vset == {(0, 0, 1, 1), (1, 0, 0, 1), (2, 1, 0, 0), (0, 1, 2, 0)}
    assert gens == sorted(vset | {(1, 1, 1, 0)})
    coeffs = solve_integral(LatticeMap(F1_DEG), [1, 1])
    chi_poly = RationalPolyhedron(2, [(F1_RAYS[i], coeffs[i])
                                      for i in range(4)])
    assert fan_isomorphism(inner_normal_fan(chi_poly), _f1_fan()) is not None
    assert _f1_fan().is_smooth()
    charts = {v[:4]: sorted(g[:4] for g in gens)
              for v, gens in proj_charts(s)}
    assert charts[(0, 0, 1, 1)] == sorted([(1, 0, -1, 0), (0, 1, 1, -1)])


def _g_res_cox() -> None:
    data = cox_data(_res_fan_13())
    assert sorted(data.irrelevant_ideal) == [(0, 1), (0, 3), (2, 3)]


def _g_fig2_moduli() -> None:
    q = _fig2_quiver()
    inc, wrank, _ = incidence_data(q)
    assert inc.entries == ((-1, 0, -1, -1), (1, -1, 1, 0), (0, 1, 0, 1))
    assert wrank == 2
    fan, smooth, projective = moduli_fan(q, Weight([-2, 1, 1]))
    assert smooth and projective
    assert fan_isomorphism(fan, _f1_fan()) is not None


def _g_tautological() -> None:
    classes = tautological_classes(_fig2_quiver())
    assert [w.values for w in classes[1:]] == [(-1, 1, 0), (-1, 0, 1)]
    assert moduli_fan(_fig2_quiver(), Weight([-2, 1, 1]))[1]


def _g_generic_stability() -> None:
    q = Quiver(3, [(0, 1), (1, 2)])
    assert is_theta_stable(SupportRep(q, [0, 1]),
                           Weight([-2, 1, 1])) == ("stable", None)
    verdict, witness = is_theta_stable(SupportRep(q, [0]), Weight([-2, 1, 1]))
    assert verdict == "unstable" and witness == (0, 1)


def _g_two_point() -> None:
    q = Quiver(2, [(0, 1)] * 3)
    assert arborescence_ideal(q) == [(0,), (1,), (2,)]
    fan, smooth, projective = moduli_fan(q, Weight([-1, 1]))
    assert smooth and projective
    assert fan_isomorphism(fan, _pn_fan(2)) is not None
    sq = quiver_of_sections(_p1_variety(0, 2))
    assert len(sq.quiver.arrows) == 3 and sq.relations == ()
    series = multilinear_series_fan(sq, Weight([-1, 1]))
    assert fan_isomorphism(series, _pn_fan(2)) is not None


def _g_challenge() -> None:
    q = Quiver(3, [(0, 1), (0, 1), (0, 2), (1, 2), (1, 2)])
    _, wrank, circuits = incidence_data(q)
    assert wrank == 2 and circuits.cols == 3
    fan, smooth, projective = moduli_fan(q, Weight([-2, 1, 1]))
    assert smooth and projective
    x, flop = _flop_variety()
    assert fan_isomorphism(fan, flop) is not None


def _flop_variety() -> tuple:
    rays = [(1, 0, 0), (0, 1, 0), (-1, -1, -1), (0, 1, 1), (1, 0, 1)]
    triples = [(0, 1, 2), (1, 3, 2), (3, 4, 2), (0, 4, 2), (0, 1, 3),
               (0, 3, 4)]
    data = _manual_cox(rays, triples)
    x = PolarizedToric(data, [(0, 0), data.deg.column(1),
                              data.deg.column(2)])
    return x, data.fan


def _g_flop_sections() -> None:
    x, fan = _flop_variety()
    sq = quiver_of_sections(x)
    assert sorted((t, h) for t, h, _ in sq.quiver.arrows) == [
        (0, 1), (0, 1), (0, 2), (1, 2), (1, 2)]
    assert sq.relations == ()
    series = multilinear_series_fan(sq, Weight([-2, 1, 1]))
    assert fan_isomorphism(series, fan) is not None
    assert image_equals_moduli(sq).verdict == "equal"


def _g_beilinson_mckay() -> None:
    mq = mckay_quiver(AbelianAction.cyclic(4, (1, 1, 1)))
    assert len(mq.quiver.arrows) == 12
    for k, (tail, head, _) in enumerate(mq.quiver.arrows):
        assert tail == k // 3 and head == (tail + 1) % 4


def _g_qos_third() -> None:
    x = _third12_variety()
    assert sections(x, x.bundles[0], x.bundles[1]) == [(0, 0, 1, 2),
                                                       (1, 0, 0, 0)]
    assert indecomposable_sections(x, x.bundles[0],
                                   x.bundles[1]) == [(1, 0, 0, 0)]
    sq = quiver_of_sections(x)
    assert sq.quiver.arrows == (
        (0, 1, (1, 0, 0, 0)), (0, 2, (0, 0, 0, 1)),
        (1, 0, (0, 1, 1, 1)), (1, 2, (1, 1, 0, 0)),
        (2, 0, (1, 1, 1, 0)), (2, 1, (0, 0, 1, 1)))
    assert sq.relations == (((0, 2), (1, 4)), ((2, 0), (3, 5)),
                            ((4, 1), (5, 3)))


def _g_ghilb_third() -> None:
    x = _third12_variety()
    sq = quiver_of_sections(x)
    test = image_equals_moduli(sq)
    assert test.verdict == "equal"
    # the three cyclic binomials; any two generate, so compare as ideals
    listed = BinomialIdeal(6, [
        ((1, 0, 1, 0, 0, 0), (0, 1, 0, 0, 1, 0)),
        ((1, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 1)),
        ((0, 1, 0, 0, 1, 0), (0, 0, 0, 1, 0, 1))])
    assert equal(test.toric, listed)
    assert equal(groebner(sq.relation_ideal()), test.toric)
    assert multiplication_surjective(x, [x.bundles[1], x.bundles[2]])


def _g_fig3_fan() -> None:
    fan = coherent_component_fan(AbelianAction.cyclic(3, (1, 2)),
                                 Weight((-2, 1, 1)))
    assert fan.is_smooth() and len(fan.maximal_cones) == 3
    assert fan_isomorphism(fan, _res_fan_13()) is not None


def _g_f1_sections_basis() -> None:
    x = _f1_variety([(0, 0), (1, 1)])
    assert sections(x, (0, 0), (1, 1)) == [(0, 0, 1, 1), (0, 1, 2, 0),
                                           (1, 0, 0, 1), (1, 1, 1, 0),
                                           (2, 1, 0, 0)]


def _g_f1_very_ample() -> None:
    x = _f1_variety([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert embedding_verdict(x) == "closed_immersion"


def _g_f1_multilinear() -> None:
    x = _f1_variety([(0, 0), (1, 0), (0, 1)])
    sq = quiver_of_sections(x)
    assert len(sq.quiver.arrows) == 4
    fan = multilinear_series_fan(sq, Weight([-2, 1, 1]))
    assert fan_isomorphism(fan, _f1_fan()) is not None


def _g_f1_four() -> None:
    x = _f1_variety([(0, 0), (1, 0), (0, 1), (1, 1)])
    sq = quiver_of_sections(x)
    assert {(t, h, lab) for t, h, lab in sq.quiver.arrows} == {
        (0, 1, (1, 0, 0, 0)), (0, 1, (0, 0, 1, 0)), (0, 2, (0, 0, 0, 1)),
        (1, 2, (0, 1, 0, 0)), (1, 3, (0, 0, 0, 1)),
        (2, 3, (1, 0, 0, 0)), (2, 3, (0, 0, 1, 0))}
    assert sq.relations == (((0, 4), (2, 5)), ((1, 4), (2, 6)),
                            ((0, 3, 6), (1, 3, 5)))
    test = image_equals_moduli(sq)
    assert test.verdict == "equal"
    assert len(test.toric.gens) == 3
    irho = groebner(sq.relation_ideal())
    assert not equal(test.toric, irho)
    inner = BinomialIdeal(7, [_unit(i, 7) for i in (2, 3, 4)])
    assert equal(intersect(test.toric, inner), irho)


def _g_hexagon() -> None:
    rays = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
    pairs = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]
    data = _manual_cox(rays, pairs)

    def cls(*idx):
        return tuple(sum(v) for v in zip(*(data.deg.column(i)
                                           for i in idx)))

    x = PolarizedToric(data, [(0,) * 4, cls(0, 1), cls(2, 3), cls(4, 5),
                              cls(3, 4, 5), cls(0, 1, 2)])
    sq = quiver_of_sections(x)

    def m(*idx):
        return tuple(int(i + 1 in idx) for i in range(6))

    assert {(t, h, lab) for t, h, lab in sq.quiver.arrows} == {
        (0, 1, m(1, 2)), (0, 1, m(4, 5)), (0, 2, m(3, 4)), (0, 2, m(1, 6)),
        (0, 3, m(5, 6)), (0, 3, m(2, 3)), (1, 4, m(6)), (1, 5, m(3)),
        (2, 4, m(2)), (2, 5, m(5)), (3, 4, m(4)), (3, 5, m(1))}
    assert len(sq.relations) == 6


def _g_beilinson_sections() -> None:
    sq = quiver_of_sections(_p2_variety(0, 1, 2))
    tails = [t for t, _, _ in sq.quiver.arrows]
    assert tails.count(0) == 3 and tails.count(1) == 3
    assert len(sq.quiver.arrows) == 6
    assert len(sq.relations) == 3
    assert image_equals_moduli(sq).verdict == "equal"


def _g_vgit_third() -> None:
    a = AbelianAction.cyclic(3, (1, 2))
    cc = chamber_decomposition(mckay_quiver(a).quiver)
    assert len(cc.chambers) == 6
    report = wall_report(a, Weight((-2, 1, 1)), Weight((-1, -1, 2)))
    assert report.walls_crossed == ((1,),)
    assert {w.support for w in report.kept} == {(0, 2)}
    assert {w.support for w in report.lost} == {(0, 1), (1, 5)}
    assert {w.support for w in report.gained} == {(1, 2), (1, 3)}
    assert report.fans_equal


def _g_fig8() -> None:
    search = fixed_stable_constellations(AbelianAction.cyclic(3, (1, 2)),
                                         Weight((-2, 1, 1)))
    assert search.complete and not search.wall_evidence
    assert {w.support for w in search} == {(0, 1), (0, 2), (1, 5)}


def _g_fig9() -> None:
    search = fixed_stable_constellations(AbelianAction.cyclic(3, (1, 2)),
                                         Weight((-1, -1, 2)))
    assert search.complete and not search.wall_evidence
    assert {w.support for w in search} == {(0, 2), (1, 2), (1, 3)}


def _g_census_seventh() -> None:
    ideal = relations_ideal(mckay_quiver(AbelianAction.cyclic(7, (1, 2))))
    result = component_census(ideal)
    assert result.complete
    assert len(result.components) == 8


def _g_sl3_flops() -> None:
    a = AbelianAction((2, 2), [(1, 1), (1, 0), (0, 1)])
    cc = chamber_decomposition(mckay_quiver(a).quiver)
    idx = cc.chamber_containing(Weight([-3, 1, 1, 1]))
    assert idx is not None
    facets = chamber_facets(cc, idx)
    assert {cc.walls[i] for i, _ in facets} == {(0, 1, 0, 0), (0, 0, 1, 0),
                                                (0, 0, 0, 1)}
    fan = coherent_component_fan(a, Weight((-3, 1, 1, 1)))
    assert len(fan.maximal_cones) == 4 and fan.is_smooth()
    e1, e2, e3 = (0, 2, -1), (2, 0, -1), (0, 0, 1)
    m1, m2, m3 = (1, 0, 0), (0, 1, 0), (1, 1, -1)
    expected = Fan(3, [Cone(3, [e1, m2, m3]), Cone(3, [e2, m1, m3]),
                       Cone(3, [e3, m1, m2]), Cone(3, [m1, m2, m3])])
    assert fan_isomorphism(fan, expected) is not None
    report = wall_report(a, Weight((-3, 1, 1, 1)), Weight((-4, -1, 2, 3)))
    assert report.walls_crossed == ((1,),)
    assert not report.fans_equal
    assert set(report.fan_from.rays()) == set(report.fan_to.rays())
    assert len(report.cones_removed) == 2 and len(report.cones_added) == 2
    assert report.fan_to.is_smooth()


def _g_klein_wall() -> None:
    a = AbelianAction((2, 2, 2), [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    assert len(fixed_g_clusters(a)) == 12
    theta_to = [3] * 8
    theta_to[3] = -1
    theta_to[0] = -sum(theta_to[1:])
    report = wall_report(a, _ghilb_weight(a), Weight(theta_to))
    assert report.walls_crossed == ((3,),)
    assert len(report.kept) == 4
    assert len(report.lost) == 8
    assert len(report.gained) == 4
    rays_from = set(report.fan_from.rays())
    rays_to = set(report.fan_to.rays())
    assert rays_to < rays_from and len(rays_from - rays_to) == 1
    assert len(report.fan_from.maximal_cones) == 12
    assert len(report.fan_to.maximal_cones) == 8
    assert report.fan_to.is_smooth()


def _golden_cases() -> list:
    return [
        ("ex:third11", _g_third11),
        ("eqn:twistedcubic", _g_twisted_cubic),
        ("ex:714", _g_714),
        ("sec:3.1-jung-hirzebruch", _g_jh_32),
        ("ex:wPn", _g_wpn),
        ("ex:dualseq", _g_dualseq),
        ("ex:cusp", _g_cusp),
        ("ex:F1fan", _g_f1_fan),
        ("exa:res1/3(1,2)", _g_res_cox),
        ("ex:quiver3vertices", _g_fig2_moduli),
        ("pro:smooth", _g_tautological),
        ("ex:generic(ii)", _g_generic_stability),
        ("exa:2pt", _g_two_point),
        ("ex:challenge", _g_challenge),
        ("ex:3foldflop", _g_flop_sections),
        ("ex:BeilinsonMcKay", _g_beilinson_mckay),
        ("exa:qos1/3(1,2)", _g_qos_third),
        ("exa:GHilb1/3(1,2)", _g_ghilb_third),
        ("fig:3", _g_fig3_fan),
        ("ex:fundiagramF1", _g_f1_sections_basis),
        ("eq:fundiagramF1", _g_f1_very_ample),
        ("exa:F1asmultilinear", _g_f1_multilinear),
        ("ex:F1four", _g_f1_four),
        ("fig:BlpqrP2tilting", _g_hexagon),
        ("ex:Beilinsoncqos", _g_beilinson_sections),
        ("exa:VGIT1/3(1,2)", _g_vgit_third),
        ("fig:8", _g_fig8),
        ("fig:9", _g_fig9),
        ("exa:reducible", _g_census_seventh),
        ("sec:7.4-three-flops", _g_sl3_flops),
        ("sec:7.5-(Z/2)^3", _g_klein_wall),
    ]


def _cmd_examples(args) -> _Result:
    rows = []
    failed = 0
    for label, fn in _golden_cases():
        try:
            fn()
            rows.append({"label": label, "status": "pass"})
        except Exception as e:  # keep going: the table must be complete
            failed += 1
            detail = str(e).splitlines()[0] if str(e) else type(e).__name__
            rows.append({"label": label, "status": "fail", "detail": detail})
    data = {"cases": rows, "passed": len(rows) - failed, "failed": failed}
    width = max(len(r["label"]) for r in rows)
    lines = []
    for r in rows:
        line = f"{r['label']:<{width}}  {r['status']}"
        if "detail" in r:
            line += f"  {r['detail']}"
        lines.append(line)
    lines.append(f"{len(rows)} cases: {data['passed']} passed, "
                 f"{failed} failed")
    return _Result(data, "\n".join(lines),
                   status=0 if failed == 0 else EXIT_COMPUTE)


# ---------------------------------------------------------------------------
# parser and entry point


def _add(sub, common, name: str, handler, help_text: str,
         **arguments) -> argparse.ArgumentParser:
    p = sub.add_parser(name, parents=[common], help=help_text,
                       description=help_text)
    for flag, kwargs in arguments.items():
        p.add_argument("--" + flag.replace("_", "-"), **kwargs)
    p.set_defaults(handler=handler)
    return p


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "dot"),
                        default="json",
                        help="output format; dot is available for quivers "
                             "and fans (default: json)")
    common.add_argument("--budget-ms", type=int, default=None, metavar="MS",
                        help="time budget for searches and censuses "
                             "(default: unlimited)")
    common.add_argument("--budget-items", type=int, default=None, metavar="N",
                        help="size budget: search nodes, census candidates "
                             "or cluster cap (defaults: unlimited, cap 64)")
    common.add_argument("--order", default=None, metavar="V1,V2,...",
                        help="monomial priority order for ideals, as 1-based "
                             "names (y2) or 0-based indices")
    common.add_argument("--seed", type=int, default=0,
                        help="reserved; every computation is exact and "
                             "deterministic")

    parser = argparse.ArgumentParser(
        prog="toriq", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    _add(sub, common, "quotient", _cmd_quotient,
         "invariant semigroup and toric ideal of a cyclic quotient",
         type={"required": True, "metavar": "R,W1,W2,...",
               "help": "cyclic group order and diagonal weights"})
    _add(sub, common, "jh", _cmd_jh,
         "Jung-Hirzebruch continued fraction of a cyclic surface quotient",
         type={"required": True, "metavar": "R,A"})
    normal = _add(sub, common, "normal-check", _cmd_normal_check,
                  "normality check with a monomial witness on failure")
    group = normal.add_mutually_exclusive_group(required=True)
    group.add_argument("--semigroup", metavar="FILE",
                       help="graded semigroup JSON")
    group.add_argument("--type", metavar="R,W1,W2,...",
                       help="use the invariant semigroup of a cyclic type")
    _add(sub, common, "proj", _cmd_proj,
         "torus-invariant affine charts of the Proj of a graded semigroup",
         semigroup={"required": True, "metavar": "FILE"},
         max_degree={"type": int, "default": 8, "metavar": "D",
                     "help": "degree cap for chart generators (default 8)"})
    _add(sub, common, "git", _cmd_git,
         "GIT quotient semigroup of a graded semigroup at a character",
         semigroup={"required": True, "metavar": "FILE"},
         chi={"required": True, "metavar": "C1,C2,..."},
         j_max={"type": int, "default": 6, "metavar": "J",
                "help": "largest Veronese level certified (default 6)"})
    _add(sub, common, "cox", _cmd_cox,
         "Cox data of a fan: rays, class group grading, irrelevant ideal",
         fan={"required": True, "metavar": "FILE"})
    _add(sub, common, "quiver-moduli", _cmd_quiver_moduli,
         "fan of the fine moduli space of theta-stable representations",
         quiver={"required": True, "metavar": "FILE"},
         theta={"required": True, "metavar": "T0,T1,..."})
    _add(sub, common, "chambers", _cmd_chambers,
         "GIT chamber decomposition of the weight space of a quiver",
         quiver={"required": True, "metavar": "FILE"})

    ideal = sub.add_parser("ideal", help="binomial ideal calculus")
    ideal_sub = ideal.add_subparsers(dest="subcommand", metavar="OP")
    _add(ideal_sub, common, "toric", _cmd_ideal_toric,
         "saturated toric ideal of an integer matrix",
         matrix={"metavar": "ROW;ROW;...",
                 "help": "inline rows, e.g. \"3,2,1,0;0,1,2,3\""},
         matrix_file={"metavar": "FILE", "help": "matrix JSON"})
    _add(ideal_sub, common, "saturate", _cmd_ideal_saturate,
         "saturate an ideal by a set of monomials",
         ideal={"required": True, "metavar": "FILE"},
         by={"required": True, "metavar": "E;E;...",
             "help": "monomial exponent vectors"})
    _add(ideal_sub, common, "intersect", _cmd_ideal_intersect,
         "intersection of two binomial ideals",
         ideal={"required": True, "metavar": "FILE"},
         other={"required": True, "metavar": "FILE"})
    _add(ideal_sub, common, "equal", _cmd_ideal_equal,
         "decide equality of two binomial ideals",
         ideal={"required": True, "metavar": "FILE"},
         other={"required": True, "metavar": "FILE"})
    _add(ideal_sub, common, "census", _cmd_ideal_census,
         "minimal cellular components of a binomial ideal",
         ideal={"required": True, "metavar": "FILE"})

    mckay = sub.add_parser("mckay", help="McKay quivers and G-Hilbert fans")
    mckay_sub = mckay.add_subparsers(dest="subcommand", metavar="OP")
    type_help = {"required": True, "metavar": "SPEC",
                 "help": "cyclic \"r,w1,w2,...\" or general "
                         "\"f1,f2;w1;w2;...\" with one weight per variable"}
    _add(mckay_sub, common, "quiver", _cmd_mckay_quiver,
         "McKay quiver with commutation relations", type=type_help)
    _add(mckay_sub, common, "clusters", _cmd_mckay_clusters,
         "torus-fixed G-clusters as monomial staircases", type=type_help)
    _add(mckay_sub, common, "constellations", _cmd_mckay_constellations,
         "torus-fixed theta-stable G-constellations", type=type_help,
         theta={"required": True, "metavar": "T0,T1,..."})
    _add(mckay_sub, common, "ghilb", _cmd_mckay_ghilb,
         "fan of the coherent component of the moduli space", type=type_help,
         theta={"default": None, "metavar": "T0,T1,...",
                "help": "weight; defaults to (1-|G|, 1, ..., 1)"})
    walls = _add(mckay_sub, common, "walls", _cmd_mckay_walls,
                 "wall crossing report between two weights", type=type_help)
    walls.add_argument("--from", dest="theta_from", required=True,
                       metavar="T0,T1,...")
    walls.add_argument("--to", dest="theta_to", required=True,
                       metavar="T0,T1,...")

    qsec = sub.add_parser("qsec", help="quivers of sections on a toric base")
    qsec_sub = qsec.add_subparsers(dest="subcommand", metavar="OP")
    fan_arg = {"required": True, "metavar": "FILE", "help": "fan JSON"}
    bundles_arg = {"required": True, "metavar": "B;B;...",
                   "help": "bundle classes; \"0\" is the trivial class"}
    bound_arg = {"type": int, "default": None, "metavar": "L",
                 "dest": "path_bound",
                 "help": "relation path length bound (default 2x vertices)"}
    _add(qsec_sub, common, "build", _cmd_qsec_build,
         "complete bound quiver of sections of a bundle sequence",
         fan=fan_arg, bundles=bundles_arg, path_bound=bound_arg)
    _add(qsec_sub, common, "series-fan", _cmd_qsec_series_fan,
         "fan of the multilinear series of the quiver of sections",
         fan=fan_arg, bundles=bundles_arg,
         theta={"required": True, "metavar": "T0,T1,..."},
         path_bound=bound_arg)
    _add(qsec_sub, common, "image-test", _cmd_qsec_image_test,
         "compare the image of the toric base with its multilinear series",
         fan=fan_arg, bundles=bundles_arg, path_bound=bound_arg)
    _add(qsec_sub, common, "mult-check", _cmd_qsec_mult_check,
         "surjectivity of the multiplication map of a list of classes",
         fan=fan_arg, bundles=bundles_arg,
         classes={"required": True, "metavar": "C;C;..."})

    _add(sub, common, "examples", _cmd_examples,
         "run the golden example suite and print a pass/fail table")
    return parser


def _failure_status(message: str) -> int:
    if "budget" in message or "exceeds the cap" in message:
        return EXIT_BUDGET
    return EXIT_COMPUTE


def _merge_negative_vectors(argv: list) -> list:
    """Join "--flag -2,1,1" so argparse does not read the value as a flag."""
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if (token.startswith("--") and "=" not in token and i + 1 < len(argv)
                and re.fullmatch(r"-\d[\d,;-]*", argv[i + 1])):
            out.append(token + "=" + argv[i + 1])
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_merge_negative_vectors(argv))
    except SystemExit as e:
        return 0 if not e.code else EXIT_INPUT
    if not hasattr(args, "handler"):
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    try:
        result = args.handler(args)
        rendered = result.render(args.format)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ArithmeticError, KeyError) as e:
        message = str(e) or type(e).__name__
        print(f"error: {message}", file=sys.stderr)
        return _failure_status(message)
    print(rendered)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
