from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toriq.latcore import (
    LatticeMap,
    cokernel_presentation,
    hermite_normal_form,
    kernel_basis,
    rank,
    smith_normal_form,
    solve_integral,
    solve_rational,
)


def det(m: LatticeMap) -> Fraction:
    n = m.rows
    a = [[Fraction(x) for x in row] for row in m.entries]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-9, 9), min_size=c, max_size=c),
            min_size=r, max_size=r).map(LatticeMap)))


def test_hnf_pinned_example():
    h, u = hermite_normal_form(LatticeMap([[2, 4], [1, 1]]))
    assert h.entries == ((1, 1), (0, 2))
    assert (u @ LatticeMap([[2, 4], [1, 1]])) == h


def test_hnf_identity_and_zero():
    h, u = hermite_normal_form(LatticeMap.identity(3))
    assert h == LatticeMap.identity(3)
    assert u == LatticeMap.identity(3)
    z = LatticeMap.zero(2, 3)
    h, u = hermite_normal_form(z)
    assert h == z
    assert u == LatticeMap.identity(2)


@settings(max_examples=200)
@given(small_matrices)
def test_hnf_properties(a):
    h, u = hermite_normal_form(a)
    assert u @ a == h
    assert abs(det(u)) == 1
    # pivots positive, entries above pivots reduced into [0, pivot)
    for i, row in enumerate(h.entries):
        piv = next((j for j in range(h.cols) if row[j]), None)
        if piv is None:
            continue
        assert row[piv] > 0
        for k in range(i):
            assert 0 <= h.entries[k][piv] < row[piv]
    # idempotent
    h2, _ = hermite_normal_form(h)
    assert h2 == h


@settings(max_examples=200)
@given(small_matrices)
def test_hnf_matches_sympy_row_space(a):
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import hermite_normal_form as sympy_hnf

    h, _ = hermite_normal_form(a)
    ours = [list(r) for r in h.entries if any(r)]
    if not any(any(r) for r in a.entries):
        assert ours == []
        return
    # sympy's HNF is column-style: columns of hnf(a^T) span our row lattice
    theirs = sympy_hnf(sympy.Matrix([list(r) for r in a.entries]).T).T.tolist()
    both, _ = hermite_normal_form(LatticeMap(ours + theirs))
    assert [list(r) for r in both.entries if any(r)] == ours


def test_snf_pinned_examples():
    assert list(smith_normal_form(LatticeMap([[2, 0], [0, 3]])).d) == [1, 6]
    # gcd of entries is 1; gcd of the 2x2 minors (4,12,16,8,12,4) is 4
    assert list(smith_normal_form(LatticeMap([[4, 3, 1, 0], [0, 1, 3, 4]])).d) == [1, 4]
    assert list(smith_normal_form(LatticeMap.identity(3)).d) == [1, 1, 1]


@settings(max_examples=200)
@given(small_matrices)
def test_snf_properties(a):
    s = smith_normal_form(a)
    assert abs(det(s.left)) == 1
    assert abs(det(s.right)) == 1
    prod = s.left @ a @ s.right
    for i in range(prod.rows):
        for j in range(prod.cols):
            want = s.d[i] if i == j and i < len(s.d) else 0
            assert prod.entries[i][j] == want
    nonzero = [x for x in s.d if x]
    assert all(x > 0 for x in nonzero)
    for x, y in zip(nonzero, nonzero[1:]):
        assert y % x == 0
    # zeros trail
    assert list(s.d) == nonzero + [0] * (len(s.d) - len(nonzero))


@settings(max_examples=100)
@given(small_matrices)
def test_snf_matches_sympy(a):
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    s = smith_normal_form(a)
    m = sympy.Matrix([list(r) for r in a.entries])
    theirs = sympy_snf(m)
    diag = [abs(theirs[i, i]) for i in range(min(theirs.rows, theirs.cols))]
    assert sorted(x for x in s.d if x) == sorted(x for x in diag if x)


def test_kernel_pinned_examples():
    inc = LatticeMap([[-1, 0, -1, -1], [1, -1, 1, 0], [0, 1, 0, 1]])
    k = kernel_basis(inc)
    assert k.cols == 2
    assert (inc @ k) == LatticeMap.zero(3, 2)
    assert kernel_basis(LatticeMap.identity(4)).cols == 0
    assert kernel_basis(LatticeMap.zero(1, 3)) == LatticeMap.identity(3)


@settings(max_examples=150)
@given(small_matrices)
def test_kernel_properties(a):
    k = kernel_basis(a)
    assert a @ k == LatticeMap.zero(a.rows, k.cols)
    assert rank(k) == k.cols
    # saturation: every small integer kernel vector lies in the Z-span
    if a.cols <= 3:
        from itertools import product

        for v in product(range(-3, 4), repeat=a.cols):
            if any(v) and all(x == 0 for x in a.apply(v)):
                assert solve_integral(k, v) is not None


def test_cokernel_pinned_examples():
    div = LatticeMap.from_columns([(1, 0, -1, 0), (0, 1, 1, -1)])
    free, torsion, proj = cokernel_presentation(div)
    assert free == 2
    assert torsion == []
    want, _ = hermite_normal_form(LatticeMap([[1, -1, 1, 0], [0, 1, 0, 1]]))
    got, _ = hermite_normal_form(proj)
    assert got == want

    free, torsion, _ = cokernel_presentation(LatticeMap([[2]]))
    assert free == 0
    assert torsion == [2]


@settings(max_examples=150)
@given(small_matrices)
def test_cokernel_properties(a):
    free, torsion, proj = cokernel_presentation(a)
    assert all(t > 1 for t in torsion)
    for x, y in zip(torsion, torsion[1:]):
        assert y % x == 0
    comp = proj @ a
    for i in range(comp.rows):
        mod = 0 if i < free else torsion[i - free]
        for x in comp.entries[i]:
            assert x == 0 if mod == 0 else x % mod == 0
    # free rank + rank(a) = rows(a); torsion = nontrivial invariant factors
    assert free == a.rows - rank(a)
    s = smith_normal_form(a)
    assert torsion == [x for x in s.d if x > 1]


def test_solve_integral_pinned_examples():
    a = LatticeMap([[1, 1]])
    x = solve_integral(a, [3])
    assert x is not None and a.apply(x) == (3,)
    assert solve_integral(LatticeMap([[2]]), [1]) is None


def test_solve_integral_deterministic():
    a = LatticeMap([[1, 1]])
    assert solve_integral(a, [3]) == solve_integral(a, [3])


@settings(max_examples=150)
@given(small_matrices, st.data())
def test_solve_integral_roundtrip(a, data):
    x = data.draw(st.lists(st.integers(-5, 5), min_size=a.cols, max_size=a.cols))
    b = a.apply(x)
    got = solve_integral(a, b)
    assert got is not None
    assert a.apply(got) == tuple(b)


@settings(max_examples=100)
@given(small_matrices, st.data())
def test_solve_integral_none_means_none(a, data):
    if a.cols > 3:
        return
    b = data.draw(st.lists(st.integers(-4, 4), min_size=a.rows, max_size=a.rows))
    got = solve_integral(a, b)
    if got is not None:
        assert a.apply(got) == tuple(b)
    else:
        from itertools import product

        for v in product(range(-6, 7), repeat=a.cols):
            assert a.apply(v) != tuple(b)


def test_solve_rational():
    a = LatticeMap([[2, 0], [0, 3]])
    x = solve_rational(a, [Fraction(1), Fraction(1)])
    assert x == [Fraction(1, 2), Fraction(1, 3)]
    assert solve_rational(LatticeMap([[1], [1]]), [Fraction(0), Fraction(1)]) is None


def test_json_roundtrip():
    a = LatticeMap([[1, 2, 3], [4, 5, 6]])
    assert LatticeMap.from_json(a.to_json()) == a
    assert '"rows": 2' in a.to_json()
