from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from codimlab.linalg import (
    MatrixExact,
    Subspace,
    bareiss_rank_int,
    modular_rank,
)
from codimlab.scalar import FieldSpec, RATIONALS


def qmat(rows):
    f = RATIONALS
    return MatrixExact(f, [[f.from_rational(x) for x in r] for r in rows])


def qvecs(rows):
    f = RATIONALS
    return [[f.from_rational(x) for x in r] for r in rows]


def test_rank_known():
    assert qmat([[1, 2], [2, 4]]).rank() == 1
    assert qmat([[1, 2], [3, 4]]).rank() == 2
    assert qmat([[0, 0], [0, 0]]).rank() == 0
    m = qmat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert m.rank() == 2


def test_rank_with_fractions():
    m = qmat([[Fraction(1, 2), Fraction(1, 3)],
              [Fraction(3, 2), 1]])
    assert m.rank() == 1


def test_rref_canonical():
    m = qmat([[2, 4, 0], [1, 2, 1]])
    r, pivots = m.rref()
    assert pivots == (0, 2)
    assert r == qmat([[1, 2, 0], [0, 0, 1]])


def test_kernel_and_solve():
    m = qmat([[1, 2, 3], [4, 5, 6]])
    ker = m.kernel()
    assert ker.dim == 1
    v = ker.basis[0]
    assert all(not x for x in m.apply(v))
    sol = m.solve([RATIONALS.from_rational(6),
                   RATIONALS.from_rational(15)])
    assert sol is not None
    assert m.apply(sol) == (RATIONALS.from_rational(6),
                            RATIONALS.from_rational(15))
    none = qmat([[1, 1], [1, 1]]).solve(
        [RATIONALS.from_rational(0), RATIONALS.from_rational(1)])
    assert none is None


def test_solve_over_cyclotomic():
    # 2x2 system with zeta_3 entries, checked by substitution
    f = FieldSpec(3)
    z = f.root_of_unity()
    m = MatrixExact(f, [[f.one(), z], [z, f.one()]])
    rhs = (f.one() + z, z + z * z)
    sol = m.solve(rhs)
    assert sol is not None
    assert m.apply(sol) == rhs


def test_det():
    assert qmat([[1, 2], [3, 4]]).det() == RATIONALS.from_rational(-2)
    assert qmat([[1, 2], [2, 4]]).det() == RATIONALS.from_rational(0)
    f = FieldSpec(4)
    i = f.root_of_unity()
    m = MatrixExact(f, [[i, f.zero()], [f.zero(), i]])
    assert m.det() == f.from_rational(-1)


def test_matmul_identity_transpose():
    m = qmat([[1, 2], [3, 4], [5, 6]])
    i2 = MatrixExact.identity(RATIONALS, 2)
    assert m @ i2 == m
    assert m.transpose().transpose() == m
    assert (m @ m.transpose()).trace() == RATIONALS.from_rational(91)


def test_subspace_intersection_example():
    # span{(1,0,1),(0,1,1)} meet span{(1,1,2),(1,0,0)} contains (1,1,2)
    a = Subspace(RATIONALS, 3, qvecs([[1, 0, 1], [0, 1, 1]]))
    b = Subspace(RATIONALS, 3, qvecs([[1, 1, 2], [1, 0, 0]]))
    cap = a.intersect(b)
    assert cap.dim == 1
    assert cap.contains_vector(
        [RATIONALS.from_rational(x) for x in (1, 1, 2)])


def test_subspace_value_semantics():
    a = Subspace(RATIONALS, 2, qvecs([[1, 1], [2, 2]]))
    b = Subspace(RATIONALS, 2, qvecs([[3, 3]]))
    assert a == b
    assert a.dim == 1
    assert hash(a) == hash(b)


def test_subspace_coordinates():
    s = Subspace(RATIONALS, 3, qvecs([[1, 0, 1], [0, 1, 1]]))
    v = [RATIONALS.from_rational(x) for x in (2, 3, 5)]
    coords = s.coordinates(v)
    assert coords == (RATIONALS.from_rational(2),
                      RATIONALS.from_rational(3))
    out = [RATIONALS.from_rational(x) for x in (1, 0, 0)]
    assert s.coordinates(out) is None


def test_bareiss_matches_plain_gauss_on_random():
    import random
    rng = random.Random(7)
    for _ in range(40):
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        m = [[rng.randrange(-4, 5) for _ in range(cols)]
             for _ in range(rows)]
        expect = qmat(m).rank()
        got = bareiss_rank_int([list(r) for r in m])
        assert got == expect


def test_modular_rank_agrees():
    rows = [[2, 4, 6], [1, 2, 3], [0, 1, 7]]
    assert modular_rank(rows, (1 << 29) - 3) == 2
    assert bareiss_rank_int([list(r) for r in rows]) == 2


@st.composite
def small_subspaces(draw):
    vecs = draw(st.lists(
        st.lists(st.integers(-3, 3), min_size=4, max_size=4),
        min_size=0, max_size=3))
    return Subspace(RATIONALS, 4, qvecs(vecs))


@settings(max_examples=60, deadline=None)
@given(small_subspaces(), small_subspaces())
def test_dimension_formula(a, b):
    # dim(A) + dim(B) = dim(A + B) + dim(A meet B)
    assert a.dim + b.dim == a.add(b).dim + a.intersect(b).dim


@settings(max_examples=60, deadline=None)
@given(small_subspaces(), small_subspaces())
def test_intersection_contained_in_both(a, b):
    cap = a.intersect(b)
    assert a.contains(cap) and b.contains(cap)
    assert a.add(b).contains(a)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
                min_size=1, max_size=5))
def test_kernel_dim_plus_rank(rows):
    m = qmat(rows)
    assert m.rank() + m.kernel().dim == m.cols
