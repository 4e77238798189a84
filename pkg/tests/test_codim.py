"""Codimension engine, identity checking, and cocharacters.

The oracle here evaluates monomials densely from the definition, with
no base-row sharing, no relabeling, and no sparse elimination, then
takes the rank with the dense matrix code.  Engine values are compared
against it at small n and frozen as goldens at the sizes the oracle
cannot reach.
"""
from fractions import Fraction
from itertools import permutations, product

import pytest

from codimlab.codim import (
    CodimReport,
    cocharacter,
    codimension,
    colength,
    empirical_exponent,
    evaluation_vector,
    is_identity,
    nth_root_display,
    spanning_cost,
    _permute_columns,
)
from codimlab.config import Refusal, RunConfig
from codimlab.fixtures import Workbench, abelian, build_fixture
from codimlab.free_polys import LeftNormedMonomial, parse
from codimlab.linalg import MatrixExact
from codimlab.partitions import hook_dim, mn_character, partitions
from codimlab.symmetry import FiniteGroup


def oracle_row(bench, flavor, perm, gelts):
    """Dense evaluation vector straight from the definition."""
    L = bench.algebra
    n = len(perm)
    row = []
    for sub in product(range(L.dim), repeat=n):
        value = None
        dead = False
        for t in range(n):
            j = sub[perm[t] - 1]
            if flavor == "graded":
                if bench.grading.labels[j] != gelts[t]:
                    dead = True
                    break
                vec = L.basis_vector(j)
            elif flavor == "g_action":
                vec = bench.action.apply(gelts[t], L.basis_vector(j))
            else:
                vec = L.basis_vector(j)
            value = vec if value is None else L.bracket(value, vec)
        if dead:
            row.extend(L.zero_vector())
        else:
            row.extend(value)
    return row


def oracle_codim(bench, flavor, n):
    gorder = bench.group.order if flavor != "ordinary" else 1
    rows = []
    for perm in permutations(range(1, n + 1)):
        for gelts in product(range(gorder), repeat=n):
            rows.append(oracle_row(bench, flavor, perm, gelts))
    return MatrixExact.from_rows(bench.algebra.field, rows).rank()


def trivial_bench(name, algebra):
    return Workbench(name, algebra, FiniteGroup.trivial())


# -- evaluation vectors ----------------------------------------------


def test_evaluation_vector_identity_map():
    bench = build_fixture("sl2_trivial")
    row = evaluation_vector(bench, "ordinary", LeftNormedMonomial((1,), (0,)))
    dim = bench.algebra.dim
    one = bench.algebra.field.one()
    assert row == {j * dim + j: one for j in range(dim)}


def test_evaluation_vector_graded_zero():
    # both slots in the diagonal component: bracket of diagonals is zero
    bench = build_fixture("gl2_z2_graded")
    row = evaluation_vector(bench, "graded",
                            LeftNormedMonomial((1, 2), (0, 0)))
    assert row == {}


def test_evaluation_vector_abelian_zero():
    bench = trivial_bench("abelian3", abelian(3))
    row = evaluation_vector(bench, "ordinary",
                            LeftNormedMonomial((1, 2), (0, 0)))
    assert row == {}


def test_evaluation_vector_matches_oracle():
    cases = [
        ("sl2_trivial", "ordinary", (2, 1, 3), (0, 0, 0)),
        ("gl2_z2_graded", "graded", (2, 1), (0, 1)),
        ("gl2_z2_action", "g_action", (1, 3, 2), (1, 0, 1)),
        ("metabelian_m2_cyclic", "g_action", (2, 1), (1, 1)),
    ]
    for name, flavor, perm, gelts in cases:
        bench = build_fixture(name)
        dim = bench.algebra.dim
        sparse = evaluation_vector(
            bench, flavor, LeftNormedMonomial(perm, gelts))
        dense = oracle_row(bench, flavor, perm, gelts)
        rebuilt = list(bench.algebra.zero_vector()) * (dim ** len(perm))
        for key, c in sparse.items():
            rebuilt[key] = c
        assert rebuilt == dense, (name, perm, gelts)


# -- codimension values ----------------------------------------------


ORACLE_POINTS = [
    ("sl2_trivial", "ordinary", 4),
    ("heisenberg", "ordinary", 4),
    ("metabelian_m1_trivial_alias", "ordinary", 4),
    ("gl2_z2_graded", "graded", 3),
    ("gl2_z2_action", "g_action", 3),
    ("metabelian_m2_cyclic", "g_action", 3),
    ("metabelian_graded_m2", "graded", 3),
    ("metabelian_m3_cyclic", "g_action", 3),
    ("sl2xsl2_swap", "g_action", 3),
]


@pytest.mark.parametrize("name,flavor,nmax", ORACLE_POINTS)
def test_codimension_matches_dense_oracle(name, flavor, nmax):
    if name == "metabelian_m1_trivial_alias":
        bench = build_fixture("metabelian_m1_cyclic")
    else:
        bench = build_fixture(name)
    for n in range(1, nmax + 1):
        assert codimension(bench, flavor, n) == \
            oracle_codim(bench, flavor, n), (name, flavor, n)


def test_sl2_ordinary_goldens():
    bench = build_fixture("sl2_trivial")
    values = [codimension(bench, "ordinary", n) for n in range(1, 6)]
    assert values == [1, 1, 2, 6, 14]


def test_gl2_duality_goldens():
    graded = build_fixture("gl2_z2_graded")
    acted = build_fixture("gl2_z2_action")
    gr = [codimension(graded, "graded", n) for n in range(1, 5)]
    ga = [codimension(acted, "g_action", n) for n in range(1, 5)]
    assert gr == [2, 3, 8, 25]
    assert ga == gr


def test_metabelian_duality_goldens():
    graded = build_fixture("metabelian_graded_m2")
    acted = build_fixture("metabelian_m2_cyclic")
    gr = [codimension(graded, "graded", n) for n in range(1, 5)]
    ga = [codimension(acted, "g_action", n) for n in range(1, 5)]
    assert gr == [2, 4, 16, 48]
    assert ga == gr


def test_metabelian_ordinary_is_n_minus_one():
    for m in (1, 2, 3):
        bench = build_fixture(f"metabelian_m{m}_cyclic")
        for n in range(2, 7):
            assert codimension(bench, "ordinary", n) == n - 1, (m, n)


def test_nilpotent_codimensions_vanish():
    bench = build_fixture("heisenberg")
    assert codimension(bench, "ordinary", 2) == 1
    for n in (3, 4, 5):
        assert codimension(bench, "ordinary", n) == 0


def test_abelian_codimensions():
    bench = trivial_bench("abelian2", abelian(2))
    assert codimension(bench, "ordinary", 1) == 1
    assert codimension(bench, "ordinary", 2) == 0


def test_sandwich_bounds_small():
    for name in ("gl2_z2_action", "metabelian_m2_cyclic",
                 "sl2xsl2_swap", "metabelian_m3_cyclic"):
        bench = build_fixture(name)
        gorder = bench.group.order
        for n in range(1, 4):
            plain = codimension(bench, "ordinary", n)
            acted = codimension(bench, "g_action", n)
            assert plain <= acted <= gorder ** n * plain, (name, n)


def test_dimension_bound():
    for name in ("sl2_trivial", "gl2_z2_graded", "gl2_z2_action",
                 "heisenberg", "metabelian_graded_m2"):
        bench = build_fixture(name)
        flavor = ("graded" if bench.has_grading
                  else "g_action" if bench.has_action else "ordinary")
        dim = bench.algebra.dim
        for n in range(1, 4):
            assert codimension(bench, flavor, n) <= dim ** (n + 1)


def test_verify_crosscheck_path():
    bench = build_fixture("sl2_trivial")
    config = RunConfig(verify=True)
    assert codimension(bench, "ordinary", 4, config) == 6


# -- budget ----------------------------------------------------------


def test_budget_refusal():
    bench = build_fixture("sl2_trivial")
    with pytest.raises(Refusal) as exc:
        codimension(bench, "ordinary", 6, RunConfig(budget=1000))
    refusal = exc.value
    assert refusal.reason == "budget"
    assert refusal.details["cost"] == spanning_cost(3, 6, 1)
    assert refusal.details["max_feasible_n"] == 3
    assert spanning_cost(3, 3, 1) <= 1000 < spanning_cost(3, 4, 1)
    payload = refusal.to_dict()
    assert payload["refused"] and payload["reason"] == "budget"


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("CODIMLAB_BUDGET", "123456")
    assert RunConfig().budget == 123456
    monkeypatch.setenv("CODIMLAB_BUDGET", "0")
    with pytest.raises(ValueError):
        RunConfig()


# -- identity checking -----------------------------------------------


def test_is_identity_action_example():
    bench = build_fixture("gl2_z2_action")
    poly = parse("[x1 + x1^psi, x2 + x2^psi]", bench.group,
                 bench.algebra.field)
    report = is_identity(bench, "g_action", poly)
    assert report.is_identity and report.witness is None


def test_is_identity_graded_example():
    bench = build_fixture("gl2_z2_graded")
    poly = parse("[x1^e, x2^e]", bench.group, bench.algebra.field)
    assert is_identity(bench, "graded", poly).is_identity
    odd = parse("[x1^t, x2^t]", bench.group, bench.algebra.field)
    report = is_identity(bench, "graded", odd)
    assert not report.is_identity
    assert set(report.witness["substitution"]) == {"x1", "x2"}


def test_is_identity_ordinary_witness():
    bench = build_fixture("sl2_trivial")
    poly = parse("[x1, x2]")
    report = is_identity(bench, "ordinary", poly)
    assert not report.is_identity
    assert report.witness["substitution"].keys() == {"x1", "x2"}


def test_is_identity_rejects_nonmultilinear():
    bench = build_fixture("sl2_trivial")
    with pytest.raises(ValueError):
        is_identity(bench, "ordinary", parse("[x1, x2, x1]"))
    with pytest.raises(ValueError):
        is_identity(bench, "ordinary", parse("[x1, x2] + x3"))


# -- reports ---------------------------------------------------------


def test_nth_root_display():
    assert nth_root_display(8, 3) == 2
    assert nth_root_display(0, 4) == 0
    assert nth_root_display(1, 7) == 1
    assert nth_root_display(5, 2) == Fraction(2236, 1000)
    assert nth_root_display(14, 5) == Fraction(1695, 1000)


def test_codim_report_formats():
    bench = build_fixture("sl2_trivial")
    report = empirical_exponent(bench, "ordinary", 3)
    assert isinstance(report, CodimReport)
    csv = report.to_csv()
    lines = csv.strip().split("\n")
    assert lines[0] == "n,flavor,c_n,root_num,root_den"
    assert lines[1] == "1,ordinary,1,1,1"
    assert lines[3] == "3,ordinary,2,1259,1000"
    again = empirical_exponent(bench, "ordinary", 3)
    assert again.to_json() == report.to_json()


def test_empirical_exponent_budget_precheck():
    bench = build_fixture("sl2_trivial")
    with pytest.raises(Refusal):
        empirical_exponent(bench, "ordinary", 8, RunConfig(budget=10 ** 6))


# -- cocharacters ----------------------------------------------------


def cycle_type_of(perm):
    n = len(perm)
    seen = [False] * n
    lengths = []
    for i in range(n):
        if seen[i]:
            continue
        j, count = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j] - 1
            count += 1
        lengths.append(count)
    return tuple(sorted(lengths, reverse=True))


def oracle_multiplicity(bench, flavor, n, lam):
    """m(lam) from the isotypic projector: the rank of
    { sum_sigma chi(sigma) (sigma . w) : w in W } is m * hook_dim."""
    from codimlab.codim import _row_space

    ev, space, _ = _row_space(bench, flavor, n)
    dim = ev.dim
    field = ev.field
    rational = field.order == 1
    basis_rows = [space.pivots[k] for k in space.order]
    if rational:
        basis_rows = [{k: Fraction(v) for k, v in row.items()}
                      for row in basis_rows]
    projected = []
    for row in basis_rows:
        acc = {}
        for sigma in permutations(range(1, n + 1)):
            chi = mn_character(lam, cycle_type_of(sigma))
            if not chi:
                continue
            for key, c in _permute_columns(row, sigma, dim, n).items():
                cur = acc.get(key, 0 if rational else field.zero())
                val = cur + c * chi
                if val:
                    acc[key] = val
                else:
                    acc.pop(key, None)
        projected.append(acc)
    if rational:
        rows = [[r.get(k, Fraction(0)) for k in sorted(
            {kk for rr in projected for kk in rr})] for r in projected]
    else:
        rows = [[r.get(k, field.zero()) for k in sorted(
            {kk for rr in projected for kk in rr})] for r in projected]
    if not rows or not rows[0]:
        return 0
    rank = MatrixExact.from_rows(field, [
        [field.from_rational(v) if rational else v for v in row]
        for row in rows]).rank()
    assert rank % hook_dim(lam) == 0
    return rank // hook_dim(lam)


def test_cocharacter_sl2_degree3():
    bench = build_fixture("sl2_trivial")
    report = cocharacter(bench, "ordinary", 3)
    assert report.multiplicities == {(2, 1): 1}
    assert report.codim == 2
    assert report.colength == 1


def test_cocharacter_abelian():
    bench = trivial_bench("abelian2", abelian(2))
    assert cocharacter(bench, "ordinary", 2).multiplicities == {}
    report = cocharacter(bench, "ordinary", 1)
    assert report.multiplicities == {(1,): 1}
    assert colength(bench, "ordinary", 1) == 1


def test_cocharacter_row_limit():
    # multiplicities vanish once the diagram is taller than dim L
    for name, flavor in [("sl2_trivial", "ordinary"),
                         ("gl2_z2_action", "g_action"),
                         ("metabelian_m1_cyclic", "ordinary")]:
        bench = build_fixture(name)
        dim = bench.algebra.dim
        for n in range(1, 5):
            report = cocharacter(bench, flavor, n)
            for lam in report.multiplicities:
                assert len(lam) <= dim, (name, n, lam)


def test_cocharacter_bookkeeping():
    for name, flavor in [("sl2_trivial", "ordinary"),
                         ("gl2_z2_graded", "graded"),
                         ("gl2_z2_action", "g_action"),
                         ("metabelian_m2_cyclic", "g_action"),
                         ("metabelian_m3_cyclic", "g_action"),
                         ("heisenberg", "ordinary")]:
        bench = build_fixture(name)
        for n in range(1, 4):
            report = cocharacter(bench, flavor, n)
            total = sum(m * hook_dim(lam)
                        for lam, m in report.multiplicities.items())
            assert total == report.codim
            assert report.codim == codimension(bench, flavor, n)
            assert all(m > 0 for m in report.multiplicities.values())


def test_cocharacter_against_isotypic_oracle():
    cases = [("sl2_trivial", "ordinary", 3),
             ("sl2_trivial", "ordinary", 4),
             ("metabelian_m1_cyclic", "ordinary", 3),
             ("gl2_z2_action", "g_action", 2),
             ("metabelian_m3_cyclic", "g_action", 2)]
    for name, flavor, n in cases:
        bench = build_fixture(name)
        report = cocharacter(bench, flavor, n)
        for lam in partitions(n):
            expected = oracle_multiplicity(bench, flavor, n, lam)
            assert report.multiplicities.get(lam, 0) == expected, \
                (name, flavor, n, lam)


def test_cocharacter_metabelian_golden():
    bench = build_fixture("metabelian_m1_cyclic")
    report = cocharacter(bench, "ordinary", 3)
    assert report.codim == 2
    assert sum(m * hook_dim(lam)
               for lam, m in report.multiplicities.items()) == 2


def test_cocharacter_report_json_deterministic():
    bench = build_fixture("gl2_z2_action")
    a = cocharacter(bench, "g_action", 2).to_json()
    b = cocharacter(bench, "g_action", 2).to_json()
    assert a == b
    assert '"codim_check"' in a


def test_colength_one_at_degree_one():
    for name in ("sl2_trivial", "heisenberg"):
        bench = build_fixture(name)
        assert colength(bench, "ordinary", 1) == 1
