"""Codimension sequences, cocharacters, and identity checking.

Multilinear polynomials are treated as n-linear maps into the algebra:
the evaluation vector of a monomial records, for every tuple of basis
substitutions and every output coordinate, one Scalar.  A codimension
is the rank of the span of these vectors over the full spanning set of
decorated left-normed monomials, which avoids quotient constructions
entirely.

Rows are generated from one "base row" per decoration tuple (the
identity permutation) and then relabeled per permutation, since
permuting variables only permutes substitution tuples.  Rank is taken
by sparse elimination: fraction-free with gcd stripping over the
rationals, normalized pivots over cyclotomic fields.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial, gcd, lcm

from .config import Refusal, RunConfig
from .fixtures import Workbench
from .free_polys import LeftNormedMonomial, tree_variables
from .linalg import modular_rank
from .partitions import (cycle_type_class_size, hook_dim, mn_character,
                         partitions, perm_of_cycle_type)

FLAVORS = ("ordinary", "graded", "g_action")

# primes for the optional rank cross-check, fixed for reproducibility
_CHECK_PRIMES = (4611686018427387847, 4611686018427387817)


def spanning_cost(dim: int, n: int, group_order: int) -> int:
    """Scalar-multiplication estimate used by the budget guard."""
    return dim ** (n + 1) * factorial(n) * group_order ** n


def _decoration_order(bench: Workbench, flavor: str) -> int:
    return 1 if flavor == "ordinary" else bench.group.order


def check_budget(bench: Workbench, flavor: str, n: int,
                 config: RunConfig) -> None:
    gorder = _decoration_order(bench, flavor)
    cost = spanning_cost(bench.algebra.dim, n, gorder)
    if cost <= config.budget:
        return
    feasible = 0
    for m in range(1, 65):
        if spanning_cost(bench.algebra.dim, m, gorder) <= config.budget:
            feasible = m
        else:
            break
    raise Refusal(
        "budget",
        f"codimension at n={n} needs ~{cost} scalar multiplications, "
        f"budget is {config.budget}",
        cost=cost, budget=config.budget, n=n, flavor=flavor,
        max_feasible_n=feasible)


class _Evaluator:
    """Produces evaluation rows for one workbench and flavor.

    A row is a dict from flat column keys to Scalars.  The flat key of
    (substitution tuple i_1..i_n, output coordinate k) is the base-dim
    integer with digits i_1, ..., i_n, k.
    """

    def __init__(self, bench: Workbench, flavor: str):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        if flavor == "graded" and bench.grading is None:
            raise ValueError(f"{bench.name} carries no grading")
        if flavor == "g_action" and bench.action is None:
            raise ValueError(f"{bench.name} carries no group action")
        self.bench = bench
        self.flavor = flavor
        self.algebra = bench.algebra
        self.field = bench.algebra.field
        self.dim = bench.algebra.dim
        self.group_order = _decoration_order(bench, flavor)
        self._options = self._slot_options()

    def _slot_options(self):
        """Per decoration g: the list of (substituted index, leaf value)
        pairs a slot decorated with g can take."""
        L = self.algebra
        one = self.field.one()
        if self.flavor == "ordinary":
            return {0: [(j, {j: one}) for j in range(L.dim)]}
        if self.flavor == "graded":
            grading = self.bench.grading
            return {g: [(j, {j: one}) for j in grading.component_indices(g)]
                    for g in range(self.group_order)}
        action = self.bench.action
        options = {}
        for g in range(self.group_order):
            mat = action.matrix(g)
            cols = []
            for j in range(L.dim):
                col = {i: c for i, c in enumerate(mat.column(j)) if c}
                cols.append((j, col))
            options[g] = cols
        return options

    def base_row(self, gelts: tuple) -> dict:
        """Evaluation row of the identity-permutation monomial with the
        given decorations, pruned where partial brackets vanish."""
        L, dim, n = self.algebra, self.dim, len(gelts)
        slots = [self._options[g] for g in gelts]
        out = {}

        def rec(t, prefix, w):
            if t == n:
                base = prefix * dim
                for k, c in w.items():
                    out[base + k] = c
                return
            for j, vec in slots[t]:
                if t == 0:
                    w2 = vec
                else:
                    w2 = L.bracket_sparse(w, vec)
                    if not w2:
                        continue
                rec(t + 1, prefix * dim + j, w2)

        rec(0, 0, {})
        return out

    def relabel(self, base: dict, perm: tuple) -> dict:
        """Row of the permuted monomial: substitution digits move so
        that position t feeds variable perm[t]."""
        n, dim = len(perm), self.dim
        if perm == tuple(range(1, n + 1)):
            return base
        inv = [0] * n
        for t, v in enumerate(perm):
            inv[v - 1] = t
        out = {}
        for key, c in base.items():
            k = key % dim
            rest = key // dim
            digits = [0] * n
            for t in range(n - 1, -1, -1):
                digits[t] = rest % dim
                rest //= dim
            new = 0
            for j in range(n):
                new = new * dim + digits[inv[j]]
            out[new * dim + k] = c
        return out

    def row(self, mono: LeftNormedMonomial) -> dict:
        if self.flavor != "ordinary" and any(
                g >= self.group_order for g in mono.gelts):
            raise ValueError("decoration outside the group")
        if self.flavor == "ordinary" and any(g != 0 for g in mono.gelts):
            raise ValueError("ordinary flavor takes undecorated monomials")
        return self.relabel(self.base_row(mono.gelts), mono.vars)

    def rows(self, n: int):
        """All spanning rows, decoration-major, duplicates and exact
        scalar multiples skipped."""
        seen = set()
        identity = tuple(range(1, n + 1))
        for gelts in product(range(self.group_order), repeat=n):
            base = self.base_row(gelts)
            if not base:
                continue
            for perm in permutations(identity):
                row = self.relabel(base, perm)
                keys = tuple(sorted(row))
                lead = row[keys[0]]
                sig = (keys, tuple(row[k] / lead for k in keys[1:]))
                if sig in seen:
                    continue
                seen.add(sig)
                yield row


def evaluation_vector(bench: Workbench, flavor: str,
                      mono: LeftNormedMonomial) -> dict:
    """Sparse coordinates of the monomial's n-linear map, keyed by the
    flat (substitution tuple, output coordinate) index."""
    return _Evaluator(bench, flavor).row(mono)


# -- rank engines ----------------------------------------------------


class IntRowSpace:
    """Row space over the rationals, pivots kept as gcd-stripped
    integer rows with distinct leading keys."""

    def __init__(self):
        self.pivots = {}
        self.order = []

    @property
    def rank(self):
        return len(self.pivots)

    @staticmethod
    def from_scalar_row(row: dict) -> dict:
        fracs = {k: c.as_rational() for k, c in row.items()}
        scale = lcm(*(f.denominator for f in fracs.values()))
        ints = {k: f.numerator * (scale // f.denominator)
                for k, f in fracs.items()}
        g = gcd(*ints.values())
        if g > 1:
            ints = {k: v // g for k, v in ints.items()}
        return ints

    def add(self, row: dict) -> bool:
        """Reduce an integer row; absorb it if independent."""
        while row:
            k = min(row)
            pivot = self.pivots.get(k)
            if pivot is None:
                g = gcd(*row.values())
                if g > 1:
                    row = {kk: v // g for kk, v in row.items()}
                self.pivots[k] = row
                self.order.append(k)
                return True
            a, b = row[k], pivot[k]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            new = {kk: v * ma for kk, v in row.items()}
            for kk, v in pivot.items():
                cur = new.get(kk, 0) - v * mb
                if cur:
                    new[kk] = cur
                else:
                    new.pop(kk, None)
            row = new
        return False

    def coordinates(self, row: dict):
        """Express a Fraction-valued row in the pivot basis; None when
        it falls outside the span.  Keys are pivot leading keys."""
        work = dict(row)
        coords = {}
        while work:
            k = min(work)
            pivot = self.pivots.get(k)
            if pivot is None:
                return None
            c = work[k] / pivot[k]
            coords[k] = c
            for kk, v in pivot.items():
                cur = work.get(kk, 0) - c * v
                if cur:
                    work[kk] = cur
                else:
                    work.pop(kk, None)
        return coords


class ScalarRowSpace:
    """Row space over any exact field, pivots normalized to leading
    coefficient one."""

    def __init__(self, field):
        self.field = field
        self.pivots = {}
        self.order = []

    @property
    def rank(self):
        return len(self.pivots)

    def add(self, row: dict) -> bool:
        row = dict(row)
        while row:
            k = min(row)
            pivot = self.pivots.get(k)
            if pivot is None:
                lead = row[k]
                if lead != self.field.one():
                    inv = lead.inverse()
                    row = {kk: v * inv for kk, v in row.items()}
                self.pivots[k] = row
                self.order.append(k)
                return True
            c = row[k]
            for kk, v in pivot.items():
                cur = row.get(kk)
                val = -c * v if cur is None else cur - c * v
                if val:
                    row[kk] = val
                else:
                    row.pop(kk, None)
        return False

    def coordinates(self, row: dict):
        work = dict(row)
        coords = {}
        while work:
            k = min(work)
            pivot = self.pivots.get(k)
            if pivot is None:
                return None
            c = work[k]
            coords[k] = c
            for kk, v in pivot.items():
                cur = work.get(kk)
                val = -c * v if cur is None else cur - c * v
                if val:
                    work[kk] = val
                else:
                    work.pop(kk, None)
        return coords


def _row_space(bench: Workbench, flavor: str, n: int):
    ev = _Evaluator(bench, flavor)
    rational = ev.field.order == 1
    space = IntRowSpace() if rational else ScalarRowSpace(ev.field)
    int_rows = [] if rational else None
    for row in ev.rows(n):
        if rational:
            ints = IntRowSpace.from_scalar_row(row)
            if int_rows is not None:
                int_rows.append(ints)
            space.add(ints)
        else:
            space.add(row)
    return ev, space, int_rows


def codimension(bench: Workbench, flavor: str, n: int,
                config: RunConfig | None = None) -> int:
    """Rank of the full spanning-set evaluation matrix."""
    if n < 1:
        raise ValueError("n must be at least 1")
    config = config or RunConfig()
    check_budget(bench, flavor, n, config)
    ev, space, int_rows = _row_space(bench, flavor, n)
    if config.verify and int_rows is not None:
        _cross_check_rank(int_rows, space.rank)
    return space.rank


def _cross_check_rank(int_rows, expected: int) -> None:
    # a disagreement here means an elimination bug, not bad luck: both
    # modular ranks would have to hit vanishing minors simultaneously
    keys = sorted({k for row in int_rows for k in row})
    dense = [[row.get(k, 0) for k in keys] for row in int_rows]
    for p in _CHECK_PRIMES:
        got = modular_rank(dense, p)
        if got != expected:
            raise ArithmeticError(
                f"rank cross-check failed: exact {expected}, "
                f"mod {p} gave {got}")


# -- reports ---------------------------------------------------------


def nth_root_display(c: int, n: int, scale: int = 1000) -> Fraction:
    """Largest t/scale with (t/scale)^n <= c, for tables only."""
    if c < 0:
        raise ValueError("negative codimension")
    if c == 0:
        return Fraction(0)
    target = c * scale ** n
    lo, hi = 0, max(c * scale, scale)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** n <= target:
            lo = mid
        else:
            hi = mid - 1
    return Fraction(lo, scale)


@dataclass
class CodimReport:
    name: str
    flavor: str
    points: list  # (n, c_n, root Fraction)

    def to_csv(self) -> str:
        lines = ["n,flavor,c_n,root_num,root_den"]
        for n, c, root in self.points:
            lines.append(
                f"{n},{self.flavor},{c},{root.numerator},{root.denominator}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"name": self.name, "flavor": self.flavor,
                "points": [{"n": n, "c_n": c,
                            "root": [root.numerator, root.denominator]}
                           for n, c, root in self.points]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def empirical_exponent(bench: Workbench, flavor: str, n_max: int,
                       config: RunConfig | None = None,
                       n_min: int = 1) -> CodimReport:
    """Codimension table with display roots; raw data, no
    extrapolation."""
    config = config or RunConfig()
    for n in range(n_min, n_max + 1):
        check_budget(bench, flavor, n, config)
    points = []
    for n in range(n_min, n_max + 1):
        c = codimension(bench, flavor, n, config)
        points.append((n, c, nth_root_display(c, n)))
    return CodimReport(bench.name, flavor, points)


# -- identity checking -----------------------------------------------


@dataclass
class IdentityReport:
    is_identity: bool
    witness: dict | None

    def to_dict(self) -> dict:
        return {"is_identity": self.is_identity, "witness": self.witness}


def _poly_variables(poly: dict):
    vars_seen = None
    for key in poly:
        names = sorted(tree_variables(key))
        if len(set(names)) != len(names):
            raise ValueError("polynomial is not multilinear: "
                             f"repeated variable in {key}")
        if vars_seen is None:
            vars_seen = names
        elif names != vars_seen:
            raise ValueError("polynomial is not multilinear: monomials "
                             "use different variable sets")
    if not vars_seen:
        raise ValueError("empty polynomial")
    return vars_seen


def _tree_decorations(key, out):
    if key[0] == "v":
        out.setdefault(key[1], set()).add(key[2])
    else:
        _tree_decorations(key[1], out)
        _tree_decorations(key[2], out)


def is_identity(bench: Workbench, flavor: str, poly: dict,
                config: RunConfig | None = None) -> IdentityReport:
    """Exhaustive basis-substitution check, valid by multilinearity."""
    if not poly:
        return IdentityReport(True, None)
    ev = _Evaluator(bench, flavor)
    variables = _poly_variables(poly)
    decorations = {}
    for key in poly:
        _tree_decorations(key, decorations)

    L = bench.algebra
    allowed = {}
    for v in variables:
        if flavor == "graded":
            idx = None
            for g in decorations[v]:
                comp = set(bench.grading.component_indices(g))
                idx = comp if idx is None else idx & comp
            allowed[v] = sorted(idx)
        else:
            allowed[v] = list(range(L.dim))

    def leaf_value(var, g, j):
        if flavor == "g_action":
            return dict(ev._options[g][j][1])
        return {j: L.field.one()}

    def evaluate(key, sub):
        if key[0] == "v":
            return leaf_value(key[1], key[2], sub[key[1]])
        left = evaluate(key[1], sub)
        if not left:
            return {}
        right = evaluate(key[2], sub)
        if not right:
            return {}
        return L.bracket_sparse(left, right)

    for choice in product(*(allowed[v] for v in variables)):
        sub = dict(zip(variables, choice))
        total = {}
        for key, coeff in poly.items():
            val = evaluate(key, sub)
            for k, c in val.items():
                cur = total.get(k)
                s = coeff * c if cur is None else cur + coeff * c
                if s:
                    total[k] = s
                else:
                    total.pop(k, None)
        if total:
            witness = {
                "substitution": {
                    f"x{v}": L.basis_names[sub[v]] for v in variables},
                "value": {L.basis_names[k]: str(c)
                          for k, c in sorted(total.items())},
            }
            return IdentityReport(False, witness)
    return IdentityReport(True, None)


# -- cocharacters ----------------------------------------------------


@dataclass
class CocharacterReport:
    name: str
    flavor: str
    n: int
    multiplicities: dict  # partition -> positive int, zeros omitted
    codim: int

    @property
    def colength(self) -> int:
        return sum(self.multiplicities.values())

    def to_dict(self) -> dict:
        return {
            "name": self.name, "flavor": self.flavor, "n": self.n,
            "entries": [{"partition": list(lam), "multiplicity": m}
                        for lam, m in sorted(self.multiplicities.items(),
                                             reverse=True)],
            "colength": self.colength,
            "codim_check": self.codim,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _slot_permutation_key(perm, dim, n):
    """Relabeling data for the action of perm on column keys."""
    return [perm[j] - 1 for j in range(n)]


def _permute_columns(row: dict, perm: tuple, dim: int, n: int) -> dict:
    """(perm . row)[(c_1..c_n;k)] = row[(c_perm(1)..c_perm(n);k)]."""
    src = _slot_permutation_key(perm, dim, n)
    out = {}
    for key, c in row.items():
        k = key % dim
        rest = key // dim
        digits = [0] * n
        for t in range(n - 1, -1, -1):
            digits[t] = rest % dim
            rest //= dim
        new = 0
        for j in range(n):
            new = new * dim + digits[src[j]]
        out[new * dim + k] = c
    return out


def cocharacter(bench: Workbench, flavor: str, n: int,
                config: RunConfig | None = None) -> CocharacterReport:
    """Multiplicities of the S_n-character of the evaluation image.

    The image W of the spanning monomials is S_n-stable because
    permuting tensor slots of a monomial's map gives the map of the
    composed monomial.  For each cycle type the trace of the canonical
    representative on W is read off in the pivot basis, and the
    multiplicities come out by character orthogonality.  Values must be
    non-negative integers; anything else raises.
    """
    config = config or RunConfig()
    check_budget(bench, flavor, n, config)
    ev, space, _ = _row_space(bench, flavor, n)
    c_n = space.rank
    dim = ev.dim
    rational = ev.field.order == 1

    basis_rows = [space.pivots[k] for k in space.order]
    if rational:
        basis_rows = [{k: Fraction(v) for k, v in row.items()}
                      for row in basis_rows]

    traces = {}
    for mu in partitions(n):
        perm = perm_of_cycle_type(mu)
        total = Fraction(0) if rational else ev.field.zero()
        for lead, row in zip(space.order, basis_rows):
            moved = _permute_columns(row, perm, dim, n)
            coords = space.coordinates(moved)
            if coords is None:
                raise ArithmeticError(
                    "evaluation image is not stable under slot "
                    "permutation; this indicates a bug")
            diag = coords.get(lead)
            if diag:
                total = total + diag
        traces[mu] = total

    multiplicities = {}
    order = factorial(n)
    for lam in partitions(n):
        if rational:
            acc = Fraction(0)
        else:
            acc = ev.field.zero()
        for mu, tr in traces.items():
            weight = cycle_type_class_size(mu) * mn_character(lam, mu)
            if weight:
                acc = acc + tr * weight
        if rational:
            value = acc / order
        else:
            rat = (acc / ev.field.from_rational(order)).as_rational()
            if rat is None:
                raise ArithmeticError(
                    f"non-rational multiplicity for {lam}: {acc}")
            value = rat
        if value.denominator != 1 or value < 0:
            raise ArithmeticError(
                f"multiplicity for {lam} is {value}, expected a "
                "non-negative integer")
        if value:
            multiplicities[lam] = int(value)

    total_dim = sum(m * hook_dim(lam)
                    for lam, m in multiplicities.items())
    if total_dim != c_n:
        raise ArithmeticError(
            f"multiplicities sum to dimension {total_dim}, "
            f"codimension is {c_n}")
    return CocharacterReport(bench.name, flavor, n, multiplicities, c_n)


def colength(bench: Workbench, flavor: str, n: int,
             config: RunConfig | None = None) -> int:
    return cocharacter(bench, flavor, n, config).colength
