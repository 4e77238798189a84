"""Alternating polynomial constructions on small matrix representations.

Regev's central polynomial for q x q matrices, deterministic gamma
selection, the scalar-separating polynomial built from the joint
eigenspaces of a commuting central family, and a harness that checks
formal alternation and searches for non-identity witnesses.

Associative G-polynomials are dicts mapping words, tuples of
(variable, group element) pairs, to scalars, matching free_polys.
The empty word is the multiplicative unit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import isqrt
from random import Random

from codimlab.free_polys import perm_sign, permute, poly_add, poly_scale
from codimlab.lie_core import LieAlgebra
from codimlab.linalg import MatrixExact, Subspace
from codimlab.scalar import RATIONALS, FieldSpec, Scalar
from codimlab.symmetry import GroupAction

PIPELINE_DIM_CAP = 2


# -- module instances -------------------------------------------------


@dataclass
class RepresentationInstance:
    """A module over a Lie algebra with G-action, given by matrices.

    algebra_maps[i] is the operator of the i-th algebra basis vector
    and group_maps[g] the operator of group element g, all acting on
    column vectors of F^m.  The flags record what the supplier claims;
    validate() refutes them where that is decidable.
    """

    algebra: LieAlgebra
    action: GroupAction
    algebra_maps: list
    group_maps: list
    faithful: bool = False
    irreducible_with_group: bool = False

    @property
    def module_dim(self) -> int:
        return self.group_maps[0].rows

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def operator_of(self, vec) -> MatrixExact:
        """phi extended linearly to an arbitrary algebra element."""
        acc = MatrixExact.zeros(self.field, self.module_dim,
                                self.module_dim)
        for i, c in enumerate(vec):
            if c:
                acc = acc + self.algebra_maps[i].scale(c)
        return acc

    def conjugate(self, g: int, mat: MatrixExact) -> MatrixExact:
        rho = self.group_maps[g]
        return rho @ mat @ self.group_maps[self.action.group.inv(g)]

    def validate(self) -> "RepresentationInstance":
        alg, group = self.algebra, self.action.group
        m = self.module_dim
        problems = []
        if len(self.algebra_maps) != alg.dim:
            raise ValueError("need one operator per algebra basis vector")
        if len(self.group_maps) != group.order:
            raise ValueError("need one operator per group element")
        for mat in list(self.algebra_maps) + list(self.group_maps):
            if mat.rows != m or mat.cols != m:
                raise ValueError("module operators must be square of "
                                 "one common size")
        ident = MatrixExact.identity(self.field, m)
        if self.group_maps[0] != ident:
            problems.append("group identity does not act as identity")
        for g in range(group.order):
            for h in range(group.order):
                gh = group.mul(g, h)
                if self.group_maps[g] @ self.group_maps[h] \
                        != self.group_maps[gh]:
                    problems.append(f"group operators break at "
                                    f"({group.names[g]}, {group.names[h]})")
        for i in range(alg.dim):
            for j in range(i + 1, alg.dim):
                lhs = (self.algebra_maps[i] @ self.algebra_maps[j]
                       - self.algebra_maps[j] @ self.algebra_maps[i])
                rhs = self.operator_of(alg.bracket(
                    alg.basis_vector(i), alg.basis_vector(j)))
                if lhs != rhs:
                    problems.append(
                        f"bracket of ({alg.basis_names[i]}, "
                        f"{alg.basis_names[j]}) does not match the "
                        "operator commutator")
        for g in range(1, group.order):
            for i in range(alg.dim):
                lhs = self.group_maps[g] @ self.algebra_maps[i]
                rhs = self.operator_of(self.action.apply(
                    g, alg.basis_vector(i))) @ self.group_maps[g]
                if lhs != rhs:
                    problems.append(
                        f"equivariance fails at (g={group.names[g]}, "
                        f"{alg.basis_names[i]})")
        flat = MatrixExact(self.field, [
            [mat.data[r][c] for r in range(m) for c in range(m)]
            for mat in self.algebra_maps]) if alg.dim else None
        actually_faithful = flat is not None and flat.rank() == alg.dim
        if self.faithful != actually_faithful:
            problems.append("faithful flag does not match the kernel "
                            "of the representation")
        if self.irreducible_with_group:
            witness = _proper_submodule(self)
            if witness is not None:
                problems.append("declared irreducible, but a proper "
                                f"submodule of dimension {witness.dim} "
                                "exists")
        if problems:
            raise ValueError("; ".join(problems))
        return self


def _proper_submodule(inst: RepresentationInstance) -> Subspace | None:
    """Spin unit vectors and their pairwise sums; a proper invariant
    subspace refutes irreducibility, finding none proves nothing."""
    field, m = inst.field, inst.module_dim
    ops = list(inst.algebra_maps) + [inst.group_maps[g]
                                     for g in range(1, len(inst.group_maps))]
    units = [tuple(field.one() if i == j else field.zero()
                   for i in range(m)) for j in range(m)]
    seeds = list(units)
    for a, b in combinations(units, 2):
        seeds.append(tuple(x + y for x, y in zip(a, b)))
    for seed in seeds:
        spun = Subspace(field, m, [seed])
        fresh = list(spun.basis)
        while fresh:
            new = []
            for v in fresh:
                for op in ops:
                    w = op.apply(v)
                    if any(w) and not spun.contains_vector(w):
                        spun = Subspace(field, m, list(spun.basis) + [w])
                        new.append(w)
            fresh = new
        if 0 < spun.dim < m:
            return spun
    return None


def _matrix_inverse(mat: MatrixExact) -> MatrixExact:
    cols = []
    for j in range(mat.rows):
        unit = tuple(mat.field.one() if i == j else mat.field.zero()
                     for i in range(mat.rows))
        sol = mat.solve(unit)
        if sol is None:
            raise ArithmeticError("matrix is singular")
        cols.append(sol)
    return MatrixExact(mat.field, [[cols[j][i] for j in range(mat.rows)]
                                   for i in range(mat.rows)])


# -- Regev's central polynomial ---------------------------------------


@dataclass
class RegevPolynomial:
    q: int
    poly: dict
    x_vars: tuple
    y_vars: tuple

    @property
    def term_count(self) -> int:
        return len(self.poly)


def regev_polynomial(q: int) -> RegevPolynomial:
    """The double-alternating central polynomial for q x q matrices,
    with x-runs and y-runs of lengths 1, 3, ..., 2q-1 interleaved."""
    if q < 1:
        raise ValueError("q must be positive")
    if q > 2:
        raise ValueError(
            f"explicit expansion for q = {q} is unsupported: the sum "
            f"has ({q * q}!)^2 terms")
    n = q * q
    x_vars = tuple(range(1, n + 1))
    y_vars = tuple(range(n + 1, 2 * n + 1))
    runs = [2 * k + 1 for k in range(q)]
    poly = {}
    perms = [(p, perm_sign(tuple(v + 1 for v in p)))
             for p in permutations(range(n))]
    for sigma, s_sign in perms:
        for tau, t_sign in perms:
            word = []
            sx = sy = 0
            for run in runs:
                for _ in range(run):
                    word.append((x_vars[sigma[sx]], 0))
                    sx += 1
                for _ in range(run):
                    word.append((y_vars[tau[sy]], 0))
                    sy += 1
            poly[tuple(word)] = RATIONALS.from_rational(s_sign * t_sign)
    return RegevPolynomial(q, poly, x_vars, y_vars)


@dataclass
class CentralityReport:
    q: int
    substitutions: int
    all_scalar: bool
    nonzero_count: int
    witness: tuple | None  # matrix units as 1-based (row, col) pairs
    witness_value: Fraction | None

    def summary(self) -> str:
        status = "central" if self.all_scalar else "NOT central"
        return (f"q={self.q}: {self.substitutions} substitutions, "
                f"{status}, {self.nonzero_count} nonzero values")


def matrix_unit_centrality(q: int) -> CentralityReport:
    """Evaluate the Regev polynomial on every matrix-unit substitution
    and confirm each value is a scalar matrix.

    The witness is the first substitution in lexicographic order whose
    value is nonzero.
    """
    reg = regev_polynomial(q)
    n = q * q
    units = [(r, c) for r in range(q) for c in range(q)]
    perms = [(p, perm_sign(tuple(v + 1 for v in p)))
             for p in permutations(range(n))]

    # position template: for each product slot, which block and which
    # sigma/tau rank feeds it
    template = []
    sx = sy = 0
    for run in (2 * k + 1 for k in range(q)):
        for _ in range(run):
            template.append(("x", sx))
            sx += 1
        for _ in range(run):
            template.append(("y", sy))
            sy += 1

    x_internal, y_internal, mixed = [], [], []
    for pos in range(1, len(template)):
        (b1, r1), (b2, r2) = template[pos - 1], template[pos]
        if b1 == b2 == "x":
            x_internal.append((r1, r2))
        elif b1 == b2 == "y":
            y_internal.append((r1, r2))
        else:
            mixed.append((template[pos - 1], template[pos]))
    first_block, first_rank = template[0]
    last_block, last_rank = template[-1]

    all_scalar = True
    nonzero = 0
    witness = None
    witness_value = None
    total = 0
    for xs in product(range(n), repeat=n):
        xrow = [units[u][0] for u in xs]
        xcol = [units[u][1] for u in xs]
        x_alive = [(p, s) for p, s in perms
                   if all(xcol[p[a]] == xrow[p[b]] for a, b in x_internal)]
        for ys in product(range(n), repeat=n):
            total += 1
            yrow = [units[u][0] for u in ys]
            ycol = [units[u][1] for u in ys]
            acc = [[0] * q for _ in range(q)]
            for tau, t_sign in perms:
                if not all(ycol[tau[a]] == yrow[tau[b]]
                           for a, b in y_internal):
                    continue
                for sigma, s_sign in x_alive:
                    ok = True
                    for (ba, ra), (bb, rb) in mixed:
                        left = xcol[sigma[ra]] if ba == "x" \
                            else ycol[tau[ra]]
                        right = xrow[sigma[rb]] if bb == "x" \
                            else yrow[tau[rb]]
                        if left != right:
                            ok = False
                            break
                    if not ok:
                        continue
                    r0 = xrow[sigma[first_rank]] if first_block == "x" \
                        else yrow[tau[first_rank]]
                    c1 = xcol[sigma[last_rank]] if last_block == "x" \
                        else ycol[tau[last_rank]]
                    acc[r0][c1] += s_sign * t_sign
            if any(acc[i][j] for i in range(q) for j in range(q)
                   if i != j):
                all_scalar = False
            if any(acc[i][i] != acc[0][0] for i in range(q)):
                all_scalar = False
            if any(acc[i][j] for i in range(q) for j in range(q)):
                nonzero += 1
                if witness is None:
                    witness = tuple((units[u][0] + 1, units[u][1] + 1)
                                    for u in xs + ys)
                    witness_value = Fraction(acc[0][0])
    return CentralityReport(q, total, all_scalar, nonzero, witness,
                            witness_value)


# -- gamma selection --------------------------------------------------


def choose_gamma(alpha, beta, k: int) -> Scalar:
    """Smallest positive integer gamma with alpha_i + gamma beta_i
    nonzero for i = 1..k, given alpha_i != 0 below k, alpha_k = 0 and
    beta_k != 0."""
    alpha, beta = list(alpha), list(beta)
    if not 1 <= k <= min(len(alpha), len(beta)):
        raise ValueError("k out of range")
    if any(not alpha[i] for i in range(k - 1)):
        raise ValueError("alpha entries below k must be nonzero")
    if alpha[k - 1]:
        raise ValueError("alpha_k must be zero")
    if not beta[k - 1]:
        raise ValueError("beta_k must be nonzero")
    field = beta[k - 1].field
    forbidden = [-(alpha[i] / beta[i]) for i in range(k - 1) if beta[i]]
    m = 1
    while True:
        gamma = field.from_rational(m)
        if all(gamma != bad for bad in forbidden):
            break
        m += 1
    for i in range(k):
        if not alpha[i] + gamma * beta[i]:
            raise ArithmeticError("gamma verification failed")
    return gamma


# -- square roots for eigenvalue splitting ----------------------------


def _fraction_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


# coordinates of sqrt(delta) in the (1, zeta) basis for the quadratic
# cyclotomic fields; delta is the squarefree radicand
_QUADRATIC = {3: (-3, Fraction(1), Fraction(2)),
              4: (-1, Fraction(0), Fraction(1)),
              6: (-3, Fraction(-1), Fraction(2))}


def square_root_in(field: FieldSpec, value: Scalar) -> Scalar | None:
    """An exact square root of value inside the field, or None.

    Complete for the rationals and the quadratic cyclotomic fields
    (orders 1, 2, 3, 4, 6); other fields raise.
    """
    if field.degree == 1:
        root = _fraction_sqrt(value.as_rational())
        return None if root is None else field.from_rational(root)
    if field.order not in _QUADRATIC:
        raise ValueError(
            f"square roots in the order-{field.order} cyclotomic field "
            "are not supported; supply eigenvalues over a quadratic "
            "field or the rationals")
    delta, s0, s1 = _QUADRATIC[field.order]
    a, b = value.coeffs
    # rewrite value = p + q sqrt(delta)
    q_part = b / s1
    p_part = a - q_part * s0

    def assemble(u: Fraction, v: Fraction) -> Scalar:
        # u + v sqrt(delta) back in the (1, zeta) basis
        return field.scalar((u + v * s0, v * s1))

    if q_part == 0:
        root = _fraction_sqrt(p_part)
        if root is not None:
            return field.from_rational(root)
        root = _fraction_sqrt(p_part / delta)
        if root is not None:
            return assemble(Fraction(0), root)
        return None
    norm_root = _fraction_sqrt(p_part * p_part - q_part * q_part * delta)
    if norm_root is None:
        return None
    for cand in ((p_part + norm_root) / 2, (p_part - norm_root) / 2):
        u = _fraction_sqrt(cand)
        if u:
            v = q_part / (2 * u)
            if u * u + v * v * delta == p_part:
                return assemble(u, v)
    return None


# -- joint eigenspaces and the separating polynomial ------------------


def _restriction(field, operator: MatrixExact, comp: Subspace):
    rows = [comp.coordinates(operator.apply(v)) for v in comp.basis]
    if any(r is None for r in rows):
        raise ArithmeticError("component is not invariant")
    return MatrixExact(field, [[rows[j][i] for j in range(len(rows))]
                               for i in range(len(rows))])


def joint_eigenspaces(field: FieldSpec, operators, dim: int):
    """Common eigenspace decomposition of a commuting semisimple
    family on F^dim, for dim <= 2."""
    components = [Subspace.full(field, dim)]
    for op in operators:
        refined = []
        for comp in components:
            if comp.dim == 1:
                refined.append(comp)
                continue
            rest = _restriction(field, op, comp)
            tr, det = rest.trace(), rest.det()
            disc = tr * tr - det.field.from_rational(4) * det
            half = field.from_rational(Fraction(1, 2))
            if not disc:
                if rest != MatrixExact.identity(field, comp.dim).scale(
                        tr * half):
                    raise ValueError(
                        "input inconsistency: a centre element acts "
                        "non-semisimply on the module")
                refined.append(comp)
                continue
            root = square_root_in(field, disc)
            if root is None:
                raise ValueError(
                    "the field is too small to split the centre "
                    "eigenvalues; extend it and retry")
            for lam in ((tr + root) * half, (tr - root) * half):
                shifted = rest - MatrixExact.identity(
                    field, comp.dim).scale(lam)
                local = shifted.kernel()
                if local.dim != 1:
                    raise ValueError(
                        "input inconsistency: a centre element acts "
                        "non-semisimply on the module")
                lifted = []
                for v in local.basis:
                    amb = [field.zero()] * dim
                    for c, basis_vec in zip(v, comp.basis):
                        for i, entry in enumerate(basis_vec):
                            amb[i] = amb[i] + c * entry
                    lifted.append(tuple(amb))
                refined.append(Subspace(field, dim, lifted))
        components = refined
    return components


@dataclass
class ScalarSeparation:
    t: int
    q: int
    trivial: bool
    components: list
    projections: list
    eigentable: list          # eigentable[i][k]: r_i scalar on M_k
    group_choices: list       # per target j, tuple of g_i
    per_component: list       # f_j polynomials
    gammas: list              # (component, gamma) steps taken
    polynomial: dict
    evaluated: MatrixExact
    determinant: Scalar


def _scalar_on(field, operator: MatrixExact, comp: Subspace) -> Scalar:
    first = comp.basis[0]
    idx = next(i for i, c in enumerate(first) if c)
    lam = operator.apply(first)[idx] / first[idx]
    for v in comp.basis:
        if tuple(lam * c for c in v) != tuple(operator.apply(v)):
            raise ArithmeticError(
                "operator is not scalar on the component")
    return lam


def scalar_separating_polynomial(inst: RepresentationInstance,
                                 ) -> ScalarSeparation:
    """An alternating polynomial in the centre variables whose value at
    the centre basis is a nondegenerate operator on the module."""
    field, m = inst.field, inst.module_dim
    alg = inst.algebra
    centre = alg.annihilator(alg.full_space(), alg.zero_space())
    t = centre.dim
    ident = MatrixExact.identity(field, m)
    if t == 0:
        return ScalarSeparation(
            0, 1, True, [Subspace.full(field, m)], [ident], [], [],
            [], [], {(): field.one()}, ident, field.one())
    if m > PIPELINE_DIM_CAP:
        raise ValueError(
            f"the construction is limited to modules of dimension at "
            f"most {PIPELINE_DIM_CAP}; dimension {m} needs the "
            f"q = {m} Regev expansion with ({m * m}!)^2 terms")

    phis = [inst.operator_of(r) for r in centre.basis]
    components = joint_eigenspaces(field, phis, m)
    q = len(components)
    eigentable = [[_scalar_on(field, phi, comp) for comp in components]
                  for phi in phis]

    # projections onto each component along the others
    columns = MatrixExact(field, [
        [vec[i] for comp in components for vec in comp.basis]
        for i in range(m)])
    inv = _matrix_inverse(columns)
    projections = []
    offset = 0
    for comp in components:
        sel = MatrixExact(field, [
            [field.one() if i == j and offset <= i < offset + comp.dim
             else field.zero() for j in range(m)] for i in range(m)])
        projections.append(columns @ sel @ inv)
        offset += comp.dim

    # how G permutes the components
    group = inst.action.group
    perm_of = []
    for g in range(group.order):
        images = []
        for comp in components:
            image = Subspace(field, m, [inst.group_maps[g].apply(v)
                                        for v in comp.basis])
            images.append(components.index(image))
        perm_of.append(tuple(images))
    orbit = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for g in range(group.order):
            j = perm_of[g][i]
            if j not in orbit:
                orbit.add(j)
                frontier.append(j)
    if len(orbit) != q:
        raise ValueError(
            "input inconsistency: the group orbit on the eigenspace "
            "components is not transitive, contradicting irreducibility")

    # basis completion of the eigenvalue rows inside F^q
    row_space = Subspace(field, q, [tuple(row) for row in eigentable])
    if row_space.dim != t:
        raise ValueError("input inconsistency: the centre does not act "
                         "faithfully on the module")
    completion = []
    span = row_space
    for c in range(q):
        if span.dim == q:
            break
        unit = tuple(field.one() if i == c else field.zero()
                     for i in range(q))
        if not span.contains_vector(unit):
            completion.append(c)
            span = span.add(Subspace(field, q, [unit]))

    group_choices = []
    per_component = []
    for j in range(q):
        choices = tuple(min(g for g in range(group.order)
                            if perm_of[g][i] == j) for i in range(q))
        group_choices.append(choices)
        f_j = {}
        for sigma in permutations(range(q)):
            sgn = perm_sign(tuple(v + 1 for v in sigma))
            comp_hits = []
            word = []
            for i in range(q):
                v = sigma[i]
                if v < t:
                    word.append((v + 1, choices[i]))
                else:
                    comp_hits.append(
                        perm_of[choices[i]][completion[v - t]])
            if any(c != j for c in comp_hits):
                continue
            key = tuple(word)
            val = f_j.get(key, field.zero()) + field.from_rational(sgn)
            if val:
                f_j[key] = val
            elif key in f_j:
                del f_j[key]
        per_component.append(f_j)

    assignment = {i + 1: phis[i] for i in range(t)}
    values = []
    for f_j in per_component:
        op = evaluate_poly(f_j, inst, assignment)
        values.append([_scalar_on(field, op, comp)
                       for comp in components])
    for j in range(q):
        if not values[j][j]:
            raise ArithmeticError(
                "construction failed: the component polynomial "
                "vanishes on its own component")

    combined = {}
    current = [field.zero()] * q
    gammas = []
    while True:
        dead = [k for k in range(q) if not current[k]]
        if not dead:
            break
        k = dead[0]
        gamma = choose_gamma(current, values[k], k + 1)
        combined = poly_add(combined, poly_scale(per_component[k],
                                                 gamma))
        current = [c + gamma * b for c, b in zip(current, values[k])]
        gammas.append((k, gamma))

    evaluated = evaluate_poly(combined, inst, assignment)
    determinant = evaluated.det()
    if not determinant:
        raise ArithmeticError("construction failed: the combined "
                              "polynomial is degenerate")
    return ScalarSeparation(t, q, False, components, projections,
                            eigentable, group_choices, per_component,
                            gammas, combined, evaluated, determinant)


# -- evaluation and the verification harness --------------------------


def evaluate_poly(poly: dict, inst: RepresentationInstance,
                  assignment: dict) -> MatrixExact:
    """Evaluate an associative G-polynomial; assignment maps variable
    indices to module operators, decorations conjugate by rho(g)."""
    field, m = inst.field, inst.module_dim
    used = sorted({(v, g) for word in poly for v, g in word})
    cache = {}
    for v, g in used:
        base = assignment[v]
        cache[v, g] = base if g == 0 else inst.conjugate(g, base)

    def nonzero_cells(mat):
        return [(i, j, mat.data[i][j]) for i in range(m)
                for j in range(m) if mat.data[i][j]]

    sparse_ok = all(len(nonzero_cells(mat)) <= 1
                    for mat in cache.values())
    if sparse_ok and all(len(w) for w in poly):
        cells = {key: (nonzero_cells(mat) or [None])[0]
                 for key, mat in cache.items()}
        grid = [[field.zero()] * m for _ in range(m)]
        for word, coeff in poly.items():
            first = cells[word[0]]
            if first is None:
                continue
            row, col, val = first
            for v, g in word[1:]:
                nxt = cells[v, g]
                if nxt is None or nxt[0] != col:
                    val = None
                    break
                col = nxt[1]
                val = val * nxt[2]
            if val is not None:
                grid[row][col] = grid[row][col] + coeff * val
        return MatrixExact(field, grid)

    acc = MatrixExact.zeros(field, m, m)
    for word, coeff in poly.items():
        cur = MatrixExact.identity(field, m)
        for v, g in word:
            cur = cur @ cache[v, g]
            if cur.is_zero():
                break
        if not cur.is_zero():
            acc = acc + cur.scale(coeff)
    return acc


def poly_variables(poly: dict) -> list[int]:
    seen = set()
    for word in poly:
        for v, _ in word:
            seen.add(v)
    return sorted(seen)


def is_alternating(poly: dict, var_set, n: int) -> bool:
    """Does every transposition inside var_set negate the polynomial?"""
    if not poly:
        return True
    field = next(iter(poly.values())).field
    minus = field.from_rational(-1)
    for i, j in combinations(sorted(var_set), 2):
        perm = list(range(1, n + 1))
        perm[i - 1], perm[j - 1] = j, i
        if permute(poly, tuple(perm)) != poly_scale(poly, minus):
            return False
    return True


@dataclass
class AlternationReport:
    alternating: bool
    per_set: list
    is_identity: bool | None  # None when a random search found nothing
    witness_assignment: tuple | None
    witness_value: MatrixExact | None
    searched: int
    mode: str

    def summary(self) -> str:
        alt = "alternating" if self.alternating else "not alternating"
        if self.is_identity is None:
            verdict = "inconclusive"
        elif self.is_identity:
            verdict = "identity"
        else:
            verdict = f"non-identity (witness {self.witness_assignment})"
        return f"{alt}; {verdict} after {self.searched} {self.mode} " \
            "substitutions"


def verify_alternating_nonidentity(poly: dict,
                                   inst: RepresentationInstance,
                                   sets, exhaustive_limit: int = 200000,
                                   seed: int = 0,
                                   samples: int = 2000,
                                   ) -> AlternationReport:
    """Check formal alternation in each variable set and search basis
    substitutions for a nonvanishing value."""
    sets = [tuple(s) for s in sets]
    flat = [v for s in sets for v in s]
    if len(flat) != len(set(flat)):
        raise ValueError("alternation sets must be disjoint")
    variables = poly_variables(poly)
    n = max(variables, default=0)
    per_set = [is_alternating(poly, s, n) for s in sets]

    ell = inst.algebra.dim
    total = ell ** len(variables)
    searched = 0
    witness = None
    value = None
    if total <= exhaustive_limit:
        mode = "exhaustive"
        for combo in product(range(ell), repeat=len(variables)):
            searched += 1
            assignment = {v: inst.algebra_maps[c]
                          for v, c in zip(variables, combo)}
            out = evaluate_poly(poly, inst, assignment)
            if not out.is_zero():
                witness, value = combo, out
                break
        identity = witness is None
    else:
        mode = "random"
        rng = Random(seed)
        for _ in range(samples):
            searched += 1
            combo = tuple(rng.randrange(ell) for _ in variables)
            assignment = {v: inst.algebra_maps[c]
                          for v, c in zip(variables, combo)}
            out = evaluate_poly(poly, inst, assignment)
            if not out.is_zero():
                witness, value = combo, out
                break
        identity = None if witness is None else False
    return AlternationReport(all(per_set), per_set, identity, witness,
                             value, searched, mode)


# -- the trace-factor recursion ---------------------------------------


def insert_double_brackets(poly: dict, x_vars, u_var: int,
                           v_var: int) -> dict:
    """Sum over i in x_vars of poly with x_i replaced by the double
    commutator [u, [v, x_i]], expanded into associative words.

    A decorated occurrence x_i^g picks up the same decoration on the
    inserted u and v letters."""
    for word in poly:
        vs = [v for v, _ in word]
        if u_var in vs or v_var in vs:
            raise ValueError("u and v variables must be fresh")
    out = {}
    for target in x_vars:
        for word, coeff in poly.items():
            positions = [k for k, (v, _) in enumerate(word)
                         if v == target]
            if len(positions) != 1:
                raise ValueError("polynomial must be multilinear in "
                                 "the alternation variables")
            k = positions[0]
            g = word[k][1]
            u, v, x = (u_var, g), (v_var, g), word[k]
            expansions = [((u, v, x), 1), ((u, x, v), -1),
                          ((v, x, u), -1), ((x, v, u), 1)]
            for middle, sgn in expansions:
                new = word[:k] + middle + word[k + 1:]
                add = coeff * coeff.field.from_rational(sgn)
                cur = out.get(new)
                val = add if cur is None else cur + add
                if val:
                    out[new] = val
                elif new in out:
                    del out[new]
    return out


def trace_factor_check(inst: RepresentationInstance, poly: dict,
                       x_vars, assignment: dict, u_index: int,
                       v_index: int) -> dict:
    """Evaluate the double-bracket insertion against its factored form
    tr(ad u ad v) * poly, as operators on the module.

    Valid when the x variables are assigned the full algebra basis.
    """
    n = max(poly_variables(poly), default=0)
    u_var, v_var = n + 1, n + 2
    inserted = insert_double_brackets(poly, x_vars, u_var, v_var)
    full = dict(assignment)
    full[u_var] = inst.algebra_maps[u_index]
    full[v_var] = inst.algebra_maps[v_index]
    lhs = evaluate_poly(inserted, inst, full)
    killing = inst.algebra.killing_form()
    factor = killing.data[u_index][v_index]
    rhs = evaluate_poly(poly, inst, assignment).scale(factor)
    return {"matches": lhs == rhs, "trace_factor": factor,
            "lhs": lhs, "rhs": rhs}
