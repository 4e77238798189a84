"""Levi-style decomposition L = B + S + N with a finite symmetry.

The split is deliberately not fully automatic.  B comes for free when
the Killing form is nondegenerate (B = L) or the radical is everything
(B = 0); any other shape must be annotated and is verified.  N is the
span of the ad-nilpotent basis vectors of the radical when that span
passes the nilpotent-ideal checks, otherwise it too must be annotated.
S is produced by averaging a B-equivariant projection over the group,
so it is a G-invariant complement with [B, S] = 0 by construction.
"""
from __future__ import annotations

from dataclasses import dataclass

from codimlab.lie_core import LieAlgebra, StructureAnnotation
from codimlab.linalg import MatrixExact, Subspace
from codimlab.symmetry import GroupAction, average_projection


@dataclass
class Decomposition:
    algebra: LieAlgebra
    levi: Subspace
    radical: Subspace
    nilradical: Subspace
    complement: Subspace
    nilpotency_index: int  # least p with all p-fold products in N zero

    def summary(self) -> dict:
        return {
            "dim": self.algebra.dim,
            "levi_dim": self.levi.dim,
            "radical_dim": self.radical.dim,
            "nilradical_dim": self.nilradical.dim,
            "complement_dim": self.complement.dim,
            "nilpotency_index": self.nilpotency_index,
        }


def _check_invariant(label: str, sub: Subspace, action: GroupAction | None,
                     problems: list):
    if action is None:
        return
    for g in range(1, action.group.order):
        for v in sub.basis:
            if not sub.contains_vector(action.apply(g, v)):
                problems.append(f"{label} is not invariant under "
                                f"{action.group.names[g]}")
                return


def _restrict_to_subalgebra(algebra: LieAlgebra,
                            sub: Subspace) -> LieAlgebra | None:
    """The bracket of `sub` in its own basis, or None if not closed."""
    brackets = {}
    for i in range(sub.dim):
        for j in range(i + 1, sub.dim):
            w = algebra.bracket(sub.basis[i], sub.basis[j])
            coords = sub.coordinates(w)
            if coords is None:
                return None
            entry = {k: c for k, c in enumerate(coords) if c}
            if entry:
                brackets[(i, j)] = entry
    names = tuple(f"v{i}" for i in range(sub.dim))
    return LieAlgebra(algebra.field, names, brackets)


def _verify_levi(algebra: LieAlgebra, levi: Subspace, radical: Subspace):
    problems = []
    if levi.dim + radical.dim != algebra.dim:
        problems.append("levi and radical dimensions do not fill L")
    if levi.intersect(radical).dim != 0:
        problems.append("levi meets the radical")
    as_algebra = _restrict_to_subalgebra(algebra, levi)
    if as_algebra is None:
        problems.append("levi is not closed under the bracket")
    elif levi.dim and as_algebra.killing_form().kernel().dim != 0:
        problems.append("levi has a degenerate Killing form")
    return problems


def _verify_nilradical(algebra: LieAlgebra, nil: Subspace,
                       radical: Subspace):
    problems = []
    if not radical.contains(nil):
        problems.append("nilradical not inside the radical")
    if not algebra.is_ideal(nil):
        problems.append("nilradical candidate is not an ideal")
    if not algebra.subspace_nilpotent_in(nil):
        problems.append("nilradical candidate is not nilpotent")
    commutator = algebra.bracket_subspaces(algebra.full_space(), radical)
    if not nil.contains(commutator):
        problems.append("[L, R] is not inside the nilradical candidate")
    return problems


def _nilpotency_index(algebra: LieAlgebra, nil: Subspace) -> int:
    p = 1
    cur = nil
    while cur.dim:
        cur = algebra.bracket_subspaces(cur, nil)
        p += 1
    return p


def decompose(algebra: LieAlgebra,
              annotation: StructureAnnotation | None = None,
              action: GroupAction | None = None) -> Decomposition:
    """Split L into levi + complement + nilradical, verified throughout.

    Raises ValueError when a part can neither be derived nor validated
    from the annotation.
    """
    annotation = annotation or StructureAnnotation()
    radical = algebra.solvable_radical()

    if radical.dim == 0:
        levi = algebra.full_space()
    elif radical.dim == algebra.dim:
        levi = algebra.zero_space()
    elif annotation.levi is not None:
        levi = annotation.levi
        problems = _verify_levi(algebra, levi, radical)
        if problems:
            raise ValueError("levi annotation rejected: "
                             + "; ".join(problems))
    else:
        raise ValueError(
            "the Killing form is degenerate and the radical is proper, "
            "so the levi part must be annotated")

    if annotation.nilradical is not None:
        nil = annotation.nilradical
    else:
        nil = algebra.span([v for v in radical.basis
                            if algebra.ad_is_nilpotent(v)])
    problems = _verify_nilradical(algebra, nil, radical)
    if problems:
        source = "annotated" if annotation.nilradical is not None \
            else "derived"
        raise ValueError(f"{source} nilradical rejected: "
                         + "; ".join(problems))

    if annotation.complement is not None:
        comp = annotation.complement
    else:
        comp = equivariant_complement(algebra, levi, action, radical, nil)
    problems = _verify_complement(algebra, levi, comp, radical, nil,
                                  action)
    if problems:
        raise ValueError("complement rejected: " + "; ".join(problems))

    final = []
    _check_invariant("levi", levi, action, final)
    _check_invariant("radical", radical, action, final)
    _check_invariant("nilradical", nil, action, final)
    if final:
        raise ValueError("; ".join(final))

    return Decomposition(algebra, levi, radical, nil, comp,
                         _nilpotency_index(algebra, nil))


def _verify_complement(algebra, levi, comp, radical, nil, action):
    problems = []
    if comp.dim + nil.dim != radical.dim or comp.intersect(nil).dim != 0:
        problems.append("R is not the direct sum of S and N")
    elif not radical.contains(comp):
        problems.append("S is not inside R")
    for b in levi.basis:
        for s in comp.basis:
            if any(algebra.bracket(b, s)):
                problems.append("[B, S] != 0")
                break
        else:
            continue
        break
    _check_invariant("complement", comp, action, problems)
    return problems


# -- equivariant complements ------------------------------------------


def adapted_basis(field, upper: Subspace, lower: Subspace):
    """Vectors of upper extending lower's basis, from upper's own RREF."""
    extension = []
    cur = lower
    for v in upper.basis:
        if not cur.contains_vector(v):
            extension.append(v)
            cur = Subspace(field, upper.ambient,
                           list(cur.basis) + [v])
    return extension


def equivariant_complement(algebra: LieAlgebra, levi: Subspace,
                           action: GroupAction | None,
                           upper: Subspace, lower: Subspace) -> Subspace:
    """G-invariant B-submodule T with upper = lower + T direct.

    A B-equivariant projection of upper onto lower is found by solving
    the equivariance constraints exactly, then averaged over the group.
    The kernel of the averaged projection inside upper is the
    complement.  Raises ArithmeticError when no projection exists or
    the averaged map fails to split, either of which signals an
    inconsistent levi or chain input.
    """
    field = algebra.field
    n = algebra.dim
    if not upper.contains(lower):
        raise ValueError("lower is not inside upper")
    j_vecs = list(lower.basis)
    c_vecs = adapted_basis(field, upper, lower)
    s, t = len(j_vecs), len(c_vecs)
    if t == 0:
        return algebra.zero_space()
    if s == 0:
        return upper

    columns = MatrixExact(field, [[vec[i] for vec in j_vecs + c_vecs]
                                  for i in range(n)])

    def coords_in(w):
        out = columns.solve(w)
        if out is None:
            raise ArithmeticError("vector escapes the section span; "
                                  "upper is not closed under the data")
        return out[:s], out[s:]

    z = field.zero()
    rows, rhs = [], []
    for b in levi.basis:
        j_brackets = [coords_in(algebra.bracket(b, jv))[0]
                      for jv in j_vecs]
        for q in range(t):
            alpha, beta = coords_in(algebra.bracket(b, c_vecs[q]))
            for w in range(s):
                row = [z] * (t * s)
                for u in range(s):
                    row[q * s + u] = row[q * s + u] + j_brackets[u][w]
                for r in range(t):
                    if beta[r]:
                        row[r * s + w] = row[r * s + w] - beta[r]
                rows.append(row)
                rhs.append(alpha[w])

    if rows:
        solution = MatrixExact(field, rows).solve(rhs)
        if solution is None:
            raise ArithmeticError(
                "no B-equivariant projection onto the lower part exists; "
                "the levi annotation is inconsistent")
    else:
        solution = (z,) * (t * s)

    # projection in ambient coordinates: identity on lower, the solved
    # values on the extension, zero outside upper
    outside = adapted_basis(field, algebra.full_space(), upper)
    full = MatrixExact(field, [[vec[i] for vec in
                                j_vecs + c_vecs + outside]
                               for i in range(n)])
    proj_cols = []
    for k in range(n):
        coords = full.solve(algebra.basis_vector(k))
        img = [z] * n
        for u in range(s):
            if coords[u]:
                img = [a + coords[u] * b
                       for a, b in zip(img, j_vecs[u])]
        for q in range(t):
            cq = coords[s + q]
            if not cq:
                continue
            for u in range(s):
                x = solution[q * s + u]
                if x:
                    img = [a + cq * x * b
                           for a, b in zip(img, j_vecs[u])]
        proj_cols.append(img)
    proj = MatrixExact(field, [[proj_cols[k][i] for k in range(n)]
                               for i in range(n)])

    if action is not None and action.group.order > 1:
        proj = average_projection(proj, action)

    complement = proj.kernel().intersect(upper)
    _assert_complement(algebra, levi, action, upper, lower, complement)
    return complement


def _assert_complement(algebra, levi, action, upper, lower, comp):
    if comp.dim + lower.dim != upper.dim \
            or comp.intersect(lower).dim != 0:
        raise ArithmeticError("averaged projection failed to split the "
                              "section")
    for b in levi.basis:
        for v in comp.basis:
            if not comp.contains_vector(algebra.bracket(b, v)):
                raise ArithmeticError("complement is not a B-submodule")
    if action is not None:
        for g in range(1, action.group.order):
            for v in comp.basis:
                if not comp.contains_vector(action.apply(g, v)):
                    raise ArithmeticError("complement is not G-invariant")


def equivariant_hom_dimension(algebra: LieAlgebra, levi: Subspace,
                              action: GroupAction | None,
                              upper: Subspace, lower: Subspace) -> int:
    """dim of the B- and G-equivariant maps upper/lower -> lower.

    Zero means the equivariant complement is unique; a positive value
    is reported as a complement-multiplicity warning, since Condition 2
    is only tested on the canonical complement.
    """
    field = algebra.field
    n = algebra.dim
    j_vecs = list(lower.basis)
    c_vecs = adapted_basis(field, upper, lower)
    s, t = len(j_vecs), len(c_vecs)
    if s == 0 or t == 0:
        return 0
    columns = MatrixExact(field, [[vec[i] for vec in j_vecs + c_vecs]
                                  for i in range(n)])

    def coords_in(w):
        out = columns.solve(w)
        if out is None:
            raise ArithmeticError("vector escapes the section span")
        return out[:s], out[s:]

    z = field.zero()
    rows = []

    def add_equations(operator):
        j_images = [coords_in(operator(jv))[0] for jv in j_vecs]
        for q in range(t):
            _, beta = coords_in(operator(c_vecs[q]))
            for w in range(s):
                row = [z] * (t * s)
                for u in range(s):
                    row[q * s + u] = row[q * s + u] - j_images[u][w]
                for r in range(t):
                    if beta[r]:
                        row[r * s + w] = row[r * s + w] + beta[r]
                rows.append(row)

    for b in levi.basis:
        add_equations(lambda v, b=b: algebra.bracket(b, v))
    if action is not None:
        for g in range(1, action.group.order):
            add_equations(lambda v, g=g: action.apply(g, v))

    if not rows:
        return t * s
    return MatrixExact(field, rows).kernel().dim
