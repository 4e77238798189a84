"""End-to-end demo of the alternating-polynomial machinery.

Builds three small representation instances, writes them as documents
usable with `codimlab lemma-s` / `codimlab verify-alt`, and runs the
pipeline on each:

  gl2_defining   2-dim module, 1-dim centre acting by scalars
  swap_centre    2-dim centre split into two eigenlines that the
                 group swaps, forcing a decorated polynomial
  heis_defining  3-dim module: past the supported width, refused

Finally the q=2 double-alternating central polynomial is checked for
centrality and evaluated on the gl2 instance.
"""
import argparse
from fractions import Fraction
from pathlib import Path

from codimlab.alternating import (RepresentationInstance,
                                  matrix_unit_centrality,
                                  regev_polynomial,
                                  scalar_separating_polynomial,
                                  verify_alternating_nonidentity)
from codimlab.documents import dumps_instance, dumps_poly
from codimlab.fixtures import (abelian, diagonal_action, gl2,
                               heisenberg, permutation_action)
from codimlab.free_polys import format_poly
from codimlab.linalg import MatrixExact
from codimlab.scalar import RATIONALS
from codimlab.symmetry import FiniteGroup, trivial_action

F = RATIONALS


def mat(rows):
    return MatrixExact(F, [[F.from_rational(Fraction(x)) for x in r]
                           for r in rows])


def gl2_defining():
    alg = gl2()
    group = FiniteGroup.cyclic(2, gen_name="psi")
    one, minus = F.one(), F.from_rational(-1)
    action = diagonal_action(alg, group, [[one] * 4,
                                          [one, minus, minus, one]])
    units = [mat([[1, 0], [0, 0]]), mat([[0, 1], [0, 0]]),
             mat([[0, 0], [1, 0]]), mat([[0, 0], [0, 1]])]
    rho = [MatrixExact.identity(F, 2), mat([[1, 0], [0, -1]])]
    return RepresentationInstance(alg, action, units, rho,
                                  faithful=True,
                                  irreducible_with_group=True).validate()


def swap_centre():
    alg = abelian(2)
    group = FiniteGroup.cyclic(2, gen_name="s")
    action = permutation_action(alg, group, [(0, 1), (1, 0)])
    return RepresentationInstance(
        alg, action,
        [mat([[1, 0], [0, 0]]), mat([[0, 0], [0, 1]])],
        [MatrixExact.identity(F, 2), mat([[0, 1], [1, 0]])],
        faithful=True, irreducible_with_group=True).validate()


def heis_defining():
    alg = heisenberg()
    maps = [mat([[0, 1, 0], [0, 0, 0], [0, 0, 0]]),
            mat([[0, 0, 0], [0, 0, 1], [0, 0, 0]]),
            mat([[0, 0, 1], [0, 0, 0], [0, 0, 0]])]
    return RepresentationInstance(alg, trivial_action(alg), maps,
                                  [MatrixExact.identity(F, 3)],
                                  faithful=True).validate()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="artifacts")
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    instances = [("gl2_defining", gl2_defining()),
                 ("swap_centre", swap_centre()),
                 ("heis_defining", heis_defining())]
    for name, inst in instances:
        path = out / f"{name}.json"
        path.write_text(dumps_instance(inst), encoding="utf-8")
        print(f"== {name} (module dim {inst.module_dim}) -> {path}")
        try:
            sep = scalar_separating_polynomial(inst)
        except ValueError as e:
            print(f"   refused: {e}")
            continue
        group = inst.action.group
        print(f"   centre dim t={sep.t}, eigencomponents q={sep.q}")
        print(f"   f = {format_poly(sep.polynomial, group)}")
        print(f"   det on the module: {sep.determinant}")
        sets = [] if sep.trivial else [tuple(range(1, sep.q + 1))]
        poly_path = out / f"{name}_separating.json"
        poly_path.write_text(dumps_poly(sep.polynomial, inst.field,
                                        sets=sets), encoding="utf-8")

    print("== regev q=2")
    print("   " + matrix_unit_centrality(2).summary())
    reg = regev_polynomial(2)
    report = verify_alternating_nonidentity(
        reg.poly, dict(instances)["gl2_defining"],
        [reg.x_vars, reg.y_vars])
    print("   on gl2_defining: " + report.summary())
    poly_path = out / "regev_q2.json"
    poly_path.write_text(dumps_poly(reg.poly, F,
                                    sets=[reg.x_vars, reg.y_vars]),
                         encoding="utf-8")
    print(f"   -> {poly_path}")


if __name__ == "__main__":
    main()
