"""The invariant d for every bundled fixture, with the closed-form
cross-checks and the finite-n codimension roots next to it.

d is the chain-restricted annihilator maximum; for the metabelian
fixtures it equals m, for the simple ones the dimension of the
largest simple section.  The n-th roots of c_n approach d slowly, so
the table shows both rather than pretending to extrapolate.
"""
import argparse

from codimlab.codim import empirical_exponent
from codimlab.config import Refusal, RunConfig
from codimlab.exponent import compute_d
from codimlab.fixtures import FIXTURE_BUILDERS, build_fixture


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=5)
    args = ap.parse_args()

    config = RunConfig()
    for name in sorted(FIXTURE_BUILDERS):
        bench = build_fixture(name)
        try:
            report = compute_d(bench, config)
        except Refusal as refusal:
            print(f"{name:24s}  refused ({refusal.reason}): "
                  f"{refusal.message}")
            continue
        checks = ", ".join(
            f"{c['rule']}={'ok' if c['agrees'] else 'MISMATCH'}"
            for c in report.closed_form_checks) or "none"
        print(f"{name:24s}  d = {report.d}   closed forms: {checks}")
        try:
            codims = empirical_exponent(bench, "ordinary",
                                        args.n_max, config)
            roots = "  ".join(
                f"{root.numerator}/{root.denominator}"
                for _, _, root in codims.points)
            print(f"{'':24s}  c_n^(1/n): {roots}")
        except Refusal:
            pass


if __name__ == "__main__":
    main()
