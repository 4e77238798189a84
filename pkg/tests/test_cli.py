"""Exit codes, report formats, and determinism of the command line."""
import json
from fractions import Fraction

import pytest

from codimlab.alternating import RepresentationInstance
from codimlab.cli import main
from codimlab.documents import (dumps_document, dumps_instance,
                                load_document, load_poly)
from codimlab.fixtures import (FIXTURE_BUILDERS, build_fixture,
                               diagonal_action, gl2, heisenberg)
from codimlab.linalg import MatrixExact
from codimlab.scalar import RATIONALS
from codimlab.symmetry import FiniteGroup


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _mat(rows):
    f = RATIONALS
    return MatrixExact(f, [[f.from_rational(Fraction(x)) for x in r]
                           for r in rows])


@pytest.fixture(scope="module")
def gl2_instance_file(tmp_path_factory):
    """Defining representation of gl2 with the sign action realized
    by conjugation with diag(1, -1)."""
    alg = gl2()
    group = FiniteGroup.cyclic(2, gen_name="psi")
    one = RATIONALS.one()
    minus = RATIONALS.from_rational(-1)
    action = diagonal_action(alg, group, [[one] * 4,
                                          [one, minus, minus, one]])
    units = [_mat([[1, 0], [0, 0]]), _mat([[0, 1], [0, 0]]),
             _mat([[0, 0], [1, 0]]), _mat([[0, 0], [0, 1]])]
    rho = [_mat([[1, 0], [0, 1]]), _mat([[1, 0], [0, -1]])]
    inst = RepresentationInstance(alg, action, units, rho,
                                  faithful=True,
                                  irreducible_with_group=True)
    inst.validate()
    path = tmp_path_factory.mktemp("inst") / "gl2_defining.json"
    path.write_text(dumps_instance(inst), encoding="utf-8")
    return str(path)


# -- fixtures and validate --------------------------------------------


def test_fixtures_command_writes_loadable_corpus(tmp_path, capsys):
    code, out, _ = run(capsys, "fixtures", "--dir", str(tmp_path))
    assert code == 0
    written = sorted(p.name for p in tmp_path.glob("*.json"))
    assert written == sorted(f"{n}.json" for n in FIXTURE_BUILDERS)
    for p in tmp_path.glob("*.json"):
        load_document(p)
    assert out.count("wrote ") == len(FIXTURE_BUILDERS)


def test_validate_accepts_fixture_names(capsys):
    code, out, _ = run(capsys, "validate", "--algebra", "sl2_trivial")
    assert code == 0
    assert out.startswith("VALID: sl2_trivial (dim 3")


def test_validate_accepts_file_paths(tmp_path, capsys):
    path = tmp_path / "h.json"
    path.write_text(dumps_document(build_fixture("heisenberg")))
    code, out, _ = run(capsys, "validate", "--algebra", str(path),
                       "--format", "json")
    assert code == 0
    info = json.loads(out)
    assert info["valid"] and info["dim"] == 3
    assert info["symmetry"] == "none"


def test_validate_rejects_broken_documents(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"name": "x"}')
    code, out, err = run(capsys, "validate", "--algebra", str(path))
    assert code == 2
    assert "error:" in err


def test_unknown_algebra_reference(capsys):
    code, _, err = run(capsys, "validate", "--algebra", "no_such")
    assert code == 2
    assert "bundled fixture" in err


# -- codim ------------------------------------------------------------


def test_codim_csv_metabelian(capsys):
    code, out, _ = run(capsys, "codim", "--algebra",
                       "metabelian_m2_cyclic", "--flavor", "ordinary",
                       "--n", "2..6")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,flavor,c_n,root_num,root_den"
    got = [tuple(line.split(",")[:3]) for line in lines[1:]]
    assert got == [(str(n), "ordinary", str(n - 1))
                   for n in range(2, 7)]


def test_codim_json_and_text(capsys):
    code, out, _ = run(capsys, "codim", "--algebra", "sl2_trivial",
                       "--flavor", "ordinary", "--n", "3",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["points"] == [{"n": 3, "c_n": 2, "root": [1259, 1000]}]
    code, out, _ = run(capsys, "codim", "--algebra", "sl2_trivial",
                       "--flavor", "ordinary", "--n", "3",
                       "--format", "text")
    assert code == 0
    assert "n=3  c_n=2" in out


def test_codim_budget_refusal(capsys):
    code, out, _ = run(capsys, "codim", "--algebra", "sl2_trivial",
                       "--flavor", "ordinary", "--n", "1..9",
                       "--budget", "100")
    assert code == 1
    refusal = json.loads(out)
    assert refusal["refused"] and refusal["reason"] == "budget"
    assert refusal["max_feasible_n"] == 2


def test_codim_missing_grading_is_invalid_input(capsys):
    code, _, err = run(capsys, "codim", "--algebra", "sl2_trivial",
                       "--flavor", "graded", "--n", "2")
    assert code == 2
    assert "no grading" in err


def test_bad_range_rejected(capsys):
    code, _, err = run(capsys, "codim", "--algebra", "sl2_trivial",
                       "--flavor", "ordinary", "--n", "6..2")
    assert code == 2
    assert "range" in err


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out, _ = run(capsys, "codim", "--algebra", "heisenberg",
                       "--flavor", "ordinary", "--n", "1..3",
                       "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("n,flavor,c_n")


# -- cochar, exponent -------------------------------------------------


def test_cochar_text(capsys):
    code, out, _ = run(capsys, "cochar", "--algebra", "sl2_trivial",
                       "--flavor", "ordinary", "--n", "4")
    assert code == 0
    assert "c_n=6 colength=2" in out
    assert "(3+1): 1" in out
    assert "(2+1+1): 1" in out


def test_cochar_json_range(capsys):
    code, out, _ = run(capsys, "cochar", "--algebra", "heisenberg",
                       "--flavor", "ordinary", "--n", "2..3",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [d["n"] for d in data] == [2, 3]


def test_exponent_text_and_json(capsys):
    code, out, _ = run(capsys, "exponent", "--algebra", "sl2_trivial")
    assert code == 0
    assert out.startswith("d(sl2_trivial) = 3")
    code, out, _ = run(capsys, "exponent", "--algebra", "sl2_trivial",
                       "--format", "json")
    assert json.loads(out)["d"] == 3


# -- dualize ----------------------------------------------------------


def test_dualize_agrees_with_grading(tmp_path, capsys):
    dual_path = tmp_path / "dual.json"
    code, _, _ = run(capsys, "dualize", "--algebra", "gl2_z2_graded",
                     "--out", str(dual_path))
    assert code == 0
    dual = load_document(dual_path)
    assert dual.name == "gl2_z2_graded_dual"
    assert dual.action is not None and dual.grading is None

    _, graded, _ = run(capsys, "codim", "--algebra", "gl2_z2_graded",
                       "--flavor", "graded", "--n", "1..3")
    code, dualed, _ = run(capsys, "codim", "--algebra", str(dual_path),
                          "--flavor", "g_action", "--n", "1..3")
    assert code == 0
    strip = [line.split(",") for line in graded.strip().split("\n")[1:]]
    strip2 = [line.split(",") for line in dualed.strip().split("\n")[1:]]
    assert [r[2] for r in strip] == [r[2] for r in strip2]


def test_dualize_without_grading(capsys):
    code, _, err = run(capsys, "dualize", "--algebra", "sl2_trivial")
    assert code == 2
    assert "no grading" in err


# -- identity ---------------------------------------------------------


def test_identity_true(capsys):
    code, out, _ = run(capsys, "identity", "--algebra",
                       "gl2_z2_action", "--expr",
                       "[x1 + x1^psi, x2 + x2^psi]")
    assert code == 0
    assert out.splitlines()[0] == "IDENTITY: true"


def test_identity_false_with_witness(capsys):
    code, out, _ = run(capsys, "identity", "--algebra", "sl2_trivial",
                       "--expr", "[x1, x2]", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["is_identity"] is False
    assert data["flavor"] == "ordinary"
    assert data["witness"]["substitution"]


def test_identity_parse_error(capsys):
    code, _, err = run(capsys, "identity", "--algebra", "sl2_trivial",
                       "--expr", "[x1,")
    assert code == 2
    assert "error:" in err


def test_identity_unknown_decoration(capsys):
    code, _, err = run(capsys, "identity", "--algebra", "sl2_trivial",
                       "--expr", "[x1^psi, x2]")
    assert code == 2


# -- regev ------------------------------------------------------------


def test_regev_summary_and_poly_file(tmp_path, capsys):
    target = tmp_path / "regev2.json"
    code, out, _ = run(capsys, "regev", "--q", "2", "--out",
                       str(target))
    assert code == 0
    assert "576 terms" in out
    poly, field, sets = load_poly(target)
    assert len(poly) == 576
    assert field == RATIONALS
    assert sets == [(1, 2, 3, 4), (5, 6, 7, 8)]


def test_regev_centrality_line(capsys):
    code, out, _ = run(capsys, "regev", "--q", "1", "--centrality")
    assert code == 0
    assert "central" in out


def test_regev_scale_refusal(capsys):
    code, out, _ = run(capsys, "regev", "--q", "3")
    assert code == 1
    refusal = json.loads(out)
    assert refusal["reason"] == "scale" and refusal["q"] == 3


def test_regev_bad_q(capsys):
    code, _, err = run(capsys, "regev", "--q", "0")
    assert code == 2


# -- lemma-s and verify-alt -------------------------------------------


def test_lemma_s_text_and_poly_out(tmp_path, gl2_instance_file,
                                   capsys):
    poly_path = tmp_path / "sep.json"
    code, out, _ = run(capsys, "lemma-s", "--instance",
                       gl2_instance_file, "--poly-out", str(poly_path))
    assert code == 0
    assert "centre dim t=1, eigencomponents q=1" in out
    assert "invertible" in out
    poly, field, sets = load_poly(poly_path)
    assert list(poly) == [((1, 0),)]
    assert sets == [(1,)]


def test_lemma_s_json(gl2_instance_file, capsys):
    code, out, _ = run(capsys, "lemma-s", "--instance",
                       gl2_instance_file, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["t"] == 1 and data["q"] == 1
    assert data["polynomial"] == "x1"
    assert data["determinant"] == "1"


def test_lemma_s_rejects_false_claims(tmp_path, capsys):
    """The instance file says not-faithful for a faithful module."""
    alg = gl2()
    group = FiniteGroup.trivial()
    from codimlab.symmetry import trivial_action
    units = [_mat([[1, 0], [0, 0]]), _mat([[0, 1], [0, 0]]),
             _mat([[0, 0], [1, 0]]), _mat([[0, 0], [0, 1]])]
    inst = RepresentationInstance(alg, trivial_action(alg), units,
                                  [_mat([[1, 0], [0, 1]])],
                                  faithful=False)
    path = tmp_path / "lying.json"
    path.write_text(dumps_instance(inst), encoding="utf-8")
    code, _, err = run(capsys, "lemma-s", "--instance", str(path))
    assert code == 2
    assert "claims" in err


def test_lemma_s_dimension_cap_refusal(tmp_path, capsys):
    """Heisenberg acting on its 3-dim faithful module: centre is
    nontrivial and the module is too wide for the pipeline."""
    alg = heisenberg()
    from codimlab.symmetry import trivial_action
    x = _mat([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    y = _mat([[0, 0, 0], [0, 0, 1], [0, 0, 0]])
    z = _mat([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    ident = _mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    inst = RepresentationInstance(alg, trivial_action(alg), [x, y, z],
                                  [ident], faithful=True)
    inst.validate()
    path = tmp_path / "heis3.json"
    path.write_text(dumps_instance(inst), encoding="utf-8")
    code, out, _ = run(capsys, "lemma-s", "--instance", str(path))
    assert code == 1
    refusal = json.loads(out)
    assert refusal["reason"] == "scale"
    assert refusal["module_dim"] == 3


def test_verify_alt_regev_on_gl2(tmp_path, gl2_instance_file, capsys):
    poly_path = tmp_path / "regev2.json"
    run(capsys, "regev", "--q", "2", "--out", str(poly_path))
    code, out, _ = run(capsys, "verify-alt", "--poly", str(poly_path),
                       "--instance", gl2_instance_file,
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["alternating"] is True
    assert data["per_set"] == [True, True]
    assert data["is_identity"] is False
    assert data["witness"] == [0, 1, 2, 3, 0, 1, 2, 3]
    assert data["mode"] == "exhaustive"


def test_verify_alt_sets_override(tmp_path, gl2_instance_file,
                                  capsys):
    poly_path = tmp_path / "regev1.json"
    run(capsys, "regev", "--q", "1", "--out", str(poly_path))
    code, out, _ = run(capsys, "verify-alt", "--poly", str(poly_path),
                       "--instance", gl2_instance_file,
                       "--sets", "1,2")
    assert code == 0
    assert "non-identity" in out


def test_verify_alt_missing_files(gl2_instance_file, capsys):
    code, _, err = run(capsys, "verify-alt", "--poly", "/no/such",
                       "--instance", gl2_instance_file)
    assert code == 2
    code, _, err = run(capsys, "verify-alt",
                       "--poly", gl2_instance_file,
                       "--instance", gl2_instance_file)
    assert code == 2  # an instance document is not a polynomial


# -- determinism ------------------------------------------------------


def test_reports_are_byte_identical(tmp_path, capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "codim", "--algebra",
                        "gl2_z2_action", "--flavor", "g_action",
                        "--n", "1..3", "--format", "json")
        outs.append(out)
    assert outs[0] == outs[1]
    texts = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        run(capsys, "fixtures", "--dir", str(d))
        texts.append({p.name: p.read_text() for p in d.glob("*.json")})
    assert texts[0] == texts[1]
