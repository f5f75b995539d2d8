import json
from fractions import Fraction

import jsonschema
import pytest
from conftest import V2, V3, polys
from hypothesis import given

from critcert.cli import main
from critcert.parser import ParseError, infer_variables, parse_point, parse_polynomial, parse_rational
from critcert.report import load_schema, rational_from_doc
from critcert.ring import Poly

x1, x2 = Poly.gens(V2)
RUNNING = "x1^2 + (1 - x1)*x2^4"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestParser:
    def test_running_example(self):
        assert parse_polynomial(RUNNING, V2) == x1**2 + (1 - x1) * x2**4

    def test_zero(self):
        assert parse_polynomial("0", V2).is_zero()

    def test_implicit_multiplication(self):
        with pytest.raises(ParseError) as exc:
            parse_polynomial("x1 x2", V2)
        assert exc.value.position == 3

    def test_undeclared_variable(self):
        with pytest.raises(ParseError, match="y"):
            parse_polynomial("x1 + y", V2)

    def test_zero_denominator(self):
        with pytest.raises(ParseError):
            parse_polynomial("x1/0", V2)

    def test_rationals_and_unary_minus(self):
        assert parse_polynomial("-3/4*x1^2 - -x2", V2) == Fraction(-3, 4) * x1**2 + x2
        # unary minus binds looser than the power
        assert parse_polynomial("-x1^2", V2) == -(x1**2)

    def test_nested_parentheses_and_powers(self):
        assert parse_polynomial("((x1 - x2))^3", V2) == (x1 - x2) ** 3
        assert parse_polynomial("(x1+1)^0", V2) == Poly.constant(V2, 1)

    @pytest.mark.parametrize("bad", ["", "x1 +", "(x1", "x1^-2", "x1^x2", "x1 $ x2", "x1^1/2"])
    def test_syntax_errors(self, bad):
        with pytest.raises(ParseError):
            parse_polynomial(bad, V2)

    def test_infer_variables(self):
        assert infer_variables("x10*x2 + x1") == ["x1", "x2", "x10"]

    def test_rational_and_point(self):
        assert parse_rational("7/18") == Fraction(7, 18)
        assert parse_rational("0.25") == Fraction(1, 4)
        assert parse_point("1, -1/2", 2) == (1, Fraction(-1, 2))
        with pytest.raises(ParseError):
            parse_point("1,2,3", 2)


@given(polys(V2, 5, 4))
def test_print_parse_round_trip(p):
    q = parse_polynomial(str(p), V2)
    assert q == p
    assert parse_polynomial(str(q), V2) == q


@given(polys(V3, 4, 3))
def test_print_parse_round_trip_3(p):
    assert parse_polynomial(str(p), V3) == p


class TestClassifyCommand:
    def test_running_example(self, capsys):
        code, out, _ = run(capsys, "classify", "--poly", RUNNING, "--vars", "x1,x2", "--iso-radius", "1")
        assert code == 0
        assert "verdict: local_minimizer" in out

    def test_quartic(self, capsys):
        code, out, _ = run(capsys, "classify", "--poly", "x1^2+x2^4+x3^4-4*x1*x2*x3", "--vars", "x1,x2,x3")
        assert code == 0 and "verdict: saddle_point" in out

    def test_fast_path(self, capsys):
        code, out, _ = run(capsys, "classify", "--poly", "x1^2+x2^2", "--vars", "x1,x2", "--format", "json")
        doc = json.loads(out)
        assert code == 0
        assert doc["verdict"] == "local_minimizer" and doc["degenerate"] is False

    def test_json_schema_and_lossless_rationals(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        code, out, _ = run(
            capsys, "classify", "--poly", RUNNING, "--iso-radius", "1",
            "--test-radius-sq", "7/18", "--format", "json", "--out", str(path),
        )
        assert code == 0 and "local_minimizer" in out
        doc = json.loads(path.read_text())
        jsonschema.validate(doc, load_schema())
        m = rational_from_doc(doc["m"]["lo"])
        assert Fraction(doc["m"]["lo"]["exact"]) == m
        assert abs(float(m) - doc["m"]["lo"]["decimal"]) < 1e-12
        assert rational_from_doc(doc["test_radius"]["r_squared"]) == Fraction(7, 18)
        assert doc["test_radius"]["r"] is None
        assert 0.12 <= float(m) <= 0.16

    def test_json_for_every_path(self, capsys):
        schema = load_schema()
        for poly, extra in [
            ("x1^2-x2^2", []),
            ("(x1-x2)^2*(3-x1)", []),
            ("x1^2+x2^2", ["--no-fast-path"]),
            ("(x1-1)^2+x2^4", ["--point", "1,0"]),
        ]:
            code, out, _ = run(capsys, "classify", "--poly", poly, "--format", "json", *extra)
            assert code == 0
            jsonschema.validate(json.loads(out), schema)

    def test_controls_agree_with_and_without_fast_path(self, capsys):
        for poly, verdict in [("x1^2+x2^2", "local_minimizer"), ("-x1^2-x2^4", "local_maximizer")]:
            for extra in ([], ["--no-fast-path"]):
                # a leading minus needs the --poly=... form
                code, out, _ = run(capsys, "classify", f"--poly={poly}", *extra)
                assert code == 0 and f"verdict: {verdict}" in out

    def test_seed_environment_override(self, capsys, monkeypatch):
        monkeypatch.setenv("CRITCERT_SEED", "42")
        code, out, _ = run(capsys, "classify", "--poly", "x1^2+x2^2", "--no-fast-path", "--format", "json")
        assert code == 0 and json.loads(out)["seed"] == 42
        monkeypatch.setenv("CRITCERT_SEED", "abc")
        code, _, err = run(capsys, "classify", "--poly", "x1^2+x2^2")
        assert code == 1 and "CRITCERT_SEED" in err


class TestExitCodes:
    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "classify", "--poly", "x1 x2")
        assert code == 1 and "error" in err

    def test_not_critical(self, capsys):
        code, _, _ = run(capsys, "classify", "--poly", "x1^2+x2^2", "--point", "1,0")
        assert code == 1

    def test_missing_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["classify"])
        assert exc.value.code == 1

    def test_radius_out_of_range(self, capsys):
        code, _, _ = run(capsys, "classify", "--poly", RUNNING, "--iso-radius", "1", "--test-radius", "2")
        assert code == 1

    def test_certification_failure(self, capsys):
        # the origin lies on the complex critical curve x1^2 + x2^2 = 0
        code, _, err = run(
            capsys, "classify", "--poly", "3*(x1^2+x2^2)^2 - 2*(x1^2+x2^2)^3", "--no-factor-reduction"
        )
        assert code == 2 and "certification failed" in err

    def test_plot_needs_two_variables(self, capsys, tmp_path):
        code, _, _ = run(capsys, "plot", "--poly", "x1^2+x2^4+x3^4", "--out", str(tmp_path / "p.svg"))
        assert code == 1


class TestSubcommands:
    def test_faithful_radius(self, capsys):
        code, out, _ = run(capsys, "faithful-radius", "--poly", RUNNING, "--iso-radius", "1", "--format", "json")
        assert code == 0
        R = rational_from_doc(json.loads(out)["R"])
        assert Fraction(74, 100) <= R <= Fraction(779, 1000)

    def test_isolation_radius(self, capsys):
        code, out, _ = run(capsys, "isolation-radius", "--poly", "x1^2-x1^3+x2^2")
        assert code == 0 and "zero-dim-critical" in out

    def test_tangency(self, capsys):
        code, out, _ = run(capsys, "tangency", "--poly", RUNNING, "--vars", "x1,x2")
        assert code == 0
        assert out.strip() == "4*x1^2*x2^3 - x2^5 - 4*x1*x2^3 + 2*x1*x2"

    def test_oracle(self, capsys):
        code, out, _ = run(capsys, "oracle", "--poly", RUNNING, "--radius", "283/100", "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["verdict"] == "saddle_certified"
        assert rational_from_doc(doc["min_seen"]) <= -12

    def test_plot(self, capsys, tmp_path):
        out_path = tmp_path / "t.svg"
        code, out, _ = run(capsys, "plot", "--poly", RUNNING, "--iso-radius", "1", "--out", str(out_path))
        assert code == 0
        svg = out_path.read_text()
        assert svg.count("<path") == 1 and svg.count("<circle") == 1
        assert svg.lstrip().startswith("<svg") or svg.lstrip().startswith("<?xml")
