import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from helpers import F
from wittlab import derivations as dv
from wittlab.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv, "--json")
    return code, json.loads(out)


@pytest.mark.parametrize(
    "name, argv",
    [
        ("bracket", ["bracket", "--sig", "W:1,0", "E[0]X[0]D1", "E[0]X[1]D1"]),
        ("string_number", ["string-number", "--sig", "W:1,0", "E[1]X[0]D1 + E[2]X[1]D1 + E[2]X[0]D1"]),
        ("qtorus_bracket", ["qtorus", "bracket", "--q", "2", "1", "0", "0", "1"]),
    ],
)
def test_golden(name, argv):
    code, out, _ = run(*argv)
    assert code == 0
    assert out == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")


def test_envelope():
    code, payload = run_json("bracket", "--sig", "W:1,0", "D1", "X[1]D1")
    assert code == 0
    assert payload == {
        "schema_version": "witt-lab/1",
        "command": "bracket",
        "signature": "W:1,0",
        "result": "E[0]X[0]D1",
    }


def test_literal_flag():
    _, out, _ = run("bracket", "--sig", "W:0,2", "X[0,1]D1", "X[1,0]D2", "--literal")
    assert out.strip() == "X[0,1]D2"
    _, out, _ = run("bracket", "--sig", "W:0,2", "X[0,1]D1", "X[1,0]D2")
    assert out.strip() == "-1 X[1,0]D1 + X[0,1]D2"


class TestExitCodes:
    def test_domain_error(self):
        code, out, err = run("qtorus", "center", "--q", "1", "--json")
        assert code == 1
        assert json.loads(out)["error"]["code"] == "InvalidQ"
        assert "InvalidQ" in err

    def test_syntax_error(self):
        code, payload = run_json("bracket", "--sig", "W:1,0", "X[1", "D1")
        assert code == 1 and payload["error"]["code"] == "SyntaxError"
        assert "result" not in payload

    def test_membership(self):
        code, payload = run_json("bracket", "--sig", "Wstar:1,0", "X[-1]D1", "D1")
        assert code == 1 and payload["error"]["code"] == "MembershipViolation"

    def test_usage(self):
        with pytest.raises(SystemExit) as exc:
            run("no-such-command")
        assert exc.value.code == 2

    def test_bad_signature(self):
        with pytest.raises(SystemExit) as exc:
            run("bracket", "--sig", "W:1", "D1", "D1")
        assert exc.value.code == 2


class TestCommands:
    def test_act(self):
        _, out, _ = run("act", "--sig", "W:1,0", "D1", "X[3]")
        assert out.strip() == "3 E[0]X[2]"

    def test_jacobi(self):
        _, out, _ = run("jacobi", "--sig", "W:1,0", "D1", "X[1]D1", "E[1]X[2]D1")
        assert out.strip() == "0"

    def test_grade(self):
        _, out, _ = run("grade", "--sig", "W:1,0", "E[1]X[1]D1 + X[1]D1")
        assert out == "(1): E[1]X[1]D1\n(0): E[0]X[1]D1\n"

    def test_order(self):
        _, out, _ = run("order", "--sig", "W:1,0", "E[2]D1", "E[1]X[5]D1")
        assert out.strip() == "GT"

    def test_lp(self):
        _, out, _ = run("lp", "--sig", "W:1,0", "E[1]X[3]D1 + E[1]X[1]D1", "--alpha", "1", "--u", "1")
        assert out.strip() == "3"

    def test_split_zero(self):
        code, payload = run_json("split-zero", "--sig", "W:1,1", "X[1,0]D1 + X[1,0]D2")
        assert code == 0
        assert payload["result"] == {"witt": "E[0]X[1,0]D1", "abelian": "E[0]X[1,0]D2"}

    def test_closure(self):
        code, payload = run_json("closure", "--sig", "W:1,0", "E[1]X[1]D1")
        assert code == 0
        assert payload["result"]["reached_partials"] == [1]
        assert payload["result"]["dimension"] == 15

    def test_closure_wplus_box(self, tmp_path):
        gens = tmp_path / "gens.txt"
        gens.write_text("E[1]X[0]D1\n", encoding="utf-8")
        code, payload = run_json(
            "closure", "--sig", "Wplus:1,0", f"@{gens}", "--exp-box=0:3", "--poly-box=0:3", "--verbose"
        )
        assert code == 0
        assert payload["result"]["reached_partials"] == []
        assert len(payload["result"]["members"]) == payload["result"]["dimension"]

    def test_closure_outside_box(self):
        code, payload = run_json("closure", "--sig", "W:1,0", "E[9]D1")
        assert code == 1 and payload["error"]["code"] == "GeneratorOutsideBox"

    def test_lemma1(self):
        _, out, _ = run("lemma1", "--sig", "W:1,0", "D1")
        assert out == "s = E[0]X[2]D1\n[s, l] = -2 E[0]X[1]D1\n"

    def test_lemma2(self):
        _, out, _ = run("lemma2", "--sig", "W:1,0", "E[1]X[2]D1")
        assert out.splitlines()[-1] == "= 2 E[1]X[2]D1  (case II, coefficient 2)"
        code, payload = run_json("lemma2", "--sig", "W:1,0", "X[2]D1")
        assert code == 1 and payload["error"]["code"] == "NoExponentialPart"

    def test_torus_check(self):
        _, out, _ = run("torus-check", "--sig", "W:1,0", "X[1]D1", "--exp-box=-1:1")
        assert out.strip() == "not diagonal: [E[-1]X[0]D1, candidate] = E[-1]X[1]D1 + E[-1]X[0]D1"

    def test_ideal_check(self):
        code, payload = run_json(
            "ideal-check", "--sig", "Wplus:1,0", "--exp-min", "1:1", "--exp-box=0:3", "--poly-box=0:3"
        )
        assert code == 0 and payload["result"]["ideal"] is True

    def test_antideriv(self):
        _, out, _ = run("antideriv", "E[2]X[1]")
        assert out.strip() == "1/2 E[2]X[1] - 1/4 E[2]X[0]"

    def test_qtorus(self):
        _, out, _ = run("qtorus", "center", "--q", "3", "--bound", "3")
        assert out.strip() == "[(0,0)]"
        _, out, _ = run("qtorus", "toral", "--q", "1/2")
        assert out.strip() == "[]"
        _, out, _ = run("qtorus", "theta", "--q", "2", "--count", "50")
        assert out.strip() == "50 pairs, 0 defects"

    def test_selftest(self):
        code, out, _ = run("selftest")
        assert code == 0
        assert out.strip().endswith("10 passed, 0 failed")


def test_derivation_table_json_round_trip(tmp_path):
    trunc = dv.window(-2, 2, 2)
    table = dv.reconstruct_derivation(F("E[1]X[0]"), 1, Fraction(1, 2), trunc)
    path = tmp_path / "table.json"
    path.write_text(json.dumps(table.to_dict()), encoding="utf-8")
    code, payload = run_json("derive-decompose", str(path))
    assert code == 0
    assert {k: payload["result"][k] for k in ("g", "c", "d", "residual")} == {
        "g": "E[1]X[0]", "c": "1", "d": "1/2", "residual": "0"
    }
    code, payload = run_json("derive-verify", str(path))
    assert code == 0 and payload["result"]["defects"] == []

    bad = table.with_image((dv.window(0, 0, 0).basis_elements(dv.WSTAR_1_0)[0]), dv.D + dv.D)
    path.write_text(json.dumps(bad.to_dict()), encoding="utf-8")
    code, payload = run_json("derive-verify", str(path))
    assert payload["result"]["defects"]


def test_missing_table_file(tmp_path):
    code, _, err = run("derive-verify", str(tmp_path / "nope.json"))
    assert code == 1
