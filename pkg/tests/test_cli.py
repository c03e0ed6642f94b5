import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from sha_predict import __version__
from sha_predict.arith import QuadIrrational
from sha_predict.cli import parse_literal, run

CACHE = Path(__file__).parent / "fixtures" / "lmfdb" / "cache"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--json")
    assert code == 0, err
    return json.loads(out)


@pytest.mark.parametrize("text, value", [
    ("sqrt2-1", QuadIrrational(-1, 1, 1, 2)),
    ("(-1+sqrt5)/2", QuadIrrational(-1, 1, 2, 5)),
    ("(1-3*sqrt(7))/4", QuadIrrational(1, -3, 4, 7)),
    ("2*sqrt8", QuadIrrational(0, 4, 1, 2)),
    ("3/7", Fraction(3, 7)),
    ("-5", Fraction(-5)),
    ("sqrt9-1", Fraction(2)),
])
def test_parse_literal(text, value):
    assert parse_literal(text) == value


@pytest.mark.parametrize("text", ["", "sqrt", "1.5", "sqrt2+sqrt3", "(1+sqrt2", "x", "1 2"])
def test_parse_literal_rejects(text):
    with pytest.raises(ValueError):
        parse_literal(text)


def test_sha_cm_trivial_for_D3():
    env = call_json("sha-cm", "--D", "3", "--f", "1")
    assert env["command"] == "sha-cm" and env["version"] == __version__
    assert env["result"]["sha"]["order"] == "1"
    assert env["inputs"] == {"D": "3", "f": "1", "allow_missing_lambda": False,
                             "conductor_bound": None}


def test_sha_from_cl():
    env = call_json("sha-from-cl", "--divisors", "3")
    assert env["result"]["result"]["divisors"] == ["3", "3"]
    assert env["result"]["order"] == "9"


def test_minkowski():
    assert call_json("minkowski", "--value", "sqrt2-1")["result"]["image"] == "2/5"
    code, out, _ = call("minkowski", "--value", "(-1+sqrt5)/2")
    assert code == 0 and "= 2/3" in out


def test_classgroup_and_order_h():
    env = call_json("classgroup", "--disc", "-3299")
    assert env["result"]["structure"]["divisors"] == ["3", "9"]
    env = call_json("classgroup", "--disc", "136")
    assert (env["result"]["h_narrow"], env["result"]["h_wide"]) == ("4", "2")
    assert call_json("order-h", "--dk", "5", "--f", "8")["result"]["h"] == "2"


def test_latmac_and_scale():
    env = call_json("latmac", "--poly", "x^2-10")
    assert env["result"]["count"] == "2" and env["result"]["similar_pairs"] == []
    env = call_json("scale", "--theta", "sqrt2-1", "--bound", "1")
    assert [p["image"] for p in env["result"]["points"]] == ["0", "2/5", "3/5", "1"]


def test_companion():
    env = call_json("companion", "--coeffs", "1", "--p", "2", "--kind", "Fr")
    assert env["result"]["matrix"] == [["1", "1"], ["-2", "0"]]
    assert env["result"]["charpoly"] == ["1", "-1", "2"] and env["result"]["matches"]


def test_lmfdb_compare_offline():
    args = ("lmfdb-compare", "--D-list", "3,7,23", "--offline", "--cache-dir", str(CACHE),
            "--conductor-bound", "50")
    env = call_json(*args)
    assert env["result"]["summary"] == {"yes": "10", "no": "0", "unknown": "1"}
    assert any("D=23" in w for w in env["warnings"])


def test_json_is_deterministic():
    args = ("lmfdb-compare", "--D-list", "3,7", "--offline", "--cache-dir", str(CACHE), "--json")
    assert call(*args)[1] == call(*args)[1]


@pytest.mark.parametrize("argv, code", [
    (["bogus"], 2),
    (["sha-cm", "--D", "3", "--nope"], 2),
    (["sha-cm", "--D", "4"], 2),
    (["minkowski", "--value", "2"], 2),
    (["sha-from-cl", "--divisors", "2,2"], 2),
    (["latmac", "--poly", "x^2-4"], 2),
    (["sha-cm", "--D", "23", "--conductor-bound", "20"], 3),
    (["classgroup", "--disc", "-3299", "--max-class-number", "5"], 3),
    (["lmfdb-compare", "--D-list", "11", "--offline", "--cache-dir", str(CACHE)], 4),
    (["sha-cm", "--D", "7"], 0),
])
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_quiet_suppresses_warnings():
    args = ("sha-cm", "--D", "23", "--conductor-bound", "20", "--allow-missing-lambda")
    assert "warning" in call(*args)[2]
    assert call(*args, "--quiet")[2] == ""


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sha_predict", "sha-from-cl", "--divisors", "6"],
                          capture_output=True, text=True, check=True)
    assert "order 18" in proc.stdout
