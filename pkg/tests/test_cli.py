import json
import random
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from chernkit import serialize as ser
from chernkit.blowup import ArrangementElement, ArrangementRing, main_construction
from chernkit.chern_ops import ChernVector, FormalChernModel, annihilate_schedule
from chernkit.cli import main, run
from chernkit.poly import Poly
from chernkit.symfunc import chern_ring
from chernkit.toychow import parse_ring


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, _ = call(capsys, *argv, "--json")
    return code, json.loads(out)


# -- documented examples ----------------------------------------------------------

def test_kappa(capsys):
    code, out, _ = call(capsys, "kappa", "--partition", "2:1")
    assert code == 0 and out.strip() == "-2"
    code, doc = call_json(capsys, "kappa", "--partition", "1:4,3:1", "--oracle")
    assert code == 0 and doc["kappa"] == doc["oracle"] == 7


def test_stch(capsys):
    code, doc = call_json(capsys, "stch", "--d", "4", "--p", "2")
    assert code == 0
    assert doc["decomposable"] is False and doc["form"] == {"l": 1, "t": 2}
    code, doc = call_json(capsys, "stch", "--d", "3", "--p", "2", "--express")
    assert doc["identity"]["text"] == "c3 = 1*(P^1(c2) - (c1*c2))"
    code, out, err = call(capsys, "stch", "--d", "4", "--p", "2", "--express")
    assert code == 1 and "NotDecomposable" in err


def test_schedule_range_exceeded(capsys):
    code, out, err = call(capsys, "schedule", "--r", "2", "--p", "3", "--m", "1", "--dim", "6")
    assert code == 1 and "RangeExceeded" in err
    code, doc = call_json(capsys, "schedule", "--r", "2", "--p", "3", "--m", "1", "--dim", "6")
    assert code == 1 and doc["status"] == "error" and doc["error_code"] == "RangeExceeded"


# -- exit codes ----------------------------------------------------------------

@pytest.mark.parametrize("argv,flag", [
    (["stch", "--d", "x", "--p", "2"], "--d"),
    (["kappa", "--partition", "zz"], "--partition"),
    (["toy", "--ring", "Q3"], "--ring"),
    (["mi-search", "--r", "1", "--d", "2"], "--p"),
    (["schedule", "--r", "2"], "--p"),
])
def test_usage_errors_name_the_flag(argv, flag):
    result, _ = run(argv)
    assert result.exit_code == 2 and result.error_code == "UsageError"
    assert flag in result.diagnostics[0]


def test_unknown_subcommand():
    result, _ = run(["frobnicate"])
    assert result.exit_code == 2


@pytest.mark.parametrize("argv,code", [
    (["stch", "--d", "5", "--p", "4"], "NotPrime"),
    (["mi-search", "--r", "1", "--d", "3", "--p", "3"], "PreconditionViolated"),
    (["steenrod", "--partition", "1:1", "--p", "6"], "NotPrime"),
    (["toy", "--ring", "P2", "--pair", "h1", "h1^2"], "DegreeMismatch"),
    (["toy", "--ring", "P2", "--steenrod", "h1", "--p", "2", "--m", "2"], "WrongCoefficients"),
])
def test_domain_errors(argv, code):
    result, _ = run(argv)
    assert result.exit_code == 1 and result.error_code == code


# -- subcommands ----------------------------------------------------------------

def test_mi_search(capsys):
    code, doc = call_json(capsys, "mi-search", "--r", "2", "--d", "3", "--p", "5")
    assert doc["multiset"] == [1, 1, 2] and doc["sum_r"] == 1 and doc["sum_d"] == 0


def test_steenrod(capsys):
    code, doc = call_json(capsys, "steenrod", "--partition", "1:1", "--p", "2", "--k", "1")
    assert doc["terms"] == [{"partition": "2:1", "degree": 2, "coefficient": 1}]
    code, out, _ = call(capsys, "steenrod", "--partition", "1:2", "--p", "2")
    assert out.splitlines() == ["1 * s[1:2]", "1 * s[1:1,2:1]", "1 * s[2:2]"]


def test_blowup(capsys):
    code, doc = call_json(capsys, "blowup", "--n", "3", "--dim-cap", "2", "--verify-all")
    assert code == 0 and doc["ok"] and doc["effective_rank"] == 2
    assert doc["sweep"]["families"] == 19 and not doc["sweep"]["per_ob_failures"]
    mc = main_construction(3, 2)
    assert [ser.arrangement_from_json(b) for b in doc["b"]] == mc.b


def test_toy(capsys):
    assert call(capsys, "toy", "--ring", "P1xP1", "--pair", "h1", "h2")[1].strip() == "1"
    assert call(capsys, "toy", "--ring", "P2", "--p", "2", "--num-trivial", "h1")[1].strip() == "no"
    assert call(capsys, "toy", "--ring", "P2", "--p", "3", "--num-trivial", "3*h1")[1].strip() == "yes"
    code, doc = call_json(capsys, "toy", "--ring", "P2", "--padic", "3*h1", "--p", "3")
    assert doc["verdicts"] == [True, False, False, False]
    code, doc = call_json(capsys, "toy", "--ring", "P2xP2xP1")
    assert code == 0 and doc["perfect"]
    code, doc = call_json(capsys, "toy", "--ring", "P3", "--p", "2", "--steenrod", "h1^2")
    assert doc["text"] == "h1^2"  # (h + h^2)^2 = h^2 mod (2, h^4)
    code, doc = call_json(capsys, "toy", "--ring", "P3", "--p", "2", "--steenrod", "h1")
    assert doc["text"] == "h1 + h1^2"


def test_dim4(capsys):
    code, out, _ = call(capsys, "dim4")
    assert code == 0 and out.count("yes") == 3


def test_verify_suites(capsys):
    code, doc = call_json(capsys, "verify", "--suite", "modp")
    assert code == 0 and doc["passed"] and all(c["suite"] == "modp" for c in doc["checks"])


def test_verify_all_parallel_matches_serial(capsys):
    _, serial = call_json(capsys, "verify", "--suite", "all")
    _, parallel = call_json(capsys, "verify", "--suite", "all", "--jobs", "3")
    assert serial == parallel and serial["passed"]


# -- round trips ------------------------------------------------------------------

def test_toy_chern_into_adams(tmp_path, capsys):
    code, doc = call_json(capsys, "toy", "--ring", "P2xP1", "--p", "5", "--chern", "h1;h1+h2;2*h2")
    assert code == 0
    path = tmp_path / "v.json"
    path.write_text(json.dumps(doc))
    code, out = call_json(capsys, "adams", "--chern", str(path), "--multiset", "1,2", "--reps", "2")
    assert code == 0
    path.write_text(json.dumps(out))
    code, again = call_json(capsys, "adams", "--chern", str(path), "--multiset", "1")
    assert again == out


def test_schedule_roundtrip_and_apply(tmp_path, capsys):
    code, sched = call_json(capsys, "schedule", "--r", "2", "--p", "3", "--m", "1", "--dim", "5")
    spath = tmp_path / "s.json"
    spath.write_text(json.dumps(sched))
    code, loaded = call_json(capsys, "schedule", "--load", str(spath))
    assert loaded == sched
    M = FormalChernModel(2, 5, 3)
    vpath = tmp_path / "v.json"
    vpath.write_text(json.dumps(ser.vector_to_json(M.universal_vector())))
    code, res = call_json(capsys, "schedule", "--load", str(spath), "--apply", str(vpath))
    assert code == 0 and res["report"]["ok"] and res["report"]["cr_preserved"]
    vpath.write_text(json.dumps(res["result"]))
    code, again = call_json(capsys, "schedule", "--load", str(spath), "--apply", str(vpath))
    assert code == 0 and again["report"]["ok"]


def test_apply_rejects_foreign_ring(tmp_path):
    path = tmp_path / "v.json"
    R = chern_ring(3, 3, top_degree=3)
    path.write_text(json.dumps(ser.vector_to_json(ChernVector(R, tuple(R.gens())))))
    result, _ = run(["schedule", "--r", "2", "--p", "3", "--m", "1", "--dim", "5", "--apply", str(path)])
    assert result.exit_code == 2 and "--apply" in result.diagnostics[0]


def test_toy_steenrod_output_feeds_back(tmp_path, capsys):
    code, doc = call_json(capsys, "toy", "--ring", "P3", "--p", "2", "--steenrod", "h1")
    path = tmp_path / "a.json"
    path.write_text(json.dumps(doc))
    code, again = call_json(capsys, "toy", "--ring", "P3", "--p", "2", "--steenrod", f"@{path}")
    # h + h^2 maps to h + 2h^2 + 2h^3 + h^4, which is h mod (2, h^4)
    assert code == 0 and again["text"] == "h1"


def test_bad_files(tmp_path):
    result, _ = run(["adams", "--chern", str(tmp_path / "missing.json"), "--multiset", "1"])
    assert result.exit_code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    result, _ = run(["schedule", "--load", str(bad)])
    assert result.exit_code == 2


@given(st.integers(0, 2**32), st.sampled_from([None, 5, 9]))
def test_poly_and_vector_roundtrip(seed, modulus):
    rng = random.Random(seed)
    D = rng.randrange(1, 5)
    R = chern_ring(D, modulus, top_degree=D)
    classes = []
    for d in range(1, D + 1):
        f = R.zero()
        for mono in R.monomials(d):
            f = f + Poly(R, {mono: rng.randrange(-9, 10)})
        classes.append(f)
    v = ChernVector(R, tuple(classes))
    doc = json.loads(json.dumps(ser.vector_to_json(v)))
    assert ser.vector_from_json(doc) == v
    for f in classes:
        assert ser.poly_from_json(json.loads(json.dumps(ser.poly_to_json(f)))) == f


def test_toy_ring_descriptor_forms():
    X = parse_ring("P2xP1", 3, 2)
    assert ser.ring_from_json({"factors": [2, 1], "coefficients": {"p": 3, "m": 2}}) == X.ring
    assert ser.ring_from_json(ser.ring_to_json(X.ring)) == X.ring


@given(st.integers(0, 2**32))
def test_arrangement_roundtrip(seed):
    rng = random.Random(seed)
    R = ArrangementRing(rng.randrange(1, 5), rng.choice([None, 7]), rng.choice([None, 2]))
    subsets = list(range(1, 1 << R.N))
    terms = {tuple(rng.choice(subsets) for _ in range(rng.randrange(0, 4))): rng.randrange(-5, 6) for _ in range(4)}
    x = ArrangementElement(R, terms)
    assert ser.arrangement_from_json(json.loads(json.dumps(ser.arrangement_to_json(x)))) == x


@pytest.mark.parametrize("r,p,m,D,mode", [(2, 3, 1, 5, "full"), (2, 5, 2, 5, "adamsOnly"), (3, 5, 1, 14, "full")])
def test_schedule_serialization(r, p, m, D, mode):
    s = annihilate_schedule(r, p, m, D, mode)
    assert ser.schedule_from_json(json.loads(json.dumps(ser.schedule_to_json(s)))) == s


def test_determinism_across_processes():
    argv = [sys.executable, "-m", "chernkit", "schedule", "--r", "2", "--p", "3", "--m", "1", "--dim", "5",
            "--universal", "--json"]
    outs = {subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)}
    env_seed = {subprocess.run(argv, capture_output=True, check=True,
                               env={"PYTHONHASHSEED": str(k), "PATH": ""}).stdout for k in (1, 2)}
    assert len(outs) == 1 and env_seed == outs
