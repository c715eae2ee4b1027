"""``chernkit`` command line.

Every subcommand builds a :class:`CommandResult`.  Human output prints normal
forms in the fixed monomial order of :meth:`Poly.sorted_terms`; ``--json``
prints only the payload (or, on failure, the error record) with sorted keys.
Exit codes: 0 ok, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from . import serialize as ser
from .blowup import good_families, main_construction, principal, verify_lem_dva, verify_per_ob
from .checks import SUITES, run_suites
from .chern_ops import (
    AdamsCombination, FormalChernModel, adams_combination, annihilate_schedule, apply_schedule, dim4_identity,
    express_cd_via_steenrod, mi_search, steenrod_component, steenrod_total_on_class,
)
from .chern_ops.vector import CoefficientSpec
from .errors import CertificateFailure, ChernkitError, ParseError, PreconditionViolated
from .modp import is_l_power_form, stch_decomposable
from .poly import Poly
from .symfunc import Partition, kappa_bruteforce, kappa_formula
from .toychow import (
    ToyChowRing, chern_of_line_sum, degree_pairing, is_num_trivial, is_permutation_matrix, num_trivial_padic,
    pairing_matrix, parse_ring, steenrod_total_on_ring,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    code = "UsageError"


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    diagnostics: list[str] = field(default_factory=list)
    error_code: str | None = None
    human: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if self.status == "ok":
            return EXIT_OK
        return EXIT_USAGE if self.error_code == UsageError.code else EXIT_DOMAIN

    def to_json(self) -> dict:
        out = {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}
        if self.error_code is not None:
            out["error_code"] = self.error_code
        return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _flag(name: str, fn, value):
    """Parse a flag value, reporting the flag on failure."""
    try:
        return fn(value)
    except (ParseError, ValueError) as exc:
        raise UsageError(f"argument {name}: {exc}") from None


def _ok(payload, human) -> CommandResult:
    return CommandResult("ok", payload, human=list(human))


def _fail(code: str, message: str, payload=None, human=()) -> CommandResult:
    return CommandResult("error", payload, [message], code, list(human))


# ---------------------------------------------------------------- handlers

def cmd_kappa(a) -> CommandResult:
    r = _flag("--partition", Partition.parse, a.partition)
    k = kappa_formula(r)
    payload = {"partition": str(r), "degree": r.degree, "inner_degree": r.inner_degree, "kappa": k}
    human = [str(k)]
    if a.oracle:
        b = kappa_bruteforce(r)
        payload["oracle"] = b
        payload["agree"] = b == k
        human.append(f"brute force: {b} ({'agrees' if b == k else 'DISAGREES'})")
        if b != k:
            return _fail(CertificateFailure.code, f"formula {k} != brute force {b}", payload, human)
    return _ok(payload, human)


def cmd_stch(a) -> CommandResult:
    res = stch_decomposable(a.d, a.p)
    payload: dict[str, Any] = {"d": a.d, "p": a.p, "decomposable": res.decomposable}
    if res.decomposable:
        payload["witness"] = res.witness
        human = [f"decomposable: yes (least k = {res.witness})"]
    else:
        l, t = is_l_power_form(a.d, a.p)
        payload["form"] = {"l": l, "t": t}
        human = [f"decomposable: no ({a.d} = {l}*{a.p}^{t})"]
    if a.express:
        ident = express_cd_via_steenrod(a.d, a.p)
        text = f"c{a.d} = {ident.alpha_inv}*(P^{ident.k}(c{ident.source_degree}) - ({ident.decomposable}))"
        payload["identity"] = {
            "k": ident.k, "alpha": ident.alpha, "alpha_inv": ident.alpha_inv,
            "source_degree": ident.source_degree, "target": str(ident.target),
            "decomposable": ser.poly_to_json(ident.decomposable), "text": text,
        }
        human.append(text)
    return _ok(payload, human)


def cmd_mi_search(a) -> CommandResult:
    ms = mi_search(a.r, a.d, a.p)
    payload = {
        "r": a.r, "d": a.d, "p": a.p, "multiset": list(ms), "size": len(ms),
        "sum_r": sum(pow(m, a.r, a.p) for m in ms) % a.p, "sum_d": sum(pow(m, a.d, a.p) for m in ms) % a.p,
    }
    return _ok(payload, ["{" + ",".join(map(str, ms)) + "}"])


def _multiset(text: str) -> tuple[int, ...]:
    items = tuple(int(s) for s in text.replace(" ", "").split(",") if s)
    if not items:
        raise ValueError("empty multiset")
    return items


def cmd_adams(a) -> CommandResult:
    v = _flag("--chern", lambda f: ser.vector_from_json(ser.load(f)), a.chern)
    spec = CoefficientSpec.of(v.ring)
    if spec.p is None:
        raise PreconditionViolated("Adams combinations are applied with modular coefficients")
    terms = _flag("--multiset", _multiset, a.multiset)
    comb = _flag("--multiset", lambda t: AdamsCombination(t, spec.p, a.reps), tuple(m % spec.p for m in terms))
    w = adams_combination(v, comb)
    return _ok(ser.vector_to_json(w), [f"c{d} = {c}" for d, c in enumerate(w.classes, start=1)])


def cmd_steenrod(a) -> CommandResult:
    r = _flag("--partition", Partition.parse, a.partition)
    coeffs = steenrod_total_on_class(r, a.p) if a.k is None else steenrod_component(r, a.p, a.k)
    payload = {"partition": str(r), "p": a.p, "k": a.k, "terms": ser.partition_terms_to_json(coeffs)}
    human = [f"{t['coefficient']} * s[{t['partition']}]" for t in payload["terms"]] or ["0"]
    return _ok(payload, human)


def _blowup_sweep(N: int, cap: int | None, modulus: int | None) -> dict:
    fams = good_families(N)
    per_ob_fail = []
    pairs = 0
    for i, U in enumerate(fams):
        for W in fams[i:]:
            pairs += 1
            res = verify_per_ob(U, W, modulus=modulus)
            if not res.passed:
                per_ob_fail.append(f"{U} / {W}: {res.detail} at {res.witness_str()}")
    singles = [principal(N, [i]) for i in range(1, N + 1)]
    colls = 0
    dva_fail = []
    for k in range(1, N + 1):
        for coll in combinations(singles, k):
            colls += 1
            res = verify_lem_dva(list(coll), modulus=modulus, dimension_cap=cap)
            if not res.passed:
                dva_fail.append(f"{[str(f) for f in coll]}: {res.detail}")
    return {
        "families": len(fams), "pairs": pairs, "per_ob_failures": per_ob_fail,
        "collections": colls, "lem_dva_failures": dva_fail,
    }


def cmd_blowup(a) -> CommandResult:
    mc = main_construction(a.n, a.dim_cap, a.modulus)
    payload: dict[str, Any] = {
        "N": a.n, "dimension_cap": a.dim_cap, "modulus": a.modulus,
        "chern_equal": mc.chern_equal, "cap_vanishing": mc.cap_vanishing,
        "top_is_chain_product": mc.top_is_chain_product, "effective_rank": mc.effective_rank, "ok": mc.ok,
        "b": [ser.arrangement_to_json(x) for x in mc.b],
        "pullbacks": [ser.arrangement_to_json(x) for x in mc.pullbacks],
    }
    human = [f"b{j} = {x}" for j, x in enumerate(mc.b, start=1)]
    human.append(f"elementary symmetric functions agree: {'yes' if mc.chern_equal else 'NO'}")
    human.append(f"b_j = 0 above the cap: {'yes' if mc.cap_vanishing else 'NO'}")
    human.append(f"effective rank: {mc.effective_rank}")
    problems = [] if mc.ok else ["main construction check failed"]
    if a.verify_all:
        sweep = _blowup_sweep(a.n, a.dim_cap, a.modulus)
        payload["sweep"] = sweep
        human.append(f"per-object identity: {sweep['pairs'] - len(sweep['per_ob_failures'])}/{sweep['pairs']} pairs")
        human.append(
            f"reshuffling identity: {sweep['collections'] - len(sweep['lem_dva_failures'])}/{sweep['collections']}"
            " principal collections"
        )
        problems += sweep["per_ob_failures"] + sweep["lem_dva_failures"]
    if problems:
        return _fail(CertificateFailure.code, problems[0], payload, human)
    return _ok(payload, human)


def cmd_schedule(a) -> CommandResult:
    if a.load:
        s = _flag("--load", lambda f: ser.schedule_from_json(ser.load(f)), a.load)
    else:
        missing = [f for f in ("r", "p", "m", "dim") if getattr(a, f) is None]
        if missing:
            raise UsageError(f"argument --{missing[0]}: required unless --load is given")
        s = annihilate_schedule(a.r, a.p, a.m, a.dim, "adamsOnly" if a.adams_only else "full")
    sched = ser.schedule_to_json(s)
    human = [f"schedule r={s.r} p={s.p} m={s.m} D={s.D} mode={s.mode}"]
    for mv in sched["moves"]:
        data = mv["data"]
        if mv["kind"] == "adams":
            what = "{" + ",".join(map(str, data["terms"])) + "}" + (
                f" x{data['repetitions']}" if data["repetitions"] > 1 else "")
        elif mv["kind"] == "steenrod":
            what = data["identity"]
        else:
            what = data["reason"]
        human.append(f"  d={mv['degree']} {mv['kind']}: {what}")
    if not (a.apply or a.universal):
        return _ok(sched, human)

    model = FormalChernModel(s.r, s.D, s.p, s.m, steenrod_closed=s.m == 1)
    if a.apply:
        v = _flag("--apply", lambda f: ser.vector_from_json(ser.load(f)), a.apply)
        if v.ring != model.ring:
            raise UsageError(
                f"argument --apply: vector must live in the Chern ring c1..c{s.D} mod {s.p ** s.m} "
                f"truncated at degree {s.D}"
            )
    else:
        v = model.universal_vector()
    w, report = apply_schedule(v, s, model, strict=False)
    payload = {
        "schedule": sched,
        "result": ser.vector_to_json(w),
        "report": {
            "ok": report.ok, "lower_vanish": report.lower_vanish, "cr_preserved": report.cr_preserved,
            "checks": [
                {"degree": c.degree, "kind": c.kind, "in_ideal": c.in_ideal, "identity_holds": c.identity_holds}
                for c in report.checks
            ],
        },
    }
    human += report.lines()
    if not report.ok:
        bad = [line for line in report.lines() if "NO" in line or "FAILS" in line]
        return _fail(CertificateFailure.code, bad[0], payload, human)
    return _ok(payload, human)


def _toy_class(X: ToyChowRing, text: str, flag: str) -> Poly:
    if text.startswith("@"):
        doc = _flag(flag, ser.load, text[1:])
        # accept the output of ``toy --steenrod`` as well as a bare polynomial
        f = _flag(flag, ser.poly_from_json, doc.get("image", doc) if isinstance(doc, dict) else doc)
        if f.ring.caps != X.ring.caps:
            raise UsageError(f"argument {flag}: class from {f.ring.caps}, ring is {X.factors}")
        return f.change_ring(X.ring)
    return _flag(flag, X.parse, text)


def cmd_toy(a) -> CommandResult:
    X = _flag("--ring", lambda s: parse_ring(s, a.p, a.m), a.ring)
    if a.pair:
        x, y = (_toy_class(X, t, "--pair") for t in a.pair)
        degs = x.degrees()
        r = degs.pop() if len(degs) == 1 else 0
        val = degree_pairing(x, y, r)
        return _ok({"ring": str(X), "a": str(x), "b": str(y), "pairing": val}, [str(val)])
    if a.num_trivial:
        x = _toy_class(X, a.num_trivial, "--num-trivial")
        val = is_num_trivial(x)
        return _ok({"ring": str(X), "class": str(x), "num_trivial": val}, ["yes" if val else "no"])
    if a.steenrod:
        if a.p is None:
            raise UsageError("argument --steenrod: needs --p")
        x = _toy_class(X, a.steenrod, "--steenrod")
        img = steenrod_total_on_ring(x, a.p)
        comps = [{"degree": d, "text": str(c)} for d, c in sorted(img.components().items())]
        return _ok({"image": ser.poly_to_json(img), "text": str(img), "components": comps}, [str(img)])
    if a.chern:
        divisors = [_toy_class(X, t.strip(), "--chern") for t in a.chern.split(";") if t.strip()]
        v = chern_of_line_sum(X, divisors)
        return _ok(ser.vector_to_json(v), [f"c{d} = {c}" for d, c in enumerate(v.classes, start=1)])
    if a.padic:
        if a.p is None:
            raise UsageError("argument --padic: needs --p")
        Xz = ToyChowRing(X.factors)
        x = _toy_class(Xz, a.padic, "--padic")
        verdicts = num_trivial_padic(x, a.p, a.depth)
        human = [f"mod {a.p}^{m}: {'trivial' if v else 'not trivial'}" for m, v in enumerate(verdicts, start=1)]
        return _ok({"class": str(x), "p": a.p, "verdicts": verdicts}, human)
    # default: perfection of the monomial pairing
    rows = []
    for r in range(X.dim + 1):
        M = pairing_matrix(X, r)
        rows.append({"r": r, "size": len(M), "permutation": is_permutation_matrix(M)})
    perfect = all(row["permutation"] for row in rows)
    human = [f"r={row['r']}: {row['size']}x{row['size']} {'permutation' if row['permutation'] else 'NOT perfect'}"
             for row in rows]
    payload = {"ring": str(X), "degrees": rows, "perfect": perfect}
    if not perfect:
        return _fail(CertificateFailure.code, "pairing is not perfect", payload, human)
    return _ok(payload, human)


def cmd_dim4(a) -> CommandResult:
    chk = dim4_identity(a.modulus)
    payload = {
        "modulus": a.modulus, "identity_holds": chk.identity_holds,
        "shift_is_d4": chk.shift_is_d4, "lower_unchanged": chk.lower_unchanged, "c4": str(chk.c.c(4)),
    }
    human = [
        f"c4 = c3*d + c2*d^2 + d^4 mod {a.modulus}: {'yes' if chk.identity_holds else 'no'}",
        f"four copies of O(d) shift c4 by d^4: {'yes' if chk.shift_is_d4 else 'no'}",
        f"c1..c3 unchanged: {'yes' if chk.lower_unchanged else 'no'}",
    ]
    return _ok(payload, human)


def cmd_verify(a) -> CommandResult:
    if a.jobs > 1 and a.suite == "all":
        with ProcessPoolExecutor(a.jobs) as pool:
            chunks = list(pool.map(run_suites, list(SUITES)))
        results = [item for chunk in chunks for item in chunk]
    else:
        results = run_suites(a.suite)
    checks = [{"suite": s, "name": c.name, "passed": c.passed, "detail": c.detail} for s, c in results]
    passed = all(c["passed"] for c in checks)
    human = [f"[{s}] {c.line()}" for s, c in results]
    human.append(f"{sum(c['passed'] for c in checks)}/{len(checks)} checks passed")
    payload = {"suite": a.suite, "checks": checks, "passed": passed}
    if not passed:
        first = next(c for c in checks if not c["passed"])
        return _fail(CertificateFailure.code, f"[{first['suite']}] {first['name']}", payload, human)
    return _ok(payload, human)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON payload only")
    parser = _Parser(prog="chernkit", parents=[common], description="Chern class and Steenrod computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("kappa", parents=[common], help="top Chern coefficient of a partition class")
    p.add_argument("--partition", required=True, help='multiplicities, e.g. "1:4,3:1"')
    p.add_argument("--oracle", action="store_true", help="cross-check against the brute-force expansion")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("stch", parents=[common], help="is c_d expressible through Steenrod images mod p")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--express", action="store_true", help="print the explicit identity")
    p.set_defaults(func=cmd_stch)

    p = sub.add_parser("mi-search", parents=[common], help="Adams multiset for degrees r and d")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_mi_search)

    p = sub.add_parser("adams", parents=[common], help="apply a sum of Adams operations to a Chern vector")
    p.add_argument("--chern", required=True, metavar="FILE", help="Chern vector JSON")
    p.add_argument("--multiset", required=True, help='e.g. "1,1,2"')
    p.add_argument("--reps", type=int, default=1)
    p.set_defaults(func=cmd_adams)

    p = sub.add_parser("steenrod", parents=[common], help="total Steenrod operation on a partition class")
    p.add_argument("--partition", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, help="keep only the P^k component")
    p.set_defaults(func=cmd_steenrod)

    p = sub.add_parser("blowup", parents=[common], help="main construction on N divisors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim-cap", type=int)
    p.add_argument("--modulus", type=int)
    p.add_argument("--verify-all", action="store_true", help="exhaustive identity sweep over good families")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("schedule", parents=[common], help="annihilation schedule above c_r")
    p.add_argument("--r", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--adams-only", action="store_true")
    p.add_argument("--load", metavar="FILE", help="read the schedule from JSON instead of computing it")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--apply", metavar="FILE", help="Chern vector JSON to run the schedule on")
    g.add_argument("--universal", action="store_true", help="run on the universal vector")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("toy", parents=[common], help="products of projective spaces")
    p.add_argument("--ring", required=True, help='e.g. "P2xP1"')
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int, default=1)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--pair", nargs=2, metavar=("A", "B"))
    g.add_argument("--num-trivial", metavar="A")
    g.add_argument("--steenrod", metavar="A")
    g.add_argument("--chern", metavar="A1;A2;...")
    g.add_argument("--padic", metavar="A")
    g.add_argument("--perfection", action="store_true", help="check the pairing matrices (default action)")
    p.add_argument("--depth", type=int, default=4, help="largest m for --padic")
    p.set_defaults(func=cmd_toy)

    p = sub.add_parser("dim4", parents=[common], help="the rank-3 identity in dimension 4")
    p.add_argument("--modulus", type=int, default=2)
    p.set_defaults(func=cmd_dim4)

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str]) -> tuple[CommandResult, bool]:
    """Execute ``argv``; returns the result and whether ``--json`` was requested."""
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        return args.func(args), want_json
    except UsageError as exc:
        return _fail(UsageError.code, str(exc)), want_json
    except ChernkitError as exc:
        return _fail(exc.code, str(exc)), want_json


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if any(a in ("-h", "--help") for a in argv):
        build_parser().parse_args(argv)
    result, want_json = run(argv)
    if want_json:
        doc = result.payload if result.status == "ok" else result.to_json()
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for line in result.human:
            print(line)
        if result.status != "ok":
            for line in result.diagnostics:
                print(f"error [{result.error_code}]: {line}", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
