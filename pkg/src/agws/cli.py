"""Command-line front end: ``agws <subcommand> ...``.

Exit codes: 0 all requested checks pass, 1 falsification, 2 insufficient
precision, 3 usage or parameter error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import checks
from .characters import character_family, leading_exponent
from .errors import AgwsError, FalsificationError, ParameterError, PrecisionError
from .identities import (certify_character_relation, jacobi_triple_product_check,
                         k13_identity_check, pentagonal_check, quotient_relation_check, theta_sum_check, verify_partition_identity)
from .modforms import divisor_polynomial, express_in_basis, reduce_poly_mod_p
from .poly import is_prime
from .realroots import conjecture_check
from .supersingular import (congruence_search, deligne_ss_locus, hasse_ss_locus,
                            verify_remark_pairs, verify_sslcong)
from .verdict import Verdict
from .wronskian import Vanishing, f_k, is_vanishing_k, wronskian_W, wronskian_Wprime

EXIT_OK, EXIT_FALSIFIED, EXIT_PRECISION, EXIT_USAGE = 0, 1, 2, 3
TABLE_COLUMNS = ("theorem", "k", "p", "t", "n", "params", "verdict", "prec_certificate",
                 "wall_time")
PREC_ENV = "AGWS_DEFAULT_PREC"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ------------------------------------------------------------------ config

@dataclass
class RunConfig:
    subcommand: str
    options: dict[str, Any]
    prec: int | None
    fmt: str = "json"
    out: str | None = None
    jobs: int = 1
    timings: bool = True

    def echo(self) -> dict[str, Any]:
        return {"subcommand": self.subcommand, "prec": self.prec, "format": self.fmt,
                "jobs": self.jobs, "timings": self.timings, **self.options}


def parse_range(text: str) -> list[int]:
    """``"2..20"`` (inclusive) or ``"5,7,11"`` or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use a..b or a,b,c") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def resolve_prec(explicit: int | None) -> int | None:
    if explicit is not None:
        return explicit
    env = os.environ.get(PREC_ENV)
    if env is None or env == "":
        return None
    try:
        v = int(env)
    except ValueError:
        raise UsageError(f"{PREC_ENV}={env!r} is not an integer") from None
    if v < 1:
        raise UsageError(f"{PREC_ENV} must be >= 1")
    return v


# ----------------------------------------------------------------- records

def make_record(v: Verdict, wall: float | None) -> dict[str, Any]:
    return {
        "theorem": v.check,
        "params": v.params,
        "verdict": "pass" if v.passed else "fail",
        "prec_certificate": v.certificate,
        "wall_time": None if wall is None else round(wall, 3),
        "details": v.details,
    }


def _k_of(rec) -> int:
    k = rec.get("params", {}).get("k")
    return k if isinstance(k, int) else -1


def sort_records(records: list[dict]) -> list[dict]:
    return sorted(records, key=lambda r: (r["theorem"], _k_of(r),
                                          json.dumps(r.get("params"), sort_keys=True,
                                                     default=_jsonable)))


def emit_table(records: list[dict]) -> str:
    """CSV with a fixed column order, rows sorted by ``(theorem, k)``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_COLUMNS)
    for r in sort_records(records):
        params = dict(r.get("params", {}))
        lifted = {c: params.pop(c, "") for c in ("k", "p", "t", "n")}
        w.writerow([
            r["theorem"], lifted["k"], lifted["p"], lifted["t"], lifted["n"],
            json.dumps(params, sort_keys=True, default=_jsonable) if params else "",
            r["verdict"],
            "" if r.get("prec_certificate") is None else r["prec_certificate"],
            "" if r.get("wall_time") is None else r["wall_time"],
        ])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return str(obj)


def _text(report: dict) -> str:
    lines = ["config: " + " ".join(f"{k}={v}" for k, v in sorted(report["config"].items()))]
    for r in report["records"]:
        params = " ".join(f"{k}={v}" for k, v in r["params"].items())
        cert = r.get("prec_certificate")
        wall = r.get("wall_time")
        lines.append(f"{r['verdict'].upper():4} {r['theorem']:<18} {params}"
                     + (f" cert={cert}" if cert is not None else "")
                     + (f" t={wall}s" if wall is not None else ""))
    data = report.get("data")
    if data is not None:
        lines.append(json.dumps(data, sort_keys=True, default=_jsonable, indent=1))
    lines.append("OK" if report["ok"] else "FAILED")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, default=_jsonable) + "\n"
    if fmt == "csv":
        return emit_table(report["records"])
    return _text(report)


# --------------------------------------------------------------- commands

def _timed(fn: Callable[[], Verdict]) -> tuple[Verdict, float]:
    t0 = time.perf_counter()
    v = fn()
    return v, time.perf_counter() - t0


def _as_int_or_str(c: Fraction):
    return c.numerator if c.denominator == 1 else str(c)


def cmd_chars(cfg: RunConfig):
    k = cfg.options["k"]
    N = cfg.prec or 20
    fam = character_family(k, N)
    idx = [cfg.options["i"]] if cfg.options.get("i") else range(1, k + 1)
    data = []
    for i in idx:
        if not 1 <= i <= k:
            raise ParameterError(f"need 1 <= i <= k, got i={i}")
        data.append({"i": i, "a": str(leading_exponent(i, k)),
                     "coeffs": [fam.b(i, n) for n in range(N)]})
    ok = fam.params.check_invariants()
    return [Verdict("chars", ok, {"k": k}, N)], {"k": k, "lattice_den": fam.lattice_den,
                                                 "characters": data}


def cmd_wronskian(cfg: RunConfig):
    k = cfg.options["k"]
    if cfg.options["prime"]:
        rep = wronskian_Wprime(k, cfg.prec)
        ok = rep.vanishing is Vanishing.NONZERO or is_vanishing_k(k)
        name = "wronskian-prime"
    else:
        rep = wronskian_W(k, cfg.prec, assert_eta=cfg.options["assert_eta"])
        ok, name = True, "wronskian"
    v = Verdict(name, ok, {"k": k}, rep.prec_certificate,
                {"vanishing": rep.vanishing.value,
                 "exponents_past_lead": str(rep.exponents_past_lead)})
    return [v], rep.to_dict()


def cmd_fk(cfg: RunConfig):
    k = cfg.options["k"]
    F = f_k(k, cfg.prec)
    basis = express_in_basis(F, 2 * k) if not F.is_zero() else {}
    data = {"k": k, "weight": 2 * k,
            "basis": {f"({a},{b})": _as_int_or_str(c) for (a, b), c in sorted(basis.items())},
            "coeffs": [_as_int_or_str(F.coeff(n)) for n in range(F.prec)],
            "vanishing": F.is_zero()}
    return [Verdict("fk", True, {"k": k}, F.prec)], data


def cmd_divisor(cfg: RunConfig):
    k = cfg.options["k"]
    F = f_k(k, cfg.prec)
    fact = divisor_polynomial(F, 2 * k)
    data = {"k": k, **fact.to_dict()}
    p = cfg.options.get("mod")
    if p is not None:
        if p < 2 or not is_prime(p):
            raise ParameterError(f"--mod needs a prime, got {p}")
        data["mod"] = {"p": p, "F_mod_p": list(reduce_poly_mod_p(fact.F, p).coeffs)}
    return [Verdict("divisor", True, {"k": k}, F.prec)], data


def cmd_ss(cfg: RunConfig):
    p, method = cfg.options["p"], cfg.options["method"]
    data: dict[str, Any] = {"p": p}
    ok = True
    if method in ("hasse", "both"):
        data["hasse"] = hasse_ss_locus(p).to_dict()
    if method in ("deligne", "both"):
        data["deligne"] = list(deligne_ss_locus(p, cfg.prec).coeffs)
    if method == "both":
        ok = data["hasse"]["S_p"] == data["deligne"]
    return [Verdict("ss", ok, {"p": p, "method": method})], data


def _theorem_runner(cfg: RunConfig) -> Callable[[], list[Verdict]]:
    o = cfg.options
    name, prec = o["theorem"], cfg.prec
    if name == "sslcong" and o.get("k") is not None:
        return lambda: [verify_sslcong(o["k"], prec)]
    if name == "partidentity" and o.get("t") is not None:
        return lambda: [verify_partition_identity(o["t"], o.get("n") or 300)]
    if name == "remark-pairs" and o.get("k") is not None:
        if o.get("p") is None:
            raise UsageError("--theorem remark-pairs --k K needs --p P")
        return lambda: verify_remark_pairs([(o["k"], o["p"])], prec)
    if name == "conjecture" and o.get("k") is not None:
        return lambda: [conjecture_check(o["k"], prec)]
    registry = dict(checks.DESK_SCALE)
    if name == "remark-pairs":
        return lambda: [checks.check_remark_pairs(slow=o["slow"])]
    return lambda: [registry[name]()]


def _run_check(name: str, slow: bool, timings: bool) -> dict:
    fn = dict(checks.DESK_SCALE)[name]
    v, wall = _timed((lambda: fn(slow=True)) if slow and name == "remark-pairs" else fn)
    return make_record(v, wall if timings else None)


def cmd_verify(cfg: RunConfig):
    o = cfg.options
    chosen = [x for x in ("theorem", "identity") if o.get(x)]
    if o["all"]:
        if chosen:
            raise UsageError("--all cannot be combined with --theorem/--identity")
        names = [n for n, _ in checks.DESK_SCALE]
        args = [(n, o["slow"], cfg.timings) for n in names]
        if cfg.jobs > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                recs = list(pool.map(_run_check, *zip(*args)))
        else:
            recs = [_run_check(*a) for a in args]
        return recs, None
    if len(chosen) != 1:
        raise UsageError("verify needs exactly one of --all, --theorem, --identity")
    prec = cfg.prec
    if o.get("theorem"):
        runner = _theorem_runner(cfg)
    else:
        t = o.get("t") or 2
        N = prec or 200
        runner = {
            "k13": lambda: [k13_identity_check(N)],
            "quotient": lambda: [quotient_relation_check(t, N)],
            "theta-sum": lambda: [theta_sum_check(t, N)],
            "relation": lambda: [certify_character_relation(t, N)],
            "pentagonal": lambda: [pentagonal_check(N)],
            "triple": lambda: [jacobi_triple_product_check(1, Fraction(1, 2), Fraction(3, 2), N)],
        }[o["identity"]]
    t0 = time.perf_counter()
    vs = runner()
    wall = time.perf_counter() - t0
    return [make_record(v, wall / len(vs) if cfg.timings else None) for v in vs], None


def cmd_search(cfg: RunConfig):
    hits = congruence_search(cfg.options["kmax"], cfg.options["primes"], cfg.prec)
    return [Verdict("search-congruences", True,
                    {"kmax": cfg.options["kmax"], "candidates": len(hits)})], {"candidates": hits}


def cmd_conjecture(cfg: RunConfig):
    out, skipped = [], []
    for k in cfg.options["k_range"]:
        if k < 2:
            raise ParameterError("k must be >= 2")
        if is_vanishing_k(k):
            skipped.append(k)
            continue
        out.append(conjecture_check(k, cfg.prec))
    return out, {"skipped_vanishing_k": skipped}


COMMANDS = {
    "chars": cmd_chars, "wronskian": cmd_wronskian, "fk": cmd_fk, "divisor": cmd_divisor,
    "ss": cmd_ss, "verify": cmd_verify, "search-congruences": cmd_search,
    "conjecture": cmd_conjecture,
}


def dispatch(cfg: RunConfig) -> tuple[int, dict]:
    t0 = time.perf_counter()
    produced, data = COMMANDS[cfg.subcommand](cfg)
    wall = time.perf_counter() - t0
    if produced and isinstance(produced[0], Verdict):
        each = wall / len(produced)
        records = [make_record(v, each if cfg.timings else None) for v in produced]
    else:
        records = list(produced)
    records = sort_records(records)
    ok = all(r["verdict"] == "pass" for r in records)
    report = {"config": cfg.echo(), "records": records, "ok": ok}
    if data is not None:
        report["data"] = data
    return (EXIT_OK if ok else EXIT_FALSIFIED), report


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="json")
    common.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    common.add_argument("--prec", type=_positive, help=f"precision override (env {PREC_ENV})")
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("--no-timings", action="store_true",
                        help="omit wall times so repeated runs are byte-identical")

    parser = _Parser(prog="agws", description="Exact verification of character Wronskians.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("chars", parents=[common], help="character q-expansions")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int)

    p = sub.add_parser("wronskian", parents=[common], help="W_k or W'_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--prime", action="store_true")
    p.add_argument("--assert-eta", action="store_true")

    p = sub.add_parser("fk", parents=[common], help="F_k and its E4/E6 basis expansion")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("divisor", parents=[common], help="divisor polynomial of F_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mod", type=int)

    p = sub.add_parser("ss", parents=[common], help="supersingular locus mod p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--method", choices=("hasse", "deligne", "both"), default="both")

    p = sub.add_parser("verify", parents=[common], help="run verifications")
    p.add_argument("--all", action="store_true")
    p.add_argument("--desk-scale", action="store_true",
                   help="desk-scale parameters (the default scale for --all)")
    p.add_argument("--slow", action="store_true", help="include the larger remark pairs")
    p.add_argument("--theorem", choices=[n for n, _ in checks.DESK_SCALE])
    p.add_argument("--identity",
                   choices=("k13", "quotient", "theta-sum", "relation", "pentagonal", "triple"),
                   help="theta/character identities; --t picks the family member")
    for flag in ("--t", "--n", "--k", "--p"):
        p.add_argument(flag, type=int)

    p = sub.add_parser("search-congruences", parents=[common],
                       help="scan F_k == 1 mod p with (p-1) | 2k")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--primes", type=parse_range, default=parse_range("5..60"))

    p = sub.add_parser("conjecture", parents=[common], help="real-root check of F~(F_k)")
    p.add_argument("--k-range", type=parse_range, default=parse_range("2..20"))
    return parser


_GLOBAL = {"subcommand", "format", "out", "prec", "jobs", "no_timings"}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    opts = {k: v for k, v in vars(ns).items() if k not in _GLOBAL}
    return RunConfig(ns.subcommand, opts, resolve_prec(ns.prec), ns.format, ns.out, ns.jobs,
                     not ns.no_timings)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        code, report = dispatch(cfg)
    except (UsageError, ParameterError) as exc:
        print(f"agws: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"agws: insufficient precision: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except FalsificationError as exc:
        print(f"agws: falsified: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except AgwsError as exc:
        print(f"agws: error: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    text = render(report, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
