"""
wittforge command line.
Sprint: S7

    wittforge [--log-level L] [--seed S] [--format text|json] <command> ...

Commands:
    witt ghost|eval|dwork       Witt vector evaluation
    sigma classify|act|fprime   points of Σ'
    coeq homs|count             the toy coequalizer over F_q
    toy gamma2                  Γ''(F_q) as a category payload
    prism make|delta|split|check
    check run|list              the named check registry
    bench strategies            polynomial vs ghost timing

Ring specs follow the grammar of src.rings.spec, e.g. "Zmod(2^4)",
"Zmod(3^2)[t]/(t^3)", "GF(2^2)", "F_2 x Z/4".  Elements are written as
polynomials in t ("1+2*t"), tuples for products ("(1, 3)").

Vectors are JSON arrays of elements: "[2, 1]", '["1+t", 0]'.  A one-entry
array "[a]" with --n > 1 is the Teichmüller lift [a].

Exit status: 0 on success, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from typing import Any, Callable, Optional, Sequence

from src.categories import (
    closed_form_word,
    coeq_bruteforce,
    coeq_closed_form,
    format_word,
    gamma_double_prime,
    toy_instance,
)
from src.checks.registry import list_checks
from src.checks.tally import use_seed
from src.errors import WittforgeError
from src.models.schemas import Report
from src.pipeline.graph import run_checks
from src.prisms import delta, delta_precision, distinguished_check, joyal_split, make_prism
from src.rings import Ring, make_ring
from src.sigma import GroupElem, classify_factors, classify_locus, f_prime, g_act, make_sigma_point
from src.witt import WittVector, ghost, p2_over_p, random_vector, witt_arith

logger = logging.getLogger(__name__)

_PRISM_ALIASES = {
    "qde": "q_de_rham",
    "q_de_rham": "q_de_rham",
    "lt": "lubin_tate",
    "lubin_tate": "lubin_tate",
    "econ": "economic",
    "economic": "economic",
}


# ---------------------------------------------------------------------------
# Parsing helpers
# ---------------------------------------------------------------------------

def _json_list(text: str, what: str) -> list[Any]:
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{what}: invalid JSON at position {exc.pos}: {exc.msg}") from None
    if not isinstance(value, list):
        raise ValueError(f"{what}: expected a JSON array, got {type(value).__name__}")
    return value


def _element(ring: Ring, value: Any):
    return ring.element(value if isinstance(value, (int, str)) else str(value))


def _vector(ring: Ring, text: str, n: Optional[int], degree: int = 0, what: str = "vector") -> WittVector:
    entries = _json_list(text, what)
    if not entries:
        raise ValueError(f"{what}: empty vector")
    if len(entries) == 1 and n is not None and n > 1:
        return WittVector.teichmuller(_element(ring, entries[0]), n, degree=degree)
    vec = WittVector.from_elements(ring, [_element(ring, e) for e in entries], degree)
    if n is not None and vec.n != n:
        raise ValueError(f"{what}: expected {n} components, got {vec.n}")
    return vec


def _components(x: WittVector) -> list[str]:
    return [x.ring.format_raw(c) for c in x.comps]


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


def _emit(args: argparse.Namespace, payload: Any, text: Optional[str] = None) -> None:
    if args.format == "json" or text is None:
        print(_dumps(payload))
    else:
        print(text)


def _aligned(rows: Sequence[Sequence[str]]) -> str:
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows)


def _report_text(report: Report) -> str:
    counts = " ".join(f"{k}={v}" for k, v in sorted(report.counts.items()))
    lines = [f"{report.check_id}  {report.status}  {counts}"]
    if report.message:
        lines.append(f"  error: {report.message}")
    for key, value in sorted(report.witness.items()):
        lines.append(f"  {key}: {value}")
    for ce in report.counterexamples:
        inputs = ", ".join(f"{k}={v}" for k, v in sorted(ce.inputs.items()))
        lines.append(f"  counterexample: {ce.detail} [{inputs}]")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# witt
# ---------------------------------------------------------------------------

def cmd_witt_ghost(args: argparse.Namespace) -> int:
    ring = make_ring(args.ring)
    x = _vector(ring, args.vec, args.n)
    g = ghost(x)
    values = [ring.format_raw(w) for w in g.entries]
    _emit(args, {"ring": str(ring), "vector": _components(x), "ghost": values},
          "[" + ", ".join(values) + "]")
    return 0


def cmd_witt_eval(args: argparse.Namespace) -> int:
    ring = make_ring(args.ring)
    a = _vector(ring, args.a, args.n, what="--a")
    if args.op == "neg":
        result = witt_arith("neg", a, strategy=args.strategy)
    else:
        if args.b is None:
            raise ValueError(f"--op {args.op} needs --b")
        b = _vector(ring, args.b, a.n, what="--b")
        result = witt_arith(args.op, a, b, strategy=args.strategy)
    payload = result.to_payload().model_dump(mode="json")
    _emit(args, payload, "[" + ",".join(_components(result)) + "]")
    return 0


def cmd_witt_dwork(args: argparse.Namespace) -> int:
    a = p2_over_p(args.p, args.n, args.K)
    _emit(args, a.to_payload().model_dump(mode="json"), f"[p^2]/p = {a}  in W_{a.n}({a.ring})")
    return 0


# ---------------------------------------------------------------------------
# sigma
# ---------------------------------------------------------------------------

def _sigma_point(args: argparse.Namespace):
    ring = make_ring(args.ring)
    zeta = _vector(ring, args.zeta, args.n, degree=ring.p, what="--zeta")
    gamma = None if args.gamma is None else _vector(ring, args.gamma, zeta.n, what="--gamma")
    return make_sigma_point(ring, _element(ring, args.v), zeta, gamma)


def cmd_sigma_classify(args: argparse.Namespace) -> int:
    point = _sigma_point(args)
    tags = sorted(classify_locus(point))
    per_factor = [sorted(t) for t in classify_factors(point)]
    _emit(args, {"point": point.to_payload().model_dump(mode="json"), "tags": tags, "factors": per_factor},
          f"{point}\n  tags: {', '.join(tags) or '-'}")
    return 0


def cmd_sigma_act(args: argparse.Namespace) -> int:
    point = _sigma_point(args)
    alpha = _vector(point.ring, args.alpha, point.n, degree=point.p, what="--alpha")
    if args.w is None:
        g = GroupElem(alpha, point.v_minus)
    else:
        g = GroupElem.mat(point.v_minus, alpha, _vector(point.ring, args.w, point.n, what="--w"))
    moved = g_act(point, g)
    _emit(args, moved.to_payload().model_dump(mode="json"), str(moved))
    return 0


def cmd_sigma_fprime(args: argparse.Namespace) -> int:
    point = _sigma_point(args)
    image = f_prime(point)
    _emit(args, image.to_payload().model_dump(mode="json"), f"F'({point}) = {image}")
    return 0


# ---------------------------------------------------------------------------
# coeq / toy
# ---------------------------------------------------------------------------

def cmd_coeq_homs(args: argparse.Namespace) -> int:
    inst = toy_instance(args.q)
    words = [format_word(closed_form_word(inst, args.src, args.dst, args.degree, u))
             for u in coeq_closed_form(inst, args.src, args.dst, args.degree)]
    payload = {"instance": inst.name, "src": args.src, "dst": args.dst, "degree": args.degree, "homs": words}
    _emit(args, payload, "\n".join(words) if words else "(empty)")
    return 0


def cmd_coeq_count(args: argparse.Namespace) -> int:
    inst = toy_instance(args.q)
    window = (args.lo, args.hi)
    brute = coeq_bruteforce(inst, window).hom_counts()
    rows = []
    for (x, y, n), count in sorted(brute.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1])):
        closed = len(coeq_closed_form(inst, x, y, n))
        rows.append({"src": x, "dst": y, "degree": n, "bruteforce": count, "closed_form": closed})
    text = _aligned([["src", "dst", "degree", "bruteforce", "closed_form"]]
                    + [[r["src"], r["dst"], str(r["degree"]), str(r["bruteforce"]), str(r["closed_form"])]
                       for r in rows])
    _emit(args, {"instance": inst.name, "window": list(window), "counts": rows}, text)
    return 0 if all(r["bruteforce"] == r["closed_form"] for r in rows) else 1


def cmd_toy_gamma2(args: argparse.Namespace) -> int:
    cat = gamma_double_prime(args.q, args.top)
    payload = cat.to_payload().model_dump(mode="json")
    text = _aligned([[a.id, a.src, a.dst, str(a.degree)]
                     for a in sorted(cat.arrows.values(), key=lambda a: (a.degree, a.id))])
    _emit(args, payload, text)
    return 0


# ---------------------------------------------------------------------------
# prism
# ---------------------------------------------------------------------------

def _prism(args: argparse.Namespace):
    try:
        kind = _PRISM_ALIASES[args.kind]
    except KeyError:
        raise ValueError(f"unknown prism kind {args.kind!r}; expected one of {sorted(_PRISM_ALIASES)}") from None
    u = args.u if kind != "q_de_rham" else None
    return make_prism(kind, args.p, args.K, args.M, u)


def cmd_prism_make(args: argparse.Namespace) -> int:
    model = _prism(args)
    info = model.describe()
    _emit(args, info, _aligned([[k, v] for k, v in sorted(info.items())]))
    return 0


def cmd_prism_delta(args: argparse.Namespace) -> int:
    model = _prism(args)
    a = model.ring.parse_element(args.a)
    value = delta(model, a)
    payload = {"model": model.name, "a": str(a), "delta": str(value), "precision": delta_precision(model)}
    _emit(args, payload, f"δ({a}) = {value}  (mod p^{payload['precision']})")
    return 0


def cmd_prism_split(args: argparse.Namespace) -> int:
    model = _prism(args)
    a = model.ring.parse_element(args.a)
    fa = joyal_split(model, a, args.n)
    exact = model.K - args.n + 1
    payload = {"model": model.name, "a": str(a), "split": fa.to_payload().model_dump(mode="json"),
               "exact_precision": exact}
    _emit(args, payload, f"f({a}) = {fa}  (exact mod p^{exact})")
    return 0


def cmd_prism_check(args: argparse.Namespace) -> int:
    report = distinguished_check(_prism(args), n=args.n)
    _emit(args, report.deterministic_dict(), _report_text(report))
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# check / bench
# ---------------------------------------------------------------------------

def cmd_check_run(args: argparse.Namespace) -> int:
    state = run_checks(args.pattern, seed=args.seed)
    if state.get("pipeline_error"):
        print(f"error: {state['pipeline_error']}", file=sys.stderr)
        return state.get("exit_status", 2)
    reports: list[Report] = state.get("reports", [])
    if args.format == "json":
        print(_dumps(state["final_output"]))
    else:
        print("\n".join(_report_text(r) for r in reports))
        summary = state["final_output"]["summary"]
        print(f"\n{summary['pass']} pass, {summary['fail']} fail, {summary['error']} error")
    return state.get("exit_status", 1)


def cmd_check_list(args: argparse.Namespace) -> int:
    descriptors = list_checks(args.filter)
    if args.json or args.format == "json":
        print(_dumps([d.model_dump(mode="json") for d in descriptors]))
        return 0
    print(_aligned([[d.id, d.module, d.anchor, ", ".join(d.rings)] for d in descriptors]))
    return 0


def cmd_bench_strategies(args: argparse.Namespace) -> int:
    ring = make_ring(args.ring)
    rng = random.Random(args.seed if args.seed is not None else 0)
    pairs = [(random_vector(ring, args.n, rng), random_vector(ring, args.n, rng)) for _ in range(args.samples)]
    timings: dict[str, int] = {}
    results: dict[str, list[WittVector]] = {}
    for strategy in ("polynomial", "ghost"):
        start = time.perf_counter_ns()
        results[strategy] = [witt_arith(op, x, y, strategy=strategy)
                             for x, y in pairs for op in ("add", "mul")]
        timings[strategy] = time.perf_counter_ns() - start
    if results["polynomial"] != results["ghost"]:
        print("error: strategies disagree", file=sys.stderr)
        return 1
    payload = {"ring": str(ring), "n": args.n, "samples": args.samples,
               "ns": {k: str(v) for k, v in timings.items()}}
    _emit(args, payload, _aligned([[k, f"{v} ns"] for k, v in timings.items()]))
    return 0


# ---------------------------------------------------------------------------
# Argument parser
# ---------------------------------------------------------------------------

def _add_prism_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", required=True, help="qde | lt | econ")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--K", type=int, default=4, help="p-adic precision")
    p.add_argument("--M", type=int, default=4, help="truncation in the prism variable")
    p.add_argument("--u", type=int, default=1, help="unit for Lubin–Tate / economic")


def _add_point_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ring", required=True)
    p.add_argument("--v", required=True, help="v_-")
    p.add_argument("--zeta", required=True)
    p.add_argument("--gamma", default=None, help="defaults to 1")
    p.add_argument("--n", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wittforge", description="Exact Witt vector and prism computations.")
    parser.add_argument("--log-level", default="WARNING", help="DEBUG, INFO, WARNING, ERROR")
    parser.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                        help="sampling seed (overrides WITTFORGE_SEED)")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(group, name: str, handler: Callable[[argparse.Namespace], int], **kw):
        p = group.add_parser(name, **kw)
        p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        p.set_defaults(handler=handler)
        return p

    witt = sub.add_parser("witt").add_subparsers(dest="action", required=True)
    p = command(witt, "ghost", cmd_witt_ghost, help="ghost components")
    p.add_argument("--ring", required=True)
    p.add_argument("--vec", required=True)
    p.add_argument("--n", type=int, default=None)
    p = command(witt, "eval", cmd_witt_eval, help="add, sub, mul or neg")
    p.add_argument("--op", choices=("add", "sub", "mul", "neg"), required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", default=None)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--strategy", choices=("polynomial", "ghost"), default=None)
    p = command(witt, "dwork", cmd_witt_dwork, help="the vector [p^2]/p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--K", type=int, default=6)

    sigma = sub.add_parser("sigma").add_subparsers(dest="action", required=True)
    _add_point_args(command(sigma, "classify", cmd_sigma_classify, help="locus tags"))
    p = command(sigma, "act", cmd_sigma_act, help="act by (α) or (α, w)")
    _add_point_args(p)
    p.add_argument("--alpha", required=True)
    p.add_argument("--w", default=None)
    _add_point_args(command(sigma, "fprime", cmd_sigma_fprime, help="[v_-^p]ζ + p"))

    coeq = sub.add_parser("coeq").add_subparsers(dest="action", required=True)
    p = command(coeq, "homs", cmd_coeq_homs, help="closed-form hom-set of the toy coequalizer")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--src", required=True)
    p.add_argument("--dst", required=True)
    p.add_argument("--degree", type=int, default=0)
    p = command(coeq, "count", cmd_coeq_count, help="brute force vs closed form")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--lo", type=int, default=-1)
    p.add_argument("--hi", type=int, default=3)

    toy = sub.add_parser("toy").add_subparsers(dest="action", required=True)
    p = command(toy, "gamma2", cmd_toy_gamma2, help="Γ''(F_q)")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--top", type=int, default=3)

    prism = sub.add_parser("prism").add_subparsers(dest="action", required=True)
    _add_prism_args(command(prism, "make", cmd_prism_make))
    p = command(prism, "delta", cmd_prism_delta)
    _add_prism_args(p)
    p.add_argument("--a", required=True, help="element in t")
    p = command(prism, "split", cmd_prism_split)
    _add_prism_args(p)
    p.add_argument("--a", required=True, help="element in t")
    p.add_argument("--n", type=int, default=2)
    p = command(prism, "check", cmd_prism_check, help="distinguished-element check")
    _add_prism_args(p)
    p.add_argument("--n", type=int, default=2)

    check = sub.add_parser("check").add_subparsers(dest="action", required=True)
    p = command(check, "run", cmd_check_run)
    p.add_argument("pattern", nargs="?", default="*")
    p = command(check, "list", cmd_check_list)
    p.add_argument("filter", nargs="?", default=None)
    p.add_argument("--json", action="store_true")

    bench = sub.add_parser("bench").add_subparsers(dest="action", required=True)
    p = command(bench, "strategies", cmd_bench_strategies)
    p.add_argument("--ring", default="Zmod(3^4)[t]/(t^3)")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--samples", type=int, default=50)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(format="[%(levelname)s] %(name)s: %(message)s")
    root.setLevel(args.log_level.upper())

    try:
        with use_seed(args.seed):
            return args.handler(args)
    except (WittforgeError, ValueError) as exc:
        logger.debug("command failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
