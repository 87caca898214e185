"""Command-line front end.

Examples::

    tameauto --p 3 classify "x -> x + t*y^2 ; y -> y"
    tameauto --p 2 --format json decompose "(x + y^2, y)"
    tameauto --p 3 pstable "ppowers | {6}" --compare pmult
    tameauto --p 2 sigma --a "t^2" --P "y + t*y^2" --Q "y - t*y^2" all
    tameauto --p 3 witness --I ppowers --J pmult --a t

Exit status is 0 on success, 1 on domain errors and 2 on parse errors.
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
from typing import Callable

from . import __version__
from .amalgam import AFF_BA, Word, criterion_letters, equivalent, is_reduced, length3_membership
from .automorphism import Auto, classify, compose, invert, jacobian
from .nagata import (
    SigmaParams,
    make_sigma,
    nonnormality_witness,
    sigma_in_HT,
    sigma_is_diff_affine,
    sigma_is_tame,
)
from .parsing import ParseError, parse
from .pstable import PStableSet, ai_order, is_p_stable, triangular_in_AI
from .vdk import NotAutomorphism, decompose_additive, decompose_diff_affine, decompose_with_trace, length_of


class DomainError(Exception):
    pass


def _auto_json(phi: Auto) -> dict:
    return {"f1": str(phi.f1), "f2": str(phi.f2)}


def _word_json(w: Word) -> list:
    return [{"tag": l.tag, "f1": str(l.payload.f1), "f2": str(l.payload.f2)} for l in w]


def _with_ring(phi: Auto, over: str | None) -> Auto:
    if over is None:
        return phi
    try:
        return phi.to_ring(over)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc


def _need_positive(p: int, what: str):
    if p == 0:
        raise DomainError(f"{what} requires positive characteristic")


# -- verbs -------------------------------------------------------------------
# Each returns (payload for json, text lines).


def cmd_classify(args):
    phi = _with_ring(parse(args.auto, "auto", args.p), args.over)
    flags = classify(phi).as_dict()
    text = [f"{k}: {str(v).lower()}" for k, v in flags.items()]
    return {"ring": phi.ring, "flags": flags}, text


def cmd_compose(args):
    phi = _with_ring(parse(args.phi, "auto", args.p), args.over)
    psi = _with_ring(parse(args.psi, "auto", args.p), args.over)
    out = compose(phi, psi)
    return {"result": _auto_json(out)}, [str(out)]


def cmd_invert(args):
    phi = _with_ring(parse(args.auto, "auto", args.p), args.over)
    _need_positive(args.p, "invert") if phi.degree() > 1 else None
    out = invert(phi)
    return {"result": _auto_json(out), "ring": out.ring}, [str(out)]


def cmd_jacobian(args):
    phi = _with_ring(parse(args.auto, "auto", args.p), args.over)
    jac = jacobian(phi)
    rows = [[str(e) for e in row] for row in jac.rows()]
    det = str(jac.det())
    return {"matrix": rows, "det": det}, [f"[{r[0]}, {r[1]}]" for r in rows] + [f"det: {det}"]


def cmd_decompose(args):
    phi = parse(args.auto, "auto", args.p)
    if phi.degree() > 1:
        _need_positive(args.p, "decompose")
    if args.mode == "additive":
        fac = decompose_additive(phi)
        letters = [_auto_json(g) for g in fac.letters]
        steps = fac.steps
        text = [str(fac)]
        payload = {"letters": letters}
    else:
        if args.mode == "diffaffine":
            word, steps = decompose_diff_affine(phi)
        else:
            word, steps = decompose_with_trace(phi)
        text = [str(word)]
        payload = {"word": _word_json(word), "reduced": is_reduced(word)}
    payload["steps"] = [{"side": s.side, "alpha": str(s.alpha), "d": s.d} for s in steps]
    text += [f"step {i + 1}: {s}" for i, s in enumerate(steps)]
    return payload, text


def cmd_length(args):
    phi = parse(args.auto, "auto", args.p)
    n = length_of(phi)
    return {"length": n}, [str(n)]


def cmd_equivalent(args):
    a = parse(args.alpha, "word", args.p)
    b = parse(args.beta, "word", args.p)
    etas = equivalent(a, b)
    if etas is None:
        return {"equivalent": False}, ["NOT_EQUIVALENT"]
    return {"equivalent": True, "witness": [_auto_json(e) for e in etas]}, ["EQUIVALENT"] + [str(e) for e in etas]


def cmd_pstable(args):
    I = parse(args.set, "pset", args.p)
    v = is_p_stable(I, args.bound)
    payload = {
        "set": str(I),
        "stable": v.stable,
        "certificate": v.certificate,
        "exact": v.exact,
        "counterexample": list(v.counterexample) if v.counterexample else None,
    }
    text = [f"{I}: {'p-stable' if v.stable else 'not p-stable'} ({v.certificate})"]
    if args.compare:
        J = parse(args.compare, "pset", args.p)
        order = ai_order(I, J, args.bound)
        payload["order"] = {"subset": order.subset, "witness": order.witness, "exact": order.exact, "bound": order.bound}
        text.append(f"{I} vs {J}: {order.label}" + ("" if order.exact else f" (checked up to {order.bound})"))
    return payload, text


def cmd_in_ai(args):
    beta = parse(args.auto, "auto", args.p)
    I = parse(args.set, "pset", args.p)
    ok, fac = triangular_in_AI(beta, I)
    payload = {"member": ok}
    text = ["true" if ok else "false"]
    if fac:
        payload["factorization"] = {"power_part": _auto_json(fac.power_part), "affine_part": _auto_json(fac.affine_part)}
        text.append(f"{fac.power_part}  *  {fac.affine_part}")
    return payload, text


def cmd_sigma(args):
    _need_positive(args.p, "sigma")
    a = parse(args.a, "tpoly", args.p)
    s = SigmaParams(a, parse(args.P, "bipoly", args.p), parse(args.Q, "bipoly", args.p))
    sigma, word = make_sigma(s)
    payload, text = {}, []
    action = args.action
    if action in ("build", "all"):
        payload["sigma"] = _auto_json(sigma)
        payload["word"] = _word_json(word)
        text += [str(sigma), str(word)]
    if action in ("tame", "all"):
        payload["tame"] = sigma_is_tame(s)
        text.append(f"tame: {str(payload['tame']).lower()}")
    if action in ("diffaffine", "all"):
        payload["diff_affine"] = sigma_is_diff_affine(s)
        text.append(f"diff_affine: {str(payload['diff_affine']).lower()}")
    if action in ("ht", "all"):
        payload["in_HT"] = sigma_in_HT(s)
        text.append(f"in_HT: {str(payload['in_HT']).lower()}")
    if action in ("witness", "all"):
        pm = PStableSet.pmult(args.p)
        verdicts = criterion_letters(word, AFF_BA, pm) if is_reduced(word) else []
        payload["letters"] = [{"index": v.index, "position": v.position, "passed": v.passed} for v in verdicts]
        try:
            payload["length3_membership"] = length3_membership(sigma, AFF_BA, pm)
        except ValueError:
            payload["length3_membership"] = None
        text.append(f"length3_membership: {payload['length3_membership']}")
        text += [f"letter {v.index + 1} ({v.position}): {'pass' if v.passed else 'fail'}" for v in verdicts]
    return payload, text


def cmd_witness(args):
    _need_positive(args.p, "witness")
    I = parse(args.I, "pset", args.p)
    J = parse(args.J, "pset", args.p)
    a = parse(args.a, "tpoly", args.p)
    w = nonnormality_witness(I, J, a)
    payload = {
        "n": w.n,
        "verdict": w.verdict,
        "reduced": w.reduced,
        "g": _auto_json(w.g),
        "t": _auto_json(w.t),
        "word": _word_json(w.word),
        "letters": [{"index": v.index, "position": v.position, "passed": v.passed, "detail": v.detail}
                    for v in w.verdicts],
    }
    text = [f"n = {w.n}", f"g = {w.g}", f"word = {w.word}", f"verdict: {w.verdict}"]
    text += [f"letter {v.index + 1} ({v.position}): {'pass' if v.passed else 'fail'} {v.detail}" for v in w.verdicts]
    return payload, text


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tameauto", description="Computations with automorphisms of F_p[t][x,y].")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--p", type=int, default=2, help="characteristic (a prime, or 0 for sanity checks)")
    ap.add_argument("--over", choices=["R", "K"], help="coefficient ring (default: inferred)")
    ap.add_argument("--format", choices=["text", "json"], default="text")
    ap.add_argument("--bound", type=int, default=200, help="search bound for infinite sets")
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        return sp

    verb("classify", cmd_classify, "classification flags").add_argument("auto")
    sp = verb("compose", cmd_compose, "apply phi, then psi")
    sp.add_argument("phi")
    sp.add_argument("psi")
    verb("invert", cmd_invert, "inverse automorphism").add_argument("auto")
    verb("jacobian", cmd_jacobian, "Jacobian matrix and determinant").add_argument("auto")
    sp = verb("decompose", cmd_decompose, "reduced word over F_p(t)")
    sp.add_argument("auto")
    sp.add_argument("--mode", choices=["plain", "diffaffine", "additive"], default="plain")
    verb("length", cmd_length, "amalgam length").add_argument("auto")
    sp = verb("equivalent", cmd_equivalent, "equivalence of two words")
    sp.add_argument("alpha")
    sp.add_argument("beta")
    sp = verb("pstable", cmd_pstable, "p-stability of an exponent set")
    sp.add_argument("set")
    sp.add_argument("--compare", metavar="J", help="also decide containment in J")
    sp = verb("in-ai", cmd_in_ai, "membership of a triangular map in A^I")
    sp.add_argument("auto")
    sp.add_argument("set")
    sp = verb("sigma", cmd_sigma, "Nagata-type automorphisms")
    sp.add_argument("--a", required=True)
    sp.add_argument("--P", required=True)
    sp.add_argument("--Q", required=True)
    sp.add_argument("action", nargs="?", default="all", choices=["build", "tame", "diffaffine", "ht", "witness", "all"])
    sp = verb("witness", cmd_witness, "non-normality witness")
    sp.add_argument("--I", required=True)
    sp.add_argument("--J", required=True)
    sp.add_argument("--a", default="t")
    verb("batch", None, "read one command per line from stdin")
    return ap


def run(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.verb == "batch":
        status = 0
        for line in sys.stdin:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            status = max(status, run(argv[: argv.index("batch")] + shlex.split(line), out, err))
        return status
    try:
        payload, text = args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return 2
    except (DomainError, NotAutomorphism, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        print("\n".join(text), file=out)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
