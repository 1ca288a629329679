"""Command-line front end: one command per invocation, one JSON document on stdout.

Exit codes: 0 answer (including No and Inconclusive), 2 parse error,
3 precondition violation, 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import estimates, reduction, retracts
from .endo import (
    Endomorphism,
    apply,
    check_fixed,
    compose,
    iterate,
    jacobian_det,
    pair_jacobian,
    verify_corollary_instance,
)
from .errors import InvariantBreach, ParseError, PreconditionError, StepCapExceeded
from .groebner import subalgebra_membership
from .parsing import parse_polynomial, parse_univariate
from .poly import Polynomial, compose_univariate, format_univariate
from .verdict import Verdict

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_BREACH = 0, 2, 3, 4

DEFAULT_D, DEFAULT_K = 4, 3

GEN = estimates.GEN_NAMES


class _Usage(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="retractlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help_, *flags):
        sp = sub.add_parser(name, help=help_)
        for flag in flags:
            _FLAGS[flag](sp)
        sp.add_argument("--verify", action="store_true", help="re-check every certificate in the output")
        sp.add_argument("--json", action="store_true", help="JSON output (the default and only mode)")
        return sp

    command("jacobian", "Jacobian determinant of (fx, fy)", "phi")
    command("apply", "substitute (fx, fy) into p", "phi", "p")
    command("compose", "compose(phi, psi): phi substituted into psi's images", "phi", "psi")
    command("iterate", "k-th iterate of phi", "phi", "k")
    command("reduce-pair", "elementary reduction of the pair (p, q)", "p", "q")
    command("is-automorphism", "decide whether (fx, fy) is an automorphism", "phi")
    command("is-coordinate", "decide whether p is a coordinate", "p", "bound")
    command("in-subalgebra", "is p in Q[u, v]?", "p", "uv")
    command("decompose", "write p = g(q) with deg g = d", "p", "d")
    command("is-retract-generator", "does q generate a retract?", "q", "bound")
    command("retract-membership", "does p lie in a proper retract?", "p", "bound")
    command("is-test", "is p a test polynomial?", "p", "bound")
    command("fixed-check", "is p fixed by phi?", "phi", "p")
    command("corollary-check", "check phi, psi, p against the injective-inverse criterion", "phi", "psi", "p")
    command("su-bound", "degree lower bound for w(p, q)", "w", "p", "q")
    command("lemma-check", "check deg w(p, q) > min(n, k) for a reduced pair", "w", "p", "q")
    command("phi-infinity", "bounded probe of the intersection of the images of phi^k", "phi", "deg", "iters")
    return parser


def _add_phi(sp):
    sp.add_argument("--fx", required=True, help="image of x")
    sp.add_argument("--fy", required=True, help="image of y")


def _add_psi(sp):
    sp.add_argument("--gx", required=True, help="image of x under the second map")
    sp.add_argument("--gy", required=True, help="image of y under the second map")


def _add_p(sp):
    sp.add_argument("-p", "--poly", required=True, dest="p")


def _add_q(sp):
    sp.add_argument("-q", required=True)


def _add_uv(sp):
    sp.add_argument("-u", required=True, help="first subalgebra generator")
    sp.add_argument("-v", required=True, help="second subalgebra generator")


def _add_w(sp):
    sp.add_argument("-w", required=True, help="expression in the generators s (for p) and t (for q)")


def _add_k(sp):
    sp.add_argument("-k", "--iters", type=int, required=True, dest="k")


def _add_d(sp):
    sp.add_argument("-d", type=int, required=True)


def _add_bound(sp):
    sp.add_argument("--bound", type=int, default=None, help="search degree bound")


def _add_deg(sp):
    sp.add_argument("--deg", type=int, default=DEFAULT_D, help=f"degree bound D (default {DEFAULT_D})")


def _add_iters(sp):
    sp.add_argument("-k", "--iters", type=int, default=DEFAULT_K, dest="k",
                    help=f"number of iterates K (default {DEFAULT_K})")


_FLAGS = {
    "phi": _add_phi, "psi": _add_psi, "p": _add_p, "q": _add_q, "uv": _add_uv, "w": _add_w,
    "k": _add_k, "d": _add_d, "bound": _add_bound, "deg": _add_deg, "iters": _add_iters,
}

_INPUT_KEYS = ("fx", "fy", "gx", "gy", "p", "q", "u", "v", "w", "k", "d", "bound", "deg")


# -- serialization ----------------------------------------------------------------


def verdict_json(v: Verdict, certificate=None) -> dict:
    out = {"outcome": v.outcome}
    if certificate is not None:
        out["certificate"] = certificate
    if v.reason:
        out["reason"] = v.reason
    if v.bounds:
        out["bounds"] = v.bounds
    return out


def _phi(args) -> Endomorphism:
    return Endomorphism(parse_polynomial(args.fx), parse_polynomial(args.fy))


def _psi(args) -> Endomorphism:
    return Endomorphism(parse_polynomial(args.gx), parse_polynomial(args.gy))


def _gen(text: str) -> Polynomial:
    return parse_polynomial(text, GEN)


# -- commands ---------------------------------------------------------------------


def cmd_jacobian(args):
    return jacobian_det(_phi(args)).to_str()


def cmd_apply(args):
    return apply(_phi(args), parse_polynomial(args.p)).to_str()


def cmd_compose(args):
    return compose(_phi(args), _psi(args)).to_json()


def cmd_iterate(args):
    if args.k < 1:
        raise PreconditionError("k must be >= 1")
    return iterate(_phi(args), args.k).to_json()


def cmd_reduce_pair(args):
    p, q = parse_polynomial(args.p), parse_polynomial(args.q)
    return reduction.elementary_reduce(p, q).to_json()


def cmd_is_automorphism(args):
    v = reduction.is_automorphism(_phi(args))
    if v.flags.get("stalled"):
        raise InvariantBreach(f"reduction stalled at {v.flags['reduced']}")
    return verdict_json(v, v.certificate.to_json() if v.is_yes else None)


def cmd_is_coordinate(args):
    p = parse_polynomial(args.p)
    v = reduction.is_coordinate(p, args.bound)
    if v.flags.get("stalled"):
        raise InvariantBreach("reduction stalled on (p, mate)")
    cert = None
    if v.is_yes:
        cert = {"mate": v.certificate["mate"].to_str(),
                "decomposition": v.certificate["decomposition"].to_json()}
    return verdict_json(v, cert)


def cmd_in_subalgebra(args):
    f, u, v = parse_polynomial(args.p), parse_polynomial(args.u), parse_polynomial(args.v)
    expr = subalgebra_membership(f, u, v)
    if expr is None:
        return verdict_json(Verdict.no("the normal form modulo {u - s, v - t} involves x or y"))
    return verdict_json(Verdict.yes(expr), {"expr": expr.to_str(GEN)})


def cmd_decompose(args):
    found = retracts.decompose_poly(parse_polynomial(args.p), args.d)
    if found is None:
        return {"decomposition": None}
    g, q = found
    return {"decomposition": {"g": format_univariate(g), "q": q.to_str()}}


def _bound(args):
    return retracts.DEFAULT_B_PARAM if args.bound is None else args.bound


def _guard(fn):
    """Run a bounded search; the global step cap turns into Inconclusive."""
    try:
        return fn()
    except StepCapExceeded:
        return None


def cmd_is_retract_generator(args):
    q = parse_polynomial(args.q)
    bound = _bound(args)
    v = _guard(lambda: retracts.is_retract_generator(q, bound))
    if v is None:
        return verdict_json(Verdict.inconclusive({"B_param": bound}, reason="step cap"))
    cert = None
    if v.is_yes:
        cert = v.certificate.to_json()
    elif v.is_no and v.certificate:
        cert = {"g": format_univariate(v.certificate["g"]), "h": v.certificate["h"].to_str()}
    return verdict_json(v, cert)


def cmd_retract_membership(args):
    p = parse_polynomial(args.p)
    bound = _bound(args)
    v = _guard(lambda: retracts.retract_membership(p, bound))
    if v is None:
        return verdict_json(Verdict.inconclusive({"B_param": bound}, reason="step cap"))
    cert = None
    if v.is_yes:
        rc, g = v.certificate
        cert = {**rc.to_json(), "g": format_univariate(g)}
    out = verdict_json(v, cert)
    out["branches"] = v.flags.get("branches", [])
    return out


def cmd_is_test(args):
    p = parse_polynomial(args.p)
    bound = _bound(args)
    report = _guard(lambda: retracts.is_test_polynomial(p, bound))
    if report is None:
        return verdict_json(Verdict.inconclusive({"B_param": bound}, reason="step cap"))
    cert = None
    if report.witness is not None:
        cert = {"witness": report.witness.to_json(),
                "retract": report.retract_found.to_json(),
                "g": format_univariate(report.outer)}
    elif report.verdict.is_yes:
        cert = report.verdict.certificate
    out = verdict_json(report.verdict, cert)
    out["branches"] = list(report.branches)
    return out


def cmd_fixed_check(args):
    phi, p = _phi(args), parse_polynomial(args.p)
    return {"fixed": check_fixed(phi, p), "image": apply(phi, p).to_str()}


def cmd_corollary_check(args):
    report = verify_corollary_instance(_phi(args), _psi(args), parse_polynomial(args.p))
    v = report.phi_automorphism_verdict
    if v.flags.get("stalled"):
        raise InvariantBreach("reduction stalled on phi")
    return {
        "jacobian_constant": report.jacobian_constant,
        "psi_injective": report.psi_injective,
        "recovers_p": report.recovers_p,
        "phi_automorphism": verdict_json(v, v.certificate.to_json() if v.is_yes else None),
        "contradiction": report.contradiction,
        "note": report.note,
    }


def cmd_su_bound(args):
    w, p, q = _gen(args.w), parse_polynomial(args.p), parse_polynomial(args.q)
    bound = estimates.su_lower_bound(w, p, q)
    return {"bound": bound, "estimate": estimates.estimate_N(p, q).to_json()}


def cmd_lemma_check(args):
    w, p, q = _gen(args.w), parse_polynomial(args.p), parse_polynomial(args.q)
    check = estimates.lemma_check(w, p, q)
    if not check.holds:
        raise InvariantBreach(f"deg w(p, q) = {check.degree} <= min(n, k) on a reduced pair")
    return check.to_json()


def cmd_phi_infinity(args):
    return estimates.phi_infinity_probe(_phi(args), args.deg, args.k).to_json()


COMMANDS = {
    "jacobian": cmd_jacobian,
    "apply": cmd_apply,
    "compose": cmd_compose,
    "iterate": cmd_iterate,
    "reduce-pair": cmd_reduce_pair,
    "is-automorphism": cmd_is_automorphism,
    "is-coordinate": cmd_is_coordinate,
    "in-subalgebra": cmd_in_subalgebra,
    "decompose": cmd_decompose,
    "is-retract-generator": cmd_is_retract_generator,
    "retract-membership": cmd_retract_membership,
    "is-test": cmd_is_test,
    "fixed-check": cmd_fixed_check,
    "corollary-check": cmd_corollary_check,
    "su-bound": cmd_su_bound,
    "lemma-check": cmd_lemma_check,
    "phi-infinity": cmd_phi_infinity,
}


# -- certificate re-checking ------------------------------------------------------


def _check(cond: bool, what: str):
    if not cond:
        raise InvariantBreach(f"certificate check failed: {what}")


def _endo(data) -> Endomorphism:
    return Endomorphism.from_json(data)


def _check_retract_cert(cert: dict):
    q = parse_polynomial(cert["generator"])
    g1, g2 = parse_univariate(cert["g1"]), parse_univariate(cert["g2"])
    rc = retracts.RetractCertificate(q, g1, g2)
    _check(rc.parametrization_holds(), "q(g1(t), g2(t)) = t")
    pi = _endo(cert["retraction"])
    _check(pi == rc.retraction, "retraction = (g1(q), g2(q))")
    _check(retracts.retraction_is_idempotent(pi), "retraction is idempotent")
    _check(apply(pi, q) == q, "retraction fixes q")
    return q, pi


def verify_result(command: str, args, result) -> None:
    """Re-check the certificates in ``result`` from their printed form."""
    outcome = result.get("outcome") if isinstance(result, dict) else None
    if command == "jacobian":
        _check(parse_polynomial(result) == jacobian_det(_phi(args)), "jacobian re-parses")
    elif command == "apply":
        _check(parse_polynomial(result) == apply(_phi(args), parse_polynomial(args.p)), "image re-parses")
    elif command in ("compose", "iterate"):
        _endo(result)
    elif command == "reduce-pair":
        p, q = parse_polynomial(result["first"]), parse_polynomial(result["second"])
        for step in reversed([reduction.step_from_json(s) for s in result["steps"]]):
            p, q = step.inverse().apply(p, q)
        _check((p, q) == (parse_polynomial(args.p), parse_polynomial(args.q)), "reduction replays")
    elif command == "is-automorphism" and outcome == "yes":
        dec = reduction.Decomposition.from_json(result["certificate"])
        _check(dec.replay() == _phi(args), "decomposition replays to phi")
    elif command == "is-coordinate" and outcome == "yes":
        p = parse_polynomial(args.p)
        mate = parse_polynomial(result["certificate"]["mate"])
        jac = pair_jacobian(p, mate)
        _check(jac.is_constant() and not jac.is_zero(), "D(p, mate) is a nonzero constant")
        dec = reduction.Decomposition.from_json(result["certificate"]["decomposition"])
        _check(dec.replay() == Endomorphism(p, mate), "decomposition replays to (p, mate)")
    elif command == "in-subalgebra" and outcome == "yes":
        expr = _gen(result["certificate"]["expr"])
        u, v = parse_polynomial(args.u), parse_polynomial(args.v)
        _check(expr.subs(u, v) == parse_polynomial(args.p), "expr(u, v) = f")
    elif command == "decompose" and result["decomposition"] is not None:
        g = parse_univariate(result["decomposition"]["g"])
        q = parse_polynomial(result["decomposition"]["q"])
        _check(compose_univariate(g, q) == parse_polynomial(args.p), "g(q) = p")
    elif command == "is-retract-generator" and outcome == "yes":
        q, _ = _check_retract_cert(result["certificate"])
        _check(q == parse_polynomial(args.q), "certificate is about q")
    elif command == "retract-membership" and outcome == "yes":
        cert = result["certificate"]
        q, pi = _check_retract_cert(cert)
        p = parse_polynomial(args.p)
        _check(compose_univariate(parse_univariate(cert["g"]), q) == p, "g(q) = p")
        _check(apply(pi, p) == p, "retraction fixes p")
    elif command == "is-test" and outcome == "no":
        cert = result["certificate"]
        p = parse_polynomial(args.p)
        q, pi = _check_retract_cert(cert["retract"])
        witness = _endo(cert["witness"])
        _check(retracts.witness_is_valid(witness, p), "witness fixes p with zero Jacobian")
        _check(compose_univariate(parse_univariate(cert["g"]), q) == p, "g(q) = p")
    elif command == "corollary-check" and result["phi_automorphism"]["outcome"] == "yes":
        dec = reduction.Decomposition.from_json(result["phi_automorphism"]["certificate"])
        _check(dec.replay() == _phi(args), "decomposition replays to phi")
        _check(not result["contradiction"], "no contradiction")
    elif command == "su-bound":
        w, p, q = _gen(args.w), parse_polynomial(args.p), parse_polynomial(args.q)
        _check(estimates.substitute_generators(w, p, q).degree >= result["bound"], "deg w(p, q) >= bound")
    elif command == "phi-infinity":
        phi = _phi(args)
        for k in range(1, args.k + 1):
            it = iterate(phi, k)
            for text in result["basis"]:
                f = parse_polynomial(text)
                expr = subalgebra_membership(f, it.imgx, it.imgy)
                _check(expr is not None and expr.subs(it.imgx, it.imgy) == f,
                       f"{text} lies in the image of phi^{k}")


# -- entry points -----------------------------------------------------------------


def _inputs(args) -> dict:
    return {key: getattr(args, key) for key in _INPUT_KEYS if getattr(args, key, None) is not None}


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


def run(argv) -> tuple[int, str]:
    """Execute one command; returns ``(exit_code, stdout_text)``."""
    argv = list(argv)
    name = argv[0] if argv else None
    try:
        args = build_parser().parse_args(argv)
    except _Usage as exc:
        return EXIT_PARSE, _dump({"command": name, "inputs": {}, "error": {"kind": "usage", "message": str(exc)}})
    inputs = _inputs(args)
    doc = {"command": args.command, "inputs": inputs}
    try:
        result = COMMANDS[args.command](args)
        if args.verify:
            verify_result(args.command, args, result)
            doc["verified"] = True
        doc["result"] = result
        code = EXIT_OK
    except ParseError as exc:
        doc["error"] = {"kind": "parse", "message": str(exc), "position": exc.position}
        code = EXIT_PARSE
    except (PreconditionError, ValueError) as exc:
        doc["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        code = EXIT_PRECONDITION
    except (InvariantBreach, StepCapExceeded) as exc:
        doc["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        code = EXIT_BREACH
    return code, _dump(doc)


def main(argv=None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
