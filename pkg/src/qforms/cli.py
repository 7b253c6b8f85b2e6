"""Command-line entry point: ``qforms <subcommand> [flags]``.

Every subcommand reads JSON files, prints a JSON report on stdout and a
one-line summary on stderr. Exit codes: 0 ok, 1 malformed input,
2 precondition violation, 3 search exhausted, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import warnings

from . import jsonio as J
from .bounds import (invariant_generators, norm_generators, stability_bound,
                     verify_fg_module)
from .errors import ContextMismatch, InvalidElement, PreconditionViolation, Unsupported
from .factorization import factorize, verify_certificate
from .forms import hyperbolic, zero_module
from .groups import TRIVIAL_GROUP
from .pairs import BassModule, complete_pair, transport
from .rings import GroupRing
from .transvections import verify_isometry

OK, MALFORMED, PRECONDITION, EXHAUSTED, VERIFY_FAILED = 0, 1, 2, 3, 4


class _Exit(Exception):
    def __init__(self, code, report, summary):
        self.code, self.report, self.summary = code, report, summary


def _load(path, what):
    if path is None:
        raise J.MalformedInput(f"missing --{what}")
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise J.MalformedInput(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise J.MalformedInput(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


# -- subcommands ---------------------------------------------------------------


def cmd_validate(args):
    obj = _load(args.input, "input")
    kind = obj.get("type") if isinstance(obj, dict) else None
    if kind is None and isinstance(obj, dict) and "kind" in obj:
        kind = "group"
    elif kind is None and isinstance(obj, dict) and "group" in obj:
        kind = "context"
    if kind == "group":
        J.group_from_json(obj)
    elif kind == "context":
        J.context_from_json(obj)
    elif kind == "module":
        J.module_from_json(obj)
    elif kind == "vector":
        J.vector_from_json(J.context_from_json(J._need(obj, "context", "vector")).ring, obj)
    elif kind == "transvection":
        M = J.module_from_json(J._need(obj, "module", "transvection"))
        J.transvection_from_json(M, obj).check()
    elif kind == "hyperbolic_pair":
        ring = J.context_from_json(J._need(obj, "context", "pair")).ring
        J.pair_from_json(ring, obj)
    elif kind == "factorization_input":
        J.factorization_input_from_json(obj).check()
    elif kind == "factorization_certificate":
        J.certificate_from_json(obj)
    elif kind == "transport_result":
        ring = J.context_from_json(J._need(obj, "context", "transport result")).ring
        for g in obj.get("word") or []:
            J.vector_from_json(ring, g["u"])
            J.vector_from_json(ring, g["v"])
            J.ring_element_from_json(ring, g["a"])
    elif kind == "virtually_abelian":
        J.va_input_from_json(obj)
    elif kind == "generators_certificate":
        J.generators_certificate_from_json(obj)
    elif kind in ("stability_bound", "fg_report", "isometry_report", "verification_report",
                  "error"):
        pass  # plain reports: parsing them as JSON is the whole check
    else:
        raise J.MalformedInput(f"unknown artifact type {kind!r}")
    return {"type": "validation", "ok": True, "artifact": kind}, f"valid {kind}"


def cmd_hyperbolic(args):
    form = J.context_from_json(_load(args.context or args.input, "context"))
    if args.k is None or args.k < 0:
        raise J.MalformedInput("--k must be a non-negative integer")
    M = hyperbolic(form, args.k)
    return J.module_to_json(M), f"H({args.k}) of rank {M.rank}"


def _module_and_transvection(args):
    tobj = _load(args.transvection, "transvection")
    mobj = _load(args.module, "module") if args.module else J._need(tobj, "module", "transvection")
    M = J.module_from_json(mobj)
    return M, J.transvection_from_json(M, tobj)


def cmd_apply(args):
    M, t = _module_and_transvection(args)
    t.check()
    x = M.vector(J.vector_from_json(M.ring, _load(args.input, "input")))
    return J.vector_to_json(t(x), M.form), "applied"


def cmd_verify_isometry(args):
    M, t = _module_and_transvection(args)
    t.check()
    rep = verify_isometry(t, samples=args.samples, rng=random.Random(args.seed))
    out = {"type": "isometry_report", "passed": rep.passed, "checked": rep.checked,
           "seed": args.seed}
    if not rep.passed:
        ce = rep.counterexample
        out["counterexample"] = {"check": ce["check"], "x": J.vector_to_json(ce["x"])}
        raise _Exit(VERIFY_FAILED, out, f"not an isometry ({ce['check']})")
    return out, f"isometry verified on {rep.checked} checks"


def cmd_factorize(args):
    inp = J.factorization_input_from_json(_load(args.input, "input"))
    cert = factorize(inp)
    rep = verify_certificate(inp, cert)
    out = J.certificate_to_json(cert, inp.V0.form)
    if not rep.passed:
        raise _Exit(VERIFY_FAILED, {"type": "verification_report", "passed": False,
                                    "reason": rep.reason}, "own certificate failed to verify")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(J.dumps(out))
    return out, f"{len(cert.factors)} factors, block sizes {cert.block_sizes}"


def _discrepancy_json(d):
    if not d:
        return None
    return {k: (J.vector_to_json(v) if hasattr(v, "coords") else v) for k, v in d.items()}


def cmd_verify_cert(args):
    inp = J.factorization_input_from_json(_load(args.input, "input"))
    inp.check()
    cert = J.certificate_from_json(_load(args.cert, "cert"), inp.ring)
    rep = verify_certificate(inp, cert)
    out = {"type": "verification_report", "passed": rep.passed, "reason": rep.reason,
           "factors": len(cert.factors), "first_discrepancy": _discrepancy_json(rep.discrepancy)}
    if not rep.passed:
        raise _Exit(VERIFY_FAILED, out, f"certificate rejected: {rep.reason}")
    return out, "certificate verified"


def cmd_complete_pair(args):
    obj = _load(args.input, "input")
    mobj = _load(args.module, "module") if args.module else J._need(obj, "module", "input")
    M = J.module_from_json(mobj)
    p = M.vector(J.vector_from_json(M.ring, J._need(obj, "p", "input")))
    y = obj.get("y")
    y = M.vector(J.vector_from_json(M.ring, y)) if y is not None else None
    pair = complete_pair(M, p, y)
    return J.pair_to_json(pair, M.form), "completed to a hyperbolic pair"


def cmd_transport(args):
    obj = _load(args.input, "input")
    ctx = obj.get("context", {"group": J.group_to_json(TRIVIAL_GROUP)})
    if args.modulus is not None:
        ctx = dict(ctx, modulus=args.modulus)
    form = J.context_from_json(ctx)
    V = obj.get("V")
    V = J.module_from_json(V, form=form) if V is not None else zero_module(form)
    bm = BassModule(V, int(J._need(obj, "rank", "transport input")))
    ring = form.ring
    src = obj.get("source")
    source = J.pair_from_json(ring, src) if src is not None else bm.standard_pair()
    target = J.pair_from_json(ring, J._need(obj, "target", "transport input"))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = transport(bm, source, target, max_depth=args.max_depth,
                        node_budget=args.node_budget)
    out = J.transport_result_to_json(res, form)
    if not res.found:
        raise _Exit(EXHAUSTED, out, f"search {res.status} after {res.visited} states")
    return out, f"word of length {res.depth}"


def cmd_bound(args):
    obj = _load(args.group or args.input, "group")
    if isinstance(obj, dict) and obj.get("type") == "virtually_abelian":
        src = J.va_input_from_json(obj)
    else:
        src = J.group_from_json(obj)
    return J.bound_to_json(stability_bound(src)), "stability bound"


def _va(args):
    return J.va_input_from_json(_load(args.input, "input"))


def cmd_invariants(args):
    inp = _va(args)
    cert = invariant_generators(inp, args.degree)
    return (J.generators_certificate_to_json(cert, inp.A0),
            f"{len(cert.generators)} invariant generators up to degree {args.degree}")


def cmd_norms(args):
    inp = _va(args)
    cert = norm_generators(inp, invariant_generators(inp, args.degree), args.degree)
    return (J.generators_certificate_to_json(cert, inp.A0),
            f"{len(cert.generators)} norm generators up to degree {args.degree}")


def cmd_verify_fg(args):
    obj = _load(args.input, "input")
    if "virtually_abelian" in obj:
        va = J.va_input_from_json(obj["virtually_abelian"])
        A0 = va.A0
        gens = invariant_generators(va, obj.get("generator_degree", args.degree)).generators
    else:
        ctx = J._need(obj, "context", "fg input")
        A0 = GroupRing(J.group_from_json(ctx["group"] if "group" in ctx else ctx))
        gens = [J.ring_element_from_json(A0, x) for x in J._need(obj, "ring_generators", "fg input")]
    cands = []
    for c in J._need(obj, "candidates", "fg input"):
        if isinstance(c, dict):
            cands.append((int(c.get("coset", 0)), J.ring_element_from_json(A0, c["element"])))
        else:
            cands.append((0, J.ring_element_from_json(A0, c)))
    rep = verify_fg_module(gens, cands, args.degree, int(obj.get("cosets", 1)))
    out = J.fg_report_to_json(rep, A0)
    if not rep.passed:
        raise _Exit(VERIFY_FAILED, out, f"{len(rep.failures)} monomials not generated")
    return out, f"generated up to degree {args.degree} (bounded check)"


COMMANDS = {
    "validate": cmd_validate,
    "hyperbolic": cmd_hyperbolic,
    "apply": cmd_apply,
    "verify-isometry": cmd_verify_isometry,
    "factorize": cmd_factorize,
    "verify-cert": cmd_verify_cert,
    "complete-pair": cmd_complete_pair,
    "transport": cmd_transport,
    "bound": cmd_bound,
    "invariants": cmd_invariants,
    "norms": cmd_norms,
    "verify-fg": cmd_verify_fg,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="qforms", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--input")
        sp.add_argument("--module")
        sp.add_argument("--transvection")
        sp.add_argument("--cert")
        sp.add_argument("--out")
        sp.add_argument("--context")
        sp.add_argument("--group")
        sp.add_argument("--k", type=int)
        sp.add_argument("--degree", type=int, default=4)
        sp.add_argument("--max-depth", type=int, default=8)
        sp.add_argument("--node-budget", type=int, default=100_000)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=20)
        if name == "transport":
            sp.add_argument("--modulus", type=int)
    return ap


def run(argv=None):
    """Return (exit code, report dict, summary line) without touching stdio."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        if not e.code:  # --help
            return OK, None, ""
        return MALFORMED, {"type": "error", "ok": False, "condition": "usage",
                           "message": "bad command line"}, "usage error"
    try:
        report, summary = COMMANDS[args.command](args)
        return OK, report, summary
    except _Exit as e:
        return e.code, e.report, e.summary
    except PreconditionViolation as e:
        return PRECONDITION, {"type": "error", "ok": False, "condition": e.condition,
                              "message": str(e)}, str(e)
    except Unsupported as e:
        return PRECONDITION, {"type": "error", "ok": False, "condition": "unsupported",
                              "message": str(e)}, str(e)
    except (InvalidElement, ContextMismatch, KeyError, TypeError, ValueError) as e:
        msg = str(e) or type(e).__name__
        return MALFORMED, {"type": "error", "ok": False, "condition": "malformed",
                           "message": msg}, f"malformed input: {msg}"


def main(argv=None):
    code, report, summary = run(argv)
    if report is None:
        return code
    sys.stdout.write(J.dumps(report) + "\n")
    sys.stderr.write(summary + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
