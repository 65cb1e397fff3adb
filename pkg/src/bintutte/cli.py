"""Command-line interface.

Exit codes: 0 success, 2 input/parameter error, 3 size or budget exceeded,
4 verification failed, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import codes, gadgets, groups, partition, reductions
from .errors import InputError, ParameterError, SizeError, SynthesisError
from .exact import format_rational, parse_rational
from .gf2 import format_matrix, parse_matrix
from .hypergraph import parse_hypergraph
from .intervals import decimal_digits
from .matroid import BinaryMatroid, dual, from_graph, full_rank, parse_graph

EXIT_OK, EXIT_INPUT, EXIT_SIZE, EXIT_VERIFY, EXIT_USAGE = 0, 2, 3, 4, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "--gamma -1/2" through as a value, not an option
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _rational(text):
    try:
        return parse_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _matroid(path: str) -> BinaryMatroid:
    return BinaryMatroid(parse_matrix(_read(path)))


def _code(path: str) -> codes.GeneratingMatrix:
    return codes.GeneratingMatrix(parse_matrix(_read(path)))


def _weights(args, count: int, default=None):
    """Per-element weights from --weights FILE, else the constant --gamma."""
    if getattr(args, "weights", None):
        lines = [ln.strip() for ln in _read(args.weights).splitlines()]
        values = [parse_rational(ln) for ln in lines if ln and not ln.startswith("#")]
        if len(values) != count:
            raise InputError(f"weights file has {len(values)} values for {count} elements")
        return values
    gamma = args.gamma if args.gamma is not None else default
    if gamma is None:
        raise InputError("give --gamma or --weights")
    return [gamma] * count


def _wmap(m: BinaryMatroid, values):
    return dict(zip(m.ground, values))


def _column(m: BinaryMatroid, one_based: int):
    if not 1 <= one_based <= len(m):
        raise InputError(f"--element {one_based} is outside 1..{len(m)}")
    return m.ground[one_based - 1]


def _emit(out, text: str):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(record) -> str:
    return json.dumps(record, sort_keys=False) + "\n"


def _matroid_dump(m: BinaryMatroid, w=None, prefactor=None) -> str:
    text = format_matrix(m.rep)
    if prefactor is not None:
        text += f"# prefactor {format_rational(prefactor)}\n"
    if w is not None:
        text += "# weights " + " ".join(format_rational(w[e]) for e in m.ground) + "\n"
    return text


def _check(name, lhs, rhs, ok=None, **extra) -> tuple[str, int]:
    ok = (lhs == rhs) if ok is None else ok
    rec = {"check": name, "lhs": format_rational(lhs), "rhs": format_rational(rhs), "pass": bool(ok)}
    rec.update(extra)
    return _json(rec), EXIT_OK if ok else EXIT_VERIFY


# -- eval ----------------------------------------------------------------------


def cmd_eval(args) -> tuple[str, int]:
    kind = args.what
    threads = args.threads
    if kind in ("tutte", "potts", "ising", "spectrum", "var", "T"):
        m = _matroid(args.input)
    if kind == "tutte":
        _need(args, "q")
        val = partition.tutte_tilde(m, args.q, _wmap(m, _weights(args, len(m))), workers=threads)
    elif kind == "T":
        _need(args, "x", "y")
        val = partition.tutte_T(m, args.x, args.y)
    elif kind == "potts":
        _need(args, "q")
        if args.q.denominator != 1:
            raise ParameterError("Potts q must be an integer")
        val = partition.potts_matroid(m, int(args.q), _wmap(m, _weights(args, len(m))), workers=threads)
    elif kind == "ising":
        val = partition.ising(m, _wmap(m, _weights(args, len(m))), workers=threads)
    elif kind == "spectrum":
        return str(partition.sat_spectrum(m)) + "\n", EXIT_OK
    elif kind == "var":
        _need(args, "N")
        enc = reductions.var_binary_tutte(m, args.N, args.precision_bits)
        if enc.is_point:
            return format_rational(enc.lo) + "\n", EXIT_OK
        return enc.to_str(decimal_digits(args.precision_bits)) + "\n", EXIT_OK
    elif kind == "rc":
        _need(args, "q")
        g = parse_graph(_read(args.input))
        val = partition.random_cluster_graph(g, args.q, _weights(args, len(g.edges)))
    elif kind == "hyper":
        _need(args, "q")
        h = parse_hypergraph(_read(args.input))
        if args.q.denominator != 1:
            raise ParameterError("Potts q must be an integer")
        val = partition.hypergraph_potts(h, int(args.q), _weights(args, h.m))
    elif kind == "we":
        _need(args, "lam")
        val = codes.weight_enumerator(_code(args.input), args.lam)
    elif kind == "ci":
        _need(args, "x")
        val = groups.cycle_index(groups.parse_group(_read(args.input)), args.x, args.cap)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    return format_rational(val) + "\n", EXIT_OK


def _need(args, *names):
    flags = {"lam": "--lambda", "N": "--N"}
    for n in names:
        if getattr(args, n, None) is None:
            raise UsageError(f"{flags.get(n, '--' + n)} is required")


def cmd_dual(args):
    m = _matroid(args.input)
    return format_matrix(dual(m).rep), EXIT_OK


def cmd_orbits(args):
    _need(args, "x")
    if args.x.denominator != 1 or args.x < 1:
        raise ParameterError("--x must be a positive integer for orbit counting")
    g = groups.parse_group(_read(args.input))
    return f"{groups.orbit_count(g, int(args.x), args.cap)}\n", EXIT_OK


# -- gadgets -----------------------------------------------------------------------


def cmd_gadget(args):
    kind = args.what
    if kind == "synth":
        _need(args, "target", "avail", "tolerance")
        plan = gadgets.synthesize_weight(args.target, args.avail, args.tolerance, 2, args.max_plan)
        return _json(_plan_record(plan)), EXIT_OK
    m = _matroid(args.input)
    _need(args, "element")
    c = _column(m, args.element)
    if kind == "apply":
        if not args.plan:
            raise UsageError("--plan is required")
        q = args.q if args.q is not None else Fraction(2)
        plan = gadgets.parse_plan(args.plan, q)
        w = _wmap(m, _weights(args, len(m), default=plan.weight))
        m2, w2, pref = gadgets.apply_plan(m, w, c, plan, q)
        return _matroid_dump(m2, w2, pref), EXIT_OK
    _need(args, "gamma1", "gamma2")
    w = _wmap(m, _weights(args, len(m), default=Fraction(1)))
    # the replaced element carries the combined weight of the two halves
    if kind == "parallel":
        w[c] = gadgets.parallel_weight(args.gamma1, args.gamma2)
        m2, w2 = gadgets.parallel_extend(m, w, c, args.gamma1, args.gamma2)
        return _matroid_dump(m2, w2, Fraction(1)), EXIT_OK
    _need(args, "q")
    w[c] = gadgets.series_weight(args.gamma1, args.gamma2, args.q)
    m2, w2, pref = gadgets.series_extend(m, w, c, args.q, args.gamma1, args.gamma2)
    return _matroid_dump(m2, w2, pref), EXIT_OK


def _plan_record(plan: gadgets.GadgetPlan) -> dict:
    return {
        "plan": str(plan),
        "gamma_star": format_rational(plan.weight),
        "prefactor": format_rational(plan.prefactor),
        "leaves": plan.size,
        "series_steps": plan.root.series,
    }


def cmd_reduce(args):
    _need(args, "epsilon")
    h = parse_hypergraph(_read(args.input))
    params = reductions.ReductionParams.for_hypergraph(h, args.epsilon, args.seed, args.N)
    m, _ = reductions.hyper_to_matroid(h, params)
    text = f"# N {params.N}{' heuristic' if params.heuristic else ''} seed {params.seed}\n"
    return text + format_matrix(m.rep), EXIT_OK


# -- verify --------------------------------------------------------------------------


def cmd_verify(args):
    kind = args.what
    if kind == "eq5":
        _need(args, "q")
        g = parse_graph(_read(args.input))
        w = _weights(args, len(g.edges))
        lhs = partition.random_cluster_graph(g, args.q, w)
        m = from_graph(g)
        rhs = args.q**g.n * partition.tutte_tilde(m, args.q, _wmap(m, w))
        return _check("eq5", lhs, rhs)
    if kind == "lemma2":
        _need(args, "epsilon")
        h = parse_hypergraph(_read(args.input))
        rep = reductions.verify_reduction(h, args.epsilon, args.trials, args.seed, args.precision_bits, args.N)
        digits = decimal_digits(args.precision_bits)
        lines = [_json(t.as_dict(digits)) for t in rep.trials]
        ok = rep.pass_rate >= Fraction(3, 4)
        lines.append(_json({
            "check": "lemma2", "N": rep.N, "heuristic_N": rep.heuristic_N,
            "target": format_rational(rep.target), "passes": rep.passes, "trials": len(rep.trials),
            "pass_rate": format_rational(rep.pass_rate),
            "failure_budget_reduction": format_rational(rep.budget_reduction),
            "failure_budget_oracle": format_rational(rep.budget_oracle),
            "failure_budget_oracle_nominal": format_rational(rep.budget_oracle_nominal),
            "pass": ok,
        }))
        return "".join(lines), EXIT_OK if ok else EXIT_VERIFY
    if kind in ("greene", "cor8"):
        gm = _code(args.input)
        if kind == "greene":
            _need(args, "lam")
            return _check("greene", *codes.greene_check(gm, args.lam))
        _need(args, "x")
        lhs, rhs, ok = groups.corollary8_check(gm, args.x, args.cap)
        return _check("cor8", lhs, rhs, ok)
    m = _matroid(args.input)
    threads = args.threads
    if kind == "eq9":
        w = _wmap(m, _weights(args, len(m)))
        lhs = 2**m.rep.rows * partition.tutte_tilde(m, 2, w, workers=threads)
        return _check("eq9", lhs, partition.ising(m, w, workers=threads))
    if kind == "eq3":
        _need(args, "x", "y")
        q, gamma = (args.x - 1) * (args.y - 1), args.y - 1
        if q == 0:
            raise ParameterError("(x-1)(y-1) must be nonzero")
        lhs = partition.tutte_T(m, args.x, args.y)
        rhs = (q / gamma) ** full_rank(m) * partition.tutte_tilde(m, q, gamma, workers=threads)
        return _check("eq3", lhs, rhs)
    if kind == "duality":
        _need(args, "q")
        w = _weights(args, len(m))
        if any(g == 0 for g in w):
            raise ParameterError("duality transfer needs nonzero weights")
        lhs = partition.tutte_tilde(m, args.q, _wmap(m, w), workers=threads)
        d = dual(m)
        prod = Fraction(1)
        for g in w:
            prod *= g
        rhs = prod / args.q ** full_rank(m) * partition.tutte_tilde(
            d, args.q, {e: args.q / g for e, g in zip(m.ground, w)}, workers=threads)
        return _check("duality", lhs, rhs)
    if kind in ("lemma3", "lemma4"):
        _need(args, "element", "gamma1", "gamma2", "q")
        c = _column(m, args.element)
        w = _wmap(m, _weights(args, len(m), default=Fraction(1)))
        if kind == "lemma3":
            w[c] = gadgets.parallel_weight(args.gamma1, args.gamma2)
            m2, w2 = gadgets.parallel_extend(m, w, c, args.gamma1, args.gamma2)
            pref = Fraction(1)
        else:
            w[c] = gadgets.series_weight(args.gamma1, args.gamma2, args.q)
            m2, w2, pref = gadgets.series_extend(m, w, c, args.q, args.gamma1, args.gamma2)
        lhs = pref * partition.tutte_tilde(m, args.q, w, workers=threads)
        rhs = partition.tutte_tilde(m2, args.q, w2, workers=threads)
        return _check(kind, lhs, rhs, prefactor=format_rational(pref))
    raise UsageError(kind)  # pragma: no cover


# -- parser --------------------------------------------------------------------------


EVAL_KINDS = ["tutte", "T", "rc", "potts", "ising", "spectrum", "hyper", "we", "ci", "var"]
VERIFY_KINDS = ["eq9", "eq5", "eq3", "greene", "cor8", "duality", "lemma3", "lemma4", "lemma2"]


def _common(p: argparse.ArgumentParser):
    p.add_argument("--q", type=_rational)
    p.add_argument("--gamma", type=_rational)
    p.add_argument("--weights", metavar="FILE")
    p.add_argument("--x", type=_rational)
    p.add_argument("--y", type=_rational)
    p.add_argument("--lambda", dest="lam", type=_rational)
    p.add_argument("--epsilon", type=_rational)
    p.add_argument("--N", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--precision-bits", type=int, default=128)
    p.add_argument("--cap", type=int, default=groups.DEFAULT_CAP)
    p.add_argument("--max-plan", type=int, default=64)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--output", "-o")
    p.add_argument("--element", type=int, help="1-based column")
    p.add_argument("--gamma1", type=_rational)
    p.add_argument("--gamma2", type=_rational)
    p.add_argument("--plan")
    p.add_argument("--target", type=_rational)
    p.add_argument("--avail", type=_rational)
    p.add_argument("--tolerance", type=_rational)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bintutte", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate a polynomial exactly")
    p.add_argument("what", choices=EVAL_KINDS)
    p.add_argument("input")
    _common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("dual", help="print a representation of the dual matroid")
    p.add_argument("input")
    _common(p)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("gadget", help="series/parallel extensions and weight synthesis")
    p.add_argument("what", choices=["parallel", "series", "synth", "apply"])
    p.add_argument("input", nargs="?")
    _common(p)
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("reduce", help="hypergraph to binary matroid reduction")
    p.add_argument("what", choices=["hyper2matroid"])
    p.add_argument("input")
    _common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check an identity by computing both sides")
    p.add_argument("what", choices=VERIFY_KINDS)
    p.add_argument("input")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("orbits", help="count orbits on strings by union-find")
    p.add_argument("input")
    _common(p)
    p.set_defaults(func=cmd_orbits)
    return parser


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "gadget" and args.what != "synth" and not args.input:
            raise UsageError("gadget: an input matrix is required")
        text, code = args.func(args)
        _emit(args.output, text)
        return code
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SynthesisError as exc:
        print(f"synthesis failed: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except SizeError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE


def main():
    sys.exit(run())
