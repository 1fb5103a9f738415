"""Command-line front end: ``nclrobots <subcommand> ...``."""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import formats, gadgets, motion, reducer
from .embed import EmbeddingError, PlanarityError, check_embedding, embed
from .formats import InstanceDocument
from .generate import random_cases
from .ncl import CapExceeded, GraphFormatError, PreconditionError, validate_graph
from .render import render_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _yes(ok: bool) -> str:
    return "YES" if ok else "NO"


def _ncl_params(args):
    """Parameters on the input graph from the positional arguments."""
    g = formats.parse_graph(_read(args.graph))
    rest = args.args
    if args.problem == reducer.F2F:
        if len(rest) != 2:
            raise UsageError("f2f needs SOURCE.orient TARGET.orient")
        return g, tuple(formats.parse_orientation(_read(p)) for p in rest)
    if args.problem == reducer.F2E:
        if len(rest) != 2:
            raise UsageError("f2e needs SOURCE.orient EDGE")
        return g, (formats.parse_orientation(_read(rest[0])), rest[1])
    if len(rest) != 4:
        raise UsageError("e2e needs EDGE1 HEAD1 EDGE2 HEAD2")
    return g, ((rest[0], rest[1]), (rest[2], rest[3]))


def cmd_validate(args) -> int:
    g = formats.parse_graph(_read(args.graph), validate=False)
    problems = validate_graph(g)
    for p in problems:
        print(p)
    if not problems:
        print("valid")
    return EXIT_FAIL if problems else EXIT_OK


def cmd_embed(args) -> int:
    g = formats.parse_graph(_read(args.graph))
    emb = embed(g)
    problems = check_embedding(g, emb)
    for p in problems:
        print(p, file=sys.stderr)
    _emit(formats.serialize_embedding(emb), args.out)
    return EXIT_FAIL if problems else EXIT_OK


def cmd_reduce(args) -> int:
    g, params = _ncl_params(args)
    out = reducer.reduce_graph(g, args.problem, params, args.variant)
    _emit(formats.serialize_instance(InstanceDocument(out.instance, out.question, out.provenance)), args.out)
    return EXIT_OK


def cmd_solve_ncl(args) -> int:
    g, params = _ncl_params(args)
    ok, moves = reducer.solve_ncl(g, args.problem, params)
    print(_yes(ok))
    if ok and moves is not None and args.witness:
        print("moves " + " ".join(moves))
    return EXIT_OK


def cmd_solve_mp(args) -> int:
    doc = formats.parse_instance(_read(args.instance))
    q = doc.question
    if q is None:
        raise UsageError("instance file has no question record")
    if q.variant != args.variant:
        q = _convert(q, args.variant)
    try:
        ok, plan, _ = reducer.solve_question(doc.instance, q, args.cap)
    except motion.Inconclusive:
        print("INCONCLUSIVE")
        return EXIT_OK
    print(_yes(ok))
    if ok and plan is not None and args.witness:
        print(f"moves {len(plan)}")
        for p, d in plan.steps:
            print(f"move {p[0]} {p[1]} {d}")
    return EXIT_OK


def _convert(q: reducer.Question, variant: str) -> reducer.Question:
    """Ask a different variant of the stored question when the records allow it."""
    if variant in (reducer.M2S, reducer.M2SR) and q.S and q.t is not None:
        s = q.s
        if variant == reducer.M2SR and s is None:
            raise UsageError("m2sr needs an 's' record")
        return reducer.Question(variant, q.S, s=s, t=q.t)
    if variant == reducer.S2S and q.s is not None and q.t is not None:
        return reducer.Question(variant, s=q.s, t=q.t)
    if variant == reducer.M2M and q.S and q.T:
        return reducer.Question(variant, q.S, q.T)
    if variant == reducer.LABELED and q.S and q.T:
        return reducer.Question(variant, q.S, q.T, assignment=tuple(zip(q.S, q.T)))
    raise UsageError(f"the stored {q.variant} question cannot be asked as {variant}")


def cmd_verify_gadgets(args) -> int:
    kinds = [args.kind] if args.kind else [gadgets.CONNECTOR, gadgets.AND, gadgets.OR]
    ok = True
    for kind in kinds:
        rep = gadgets.verify_gadget_semantics(kind)
        stats = dict(rep.stats)
        print(f"{kind}: {'ok' if rep.ok else 'FAILED'} gadgets={stats.get('gadgets', 0)} "
              f"states={stats.get('states', 0)} hidden-splits={len(rep.warnings)}")
        for p in rep.problems:
            print(f"  {p}")
        ok &= rep.ok
    if args.pairs:
        total = gadgets.Report()
        for left, side, right in gadgets.connected_pairs():
            total = total.merged(gadgets.verify_structural_lemmas(left, side, right))
        stats = dict(total.stats)
        print(f"pairs: {'ok' if total.ok else 'FAILED'} pairs={stats.get('pairs', 0)}")
        for p in total.problems:
            print(f"  {p}")
        ok &= total.ok
    return EXIT_OK if ok else EXIT_FAIL


def cmd_crosscheck(args) -> int:
    g = formats.parse_graph(_read(args.graph))
    emb = embed(g)
    rng = random.Random(args.seed)
    problems = [args.problem] if args.problem else list(reducer.PROBLEMS)
    agree = inconclusive = 0
    for k in range(args.trials):
        problem = problems[k % len(problems)]
        case, = random_cases(g, rng, 1, problem)
        r = reducer.crosscheck(g, problem, case.params, args.cap, emb)
        motion_answers = " ".join(f"{v}={'?' if a is None else _yes(a)}" for v, a in r.motion)
        status = "INCONCLUSIVE" if r.inconclusive else ("agree" if r.agree and r.witnesses_ok else "DISAGREE")
        print(f"trial {k} {problem} ncl={_yes(r.ncl)} {motion_answers} {status}")
        agree += r.agree and r.witnesses_ok
        inconclusive += r.inconclusive
    print(f"summary trials={args.trials} agree={agree} inconclusive={inconclusive} "
          f"disagree={args.trials - agree - inconclusive}")
    return EXIT_OK if agree + inconclusive == args.trials else EXIT_FAIL


def cmd_render(args) -> int:
    doc = formats.parse_instance(_read(args.instance))
    config = None
    if doc.question is not None and doc.question.S:
        config = doc.question.T if args.target and doc.question.T else doc.question.S
    _emit(render_svg(doc.instance, config), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nclrobots", description="NCL to unit-square robot motion planning workbench")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check a constraint graph")
    s.add_argument("graph")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("embed", help="grid-embed a planar constraint graph")
    s.add_argument("graph")
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_embed)

    for name, func, helptext in (("reduce", cmd_reduce, "emit the motion-planning instance"),
                                 ("solve-ncl", cmd_solve_ncl, "answer the NCL question")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--problem", required=True, choices=reducer.PROBLEMS)
        s.add_argument("graph")
        s.add_argument("args", nargs="*", help="orientation files, edge ids and heads")
        if name == "reduce":
            s.add_argument("--variant", choices=reducer.VARIANTS)
            s.add_argument("-o", "--out")
        else:
            s.add_argument("--witness", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("solve-mp", help="answer a motion-planning question")
    s.add_argument("--variant", required=True, choices=reducer.VARIANTS)
    s.add_argument("--cap", type=int, default=motion.DEFAULT_STATE_CAP)
    s.add_argument("--witness", action="store_true")
    s.add_argument("instance")
    s.set_defaults(func=cmd_solve_mp)

    s = sub.add_parser("verify-gadgets", help="exhaustive gadget truth tables")
    s.add_argument("--kind", choices=(gadgets.CONNECTOR, gadgets.AND, gadgets.OR))
    s.add_argument("--pairs", action="store_true", help="also check every connected gadget pair")
    s.set_defaults(func=cmd_verify_gadgets)

    s = sub.add_parser("crosscheck", help="compare NCL and motion answers on random questions")
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--problem", choices=reducer.PROBLEMS)
    s.add_argument("--cap", type=int, default=motion.DEFAULT_STATE_CAP)
    s.add_argument("graph")
    s.set_defaults(func=cmd_crosscheck)

    s = sub.add_parser("render", help="draw an instance as SVG")
    s.add_argument("instance")
    s.add_argument("--target", action="store_true", help="draw T instead of S")
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_render)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"nclrobots: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (formats.ParseError, GraphFormatError, PreconditionError, PlanarityError, ValueError) as exc:
        print(f"nclrobots: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, EmbeddingError) as exc:
        print("INCONCLUSIVE")
        print(f"nclrobots: {exc}", file=sys.stderr)
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
