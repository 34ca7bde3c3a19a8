"""``pca``: batch commands and a line-oriented REPL.

Exit statuses: 0 ok, 1 property failure, 2 out of fuel or inconclusive,
3 parse error.  Output depends only on the commands, seed and fuel.
"""
from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from typing import Optional

from k2lab.basepca import CODE_PCA
from k2lab.dialogue import Trace, fn_to_tree, format_outcome, tree_nodes
from k2lab.errors import K2LabError, ParseError
from k2lab.k2 import ModelTag, make_k, make_k_prime_s_prime, make_model, make_s, make_sigma
from k2lab.oracle import numeral_apply, numeral_oracle
from k2lab.partialfn import PartialFn, Program, load_oracle, run
from k2lab.suites import SUITES, run_suite

OK, FAILED, INCONCLUSIVE, PARSE = 0, 1, 2, 3
MODELS = ("k2", "k2p", "k2orig", "oracle")


class CommandError(Exception):
    """A malformed command; maps to status 3."""


@dataclass
class Session:
    model: str = "k2"
    fuel: int = 10**5
    seed: int = 0
    env: dict = field(default_factory=dict)
    programs: dict = field(default_factory=dict)  # name -> base element code
    oracle: Optional[PartialFn] = None
    allow_inconclusive: bool = False

    def engine(self):
        return make_model("k2" if self.model == "oracle" else self.model)

    def lookup(self, name: str) -> PartialFn:
        if name in self.env:
            return self.env[name]
        m = self.engine()
        builtins = {"k": make_k, "s": make_s, "sigma": make_sigma}
        if name in builtins:
            return builtins[name](m)
        if name in ("kprime", "sprime"):
            if m.tag is not ModelTag.K2ORIG:
                raise CommandError(f"{name} exists only in k2orig")
            kp, sp = make_k_prime_s_prime()
            return kp if name == "kprime" else sp
        raise CommandError(f"unknown name {name!r}")


# ---------------------------------------------------------------- expressions

_TOKEN = re.compile(r"\s*(\(|\)|[A-Za-z_][A-Za-z0-9_']*)")


def _tokens(src: str) -> list:
    out, pos = [], 0
    src = src.strip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise CommandError(f"bad expression near {src[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_expr(src: str):
    """A name, ``(apply f g)`` or ``(f g)``; returns a nested tuple tree."""
    toks = _tokens(src)

    def item(i):
        if i >= len(toks):
            raise CommandError("unexpected end of expression")
        t = toks[i]
        if t == ")":
            raise CommandError("unexpected ')'")
        if t != "(":
            return t, i + 1
        i += 1
        if i < len(toks) and toks[i] == "apply":
            i += 1
        f, i = item(i)
        g, i = item(i)
        if i >= len(toks) or toks[i] != ")":
            raise CommandError("expected ')'")
        return ("app", f, g), i + 1

    tree, end = item(0)
    if end != len(toks):
        raise CommandError("trailing input in expression")
    return tree


def build(tree, session: Session) -> PartialFn:
    if isinstance(tree, str):
        return session.lookup(tree)
    _, f, g = tree
    return session.engine().apply(build(f, session), build(g, session))


# ------------------------------------------------------------------ commands

def _status_of(out) -> int:
    return INCONCLUSIVE if out.out_of_fuel else OK


def _eval_k(session: Session, tree, point: int, trace: bool) -> tuple[str, int]:
    model = session.engine()
    t = Trace(point)
    if isinstance(tree, tuple) and model.tag is not ModelTag.K2ORIG:
        from k2lab.dialogue import run_interrogation
        alpha, beta = build(tree[1], session), build(tree[2], session)
        t.final = run(lambda b: run_interrogation(alpha, beta, b, point, model.scheme, t.steps),
                      session.fuel)
    else:
        f = build(tree, session)
        t.final = run(lambda b: f.value(point, b), session.fuel)
    text = t.format() if trace else format_outcome(t.final) + "\n"
    return text, _status_of(t.final)


def _eval_oracle(session: Session, name: str, point: int, trace: bool) -> tuple[str, int]:
    if session.oracle is None:
        raise CommandError("no oracle loaded")
    if name not in session.programs:
        raise CommandError(f"{name!r} is not a base program")
    out, t = numeral_apply(numeral_oracle(session.oracle), session.programs[name], point,
                           session.fuel)
    text = t.format() if trace else format_outcome(out) + "\n"
    return text, _status_of(out)


def do_eval(session: Session, expr: str, point: int, trace: bool) -> tuple[str, int]:
    tree = parse_expr(expr)
    if session.model == "oracle":
        if not isinstance(tree, str):
            raise CommandError("oracle mode evaluates a single program")
        return _eval_oracle(session, tree, point, trace)
    return _eval_k(session, tree, point, trace)


def do_check(session: Session, suite: str, samples: Optional[int], seed: Optional[int]) -> tuple[str, int]:
    if suite not in SUITES:
        raise CommandError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    model = session.model if session.model in ("k2", "k2p", "k2orig") else "k2"
    fuel = None if session.fuel == 10**5 else session.fuel
    reports = run_suite(suite, samples, session.seed if seed is None else seed, fuel, model)
    status = max((r.status(session.allow_inconclusive) for r in reports), default=OK,
                 key=lambda s: {OK: 0, INCONCLUSIVE: 1, FAILED: 2}[s])
    lines = [r.line() for r in reports]
    for r in reports:
        lines += [f"  note: {n}" for n in r.notes]
        lines += [f"  failure: {f!r}" for f in r.failures[:5]]
    lines.append(f"status {status}")
    return "\n".join(lines) + "\n", status


def _fmt_node(node: tuple) -> str:
    return " ".join(str(x) for x in node)


def do_tree(session: Session, expr: str, depth: int, alphabet: tuple) -> tuple[str, int]:
    if session.model == "oracle":
        raise CommandError("tree needs a K2 model")
    f = build(parse_expr(expr), session)
    tree = fn_to_tree(f, depth, alphabet, session.fuel, session.engine().scheme)
    table = tree_nodes(tree, alphabet, depth)
    lines = []
    status = OK
    for path in sorted(table, key=lambda p: (len(p), p)):
        label = ",".join(map(str, path)) or "-"
        lines.append(f"{label}: {_fmt_node(table[path])}")
        if table[path][0] == "inconclusive":
            status = INCONCLUSIVE
    return "\n".join(lines) + "\n", status


def _int(text: str, what: str) -> int:
    if not text.isdigit():
        raise CommandError(f"{what} must be a natural, got {text!r}")
    return int(text)


def _options(words: list, allowed: dict) -> tuple[list, dict]:
    """Split ``--flag value`` pairs (or bare ``--flag`` for booleans) from positionals."""
    pos, opts, i = [], {}, 0
    while i < len(words):
        w = words[i]
        if w.startswith("--"):
            if w not in allowed:
                raise CommandError(f"unknown option {w}")
            if allowed[w] is bool:
                opts[w] = True
                i += 1
                continue
            if i + 1 >= len(words):
                raise CommandError(f"{w} needs a value")
            opts[w] = words[i + 1]
            i += 2
        else:
            pos.append(w)
            i += 1
    return pos, opts


def _split_expr(rest: str) -> tuple[str, str]:
    """Peel a leading expression (a name or a balanced parenthesis group)."""
    rest = rest.strip()
    if rest.startswith("("):
        depth = 0
        for i, ch in enumerate(rest):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0:
                return rest[:i + 1], rest[i + 1:]
        raise CommandError("unbalanced parentheses")
    head, _, tail = rest.partition(" ")
    return head, tail


def run_command(line: str, session: Session) -> tuple[str, int]:
    """Execute one command; returns printed text and a status."""
    line = line.strip()
    if not line:
        return "", OK
    verb, _, rest = line.partition(" ")
    rest = rest.strip()
    try:
        if verb == "quit":
            return "", OK
        if verb == "model":
            if rest not in MODELS:
                raise CommandError(f"unknown model {rest!r}")
            session.model = rest
            return "", OK
        if verb == "fuel":
            session.fuel = _int(rest, "fuel")
            return "", OK
        if verb == "load":
            name, _, path = rest.partition(" ")
            if not name or not path:
                raise CommandError("usage: load <name> <file>")
            fn = load_oracle(path.strip(), CODE_PCA)
            session.env[name] = fn
            session.oracle = fn
            if isinstance(fn, Program):
                session.programs[name] = CODE_PCA.code(fn.element)
            return "", OK
        if verb == "def":
            name, _, body = rest.partition(" ")
            kind, _, src = body.strip().partition(" ")
            if kind == "@prog":
                term = CODE_PCA.compile(src)
                session.env[name] = Program(CODE_PCA, term)
                session.programs[name] = CODE_PCA.code(term)
            elif kind == "@builtin":
                from k2lab.partialfn import builtin
                session.env[name] = builtin(src.strip())
            else:
                raise CommandError("usage: def <name> @prog <term> | @builtin <name>")
            return "", OK
        if verb == "apply":
            m = re.fullmatch(r"(\S+)\s+(\S+)\s+as\s+(\S+)", rest)
            if not m:
                raise CommandError("usage: apply <f> <g> as <name>")
            f, g = session.lookup(m.group(1)), session.lookup(m.group(2))
            session.env[m.group(3)] = session.engine().apply(f, g)
            return "", OK
        if verb == "eval":
            expr, tail = _split_expr(rest)
            pos, opts = _options(tail.split(), {"--trace": bool})
            if len(pos) != 1:
                raise CommandError("usage: eval <expr> <point> [--trace]")
            return do_eval(session, expr, _int(pos[0], "point"), "--trace" in opts)
        if verb == "check":
            pos, opts = _options(rest.split(), {"--samples": str, "--seed": str})
            if len(pos) != 1:
                raise CommandError("usage: check <suite> [--samples N --seed S]")
            samples = _int(opts["--samples"], "samples") if "--samples" in opts else None
            seed = _int(opts["--seed"], "seed") if "--seed" in opts else None
            return do_check(session, pos[0], samples, seed)
        if verb == "tree":
            expr, tail = _split_expr(rest)
            pos, opts = _options(tail.split(), {"--depth": str, "--alphabet": str})
            if pos:
                raise CommandError("usage: tree <f> --depth D --alphabet a,b,c")
            depth = _int(opts.get("--depth", "3"), "depth")
            alphabet = tuple(_int(a, "alphabet letter") for a in opts.get("--alphabet", "0,1,2").split(","))
            return do_tree(session, expr, depth, alphabet)
        raise CommandError(f"unknown command {verb!r}")
    except (CommandError, ParseError) as e:
        return f"error: {e}\n", PARSE
    except K2LabError as e:
        return f"error: {e}\n", FAILED


def run_script(text: str, session: Session, out=sys.stdout) -> int:
    """Run ``;``/newline-separated commands; stops at ``quit`` or a parse error."""
    status = OK
    for raw in text.splitlines():
        for cmd in raw.split(";"):
            cmd = cmd.strip()
            if not cmd or cmd.startswith("#"):
                continue
            text_out, st = run_command(cmd, session)
            out.write(text_out)
            if st:
                status = st
            if st == PARSE or cmd == "quit":
                return status
    return status


# --------------------------------------------------------------------- batch

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(PARSE)


def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--model", choices=MODELS, default="k2")
    common.add_argument("--fuel", type=int, default=10**5)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--oracle-file")
    common.add_argument("--allow-inconclusive", action="store_true")

    p = _Parser(prog="pca", description="Interrogation-based combinatory algebras workbench.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    ev = sub.add_parser("eval", parents=[common], help="evaluate an element at a point")
    ev.add_argument("expr", nargs="?")
    ev.add_argument("--prog", help="a base program, bound to the name 'prog'")
    ev.add_argument("--point", type=int, required=True)
    ev.add_argument("--trace", action="store_true")
    ch = sub.add_parser("check", parents=[common], help="run a property suite")
    ch.add_argument("suite", choices=sorted(SUITES))
    ch.add_argument("--samples", type=int)
    tr = sub.add_parser("tree", parents=[common], help="explore an element as a tree")
    tr.add_argument("expr")
    tr.add_argument("--prog")
    tr.add_argument("--depth", type=int, default=3)
    tr.add_argument("--alphabet", default="0,1,2")
    rp = sub.add_parser("repl", parents=[common], help="read commands from stdin")
    rp.add_argument("-c", "--commands", help="run these commands instead of reading stdin")
    return p


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else PARSE
    session = Session(model=args.model, fuel=args.fuel, seed=args.seed,
                      allow_inconclusive=args.allow_inconclusive)
    out = sys.stdout
    try:
        if args.oracle_file:
            fn = load_oracle(args.oracle_file, CODE_PCA)
            session.env["oracle"] = session.oracle = fn
        if getattr(args, "prog", None):
            term = CODE_PCA.compile(args.prog)
            session.env["prog"] = Program(CODE_PCA, term)
            session.programs["prog"] = CODE_PCA.code(term)
    except (ParseError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return PARSE
    if args.command == "eval":
        expr = args.expr or ("prog" if "prog" in session.env else None)
        if expr is None:
            sys.stderr.write("error: nothing to evaluate\n")
            return PARSE
        text, status = _guard(lambda: do_eval(session, expr, args.point, args.trace))
    elif args.command == "check":
        text, status = _guard(lambda: do_check(session, args.suite, args.samples, None))
    elif args.command == "tree":
        text, status = run_command(f"tree {args.expr} --depth {args.depth} --alphabet {args.alphabet}",
                                   session)
    else:
        script = args.commands if args.commands is not None else sys.stdin.read()
        return run_script(script, session, out)
    out.write(text)
    return status


def _guard(thunk) -> tuple[str, int]:
    try:
        return thunk()
    except (CommandError, ParseError) as e:
        return f"error: {e}\n", PARSE


if __name__ == "__main__":
    sys.exit(main())
