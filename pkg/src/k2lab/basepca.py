"""The base combinatory algebra of coded combinator terms, and its toolkit.

Terms are built from the constants ``K S PAIR FST SND SUCC PRED IFZ FIX``,
numerals ``#n`` and application.  Evaluation is call-by-value: an element of
the algebra is a *value*, i.e. a constant applied to fewer arguments than its
arity (all of them values) or a numeral.  Reduction rules::

    K a b -> a            S a b c -> (a c)(b c)      PAIR a b f -> f a b
    FST (PAIR a b) -> a   SND (PAIR a b) -> b        FIX f x -> f (FIX f) x
    SUCC #n -> #(n+1)     PRED #n -> #(n-1), PRED #0 -> #0
    IFZ #0 a b -> a       IFZ #(n+1) a b -> b

Anything else that saturates a constant is stuck (undefined).

Elements are exchanged as naturals through an injective Goedel numbering:
the Polish serialization of the term, one Elias-gamma symbol per node, read
as a binary numeral behind a leading 1.  Codes grow linearly with term size.
"""
from __future__ import annotations

import random
import re
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

from k2lab._kernels import OK, STUCK, apply_values
from k2lab.coding import CantorScheme, CodingScheme, Neither, Query, Result
from k2lab.errors import CodingError, OutOfFuel, ParseError, Stuck
from k2lab.partialfn import UNDEFINED, Budget, Outcome, Value, run
from k2lab.report import CheckReport

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

K, S, PAIR, FST, SND, SUCC, PRED, IFZ, FIX = range(9)
NUM_BASE = 9
CONST_NAMES = ("K", "S", "PAIR", "FST", "SND", "SUCC", "PRED", "IFZ", "FIX")
ARITY = (2, 3, 3, 1, 1, 1, 1, 3, 2)
_CONST_BY_NAME = {n: i for i, n in enumerate(CONST_NAMES)}


def num(n: int) -> int:
    return NUM_BASE + n


def ap(*terms):
    """Left-nested application of one or more terms."""
    t = terms[0]
    for u in terms[1:]:
        t = (t, u)
    return t


def is_value(t) -> bool:
    todo = [t]
    while todo:
        t = todo.pop()
        if type(t) is int:
            continue
        if type(t) is not tuple:
            return False
        args = []
        while type(t) is tuple:
            args.append(t[1])
            t = t[0]
        if type(t) is not int or t >= NUM_BASE or len(args) >= ARITY[t]:
            return False
        todo.extend(args)
    return True


def show(t) -> str:
    if type(t) is int:
        return CONST_NAMES[t] if t < NUM_BASE else f"#{t - NUM_BASE}"
    if type(t) is str:
        return t
    f, x = t
    right = show(x)
    if type(x) is tuple:
        right = f"({right})"
    return f"{show(f)} {right}"


# ---------------------------------------------------------------- numbering

def _gamma(m: int, out: list) -> None:
    b = bin(m)[2:]
    out.append("0" * (len(b) - 1))
    out.append(b)


def godel_encode(t) -> int:
    out = ["1"]
    todo = [t]
    while todo:
        t = todo.pop()
        if type(t) is tuple:
            out.append("1")  # gamma(1): application
            todo.append(t[1])
            todo.append(t[0])
        elif type(t) is int:
            _gamma(t + 2, out)
        else:
            raise CodingError(f"cannot number a term containing {t!r}")
    return int("".join(out), 2)


@lru_cache(maxsize=1 << 15)
def godel_decode(code: int):
    """Inverse of :func:`godel_encode`; ``None`` on non-codes."""
    if code < 2:
        return None
    bits = bin(code)[3:]
    n = len(bits)
    pos = 0
    stack: list = []
    result = None
    while True:
        if pos >= n:
            return None
        z = 0
        while pos < n and bits[pos] == "0":
            z += 1
            pos += 1
        if pos + z + 1 > n:
            return None
        m = int(bits[pos:pos + z + 1], 2)
        pos += z + 1
        if m == 1:
            stack.append([None])
            continue
        node = m - 2
        while True:
            if not stack:
                result = node
                break
            top = stack[-1]
            if top[0] is None:
                top[0] = node
                break
            stack.pop()
            node = (top[0], node)
        if result is not None:
            return result if pos == n else None


def code_of(t) -> int:
    return godel_encode(t)


def term_of(code: int):
    """The value term with this code, or ``None``."""
    if type(code) is not int or code < 0:
        return None
    t = godel_decode(code)
    if t is None or not is_value(t):
        return None
    return t


# ------------------------------------------------------------------ parsing

@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class PLit:
    term: object


@dataclass(frozen=True)
class PApp:
    fun: object
    arg: object


@dataclass(frozen=True)
class PLam:
    params: tuple
    body: object


_TOKEN = re.compile(r"\s*(?:(\\)|(\.)|(\()|(\))|#(\d+)|([A-Za-z_][A-Za-z0-9_']*))")


def _tokenize(src: str):
    pos, out = 0, []
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {src[pos:pos + 10]!r}")
        pos = m.end()
        lam, dot, lp, rp, numeral, ident = m.groups()
        if lam:
            out.append(("\\", None))
        elif dot:
            out.append((".", None))
        elif lp:
            out.append(("(", None))
        elif rp:
            out.append((")", None))
        elif numeral is not None:
            out.append(("num", int(numeral)))
        else:
            out.append(("id", ident))
    return out


def parse(src: str, env: Optional[dict] = None):
    """Parse term syntax into a pre-term (``PVar``/``PLit``/``PApp``/``PLam``).

    Identifiers resolve to lambda-bound variables, then ``env`` entries, then
    constants; anything else is left as a free ``PVar``.
    """
    env = env or {}
    toks = _tokenize(src)
    pos = 0

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def expr(bound):
        nonlocal pos
        if peek() == "\\":
            pos += 1
            params = []
            while peek() == "id":
                params.append(toks[pos][1])
                pos += 1
            if not params or peek() != ".":
                raise ParseError("malformed lambda")
            pos += 1
            body = expr(bound | set(params))
            return PLam(tuple(params), body)
        node = None
        while True:
            kind = peek()
            if kind in (None, ")", "."):
                break
            if kind == "\\":
                arg = expr(bound)
            else:
                arg = atom(bound)
            node = arg if node is None else PApp(node, arg)
        if node is None:
            raise ParseError("empty expression")
        return node

    def atom(bound):
        nonlocal pos
        kind, val = toks[pos]
        pos += 1
        if kind == "num":
            return PLit(num(val))
        if kind == "(":
            inner = expr(bound)
            if peek() != ")":
                raise ParseError("missing ')'")
            pos += 1
            return inner
        if kind == "id":
            if val in bound:
                return PVar(val)
            if val in env:
                return PLit(env[val])
            if val in _CONST_BY_NAME:
                return PLit(_CONST_BY_NAME[val])
            return PVar(val)
        raise ParseError(f"unexpected token {kind!r}")

    tree = expr(frozenset())
    if pos != len(toks):
        raise ParseError(f"trailing input at token {pos}")
    return tree


# ------------------------------------------------------- bracket abstraction

I_TERM = ap(S, K, K)


def _free(node) -> frozenset:
    if isinstance(node, PVar):
        return frozenset((node.name,))
    if isinstance(node, PApp):
        return _free(node.fun) | _free(node.arg)
    if isinstance(node, PLam):
        return _free(node.body) - set(node.params)
    return frozenset()


def _abs1(x: str, node):
    if isinstance(node, PVar) and node.name == x:
        return PLit(I_TERM)
    if isinstance(node, (PVar, PLit)):
        return PApp(PLit(K), node)
    # node is PApp (lambdas are eliminated first)
    if (isinstance(node.arg, PVar) and node.arg.name == x
            and isinstance(node.fun, (PVar, PLit)) and x not in _free(node.fun)):
        return node.fun
    return PApp(PApp(PLit(S), _abs1(x, node.fun)), _abs1(x, node.arg))


def _eliminate(node):
    if isinstance(node, PLam):
        body = _eliminate(node.body)
        for x in reversed(node.params):
            body = _abs1(x, body)
        return body
    if isinstance(node, PApp):
        return PApp(_eliminate(node.fun), _eliminate(node.arg))
    return node


def _emit(node):
    if isinstance(node, PLit):
        return node.term
    if isinstance(node, PVar):
        raise ParseError(f"unbound variable {node.name!r}")
    return (_emit(node.fun), _emit(node.arg))


def bracket_abstract(t, variables: Sequence[str], env: Optional[dict] = None):
    """Compile ``<x1 ... xn> t`` into a closed combinator term.

    ``t`` is a pre-term or source text.  Only atoms are K-abstracted, so the
    result is a value and partial applications to fewer than ``n`` arguments
    are always defined under call-by-value.
    """
    if isinstance(t, str):
        t = parse(t, env)
    extra = _free(t) - set(variables)
    if extra:
        raise ParseError(f"unbound variable(s): {', '.join(sorted(extra))}")
    return _emit(_eliminate(PLam(tuple(variables), t) if variables else t))


# --------------------------------------------------------------- the algebra

class Pca:
    """Interface of a partial combinatory algebra as used by the checkers."""

    name = "pca"

    def apply(self, a, b, fuel: int) -> Outcome:
        raise NotImplementedError

    def equal(self, x, y, fuel: int) -> Optional[bool]:
        """Observational equality; ``None`` when inconclusive."""
        return x == y

    def sample(self, rng: random.Random):
        raise NotImplementedError

    @property
    def k(self):
        raise NotImplementedError

    @property
    def s(self):
        raise NotImplementedError

    def apply_chain(self, f, *args, fuel: int) -> Outcome:
        out = Value(f)
        for a in args:
            if not out.is_value:
                return out
            out = self.apply(out.value, a, fuel)
        return out


class CodePCA(Pca):
    """Coded combinator terms under call-by-value reduction."""

    name = "codepca"

    def __init__(self):
        self.library: dict[str, object] = {}
        self._build_library()

    # term level -------------------------------------------------------
    def apply_terms(self, f, x, budget: Budget):
        status, v, used = apply_values(f, x, budget.remaining)
        budget.spend(used)
        if status == OK:
            return v
        if status == STUCK:
            raise Stuck()
        raise OutOfFuel()

    def normalize(self, t, budget: Budget):
        if type(t) is tuple:
            if is_value(t):
                return t
            return self.apply_terms(self.normalize(t[0], budget), self.normalize(t[1], budget), budget)
        if type(t) is int:
            return t
        raise ParseError(f"cannot evaluate open term containing {t!r}")

    def compile(self, src: str, env: Optional[dict] = None, fuel: int = 10**5):
        """Parse, abstract and normalize source text to a value term."""
        scope = dict(self.library)
        scope.update(env or {})
        term = bracket_abstract(parse(src, scope), [])
        budget = Budget(fuel)
        try:
            return self.normalize(term, budget)
        except Stuck:
            raise ParseError(f"term is undefined: {src!r}") from None
        except OutOfFuel:
            raise ParseError(f"term did not normalize within {fuel} steps: {src!r}") from None

    def numeral_term(self, n: int):
        return NUM_BASE + n

    def numeral_of(self, t) -> Optional[int]:
        if type(t) is int and t >= NUM_BASE:
            return t - NUM_BASE
        return None

    def show(self, t) -> str:
        return show(t)

    # code level -------------------------------------------------------
    def apply(self, a: int, b: int, fuel: int) -> Outcome:
        f, x = term_of(a), term_of(b)
        if f is None or x is None:
            return UNDEFINED
        return run(lambda budget: godel_encode(self.apply_terms(f, x, budget)), fuel)

    def code(self, t) -> int:
        return godel_encode(t)

    def term(self, code: int):
        return term_of(code)

    def numeral(self, n: int) -> int:
        return godel_encode(NUM_BASE + n)

    def element(self, name: str) -> int:
        return godel_encode(self.library[name])

    @property
    def k(self):
        return godel_encode(K)

    @property
    def s(self):
        return godel_encode(S)

    @property
    def top(self):
        return self.element("TRUE")

    @property
    def bot(self):
        return self.element("FALSE")

    def sample(self, rng: random.Random) -> int:
        return godel_encode(random_value(rng, self))

    # library ----------------------------------------------------------
    def define(self, name: str, src: str) -> None:
        self.library[name] = self.compile(src)

    def _build_library(self) -> None:
        lib = self.library
        lib["I"] = I_TERM
        lib["TRUE"] = num(0)
        lib["FALSE"] = num(1)
        lib["C"] = IFZ
        lib["P"], lib["P0"], lib["P1"], lib["Z"] = PAIR, FST, SND, FIX
        for name, src in KIT_SOURCES:
            self.define(name, src)


# Tuples [u0..un-1] are PAIR #n (PAIR u0 (... (PAIR un-1 #0))).
KIT_SOURCES = (
    ("NIL", "PAIR #0 #0"),
    ("LEN", "\\t. FST t"),
    ("SINGLE", "\\y. PAIR #1 (PAIR y #0)"),
    ("CONS", "\\y t. PAIR (SUCC (FST t)) (PAIR y (SND t))"),
    ("HEAD", "\\t. FST (SND t)"),
    ("TAIL", "\\t. PAIR (PRED (FST t)) (SND (SND t))"),
    ("SNOCL", "FIX (\\f n l y. IFZ n (\\d. PAIR y #0) (\\d. PAIR (FST l) (f (PRED n) (SND l) y)) #0)"),
    ("APPEND", "\\t y. PAIR (SUCC (FST t)) (SNOCL (FST t) (SND t) y)"),
    ("DROP", "FIX (\\f i l. IFZ i (\\d. l) (\\d. f (PRED i) (SND l)) #0)"),
    ("NTH", "\\t i. FST (DROP i (SND t))"),
    ("PLUS", "FIX (\\f m n. IFZ n (\\d. m) (\\d. SUCC (f m (PRED n))) #0)"),
    ("DIFF", "FIX (\\f m n. IFZ n (\\d. m) (\\d. PRED (f m (PRED n))) #0)"),
    ("EQ", "\\x y. IFZ (PLUS (DIFF x y) (DIFF y x)) #0 #1"),
    ("TRI", "FIX (\\f w. IFZ w (\\d. #0) (\\d. PLUS (f (PRED w)) w) #0)"),
    ("CPAIR", "\\x y. PLUS (TRI (PLUS x y)) y"),
    ("CNEXT", "\\p. IFZ (FST p) (\\d. PAIR (SUCC (SND p)) #0) (\\d. PAIR (PRED (FST p)) (SUCC (SND p))) #0"),
    ("CSTEP", "FIX (\\f n p. IFZ n (\\d. p) (\\d. f (PRED n) (CNEXT p)) #0)"),
    ("CUNPAIR", "\\z. CSTEP z (PAIR #0 #0)"),
)


def random_value(rng: random.Random, pca: Optional[CodePCA] = None, depth: int = 2):
    """A random element: numeral, constant, library element or partial application."""
    roll = rng.random()
    if depth <= 0 or roll < 0.3:
        if rng.random() < 0.5:
            return num(rng.randrange(6))
        return rng.choice((K, S, PAIR, FST, SND, SUCC, PRED, IFZ))
    if pca is not None and roll < 0.45:
        return pca.library[rng.choice(("I", "SINGLE", "HEAD", "LEN", "CONS", "NIL"))]
    head = rng.choice((K, S, PAIR, IFZ, FIX))
    nargs = rng.randrange(1, ARITY[head])
    t = head
    for _ in range(nargs):
        t = (t, random_value(rng, pca, depth - 1))
    return t


CODE_PCA = CodePCA()


# ------------------------------------------------------ tuple coding scheme

class TupleScheme(CodingScheme):
    """Sequence coding by the algebra's own tuples, over element codes.

    Queries and results are the pairs ``PAIR FALSE b`` and ``PAIR TRUE c``;
    ``q`` and ``r`` are the codes of FALSE and TRUE.
    """

    name = "tuple"

    def __init__(self, pca: CodePCA = CODE_PCA):
        self.pca = pca
        self.q = pca.bot
        self.r = pca.top
        self.validate()

    def _term(self, code: int):
        t = term_of(code)
        if t is None:
            raise CodingError(f"{code} is not the code of an element")
        return t

    def encode(self, items: Sequence[int]) -> int:
        return godel_encode(tuple_term([self._term(c) for c in items]))

    def decode(self, code: int) -> Optional[list[int]]:
        t = term_of(code)
        if t is None:
            return None
        items = tuple_items(t)
        if items is None:
            return None
        return [godel_encode(u) for u in items]

    def tag_query(self, b: int) -> int:
        return godel_encode(ap(PAIR, num(1), self._term(b)))

    def tag_result(self, c: int) -> int:
        return godel_encode(ap(PAIR, num(0), self._term(c)))

    def untag(self, v: int):
        t = term_of(v)
        parts = pair_parts(t) if t is not None else None
        if parts is None:
            return Neither
        tag, arg = parts
        if tag == num(1):
            return Query(godel_encode(arg))
        if tag == num(0):
            return Result(godel_encode(arg))
        return Neither

    @property
    def neither(self) -> int:
        return godel_encode(K)


def tuple_term(items: Sequence) -> object:
    lst = num(0)
    for u in reversed(items):
        lst = ap(PAIR, u, lst)
    return ap(PAIR, num(len(items)), lst)


def pair_parts(t):
    if type(t) is tuple and type(t[0]) is tuple and t[0][0] == PAIR:
        return t[0][1], t[1]
    return None


def tuple_items(t) -> Optional[list]:
    parts = pair_parts(t)
    if parts is None or type(parts[0]) is not int or parts[0] < NUM_BASE:
        return None
    n = parts[0] - NUM_BASE
    items, rest = [], parts[1]
    for _ in range(n):
        cell = pair_parts(rest)
        if cell is None:
            return None
        items.append(cell[0])
        rest = cell[1]
    if rest != num(0):
        return None
    return items


# ----------------------------------------------------------------- checkers

def _same(pca: Pca, lhs: Outcome, rhs: Outcome, fuel: int) -> Optional[bool]:
    if lhs.out_of_fuel or rhs.out_of_fuel:
        return None
    if lhs.kind != rhs.kind:
        return False
    if not lhs.is_value:
        return True
    return pca.equal(lhs.value, rhs.value, fuel)


def check_pca_axioms(pca: Pca, sample_count: int = 100, seed: int = 0, fuel: int = 10**5,
                     k=None, s=None, max_discard: int = 200) -> CheckReport:
    """Sampled check of axioms (k) and (s).

    Triples on which both sides of (s) exhaust the budget carry no evidence;
    they are redrawn and counted in ``skipped``.
    """
    rng = random.Random(seed)
    k = pca.k if k is None else k
    s = pca.s if s is None else s
    rep = CheckReport(f"{pca.name}:axioms")
    for _ in range(sample_count):
        x, y = pca.sample(rng), pca.sample(rng)
        rep.tested += 1
        kx = pca.apply(k, x, fuel)
        kxy = pca.apply_chain(k, x, y, fuel=fuel)
        if not kx.is_value or not kxy.is_value:
            if kx.out_of_fuel or kxy.out_of_fuel:
                rep.inconclusive += 1
            else:
                rep.fail("k-defined", x, y, kx, kxy)
            continue
        same = pca.equal(kxy.value, x, fuel)
        if same is None:
            rep.inconclusive += 1
        elif not same:
            rep.fail("k-law", x, y, kxy)
    done = discards = 0
    while done < sample_count:
        x, y, z = pca.sample(rng), pca.sample(rng), pca.sample(rng)
        sx = pca.apply(s, x, fuel)
        sxy = pca.apply_chain(s, x, y, fuel=fuel)
        if not sx.is_value or not sxy.is_value:
            done += 1
            rep.tested += 1
            if sx.out_of_fuel or sxy.out_of_fuel:
                rep.inconclusive += 1
            else:
                rep.fail("s-defined", x, y, sx, sxy)
            continue
        lhs = pca.apply(sxy.value, z, fuel)
        # (x z)(y z), evaluated left to right as the reduction machine does
        rhs = pca.apply(x, z, fuel)
        if rhs.is_value:
            xz, rhs = rhs, pca.apply(y, z, fuel)
            if rhs.is_value:
                rhs = pca.apply(xz.value, rhs.value, fuel)
        if lhs.out_of_fuel and rhs.out_of_fuel and discards < max_discard:
            discards += 1
            rep.skipped += 1
            continue
        done += 1
        rep.tested += 1
        same = _same(pca, lhs, rhs, fuel)
        if same is None:
            rep.inconclusive += 1
        elif not same:
            rep.fail("s-law", x, y, z, lhs, rhs)
    return rep


FIX_TEST_FUNCTIONALS = (
    "\\g x. IFZ x (\\d. #0) (\\d. g (PRED x)) #0",
    "\\g x. IFZ x (\\d. #1) (\\d. SUCC (g (PRED x))) #0",
    "\\g x. PAIR x x",
)


def check_kit_laws(pca: CodePCA = CODE_PCA, sample_count: int = 100, z_samples: int = 20,
                   seed: int = 0, fuel: int = 10**5) -> CheckReport:
    """Booleans and cases, pairing, numerals and the fixed point on samples."""
    rng = random.Random(seed)
    rep = CheckReport("codepca:kit")
    C, P, P0, P1 = (pca.element(n) for n in ("C", "P", "P0", "P1"))
    for _ in range(sample_count):
        a, b = pca.sample(rng), pca.sample(rng)
        rep.tested += 1
        checks = (
            ("C-top", pca.apply_chain(C, pca.top, a, b, fuel=fuel), a),
            ("C-bot", pca.apply_chain(C, pca.bot, a, b, fuel=fuel), b),
        )
        pab = pca.apply_chain(P, a, b, fuel=fuel)
        if not pab.is_value:
            rep.fail("pair-defined", a, b, pab)
            continue
        checks += (
            ("p0", pca.apply(P0, pab.value, fuel), a),
            ("p1", pca.apply(P1, pab.value, fuel), b),
        )
        for name, got, want in checks:
            if got != Value(want):
                rep.fail(name, a, b, got)
    Z = pca.element("Z")
    for i in range(z_samples):
        f = pca.code(pca.compile(FIX_TEST_FUNCTIONALS[i % len(FIX_TEST_FUNCTIONALS)]))
        x = pca.numeral(rng.randrange(8))
        rep.tested += 1
        zf = pca.apply(Z, f, fuel)
        if not zf.is_value:
            rep.fail("z-defined", f, zf)
            continue
        lhs = pca.apply(zf.value, x, fuel)
        rhs = pca.apply_chain(f, zf.value, x, fuel=fuel)
        if lhs.out_of_fuel or rhs.out_of_fuel:
            rep.inconclusive += 1
        elif lhs != rhs:
            rep.fail("z-law", f, x, lhs, rhs)
    # tuple coder: injective on a window, manipulators agree with the host
    seen = {}
    for n in range(5):
        for _ in range(4):
            items = [pca.numeral(rng.randrange(4)) for _ in range(n)]
            code = pca.code(tuple_term([pca.term(c) for c in items]))
            if code in seen and seen[code] != items:
                rep.fail("tuple-injective", items, seen[code])
            seen[code] = items
            rep.tested += 1
            if pca.apply(pca.element("LEN"), code, fuel) != Value(pca.numeral(n)):
                rep.fail("tuple-len", items)
            y = pca.numeral(rng.randrange(4))
            want = pca.code(tuple_term([pca.term(c) for c in items + [y]]))
            if pca.apply_chain(pca.element("APPEND"), code, y, fuel=fuel) != Value(want):
                rep.fail("tuple-append", items, y)
            for i, item in enumerate(items):
                got = pca.apply_chain(pca.element("NTH"), code, pca.numeral(i), fuel=fuel)
                if got != Value(item):
                    rep.fail("tuple-nth", items, i, got)
    return rep


# ------------------------------------------------------------ compatibility

@dataclass
class Translators:
    a: int  # <u..> -> [u..]
    b: int  # [u..] -> <u..>
    c: int  # q -> FALSE, r -> TRUE
    lift: Callable[[int], int]  # natural of the scheme -> element code


CANTOR_TRANSLATOR_SOURCES = {
    "b": "FIX (\\f n l. IFZ n (\\d. #0) (\\d. SUCC (CPAIR (FST l) (f (PRED n) (SND l)))) #0)",
    "a": "FIX (\\f z. IFZ z (\\d. NIL) (\\d. (\\h. CONS (FST h) (f (SND h))) (CUNPAIR (PRED z))) #0)",
}


def translators_for(pca: CodePCA, scheme: CodingScheme) -> Optional[Translators]:
    """Known translator programs between ``scheme`` and the tuple coder."""
    if isinstance(scheme, TupleScheme):
        i = pca.element("I")
        return Translators(i, i, i, lambda n: n)
    if isinstance(scheme, CantorScheme):
        enc = pca.compile(CANTOR_TRANSLATOR_SOURCES["b"])
        b = pca.code(pca.compile("\\t. E (FST t) (SND t)", {"E": enc}))
        a = pca.code(pca.compile(CANTOR_TRANSLATOR_SOURCES["a"]))
        # TRUE is #0 and FALSE is #1, so equality with #r is exactly c
        c = pca.code(pca.compile("\\x. EQ x R", {"R": num(scheme.r)}))
        return Translators(a, b, c, pca.numeral)
    return None


def check_compatible(pca: CodePCA, scheme: CodingScheme, fuel: int = 10**7, max_len: int = 4,
                     alphabet: Optional[Sequence[int]] = None,
                     translators: Optional[Translators] = None) -> CheckReport:
    """Verify compatibility witnesses a, b, c on sequences up to ``max_len``."""
    scheme.validate()
    if alphabet is None:
        alphabet = (scheme.q, scheme.r)
    rep = CheckReport(f"compatible:{scheme.name}")
    tr = translators or translators_for(pca, scheme)
    if tr is None:
        rep.notes.append("no witness candidates for this scheme")
        rep.fail("no-witness")
        return rep
    rep.notes.append(f"witnesses a={tr.a} b={tr.b} c={tr.c}")
    seqs: list[list[int]] = [[]]
    frontier: list[list[int]] = [[]]
    for _ in range(max_len):
        frontier = [s + [x] for s in frontier for x in alphabet]
        seqs.extend(frontier)
    for seq in seqs:
        rep.tested += 1
        try:
            coded = tr.lift(scheme.encode(seq))
            items = [tr.lift(x) for x in seq]
        except CodingError as exc:
            rep.fail("lift", seq, str(exc))
            continue
        tup = pca.code(tuple_term([pca.term(i) for i in items]))
        got_a = pca.apply(tr.a, coded, fuel)
        got_b = pca.apply(tr.b, tup, fuel)
        for name, got, want in (("a", got_a, tup), ("b", got_b, coded)):
            if got.out_of_fuel:
                rep.inconclusive += 1
            elif got != Value(want):
                rep.fail(name, seq, got)
    for name, marker, want in (("cq", scheme.q, pca.bot), ("cr", scheme.r, pca.top)):
        rep.tested += 1
        got = pca.apply(tr.c, tr.lift(marker), fuel)
        if got != Value(want):
            rep.fail(name, got)
    return rep


def derived_kit(pca: CodePCA = CODE_PCA, seed: int = 0, fuel: int = 10**5) -> dict:
    """The standard toolkit as element codes, after checking the base axioms."""
    rep = check_pca_axioms(pca, 20, seed, fuel)
    if rep.failures:
        raise RuntimeError(f"base axioms fail; cannot build the kit: {rep.failures[:3]}")
    names = ("P", "P0", "P1", "TRUE", "FALSE", "C", "Z", "NIL", "LEN", "SINGLE", "CONS",
             "HEAD", "TAIL", "APPEND", "NTH")
    kit = {n: pca.element(n) for n in names}
    kit["numeral"] = pca.numeral
    kit["tuple"] = lambda codes: pca.code(tuple_term([pca.term(c) for c in codes]))
    return kit


def code_apply(a: int, b: int, fuel: int) -> Outcome:
    return CODE_PCA.apply(a, b, fuel)
