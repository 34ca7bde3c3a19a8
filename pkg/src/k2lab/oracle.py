"""Relativized application ``a .^f b`` over the coded combinator algebra.

``a`` is run on tuples ``[b, u0, .., uj-1]`` of the answers received so far.
A reply ``[FALSE, v]`` asks the oracle at ``v``; ``[TRUE, c]`` ends the
dialogue with ``c``.  Oracles given on the naturals are read through
numerals, so ``f`` answers ``#n`` with ``#f(n)`` and is undefined elsewhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from k2lab.basepca import (CODE_PCA, PAIR, CodePCA, ap, godel_encode, num, pair_parts,
                           term_of, tuple_term)
from k2lab.dialogue import Trace
from k2lab.errors import Stuck
from k2lab.partialfn import Budget, Outcome, PartialFn, Value, eval_fn, run
from k2lab.report import CheckReport

TOP, BOT = num(0), num(1)


@dataclass(frozen=True)
class OracleModel:
    """The algebra ``base`` with application relativized to ``f``.

    With ``numerals`` (the default) ``f`` is a function on the naturals read
    through numerals; otherwise it acts on element codes directly.
    """

    f: PartialFn
    base: CodePCA = CODE_PCA
    numerals: bool = True

    def ask(self, v, budget: Budget):
        """The oracle's answer (a term) at the query term ``v``."""
        if self.numerals:
            n = self.base.numeral_of(v)
            if n is None:
                raise Stuck()
            return self.base.numeral_term(self.f.value(n, budget))
        return term_of(self.f.value(godel_encode(v), budget))

    def run_terms(self, a, b, budget: Budget, steps: Optional[list] = None):
        """Drive the dialogue of ``a`` on ``b``; returns the result term."""
        pca = self.base
        u = [b]
        while True:
            budget.spend()
            w = pca.apply_terms(a, tuple_term(u), budget)
            parts = pair_parts(w)
            if parts is None:
                raise Stuck()
            tag, arg = parts
            if tag == TOP:
                return arg
            if tag != BOT:
                raise Stuck()
            ans = self.ask(arg, budget)
            if ans is None:
                raise Stuck()
            if steps is not None:
                steps.append((arg, ans))
            u.append(ans)

    def apply(self, a: int, b: int, fuel: int) -> Outcome:
        """``a .^f b`` on element codes."""
        return oracle_apply(self, a, b, fuel)[0]

    def as_function(self, a: int) -> PartialFn:
        """``n -> m`` iff ``a .^f #n = #m``."""
        return _OracleProgram(self, a)


def _show(pca: CodePCA, t) -> int:
    """Numerals print as their naturals; other elements as their codes."""
    n = pca.numeral_of(t)
    return godel_encode(t) if n is None else n


def oracle_apply(m: OracleModel, a: int, b: int, fuel: int) -> tuple[Outcome, Trace]:
    """``a .^f b`` with its trace.  Codes that name no element are Undefined."""
    at, bt = term_of(a), term_of(b)
    trace = Trace(b)
    if at is None or bt is None:
        trace.final = Outcome("undefined")
        return trace.final, trace
    raw: list = []
    out = run(lambda budget: godel_encode(m.run_terms(at, bt, budget, raw)), fuel)
    trace.steps = [(godel_encode(v), godel_encode(w)) for v, w in raw]
    trace.final = out
    return out, trace


def numeral_apply(m: OracleModel, a: int, n: int, fuel: int) -> tuple[Outcome, Trace]:
    """``a .^f #n``; numerals in the trace and the result print as naturals."""
    at = term_of(a)
    pca = m.base
    trace = Trace(n)
    if at is None:
        trace.final = Outcome("undefined")
        return trace.final, trace
    raw: list = []
    out = run(lambda budget: _show(pca, m.run_terms(at, pca.numeral_term(n), budget, raw)), fuel)
    trace.steps = [(_show(pca, v), _show(pca, w)) for v, w in raw]
    trace.final = out
    return out, trace


def replay_oracle_trace(m: OracleModel, a: int, trace: Trace, fuel: int) -> list[str]:
    """Problems found when replaying a numeral-mode trace; empty when valid."""
    pca = m.base
    at = term_of(a)
    problems = []
    u = [pca.numeral_term(trace.point)]
    for i, (v, w) in enumerate(trace.steps):
        got = run(lambda bud: pca.apply_terms(at, tuple_term(u), bud), fuel)
        if not got.is_value or pair_parts(got.value) != (BOT, pca.numeral_term(v)):
            problems.append(f"step {i}: program does not ask {v}")
        ans = eval_fn(m.f, v, fuel)
        if ans != Value(w):
            problems.append(f"step {i}: oracle at {v} is {ans!r}, trace says {w}")
        u.append(pca.numeral_term(w))
    if trace.final.is_value:
        got = run(lambda bud: pca.apply_terms(at, tuple_term(u), bud), fuel)
        if not got.is_value or pair_parts(got.value) != (TOP, pca.numeral_term(trace.final.value)):
            problems.append("final reply does not carry the recorded result")
    return problems


class _OracleProgram(PartialFn):
    kind = "oracle-program"

    def __init__(self, m: OracleModel, a: int):
        super().__init__()
        self.m, self.a, self.term = m, a, term_of(a)

    def _compute(self, x, budget):
        if self.term is None:
            raise Stuck()
        pca = self.m.base
        n = pca.numeral_of(self.m.run_terms(self.term, pca.numeral_term(x), budget))
        if n is None:
            raise Stuck()
        return n

    def __repr__(self):
        return f"OracleProgram({self.a})"


def numeral_oracle(f: PartialFn, base: CodePCA = CODE_PCA) -> OracleModel:
    return OracleModel(f, base, True)


# Programs for the relativized algebra.  ``u`` is the tuple [b, answers...].
ORACLE_PROGRAMS = {
    "identity": "\\u. PAIR TRUE (HEAD u)",
    "echo": "\\u. IFZ (PRED (LEN u)) (\\d. PAIR FALSE (HEAD u)) (\\d. PAIR TRUE (NTH u #1)) #0",
    "succ": "\\u. PAIR TRUE (SUCC (HEAD u))",
    # f(b) + f(b+1): two queries
    "two-query": ("\\u. IFZ (PRED (LEN u)) (\\d. PAIR FALSE (HEAD u))"
                  " (\\d. IFZ (PRED (PRED (LEN u))) (\\d. PAIR FALSE (SUCC (HEAD u)))"
                  " (\\d. PAIR TRUE (PLUS (NTH u #1) (NTH u #2))) #0) #0"),
    # the left and right injections into a join: ask [TRUE, b] or [FALSE, b]
    "join-left": ("\\u. IFZ (PRED (LEN u)) (\\d. PAIR FALSE (PAIR TRUE (HEAD u)))"
                  " (\\d. PAIR TRUE (NTH u #1)) #0"),
    "join-right": ("\\u. IFZ (PRED (LEN u)) (\\d. PAIR FALSE (PAIR FALSE (HEAD u)))"
                   " (\\d. PAIR TRUE (NTH u #1)) #0"),
}


def oracle_program(name: str, pca: CodePCA = CODE_PCA) -> int:
    return pca.code(pca.compile(ORACLE_PROGRAMS[name]))


def check_represents_in_oracle(m: OracleModel, a: int, g: PartialFn, points: Iterable[int],
                               fuel: int = 10**5) -> CheckReport:
    """``a`` witnesses ``g <=_T f`` on ``points``: ``a .^f #x = #g(x)``."""
    rep = CheckReport("oracle:represents")
    prog = m.as_function(a)
    for x in points:
        rep.tested += 1
        lhs, rhs = eval_fn(prog, x, fuel), eval_fn(g, x, fuel)
        if lhs.out_of_fuel or rhs.out_of_fuel:
            rep.inconclusive += 1
        elif lhs != rhs:
            rep.fail(x, lhs, rhs)
    return rep


# -------------------------------------------------------------------- joins

def pair_code(tag_top: bool, x: int, pca: CodePCA = CODE_PCA) -> Optional[int]:
    """The code of ``[TRUE, x]`` or ``[FALSE, x]`` for an element code ``x``."""
    t = term_of(x)
    if t is None:
        return None
    return godel_encode(ap(PAIR, TOP if tag_top else BOT, t))


class Join(PartialFn):
    """``(f join g)([TRUE, x]) = f(x)``, ``([FALSE, x]) = g(x)``, undefined elsewhere.

    Functions here act on element codes.
    """

    kind = "join"

    def __init__(self, f: PartialFn, g: PartialFn):
        super().__init__()
        self.f, self.g = f, g

    def _compute(self, y, budget):
        budget.spend()
        t = term_of(y)
        parts = pair_parts(t) if t is not None else None
        if parts is None:
            raise Stuck()
        tag, arg = parts
        if tag == TOP:
            return self.f.value(godel_encode(arg), budget)
        if tag == BOT:
            return self.g.value(godel_encode(arg), budget)
        raise Stuck()

    def __repr__(self):
        return f"Join({self.f!r}, {self.g!r})"


def join(f: PartialFn, g: PartialFn, kit=None) -> PartialFn:
    return Join(f, g)


# Applied in the partial model to gamma1 then gamma2 this yields their join.
# The inner dialogue (with gamma1) sees u = [w, answers...] where w is the
# outer tuple [y, answers from gamma2...].
JOIN_WITNESS_SOURCE = (
    "\\u. (\\w. (\\y. IFZ (FST y)"
    " (\\d. IFZ (PRED (LEN u)) (\\e. PAIR FALSE (SND y)) (\\e. PAIR TRUE (PAIR TRUE (NTH u #1))) #0)"
    " (\\d. IFZ (PRED (FST y))"
    "   (\\e. IFZ (PRED (LEN w)) (\\g. PAIR TRUE (PAIR FALSE (SND y))) (\\g. PAIR TRUE (PAIR TRUE (NTH w #1))) #0)"
    "   (\\e. FST #0) #0) #0) (HEAD w)) (HEAD u)"
)


def join_witness_element(pca: CodePCA = CODE_PCA) -> int:
    """An element ``a`` with ``bar(a) gamma1 gamma2 = gamma1 join gamma2`` in K2^p."""
    return pca.code(pca.compile(JOIN_WITNESS_SOURCE))


class Bar(PartialFn):
    """``bar(a)``: the partial function ``x -> a x`` on element codes."""

    kind = "bar"

    def __init__(self, pca: CodePCA, a: int):
        super().__init__()
        self.pca, self.a, self.term = pca, a, term_of(a)

    def _compute(self, x, budget):
        budget.spend()
        t = term_of(x)
        if self.term is None or t is None:
            raise Stuck()
        return godel_encode(self.pca.apply_terms(self.term, t, budget))

    def __repr__(self):
        return f"bar({self.pca.show(self.term) if self.term is not None else self.a})"


def make_bar(pca: CodePCA, a: int) -> PartialFn:
    return Bar(pca, a)


def downward_closure_member(B, f: PartialFn, points: Iterable[int],
                            fuel: int = 10**5) -> Optional[bool]:
    """Some ``g`` in ``B`` extends ``f`` on the sampled points; None if fuel ran out
    before an answer could be given."""
    points = list(points)
    fvals = {}
    unsure = False
    for x in points:
        o = eval_fn(f, x, fuel)
        if o.out_of_fuel:
            unsure = True
        elif o.is_value:
            fvals[x] = o
    for g in B:
        ok, g_unsure = True, False
        for x, o in fvals.items():
            go = eval_fn(g, x, fuel)
            if go.out_of_fuel:
                g_unsure = True
            elif go != o:
                ok = False
                break
        if ok and not g_unsure and not unsure:
            return True
        if ok:
            unsure = True
    return None if unsure else False


def check_join_laws(f: PartialFn, g: PartialFn, points: Iterable[int], fuel: int = 10**5,
                    pca: CodePCA = CODE_PCA) -> CheckReport:
    """Both join equations at every element code in ``points``."""
    rep = CheckReport("oracle:join-laws")
    j = join(f, g)
    for x in points:
        for top, side in ((True, f), (False, g)):
            y = pair_code(top, x, pca)
            if y is None:
                continue
            rep.tested += 1
            lhs, rhs = eval_fn(j, y, fuel), eval_fn(side, x, fuel)
            if lhs.out_of_fuel or rhs.out_of_fuel:
                rep.inconclusive += 1
            elif lhs != rhs:
                rep.fail("left" if top else "right", x, lhs, rhs)
    return rep
