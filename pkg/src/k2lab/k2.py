"""Kleene's second model over the naturals, in three flavours.

``K2``     total functions, tagged query/result protocol
``K2P``    partial functions, same protocol
``K2ORIG`` Kleene's original protocol: 0 means "tell me more", y+1 means y

Strategies are generator functions.  A bisequential strategy yields
``QueryFirst(u)`` / ``QuerySecond(v)``, receives the answer, and finally
returns its result; raising :class:`Stuck` means no move.  Compiled
strategies replay the generator against the answers coded in their argument.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Union

from k2lab.coding import COMPACT, CodingScheme, Neither, Query, Result
from k2lab.dialogue import run_interrogation
from k2lab.errors import CodingOverflow, Stuck
from k2lab.partialfn import (AppNode, Budget, PartialFn, Totalized, eval_fn,
                             from_function, run)


class ModelTag(enum.Enum):
    K2 = "k2"
    K2P = "k2p"
    K2ORIG = "k2orig"


@dataclass(frozen=True)
class QueryFirst:
    point: int


@dataclass(frozen=True)
class QuerySecond:
    point: int


Move = Union[QueryFirst, QuerySecond]
Strategy = Callable[[], Iterator]


class Model:
    """Application engine for one model tag over one coding scheme."""

    def __init__(self, tag: ModelTag, scheme: Optional[CodingScheme] = None):
        self.tag = ModelTag(tag)
        if scheme is None:
            scheme = COMPACT
        self.scheme = scheme

    def __repr__(self):
        return f"Model({self.tag.value}, {self.scheme.name})"

    @property
    def partial(self) -> bool:
        return self.tag is ModelTag.K2P

    def apply(self, alpha: PartialFn, beta: PartialFn) -> PartialFn:
        return AppNode(self, alpha, beta)

    def app_point(self, alpha: PartialFn, beta: PartialFn, x: int, budget: Budget) -> int:
        if self.tag is ModelTag.K2ORIG:
            return kleene_point(alpha, beta, x, budget, self.scheme)
        return run_interrogation(alpha, beta, budget, x, self.scheme)

    def apply_chain(self, f: PartialFn, *args: PartialFn) -> PartialFn:
        for a in args:
            f = self.apply(f, a)
        return f

    @property
    def off_protocol(self) -> Optional[int]:
        """Value of compiled elements off the protocol (None: undefined)."""
        return None if self.partial else self.scheme.qq


def kleene_point(alpha: PartialFn, beta: PartialFn, x: int, budget: Budget,
                 scheme: CodingScheme = COMPACT) -> int:
    fast = _s_first_argument(alpha, beta, x, budget, scheme)
    if fast is not None:
        return fast
    code, n = scheme.encode([x]), 0
    while True:
        budget.spend()
        v = alpha.value(code, budget)
        if v > 0:
            return v - 1
        code = scheme.extend(code, beta.value(n, budget))
        n += 1


def make_model(tag, scheme: Optional[CodingScheme] = None) -> Model:
    return Model(ModelTag(tag), scheme)


def apply(model: Model, alpha: PartialFn, beta: PartialFn) -> PartialFn:
    return model.apply(alpha, beta)


# --------------------------------------------------------- strategy running

class _OffProtocol(Exception):
    pass


def execute(strategy: Strategy, alpha: PartialFn, beta: PartialFn, budget: Budget) -> int:
    """Direct execution of a bisequential strategy against two oracles."""
    gen = strategy()
    try:
        move = next(gen)
        while True:
            budget.spend()
            if isinstance(move, QueryFirst):
                ans = alpha.value(move.point, budget)
            elif isinstance(move, QuerySecond):
                ans = beta.value(move.point, budget)
            else:
                raise TypeError(f"not a move: {move!r}")
            move = gen.send(ans)
    except StopIteration as stop:
        return stop.value


def execute_unary(strategy: Strategy, alpha: PartialFn, budget: Budget) -> int:
    gen = strategy()
    try:
        move = next(gen)
        while True:
            budget.spend()
            move = gen.send(alpha.value(move.point, budget))
    except StopIteration as stop:
        return stop.value


def run_strategy(strategy: Strategy, alpha: PartialFn, beta: PartialFn, fuel: int):
    return run(lambda b: execute(strategy, alpha, beta, b), fuel)


def from_move_function(move: Callable) -> Strategy:
    """Wrap ``move(first_history, second_history)`` as a generator strategy.

    ``move`` returns ``QueryFirst``, ``QuerySecond``, an ``int`` result, or
    ``None`` for no move.
    """

    def strategy():
        fh: list = []
        sh: list = []
        while True:
            m = move(tuple(fh), tuple(sh))
            if m is None:
                raise Stuck()
            if isinstance(m, QueryFirst):
                fh.append((m.point, (yield m)))
            elif isinstance(m, QuerySecond):
                sh.append((m.point, (yield m)))
            else:
                return m

    return strategy


def _replay(strategy: Strategy, firsts: list, seconds: list, scheme: CodingScheme,
            budget: Budget) -> int:
    """Value of a compiled strategy given the answers coded in its probe.

    ``firsts`` are the answers of the inner (first) argument, ``seconds`` of
    the outer one; see :func:`compile_strategy_family`.
    """
    gen = strategy()
    fi = si = 0
    try:
        move = next(gen)
        while True:
            budget.spend()
            if isinstance(move, QueryFirst):
                if fi < len(firsts):
                    ans, fi = firsts[fi], fi + 1
                else:
                    return scheme.tag_query(move.point)
            elif isinstance(move, QuerySecond):
                if si < len(seconds):
                    ans, si = seconds[si], si + 1
                elif fi == len(firsts):
                    return scheme.tag_result(scheme.tag_query(move.point))
                else:
                    raise _OffProtocol()
            else:
                raise TypeError(f"not a move: {move!r}")
            move = gen.send(ans)
    except StopIteration as stop:
        if fi == len(firsts) and si == len(seconds):
            return scheme.tag_result(scheme.tag_result(stop.value))
        raise _OffProtocol() from None
    except Stuck:
        raise _OffProtocol() from None


class CompiledFamily(PartialFn):
    """The element ``phi_G`` with ``((phi_G alpha) beta)(a) = G_a(alpha, beta)``.

    Probes have the form ``<<a, b...>, a0...>``: the point of the outer
    dialogue (``a`` and the second argument's answers) followed by the first
    argument's answers.  Unpointed compilation drops ``a``.
    """

    kind = "strategy"

    def __init__(self, family: Callable[[int], Strategy], model: Model, pointed: bool = True,
                 name: str = "phi"):
        super().__init__()
        self.family = family
        self.model = model
        self.pointed = pointed
        self.name = name
        self.totality_claim = not model.partial

    def _compute(self, x, budget):
        budget.spend()
        sc = self.model.scheme
        try:
            outer = sc.decode(x)
            if not outer:
                raise _OffProtocol()
            inner = sc.decode(outer[0])
            if inner is None or (self.pointed and not inner):
                raise _OffProtocol()
            if self.pointed:
                strategy = self.family(inner[0])
                seconds = inner[1:]
            else:
                strategy = self.family(None)
                seconds = inner
            return _replay(strategy, outer[1:], seconds, sc, budget)
        except _OffProtocol:
            if self.model.partial:
                raise Stuck() from None
            # a defined result, so that phi_G alpha stays total off protocol
            return sc.tag_result(sc.qq)

    def __repr__(self):
        return f"{self.name}[{self.model.tag.value}]"


def compile_strategy(strategy: Strategy, model: Model, name: str = "phi") -> PartialFn:
    """``phi_G`` with ``phi(phi_G alpha, beta) = G(alpha, beta)``."""
    return CompiledFamily(lambda _a: strategy, model, pointed=False, name=name)


def compile_strategy_family(family: Callable[[int], Strategy], model: Model,
                            name: str = "phi") -> PartialFn:
    return CompiledFamily(family, model, pointed=True, name=name)


class CompiledUnary(PartialFn):
    """Element ``e`` with ``(e alpha)(a) = H_a(alpha)`` for unary strategies."""

    kind = "strategy"

    def __init__(self, family: Callable[[int], Strategy], model: Model, name: str = "phi1"):
        super().__init__()
        self.family = family
        self.model = model
        self.name = name
        self.totality_claim = not model.partial

    def _compute(self, x, budget):
        budget.spend()
        sc = self.model.scheme
        seq = sc.decode(x)
        if seq:
            gen = self.family(seq[0])()
            answers = seq[1:]
            i = 0
            try:
                move = next(gen)
                while True:
                    budget.spend()
                    if i == len(answers):
                        return sc.tag_query(move.point)
                    i += 1
                    move = gen.send(answers[i - 1])
            except StopIteration as stop:
                if i == len(answers):
                    return sc.tag_result(stop.value)
            except Stuck:
                pass
        if self.model.partial:
            raise Stuck()
        return sc.qq

    def __repr__(self):
        return f"{self.name}[{self.model.tag.value}]"


def compile_unary_family(family: Callable[[int], Strategy], model: Model,
                         name: str = "phi1") -> PartialFn:
    return CompiledUnary(family, model, name)


# ------------------------------------------------------------- combinators

def _k_family(a):
    def strategy():
        return (yield QueryFirst(a))
    return strategy


def s_strategy(p: int, scheme: CodingScheme, partial: bool) -> Strategy:
    """The bisequential strategy ``(alpha, beta) -> S^{alpha beta}(p)``."""

    def case4():
        if partial:
            raise Stuck()
        return scheme.qq

    def strategy():
        seq = scheme.decode(p)
        if not seq:
            return case4()
        a, u = seq[0], seq[1:]
        ui = 0
        cs: list = []
        while True:
            # alpha's <a, c...>-interrogation of the answers in u
            vs: list = []
            point = scheme.encode([a] + cs)
            while True:
                z = scheme.untag((yield QueryFirst(scheme.encode([point] + vs))))
                if isinstance(z, Query):
                    if ui < len(u):
                        vs.append(u[ui])
                        ui += 1
                        continue
                    return scheme.tag_query(z.point)  # case 1
                if not isinstance(z, Result):
                    return case4()
                inner = scheme.untag(z.value)
                if isinstance(inner, Query):
                    b = inner.point
                    break
                if isinstance(inner, Result) and ui == len(u):
                    return scheme.tag_result(inner.value)  # case 3
                return case4()
            # beta's b-interrogation
            ws: list = []
            while True:
                w = scheme.untag((yield QuerySecond(scheme.encode([b] + ws))))
                if isinstance(w, Query):
                    if ui < len(u):
                        ws.append(u[ui])
                        ui += 1
                        continue
                    return scheme.tag_query(w.point)  # case 2
                if isinstance(w, Result):
                    cs.append(w.value)
                    break
                return case4()

    return strategy


def s_machine(alpha: PartialFn, beta: PartialFn, code: int, fuel: int,
              model: Optional[Model] = None):
    """``S^{alpha beta}(code)`` evaluated directly."""
    model = model or Model(ModelTag.K2)
    strat = s_strategy(code, model.scheme, model.partial)
    return run(lambda b: execute(strat, alpha, beta, b), fuel)


def _sigma_family(scheme: CodingScheme):
    def family(_p):
        def strategy():
            a = yield QuerySecond(scheme.q)
            return (yield QueryFirst(a))
        return strategy
    return family


def make_k(model: Model) -> PartialFn:
    if model.tag is ModelTag.K2ORIG:
        return KleeneK(model.scheme)
    return compile_strategy_family(_k_family, model, name="k")


def make_s(model: Model) -> PartialFn:
    if model.tag is ModelTag.K2ORIG:
        return KleeneS(model.scheme)
    sc, partial = model.scheme, model.partial
    return compile_strategy_family(lambda p: s_strategy(p, sc, partial), model, name="s")


def make_sigma(model: Model) -> PartialFn:
    """``sigma alpha a^ = (alpha(a))^`` for constant functions ``a^``."""
    return compile_strategy_family(_sigma_family(model.scheme), model, name="sigma")


# ---------------------------------------------------- Kleene's original K2

class _Need(Exception):
    def __init__(self, which: int, index: int = 0):
        self.which = which
        self.index = index


class _Prefix:
    """A function known on ``0..len(values)-1``."""

    __slots__ = ("values", "which")

    def __init__(self, values, which):
        self.values, self.which = values, which

    def __call__(self, i):
        if i < len(self.values):
            return self.values[i]
        raise _Need(self.which, i)


def _kleene_apply(f, g, x, scheme, budget):
    """Kleene application of host callables, probing ``f`` at <x, g(0), ...>."""
    answers = [x]
    while True:
        budget.spend()
        v = f(scheme.encode(answers))
        if v > 0:
            return v - 1
        answers.append(g(len(answers) - 1))


class KleeneK(PartialFn):
    """``k(<c, a0..a(n-1)>)``: answer ``a_x + 2`` once ``x+1`` values of the
    first argument are known, where ``x`` heads ``c``; 0 before that."""

    kind = "kleene"
    totality_claim = True

    def __init__(self, scheme: CodingScheme = COMPACT):
        super().__init__()
        self.scheme = scheme

    def _compute(self, code, budget):
        budget.spend()
        seq = self.scheme.decode(code)
        if not seq:
            return 1
        budget.spend(len(seq))  # one step per decoded entry
        c, avals = seq[0], seq[1:]
        inner = self.scheme.decode(c)
        if not inner:
            return 1
        x = inner[0]
        if len(avals) >= x + 1:
            return avals[x] + 2
        return 0

    def __repr__(self):
        return "k[k2orig]"


class KleeneS(PartialFn):
    """``s(<d, a...>)`` with ``d = <c, b...>`` and ``c = <x, g...>``.

    Runs ``((alpha g)(beta g))(x)`` on the known prefixes and reports the
    first missing value: 0 for the first argument, 1 for the second, 2 for
    the third, ``y+3`` for a result ``y``.
    """

    kind = "kleene"
    totality_claim = True

    def __init__(self, scheme: CodingScheme = COMPACT):
        super().__init__()
        self.scheme = scheme

    def _compute(self, code, budget):
        budget.spend()
        seq = self.scheme.decode(code)
        if not seq:
            return 1
        budget.spend(len(seq))
        try:
            return self.respond(seq[0], _Prefix(seq[1:], 0), budget)
        except _Need:
            return 0

    def respond(self, d: int, alpha, budget) -> int:
        """The answer at ``<d, a...>`` with the first argument read through
        ``alpha``; raises ``_Need(0, i)`` when ``alpha(i)`` is missing."""
        sc = self.scheme
        d = sc.decode(d)
        if not d:
            return 1
        c = sc.decode(d[0])
        if not c:
            return 2
        budget.spend(len(d) + len(c))
        beta, gamma = _Prefix(d[1:], 1), _Prefix(c[1:], 2)

        def ag(z):
            return _kleene_apply(alpha, gamma, z, sc, budget)

        def bg(z):
            return _kleene_apply(beta, gamma, z, sc, budget)

        try:
            y = _kleene_apply(ag, bg, c[0], sc, budget)
        except _Need as need:
            if need.which == 0:
                raise
            return need.which
        except CodingOverflow:
            raise Stuck() from None
        return y + 3

    def __repr__(self):
        return "s[k2orig]"


def _s_first_argument(s, alpha, d, budget, scheme):
    """``(s alpha)(d)`` without re-deciding every probe ``<d, a0..a(n-1)>``.

    The answer of ``s`` at such a probe is 0 exactly while the run in
    :meth:`KleeneS.respond` needs an index beyond the prefix, so the values of
    ``alpha`` are fetched in order up to that index and the run is resumed.
    Patched probe codes are still consulted one by one.  Returns None when
    ``s`` is not a (patched) :class:`KleeneS` over ``scheme``.
    """
    patch = None
    if isinstance(s, Patched) and s.scheme is scheme:
        patch, s = s.patch, s.base
    if not isinstance(s, KleeneS) or s.scheme is not scheme:
        return None
    vals: list = []
    code = scheme.encode([d]) if patch else None
    prefix = _Prefix(vals, 0)
    target = 0
    while True:
        while len(vals) < target:
            budget.spend()
            if patch and code in patch:
                if patch[code] > 0:
                    return patch[code] - 1
            vals.append(alpha.value(len(vals), budget))
            if patch:
                code = scheme.extend(code, vals[-1])
        budget.spend()
        if patch and code in patch:
            v = patch[code]
            if v > 0:
                return v - 1
            target = len(vals) + 1
            continue
        try:
            return s.respond(d, prefix, budget) - 1
        except _Need as need:
            target = need.index + 1


class Patched(PartialFn):
    """``base`` with the values ``E_n -> n`` forced for ``n <= window``."""

    kind = "patched"

    def __init__(self, base: PartialFn, window: int = 20, scheme: CodingScheme = COMPACT,
                 name: Optional[str] = None):
        super().__init__()
        self.base = base
        self.scheme = scheme
        self.window = window
        self.patch = {scheme.e_n(n): n for n in range(window + 1)}
        self.name = name
        self.totality_claim = base.totality_claim

    def _compute(self, x, budget):
        if x in self.patch:
            budget.spend()
            return self.patch[x]
        return self.base.value(x, budget)

    def __repr__(self):
        return self.name or f"Patched({self.base!r})"


def make_k_prime_s_prime(window: int = 20, scheme: CodingScheme = COMPACT):
    """The elements ``k'`` and ``s'`` of the set B of ``alpha`` with ``alpha(E_n) = n``."""
    return (Patched(KleeneK(scheme), window, scheme, "k'"),
            Patched(KleeneS(scheme), window, scheme, "s'"))


@dataclass
class MembershipReport:
    member: Optional[bool]  # None: inconclusive
    first_failure: Optional[int] = None
    outcome: object = None


def in_counterexample_B(alpha: PartialFn, n_window: int = 20, fuel: int = 10**5,
                        scheme: CodingScheme = COMPACT) -> MembershipReport:
    inconclusive = False
    for n in range(n_window + 1):
        out = eval_fn(alpha, scheme.e_n(n), fuel)
        if out.out_of_fuel:
            inconclusive = True
            continue
        if not (out.is_value and out.value == n):
            return MembershipReport(False, n, out)
    return MembershipReport(None if inconclusive else True)


# ------------------------------------------------------------------ corpora

class PointedTree(PartialFn):
    """A point-indexed family of sequential trees, read with the point first."""

    kind = "tree-family"

    def __init__(self, trees: Callable[[int], object], scheme: CodingScheme = COMPACT,
                 total: bool = True, name: str = "tree"):
        super().__init__()
        self.trees = trees
        self.scheme = scheme
        self.totality_claim = total
        self.name = name
        self._total = total

    def _compute(self, x, budget):
        from k2lab.dialogue import TreeFn
        budget.spend()
        seq = self.scheme.decode(x)
        if not seq:
            if self._total:
                return self.scheme.qq
            raise Stuck()
        inner = TreeFn(self.trees(seq[0]), self.scheme)
        v = inner.value(self.scheme.encode(seq[1:]), budget)
        if not self._total and self.scheme.untag(v) is Neither:
            raise Stuck()
        return v

    def __repr__(self):
        return self.name


class KleeneRule(PartialFn):
    """K2ORIG element from ``rule(x, prefix)`` returning ``None`` (need more) or ``y``."""

    kind = "kleene"
    totality_claim = True

    def __init__(self, rule: Callable[[int, list], Optional[int]], scheme: CodingScheme = COMPACT,
                 name: str = "rule"):
        super().__init__()
        self.rule = rule
        self.scheme = scheme
        self.name = name

    def _compute(self, code, budget):
        budget.spend()
        seq = self.scheme.decode(code)
        if not seq:
            return 1
        budget.spend(len(seq))
        y = self.rule(seq[0], seq[1:])
        return 0 if y is None else y + 1

    def __repr__(self):
        return self.name


def constant(value: int, name: Optional[str] = None) -> PartialFn:
    return from_function(name or f"const:{value}", lambda _x: value)


def protocol_labels(scheme: CodingScheme, partial: bool) -> list:
    """Leaf values for corpus trees: results whose values are themselves
    tagged, so that applications of corpus elements stay on the protocol.
    The partial corpus adds untagged and plain-result labels."""
    labels = [scheme.tag_result(scheme.tag_result(y)) for y in range(4)]
    labels += [scheme.tag_result(scheme.tag_query(b)) for b in range(4)]
    if partial:
        labels += [scheme.tag_result(y) for y in range(3)] + [0, 2]
    return labels


def random_protocol_tree(rng, depth: int, labels: list, partial: bool, width: int = 4,
                         points=range(6), _used=frozenset()):
    """A random tree over the protocol labels.

    The total variant reads answers modulo ``width`` so every answer has a
    child; the partial one has explicit children only, and unlabeled leaves.
    """
    from k2lab.dialogue import Branch, Leaf
    fresh = [p for p in points if p not in _used]
    if depth == 0 or not fresh or rng.random() < 0.3:
        if partial and rng.random() < 0.1:
            return Leaf(None)
        return Leaf(rng.choice(labels))
    p = rng.choice(fresh)
    kids = {a: random_protocol_tree(rng, depth - 1, labels, partial, width, points, _used | {p})
            for a in range(width) if not partial or rng.random() < 0.85}
    if partial:
        return Branch(p, kids)
    return Branch(p, child_fn=lambda a, kids=kids: kids[a % width])


def random_k2_element(rng, model: Model, depth: int = 2, argument: bool = False) -> PartialFn:
    """A random element of the K2/K2P corpus: tree families, tables, builtins.

    In the total model only arguments (``argument=True``) may be builtins;
    the other elements answer every probe with a tagged value, so that their
    applications to each other are defined.
    """
    import random
    from k2lab.partialfn import Table, builtin
    sc, partial = model.scheme, model.partial
    labels = protocol_labels(sc, partial)
    # results that end a dialogue at once; used where a query could recur
    final = [sc.tag_result(sc.tag_result(y)) for y in range(4)]
    roll = rng.random()
    if roll < 0.5:
        seed = rng.randrange(1 << 30)
        cache: dict = {}

        def trees(a, _seed=seed):
            if a not in cache:
                # points carrying two or more answers get result-only trees, so
                # that dialogues driven by this element's applications end
                deep = len(sc.decode(a) or ()) > 2
                cache[a] = random_protocol_tree(random.Random(_seed * 7919 + a), depth,
                                                final if deep else labels, partial)
            return cache[a]

        return PointedTree(trees, sc, total=not partial, name=f"tree#{seed}")
    if roll < 0.7:
        table = {x: rng.choice(labels) for x in range(8) if rng.random() < 0.8}
        t = Table(table)
        return t if partial else Totalized(t, rng.choice(final))
    if roll < 0.85 and (partial or argument):
        return builtin(rng.choice(("succ", "id", "primechar")))
    return constant(rng.choice(final + labels[len(final):] if partial else final))


def random_kleene_element(rng, scheme: CodingScheme = COMPACT) -> PartialFn:
    """A random K2ORIG element with small values that reads at most one value
    of its argument.  (Under the sequential protocol, s must read its first
    argument at every index up to the codes that argument is probed at, and
    those codes grow very fast with the number of values read.)"""
    kind = rng.randrange(5)
    c = rng.randrange(3)
    if kind == 0:
        return KleeneRule(lambda x, p, c=c: c, scheme, f"const{c}")
    if kind == 1:
        return KleeneRule(lambda x, p: p[0] % 3 if p else None, scheme, "read0")
    if kind == 2:
        return KleeneRule(lambda x, p: (p[0] + 1) % 3 if p else None, scheme, "succ0")
    if kind == 3:
        return constant(c + 1, f"raw{c + 1}")
    return KleeneRule(lambda x, p: 1 + p[0] % 2 if p else None, scheme, "pick")


# ---------------------------------------------------------------- checkers

def corpus_sampler(model: Model) -> Callable:
    """``sampler(rng, argument)`` drawing elements of the model's corpus."""
    if model.tag is ModelTag.K2ORIG:
        return lambda rng, argument=False: random_kleene_element(rng, model.scheme)
    return lambda rng, argument=False: random_k2_element(rng, model, argument=argument)


def b_corpus_sampler(window: int = 20, scheme: CodingScheme = COMPACT) -> Callable:
    """Sampler for the set B: patched Kleene elements."""
    return lambda rng, argument=False: Patched(random_kleene_element(rng, scheme), window, scheme)


def check_k_axiom(model: Model, k: Optional[PartialFn] = None, samples: int = 100, seed: int = 0,
                  fuel: int = 10**5, sampler: Optional[Callable] = None, points=range(6)):
    """``(k alpha) beta`` against ``alpha`` at one sampled point per triple."""
    from k2lab.report import CheckReport
    import random
    rng = random.Random(seed)
    k = make_k(model) if k is None else k
    sampler = sampler or corpus_sampler(model)
    points = list(points)
    rep = CheckReport(f"{model.tag.value}:k-axiom")
    for _ in range(samples):
        alpha, beta = sampler(rng), sampler(rng, True)
        x = rng.choice(points)
        rep.tested += 1
        lhs = eval_fn(model.apply_chain(k, alpha, beta), x, fuel)
        rhs = eval_fn(alpha, x, fuel)
        if lhs.out_of_fuel or rhs.out_of_fuel:
            rep.inconclusive += 1
        elif lhs != rhs:
            rep.fail(alpha, beta, x, lhs, rhs)
    return rep


def check_s_axiom(model: Model, s: Optional[PartialFn] = None, samples: int = 50, seed: int = 0,
                  fuel: int = 10**5, sampler: Optional[Callable] = None, points=range(6),
                  max_discard: int = 200):
    """``((s alpha) beta) gamma`` against ``(alpha gamma)(beta gamma)``.

    Triples on which both sides exhaust the budget are redrawn and counted
    as skipped.
    """
    from k2lab.report import CheckReport
    import random
    rng = random.Random(seed)
    s = make_s(model) if s is None else s
    sampler = sampler or corpus_sampler(model)
    points = list(points)
    rep = CheckReport(f"{model.tag.value}:s-axiom")
    while rep.tested < samples:
        alpha, beta, gamma = sampler(rng), sampler(rng), sampler(rng, True)
        x = rng.choice(points)
        lhs = eval_fn(model.apply_chain(s, alpha, beta, gamma), x, fuel)
        rhs = eval_fn(model.apply(model.apply(alpha, gamma), model.apply(beta, gamma)), x, fuel)
        if lhs.out_of_fuel and rhs.out_of_fuel and rep.skipped < max_discard:
            rep.skipped += 1
            continue
        rep.tested += 1
        if lhs.out_of_fuel or rhs.out_of_fuel:
            rep.inconclusive += 1
        elif lhs != rhs:
            rep.fail(alpha, beta, gamma, x, lhs, rhs)
    return rep


def check_b_closure(samples: int = 30, seed: int = 0, window: int = 20, fuel: int = 10**5,
                    scheme: CodingScheme = COMPACT, max_discard: int = 200):
    """Applications of B-corpus elements that are defined on the window stay in B.

    ``alpha beta`` at ``E_n`` probes ``alpha`` at ``E_(n+1)``, so membership of
    the application is tested on a window one shorter than its operands'.
    """
    from k2lab.report import CheckReport
    import random
    rng = random.Random(seed)
    model = make_model("k2orig", scheme)
    sampler = b_corpus_sampler(window, scheme)
    rep = CheckReport("k2orig:B-closure")
    while rep.tested < samples:
        alpha, beta = sampler(rng), sampler(rng)
        app = model.apply(alpha, beta)
        outs = [eval_fn(app, scheme.e_n(n), fuel) for n in range(window)]
        if not all(o.is_value for o in outs) and rep.skipped < max_discard:
            rep.skipped += 1  # not window-defined
            continue
        rep.tested += 1
        if any(o.out_of_fuel for o in outs):
            rep.inconclusive += 1
            continue
        mem = in_counterexample_B(app, window - 1, fuel, scheme)
        if mem.member is None:
            rep.inconclusive += 1
        elif not mem.member:
            rep.fail(alpha, beta, mem.first_failure, mem.outcome)
    return rep


def g_outside_B(scheme: CodingScheme = COMPACT) -> PartialFn:
    """An explicitly computable function with ``g(E_0) = 1``; not in B."""
    e0 = scheme.e_n(0)
    return from_function("g", lambda x: 1 if x == e0 else 0)


def random_strategy(rng, depth: int = 4, width: int = 3, points=range(6), results=range(10),
                    partial: bool = False) -> Strategy:
    """A random bisequential strategy of the given depth, as a move tree.

    Answers are read modulo ``width``.  Partial strategies may have no move.
    """

    def node(d):
        if d == 0 or rng.random() < 0.2:
            if partial and rng.random() < 0.1:
                return None
            return rng.choice(results)
        move = rng.choice((QueryFirst, QuerySecond))(rng.choice(points))
        return move, [node(d - 1) for _ in range(width)]

    tree = node(depth)

    def strategy():
        t = tree
        while isinstance(t, tuple):
            move, kids = t
            t = kids[(yield move) % width]
        if t is None:
            raise Stuck()
        return t

    return strategy


def check_strategy_compiler(model: Model, strategies: int = 30, pairs: int = 10, seed: int = 0,
                            depth: int = 4, fuel: int = 10**5):
    """Compiled ``phi(phi_G alpha, beta)`` against direct execution of ``G``."""
    import random
    from k2lab.dialogue import interrogate, random_oracle
    from k2lab.report import CheckReport
    rng = random.Random(seed)
    rep = CheckReport(f"{model.tag.value}:strategy-compiler")
    alphabet = tuple(range(4))
    for _ in range(strategies):
        g = random_strategy(rng, depth, partial=model.partial)
        phi = compile_strategy(g, model)
        for _ in range(pairs):
            alpha = random_oracle(rng, range(6), alphabet, model.partial)
            beta = random_oracle(rng, range(6), alphabet, model.partial)
            direct = run_strategy(g, alpha, beta, fuel)
            compiled, _trace = interrogate(model.apply(phi, alpha), beta, fuel, model.scheme)
            rep.tested += 1
            if direct.out_of_fuel or compiled.out_of_fuel:
                rep.inconclusive += 1
            elif direct != compiled:
                rep.fail(alpha, beta, direct, compiled)
    return rep
