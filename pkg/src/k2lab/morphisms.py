"""Applicative morphisms between the models, checked on finite windows.

A morphism relates each source element to a nonempty set of target
elements.  Sets of functions are never enumerated: a morphism carries a
rule producing a finite window of each set, and target elements are
compared by agreement on a declared list of points.  The checkers refute;
a pass only means no counterexample turned up on the window.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from k2lab.basepca import (CODE_PCA, CodePCA, TupleScheme, godel_encode, pair_parts,
                           term_of, tuple_term)
from k2lab.errors import Stuck
from k2lab.k2 import (Model, QueryFirst, compile_unary_family, make_k, make_model, make_s,
                      make_sigma)
from k2lab.oracle import TOP, make_bar
from k2lab.partialfn import (UNDEFINED, Outcome, PartialFn, Value, agree_on, eval_fn)
from k2lab.report import CheckReport

# ------------------------------------------------------------------ targets


class CodeTarget:
    """The coded combinator algebra as the target of a morphism."""

    def __init__(self, pca: CodePCA = CODE_PCA, fuel: int = 10**5):
        self.pca, self.fuel = pca, fuel

    def apply(self, a, b) -> Outcome:
        return self.pca.apply(a, b, self.fuel)

    def same(self, a, b) -> Optional[bool]:
        return a == b

    def truth(self, top: bool):
        return self.pca.top if top else self.pca.bot


class ModelTarget:
    """K2 or K2P over the coded algebra; elements compare on ``points``."""

    def __init__(self, model: Model, points: Iterable[int], fuel: int = 10**5):
        self.model, self.points, self.fuel = model, list(points), fuel

    def apply(self, f, g) -> Outcome:
        app = self.model.apply(f, g)
        if self.model.partial:
            return Value(app)
        # in the total model an application is defined when it is total;
        # observed on the points
        for x in self.points:
            o = eval_fn(app, x, self.fuel)
            if not o.is_value:
                return o
        return Value(app)

    def same(self, f, g) -> Optional[bool]:
        rep = agree_on(f, g, self.points, self.fuel)
        if rep.differ:
            return False
        return None if rep.inconclusive else True

    def truth(self, top: bool):
        return gamma_hat(CODE_PCA.top if top else CODE_PCA.bot)


@dataclass
class Morphism:
    """``gamma`` maps a source element to a finite window of its image set."""

    source: CodePCA
    target: object
    gamma: Callable[[int], list]
    realizer: object = None
    decider: object = None
    name: str = "gamma"

    def image(self, a) -> list:
        out = self.gamma(a)
        if not out:
            raise ValueError(f"{self.name}({a}) has an empty window")
        return out


def _member(target, x, window: list) -> Optional[bool]:
    unsure = False
    for y in window:
        same = target.same(x, y)
        if same:
            return True
        if same is None:
            unsure = True
    return None if unsure else False


def _record(rep: CheckReport, verdict: Optional[bool], *detail) -> None:
    rep.tested += 1
    if verdict is None:
        rep.inconclusive += 1
    elif not verdict:
        rep.fail(*detail)


def check_realizer(gamma: Morphism, r, pairs: Iterable[tuple], fuel: int = 10**5) -> CheckReport:
    """``r b b'`` is defined and lies in ``gamma(a a')`` for all ``b``, ``b'``."""
    rep = CheckReport(f"{gamma.name}:realizer")
    tgt = gamma.target
    for a, a2 in pairs:
        aa = gamma.source.apply(a, a2, fuel)
        if not aa.is_value:
            rep.skipped += 1
            continue
        window = gamma.image(aa.value)
        for b in gamma.image(a):
            for b2 in gamma.image(a2):
                rb = tgt.apply(r, b)
                rbb = tgt.apply(rb.value, b2) if rb.is_value else rb
                if rbb.out_of_fuel:
                    _record(rep, None)
                elif not rbb.is_value:
                    _record(rep, False, a, a2, "undefined", rbb)
                else:
                    _record(rep, _member(tgt, rbb.value, window), a, a2, "not in image")
    return rep


def check_preorder(gamma: Morphism, gamma2: Morphism, s, window: Iterable[int],
                   fuel: int = 10**5) -> CheckReport:
    """``gamma <= gamma2`` via ``s``: ``s b`` lies in ``gamma2(a)`` for ``b`` in ``gamma(a)``."""
    rep = CheckReport(f"{gamma.name}<={gamma2.name}")
    tgt = gamma.target
    for a in window:
        target_window = gamma2.image(a)
        for b in gamma.image(a):
            sb = tgt.apply(s, b)
            if sb.out_of_fuel:
                _record(rep, None)
            elif not sb.is_value:
                _record(rep, False, a, "undefined")
            else:
                _record(rep, _member(tgt, sb.value, target_window), a, "not in image")
    return rep


def check_decider(gamma: Morphism, d, fuel: int = 10**5, top_b=None, bot_b=None) -> CheckReport:
    """``d b`` is the target's TRUE on ``gamma(TRUE)`` and its FALSE on ``gamma(FALSE)``."""
    rep = CheckReport(f"{gamma.name}:decider")
    tgt = gamma.target
    src = gamma.source
    for flag, want in ((True, top_b), (False, bot_b)):
        want = tgt.truth(flag) if want is None else want
        for b in gamma.image(src.top if flag else src.bot):
            db = tgt.apply(d, b)
            if db.out_of_fuel:
                _record(rep, None)
            elif not db.is_value:
                _record(rep, False, flag, "undefined")
            else:
                _record(rep, tgt.same(db.value, want), flag, "wrong Boolean")
    return rep


def check_represents(gamma: Morphism, r_f, f: PartialFn, points: Iterable[int],
                     fuel: int = 10**5) -> CheckReport:
    """``r_f b`` lies in ``gamma(f(a))`` for ``b`` in ``gamma(a)``.

    Points where ``f`` is undefined carry no obligation; they are counted as
    skipped.
    """
    rep = CheckReport(f"{gamma.name}:represents")
    tgt = gamma.target
    for a in points:
        fa = eval_fn(f, a, fuel)
        if fa.out_of_fuel:
            _record(rep, None)
            continue
        if not fa.is_value:
            rep.skipped += 1
            continue
        window = gamma.image(fa.value)
        for b in gamma.image(a):
            rb = tgt.apply(r_f, b)
            if rb.out_of_fuel:
                _record(rep, None)
            elif not rb.is_value:
                _record(rep, False, a, "undefined")
            else:
                _record(rep, _member(tgt, rb.value, window), a, "not in image")
    return rep


# ------------------------------------------------------------ gamma and rho

class Hat(PartialFn):
    """The constant function with value ``a``."""

    kind = "constant"
    totality_claim = True

    def __init__(self, a: int):
        super().__init__()
        self.a = a

    def _compute(self, x, budget):
        budget.spend()
        return self.a

    def __repr__(self):
        return f"hat({self.a})"


def gamma_hat(a: int) -> PartialFn:
    return Hat(a)


def tuple_scheme(pca: CodePCA = CODE_PCA) -> TupleScheme:
    return TupleScheme(pca)


class Rho(PartialFn):
    """The realizer of ``a -> {a^}`` into K2 or K2P over the coded algebra.

    ``<<x>>`` asks for the second argument, ``<<x,b>>`` for the first, and
    ``<<x,b>,a>`` answers ``a b`` as a double result.  The total variant
    answers ``<r,<q,q>>`` when ``a b`` is undefined and ``<r,r>`` on every
    other code; the partial variant is undefined there.
    """

    kind = "rho"

    def __init__(self, partial: bool, pca: CodePCA = CODE_PCA):
        super().__init__()
        self.partial = partial
        self.pca = pca
        self.sc = TupleScheme(pca)
        self.totality_claim = not partial

    def _off(self):
        if self.partial:
            raise Stuck()
        return self.sc.tag_result(self.sc.r)

    def _compute(self, code, budget):
        budget.spend()
        sc = self.sc
        outer = sc.decode(code)
        if not outer or len(outer) > 2:
            return self._off()
        inner = sc.decode(outer[0])
        if len(outer) == 1:
            if inner is not None and len(inner) == 1:
                return sc.tag_result(sc.qq)
            if inner is not None and len(inner) == 2:
                return sc.qq
            return self._off()
        if inner is None or len(inner) != 2:
            return self._off()
        a, b = term_of(outer[1]), term_of(inner[1])
        try:
            ab = self.pca.apply_terms(a, b, budget)
        except Stuck:
            if self.partial:
                raise
            return sc.tag_result(sc.qq)
        return sc.tag_result(sc.tag_result(godel_encode(ab)))

    def __repr__(self):
        return f"rho[{'partial' if self.partial else 'total'}]"


def make_rho(variant: str = "total", pca: CodePCA = CODE_PCA) -> PartialFn:
    if variant not in ("total", "partial"):
        raise ValueError(f"unknown variant {variant!r}")
    return Rho(variant == "partial", pca)


def model_over(tag: str, pca: CodePCA = CODE_PCA) -> Model:
    """K2 or K2P based on the coded algebra: its tuples, Booleans and pairs."""
    return make_model(tag, TupleScheme(pca))


def gamma_morphism(model: Model, points: Iterable[int], fuel: int = 10**5,
                   pca: CodePCA = CODE_PCA) -> Morphism:
    return Morphism(pca, ModelTarget(model, points, fuel), lambda a: [gamma_hat(a)],
                    name=f"gamma[{model.tag.value}]")


def check_rho_law(variant: str, model: Model, pairs: Iterable[tuple], points: Iterable[int],
                  fuel: int = 10**5, pca: CodePCA = CODE_PCA) -> CheckReport:
    """``rho a^`` is defined and ``rho a^ b^`` agrees with ``(a b)^`` on the points."""
    points = list(points)
    gamma = gamma_morphism(model, points, fuel, pca)
    rho = make_rho(variant, pca)
    rep = check_realizer(gamma, rho, pairs, fuel)
    rep.name = f"rho[{variant}]@{model.tag.value}"
    return rep


def sample_defined_pairs(count: int, seed: int = 0, fuel: int = 10**5,
                         pca: CodePCA = CODE_PCA) -> list[tuple[int, int]]:
    """``count`` sampled pairs of element codes whose application is defined."""
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < count:
        a, b = pca.sample(rng), pca.sample(rng)
        if pca.apply(a, b, fuel).is_value:
            pairs.append((a, b))
    return pairs


def sample_points(count: int, seed: int = 0, pca: CodePCA = CODE_PCA) -> list[int]:
    rng = random.Random(seed)
    return [pca.sample(rng) for _ in range(count)]


class Representer(PartialFn):
    """``(r_f a^)(x) = f(a)``: ask the argument once, answer with ``f``."""

    kind = "representer"

    def __init__(self, f: PartialFn, model: Model):
        super().__init__()
        self.f, self.model = f, model
        self.totality_claim = not model.partial

    def _compute(self, code, budget):
        budget.spend()
        sc = self.model.scheme
        seq = sc.decode(code)
        if seq is not None and len(seq) == 1:
            return sc.qq
        if seq is not None and len(seq) == 2:
            return sc.tag_result(self.f.value(seq[1], budget))
        if self.model.partial:
            raise Stuck()
        return sc.qq

    def __repr__(self):
        return f"r[{self.f!r}]"


def representer(f: PartialFn, model: Model) -> PartialFn:
    return Representer(f, model)


def reading_decider(model: Model) -> PartialFn:
    """The decider of ``gamma``: ``(d b)(x) = b(q)``, which reads off a constant."""
    q = model.scheme.q

    def family(_x):
        def strategy():
            return (yield QueryFirst(q))
        return strategy

    return compile_unary_family(family, model, name="d")


def identity_element(model: Model) -> PartialFn:
    """``s k k``."""
    k = make_k(model)
    return model.apply_chain(make_s(model), k, k)


# ------------------------------------------------------------------ epsilon

def epsilon_retract_member(beta: PartialFn, alpha: PartialFn, dom_sample: Iterable[int],
                           model: Model, points: Iterable[int],
                           fuel: int = 10**5) -> Optional[bool]:
    """``beta a^ = (alpha(a))^`` for every ``a`` in ``dom_sample``, on the points."""
    target = ModelTarget(model, points, fuel)
    unsure = False
    for a in dom_sample:
        alpha_a = eval_fn(alpha, a, fuel)
        if alpha_a.out_of_fuel:
            unsure = True
            continue
        if not alpha_a.is_value:
            raise ValueError(f"{a} is outside the domain of alpha")
        app = target.apply(beta, gamma_hat(a))
        if app.out_of_fuel:
            unsure = True
            continue
        if not app.is_value:
            return False
        same = target.same(app.value, gamma_hat(alpha_a.value))
        if same is False:
            return False
        if same is None:
            unsure = True
    return None if unsure else True


def sigma_witness(alpha: PartialFn, model: Model) -> PartialFn:
    """``sigma alpha``, the element of ``epsilon(alpha)`` built from sigma."""
    return model.apply(make_sigma(model), alpha)


# b [x] = [FALSE, #0] (ask the argument anywhere); b [x, a] = [TRUE, a x]
ADJUNCTION_SOURCE = ("\\u. IFZ (PRED (LEN u)) (\\d. PAIR FALSE #0)"
                     " (\\d. PAIR TRUE ((NTH u #1) (HEAD u))) #0")


def adjunction_element(pca: CodePCA = CODE_PCA) -> int:
    return pca.code(pca.compile(ADJUNCTION_SOURCE))


def epsilon_prime_window(alpha: PartialFn, candidates: Iterable[int], points: Iterable[int],
                         fuel: int = 10**5, pca: CodePCA = CODE_PCA) -> list[int]:
    """The candidates ``c`` with ``bar(c)`` agreeing with ``alpha`` on the points."""
    points = list(points)
    return [c for c in candidates if agree_on(make_bar(pca, c), alpha, points, fuel).equal]


@dataclass
class AdjunctionResult:
    report: CheckReport
    echo: CheckReport
    one_sided_window: list = field(default_factory=list)


def epsilon_prime_adjunction(samples: int = 30, seed: int = 0, fuel: int = 10**5,
                             pca: CodePCA = CODE_PCA, max_discard: int = 100) -> AdjunctionResult:
    """The witness ``b`` with ``bar(b) a^ = bar(a)`` in K2P, on sampled ``(a, x)``.

    Pairs on which both sides exhaust the budget are redrawn.  Also checks
    that every sampled ``a`` lies in the window of ``eps'(bar(a))``, and
    searches the window of ``eps'`` at a function on numerals no sampled
    element computes; that window stays empty.
    """
    rng = random.Random(seed)
    model = model_over("k2p", pca)
    b = make_bar(pca, adjunction_element(pca))
    rep = CheckReport("adjunction:bbar-ahat")
    echo = CheckReport("adjunction:echo")
    codes = []
    while rep.tested < samples:
        a, x = pca.sample(rng), pca.sample(rng)
        lhs = eval_fn(model.apply(b, gamma_hat(a)), x, fuel)
        rhs = eval_fn(make_bar(pca, a), x, fuel)
        if lhs.out_of_fuel and rhs.out_of_fuel and rep.skipped < max_discard:
            rep.skipped += 1
            continue
        codes.append(a)
        rep.tested += 1
        if lhs.out_of_fuel or rhs.out_of_fuel:
            rep.inconclusive += 1
        elif lhs != rhs:
            rep.fail(a, x, lhs, rhs)
    points = [pca.sample(rng) for _ in range(8)] + [pca.numeral(n) for n in range(4)]
    for a in codes[:10]:
        bar_a = make_bar(pca, a)
        echo.tested += 1
        agreement = agree_on(bar_a, bar_a, points, fuel)
        if agreement.inconclusive:
            echo.inconclusive += 1
        elif a not in epsilon_prime_window(bar_a, [a], points, fuel, pca):
            echo.fail(a)
    # n -> [n is odd], read on numerals; undefined elsewhere
    odd = _NumeralParity(pca)
    window = epsilon_prime_window(odd, codes, [pca.numeral(n) for n in range(6)], fuel, pca)
    return AdjunctionResult(rep, echo, window)


class _NumeralParity(PartialFn):
    def __init__(self, pca):
        super().__init__()
        self.pca = pca

    def _compute(self, x, budget):
        budget.spend()
        t = term_of(x)
        n = self.pca.numeral_of(t) if t is not None else None
        if n is None:
            raise Stuck()
        return self.pca.numeral(n % 2)


# -------------------------------------------------------- the F realizer

# F a b v: if d(r pi0 (a v)) then r pi1 (a v) else F a b (c v (r b (r pi1 (a v))))
F_SOURCE = ("Z (\\f a b v. (\\w. C (D (R PI0 w)) (\\t. R PI1 w)"
            " (\\t. f a b (CC v (R b (R PI1 w)))) #0) (a v))")


@dataclass
class DeltaData:
    """Realizer, decider, pairing projections and tuple builders of a morphism
    into the coded algebra, as element terms."""

    r: object
    d: object
    pi0: object
    pi1: object
    c: object
    s: object


def identity_delta(pca: CodePCA = CODE_PCA) -> DeltaData:
    """The data for the identity morphism on the coded algebra."""
    lib = pca.library
    return DeltaData(r=pca.compile("\\x y. x y"), d=lib["I"], pi0=lib["P0"], pi1=lib["P1"],
                     c=lib["APPEND"], s=lib["SINGLE"])


def build_F_realizer(data: DeltaData, pca: CodePCA = CODE_PCA) -> int:
    env = {"R": data.r, "D": data.d, "PI0": data.pi0, "PI1": data.pi1,
           "CC": data.c, "SS": data.s}
    return pca.code(pca.compile(F_SOURCE, env))


def _chain(pca: CodePCA, fuel: int, *codes) -> Outcome:
    return pca.apply_chain(*codes, fuel=fuel)


def claim_check(F: int, a: int, b: int, y: int, fuel: int = 10**6, max_len: int = 2,
                data: Optional[DeltaData] = None, pca: CodePCA = CODE_PCA) -> CheckReport:
    """Follow the ``y``-interrogation of ``bar(b)`` by ``bar(a)`` for up to
    ``max_len`` answers, checking ``F a b (s y) = F a b [y, u0..uk-1]`` at
    each length and ``F a b v = r pi1 (a v)`` at the result step.

    With the identity morphism ``x = y`` and ``v`` is the tuple itself.
    """
    data = data or identity_delta(pca)
    rep = CheckReport("fclaim")
    code = pca.code
    start = _chain(pca, fuel, F, a, b, pca.apply(code(data.s), y, fuel).value)
    u: list = []
    for _ in range(max_len + 1):
        v = code(tuple_term([term_of(y)] + [term_of(x) for x in u]))
        here = _chain(pca, fuel, F, a, b, v)
        rep.tested += 1
        if start.out_of_fuel or here.out_of_fuel:
            rep.inconclusive += 1
            rep.notes.append(f"length {len(u)}: out of fuel")
            return rep
        if start != here:
            rep.fail("claim", len(u), start, here)
        av = pca.apply(a, v, fuel)
        if not av.is_value:
            rep.notes.append(f"length {len(u)}: a v is {av!r}")
            return rep
        parts = pair_parts(term_of(av.value))
        if parts is None:
            rep.notes.append(f"length {len(u)}: a v is not a pair")
            return rep
        tag, e = parts
        if tag == TOP:
            rep.tested += 1
            want = _chain(pca, fuel, code(data.r), code(data.pi1), av.value)
            if here != want:
                rep.fail("result", len(u), here, want)
            rep.notes.append(f"result after {len(u)} answers")
            return rep
        ans = pca.apply(b, code(e), fuel)
        if not ans.is_value:
            rep.notes.append(f"length {len(u)}: b undefined at the query")
            return rep
        u.append(ans.value)
    rep.notes.append(f"no result within {max_len} answers")
    return rep


def check_F_recursion(F: int, triples: Iterable[tuple], fuel: int = 10**6,
                      data: Optional[DeltaData] = None, pca: CodePCA = CODE_PCA) -> CheckReport:
    """``F a b v`` against the right-hand side of its defining equation,
    with the case split and the inner steps evaluated outside the algebra."""
    data = data or identity_delta(pca)
    rep = CheckReport("F-recursion")
    r, d, pi0, pi1, c = (pca.code(t) for t in (data.r, data.d, data.pi0, data.pi1, data.c))

    def rhs(a, b, v) -> Outcome:
        av = pca.apply(a, v, fuel)
        if not av.is_value:
            return av
        test = _chain(pca, fuel, r, pi0, av.value)
        if test.is_value:
            test = pca.apply(d, test.value, fuel)
        if not test.is_value:
            return test
        out = _chain(pca, fuel, r, pi1, av.value)
        if test.value == pca.top:
            return out
        if test.value != pca.bot:
            return UNDEFINED  # neither Boolean: the case split is stuck
        for step in (lambda o: _chain(pca, fuel, r, b, o), lambda o: _chain(pca, fuel, c, v, o),
                     lambda o: _chain(pca, fuel, F, a, b, o)):
            if not out.is_value:
                return out
            out = step(out.value)
        return out

    for a, b, v in triples:
        lhs, right = _chain(pca, fuel, F, a, b, v), rhs(a, b, v)
        rep.tested += 1
        if lhs.out_of_fuel or right.out_of_fuel:
            rep.inconclusive += 1
        elif lhs != right:
            rep.fail(a, b, v, lhs, right)
    return rep


# Programs used by the claim: two queries, or an immediate result.
TWO_QUERY_ALPHA = ("\\v. IFZ (PRED (LEN v)) (\\d. PAIR FALSE (HEAD v))"
                   " (\\d. IFZ (PRED (PRED (LEN v))) (\\d. PAIR FALSE (SUCC (NTH v #1)))"
                   " (\\d. PAIR TRUE (PLUS (NTH v #1) (NTH v #2))) #0) #0")
IMMEDIATE_ALPHA = "\\v. PAIR TRUE (HEAD v)"
DOUBLE_BETA = "\\e. PLUS e e"
LOOP_ALPHA = "\\v. PAIR FALSE (HEAD v)"


def claim_programs(pca: CodePCA = CODE_PCA) -> dict:
    return {name: pca.code(pca.compile(src)) for name, src in
            (("two-query", TWO_QUERY_ALPHA), ("immediate", IMMEDIATE_ALPHA),
             ("double", DOUBLE_BETA), ("loop", LOOP_ALPHA))}
