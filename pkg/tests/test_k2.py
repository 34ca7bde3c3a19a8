import random

import pytest

from k2lab.coding import COMPACT
from k2lab.k2 import (KleeneK, KleeneS, QueryFirst, QuerySecond, check_b_closure, check_k_axiom,
                      check_s_axiom, check_strategy_compiler, compile_strategy, corpus_sampler,
                      from_move_function, g_outside_B, in_counterexample_B, make_k,
                      make_k_prime_s_prime, make_model, make_s, make_sigma, random_strategy,
                      run_strategy)
from k2lab.partialfn import (OUT_OF_FUEL, UNDEFINED, Builtin, Table, Value, eval_fn,
                             from_function, run)
from k2lab.dialogue import interrogate
from k2lab.errors import OutOfFuel, Stuck

SC = COMPACT


def naive_dialogue(alpha, beta, prefix, budget, fuel=10**5):
    answers = list(prefix)
    for _ in range(fuel):
        budget.spend()
        seq = SC.decode(alpha.value(SC.encode(answers), budget))
        if seq is None or len(seq) != 2 or seq[0] not in (SC.q, SC.r):
            raise Stuck()
        if seq[0] == SC.r:
            return seq[1]
        answers.append(beta.value(seq[1], budget))
    raise OutOfFuel()


def naive_app(alpha, beta):
    """``alpha . beta`` by a hand-rolled dialogue loop, independent of the engine."""
    return Builtin("naive", lambda x, budget: naive_dialogue(alpha, beta, [x], budget))


def const_hat(c):
    return from_function(f"^{c}", lambda x: c)


def reader(point, offset):
    """An element whose application to beta is ``x -> beta(point) + offset + x``."""

    def rule(code, budget):
        seq = SC.decode(code)
        if not seq:
            return SC.neither
        if len(seq) == 1:
            return SC.tag_query(point)
        return SC.tag_result(seq[1] + offset + seq[0])

    return Builtin(f"reader({point},{offset})", rule, total=True)


def tagger(point):
    """``alpha . beta = x -> <r, beta(point) + x>``, so products of it stay defined."""

    def rule(code, budget):
        seq = SC.decode(code)
        if not seq:
            return SC.neither
        if len(seq) == 1:
            return SC.tag_query(point)
        return SC.tag_result(SC.tag_result(seq[1] + seq[0]))

    return Builtin(f"tagger({point})", rule, total=True)


ELEMENTS = [reader(0, 0), reader(1, 3), reader(2, 1), const_hat(SC.tag_result(4))]
ARGS = [Table({0: 1, 1: 2, 2: 3}), const_hat(5), from_function("sq", lambda x: x * x)]


@pytest.mark.parametrize("tag", ["k2", "k2p"])
def test_engine_matches_naive_dialogue(tag):
    m = make_model(tag)
    for a in ELEMENTS:
        for b in ARGS:
            for x in range(4):
                assert eval_fn(m.apply(a, b), x, 10**4) == eval_fn(naive_app(a, b), x, 10**4)


@pytest.mark.parametrize("tag", ["k2", "k2p"])
def test_k_and_s_on_hand_elements(tag):
    m = make_model(tag)
    k, s = make_k(m), make_s(m)
    for a in ELEMENTS:
        for b in ARGS:
            for x in range(4):
                assert eval_fn(m.apply_chain(k, a, b), x, 10**5) == eval_fn(a, x, 10**5)
    for a, b, c in [(tagger(0), ELEMENTS[1], ARGS[0]), (tagger(2), ELEMENTS[3], ARGS[2])]:
        want = naive_app(naive_app(a, c), naive_app(b, c))
        for x in range(3):
            assert eval_fn(m.apply_chain(s, a, b, c), x, 10**5) == eval_fn(want, x, 10**5)


def test_undefined_propagates_in_k2p():
    m = make_model("k2p")
    empty = Table({})
    # reader asks beta at 0; beta is undefined there
    assert eval_fn(m.apply(reader(0, 0), empty), 0, 10**4) == UNDEFINED
    s = make_s(m)
    assert eval_fn(m.apply_chain(s, reader(0, 0), reader(1, 0), empty), 0, 10**5) == UNDEFINED


def test_sigma_reads_a_constant():
    m = make_model("k2")
    alpha = from_function("a", lambda x: 3 * x)
    for c in range(5):
        assert eval_fn(m.apply_chain(make_sigma(m), alpha, const_hat(c)), 0, 10**4) == Value(3 * c)


@pytest.mark.parametrize("tag", ["k2", "k2p", "k2orig"])
def test_axiom_suites(tag):
    m = make_model(tag)
    assert check_k_axiom(m, samples=100 if tag != "k2orig" else 30, fuel=10**5).passed
    assert check_s_axiom(m, samples=50 if tag != "k2orig" else 20, fuel=10**5).passed


def test_axiom_check_catches_a_wrong_k():
    m = make_model("k2")
    rep = check_k_axiom(m, k=make_sigma(m), samples=30)
    assert rep.failures


def test_strategy_by_hand():
    def move(first, second):
        if not first:
            return QueryFirst(2)
        if not second:
            return QuerySecond(first[0][1])
        return first[0][1] + second[0][1]

    strat = from_move_function(move)
    alpha, beta = Table({2: 5}), Table({5: 7})
    assert run_strategy(strat, alpha, beta, 100) == Value(12)
    for tag in ("k2", "k2p"):
        m = make_model(tag)
        phi = compile_strategy(strat, m)
        # the unpointed dialogue of beta by phi alpha
        assert run(lambda bud: naive_dialogue(naive_app(phi, alpha), beta, [], bud), 10**4) == Value(12)
        assert interrogate(m.apply(phi, alpha), beta, 10**4, SC)[0] == Value(12)


@pytest.mark.parametrize("tag", ["k2", "k2p"])
def test_strategy_compiler_suite(tag):
    rep = check_strategy_compiler(make_model(tag), strategies=30, pairs=10, seed=0)
    assert rep.passed and rep.tested == 300


def test_random_strategies_are_deterministic():
    a = random_strategy(random.Random(5))
    b = random_strategy(random.Random(5))
    alpha, beta = from_function("x", lambda x: x + 1), from_function("y", lambda x: 2 * x)
    assert run_strategy(a, alpha, beta, 1000) == run_strategy(b, alpha, beta, 1000)


def test_kleene_protocol_by_hand():
    m = make_model("k2orig")
    # alpha: "tell me more" once, then beta(0) + 1
    def rule(code, budget):
        seq = SC.decode(code)
        return 0 if len(seq) < 2 else seq[1] + 1

    alpha = Builtin("more", rule)
    assert eval_fn(m.apply(alpha, Table({0: 9})), 4, 100) == Value(9)
    assert eval_fn(m.apply(alpha, Table({})), 4, 100) == UNDEFINED
    assert eval_fn(m.apply(from_function("z", lambda c: 0), const_hat(0)), 0, 500) == OUT_OF_FUEL


def test_kleene_k():
    m = make_model("k2orig")
    k = KleeneK(SC)
    a, b = from_function("a", lambda x: x + 7), const_hat(2)
    for x in range(5):
        assert eval_fn(m.apply_chain(k, a, b), x, 10**5) == Value(x + 7)
    assert isinstance(make_s(m), KleeneS)


def test_counterexample_window():
    kp, sp = make_k_prime_s_prime()
    assert in_counterexample_B(kp).member is True
    assert in_counterexample_B(sp).member is True
    g = in_counterexample_B(g_outside_B())
    assert g.member is False and g.first_failure == 0 and g.outcome == Value(1)


def test_b_closure():
    assert check_b_closure(samples=10, seed=3).passed


def test_corpus_sampler_is_seeded():
    m = make_model("k2")
    sampler = corpus_sampler(m)
    xs = [repr(sampler(random.Random(9))) for _ in range(2)]
    assert xs[0] == xs[1]
