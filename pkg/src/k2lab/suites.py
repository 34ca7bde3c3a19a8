"""Named property suites behind ``pca check``.

Every suite returns a list of reports.  ``ROWS`` names the acceptance row
each suite belongs to; ``None`` means the suite's defaults.
"""
from __future__ import annotations

import random
from typing import Callable, Optional

from k2lab.basepca import CODE_PCA, check_kit_laws, check_pca_axioms, tuple_term
from k2lab.coding import CANTOR, COMPACT, DELTA, check_coding
from k2lab.dialogue import check_tree_roundtrip
from k2lab.k2 import (b_corpus_sampler, check_b_closure, check_k_axiom, check_s_axiom,
                      check_strategy_compiler, g_outside_B, in_counterexample_B,
                      make_k_prime_s_prime, make_model)
from k2lab.morphisms import (build_F_realizer, check_decider, check_F_recursion,
                             check_preorder, check_realizer, check_represents,
                             check_rho_law, claim_check, claim_programs, epsilon_prime_adjunction,
                             gamma_morphism, identity_delta, identity_element,
                             make_rho, model_over, reading_decider, representer,
                             sample_defined_pairs, sample_points)
from k2lab.oracle import (OracleModel, check_join_laws, check_represents_in_oracle, join, join_witness_element,
                          make_bar, numeral_apply, numeral_oracle, oracle_program, pair_code,
                          replay_oracle_trace)
from k2lab.errors import Stuck
from k2lab.partialfn import Builtin, Table, Value, builtin, eval_fn, from_function, is_prime
from k2lab.report import CheckReport

Suite = Callable[..., list]


def _n(samples: Optional[int], default: int) -> int:
    return default if samples is None else samples


def suite_coding(samples=None, seed=0, fuel=10**5, model="k2"):
    return [check_coding(s) for s in (CANTOR, DELTA, COMPACT)]


def suite_codepca(samples=None, seed=0, fuel=10**5, model="k2"):
    n = _n(samples, 100)
    return [check_pca_axioms(CODE_PCA, n, seed, fuel),
            check_kit_laws(CODE_PCA, n, 20, seed, fuel)]


def suite_k_axiom(samples=None, seed=0, fuel=10**5, model="k2"):
    return [check_k_axiom(make_model(model), samples=_n(samples, 100), seed=seed, fuel=fuel)]


def suite_s_axiom(samples=None, seed=0, fuel=10**5, model="k2"):
    return [check_s_axiom(make_model(model), samples=_n(samples, 50), seed=seed, fuel=fuel)]


def suite_axioms(samples=None, seed=0, fuel=10**5, model="k2"):
    out = []
    for tag in ("k2", "k2p"):
        out += suite_k_axiom(samples, seed, fuel, tag) + suite_s_axiom(
            None if samples is None else max(1, samples // 2), seed, fuel, tag)
    return out


def suite_strategy(samples=None, seed=0, fuel=10**5, model="k2"):
    return [check_strategy_compiler(make_model(tag), _n(samples, 30), 10, seed, 4, fuel)
            for tag in ("k2", "k2p")]


def suite_trees(samples=None, seed=0, fuel=10**5, model="k2"):
    return [check_tree_roundtrip(_n(samples, 20), 20, seed, 3, (0, 1, 2), fuel)]


def suite_rho(samples=None, seed=0, fuel=10**5, model="k2"):
    pairs = sample_defined_pairs(_n(samples, 50), seed, fuel)
    points = sample_points(20, seed + 1)
    return [check_rho_law("total", model_over("k2"), pairs, points, fuel),
            check_rho_law("partial", model_over("k2p"), pairs, points, fuel)]


def _numeral_succ():
    pca = CODE_PCA

    def f(c):
        t = pca.term(c)
        n = pca.numeral_of(t) if t is not None else None
        return None if n is None else pca.numeral(n + 1)

    return from_function("succ#", f)


def suite_realizer(samples=None, seed=0, fuel=10**5, model="k2"):
    pairs = sample_defined_pairs(_n(samples, 50), seed, fuel)
    points = sample_points(20, seed + 1)
    m = model_over(model if model in ("k2", "k2p") else "k2")
    rep = check_realizer(gamma_morphism(m, points, fuel), make_rho("partial" if m.partial else "total"),
                         pairs, fuel)
    return [rep]


def suite_decider(samples=None, seed=0, fuel=10**5, model="k2"):
    points = sample_points(_n(samples, 20), seed)
    return [check_decider(gamma_morphism(model_over(tag), points, fuel), reading_decider(model_over(tag)),
                          fuel) for tag in ("k2", "k2p")]


def suite_preorder(samples=None, seed=0, fuel=10**5, model="k2"):
    points = sample_points(20, seed)
    window = sample_points(_n(samples, 10), seed + 1)
    out = []
    for tag in ("k2", "k2p"):
        m = model_over(tag)
        g = gamma_morphism(m, points, fuel)
        out.append(check_preorder(g, g, identity_element(m), window, fuel))
    return out


def suite_represents(samples=None, seed=0, fuel=10**5, model="k2"):
    pca = CODE_PCA
    points = sample_points(20, seed)
    rng = random.Random(seed)
    succ = _numeral_succ()
    dom = [pca.numeral(rng.randrange(50)) for _ in range(_n(samples, 10))] + sample_points(5, seed + 2)
    out = []
    for tag in ("k2", "k2p"):
        m = model_over(tag)
        out.append(check_represents(gamma_morphism(m, points, fuel), representer(succ, m), succ, dom, fuel))
    return out


def _code_table(rng, keys, pca=CODE_PCA):
    return Table({pca.numeral(k): pca.numeral(rng.randrange(20)) for k in keys if rng.random() < 0.7})


def suite_joins(samples=None, seed=0, fuel=10**5, model="k2"):
    pca = CODE_PCA
    rng = random.Random(seed)
    n = _n(samples, 50)
    f, g = _code_table(rng, range(30)), _code_table(rng, range(30))
    points = [pca.numeral(i) for i in range(n // 2)] + sample_points(n - n // 2, seed + 1)
    laws = check_join_laws(f, g, points, fuel)
    # the in-model witness
    k2p = model_over("k2p")
    bar = make_bar(pca, join_witness_element(pca))
    wit = CheckReport("oracle:join-witness")
    for _ in range(20):
        g1, g2 = _code_table(rng, range(8)), _code_table(rng, range(8))
        app = k2p.apply(k2p.apply(bar, g1), g2)
        j = join(g1, g2)
        for x in range(10):
            for top in (True, False):
                y = pair_code(top, pca.numeral(x))
                wit.tested += 1
                lhs, rhs = eval_fn(app, y, fuel), eval_fn(j, y, fuel)
                if lhs.out_of_fuel or rhs.out_of_fuel:
                    wit.inconclusive += 1
                elif lhs != rhs:
                    wit.fail(x, top, lhs, rhs)
    # f and g are both computable from their join
    upper = CheckReport("oracle:join-upper-bounds")
    left, right = builtin("succ"), from_function("double", lambda x: 2 * x)
    joined = OracleModel(join(_lift_numeral(left), _lift_numeral(right)), pca, numerals=False)
    for prog, side in (("join-left", left), ("join-right", right)):
        upper.merge(check_represents_in_oracle(joined, oracle_program(prog), side, range(20), fuel))
    return [laws, wit, upper]


def _lift_numeral(f, pca=CODE_PCA):
    """``f`` on the naturals as a function on numeral codes."""

    def rule(x, budget):
        t = pca.term(x)
        n = pca.numeral_of(t) if t is not None else None
        if n is None:
            raise Stuck()
        return pca.numeral(f.value(n, budget))

    return Builtin(f"lift({f!r})", rule)


def suite_oracle(samples=None, seed=0, fuel=10**5, model="k2"):
    primes = Table({x: int(is_prime(x)) for x in range(101)})
    m = numeral_oracle(primes)
    a = oracle_program("two-query")
    rep = CheckReport("oracle:two-query")
    replay = CheckReport("oracle:trace-replay")
    for b in range(_n(samples, 50)):
        out, trace = numeral_apply(m, a, b, fuel)
        rep.tested += 1
        want = int(is_prime(b)) + int(is_prime(b + 1))
        if out.out_of_fuel:
            rep.inconclusive += 1
        elif out != Value(want):
            rep.fail(b, out, want)
        replay.tested += 1
        problems = replay_oracle_trace(m, a, trace, fuel)
        if problems:
            replay.fail(b, problems)
    refl = check_represents_in_oracle(m, oracle_program("echo"), primes, range(50), fuel)
    refl.name = "oracle:reflexive"
    comp = check_represents_in_oracle(m, oracle_program("succ"), builtin("succ"), range(50), fuel)
    comp.name = "oracle:computable"
    return [rep, replay, refl, comp]


def suite_counterexample(samples=None, seed=0, fuel=10**5, model="k2"):
    n = _n(samples, 30)
    kp, sp = make_k_prime_s_prime()
    window = CheckReport("k2orig:window")
    for el in (kp, sp):
        window.tested += 1
        mem = in_counterexample_B(el, 20, fuel)
        if mem.member is None:
            window.inconclusive += 1
        elif not mem.member:
            window.fail(el, mem.first_failure, mem.outcome)
    m = make_model("k2orig")
    k_rep = check_k_axiom(m, kp, n, seed, fuel, sampler=b_corpus_sampler())
    s_rep = check_s_axiom(m, sp, n, seed, fuel, sampler=b_corpus_sampler())
    k_rep.name, s_rep.name = "k2orig:k'-axiom", "k2orig:s'-axiom"
    closure = check_b_closure(n, seed, 20, fuel)
    outside = CheckReport("k2orig:g-outside-B")
    outside.tested = 1
    mem = in_counterexample_B(g_outside_B(), 20, fuel)
    if mem.member is not False:
        outside.fail("g passes the window test", mem)
    return [window, k_rep, s_rep, closure, outside]


def suite_adjunction(samples=None, seed=0, fuel=10**5, model="k2"):
    res = epsilon_prime_adjunction(_n(samples, 30), seed, fuel)
    one_sided = CheckReport("adjunction:one-sided")
    one_sided.tested = 1
    if res.one_sided_window:
        one_sided.fail("window not empty", res.one_sided_window)
    return [res.report, res.echo, one_sided]


def suite_fclaim(samples=None, seed=0, fuel=10**6, model="k2"):
    pca = CODE_PCA
    F = build_F_realizer(identity_delta())
    progs = claim_programs()
    rep = CheckReport("fclaim:chain")
    for y in range(_n(samples, 3)):
        r = claim_check(F, progs["two-query"], progs["double"], pca.numeral(y), fuel)
        rep.merge(r)
    imm = claim_check(F, progs["immediate"], progs["double"], pca.numeral(5), fuel)
    imm.name = "fclaim:immediate"
    rng = random.Random(seed)
    triples = []
    for _ in range(5):
        v = [pca.numeral(rng.randrange(5)) for _ in range(1 + rng.randrange(3))]
        triples.append((progs["two-query"], progs["double"], _tuple_code(v)))
    rec = check_F_recursion(F, triples, fuel)
    return [rep, imm, rec]


def _tuple_code(codes, pca=CODE_PCA):
    return pca.code(tuple_term([pca.term(c) for c in codes]))


SUITES: dict[str, tuple[Suite, int]] = {
    "coding": (suite_coding, 1),
    "codepca": (suite_codepca, 2),
    "k-axiom": (suite_k_axiom, 3),
    "s-axiom": (suite_s_axiom, 3),
    "axioms": (suite_axioms, 3),
    "strategy": (suite_strategy, 4),
    "trees": (suite_trees, 5),
    "rho": (suite_rho, 6),
    "realizer": (suite_realizer, 6),
    "decider": (suite_decider, 6),
    "preorder": (suite_preorder, 6),
    "represents": (suite_represents, 6),
    "joins": (suite_joins, 7),
    "oracle": (suite_oracle, 8),
    "counterexample": (suite_counterexample, 9),
    "adjunction": (suite_adjunction, 10),
    "fclaim": (suite_fclaim, 11),
}

# suites whose natural budget differs from the session default
DEFAULT_FUEL = {"fclaim": 10**6}


def run_suite(name: str, samples: Optional[int] = None, seed: int = 0,
              fuel: Optional[int] = None, model: str = "k2") -> list:
    fn, _row = SUITES[name]
    if fuel is None:
        fuel = DEFAULT_FUEL.get(name, 10**5)
    return fn(samples, seed, fuel, model)
