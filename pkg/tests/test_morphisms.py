import pytest

from k2lab.basepca import CODE_PCA, SUCC, TupleScheme
from k2lab.k2 import make_k
from k2lab.morphisms import (ADJUNCTION_SOURCE, build_F_realizer, check_decider, check_F_recursion,
                             check_preorder, check_realizer, check_represents, check_rho_law,
                             claim_check, claim_programs, epsilon_prime_adjunction,
                             epsilon_retract_member, gamma_hat, gamma_morphism, identity_delta,
                             identity_element, make_rho, model_over, reading_decider, representer,
                             sample_defined_pairs, sample_points, sigma_witness)
from k2lab.partialfn import OUT_OF_FUEL, UNDEFINED, Value, eval_fn, from_function

PCA = CODE_PCA
SC = TupleScheme(PCA)
FUEL = 10**5


@pytest.fixture(scope="module")
def pairs():
    return sample_defined_pairs(50, seed=0)


@pytest.fixture(scope="module")
def points():
    return sample_points(20, seed=1)


def test_tuple_scheme_markers():
    assert SC.q == PCA.bot and SC.r == PCA.top
    assert SC.neither == PCA.k


def test_rho_on_each_probe_shape():
    a, b = PCA.element("SINGLE"), PCA.numeral(3)
    ab = PCA.apply(a, b, FUEL).value
    x = PCA.numeral(0)
    for variant in ("total", "partial"):
        rho = make_rho(variant)
        probe = lambda *parts: SC.encode(parts)
        # <<x>>: ask the second argument; <<x,b>>: ask the first; <<x,b>,a>: a b
        assert eval_fn(rho, probe(SC.encode([x])), FUEL) == Value(SC.tag_result(SC.qq))
        assert eval_fn(rho, probe(SC.encode([x, b])), FUEL) == Value(SC.qq)
        got = eval_fn(rho, probe(SC.encode([x, b]), a), FUEL)
        assert got == Value(SC.tag_result(SC.tag_result(ab)))
    # off the pattern, and on an undefined a b
    stuck = SC.encode([SC.encode([x, PCA.k]), PCA.code(SUCC)])
    assert eval_fn(make_rho("total"), stuck, FUEL) == Value(SC.tag_result(SC.qq))
    assert eval_fn(make_rho("partial"), stuck, FUEL) == UNDEFINED
    assert eval_fn(make_rho("total"), PCA.numeral(5), FUEL) == Value(SC.tag_result(SC.r))
    assert eval_fn(make_rho("partial"), PCA.numeral(5), FUEL) == UNDEFINED


def test_rho_laws(pairs, points):
    assert check_rho_law("total", model_over("k2"), pairs, points).passed
    assert check_rho_law("partial", model_over("k2p"), pairs, points).passed


def test_rho_application_against_the_algebra(pairs, points):
    # (rho a^ b^)(x) equals the code of a b at every point
    m = model_over("k2p")
    rho = make_rho("partial")
    for a, b in pairs[:10]:
        app = m.apply(m.apply(rho, gamma_hat(a)), gamma_hat(b))
        want = PCA.apply(a, b, FUEL)
        for x in points[:5]:
            assert eval_fn(app, x, FUEL) == want


def test_a_wrong_realizer_is_caught(pairs, points):
    m = model_over("k2")
    rep = check_realizer(gamma_morphism(m, points), make_k(m), pairs[:10])
    assert rep.failures


@pytest.mark.parametrize("tag", ["k2", "k2p"])
def test_decider(tag, points):
    m = model_over(tag)
    g = gamma_morphism(m, points)
    assert check_decider(g, reading_decider(m)).passed
    always_true = m.apply(make_k(m), gamma_hat(PCA.top))
    assert check_decider(g, always_true).failures


@pytest.mark.parametrize("tag", ["k2", "k2p"])
def test_preorder_and_represents(tag, points):
    m = model_over(tag)
    g = gamma_morphism(m, points)
    assert check_preorder(g, g, identity_element(m), sample_points(5, 3)).passed

    def succ(c):
        n = PCA.numeral_of(PCA.term(c))
        return None if n is None else PCA.numeral(n + 1)

    f = from_function("succ#", succ)
    dom = [PCA.numeral(n) for n in range(6)] + [PCA.k]
    assert check_represents(g, representer(f, m), f, dom).passed
    wrong = from_function("id", lambda c: c)
    assert check_represents(g, representer(wrong, m), f, dom).failures


def test_epsilon_retract(points):
    m = model_over("k2")
    # alpha sends element codes to numeral codes
    alpha = from_function("mod5", lambda c: PCA.numeral(c % 5))
    dom = sample_points(6, 7)
    assert epsilon_retract_member(sigma_witness(alpha, m), alpha, dom, m, points[:5]) is True
    assert epsilon_retract_member(make_k(m), alpha, dom, m, points[:5]) is False


def test_adjunction():
    res = epsilon_prime_adjunction(samples=30, seed=0)
    assert res.report.passed and res.echo.passed
    assert res.one_sided_window == []
    assert "NTH u #1" in ADJUNCTION_SOURCE


def test_F_claim_lengths():
    F = build_F_realizer(identity_delta())
    progs = claim_programs()
    rep = claim_check(F, progs["two-query"], progs["double"], PCA.numeral(1), 10**6)
    assert rep.passed and rep.tested == 4
    assert rep.notes == ["result after 2 answers"]
    imm = claim_check(F, progs["immediate"], progs["double"], PCA.numeral(1), 10**6)
    assert imm.passed and imm.notes == ["result after 0 answers"]


def test_F_value_by_hand():
    # two-query on y: asks y, then (2y)+1; result 2y + 2(2y+1)
    F = build_F_realizer(identity_delta())
    p = claim_programs()
    single = PCA.apply(PCA.element("SINGLE"), PCA.numeral(2), FUEL).value
    out = PCA.apply_chain(F, p["two-query"], p["double"], single, fuel=10**6)
    assert out == Value(PCA.numeral(2 * 2 + 2 * (2 * 2 + 1)))


def test_F_loop_runs_out_of_fuel():
    F = build_F_realizer(identity_delta())
    p = claim_programs()
    single = PCA.apply(PCA.element("SINGLE"), PCA.numeral(0), FUEL).value
    assert PCA.apply_chain(F, p["loop"], p["double"], single, fuel=10**5) == OUT_OF_FUEL


def test_F_recursion_equation():
    F = build_F_realizer(identity_delta())
    p = claim_programs()
    single = PCA.apply(PCA.element("SINGLE"), PCA.numeral(3), FUEL).value
    assert check_F_recursion(F, [(p["two-query"], p["double"], single),
                                 (p["immediate"], p["double"], single)]).passed
