import random
import sys

import pytest
from hypothesis import given, strategies as st

from k2lab import _kernels
from k2lab._kernels import machine_py
from k2lab.basepca import (CODE_PCA, FST, IFZ, K, PAIR, PRED, S, SND, SUCC, FIX, TupleScheme,
                           ap, check_kit_laws, check_pca_axioms, godel_decode,
                           godel_encode, num, random_value, term_of, tuple_items,
                           tuple_term)
from k2lab.errors import ParseError
from k2lab.partialfn import UNDEFINED, Value

sys.setrecursionlimit(10000)
ARITY = {K: 2, S: 3, PAIR: 3, FST: 1, SND: 1, SUCC: 1, PRED: 1, IFZ: 3, FIX: 2}


class Fuel(Exception):
    pass


class Stuck(Exception):
    pass


def spine(t):
    args = []
    while isinstance(t, tuple):
        args.append(t[1])
        t = t[0]
    return t, args[::-1]


def naive_apply(f, x, fuel):
    """Big-step call-by-value, written from the contraction rules alone."""
    head, args = spine(f)
    if head >= 9:
        raise Stuck
    args = args + [x]
    if len(args) < ARITY[head]:
        return (f, x)
    fuel[0] -= 1
    if fuel[0] < 0:
        raise Fuel
    a = args
    if head == K:
        return a[0]
    if head == S:
        return naive_apply(naive_apply(a[0], a[2], fuel), naive_apply(a[1], a[2], fuel), fuel)
    if head == PAIR:
        return naive_apply(naive_apply(a[2], a[0], fuel), a[1], fuel)
    if head == FIX:
        return naive_apply(naive_apply(a[0], (FIX, a[0]), fuel), a[1], fuel)
    if head == IFZ:
        if not isinstance(a[0], int) or a[0] < 9:
            raise Stuck
        return a[1] if a[0] == 9 else a[2]
    if head in (FST, SND):
        h, parts = spine(a[0])
        if h != PAIR or len(parts) != 2:
            raise Stuck
        return parts[0] if head == FST else parts[1]
    n = a[0]
    if not isinstance(n, int) or n < 9:
        raise Stuck
    return n + 1 if head == SUCC else max(n - 1, 9)


def naive(f, x, fuel):
    box = [fuel]
    try:
        v = naive_apply(f, x, box)
    except Stuck:
        return machine_py.STUCK, None, fuel - box[0]
    except (Fuel, RecursionError):
        return machine_py.OUT_OF_FUEL, None, None
    return machine_py.OK, v, fuel - box[0]


def sampled_pairs(n, seed):
    rng = random.Random(seed)
    return [(random_value(rng, CODE_PCA, 3), random_value(rng, CODE_PCA, 3)) for _ in range(n)]


def test_machine_matches_naive_reducer():
    for f, x in sampled_pairs(400, 1):
        want = naive(f, x, 2000)
        got = machine_py.apply_values(f, x, 2000)
        if want[0] == machine_py.OUT_OF_FUEL:
            continue
        assert got[0] == want[0], (f, x)
        if got[0] == machine_py.OK:
            assert got[1] == want[1] and got[2] == want[2]


@pytest.mark.skipif(_kernels.BACKEND != "cython", reason="compiled kernel not built")
def test_backends_agree():
    from k2lab._kernels import _machine
    for f, x in sampled_pairs(1000, 2):
        for fuel in (5, 500):
            assert _machine.apply_values(f, x, fuel) == machine_py.apply_values(f, x, fuel)


def test_worked_reductions(pca):
    # K #3 #4 = #3; S K K #5 = #5; PAIR #1 #2 FST-style access
    assert pca.apply(pca.code((K, num(3))), pca.numeral(4), 100) == Value(pca.numeral(3))
    skk = pca.code(ap(S, K, K))
    assert pca.apply(skk, pca.numeral(5), 100) == Value(pca.numeral(5))
    p = pca.code(ap(PAIR, num(1), num(2)))
    assert pca.apply(pca.code(FST), p, 100) == Value(pca.numeral(1))
    assert pca.apply(pca.code(SUCC), pca.code(K), 100) == UNDEFINED
    assert pca.apply(pca.code(PRED), pca.numeral(0), 100) == Value(pca.numeral(0))


@given(st.integers(0, 2**30))
def test_godel_numbering_is_a_bijection_onto_its_image(seed):
    t = random_value(random.Random(seed), CODE_PCA, 3)
    c = godel_encode(t)
    assert godel_decode(c) == t
    assert term_of(c) == t


def test_non_codes():
    assert term_of(0) is None and term_of(1) is None
    assert term_of(godel_encode((num(1), num(2)))) is None  # not a value


def test_bracket_abstraction_applies(pca):
    t = pca.compile("\\x y. PAIR y x")
    out = pca.apply_chain(pca.code(t), pca.numeral(1), pca.numeral(2), fuel=1000)
    assert term_of(out.value) == ap(PAIR, num(2), num(1))


def test_parse_errors(pca):
    for bad in ("(K", "\\. K", "FOO", "K )"):
        with pytest.raises(ParseError):
            pca.compile(bad)
    with pytest.raises(ParseError):  # diverges while normalizing
        pca.compile("FIX (\\f x. f x) #0", fuel=50)


@pytest.mark.parametrize("src,args,want", [
    ("PLUS", (3, 4), 7), ("DIFF", (7, 3), 4), ("DIFF", (2, 5), 0), ("EQ", (3, 3), 0),
    ("EQ", (3, 4), 1), ("TRI", (4,), 10), ("CPAIR", (2, 1), 7),
])
def test_arithmetic(pca, src, args, want):
    out = pca.apply_chain(pca.element(src), *map(pca.numeral, args), fuel=10**5)
    assert out == Value(pca.numeral(want))


def test_cantor_pair_in_algebra_matches_host(pca):
    from k2lab.coding import pair
    for x in range(4):
        for y in range(4):
            out = pca.apply_chain(pca.element("CPAIR"), pca.numeral(x), pca.numeral(y), fuel=10**5)
            assert out == Value(pca.numeral(pair(x, y)))


def test_tuples(pca):
    items = [num(3), K, num(0)]
    t = tuple_term(items)
    assert tuple_items(t) == items
    for i, it in enumerate(items):
        out = pca.apply_chain(pca.element("NTH"), pca.code(t), pca.numeral(i), fuel=10**4)
        assert out == Value(pca.code(it))
    out = pca.apply_chain(pca.element("APPEND"), pca.code(t), pca.numeral(9), fuel=10**5)
    assert tuple_items(term_of(out.value)) == items + [num(9)]


def test_tuple_scheme(pca):
    sc = TupleScheme(pca)
    codes = [pca.numeral(2), pca.k]
    assert sc.decode(sc.encode(codes)) == codes
    assert sc.q == pca.bot and sc.r == pca.top


def test_axioms_and_kit():
    assert check_pca_axioms(CODE_PCA, 100, 0, 10**5).passed
    assert check_kit_laws(CODE_PCA, 100, 20, 0, 10**5).passed


def test_axioms_catch_a_wrong_k():
    # PAIR in place of k breaks (k x) y = x
    rep = check_pca_axioms(CODE_PCA, 30, 0, 10**4, k=CODE_PCA.code(PAIR))
    assert rep.failures


def test_pure_fallback_is_selectable():
    import os
    import subprocess
    env = dict(os.environ, K2LAB_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import k2lab; print(k2lab.BACKEND)"],
                         capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "python"
