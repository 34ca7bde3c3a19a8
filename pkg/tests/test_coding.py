from itertools import count, product

import pytest
from hypothesis import given, strategies as st

from k2lab.coding import (CANTOR, COMPACT, DELTA, Neither, Query, Result, check_coding,
                          pair, unpair)
from k2lab.errors import CodingOverflow

SCHEMES = [CANTOR, DELTA, COMPACT]
naturals = st.integers(min_value=0, max_value=10**6)


def diagonal_index(x, y):
    # walk the anti-diagonals until (x, y) turns up
    for i, (a, b) in enumerate(((s - j, j) for s in count() for j in range(s + 1))):
        if (a, b) == (x, y):
            return i


def test_pair_matches_diagonal_walk():
    for x, y in product(range(8), repeat=2):
        assert pair(x, y) == diagonal_index(x, y)
        assert unpair(pair(x, y)) == (x, y)


def test_cantor_small_codes():
    # <> = 0, <a, *t> = 1 + pair(a, <t>) worked by hand
    assert CANTOR.encode(()) == 0
    assert CANTOR.encode((0,)) == 1
    assert CANTOR.encode((1,)) == 2
    assert CANTOR.encode((0, 0)) == 3


def test_cantor_is_onto_an_initial_segment():
    # every natural decodes, and re-encodes to itself
    assert all(CANTOR.encode(CANTOR.decode(c)) == c for c in range(500))


@pytest.mark.parametrize("scheme", SCHEMES, ids=lambda s: s.name)
def test_exhaustive_check(scheme):
    rep = check_coding(scheme)
    assert rep.passed, rep.failures[:3]
    assert rep.tested == sum(7 ** n for n in range(5)) + 1


@pytest.mark.parametrize("scheme", SCHEMES, ids=lambda s: s.name)
@given(items=st.lists(naturals, max_size=8), extra=naturals)
def test_roundtrip_and_extend(scheme, items, extra):
    code = scheme.encode(items)
    assert scheme.decode(code) == items
    assert scheme.extend(code, extra) == scheme.encode(items + [extra])


@pytest.mark.parametrize("scheme", SCHEMES, ids=lambda s: s.name)
def test_tags(scheme):
    assert scheme.untag(scheme.tag_query(7)) == Query(7)
    assert scheme.untag(scheme.tag_result(7)) == Result(7)
    assert scheme.untag(scheme.neither) is Neither
    assert scheme.untag(scheme.encode((5, 1))) is Neither
    assert scheme.untag(scheme.encode((scheme.q, 1, 2))) is Neither


@pytest.mark.parametrize("scheme", SCHEMES, ids=lambda s: s.name)
def test_e_n_nest(scheme):
    es = [scheme.e_n(n) for n in range(21)]
    assert len(set(es)) == 21
    for n in range(1, 21):
        assert scheme.decode(es[n]) == [es[n - 1]]


def test_compact_switches_to_delta_for_long_sequences():
    small = COMPACT.encode((1, 2))
    assert small % 2 == 0 and small // 2 == CANTOR.encode((1, 2))
    big = COMPACT.encode(list(range(40)))
    assert big % 2 == 1
    assert COMPACT.decode(big) == list(range(40))
    # odd codes that decode to a small sequence are not canonical
    assert COMPACT.decode(2 * DELTA.encode((1, 2)) + 1) is None


def test_width_cap():
    with pytest.raises(CodingOverflow):
        DELTA.encode([2 ** (1 << 20)])
