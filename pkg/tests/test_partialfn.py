import pytest
from hypothesis import given, strategies as st

from k2lab.basepca import CODE_PCA
from k2lab.errors import OutOfFuel, ParseError, Stuck
from k2lab.partialfn import (OUT_OF_FUEL, UNDEFINED, Budget, Builtin, Program, Table, Totalized,
                             Value, agree_on, builtin, dump_table, eval_fn, is_prime, parse_oracle,
                             run)


def test_run_classifies():
    assert run(lambda b: 3, 10) == Value(3)

    def stuck(b):
        raise Stuck()

    assert run(stuck, 10) == UNDEFINED

    def spin(b):
        while True:
            b.spend()

    assert run(spin, 50) == OUT_OF_FUEL
    with pytest.raises(ValueError):
        run(lambda b: 0, 0)


def test_budget_is_exact():
    b = Budget(3)
    b.spend(2)
    b.spend()
    with pytest.raises(OutOfFuel):
        b.spend()
    assert b.used == 3


def test_table_and_totalized():
    t = Table({1: 5})
    assert eval_fn(t, 1, 10) == Value(5)
    assert eval_fn(t, 2, 10) == UNDEFINED
    assert eval_fn(Totalized(t, 0), 2, 10) == Value(0)


def test_memo_charges_recorded_cost():
    calls = []

    def rule(x, budget):
        calls.append(x)
        budget.spend(40)
        return x

    f = Builtin("slow", rule)
    assert eval_fn(f, 3, 100) == Value(3)
    # the second lookup is free of recomputation but not of cost
    assert eval_fn(f, 3, 30) == OUT_OF_FUEL
    assert calls == [3]


def test_primes_against_trial_division():
    def slow(n):
        return n > 1 and all(n % d for d in range(2, n))

    assert [n for n in range(200) if is_prime(n)] == [n for n in range(200) if slow(n)]


@pytest.mark.parametrize("spec,x,y", [("succ", 4, 5), ("id", 4, 4), ("const:9", 4, 9),
                                      ("primechar", 7, 1), ("primechar", 9, 0)])
def test_builtins(spec, x, y):
    assert eval_fn(builtin(spec), x, 10) == Value(y)


def test_bad_builtin():
    with pytest.raises(ParseError):
        builtin("nope")
    with pytest.raises(ParseError):
        builtin("const:-1")


def test_oracle_file_format():
    f = parse_oracle("# squares\n0 0\n1 1\n2 4\n\n")
    assert [eval_fn(f, x, 10) for x in range(4)] == [Value(0), Value(1), Value(4), UNDEFINED]
    g = parse_oracle("@builtin succ\n")
    assert eval_fn(g, 1, 10) == Value(2)
    p = parse_oracle("@prog \\x. SUCC (SUCC x)\n", CODE_PCA)
    assert isinstance(p, Program)
    assert eval_fn(p, 3, 10**4) == Value(5)


@pytest.mark.parametrize("text", ["1 2 3\n", "a b\n", "1 2\n1 3\n", "@builtin id\n1 2\n",
                                  "@what x\n", "1  2\n"])
def test_oracle_file_errors(text):
    with pytest.raises(ParseError):
        parse_oracle(text)


@given(st.dictionaries(st.integers(0, 10**6), st.integers(0, 10**6), max_size=20))
def test_dump_parse_roundtrip(mapping):
    text = dump_table(mapping)
    f = parse_oracle(text)
    assert all(eval_fn(f, x, 10) == Value(y) for x, y in mapping.items())
    assert dump_table(f.mapping) == text


def test_agreement():
    a = agree_on(Table({0: 1, 1: 2}), Table({0: 1, 1: 3}), range(3), 10)
    assert a.checked == 3 and a.differ == [(1, Value(2), Value(3))] and not a.equal
