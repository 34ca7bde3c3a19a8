from k2lab.basepca import CODE_PCA, K, num
from k2lab.morphisms import model_over
from k2lab.oracle import (ORACLE_PROGRAMS, OracleModel, check_join_laws, check_represents_in_oracle,
                          downward_closure_member, join, join_witness_element, make_bar,
                          numeral_apply, numeral_oracle, oracle_apply, oracle_program, pair_code,
                          replay_oracle_trace)
from k2lab.partialfn import UNDEFINED, Table, Value, builtin, eval_fn, is_prime

PCA = CODE_PCA
PRIMES = Table({x: int(is_prime(x)) for x in range(101)})


def test_two_query_program_against_direct_computation():
    m = numeral_oracle(PRIMES)
    a = oracle_program("two-query")
    for b in range(50):
        out, trace = numeral_apply(m, a, b, 10**5)
        assert out == Value(int(is_prime(b)) + int(is_prime(b + 1)))
        assert trace.steps == [(b, int(is_prime(b))), (b + 1, int(is_prime(b + 1)))]
        assert replay_oracle_trace(m, a, trace, 10**5) == []


def test_trace_text():
    m = numeral_oracle(PRIMES)
    _, trace = numeral_apply(m, oracle_program("two-query"), 5, 10**5)
    assert trace.format() == "point 5\nstep 0: ask 5 -> 1\nstep 1: ask 6 -> 0\nresult 1\n"


def test_replay_catches_a_forged_answer():
    m = numeral_oracle(PRIMES)
    a = oracle_program("two-query")
    _, trace = numeral_apply(m, a, 5, 10**5)
    trace.steps[0] = (5, 0)
    assert replay_oracle_trace(m, a, trace, 10**5)


def test_oracle_outside_its_table_is_undefined():
    m = numeral_oracle(PRIMES)
    out, _ = numeral_apply(m, oracle_program("echo"), 200, 10**5)
    assert out == UNDEFINED


def test_plain_application_is_embedded():
    # a program that answers at once never consults f
    m = numeral_oracle(Table({}))
    assert numeral_apply(m, oracle_program("succ"), 4, 10**5)[0] == Value(5)
    out, trace = oracle_apply(m, oracle_program("identity"), PCA.code(K), 10**5)
    assert out == Value(PCA.code(K)) and trace.steps == []


def test_reducibility_witnesses():
    m = numeral_oracle(PRIMES)
    assert check_represents_in_oracle(m, oracle_program("echo"), PRIMES, range(60)).passed
    assert check_represents_in_oracle(m, oracle_program("succ"), builtin("succ"), range(60)).passed
    wrong = check_represents_in_oracle(m, oracle_program("succ"), PRIMES, range(10))
    assert wrong.failures


def test_join_by_hand():
    f, g = Table({PCA.numeral(1): 10}), Table({PCA.numeral(1): 20})
    j = join(f, g)
    assert eval_fn(j, pair_code(True, PCA.numeral(1)), 100) == Value(10)
    assert eval_fn(j, pair_code(False, PCA.numeral(1)), 100) == Value(20)
    assert eval_fn(j, PCA.numeral(1), 100) == UNDEFINED
    pts = [PCA.numeral(i) for i in range(5)]
    assert check_join_laws(f, g, pts).passed


def test_join_witness_in_the_partial_model():
    k2p = model_over("k2p")
    bar = make_bar(PCA, join_witness_element())
    g1 = Table({PCA.numeral(i): PCA.numeral(i + 1) for i in range(6)})
    g2 = Table({PCA.numeral(i): PCA.numeral(2 * i) for i in range(6)})
    app = k2p.apply(k2p.apply(bar, g1), g2)
    for i in range(6):
        for top, want in ((True, i + 1), (False, 2 * i)):
            y = pair_code(top, PCA.numeral(i))
            assert eval_fn(app, y, 10**5) == Value(PCA.numeral(want))


def test_downward_closure():
    g = Table({1: 2, 3: 4})
    assert downward_closure_member([g], Table({1: 2}), range(5)) is True
    assert downward_closure_member([g], Table({1: 3}), range(5)) is False


def test_programs_compile():
    for name in ORACLE_PROGRAMS:
        assert PCA.term(oracle_program(name)) is not None


def test_code_level_oracle():
    # the oracle acts on element codes directly
    m = OracleModel(Table({PCA.code(num(3)): PCA.code(num(8))}), PCA, numerals=False)
    assert numeral_apply(m, oracle_program("echo"), 3, 10**5)[0] == Value(8)
