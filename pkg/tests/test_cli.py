import io
import subprocess
import sys
from pathlib import Path

import pytest

from k2lab.cli import Session, main, parse_expr, run_command, run_script
from k2lab.oracle import ORACLE_PROGRAMS

GOLDEN = Path(__file__).parent / "golden"


def run(line, session=None):
    return run_command(line, session or Session())


def test_expressions():
    assert parse_expr("k") == "k"
    assert parse_expr("(apply k a)") == ("app", "k", "a")
    assert parse_expr("((k a) s)") == ("app", ("app", "k", "a"), "s")
    for bad in ("(k a", "k a", "()", "(k a b)", "k)"):
        with pytest.raises(Exception):
            parse_expr(bad)


def test_spec_example_session():
    s = Session()
    assert run("def a @prog SUCC", s) == ("", 0)
    assert run("model k2p", s) == ("", 0)
    text, status = run("eval (apply k a) 2 --trace", s)
    # k a asks a at the point's single entry 0 and returns <r, a(0)> = <r, 1>
    from k2lab.coding import COMPACT
    assert text == f"point 2\nstep 0: ask 0 -> 1\nresult {COMPACT.tag_result(1)}\n"
    assert status == 0


@pytest.mark.parametrize("line", ["eval missing 0", "bogus", "model k3", "fuel x", "eval k",
                                  "check nosuch", "eval k 0 --what", "apply k as x",
                                  "def a @prog (K", "tree k --depth x", "kprime"])
def test_parse_errors_exit_3(line):
    assert run(line)[1] == 3


def test_kprime_needs_k2orig():
    assert run("eval kprime 0")[1] == 3
    s = Session(model="k2orig")
    from k2lab.coding import COMPACT
    # k' answers n at E_n
    assert run(f"eval kprime {COMPACT.e_n(3)}", s) == ("result 3\n", 0)


def test_out_of_fuel_exit_2(tmp_path):
    f = tmp_path / "p.or"
    f.write_text("@builtin primechar\n")
    s = Session()
    script = f"model oracle; load p {f}; def t @prog {ORACLE_PROGRAMS['two-query']}; fuel 20; eval t 5"
    out = io.StringIO()
    assert run_script(script, s, out) == 2
    assert out.getvalue() == "out-of-fuel\n"


def test_check_status_and_samples():
    text, status = run("check s-axiom --samples 50 --seed 42")
    assert status == 0 and "tested=50" in text and text.endswith("status 0\n")


def test_script_stops_at_parse_error():
    out = io.StringIO()
    assert run_script("fuel 10; nope; fuel 20", Session(), out) == 3
    assert out.getvalue().startswith("error:")


def test_batch_check(capsys):
    assert main(["check", "k-axiom", "--model", "k2", "--samples", "100", "--seed", "1"]) == 0
    assert "k2:k-axiom" in capsys.readouterr().out


def test_batch_unknown_flag():
    assert main(["check", "k-axiom", "--bogus"]) == 3
    assert main(["frobnicate"]) == 3


def test_batch_oracle_eval(capsys):
    code = main(["eval", "--model", "oracle", "--oracle-file", str(GOLDEN / "primes.or"),
                 "--prog", ORACLE_PROGRAMS["two-query"], "--point", "5", "--trace"])
    assert code == 0
    assert capsys.readouterr().out == "point 5\nstep 0: ask 5 -> 1\nstep 1: ask 6 -> 0\nresult 1\n"


def test_batch_missing_oracle_file():
    assert main(["eval", "--oracle-file", "/nonexistent.or", "--prog", "K", "--point", "0"]) == 3


def test_tree_command():
    s = Session()
    run("def a @prog SUCC", s)
    text, status = run("tree (apply k a) --depth 1 --alphabet 0,1", s)
    assert status == 0
    assert text == "-: branch 0\n0: leaf 1\n1: leaf 2\n"


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "k2lab.cli", "repl", "-c", "eval missing 0"],
                          capture_output=True, text=True)
    assert proc.returncode == 3 and proc.stdout.startswith("error:")
