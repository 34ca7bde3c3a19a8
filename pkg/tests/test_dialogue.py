import random

from k2lab.coding import CANTOR, COMPACT
from k2lab.dialogue import (Branch, Leaf, Trace, check_tree_roundtrip, eval_tree, fn_to_tree,
                            interrogate, interrogate_at, random_oracle, random_tree, replay_trace,
                            tree_nodes, tree_to_fn)
from k2lab.partialfn import OUT_OF_FUEL, UNDEFINED, Builtin, Table, Value, from_function


def asker(points, combine, scheme=CANTOR):
    """alpha asking ``points`` in order, then returning ``combine(answers)``."""

    def rule(code, budget):
        seq = scheme.decode(code)
        if seq is None:
            return scheme.neither
        if len(seq) < len(points):
            return scheme.tag_query(points[len(seq)])
        return scheme.tag_result(combine(seq))

    return Builtin("asker", rule)


def test_two_queries_and_trace():
    beta = Table({3: 10, 4: 20})
    alpha = asker([3, 4], sum)
    out, trace = interrogate(alpha, beta, 1000)
    assert out == Value(30)
    assert trace.steps == [(3, 10), (4, 20)]
    assert trace.format() == "step 0: ask 3 -> 10\nstep 1: ask 4 -> 20\nresult 30\n"
    assert replay_trace(trace, alpha, beta, 1000) == []


def test_pointed_interrogation_prefixes_the_point():
    seen = []

    def rule(code, budget):
        seen.append(CANTOR.decode(code))
        return CANTOR.tag_result(7)

    out, trace = interrogate_at(Builtin("r", rule), Table({}), 5, 100)
    assert out == Value(7) and seen == [[5]]
    assert trace.format() == "point 5\nresult 7\n"


def test_undefined_and_divergent():
    alpha = asker([3], sum)
    assert interrogate(alpha, Table({}), 100)[0] == UNDEFINED
    loop = from_function("loop", lambda c: CANTOR.tag_query(0))
    assert interrogate(loop, Table({0: 0}), 500)[0] == OUT_OF_FUEL
    junk = from_function("junk", lambda c: CANTOR.encode((9, 9)))
    assert interrogate(junk, Table({}), 100)[0] == UNDEFINED


def test_replay_detects_tampering():
    beta = Table({3: 10, 4: 20})
    alpha = asker([3, 4], sum)
    _, trace = interrogate(alpha, beta, 1000)
    bad = Trace(None, [(3, 11), (4, 20)], trace.final)
    assert replay_trace(bad, alpha, beta, 1000)


def test_tree_walk_by_hand():
    tree = Branch(2, {0: Leaf(5), 1: Branch(4, {0: Leaf(6)})})
    assert eval_tree(tree, Table({2: 0}), 100) == (Value(5), [(2, 0)])
    assert eval_tree(tree, Table({2: 1, 4: 0}), 100)[0] == Value(6)
    assert eval_tree(tree, Table({2: 1, 4: 1}), 100)[0] == UNDEFINED
    assert eval_tree(tree, Table({2: 7}), 100)[0] == UNDEFINED


def test_tree_and_function_agree_by_independent_walk():
    rng = random.Random(4)
    for _ in range(30):
        tree = random_tree(rng, 3)
        alpha = tree_to_fn(tree, COMPACT)
        for _ in range(10):
            beta = random_oracle(rng)
            # follow the tree by hand
            node, want = tree, None
            while isinstance(node, Branch):
                node = node.children.get(beta(node.point).value)
            want = UNDEFINED if node is None or node.label is None else Value(node.label)
            assert interrogate(alpha, beta, 10**4, COMPACT)[0] == want


def test_exploration_recovers_nodes():
    tree = Branch(1, {a: Branch(2, {b: Leaf(a * 3 + b) for b in range(3)}) for a in range(3)})
    back = fn_to_tree(tree_to_fn(tree), 3, range(3), 1000)
    assert tree_nodes(back, range(3), 3) == tree_nodes(tree, range(3), 3)
    assert tree_nodes(back, range(3), 3)[(1, 2)] == ("leaf", 5)


def test_exploration_cuts_at_depth():
    tree = Branch(1, {0: Branch(2, {0: Leaf(0)})})
    back = fn_to_tree(tree_to_fn(tree), 1, (0,), 1000)
    assert tree_nodes(back, (0,), 1) == {(): ("branch", 1), (0,): ("cut", 2)}


def test_roundtrip_suite():
    rep = check_tree_roundtrip(20, 20, seed=0)
    assert rep.passed
    assert rep.tested == 20 * (1 + 2 * 20)
