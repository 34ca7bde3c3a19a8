"""Interrogations, sequential trees and the tree <-> element conversions.

An interrogation of ``beta`` by ``alpha`` feeds ``alpha`` the coded list of
answers received so far; ``alpha`` replies with a tagged query ``<q,b>``
(ask ``beta`` at ``b``) or a tagged result ``<r,c>``.  Pointed
interrogations prefix a fixed point to every probed code.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from k2lab.coding import CANTOR, CodingScheme, Neither, Query, Result
from k2lab.errors import OutOfFuel, Stuck
from k2lab.partialfn import (OUT_OF_FUEL, Budget, Outcome, PartialFn,
                             Value, eval_fn, run)


@dataclass
class Trace:
    point: Optional[int] = None
    steps: list = field(default_factory=list)  # (query point, answer)
    final: Outcome = OUT_OF_FUEL

    def format(self) -> str:
        lines = [] if self.point is None else [f"point {self.point}"]
        for i, (b, a) in enumerate(self.steps):
            lines.append(f"step {i}: ask {b} -> {a}")
        lines.append(format_outcome(self.final))
        return "\n".join(lines) + "\n"


def format_outcome(out: Outcome) -> str:
    if out.is_value:
        return f"result {out.value}"
    return "undefined" if out.is_undefined else "out-of-fuel"


def run_interrogation(alpha: PartialFn, beta: PartialFn, budget: Budget,
                      point: Optional[int] = None, scheme: CodingScheme = CANTOR,
                      steps: Optional[list] = None) -> int:
    """Drive the dialogue to its result; raises Stuck or OutOfFuel."""
    code = scheme.encode([] if point is None else [point])
    while True:
        budget.spend()
        v = alpha.value(code, budget)
        tagged = scheme.untag(v)
        if isinstance(tagged, Result):
            return tagged.value
        if tagged is Neither:
            raise Stuck()
        ans = beta.value(tagged.point, budget)
        if steps is not None:
            steps.append((tagged.point, ans))
        code = scheme.extend(code, ans)


def _traced(alpha, beta, fuel, point, scheme) -> tuple[Outcome, Trace]:
    trace = Trace(point)
    trace.final = run(lambda b: run_interrogation(alpha, beta, b, point, scheme, trace.steps), fuel)
    return trace.final, trace


def interrogate(alpha: PartialFn, beta: PartialFn, fuel: int,
                scheme: CodingScheme = CANTOR) -> tuple[Outcome, Trace]:
    return _traced(alpha, beta, fuel, None, scheme)


def interrogate_at(alpha: PartialFn, beta: PartialFn, a: int, fuel: int,
                   scheme: CodingScheme = CANTOR) -> tuple[Outcome, Trace]:
    return _traced(alpha, beta, fuel, a, scheme)


def replay_trace(trace: Trace, alpha: PartialFn, beta: PartialFn, fuel: int,
                 scheme: CodingScheme = CANTOR) -> list[str]:
    """Problems found when replaying ``trace``; empty when it is valid."""
    problems = []
    answers = [] if trace.point is None else [trace.point]
    for i, (b, a) in enumerate(trace.steps):
        v = eval_fn(alpha, scheme.encode(answers), fuel)
        if not v.is_value or scheme.untag(v.value) != Query(b):
            problems.append(f"step {i}: alpha does not ask {b}")
        got = eval_fn(beta, b, fuel)
        if got != Value(a):
            problems.append(f"step {i}: beta({b}) is {got!r}, trace says {a}")
        answers.append(a)
    if trace.final.is_value:
        v = eval_fn(alpha, scheme.encode(answers), fuel)
        if not v.is_value or scheme.untag(v.value) != Result(trace.final.value):
            problems.append("final probe does not yield the recorded result")
    return problems


# -------------------------------------------------------------------- trees

@dataclass(frozen=True)
class Leaf:
    label: Optional[int] = None  # None: unlabeled (evaluation is undefined)


@dataclass
class Branch:
    """Internal node querying ``point``.

    ``children`` gives explicit branching; ``child_fn`` total branching.
    """

    point: int
    children: Optional[dict] = None
    child_fn: Optional[Callable[[int], "Tree"]] = None

    def child(self, answer: int) -> Optional["Tree"]:
        if self.child_fn is not None:
            return self.child_fn(answer)
        return self.children.get(answer)


@dataclass(frozen=True)
class Inconclusive:
    """A node whose probe ran out of fuel during exploration."""


@dataclass(frozen=True)
class Cut:
    """A query beyond the exploration depth."""

    point: int


Tree = Union[Leaf, Branch, Inconclusive, Cut]


def eval_tree(tree: Tree, oracle: PartialFn, fuel: int) -> tuple[Outcome, list]:
    """Follow the path ``oracle`` selects; returns the outcome and the path."""
    path: list = []

    def walk(budget):
        node = tree
        while True:
            budget.spend()
            if isinstance(node, Leaf):
                if node.label is None:
                    raise Stuck()
                return node.label
            if not isinstance(node, Branch):
                raise OutOfFuel()
            ans = oracle.value(node.point, budget)
            path.append((node.point, ans))
            node = node.child(ans)
            if node is None:
                raise Stuck()

    return run(walk, fuel), path


class TreeFn(PartialFn):
    """The element coding a sequential tree: ``phi_alpha = Phi_T``."""

    kind = "tree"
    totality_claim = True

    def __init__(self, tree: Tree, scheme: CodingScheme = CANTOR):
        super().__init__()
        self.tree = tree
        self.scheme = scheme

    def _compute(self, x, budget):
        budget.spend()
        sc = self.scheme
        answers = sc.decode(x)
        if answers is None:
            return sc.qq
        node = self.tree
        for a in answers:
            if isinstance(node, Leaf):
                return sc.qq  # past a leaf: off protocol
            if not isinstance(node, Branch):
                return sc.qq
            node = node.child(a)
            if node is None:
                return sc.neither  # left explicit branching
        if isinstance(node, Branch):
            return sc.tag_query(node.point)
        if isinstance(node, Leaf) and node.label is not None:
            return sc.tag_result(node.label)
        return sc.neither

    def __repr__(self):
        return "TreeFn(...)"


def tree_to_fn(tree: Tree, scheme: CodingScheme = CANTOR) -> PartialFn:
    return TreeFn(tree, scheme)


def fn_to_tree(alpha: PartialFn, depth_bound: int, width_sample, fuel: int,
               scheme: CodingScheme = CANTOR) -> Tree:
    """Explore the tree of interrogations of ``alpha`` over ``width_sample``.

    Every probe gets its own ``fuel``.  A query for a point already answered
    on the current path is answered from the path without branching.
    """
    width_sample = tuple(width_sample)

    def explore(answers: list, asked: dict, depth: int) -> Tree:
        while True:
            out = eval_fn(alpha, scheme.encode(answers), fuel)
            if out.out_of_fuel:
                return Inconclusive()
            if out.is_undefined:
                return Leaf(None)
            tagged = scheme.untag(out.value)
            if isinstance(tagged, Result):
                return Leaf(tagged.value)
            if tagged is Neither:
                return Leaf(None)
            b = tagged.point
            if b in asked:
                if len(answers) > 4 * depth_bound + 64:
                    return Inconclusive()  # a repeat loop: divergent on this path
                answers = answers + [asked[b]]
                continue
            if depth >= depth_bound:
                return Cut(b)
            kids = {a: explore(answers + [a], {**asked, b: a}, depth + 1) for a in width_sample}
            return Branch(b, kids)

    return explore([], {}, 0)


def tree_nodes(tree: Tree, alphabet, depth: int) -> dict:
    """Node table of ``tree`` restricted to ``alphabet`` and ``depth``.

    Maps answer paths to ``("branch", point)``, ``("leaf", label)``,
    ``("undefined",)`` (unlabeled leaf or missing explicit child),
    ``("cut", point)`` or ``("inconclusive",)``.  Queries at the depth
    bound are reported as cuts so that explored and original trees compare.
    """
    table: dict = {}

    def walk(node, path):
        if node is None or (isinstance(node, Leaf) and node.label is None):
            table[path] = ("undefined",)
        elif isinstance(node, Leaf):
            table[path] = ("leaf", node.label)
        elif isinstance(node, Inconclusive):
            table[path] = ("inconclusive",)
        elif isinstance(node, Cut) or len(path) >= depth:
            table[path] = ("cut", node.point)
        else:
            table[path] = ("branch", node.point)
            for a in alphabet:
                walk(node.child(a), path + (a,))

    walk(tree, ())
    return table


def random_tree(rng, depth: int, alphabet=(0, 1, 2), points=range(8), labels=range(10),
                full: bool = True, _used=frozenset()) -> Tree:
    """A random explicit tree with fresh branch points along every path."""
    fresh = [p for p in points if p not in _used]
    if depth == 0 or not fresh or rng.random() < 0.25:
        if rng.random() < 0.1:
            return Leaf(None)
        return Leaf(rng.choice(labels))
    p = rng.choice(fresh)
    kids = {}
    for a in alphabet:
        if full or rng.random() < 0.8:
            kids[a] = random_tree(rng, depth - 1, alphabet, points, labels, full, _used | {p})
    return Branch(p, kids)


def random_oracle(rng, points=range(8), alphabet=(0, 1, 2), partial: bool = False) -> PartialFn:
    """A finite table over ``points`` with values in ``alphabet``; total
    variants answer ``alphabet[0]`` off the table."""
    from k2lab.partialfn import Table, Totalized
    t = Table({p: rng.choice(alphabet) for p in points if not partial or rng.random() < 0.8})
    return t if partial else Totalized(t, alphabet[0])


def check_tree_roundtrip(trees: int = 20, oracles: int = 20, seed: int = 0, depth: int = 3,
                         alphabet=(0, 1, 2), fuel: int = 10**5,
                         scheme: CodingScheme = CANTOR):
    """Both directions of the tree/function correspondence on random trees.

    tree -> fn: the interrogation by the coded tree agrees with walking the
    tree.  fn -> tree: exploring the coded tree gives back the same nodes,
    and the explored tree behaves like the function.
    """
    import random
    from k2lab.report import CheckReport
    rng = random.Random(seed)
    rep = CheckReport("trees:roundtrip")
    for _ in range(trees):
        tree = random_tree(rng, depth, alphabet)
        alpha = tree_to_fn(tree, scheme)
        back = fn_to_tree(alpha, depth, alphabet, fuel, scheme)
        rep.tested += 1
        if tree_nodes(tree, alphabet, depth) != tree_nodes(back, alphabet, depth):
            rep.fail("nodes", tree)
        for _ in range(oracles):
            beta = random_oracle(rng, alphabet=alphabet)
            walk, _path = eval_tree(tree, beta, fuel)
            dialogue, _trace = interrogate(alpha, beta, fuel, scheme)
            explored, _ = eval_tree(back, beta, fuel)
            rep.tested += 2
            if OUT_OF_FUEL in (walk, dialogue, explored):
                rep.inconclusive += 1
                continue
            if walk != dialogue:
                rep.fail("tree->fn", tree, beta, walk, dialogue)
            if explored != dialogue:
                rep.fail("fn->tree", tree, beta, explored, dialogue)
    return rep
