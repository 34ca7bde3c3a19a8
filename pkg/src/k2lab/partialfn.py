"""Fuel-bounded, memoized partial functions on the naturals.

Every element of every model in this package is a :class:`PartialFn`.
Evaluation is three-valued (:class:`Outcome`): a value, definite
undefinedness, or budget exhaustion.  A single :class:`Budget` is threaded
through all nested evaluations of one top-level call.

Memo entries record the fuel the cold evaluation consumed and a memo hit is
charged the same amount, so memoization never changes an outcome.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Callable, Iterable, Mapping, Optional

from k2lab.errors import CodingOverflow, OutOfFuel, ParseError, Stuck


@dataclass(frozen=True)
class Outcome:
    kind: str  # "value" | "undefined" | "out-of-fuel"
    value: object = None

    @property
    def is_value(self) -> bool:
        return self.kind == "value"

    @property
    def is_undefined(self) -> bool:
        return self.kind == "undefined"

    @property
    def out_of_fuel(self) -> bool:
        return self.kind == "out-of-fuel"

    def __repr__(self):
        if self.kind == "value":
            return f"Value({self.value!r})"
        return "Undefined" if self.kind == "undefined" else "OutOfFuel"


def Value(v) -> Outcome:
    return Outcome("value", v)


UNDEFINED = Outcome("undefined")
OUT_OF_FUEL = Outcome("out-of-fuel")


class Budget:
    """Shared step budget for one top-level evaluation."""

    __slots__ = ("remaining", "initial")

    def __init__(self, fuel: int):
        self.remaining = fuel
        self.initial = fuel

    def spend(self, n: int = 1) -> None:
        if n > self.remaining:
            self.remaining = 0
            raise OutOfFuel()
        self.remaining -= n

    @property
    def used(self) -> int:
        return self.initial - self.remaining


def run(thunk: Callable[[Budget], object], fuel: int) -> Outcome:
    """Run ``thunk`` under a fresh budget and classify the result."""
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    budget = Budget(fuel)
    try:
        return Value(thunk(budget))
    except Stuck:
        return UNDEFINED
    except (OutOfFuel, CodingOverflow):
        # an oversized code is a resource limit, like the step budget
        return OUT_OF_FUEL


_UNDEF = object()


class PartialFn:
    """A partial map N -> N evaluated under a budget.

    Subclasses implement ``_compute(x, budget)`` returning an ``int`` or
    raising :class:`Stuck`.
    """

    totality_claim = False
    kind = "abstract"

    def __init__(self):
        self._memo: dict[int, tuple[object, int]] = {}

    def value(self, x: int, budget: Budget) -> int:
        hit = self._memo.get(x)
        if hit is not None:
            v, cost = hit
            budget.spend(cost)
            if v is _UNDEF:
                raise Stuck()
            return v
        start = budget.remaining
        try:
            v = self._compute(x, budget)
        except Stuck:
            self._memo[x] = (_UNDEF, start - budget.remaining)
            raise
        self._memo[x] = (v, start - budget.remaining)
        return v

    def _compute(self, x: int, budget: Budget) -> int:
        raise NotImplementedError

    def clear_memo(self) -> None:
        self._memo.clear()

    def __call__(self, x: int, fuel: int = 10**5) -> Outcome:
        return eval_fn(self, x, fuel)


class Table(PartialFn):
    kind = "table"

    def __init__(self, mapping: Mapping[int, int] | None = None):
        super().__init__()
        self.mapping = dict(mapping or {})

    def _compute(self, x, budget):
        budget.spend()
        try:
            return self.mapping[x]
        except KeyError:
            raise Stuck() from None

    def __repr__(self):
        return f"Table({self.mapping!r})"


class Builtin(PartialFn):
    """A host-defined rule.  ``rule(x, budget)`` returns an int or raises Stuck."""

    kind = "builtin"

    def __init__(self, name: str, rule: Callable[[int, Budget], int], total: bool = False):
        super().__init__()
        self.name = name
        self.rule = rule
        self.totality_claim = total

    def _compute(self, x, budget):
        budget.spend()
        return self.rule(x, budget)

    def __repr__(self):
        return f"Builtin({self.name!r})"


def from_function(name: str, fn: Callable[[int], Optional[int]], total: bool = True) -> Builtin:
    """Wrap a plain host function; ``None`` means undefined."""

    def rule(x, budget):
        v = fn(x)
        if v is None:
            raise Stuck()
        return v

    return Builtin(name, rule, total)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def builtin(spec: str) -> Builtin:
    """Named builtins: ``succ``, ``id``, ``const:<n>``, ``primechar``."""
    if spec == "succ":
        return from_function("succ", lambda x: x + 1)
    if spec == "id":
        return from_function("id", lambda x: x)
    if spec == "primechar":
        return from_function("primechar", lambda x: int(is_prime(x)))
    if spec.startswith("const:"):
        try:
            n = int(spec[6:])
        except ValueError:
            raise ParseError(f"bad constant in builtin {spec!r}") from None
        if n < 0:
            raise ParseError("constants must be naturals")
        return from_function(spec, lambda x: n)
    raise ParseError(f"unknown builtin {spec!r}")


class Program(PartialFn):
    """A base-PCA element read on numerals: ``x -> y`` iff ``e #x = #y``."""

    kind = "program"

    def __init__(self, pca, element):
        super().__init__()
        self.pca = pca
        self.element = element

    def _compute(self, x, budget):
        budget.spend()
        out = self.pca.apply_terms(self.element, self.pca.numeral_term(x), budget)
        n = self.pca.numeral_of(out)
        if n is None:
            raise Stuck()
        return n

    def __repr__(self):
        return f"Program({self.pca.show(self.element)})"


class AppNode(PartialFn):
    """Lazy application ``left right`` in some model.

    ``engine`` supplies ``app_point(left, right, point, budget)``.
    """

    kind = "app"

    def __init__(self, engine, left: PartialFn, right: PartialFn):
        super().__init__()
        self.engine = engine
        self.left = left
        self.right = right

    def _compute(self, x, budget):
        return self.engine.app_point(self.left, self.right, x, budget)

    def __repr__(self):
        return f"App[{self.engine.tag}]({self.left!r}, {self.right!r})"


class Totalized(PartialFn):
    kind = "totalized"
    totality_claim = True

    def __init__(self, inner: PartialFn, default: int):
        super().__init__()
        self.inner = inner
        self.default = default

    def _compute(self, x, budget):
        try:
            return self.inner.value(x, budget)
        except Stuck:
            return self.default

    def __repr__(self):
        return f"Totalized({self.inner!r}, default={self.default})"


def eval_fn(f: PartialFn, x: int, fuel: int) -> Outcome:
    return run(lambda b: f.value(x, b), fuel)


def extend_total(f: PartialFn, default: int) -> PartialFn:
    return Totalized(f, default)


@dataclass
class Agreement:
    differ: list = field(default_factory=list)  # (point, outcome_f, outcome_g)
    inconclusive: list = field(default_factory=list)
    checked: int = 0

    @property
    def equal(self) -> bool:
        return not self.differ and not self.inconclusive


def agree_on(f: PartialFn, g: PartialFn, points: Iterable[int], fuel: int) -> Agreement:
    rep = Agreement()
    for x in points:
        rep.checked += 1
        of, og = eval_fn(f, x, fuel), eval_fn(g, x, fuel)
        if of.out_of_fuel or og.out_of_fuel:
            rep.inconclusive.append(x)
        elif of != og:
            rep.differ.append((x, of, og))
    return rep


def parse_oracle(text: str, pca=None) -> PartialFn:
    """Parse the line-oriented oracle file format.

    ``x y`` table entries, ``@builtin NAME``, ``@prog TERM``; lines starting
    with ``#`` are comments.  A file is either a table or one directive.
    """
    table: dict[int, int] = {}
    directive: Optional[PartialFn] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@"):
            if directive is not None or table:
                raise ParseError(f"line {lineno}: a directive must be the only entry")
            word, _, rest = line.partition(" ")
            rest = rest.strip()
            if word == "@builtin":
                directive = builtin(rest)
            elif word == "@prog":
                if pca is None:
                    from k2lab.basepca import CODE_PCA as pca
                directive = Program(pca, pca.compile(rest))
            else:
                raise ParseError(f"line {lineno}: unknown directive {word!r}")
            continue
        if directive is not None:
            raise ParseError(f"line {lineno}: table entry after a directive")
        parts = line.split(" ")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"line {lineno}: expected 'x y' with decimal naturals")
        x, y = int(parts[0]), int(parts[1])
        if x in table and table[x] != y:
            raise ParseError(f"line {lineno}: conflicting entry for {x}")
        table[x] = y
    return directive if directive is not None else Table(table)


def load_oracle(path, pca=None) -> PartialFn:
    with open(path, encoding="utf-8") as fh:
        return parse_oracle(fh.read(), pca)


def dump_table(mapping: Mapping[int, int]) -> str:
    return "".join(f"{x} {y}\n" for x, y in sorted(mapping.items()))
