"""Injective coding of finite sequences of naturals, with query/result tags.

Two schemes are provided: :class:`CantorScheme` (cons cells over the Cantor
pairing, surjective onto the naturals) and, in :mod:`k2lab.basepca`, a scheme
that reuses the tuple coder of the base combinatory algebra.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Optional, Sequence, Union

from k2lab.errors import CodingOverflow

# Naturals wider than this many bits are rejected rather than computed.
MAX_BITS = 1 << 20


def check_width(n: int) -> int:
    if n.bit_length() > MAX_BITS:
        raise CodingOverflow(f"natural of {n.bit_length()} bits exceeds the {MAX_BITS}-bit cap")
    return n


def pair(x: int, y: int) -> int:
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


@dataclass(frozen=True)
class Query:
    point: int


@dataclass(frozen=True)
class Result:
    value: int


class _Neither:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Neither"


Neither = _Neither()
Tagged = Union[Query, Result, _Neither]


class CodingScheme:
    """Injective map from finite sequences of naturals to naturals.

    Subclasses provide ``encode``/``decode`` and the two marker elements
    ``q`` and ``r``.  Tagging defaults to the length-2 sequences ``<q,b>``
    and ``<r,c>``.
    """

    q: int
    r: int
    name = "abstract"

    def encode(self, items: Sequence[int]) -> int:
        raise NotImplementedError

    def decode(self, code: int) -> Optional[list[int]]:
        raise NotImplementedError

    def extend(self, code: int, item: int) -> int:
        """Code of the sequence coded by ``code`` with ``item`` appended."""
        return self.encode(self.decode(code) + [item])

    def tag_query(self, b: int) -> int:
        return self.encode((self.q, b))

    def tag_result(self, c: int) -> int:
        return self.encode((self.r, c))

    def untag(self, v: int) -> Tagged:
        seq = self.decode(v)
        if seq is None or len(seq) != 2:
            return Neither
        head, arg = seq
        if head == self.q:
            return Query(arg)
        if head == self.r:
            return Result(arg)
        return Neither

    @property
    def neither(self) -> int:
        """A canonical value that untags to ``Neither``."""
        return self.encode(())

    @property
    def qq(self) -> int:
        return self.tag_query(self.q)

    def e_n(self, n: int) -> int:
        e = self.encode(())
        for _ in range(n):
            e = self.encode((e,))
        return e

    def validate(self) -> None:
        if self.q == self.r:
            raise ValueError("query and result markers must be distinct")


@lru_cache(maxsize=1 << 16)
def _cantor_decode(code: int) -> tuple[int, ...]:
    out = []
    while code:
        head, code = unpair(code - 1)
        out.append(head)
    return tuple(out)


class CantorScheme(CodingScheme):
    """``<> = 0`` and ``<a, *t> = 1 + pair(a, <t>)``; q = 0, r = 1."""

    name = "cantor"

    def __init__(self, q: int = 0, r: int = 1):
        self.q, self.r = q, r
        self.validate()

    def encode(self, items: Sequence[int]) -> int:
        code = 0
        for a in reversed(items):
            if a < 0:
                raise ValueError("sequence entries must be naturals")
            code = check_width(1 + pair(a, code))
        return code

    def decode(self, code: int) -> Optional[list[int]]:
        if code < 0:
            return None
        return list(_cantor_decode(code))

    def __repr__(self):
        return f"CantorScheme(q={self.q}, r={self.r})"


CANTOR = CantorScheme()


def encode_seq(scheme: CodingScheme, items: Sequence[int]) -> int:
    return scheme.encode(items)


def decode_seq(scheme: CodingScheme, code: int) -> Optional[list[int]]:
    return scheme.decode(code)


def tag_query(scheme: CodingScheme, b: int) -> int:
    return scheme.tag_query(b)


def tag_result(scheme: CodingScheme, c: int) -> int:
    return scheme.tag_result(c)


def untag(scheme: CodingScheme, v: int) -> Tagged:
    return scheme.untag(v)


def e_n(scheme: CodingScheme, n: int) -> int:
    """E_0 = <>, E_{n+1} = <E_n>."""
    return scheme.e_n(n)


def _delta_bits(m: int) -> str:
    """Elias delta code of ``m >= 1``."""
    b = bin(m)[2:]
    lb = bin(len(b))[2:]
    return "0" * (len(lb) - 1) + lb + b[1:]


@lru_cache(maxsize=1 << 16)
def _delta_decode(code: int) -> Optional[tuple[int, ...]]:
    bits = bin(code + 1)[3:]
    n, pos, out = len(bits), 0, []
    while pos < n:
        z = 0
        while pos < n and bits[pos] == "0":
            z += 1
            pos += 1
        if pos + z + 1 > n:
            return None
        length = int(bits[pos:pos + z + 1], 2)
        pos += z + 1
        if pos + length - 1 > n:
            return None
        out.append(int("1" + bits[pos:pos + length - 1], 2) - 1)
        pos += length - 1
    return tuple(out)


class DeltaScheme(CodingScheme):
    """Entries as Elias delta codes of ``a+1``, concatenated behind a 1 bit.

    ``<a0 ... an-1> = int('1' delta(a0+1) ... delta(an-1+1), 2) - 1``.  Code
    width is linear in the total width of the entries, so long sequences and
    deep nestings stay small; ``<> = 0`` and ``q, r = 0, 1``.  Not surjective.
    """

    name = "delta"

    def __init__(self, q: int = 0, r: int = 1):
        self.q, self.r = q, r
        self.validate()

    def encode(self, items: Sequence[int]) -> int:
        parts = ["1"]
        for a in items:
            if a < 0:
                raise ValueError("sequence entries must be naturals")
            parts.append(_delta_bits(a + 1))
        bits = "".join(parts)
        if len(bits) > MAX_BITS:
            raise CodingOverflow(f"sequence code of {len(bits)} bits exceeds the {MAX_BITS}-bit cap")
        return int(bits, 2) - 1

    def extend(self, code: int, item: int) -> int:
        tail = _delta_bits(item + 1)
        out = ((code + 1) << len(tail)) | int(tail, 2)
        if out.bit_length() > MAX_BITS + 1:
            raise CodingOverflow(f"sequence code exceeds the {MAX_BITS}-bit cap")
        return out - 1

    def decode(self, code: int) -> Optional[list[int]]:
        if code < 0:
            return None
        out = _delta_decode(code)
        return None if out is None else list(out)

    def __repr__(self):
        return f"DeltaScheme(q={self.q}, r={self.r})"


DELTA = DeltaScheme()


_SMALL_BITS = 64


def _cantor_small(items: Sequence[int]) -> Optional[int]:
    """Cantor code of ``items`` if it fits in 64 bits, else ``None``."""
    code = 0
    for a in reversed(items):
        if a.bit_length() > _SMALL_BITS:
            return None  # the code is at least as large as every entry
        code = 1 + pair(a, code)
        if code.bit_length() > _SMALL_BITS:
            return None
    return code


class CompactScheme(CodingScheme):
    """Cantor codes for sequences whose Cantor code fits in 64 bits, Elias
    delta codes for the rest.

    ``2 * cantor(s)`` when small, ``2 * delta(s) + 1`` otherwise.  Short
    sequences of small entries get the dense Cantor codes, while long
    sequences cost bits linear in their length.  ``<> = 0``, q, r = 0, 1.
    """

    name = "compact"

    def __init__(self, q: int = 0, r: int = 1):
        self.q, self.r = q, r
        self.validate()

    def encode(self, items: Sequence[int]) -> int:
        if any(a < 0 for a in items):
            raise ValueError("sequence entries must be naturals")
        small = _cantor_small(items)
        if small is not None:
            return 2 * small
        return 2 * DELTA.encode(items) + 1

    def decode(self, code: int) -> Optional[list[int]]:
        if code < 0:
            return None
        if code % 2 == 0:
            if (code // 2).bit_length() > _SMALL_BITS:
                return None
            return list(_cantor_decode(code // 2))
        items = DELTA.decode(code // 2)
        if items is None or _cantor_small(items) is not None:
            return None
        return items

    def extend(self, code: int, item: int) -> int:
        if code % 2 == 1:
            # a sequence with a large Cantor code stays large when extended
            return 2 * DELTA.extend(code // 2, item) + 1
        return super().extend(code, item)

    def __repr__(self):
        return f"CompactScheme(q={self.q}, r={self.r})"


COMPACT = CompactScheme()


def check_coding(scheme: CodingScheme = CANTOR, max_len: int = 4, max_entry: int = 6,
                 window: int = 20):
    """Exhaustive injectivity and round trips on short sequences; distinct E_n."""
    from itertools import product

    from k2lab.report import CheckReport
    rep = CheckReport(f"coding:{scheme.name}")
    seen: dict = {}
    for n in range(max_len + 1):
        for items in product(range(max_entry + 1), repeat=n):
            rep.tested += 1
            code = scheme.encode(items)
            if code in seen:
                rep.fail("collision", items, seen[code])
            seen[code] = items
            if scheme.decode(code) != list(items):
                rep.fail("round-trip", items, code)
    es = [scheme.e_n(n) for n in range(window + 1)]
    rep.tested += 1
    if len(set(es)) != len(es):
        rep.fail("E_n not distinct")
    return rep
