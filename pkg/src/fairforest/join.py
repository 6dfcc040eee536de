"""Min-plus merging of DP tables.

A :class:`CostTable` maps indices to costs; absent indices are infinite.
:func:`join` picks exactly one entry from every input table and keeps, for
each combined index, the cheapest total.  Costs only need ``+`` and ``<``, so
plain integers and :class:`Cut` values both work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .errors import LengthMismatch

CombineFn = Callable[[Hashable, Hashable], Iterable[Hashable]]


class Cut:
    """A set of cut edges, stored as a bitmask over edge ids.

    Ordered by size first, then lexicographically by sorted edge ids.  For
    equal sizes the smaller set is the one holding the smallest edge of the
    symmetric difference, which is what the bit trick below tests.  The order
    is preserved by disjoint unions, so DP minima stay globally minimal.
    """

    __slots__ = ("count", "mask")

    def __init__(self, count: int = 0, mask: int = 0):
        self.count = count
        self.mask = mask

    @classmethod
    def of(cls, edge_id: int) -> "Cut":
        return cls(1, 1 << edge_id)

    def __add__(self, other: "Cut") -> "Cut":
        return Cut(self.count + other.count, self.mask | other.mask)

    def __lt__(self, other: "Cut") -> bool:
        if self.count != other.count:
            return self.count < other.count
        diff = self.mask ^ other.mask
        return bool(self.mask & diff & -diff)

    def __eq__(self, other) -> bool:
        return isinstance(other, Cut) and self.mask == other.mask and self.count == other.count

    def __hash__(self):
        return hash((self.count, self.mask))

    def __repr__(self):
        return f"Cut({self.count}, edges={self.edges()})"

    def edges(self) -> list[int]:
        out, mask, i = [], self.mask, 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return out


@dataclass
class CostTable:
    """Sparse cost table.

    ``length`` bounds the 0-based index domain (``None`` for keyed tables
    whose indices are arbitrary hashables).  ``offset`` records how a
    semantic index maps to a stored one: stored = semantic + offset.
    ``back[x]`` is the tuple of input indices that produced ``values[x]``.
    """

    length: int | None
    values: dict = field(default_factory=dict)
    back: dict = field(default_factory=dict)
    offset: int = 0

    def __getitem__(self, x):
        return self.values.get(x, math.inf)

    def at(self, semantic):
        return self[semantic + self.offset]

    def set(self, semantic, value):
        self.values[semantic + self.offset] = value

    def finite(self) -> dict:
        """Finite entries keyed by semantic index."""
        return {x - self.offset: v for x, v in self.values.items()} if self.offset else dict(self.values)

    def relax(self, x, value, back=None) -> bool:
        """Lower entry ``x`` to ``value`` if that is an improvement."""
        cur = self.values.get(x)
        if cur is None or value < cur:
            self.values[x] = value
            if back is not None:
                self.back[x] = back
            return True
        return False


def join(tables: Sequence[CostTable], f: CombineFn, backtrack: bool = True) -> CostTable:
    """Combine one entry of every table under ``f``, keeping minima.

    ``f(x1, x2)`` lists the indices that an accumulated index ``x1`` and a
    next-table index ``x2`` may combine into.  Ties keep the first candidate
    met while scanning tables left to right and indices in ascending order.
    """
    if not tables:
        raise ValueError("join needs at least one table")
    first = tables[0]
    for t in tables[1:]:
        if t.length != first.length or t.offset != first.offset:
            raise LengthMismatch(
                f"tables disagree on domain: ({first.length}, {first.offset}) vs ({t.length}, {t.offset})"
            )
    length = first.length
    vals = dict(first.values)
    back = {x: (x,) for x in vals} if backtrack else {}
    for t in tables[1:]:
        right = sorted(t.values.items())
        nvals: dict = {}
        nback: dict = {}
        for x1 in sorted(vals):
            v1 = vals[x1]
            for x2, v2 in right:
                s = v1 + v2
                for x in f(x1, x2):
                    if length is not None and not 0 <= x < length:
                        raise IndexError(f"combined index {x} outside [0, {length})")
                    cur = nvals.get(x)
                    if cur is None or s < cur:
                        nvals[x] = s
                        if backtrack:
                            nback[x] = back[x1] + (x2,)
        vals, back = nvals, nback
    return CostTable(length, vals, back, first.offset)


def index_sum(offset: int = 0, length: int | None = None) -> CombineFn:
    """Combine function adding semantic indices of offset-mapped tables."""

    def f(x1, x2):
        x = x1 + x2 - offset
        if length is not None and not 0 <= x < length:
            return ()
        return (x,)

    return f


def min_merge(into: dict, other: dict) -> None:
    """Entry-wise minimum of two value dicts, in place."""
    for x, v in other.items():
        cur = into.get(x)
        if cur is None or v < cur:
            into[x] = v
