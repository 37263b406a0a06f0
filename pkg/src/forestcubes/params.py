"""Types and sheet parameters.

A type is a subset of {1..n} of size at least two.  The collection of all
types carries a fixed ordering (by size, then lexicographically on the
sorted elements); a parameter is a vector over Z/2 indexed by that
ordering, stored as an int bitmask with bit i = coordinate of the i-th
type.  Parameters name the sheets (and so the vertices) of the finite
cover; crossing an edge of type l toggles the coordinate of l.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

__all__ = ["TypeIndex", "type_index", "param_add", "param_hex", "parse_param"]


class TypeIndex:
    """Fixed ordering of all types over {1..n} and bitmask arithmetic."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError(f"n must be >= 2, got {n}")
        self.n = n
        self.types: tuple[frozenset[int], ...] = tuple(
            frozenset(c)
            for size in range(2, n + 1)
            for c in itertools.combinations(range(1, n + 1), size)
        )
        self.index: dict[frozenset[int], int] = {
            l: i for i, l in enumerate(self.types)
        }
        self.bits = len(self.types)
        assert self.bits == 2**n - n - 1

    def mask(self, l: frozenset[int] | set[int]) -> int:
        """The characteristic vector with a single 1 in the coordinate of l."""
        key = frozenset(l)
        if key not in self.index:
            raise ValueError(f"{set(l)} is not a type over 1..{self.n}")
        return 1 << self.index[key]

    def add(self, param: int, l) -> int:
        return param ^ self.mask(l)

    def type_label(self, type_id: int) -> str:
        return "{" + ",".join(str(x) for x in sorted(self.types[type_id])) + "}"

    @property
    def param_count(self) -> int:
        return 1 << self.bits

    def labels(self) -> list[str]:
        return [self.type_label(i) for i in range(self.bits)]


@lru_cache(maxsize=None)
def type_index(n: int) -> TypeIndex:
    return TypeIndex(n)


def param_add(n: int, param: int, l) -> int:
    """Toggle the coordinate of type l."""
    return type_index(n).add(param, l)


def param_hex(param: int) -> str:
    """Lowercase hex, least-significant bit = first type in the ordering."""
    return format(param, "x")


def parse_param(text: str) -> int:
    return int(text, 16)
