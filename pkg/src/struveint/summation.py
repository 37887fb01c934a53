"""Compensated (Kahan) accumulation for deterministic series summation."""

from __future__ import annotations


class KahanSum:
    """Kahan compensated accumulator over complex values.

    Keeps a running sum plus a carry of the low-order bits lost at each
    addition, so long ascending-k series sum reproducibly to within an
    ulp or two of the exact rounded result.
    """

    __slots__ = ("total", "carry")

    def __init__(self, start: complex = 0j):
        self.total = complex(start)
        self.carry = 0j

    def add(self, value: complex) -> None:
        value = value + self.carry
        previous = self.total
        self.total = previous + value
        # The difference between where we landed and where we should be.
        self.carry = value - (self.total - previous)

    @property
    def value(self) -> complex:
        return self.total + self.carry
