from __future__ import annotations

from collections import Counter


class OpCounter(Counter):
    """Named elementary-operation counts, used for the scaling checks."""

    def add(self, name: str, k: int = 1) -> None:
        self[name] += k

    @property
    def total(self) -> int:
        return sum(self.values())
