# src/worklist.py
import heapq
from typing import NamedTuple

import numpy as np

from src.box import Box

# Iteration index of the root region; it reconstructs to the whole domain
ROOT_ITERATION = -1


class RegionEntry(NamedTuple):
    """
    Compact record of a live region: three integers and two floats.
    Field order makes tuple comparison follow (lb, itr, sidx).
    """
    lb: float
    itr: int
    sidx: int
    cyc: int
    maxwidth: float


class IterationRecord(NamedTuple):
    selected: Box
    cyc_used: int


class WorkList:
    """Min-heap of RegionEntry keyed on (lb, itr, sidx)."""

    def __init__(self, entries=()):
        self._heap = list(entries)
        heapq.heapify(self._heap)

    def __len__(self):
        return len(self._heap)

    def __bool__(self):
        return bool(self._heap)

    def __iter__(self):
        return iter(self.sorted_entries())

    def push(self, entry: RegionEntry):
        heapq.heappush(self._heap, entry)

    def push_many(self, entries):
        entries = list(entries)
        if len(entries) > len(self._heap):
            self._heap.extend(entries)
            heapq.heapify(self._heap)
        else:
            for entry in entries:
                heapq.heappush(self._heap, entry)

    def pop_min(self) -> RegionEntry:
        return heapq.heappop(self._heap)

    def peek_min(self) -> RegionEntry:
        return self._heap[0]

    def sweep(self, bound: float):
        """Remove every entry with lb > bound; returns the removed entries."""
        kept = [entry for entry in self._heap if not entry.lb > bound]
        if len(kept) == len(self._heap):
            return []
        removed = [entry for entry in self._heap if entry.lb > bound]
        heapq.heapify(kept)
        self._heap = kept
        return removed

    def max_width(self) -> float:
        if not self._heap:
            return 0.0
        return float(np.max([entry.maxwidth for entry in self._heap]))

    def min_lb(self) -> float:
        return self._heap[0].lb if self._heap else np.inf

    def sorted_entries(self):
        return sorted(self._heap)
