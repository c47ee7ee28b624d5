# src/soundness.py
import logging

import numpy as np

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_VIOLATED = "violated"
STATUS_OFF = "off"


class SoundnessMonitor:
    """
    Debug instrumentation: tracks whether any pruning, sweeping or selection
    step lost the region holding the known minimizer of a benchmark.

    The minimizer is carried as a tight box around x*, so a region
    "contains" it when the two boxes overlap, and a pruned child "holds" it
    only when the box lies strictly inside the child (otherwise a neighbour
    sharing the face keeps it).
    """
    def __init__(self, target=None, enabled=False):
        self.enabled = enabled and target is not None
        self.target = target
        self.violations = []

    @property
    def status(self) -> str:
        if not self.enabled:
            return STATUS_OFF
        return STATUS_VIOLATED if self.violations else STATUS_OK

    def _flag(self, message):
        self.violations.append(message)
        logger.error("Soundness violation: %s", message)

    def record_pruned(self, iteration, indices):
        """Children flagged by the kernel as pruned while holding x*."""
        if self.enabled and indices:
            self._flag(f"iteration {iteration}: pruned subregions {list(indices)} hold the minimizer")

    def _holds(self, box):
        return bool(np.all((box.lo < self.target.lo) & (self.target.hi < box.hi)))

    def check_swept(self, iteration, boxes):
        if not self.enabled:
            return
        for box in boxes:
            if self._holds(box):
                self._flag(f"iteration {iteration}: sweep removed a region holding the minimizer")
                return

    def check_completeness(self, iteration, boxes):
        """x* must stay inside some live region."""
        if not self.enabled:
            return True
        if any(box.intersects(self.target) for box in boxes):
            return True
        self._flag(f"iteration {iteration}: no live region contains the minimizer")
        return False
