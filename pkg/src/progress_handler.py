# src/progress_handler.py
import logging
import time

logger = logging.getLogger(__name__)


class ProgressHandler:
    """
    Reports solver progress and the final status through logging.
    """
    def __init__(self, title="Solving", max_value=100, log_every=1):
        """
        :param title: Label prefixed to every message
        :param max_value: Default total for update_progress
        :param log_every: Log one iteration line out of this many
        """
        self.title = title
        self.max_value = max_value
        self.log_every = max(1, log_every)
        self.status_text = ""
        self.started = time.perf_counter()
        self.success = None
        self.error_msg = None

    def update_progress(self, current, total=None):
        total = total or self.max_value
        percent = 100.0 * current / total if total else 100.0
        logger.debug("%s: %d/%d chunks (%.0f%%)", self.title, current, total, percent)

    def update_additional_status(self, status_text):
        self.status_text = status_text
        logger.info("%s: %s", self.title, status_text)

    def report_iteration(self, iteration, regions, gub, glb, survivors, pruned_by_gub, pruned_by_derivative, swept):
        if iteration % self.log_every:
            return
        logger.info(
            "%s: iteration %d, |L| = %d, GUB = %r, GLB = %r, kept %d, pruned %d by GUB and %d by derivative, swept %d",
            self.title, iteration, regions, gub, glb, survivors, pruned_by_gub, pruned_by_derivative, swept,
        )

    def complete(self, success=True, error_msg=None):
        self.success = success
        self.error_msg = error_msg
        elapsed = time.perf_counter() - self.started
        if success:
            logger.info("%s: finished in %.2f s", self.title, elapsed)
        else:
            logger.warning("%s: stopped after %.2f s: %s", self.title, elapsed, error_msg or "unknown reason")
