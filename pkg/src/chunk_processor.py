# src/chunk_processor.py
import logging
import threading
from concurrent.futures import ThreadPoolExecutor

logger = logging.getLogger(__name__)


class ChunkProcessor:
    """
    Run a work function over contiguous index ranges, optionally on a thread
    pool. Results always come back in range order, so callers see the same
    output whatever the number of threads.
    """
    def __init__(self, threads=1, chunk_size=4096, progress_handler=None):
        """
        :param threads: Number of worker threads (1 runs inline)
        :param chunk_size: Number of indices handed to the worker at once
        :param progress_handler: Optional handler receiving chunk progress
        """
        if threads < 1:
            raise ValueError("Thread count must be at least 1")
        if chunk_size < 1:
            raise ValueError("Chunk size must be at least 1")
        self.threads = threads
        self.chunk_size = chunk_size
        self.progress_handler = progress_handler
        self.is_running = False
        self.exception = None
        self._lock = threading.Lock()
        self._done = 0

    def ranges(self, total):
        return [(start, min(start + self.chunk_size, total)) for start in range(0, total, self.chunk_size)]

    def map_ranges(self, total, worker):
        """
        Call worker(start, stop) for every chunk of range(total).

        :param total: Number of work items
        :param worker: Function of (start, stop) returning the chunk result
        :return: List of chunk results in ascending start order
        """
        chunks = self.ranges(total)
        self.is_running = True
        self.exception = None
        self._done = 0
        logger.debug("Processing %d items in %d chunks on %d thread(s)", total, len(chunks), self.threads)

        results = [None] * len(chunks)
        if self.threads == 1 or len(chunks) <= 1:
            for position, (start, stop) in enumerate(chunks):
                self._run_chunk(worker, results, position, start, stop, len(chunks))
                if self.exception:
                    break
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                for position, (start, stop) in enumerate(chunks):
                    pool.submit(self._run_chunk, worker, results, position, start, stop, len(chunks))

        self.is_running = False

        # If a worker failed, re-raise its exception here
        if self.exception:
            raise self.exception
        return results

    def _run_chunk(self, worker, results, position, start, stop, count):
        if self.exception:
            return
        try:
            results[position] = worker(start, stop)
        except Exception as e:
            logger.debug("Chunk [%d, %d) failed: %s", start, stop, e)
            with self._lock:
                if self.exception is None:
                    self.exception = e
            return
        with self._lock:
            self._done += 1
            done = self._done
        if self.progress_handler:
            self.progress_handler.update_progress(done, count)
