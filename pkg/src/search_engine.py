# src/search_engine.py
"""
Complete search loop: best-first selection, diagonal sampling for the global
upper bound, sweeping, parallel partition with pruning, and insertion of the
surviving subregions.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from src.box import Box
from src.catalog import eval_interval, eval_points_upper, get_objective
from src.chunk_processor import ChunkProcessor
from src.partition_kernel import (
    child_box,
    evaluate_partition,
    next_cycling_index,
    sample_partition,
)
from src.solver_config import SAMPLING_PER_SUBREGION, SolverConfig
from src.soundness import SoundnessMonitor
from src.worklist import ROOT_ITERATION, IterationRecord, RegionEntry, WorkList

logger = logging.getLogger(__name__)

STOP_TOLERANCE = "tolerance"
STOP_MAX_ITERATIONS = "max_iterations"
STOP_TIME_LIMIT = "time_limit"
STOP_EXHAUSTED = "exhausted"

EXIT_SUCCESS = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2


class SearchError(RuntimeError):
    pass


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    selected_itr: int
    selected_sidx: int
    selected_lb: float
    gub: float
    survivors: int
    pruned_by_gub: int
    pruned_by_derivative: int
    swept: int


@dataclass
class Result:
    config: SolverConfig
    regions: List[tuple]
    glb: float
    gub: float
    iterations: int
    stop_reason: str
    witness: Optional[np.ndarray]
    soundness: str
    wall_time_s: float
    trace: List[TraceRecord] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_SUCCESS if self.stop_reason == STOP_TOLERANCE else EXIT_BUDGET

    @property
    def region_boxes(self):
        return [box for box, _ in self.regions]


class SolverState:
    def __init__(self, objective, config: SolverConfig, processor=None, monitor=None):
        self.objective = objective
        self.config = config
        self.scheme = config.scheme
        self.domain = objective.domain
        self.processor = processor or ChunkProcessor(config.threads, config.chunk_size)
        self.monitor = monitor or SoundnessMonitor()
        self.worklist = WorkList()
        self.history = []
        self.gub = np.inf
        self.witness = None
        self.iteration = 0
        self.stop_reason = None
        self.started = time.perf_counter()
        self.trace = []

    @property
    def glb(self) -> float:
        return self.worklist.min_lb()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.started


def initialize(config: SolverConfig, progress=None) -> SolverState:
    """
    Build the solver state: one root entry covering the whole domain.

    :param config: SolverConfig
    :param progress: Optional ProgressHandler for kernel chunk progress
    :return: SolverState
    """
    config.validate()
    objective = get_objective(config.function, config.n, config.rounding)
    monitor = SoundnessMonitor(objective.known_minimizer_box, config.debug_soundness)
    processor = ChunkProcessor(config.threads, config.chunk_size, progress)
    state = SolverState(objective, config, processor, monitor)

    root_lb = float(eval_interval(objective, state.domain).lo)
    state.worklist.push(RegionEntry(root_lb, ROOT_ITERATION, 0, 1, float(state.domain.max_width())))
    logger.debug("Initialized %s with n = %d, root lower bound %r", objective.name, objective.n, root_lb)
    return state


def reconstruct_box(entry: RegionEntry, history, domain: Box, scheme) -> Box:
    """Rebuild the region of an entry from the box it was cut out of."""
    if entry.itr == ROOT_ITERATION:
        return domain
    if not 0 <= entry.itr < len(history):
        raise SearchError(f"Corrupted region entry: iteration {entry.itr} not in history of {len(history)}")
    record = history[entry.itr]
    return child_box(record.selected, record.cyc_used, entry.sidx, scheme)


def select_region(state: SolverState):
    if not state.worklist:
        raise SearchError("Cannot select a region from an empty list")
    entry = state.worklist.pop_min()
    return entry, reconstruct_box(entry, state.history, state.domain, state.scheme)


def sample_diagonal(objective, box: Box, m: int):
    """
    Evaluate m points equally spaced along the box diagonal.

    :return: (smallest rigorous upper bound, point attaining it)
    """
    points = np.clip(box.diagonal_points(m), objective.lower, objective.upper)
    values = eval_points_upper(objective, points)
    best = int(np.argmin(values))
    return float(values[best]), points[best]


def sweep_list(state: SolverState, gub: float) -> int:
    removed = state.worklist.sweep(gub)
    if removed and state.monitor.enabled:
        boxes = [reconstruct_box(entry, state.history, state.domain, state.scheme) for entry in removed]
        state.monitor.check_swept(state.iteration, boxes)
    return len(removed)


def _live_boxes(state):
    return [reconstruct_box(entry, state.history, state.domain, state.scheme) for entry in state.worklist]


def iterate(state: SolverState, progress=None) -> SolverState:
    config = state.config
    objective = state.objective
    entry, box = select_region(state)
    state.history.append(IterationRecord(box, entry.cyc))

    if config.sampling == SAMPLING_PER_SUBREGION:
        value, point = sample_partition(objective, box, entry.cyc, state.scheme, config.samples, state.processor)
    else:
        value, point = sample_diagonal(objective, box, config.samples)
    swept = 0
    if value < state.gub:
        state.gub = value
        state.witness = point
        swept = sweep_list(state, value)

    outcome = evaluate_partition(
        objective, box, entry.cyc, state.gub, state.scheme,
        derivative_test=config.derivative_test,
        full_gradient=config.full_gradient,
        processor=state.processor,
        watch=objective.known_minimizer_box if state.monitor.enabled else None,
    )
    state.monitor.record_pruned(state.iteration, outcome.violations)

    successor = next_cycling_index(entry.cyc, state.scheme.p, objective.n)
    state.worklist.push_many(
        RegionEntry(float(lb), state.iteration, int(r), successor, float(w))
        for r, lb, w in zip(outcome.indices, outcome.lower_bounds, outcome.max_widths)
    )
    state.trace.append(TraceRecord(
        state.iteration, entry.itr, entry.sidx, entry.lb, state.gub,
        len(outcome), outcome.pruned_by_gub, outcome.pruned_by_derivative, swept,
    ))
    if progress:
        progress.report_iteration(
            state.iteration, len(state.worklist), state.gub, state.glb, len(outcome),
            outcome.pruned_by_gub, outcome.pruned_by_derivative, swept,
        )
    state.iteration += 1
    if state.monitor.enabled:
        state.monitor.check_completeness(state.iteration, _live_boxes(state))
    return state


def stopping_check(state: SolverState) -> bool:
    """True once a stopping criterion holds; the criterion is kept in state.stop_reason."""
    config = state.config
    if not state.worklist:
        state.stop_reason = STOP_EXHAUSTED
    elif state.worklist.max_width() < config.tolerance:
        state.stop_reason = STOP_TOLERANCE
    elif state.iteration >= config.max_iterations:
        state.stop_reason = STOP_MAX_ITERATIONS
    elif config.time_limit is not None and state.elapsed >= config.time_limit:
        state.stop_reason = STOP_TIME_LIMIT
    else:
        state.stop_reason = None
    return state.stop_reason is not None


def finalize(state: SolverState) -> Result:
    entries = state.worklist.sorted_entries()
    regions = [(reconstruct_box(entry, state.history, state.domain, state.scheme), entry.lb) for entry in entries]
    # an empty list leaves only the witness to bound the minimum
    glb = entries[0].lb if entries else state.gub
    if state.stop_reason is None:
        stopping_check(state)
    return Result(
        config=state.config,
        regions=regions,
        glb=float(glb),
        gub=float(state.gub),
        iterations=state.iteration,
        stop_reason=state.stop_reason,
        witness=None if state.witness is None else np.array(state.witness),
        soundness=state.monitor.status,
        wall_time_s=state.elapsed,
        trace=list(state.trace),
    )


def solve(config: SolverConfig, progress=None) -> Result:
    """
    Run the complete search for one configuration.

    :param config: SolverConfig
    :param progress: Optional ProgressHandler
    :return: Result
    """
    state = initialize(config, progress)
    if progress:
        progress.update_additional_status(
            f"{config.function} n={config.n} p={state.scheme.p} s={state.scheme.s} m={config.samples}"
        )
    while not stopping_check(state):
        iterate(state, progress)
    result = finalize(state)
    if progress:
        progress.complete(
            success=result.exit_code == EXIT_SUCCESS,
            error_msg=None if result.exit_code == EXIT_SUCCESS else f"stopped by {result.stop_reason}",
        )
    logger.debug("%s finished: %d iterations, %d regions, [%r, %r]",
                  config.function, result.iterations, len(result.regions), result.glb, result.gub)
    return result
