import dataclasses

import numpy as np
import pytest

from src.box import Box
from src.catalog import FUNCTIONS, get_objective
from src.partition_kernel import PartitionScheme
from src.report import RunReport, read_csv_report, read_json_report
from src.search_engine import (
    EXIT_BUDGET,
    EXIT_SUCCESS,
    STOP_EXHAUSTED,
    STOP_MAX_ITERATIONS,
    STOP_TIME_LIMIT,
    STOP_TOLERANCE,
    SearchError,
    finalize,
    initialize,
    iterate,
    reconstruct_box,
    sample_diagonal,
    select_region,
    sweep_list,
    solve,
    stopping_check,
)
from src.solver_config import SAMPLING_PER_SUBREGION, ConfigError, SolverConfig
from src.tables import (
    EXPECTED_N50,
    MAX_GAP,
    benchmark_row,
    cycle_count_law,
    cycles_to_tolerance,
    expected_iterations,
    reproduce_tables,
    scaling_study,
)
from src.worklist import ROOT_ITERATION, IterationRecord, RegionEntry, WorkList


def small_config(function="levy", n=2, **overrides):
    values = {"function": function, "n": n, "p": n, "tolerance": 1e-3}
    values.update(overrides)
    return SolverConfig(**values)


def test_worklist_orders_by_bound_then_age():
    worklist = WorkList()
    worklist.push_many([
        RegionEntry(1.0, 3, 0, 1, 0.5),
        RegionEntry(0.5, 2, 7, 1, 0.5),
        RegionEntry(0.5, 1, 9, 1, 0.5),
        RegionEntry(0.5, 1, 4, 1, 2.0),
    ])
    assert worklist.peek_min() == RegionEntry(0.5, 1, 4, 1, 2.0)
    assert [(e.itr, e.sidx) for e in worklist.sorted_entries()] == [(1, 4), (1, 9), (2, 7), (3, 0)]
    assert worklist.max_width() == 2.0
    assert worklist.min_lb() == 0.5
    assert worklist.pop_min().sidx == 4
    assert len(worklist) == 3


def test_worklist_sweep_is_strict():
    worklist = WorkList([RegionEntry(lb, i, 0, 1, 1.0) for i, lb in enumerate([0.0, 1.0, 2.0, 3.0])])
    removed = worklist.sweep(1.0)
    assert sorted(e.lb for e in removed) == [2.0, 3.0]
    assert [e.lb for e in worklist] == [0.0, 1.0]
    assert worklist.sweep(5.0) == []
    empty = WorkList()
    assert not empty and empty.min_lb() == np.inf and empty.max_width() == 0.0


def test_initialize_holds_the_root_region():
    state = initialize(small_config())
    assert len(state.worklist) == 1
    root = state.worklist.peek_min()
    assert root.itr == ROOT_ITERATION and root.sidx == 0 and root.cyc == 1
    assert root.maxwidth == 20.0
    assert root.lb <= 0.0
    assert state.gub == np.inf and state.witness is None and state.iteration == 0


def test_initialize_rejects_invalid_config():
    with pytest.raises(ConfigError):
        initialize(small_config(samples=0))
    with pytest.raises(ConfigError):
        initialize(small_config(tolerance=0.0))
    with pytest.raises(ConfigError):
        initialize(small_config(function="sphere"))


def test_reconstruct_box_from_history():
    domain = Box([0.0, 0.0], [8.0, 8.0])
    scheme = PartitionScheme(2, 4)
    history = [IterationRecord(Box([0.0, 0.0], [4.0, 4.0]), 1)]
    entry = RegionEntry(0.0, 0, 7, 1, 1.0)
    assert reconstruct_box(entry, history, domain, scheme).to_pairs() == [[3.0, 4.0], [1.0, 2.0]]
    root = RegionEntry(0.0, ROOT_ITERATION, 0, 1, 8.0)
    assert reconstruct_box(root, history, domain, scheme) == domain
    with pytest.raises(SearchError):
        reconstruct_box(RegionEntry(0.0, 5, 0, 1, 1.0), history, domain, scheme)


def test_select_from_empty_list_fails():
    state = initialize(small_config())
    state.worklist = WorkList()
    with pytest.raises(SearchError):
        select_region(state)


def test_sample_diagonal(wide_linear_1d):
    value, point = sample_diagonal(wide_linear_1d, wide_linear_1d.domain, 10)
    assert value == pytest.approx(1.0, rel=1e-15)
    assert point.tolist() == pytest.approx([1.0], rel=1e-15)
    value, point = sample_diagonal(wide_linear_1d, wide_linear_1d.domain, 1)
    assert value == 5.5
    assert point.tolist() == [5.5]


def test_iteration_advances_the_cycling_index():
    state = initialize(SolverConfig(function="levy", n=6, p=3))
    iterate(state)
    assert state.iteration == 1 and len(state.history) == 1
    assert state.history[0].cyc_used == 1
    assert len(state.worklist) > 0
    assert all(entry.itr == 0 and entry.cyc == 4 for entry in state.worklist)
    assert state.gub < np.inf and state.witness is not None
    iterate(state)
    assert all(entry.cyc == 1 for entry in state.worklist if entry.itr == 1)
    record = state.trace[-1]
    assert record.iteration == 1 and record.selected_itr == 0


def test_sweep_list_drops_regions_above_the_bound():
    state = initialize(small_config(debug_soundness=True))
    iterate(state)
    before = len(state.worklist)
    state.worklist.push(RegionEntry(1e300, 0, 0, 1, 1.0))
    assert sweep_list(state, state.gub) == 1
    assert len(state.worklist) == before
    assert state.monitor.status == "ok"


def test_stopping_criteria():
    assert stopping_check(initialize(small_config(tolerance=100.0)))
    state = initialize(small_config(max_iterations=0))
    assert stopping_check(state) and state.stop_reason == STOP_MAX_ITERATIONS
    state = initialize(small_config(time_limit=0.0))
    assert stopping_check(state) and state.stop_reason == STOP_TIME_LIMIT
    state = initialize(small_config())
    assert not stopping_check(state) and state.stop_reason is None
    state.worklist = WorkList()
    assert stopping_check(state) and state.stop_reason == STOP_EXHAUSTED


def test_exhausted_list_reports_the_witness_bound():
    state = initialize(small_config())
    iterate(state)
    state.worklist = WorkList()
    stopping_check(state)
    result = finalize(state)
    assert result.stop_reason == STOP_EXHAUSTED
    assert result.glb == result.gub
    assert result.regions == []
    assert result.exit_code == EXIT_BUDGET


def test_solve_without_iterations():
    result = solve(small_config(tolerance=100.0))
    assert result.iterations == 0
    assert result.stop_reason == STOP_TOLERANCE and result.exit_code == EXIT_SUCCESS
    assert result.region_boxes == [get_objective("levy", 2).domain]
    assert result.gub == np.inf and result.witness is None


def test_iteration_budget_exit_code():
    result = solve(small_config(max_iterations=1))
    assert result.iterations == 1
    assert result.stop_reason == STOP_MAX_ITERATIONS
    assert result.exit_code == EXIT_BUDGET


@pytest.mark.parametrize("name", list(FUNCTIONS))
def test_small_solve_encloses_minimum(name):
    result = solve(small_config(name, debug_soundness=True))
    objective = get_objective(name, 2)
    assert result.stop_reason == STOP_TOLERANCE
    assert result.glb <= objective.known_minimum <= result.gub
    assert result.soundness == "ok"
    assert any(box.intersects(objective.known_minimizer_box) for box in result.region_boxes)
    assert all(box.max_width() < 1e-3 for box in result.region_boxes)
    assert all(lb <= result.gub for _, lb in result.regions)
    assert [lb for _, lb in result.regions] == sorted(lb for _, lb in result.regions)
    assert objective.domain.contains_point(result.witness)


def test_global_upper_bound_never_increases():
    result = solve(small_config("rastrigin", n=3))
    bounds = [record.gub for record in result.trace]
    assert all(later <= earlier for earlier, later in zip(bounds, bounds[1:]))
    assert result.gub == bounds[-1]


@pytest.mark.parametrize("overrides", [
    {"sampling": SAMPLING_PER_SUBREGION},
    {"full_gradient": True},
    {"derivative_test": False},
    {"rounding": "slack-ulps(2)"},
    {"s": 3},
])
def test_solver_variants_enclose_minimum(overrides):
    result = solve(small_config("styblinski", debug_soundness=True, **overrides))
    assert result.glb <= -8.0 <= result.gub
    assert result.soundness == "ok"


def test_solve_is_independent_of_threads():
    sequential = solve(small_config("griewank", n=3, tolerance=1e-2))
    parallel = solve(small_config("griewank", n=3, tolerance=1e-2, threads=4, chunk_size=5))
    assert sequential.iterations == parallel.iterations
    assert sequential.glb == parallel.glb and sequential.gub == parallel.gub
    assert sequential.regions == parallel.regions
    assert sequential.trace == parallel.trace


def test_report_formats_agree(tmp_path):
    result = solve(small_config("zabinsky"))
    report = RunReport.from_result(result)
    report.write(tmp_path / "run.json", "json")
    report.write(tmp_path / "run.csv", "csv")
    from_json = read_json_report(tmp_path / "run.json")
    from_csv = read_csv_report(tmp_path / "run.csv")
    assert from_json.to_dict() == report.to_dict()
    assert from_csv.to_dict() == report.to_dict()
    assert from_json.config["m"] == 10 and from_json.config["rounding"] == "optimal-outward"


def test_report_replays_the_run(tmp_path):
    config = small_config("belegundu", s=3, samples=4)
    first = RunReport.from_result(solve(config))
    assert first.solver_config() == config
    second = RunReport.from_result(solve(first.solver_config()))
    assert second.to_json(exclude=["wall_time_s"]) == first.to_json(exclude=["wall_time_s"])


def test_cycle_count_law():
    assert cycles_to_tolerance(20.0, 1e-4) == 9
    assert cycles_to_tolerance(1.0, 0.5, 2) == 2
    assert cycle_count_law(20.0, 20, 10) == 18
    assert cycle_count_law(20.0, 80, 10) == 72
    assert expected_iterations("levy", 50, 10) == EXPECTED_N50["levy"]
    assert expected_iterations("ackley", 10, 5) == 20


def test_benchmark_row_requires_a_tight_gap():
    config = SolverConfig(function="levy", n=10, p=5)
    result = solve(config)
    assert benchmark_row(config, result)["passed"]
    loose = dataclasses.replace(result, glb=result.gub - 0.1)
    row = benchmark_row(config, loose)
    assert row["gap"] > MAX_GAP
    assert not row["passed"]


@pytest.mark.slow
def test_fast_suite_matches_expected_counts():
    frame = reproduce_tables("fast", debug_soundness=True)
    assert len(frame) == 10
    assert frame["passed"].all(), frame.to_string()


@pytest.mark.slow
def test_levy_iterations_scale_linearly():
    frame = scaling_study((20, 40, 80), "levy", 10)
    assert frame["iterations"].tolist() == [18, 36, 72]
    assert frame["passed"].all()


@pytest.mark.slow
def test_levy_survivors_continue_with_the_next_group():
    state = initialize(SolverConfig(function="levy", n=50, p=10))
    iterate(state)
    assert len(state.worklist) > 0
    assert all(entry.cyc == 11 for entry in state.worklist)


@pytest.mark.slow
def test_full_benchmark_suite():
    frame = reproduce_tables("n50")
    assert dict(zip(frame["function"], frame["iterations"])) == EXPECTED_N50
    assert frame["passed"].all(), frame.to_string()
    assert (frame["gap"] <= 1e-2).all()


@pytest.mark.slow
@pytest.mark.parametrize("name", ["levy", "griewank"])
def test_reports_identical_across_thread_counts(name):
    reports = []
    for threads in (1, 8):
        config = SolverConfig(function=name, n=10, p=5, threads=threads)
        report = RunReport.from_result(solve(config)).to_dict()
        report.pop("wall_time_s")
        report["config"].pop("threads")
        reports.append(report)
    assert reports[0] == reports[1]
