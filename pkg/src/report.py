# src/report.py
"""
Machine-readable run reports (JSON and CSV).

Floats are written with repr, the shortest text that parses back to the
same double, so two reports of the same run compare equal as text.
"""
import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import List, Optional

from src import util
from src.solver_config import SolverConfig

# Report key -> SolverConfig field, for the keys that differ
_CONFIG_KEYS = {"m": "samples"}
_CONFIG_ORDER = [
    "p", "s", "m", "tolerance", "derivative_test", "full_gradient", "sampling",
    "threads", "chunk_size", "rounding", "max_iterations", "time_limit", "debug_soundness",
]
_REGION_COLUMNS = ["region", "lb"]


def config_echo(config: SolverConfig):
    data = config.to_dict()
    return {key: data[_CONFIG_KEYS.get(key, key)] for key in _CONFIG_ORDER}


def config_from_echo(function: str, n: int, echo) -> SolverConfig:
    values = {_CONFIG_KEYS.get(key, key): value for key, value in echo.items()}
    values.update(function=function, n=n)
    return SolverConfig.from_dict(values)


@dataclass
class RunReport:
    function: str
    n: int
    config: dict
    iterations: int
    stop_reason: str
    glb: float
    gub: float
    witness: Optional[List[float]]
    regions: List[dict]
    wall_time_s: float
    soundness: str
    region_count: int = field(default=None)

    def __post_init__(self):
        if self.region_count is None:
            self.region_count = len(self.regions)
        if self.region_count != len(self.regions):
            raise ValueError("Report region count does not match its regions")

    @classmethod
    def from_result(cls, result):
        return cls(
            function=result.config.function,
            n=result.config.n,
            config=config_echo(result.config),
            iterations=result.iterations,
            stop_reason=result.stop_reason,
            glb=result.glb,
            gub=result.gub,
            witness=None if result.witness is None else [float(v) for v in result.witness],
            regions=[{"lb": float(lb), "bounds": box.to_pairs()} for box, lb in result.regions],
            wall_time_s=result.wall_time_s,
            soundness=result.soundness,
        )

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(**data)
        except TypeError as e:
            raise ValueError(f"Malformed report: {e}") from e

    def solver_config(self) -> SolverConfig:
        """The configuration that reproduces this run."""
        return config_from_echo(self.function, self.n, self.config)

    def to_dict(self):
        return {
            "function": self.function,
            "n": self.n,
            "config": dict(self.config),
            "iterations": self.iterations,
            "stop_reason": self.stop_reason,
            "region_count": self.region_count,
            "glb": self.glb,
            "gub": self.gub,
            "witness": self.witness,
            "regions": self.regions,
            "wall_time_s": self.wall_time_s,
            "soundness": self.soundness,
        }

    def to_json(self, exclude=()):
        data = self.to_dict()
        for key in exclude:
            data.pop(key, None)
        return json.dumps(_json_safe(data), indent=2, allow_nan=False)

    def to_csv(self):
        """Run metadata as key=value cells, then a header row and one row per region."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        meta = {key: value for key, value in self.to_dict().items() if key not in ("config", "regions")}
        meta.update({f"config.{key}": value for key, value in self.config.items()})
        writer.writerow([f"{key}={_encode_cell(value)}" for key, value in meta.items()])
        header = list(_REGION_COLUMNS)
        for i in range(1, self.n + 1):
            header += [f"lo_{i}", f"hi_{i}"]
        writer.writerow(header)
        for index, region in enumerate(self.regions):
            row = [index, util.format_float(region["lb"])]
            for lo, hi in region["bounds"]:
                row += [util.format_float(lo), util.format_float(hi)]
            writer.writerow(row)
        return buffer.getvalue()

    def write(self, path, fmt="json"):
        if fmt == "json":
            util.write_file_text(path, self.to_json() + "\n")
        elif fmt == "csv":
            util.write_file_text(path, self.to_csv())
        else:
            raise ValueError(f"Unknown report format: {fmt}")


def _json_safe(value):
    # JSON has no infinities; they travel as "inf" / "-inf" strings
    if isinstance(value, dict):
        return {key: _json_safe(item) for key, item in value.items()}
    if isinstance(value, list):
        return [_json_safe(item) for item in value]
    if isinstance(value, float) and not math.isfinite(value):
        return util.format_float(value)
    return value


def _json_float(value):
    return float(value) if isinstance(value, str) else value


def _restore_floats(data):
    for key in ("glb", "gub", "wall_time_s"):
        if key in data:
            data[key] = _json_float(data[key])
    for region in data.get("regions", []):
        region["lb"] = _json_float(region["lb"])
        region["bounds"] = [[_json_float(lo), _json_float(hi)] for lo, hi in region["bounds"]]
    return data


def _encode_cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return util.format_float(value)
    if isinstance(value, list):
        return ";".join(util.format_float(v) for v in value)
    return str(value)


def _decode_cell(key, text):
    if key == "witness":
        return [float(v) for v in text.split(";")] if text else None
    if text == "":
        return None
    if text in ("True", "False"):
        return text == "True"
    for parse in (int, float):
        try:
            return parse(text)
        except ValueError:
            pass
    return text


def read_json_report(path) -> RunReport:
    try:
        data = json.loads(util.read_file_text(path))
    except json.JSONDecodeError as e:
        raise ValueError(f"Report {path} is not valid JSON: {e}") from e
    try:
        data = _restore_floats(data)
    except (AttributeError, KeyError, TypeError, ValueError) as e:
        raise ValueError(f"Malformed report {path}: {e}") from e
    return RunReport.from_dict(data)


def read_csv_report(path) -> RunReport:
    rows = list(csv.reader(io.StringIO(util.read_file_text(path))))
    if len(rows) < 2:
        raise ValueError(f"Report {path} is missing its metadata or header row")
    data, config = {}, {}
    for cell in rows[0]:
        key, _, text = cell.partition("=")
        if key.startswith("config."):
            name = key[len("config."):]
            config[name] = _decode_cell(name, text)
        else:
            data[key] = _decode_cell(key, text)
    # strings that look numeric stay strings for these keys
    for key in ("function", "stop_reason", "soundness"):
        data[key] = str(data[key])
    config["rounding"] = str(config["rounding"])
    config["sampling"] = str(config["sampling"])
    regions = []
    for row in rows[2:]:
        values = [float(v) for v in row[1:]]
        bounds = [[values[j], values[j + 1]] for j in range(1, len(values), 2)]
        regions.append({"lb": values[0], "bounds": bounds})
    data["config"] = config
    data["regions"] = regions
    return RunReport.from_dict(data)


def load_config(path) -> SolverConfig:
    """SolverConfig echoed by a JSON report (for replays)."""
    return read_json_report(path).solver_config()
