# src/solver_config.py
import math
from dataclasses import asdict, dataclass, field, fields

from src.catalog import FUNCTIONS
from src.partition_kernel import PartitionScheme
from src.rounding import DEFAULT_ROUNDING, RoundingPolicy

SAMPLING_SELECTED = "selected"
SAMPLING_PER_SUBREGION = "per-subregion"


class ConfigError(ValueError):
    pass


def get_options():
    """
    Return the solver options with their descriptions and default values.
    Defaults reproduce the benchmark experiment configuration.
    """
    return {
        "function": {
            "description": "Benchmark function to minimize",
            "type": "str",
            "default": "levy",
            "choices": list(FUNCTIONS),
        },
        "n": {
            "description": "Number of variables",
            "type": "int",
            "default": 50,
            "min": 1,
        },
        "p": {
            "description": "Dimensions partitioned per iteration (capped at n)",
            "type": "int",
            "default": 10,
            "min": 1,
        },
        "s": {
            "description": "Subintervals per partitioned dimension",
            "type": "int",
            "default": 4,
            "min": 2,
        },
        "samples": {
            "description": "Diagonal sample points per sampled region",
            "type": "int",
            "default": 10,
            "min": 1,
        },
        "tolerance": {
            "description": "Stop once every region is narrower than this in all dimensions",
            "type": "float",
            "default": 1e-4,
            "min": 0.0,
        },
        "max_iterations": {
            "description": "Iteration budget",
            "type": "int",
            "default": 100000,
            "min": 0,
        },
        "time_limit": {
            "description": "Wall-clock budget in seconds (none by default)",
            "type": "float",
            "default": None,
            "min": 0.0,
        },
        "derivative_test": {
            "description": "Prune with the first-order derivative test",
            "type": "bool",
            "default": True,
        },
        "full_gradient": {
            "description": "Test all n partial derivatives instead of the partitioned ones",
            "type": "bool",
            "default": False,
        },
        "sampling": {
            "description": "Sample the selected region, or every subregion of its partition",
            "type": "str",
            "default": SAMPLING_SELECTED,
            "choices": [SAMPLING_SELECTED, SAMPLING_PER_SUBREGION],
        },
        "threads": {
            "description": "Worker threads for the partition kernel",
            "type": "int",
            "default": 1,
            "min": 1,
        },
        "chunk_size": {
            "description": "Subregions per kernel work chunk",
            "type": "int",
            "default": 4096,
            "min": 1,
        },
        "rounding": {
            "description": "Outward rounding policy: optimal-outward or slack-ulps(m)",
            "type": "str",
            "default": DEFAULT_ROUNDING.label,
        },
        "debug_soundness": {
            "description": "Check that no pruning step discards the known minimizer",
            "type": "bool",
            "default": False,
        },
    }


@dataclass(frozen=True)
class SolverConfig:
    function: str = "levy"
    n: int = 50
    p: int = 10
    s: int = 4
    samples: int = 10
    tolerance: float = 1e-4
    max_iterations: int = 100000
    time_limit: float = None
    derivative_test: bool = True
    full_gradient: bool = False
    sampling: str = SAMPLING_SELECTED
    threads: int = 1
    chunk_size: int = 4096
    rounding: RoundingPolicy = field(default=DEFAULT_ROUNDING)

    debug_soundness: bool = False

    def __post_init__(self):
        if isinstance(self.rounding, str):
            object.__setattr__(self, "rounding", RoundingPolicy.parse(self.rounding))

    @property
    def effective_p(self) -> int:
        return min(self.p, self.n)

    @property
    def scheme(self) -> PartitionScheme:
        return PartitionScheme(self.effective_p, self.s)

    def validate(self):
        """Raise ConfigError for the first invalid value; returns self."""
        options = get_options()
        for item in fields(self):
            spec = options.get(item.name)
            value = getattr(self, item.name)
            if spec is None or value is None:
                continue
            if "choices" in spec and value not in spec["choices"]:
                raise ConfigError(f"Invalid {item.name}: {value!r}. Choose from: {', '.join(spec['choices'])}")
            if spec["type"] == "int" and (isinstance(value, bool) or not isinstance(value, int)):
                raise ConfigError(f"{item.name} must be an integer, got {value!r}")
            if spec["type"] == "float" and (isinstance(value, bool) or not isinstance(value, (int, float))):
                raise ConfigError(f"{item.name} must be a number, got {value!r}")
            if "min" in spec and value < spec["min"]:
                raise ConfigError(f"{item.name} must be at least {spec['min']}, got {value}")
        if not (self.tolerance > 0 and math.isfinite(self.tolerance)):
            raise ConfigError(f"tolerance must be a positive number, got {self.tolerance}")
        if self.time_limit is not None and math.isnan(self.time_limit):
            raise ConfigError("time_limit cannot be NaN")
        try:
            self.scheme
        except ValueError as e:
            raise ConfigError(str(e)) from e
        return self

    def to_dict(self):
        data = asdict(self)
        data["rounding"] = self.rounding.label
        return data

    @classmethod
    def from_dict(cls, data):
        known = {item.name for item in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {', '.join(sorted(unknown))}")
        try:
            return cls(**data)
        except ValueError as e:
            raise ConfigError(str(e)) from e
