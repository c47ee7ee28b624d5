# src/partition_kernel.py
"""
Data-parallel partition of a selected region.

Every child of a partition is identified by a linear index r in [0, s**p).
The p base-s digits of r (first partitioned dimension fastest) pick one of
the s subintervals in each partitioned dimension, so a worker only needs the
parent box, the cycling index and r to rebuild its child.
"""
import logging
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import numpy as np

from src.box import Box
from src.catalog import eval_gradient_interval, eval_interval, eval_points_upper
from src.chunk_processor import ChunkProcessor

logger = logging.getLogger(__name__)

KEEP = "keep"
PRUNED_BY_GUB = "pruned_by_gub"
PRUNED_BY_DERIVATIVE = "pruned_by_derivative"

# Largest child count handled in one partition
MAX_CHILDREN = 2 ** 40


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class PartitionScheme:
    """
    :param p: Number of dimensions partitioned per iteration
    :param s: Number of subintervals per partitioned dimension
    """
    p: int = 10
    s: int = 4

    def __post_init__(self):
        if self.p < 1:
            raise PartitionError(f"Dimensions per iteration must be positive, got {self.p}")
        if self.s < 2:
            raise PartitionError(f"Subintervals per dimension must be at least 2, got {self.s}")
        if self.s ** self.p > MAX_CHILDREN:
            raise PartitionError(f"Partition of {self.s}^{self.p} subregions is too large")

    @property
    def k(self) -> int:
        return self.s ** self.p

    def for_group(self, size: int) -> "PartitionScheme":
        """Scheme for a (possibly shorter) final dimension group."""
        if size == self.p:
            return self
        return PartitionScheme(size, self.s)


class PruneResult(NamedTuple):
    kind: str
    dim: Optional[int] = None


@dataclass
class KernelOutcome:
    """Survivors of one partition, sorted by ascending r."""
    indices: np.ndarray
    lower_bounds: np.ndarray
    max_widths: np.ndarray
    pruned_by_gub: int = 0
    pruned_by_derivative: int = 0
    violations: List[int] = field(default_factory=list)

    @property
    def survivors(self):
        return [
            (int(r), float(lb), float(w))
            for r, lb, w in zip(self.indices, self.lower_bounds, self.max_widths)
        ]

    def __len__(self):
        return len(self.indices)


def cycling_dims(c: int, p: int, n: int) -> np.ndarray:
    """0-based dimensions partitioned for the 1-based cycling index c."""
    if c < 1 or c > n:
        raise PartitionError(f"Cycling index {c} out of range for n = {n}")
    return np.arange(c - 1, min(c - 1 + p, n), dtype=np.intp)


def next_cycling_index(c: int, p: int, n: int) -> int:
    return c + p if c + p <= n else 1


def subindices(r, scheme: PartitionScheme) -> np.ndarray:
    """
    Mixed-radix digits of r: I_j = (r // s**j) % s for j = 0..p-1.
    Works on a single index or an array of them (digits on the last axis).
    """
    r = np.asarray(r, dtype=np.int64)
    if (r < 0).any() or (r >= scheme.k).any():
        raise PartitionError(f"Subregion index out of range [0, {scheme.k})")
    powers = scheme.s ** np.arange(scheme.p, dtype=np.int64)
    return (r[..., None] // powers) % scheme.s


def recompose_index(digits, scheme: PartitionScheme):
    digits = np.asarray(digits, dtype=np.int64)
    if digits.shape[-1] != scheme.p or (digits < 0).any() or (digits >= scheme.s).any():
        raise PartitionError("Digits do not match the partition scheme")
    powers = scheme.s ** np.arange(scheme.p, dtype=np.int64)
    return np.sum(digits * powers, axis=-1)


def cut_points(lo, hi, s: int) -> np.ndarray:
    """
    Shared cut points lo + w*j, j = 0..s, for each dimension (shape (d, s+1)).
    The outer cuts are the parent's endpoints, so neighbours meet exactly.
    """
    lo = np.asarray(lo, dtype=np.float64)
    hi = np.asarray(hi, dtype=np.float64)
    step = (hi - lo) / s
    cuts = lo[:, None] + step[:, None] * np.arange(s + 1, dtype=np.float64)
    cuts[:, 0] = lo
    cuts[:, -1] = hi
    cuts = np.maximum.accumulate(cuts, axis=1)
    return np.minimum(cuts, hi[:, None])


def child_boxes(parent: Box, c: int, r, scheme: PartitionScheme) -> Box:
    """Children of `parent` for every index in `r` (a batched Box)."""
    dims = cycling_dims(c, scheme.p, parent.n)
    group = scheme.for_group(len(dims))
    digits = subindices(np.atleast_1d(r), group)
    cuts = cut_points(parent.lo[dims], parent.hi[dims], group.s)
    count = digits.shape[0]
    lo = np.broadcast_to(parent.lo, (count, parent.n)).copy()
    hi = np.broadcast_to(parent.hi, (count, parent.n)).copy()
    for j, dim in enumerate(dims):
        lo[:, dim] = cuts[j, digits[:, j]]
        hi[:, dim] = cuts[j, digits[:, j] + 1]
    return Box(lo, hi, parent.rounding)


def child_box(parent: Box, c: int, r: int, scheme: PartitionScheme) -> Box:
    return child_boxes(parent, c, [r], scheme)[0]


def child_count(n: int, c: int, scheme: PartitionScheme) -> int:
    return scheme.for_group(len(cycling_dims(c, scheme.p, n))).k


def _derivative_fires(lo, hi, grad_lo, grad_hi, domain_lo, domain_hi):
    # a strictly monotone direction is only conclusive away from the domain edge
    increasing = (grad_lo > 0) & (lo != domain_lo)
    decreasing = (grad_hi < 0) & (hi != domain_hi)
    return increasing | decreasing


def prune_test(box: Box, fbounds, grads, gub: float, domain: Box, dims) -> PruneResult:
    """
    Decide whether a single box can be discarded.

    :param box: Candidate box
    :param fbounds: Enclosure of f over the box
    :param grads: Enclosures of the partials for `dims` (or None)
    :param gub: Current global upper bound
    :param domain: Search domain
    :param dims: 0-based dimensions covered by `grads`
    :return: PruneResult
    """
    if float(fbounds.lo) > gub:
        return PruneResult(PRUNED_BY_GUB)
    if grads is None:
        return PruneResult(KEEP)
    dims = np.asarray(dims, dtype=np.intp)
    fires = _derivative_fires(
        box.lo[dims], box.hi[dims], grads.lo, grads.hi, domain.lo[dims], domain.hi[dims],
    )
    if fires.any():
        return PruneResult(PRUNED_BY_DERIVATIVE, int(dims[np.argmax(fires)]))
    return PruneResult(KEEP)


def _strictly_inside(children: Box, target: Box):
    return np.all((children.lo < target.lo) & (target.hi < children.hi), axis=-1)


def evaluate_partition(obj, parent: Box, c: int, gub: float, scheme: PartitionScheme,
                       derivative_test=True, full_gradient=False, processor=None, watch=None):
    """
    Partition `parent` along the dimension group starting at c, bound f on
    every child and discard the children that cannot hold the minimum.

    :param obj: ObjectiveSpec
    :param parent: Selected region
    :param c: 1-based cycling index
    :param gub: Global upper bound used by the value test
    :param scheme: PartitionScheme
    :param derivative_test: Apply the first-order monotonicity test
    :param full_gradient: Test all n partials instead of the partitioned ones
    :param processor: ChunkProcessor (a single-threaded one by default)
    :param watch: Optional box around the known minimizer; pruned children
                  strictly containing it are reported as violations
    :return: KernelOutcome
    """
    processor = processor or ChunkProcessor()
    dims = cycling_dims(c, scheme.p, obj.n)
    total = scheme.for_group(len(dims)).k
    tested = np.arange(obj.n, dtype=np.intp) if full_gradient else dims
    domain = obj.domain
    domain_lo = domain.lo[tested]
    domain_hi = domain.hi[tested]

    def worker(start, stop):
        r = np.arange(start, stop, dtype=np.int64)
        children = child_boxes(parent, c, r, scheme)
        bounds = eval_interval(obj, children)
        lower = np.broadcast_to(bounds.lo, r.shape)
        keep = ~(lower > gub)
        by_gub = int(np.count_nonzero(~keep))
        by_derivative = 0
        if derivative_test and keep.any():
            rows = np.flatnonzero(keep)
            candidates = children[rows]
            grads = eval_gradient_interval(obj, candidates, tested)
            fires = _derivative_fires(
                candidates.lo[:, tested], candidates.hi[:, tested],
                grads.lo, grads.hi, domain_lo, domain_hi,
            ).any(axis=1)
            keep[rows[fires]] = False
            by_derivative = int(np.count_nonzero(fires))
        violations = []
        if watch is not None:
            lost = _strictly_inside(children, watch) & ~keep
            violations = r[lost].tolist()
        widths = children.max_width()
        return r[keep], lower[keep].copy(), widths[keep], by_gub, by_derivative, violations

    chunks = processor.map_ranges(total, worker)
    outcome = KernelOutcome(
        indices=np.concatenate([chunk[0] for chunk in chunks]),
        lower_bounds=np.concatenate([chunk[1] for chunk in chunks]),
        max_widths=np.concatenate([chunk[2] for chunk in chunks]),
        pruned_by_gub=sum(chunk[3] for chunk in chunks),
        pruned_by_derivative=sum(chunk[4] for chunk in chunks),
        violations=[r for chunk in chunks for r in chunk[5]],
    )
    logger.debug(
        "Partition of %d children: %d kept, %d pruned by GUB, %d by derivative",
        total, len(outcome), outcome.pruned_by_gub, outcome.pruned_by_derivative,
    )
    return outcome


def sample_partition(obj, parent: Box, c: int, scheme: PartitionScheme, m: int, processor=None):
    """
    Sample m diagonal points in every child of the partition.

    :return: (best upper bound, point attaining it); the first point in
             (r, j) order wins ties
    """
    processor = processor or ChunkProcessor()
    total = child_count(obj.n, c, scheme)

    def worker(start, stop):
        children = child_boxes(parent, c, np.arange(start, stop, dtype=np.int64), scheme)
        points = children.diagonal_points(m).reshape(-1, obj.n)
        values = eval_points_upper(obj, points)
        best = int(np.argmin(values))
        return float(values[best]), points[best]

    chunks = processor.map_ranges(total, worker)
    value, point = chunks[0]
    for candidate_value, candidate_point in chunks[1:]:
        if candidate_value < value:
            value, point = candidate_value, candidate_point
    return value, point
