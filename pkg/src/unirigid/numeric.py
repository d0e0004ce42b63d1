"""SVD-based linear algebra with relative tolerances.

Every rank or zero decision here is made relative to a scale taken from the
matrix itself, so results do not change when an input is multiplied by a
constant.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, asdict

import numpy as np

EXHAUSTIVE_CAP = 10**6
_CHUNK = 4096


@dataclass(frozen=True)
class ToleranceProfile:
    rank_rel_tol: float = 1e-9
    zero_rel_tol: float = 1e-9
    psd_rel_tol: float = 1e-9
    xi_min_rel: float = 1e-6

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not (0.0 < value < 1.0):
                raise ValueError(f"{name} must lie in (0, 1), got {value}")

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOL = ToleranceProfile()


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """PCG64 generator keyed on ``(stream, seed)``; fixed across platforms."""
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([stream, seed])))


def _as_matrix(m) -> np.ndarray:
    a = np.atleast_2d(np.asarray(m, dtype=float))
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if a.size == 0:
        raise ValueError("matrix is empty")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def numeric_rank(m, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    """Number of singular values above ``rank_rel_tol * sigma_max``."""
    s = np.linalg.svd(_as_matrix(m), compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel_tol * s[0]))


def null_space_basis(m, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (as columns) of the numerical null space of ``m``."""
    a = _as_matrix(m)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    rank = 0 if s[0] == 0.0 else int(np.count_nonzero(s > tol.rank_rel_tol * s[0]))
    return vh[rank:].T.copy()


def orthonormal_span(m, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (as columns) of the column space of ``m``."""
    a = _as_matrix(m)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s[0] == 0.0:
        return u[:, :0]
    return u[:, : int(np.count_nonzero(s > tol.rank_rel_tol * s[0]))]


def symmetric_eigen_bounds(m) -> tuple[float, float]:
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    w = np.linalg.eigvalsh((a + a.T) / 2)
    return float(w[0]), float(w[-1])


@dataclass
class RegularityReport:
    mode: str
    subsets_tested: int
    worst_ratio: float
    worst_subset: tuple[int, ...]  # 1-based row indices
    threshold: float

    @property
    def passed(self) -> bool:
        return self.worst_ratio > self.threshold


def _subset_ratios(a: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    s = np.linalg.svd(a[subsets], compute_uv=False)
    big = s[:, 0]
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(big > 0, s[:, -1] / np.where(big > 0, big, 1.0), 0.0)
    return ratio


def _lexicographic_batches(n, k):
    it = itertools.combinations(range(n), k)
    while True:
        batch = list(itertools.islice(it, _CHUNK))
        if not batch:
            return
        yield np.array(batch, dtype=int).reshape(-1, k)


def maximal_submatrix_regularity(
    m,
    mode: str = "exhaustive",
    sample_size: int = 10_000,
    seed: int = 0,
    tol: ToleranceProfile = DEFAULT_TOL,
) -> RegularityReport:
    """Scan the k x k row-submatrices of an n x k matrix for singularity.

    Each submatrix is scored by sigma_min / sigma_max; the report keeps the
    worst score. ``exhaustive`` visits all C(n, k) subsets in lexicographic
    order, ``sampled`` draws ``sample_size`` uniformly random subsets.
    """
    a = _as_matrix(m)
    n, k = a.shape
    if k > n:
        raise ValueError(f"need k <= n, got shape {a.shape}")
    total = math.comb(n, k)
    if mode == "exhaustive":
        if total > EXHAUSTIVE_CAP:
            raise ValueError(f"C({n}, {k}) = {total} exceeds exhaustive cap {EXHAUSTIVE_CAP}")
        batches = _lexicographic_batches(n, k)
        count = total
    elif mode == "sampled":
        rng = make_rng(seed, stream=7)
        subsets = np.array(
            [np.sort(rng.choice(n, size=k, replace=False)) for _ in range(sample_size)], dtype=int
        ).reshape(-1, k)
        batches = (subsets[i : i + _CHUNK] for i in range(0, len(subsets), _CHUNK))
        count = sample_size
    else:
        raise ValueError(f"unknown mode {mode!r}")

    worst, worst_subset = math.inf, ()
    for batch in batches:
        ratios = _subset_ratios(a, batch)
        i = int(np.argmin(ratios))
        if ratios[i] < worst:
            worst, worst_subset = float(ratios[i]), tuple(int(x) + 1 for x in batch[i])
    return RegularityReport(mode, count, worst, worst_subset, tol.rank_rel_tol)


def choose_mode(n: int, k: int) -> str:
    return "exhaustive" if math.comb(n, k) <= EXHAUSTIVE_CAP else "sampled"
