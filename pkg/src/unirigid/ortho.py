"""Randomized general-position orthogonal representations of a graph.

Node ``j`` receives a random unit vector orthogonal to the vectors already
chosen for its earlier non-neighbours. For an (r+1)-connected graph the
result lives in R^(n-r-1) and, almost surely, every n-r-1 of the vectors are
linearly independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegreeError, RepresentationError
from .graph import Graph
from .numeric import (
    DEFAULT_TOL,
    RegularityReport,
    ToleranceProfile,
    choose_mode,
    make_rng,
    maximal_submatrix_regularity,
    orthonormal_span,
)

RESIDUAL_FLOOR = 1e-12
_MAX_DRAWS = 100


@dataclass
class OrthogonalRepresentation:
    g: Graph
    r: int
    X: np.ndarray  # n x (n-r-1), row i-1 is the vector of node i
    seed: int
    retries_used: int = 0

    @property
    def dim(self) -> int:
        return self.g.n - self.r - 1


@dataclass
class RepresentationReport:
    max_nonedge_inner: float  # relative to max squared row norm
    max_norm_deviation: float
    regularity: RegularityReport
    orthogonality_threshold: float
    norm_threshold: float = 1e-12

    @property
    def orthogonal(self) -> bool:
        return self.max_nonedge_inner <= self.orthogonality_threshold

    @property
    def unit_rows(self) -> bool:
        return self.max_norm_deviation <= self.norm_threshold

    @property
    def passed(self) -> bool:
        return self.orthogonal and self.unit_rows and self.regularity.passed


def _check_preconditions(g: Graph, r: int):
    if not (1 <= r <= g.n - 2):
        raise ValueError(f"need 1 <= r <= n-2 = {g.n - 2}, got r = {r}")
    if g.is_complete():
        raise ValueError("complete graphs have no non-edges to represent")
    for v in g.nodes:
        if g.degree(v) < r + 1:
            raise DegreeError(v, g.degree(v), r + 1)


def _sequential_vectors(g: Graph, dim: int, rng: np.random.Generator) -> np.ndarray:
    X = np.zeros((g.n, dim))
    for j in g.nodes:
        prior = [i for i in range(1, j) if not g.has_edge(i, j)]
        basis = orthonormal_span(X[[i - 1 for i in prior]].T) if prior else None
        for _ in range(_MAX_DRAWS):
            v = rng.standard_normal(dim)
            if basis is not None and basis.shape[1]:
                # second pass restores orthogonality lost to cancellation
                v -= basis @ (basis.T @ v)
                v -= basis @ (basis.T @ v)
            norm = np.linalg.norm(v)
            if norm > RESIDUAL_FLOOR:
                break
        else:
            raise RepresentationError(f"node {j}: no admissible direction left in R^{dim}")
        X[j - 1] = v / norm
    return X


def check_representation(
    rep: OrthogonalRepresentation,
    tol: ToleranceProfile = DEFAULT_TOL,
    mode: str | None = None,
) -> RepresentationReport:
    X = np.asarray(rep.X, dtype=float)
    if X.shape != (rep.g.n, rep.dim):
        raise ValueError(f"X has shape {X.shape}, expected {(rep.g.n, rep.dim)}")
    norms = np.linalg.norm(X, axis=1)
    scale = float(np.max(norms) ** 2) or 1.0
    gram = X @ X.T
    inner = max((abs(gram[i - 1, j - 1]) for i, j in rep.g.non_edges()), default=0.0)
    mode = mode or choose_mode(*X.shape)
    return RepresentationReport(
        max_nonedge_inner=inner / scale,
        max_norm_deviation=float(np.max(np.abs(norms - 1.0))),
        regularity=maximal_submatrix_regularity(X, mode=mode, seed=rep.seed, tol=tol),
        orthogonality_threshold=tol.zero_rel_tol,
    )


def build_orthogonal_representation(
    g: Graph,
    r: int,
    seed: int = 0,
    max_retries: int = 10,
    tol: ToleranceProfile = DEFAULT_TOL,
) -> OrthogonalRepresentation:
    """Construct a general-position orthogonal representation in R^(n-r-1).

    Attempt ``k`` uses seed ``seed + k``; the first attempt whose vectors pass
    :func:`check_representation` is returned.
    """
    _check_preconditions(g, r)
    dim = g.n - r - 1
    mode = choose_mode(g.n, dim)
    last = None
    for attempt in range(max_retries + 1):
        s = seed + attempt
        X = _sequential_vectors(g, dim, make_rng(s, stream=1))
        rep = OrthogonalRepresentation(g, r, X, s, retries_used=attempt)
        last = check_representation(rep, tol, mode)
        if last.passed:
            rep.seed = seed
            return rep
    raise RepresentationError(
        f"independence check failed after {max_retries} retries; worst subset "
        f"{list(last.regularity.worst_subset)} has sigma ratio {last.regularity.worst_ratio:.3g}"
    )

