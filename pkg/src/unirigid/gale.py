"""From an orthogonal representation to a universally rigid framework.

Given the representation matrix ``X`` (n x d, d = n-r-1):

* ``xi`` is a vector with ``X.T @ xi = 0`` and no zero entries,
* ``Z = diag(xi) @ X`` is a Gale matrix (its columns sum to zero),
* the configuration ``P`` spans the null space of ``[Z.T; e.T]``,
* ``Omega = Z @ Z.T`` is a PSD stress matrix of rank d for ``(G, P)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .certificate import RigidityCertificate, verify_certificate
from .errors import ConnectivityError, ConstructionError, GaleError, RigidityError
from .graph import Graph, min_separator, vertex_connectivity
from .numeric import (
    DEFAULT_TOL,
    RegularityReport,
    ToleranceProfile,
    choose_mode,
    make_rng,
    maximal_submatrix_regularity,
    null_space_basis,
)
from .ortho import build_orthogonal_representation

MAX_REDRAWS = 100


@dataclass
class GaleData:
    xi: np.ndarray
    Z: np.ndarray


@dataclass
class Configuration:
    P: np.ndarray  # n x r, row i-1 is the point of node i

    @property
    def n(self) -> int:
        return self.P.shape[0]

    @property
    def r(self) -> int:
        return self.P.shape[1]


def nonzero_null_vector(
    X, seed: int = 0, tol: ToleranceProfile = DEFAULT_TOL
) -> np.ndarray:
    """A vector ``xi`` with ``X.T @ xi = 0`` and every entry bounded away from zero.

    A random combination of a null-space basis of ``X.T`` avoids each
    coordinate hyperplane with probability one; draws with an entry below
    ``xi_min_rel * max|xi|`` are rejected. The result is scaled so that its
    largest-magnitude entry equals 1.
    """
    X = np.asarray(X, dtype=float)
    n, d = X.shape
    N = null_space_basis(X.T, tol)
    if N.shape[1] != n - d:
        raise GaleError(
            f"null space of X^T has dimension {N.shape[1]}, expected {n - d}; "
            "X is rank deficient"
        )
    sigma = np.linalg.norm(X, 2)
    rng = make_rng(seed, stream=2)
    for _ in range(MAX_REDRAWS):
        xi = N @ rng.standard_normal(N.shape[1])
        big = int(np.argmax(np.abs(xi)))
        if xi[big] == 0.0:
            continue
        xi = xi / xi[big]
        if np.min(np.abs(xi)) < tol.xi_min_rel:
            continue
        if np.linalg.norm(X.T @ xi) > tol.rank_rel_tol * sigma * np.sqrt(n):
            raise GaleError("null vector residual too large")
        return xi
    raise GaleError(f"no null vector with all entries nonzero after {MAX_REDRAWS} draws")


def _column_sum_ok(Z, tol):
    n = Z.shape[0]
    scale = np.max(np.abs(Z))
    return np.max(np.abs(Z.sum(axis=0))) <= tol.zero_rel_tol * n * scale


def gale_from_representation(X, xi, tol: ToleranceProfile = DEFAULT_TOL) -> GaleData:
    X = np.asarray(X, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (X.shape[0],):
        raise GaleError(f"xi has shape {xi.shape}, expected ({X.shape[0]},)")
    big = np.max(np.abs(xi))
    if big == 0.0 or np.min(np.abs(xi)) < tol.xi_min_rel * big:
        raise GaleError("xi has a zero entry")
    Z = xi[:, None] * X
    if not _column_sum_ok(Z, tol):
        raise GaleError("columns of Z do not sum to zero; xi is not a null vector of X^T")
    return GaleData(xi, Z)


def configuration_from_gale(gd: GaleData, tol: ToleranceProfile = DEFAULT_TOL) -> Configuration:
    Z = np.asarray(gd.Z, dtype=float)
    n, d = Z.shape
    r = n - d - 1
    stack = np.vstack([Z.T, np.ones((1, n))])
    P = null_space_basis(stack, tol)
    if P.shape[1] != r:
        raise GaleError(f"null space of [Z^T; e^T] has dimension {P.shape[1]}, expected {r}")
    return Configuration(P)


def stress_from_gale(gd: GaleData) -> np.ndarray:
    Z = np.asarray(gd.Z, dtype=float)
    return Z @ Z.T


def gale_matrix(P, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """A Gale matrix of an arbitrary r-dimensional configuration."""
    P = np.asarray(P, dtype=float)
    n, r = P.shape
    Z = null_space_basis(np.vstack([P.T, np.ones((1, n))]), tol)
    if Z.shape[1] != n - r - 1:
        raise GaleError("configuration is not r-dimensional")
    return Z


def affine_general_position(
    P, tol: ToleranceProfile = DEFAULT_TOL, mode: str | None = None, seed: int = 0
) -> RegularityReport:
    """Check that every r+1 points are affinely independent via homogeneous coordinates."""
    P = np.asarray(P, dtype=float)
    H = np.hstack([P, np.ones((P.shape[0], 1))])
    mode = mode or choose_mode(*H.shape)
    return maximal_submatrix_regularity(H, mode=mode, seed=seed, tol=tol)


def construct_universally_rigid_framework(
    g: Graph,
    r: int,
    seed: int = 0,
    max_retries: int = 10,
    tol: ToleranceProfile = DEFAULT_TOL,
    mode: str | None = None,
) -> RigidityCertificate:
    """Build and self-verify a universally rigid general-position framework of ``g`` in R^r."""
    if not (1 <= r <= g.n - 2):
        raise ValueError(f"need 1 <= r <= n-2 = {g.n - 2}, got r = {r}")
    if max_retries < 0:
        raise ValueError("max_retries must be non-negative")
    if g.is_complete():
        raise ValueError("graph is complete; a bar framework needs at least one non-edge")
    kappa = vertex_connectivity(g)
    if kappa < r + 1:
        raise ConnectivityError(kappa, r + 1, min_separator(g))

    def stage(name, fn, *args):
        try:
            return fn(*args)
        except RigidityError as exc:
            raise ConstructionError(name, exc) from exc

    # A draw can pass every upstream check yet still leave Omega's smallest
    # nonzero eigenvalue under the rank threshold (it scales like min xi^2),
    # so a failed self-verification moves on to the next seed as well.
    current, failed = seed, []
    while current - seed <= max_retries:
        rep = stage(
            "orthogonal_representation",
            build_orthogonal_representation,
            g, r, current, max_retries - (current - seed), tol,
        )
        current += rep.retries_used
        xi = stage("nonzero_null_vector", nonzero_null_vector, rep.X, current, tol)
        gd = stage("gale_from_representation", gale_from_representation, rep.X, xi, tol)
        conf = stage("configuration_from_gale", configuration_from_gale, gd, tol)
        cert = RigidityCertificate(
            g=g,
            r=r,
            seed=seed,
            X=rep.X,
            xi=gd.xi,
            Z=gd.Z,
            P=conf.P,
            Omega=stress_from_gale(gd),
            tolerances=tol,
            retries_used=current - seed,
        )
        report = verify_certificate(cert, mode=mode)
        if report.passed:
            cert.report = report
            return cert
        failed = report.failed()
        current += 1
    raise ConstructionError(
        "verify_certificate",
        GaleError(f"failed checks after {max_retries} retries: {', '.join(failed)}"),
    )
