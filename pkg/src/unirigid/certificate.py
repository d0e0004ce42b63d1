"""Rigidity certificates: the stored matrices, their verification and JSON form.

Verification only looks at the stored matrices, never at how they were
produced, so any certificate in the documented JSON layout can be checked.
A failed check means the certificate is invalid; it says nothing about
whether the framework itself is universally rigid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import jsonschema
import numpy as np

from .errors import CertificateFormatError
from .graph import Graph
from .numeric import (
    DEFAULT_TOL,
    RegularityReport,
    ToleranceProfile,
    choose_mode,
    maximal_submatrix_regularity,
    numeric_rank,
    symmetric_eigen_bounds,
)

VERSION = "1"
MATRIX_FIELDS = ("X", "Z", "P", "Omega")


@dataclass
class RigidityCertificate:
    g: Graph
    r: int
    seed: int
    X: np.ndarray
    xi: np.ndarray
    Z: np.ndarray
    P: np.ndarray
    Omega: np.ndarray
    tolerances: ToleranceProfile = DEFAULT_TOL
    retries_used: int = 0
    version: str = VERSION
    report: "VerificationReport | None" = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.g.n

    def stress(self) -> dict[tuple[int, int], float]:
        """Edge weights ``w_ij = -Omega_ij``."""
        return {(i, j): -float(self.Omega[i - 1, j - 1]) for i, j in self.g.sorted_edges()}


@dataclass
class Check:
    name: str
    value: float
    threshold: float
    passed: bool

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name:<20} value={self.value:.3e} threshold={self.threshold:.3e}"


@dataclass
class VerificationReport:
    checks: list[Check]
    mode: str
    regularity: RegularityReport | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def summary(self) -> str:
        lines = [c.line() for c in self.checks]
        lines.append(f"general position checked in {self.mode} mode")
        lines.append("certificate valid" if self.passed else "certificate invalid")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "mode": self.mode,
            "checks": [
                {"name": c.name, "value": c.value, "threshold": c.threshold, "passed": c.passed}
                for c in self.checks
            ],
        }


def _check_shapes(cert: RigidityCertificate):
    n, r = cert.n, cert.r
    d = n - r - 1
    expected = {"X": (n, d), "Z": (n, d), "P": (n, r), "Omega": (n, n), "xi": (n,)}
    for name, shape in expected.items():
        got = np.shape(getattr(cert, name))
        if got != shape:
            raise ValueError(f"{name} has shape {got}, expected {shape}")
    if not (1 <= r <= n - 2):
        raise ValueError(f"r = {r} outside 1..n-2")


def _maxabs(a) -> float:
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0 else (0.0 if num == 0 else np.inf)


def equilibrium_residual(g: Graph, P, Omega) -> float:
    """Worst per-node force imbalance ``|sum_j w_ij (p_i - p_j)|`` with ``w_ij = -Omega_ij``
    over edges, divided by ``max|Omega| * max|p_i|``."""
    P = np.asarray(P, dtype=float)
    Omega = np.asarray(Omega, dtype=float)
    if P.shape[0] != g.n or Omega.shape != (g.n, g.n):
        raise ValueError("shape mismatch between graph, configuration and stress matrix")
    worst = 0.0
    for i in g.nodes:
        force = np.zeros(P.shape[1])
        for j in g.neighbors(i):
            force += -Omega[i - 1, j - 1] * (P[i - 1] - P[j - 1])
        worst = max(worst, float(np.linalg.norm(force)))
    scale = _maxabs(Omega) * float(np.max(np.linalg.norm(P, axis=1)))
    return _ratio(worst, scale)


def verify_certificate(
    cert: RigidityCertificate, mode: str | None = None, seed: int = 0
) -> VerificationReport:
    """Run every check on the stored matrices.

    ``mode`` selects how general position is scanned; ``None`` means
    exhaustive when C(n, n-r-1) is within the cap, sampled otherwise.
    """
    _check_shapes(cert)
    tol = cert.tolerances
    g, n, r = cert.g, cert.n, cert.r
    Om = np.asarray(cert.Omega, dtype=float)
    P = np.asarray(cert.P, dtype=float)
    Z = np.asarray(cert.Z, dtype=float)
    X = np.asarray(cert.X, dtype=float)
    xi = np.asarray(cert.xi, dtype=float)
    for name, a in (("Omega", Om), ("P", P), ("Z", Z), ("X", X), ("xi", xi)):
        if not np.all(np.isfinite(a)):
            raise ValueError(f"{name} has non-finite entries")

    om_scale = _maxabs(Om)
    p_scale = _maxabs(P)
    z_scale = _maxabs(Z)
    e = np.ones(n)
    checks = []

    def add(name, value, threshold, passed=None):
        if passed is None:
            passed = value <= threshold
        checks.append(Check(name, float(value), float(threshold), bool(passed)))

    add("symmetry", _ratio(_maxabs(Om - Om.T), om_scale), tol.zero_rel_tol)

    nonedge = max((abs(Om[i - 1, j - 1]) for i, j in g.non_edges()), default=0.0)
    nonedge = max(nonedge, max((abs(Om[j - 1, i - 1]) for i, j in g.non_edges()), default=0.0))
    add("zero_pattern", _ratio(nonedge, om_scale), tol.zero_rel_tol)

    add("kernel_e", _ratio(_maxabs(Om @ e), n * om_scale), tol.zero_rel_tol)
    add("kernel_P", _ratio(_maxabs(Om @ P), n * om_scale * p_scale), tol.zero_rel_tol)

    diag_err = 0.0
    for i in g.nodes:
        weight_sum = sum(-Om[i - 1, k - 1] for k in g.neighbors(i))
        diag_err = max(diag_err, abs(Om[i - 1, i - 1] - weight_sum))
    add("diagonal", _ratio(diag_err, n * om_scale), tol.zero_rel_tol)

    lo, hi = symmetric_eigen_bounds(Om)
    psd_value = _ratio(lo, max(abs(lo), abs(hi)))
    add("psd", psd_value, -tol.psd_rel_tol, passed=psd_value >= -tol.psd_rel_tol)

    rank = numeric_rank(Om, tol)
    add("rank", rank, n - r - 1, passed=rank == n - r - 1)

    mode = mode or choose_mode(n, n - r - 1)
    reg = maximal_submatrix_regularity(Z, mode=mode, seed=seed, tol=tol)
    add("general_position", reg.worst_ratio, reg.threshold, passed=reg.passed)

    add("gale_kernel_e", _ratio(_maxabs(Z.T @ e), n * z_scale), tol.zero_rel_tol)
    add("gale_kernel_P", _ratio(_maxabs(Z.T @ P), n * z_scale * p_scale), tol.zero_rel_tol)
    add("gale_scaling", _ratio(_maxabs(Z - xi[:, None] * X), z_scale), tol.zero_rel_tol)
    xi_big = _maxabs(xi)
    xi_value = _ratio(float(np.min(np.abs(xi))), xi_big)
    add("xi_nonzero", xi_value, tol.xi_min_rel, passed=xi_value >= tol.xi_min_rel)

    add("equilibrium", equilibrium_residual(g, P, Om), tol.zero_rel_tol)
    return VerificationReport(checks, mode, reg)


# -- serialization ---------------------------------------------------------

_MATRIX_SCHEMA = {
    "type": "object",
    "required": ["rows", "cols", "data"],
    "properties": {
        "rows": {"type": "integer", "minimum": 0},
        "cols": {"type": "integer", "minimum": 0},
        "data": {"type": "array", "items": {"type": "number"}},
    },
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["version", "n", "r", "seed", "edges", "tolerances", "xi", *MATRIX_FIELDS],
    "properties": {
        "version": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "r": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "retries_used": {"type": "integer", "minimum": 0},
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer"},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "tolerances": {
            "type": "object",
            "required": ["rank_rel_tol", "zero_rel_tol", "psd_rel_tol", "xi_min_rel"],
            "properties": {
                k: {"type": "number"}
                for k in ("rank_rel_tol", "zero_rel_tol", "psd_rel_tol", "xi_min_rel")
            },
            "additionalProperties": False,
        },
        "xi": {"type": "array", "items": {"type": "number"}},
        **{name: _MATRIX_SCHEMA for name in MATRIX_FIELDS},
    },
}


def _matrix_obj(a) -> dict:
    a = np.asarray(a, dtype=float)
    return {"rows": a.shape[0], "cols": a.shape[1], "data": [float(x) for x in a.ravel()]}


def certificate_to_dict(cert: RigidityCertificate) -> dict:
    obj = {
        "version": cert.version,
        "n": cert.n,
        "r": cert.r,
        "seed": cert.seed,
        "retries_used": cert.retries_used,
        "edges": [list(e) for e in cert.g.sorted_edges()],
        "tolerances": cert.tolerances.as_dict(),
        "xi": [float(x) for x in np.asarray(cert.xi).ravel()],
    }
    for name in MATRIX_FIELDS:
        obj[name] = _matrix_obj(getattr(cert, name))
    return obj


def serialize(cert: RigidityCertificate) -> str:
    """JSON text with fixed key order; floats use Python's shortest round-trip repr."""
    try:
        return json.dumps(certificate_to_dict(cert), indent=2, allow_nan=False) + "\n"
    except ValueError as exc:
        raise CertificateFormatError(f"non-finite number in certificate: {exc}") from None


def _reject_constant(token):
    raise CertificateFormatError(f"non-finite number {token!r} is not allowed")


def _field_name(err: jsonschema.ValidationError) -> str:
    if err.validator == "required":
        return err.message.split("'")[1]
    return "/".join(str(p) for p in err.absolute_path) or "<root>"


def deserialize(text: str) -> RigidityCertificate:
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"invalid JSON: {exc}") from None
    try:
        jsonschema.validate(obj, CERTIFICATE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise CertificateFormatError(f"schema violation at {_field_name(exc)}: {exc.message}") from None
    if obj["version"] != VERSION:
        raise CertificateFormatError(f"unsupported version {obj['version']!r}, expected {VERSION!r}")

    mats = {}
    for name in MATRIX_FIELDS:
        m = obj[name]
        if len(m["data"]) != m["rows"] * m["cols"]:
            raise CertificateFormatError(
                f"schema violation at {name}: {len(m['data'])} entries for {m['rows']}x{m['cols']}"
            )
        mats[name] = np.array(m["data"], dtype=float).reshape(m["rows"], m["cols"])
    try:
        g = Graph.from_edges(obj["n"], [tuple(e) for e in obj["edges"]])
        tolerances = ToleranceProfile(**obj["tolerances"])
    except ValueError as exc:
        raise CertificateFormatError(f"schema violation: {exc}") from None
    cert = RigidityCertificate(
        g=g,
        r=obj["r"],
        seed=obj["seed"],
        xi=np.array(obj["xi"], dtype=float),
        tolerances=tolerances,
        retries_used=obj.get("retries_used", 0),
        version=obj["version"],
        **mats,
    )
    try:
        _check_shapes(cert)
    except ValueError as exc:
        raise CertificateFormatError(f"schema violation: {exc}") from None
    return cert
