"""Exit criteria for the package. Each test prints one PASS/FAIL line."""

import copy
import itertools
import time

import numpy as np
import pytest

from conftest import C4_X, C4_XI
from unirigid.certificate import RigidityCertificate, deserialize, serialize, verify_certificate
from unirigid.cli import run
from unirigid.falsifier import equivalence_and_congruence, random_configuration, reflection_counterexample
from unirigid.gale import (
    configuration_from_gale,
    construct_universally_rigid_framework,
    gale_from_representation,
    stress_from_gale,
)
from unirigid.graph import brute_force_connectivity, generate, random_graph, vertex_connectivity
from unirigid.numeric import numeric_rank, symmetric_eigen_bounds

EPS = np.finfo(float).eps


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")

    return emit


def test_criterion_1_k33_end_to_end(tmp_path, report):
    g = generate("complete_bipartite", [3, 3])
    path = tmp_path / "g.txt"
    path.write_text(g.to_text())
    out = tmp_path / "cert.json"

    start = time.perf_counter()
    code = run(["construct", str(path), "--dim", "2", "--seed", "7", "--out", str(out)])
    elapsed = time.perf_counter() - start

    cert = deserialize(out.read_text())
    rep = verify_certificate(cert, mode="exhaustive")
    Om = cert.Omega
    lo, hi = symmetric_eigen_bounds(Om)
    scale = np.max(np.abs(Om))
    nonedges = g.non_edges()
    nonedge_max = max(abs(Om[i - 1, j - 1]) for i, j in nonedges)
    triangles = [t for t in itertools.combinations(g.nodes, 3) if all(g.has_edge(a, b) for a, b in itertools.combinations(t, 2))]
    eq = rep["equilibrium"].value

    ok = (
        code == 0
        and rep.passed
        and numeric_rank(Om) == 3
        and lo >= -1e-9 * hi
        and len(nonedges) == 6
        and nonedge_max < 1e-9 * scale
        and rep.mode == "exhaustive"
        and rep.regularity.subsets_tested == 20
        and eq <= 1e-9
        and not triangles
        and elapsed < 1.0
    )
    report(
        1,
        ok,
        f"K3,3 r=2 rank={numeric_rank(Om)} lmin/lmax={lo / hi:.1e} nonedge={nonedge_max / scale:.1e} "
        f"subsets={rep.regularity.subsets_tested} equilibrium={eq:.1e} triangles={len(triangles)} "
        f"time={elapsed:.2f}s",
    )
    assert ok


def test_criterion_2_circulant_sweep(report):
    start = time.perf_counter()
    runs, passed, low_retry = 0, 0, 0
    for n in range(8, 17):
        for k in (1, 2, 3):
            r = 2 * k - 1
            g = generate("circulant", [n, k])
            for seed in range(5):
                runs += 1
                cert = construct_universally_rigid_framework(g, r, seed=seed)
                passed += verify_certificate(cert).passed
                low_retry += cert.retries_used <= 3
    elapsed = time.perf_counter() - start
    ok = passed == runs and low_retry >= 0.95 * runs and elapsed < 30.0
    report(2, ok, f"{passed}/{runs} verified, retries<=3 in {low_retry}/{runs}, time={elapsed:.1f}s")
    assert ok


def test_criterion_3_connectivity_oracle(report):
    start = time.perf_counter()
    mismatches = []
    for seed in range(200):
        n = 2 + seed % 7
        g = random_graph(n, [0.3, 0.5, 0.7, 0.9][seed % 4], 10_000 + seed)
        if vertex_connectivity(g) != brute_force_connectivity(g):
            mismatches.append(seed)
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 10.0
    report(3, ok, f"200 random graphs n<=8, mismatches={len(mismatches)}, time={elapsed:.2f}s")
    assert ok


def test_criterion_4_c4_worked_example(report):
    g = generate("cycle", [4])
    assert np.allclose(C4_X.T @ C4_XI, 0.0, atol=1e-15)
    gd = gale_from_representation(C4_X, C4_XI)
    conf = configuration_from_gale(gd)
    Om = stress_from_gale(gd)
    cert = RigidityCertificate(g=g, r=1, seed=0, X=C4_X, xi=gd.xi, Z=gd.Z, P=conf.P, Omega=Om)
    rep = verify_certificate(cert)

    p = conf.P[:, 0]
    expected = np.array([-3.0, 1.0, 13.0, -11.0])
    cos = abs(p @ expected) / (np.linalg.norm(p) * np.linalg.norm(expected))
    distinct = len({round(x, 9) for x in p}) == 4
    scale = np.max(np.abs(Om))
    zeros = max(abs(Om[0, 2]), abs(Om[1, 3]))
    ok = rep.passed and distinct and conf.P.shape == (4, 1) and abs(cos - 1) < 1e-12 and zeros <= 4 * EPS * scale
    report(4, ok, f"C4 hand certificate valid={rep.passed} distinct collinear={distinct} |cos(p, (-3,1,13,-11))|={cos:.15f} max(|O13|,|O24|)={zeros:.1e}")
    assert ok


def _graphs_with_connectivity(target, count, seed0):
    out, seed = [], seed0
    while len(out) < count:
        n = 5 + seed % 5
        g = random_graph(n, 0.3 + 0.1 * (seed % 5), seed)
        if vertex_connectivity(g) == target:
            out.append(g)
        seed += 1
    return out


def test_criterion_5_falsifier(report):
    cases = [(generate("path", [n]), 1) for n in range(3, 9)]
    cases += [(g, 1) for g in _graphs_with_connectivity(1, 10, 300)]
    cases += [(g, 2) for g in _graphs_with_connectivity(2, 10, 700)]
    worst_edge, worst_gap, bad = 0.0, np.inf, 0
    for k, (g, r) in enumerate(cases):
        P = random_configuration(g.n, r, k)
        w = reflection_counterexample(g, P, r)
        worst_edge = max(worst_edge, w.max_edge_length_error)
        worst_gap = min(worst_gap, w.congruence_gap)
        bad += equivalence_and_congruence(g, P, w.p_prime) != (True, False)
    ok = worst_edge <= 1e-9 and worst_gap >= 1e-6 and bad == 0
    report(5, ok, f"{len(cases)} witnesses, max edge error={worst_edge:.1e}, min gap={worst_gap:.1e}, wrong verdicts={bad}")
    assert ok


def test_criterion_6_determinism_and_serialization(tmp_path, report):
    g = generate("complete_bipartite", [3, 3])
    path = tmp_path / "g.txt"
    path.write_text(g.to_text())
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["construct", str(path), "--dim", "2", "--seed", "7", "--out", str(a)])
    run(["construct", str(path), "--dim", "2", "--seed", "7", "--out", str(b)])
    identical = a.read_bytes() == b.read_bytes()

    rng = np.random.default_rng(6)
    round_trips = 0
    for _ in range(20):
        n = int(rng.integers(7, 13))
        k = int(rng.integers(1, (n - 2) // 2 + 1))
        r = int(rng.integers(1, 2 * k))
        cert = construct_universally_rigid_framework(generate("circulant", [n, k]), r, seed=int(rng.integers(0, 1000)))
        text = serialize(cert)
        back = deserialize(text)
        same = serialize(back) == text and all(
            np.array_equal(getattr(back, f), getattr(cert, f)) for f in ("X", "Z", "P", "Omega", "xi")
        )
        round_trips += same
    ok = identical and round_trips == 20
    report(6, ok, f"byte-identical reruns={identical}, exact round trips={round_trips}/20")
    assert ok


# Failure sets below follow from which identities each injection disturbs:
# a non-edge bump changes row sums and opens a negative direction in the
# kernel; a diagonal shift breaks Omega e = 0 and hence the diagonal rule;
# zeroing a Gale row breaks the column sums and Z = diag(xi) X.
INJECTIONS = {
    "non-edge entry": (
        "zero_pattern",
        {"zero_pattern", "kernel_e", "kernel_P", "psd", "rank"},
    ),
    "negative eigenvalue shift": (
        "psd",
        {"kernel_e", "kernel_P", "diagonal", "psd", "rank"},
    ),
    "rank inflation": (
        "rank",
        {"kernel_e", "kernel_P", "diagonal", "rank"},
    ),
    "Z row zeroed": (
        "general_position",
        {"general_position", "gale_kernel_e", "gale_kernel_P", "gale_scaling"},
    ),
}


def _inject(cert, name):
    c = copy.deepcopy(cert)
    scale = np.max(np.abs(c.Omega))
    _, hi = symmetric_eigen_bounds(c.Omega)
    if name == "non-edge entry":
        c.Omega[0, 1] += 0.1 * scale
        c.Omega[1, 0] += 0.1 * scale
    elif name == "negative eigenvalue shift":
        c.Omega = c.Omega - 0.5 * hi * np.eye(c.n)
    elif name == "rank inflation":
        c.Omega = c.Omega + 1e-3 * hi * np.eye(c.n)
    elif name == "Z row zeroed":
        c.Z[2] = 0.0
    return c


@pytest.mark.parametrize("name", list(INJECTIONS))
def test_criterion_7_negative_controls(name, report, k33_cert):
    assert not k33_cert.g.has_edge(1, 2)
    baseline = verify_certificate(k33_cert)
    target, expected = INJECTIONS[name]
    failed = set(verify_certificate(_inject(k33_cert, name)).failed())
    ok = baseline.passed and target in failed and failed == expected
    report(7, ok, f"{name}: target {target} failed={target in failed}, failed set={sorted(failed)}")
    assert ok
