"""Exit criteria. Each test prints one PASS/FAIL line and then asserts."""

import json
import math
import time

import numpy as np
import pytest
from conftest import kernel_families, test_signals

from gensinc import CoeffSeq, GeneralizedSinc, QuadratureSpec, eval_sinc_F, eval_sinc_F_spectral
from gensinc.cli import run
from gensinc.grid import parse_grid
from gensinc.noise import NoiseModel, run_noise_study
from gensinc.sampling import parseval_check
from gensinc.smoothness import Verdict, classify, nu2_lower_bound
from gensinc.kernel import inner_products_shifted
from gensinc.truncation import bound_slope, run_truncation_study

pytestmark = pytest.mark.acceptance

PI = math.pi
NOISE_GRID = "-4pi:4pi:pi/4"


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail, elapsed):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail} ({elapsed:.2f} s)")
    return emit


def kernels():
    return {name: GeneralizedSinc(b) for name, b in kernel_families().items()}


def test_1_dual_route(report):
    start = time.perf_counter()
    t = parse_grid("-20pi:20pi:pi/64")
    gaps = {name: float(np.abs(eval_sinc_F(k, t) - eval_sinc_F_spectral(k, t)).max())
            for name, k in kernels().items()}
    elapsed = time.perf_counter() - start
    ok = t.size == 2561 and max(gaps.values()) < 1e-10 and elapsed < 5
    report("1 dual-route identity", ok, f"max gap {max(gaps.values()):.2e} < 1e-10 on {t.size} points", elapsed)
    assert t.size == 2561
    assert max(gaps.values()) < 1e-10, gaps
    assert elapsed < 5


def test_2_cardinality(report):
    start = time.perf_counter()
    k_idx = np.arange(-100, 101)
    worst = 0.0
    for k in kernels().values():
        vals = eval_sinc_F(k, k_idx * PI)
        vals[k_idx == 0] -= k.F1
        worst = max(worst, float(np.abs(vals).max()))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-12
    report("2 cardinality", ok, f"max |sinc_F(k pi) - F(1) delta| = {worst:.2e} < 1e-12", elapsed)
    assert ok


def test_3_orthogonality(report):
    start = time.perf_counter()
    worst_rel, worst_tail = 0.0, 0.0
    for k in kernels().values():
        target = PI * k.l2 ** 2
        tol = 1e-3 * target
        for ip in inner_products_shifted(k, range(-5, 6), QuadratureSpec(tol=tol)):
            expected = target if ip.shift == 0 else 0.0
            worst_rel = max(worst_rel, abs(ip.value - expected) / target)
            worst_tail = max(worst_tail, ip.tail_bound / target)
    elapsed = time.perf_counter() - start
    ok = worst_rel < 1e-3 and worst_tail <= 0.5e-3 and elapsed < 60
    report("3 orthogonality", ok,
           f"max rel deviation {worst_rel:.2e} < 1e-3, certified tail <= {worst_tail:.1e}", elapsed)
    assert worst_rel < 1e-3
    assert worst_tail <= 0.5e-3
    assert elapsed < 60


def test_4_parseval(report):
    start = time.perf_counter()
    gaps = {name: parseval_check(sig, rtol=1e-3).rel_gap for name, sig in test_signals().items()}
    elapsed = time.perf_counter() - start
    ok = max(gaps.values()) < 1e-3 and elapsed < 60
    report("4 Parseval", ok, ", ".join(f"{n} {g:.2e}" for n, g in gaps.items()), elapsed)
    assert max(gaps.values()) < 1e-3, gaps
    assert elapsed < 60


def test_5_truncation(report):
    start = time.perf_counter()
    holds, slopes = {}, {}
    for name, sig in test_signals().items():
        study = run_truncation_study(sig, range(1, 33))
        holds[name] = study.all_hold
        slopes[name] = bound_slope(sig, range(8, 33))
    elapsed = time.perf_counter() - start
    slope_ok = all(-0.55 <= s <= -0.45 for s in slopes.values())
    ok = all(holds.values()) and slope_ok and elapsed < 120
    detail = "bound holds n=1..32: " + ", ".join(f"{n}={h}" for n, h in holds.items())
    detail += "; slopes " + ", ".join(f"{s:.3f}" for s in slopes.values())
    report("5 truncation bound", ok, detail, elapsed)
    assert all(holds.values()), holds
    assert slope_ok, slopes
    assert elapsed < 120


def _noise_verdicts(sig, dist):
    study = run_noise_study(sig, NoiseModel(0.1, dist, seed=2024), 10_000, parse_grid(NOISE_GRID))
    rows = study.rows
    return {
        "points": len(rows),
        "var_close": all(r.var_close(0.1) for r in rows),
        "var_bounded": all(r.var_bounded for r in rows),
        "mean_inside": sum(r.mean_ok for r in rows),
    }


def test_6_noise(report):
    start = time.perf_counter()
    results = {(name, dist): _noise_verdicts(sig, dist)
               for name, sig in test_signals().items() for dist in ("gaussian", "uniform_centered")}
    elapsed = time.perf_counter() - start

    def good(v):
        return v["points"] == 33 and v["var_close"] and v["var_bounded"] and v["mean_inside"] >= 32

    ok = all(good(v) for v in results.values()) and elapsed < 120
    worst = min(v["mean_inside"] for v in results.values())
    report("6 noise study", ok,
           f"{len(results)} runs, variance within 10% and bounded, mean in band at >= {worst}/33", elapsed)
    for key, v in results.items():
        assert good(v), (key, v)
    assert elapsed < 120


def test_7_smoothness(report):
    start = time.perf_counter()
    checks = []
    for a in (0.5, 0.9):
        b = CoeffSeq.geometric(a, 64)
        checks += [classify(b, s) is Verdict.CONVERGES for s in (1, 10, 100)]
        checks.append(nu2_lower_bound(b) == math.inf)
    p3 = CoeffSeq.power_law(3, 64)
    checks += [classify(p3, 2.4) is Verdict.CONVERGES, classify(p3, 2.6) is Verdict.DIVERGES,
               nu2_lower_bound(p3) == 2.5]
    elapsed = time.perf_counter() - start
    ok = all(checks)
    report("7 smoothness fixtures", ok, f"{sum(checks)}/{len(checks)} fixture checks", elapsed)
    assert ok


def test_8_determinism(report, tmp_path):
    start = time.perf_counter()
    sig = test_signals()["gaussian_cosine"]
    path = tmp_path / "signal.json"
    path.write_text(json.dumps(sig.to_json()))
    outputs = []
    for i, workers in enumerate((1, 1, 4)):
        out = tmp_path / f"run{i}.csv"
        code = run(["noise", "--signal", str(path), "--sigma", "0.1", "--trials", "10000", "--seed", "2024",
                    "--grid", NOISE_GRID, "--workers", str(workers), "--out", str(out)])
        assert code == 0
        outputs.append(out.read_bytes())
    elapsed = time.perf_counter() - start
    ok = outputs[0] == outputs[1] == outputs[2]
    report("8 determinism", ok, "byte-identical noise CSV across repeat and 1 vs 4 workers", elapsed)
    assert ok
