"""Acceptance gate: the reference results this package must reproduce.

Each criterion records one machine-readable verdict line in the form
"ACCEPTANCE <n> (<name>): PASS|FAIL"; conftest prints the collected lines
in the terminal summary.  Reference numbers are the published three-decimal
table values; full-precision constants come from independent brute-force
oracles.
"""

import math
import subprocess
import sys
import time

import numpy as np

import acceptance_report
import oracles
from setshaping import (
    McConfig,
    ShapingParameters,
    SourceEnsemble,
    average_info_exact,
    decode,
    empirical_information_content,
    encode,
    encoded_bit_length,
    estimate_average_info,
    estimate_shaped_average_info,
    rank_info_series,
    redundancy_bound_bits,
    shape,
    shaped_average_info_exact,
    shaping_experiment,
    string_rank,
    unshape,
)

# Published reference rows (three-decimal rounding): a -> (source, shaped, diff).
TABLE1_REFERENCE = {
    2: (1.000, 1.377, -0.377),
    3: (2.893, 2.885, 0.009),
    4: (5.296, 5.050, 0.246),
    5: (8.070, 7.708, 0.362),
    6: (11.137, 10.223, 0.915),
    7: (14.448, 13.387, 1.061),
}

# Published reference rows at n=100, k=1; the source values carry the
# original experiment's own sampling error of roughly +-0.005.
TABLE2_REFERENCE = {
    2: (99.275, 99.660, -0.385),
    3: (157.044, 157.034, 0.011),
    4: (197.816, 197.331, 0.485),
    5: (229.279, 228.315, 0.964),
    6: (254.850, 253.436, 1.414),
    7: (276.350, 274.471, 1.880),
    8: (294.869, 292.557, 2.311),
    9: (311.118, 308.371, 2.747),
    10: (325.568, 322.417, 3.151),
}

SERIES_MEAN_X = 14.263
SERIES_MEAN_Y = 14.136


def criterion(num, name):
    """Run the wrapped check list, record the verdict line, then assert."""

    def deco(fn):
        def wrapper():
            failures = []
            try:
                fn(failures)
            except Exception as exc:
                failures.append(f"unexpected error: {exc!r}")
            status = "PASS" if not failures else "FAIL"
            acceptance_report.record(f"ACCEPTANCE {num} ({name}): {status}")
            assert not failures, f"criterion {num} ({name}):\n" + "\n".join(failures)

        wrapper.__name__ = fn.__name__
        wrapper.__doc__ = fn.__doc__
        return wrapper

    return deco


@criterion(1, "table1-exact")
def test_criterion_1_small_grid_exact(failures):
    """Six exact rows (a=2..7, n=a, k=1) within +-0.001 of the reference."""
    start = time.perf_counter()
    for a, (want_x, want_y, want_d) in TABLE1_REFERENCE.items():
        got_x = average_info_exact(SourceEnsemble.uniform(a), a)
        got_y = shaped_average_info_exact(a, a, 1)
        got_d = got_x - got_y
        for label, got, want in (("I(x)", got_x, want_x), ("I(y)", got_y, want_y), ("diff", got_d, want_d)):
            if abs(got - want) > 0.001:
                failures.append(f"a={a} {label}: got {got:.6f}, reference {want}")
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.2f}s, budget 1s")


@criterion(2, "figure1-series")
def test_criterion_2_series_scenario(failures):
    """a=3, n=10, k=1 full enumeration: means, monotonicity, sign change."""
    start = time.perf_counter()
    xs, ys = rank_info_series(3, 10, 1)
    mean_x, mean_y = float(xs.mean()), float(ys.mean())
    if abs(mean_x - SERIES_MEAN_X) > 0.001:
        failures.append(f"mean I(x) {mean_x:.6f} vs {SERIES_MEAN_X}")
    if abs(mean_y - SERIES_MEAN_Y) > 0.001:
        failures.append(f"mean I(y) {mean_y:.6f} vs {SERIES_MEAN_Y}")
    if not np.all(np.diff(xs) >= -1e-12):
        failures.append("I(x) series not non-decreasing")
    if not np.all(np.diff(ys) >= -1e-12):
        failures.append("I(y) series not non-decreasing")
    diff = ys - xs
    if not (float(diff.min()) < 0 < float(diff.max())):
        failures.append("I(y)-I(x) never changes sign")
    elapsed = time.perf_counter() - start
    if elapsed >= 30.0:
        failures.append(f"runtime {elapsed:.2f}s, budget 30s")


@criterion(3, "table2-hybrid")
def test_criterion_3_long_block_table(failures):
    """Exact a=2..5 within +-0.05; MC (M=1e6) all rows within +-0.15 and
    within 3 standard errors of exact where exact exists; diffs increase."""
    start = time.perf_counter()
    n, k, m = 100, 1, 10**6

    exact = {}
    for a in (2, 3, 4, 5):
        x = average_info_exact(SourceEnsemble.uniform(a), n)
        y = shaped_average_info_exact(a, n, k)
        exact[a] = (x, y)
        want_x, want_y, _ = TABLE2_REFERENCE[a]
        if abs(x - want_x) > 0.05:
            failures.append(f"exact a={a} I(x) {x:.6f} vs {want_x}")
        if abs(y - want_y) > 0.05:
            failures.append(f"exact a={a} I(y) {y:.6f} vs {want_y}")

    mc = {}
    for a in range(2, 11):
        cfg = McConfig(alphabet_size=a, n=n, k=k, samples=m, seed=a, threads=2)
        est_x = estimate_average_info(cfg)
        est_y = estimate_shaped_average_info(cfg)
        mc[a] = (est_x, est_y)
        want_x, want_y, _ = TABLE2_REFERENCE[a]
        if abs(est_x.mean - want_x) > 0.15:
            failures.append(f"mc a={a} I(x) {est_x.mean:.6f} vs {want_x}")
        if abs(est_y.mean - want_y) > 0.15:
            failures.append(f"mc a={a} I(y) {est_y.mean:.6f} vs {want_y}")

    for a, (x, y) in exact.items():
        est_x, est_y = mc[a]
        if abs(est_x.mean - x) > 3 * est_x.std_error:
            failures.append(
                f"mc a={a} I(x) off exact by {abs(est_x.mean - x):.5f} > 3*{est_x.std_error:.5f}"
            )
        if abs(est_y.mean - y) > 3 * est_y.std_error:
            failures.append(
                f"mc a={a} I(y) off exact by {abs(est_y.mean - y):.5f} > 3*{est_y.std_error:.5f}"
            )

    diffs = {}
    for a in range(2, 11):
        if a in exact:
            diffs[a] = exact[a][0] - exact[a][1]
        else:
            diffs[a] = mc[a][0].mean - mc[a][1].mean
    for a in range(3, 10):
        if not diffs[a + 1] > diffs[a]:
            failures.append(f"diff not increasing at a={a}->{a + 1}: {diffs[a]:.4f} -> {diffs[a + 1]:.4f}")

    elapsed = time.perf_counter() - start
    if elapsed >= 300.0:
        failures.append(f"runtime {elapsed:.2f}s, budget 300s")


@criterion(4, "bijection-oracle")
def test_criterion_4_bijection_against_enumeration(failures):
    """Grid a in {2,3}, n in 1..6, k in {1,2}: image, order, identity; then
    10^4 random round trips at a=3, n=100, k=1."""
    for a in (2, 3):
        for n in range(1, 7):
            for k in (1, 2):
                params = ShapingParameters(a, n, k)
                inputs = oracles.all_strings_sorted(n, a)
                sorted_y = oracles.all_strings_sorted(n + k, a)
                image = []
                bad = 0
                for x in inputs:
                    y = tuple(shape(list(x), params))
                    image.append(y)
                    if tuple(unshape(list(y), params)) != x:
                        bad += 1
                if bad:
                    failures.append(f"(a={a},n={n},k={k}): {bad} broken round trips")
                if len(set(image)) != a**n:
                    failures.append(f"(a={a},n={n},k={k}): map is not injective")
                if image != sorted_y[: a**n]:
                    failures.append(f"(a={a},n={n},k={k}): image is not the least strings in order")
                max_in = oracles.empirical_info(sorted_y[a**n - 1], a)
                min_out = oracles.empirical_info(sorted_y[a**n], a)
                if max_in > min_out + 1e-12:
                    failures.append(f"(a={a},n={n},k={k}): image info exceeds complement")

    params = ShapingParameters(3, 100, 1)
    rng = np.random.default_rng(1234)
    bad = 0
    for _ in range(10_000):
        x = rng.integers(0, 3, size=100)
        if tuple(unshape(shape(x, params), params)) != tuple(x):
            bad += 1
    if bad:
        failures.append(f"random round trips: {bad}/10000 failed")


@criterion(5, "codec-properties")
def test_criterion_5_codec(failures):
    """Losslessness, the adaptive-model redundancy bound, and experiment
    columns consistent with the criterion-2 series means."""
    # exhaustive short binary strings
    from itertools import product as iproduct

    bad = 0
    for n in range(0, 11):
        for s in iproduct(range(2), repeat=n):
            if decode(encode(s, 2)) != s:
                bad += 1
    if bad:
        failures.append(f"exhaustive binary round trip: {bad} failures")

    # 10^4 random larger blocks across alphabets, with the length bound
    rng = np.random.default_rng(99)
    plans = [(3, 200, 4000), (2, 500, 3000), (5, 300, 3000)]
    bad_trip = bad_bound = 0
    for a, n, count in plans:
        bound = redundancy_bound_bits(n, a)
        strings = rng.integers(0, a, size=(count, n))
        for row in strings:
            blob = encode(row, a)
            if decode(blob) != tuple(int(v) for v in row):
                bad_trip += 1
            excess = encoded_bit_length(blob) - empirical_information_content(row, a)
            if excess > bound:
                bad_bound += 1
    if bad_trip:
        failures.append(f"random round trips: {bad_trip} failures")
    if bad_bound:
        failures.append(f"redundancy bound exceeded on {bad_bound} strings")

    # the experiment's empirical-info columns against the exact series means
    samples = 20_000
    xs, ys = rank_info_series(3, 10, 1)
    report = shaping_experiment(ShapingParameters(3, 10, 1), samples=samples, seed=11)
    tol_x = 4 * float(xs.std()) / math.sqrt(samples)
    tol_y = 4 * float(ys.std()) / math.sqrt(samples)
    if abs(report.mean_emp_info_raw - SERIES_MEAN_X) > tol_x:
        failures.append(
            f"experiment raw info {report.mean_emp_info_raw:.4f} vs {SERIES_MEAN_X} (tol {tol_x:.4f})"
        )
    if abs(report.mean_emp_info_shaped - SERIES_MEAN_Y) > tol_y:
        failures.append(
            f"experiment shaped info {report.mean_emp_info_shaped:.4f} vs {SERIES_MEAN_Y} (tol {tol_y:.4f})"
        )
    # the compressed-size delta is reported, not judged: no reference exists
    if not math.isfinite(report.delta_bits):
        failures.append("compressed delta is not finite")
    acceptance_report.record(
        f"  criterion 5 note: compressed delta at a=3,n=10,k=1 = {report.delta_bits:+.4f} "
        f"bits/block over {samples} samples (reported, no reference value)"
    )


@criterion(6, "determinism")
def test_criterion_6_byte_identical_reruns(failures):
    """Seeded commands repeated, and threads 1 vs 8, are byte-identical."""

    def run(*argv):
        result = subprocess.run(
            [sys.executable, "-m", "setshaping", *argv], capture_output=True
        )
        if result.returncode != 0:
            failures.append(f"{argv}: exit {result.returncode}: {result.stderr[:200]!r}")
        return result.stdout

    table_args = ("table2", "--method", "mc", "-M", "20000", "--seed", "7")
    first = run(*table_args, "--threads", "1")
    again = run(*table_args, "--threads", "1")
    wide = run(*table_args, "--threads", "8")
    if first != again:
        failures.append("table2 rerun differs")
    if first != wide:
        failures.append("table2 --threads 8 differs from --threads 1")

    fig = run("figure1", "-a", "3", "-n", "8")
    fig2 = run("figure1", "-a", "3", "-n", "8")
    if fig != fig2:
        failures.append("figure1 rerun differs")

    codec_args = ("codec-experiment", "-a", "3", "-n", "10", "-M", "300", "--seed", "2")
    if run(*codec_args) != run(*codec_args):
        failures.append("codec-experiment rerun differs")


@criterion(7, "typicality-ratio")
def test_criterion_7_ratio_approaches_block_entropy(failures):
    """Exact I(x)/n at a=2 rises toward 1 bit over n=10,50,100; n=100 value."""
    ratios = {}
    for n in (10, 50, 100):
        ratios[n] = average_info_exact(SourceEnsemble.uniform(2), n) / n
    if not (ratios[10] < ratios[50] < ratios[100] < 1.0):
        failures.append(f"ratios not increasing toward 1: {ratios}")
    value = ratios[100] * 100
    if abs(value - 99.27) > 0.01:
        failures.append(f"I(x) at n=100: {value:.5f} vs 99.27 +- 0.01")
