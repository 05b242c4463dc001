"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report.
"""

import io
import json
import math
from contextlib import redirect_stdout
from fractions import Fraction

import numpy as np
import pytest

from bhforms import (
    HomogeneousPolynomial,
    MultiIndex,
    Restriction,
    SearchConfig,
    a_family,
    bh_exponent,
    brute_force_norm_real,
    diagonal_polynomial,
    disjointify,
    exact_norm_real,
    interpolation_bound,
    ksz_scaling_experiment,
    lift_polynomial,
    littlewood_s2,
    lp_sum,
    maximize_ratio,
    poly_lower_bound,
    r_family,
    random_sparse,
    restricted_sum,
    s_family,
    theorem_upper_bound,
)
from bhforms.cli import run as cli_run
from bhforms.verify import make_corpus


def report(num, name, ok):
    print(f"ACCEPTANCE {num:2d} [{'PASS' if ok else 'FAIL'}] {name}")
    assert ok, f"acceptance criterion {num} ({name}) failed"


def test_criterion_01_s_family_exactness():
    ok = True
    for m in (2, 3, 4, 5):
        S = s_family(m)
        norm = exact_norm_real(S)
        ok &= norm.value == 2 ** (m - 1)  # integer-exact, zero tolerance
        s = lp_sum(S.coeffs.values(), bh_exponent(m))
        expected_sum = 2 ** ((m - 1) * (m + 1) / m)
        ok &= abs(s - expected_sum) <= 1e-9 * expected_sum
        ratio = s / norm.value
        ok &= abs(ratio - 2 ** ((m - 1) / m)) <= 1e-9 * 2 ** ((m - 1) / m)
    report(1, "inductive family: norms, critical sums, ratios (m=2..5)", ok)


def test_criterion_02_r_a_families():
    ok = True
    for m in (2, 4, 6):
        R = r_family(m)
        ok &= exact_norm_real(R).value == 2 ** (m // 2)
        ok &= len(R.coeffs) == 4 ** (m // 2)
        ratio = lp_sum(R.coeffs.values(), bh_exponent(m)) / 2 ** (m // 2)
        ok &= abs(ratio - math.sqrt(2)) <= 1e-9 * math.sqrt(2)
    for m in (3, 5):
        A = a_family(m)
        ok &= exact_norm_real(A).value == 2 ** ((m - 1) // 2)
        ok &= len(A.coeffs) == 4 ** ((m - 1) // 2)
        expected = 2 ** ((m - 1) / (2 * m))
        ratio = lp_sum(A.coeffs.values(), bh_exponent(m)) / 2 ** ((m - 1) // 2)
        ok &= abs(ratio - expected) <= 1e-9 * expected
    report(2, "even/odd product families: norms, counts, ratios", ok)


def test_criterion_03_littlewood_sharp_witness():
    S2 = littlewood_s2()
    ratio = lp_sum(S2.coeffs.values(), 4 / 3) / exact_norm_real(S2).value
    ok = abs(ratio - math.sqrt(2)) <= 1e-9 * math.sqrt(2)
    report(3, "bilinear 4/3-sum witness attains sqrt(2)", ok)


def test_criterion_04_oracle_equivalence():
    ok = True
    for T in make_corpus(100, 3, 3, seed=1001):
        a = exact_norm_real(T).value
        b = brute_force_norm_real(T)
        if T.is_integer():
            ok &= a == b
        else:
            ok &= abs(a - b) <= 1e-9 * max(1.0, abs(b))
    report(4, "elimination norm equals brute-force oracle on 100 random forms", ok)


def test_criterion_05_khinchin_lemma_suite():
    violations = sum(
        1
        for T in make_corpus(200, 3, 3, seed=2002)
        if lp_sum(T.coeffs.values(), 2) > exact_norm_real(T).value * (1 + 1e-9)
    )
    report(5, "l2 coefficient sum below exact norm on 200 random forms",
           violations == 0)


def test_criterion_06_interpolation_suite():
    ok = True
    for m in range(1, 13):
        for M in range(1, m + 1):
            theta = Fraction(M, m)
            lhs = theta * Fraction(M + 1, 2 * M) + (1 - theta) * Fraction(1, 2)
            ok &= lhs == Fraction(m + 1, 2 * m)
    rng = np.random.default_rng(np.random.SeedSequence(3003))
    for _ in range(1000):
        size = int(rng.integers(1, 201))
        vec = 10.0 ** rng.uniform(-8, 8, size=size) * (
            rng.integers(0, 2, size) * 2 - 1
        )
        _, holds = interpolation_bound(
            vec, float(rng.uniform(1, 4)), float(rng.uniform(1, 4)),
            float(rng.random()),
        )
        ok &= holds
    report(6, "exponent algebra exact for m<=12; bound holds on 1000 vectors", ok)


def test_criterion_07_theorem_upper_bound_corpus():
    corpus = [(s_family(m), 3) for m in (3, 4, 5)]
    corpus += [(r_family(m), 2) for m in (2, 4, 6)]
    corpus += [(a_family(m), 2) for m in (3, 5)]
    children = np.random.SeedSequence(4004).spawn(100)
    for i, child in enumerate(children):
        m, M = (3, 2) if i % 2 == 0 else (4, 3)
        dims = (3, 3, 3) if m == 3 else (2, 2, 2, 2)
        seed = int(child.generate_state(1)[0])
        dist = ("pm1", "uniform", "gaussian")[i % 3]
        try:
            T = random_sparse(m, dims, 0.8, coeff_dist=dist, seed=seed)
        except ValueError:
            T = random_sparse(m, dims, 1.0, coeff_dist="pm1", seed=seed)
        corpus.append((T, M))
    violations = 0
    for T, M in corpus:
        ratio = restricted_sum(T, M, bh_exponent(T.m)) / exact_norm_real(T).value
        if ratio > theorem_upper_bound(T.m, M) * (1 + 1e-12):
            violations += 1
    report(7, "restricted ratios below the proved upper bound (corpus)",
           violations == 0)


def test_criterion_08_symmetrization_chain():
    ok = True
    for T in make_corpus(50, 3, 3, seed=5005):
        T1, _ = disjointify(T)
        ok &= sorted(T1.coeffs.values()) == sorted(T.coeffs.values())
        n_t, n_t1 = exact_norm_real(T).value, exact_norm_real(T1).value
        if T.is_integer():
            ok &= n_t == n_t1
        else:
            ok &= abs(n_t - n_t1) <= 1e-9 * max(1.0, n_t)
        P = diagonal_polynomial(T1)
        p = bh_exponent(T.m)
        a, b = lp_sum(P.coeffs.values(), p), lp_sum(T.coeffs.values(), p)
        ok &= abs(a - b) <= 1e-9 * max(1.0, b)
        ok &= poly_lower_bound(P, seed=11).value <= n_t + 1e-9
    report(8, "disjointification chain on 50 random forms", ok)


def test_criterion_09_lift():
    ok = True
    children = np.random.SeedSequence(6006).spawn(50)
    for i, child in enumerate(children):
        rng = np.random.default_rng(child)
        d = 1 + i % 2
        M = d + 1
        coeffs = {}
        for _ in range(int(rng.integers(1, 5))):
            vars_ = rng.choice(np.arange(2, 7), size=d, replace=False)
            coeffs[MultiIndex.from_pairs([(int(v), 1) for v in vars_])] = float(
                rng.uniform(-2, 2)
            )
        P = HomogeneousPolynomial.build(d, 6, coeffs)
        m = M + int(rng.integers(0, 3))
        L = lift_polynomial(P, m)
        ok &= len(L.coeffs) == len(P.coeffs)
        ok &= sorted(L.coeffs.values()) == sorted(P.coeffs.values())
        ok &= all(alpha.omega <= M for alpha in L.coeffs)
        for _ in range(100):
            x = rng.uniform(-1, 1, size=6)
            ok &= abs(L.evaluate(x)) <= abs(P.evaluate(x)) * (1 + 1e-12) + 1e-15
    report(9, "degree lift: bijection, variable cap, pointwise domination", ok)


def test_criterion_10_ksz_scaling():
    table = ksz_scaling_experiment(2, (4, 8, 16), samples=50, seed=2024)
    slope = table.metadata["slope"]
    report(10, f"random-form norm scaling slope {slope:.3f} in [1.35, 1.65]",
           1.35 <= slope <= 1.65)


def test_criterion_11_search_recovery():
    cfg = SearchConfig(m=2, dims=(2, 2), p=4 / 3, budget=10_000, restarts=4, seed=7)
    _, rep = maximize_ratio(cfg)
    report(11, "sign-flip search recovers the sqrt(2) witness",
           rep.ratio >= math.sqrt(2) - 1e-9)


def test_criterion_12_verify_determinism():
    def run_verify(threads):
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = cli_run(["verify", "--suite", "paper", "--threads", threads,
                            "--deterministic"])
        return code, json.loads(buf.getvalue())

    code1, a = run_verify("1")
    code8, b = run_verify("8")
    ok = code1 == 0 and code8 == 0
    values_a = [(c["name"], c["computed"], c["passed"]) for c in a["checks"]]
    values_b = [(c["name"], c["computed"], c["passed"]) for c in b["checks"]]
    ok &= values_a == values_b
    report(12, "verify suite passes and is thread-count independent", ok)
