"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line
(run with ``pytest -s tests/test_acceptance.py`` to see them live)."""
import time
from contextlib import contextmanager
from dataclasses import replace

import numpy as np
import pytest

from relaysec.channel import GaussianRelayParams, classify
from relaysec.gaussian import derived, inner_caps, outer_caps, param_map, secrecy_capacity_gauss
from relaysec.info import JointDist, build_joint, delta_gap, mutual_info, zeta
from relaysec.regions import (
    Family,
    OptBudget,
    enumerate_vertices,
    evaluate_bounds,
    scalarize_max,
)
from relaysec.sim import (
    Rates,
    SimConfig,
    draw_messages,
    equivocation_exact,
    equivocation_plugin_bound,
    generate_codebook,
    monte_carlo,
    run_blocks,
)

from helpers import (
    bsc,
    channel_from_factors,
    compose_degraded,
    compose_reversely_degraded,
    noiseless_y_blind_z,
    random_aux,
    random_channel,
    random_kernel,
    uniform_aux,
)


@contextmanager
def criterion(num: int, desc: str, limit_s: float):
    t0 = time.perf_counter()
    try:
        yield
    except Exception:
        print(f"\nACCEPTANCE {num}: FAIL ({time.perf_counter() - t0:.1f}s) {desc}")
        raise
    dt = time.perf_counter() - t0
    print(f"\nACCEPTANCE {num}: PASS ({dt:.1f}s) {desc}")
    assert dt < limit_s, f"runtime {dt:.1f}s exceeds {limit_s}s"


def h2(p):
    return -p * np.log2(p) - (1 - p) * np.log2(1 - p)


def test_criterion_1_mi_oracle_equivalence():
    with criterion(1, "MI chain rule, nonnegativity, and BSC value", 10.0):
        rng = np.random.default_rng(101)
        for _ in range(500):
            sizes = rng.integers(2, 4, size=4)
            pmf = rng.random(tuple(sizes))
            pmf /= pmf.sum()
            j = JointDist(dims=tuple(zip("ABCD", sizes)), pmf=pmf)
            i_a_bc_d = mutual_info(j, "A", "BC", "D")
            i_a_b_d = mutual_info(j, "A", "B", "D")
            i_a_c_bd = mutual_info(j, "A", "C", "BD")
            assert i_a_bc_d >= 0 and i_a_b_d >= 0 and i_a_c_bd >= 0
            assert abs(i_a_bc_d - (i_a_b_d + i_a_c_bd)) <= 1e-10
        pxy = 0.5 * bsc(0.1)
        j = JointDist(dims=(("X", 2), ("Y", 2)), pmf=pxy)
        assert abs(mutual_info(j, "X", "Y") - (1 - h2(0.1))) <= 1e-9


def test_criterion_2_composition_classification():
    with criterion(2, "composed chains classified with residual <= 1e-12", 5.0):
        rng = np.random.default_rng(202)
        for _ in range(100):
            ch = compose_degraded(random_kernel(rng, (2, 2, 2)), random_kernel(rng, (2, 2, 2)))
            cls = classify(ch)
            assert "Degraded" in cls.satisfied
            assert cls.residuals["Degraded"] <= 1e-12
        for _ in range(100):
            ch = compose_reversely_degraded(
                random_kernel(rng, (2, 2, 2)), random_kernel(rng, (2, 2, 2))
            )
            cls = classify(ch)
            assert "ReverselyDegraded" in cls.satisfied
            assert cls.residuals["ReverselyDegraded"] <= 1e-12


def test_criterion_3_bound_invariants_at_fixed_aux():
    with criterion(3, "inner-in-inner nesting, delta sign, property bound", 30.0):
        rng = np.random.default_rng(303)
        for _ in range(200):
            ch = random_channel(rng)
            aux = random_aux(rng, nu=2, ns=2, nx=2)
            tin = evaluate_bounds(aux, ch, Family.TILDE_IN)
            rin = evaluate_bounds(aux, ch, Family.R_IN)
            a, b = rin.matrices()
            for v in enumerate_vertices(tin):
                assert np.all(a @ v.as_array() <= b + 1e-9)
            j = build_joint(aux, ch)
            assert delta_gap(j) >= -1e-12
            assert zeta(j) <= mutual_info(j, "XS", "Y", "Z") + 1e-12
        for _ in range(200):
            ch = compose_reversely_degraded(
                random_kernel(rng, (2, 2, 2)), random_kernel(rng, (2, 2, 2))
            )
            j = build_joint(random_aux(rng, nu=2, ns=2, nx=2), ch)
            assert delta_gap(j) <= 1e-12


def test_criterion_4_degraded_zero_secrecy_stochastic():
    with criterion(4, "degraded channels give <= 1e-6 equivocation over Q2", 120.0):
        rng = np.random.default_rng(404)
        budget = OptBudget(restarts=64, maxiter=40, nu=2, nv=2)
        for k in range(20):
            ch = compose_degraded(random_kernel(rng, (2, 2, 2)), random_kernel(rng, (2, 2, 2)))
            res = scalarize_max(ch, Family.STOCH_OUT, (0.0, 0.0, 1.0), budget, seed=k)
            assert res.value <= 1e-6


def test_criterion_5_gaussian_coincidence():
    with criterion(5, "matched-correlation inner/outer coincidence", 10.0):
        rng = np.random.default_rng(505)
        thetas = np.linspace(0.0, 1.0, 65)
        etas = np.linspace(0.0, 1.0, 65)
        for _ in range(50):
            n1 = rng.uniform(0.2, 5.0)
            n2 = n1 * rng.uniform(1.1, 4.0)
            p1 = rng.uniform(0.1, 4.0)
            params = GaussianRelayParams(n1=n1, n2=n2, rho=np.sqrt(n1 / n2), p1=p1, p2=1.0)
            assert abs(derived(params).ntilde1 - n1) <= 1e-12
            inner_re = np.array([inner_caps(params, t, etas)["re"] for t in thetas])
            for i, t in enumerate(thetas):
                for e in etas:
                    assert abs(outer_caps(params, float(t), float(e))["re"] - inner_re[i]) <= 1e-12
            want = max(0.0, (0.5 * np.log2(1 + p1 / n1)) - (0.5 * np.log2(1 + p1 / n2)))
            for p2 in (0.0, 1.0, 10.0):
                lo, hi = secrecy_capacity_gauss(replace(params, p2=p2))
                assert abs(lo - hi) <= 1e-12
                assert abs(lo - want) <= 1e-12


def test_criterion_6_bijection_round_trip():
    with criterion(6, "(alpha,beta)<->(theta,eta) round trip on 101x101 grid", 1.0):
        grid = np.linspace(0.0, 1.0, 101)
        for alpha in grid:
            if alpha == 0.0:
                continue  # documented boundary convention: beta undefined
            for beta in grid:
                if alpha * beta == 1.0:
                    continue  # documented boundary convention: theta = 1
                p = param_map(alpha=float(alpha), beta=float(beta))
                q = param_map(theta=p.theta, eta=p.eta)
                assert abs(q.alpha - alpha) <= 1e-12
                assert abs(q.beta - beta) <= 1e-12


def trend_channel_and_rates():
    p_y = np.stack([np.stack([bsc(0.1)[x]]) for x in range(2)])
    p_z_y = np.stack([np.stack([bsc(0.15)[y]]) for y in range(2)])
    ch = compose_reversely_degraded(p_y, p_z_y)
    aux = uniform_aux(1, 1, 2)
    j = build_joint(aux, ch)
    r2 = 0.6 * mutual_info(j, "X", "Z", "US")
    r1 = 0.6 * mutual_info(j, "X", "Y", "US") - r2
    return ch, aux, r1, r2


def test_criterion_7_simulator_soundness():
    with criterion(7, "degenerate exactness, determinism, union bound, trend", 300.0):
        # Noiseless single-message configuration: exactly zero errors.
        cfg0 = SimConfig(
            n=8, b=4, rates=Rates(0, 0, 0, 0), epsilon=10.0, seed=5,
            aux=uniform_aux(1, 1, 2), ch=noiseless_y_blind_z(),
        )
        book0 = generate_codebook(cfg0)
        rep0 = run_blocks(cfg0, book0, draw_messages(cfg0, book0))
        assert rep0.err_receiver == 0.0 and rep0.err_relay == 0.0
        assert all(rep0.decoder_rate(d) == 0.0 for d in ("1a", "1b", "1c", "2a", "2b"))
        assert equivocation_exact(cfg0, book0) == 0.0

        # Blind relay: equivocation exactly (1/n) log2 |L|.
        cfg1 = replace(cfg0, n=4, rates=Rates(0, 0.5, 0, 0))
        assert equivocation_exact(cfg1, generate_codebook(cfg1)) == pytest.approx(
            0.5, abs=1e-12
        )

        # Bit-exact seed determinism.
        ch, aux, r1, r2 = trend_channel_and_rates()
        cfg2 = SimConfig(n=8, b=3, rates=Rates(0, r1, r2, 0), epsilon=0.25,
                         seed=33, aux=aux, ch=ch)
        assert monte_carlo(cfg2, 12) == monte_carlo(cfg2, 12)

        # Union bound holds on every trial of every run below.
        means = []
        for n in (6, 10, 14):
            errs = count = 0
            for seed in range(5):
                cfg = SimConfig(n=n, b=3, rates=Rates(0, r1, r2, 0), epsilon=0.25,
                                seed=seed, aux=aux, ch=ch)
                rep = monte_carlo(cfg, 80)
                assert rep.union_violations == 0
                errs += rep.receiver_errors
                count += rep.receiver_count
            means.append(errs / count)
        assert means[0] >= means[1] >= means[2], f"not non-increasing: {means}"


def test_criterion_8_exact_equivocation_vs_plugin():
    with criterion(8, "exact equivocation within range and above plug-in", 120.0):
        p_y = np.stack([bsc(0.1)[x][None, :] for x in range(2)])
        p_z = np.stack([bsc(0.2)[x][None, :] for x in range(2)])
        ch = channel_from_factors(p_y, p_z)
        cfg = SimConfig(
            n=6, b=3, rates=Rates(0.0, 1 / 3, 1 / 6, 0.0), epsilon=0.25,
            seed=8, aux=uniform_aux(1, 1, 2), ch=ch,
        )
        assert cfg.set_sizes[1] == 4  # |L| = 4
        exact = equivocation_exact(cfg, generate_codebook(cfg))
        cap = np.log2(4) / 6
        assert 0.0 <= exact <= cap + 1e-12
        rep = monte_carlo(cfg, 100)
        bound = equivocation_plugin_bound(cfg, rep.decoder_rate("2a"), rep.decoder_rate("2b"))
        assert exact >= bound - 1e-12
