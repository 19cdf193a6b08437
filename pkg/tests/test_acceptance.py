"""Acceptance suite: one test per release criterion, with stated tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass/fail
line per criterion; every criterion also enforces its runtime budget.
"""

import math
import time

import numpy as np
import pytest

from qhide import linalg
from qhide.bounds import decay_bound, pt_placement_sum, symmetrized_certificate
from qhide.ensembles import (
    closed_form_residuals,
    coarse_grain,
    f0,
    f1,
    helstrom_operator,
    two_copy_certificate,
    two_qubit_separable_ensemble,
)
from qhide.linalg import BipartiteDims, BipartiteOperator
from qhide.protocol import (
    HidingInstance,
    Strategy,
    best_local_strategy,
    run_protocol,
    strategy_success_probability,
)
from qhide.solver import SolverConfig, monotonicity_scan, solve_ppt

from oracles import charpoly_eigenvalues, random_hermitian, sdp_ppt_value

PI6, PI4 = math.pi / 6, math.pi / 4
D22 = BipartiteDims(2, 2)


def report(number: int, ok: bool, detail: str) -> None:
    print(f"[criterion {number}] {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def exact_ppt_values():
    """Shared exact solves for criteria 4 and 5 (L = 1..3 at two angles)."""
    config = SolverConfig(max_iterations=100000)
    start = time.perf_counter()
    values = {
        theta: [r.p_ppt for r in monotonicity_scan(
            two_qubit_separable_ensemble(theta), 3, config)]
        for theta in (PI6, PI4)
    }
    return values, config, time.perf_counter() - start


def test_criterion_1_norm_product_closed_forms():
    start = time.perf_counter()
    exact = {
        PI6: (39 + math.sqrt(577)) * (10 + math.sqrt(39)) / 1024,
        PI4: (11 + math.sqrt(17)) * (6 + math.sqrt(6)) / 128,
    }
    printed = {PI6: 0.9998, PI4: 0.9983}
    worst_rel = 0.0
    for theta, reference in exact.items():
        value = 4.0 * f0(theta) * f1(theta)
        worst_rel = max(worst_rel, abs(value - reference) / reference)
        assert abs(value - printed[theta]) <= 5e-4
    elapsed = time.perf_counter() - start
    report(
        1,
        worst_rel <= 1e-12 and elapsed < 1.0,
        f"norm products match closed forms (rel err {worst_rel:.2e}, {elapsed:.2f}s)",
    )


def test_criterion_2_certificate_suite_on_grid():
    start = time.perf_counter()
    worst = {}
    for theta in np.linspace(0.0, math.pi / 3, 50):
        residuals = closed_form_residuals(float(theta))
        for name, value in residuals.items():
            worst[name] = max(worst.get(name, 0.0), value)
    elapsed = time.perf_counter() - start
    top = max(worst.values())
    report(
        2,
        top <= 1e-9 and elapsed < 30.0,
        f"50-point certificate suite, worst residual {top:.2e} ({elapsed:.1f}s)",
    )


def test_criterion_3_solver_matches_independent_sdp_oracle():
    worst = 0.0
    slowest = 0.0
    for theta in (0.0, math.pi / 12, PI6, PI4, math.pi / 3):
        ensemble = two_qubit_separable_ensemble(theta)
        start = time.perf_counter()
        result = solve_ppt(ensemble)
        slowest = max(slowest, time.perf_counter() - start)
        oracle = sdp_ppt_value(ensemble)
        worst = max(worst, abs(result.p_ppt - oracle))
        assert result.converged
    report(
        3,
        worst <= 1e-5 and slowest < 10.0,
        f"exact solves match the SDP oracle (worst {worst:.2e}, "
        f"slowest solve {slowest:.2f}s)",
    )


def test_criterion_4_values_decrease_with_copies(exact_ppt_values):
    values, config, elapsed = exact_ppt_values
    slack = 2 * config.relative_tolerance
    monotone = all(
        b <= a + slack
        for sequence in values.values()
        for a, b in zip(sequence, sequence[1:])
    )
    report(
        4,
        monotone and elapsed < 600.0,
        f"p_ppt nonincreasing in L at pi/6 and pi/4 "
        f"({ {round(k, 3): [round(v, 6) for v in seq] for k, seq in values.items()} }, "
        f"{elapsed:.1f}s)",
    )


def test_criterion_5_exact_values_sit_below_decay_envelope(exact_ppt_values):
    values, _, _ = exact_ppt_values
    product = 4.0 * f0(PI4) * f1(PI4)
    envelopes = [0.5 + 0.5 * product ** ((copies - 1) / 4.0) for copies in (1, 2, 3)]
    below = all(
        value <= envelope + 1e-5
        for value, envelope in zip(values[PI4], envelopes)
    )
    report(
        5,
        below,
        f"exact values {['%.6f' % v for v in values[PI4]]} below envelope "
        f"{['%.6f' % e for e in envelopes]} at pi/4",
    )


def test_criterion_6_symmetrized_certificates():
    start = time.perf_counter()
    cert = two_copy_certificate(PI4)
    lam2 = linalg.tensor_power(
        helstrom_operator(two_qubit_separable_ensemble(PI4)), 2
    )
    product = 4.0 * f0(PI4) * f1(PI4)
    worst_split = worst_pair = 0.0
    norm_ok = True
    for blocks in (1, 2):
        tilde = symmetrized_certificate(cert, blocks)
        target = linalg.tensor_power(lam2, blocks)
        split = linalg.frobenius_distance(
            tilde + linalg.partial_transpose(tilde), target
        )
        worst_split = max(worst_split, split)
        norm_ok &= linalg.trace_norm(tilde) <= 0.5 * product ** (blocks / 2) + 1e-9
        for r in range(blocks + 1):
            left = linalg.partial_transpose(pt_placement_sum(cert, blocks, r))
            right = pt_placement_sum(cert, blocks, blocks - r)
            worst_pair = max(
                worst_pair, float(np.max(np.abs(left.entries - right.entries)))
            )
    elapsed = time.perf_counter() - start
    report(
        6,
        worst_split <= 1e-9 and norm_ok and worst_pair <= 1e-12 and elapsed < 120.0,
        f"m=1,2 symmetrization: split {worst_split:.2e}, pairing {worst_pair:.2e}, "
        f"norm bound {'ok' if norm_ok else 'violated'} ({elapsed:.1f}s)",
    )


def test_criterion_7_hiding_scheme_behavior():
    start = time.perf_counter()
    perfect = all(
        run_protocol(
            HidingInstance(two_qubit_separable_ensemble(PI4), copies),
            Strategy.global_orthogonal(),
            trials=10_000,
            seed=2024 + copies,
        ).empirical_rate == 1.0
        for copies in (1, 2, 3)
    )

    ensemble = two_qubit_separable_ensemble(PI4)
    cert = two_copy_certificate(PI4)
    best, one_copy_rate = best_local_strategy(HidingInstance(ensemble, 1))
    rates = [
        strategy_success_probability(HidingInstance(ensemble, copies), best)
        for copies in range(1, 21)
    ]
    decreasing = all(b < a for a, b in zip(rates, rates[1:]))
    below = all(
        rate <= decay_bound(ensemble, cert, k=2, copies=copies)
        for copies, rate in enumerate(rates, start=1)
    )
    elapsed = time.perf_counter() - start
    report(
        7,
        perfect and one_copy_rate < 1.0 and decreasing and below and elapsed < 60.0,
        f"global decoding perfect, best local strategy {best.name} decays "
        f"{rates[0]:.4f} -> {rates[-1]:.4f} below the envelope ({elapsed:.1f}s)",
    )


def test_criterion_8_asymptotics_via_decay_ratio():
    # the infinite-copy limits are not reachable at finite scale; they are
    # implied by the geometric decay ratio being strictly below one, which
    # criteria 5 and 7 exercise at finite L
    ratios = {theta: 4.0 * f0(theta) * f1(theta) for theta in (PI6, PI4)}
    ensemble = two_qubit_separable_ensemble(PI4)
    cert = two_copy_certificate(PI4)
    envelope = [decay_bound(ensemble, cert, k=2, copies=c) for c in (2, 6, 10, 14)]
    strictly_decaying = all(b < a for a, b in zip(envelope, envelope[1:]))
    report(
        8,
        all(r < 1 for r in ratios.values()) and strictly_decaying,
        f"decay ratios {ratios[PI6]:.6f}, {ratios[PI4]:.6f} < 1; envelope "
        f"strictly decreasing (finite-scale proxy for the asymptotic claims)",
    )


def test_criterion_9_linear_algebra_property_suite():
    start = time.perf_counter()
    rng = np.random.default_rng(90)

    worst_involution = 0.0
    worst_pt_norm = 0.0
    worst_product = 0.0
    worst_eigs = 0.0
    for _ in range(200):
        x = BipartiteOperator(D22, random_hermitian(rng, 4))
        back = linalg.partial_transpose(linalg.partial_transpose(x))
        worst_involution = max(
            worst_involution, float(np.max(np.abs(back.entries - x.entries)))
        )

        p, q = random_hermitian(rng, 2), random_hermitian(rng, 2)
        prod_op = BipartiteOperator(D22, np.kron(p, q))
        worst_pt_norm = max(
            worst_pt_norm,
            abs(
                linalg.trace_norm(linalg.partial_transpose(prod_op))
                - linalg.trace_norm(prod_op)
            ),
        )

        y = BipartiteOperator(D22, random_hermitian(rng, 4))
        tensor = linalg.trace_norm(linalg.tensor_bipartite(x, y))
        separate = linalg.trace_norm(x) * linalg.trace_norm(y)
        worst_product = max(
            worst_product, abs(tensor - separate) / max(1.0, separate)
        )

        for n in (2, 4):
            mat = random_hermitian(rng, n)
            eigs = (
                np.linalg.eigvalsh(mat)
                if n == 2
                else linalg.hermitian_eigenvalues(BipartiteOperator(D22, mat))
            )
            worst_eigs = max(
                worst_eigs, float(np.max(np.abs(eigs - charpoly_eigenvalues(mat))))
            )
    elapsed = time.perf_counter() - start
    report(
        9,
        worst_involution == 0.0
        and worst_pt_norm <= 1e-10
        and worst_product <= 1e-10
        and worst_eigs <= 1e-10
        and elapsed < 30.0,
        f"200-case property suite: involution {worst_involution:.1e}, "
        f"pt-norm {worst_pt_norm:.1e}, multiplicativity {worst_product:.1e}, "
        f"charpoly {worst_eigs:.1e} ({elapsed:.1f}s)",
    )
