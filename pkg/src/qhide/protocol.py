"""Seeded Monte Carlo simulation of the one-bit hiding protocol.

Per trial, the hider draws a bit ``x``, prepares ``L`` states with
independent labels ``b_1 .. b_L``, and broadcasts ``z = x XOR y`` where
``y`` is the parity of the labels.  The receiver measures, decodes a
parity guess ``y_hat`` and outputs ``x_hat = z XOR y_hat``, so the trial
succeeds exactly when the parity guess is right.

Two receiver strategies are implemented:

* ``GlobalOrthogonal`` - a joint two-outcome measurement projecting onto
  the support of the even-parity grouped state.  For orthogonal ensembles
  this decodes the parity perfectly.
* ``PerCopyLocal`` - the same two-outcome product measurement on every
  copy, followed by per-copy maximum-likelihood label estimates and an
  XOR.  For two-outcome per-copy measurements this XOR rule is the
  optimal classical post-processing of the outcomes.

Outcome probabilities are computed exactly from the density operators and
only then sampled, so no state-vector trajectories are involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionTooLarge, InvalidStrategy
from . import linalg
from .ensembles import TwoStateEnsemble, coarse_grain
from .linalg import BipartiteOperator

SUPPORT_TOL = 1e-10
_MEASUREMENT_TOL = 1e-10


@dataclass(frozen=True)
class HidingInstance:
    """One protocol configuration: ensemble, copy count, bit prior."""

    ensemble: TwoStateEnsemble
    copies: int
    hidden_bit_p0: float = 0.5

    def __post_init__(self) -> None:
        if self.copies < 1:
            raise ValueError("copies must be a positive integer")
        if not 0.0 <= self.hidden_bit_p0 <= 1.0:
            raise ValueError("hidden_bit_p0 must be a probability")


@dataclass(frozen=True, eq=False)
class Strategy:
    """Receiver strategy descriptor.

    ``GlobalOrthogonal`` carries no effects.  ``PerCopyLocal`` carries one
    product effect per copy, ``M0 = alice_effect (x) bob_effect`` with
    ``M1 = 1 - M0``; both effects must satisfy ``0 <= effect <= 1``.
    """

    kind: str
    name: str
    alice_effect: Optional[np.ndarray] = None
    bob_effect: Optional[np.ndarray] = None

    @staticmethod
    def global_orthogonal() -> "Strategy":
        return Strategy(kind="GlobalOrthogonal", name="GlobalOrthogonal")

    @staticmethod
    def per_copy_local(
        alice_effect: np.ndarray, bob_effect: np.ndarray, name: str | None = None
    ) -> "Strategy":
        return Strategy(
            kind="PerCopyLocal",
            name=name or "PerCopyLocal",
            alice_effect=np.asarray(alice_effect, dtype=np.complex128),
            bob_effect=np.asarray(bob_effect, dtype=np.complex128),
        )


@dataclass(frozen=True)
class SimReport:
    """Record of one seeded run; identical inputs give identical reports."""

    trials: int
    successes: int
    empirical_rate: float
    seed: int
    strategy: str
    workers: int
    instance: dict


def _qubit_projector(angle: float) -> np.ndarray:
    v = np.array([math.cos(angle), math.sin(angle)], dtype=np.complex128)
    return np.outer(v, v.conj())


def blind_strategy(dims: linalg.BipartiteDims) -> Strategy:
    """Trivial measurement (first effect is the identity): pure guessing."""
    return Strategy.per_copy_local(
        np.eye(dims.d_a, dtype=np.complex128),
        np.eye(dims.d_b, dtype=np.complex128),
        name="blind",
    )


def computational_strategy() -> Strategy:
    """Both qubits measured in the computational basis, effect |00><00|."""
    return Strategy.per_copy_local(
        _qubit_projector(0.0), _qubit_projector(0.0), name="computational"
    )


def rotated_projector_strategy(alpha: float, beta: float) -> Strategy:
    """Product projector onto ``(cos a|0> + sin a|1>) (x) (cos b|0> + sin b|1>)``."""
    # no comma in the name: it appears as a single CSV field in reports
    return Strategy.per_copy_local(
        _qubit_projector(alpha),
        _qubit_projector(beta),
        name=f"rotated({alpha:.6g};{beta:.6g})",
    )


def local_strategy_catalog(points: int = 25) -> list[Strategy]:
    """Catalog of per-copy strategies for two-qubit copies.

    Blind and computational measurements plus a ``points x points`` grid
    of product projectors with angles in ``[0, pi)``.
    """
    catalog = [blind_strategy(linalg.BipartiteDims(2, 2)), computational_strategy()]
    # inclusive grid: step pi/(points-1), so points=25 hits pi/8 exactly
    angles = np.linspace(0.0, math.pi, points)
    catalog.extend(
        rotated_projector_strategy(float(a), float(b)) for a in angles for b in angles
    )
    return catalog


def _per_copy_tables(
    instance: HidingInstance, strategy: Strategy
) -> tuple[np.ndarray, np.ndarray]:
    """Outcome-0 probabilities per label and the ML decode table.

    Validates the measurement: the product effect and its complement must
    both be PSD and sum to the identity.  Ties in the likelihoods break
    toward label 0.
    """
    dims = instance.ensemble.dims
    a0, b0 = strategy.alice_effect, strategy.bob_effect
    if a0 is None or b0 is None:
        raise InvalidStrategy("per-copy strategy carries no effects")
    if a0.shape != (dims.d_a, dims.d_a) or b0.shape != (dims.d_b, dims.d_b):
        raise InvalidStrategy(
            f"effects must be {dims.d_a}x{dims.d_a} and {dims.d_b}x{dims.d_b}"
        )
    effect = np.kron(a0, b0)
    try:
        m0 = BipartiteOperator(dims, effect)
        m1 = BipartiteOperator(dims, np.eye(dims.total) - effect)
    except ValueError as exc:
        raise InvalidStrategy(f"effects are not Hermitian: {exc}") from exc
    if not linalg.is_psd(m0, _MEASUREMENT_TOL) or not linalg.is_psd(m1, _MEASUREMENT_TOL):
        raise InvalidStrategy("measurement effects must satisfy 0 <= M0 <= 1")
    completeness = linalg.frobenius_distance(m0 + m1, linalg.identity(dims))
    if completeness > _MEASUREMENT_TOL:
        raise InvalidStrategy(f"effects do not sum to identity ({completeness:.3e})")

    rhos = (instance.ensemble.rho0, instance.ensemble.rho1)
    p_outcome0 = np.empty(2)
    for label, rho in enumerate(rhos):
        p0 = float(np.trace(rho.entries @ m0.entries).real)
        p1 = float(np.trace(rho.entries @ m1.entries).real)
        if abs(p0 + p1 - 1.0) > 1e-12:
            raise InvalidStrategy(f"outcome probabilities sum to {p0 + p1}")
        p_outcome0[label] = min(max(p0, 0.0), 1.0)

    priors = np.array([instance.ensemble.eta0, instance.ensemble.eta1])
    decode = np.empty(2, dtype=np.int64)
    for outcome in (0, 1):
        likelihood = priors * np.where(outcome == 0, p_outcome0, 1.0 - p_outcome0)
        decode[outcome] = 0 if likelihood[0] >= likelihood[1] else 1
    return p_outcome0, decode


def _global_tables(instance: HidingInstance) -> np.ndarray:
    """Probability of the even-parity outcome for each label string.

    The measurement projects onto the support of the even-parity grouped
    state; the table has one entry per label string, indexed by its
    big-endian bit value.
    """
    copies = instance.copies
    dims = instance.ensemble.dims
    if dims.total**copies > linalg.MAX_DIM:
        raise DimensionTooLarge(
            f"global strategy needs a {dims.total**copies}-dimensional space"
        )
    grouped = coarse_grain(instance.ensemble, copies)
    w, u = linalg.hermitian_eigensystem(grouped.rho0)
    support = u[:, w > SUPPORT_TOL]
    projector = support @ support.conj().T

    rhos = (instance.ensemble.rho0, instance.ensemble.rho1)
    table = np.empty(2**copies)
    for index in range(2**copies):
        bits = [(index >> (copies - 1 - pos)) & 1 for pos in range(copies)]
        state = rhos[bits[0]]
        for bit in bits[1:]:
            state = linalg.tensor_bipartite(state, rhos[bit])
        q = float(np.trace(state.entries @ projector).real)
        table[index] = min(max(q, 0.0), 1.0)
    return table


def _instance_summary(instance: HidingInstance) -> dict:
    return {
        "L": instance.copies,
        "eta0": instance.ensemble.eta0,
        "eta1": instance.ensemble.eta1,
        "d_A": instance.ensemble.dims.d_a,
        "d_B": instance.ensemble.dims.d_b,
        "hidden_bit_p0": instance.hidden_bit_p0,
    }


def run_protocol(
    instance: HidingInstance,
    strategy: Strategy,
    trials: int,
    seed: int,
    workers: int = 1,
) -> SimReport:
    """Simulate ``trials`` protocol rounds and count correct guesses.

    Trials are partitioned into ``workers`` contiguous blocks, each driven
    by a counter-based substream spawned from the master seed; the result
    is deterministic for a fixed worker count, which is recorded in the
    report.
    """
    if trials < 1:
        raise ValueError("trials must be a positive integer")
    if workers < 1:
        raise ValueError("workers must be a positive integer")

    copies = instance.copies
    eta0 = instance.ensemble.eta0
    p0 = instance.hidden_bit_p0

    if strategy.kind == "PerCopyLocal":
        p_outcome0, decode = _per_copy_tables(instance, strategy)
        global_table = None
    elif strategy.kind == "GlobalOrthogonal":
        global_table = _global_tables(instance)
    else:
        raise InvalidStrategy(f"unknown strategy kind {strategy.kind!r}")

    block_sizes = [
        trials // workers + (1 if i < trials % workers else 0) for i in range(workers)
    ]
    streams = np.random.SeedSequence(seed).spawn(workers)
    successes = 0
    for block, stream in zip(block_sizes, streams):
        if block == 0:
            continue
        rng = np.random.default_rng(stream)
        x = (rng.random(block) >= p0).astype(np.int64)
        labels = (rng.random((block, copies)) >= eta0).astype(np.int64)
        parity = labels.sum(axis=1) % 2
        broadcast = x ^ parity
        if strategy.kind == "PerCopyLocal":
            outcome0_prob = p_outcome0[labels]
            outcomes = (rng.random((block, copies)) >= outcome0_prob).astype(np.int64)
            parity_guess = decode[outcomes].sum(axis=1) % 2
        else:
            indices = labels @ (1 << np.arange(copies - 1, -1, -1))
            even_prob = global_table[indices]
            parity_guess = (rng.random(block) >= even_prob).astype(np.int64)
        bit_guess = broadcast ^ parity_guess
        successes += int(np.sum(bit_guess == x))

    return SimReport(
        trials=trials,
        successes=successes,
        empirical_rate=successes / trials,
        seed=seed,
        strategy=strategy.name,
        workers=workers,
        instance=_instance_summary(instance),
    )


def per_copy_error_probability(instance: HidingInstance, strategy: Strategy) -> float:
    """Probability that one copy's ML label estimate is wrong."""
    p_outcome0, decode = _per_copy_tables(instance, strategy)
    priors = np.array([instance.ensemble.eta0, instance.ensemble.eta1])
    error = 0.0
    for outcome in (0, 1):
        conditional = np.where(outcome == 0, p_outcome0, 1.0 - p_outcome0)
        for label in (0, 1):
            if decode[outcome] != label:
                error += priors[label] * conditional[label]
    return error


def strategy_success_probability(instance: HidingInstance, strategy: Strategy) -> float:
    """Exact (not sampled) success probability of the given strategy.

    The hidden bit is recovered exactly when the parity guess is right, so
    the value does not depend on the hidden-bit prior.  For per-copy
    strategies the copies are independent and the parity of per-copy ML
    estimates errs exactly when an odd number of copies err, giving

        1/2 (1 + (1 - 2 p_err)^L)

    from the per-copy confusion probability alone - no L-copy operators.
    For the global strategy the 2^L label strings are enumerated.
    """
    copies = instance.copies
    if strategy.kind == "PerCopyLocal":
        error = per_copy_error_probability(instance, strategy)
        return 0.5 * (1.0 + (1.0 - 2.0 * error) ** copies)
    if strategy.kind == "GlobalOrthogonal":
        table = _global_tables(instance)
        priors = (instance.ensemble.eta0, instance.ensemble.eta1)
        total = 0.0
        for index in range(2**copies):
            bits = [(index >> (copies - 1 - pos)) & 1 for pos in range(copies)]
            weight = math.prod(priors[b] for b in bits)
            even_prob = table[index]
            total += weight * (even_prob if sum(bits) % 2 == 0 else 1.0 - even_prob)
        return total
    raise InvalidStrategy(f"unknown strategy kind {strategy.kind!r}")


def best_local_strategy(
    instance: HidingInstance, catalog: list[Strategy] | None = None
) -> tuple[Strategy, float]:
    """Catalog entry with the highest exact success probability.

    The per-copy success is monotone in the per-copy error, so the best
    entry is the same for every copy count.
    """
    if catalog is None:
        catalog = local_strategy_catalog()
    best: tuple[Strategy, float] | None = None
    for strategy in catalog:
        value = strategy_success_probability(instance, strategy)
        if best is None or value > best[1]:
            best = (strategy, value)
    assert best is not None
    return best


def report_to_json(report: SimReport) -> dict:
    """JSON form of a simulation record."""
    return {
        "trials": report.trials,
        "successes": report.successes,
        "empirical_rate": report.empirical_rate,
        "seed": report.seed,
        "strategy": report.strategy,
        "workers": report.workers,
        "instance": dict(report.instance),
    }


SIM_CSV_HEADER = "theta,L,strategy,exact_rate,empirical_rate,trials,seed"
