"""Closed-form discrimination bounds for two-state ensembles.

The central objects are *certificates*: Hermitian operators ``H`` whose
sum with their own partial transpose reproduces the (tensor-powered)
weighted difference of the ensemble.  Any such certificate caps the
success probability of every measurement whose effects stay positive
under partial transposition at ``1/2 + Tr|H|``, and products of the two
trace norms ``Tr|H| Tr|H^PT|`` drive exponential decay bounds in the
number of copies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DimensionTooLarge, HypothesisViolated, ResidualTooLarge
from . import linalg
from .ensembles import TwoStateEnsemble, helstrom_operator, is_pt_invariant
from .linalg import BipartiteOperator

# Frobenius tolerance for certificate equations; balances the eigensolver
# accuracy against construction roundoff at 16 x 16.
CERT_RESIDUAL_TOL = 1e-9

REPORT_CSV_HEADER = "theta,L,p_G,thm1_bound,cor1_bound,product_4T"


def helstrom_value(ensemble: TwoStateEnsemble) -> float:
    """Optimal success probability over unrestricted measurements.

    For two states this is the closed form
    ``1/2 (1 + Tr|eta0 rho0 - eta1 rho1|)``.
    """
    return 0.5 * (1.0 + linalg.trace_norm(helstrom_operator(ensemble)))


def _certificate_residual(
    ensemble: TwoStateEnsemble, certificate: BipartiteOperator, k: int = 1
) -> float:
    target = linalg.tensor_power(helstrom_operator(ensemble), k)
    cert_sum = certificate + linalg.partial_transpose(certificate)
    return linalg.frobenius_distance(cert_sum, target)


def certificate_upper_bound(
    ensemble: TwoStateEnsemble, certificate: BipartiteOperator
) -> float:
    """Upper bound ``1/2 + Tr|H|`` from a single-copy certificate.

    Raises :class:`ResidualTooLarge` when ``H + H^PT`` misses the weighted
    difference operator by more than :data:`CERT_RESIDUAL_TOL` - such an
    ``H`` certifies nothing.
    """
    residual = _certificate_residual(ensemble, certificate, k=1)
    if residual > CERT_RESIDUAL_TOL:
        raise ResidualTooLarge(
            f"certificate residual {residual:.3e} exceeds {CERT_RESIDUAL_TOL:.0e}"
        )
    return 0.5 + linalg.trace_norm(certificate)


def decay_bound(
    ensemble: TwoStateEnsemble,
    certificate: BipartiteOperator,
    k: int,
    copies: int,
    clamp: bool = True,
) -> float:
    """Exponential-decay bound on the PPT-restricted success probability.

    Given a k-copy certificate with ``4 Tr|H| Tr|H^PT| < 1``, the value
    for ``L`` grouped copies is capped by

        1/2 + 1/2 (4 Tr|H| Tr|H^PT|)^((L - k + 1) / (2k)),

    which decays geometrically in L.  For ``L < k`` the raw expression
    exceeds 1 and is vacuous; it is clamped to 1 unless ``clamp=False``.

    Raises
    ------
    HypothesisViolated
        Naming the failed condition: ``pinv`` if the ensemble's weighted
        difference is not PT-invariant, ``hlek`` if the certificate
        equation fails at ``k`` copies, ``fhho`` if the norm product
        reaches 1.
    """
    if k < 1 or copies < 1:
        raise ValueError("k and copies must be positive integers")
    if not is_pt_invariant(ensemble, CERT_RESIDUAL_TOL):
        raise HypothesisViolated("pinv: weighted difference is not PT-invariant")
    residual = _certificate_residual(ensemble, certificate, k=k)
    if residual > CERT_RESIDUAL_TOL:
        raise HypothesisViolated(
            f"hlek: certificate residual {residual:.3e} at k={k}"
        )
    product = 4.0 * linalg.trace_norm(certificate) * linalg.trace_norm(
        linalg.partial_transpose(certificate)
    )
    if product >= 1.0:
        raise HypothesisViolated(f"fhho: norm product {product:.6f} is not < 1")
    raw = 0.5 + 0.5 * product ** ((copies - k + 1) / (2.0 * k))
    return min(raw, 1.0) if clamp else raw


def decay_bound_k1(
    ensemble: TwoStateEnsemble, certificate: BipartiteOperator, copies: int
) -> float:
    """Decay bound from a single-copy certificate with small norms.

    Requires ``Tr|H| + Tr|H^PT| <= 1`` and ``Tr|H| < 1/2``; then

        1/2 + 1/2 (4 Tr|H| Tr|H^PT|)^(L / 2)

    holds for every positive ``L``, and the norm product is automatically
    below 1 (it is at most ``1 - (1 - 2 Tr|H|)^2``).
    """
    if copies < 1:
        raise ValueError("copies must be a positive integer")
    residual = _certificate_residual(ensemble, certificate, k=1)
    if residual > CERT_RESIDUAL_TOL:
        raise HypothesisViolated(f"hhpt: certificate residual {residual:.3e}")
    tn = linalg.trace_norm(certificate)
    tn_pt = linalg.trace_norm(linalg.partial_transpose(certificate))
    # eigenvalue sums carry ~1e-14 roundoff; the boundary case sum == 1 is
    # admissible, so compare with a matching allowance
    if tn + tn_pt > 1.0 + 1e-12:
        raise HypothesisViolated(f"idsf: norm sum {tn + tn_pt:.6f} exceeds 1")
    if not tn < 0.5:
        raise HypothesisViolated(f"idss: Tr|H| = {tn:.6f} is not < 1/2")
    return 0.5 + 0.5 * (4.0 * tn * tn_pt) ** (copies / 2.0)


# -- symmetrized multi-copy certificates ---------------------------------


def _select_smaller_norm(certificate: BipartiteOperator) -> BipartiteOperator:
    """The certificate or its partial transpose, whichever has smaller norm."""
    pt = linalg.partial_transpose(certificate)
    if linalg.trace_norm(certificate) <= linalg.trace_norm(pt):
        return certificate
    return pt


def pt_placement_sum(
    base: BipartiteOperator, m: int, r: int
) -> BipartiteOperator:
    """Sum over all m-fold tensor products with r partially transposed slots.

    Iterates the ``C(m, r)`` placements directly (bit strings of weight r)
    rather than all ``2^m`` strings.  Partially transposing the result
    swaps ``r`` with ``m - r``.
    """
    if not 0 <= r <= m:
        raise ValueError("need 0 <= r <= m")
    if base.dims.total ** m > linalg.MAX_DIM:
        raise DimensionTooLarge(
            f"{m} factors of dimension {base.dims.total} exceed the guard"
        )
    base_pt = linalg.partial_transpose(base)
    out = None
    for positions in itertools.combinations(range(m), r):
        chosen = set(positions)
        term = base_pt if 0 in chosen else base
        for slot in range(1, m):
            term = linalg.tensor_bipartite(
                term, base_pt if slot in chosen else base
            )
        out = term if out is None else out + term
    return out


def symmetrized_certificate(certificate: BipartiteOperator, m: int) -> BipartiteOperator:
    """m-fold certificate built from balanced partial-transpose placements.

    Starting from whichever of ``H`` / ``H^PT`` has the smaller trace norm,
    the result sums the placement terms with fewer than ``m/2`` transposed
    slots, plus half of the balanced term when ``m`` is even.  Its sum with
    its own partial transpose reproduces the full m-fold power of
    ``H + H^PT``, and its trace norm is at most
    ``1/2 (4 Tr|H| Tr|H^PT|)^(m/2)``.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    base = _select_smaller_norm(certificate)
    if m % 2 == 1:
        parts = [pt_placement_sum(base, m, r) for r in range((m - 1) // 2 + 1)]
        out = parts[0]
        for part in parts[1:]:
            out = out + part
        return out
    out = pt_placement_sum(base, m, 0)
    for r in range(1, (m - 2) // 2 + 1):
        out = out + pt_placement_sum(base, m, r)
    return out + 0.5 * pt_placement_sum(base, m, m // 2)


def symmetrized_bound(certificate: BipartiteOperator, m: int) -> float:
    """Bound ``1/2 + 1/2 (4 Tr|H| Tr|H^PT|)^(m/2)`` for m certificate blocks."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    product = 4.0 * linalg.trace_norm(certificate) * linalg.trace_norm(
        linalg.partial_transpose(certificate)
    )
    return 0.5 + 0.5 * product ** (m / 2.0)


# -- consolidated report --------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    """All bounds and feasibility flags for one ``(theta, L)`` instance.

    Clamped bounds always lie in ``[1/2, 1]``; the raw (unclamped) decay
    values are kept alongside because the inequality is vacuous above 1.
    Bounds whose hypotheses fail are ``None`` and the corresponding
    feasibility flag records which condition broke.
    """

    copies: int
    p_g: float
    theta: float | None = None
    thm1_bound: float | None = None
    cor1_bound: float | None = None
    thm1_raw: float | None = None
    cor1_raw: float | None = None
    product_4t: float = 0.0
    feasibility: dict = field(default_factory=dict)


def bound_report(
    ensemble: TwoStateEnsemble,
    certificate: BipartiteOperator,
    k: int,
    copies: int,
    theta: float | None = None,
) -> BoundReport:
    """Evaluate every applicable bound for ``copies`` grouped preparations.

    The unrestricted value for the grouped ensemble follows from trace-norm
    multiplicativity, ``1/2 (1 + Tr|diff|^L)``, without building L-copy
    operators.  The decay bound appears whenever its three hypotheses hold;
    the single-copy variant additionally needs ``k == 1`` and the norm-sum
    conditions.
    """
    if k < 1 or copies < 1:
        raise ValueError("k and copies must be positive integers")
    lam = helstrom_operator(ensemble)
    lam_norm = linalg.trace_norm(lam)
    p_g = min(0.5 * (1.0 + lam_norm**copies), 1.0)

    tn = linalg.trace_norm(certificate)
    tn_pt = linalg.trace_norm(linalg.partial_transpose(certificate))
    product = 4.0 * tn * tn_pt
    residual = _certificate_residual(ensemble, certificate, k=k)

    feasibility = {
        "pt_invariant": is_pt_invariant(ensemble, CERT_RESIDUAL_TOL),
        "hlek_residual": residual <= CERT_RESIDUAL_TOL,
        "fhho_product": product < 1.0,
        "idsf_sum": tn + tn_pt <= 1.0 + 1e-12,
        "idss_half": tn < 0.5,
    }

    thm1_raw = thm1 = None
    if feasibility["pt_invariant"] and feasibility["hlek_residual"] and feasibility["fhho_product"]:
        thm1_raw = decay_bound(ensemble, certificate, k, copies, clamp=False)
        thm1 = min(thm1_raw, 1.0)

    cor1_raw = cor1 = None
    if (
        k == 1
        and feasibility["hlek_residual"]
        and feasibility["idsf_sum"]
        and feasibility["idss_half"]
    ):
        cor1_raw = decay_bound_k1(ensemble, certificate, copies)
        cor1 = min(cor1_raw, 1.0)

    return BoundReport(
        copies=copies,
        p_g=p_g,
        theta=theta,
        thm1_bound=thm1,
        cor1_bound=cor1,
        thm1_raw=thm1_raw,
        cor1_raw=cor1_raw,
        product_4t=product,
        feasibility=feasibility,
    )


def report_to_json(report: BoundReport) -> dict:
    """JSON object with clamped and raw bound values plus feasibility flags."""
    return {
        "theta": report.theta,
        "L": report.copies,
        "p_G": report.p_g,
        "thm1_bound": report.thm1_bound,
        "cor1_bound": report.cor1_bound,
        "thm1_raw": report.thm1_raw,
        "cor1_raw": report.cor1_raw,
        "product_4T": report.product_4t,
        "feasibility": dict(report.feasibility),
    }


def report_csv_row(report: BoundReport, fmt: str = "%.15g") -> str:
    """One CSV row matching :data:`REPORT_CSV_HEADER` (blank for absent)."""
    def cell(value: float | None) -> str:
        return "" if value is None else fmt % value

    return ",".join(
        [
            cell(report.theta),
            str(report.copies),
            fmt % report.p_g,
            cell(report.thm1_bound),
            cell(report.cor1_bound),
            fmt % report.product_4t,
        ]
    )
