"""Two-state ensembles, parity coarse-graining and the closed-form family.

The closed-form family is a one-parameter set of 2 (x) 2 ensembles made of
two orthogonal separable states.  For each mixing angle ``theta`` in
``[0, pi/3]`` the module provides the states themselves, the adapted
orthonormal bases of one and two copies, the explicit two-copy certificate
operator together with its partial transpose, and the trace-norm functions
``f0``/``f1`` that drive the hiding condition ``4 f0 f1 < 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBranch, DimensionTooLarge, ThetaOutOfRange
from . import linalg
from .linalg import BipartiteDims, BipartiteOperator

# Largest admissible mixing angle.
THETA_MAX = math.pi / 3

# Below this weight a coarse-grained branch has no well-defined state.
DEGENERATE_WEIGHT = 1e-15

_PSD_TOL = 1e-10
_TRACE_TOL = 1e-12

QUBIT_PAIR = BipartiteDims(2, 2)


@dataclass(frozen=True)
class TwoStateEnsemble:
    """Ensemble of two density operators with prior probabilities.

    Invariants enforced at construction: priors are nonnegative and sum to
    one, both states are PSD with unit trace, and both live on the same
    bipartite space.
    """

    eta0: float
    eta1: float
    rho0: BipartiteOperator
    rho1: BipartiteOperator

    def __post_init__(self) -> None:
        if self.eta0 < 0 or self.eta1 < 0:
            raise ValueError("prior probabilities must be nonnegative")
        if abs(self.eta0 + self.eta1 - 1.0) > _TRACE_TOL:
            raise ValueError("prior probabilities must sum to 1")
        if self.rho0.dims != self.rho1.dims:
            raise ValueError("both states must share the same bipartite dims")
        for name, rho in (("rho0", self.rho0), ("rho1", self.rho1)):
            if abs(linalg.trace(rho) - 1.0) > _TRACE_TOL:
                raise ValueError(f"{name} must have unit trace")
            if not linalg.is_psd(rho, _PSD_TOL):
                raise ValueError(f"{name} must be positive semidefinite")

    @property
    def dims(self) -> BipartiteDims:
        return self.rho0.dims


def helstrom_operator(ensemble: TwoStateEnsemble) -> BipartiteOperator:
    """Weighted difference ``eta0 rho0 - eta1 rho1``; trace eta0 - eta1."""
    return ensemble.eta0 * ensemble.rho0 - ensemble.eta1 * ensemble.rho1


def is_pt_invariant(ensemble: TwoStateEnsemble, tol: float) -> bool:
    """True iff the weighted difference equals its own partial transpose."""
    lam = helstrom_operator(ensemble)
    return linalg.frobenius_distance(lam, linalg.partial_transpose(lam)) <= tol


def coarse_grain(ensemble: TwoStateEnsemble, copies: int) -> TwoStateEnsemble:
    """Group ``copies`` independent preparations by the parity of their labels.

    The branch operators are assembled from two tensor powers,

        weight_i * state_i = ((sum)^(x L) + (-1)^i (diff)^(x L)) / 2,

    where ``sum`` and ``diff`` are the prior-weighted sum and difference of
    the single-copy states.  This costs ``L - 1`` bipartite tensor products
    per term instead of enumerating all ``2^L`` label strings.  Each branch
    weight is recovered as the trace of its unnormalized operator.

    Raises
    ------
    DimensionTooLarge
        If the L-copy space exceeds the dense-storage guard.
    DegenerateBranch
        If some branch weight falls below ``DEGENERATE_WEIGHT``.
    """
    if copies < 1:
        raise ValueError("copies must be a positive integer")
    if ensemble.dims.total ** copies > linalg.MAX_DIM:
        raise DimensionTooLarge(
            f"{copies} copies of a {ensemble.dims.total}-dimensional space "
            f"exceed the dense guard {linalg.MAX_DIM}"
        )
    total = ensemble.eta0 * ensemble.rho0 + ensemble.eta1 * ensemble.rho1
    diff = helstrom_operator(ensemble)
    total_pow = linalg.tensor_power(total, copies)
    diff_pow = linalg.tensor_power(diff, copies)

    weights: list[float] = []
    states: list[BipartiteOperator] = []
    for sign in (1.0, -1.0):
        unnormalized = 0.5 * (total_pow + sign * diff_pow)
        weight = linalg.trace(unnormalized)
        if weight < DEGENERATE_WEIGHT:
            raise DegenerateBranch(
                f"branch weight {weight:.3e} below {DEGENERATE_WEIGHT:.0e}"
            )
        weights.append(weight)
        states.append((1.0 / weight) * unnormalized)
    return TwoStateEnsemble(weights[0], weights[1], states[0], states[1])


# -- closed-form two-qubit family ---------------------------------------


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not 0.0 <= theta <= THETA_MAX:
        raise ThetaOutOfRange(f"theta must lie in [0, pi/3], got {theta}")
    return theta


def _ket(coeffs) -> np.ndarray:
    return np.asarray(coeffs, dtype=np.complex128)


def _proj(v: np.ndarray) -> np.ndarray:
    return np.outer(v, v.conj())


def two_qubit_separable_ensemble(theta: float) -> TwoStateEnsemble:
    """Equal-prior ensemble of two orthogonal separable two-qubit states.

    With ``|p> = cos(theta)|0> + sin(theta)|1>`` and
    ``|m> = sin(theta)|0> - cos(theta)|1>``:

        rho0 = (|0><0| (x) |p><p| + |p><p| (x) |0><0|) / 2
        rho1 = (|1><1| (x) |1><1| + |m><m| (x) |m><m|) / 2

    The states are orthogonal for every theta because ``<p|m> = 0``, and
    their weighted difference is invariant under partial transposition
    because each factor projector is real.
    """
    theta = _check_theta(theta)
    zero = _ket([1.0, 0.0])
    one = _ket([0.0, 1.0])
    plus = _ket([math.cos(theta), math.sin(theta)])
    minus = _ket([math.sin(theta), -math.cos(theta)])
    rho0 = 0.5 * np.kron(_proj(zero), _proj(plus)) + 0.5 * np.kron(
        _proj(plus), _proj(zero)
    )
    rho1 = 0.5 * np.kron(_proj(one), _proj(one)) + 0.5 * np.kron(
        _proj(minus), _proj(minus)
    )
    return TwoStateEnsemble(
        0.5,
        0.5,
        BipartiteOperator(QUBIT_PAIR, rho0),
        BipartiteOperator(QUBIT_PAIR, rho1),
    )


def rotated_bell_basis(theta: float) -> np.ndarray:
    """Orthonormal 2 (x) 2 basis adapted to the closed-form family.

    Returns the four basis vectors as rows, in the order
    ``psi0+, psi1+, psi0-, psi1-``:

        psi0+ = (|00> + |11>) / sqrt(2)
        psi1+ = (|01> - |10>) / sqrt(2)
        psi0- = cos(theta)/sqrt(2) (|00> - |11>) + sin(theta)/sqrt(2) (|01> + |10>)
        psi1- = sin(theta)/sqrt(2) (|00> - |11>) - cos(theta)/sqrt(2) (|01> + |10>)

    ``psi1+`` is independent of theta.
    """
    theta = _check_theta(theta)
    c, s = math.cos(theta), math.sin(theta)
    r2 = math.sqrt(2.0)
    b00, b01, b10, b11 = np.eye(4, dtype=np.complex128)
    return np.stack(
        [
            (b00 + b11) / r2,
            (b01 - b10) / r2,
            c / r2 * (b00 - b11) + s / r2 * (b01 + b10),
            s / r2 * (b00 - b11) - c / r2 * (b01 + b10),
        ]
    )


def _two_copy_vectors(theta: float) -> dict[tuple[int, int], np.ndarray]:
    """16 orthonormal vectors on 4 (x) 4, keyed by (index, sign)."""
    c = math.cos(theta)
    norm = math.sqrt(1.0 + c * c)
    r2 = math.sqrt(2.0)
    psi0p, psi1p, psi0m, psi1m = rotated_bell_basis(theta)
    mix_p = (c * psi0p + psi0m) / norm   # cos-weighted mix of psi0+/psi0-
    mix_m = (c * psi0m - psi0p) / norm   # its orthogonal complement

    def tv(u: np.ndarray, v: np.ndarray) -> np.ndarray:
        w, _ = linalg.tensor_bipartite_vector(u, QUBIT_PAIR, v, QUBIT_PAIR)
        return w

    return {
        (0, +1): (tv(psi0p, psi0p) - tv(psi0m, psi0m)) / r2,
        (0, -1): (tv(psi0p, psi0m) + tv(psi0m, psi0p)) / r2,
        (1, +1): (tv(psi0p, psi0p) + tv(psi0m, psi0m)) / r2,
        (1, -1): (tv(psi0p, psi0m) - tv(psi0m, psi0p)) / r2,
        (2, +1): tv(psi1p, psi1p),
        (2, -1): tv(psi1p, psi1m),
        (3, +1): tv(psi1m, psi1m),
        (3, -1): tv(psi1m, psi1p),
        (4, +1): tv(mix_p, psi1p),
        (4, -1): tv(mix_m, psi1p),
        (5, +1): tv(mix_m, psi1m),
        (5, -1): tv(mix_p, psi1m),
        (6, +1): tv(psi1p, mix_p),
        (6, -1): tv(psi1p, mix_m),
        (7, +1): tv(psi1m, mix_m),
        (7, -1): tv(psi1m, mix_p),
    }


def two_copy_basis(theta: float) -> np.ndarray:
    """Orthonormal 4 (x) 4 basis for two copies, as 16 rows.

    Row order is ``(i, +), (i, -)`` for ``i = 0..7``, matching the keys of
    the coefficient matrix returned by :func:`two_copy_coefficients`.
    """
    vecs = _two_copy_vectors(_check_theta(theta))
    return np.stack([vecs[(i, s)] for i in range(8) for s in (+1, -1)])


def _basis_index(i: int, sign: int) -> int:
    return 2 * i + (0 if sign > 0 else 1)


def two_copy_coefficients(theta: float) -> np.ndarray:
    """Expansion of the squared difference operator in the two-copy basis.

    Returns the expected 16 x 16 coefficient matrix of
    ``(eta0 rho0 - eta1 rho1)^(x 2)`` with rows/columns ordered like
    :func:`two_copy_basis`.  Only the (0, +/-) block carries off-diagonal
    terms.
    """
    theta = _check_theta(theta)
    c, s = math.cos(theta), math.sin(theta)
    m = np.zeros((16, 16), dtype=np.complex128)

    def put(i: int, sign: int, value: float) -> None:
        k = _basis_index(i, sign)
        m[k, k] = value

    a = (s**4 - 4 * c**2) / 16
    put(0, +1, a)
    put(0, -1, -a)
    k_p, k_m = _basis_index(0, +1), _basis_index(0, -1)
    m[k_p, k_m] = m[k_m, k_p] = -(c * s**2) / 4
    b = (1 + c * c) ** 2 / 16
    put(1, +1, b)
    put(1, -1, -b)
    for i in (2, 3):
        put(i, +1, s**4 / 16)
        put(i, -1, -(s**4) / 16)
    for i in range(4, 8):
        put(i, +1, (1 - c**4) / 16)
        put(i, -1, -(1 - c**4) / 16)
    return m


def _operator_from_coefficients(theta: float, coeffs: np.ndarray) -> BipartiteOperator:
    basis = two_copy_basis(theta)
    mat = basis.T @ coeffs @ basis.conj()
    return BipartiteOperator(BipartiteDims(4, 4), mat)


def two_copy_certificate(theta: float) -> BipartiteOperator:
    """Hermitian certificate splitting the squared difference operator.

    ``H`` satisfies ``H + H^PT = (eta0 rho0 - eta1 rho1)^(x 2)`` and has
    trace norm :func:`f0`; its partial transpose has trace norm :func:`f1`.
    """
    theta = _check_theta(theta)
    c, s = math.cos(theta), math.sin(theta)
    coeffs = np.zeros((16, 16), dtype=np.complex128)
    a = (s**4 - 2 * c**2) / 16
    coeffs[_basis_index(0, +1), _basis_index(0, +1)] = a
    coeffs[_basis_index(0, -1), _basis_index(0, -1)] = -a
    k_p, k_m = _basis_index(0, +1), _basis_index(0, -1)
    coeffs[k_p, k_m] = coeffs[k_m, k_p] = -(c * s**2) / 8
    b = (1 + c**4) / 16
    coeffs[_basis_index(1, +1), _basis_index(1, +1)] = b
    coeffs[_basis_index(1, -1), _basis_index(1, -1)] = -b
    for i in range(4, 8):
        coeffs[_basis_index(i, +1), _basis_index(i, +1)] = (1 - c**4) / 32
        coeffs[_basis_index(i, -1), _basis_index(i, -1)] = -(1 - c**4) / 32
    return _operator_from_coefficients(theta, coeffs)


def two_copy_certificate_pt(theta: float) -> BipartiteOperator:
    """Closed form of the certificate's partial transpose."""
    theta = _check_theta(theta)
    c, s = math.cos(theta), math.sin(theta)
    coeffs = np.zeros((16, 16), dtype=np.complex128)
    coeffs[_basis_index(0, +1), _basis_index(0, +1)] = -(c * c) / 8
    coeffs[_basis_index(0, -1), _basis_index(0, -1)] = (c * c) / 8
    k_p, k_m = _basis_index(0, +1), _basis_index(0, -1)
    coeffs[k_p, k_m] = coeffs[k_m, k_p] = -(c * s**2) / 8
    coeffs[_basis_index(1, +1), _basis_index(1, +1)] = (c * c) / 8
    coeffs[_basis_index(1, -1), _basis_index(1, -1)] = -(c * c) / 8
    for i in (2, 3):
        coeffs[_basis_index(i, +1), _basis_index(i, +1)] = s**4 / 16
        coeffs[_basis_index(i, -1), _basis_index(i, -1)] = -(s**4) / 16
    for i in range(4, 8):
        coeffs[_basis_index(i, +1), _basis_index(i, +1)] = (1 - c**4) / 32
        coeffs[_basis_index(i, -1), _basis_index(i, -1)] = -(1 - c**4) / 32
    return _operator_from_coefficients(theta, coeffs)


def f0(theta: float) -> float:
    """Trace norm of the two-copy certificate, in closed form."""
    theta = _check_theta(theta)
    c, s = math.cos(theta), math.sin(theta)
    return (3 - c**4 + math.sqrt(4 * c**4 + s**8)) / 8


def f1(theta: float) -> float:
    """Trace norm of the certificate's partial transpose, in closed form."""
    theta = _check_theta(theta)
    c, s = math.cos(theta), math.sin(theta)
    return (1 + s * s + c * math.sqrt(c * c + s**4)) / 4


def closed_form_residuals(theta: float) -> dict[str, float]:
    """Residuals of every closed-form identity of the family at ``theta``.

    Keys:

    - ``basis_orthonormality``: max deviation of the 16-vector Gram matrix
      from the identity.
    - ``two_copy_expansion``: max deviation of the squared difference
      operator's basis expansion from :func:`two_copy_coefficients`.
    - ``certificate_sum``: Frobenius residual of ``H + H^PT`` against the
      squared difference operator.
    - ``certificate_pt``: Frobenius distance between the computed and the
      closed-form partial transpose of ``H``.
    - ``trace_norm_f0`` / ``trace_norm_f1``: trace-norm mismatches against
      ``f0`` / ``f1``.
    """
    theta = _check_theta(theta)
    ensemble = two_qubit_separable_ensemble(theta)
    lam2 = linalg.tensor_power(helstrom_operator(ensemble), 2)
    basis = two_copy_basis(theta)
    cert = two_copy_certificate(theta)
    cert_pt = linalg.partial_transpose(cert)

    gram = basis @ basis.conj().T
    expansion = basis.conj() @ lam2.entries @ basis.T
    return {
        "basis_orthonormality": float(np.max(np.abs(gram - np.eye(16)))),
        "two_copy_expansion": float(
            np.max(np.abs(expansion - two_copy_coefficients(theta)))
        ),
        "certificate_sum": linalg.frobenius_distance(cert + cert_pt, lam2),
        "certificate_pt": linalg.frobenius_distance(
            cert_pt, two_copy_certificate_pt(theta)
        ),
        "trace_norm_f0": abs(linalg.trace_norm(cert) - f0(theta)),
        "trace_norm_f1": abs(linalg.trace_norm(cert_pt) - f1(theta)),
    }


# -- JSON form -----------------------------------------------------------


def ensemble_to_json(ensemble: TwoStateEnsemble) -> dict:
    """JSON object ``{eta0, eta1, rho0, rho1}`` with operators nested."""
    return {
        "eta0": ensemble.eta0,
        "eta1": ensemble.eta1,
        "rho0": linalg.operator_to_json(ensemble.rho0),
        "rho1": linalg.operator_to_json(ensemble.rho1),
    }


def ensemble_from_json(obj: dict) -> TwoStateEnsemble:
    """Inverse of :func:`ensemble_to_json`."""
    return TwoStateEnsemble(
        float(obj["eta0"]),
        float(obj["eta1"]),
        linalg.operator_from_json(obj["rho0"]),
        linalg.operator_from_json(obj["rho1"]),
    )
