"""Dense Hermitian operator algebra on bipartite product spaces.

Every operator carries an explicit ``(d_A, d_B)`` factorization and is
stored in the product basis ``|a> (x) |b>`` with Bob's index fastest,
i.e. row index ``a * d_B + b``.  All operations are pure functions over
immutable values, so results can be shared freely across tasks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLarge, NonConvergence

# Largest supported total dimension: six 2x2 copies (4096 x 4096 dense).
MAX_DIM = 4096

# Construction-time Hermiticity tolerance (max absolute entry deviation).
HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class BipartiteDims:
    """Local dimensions of a genuinely two-party space (both >= 2)."""

    d_a: int
    d_b: int

    def __post_init__(self) -> None:
        if self.d_a < 2 or self.d_b < 2:
            raise ValueError(
                f"local dimensions must both be >= 2, got {self.d_a} x {self.d_b}"
            )

    @property
    def total(self) -> int:
        return self.d_a * self.d_b


@dataclass(frozen=True, eq=False)
class BipartiteOperator:
    """Hermitian operator on ``C^{d_a} (x) C^{d_b}``, stored dense.

    Entries are complex throughout; Hermiticity is enforced at
    construction to within :data:`HERMITICITY_TOL`.  The stored array is
    marked read-only, so instances are safe to share between tasks.
    """

    dims: BipartiteDims
    entries: np.ndarray

    def __post_init__(self) -> None:
        n = self.dims.total
        if n > MAX_DIM:
            raise DimensionTooLarge(
                f"total dimension {n} exceeds the dense guard {MAX_DIM}"
            )
        mat = np.array(self.entries, dtype=np.complex128)
        if mat.shape != (n, n):
            raise ValueError(f"expected a {n} x {n} matrix, got shape {mat.shape}")
        dev = float(np.max(np.abs(mat - mat.conj().T))) if n else 0.0
        if dev > HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e})")
        mat.flags.writeable = False
        object.__setattr__(self, "entries", mat)

    # -- arithmetic on a common space (standard semantics) --------------

    def _require_same_dims(self, other: "BipartiteOperator") -> None:
        if self.dims != other.dims:
            raise ValueError(f"dimension mismatch: {self.dims} vs {other.dims}")

    def __add__(self, other: "BipartiteOperator") -> "BipartiteOperator":
        self._require_same_dims(other)
        return BipartiteOperator(self.dims, self.entries + other.entries)

    def __sub__(self, other: "BipartiteOperator") -> "BipartiteOperator":
        self._require_same_dims(other)
        return BipartiteOperator(self.dims, self.entries - other.entries)

    def __neg__(self) -> "BipartiteOperator":
        return BipartiteOperator(self.dims, -self.entries)

    def __mul__(self, scalar: float) -> "BipartiteOperator":
        return BipartiteOperator(self.dims, float(scalar) * self.entries)

    __rmul__ = __mul__


def identity(dims: BipartiteDims) -> BipartiteOperator:
    """Identity operator on the given bipartite space."""
    return BipartiteOperator(dims, np.eye(dims.total, dtype=np.complex128))


def zero(dims: BipartiteDims) -> BipartiteOperator:
    """Zero operator on the given bipartite space."""
    return BipartiteOperator(dims, np.zeros((dims.total, dims.total), np.complex128))


def trace(x: BipartiteOperator) -> float:
    """Trace of a Hermitian operator (real by construction)."""
    return float(np.trace(x.entries).real)


def frobenius_distance(x: BipartiteOperator, y: BipartiteOperator) -> float:
    """Frobenius norm of the difference ``x - y``."""
    x._require_same_dims(y)
    return float(np.linalg.norm(x.entries - y.entries))


def tensor_bipartite(x: BipartiteOperator, y: BipartiteOperator) -> BipartiteOperator:
    """Tensor product that keeps the Alice:Bob bipartition.

    The plain Kronecker product orders factors as ``A1 B1 A2 B2``; here the
    indices are permuted so that all Alice factors group together and all
    Bob factors group together (``A1 A2 B1 B2``), which is the fixed basis
    convention of this package.

    Parameters
    ----------
    x, y : BipartiteOperator
        Factors on ``(dA1, dB1)`` and ``(dA2, dB2)``.

    Returns
    -------
    BipartiteOperator
        Operator on ``(dA1 * dA2, dB1 * dB2)``.
    """
    da1, db1 = x.dims.d_a, x.dims.d_b
    da2, db2 = y.dims.d_a, y.dims.d_b
    out_dims = BipartiteDims(da1 * da2, db1 * db2)
    if out_dims.total > MAX_DIM:
        raise DimensionTooLarge(
            f"tensor product dimension {out_dims.total} exceeds the guard {MAX_DIM}"
        )
    tx = x.entries.reshape(da1, db1, da1, db1)
    ty = y.entries.reshape(da2, db2, da2, db2)
    # indices: a1 b1 a1' b1' , a2 b2 a2' b2'  ->  a1 a2 b1 b2 a1' a2' b1' b2'
    t = np.einsum("abcd,efgh->aebfcgdh", tx, ty)
    n = out_dims.total
    return BipartiteOperator(out_dims, t.reshape(n, n))


def tensor_power(x: BipartiteOperator, k: int) -> BipartiteOperator:
    """k-fold bipartite tensor power of ``x`` (k >= 1)."""
    if k < 1:
        raise ValueError("tensor power requires k >= 1")
    out = x
    for _ in range(k - 1):
        out = tensor_bipartite(out, x)
    return out


def tensor_bipartite_vector(
    u: np.ndarray, dims_u: BipartiteDims, v: np.ndarray, dims_v: BipartiteDims
) -> tuple[np.ndarray, BipartiteDims]:
    """Tensor product of state vectors with the same A:B regrouping."""
    out_dims = BipartiteDims(dims_u.d_a * dims_v.d_a, dims_u.d_b * dims_v.d_b)
    w = np.einsum(
        "ab,cd->acbd",
        np.asarray(u, dtype=np.complex128).reshape(dims_u.d_a, dims_u.d_b),
        np.asarray(v, dtype=np.complex128).reshape(dims_v.d_a, dims_v.d_b),
    )
    return w.reshape(-1), out_dims


def partial_transpose(x: BipartiteOperator) -> BipartiteOperator:
    """Transpose Bob's factor in the fixed product basis.

    Maps ``entry((a,b),(a',b'))`` to ``entry((a,b'),(a',b))``.  The map is
    a linear involution: applying it twice returns the input bit-exactly.
    Transposing Alice's factor instead differs by a full transpose, which
    changes no eigenvalue, trace norm or positivity verdict.
    """
    da, db = x.dims.d_a, x.dims.d_b
    n = x.dims.total
    t = x.entries.reshape(da, db, da, db).transpose(0, 3, 2, 1).reshape(n, n)
    return BipartiteOperator(x.dims, t)


def hermitian_eigenvalues(x: BipartiteOperator) -> np.ndarray:
    """All real eigenvalues of a Hermitian operator, nondecreasing."""
    try:
        return np.linalg.eigvalsh(x.entries)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - pathological input
        raise NonConvergence(str(exc)) from exc


def hermitian_eigensystem(x: BipartiteOperator) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (nondecreasing) and orthonormal eigenvectors (columns)."""
    try:
        return np.linalg.eigh(x.entries)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - pathological input
        raise NonConvergence(str(exc)) from exc


def trace_norm(x: BipartiteOperator) -> float:
    """Sum of absolute eigenvalues of a Hermitian operator."""
    return float(np.sum(np.abs(hermitian_eigenvalues(x))))


def is_psd(x: BipartiteOperator, tol: float) -> bool:
    """True iff the minimum eigenvalue is >= -tol (tol must be >= 0)."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return bool(hermitian_eigenvalues(x)[0] >= -tol)


# -- JSON form used by the command-line tools ---------------------------


def operator_to_json(x: BipartiteOperator) -> dict:
    """JSON object ``{d_A, d_B, entries: [[re, im], ...]}`` (row-major)."""
    flat = x.entries.reshape(-1)
    return {
        "d_A": x.dims.d_a,
        "d_B": x.dims.d_b,
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def operator_from_json(obj: dict) -> BipartiteOperator:
    """Inverse of :func:`operator_to_json`."""
    dims = BipartiteDims(int(obj["d_A"]), int(obj["d_B"]))
    n = dims.total
    pairs = np.asarray(obj["entries"], dtype=np.float64)
    if pairs.shape != (n * n, 2):
        raise ValueError(f"expected {n * n} [re, im] pairs, got shape {pairs.shape}")
    mat = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(n, n)
    return BipartiteOperator(dims, mat)
