"""Dense complex linear algebra for small channel matrices (M <= 8 or so).

Thin wrappers around numpy/LAPACK plus a Householder construction of the
orthonormal complement used by the transmit/receive zero-forcing projections.
"""

from __future__ import annotations

import numpy as np

from .errors import NonHermitianInput, ZeroVector

__all__ = [
    "hermitian",
    "log_det_identity_plus",
    "singular_values",
    "orthonormal_complement",
]

# relative asymmetry tolerated before log_det_identity_plus refuses the input
HERMITIAN_RTOL = 1e-8


def hermitian(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.asarray(a)).T


def log_det_identity_plus(c: float, a: np.ndarray) -> float:
    """log2 det(I + c*A) in bits for Hermitian PSD ``a`` and ``c >= 0``.

    The input is defensively symmetrized to (A + A^H)/2; relative asymmetry
    beyond ``HERMITIAN_RTOL`` raises :class:`NonHermitianInput`. Eigenvalues
    that round off slightly negative are clipped to zero, so the result is
    always nonnegative.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"square matrix required, got shape {a.shape}")
    if not c >= 0.0:
        raise ValueError("c must be nonnegative")
    scale = float(np.abs(a).max()) if a.size else 0.0
    if scale > 0.0:
        asym = float(np.abs(a - hermitian(a)).max())
        if asym > HERMITIAN_RTOL * scale:
            raise NonHermitianInput(
                f"relative asymmetry {asym / scale:.3e} exceeds {HERMITIAN_RTOL:.0e}"
            )
    sym = 0.5 * (a + hermitian(a))
    eig = np.linalg.eigvalsh(sym)
    return float(np.log2(1.0 + c * np.clip(eig, 0.0, None)).sum())


def singular_values(a: np.ndarray) -> np.ndarray:
    """Singular values in descending order, length min(rows, cols).

    A 1-D input is treated as a single-row matrix.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"matrix required, got {a.ndim} dimensions")
    return np.linalg.svd(a, compute_uv=False)


def orthonormal_complement(v: np.ndarray) -> np.ndarray:
    """M x (M-1) matrix Q with orthonormal columns and Q^H v = 0.

    Q is read off the Householder reflector H = I - 2 w w^H / ||w||^2 with
    w = v + phase(v_0) ||v|| e_1: H maps v onto the first basis vector, so
    its remaining columns span the complement. Column phases are arbitrary;
    every consumer in this package is invariant to the choice.
    """
    v = np.asarray(v, dtype=complex).reshape(-1)
    m = v.size
    if m < 2:
        raise ValueError("need a vector of length >= 2")
    nrm = float(np.linalg.norm(v))
    if nrm <= 1e-300:
        raise ZeroVector("cannot build a complement of the zero vector")
    w = v.copy()
    phase = v[0] / abs(v[0]) if abs(v[0]) > 0.0 else 1.0
    w[0] += phase * nrm
    house = np.eye(m, dtype=complex) - (2.0 / np.vdot(w, w).real) * np.outer(w, w.conj())
    return house[:, 1:]
