"""Dense complex-matrix primitives.

Spectral ranges, polar factors, positive square roots, and the two
averaged-unitary splittings: any contraction is the mean of two
unitaries, and any operator of norm at most 1/3 is the mean of three.
Everything works on plain complex128 ndarrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NegativeEigenvalue,
    NonFinite,
    NormTooLarge,
    NotHermitian,
    ShapeMismatch,
    Singular,
)
from .tolerances import TAU_HERM, TAU_NORM, TAU_PSD, TAU_RANK


def as_matrix(value, name: str = "matrix") -> np.ndarray:
    """Validate and convert input to a frozen 2-D complex128 array."""
    a = np.array(value, dtype=np.complex128, order="C", copy=True)
    if a.ndim != 2:
        raise ShapeMismatch(f"{name} must be 2-dimensional, got ndim={a.ndim}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeMismatch(f"{name} must be non-empty, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise NonFinite(f"{name} contains NaN or infinite entries")
    a.flags.writeable = False
    return a


def _require_square(a: np.ndarray, name: str) -> None:
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"{name} must be square, got shape {a.shape}")


def frobenius_norm(a) -> float:
    return float(np.linalg.norm(a))


def operator_norm(a) -> float:
    return float(np.linalg.norm(a, 2))


def hermitian_part(a: np.ndarray) -> np.ndarray:
    return (a + a.conj().T) / 2.0


def hermitian_defect(a: np.ndarray) -> float:
    return frobenius_norm(a - a.conj().T)


def spectral_range(matrix, tol: float = TAU_HERM) -> tuple[float, float]:
    """Smallest and largest eigenvalue of a self-adjoint matrix.

    Rejects matrices whose self-adjoint defect exceeds `tol`; the
    eigenvalues are those of the symmetrized matrix (M + M*)/2.
    """
    a = as_matrix(matrix, "spectral_range input")
    _require_square(a, "spectral_range input")
    defect = hermitian_defect(a)
    if defect > tol:
        raise NotHermitian(
            f"matrix is not self-adjoint: defect {defect:.3e} exceeds {tol:.1e}"
        )
    eigs = np.linalg.eigvalsh(hermitian_part(a))
    return float(eigs[0]), float(eigs[-1])


def hermitian_inverse(matrix, floor: float = TAU_RANK) -> np.ndarray:
    """Inverse of a self-adjoint positive definite matrix via its spectrum."""
    a = as_matrix(matrix, "hermitian_inverse input")
    _require_square(a, "hermitian_inverse input")
    eigs, vecs = np.linalg.eigh(hermitian_part(a))
    if eigs[0] <= floor:
        raise Singular(
            f"matrix is numerically singular: smallest eigenvalue {eigs[0]:.3e}"
        )
    return (vecs * (1.0 / eigs)) @ vecs.conj().T


@dataclass(frozen=True)
class PolarParts:
    """Factors of M = isometry @ positive with positive = (M* M)^(1/2)."""

    isometry: np.ndarray
    positive: np.ndarray


def polar_decompose(matrix) -> PolarParts:
    """Polar factors of a tall or square matrix.

    The isometry has orthonormal columns in every case, including
    rank-deficient input, where the SVD fixes the kernel columns
    deterministically. For square input the isometry is unitary.
    """
    a = as_matrix(matrix, "polar input")
    if a.shape[0] < a.shape[1]:
        raise ShapeMismatch(
            f"polar factorization needs rows >= cols, got shape {a.shape}"
        )
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    isometry = u @ vh
    positive = (vh.conj().T * s) @ vh
    positive = hermitian_part(positive)
    return PolarParts(isometry=isometry, positive=positive)


def psd_sqrt(matrix, tol_herm: float = TAU_HERM, tol_psd: float = TAU_PSD) -> np.ndarray:
    """Positive square root of a self-adjoint PSD matrix.

    Eigenvalues in [-tol_psd, 0) are treated as roundoff and clamped to
    zero; anything below -tol_psd is rejected.
    """
    a = as_matrix(matrix, "psd_sqrt input")
    _require_square(a, "psd_sqrt input")
    defect = hermitian_defect(a)
    if defect > tol_herm:
        raise NotHermitian(
            f"matrix is not self-adjoint: defect {defect:.3e} exceeds {tol_herm:.1e}"
        )
    eigs, vecs = np.linalg.eigh(hermitian_part(a))
    if eigs[0] < -tol_psd:
        raise NegativeEigenvalue(
            f"matrix is not PSD: smallest eigenvalue {eigs[0]:.3e}"
        )
    root = (vecs * np.sqrt(np.clip(eigs, 0.0, None))) @ vecs.conj().T
    return hermitian_part(root)


def _contraction_pair(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # A = WP polar, B = P + i(I - P^2)^(1/2), pair (WB, WB*). Working in the
    # singular basis keeps P and the root exactly commuting; clipping the
    # singular values at 1 absorbs inputs that exceed norm 1 by roundoff.
    u, s, vh = np.linalg.svd(a)
    s = np.clip(s, 0.0, 1.0)
    w = u @ vh
    b = (vh.conj().T * (s + 1j * np.sqrt(1.0 - s**2))) @ vh
    return w @ b, w @ b.conj().T


def unitary_pair_from_contraction(matrix, tol: float = TAU_NORM):
    """Two unitaries averaging to a given contraction.

    Returns (U1, U2) with (U1 + U2)/2 equal to the input, which must be
    square with operator norm at most 1 (plus `tol` slack).
    """
    a = as_matrix(matrix, "contraction")
    _require_square(a, "contraction")
    norm = operator_norm(a)
    if norm > 1.0 + tol:
        raise NormTooLarge(f"operator norm {norm:.6g} exceeds 1")
    return _contraction_pair(a)


def unitary_triple_from_small_norm(matrix, tol: float = TAU_NORM):
    """Three unitaries averaging to an operator of norm at most 1/3.

    U1 is the unitary polar factor of 3A; the remaining correction
    (3A - U1)/2 is a contraction and splits into the other two.
    """
    a = as_matrix(matrix, "small-norm operator")
    _require_square(a, "small-norm operator")
    norm = operator_norm(a)
    if norm > 1.0 / 3.0 + tol:
        raise NormTooLarge(f"operator norm {norm:.6g} exceeds 1/3")
    tripled = 3.0 * a
    u1 = polar_decompose(tripled).isometry
    u2, u3 = _contraction_pair((tripled - u1) / 2.0)
    return u1, u2, u3
