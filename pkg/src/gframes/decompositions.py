"""Splitting g-frames into structured components.

Every g-frame on C^d whose block dimensions sum to d is a scalar
multiple of the sum of three g-orthonormal bases; g-Riesz families are
linear combinations of two. General g-frames split into two normalized
tight families, or into a g-ONB plus a g-Riesz family. All
constructions run through the averaged-unitary splittings of the
kernel module and reconstruct the input exactly up to roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    FrameClass,
    GFrame,
    classify,
    frame_bounds,
    split_stacked,
)
from .errors import (
    DimensionMismatch,
    GFrameError,
    NotAFrame,
    NotCoisometry,
    NotGOnb,
    NotGRiesz,
)
from .kernel import (
    as_matrix,
    frobenius_norm,
    operator_norm,
    polar_decompose,
    unitary_pair_from_contraction,
    unitary_triple_from_small_norm,
)
from .tolerances import TAU_HERM, TAU_RANK, TAU_RECON


class ComponentKind(Enum):
    G_ONB = "GOnb"
    NORMALIZED_TIGHT = "NormalizedTight"
    G_RIESZ = "GRiesz"


@dataclass(frozen=True)
class GFrameDecomposition:
    """Scalars and components with sum_j scalars[j]*components[j] = input."""

    scalars: tuple[float, ...]
    components: tuple[GFrame, ...]
    component_kinds: tuple[ComponentKind, ...]
    reconstruction_residual: float


def _component_matches(kind: ComponentKind, frame: GFrame) -> bool:
    report = classify(frame)
    if kind is ComponentKind.G_ONB:
        return report.is_g_onb
    if kind is ComponentKind.NORMALIZED_TIGHT:
        return report.bounds.classification is FrameClass.PARSEVAL
    return report.is_g_riesz


def _certified(scalars, stacked_components, kinds, frame: GFrame) -> GFrameDecomposition:
    target = frame.analysis_matrix()
    partition = frame.partition
    components = tuple(
        GFrame(h_dim=frame.h_dim, blocks=tuple(split_stacked(m, partition)))
        for m in stacked_components
    )
    recon = sum(s * m for s, m in zip(scalars, stacked_components))
    residual = frobenius_norm(recon - target)
    if residual > TAU_RECON * (1.0 + frobenius_norm(target)):
        raise GFrameError(
            f"decomposition failed to reconstruct: residual {residual:.3e}"
        )
    for comp, kind in zip(components, kinds):
        if not _component_matches(kind, comp):
            raise GFrameError(
                f"decomposition produced a component that is not a {kind.value}"
            )
    return GFrameDecomposition(
        scalars=tuple(float(s) for s in scalars),
        components=components,
        component_kinds=tuple(kinds),
        reconstruction_residual=residual,
    )


def _require_frame(frame: GFrame) -> None:
    bounds = frame_bounds(frame)
    if bounds.lower <= TAU_RANK:
        raise NotAFrame(
            f"the family has no positive lower frame bound (got {bounds.lower:.3e})"
        )


def decompose_three_gonb(frame: GFrame) -> GFrameDecomposition:
    """Write a g-frame with sum(d_i) = h_dim as a*(U1 + U2 + U3) with
    three g-ONB components, a = ||T||.

    T/(3a) has norm 1/3, so it is the mean of three unitaries; each
    unitary, cut back into blocks, is a g-ONB.
    """
    _require_frame(frame)
    if sum(frame.partition) != frame.h_dim:
        raise DimensionMismatch(
            f"block dimensions sum to {sum(frame.partition)}, need {frame.h_dim}"
        )
    t = frame.analysis_matrix()
    a = operator_norm(t)
    u1, u2, u3 = unitary_triple_from_small_norm(t / (3.0 * a))
    return _certified(
        (a, a, a), (u1, u2, u3), (ComponentKind.G_ONB,) * 3, frame
    )


def decompose_two_gonb_combo(frame: GFrame) -> GFrameDecomposition:
    """Write a g-Riesz family as a*U1 + a*U2 with g-ONB components.

    Only g-Riesz families admit such a combination; anything else is
    rejected. Here a = ||T||/2 and the pair comes from splitting the
    contraction T/||T||.
    """
    if not classify(frame).is_g_riesz:
        raise NotGRiesz("two-g-ONB combinations exist exactly for g-Riesz families")
    t = frame.analysis_matrix()
    norm = operator_norm(t)
    u1, u2 = unitary_pair_from_contraction(t / norm)
    a = norm / 2.0
    return _certified((a, a), (u1, u2), (ComponentKind.G_ONB,) * 2, frame)


def coisometry_image(theta: GFrame, k) -> GFrame:
    """Push a g-ONB through a coisometry: blocks Theta_i K*.

    K must satisfy K K* = I on the target space; the image is a
    normalized tight (Parseval) g-frame there.
    """
    if not classify(theta).is_g_onb:
        raise NotGOnb("the family to push forward must be a g-ONB")
    k_mat = as_matrix(k, "coisometry")
    if k_mat.shape[1] != theta.h_dim:
        raise NotCoisometry(
            f"coisometry has {k_mat.shape[1]} columns, expected {theta.h_dim}"
        )
    defect = frobenius_norm(k_mat @ k_mat.conj().T - np.eye(k_mat.shape[0]))
    if defect > TAU_HERM:
        raise NotCoisometry(f"K K* differs from identity by {defect:.3e}")
    image = GFrame(
        h_dim=k_mat.shape[0],
        blocks=tuple(b @ k_mat.conj().T for b in theta.blocks),
        label=f"coisometry image of {theta.label}" if theta.label else None,
    )
    if frame_bounds(image).classification is not FrameClass.PARSEVAL:
        raise GFrameError("coisometry image failed Parseval certification")
    return image


def decompose_two_parseval(frame: GFrame) -> GFrameDecomposition:
    """Write any g-frame as a*(P1 + P2) with normalized tight components.

    With T = V P polar and a = ||T||/2, the contraction P/(2a) extends
    to a unitary B, and V B, V B* stack two Parseval components whose
    mean recovers T/(2a).
    """
    _require_frame(frame)
    t = frame.analysis_matrix()
    norm = operator_norm(t)
    a = norm / 2.0
    parts = polar_decompose(t)
    p_unit = parts.positive / norm
    # spectrum of p_unit lies in (0, 1]; build the unitary extension in
    # its eigenbasis so the square root commutes exactly
    eigs, vecs = np.linalg.eigh(p_unit)
    eigs = np.clip(eigs, 0.0, 1.0)
    b_hat = (vecs * (eigs + 1j * np.sqrt(1.0 - eigs**2))) @ vecs.conj().T
    comp1 = parts.isometry @ b_hat
    comp2 = parts.isometry @ b_hat.conj().T
    return _certified(
        (a, a), (comp1, comp2), (ComponentKind.NORMALIZED_TIGHT,) * 2, frame
    )


def decompose_gonb_plus_griesz(frame: GFrame) -> GFrameDecomposition:
    """Write a g-frame with sum(d_i) = h_dim as one g-ONB plus one g-Riesz
    family, both with scalar 1.

    With T = W P polar, take -W as the g-ONB part and T + W = W(P + I)
    as the g-Riesz part; P + I has spectrum >= 1, so the second
    component is always invertible.
    """
    _require_frame(frame)
    if sum(frame.partition) != frame.h_dim:
        raise DimensionMismatch(
            f"block dimensions sum to {sum(frame.partition)}, need {frame.h_dim}"
        )
    t = frame.analysis_matrix()
    w = polar_decompose(t).isometry
    return _certified(
        (1.0, 1.0),
        (-w, t + w),
        (ComponentKind.G_ONB, ComponentKind.G_RIESZ),
        frame,
    )
