"""g-Bessel multipliers and certified inversion.

A multiplier combines two families and a weight sequence into the
operator M = sum_i m_i Lambda_i* Theta_i. Each inversion routine here
checks the hypothesis of one invertibility result, evaluates the
corresponding inverse (directly or as a truncated operator series) and
returns a certificate: the checked quantities, a rigorous bracket for
||M^-1||, the number of series terms spent, and the achieved residual
||M M^-1 - I||.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import (
    GFrame,
    _require_same_shape,
    canonical_dual,
    frame_bounds,
    frame_operator,
    scale_blocks,
    verify_duality,
)
from .errors import (
    HypothesisFailed,
    MaxIterations,
    MixedSigns,
    NonFinite,
    NonPositiveInput,
    NotAFrame,
    NotDual,
    ShapeMismatch,
    Singular,
    SingularG,
)
from .kernel import as_matrix, frobenius_norm, hermitian_inverse
from .tolerances import MAX_SERIES_TERMS, TAU_INV, TAU_RANK


@dataclass(frozen=True)
class WeightSequence:
    """A finite complex weight sequence, one entry per block index.

    `norm_inf` is the sup norm; `semi_norm_bounds` holds the extreme
    moduli (a, b) and is present exactly when every entry is nonzero.
    """

    values: np.ndarray
    norm_inf: float = field(init=False)
    semi_norm_bounds: tuple[float, float] | None = field(init=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128, copy=True).reshape(-1)
        if v.size == 0:
            raise ShapeMismatch("weight sequence must be non-empty")
        if not np.isfinite(v).all():
            raise NonFinite("weight sequence contains non-finite entries")
        v.flags.writeable = False
        moduli = np.abs(v)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "norm_inf", float(moduli.max()))
        bounds = None
        if moduli.min() > 0.0:
            bounds = (float(moduli.min()), float(moduli.max()))
        object.__setattr__(self, "semi_norm_bounds", bounds)

    def __len__(self) -> int:
        return self.values.size

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.values.imag == 0.0))

    @property
    def is_positive(self) -> bool:
        return self.is_real and bool(np.all(self.values.real > 0.0))


def as_weight_sequence(values) -> WeightSequence:
    if isinstance(values, WeightSequence):
        return values
    return WeightSequence(np.asarray(values))


class Proposition(Enum):
    P33_BIJECTION = "P33_Bijection"
    P34_DUAL_PERTURB = "P34_DualPerturb"
    C35_CANONICAL_DUAL = "C35_CanonicalDual"
    P36_BESSEL_PERTURB = "P36_BesselPerturb"
    P37_MU_PERTURB = "P37_MuPerturb"
    P38_DUAL_MU_PERTURB = "P38_DualMuPerturb"
    DIRECT = "Direct"


@dataclass(frozen=True)
class MultiplierCertificate:
    """What an inversion routine verified and achieved.

    `hypothesis_values` holds the measured quantities behind the checked
    inequality; `inverse_norm_lower/upper` bracket the true ||M^-1||;
    `series_terms_for_tol` counts partial-sum terms (0 for direct
    inversion); `residual` is the achieved ||M M^-1 - I||.
    """

    proposition: Proposition
    hypothesis_values: dict[str, float]
    inverse_norm_lower: float
    inverse_norm_upper: float
    series_terms_for_tol: int
    residual: float

    def __post_init__(self):
        if self.inverse_norm_lower > self.inverse_norm_upper:
            raise ShapeMismatch("certificate bracket is inverted")


def _weights_for(frame: GFrame, weights) -> WeightSequence:
    w = as_weight_sequence(weights)
    if len(w) != frame.n_blocks:
        raise ShapeMismatch(f"{len(w)} weights for {frame.n_blocks} blocks")
    return w


def multiplier(weights, frame: GFrame, companion: GFrame) -> np.ndarray:
    """M = sum_i m_i Lambda_i* Theta_i on matching families."""
    _require_same_shape(frame, companion)
    w = _weights_for(frame, weights)
    acc = np.zeros((frame.h_dim, frame.h_dim), dtype=np.complex128)
    for m_i, l_blk, t_blk in zip(w.values, frame.blocks, companion.blocks):
        acc += m_i * (l_blk.conj().T @ t_blk)
    return acc


def multiplier_norm_bound(weights, frame: GFrame, companion: GFrame) -> float:
    """||M|| <= sqrt(B_Lambda B_Theta) ||m||_inf with optimal upper bounds."""
    _require_same_shape(frame, companion)
    w = _weights_for(frame, weights)
    b_frame = frame_bounds(frame).upper
    b_comp = frame_bounds(companion).upper
    return math.sqrt(b_frame * b_comp) * w.norm_inf


def _definite_sign(w: WeightSequence) -> float:
    if not w.is_real:
        raise MixedSigns("weights must be real for this inversion")
    re = w.values.real
    if np.all(re > 0.0):
        return 1.0
    if np.all(re < 0.0):
        return -1.0
    raise MixedSigns("weights must be strictly positive or strictly negative")


def _require_tol(tol: float) -> float:
    if not (tol > 0.0) or not math.isfinite(tol):
        raise NonPositiveInput(f"series tolerance must be a positive real, got {tol!r}")
    return float(tol)


def _geometric_terms(contraction: float, tol: float) -> int:
    # smallest n >= 1 with q^n/(1-q) <= tol
    if contraction <= 0.0:
        return 1
    n = math.ceil(math.log(tol * (1.0 - contraction)) / math.log(contraction))
    n = max(n, 1)
    if n > MAX_SERIES_TERMS:
        raise MaxIterations(
            f"geometric tail needs {n} terms, cap is {MAX_SERIES_TERMS}"
        )
    return n


def _power_series_sum(matrix: np.ndarray, n_terms: int) -> np.ndarray:
    total = np.eye(matrix.shape[0], dtype=np.complex128)
    term = np.eye(matrix.shape[0], dtype=np.complex128)
    for _ in range(n_terms - 1):
        term = term @ matrix
        total = total + term
    return total


def _preconditioned_series(base: np.ndarray, ratio: np.ndarray, tol: float):
    """sum_k ratio^k @ base, stopping once the new increment drops below tol."""
    increment = base.copy()
    total = base.copy()
    for count in range(2, MAX_SERIES_TERMS + 2):
        increment = ratio @ increment
        total = total + increment
        if frobenius_norm(increment) <= tol:
            return total, count
    raise MaxIterations(
        f"series increment never fell below {tol:.1e} within {MAX_SERIES_TERMS} terms"
    )


def _residual(m_mat: np.ndarray, m_inv: np.ndarray) -> float:
    return frobenius_norm(m_mat @ m_inv - np.eye(m_mat.shape[0]))


def invert_via_bijection(weights, frame: GFrame, g_matrix):
    """Invert M = sum_i m_i Lambda_i* Lambda_i G exactly.

    For real sign-definite nonvanishing weights and invertible G the
    multiplier factors through the weighted frame operator, so
    M^-1 = +/- G^-1 S_w^-1 with S_w = sum_i |m_i| Lambda_i* Lambda_i.
    Returns (inverse, certificate).
    """
    w = _weights_for(frame, weights)
    sign = _definite_sign(w)
    if w.semi_norm_bounds is None:
        raise MixedSigns("weights must be bounded away from zero")
    g = as_matrix(g_matrix, "bijection operator")
    if g.shape != (frame.h_dim, frame.h_dim):
        raise ShapeMismatch(
            f"bijection operator has shape {g.shape}, expected square of size {frame.h_dim}"
        )
    sv = np.linalg.svd(g, compute_uv=False)
    if sv[-1] ** 2 <= TAU_RANK:
        raise SingularG(f"bijection operator is singular: sigma_min {sv[-1]:.3e}")
    bounds = frame_bounds(frame)
    if bounds.lower <= TAU_RANK:
        raise NotAFrame("the weighted family needs a g-frame to invert against")
    companion = GFrame(
        h_dim=frame.h_dim, blocks=tuple(b @ g for b in frame.blocks)
    )
    m_mat = multiplier(w, frame, companion)
    s_w = frame_operator(scale_blocks(frame, np.sqrt(np.abs(w.values))))
    s_w_eigs = np.linalg.eigvalsh(s_w)
    m_inv = sign * (np.linalg.inv(g) @ hermitian_inverse(s_w))
    a_w, b_w = w.semi_norm_bounds
    cert = MultiplierCertificate(
        proposition=Proposition.P33_BIJECTION,
        hypothesis_values={
            "a": a_w,
            "b": b_w,
            "A_Lambda": bounds.lower,
            "B_Lambda": bounds.upper,
            "sigma_min_G": float(sv[-1]),
            "sigma_max_G": float(sv[0]),
        },
        inverse_norm_lower=1.0 / (float(sv[0]) * float(s_w_eigs[-1])),
        inverse_norm_upper=(1.0 / float(sv[-1])) / float(s_w_eigs[0]),
        series_terms_for_tol=0,
        residual=_residual(m_mat, m_inv),
    )
    return m_inv, cert


def _dual_neumann_core(w, frame, dual, contraction, tol, swapped, proposition, hvals):
    first, second = (dual, frame) if swapped else (frame, dual)
    m_mat = multiplier(w, first, second)
    n_mat = multiplier(WeightSequence(1.0 - w.values), first, second)
    n_terms = _geometric_terms(contraction, tol)
    m_inv = _power_series_sum(n_mat, n_terms)
    cert = MultiplierCertificate(
        proposition=proposition,
        hypothesis_values={**hvals, "contraction": contraction},
        inverse_norm_lower=1.0 / (1.0 + contraction),
        inverse_norm_upper=1.0 / (1.0 - contraction),
        series_terms_for_tol=n_terms,
        residual=_residual(m_mat, m_inv),
    )
    return m_inv, cert


def invert_dual_neumann(weights, frame: GFrame, dual: GFrame,
                        tol: float = TAU_INV, swapped: bool = False):
    """Invert a multiplier of a dual pair with weights near one.

    With lambda = max|1 - m_i| and lambda*sqrt(B_Lambda*B_dual) < 1 the
    complementary multiplier is a contraction, so M^-1 is the Neumann
    sum of its powers, truncated by the geometric tail bound. `swapped`
    evaluates the (dual, frame) operator order instead.
    """
    tol = _require_tol(tol)
    w = _weights_for(frame, weights)
    if not verify_duality(frame, dual):
        raise NotDual("the companion family is not a dual of the frame")
    b_frame = frame_bounds(frame).upper
    b_dual = frame_bounds(dual).upper
    lam = float(np.max(np.abs(1.0 - w.values)))
    contraction = lam * math.sqrt(b_frame * b_dual)
    hvals = {"lambda": lam, "B_Lambda": b_frame, "B_dual": b_dual}
    if contraction >= 1.0:
        raise HypothesisFailed(
            "lambda*sqrt(B_Lambda*B_dual) < 1", {**hvals, "contraction": contraction}
        )
    return _dual_neumann_core(
        w, frame, dual, contraction, tol, swapped, Proposition.P34_DUAL_PERTURB, hvals
    )


def invert_canonical_dual(weights, frame: GFrame,
                          tol: float = TAU_INV, swapped: bool = False):
    """Invert a multiplier of the frame with its canonical dual.

    The hypothesis tightens to lambda < sqrt(A_Lambda/B_Lambda) because
    the canonical dual's optimal upper bound is 1/A_Lambda; the bracket
    becomes 1/(1 +/- lambda*sqrt(B_Lambda/A_Lambda)).
    """
    tol = _require_tol(tol)
    w = _weights_for(frame, weights)
    bounds = frame_bounds(frame)
    if bounds.lower <= TAU_RANK:
        raise NotAFrame("cannot form a canonical dual of a non-frame")
    lam = float(np.max(np.abs(1.0 - w.values)))
    threshold = math.sqrt(bounds.lower / bounds.upper)
    hvals = {"lambda": lam, "A_Lambda": bounds.lower, "B_Lambda": bounds.upper}
    if lam >= threshold:
        raise HypothesisFailed(
            "lambda < sqrt(A_Lambda/B_Lambda)", {**hvals, "threshold": threshold}
        )
    dual = canonical_dual(frame)
    contraction = lam * math.sqrt(bounds.upper / bounds.lower)
    return _dual_neumann_core(
        w, frame, dual, contraction, tol, swapped,
        Proposition.C35_CANONICAL_DUAL, hvals,
    )


def invert_bessel_perturb(weights, frame: GFrame, companion: GFrame,
                          tol: float = TAU_INV, swapped: bool = False):
    """Invert a multiplier whose companion is a small Bessel perturbation.

    Requires real sign-definite semi-normalized weights, a Bessel bound
    B_diff of the blockwise difference below A_Lambda^2/B_Lambda, and
    b/a < A_Lambda/sqrt(B_diff*B_Lambda). The inverse is the series
    sum_k [S_w^-1 (S_w -/+ M)]^k S_w^-1 preconditioned by the weighted
    frame operator S_w, truncated when the increment drops below tol.
    """
    tol = _require_tol(tol)
    w = _weights_for(frame, weights)
    _require_same_shape(frame, companion)
    sign = _definite_sign(w)
    if w.semi_norm_bounds is None:
        raise MixedSigns("weights must be bounded away from zero")
    a_w, b_w = w.semi_norm_bounds
    bounds = frame_bounds(frame)
    if bounds.lower <= TAU_RANK:
        raise NotAFrame("the base family must be a g-frame")
    a_l, b_l = bounds.lower, bounds.upper
    diff = GFrame(
        h_dim=frame.h_dim,
        blocks=tuple(t - l for t, l in zip(companion.blocks, frame.blocks)),
    )
    b_diff = frame_bounds(diff).upper
    hvals = {"a": a_w, "b": b_w, "A_Lambda": a_l, "B_Lambda": b_l, "B_diff": b_diff}
    if b_diff >= a_l**2 / b_l:
        raise HypothesisFailed("B_diff < A_Lambda^2/B_Lambda", hvals)
    if b_diff > 0.0 and b_w / a_w >= a_l / math.sqrt(b_diff * b_l):
        raise HypothesisFailed("b/a < A_Lambda/sqrt(B_diff*B_Lambda)", hvals)
    s_w = frame_operator(scale_blocks(frame, np.sqrt(np.abs(w.values))))
    s_w_inv = hermitian_inverse(s_w)
    first, second = (companion, frame) if swapped else (frame, companion)
    m_mat = multiplier(w, first, second)
    ratio = s_w_inv @ (s_w - sign * m_mat)
    total, n_terms = _preconditioned_series(s_w_inv, ratio, tol)
    m_inv = sign * total
    spread = b_w * math.sqrt(b_l * b_diff)
    cert = MultiplierCertificate(
        proposition=Proposition.P36_BESSEL_PERTURB,
        hypothesis_values=hvals,
        inverse_norm_lower=1.0 / (b_w * b_l + spread),
        inverse_norm_upper=1.0 / (a_w * a_l - spread),
        series_terms_for_tol=n_terms,
        residual=_residual(m_mat, m_inv),
    )
    return m_inv, cert


def _validated_mu(pert: GFrame, mu: float | None, hvals: dict) -> float:
    mu_actual = frame_bounds(pert).upper
    hvals["mu_computed"] = mu_actual
    if mu is None:
        return mu_actual
    mu = float(mu)
    if mu < mu_actual * (1.0 - 1e-12) - 1e-12:
        raise HypothesisFailed(
            "supplied mu must dominate the perturbation bound",
            {**hvals, "mu": mu},
        )
    return mu


def invert_mu_perturb(weights, frame: GFrame, companion: GFrame,
                      tol: float = TAU_INV, swapped: bool = False,
                      mu: float | None = None):
    """Invert a multiplier close to the frame operator.

    mu bounds sum_i ||(m_i Theta_i - Lambda_i) f||^2; the hypothesis is
    mu < A_Lambda^2/B_Lambda. The inverse is the frame-operator
    preconditioned series sum_k [S^-1 (S - M)]^k S^-1. A user-supplied
    mu is accepted if it dominates the computed optimal one.
    """
    tol = _require_tol(tol)
    w = _weights_for(frame, weights)
    _require_same_shape(frame, companion)
    bounds = frame_bounds(frame)
    if bounds.lower <= TAU_RANK:
        raise NotAFrame("the base family must be a g-frame")
    a_l, b_l = bounds.lower, bounds.upper
    pert = GFrame(
        h_dim=frame.h_dim,
        blocks=tuple(
            m_i * t - l
            for m_i, t, l in zip(w.values, companion.blocks, frame.blocks)
        ),
    )
    hvals = {"A_Lambda": a_l, "B_Lambda": b_l}
    mu_used = _validated_mu(pert, mu, hvals)
    hvals["mu"] = mu_used
    if mu_used >= a_l**2 / b_l:
        raise HypothesisFailed("mu < A_Lambda^2/B_Lambda", hvals)
    s = frame_operator(frame)
    s_inv = hermitian_inverse(s)
    first, second = (companion, frame) if swapped else (frame, companion)
    m_mat = multiplier(w, first, second)
    ratio = s_inv @ (s - m_mat)
    m_inv, n_terms = _preconditioned_series(s_inv, ratio, tol)
    # the weighted companion inherits a positive lower bound; record it
    hvals["mTheta_lower"] = frame_bounds(
        scale_blocks(companion, np.abs(w.values))
    ).lower
    root = math.sqrt(mu_used * b_l)
    cert = MultiplierCertificate(
        proposition=Proposition.P37_MU_PERTURB,
        hypothesis_values=hvals,
        inverse_norm_lower=1.0 / (b_l + root),
        inverse_norm_upper=1.0 / (a_l - root),
        series_terms_for_tol=n_terms,
        residual=_residual(m_mat, m_inv),
    )
    return m_inv, cert


def invert_dual_mu_perturb(weights, frame: GFrame, dual: GFrame, companion: GFrame,
                           tol: float = TAU_INV,
                           swapped: bool = False, mu: float | None = None):
    """Invert a multiplier close to the identity via a dual pair.

    mu bounds sum_i ||(m_i Theta_i - D_i) f||^2 against a verified dual
    D of the frame; the hypothesis is mu < 1/B_Lambda, which makes
    I - M a contraction, so M^-1 is its Neumann sum with geometric
    tail truncation.
    """
    tol = _require_tol(tol)
    w = _weights_for(frame, weights)
    _require_same_shape(frame, companion)
    if not verify_duality(frame, dual):
        raise NotDual("the dual family is not a dual of the frame")
    b_l = frame_bounds(frame).upper
    pert = GFrame(
        h_dim=frame.h_dim,
        blocks=tuple(
            m_i * t - d
            for m_i, t, d in zip(w.values, companion.blocks, dual.blocks)
        ),
    )
    hvals = {"B_Lambda": b_l}
    mu_used = _validated_mu(pert, mu, hvals)
    hvals["mu"] = mu_used
    if mu_used >= 1.0 / b_l:
        raise HypothesisFailed("mu < 1/B_Lambda", hvals)
    contraction = math.sqrt(mu_used * b_l)
    first, second = (companion, frame) if swapped else (frame, companion)
    m_mat = multiplier(w, first, second)
    n_mat = np.eye(frame.h_dim, dtype=np.complex128) - m_mat
    n_terms = _geometric_terms(contraction, tol)
    m_inv = _power_series_sum(n_mat, n_terms)
    cert = MultiplierCertificate(
        proposition=Proposition.P38_DUAL_MU_PERTURB,
        hypothesis_values={**hvals, "contraction": contraction},
        inverse_norm_lower=1.0 / (1.0 + contraction),
        inverse_norm_upper=1.0 / (1.0 - contraction),
        series_terms_for_tol=n_terms,
        residual=_residual(m_mat, m_inv),
    )
    return m_inv, cert


def lower_bound_from_invertible(m_matrix, b_other: float, side: str = "m_lambda") -> float:
    """Lower frame bound 1/(B_other ||M^-1||^2) for the weighted family.

    `side` records which family of the invertible multiplier the bound
    certifies: "m_lambda" pairs with the companion's Bessel bound,
    "m_theta" with the frame's.
    """
    if side not in ("m_lambda", "m_theta"):
        raise NonPositiveInput(f"side must be 'm_lambda' or 'm_theta', got {side!r}")
    if not (b_other > 0.0) or not math.isfinite(b_other):
        raise NonPositiveInput(f"Bessel bound must be a positive real, got {b_other!r}")
    m = as_matrix(m_matrix, "multiplier")
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"multiplier must be square, got shape {m.shape}")
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[-1] ** 2 <= TAU_RANK:
        raise Singular(f"multiplier is not invertible: sigma_min {sv[-1]:.3e}")
    return float(sv[-1] ** 2) / float(b_other)
