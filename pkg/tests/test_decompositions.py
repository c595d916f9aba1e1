"""Structured splittings: averaged g-ONBs, Parseval pairs, coisometry images."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import identity_gframe, random_partition
from gframes import (
    ComponentKind,
    GFrame,
    classify,
    frame_bounds,
    scale_blocks,
)
from gframes.decompositions import (
    coisometry_image,
    decompose_gonb_plus_griesz,
    decompose_three_gonb,
    decompose_two_gonb_combo,
    decompose_two_parseval,
)
from gframes.errors import (
    DimensionMismatch,
    NotAFrame,
    NotCoisometry,
    NotGOnb,
    NotGRiesz,
)
from gframes.kernel import frobenius_norm
from gframes.sampling import (
    random_coisometry,
    random_deficient,
    random_g_onb,
    random_g_riesz,
    random_gframe,
)


def reconstruction(dec):
    return sum(
        s * c.analysis_matrix() for s, c in zip(dec.scalars, dec.components)
    )


def assert_certified(dec, frame):
    t = frame.analysis_matrix()
    assert dec.reconstruction_residual <= 1e-9 * (1 + frobenius_norm(t))
    assert frobenius_norm(reconstruction(dec) - t) == pytest.approx(
        dec.reconstruction_residual, abs=1e-12
    )
    for comp, kind in zip(dec.components, dec.component_kinds):
        rep = classify(comp)
        if kind is ComponentKind.G_ONB:
            assert rep.is_g_onb
        elif kind is ComponentKind.NORMALIZED_TIGHT:
            assert rep.is_parseval
        else:
            assert rep.is_g_riesz


# -- three-g-ONB sums --


def test_three_gonb_random_riesz():
    rng = np.random.default_rng(211)
    frame = random_g_riesz(rng, 4, (2, 2))
    dec = decompose_three_gonb(frame)
    assert dec.component_kinds == (ComponentKind.G_ONB,) * 3
    assert dec.scalars == (dec.scalars[0],) * 3
    assert_certified(dec, frame)


def test_three_gonb_scalar_is_operator_norm():
    rng = np.random.default_rng(223)
    frame = random_g_riesz(rng, 5, (1, 2, 2))
    dec = decompose_three_gonb(frame)
    assert dec.scalars[0] == pytest.approx(
        np.linalg.norm(frame.analysis_matrix(), 2)
    )


def test_three_gonb_scaling_covariance():
    rng = np.random.default_rng(227)
    frame = random_g_riesz(rng, 4, (2, 2))
    base = decompose_three_gonb(frame)
    for c in (0.5, 3.0):
        scaled = decompose_three_gonb(
            GFrame(4, tuple(c * b for b in frame.blocks))
        )
        assert scaled.scalars[0] == pytest.approx(c * base.scalars[0])
        assert_certified(scaled, GFrame(4, tuple(c * b for b in frame.blocks)))


def test_three_gonb_rejects_overcomplete():
    rng = np.random.default_rng(229)
    with pytest.raises(DimensionMismatch):
        decompose_three_gonb(random_gframe(rng, 3, (2, 2)))


def test_three_gonb_rejects_non_frame():
    rng = np.random.default_rng(233)
    with pytest.raises(NotAFrame):
        decompose_three_gonb(random_deficient(rng, 4, (2, 2)))


# -- two-g-ONB combinations (g-Riesz only) --


def test_two_gonb_diagonal_example():
    # T = 2I: contraction T/||T|| = I splits into (I, I), scalars 1, 1
    frame = GFrame(2, (np.array([[2.0, 0.0]]), np.array([[0.0, 2.0]])))
    dec = decompose_two_gonb_combo(frame)
    assert dec.scalars == pytest.approx((1.0, 1.0))
    assert dec.reconstruction_residual <= 1e-12
    for comp in dec.components:
        assert np.allclose(comp.analysis_matrix(), np.eye(2))


def test_two_gonb_random_invertible():
    rng = np.random.default_rng(239)
    frame = random_g_riesz(rng, 4, (1, 3))
    dec = decompose_two_gonb_combo(frame)
    assert dec.component_kinds == (ComponentKind.G_ONB,) * 2
    assert_certified(dec, frame)


def test_two_gonb_rejects_non_riesz():
    rng = np.random.default_rng(241)
    with pytest.raises(NotGRiesz):
        decompose_two_gonb_combo(random_gframe(rng, 3, (2, 2)))
    with pytest.raises(NotGRiesz):
        decompose_two_gonb_combo(random_deficient(rng, 4, (2, 2)))


@settings(max_examples=25)
@given(st.integers(0, 2**31 - 1))
def test_two_gonb_converse(seed):
    # a*Y + b*G with 0 < |a| < |b| from two g-ONBs is always g-Riesz
    rng = np.random.default_rng(seed)
    dim, partition = random_partition(rng, square=True)
    y = random_g_onb(rng, dim, partition)
    g = random_g_onb(rng, dim, partition)
    a = float(rng.uniform(0.1, 0.9))
    b = float(rng.uniform(a + 0.05, 2.0))
    combo = GFrame(
        dim, tuple(a * yb + b * gb for yb, gb in zip(y.blocks, g.blocks))
    )
    assert classify(combo).is_g_riesz


# -- coisometry images --


def test_coisometry_identity_example():
    theta = identity_gframe(2)
    image = coisometry_image(theta, np.array([[1.0, 0.0]]))
    assert image.h_dim == 1
    assert np.allclose(image.blocks[0], [[1.0]])
    assert np.allclose(image.blocks[1], [[0.0]])
    b = frame_bounds(image)
    assert (b.lower, b.upper) == pytest.approx((1.0, 1.0))


def test_coisometry_random_is_parseval():
    rng = np.random.default_rng(251)
    for _ in range(25):
        dim, partition = random_partition(rng, square=True)
        theta = random_g_onb(rng, dim, partition)
        d0 = int(rng.integers(1, dim + 1))
        image = coisometry_image(theta, random_coisometry(rng, d0, dim))
        b = frame_bounds(image)
        assert abs(b.lower - 1.0) <= 1e-10
        assert abs(b.upper - 1.0) <= 1e-10


def test_coisometry_rejects_non_onb():
    rng = np.random.default_rng(257)
    frame = random_g_riesz(rng, 4, (2, 2), sv_range=(0.5, 2.0))
    with pytest.raises(NotGOnb):
        coisometry_image(frame, random_coisometry(rng, 2, 4))


def test_coisometry_rejects_bad_k():
    rng = np.random.default_rng(263)
    theta = random_g_onb(rng, 4, (2, 2))
    with pytest.raises(NotCoisometry):
        coisometry_image(theta, np.ones((2, 4)))
    with pytest.raises(NotCoisometry):
        coisometry_image(theta, random_coisometry(rng, 2, 3))


# -- two-Parseval sums --


def test_two_parseval_overcomplete():
    rng = np.random.default_rng(269)
    frame = random_gframe(rng, 3, (2, 2))
    dec = decompose_two_parseval(frame)
    assert dec.component_kinds == (ComponentKind.NORMALIZED_TIGHT,) * 2
    assert dec.scalars[0] == pytest.approx(
        np.linalg.norm(frame.analysis_matrix(), 2) / 2
    )
    assert_certified(dec, frame)


def test_two_parseval_components_are_adjoint_related():
    # the two components share the polar isometry: V B and V B*
    rng = np.random.default_rng(271)
    frame = random_gframe(rng, 4, (2, 2, 1))
    dec = decompose_two_parseval(frame)
    c1 = dec.components[0].analysis_matrix()
    c2 = dec.components[1].analysis_matrix()
    assert frobenius_norm(c1.conj().T @ c1 - np.eye(4)) <= 1e-9
    assert frobenius_norm(c1.conj().T @ c2 + c2.conj().T @ c1 - 2 * np.eye(4)) > 0


def test_two_parseval_rejects_non_frame():
    rng = np.random.default_rng(277)
    with pytest.raises(NotAFrame):
        decompose_two_parseval(random_deficient(rng, 3, (2, 2)))


# -- g-ONB plus g-Riesz --


def test_gonb_plus_griesz_random():
    rng = np.random.default_rng(281)
    frame = random_g_riesz(rng, 4, (2, 2))
    dec = decompose_gonb_plus_griesz(frame)
    assert dec.scalars == (1.0, 1.0)
    assert dec.component_kinds == (ComponentKind.G_ONB, ComponentKind.G_RIESZ)
    assert dec.reconstruction_residual <= 1e-12 * (
        1 + frobenius_norm(frame.analysis_matrix())
    )
    assert_certified(dec, frame)


def test_gonb_plus_griesz_rejects():
    rng = np.random.default_rng(283)
    with pytest.raises(DimensionMismatch):
        decompose_gonb_plus_griesz(random_gframe(rng, 3, (2, 2)))
    with pytest.raises(NotAFrame):
        decompose_gonb_plus_griesz(random_deficient(rng, 4, (2, 2)))


# -- cross-cutting properties --


@settings(max_examples=30)
@given(st.integers(0, 2**31 - 1))
def test_all_square_ops_reconstruct(seed):
    rng = np.random.default_rng(seed)
    dim, partition = random_partition(rng, square=True)
    frame = random_g_riesz(rng, dim, partition)
    for op in (
        decompose_three_gonb,
        decompose_two_gonb_combo,
        decompose_two_parseval,
        decompose_gonb_plus_griesz,
    ):
        assert_certified(op(frame), frame)


def test_component_blocks_share_partition():
    rng = np.random.default_rng(293)
    frame = random_gframe(rng, 3, (1, 2, 2))
    dec = decompose_two_parseval(frame)
    for comp in dec.components:
        assert comp.partition == frame.partition
        assert comp.h_dim == frame.h_dim
