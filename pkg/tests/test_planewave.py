import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diracsym.discrete import make_C, operator
from diracsym.planewave import (
    GAMMA,
    PlaneWave,
    PlaneWaveState,
    bar_product,
    charge_conjugate,
    companion_spinor,
    dirac_residual,
    eval_psi,
    momentum_residual,
    ptq_vs_c_check,
    random_momentum,
    random_points,
    random_spinor,
    sheet_identify,
    shell_p0,
    spinor_neg,
    spinor_pos,
)

TOL = 1e-12
seeds = st.integers(0, 2**32 - 1)
sheets = st.sampled_from([3.0, -3.0])


def make_state(seed, c, kind="positive"):
    rng = np.random.default_rng(seed)
    return PlaneWaveState(kind, random_momentum(rng, 1.0, c), random_spinor(rng), 1.0, c), random_points(rng, 10)


def rel(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300)


def test_shell_examples():
    assert shell_p0((0, 0, 0), 1, 1) == 1
    assert shell_p0((0, 0, 4), 1, 3) == 5
    assert shell_p0((0, 0, 4), 1, -3) == 5


def test_rest_frame_spinors():
    w = np.array([0.6, 0.8j])
    u = spinor_pos((0, 0, 0), w, 1.0, 3.0)
    assert np.allclose(u, np.concatenate([np.sqrt(6.0) * w, [0, 0]]))
    v = spinor_neg((0, 0, 0), w, 1.0, 3.0)
    assert np.allclose(v, np.concatenate([[0, 0], np.sqrt(6.0) * w]))


def test_direction_at_rest_is_unobservable():
    w = np.array([0.6, 0.8j])
    for n in ([0, 0, 1], [1, 0, 0], [0.6, 0.0, -0.8]):
        assert np.array_equal(spinor_pos((0, 0, 0), w, 1.0, 3.0, n=n), spinor_pos((0, 0, 0), w, 1.0, 3.0))
        assert np.array_equal(spinor_neg((0, 0, 0), w, 1.0, 3.0, n=n), spinor_neg((0, 0, 0), w, 1.0, 3.0))


def test_validation():
    with pytest.raises(ValueError):
        spinor_pos((0, 0, 1), [1, 1], 1.0, 3.0)
    with pytest.raises(ValueError):
        spinor_pos((0, 0, 4), [1, 0], 1.0, 3.0, p0=4.0)
    with pytest.raises(ValueError):
        PlaneWaveState("sideways", (0, 0, 0), (1, 0))
    with pytest.raises(ValueError):
        PlaneWaveState("positive", (0, 0, 0), (1, 0), c=0.0)


@given(seeds, sheets)
def test_normalization_and_residuals(seed, c):
    rng = np.random.default_rng(seed)
    p, w = random_momentum(rng, 1.0, c), random_spinor(rng)
    p0 = shell_p0(p, 1.0, c)
    assert abs(p0**2 - p @ p - c**2) / p0**2 <= TOL
    u, v = spinor_pos(p, w, 1.0, c), spinor_neg(p, w, 1.0, c)
    assert abs(bar_product(u) - 2 * c) <= TOL * abs(2 * c)
    assert abs(bar_product(v) + 2 * c) <= TOL * abs(2 * c)
    assert momentum_residual(u, p, 1.0, c, 1) <= TOL * p0
    assert momentum_residual(v, p, 1.0, c, -1) <= TOL * p0


def test_momenta_stay_in_range():
    rng = np.random.default_rng(0)
    for _ in range(200):
        p = random_momentum(rng, 1.0, -3.0)
        assert np.linalg.norm(p) / 3.0 <= 10.0


def test_value_at_origin():
    state, _ = make_state(4, 3.0)
    assert np.allclose(eval_psi(state, 0.0, (0, 0, 0)), state.spinor() / np.sqrt(2 * state.p0))


@given(seeds, sheets, st.sampled_from(["positive", "negative"]))
def test_modulus_is_position_independent(seed, c, kind):
    state, pts = make_state(seed, c, kind)
    ref = np.abs(eval_psi(state, 0.0, (0, 0, 0)))
    for x0, x in pts:
        assert np.allclose(np.abs(eval_psi(state, x0, x)), ref, rtol=1e-12, atol=0)


@given(seeds, sheets, st.sampled_from(["positive", "negative"]))
def test_wave_view_agrees_with_eval(seed, c, kind):
    state, pts = make_state(seed, c, kind)
    wave = state.wave()
    for x0, x in pts:
        assert rel(wave(x0, x), eval_psi(state, x0, x)) <= TOL


@given(seeds, sheets, st.sampled_from(["positive", "negative"]))
def test_free_equation(seed, c, kind):
    state, pts = make_state(seed, c, kind)
    # both frequencies solve the same equation
    for x0, x in pts:
        assert dirac_residual(state.wave(), state.mc, 1.0, x0, x) <= TOL * state.p0


def test_finite_difference_oracle():
    state, pts = make_state(11, -3.0)
    wave = state.wave()
    h = 1e-5
    for x0, x in pts[:3]:
        numeric = []
        for a in range(4):
            step = np.zeros(4)
            step[a] = h
            xs = np.concatenate([[x0], x])
            fwd, bwd = xs + step, xs - step
            numeric.append((wave(fwd[0], fwd[1:]) - wave(bwd[0], bwd[1:])) / (2 * h))
        numeric = np.array(numeric)
        assert np.allclose(numeric, wave.grad(x0, x), rtol=1e-6, atol=1e-8)
        lhs = 1j * sum(GAMMA[a] @ numeric[a] for a in range(4)) - state.mc * wave(x0, x)
        assert np.linalg.norm(lhs) / np.linalg.norm(wave(x0, x)) < 1e-6


@given(seeds, sheets)
def test_c_maps_negative_to_positive(seed, c):
    state, pts = make_state(seed, c)
    neg = charge_conjugate(state)
    assert neg.kind == "negative"
    assert np.allclose(neg.w, companion_spinor(state.w))
    image = make_C().act(neg.family())
    for x0, x in pts:
        assert rel(image(x0, x, c), eval_psi(state, x0, x)) <= TOL


def test_c_at_rest():
    state = PlaneWaveState("positive", (0, 0, 0), (0.6, 0.8j), 1.0, 3.0)
    image = make_C().act(charge_conjugate(state).family())
    assert rel(image(0.3, (1.0, -2.0, 0.5), 3.0), eval_psi(state, 0.3, (1.0, -2.0, 0.5))) <= TOL


@given(seeds, sheets)
def test_charge_conjugate_twice(seed, c):
    state, _ = make_state(seed, c)
    back = charge_conjugate(charge_conjugate(state))
    assert back.kind == state.kind
    assert np.allclose(back.w, state.w, rtol=0, atol=1e-15)


@given(seeds, sheets, st.sampled_from(["positive", "negative"]))
def test_sheet_identification(seed, c, kind):
    state, pts = make_state(seed, c, kind)
    flipped = sheet_identify(state)
    assert flipped.c == -c and flipped.energy == -state.energy
    assert flipped.p0 == state.p0 and flipped.mc == state.mc
    for x0, x in pts:
        assert np.array_equal(eval_psi(flipped, x0, x), eval_psi(state, x0, x))
    assert sheet_identify(flipped) == state


@given(seeds, sheets)
def test_ptq_table_identity(seed, c):
    # PTQ psi(x0, x) = -g2 psi*(-x0, -x)
    state, pts = make_state(seed, c)
    image = state.wave().transformed(operator("PTQ"))
    for x0, x in pts:
        ref = -GAMMA[2] @ np.conj(eval_psi(state, -x0, -np.asarray(x)))
        assert rel(image(x0, x), ref) <= TOL


@given(seeds, sheets)
def test_conjugate_negate_keeps_phase_factor(seed, c):
    state, pts = make_state(seed, c)
    for x0, x in pts:
        arg = state.p0 * x0 - state.p @ x
        e = np.exp(-1j * arg)
        e_flip = np.conj(np.exp(-1j * (state.p0 * -x0 - state.p @ -np.asarray(x))))
        assert abs(e - e_flip) <= TOL


@given(seeds, sheets)
def test_ptq_image_solves_flipped_mass(seed, c):
    state, pts = make_state(seed, c)
    image = state.wave().transformed(operator("PTQ"))
    for x0, x in pts:
        assert dirac_residual(image, -state.mc, 1.0, x0, x) <= TOL * state.p0


@given(seeds, sheets)
def test_c_vs_ptq_phase(seed, c):
    state, pts = make_state(seed, c)
    result = ptq_vs_c_check(state, pts)
    assert result.phase == "-1"
    assert result.deviation <= TOL
    assert result.expected_phase_attained
    # with the same spinor label on both sides no phase fits a generic spinor
    assert result.same_label_deviation > 1e-3


def test_c_vs_ptq_needs_positive_state():
    state, pts = make_state(2, 3.0, "negative")
    with pytest.raises(ValueError):
        ptq_vs_c_check(state, pts)


def test_plane_wave_transform_matches_operator_action():
    state, pts = make_state(9, 3.0)
    for name in ("P", "T", "C", "PT", "PTQ"):
        op = operator(name)
        img = state.wave().transformed(op)
        act = op.act_pointwise(state.wave())
        for x0, x in pts:
            assert rel(img(x0, x), act(x0, x)) <= TOL


def test_plane_wave_gradient_shape():
    wave = PlaneWave(np.ones(4, dtype=complex), np.array([1.0, 0.0, 2.0, 0.0]))
    assert wave.grad(0.0, (0, 0, 0)).shape == (4, 4)
