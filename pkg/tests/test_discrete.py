import random
import time
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diracsym.clifford import FULL_SET, gamma
from diracsym.discrete import (
    TABLE_EXPECTED,
    DiscreteOp,
    IntertwinerConstraint,
    TableMismatch,
    TestFunction,
    U_C,
    U_P,
    U_T,
    apply,
    commutator_deviation,
    compose,
    compose_all,
    default_samples,
    expected_row,
    identity_op,
    lightcone_check,
    make_C,
    make_P,
    make_Q,
    make_T,
    operator,
    random_test_function,
    solve_intertwiner,
    transformation_table,
    verify_table,
)
from diracsym.gammaexpr import evaluate, format_canonical
from diracsym.scalars import ExactComplex, ExactMatrix, I_UNIT, ONE, SingularMatrixError

PRIMS = [make_P(), make_T(), make_C(), make_Q()]
ops = st.sampled_from(PRIMS + [make_Q(ONE), make_Q(-I_UNIT), identity_op()])
seeds = st.integers(0, 2**32 - 1)


def neg(f):
    return (f - f) - f


def test_primitive_matrices():
    assert make_P().effective_matrix == gamma(0).scale(I_UNIT)
    assert make_C().effective_matrix == gamma(2) and make_C().antilinear
    assert make_Q(I_UNIT).effective_matrix == gamma(5).scale(I_UNIT)
    assert make_T().matrix == U_T @ gamma(0)
    assert make_C().matrix == U_C @ gamma(0)
    assert U_P == evaluate("i*g0")


def test_q_phase_family():
    for lam in (ONE, -ONE, I_UNIT, -I_UNIT):
        assert make_Q(lam).matrix == gamma(5).scale(lam)
    with pytest.raises(ValueError):
        make_Q(ExactComplex(2, 0))


def test_invalid_operator():
    with pytest.raises(SingularMatrixError):
        DiscreteOp("X", ExactMatrix.zeros(4), False, (1, 1, 1))
    with pytest.raises(ValueError):
        DiscreteOp("X", ExactMatrix.identity(4), False, (1, 2, 1))
    with pytest.raises(KeyError):
        operator("PX")


def test_compose_examples():
    pt = compose(make_P(), make_T())
    assert pt.matrix == gamma(0) @ gamma(1) @ gamma(3)
    assert pt.antilinear and pt.arg_signs == (-1, -1, 1)
    ptq = compose(make_P(), compose(make_T(), make_Q()))
    assert ptq.matrix == -gamma(2)
    assert ptq.antilinear and ptq.arg_signs == (-1, -1, -1)
    assert compose(make_P(), identity_op()) == make_P()
    assert compose_all([make_P(), make_T(), make_Q()]) == ptq


def test_table_rows():
    rows = transformation_table()
    assert [r.name for r in rows] == list(TABLE_EXPECTED)
    by_name = {r.name: r for r in rows}
    assert by_name["PQ"].matrix == evaluate("i*g1*g2*g3")
    assert by_name["PQ"].arg_signs == (1, -1, -1) and not by_name["PQ"].antilinear
    assert by_name["TQ"].matrix == evaluate("i*g0*g2") and by_name["TQ"].antilinear
    assert by_name["Q"].label == "i*g5"
    assert by_name["PTQ"].label == "-g2"
    assert all(verify_table().values())


def test_table_mismatch_is_named(monkeypatch):
    import diracsym.discrete as d

    broken = dict(TABLE_EXPECTED, PT=("g0*g1*g3", False, (-1, -1, 1)))
    monkeypatch.setattr(d, "TABLE_EXPECTED", broken)
    with pytest.raises(TableMismatch) as info:
        d.transformation_table()
    assert info.value.rows == ["PT"]


def test_apply_examples():
    v = (1, 2j, -3, Fraction(1, 2))
    f = TestFunction.constant(v)
    img = apply(make_P(), f)
    expected = U_P.to_numpy() @ np.array(v, dtype=complex)
    assert np.allclose([complex(z) for z in img(0, (0, 0, 0), 1)], expected)
    rng = random.Random(3)
    g = random_test_function(rng)
    assert apply(make_C(), apply(make_C(), g)) == g
    q = apply(make_Q(), g)
    pt = (Fraction(1, 3), (Fraction(2), Fraction(-1), Fraction(5, 7)), Fraction(3))
    lhs = q(*pt)
    rhs = gamma(5).scale(I_UNIT).to_numpy() @ np.array([complex(z) for z in g(pt[0], pt[1], -pt[2])])
    assert np.allclose([complex(z) for z in lhs], rhs)


@given(seeds)
def test_squares(seed):
    f = random_test_function(random.Random(seed))
    assert apply(make_P(), apply(make_P(), f)) == neg(f)
    assert apply(make_C(), apply(make_C(), f)) == f


@given(ops, ops, ops)
def test_composition_associative(a, b, c):
    assert compose(a, compose(b, c)) == compose(compose(a, b), c)


@given(ops, ops, seeds)
def test_composition_matches_action(a, b, seed):
    f = random_test_function(random.Random(seed))
    assert apply(compose(a, b), f) == apply(a, apply(b, f))


@given(ops, seeds)
def test_apply_is_additive(op, seed):
    rng = random.Random(seed)
    f, g = random_test_function(rng), random_test_function(rng)
    assert apply(op, f - g) == apply(op, f) - apply(op, g)


@given(seeds)
def test_c_commutes_with_ptq(seed):
    rng = random.Random(seed)
    f = random_test_function(rng)
    assert commutator_deviation(make_C(), operator("PTQ"), f, default_samples(rng)) == 0


def test_c_commutes_with_ptq_on_100_functions():
    rng = random.Random(0)
    samples = default_samples(rng)
    ptq = operator("PTQ")
    for _ in range(100):
        assert commutator_deviation(make_C(), ptq, random_test_function(rng), samples) == 0


@given(ops, seeds)
def test_self_commutator(op, seed):
    f = random_test_function(random.Random(seed))
    assert commutator_deviation(op, op, f) == 0


def test_p_and_t_anticommute():
    # iγ⁰ and -iγ¹γ³ with disjoint argument flips: TP = -PT, so [P, T] != 0
    rng = random.Random(1)
    f = random_test_function(rng)
    pt = apply(make_P(), apply(make_T(), f))
    tp = apply(make_T(), apply(make_P(), f))
    assert tp == neg(pt)
    assert commutator_deviation(make_P(), make_T(), f) > 0


def test_commutator_never_reports_a_false_zero():
    # a nonzero polynomial vanishing on every sample still gives a positive deviation
    rng = random.Random(1)
    f = random_test_function(rng)
    samples = [(Fraction(0), (Fraction(0),) * 3, Fraction(0))]
    assert commutator_deviation(make_P(), make_T(), f, samples) > 0


def _labels(signs, mode):
    return {format_canonical(p, k) for p, k in solve_intertwiner(IntertwinerConstraint.from_string(signs, mode))}


def test_intertwiner_examples():
    start = time.perf_counter()
    assert _labels("----", "plain") == {"g5", "-g5", "i*g5", "-i*g5"}
    assert time.perf_counter() - start < 1.0
    p_family = _labels("+---", "plain")
    assert p_family == {"g0", "-g0", "i*g0", "-i*g0"} and "i*g0" in p_family
    t_family = _labels("+---", "transpose")
    assert "-i*g0*g1*g3" in t_family and len(t_family) == 4
    assert _labels("++++", "plain") == {"I", "-I", "i*I", "-i*I"}
    assert "g2" in _labels("----", "conjugate")
    assert "-i*g1*g3" in _labels("+---", "conjugate")


def test_intertwiner_q_solution_elements():
    found = solve_intertwiner(IntertwinerConstraint.from_string("----"))
    assert len(found) == 4
    assert {k for _, k in found} == {FULL_SET}


def test_intertwiner_validation():
    with pytest.raises(ValueError):
        IntertwinerConstraint.from_string("+--")
    with pytest.raises(ValueError):
        IntertwinerConstraint.from_string("+-x-")
    with pytest.raises(ValueError):
        IntertwinerConstraint((1, 1, 1, 1), "adjoint")


@settings(max_examples=12)
@given(st.sampled_from(["plain", "transpose", "conjugate"]), st.tuples(*[st.sampled_from([1, -1])] * 4))
def test_every_solution_satisfies_constraint(mode, signs):
    tf = {"plain": lambda m: m, "transpose": lambda m: m.transpose(), "conjugate": lambda m: m.conjugate()}[mode]
    from diracsym.clifford import basis_matrix
    from diracsym.scalars import matrix_inverse

    for phase, key in solve_intertwiner(IntertwinerConstraint(signs, mode)):
        u = basis_matrix(key).scale(phase)
        for a, s in enumerate(signs):
            assert u @ tf(gamma(a)) @ matrix_inverse(u) == gamma(a).scale(s)


def test_lightcone_examples():
    assert lightcone_check(1, (1, 0, 0), 1) == (0, 0)
    assert lightcone_check(0, (0, 0, 0), 5) == (0, 0)
    assert lightcone_check(2, (1, 1, 1), 3) == (33, 33)


@given(
    st.fractions(max_denominator=20),
    st.tuples(*[st.fractions(max_denominator=20)] * 3),
    st.fractions(max_denominator=20).filter(lambda c: c != 0),
)
def test_lightcone_invariance(t, x, c):
    a, b = lightcone_check(t, x, c)
    assert a == b


def test_expected_rows_parse():
    for name in TABLE_EXPECTED:
        row = expected_row(name)
        assert row.matrix == operator(name).matrix
