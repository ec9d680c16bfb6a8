"""Minimally coupled Dirac equation and how discrete operators move its solutions.

The equation is

    (i hbar g^a d_a - mc) psi = (e/c) g^a A_a psi,    g^a A_a = g0 A0 - g.A

An operator's image ``M K^a psi(s_t x0, s_x x)`` is checked against a mapped
parameter set ``(m, c, e, A)``. The light-speed flip of Q is carried by the
parameters, not by re-evaluating ``psi`` at ``-c``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from .clifford import dirac_rep
from .discrete import DiscreteOp, operator
from .planewave import (
    GAMMA,
    PlaneWave,
    PlaneWaveState,
    dirac_residual,
    shell_p0,
    spinor_pos,
)
from .scalars import ExactMatrix, I_UNIT, matrix_inverse

__all__ = [
    "DiracInstance",
    "EMPlaneWaveSolution",
    "InstanceMap",
    "ResidualOperator",
    "INSTANCE_MAPS_EXPECTED",
    "coupling_matrix",
    "coupled_residual",
    "build_solution",
    "derive_instance_map",
    "instance_map",
    "compose_maps",
    "transport_check",
    "residual_operator",
    "same_residual_operator",
    "potential_rule_equivalence",
    "energy_gap",
    "random_instance",
    "COMPOSITES",
]

Potential = Union[tuple, Callable]


@dataclass(frozen=True)
class DiracInstance:
    """Parameters ``(m, c, e, hbar, A)`` of one coupled equation.

    ``A`` is either a constant contravariant 4-tuple ``(A0, A1, A2, A3)`` of
    reals (ints and ``Fraction`` stay exact) or a callable
    ``(x0, x) -> 4-tuple``.
    """

    m: object = 1
    c: object = 3
    e: object = 0
    hbar: object = 1
    A: Potential = (0, 0, 0, 0)

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError("mass must be positive")
        if self.c == 0:
            raise ValueError("c must be nonzero")
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")
        if not callable(self.A):
            if len(self.A) != 4:
                raise ValueError("constant potential needs four components")
            if any(isinstance(v, complex) for v in self.A):
                raise TypeError("the potential must be real")

    @property
    def constant_potential(self) -> bool:
        return not callable(self.A)

    def potential(self, x0, x) -> np.ndarray:
        a = self.A(x0, x) if callable(self.A) else self.A
        return np.array([float(v) for v in a])

    @property
    def mc(self):
        return self.m * self.c


def coupling_matrix(instance: DiracInstance, x0=0.0, x=(0.0, 0.0, 0.0)) -> np.ndarray:
    """``(e/c) g^a A_a`` at one point, in floats."""
    a = instance.potential(x0, x)
    slash_a = GAMMA[0] * a[0] - GAMMA[1] * a[1] - GAMMA[2] * a[2] - GAMMA[3] * a[3]
    return float(instance.e) / float(instance.c) * slash_a


def coupled_residual(instance: DiracInstance, psi, samples) -> float:
    """Largest relative residual of the coupled equation over sample points.

    ``psi`` must provide ``__call__(x0, x)`` and ``grad(x0, x)``.
    """
    mass_term = float(instance.m) * float(instance.c)
    hbar = float(instance.hbar)
    worst = 0.0
    for x0, x in samples:
        cm = coupling_matrix(instance, x0, x)
        worst = max(worst, dirac_residual(psi, mass_term, hbar, x0, x, coupling=cm))
    return worst


@dataclass(frozen=True)
class EMPlaneWaveSolution:
    """Plane wave in a constant potential.

    The spinor is the free one for the kinetic momentum ``pi``; the phase
    uses the canonical momentum ``p_a = pi_a + (e/c) A_a``.
    """

    instance: DiracInstance
    pi: tuple
    w: tuple

    @property
    def pi0(self) -> float:
        return shell_p0(self.pi, float(self.instance.m), float(self.instance.c))

    @property
    def canonical_momentum(self) -> tuple[float, np.ndarray]:
        """Contravariant ``(p0, p)``."""
        inst = self.instance
        a = inst.potential(0.0, (0.0, 0.0, 0.0))
        q = float(inst.e) / float(inst.c)
        return self.pi0 + q * a[0], np.asarray(self.pi, dtype=float) + q * a[1:]

    @property
    def energy(self) -> float:
        return float(self.instance.c) * self.pi0

    def amplitude(self) -> np.ndarray:
        inst = self.instance
        u = spinor_pos(self.pi, self.w, float(inst.m), float(inst.c))
        return u / np.sqrt(2 * self.pi0)

    def wave(self) -> PlaneWave:
        p0, p = self.canonical_momentum
        k = np.concatenate([[-p0], p]) / float(self.instance.hbar)
        return PlaneWave(self.amplitude(), k)

    def __call__(self, x0, x):
        return self.wave()(x0, x)

    def grad(self, x0, x):
        return self.wave().grad(x0, x)


def build_solution(instance: DiracInstance, pi: Sequence[float], w) -> EMPlaneWaveSolution:
    if not instance.constant_potential:
        raise ValueError("exact plane-wave solutions need a constant potential")
    return EMPlaneWaveSolution(instance, tuple(float(v) for v in pi), tuple(complex(v) for v in w))


# instance maps ------------------------------------------------------------------


@dataclass(frozen=True)
class InstanceMap:
    """Action on equation parameters.

    ``(m, c, e) -> (m_sign m, c_sign c, e_sign e)`` and
    ``A(x) -> (a0_sign A0, avec_sign A)(s_t x0, s_x x)``.
    """

    name: str
    m_sign: int
    c_sign: int
    e_sign: int
    a0_sign: int
    avec_sign: int
    arg_signs: tuple  # (s_t, s_x)

    def signature(self) -> tuple:
        return (self.m_sign, self.c_sign, self.e_sign, self.a0_sign, self.avec_sign, self.arg_signs)

    def same_action(self, other: "InstanceMap") -> bool:
        return self.signature() == other.signature()

    def apply(self, instance: DiracInstance) -> DiracInstance:
        if self.m_sign != 1:
            raise ValueError("map would make the mass negative")
        st, sx = self.arg_signs
        if callable(instance.A):
            inner = instance.A

            def potential(x0, x):
                a = inner(st * x0, sx * np.asarray(x, dtype=float))
                return (self.a0_sign * a[0],) + tuple(self.avec_sign * v for v in a[1:])

            new_a = potential
        else:
            a = instance.A
            new_a = (self.a0_sign * a[0],) + tuple(self.avec_sign * v for v in a[1:])
        return replace(
            instance,
            m=self.m_sign * instance.m,
            c=self.c_sign * instance.c,
            e=self.e_sign * instance.e,
            A=new_a,
        )


def compose_maps(first_applied_last: InstanceMap, *rest: InstanceMap) -> InstanceMap:
    """``compose_maps(P, T, Q)`` is P after T after Q (all sign maps commute)."""
    maps = (first_applied_last,) + rest
    out = maps[0]
    for m in maps[1:]:
        out = InstanceMap(
            out.name + m.name,
            out.m_sign * m.m_sign,
            out.c_sign * m.c_sign,
            out.e_sign * m.e_sign,
            out.a0_sign * m.a0_sign,
            out.avec_sign * m.avec_sign,
            tuple(a * b for a, b in zip(out.arg_signs, m.arg_signs)),
        )
    return out


def _intertwining_signs(op: DiscreteOp) -> tuple[int, int, int, int]:
    """``eps_a`` with ``M op(g^a) M^-1 = eps_a g^a``; op is conjugation when antilinear."""
    m = op.matrix
    m_inv = matrix_inverse(m)
    eps = []
    for g in dirac_rep().gamma:
        src = g.conjugate() if op.antilinear else g
        img = m @ src @ m_inv
        if img == g:
            eps.append(1)
        elif img == -g:
            eps.append(-1)
        else:
            raise ValueError(f"{op.name} does not map the gamma matrices to +/- themselves")
    return tuple(eps)


def derive_instance_map(op: DiscreteOp) -> InstanceMap:
    """Read the parameter map off the operator by substitution into the equation.

    Conjugation contributes ``eta = -1`` to the derivative term, argument flips
    contribute ``s_a``, and conjugating the matrices by ``M`` contributes
    ``eps_a``. Their product ``nu`` must be the same for all four ``a``; it
    multiplies the mass term. A uniform sign on the coupling is booked as a
    charge flip, a sign on the spatial part alone as a flip of ``A``.
    """
    eps = _intertwining_signs(op)
    st, sx, sc = op.arg_signs
    eta = -1 if op.antilinear else 1
    nus = {eta * s * e for s, e in zip((st, sx, sx, sx), eps)}
    if len(nus) != 1:
        raise ValueError(f"{op.name} does not preserve the form of the derivative term")
    nu = nus.pop()
    if len({eps[1], eps[2], eps[3]}) != 1:
        raise ValueError(f"{op.name} treats the spatial gamma matrices unequally")
    charge = nu * eps[0]
    return InstanceMap(
        name=op.name,
        m_sign=nu * sc,
        c_sign=sc,
        e_sign=charge * sc,
        a0_sign=1,
        avec_sign=eps[1] * eps[0],
        arg_signs=(st, sx),
    )


# (m_sign, c_sign, e_sign, a0_sign, avec_sign, (s_t, s_x)) as stated for the primitives and PTQ
INSTANCE_MAPS_EXPECTED = {
    "P": InstanceMap("P", 1, 1, 1, 1, -1, (1, -1)),
    "T": InstanceMap("T", 1, 1, 1, 1, -1, (-1, 1)),
    "C": InstanceMap("C", 1, 1, -1, 1, 1, (1, 1)),
    "Q": InstanceMap("Q", 1, -1, -1, 1, 1, (1, 1)),
    "PTQ": InstanceMap("PTQ", 1, -1, -1, 1, 1, (-1, -1)),
}

COMPOSITES = ("P", "T", "C", "Q", "PT", "PQ", "TQ", "PTQ")


@lru_cache(maxsize=None)
def instance_map(op: Union[str, DiscreteOp]) -> InstanceMap:
    """Parameter map of a named operator.

    Primitives are derived from their operators; composite names are
    composed letter by letter. A :class:`DiscreteOp` is derived directly.
    """
    if isinstance(op, DiscreteOp):
        return derive_instance_map(op)
    if not op or any(ch not in "PTCQ" for ch in op):
        raise KeyError(f"unknown operator {op!r}")
    maps = [derive_instance_map(operator(ch)) for ch in op]
    return compose_maps(*maps)


def transport_check(instance: DiracInstance, op: Union[str, DiscreteOp], solution, samples) -> float:
    """Residual of the operator image in the mapped instance."""
    dop = operator(op) if isinstance(op, str) else op
    wave = solution.wave() if hasattr(solution, "wave") else solution
    image = wave.transformed(dop)
    mapped = instance_map(op).apply(instance)
    return coupled_residual(mapped, image, samples)


# exact residual operator ---------------------------------------------------------


def _exact(v) -> Fraction:
    return Fraction(v)


@dataclass(frozen=True)
class ResidualOperator:
    """``derivative[a] d_a + constant`` with exact matrix coefficients."""

    derivative: tuple
    constant: ExactMatrix


def residual_operator(instance: DiracInstance) -> ResidualOperator:
    """Coefficients of ``i hbar g^a d_a - mc - (e/c) g^a A_a`` (constant A only)."""
    if not instance.constant_potential:
        raise ValueError("coefficient comparison needs a constant potential")
    gam = dirac_rep().gamma
    hbar = _exact(instance.hbar)
    m, c, e = _exact(instance.m), _exact(instance.c), _exact(instance.e)
    a = [_exact(v) for v in instance.A]
    deriv = tuple(g.scale(I_UNIT * hbar) for g in gam)
    slash_a = gam[0].scale(a[0]) - gam[1].scale(a[1]) - gam[2].scale(a[2]) - gam[3].scale(a[3])
    const = ExactMatrix.identity(4).scale(-m * c) - slash_a.scale(e / c)
    return ResidualOperator(deriv, const)


def same_residual_operator(a: DiracInstance, b: DiracInstance) -> bool:
    return residual_operator(a) == residual_operator(b)


def potential_rule_equivalence(instance: DiracInstance) -> bool:
    """``(m, c, -e, A)`` and ``(m, c, e, -A)`` give the same residual operator."""
    flipped_charge = replace(instance, e=-instance.e)
    flipped_potential = replace(instance, A=tuple(-v for v in instance.A))
    return same_residual_operator(flipped_charge, flipped_potential)


def energy_gap(instance: DiracInstance, solution) -> float:
    """``2|E| = 2|c| p0`` between the E and -E labels."""
    if isinstance(solution, PlaneWaveState):
        return 2 * abs(solution.energy)
    return 2 * abs(float(instance.c)) * solution.pi0


# seeded inputs ---------------------------------------------------------------------


def random_instance(rng: np.random.Generator, m=1, c=3, hbar=1, denominator: int = 10) -> DiracInstance:
    """Rational charge and constant potential; the sign of ``c`` is random."""
    e = Fraction(int(rng.integers(-20, 21)), denominator) or Fraction(1)
    a = tuple(Fraction(int(v), denominator) for v in rng.integers(-20, 21, size=4))
    sign = 1 if rng.integers(0, 2) else -1
    return DiracInstance(m=m, c=sign * c, e=e, hbar=hbar, A=a)
