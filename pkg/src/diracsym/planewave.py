"""Free Dirac plane waves with explicit c and hbar.

    psi_+ = u_+(p, w) exp(-(i/hbar)(p0 x0 - p.x)) / sqrt(2 p0)
    psi_- = u_-(p, w') exp(+(i/hbar)(p0 x0 - p.x)) / sqrt(2 p0)

with ``p0 = sqrt(|p|^2 + (mc)^2)``. The energy is ``E = c p0``, so ``p0``
is positive on both signs of ``c`` and only the product ``mc`` enters the
spinors.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .clifford import dirac_rep
from .discrete import DiscreteOp, make_C, operator

__all__ = [
    "PAULI",
    "GAMMA",
    "SIGMA_Y",
    "shell_p0",
    "direction",
    "pauli_dot",
    "unit_spinor",
    "spinor_pos",
    "spinor_neg",
    "bar_product",
    "momentum_residual",
    "PlaneWaveState",
    "PlaneWave",
    "eval_psi",
    "dirac_residual",
    "charge_conjugate",
    "companion_spinor",
    "rotated_partner",
    "sheet_identify",
    "PTQComparison",
    "ptq_vs_c_check",
    "random_momentum",
    "random_spinor",
    "random_points",
]

GAMMA = tuple(g.to_numpy() for g in dirac_rep().gamma)
GAMMA5 = dirac_rep().gamma5.to_numpy()
PAULI = tuple(s.to_numpy() for s in dirac_rep().pauli)
SIGMA_Y = PAULI[1]

SHELL_TOL = 1e-12


def shell_p0(p: Sequence[float], m: float, c: float) -> float:
    """``sqrt(|p|^2 + (mc)^2)``; the same for ``c`` and ``-c``."""
    p = np.asarray(p, dtype=float)
    return float(np.sqrt(p @ p + (m * c) ** 2))


def direction(p: Sequence[float]) -> np.ndarray:
    """``p/|p|``, or ``(0, 0, 1)`` at rest where it is multiplied by zero anyway."""
    p = np.asarray(p, dtype=float)
    norm = np.linalg.norm(p)
    if norm == 0.0:
        return np.array([0.0, 0.0, 1.0])
    return p / norm


def pauli_dot(n: Sequence[float]) -> np.ndarray:
    return n[0] * PAULI[0] + n[1] * PAULI[1] + n[2] * PAULI[2]


def unit_spinor(w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    if w.shape != (2,):
        raise ValueError("two-spinors have two components")
    if abs(np.vdot(w, w).real - 1.0) > SHELL_TOL:
        raise ValueError("two-spinor must satisfy w^+ w = 1")
    return w


def _check_shell(p, m, c, p0):
    expected = shell_p0(p, m, c)
    if p0 is not None and abs(p0 - expected) > SHELL_TOL * max(1.0, expected):
        raise ValueError(f"off-shell momentum: p0={p0} but sqrt(p^2+(mc)^2)={expected}")
    return expected


def spinor_pos(p, w, m: float, c: float, p0: float | None = None, n=None) -> np.ndarray:
    """``u = (sqrt(p0+mc) w, sqrt(p0-mc) (n.sigma) w)``."""
    p0 = _check_shell(p, m, c, p0)
    w = unit_spinor(w)
    n = direction(p) if n is None else np.asarray(n, dtype=float)
    mc = m * c
    upper = np.sqrt(p0 + mc) * w
    lower = np.sqrt(max(p0 - mc, 0.0)) * (pauli_dot(n) @ w)
    return np.concatenate([upper, lower])


def spinor_neg(p, w, m: float, c: float, p0: float | None = None, n=None) -> np.ndarray:
    """``u = (sqrt(p0-mc) (n.sigma) w', sqrt(p0+mc) w')``."""
    p0 = _check_shell(p, m, c, p0)
    w = unit_spinor(w)
    n = direction(p) if n is None else np.asarray(n, dtype=float)
    mc = m * c
    upper = np.sqrt(max(p0 - mc, 0.0)) * (pauli_dot(n) @ w)
    lower = np.sqrt(p0 + mc) * w
    return np.concatenate([upper, lower])


def bar_product(u: np.ndarray) -> float:
    """``u^+ g0 u`` (real for any u)."""
    return float(np.vdot(u, GAMMA[0] @ u).real)


def slash(p_lower: Sequence[float]) -> np.ndarray:
    """``g^a p_a`` for a covariant 4-vector."""
    return sum(g * pa for g, pa in zip(GAMMA, p_lower))


def momentum_residual(u, p, m: float, c: float, sign: int = 1) -> float:
    """``|(g^a p_a - sign*mc) u| / |u|`` with ``p_a = (p0, -p)``.

    ``sign=+1`` is the positive-frequency equation, ``sign=-1`` the one
    obeyed by ``u_-``.
    """
    p = np.asarray(p, dtype=float)
    p0 = shell_p0(p, m, c)
    op = slash(np.concatenate([[p0], -p])) - sign * m * c * np.eye(4)
    return float(np.linalg.norm(op @ u) / np.linalg.norm(u))


@dataclass(frozen=True)
class PlaneWaveState:
    """One positive- or negative-frequency free solution.

    ``m`` is normally positive; :func:`sheet_identify` flips it together with
    ``c`` so that the products ``mc`` and ``E/c`` are unchanged.
    """

    kind: str
    p: tuple
    w: tuple
    m: float = 1.0
    c: float = 3.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.kind not in ("positive", "negative"):
            raise ValueError(f"kind must be 'positive' or 'negative', got {self.kind!r}")
        if self.m == 0 or self.c == 0 or self.hbar <= 0:
            raise ValueError("need m != 0, c != 0, hbar > 0")
        object.__setattr__(self, "p", tuple(float(v) for v in self.p))
        object.__setattr__(self, "w", tuple(complex(v) for v in unit_spinor(self.w)))

    @property
    def p0(self) -> float:
        return shell_p0(self.p, self.m, self.c)

    @property
    def energy(self) -> float:
        return self.c * self.p0

    @property
    def mc(self) -> float:
        return self.m * self.c

    @property
    def sign(self) -> int:
        return 1 if self.kind == "positive" else -1

    def spinor(self) -> np.ndarray:
        build = spinor_pos if self.kind == "positive" else spinor_neg
        return build(self.p, self.w, self.m, self.c)

    def wave(self) -> "PlaneWave":
        """The same function as a generic :class:`PlaneWave`."""
        k = -self.sign * np.concatenate([[self.p0], -np.asarray(self.p)]) / self.hbar
        return PlaneWave(self.spinor() / np.sqrt(2 * self.p0), k)

    def family(self) -> Callable:
        """``(x0, x, c) -> psi`` with c as a live argument (m, p, w fixed)."""

        def f(x0, x, c):
            return eval_psi(replace(self, c=float(c)), x0, x)

        return f

    def with_spinor(self, w) -> "PlaneWaveState":
        return replace(self, w=tuple(w))


def eval_psi(state: PlaneWaveState, x0: float, x: Sequence[float]) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    phase = state.p0 * x0 - np.dot(state.p, x)
    return state.spinor() * np.exp(-state.sign * 1j * phase / state.hbar) / np.sqrt(2 * state.p0)


@dataclass(frozen=True)
class PlaneWave:
    """``amplitude * exp(i k.x)`` with ``k.x = k0 x0 + k1 x1 + k2 x2 + k3 x3``.

    Closed under every discrete operator, so derivatives stay analytic.
    """

    amplitude: np.ndarray
    k: np.ndarray

    def __call__(self, x0, x) -> np.ndarray:
        xs = np.concatenate([[x0], np.asarray(x, dtype=float)])
        return self.amplitude * np.exp(1j * (self.k @ xs))

    def grad(self, x0, x) -> np.ndarray:
        """Row ``a`` is ``d psi / d x^a``."""
        return 1j * self.k[:, None] * self(x0, x)[None, :]

    def transformed(self, op: DiscreteOp) -> "PlaneWave":
        """Pointwise image ``M K^a psi(s_t x0, s_x x)``; the c sign is not applied."""
        st, sx, _ = op.arg_signs
        flips = np.array([st, sx, sx, sx], dtype=float)
        amp, k = self.amplitude, self.k * flips
        if op.antilinear:
            amp, k = amp.conj(), -k
        return PlaneWave(op.matrix.to_numpy() @ amp, k)


def dirac_residual(psi, mass_term: float, hbar: float, x0, x, coupling=None) -> float:
    """``|(i hbar g^a d_a - mass_term) psi - coupling psi| / |psi|`` at one point.

    ``psi`` needs ``__call__(x0, x)`` and ``grad(x0, x)``; ``coupling`` is an
    optional 4x4 matrix already multiplied by ``e/c``.
    """
    value = psi(x0, x)
    d = psi.grad(x0, x)
    out = 1j * hbar * sum(GAMMA[a] @ d[a] for a in range(4)) - mass_term * value
    if coupling is not None:
        out = out - coupling @ value
    return float(np.linalg.norm(out) / np.linalg.norm(value))


# state-level relations --------------------------------------------------------


def companion_spinor(w) -> np.ndarray:
    """``w' = -sigma_y w*``: the negative-state spinor that C maps onto ``w``."""
    return -SIGMA_Y @ np.conj(np.asarray(w, dtype=complex))


def rotated_partner(state: PlaneWaveState) -> np.ndarray:
    """``(n.sigma) w'`` with ``w'`` the companion of the state's spinor."""
    return pauli_dot(direction(state.p)) @ companion_spinor(state.w)


def charge_conjugate(state: PlaneWaveState) -> PlaneWaveState:
    """State whose values equal ``g2 psi*`` pointwise.

    A negative state with ``w'`` goes to the positive state with
    ``w = sigma_y w'*``; a positive one goes back with ``w' = -sigma_y w*``.
    Applying it twice returns the input with phase +1.
    """
    w = np.asarray(state.w)
    if state.kind == "negative":
        return replace(state, kind="positive", w=tuple(SIGMA_Y @ w.conj()))
    return replace(state, kind="negative", w=tuple(companion_spinor(w)))


def sheet_identify(state: PlaneWaveState) -> PlaneWaveState:
    """``(m, c) -> (-m, -c)``: E flips, ``p0 = E/c`` and ``mc`` do not."""
    return replace(state, m=-state.m, c=-state.c)


@dataclass(frozen=True)
class PTQComparison:
    deviation: float
    phase: str
    expected_phase_attained: bool
    dictionary: str
    same_label_deviation: float
    same_label_phase: str
    phase_deviations: dict


_PHASES = {"1": 1 + 0j, "-1": -1 + 0j, "i": 1j, "-i": -1j}


def _best_phase(lhs, rhs):
    scale = max(np.linalg.norm(v) for v in lhs)
    devs = {}
    for label, lam in _PHASES.items():
        devs[label] = float(max(np.linalg.norm(a - lam * b) for a, b in zip(lhs, rhs)) / scale)
    best = min(devs, key=devs.get)
    return best, devs


def ptq_vs_c_check(pos_state: PlaneWaveState, samples, tol: float = 1e-12) -> PTQComparison:
    """Compare ``C psi_-`` with ``-PTQ psi_+`` pointwise.

    The negative state on the left carries ``w' = -sigma_y w*``, so its C
    image is the input state. On the right PTQ acts on the c-family of the
    positive state carrying ``(n.sigma) w'`` (which reads ``w = (n.sigma) w'``
    with the right-hand label). Both sides are evaluated at the state's own
    ``c``; the c flip inside PTQ moves the family to the other sheet.

    The same comparison with the unrotated spinor on the right is reported
    as ``same_label_*``; it matches no phase for a generic ``w``.
    """
    if pos_state.kind != "positive":
        raise ValueError("ptq_vs_c_check needs a positive-frequency state")
    c = pos_state.c
    neg = replace(pos_state, kind="negative", w=tuple(companion_spinor(pos_state.w)))
    c_image = make_C().act(neg.family())
    ptq = operator("PTQ")
    rhs_state = pos_state.with_spinor(rotated_partner(pos_state))
    rhs_image = ptq.act(rhs_state.family())
    same_image = ptq.act(pos_state.family())

    lhs = [c_image(x0, x, c) for x0, x in samples]
    rhs = [rhs_image(x0, x, c) for x0, x in samples]
    same = [same_image(x0, x, c) for x0, x in samples]

    phase, devs = _best_phase(lhs, rhs)
    same_phase, same_devs = _best_phase(lhs, same)
    return PTQComparison(
        deviation=devs[phase],
        phase=phase,
        expected_phase_attained=devs["-1"] <= tol,
        dictionary="lhs w' = -sigma_y w*; rhs w_rhs = (n.sigma) w'",
        same_label_deviation=same_devs[same_phase],
        same_label_phase=same_phase,
        phase_deviations=devs,
    )


# seeded inputs --------------------------------------------------------------


def random_momentum(rng: np.random.Generator, m: float, c: float, max_ratio: float = 10.0,
                    denominator: int = 1000) -> np.ndarray:
    """Rational-component momentum with ``|p| / |mc| <= max_ratio``.

    Components are multiples of ``1/denominator`` inside the inscribed cube.
    """
    half = max_ratio * abs(m * c) / np.sqrt(3.0)
    bound = int(np.floor(half * denominator))
    return rng.integers(-bound, bound + 1, size=3) / denominator


def random_spinor(rng: np.random.Generator) -> np.ndarray:
    w = rng.normal(size=2) + 1j * rng.normal(size=2)
    return w / np.linalg.norm(w)


def random_points(rng: np.random.Generator, n: int, scale: float = 2.0) -> list:
    return [(float(rng.uniform(-scale, scale)), rng.uniform(-scale, scale, size=3)) for _ in range(n)]
