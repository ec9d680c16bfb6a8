"""Discrete transformations P, T, C, Q acting on 4-component functions.

An operator is stored in combined form: one effective matrix ``M``, an
antilinearity flag and the argument signs ``(s_t, s_x, s_c)``. Its action is

    (O f)(x0, x, c) = M . K^antilinear [ f(s_t x0, s_x x, s_c c) ]

with ``K`` complex conjugation of the values. For the antilinear primitives
the combined matrix absorbs the ``g0`` coming from ``bar(psi)^T = g0 psi*``:
``M_T = U_T g0`` and ``M_C = U_C g0``.
"""

from __future__ import annotations

import random
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .clifford import PHASES, basis_table, dirac_rep, gamma
from .gammaexpr import evaluate, format_canonical, canonical_form
from .scalars import ExactComplex, ExactMatrix, I_UNIT, ZERO, as_exact, matrix_inverse

__all__ = [
    "DiscreteOp",
    "make_P",
    "make_T",
    "make_C",
    "make_Q",
    "identity_op",
    "compose",
    "compose_all",
    "operator",
    "U_P",
    "U_T",
    "U_C",
    "TestFunction",
    "random_test_function",
    "apply",
    "TABLE_EXPECTED",
    "TableRow",
    "transformation_table",
    "verify_table",
    "TableMismatch",
    "commutator_deviation",
    "IntertwinerConstraint",
    "solve_intertwiner",
    "lightcone_check",
]

Signs = tuple[int, int, int]


@dataclass(frozen=True)
class DiscreteOp:
    name: str
    matrix: ExactMatrix
    antilinear: bool
    arg_signs: Signs

    def __post_init__(self):
        if self.matrix.dim != 4:
            raise ValueError("discrete operators act on 4-component functions")
        if any(s not in (1, -1) for s in self.arg_signs) or len(self.arg_signs) != 3:
            raise ValueError(f"bad argument signs {self.arg_signs!r}")
        matrix_inverse(self.matrix)  # raises if singular

    @property
    def effective_matrix(self) -> ExactMatrix:
        return self.matrix

    def label(self) -> str:
        """Canonical matrix text, e.g. ``-g2``."""
        return format_canonical(*canonical_form(self.matrix))

    def act(self, f: Callable) -> Callable:
        """Numeric action on ``f(x0, x, c) -> complex 4-vector``."""
        m = self.matrix.to_numpy()
        st, sx, sc = self.arg_signs

        def image(x0, x, c):
            v = np.asarray(f(st * x0, sx * np.asarray(x, dtype=float), sc * c), dtype=complex)
            return m @ (v.conj() if self.antilinear else v)

        return image

    def act_pointwise(self, f: Callable) -> Callable:
        """Numeric action on ``f(x0, x)`` with the light-speed flip left to the caller.

        The ``c`` sign is carried by the equation parameters instead (see
        :mod:`diracsym.coupling`).
        """
        m = self.matrix.to_numpy()
        st, sx, _ = self.arg_signs

        def image(x0, x):
            v = np.asarray(f(st * x0, sx * np.asarray(x, dtype=float)), dtype=complex)
            return m @ (v.conj() if self.antilinear else v)

        return image

    def __matmul__(self, other: "DiscreteOp") -> "DiscreteOp":
        return compose(self, other)


# the matrices as tabulated before combination with g0
U_P = evaluate("i*g0")
U_T = evaluate("-i*g0*g1*g3")
U_C = evaluate("-g0*g2")


@lru_cache(maxsize=None)
def make_P() -> DiscreteOp:
    return DiscreteOp("P", U_P, False, (1, -1, 1))


@lru_cache(maxsize=None)
def make_T() -> DiscreteOp:
    # M_T = U_T g0 = -i g1 g3
    return DiscreteOp("T", U_T @ gamma(0), True, (-1, 1, 1))


@lru_cache(maxsize=None)
def make_C() -> DiscreteOp:
    # M_C = U_C g0 = g2
    return DiscreteOp("C", U_C @ gamma(0), True, (1, 1, 1))


@lru_cache(maxsize=None)
def make_Q(phase=I_UNIT) -> DiscreteOp:
    """Light-speed inversion ``lambda g5``; ``phase`` must be one of 1, -1, i, -i."""
    lam = as_exact(phase)
    if lam not in PHASES:
        raise ValueError(f"Q phase must be in {{1, -1, i, -i}}, got {lam}")
    return DiscreteOp("Q", dirac_rep().gamma5.scale(lam), False, (1, 1, -1))


def identity_op() -> DiscreteOp:
    return DiscreteOp("1", ExactMatrix.identity(4), False, (1, 1, 1))


def compose(o1: DiscreteOp, o2: DiscreteOp) -> DiscreteOp:
    """``o1 . o2`` (``o2`` acts first)."""
    m2 = o2.matrix.conjugate() if o1.antilinear else o2.matrix
    name = "".join(n for n in (o1.name, o2.name) if n != "1") or "1"
    return DiscreteOp(
        name,
        o1.matrix @ m2,
        o1.antilinear != o2.antilinear,
        tuple(a * b for a, b in zip(o1.arg_signs, o2.arg_signs)),
    )


def compose_all(ops: Iterable[DiscreteOp]) -> DiscreteOp:
    out = identity_op()
    for op in ops:
        out = compose(out, op)
    return out


_PRIMITIVES = {"P": make_P, "T": make_T, "C": make_C, "Q": make_Q}


@lru_cache(maxsize=None)
def operator(name: str) -> DiscreteOp:
    """Build a composite such as ``"PTQ"`` letter by letter (rightmost acts first)."""
    if not name or any(ch not in _PRIMITIVES for ch in name):
        raise KeyError(f"unknown discrete operator {name!r}")
    return compose_all(_PRIMITIVES[ch]() for ch in name)


# polynomial test functions ------------------------------------------------

NVARS = 5  # x0, x1, x2, x3, c


@dataclass(frozen=True)
class TestFunction:
    """Four polynomials in ``(x0, x1, x2, x3, c)`` with exact coefficients.

    Each component maps exponent tuples to nonzero :class:`ExactComplex`
    coefficients.
    """

    __test__ = False  # not a pytest class

    components: tuple

    def __post_init__(self):
        if len(self.components) != 4:
            raise ValueError("test functions have four components")
        clean = tuple(
            {k: as_exact(v) for k, v in comp.items() if not as_exact(v).is_zero()}
            for comp in self.components
        )
        object.__setattr__(self, "components", clean)

    @classmethod
    def constant(cls, vector: Sequence) -> "TestFunction":
        return cls(tuple({(0,) * NVARS: as_exact(v)} for v in vector))

    def __call__(self, x0, x, c) -> tuple:
        point = (as_exact(x0),) + tuple(as_exact(v) for v in x) + (as_exact(c),)
        return tuple(_eval_poly(comp, point) for comp in self.components)

    def __sub__(self, other: "TestFunction") -> "TestFunction":
        out = []
        for a, b in zip(self.components, other.components):
            d = dict(a)
            for k, v in b.items():
                d[k] = d.get(k, ZERO) - v
            out.append(d)
        return TestFunction(tuple(out))

    def is_zero(self) -> bool:
        return all(not comp for comp in self.components)

    def __eq__(self, other):
        if not isinstance(other, TestFunction):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(tuple(frozenset(c.items()) for c in self.components))


def _eval_poly(comp: dict, point) -> ExactComplex:
    acc = ZERO
    for exps, coeff in comp.items():
        term = coeff
        for base, e in zip(point, exps):
            if e:
                term = term * base**e
        acc = acc + term
    return acc


def random_test_function(rng: random.Random, max_degree: int = 2, terms: int = 4) -> TestFunction:
    """Seeded random polynomial spinor with small Gaussian-rational coefficients."""

    def coeff():
        return ExactComplex(
            Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
            Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
        )

    comps = []
    for _ in range(4):
        comp = {}
        for _ in range(terms):
            exps = tuple(rng.randint(0, max_degree) for _ in range(NVARS))
            comp[exps] = comp.get(exps, ZERO) + coeff()
        comps.append(comp)
    return TestFunction(tuple(comps))


def apply(op: DiscreteOp, f: TestFunction) -> TestFunction:
    """Exact image of a polynomial test function.

    Substituting ``s * v`` for a variable multiplies a monomial by
    ``s**exponent``; the c flip uses the last sign.
    """
    signs = (op.arg_signs[0],) + (op.arg_signs[1],) * 3 + (op.arg_signs[2],)
    moved = []
    for comp in f.components:
        d = {}
        for exps, coeff in comp.items():
            sgn = 1
            for s, e in zip(signs, exps):
                if s < 0 and e % 2:
                    sgn = -sgn
            v = coeff.conjugate() if op.antilinear else coeff
            d[exps] = v * sgn
        moved.append(d)
    out = []
    for i in range(4):
        d: dict = {}
        for j in range(4):
            mij = op.matrix[i, j]
            if mij.is_zero():
                continue
            for exps, coeff in moved[j].items():
                d[exps] = d.get(exps, ZERO) + mij * coeff
        out.append(d)
    return TestFunction(tuple(out))


# transformation table -------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    name: str
    matrix: ExactMatrix
    antilinear: bool
    arg_signs: Signs

    @property
    def label(self) -> str:
        return format_canonical(*canonical_form(self.matrix))


# transcribed row by row: (matrix text, antilinear, (s_t, s_x, s_c))
TABLE_EXPECTED = {
    "P": ("i*g0", False, (1, -1, 1)),
    "T": ("-i*g1*g3", True, (-1, 1, 1)),
    "PT": ("g0*g1*g3", True, (-1, -1, 1)),
    "Q": ("i*g5", False, (1, 1, -1)),
    "PQ": ("i*g1*g2*g3", False, (1, -1, -1)),
    "TQ": ("i*g0*g2", True, (-1, 1, -1)),
    "PTQ": ("-g2", True, (-1, -1, -1)),
}


class TableMismatch(AssertionError):
    def __init__(self, rows):
        self.rows = rows
        super().__init__(f"table rows differ from the expected constants: {', '.join(rows)}")


def expected_row(name: str) -> TableRow:
    text, anti, signs = TABLE_EXPECTED[name]
    return TableRow(name, evaluate(text), anti, signs)


def transformation_table() -> list[TableRow]:
    """Compose the seven table rows from P, T, Q and check them.

    Raises :class:`TableMismatch` naming any row that differs from the
    transcribed constants.
    """
    rows = []
    for name in TABLE_EXPECTED:
        op = operator(name)
        rows.append(TableRow(name, op.matrix, op.antilinear, op.arg_signs))
    bad = [r.name for r in rows if r != expected_row(r.name)]
    if bad:
        raise TableMismatch(bad)
    return rows


def verify_table() -> dict:
    """``{row name: matches expected}`` without raising."""
    out = {}
    for name in TABLE_EXPECTED:
        op = operator(name)
        out[name] = TableRow(name, op.matrix, op.antilinear, op.arg_signs) == expected_row(name)
    return out


# commutator -------------------------------------------------------------


def default_samples(rng: random.Random, n: int = 5) -> list:
    def q():
        return Fraction(rng.randint(-20, 20), rng.randint(1, 7))

    return [(q(), (q(), q(), q()), q() or Fraction(1)) for _ in range(n)]


def commutator_deviation(o1: DiscreteOp, o2: DiscreteOp, f: TestFunction, samples=None) -> Fraction:
    """Exact size of ``[o1, o2] f``.

    The image polynomial is evaluated at the rational sample points and the
    largest ``max(|re|, |im|)`` over points and components is returned. If the
    polynomial itself is identically zero the result is 0 regardless of
    samples.
    """
    diff = apply(o1, apply(o2, f)) - apply(o2, apply(o1, f))
    if diff.is_zero():
        return Fraction(0)
    if samples is None:
        samples = default_samples(random.Random(0))
    worst = Fraction(0)
    for x0, x, c in samples:
        for v in diff(x0, x, c):
            worst = max(worst, v.max_part())
    # a nonzero polynomial can vanish on every sample; never report that as exact zero
    return worst if worst > 0 else _poly_size(diff)


def _poly_size(f: TestFunction) -> Fraction:
    return max(v.max_part() for comp in f.components for v in comp.values())


# intertwiner solver -------------------------------------------------------


@dataclass(frozen=True)
class IntertwinerConstraint:
    """``U op(g^a) U^-1 = eps_a g^a`` for a = 0..3."""

    target_signs: tuple
    mode: str = "plain"

    def __post_init__(self):
        if len(self.target_signs) != 4 or any(s not in (1, -1) for s in self.target_signs):
            raise ValueError(f"target signs must be four of +1/-1, got {self.target_signs!r}")
        if self.mode not in ("plain", "transpose", "conjugate"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def from_string(cls, signs: str, mode: str = "plain") -> "IntertwinerConstraint":
        if len(signs) != 4 or any(ch not in "+-" for ch in signs):
            raise ValueError(f"signs must be four characters of '+'/'-', got {signs!r}")
        return cls(tuple(1 if ch == "+" else -1 for ch in signs), mode)


def solve_intertwiner(constraint: IntertwinerConstraint) -> list[tuple[ExactComplex, tuple]]:
    """All ``phase * basis element`` solutions among the 64 candidates.

    Each candidate is checked with an exact inverse and exact matrix
    equality; no structure of the basis is assumed.
    """
    transform = {
        "plain": lambda m: m,
        "transpose": lambda m: m.transpose(),
        "conjugate": lambda m: m.conjugate(),
    }[constraint.mode]
    gens = dirac_rep().gamma
    targets = [g.scale(s) for g, s in zip(gens, constraint.target_signs)]
    sources = [transform(g) for g in gens]
    found = []
    for el in basis_table():
        for phase in PHASES:
            u = el.matrix.scale(phase)
            u_inv = matrix_inverse(u)
            if all(u @ src @ u_inv == tgt for src, tgt in zip(sources, targets)):
                found.append((phase, el.index_set))
    return found


# light cone -----------------------------------------------------------------


def lightcone_check(t, x, c) -> tuple[Fraction, Fraction]:
    """``c^2 t^2 - |x|^2`` evaluated at ``c`` and at ``-c``."""
    t = Fraction(t)
    c = Fraction(c)
    r2 = sum(Fraction(v) ** 2 for v in x)
    return c * c * t * t - r2, (-c) * (-c) * t * t - r2
