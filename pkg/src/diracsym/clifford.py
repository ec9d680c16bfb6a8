"""Dirac representation of the gamma matrices and the 16-element Clifford basis.

Conventions: metric ``diag(+, -, -, -)``, standard (Dirac) block form, and
``g5 = -i g0 g1 g2 g3``. The last sign is opposite to many textbooks, so
every phase downstream depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence, Union

from .scalars import ExactComplex, ExactMatrix, I_UNIT, ONE, exact_rank

__all__ = [
    "METRIC",
    "GammaRep",
    "CliffordBasisElement",
    "build_dirac_rep",
    "dirac_rep",
    "gamma",
    "anticommutator",
    "canonical_product",
    "basis_table",
    "basis_matrix",
    "identity_checks",
    "FULL_SET",
    "PHASES",
]

METRIC = (1, -1, -1, -1)
FULL_SET = (0, 1, 2, 3)
PHASES = (ONE, -ONE, I_UNIT, -I_UNIT)

Symbol = Union[int, str]


def _pauli():
    sx = ExactMatrix([[0, 1], [1, 0]])
    sy = ExactMatrix([[0, -1j], [1j, 0]])
    sz = ExactMatrix([[1, 0], [0, -1]])
    return sx, sy, sz


@dataclass(frozen=True)
class GammaRep:
    gamma: tuple  # (g0, g1, g2, g3)
    gamma5: ExactMatrix
    metric: tuple
    pauli: tuple  # (sx, sy, sz)

    @property
    def identity(self) -> ExactMatrix:
        return ExactMatrix.identity(4)


def build_dirac_rep() -> GammaRep:
    """Build g0..g3, g5 and the Pauli matrices from their 2x2 blocks."""
    I2 = ExactMatrix.identity(2)
    Z2 = ExactMatrix.zeros(2)
    pauli = _pauli()
    g0 = ExactMatrix.block(I2, Z2, Z2, -I2)
    spatial = tuple(ExactMatrix.block(Z2, s, -s, Z2) for s in pauli)
    g5 = ExactMatrix.block(Z2, -I2, -I2, Z2)
    return GammaRep(gamma=(g0,) + spatial, gamma5=g5, metric=METRIC, pauli=pauli)


@lru_cache(maxsize=None)
def dirac_rep() -> GammaRep:
    """Cached :func:`build_dirac_rep`."""
    return build_dirac_rep()


def gamma(symbol: Symbol) -> ExactMatrix:
    """Generator lookup by index 0..3 or 5 (``"5"`` also accepted)."""
    rep = dirac_rep()
    if symbol in (5, "5"):
        return rep.gamma5
    if isinstance(symbol, int) and not isinstance(symbol, bool) and 0 <= symbol <= 3:
        return rep.gamma[symbol]
    if isinstance(symbol, str) and symbol in "0123" and len(symbol) == 1:
        return rep.gamma[int(symbol)]
    raise IndexError(f"no generator {symbol!r}")


def anticommutator(a: int, b: int) -> ExactMatrix:
    """``g^a g^b + g^b g^a``."""
    for idx in (a, b):
        if not (isinstance(idx, int) and 0 <= idx <= 3):
            raise IndexError(f"gamma index out of range: {idx!r}")
    ga, gb = gamma(a), gamma(b)
    return ga @ gb + gb @ ga


def _expand(word: Iterable[Symbol]) -> tuple[ExactComplex, list[int]]:
    phase = ONE
    out: list[int] = []
    for s in word:
        if s in (5, "5"):
            phase = phase * -I_UNIT
            out.extend(FULL_SET)
        elif isinstance(s, int) and not isinstance(s, bool) and 0 <= s <= 3:
            out.append(s)
        elif isinstance(s, str) and len(s) == 1 and s in "0123":
            out.append(int(s))
        else:
            raise ValueError(f"invalid generator symbol {s!r}")
    return phase, out


def canonical_product(word: Sequence[Symbol]) -> tuple[ExactComplex, tuple[int, ...]]:
    """Reduce a product of generators to ``phase * basis element``.

    Bubble sort the indices, flipping the sign on each swap of distinct
    neighbours, and contract equal neighbours with the metric. ``5`` in the
    word is expanded to ``-i g0 g1 g2 g3`` first. For the full index set the
    returned phase is relative to ``g5`` (the basis slot is stored as ``g5``),
    so ``g0 g1 g2 g3`` comes back as ``(i, (0, 1, 2, 3))``.
    """
    phase, idx = _expand(word)
    sign = 1
    changed = True
    while changed:
        changed = False
        k = 0
        while k < len(idx) - 1:
            a, b = idx[k], idx[k + 1]
            if a == b:
                sign *= METRIC[a]
                del idx[k : k + 2]
                changed = True
                continue
            if a > b:
                idx[k], idx[k + 1] = b, a
                sign = -sign
                changed = True
            k += 1
    phase = phase * sign
    key = tuple(idx)
    if key == FULL_SET:
        # g0 g1 g2 g3 = i g5
        phase = phase * I_UNIT
    return phase, key


@dataclass(frozen=True)
class CliffordBasisElement:
    index_set: tuple
    matrix: ExactMatrix

    @property
    def label(self) -> str:
        if not self.index_set:
            return "I"
        if self.index_set == FULL_SET:
            return "g5"
        return "*".join(f"g{i}" for i in self.index_set)


def basis_matrix(index_set: Sequence[int]) -> ExactMatrix:
    """Matrix of one basis slot: ascending product, ``g5`` for the full set."""
    key = tuple(index_set)
    if key == FULL_SET:
        return dirac_rep().gamma5
    out = ExactMatrix.identity(4)
    for i in key:
        out = out @ gamma(i)
    return out


@lru_cache(maxsize=None)
def basis_table() -> tuple:
    """The 16 basis elements ordered by grade, then lexicographically."""
    elements = []
    for grade in range(5):
        for subset in combinations(range(4), grade):
            elements.append(CliffordBasisElement(subset, basis_matrix(subset)))
    return tuple(elements)


def basis_rank() -> int:
    """Exact rank of the flattened basis matrices."""
    return exact_rank([list(el.matrix.entries()) for el in basis_table()])


def identity_checks(rep: GammaRep | None = None) -> dict:
    """Evaluate every identity group of the Clifford relations.

    Returns ``{name: exact deviation}`` where each deviation is the largest
    ``max(|re|, |im|)`` of (lhs - rhs) over the instances in the group. All
    values are exact ``Fraction`` zeros when the representation is right.
    """
    rep = rep or dirac_rep()
    g = rep.gamma
    g5 = rep.gamma5
    I4 = ExactMatrix.identity(4)

    def dev(pairs):
        return max((lhs - rhs).max_part() for lhs, rhs in pairs)

    checks = {
        "anticommutator": dev(
            (g[a] @ g[b] + g[b] @ g[a], I4.scale(2 * rep.metric[a] if a == b else 0))
            for a in range(4)
            for b in range(4)
        ),
        "g5_anticommutes": dev((g[a] @ g5 + g5 @ g[a], ExactMatrix.zeros(4)) for a in range(4)),
        "hermiticity": dev(
            [(g[0].adjoint(), g[0])] + [(g[k].adjoint(), -g[k]) for k in (1, 2, 3)]
        ),
        "squares": dev([(g[0] @ g[0], I4)] + [(g[k] @ g[k], -I4) for k in (1, 2, 3)]),
        "conjugation": dev(
            [(g[k].conjugate(), g[k]) for k in (0, 1, 3)] + [(g[2].conjugate(), -g[2])]
        ),
        "transposition": dev(
            [(g[k].transpose(), g[k]) for k in (0, 2)]
            + [(g[k].transpose(), -g[k]) for k in (1, 3)]
        ),
        "g5_definition": dev([((g[0] @ g[1] @ g[2] @ g[3]).scale(-I_UNIT), g5)]),
        "g5_hermitian": dev([(g5.adjoint(), g5)]),
        "g5_real": dev([(g5.conjugate(), g5)]),
        "g5_square": dev([(g5 @ g5, I4)]),
    }
    return checks
