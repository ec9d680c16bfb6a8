"""A small calculator language for gamma-matrix monomials.

Grammar::

    expr      := term {'*' term}
    term      := ['-'] factor
    factor    := 'I' | 'i' | integer | generator | func '(' expr ')' | '(' expr ')'
    generator := 'g0' | 'g1' | 'g2' | 'g3' | 'g5'
    func      := 'star' | 'transpose' | 'dagger'

``star`` is entrywise complex conjugation; it is spelled as a function so
that ``*`` stays unambiguous as the product operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .clifford import FULL_SET, basis_table, gamma
from .scalars import ExactComplex, ExactMatrix, I_UNIT, ONE, as_exact

__all__ = [
    "Generator",
    "Identity",
    "ImaginaryUnit",
    "IntegerLiteral",
    "Negate",
    "Product",
    "Star",
    "Transpose",
    "Dagger",
    "GammaExpr",
    "ParseError",
    "NotMonomialError",
    "parse",
    "eval_exact",
    "evaluate",
    "canonicalize",
    "canonical_form",
    "format_canonical",
    "format_expr",
    "normalize",
    "expr_from_canonical",
    "is_basis_monomial",
    "unit_phase",
    "tokenize",
]


# AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    index: int  # 0..3 or 5


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class ImaginaryUnit:
    pass


@dataclass(frozen=True)
class IntegerLiteral:
    value: int


@dataclass(frozen=True)
class Negate:
    operand: "GammaExpr"


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Star:
    operand: "GammaExpr"


@dataclass(frozen=True)
class Transpose:
    operand: "GammaExpr"


@dataclass(frozen=True)
class Dagger:
    operand: "GammaExpr"


GammaExpr = Union[
    Generator, Identity, ImaginaryUnit, IntegerLiteral, Negate, Product, Star, Transpose, Dagger
]

_FUNCS = {"star": Star, "transpose": Transpose, "dagger": Dagger}
_FUNC_NAMES = {Star: "star", Transpose: "transpose", Dagger: "dagger"}


# errors ------------------------------------------------------------------


class ParseError(ValueError):
    """Lexical or syntax error with the byte offset where it was detected."""

    def __init__(self, kind: str, offset: int, message: str):
        self.kind = kind
        self.offset = offset
        self.message = message
        super().__init__(f"{kind} error at offset {offset}: {message}")


class NotMonomialError(ValueError):
    pass


# lexer -------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', 'gen', 'func', '*', '-', '(', ')', 'eof'
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch in "*-()":
            tokens.append(Token(ch, ch, pos))
            pos += 1
        elif ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            tokens.append(Token("int", text[start:pos], start))
        elif ch.isalpha():
            start = pos
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            word = text[start:pos]
            if word in ("I", "i"):
                tokens.append(Token("name", word, start))
            elif word in ("g0", "g1", "g2", "g3", "g5"):
                tokens.append(Token("gen", word, start))
            elif word in _FUNCS:
                tokens.append(Token("func", word, start))
            else:
                raise ParseError("lexical", start, f"unknown token {word!r}")
        else:
            raise ParseError("lexical", pos, f"unexpected character {ch!r}")
    tokens.append(Token("eof", "", n))
    return tokens


# parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
            raise ParseError("syntax", self.tok.offset, f"expected {kind!r}, found {found}")
        return self.advance()

    def parse(self):
        node = self.expr()
        if self.tok.kind != "eof":
            raise ParseError("syntax", self.tok.offset, f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        terms = [self.term()]
        while self.tok.kind == "*":
            self.advance()
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Product(tuple(terms))

    def term(self):
        if self.tok.kind == "-":
            self.advance()
            return Negate(self.factor())
        return self.factor()

    def factor(self):
        tok = self.tok
        if tok.kind == "name":
            self.advance()
            return Identity() if tok.text == "I" else ImaginaryUnit()
        if tok.kind == "int":
            self.advance()
            return IntegerLiteral(int(tok.text))
        if tok.kind == "gen":
            self.advance()
            return Generator(int(tok.text[1]))
        if tok.kind == "func":
            self.advance()
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return _FUNCS[tok.text](inner)
        if tok.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError("syntax", tok.offset, f"expected a factor, found {found}")


def parse(text: str) -> GammaExpr:
    """Parse ``text`` into an AST. Raises :class:`ParseError`."""
    return _Parser(text).parse()


# evaluation --------------------------------------------------------------


def eval_exact(e: GammaExpr) -> ExactMatrix:
    """Evaluate an AST to an exact 4x4 matrix."""
    if isinstance(e, Generator):
        return gamma(e.index)
    if isinstance(e, Identity):
        return ExactMatrix.identity(4)
    if isinstance(e, ImaginaryUnit):
        return ExactMatrix.identity(4).scale(I_UNIT)
    if isinstance(e, IntegerLiteral):
        return ExactMatrix.identity(4).scale(e.value)
    if isinstance(e, Negate):
        return -eval_exact(e.operand)
    if isinstance(e, Product):
        out = ExactMatrix.identity(4)
        for f in e.factors:
            out = out @ eval_exact(f)
        return out
    if isinstance(e, Star):
        return eval_exact(e.operand).conjugate()
    if isinstance(e, Transpose):
        return eval_exact(e.operand).transpose()
    if isinstance(e, Dagger):
        return eval_exact(e.operand).adjoint()
    raise TypeError(f"not a gamma expression node: {e!r}")


def evaluate(text: str) -> ExactMatrix:
    """Shorthand for ``eval_exact(parse(text))``."""
    return eval_exact(parse(text))


# canonical form ----------------------------------------------------------


def canonical_form(m: ExactMatrix) -> tuple[ExactComplex, tuple[int, ...]]:
    """Write ``m`` as ``scale * basis element``.

    Every basis matrix has exactly one nonzero per row, so the scale is
    read off at the first nonzero of each candidate and then checked.
    """
    if m.dim != 4:
        raise NotMonomialError("only 4x4 matrices have a Clifford canonical form")
    for el in basis_table():
        b = el.matrix
        r, c = next((i, j) for i in range(4) for j in range(4) if not b[i, j].is_zero())
        s = m[r, c] / b[r, c]
        if s.is_zero():
            continue
        if b.scale(s) == m:
            return s, el.index_set
    raise NotMonomialError("matrix is not a scalar multiple of a Clifford basis element")


def canonicalize(e: GammaExpr) -> tuple[ExactComplex, tuple[int, ...]]:
    """Canonical ``(scale, basis index set)`` of a monomial expression.

    The full index set ``(0, 1, 2, 3)`` stands for ``g5``.
    """
    return canonical_form(eval_exact(e))


def _scale_prefix(s: ExactComplex) -> str:
    if s.re != 0 and s.im != 0:
        raise NotMonomialError(f"scale {s} is not a unit phase times a rational")
    if s.im == 0:
        mag, unit = s.re, ""
    else:
        mag, unit = s.im, "i"
    sign = "-" if mag < 0 else ""
    mag = abs(mag)
    parts = []
    if mag != 1:
        if mag.denominator != 1:
            raise NotMonomialError(f"non-integer scale {s} has no textual form")
        parts.append(str(mag.numerator))
    if unit:
        parts.append(unit)
    return sign, parts


def format_canonical(scale: ExactComplex, index_set) -> str:
    """Text such as ``g0``, ``-g2``, ``i*g5``, ``-i*g0*g1*g3`` or ``-I``."""
    sign, parts = _scale_prefix(as_exact(scale))
    index_set = tuple(index_set)
    if index_set == FULL_SET:
        gens = ["g5"]
    elif not index_set:
        gens = ["I"]
    else:
        gens = [f"g{i}" for i in index_set]
    return sign + "*".join(parts + gens)


# formatting --------------------------------------------------------------


def format_expr(e: GammaExpr) -> str:
    """Deterministic serialization; ``parse(format_expr(e)) == normalize(e)``."""
    if isinstance(e, Generator):
        return f"g{e.index}"
    if isinstance(e, Identity):
        return "I"
    if isinstance(e, ImaginaryUnit):
        return "i"
    if isinstance(e, IntegerLiteral):
        if e.value < 0:
            return f"-{-e.value}"
        return str(e.value)
    if isinstance(e, Negate):
        return "-" + _format_factor(e.operand)
    if isinstance(e, Product):
        if not e.factors:
            return "I"
        if len(e.factors) == 1:
            return format_expr(e.factors[0])
        return "*".join(_format_term(f) for f in e.factors)
    if type(e) in _FUNC_NAMES:
        return f"{_FUNC_NAMES[type(e)]}({format_expr(e.operand)})"
    raise TypeError(f"not a gamma expression node: {e!r}")


def _format_factor(e) -> str:
    # a factor cannot start with '-' and cannot be a bare product
    if isinstance(e, Product) and len(e.factors) == 1:
        return _format_factor(e.factors[0])
    if isinstance(e, Negate) or (isinstance(e, IntegerLiteral) and e.value < 0):
        return f"({format_expr(e)})"
    if isinstance(e, Product) and len(e.factors) > 1:
        return f"({format_expr(e)})"
    return format_expr(e)


def _format_term(e) -> str:
    if isinstance(e, Negate):
        return "-" + _format_factor(e.operand)
    return _format_factor(e)


def normalize(e: GammaExpr) -> GammaExpr:
    """Structural normal form reached by a format/parse round trip.

    Empty products become ``Identity``, singleton products are unwrapped
    and negative integer literals become ``Negate`` of a literal.
    """
    if isinstance(e, IntegerLiteral) and e.value < 0:
        return Negate(IntegerLiteral(-e.value))
    if isinstance(e, Negate):
        return Negate(normalize(e.operand))
    if isinstance(e, Product):
        if not e.factors:
            return Identity()
        if len(e.factors) == 1:
            return normalize(e.factors[0])
        return Product(tuple(normalize(f) for f in e.factors))
    if type(e) in _FUNC_NAMES:
        return type(e)(normalize(e.operand))
    return e


def expr_from_canonical(scale: ExactComplex, index_set) -> GammaExpr:
    """Inverse of :func:`format_canonical` at the AST level."""
    return parse(format_canonical(scale, index_set))


def is_basis_monomial(m: ExactMatrix) -> bool:
    try:
        canonical_form(m)
    except NotMonomialError:
        return False
    return True


def unit_phase(s: ExactComplex) -> bool:
    return s in (ONE, -ONE, I_UNIT, -I_UNIT)

