"""Witt-style bookkeeping over a split direct sum.

Elements carry two independent components over a fixed base group: a free
abelian word on opaque, user-declared symbols (a summand no desk-scale
computation can resolve, so it stays formal), and class coordinates in the
computed degree-4 cohomology of the base.  Composition is componentwise,
so the split structure (a retraction onto the word part, a section with
zero class part, and the class-part projection) holds by construction and
is exercised, not assumed, by the tests.

The class coordinates are |G|-torsion (an invariant factor always divides
the group order), which is why the |G|-th power of anything has trivial
class part and admits a minimal extension.

Expressions for the command line combine S(<symbol>) and H4(c1,...) with
*, inv(...) and pow(..., n), evaluated against one base group.
"""

import re
from dataclasses import dataclass

from .cochains import CochainError
from .cohomology import CohomologyGroup, class_coordinates, compute_cohomology
from .groups import FiniteGroup
from .skeletons import PentagonDefect

Word = tuple[tuple[str, int], ...]


def _normalize_word(pairs) -> Word:
    acc: dict[str, int] = {}
    for symbol, exponent in pairs:
        if not isinstance(symbol, str) or not symbol:
            raise CochainError("word symbols must be non-empty strings")
        e = acc.get(symbol, 0) + int(exponent)
        if e:
            acc[symbol] = e
        else:
            acc.pop(symbol, None)
    return tuple(sorted(acc.items()))


@dataclass(frozen=True)
class WittElement:
    """A (word, class) pair over one base group."""

    h4: CohomologyGroup
    w_part: Word
    h4_part: tuple[int, ...]

    def __post_init__(self):
        factors = self.h4.invariant_factors
        if len(self.h4_part) != len(factors):
            raise CochainError(
                f"class part needs {len(factors)} coordinates, got {len(self.h4_part)}")
        if any(not (0 <= c < f) for c, f in zip(self.h4_part, factors)):
            raise CochainError("class coordinates must be reduced modulo the factors")

    @property
    def base_group(self) -> FiniteGroup:
        return self.h4.group

    def describe(self) -> str:
        if not self.w_part:
            word = "1"
        else:
            word = " * ".join(
                s if e == 1 else f"{s}^{e}" for s, e in self.w_part)
        coords = ",".join(str(c) for c in self.h4_part) or "-"
        return f"W[{word}] H4[{coords}]"


def identity_element(h4: CohomologyGroup) -> WittElement:
    return WittElement(h4, (), tuple(0 for _ in h4.invariant_factors))


def from_parts(h4: CohomologyGroup, word, coords) -> WittElement:
    """Build an element, reducing the class part modulo the factors."""
    factors = h4.invariant_factors
    coords = [int(c) for c in coords]
    if len(coords) > len(factors):
        raise CochainError(
            f"{len(coords)} class coordinates against {len(factors)} factors")
    coords = coords + [0] * (len(factors) - len(coords))
    reduced = tuple(c % f for c, f in zip(coords, factors))
    return WittElement(h4, _normalize_word(word), reduced)


def _check_same_base(x: WittElement, y: WittElement) -> None:
    if x.h4.group.table != y.h4.group.table:
        raise CochainError("elements live over different base groups")


def compose(x: WittElement, y: WittElement) -> WittElement:
    _check_same_base(x, y)
    word = _normalize_word(x.w_part + y.w_part)
    coords = tuple((a + b) % f for a, b, f in
                   zip(x.h4_part, y.h4_part, x.h4.invariant_factors))
    return WittElement(x.h4, word, coords)


def inverse(x: WittElement) -> WittElement:
    word = _normalize_word((s, -e) for s, e in x.w_part)
    coords = tuple((-c) % f for c, f in zip(x.h4_part, x.h4.invariant_factors))
    return WittElement(x.h4, word, coords)


def power(x: WittElement, n: int) -> WittElement:
    if n < 1:
        raise CochainError("power expects a positive exponent")
    word = _normalize_word((s, e * n) for s, e in x.w_part)
    coords = tuple((c * n) % f for c, f in zip(x.h4_part, x.h4.invariant_factors))
    return WittElement(x.h4, word, coords)


def phi(x: WittElement) -> Word:
    """Retraction onto the formal word summand."""
    return x.w_part


def section_S(word, h4: CohomologyGroup) -> WittElement:
    """Section of phi: embed a word with zero class part."""
    return WittElement(h4, _normalize_word(word),
                       tuple(0 for _ in h4.invariant_factors))


def eta(x: WittElement) -> tuple[int, ...]:
    """Projection onto the class coordinates."""
    return x.h4_part


def admits_minimal_extension(x: WittElement) -> bool:
    """True exactly when the class part vanishes (image of the section)."""
    return not any(x.h4_part)


def defect_to_witt(defect: PentagonDefect, h4: CohomologyGroup) -> WittElement:
    if defect.base.table != h4.group.table:
        raise CochainError("defect base group differs from the cohomology group")
    return WittElement(h4, (), tuple(class_coordinates(defect.cocycle, h4)))


# -- expression syntax: S(sym), H4(c1,...), *, inv(...), pow(..., n) --

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|\d+|[(),*])")


class ExpressionError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionError(f"bad character at position {pos}: {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str], h4: CohomologyGroup):
        self.tokens = tokens
        self.pos = 0
        self.h4 = h4

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ExpressionError("unexpected end of expression")
        if expected is not None and tok != expected:
            raise ExpressionError(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def parse(self) -> WittElement:
        value = self.expression()
        if self.peek() is not None:
            raise ExpressionError(f"trailing input from token {self.peek()!r}")
        return value

    def expression(self) -> WittElement:
        value = self.atom()
        while self.peek() == "*":
            self.take("*")
            value = compose(value, self.atom())
        return value

    def atom(self) -> WittElement:
        tok = self.take()
        if tok == "S":
            self.take("(")
            symbol = self.take()
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", symbol):
                raise ExpressionError(f"bad symbol name {symbol!r}")
            self.take(")")
            return section_S([(symbol, 1)], self.h4)
        if tok == "H4":
            self.take("(")
            coords = []
            if self.peek() != ")":
                coords.append(self._int())
                while self.peek() == ",":
                    self.take(",")
                    coords.append(self._int())
            self.take(")")
            return from_parts(self.h4, (), coords)
        if tok == "inv":
            self.take("(")
            inner = self.expression()
            self.take(")")
            return inverse(inner)
        if tok == "pow":
            self.take("(")
            inner = self.expression()
            self.take(",")
            n = self._int()
            self.take(")")
            return power(inner, n)
        raise ExpressionError(f"unexpected token {tok!r}")

    def _int(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise ExpressionError(f"expected an integer, found {tok!r}")
        return int(tok)


def evaluate_expression(text: str, h4: CohomologyGroup) -> WittElement:
    """Evaluate a ledger expression against one base group's cohomology."""
    return _Parser(_tokenize(text), h4).parse()
