"""Expression strings for holomorphic polynomials.

Grammar (explicit '*' required, '^' for powers):

    expr   := term (('+'|'-') term)*
    term   := unary ('*' unary)*
    unary  := '-'? factor
    factor := base ('^' natural)?
    base   := 'z' natural | 'w' | 'i' | integer ('/' natural)? | '(' expr ')'

``parse_expression`` lowers a string to a HoloPoly over a given space;
``format_poly`` prints a canonical string that parses back to the same
polynomial (parse-print-parse is a fixed point).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

from .scalars import GaussianRational, format_scalar
from .polynomials import HoloPoly, VariableSpace
from .hermitian import ChartPoly, HermPoly


class ExpressionError(ValueError):
    """Syntax or semantic error, with a position in the input string."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Parser:
    def __init__(self, text: str, space: VariableSpace) -> None:
        self.text = text
        self.space = space
        self.pos = 0

    def error(self, message: str) -> ExpressionError:
        return ExpressionError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def natural(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.text[start : self.pos])

    def expr(self) -> HoloPoly:
        value = self.term()
        while True:
            if self.take("+"):
                value = value + self.term()
            elif self.take("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> HoloPoly:
        value = self.unary()
        while self.take("*"):
            value = value * self.unary()
        return value

    def unary(self) -> HoloPoly:
        if self.take("-"):
            return -self.factor()
        return self.factor()

    def factor(self) -> HoloPoly:
        value = self.base()
        if self.take("^"):
            value = value ** self.natural()
        return value

    def base(self) -> HoloPoly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if not self.take(")"):
                raise self.error("expected ')'")
            return value
        if ch == "z":
            self.pos += 1
            idx = self.natural()
            if not 1 <= idx <= self.space.nz:
                raise self.error(
                    f"unknown variable z{idx} (space has z1..z{self.space.nz})"
                )
            return self.space.z(idx)
        if ch == "w":
            self.pos += 1
            return self.space.w()
        if ch == "i":
            self.pos += 1
            return self.space.const(GaussianRational(0, 1))
        if ch.isdigit():
            num = self.natural()
            if self.take("/"):
                den = self.natural()
                if den == 0:
                    raise self.error("zero denominator literal")
                return self.space.const(Fraction(num, den))
            return self.space.const(num)
        raise self.error(f"unexpected character {ch!r}" if ch else "unexpected end of input")


def parse_expression(text: str, space: VariableSpace) -> HoloPoly:
    p = _Parser(text, space)
    value = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        raise p.error("trailing input")
    return value


def parse_constant(text: str, space: VariableSpace | None = None) -> GaussianRational:
    space = space or VariableSpace(2)
    poly = parse_expression(text, space)
    if poly.terms and list(poly.terms) != [space.zero_key()]:
        raise ExpressionError("expected a constant expression", 0)
    return poly.constant_term()

def parse_point(text: str, n: int) -> Tuple[GaussianRational, ...]:
    """Parse "(c1, ..., cn)" or "c1, ..., cn" with constant expressions."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    parts = s.split(",")
    if len(parts) != n:
        raise ExpressionError(f"expected {n} coordinates, got {len(parts)}", 0)
    return tuple(parse_constant(part) for part in parts)


# -- printing ----------------------------------------------------------


def _frac(f: Fraction) -> str:
    return str(f)


def _coeff_and_sign(c: GaussianRational) -> Tuple[int, str]:
    """(sign, coefficient text); text "" means coefficient 1."""
    if c.im == 0:
        sign = 1 if c.re > 0 else -1
        mag = abs(c.re)
        return sign, "" if mag == 1 else _frac(mag)
    if c.re == 0:
        sign = 1 if c.im > 0 else -1
        mag = abs(c.im)
        return sign, "i" if mag == 1 else f"{_frac(mag)}*i"
    return 1, f"({format_scalar(c)})"


def _monomial_text(names: Sequence[str], key: Sequence[int]) -> str:
    parts = []
    for name, e in zip(names, key):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _join_terms(terms: list[Tuple[int, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for k, (sign, body) in enumerate(terms):
        if k == 0:
            out.append(("-" if sign < 0 else "") + body)
        else:
            out.append((" - " if sign < 0 else " + ") + body)
    return "".join(out)


def _term_body(coeff_text: str, mono: str) -> str:
    if not mono:
        return coeff_text or "1"
    if not coeff_text:
        return mono
    return f"{coeff_text}*{mono}"


def format_poly(p: HoloPoly) -> str:
    names = [f"z{j}" for j in range(1, p.space.nz + 1)] + ["w"]
    terms = []
    for key in p.sorted_keys():
        sign, ctext = _coeff_and_sign(p.terms[key])
        terms.append((sign, _term_body(ctext, _monomial_text(names, key))))
    return _join_terms(terms)


def format_herm(h: HermPoly) -> str:
    n = h.space.n
    names = [f"z{j}" for j in range(1, n)] + ["w"]
    names += [f"conj({x})" for x in names]
    keys = sorted(h.terms, key=lambda k: (h.weight_of_key(k), k))
    terms = []
    for key in keys:
        sign, ctext = _coeff_and_sign(h.terms[key])
        terms.append((sign, _term_body(ctext, _monomial_text(names, key))))
    return _join_terms(terms)


def format_chart(c: ChartPoly) -> str:
    nz = c.space.nz
    names = [f"z{j}" for j in range(1, nz + 1)]
    names += [f"conj(z{j})" for j in range(1, nz + 1)]
    names += ["u"]
    keys = sorted(c.terms, key=lambda k: (c.weight_of_key(k), k))
    terms = []
    for key in keys:
        sign, ctext = _coeff_and_sign(c.terms[key])
        terms.append((sign, _term_body(ctext, _monomial_text(names, key))))
    return _join_terms(terms)
