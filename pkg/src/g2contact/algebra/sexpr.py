"""Prefix s-expression syntax for exact expressions.

Grammar::

    expr := rational | symbol | (+ expr+) | (* expr+) | (^ expr int) | (/ expr expr)

Rationals are written ``n`` or ``n/d``; ``cbrt12`` and ``sqrt3`` denote the
field generators.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .poly import Polynomial, var_name
from .ratfunc import ONE, ZERO, RationalFunction, as_rf
from .scalar import BASIS_NAMES, CBRT12, SQRT3, AlgebraicScalar

CONSTANTS = {"cbrt12": CBRT12, "sqrt3": SQRT3}

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_SYMBOL = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _tokenize(text):
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        skipped = text[pos:start]
        for k, ch in enumerate(skipped):
            if ch == "\n":
                line += 1
                line_start = pos + k + 1
        if m.lastindex is None:
            pos = m.end()
            continue
        tokens.append((m.group(m.lastindex), line, start - line_start + 1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, symbols):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.symbols = symbols

    def error(self, msg, tok=None):
        if tok is None:
            tok = self.tokens[self.pos] if self.pos < len(self.tokens) else None
        if tok is None:
            raise ParseError(msg + " at end of input")
        raise ParseError(msg, tok[1], tok[2])

    def next(self):
        if self.pos >= len(self.tokens):
            self.error("incomplete expression")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def expr(self):
        tok = self.next()
        text = tok[0]
        if text == ")":
            self.error("unexpected ')'", tok)
        if text != "(":
            return self.atom(tok)
        op_tok = self.next()
        op = op_tok[0]
        args = []
        if op == "^":
            base = self.expr()
            n_tok = self.next()
            if not re.fullmatch(r"[+-]?\d+", n_tok[0]):
                self.error("exponent must be an integer", n_tok)
            self.close()
            try:
                return base ** int(n_tok[0])
            except ZeroDivisionError:
                self.error("negative power of zero", n_tok)
        while self.peek() not in (")", None):
            args.append(self.expr())
        self.close()
        if op == "+":
            if not args:
                self.error("'+' needs at least one argument", op_tok)
            out = ZERO
            for a in args:
                out = out + a
            return out
        if op == "*":
            if not args:
                self.error("'*' needs at least one argument", op_tok)
            out = ONE
            for a in args:
                out = out * a
            return out
        if op == "/":
            if len(args) != 2:
                self.error("'/' takes exactly two arguments", op_tok)
            if args[1].is_zero():
                self.error("division by zero", op_tok)
            return args[0] / args[1]
        self.error(f"unknown operator {op!r}", op_tok)

    def close(self):
        tok = self.next()
        if tok[0] != ")":
            self.error("expected ')'", tok)

    def atom(self, tok):
        text = tok[0]
        if _RATIONAL.match(text):
            f = Fraction(text)
            return as_rf(f)
        if text in CONSTANTS:
            return as_rf(CONSTANTS[text])
        if not _SYMBOL.match(text):
            self.error(f"bad token {text!r}", tok)
        if self.symbols is not None and text not in self.symbols:
            self.error(f"undeclared symbol {text!r}", tok)
        return RationalFunction.var(text)


def parse(text, symbols=None):
    """Parse one expression; ``symbols`` restricts the allowed variable names."""
    p = _Parser(text, symbols)
    if not p.tokens:
        raise ParseError("empty expression")
    out = p.expr()
    if p.pos != len(p.tokens):
        p.error("trailing input")
    return out


# -- printing -----------------------------------------------------------------

def _fraction_str(f):
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def scalar_sexpr(s):
    s = AlgebraicScalar(s)
    if s.is_rational:
        return _fraction_str(s.to_fraction())
    parts = []
    for k, comp in enumerate(s.components):
        if not comp:
            continue
        name = BASIS_NAMES[k]
        if not name:
            parts.append(_fraction_str(comp))
            continue
        factors = name.replace("^2", "").split("*")
        if "cbrt12^2" in name:
            factors = ["(^ cbrt12 2)"] + [f for f in factors if f != "cbrt12"]
        if comp != 1:
            factors = [_fraction_str(comp)] + factors
        parts.append(factors[0] if len(factors) == 1 else "(* " + " ".join(factors) + ")")
    return parts[0] if len(parts) == 1 else "(+ " + " ".join(parts) + ")"


def poly_sexpr(p):
    if p.is_zero():
        return "0"
    terms = []
    for m, c in p.sorted_terms():
        factors = []
        if not c.is_one() or not m:
            factors.append(scalar_sexpr(c))
        for v, e in m:
            factors.append(var_name(v) if e == 1 else f"(^ {var_name(v)} {e})")
        terms.append(factors[0] if len(factors) == 1 else "(* " + " ".join(factors) + ")")
    return terms[0] if len(terms) == 1 else "(+ " + " ".join(terms) + ")"


def to_sexpr(f):
    """Canonical s-expression text; ``parse(to_sexpr(f)) == f``."""
    if isinstance(f, Polynomial):
        return poly_sexpr(f)
    f = as_rf(f)
    if f.den.is_constant():
        return poly_sexpr(f.num)
    return f"(/ {poly_sexpr(f.num)} {poly_sexpr(f.den)})"

