"""Plain-text input formats.

Polynomials: ASCII with ``^`` powers, optional ``*``, ``+``/``-`` and
parentheses, e.g. ``x^3+y^3+z^3`` or ``2x y^2 - (x+y)^2``.

Ring definitions, one declaration per line::

    prime 2
    vars x y z
    mod x^3+y^3+z^3
    order grevlex

Witt vectors: ``(poly; poly; ...)``.  Teichmüller ideals: ``[x],[y]`` with
optional ``^k`` (product power) and ``[p^e]`` (bracket power) suffixes on a
parenthesised list, e.g. ``([x],[y])^2[2^1]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .poly import Poly


class ParseError(ValueError):
    pass


def _tokenize(text: str, variables: Sequence[str]) -> List[Tuple[str, str]]:
    names = sorted(variables, key=len, reverse=True)
    var_re = "|".join(re.escape(v) for v in names) if names else r"(?!x)x"
    pattern = re.compile(rf"\s*(?:(?P<num>\d+)|(?P<var>{var_re})|(?P<op>[-+*^()]))")
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = pattern.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:]!r}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
    return out


class _Parser:
    def __init__(self, tokens, variables, p):
        self.toks = tokens
        self.i = 0
        self.vars = list(variables)
        self.n = len(variables)
        self.p = p

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self) -> Poly:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term().scale(sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Poly:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.constant(int(val), self.n, self.p)
        if kind == "var":
            return Poly.var(self.vars.index(val), self.n, self.p)
        if kind == "op" and val == "(":
            inner = self.expr()
            k, v = self.take()
            if v != ")":
                raise ParseError("missing ')'")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str, variables: Sequence[str], p: int) -> Poly:
    """Parse ``text``; coefficients are reduced mod ``p`` (``p = 0`` keeps integers)."""
    tokens = _tokenize(text, variables)
    if not tokens:
        raise ParseError("empty polynomial")
    parser = _Parser(tokens, variables, p)
    f = parser.expr()
    if parser.i != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return f


@dataclass(frozen=True)
class RingSpec:
    prime: int
    variables: Tuple[str, ...]
    mods: Tuple[str, ...]
    order: str = "grevlex"


def parse_ring_text(text: str) -> RingSpec:
    prime: Optional[int] = None
    variables: Optional[Tuple[str, ...]] = None
    mods: List[str] = []
    order = "grevlex"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "prime":
            prime = int(rest)
        elif word == "vars":
            variables = tuple(rest.split())
        elif word == "mod":
            mods.append(rest)
        elif word == "order":
            order = rest
        else:
            raise ParseError(f"line {lineno}: unknown declaration {word!r}")
    if prime is None or variables is None:
        raise ParseError("ring definition needs 'prime' and 'vars'")
    return RingSpec(prime, variables, tuple(mods), order)


def split_witt(text: str) -> List[str]:
    """Split ``(a; b; c)`` into component strings."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError("Witt vectors are written as (poly; poly; ...)")
    return [c.strip() for c in s[1:-1].split(";")]


_SUFFIX = re.compile(r"(\^(?P<pow>\d+)|\[(?P<p>\d+)\^(?P<e>\d+)\])$")


@dataclass(frozen=True)
class IdealSpec:
    generators: Tuple[str, ...]
    power: int = 1
    bracket_prime: Optional[int] = None
    bracket_e: int = 0


def parse_ideal_spec(text: str) -> IdealSpec:
    """Parse ``[f],[g]``, ``([f],[g])^2``, ``([f],[g])[2^1]`` and combinations."""
    s = text.strip()
    power = 1
    bp: Optional[int] = None
    be = 0
    # peel suffixes; they only count when a closing parenthesis sits underneath
    rest = s
    while True:
        m = _SUFFIX.search(rest)
        if not m:
            break
        if m.group("pow"):
            power *= int(m.group("pow"))
        else:
            bp, be = int(m.group("p")), be + int(m.group("e"))
        rest = rest[: m.start()].rstrip()
    if rest != s and rest.endswith(")"):
        s = rest
    else:
        power, bp, be = 1, None, 0
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    gens = []
    depth = 0
    cur = ""
    for ch in s:
        if ch == "[":
            depth += 1
            if depth == 1:
                cur = ""
                continue
        elif ch == "]":
            depth -= 1
            if depth == 0:
                gens.append(cur.strip())
                continue
        if depth >= 1:
            cur += ch
        elif ch not in ", \t":
            raise ParseError(f"ideal generators must be Teichmüller lifts [f]: {text!r}")
    if depth != 0 or not gens:
        raise ParseError(f"malformed ideal {text!r}")
    return IdealSpec(tuple(gens), power, bp, be)
