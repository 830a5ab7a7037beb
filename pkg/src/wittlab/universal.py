"""Universal Witt addition, multiplication and negation polynomials.

Generated by inverting the ghost map over the integers: with
``w_i(a) = sum_{j<=i} p^j a_j^(p^(i-j))`` the polynomial ``S_i`` is the unique
integer polynomial with ``w_i(S) = w_i(X) + w_i(Y)``, and likewise for
products and negatives.  Every division by ``p^i`` is checked to be exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

from .poly import Poly

log = logging.getLogger(__name__)

MAX_LENGTH = 4
MAX_PRIME = 7

# (coefficient, ((input index, exponent), ...)) with coefficients mod p
CompiledPoly = Tuple[Tuple[int, Tuple[Tuple[int, int], ...]], ...]


def ghost_components(comps: Sequence, p: int) -> list:
    """Ghost vector ``(w_0, ..., w_{n-1})`` of an integer (or integer-polynomial) Witt tuple."""
    out = []
    for i in range(len(comps)):
        total = 0
        for j in range(i + 1):
            total = total + (p ** j) * comps[j] ** (p ** (i - j))
        out.append(total)
    return out


def _ghost_poly(i: int, offset: int, nvars: int, p: int) -> Poly:
    total = Poly.zero(nvars, 0)
    for j in range(i + 1):
        m = [0] * nvars
        m[offset + j] = p ** (i - j)
        total = total + Poly.monomial(tuple(m), nvars, 0, p ** j)
    return total


def _exact_divide(f: Poly, d: int, what: str) -> Poly:
    out = {}
    for m, c in f.terms.items():
        q, r = divmod(c, d)
        if r:
            raise ArithmeticError(f"inexact division by {d} while building {what}")
        out[m] = q
    return Poly(f.nvars, 0, out, _clean=True)


def _invert(target: List[Poly], p: int, name: str) -> List[Poly]:
    """Solve ``w_i(Z) = target_i`` for integer polynomials ``Z_0..Z_{n-1}``."""
    sols: List[Poly] = []
    for i, t in enumerate(target):
        rest = t
        for j, z in enumerate(sols):
            rest = rest - (z ** (p ** (i - j))).scale(p ** j)
        sols.append(_exact_divide(rest, p ** i, f"{name}_{i}"))
    return sols


def _compile(f: Poly) -> CompiledPoly:
    terms = []
    for m, c in sorted(f.terms.items()):
        terms.append((c, tuple((k, e) for k, e in enumerate(m) if e)))
    return tuple(terms)


@dataclass(frozen=True)
class UniversalPolys:
    """Integer Witt polynomials for ``(p, n)`` plus compiled reductions mod ``p``.

    Addition and multiplication polynomials use variables ``X_0..X_{n-1}``
    (indices ``0..n-1``) followed by ``Y_0..Y_{n-1}`` (indices ``n..2n-1``);
    negation uses ``X`` only.
    """

    p: int
    n: int
    add: Tuple[Poly, ...]
    mul: Tuple[Poly, ...]
    neg: Tuple[Poly, ...]
    add_mod: Tuple[CompiledPoly, ...]
    mul_mod: Tuple[CompiledPoly, ...]
    neg_mod: Tuple[CompiledPoly, ...]

    def check_ghost_identities(self) -> bool:
        """Exact integer-polynomial check of the defining ghost identities."""
        p, n = self.p, self.n
        for i in range(n):
            wx = _ghost_poly(i, 0, 2 * n, p)
            wy = _ghost_poly(i, n, 2 * n, p)
            ws = _ghost_of(self.add, i, p)
            wp = _ghost_of(self.mul, i, p)
            if ws != wx + wy or wp != wx * wy:
                return False
            wxn = _ghost_poly(i, 0, n, p)
            if _ghost_of(self.neg, i, p) != -wxn:
                return False
        return True


def _ghost_of(polys: Sequence[Poly], i: int, p: int) -> Poly:
    total = Poly.zero(polys[0].nvars, 0)
    for j in range(i + 1):
        total = total + (polys[j] ** (p ** (i - j))).scale(p ** j)
    return total


def universal_witt_polys(p: int, n: int, *, allow_large: bool = False) -> UniversalPolys:
    if n < 1:
        raise ValueError("Witt length must be >= 1")
    if (n > MAX_LENGTH or p > MAX_PRIME) and not allow_large:
        raise ValueError(
            f"(p, n) = ({p}, {n}) exceeds the default caps p <= {MAX_PRIME}, n <= {MAX_LENGTH}; "
            "pass allow_large=True to override"
        )
    if n > MAX_LENGTH or p > MAX_PRIME:
        log.warning("generating universal Witt polynomials for large (p, n) = (%d, %d)", p, n)
    return _universal(p, n)


@lru_cache(maxsize=None)
def _universal(p: int, n: int) -> UniversalPolys:
    nv = 2 * n
    wx = [_ghost_poly(i, 0, nv, p) for i in range(n)]
    wy = [_ghost_poly(i, n, nv, p) for i in range(n)]
    add = _invert([a + b for a, b in zip(wx, wy)], p, "S")
    mul = _invert([a * b for a, b in zip(wx, wy)], p, "P")
    neg = _invert([-_ghost_poly(i, 0, n, p) for i in range(n)], p, "N")
    return UniversalPolys(
        p,
        n,
        tuple(add),
        tuple(mul),
        tuple(neg),
        tuple(_compile(f.reduce_mod(p)) for f in add),
        tuple(_compile(f.reduce_mod(p)) for f in mul),
        tuple(_compile(f.reduce_mod(p)) for f in neg),
    )


def evaluate_compiled(poly: CompiledPoly, inputs: Sequence, zero, powers: dict):
    """Evaluate a compiled mod-p polynomial at ring elements.

    Terms touching a zero input are skipped; ``powers`` caches ``inputs[k]**e``
    across calls that share the same inputs.
    """
    total = zero
    for c, factors in poly:
        term = None
        for k, e in factors:
            v = inputs[k]
            if v.is_zero():
                term = None
                break
            key = (k, e)
            pw = powers.get(key)
            if pw is None:
                pw = v ** e
                powers[key] = pw
            term = pw if term is None else term * pw
        else:
            if term is None:
                total = total + c
                continue
            total = total + (term * c if c != 1 else term)
    return total
