"""Sparse multivariate polynomials over Z or a prime field F_p.

A polynomial is a dict mapping exponent tuples to nonzero coefficients.
``p == 0`` means integer coefficients (arbitrary precision); otherwise the
coefficients are residues in ``[0, p)``.
"""

from __future__ import annotations

import heapq
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]
Terms = Dict[Monomial, int]


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _grevlex(m: Monomial) -> Tuple[int, ...]:
    return (sum(m),) + tuple(-e for e in reversed(m))


def _lex(m: Monomial) -> Tuple[int, ...]:
    return m


class MonomialOrder:
    """A monomial order given by an integer sort key (bigger key = bigger monomial).

    ``kind`` is one of ``"grevlex"``, ``"lex"`` or ``"elim"``.  The elimination
    order compares the first ``block`` variables by grevlex, ties broken by
    grevlex on the remaining variables.
    """

    __slots__ = ("kind", "block", "key")

    def __init__(self, kind: str = "grevlex", block: int = 0):
        if kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "elim" and block < 1:
            raise ValueError("elimination order needs block >= 1")
        self.kind = kind
        self.block = block
        if kind == "grevlex":
            self.key: Callable[[Monomial], Tuple[int, ...]] = _grevlex
        elif kind == "lex":
            self.key = _lex
        else:
            b = block

            def key(m: Monomial) -> Tuple[int, ...]:
                return _grevlex(m[:b]) + _grevlex(m[b:])

            self.key = lru_cache(maxsize=None)(key)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.block == other.block
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.block))

    def __repr__(self) -> str:
        if self.kind == "elim":
            return f"MonomialOrder('elim', block={self.block})"
        return f"MonomialOrder({self.kind!r})"


GREVLEX = MonomialOrder("grevlex")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_up_to(nvars: int, degree: int) -> Iterator[Monomial]:
    """All exponent vectors of total degree <= ``degree``, by degree then lex (descending)."""
    for d in range(degree + 1):
        yield from monomials_of_degree(nvars, d)


def monomials_of_degree(nvars: int, d: int) -> Iterator[Monomial]:
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables over Z (p=0) or F_p."""

    __slots__ = ("nvars", "p", "terms", "_hash")

    def __init__(self, nvars: int, p: int, terms: Optional[Terms] = None, *, _clean: bool = False):
        self.nvars = nvars
        self.p = p
        if terms is None:
            terms = {}
        elif not _clean:
            if p:
                terms = {m: c % p for m, c in terms.items() if c % p}
            else:
                terms = {m: c for m, c in terms.items() if c}
        self.terms: Terms = terms
        self._hash: Optional[int] = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, p: int) -> "Poly":
        return cls(nvars, p, {}, _clean=True)

    @classmethod
    def constant(cls, c: int, nvars: int, p: int) -> "Poly":
        return cls(nvars, p, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int, p: int) -> "Poly":
        m = [0] * nvars
        m[i] = 1
        return cls(nvars, p, {tuple(m): 1}, _clean=True)

    @classmethod
    def monomial(cls, m: Monomial, nvars: int, p: int, c: int = 1) -> "Poly":
        return cls(nvars, p, {tuple(m): c})

    def _new(self, terms: Terms) -> "Poly":
        return Poly(self.nvars, self.p, terms, _clean=True)

    # -- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def __len__(self) -> int:
        return len(self.terms)

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars or self.p != other.p:
            raise ValueError(
                f"polynomial mismatch: ({self.nvars} vars, p={self.p}) vs "
                f"({other.nvars} vars, p={other.p})"
            )

    # -- arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            return Poly.constant(other, self.nvars, self.p)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        p = self.p
        for m, c in b.items():
            v = out.get(m, 0) + c
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        p = self.p
        if p:
            return self._new({m: p - c for m, c in self.terms.items()})
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c: int) -> "Poly":
        p = self.p
        if p:
            c %= p
            if not c:
                return Poly.zero(self.nvars, p)
            return self._new({m: (v * c) % p for m, v in self.terms.items()})
        if not c:
            return Poly.zero(self.nvars, p)
        return self._new({m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: int = 1) -> "Poly":
        p = self.p
        if p:
            c %= p
            if not c:
                return Poly.zero(self.nvars, p)
            return self._new({mono_mul(m, mono): (v * c) % p for m, v in self.terms.items()})
        return self._new({mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.nvars, self.p)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: Terms = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = get(m, 0) + ca * cb
        p = self.p
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        if k == 0:
            return Poly.constant(1, self.nvars, self.p)
        # Frobenius shortcut in characteristic p: (sum c m)^(p^j) = sum c m^(p^j)
        p = self.p
        if p and k % p == 0:
            q = 1
            while k % p == 0:
                k //= p
                q *= p
            fro = self._new({tuple(e * q for e in m): c for m, c in self.terms.items()})
            return fro ** k
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparisons / hashing ----------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly.constant(other, self.nvars, self.p)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.p == other.p and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.p, frozenset(self.terms.items())))
        return self._hash

    # -- order-dependent -----------------------------------------------------
    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> Tuple[Monomial, int]:
        m = self.leading_monomial(order)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        if c == 1:
            return self
        return self.scale(pow(c, -1, self.p))

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- misc ----------------------------------------------------------------
    def reduce_mod(self, p: int) -> "Poly":
        """Reduce integer coefficients modulo ``p``."""
        return Poly(self.nvars, p, dict(self.terms))

    def evaluate(self, values: Sequence):
        """Evaluate at ``values`` (ints, Polys, or anything supporting + and *)."""
        total = 0
        powers: Dict[Tuple[int, int], object] = {}
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = values[i] ** e
                    t = t * powers[key]
            total = total + t
        return total

    def variables_used(self) -> Iterable[int]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    def to_str(self, names: Sequence[str], order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms(order):
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            neg = c < 0
            a = -c if neg else c
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = f"{a}*" + "*".join(factors)
            parts.append(("-" if neg else "+") + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def __repr__(self) -> str:
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Poly({self.to_str(names)!r}, p={self.p})"


def divmod_sets(
    f: Poly,
    divisors: Sequence[Poly],
    order: MonomialOrder,
    lead: Optional[Sequence[Tuple[Monomial, int]]] = None,
    track: bool = False,
) -> Tuple[Optional[list], Poly]:
    """Multivariate division of ``f`` by ``divisors`` over F_p.

    Returns ``(quotients, remainder)``; quotients is ``None`` unless ``track``.
    The remainder has no term divisible by any leading monomial.  Divisors are
    tried in the given order (first match wins), which keeps the result
    deterministic.
    """
    p = f.p
    if not p:
        raise ValueError("division is implemented over prime fields only")
    key = order.key
    if lead is None:
        lead = [d.leading_term(order) for d in divisors]
    inv = [pow(c, -1, p) for _, c in lead]
    work: Terms = dict(f.terms)
    heap = [(tuple(-k for k in key(m)), m) for m in work]
    heapq.heapify(heap)
    rem: Terms = {}
    quot: Optional[list] = [dict() for _ in divisors] if track else None
    nd = len(divisors)
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, 0)
        if not c:
            continue
        for i in range(nd):
            lm = lead[i][0]
            if all(a <= b for a, b in zip(lm, m)):
                shift = tuple(b - a for a, b in zip(lm, m))
                q = (c * inv[i]) % p
                if track:
                    qi = quot[i]
                    qi[shift] = (qi.get(shift, 0) + q) % p
                for dm, dc in divisors[i].terms.items():
                    if dm == lm:
                        continue
                    t = tuple(x + y for x, y in zip(dm, shift))
                    v = work.get(t)
                    if v is None:
                        work[t] = (-q * dc) % p
                        heapq.heappush(heap, (tuple(-k for k in key(t)), t))
                    else:
                        v = (v - q * dc) % p
                        if v:
                            work[t] = v
                        else:
                            del work[t]
                break
        else:
            rem[m] = c
    r = Poly(f.nvars, p, rem, _clean=True)
    if track:
        return [Poly(f.nvars, p, {m: c for m, c in q.items() if c}, _clean=True) for q in quot], r
    return None, r


def exact_div(f: Poly, g: Poly, order: MonomialOrder = GREVLEX) -> Poly:
    """Return ``f / g``; raises ``ArithmeticError`` if ``g`` does not divide ``f``."""
    quots, r = divmod_sets(f, [g], order, track=True)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return quots[0]
