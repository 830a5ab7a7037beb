"""Truncated Witt vectors ``W_n(R)`` over a quotient ring of characteristic p."""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple, Union

from .rings import QuotientRing, RingElem
from .universal import UniversalPolys, evaluate_compiled, universal_witt_polys


class WittError(ValueError):
    pass


class WittContext:
    """The ring ``W_n(R)``; obtain instances through :func:`witt_context`."""

    def __init__(self, ring: QuotientRing, n: int, *, allow_large: bool = False):
        if n < 1:
            raise WittError("Witt length must be >= 1")
        self.ring = ring
        self.n = n
        self.p = ring.p
        self.universal: UniversalPolys = universal_witt_polys(ring.p, n, allow_large=allow_large)

    def __repr__(self) -> str:
        return f"W_{self.n}({self.ring!r})"

    # -- constructors ----------------------------------------------------------
    def __call__(self, comps: Union[Sequence, str, "WittVector"]) -> "WittVector":
        if isinstance(comps, WittVector):
            if comps.ctx is not self:
                raise WittError("Witt vector from a different context")
            return comps
        if isinstance(comps, str):
            from .parsing import split_witt

            comps = split_witt(comps)
        comps = [self.ring(c) for c in comps]
        if len(comps) != self.n:
            raise WittError(f"expected {self.n} components, got {len(comps)}")
        return WittVector(self, tuple(comps))

    def zero(self) -> "WittVector":
        z = self.ring.zero()
        return WittVector(self, (z,) * self.n)

    def one(self) -> "WittVector":
        return self.teichmuller(self.ring.one())

    def teichmuller(self, f) -> "WittVector":
        f = self.ring(f)
        z = self.ring.zero()
        return WittVector(self, (f,) + (z,) * (self.n - 1))

    def truncated(self, m: int) -> "WittContext":
        return witt_context(self.ring, m)

    def verschiebung(self, gamma: "WittVector") -> "WittVector":
        """``V: W_{n-1} -> W_n``, prepending a zero component."""
        if gamma.ctx.ring is not self.ring or gamma.ctx.n != self.n - 1:
            raise WittError("verschiebung needs a vector of length n-1 over the same ring")
        return WittVector(self, (self.ring.zero(),) + gamma.comps)

    def from_int(self, k: int) -> "WittVector":
        out = self.zero()
        one = self.one()
        for _ in range(k):
            out = out + one
        return out


def witt_context(ring: QuotientRing, n: int) -> WittContext:
    return ring.cached(("witt", n), lambda: WittContext(ring, n))


class WittVector:
    __slots__ = ("ctx", "comps")

    def __init__(self, ctx: WittContext, comps: Tuple[RingElem, ...]):
        self.ctx = ctx
        self.comps = comps

    # -- helpers -------------------------------------------------------------
    def _same(self, other: "WittVector") -> None:
        if not isinstance(other, WittVector):
            raise TypeError(f"expected WittVector, got {type(other).__name__}")
        if other.ctx is not self.ctx:
            raise WittError("Witt vectors from different contexts")

    def __getitem__(self, i: int) -> RingElem:
        return self.comps[i]

    def __len__(self) -> int:
        return len(self.comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def is_teichmuller(self) -> bool:
        return all(c.is_zero() for c in self.comps[1:])

    def __eq__(self, other) -> bool:
        if not isinstance(other, WittVector):
            return NotImplemented
        return self.ctx is other.ctx and self.comps == other.comps

    def __hash__(self) -> int:
        return hash(self.comps)

    def __str__(self) -> str:
        return "(" + "; ".join(str(c) for c in self.comps) + ")"

    __repr__ = __str__

    # -- ring structure -------------------------------------------------------
    def _eval(self, table, inputs) -> "WittVector":
        zero = self.ctx.ring.zero()
        powers: dict = {}
        comps = tuple(evaluate_compiled(poly, inputs, zero, powers) for poly in table)
        return WittVector(self.ctx, comps)

    def __add__(self, other: "WittVector") -> "WittVector":
        self._same(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        return self._eval(self.ctx.universal.add_mod, self.comps + other.comps)

    def __neg__(self) -> "WittVector":
        if self.is_zero():
            return self
        return self._eval(self.ctx.universal.neg_mod, self.comps)

    def __sub__(self, other: "WittVector") -> "WittVector":
        return self + (-other)

    def __mul__(self, other: "WittVector") -> "WittVector":
        self._same(other)
        if self.is_teichmuller():
            return other.scale_teichmuller(self.comps[0])
        if other.is_teichmuller():
            return self.scale_teichmuller(other.comps[0])
        return self.mul_generic(other)

    def mul_generic(self, other: "WittVector") -> "WittVector":
        """Multiplication through the universal polynomials only (no fast paths)."""
        self._same(other)
        return self._eval(self.ctx.universal.mul_mod, self.comps + other.comps)

    def scale_teichmuller(self, f: RingElem) -> "WittVector":
        """``[f] * self = (f a_0, f^p a_1, ..., f^(p^(n-1)) a_{n-1})``."""
        f = self.ctx.ring(f)
        p = self.ctx.p
        comps = []
        fp = f
        for i, a in enumerate(self.comps):
            if i:
                fp = fp ** p
            comps.append(a * fp)
        return WittVector(self.ctx, tuple(comps))

    def __pow__(self, k: int) -> "WittVector":
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure maps ---------------------------------------------------------
    def frobenius(self, e: int = 1) -> "WittVector":
        """Componentwise ``p^e``-th power (the functorial Frobenius of W_n)."""
        if e == 0:
            return self
        return WittVector(self.ctx, tuple(c.frobenius(e) for c in self.comps))

    def restriction(self) -> "WittVector":
        """Drop the last component: ``W_n -> W_{n-1}``."""
        if self.ctx.n < 2:
            raise WittError("restriction needs n >= 2")
        ctx = self.ctx.truncated(self.ctx.n - 1)
        return WittVector(ctx, self.comps[:-1])

    def truncate(self, m: int) -> "WittVector":
        if not 1 <= m <= self.ctx.n:
            raise WittError("bad truncation length")
        return WittVector(self.ctx.truncated(m), self.comps[:m])

    def unshift(self) -> "WittVector":
        """Inverse of V on vectors with zero first component."""
        if not self.comps[0].is_zero():
            raise WittError("first component is not zero")
        if self.ctx.n < 2:
            raise WittError("cannot unshift a length-1 vector")
        return WittVector(self.ctx.truncated(self.ctx.n - 1), self.comps[1:])


# Functional aliases
def witt_add(a: WittVector, b: WittVector) -> WittVector:
    return a + b


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    return a * b


def witt_neg(a: WittVector) -> WittVector:
    return -a


def teichmuller(f: RingElem, ctx: WittContext) -> WittVector:
    return ctx.teichmuller(f)


def verschiebung(gamma: WittVector, ctx: WittContext) -> WittVector:
    return ctx.verschiebung(gamma)


def restriction(a: WittVector) -> WittVector:
    return a.restriction()


def witt_frobenius(a: WittVector, e: int = 1) -> WittVector:
    return a.frobenius(e)


def teichmuller_sum(ctx: WittContext, elems: Iterable[RingElem]) -> WittVector:
    """``sum [t]`` over ``elems``, left to right."""
    total = ctx.zero()
    for t in elems:
        if not t.is_zero():
            total = total + ctx.teichmuller(t)
    return total
