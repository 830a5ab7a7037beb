"""Quotient rings F_p[x_1..x_k]/J, their elements, and ideal operations."""

from __future__ import annotations

import hashlib
import itertools
import json
import threading
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .groebner import GroebnerBasis, buchberger
from .poly import GREVLEX, MonomialOrder, Poly, exact_div, monomials_up_to


class RingError(ValueError):
    """Raised for malformed rings or mixing elements of different rings."""


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


class QuotientRing:
    """``F_p[vars] / (mods)`` with elements kept in normal form.

    >>> R = QuotientRing(2, "xyz", ["x^3+y^3+z^3"])
    >>> R("x^3+y^3+z^3")
    0
    """

    def __init__(
        self,
        p: int,
        variables: Union[str, Sequence[str]],
        mods: Sequence[Union[str, Poly]] = (),
        order: str = "grevlex",
    ):
        if not _is_prime(p):
            raise RingError(f"{p} is not prime")
        if isinstance(variables, str):
            variables = list(variables) if " " not in variables else variables.split()
        self.p = p
        self.variables: Tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise RingError("duplicate variable names")
        if order != "grevlex":
            raise RingError("only the grevlex order is supported for quotient rings")
        self.order_name = order
        self.order: MonomialOrder = GREVLEX
        self.nvars = len(self.variables)
        from .parsing import parse_poly

        self.mods: Tuple[Poly, ...] = tuple(
            m if isinstance(m, Poly) else parse_poly(m, self.variables, p) for m in mods
        )
        for m in self.mods:
            if m.nvars != self.nvars or m.p != p:
                raise RingError("defining polynomial over the wrong ring")
        self.gb: GroebnerBasis = buchberger(self.mods, self.order)
        if self.gb.is_unit():
            raise RingError("the defining ideal contains 1 (zero ring)")
        self._lock = threading.Lock()
        self._cache: Dict[object, object] = {}

    # -- element construction ------------------------------------------------
    def __call__(self, value: Union[str, int, Poly, "RingElem"]) -> "RingElem":
        if isinstance(value, RingElem):
            if value.ring is not self:
                raise RingError("element belongs to a different ring")
            return value
        if isinstance(value, int):
            return RingElem(self, Poly.constant(value, self.nvars, self.p), _nf=True)
        if isinstance(value, str):
            from .parsing import parse_poly

            value = parse_poly(value, self.variables, self.p)
        return self.normal_form(value)

    def normal_form(self, f: Poly) -> "RingElem":
        if f.nvars != self.nvars or f.p != self.p:
            raise RingError(
                f"polynomial in {f.nvars} variables over p={f.p} does not belong to {self}"
            )
        return RingElem(self, self.gb.reduce(f), _nf=True)

    def zero(self) -> "RingElem":
        return RingElem(self, Poly.zero(self.nvars, self.p), _nf=True)

    def one(self) -> "RingElem":
        return self(1)

    def var(self, name: str) -> "RingElem":
        return self.normal_form(Poly.var(self.variables.index(name), self.nvars, self.p))

    def gens(self) -> List["RingElem"]:
        return [self.var(v) for v in self.variables]

    def monomial(self, exps: Sequence[int]) -> "RingElem":
        return self.normal_form(Poly.monomial(tuple(exps), self.nvars, self.p))

    def ideal(self, gens: Iterable[Union[str, int, Poly, "RingElem"]]) -> "RIdeal":
        return RIdeal(self, [self(g) for g in gens])

    # -- description ----------------------------------------------------------
    def describe(self) -> dict:
        return {
            "prime": self.p,
            "vars": list(self.variables),
            "mods": [m.to_str(self.variables) for m in self.mods],
            "order": self.order_name,
        }

    def fingerprint(self) -> str:
        blob = json.dumps(self.describe(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def to_text(self) -> str:
        lines = [f"prime {self.p}", "vars " + " ".join(self.variables)]
        lines += [f"mod {m.to_str(self.variables)}" for m in self.mods]
        lines.append(f"order {self.order_name}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        base = f"F_{self.p}[{','.join(self.variables)}]"
        if self.mods:
            base += "/(" + ", ".join(m.to_str(self.variables) for m in self.mods) + ")"
        return base

    # -- cached helpers ---------------------------------------------------------
    def cached(self, key, compute):
        """Write-once cache shared by everything built over this ring."""
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            return self._cache.setdefault(key, value)

    def is_nonzerodivisor(self, c: "RingElem") -> bool:
        """``c`` is a non-zero-divisor iff ``(J : c) = J``."""
        if c.is_zero():
            return False
        if not self.mods:
            return True

        def compute() -> bool:
            colon = ideal_colon(RIdeal(self, []), c)
            return all(g.is_zero() for g in colon.gens)

        return self.cached(("nzd", c.poly), compute)

    def nzd_monomials(self, max_degree: int) -> List["RingElem"]:
        """Non-zero-divisor monomials of degree <= max_degree, deduplicated.

        Ordered by degree, then lexicographically with x_1 > x_2 > ...  A monomial
        is a non-zero-divisor exactly when each of its variables is one.
        """

        def compute():
            good = [self.is_nonzerodivisor(v) for v in self.gens()]
            seen = set()
            out = []
            for m in monomials_up_to(self.nvars, max_degree):
                if any(e and not good[i] for i, e in enumerate(m)):
                    continue
                c = self.monomial(m)
                if c.is_zero() or c.poly in seen:
                    continue
                seen.add(c.poly)
                out.append(c)
            return out

        return self.cached(("nzd_monomials", max_degree), compute)

    def monomials(self, max_degree: int, include_zero: bool = False) -> List["RingElem"]:
        """Distinct normal forms of monomials of degree <= max_degree."""
        out = [self.zero()] if include_zero else []
        seen = {self.zero().poly}
        for m in monomials_up_to(self.nvars, max_degree):
            c = self.monomial(m)
            if c.poly in seen:
                continue
            seen.add(c.poly)
            out.append(c)
        return out


class RingElem:
    """Element of a :class:`QuotientRing`, stored as its normal form."""

    __slots__ = ("ring", "poly")

    def __init__(self, ring: QuotientRing, poly: Poly, _nf: bool = False):
        self.ring = ring
        self.poly = poly if _nf else ring.gb.reduce(poly)

    def _other(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.ring is not self.ring:
                raise RingError("elements of different rings")
            return other
        if isinstance(other, int):
            return self.ring(other)
        raise TypeError(f"cannot combine RingElem with {type(other).__name__}")

    def __add__(self, other) -> "RingElem":
        o = self._other(other)
        return RingElem(self.ring, self.poly + o.poly, _nf=True)

    __radd__ = __add__

    def __sub__(self, other) -> "RingElem":
        o = self._other(other)
        return RingElem(self.ring, self.poly - o.poly, _nf=True)

    def __rsub__(self, other) -> "RingElem":
        return self._other(other) - self

    def __neg__(self) -> "RingElem":
        return RingElem(self.ring, -self.poly, _nf=True)

    def __mul__(self, other) -> "RingElem":
        o = self._other(other)
        if self.is_zero() or o.is_zero():
            return self.ring.zero()
        return RingElem(self.ring, self.poly * o.poly)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RingElem":
        if k < 0:
            raise ValueError("negative exponent")
        if not self.ring.mods:
            return RingElem(self.ring, self.poly ** k, _nf=True)
        result = self.ring.one()
        base = self
        p = self.ring.p
        # p-th powers first: cheap, and keeps intermediate normal forms small
        while k and k % p == 0:
            base = RingElem(self.ring, base.poly ** p)
            k //= p
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius(self, e: int = 1) -> "RingElem":
        return self ** (self.ring.p ** e)

    def is_zero(self) -> bool:
        return not self.poly

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.ring is other.ring and self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def __str__(self) -> str:
        return self.poly.to_str(self.ring.variables)

    def __repr__(self) -> str:
        return str(self)


# ---------------------------------------------------------------------------
# Ideals
# ---------------------------------------------------------------------------


class RIdeal:
    """Ideal of a quotient ring given by generators; Gröbner data is computed lazily."""

    def __init__(self, ring: QuotientRing, gens: Sequence[RingElem]):
        for g in gens:
            if g.ring is not ring:
                raise RingError("generator from a different ring")
        self.ring = ring
        self.gens: Tuple[RingElem, ...] = tuple(gens)

    def __repr__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __len__(self) -> int:
        return len(self.gens)

    @property
    def key(self) -> tuple:
        return tuple(g.poly for g in self.gens)

    @property
    def groebner(self) -> GroebnerBasis:
        """Tracked Gröbner basis of ``I + J`` in the ambient polynomial ring."""
        R = self.ring

        def compute():
            polys = [g.poly for g in self.gens] + list(R.gb.polys)
            return buchberger(
                polys,
                R.order,
                tracked=len(self.gens),
                cofactor_reducer=R.gb.reduce,
            )

        if not self.gens:
            return R.gb
        return R.cached(("gb", self.key), compute)

    def contains(self, f: RingElem) -> bool:
        if f.ring is not self.ring:
            raise RingError("element from a different ring")
        if f.is_zero():
            return True
        if not self.gens:
            return False
        return self.groebner.contains(f.poly)

    __contains__ = contains

    def is_unit(self) -> bool:
        return bool(self.gens) and self.groebner.is_unit()

    def contains_ideal(self, other: "RIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def same_as(self, other: "RIdeal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def member_with_witness(self, f: RingElem) -> Optional[List[RingElem]]:
        return ideal_member_with_witness(f, self)


def normal_form(f: Poly, ring: QuotientRing) -> RingElem:
    return ring.normal_form(f)


def ideal_member_with_witness(f: RingElem, I: RIdeal) -> Optional[List[RingElem]]:
    """Coefficients ``g`` with ``f = sum g_i * I.gens[i]`` in R, or ``None``.

    The witness comes from tracked division and is checked before returning.
    """
    R = I.ring
    if f.ring is not R:
        raise RingError("element from a different ring")
    if f.is_zero():
        return [R.zero() for _ in I.gens]
    if not I.gens:
        return None
    gb = I.groebner
    quots, r = gb.reduce_tracked(f.poly)
    if r:
        return None
    s = len(I.gens)
    acc = [Poly.zero(R.nvars, R.p) for _ in range(s)]
    for q, cof in zip(quots, gb.cofactors):
        if not q:
            continue
        for i in range(s):
            if cof[i]:
                acc[i] = acc[i] + q * cof[i]
    witness = [R.normal_form(a) for a in acc]
    total = R.zero()
    for w, g in zip(witness, I.gens):
        total = total + w * g
    if total != f:
        raise AssertionError(f"witness recombination failed for {f} in {I}")
    return witness


def ideal_power(I: RIdeal, lam: int) -> RIdeal:
    """All ``lam``-fold products of the generators, deduplicated."""
    if lam < 1:
        raise ValueError("ideal power needs lambda >= 1")
    if lam == 1:
        return I
    R = I.ring

    def compute():
        seen = set()
        gens = []
        for combo in itertools.combinations_with_replacement(range(len(I.gens)), lam):
            g = R.one()
            for i in combo:
                g = g * I.gens[i]
            if g.poly in seen:
                continue
            seen.add(g.poly)
            gens.append(g)
        return RIdeal(R, gens)

    return R.cached(("power", I.key, lam), compute)


def frobenius_power_ring(I: RIdeal, e: int) -> RIdeal:
    """Ideal generated by the ``p^e``-th powers of the generators."""
    if e < 0:
        raise ValueError("e must be >= 0")
    if e == 0:
        return I
    return RIdeal(I.ring, [g.frobenius(e) for g in I.gens])


def _lift_t(f: Poly) -> Poly:
    """Embed into the ring with one extra leading variable t."""
    return Poly(f.nvars + 1, f.p, {(0,) + m: c for m, c in f.terms.items()}, _clean=True)


def _eliminate_t(polys: Iterable[Poly]) -> List[Poly]:
    return [
        Poly(f.nvars - 1, f.p, {m[1:]: c for m, c in f.terms.items()}, _clean=True)
        for f in polys
        if all(m[0] == 0 for m in f.terms)
    ]


def _intersection_polys(A: Sequence[Poly], B: Sequence[Poly], nvars: int, p: int) -> List[Poly]:
    t = Poly.var(0, nvars + 1, p)
    one_minus_t = Poly.constant(1, nvars + 1, p) - t
    gens = [t * _lift_t(a) for a in A] + [one_minus_t * _lift_t(b) for b in B]
    gb = buchberger(gens, MonomialOrder("elim", block=1))
    return _eliminate_t(gb.polys)


def ideal_intersect(I: RIdeal, K: RIdeal) -> RIdeal:
    """``I ∩ K`` via elimination of an auxiliary variable."""
    R = I.ring
    if K.ring is not R:
        raise RingError("ideals over different rings")
    jp = list(R.gb.polys)

    def compute():
        inter = _intersection_polys(
            [g.poly for g in I.gens] + jp, [g.poly for g in K.gens] + jp, R.nvars, R.p
        )
        gens = []
        seen = set()
        for h in inter:
            e = R.normal_form(h)
            if e.is_zero() or e.poly in seen:
                continue
            seen.add(e.poly)
            gens.append(e)
        return RIdeal(R, gens)

    return R.cached(("intersect", I.key, K.key), compute)


def ideal_colon(I: RIdeal, f: RingElem) -> RIdeal:
    """``(I : f)`` computed as ``(I + J) ∩ (f)`` divided by ``f`` in the ambient ring."""
    R = I.ring
    if f.ring is not R:
        raise RingError("element from a different ring")
    if f.is_zero():
        raise ValueError("colon by zero")

    def compute():
        inter = _intersection_polys(
            [g.poly for g in I.gens] + list(R.gb.polys), [f.poly], R.nvars, R.p
        )
        gens = []
        seen = set()
        for h in inter:
            e = R.normal_form(exact_div(h, f.poly, R.order))
            if e.is_zero() or e.poly in seen:
                continue
            seen.add(e.poly)
            gens.append(e)
        return RIdeal(R, gens)

    return R.cached(("colon", I.key, f.poly), compute)


def is_regular_sequence(elems: Sequence[RingElem]) -> bool:
    """Check that ``elems`` is an R-regular sequence (colon criterion, proper quotient)."""
    if not elems:
        raise ValueError("empty sequence")
    R = elems[0].ring

    def compute():
        if RIdeal(R, list(elems)).is_unit():
            return False
        if not R.is_nonzerodivisor(elems[0]):
            return False
        for i in range(1, len(elems)):
            prev = RIdeal(R, list(elems[:i]))
            if elems[i].is_zero():
                return False
            colon = ideal_colon(prev, elems[i])
            if not prev.contains_ideal(colon):
                return False
        return True

    return R.cached(("regseq", tuple(e.poly for e in elems)), compute)


# ---------------------------------------------------------------------------
# Bounded integral-closure test
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ICCertificate:
    """``c * a^m ∈ I^(exponent*m)`` for ``1 <= m <= power_bound`` with explicit witnesses."""

    multiplier: RingElem
    power_bound: int
    exponent: int
    witnesses: Tuple[Tuple[RingElem, ...], ...]

    def verify(self, a: RingElem, I: RIdeal) -> bool:
        if len(self.witnesses) != self.power_bound:
            return False
        if not a.ring.is_nonzerodivisor(self.multiplier):
            return False
        for m, wit in enumerate(self.witnesses, start=1):
            P = ideal_power(I, self.exponent * m)
            if len(wit) != len(P.gens):
                return False
            total = a.ring.zero()
            for w, g in zip(wit, P.gens):
                total = total + w * g
            if total != self.multiplier * a ** m:
                return False
        return True


def integral_closure_member_bounded(
    a: RingElem,
    I: RIdeal,
    exponent: int,
    multiplier_candidates: Sequence[RingElem],
    power_bound: int,
) -> Optional[ICCertificate]:
    """First candidate ``c`` with ``c a^m ∈ I^(exponent m)`` for all ``m <= power_bound``.

    ``None`` means no certificate under these bounds, not that ``a`` lies outside
    the integral closure.
    """
    if exponent < 1 or power_bound < 1:
        raise ValueError("exponent and power bound must be >= 1")
    if not multiplier_candidates:
        raise ValueError("empty multiplier candidate list")
    for c in multiplier_candidates:
        if c.is_zero():
            raise ValueError("multiplier candidates must be nonzero")
    powers = [a ** m for m in range(1, power_bound + 1)]
    for c in multiplier_candidates:
        witnesses = []
        for m in range(1, power_bound + 1):
            w = ideal_member_with_witness(c * powers[m - 1], ideal_power(I, exponent * m))
            if w is None:
                break
            witnesses.append(tuple(w))
        else:
            return ICCertificate(c, power_bound, exponent, tuple(witnesses))
    return None
