"""Teichmüller-generated ideals of ``W_n(R)`` and layered membership.

An ideal ``([f_1], ..., [f_r])`` is tested layer by layer: the first
component must lie in ``(f_1, ..., f_r)``; subtracting the Teichmüller lifts
of the witness terms leaves ``V(delta)``, and ``delta`` is tested against the
Frobenius bracket power on ``W_{n-1}``.  Member verdicts always come with a
certificate that can be replayed with Witt arithmetic alone.
"""

from __future__ import annotations

import itertools
import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .rings import RIdeal, RingElem, is_regular_sequence
from .witt import WittContext, WittError, WittVector, teichmuller_sum

log = logging.getLogger(__name__)


class TeichIdeal:
    """Ideal of ``W_n(R)`` generated by Teichmüller lifts ``[f_1], ..., [f_r]``."""

    def __init__(self, ctx: WittContext, base: Sequence[Union[RingElem, str, int]]):
        base = tuple(ctx.ring(f) for f in base)
        if not base:
            raise ValueError("a Teichmüller ideal needs at least one generator")
        if any(f.is_zero() for f in base):
            raise ValueError("Teichmüller generators must be nonzero")
        self.ctx = ctx
        self.base: Tuple[RingElem, ...] = base
        self._brackets: Dict[int, "TeichIdeal"] = {}
        self._lock = threading.Lock()
        self._complete: Optional[bool] = None

    @classmethod
    def from_generators(cls, ctx: WittContext, gens: Sequence[WittVector]) -> "TeichIdeal":
        for g in gens:
            if g.ctx is not ctx:
                raise WittError("generator from a different context")
            if not g.is_teichmuller():
                raise WittError(f"{g} is not a Teichmüller lift")
        return cls(ctx, [g[0] for g in gens])

    def __repr__(self) -> str:
        return "(" + ", ".join(f"[{f}]" for f in self.base) + f") in {self.ctx!r}"

    def __eq__(self, other) -> bool:
        return isinstance(other, TeichIdeal) and self.ctx is other.ctx and self.base == other.base

    def __hash__(self) -> int:
        return hash(self.base)

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def ring(self):
        return self.ctx.ring

    def generators(self) -> List[WittVector]:
        return [self.ctx.teichmuller(f) for f in self.base]

    def shadow(self) -> RIdeal:
        """The ring-level ideal ``(f_1, ..., f_r)``."""
        return RIdeal(self.ring, list(self.base))

    def bracket(self, e: int) -> "TeichIdeal":
        return bracket_frobenius_power(self, e)

    def truncated(self, m: int) -> "TeichIdeal":
        if m == self.n:
            return self
        return TeichIdeal(self.ctx.truncated(m), self.base)

    @property
    def complete(self) -> bool:
        """Whether ``f_1^(p^j), ..., f_r^(p^j)`` is a regular sequence for every ``j < n``."""
        if self._complete is None:
            p = self.ctx.p
            self._complete = all(
                is_regular_sequence([f ** (p ** j) for f in self.base]) for j in range(self.n)
            )
        return self._complete


def bracket_frobenius_power(I: TeichIdeal, e: int) -> TeichIdeal:
    """``I^[p^e]``: the ideal on the base elements ``f_i^(p^e)``."""
    if e < 0:
        raise ValueError("e must be >= 0")
    if e == 0:
        return I
    with I._lock:
        cached = I._brackets.get(e)
    if cached is not None:
        return cached
    q = I.ctx.p ** e
    J = TeichIdeal(I.ctx, [f ** q for f in I.base])
    with I._lock:
        return I._brackets.setdefault(e, J)


def product_power(I: TeichIdeal, lam: int) -> TeichIdeal:
    """``I^lam``: Teichmüller lifts of all ``lam``-fold products of the base elements.

    Products are deduplicated by value, so even ``lam = 1`` drops repeated generators.
    """
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    gens = [g for _, g in product_generators(I, lam)]
    if tuple(gens) == I.base:
        return I
    return TeichIdeal(I.ctx, gens)


def product_generators(I: TeichIdeal, lam: int) -> List[Tuple[Tuple[int, ...], RingElem]]:
    """Exponent vectors ``k`` (|k| = lam) with the products ``f^k``, deduplicated by value."""
    R = I.ring
    r = len(I.base)
    seen = set()
    out = []
    for combo in itertools.combinations_with_replacement(range(r), lam):
        k = tuple(combo.count(i) for i in range(r))
        g = R.one()
        for i, e in enumerate(k):
            if e:
                g = g * I.base[i] ** e
        if g.is_zero() or g.poly in seen:
            continue
        seen.add(g.poly)
        out.append((k, g))
    return out


# ---------------------------------------------------------------------------
# Certificates and verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MembershipCertificate:
    """Per-layer coefficients: layer ``j`` pairs with the base elements ``f_i^(p^j)``."""

    layers: Tuple[Tuple[RingElem, ...], ...]


@dataclass(frozen=True)
class Member:
    certificate: MembershipCertificate
    is_member = True
    kind = "member"


@dataclass(frozen=True)
class NonMember:
    layer: int
    residue: RingElem
    is_member = False
    kind = "nonmember"


@dataclass(frozen=True)
class Uncertified:
    reason: str
    layer: int
    residue: RingElem
    is_member = False
    kind = "uncertified"


MembershipVerdict = Union[Member, NonMember, Uncertified]


def layered_membership(beta: WittVector, I: TeichIdeal) -> MembershipVerdict:
    """Decide ``beta ∈ I`` by peeling one Witt component at a time.

    A failure at layer 0 is always a genuine non-membership.  Deeper failures
    are only reported as ``NonMember`` when ``I.complete`` holds; otherwise the
    peeling may have depended on the witness choice and the verdict is
    ``Uncertified``.
    """
    if beta.ctx is not I.ctx:
        raise WittError("element and ideal live in different Witt rings")
    n = I.n
    layers: List[Tuple[RingElem, ...]] = []
    residue = beta
    cur = I
    for j in range(n):
        b0 = residue[0]
        w = cur.shadow().member_with_witness(b0)
        if w is None:
            if j == 0 or I.complete:
                return NonMember(j, b0)
            return Uncertified("layer failure without regular-sequence completeness", j, b0)
        layers.append(tuple(w))
        if any(not c.is_zero() for c in w):
            residue = residue - teichmuller_sum(
                residue.ctx, [c * f for c, f in zip(w, cur.base)]
            )
        if not residue[0].is_zero():
            raise AssertionError("peeling left a nonzero first component")
        if j < n - 1:
            residue = residue.unshift()
            cur = cur.truncated(n - j - 1).bracket(1)
    return Member(MembershipCertificate(tuple(layers)))


def verify_certificate(beta: WittVector, I: TeichIdeal, cert: MembershipCertificate) -> bool:
    """Replay ``cert`` with Witt arithmetic only; True iff it terminates at zero."""
    if beta.ctx is not I.ctx or len(cert.layers) != I.n:
        return False
    p = I.ctx.p
    residue = beta
    n = I.n
    for j, coeffs in enumerate(cert.layers):
        if len(coeffs) != len(I.base):
            return False
        if any(c.ring is not I.ring for c in coeffs):
            return False
        q = p ** j
        terms = [c * f ** q for c, f in zip(coeffs, I.base)]
        residue = residue - teichmuller_sum(residue.ctx, terms)
        if not residue[0].is_zero():
            return False
        if j < n - 1:
            residue = residue.unshift()
    return True


def is_member(beta: WittVector, I: TeichIdeal) -> bool:
    return layered_membership(beta, I).is_member


# ---------------------------------------------------------------------------
# V-preimage probe
# ---------------------------------------------------------------------------


@dataclass
class ProbeReport:
    agreements: int = 0
    counterexamples: List[dict] = field(default_factory=list)
    undecided: List[dict] = field(default_factory=list)

    @property
    def all_agree(self) -> bool:
        return not self.counterexamples and not self.undecided


def v_preimage_probe(I: TeichIdeal, samples: Sequence[WittVector]) -> ProbeReport:
    """Compare ``V(delta) ∈ I`` with ``delta ∈ (truncated I)^[p]`` on each sample."""
    if I.n < 2:
        raise ValueError("V-preimage probe needs n >= 2")
    lower = I.truncated(I.n - 1).bracket(1)
    report = ProbeReport()
    for delta in samples:
        if delta.ctx is not lower.ctx:
            raise WittError("samples must live in W_{n-1}")
        lhs = layered_membership(I.ctx.verschiebung(delta), I)
        rhs = layered_membership(delta, lower)
        row = {"delta": str(delta), "V(delta) in I": lhs.kind, "delta in I^[p]": rhs.kind}
        if isinstance(lhs, Uncertified) or isinstance(rhs, Uncertified):
            report.undecided.append(row)
        elif lhs.is_member == rhs.is_member:
            report.agreements += 1
        else:
            report.counterexamples.append(row)
    return report
