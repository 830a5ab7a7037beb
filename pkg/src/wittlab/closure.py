"""Bounded certification and refutation of tight-closure membership on W_n(R).

Everything here is relative to explicit bounds (``SearchConfig``): positive
answers carry certificates valid for Frobenius depths ``e <= E``; negative
answers only say that the configured candidate sets were exhausted.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

from .rings import (
    QuotientRing,
    RIdeal,
    RingElem,
    ICCertificate,
    ideal_power,
    integral_closure_member_bounded,
    is_regular_sequence,
)
from .witt import WittVector, teichmuller_sum, witt_context
from .witt_ideal import (
    Member,
    MembershipCertificate,
    TeichIdeal,
    layered_membership,
    product_generators,
    product_power,
    verify_certificate,
)

log = logging.getLogger(__name__)


class DecompositionError(ValueError):
    """Input to :func:`bracket_decompose` violates the power-containment precondition."""


class CarryContainmentError(AssertionError):
    """A Witt carry left the ideal power it must lie in.

    This would contradict the carry analysis behind :func:`bracket_decompose`
    and is never expected on valid input.
    """


def default_depth(p: int) -> int:
    return 3 if p == 2 else 2


@dataclass(frozen=True)
class SearchConfig:
    """Bounds for the searches.

    ``depth`` is the Frobenius bound E (``None`` picks 3 for p = 2, else 2);
    ``mult_degree`` bounds the monomial multipliers c, ``lift_degree`` the
    monomials tried as higher lift components, and ``power_bound`` the powers
    checked by the integral-closure test.
    """

    depth: Optional[int] = None
    mult_degree: int = 4
    lift_degree: int = 4
    power_bound: int = 8
    multipliers: Optional[Tuple[RingElem, ...]] = None

    def __post_init__(self):
        if self.depth is not None and self.depth < 0:
            raise ValueError("depth must be >= 0")
        if self.mult_degree < 0 or self.lift_degree < 0:
            raise ValueError("degree bounds must be >= 0")
        if self.power_bound < 1:
            raise ValueError("power bound must be >= 1")
        if self.multipliers is not None:
            if not self.multipliers:
                raise ValueError("explicit multiplier list is empty")
            if len({c.poly for c in self.multipliers}) != len(self.multipliers):
                raise ValueError("explicit multiplier list has duplicates")

    def resolved_depth(self, p: int) -> int:
        return default_depth(p) if self.depth is None else self.depth

    def candidates(self, ring: QuotientRing) -> List[RingElem]:
        """Multiplier candidates in search order (non-zero-divisors only)."""
        if self.multipliers is not None:
            out = list(self.multipliers)
            for c in out:
                if not ring.is_nonzerodivisor(c):
                    raise ValueError(f"multiplier {c} is a zero-divisor")
            return out
        return ring.nzd_monomials(self.mult_degree)

    def lift_components(self, ring: QuotientRing) -> List[RingElem]:
        return ring.monomials(self.lift_degree, include_zero=True)

    def to_dict(self, p: int) -> dict:
        d = {
            "E": self.resolved_depth(p),
            "D": self.mult_degree,
            "D_lift": self.lift_degree,
            "M": self.power_bound,
        }
        if self.multipliers is not None:
            d["multipliers"] = [str(c) for c in self.multipliers]
        return d


@dataclass(frozen=True)
class TCCertificate:
    """``[c] F^e(alpha) ∈ I^[p^e]`` for ``0 <= e <= depth``, one membership certificate per e."""

    multiplier: RingElem
    depth: int
    certificates: Tuple[MembershipCertificate, ...]

    def verify(self, alpha: WittVector, I: TeichIdeal) -> bool:
        if len(self.certificates) != self.depth + 1:
            return False
        if not alpha.ctx.ring.is_nonzerodivisor(self.multiplier):
            return False
        for e, cert in enumerate(self.certificates):
            beta = alpha.frobenius(e).scale_teichmuller(self.multiplier)
            if not verify_certificate(beta, I.bracket(e), cert):
                return False
        return True

    def truncate(self, depth: int) -> "TCCertificate":
        if depth > self.depth:
            raise ValueError("cannot extend a certificate")
        return TCCertificate(self.multiplier, depth, self.certificates[: depth + 1])


@dataclass
class SearchStats:
    memberships: int = 0
    multipliers_tried: int = 0
    lifts_tried: int = 0

    def as_dict(self) -> dict:
        return {
            "membership_tests": self.memberships,
            "multipliers_tried": self.multipliers_tried,
            "lifts_tried": self.lifts_tried,
        }


def _layer0_passes(c: RingElem, z: RingElem, I: TeichIdeal, depth: int) -> Optional[int]:
    """First ``e <= depth`` with ``c z^(p^e) ∉ shadow(I^[p^e])``, or None if all pass."""
    p = I.ctx.p
    for e in range(depth + 1):
        if not I.bracket(e).shadow().contains(c * z ** (p ** e)):
            return e
    return None


def tc_certify(
    alpha: WittVector,
    I: TeichIdeal,
    cfg: SearchConfig = SearchConfig(),
    stats: Optional[SearchStats] = None,
) -> Optional[TCCertificate]:
    """First multiplier c with ``[c] F^e(alpha) ∈ I^[p^e]`` for every ``e <= E``.

    ``None`` means no certificate within ``cfg``; it does not show that alpha
    lies outside the tight closure.
    """
    if alpha.ctx is not I.ctx:
        raise ValueError("alpha and I live in different Witt rings")
    ring = I.ring
    depth = cfg.resolved_depth(ring.p)
    frob = [alpha.frobenius(e) for e in range(depth + 1)]
    stats = stats if stats is not None else SearchStats()
    for c in cfg.candidates(ring):
        stats.multipliers_tried += 1
        if _layer0_passes(c, alpha[0], I, depth) is not None:
            continue
        certs = []
        for e in range(depth + 1):
            stats.memberships += 1
            verdict = layered_membership(frob[e].scale_teichmuller(c), I.bracket(e))
            if not isinstance(verdict, Member):
                break
            certs.append(verdict.certificate)
        else:
            return TCCertificate(c, depth, tuple(certs))
    return None


@dataclass(frozen=True)
class Layer0Refutation:
    """For each multiplier, a depth at which the ring-level test fails."""

    element: RingElem
    depth: int
    failures: Tuple[Tuple[RingElem, int], ...]


def tc_refute_layer0(
    z: RingElem, I: TeichIdeal, cfg: SearchConfig = SearchConfig()
) -> Optional[Layer0Refutation]:
    """Refute ``z ∈ I*R`` for all lifts, relative to the multiplier candidates.

    Every lift of z has first component z, so the failure of
    ``c z^(p^e) ∈ (f_i^(p^e))`` for some ``e <= E`` rules out c for all lifts.
    """
    z = I.ring(z)
    depth = cfg.resolved_depth(I.ctx.p)
    table = []
    for c in cfg.candidates(I.ring):
        e = _layer0_passes(c, z, I, depth)
        if e is None:
            return None
        table.append((c, e))
    return Layer0Refutation(z, depth, tuple(table))


def tc_search_lifts(
    z: RingElem,
    I: TeichIdeal,
    cfg: SearchConfig = SearchConfig(),
    stats: Optional[SearchStats] = None,
) -> Optional[Tuple[WittVector, TCCertificate]]:
    """Search lifts ``(z, a_1, ..., a_{n-1})`` for one carrying a tight-closure certificate.

    Lifts are enumerated in product order over the lift-component set (zero
    first); the first lift with a certificate wins.
    """
    ring = I.ring
    z = ring(z)
    ctx = I.ctx
    depth = cfg.resolved_depth(ctx.p)
    stats = stats if stats is not None else SearchStats()
    # layer-0 feasibility does not depend on the lift
    viable = tuple(c for c in cfg.candidates(ring) if _layer0_passes(c, z, I, depth) is None)
    if not viable:
        return None
    sub = replace(cfg, multipliers=viable)
    comps = cfg.lift_components(ring)
    for tail in itertools.product(comps, repeat=ctx.n - 1):
        stats.lifts_tried += 1
        alpha = ctx([z, *tail])
        cert = tc_certify(alpha, I, sub, stats)
        if cert is not None:
            return alpha, cert
    return None


# ---------------------------------------------------------------------------
# Constructive power-containment decomposition
# ---------------------------------------------------------------------------


def _power_ideal(I: TeichIdeal, total: int) -> Tuple[RIdeal, List[Tuple[int, ...]]]:
    """``I_1^total`` with generators ``f^k`` listed alongside their exponent vectors."""
    ring = I.ring

    def compute():
        r = len(I.base)
        ks, gens = [], []
        for combo in itertools.combinations_with_replacement(range(r), total):
            k = tuple(combo.count(i) for i in range(r))
            g = ring.one()
            for i, e in enumerate(k):
                if e:
                    g = g * I.base[i] ** e
            ks.append(k)
            gens.append(g)
        return RIdeal(ring, gens), ks

    return ring.cached(("tpow", I.base, total), compute)


def _in_power(g: RingElem, I: TeichIdeal, total: int) -> bool:
    return g.is_zero() or ideal_power(I.shadow(), total).contains(g)


def _choose_slot(k: Tuple[int, ...], q: int, lam: int) -> Tuple[int, ...]:
    # |k| = (lam + r - 1) q forces sum(k_i // q) >= lam
    floor = [ki // q for ki in k]
    m = [0] * len(k)
    need = lam
    for i, f in enumerate(floor):
        take = min(f, need)
        m[i] = take
        need -= take
    if need:
        raise AssertionError("pigeonhole failed")
    return tuple(m)


def bracket_decompose(beta: WittVector, I: TeichIdeal, lam: int, e: int) -> MembershipCertificate:
    """Certificate for ``beta ∈ (I^lam)^[p^e]`` from power containments of its components.

    Requires ``beta_i ∈ I_1^((lam + r - 1) p^(e+i))`` for every component i.
    Each layer writes the first component as a sum over products of
    generators, subtracts the Teichmüller lifts of the grouped terms, checks
    that every carry stays in the required power, and recurses on the
    V-shifted remainder with e + 1.
    """
    if beta.ctx is not I.ctx:
        raise ValueError("beta and I live in different Witt rings")
    if lam < 1 or e < 0:
        raise ValueError("need lam >= 1 and e >= 0")
    ring = I.ring
    p = ring.p
    r = len(I.base)
    lam1 = lam + r - 1
    for i, g in enumerate(beta.comps):
        if not _in_power(g, I, lam1 * p ** (e + i)):
            raise DecompositionError(
                f"component {i} ({g}) is not in I^{lam1 * p ** (e + i)}"
            )
    gens = product_generators(I, lam)
    index = {g.poly: idx for idx, (_, g) in enumerate(gens)}
    slot_of = {k: index[g.poly] for k, g in gens}
    n = I.n
    layers = []
    residue = beta
    for j in range(n):
        q = p ** (e + j)
        g0 = residue[0]
        coeffs = [ring.zero() for _ in gens]
        if not g0.is_zero():
            P, ks = _power_ideal(I, lam1 * q)
            wit = P.member_with_witness(g0)
            if wit is None:
                raise DecompositionError(f"layer {j}: {g0} not in I^{lam1 * q}")
            for a, k in zip(wit, ks):
                if a.is_zero():
                    continue
                m = _choose_slot(k, q, lam)
                rest = ring.one()
                for i in range(r):
                    d = k[i] - q * m[i]
                    if d:
                        rest = rest * I.base[i] ** d
                slot = slot_of.get(m)
                if slot is None:
                    G = _prod(I, m)
                    if G.is_zero():
                        continue
                    slot = index[G.poly]
                coeffs[slot] = coeffs[slot] + a * rest
        terms = [c * g ** q for c, (_, g) in zip(coeffs, gens)]
        T = teichmuller_sum(residue.ctx, terms)
        if T[0] != g0:
            raise AssertionError("grouped decomposition does not reproduce the first component")
        for i in range(1, len(T)):
            need = lam1 * p ** (e + j + i)
            if not _in_power(T[i], I, need):
                log.error(
                    "carry %s at layer %d, position %d is outside I^%d", T[i], j, i, need
                )
                raise CarryContainmentError(
                    f"carry {T[i]} (layer {j}, position {i}) not in I^{need}"
                )
        layers.append(tuple(coeffs))
        residue = residue - T
        if j < n - 1:
            residue = residue.unshift()
    return MembershipCertificate(tuple(layers))


def _prod(I: TeichIdeal, m: Tuple[int, ...]) -> RingElem:
    g = I.ring.one()
    for i, e in enumerate(m):
        if e:
            g = g * I.base[i] ** e
    return g


@dataclass(frozen=True)
class BSResult:
    """Outcome of the integral-closure to tight-closure pipeline."""

    ic_certificate: ICCertificate
    tc_certificate: TCCertificate
    ideal: TeichIdeal
    requested_depth: int

    @property
    def truncated(self) -> bool:
        return self.tc_certificate.depth < self.requested_depth


def bs_pipeline(
    a: RingElem, I: TeichIdeal, lam: int, cfg: SearchConfig = SearchConfig()
) -> Optional[BSResult]:
    """Certify ``[a] ∈ (I^lam)*`` from a bounded integral-closure certificate.

    Finds c with ``c a^m ∈ I_1^((lam + r - 1) m)`` for ``m <= M``; then for every
    ``e <= E`` with ``p^e <= M`` decomposes ``[c a^(p^e)]`` into
    ``(I^lam)^[p^e]``.  The certificate is for ``[a]`` against ``product_power(I, lam)``.
    """
    ring = I.ring
    a = ring(a)
    p = ring.p
    r = len(I.base)
    lam1 = lam + r - 1
    ic = integral_closure_member_bounded(
        a, I.shadow(), lam1, cfg.candidates(ring), cfg.power_bound
    )
    if ic is None:
        return None
    requested = cfg.resolved_depth(p)
    depth = requested
    while p ** depth > cfg.power_bound:
        depth -= 1
    if depth < requested:
        log.warning(
            "depth truncated from %d to %d because p^E exceeds the power bound %d",
            requested, depth, cfg.power_bound,
        )
    c = ic.multiplier
    certs = []
    for e in range(depth + 1):
        beta = I.ctx.teichmuller(c * a ** (p ** e))
        certs.append(bracket_decompose(beta, I, lam, e))
    return BSResult(ic, TCCertificate(c, depth, tuple(certs)), product_power(I, lam), requested)


# ---------------------------------------------------------------------------
# Quasi-tight-closedness of systems of parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QTCEntry:
    exponents: Tuple[int, ...]
    element: RingElem
    outcome: str  # "certified" | "refuted_layer0" | "not_certified"
    lift: Optional[WittVector] = None
    certificate: Optional[TCCertificate] = None
    refutation: Optional[Layer0Refutation] = None


@dataclass
class QTCReport:
    sop: Tuple[RingElem, ...]
    n: int
    v_max: int
    sop_verified: bool
    bounds: dict
    entries: List[QTCEntry] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)
    seconds: float = 0.0

    @property
    def certified(self) -> List[QTCEntry]:
        return [e for e in self.entries if e.outcome == "certified"]

    @property
    def quasi_tightly_closed_evidence(self) -> bool:
        """No candidate outside ``I_1^v`` received a certificate."""
        return not self.certified


def qtc_check(
    sop: Sequence[RingElem],
    n: int,
    v_max: int,
    extra_candidates: Sequence[RingElem] = (),
    cfg: SearchConfig = SearchConfig(),
    candidate_degree: Optional[int] = None,
) -> QTCReport:
    """Look for elements of ``(I_n^v)*R`` outside ``I_1^v`` for all ``v <= v_max``.

    Candidates are the monomials of degree <= ``candidate_degree`` (default:
    the lift degree) outside ``I_1^v`` plus ``extra_candidates``.  Each is first
    tried for a layer-0 refutation, then by lift search.
    """
    if not sop:
        raise ValueError("empty system of parameters")
    ring = sop[0].ring
    sop = tuple(ring(x) for x in sop)
    start = time.perf_counter()
    ctx = witt_context(ring, n)
    deg = cfg.lift_degree if candidate_degree is None else candidate_degree
    report = QTCReport(
        sop, n, v_max, is_regular_sequence(list(sop)), cfg.to_dict(ring.p)
    )
    pool = ring.monomials(deg) + [ring(z) for z in extra_candidates]
    for v in itertools.product(range(1, v_max + 1), repeat=len(sop)):
        Iv = TeichIdeal(ctx, [x ** vi for x, vi in zip(sop, v)])
        shadow = Iv.shadow()
        seen = set()
        for z in pool:
            if z.is_zero() or z.poly in seen or shadow.contains(z):
                continue
            seen.add(z.poly)
            ref = tc_refute_layer0(z, Iv, cfg)
            if ref is not None:
                report.entries.append(QTCEntry(v, z, "refuted_layer0", refutation=ref))
                continue
            found = tc_search_lifts(z, Iv, cfg, report.stats)
            if found is not None:
                lift, cert = found
                report.entries.append(QTCEntry(v, z, "certified", lift, cert))
            else:
                report.entries.append(QTCEntry(v, z, "not_certified"))
    report.seconds = time.perf_counter() - start
    return report
