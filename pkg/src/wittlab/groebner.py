"""Buchberger's algorithm over F_p with optional cofactor tracking.

Tracking records, for every basis element ``g``, cofactors ``h_1..h_s`` with
``g = sum h_i * gens[i]`` modulo an auxiliary ideal (the defining ideal of a
quotient ring).  Only the first ``tracked`` input generators receive
cofactors; the remaining inputs are treated as members of the auxiliary
ideal, so their cofactors are dropped.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from .poly import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    Poly,
    divmod_sets,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

log = logging.getLogger(__name__)

CofactorReducer = Callable[[Poly], Poly]


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis, sorted by leading monomial (ascending)."""

    order: MonomialOrder
    polys: Tuple[Poly, ...]
    leads: Tuple[Tuple[Monomial, int], ...]
    cofactors: Optional[Tuple[Tuple[Poly, ...], ...]] = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def is_unit(self) -> bool:
        return any(not any(m) for m, _ in self.leads)

    def reduce(self, f: Poly) -> Poly:
        if not self.polys or not f:
            return f
        _, r = divmod_sets(f, self.polys, self.order, self.leads)
        return r

    def contains(self, f: Poly) -> bool:
        return not self.reduce(f)

    def reduce_tracked(self, f: Poly) -> Tuple[List[Poly], Poly]:
        """Division with quotients w.r.t. basis elements."""
        if not self.polys:
            return [], f
        q, r = divmod_sets(f, self.polys, self.order, self.leads, track=True)
        return q, r


def _spoly(f: Poly, g: Poly, lf: Tuple[Monomial, int], lg: Tuple[Monomial, int]):
    lcm = mono_lcm(lf[0], lg[0])
    sf = mono_div(lcm, lf[0])
    sg = mono_div(lcm, lg[0])
    p = f.p
    cf = pow(lf[1], -1, p)
    cg = pow(lg[1], -1, p)
    return sf, cf, sg, cg


class _Tracker:
    """Cofactor vectors, combined lazily and reduced modulo the auxiliary ideal."""

    def __init__(self, ngens: int, nvars: int, p: int, reducer: Optional[CofactorReducer]):
        self.ngens = ngens
        self.nvars = nvars
        self.p = p
        self.reducer = reducer

    def zero(self) -> List[Poly]:
        return [Poly.zero(self.nvars, self.p) for _ in range(self.ngens)]

    def unit(self, i: int) -> List[Poly]:
        v = self.zero()
        if i < self.ngens:
            v[i] = Poly.constant(1, self.nvars, self.p)
        return v

    def clean(self, v: Sequence[Poly]) -> List[Poly]:
        if self.reducer is None:
            return list(v)
        return [self.reducer(h) if h else h for h in v]

    def combine(self, parts: Sequence[Tuple[Poly, Sequence[Poly]]]) -> List[Poly]:
        out = self.zero()
        for mult, vec in parts:
            if not mult:
                continue
            for i, h in enumerate(vec):
                if h:
                    out[i] = out[i] + mult * h
        return self.clean(out)


def buchberger(
    gens: Sequence[Poly],
    order: MonomialOrder = GREVLEX,
    *,
    tracked: int = 0,
    cofactor_reducer: Optional[CofactorReducer] = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    With ``tracked > 0`` the result carries cofactors expressing each basis
    element through ``gens[:tracked]``.
    """
    gens = [g for g in gens]
    if not gens:
        return GroebnerBasis(order, (), (), () if tracked else None)
    nvars, p = gens[0].nvars, gens[0].p
    if not p:
        raise ValueError("Gröbner bases are computed over prime fields only")
    for g in gens:
        if g.nvars != nvars or g.p != p:
            raise ValueError("generators live in different polynomial rings")
    track = tracked > 0
    tr = _Tracker(tracked, nvars, p, cofactor_reducer) if track else None

    G: List[Poly] = []
    L: List[Tuple[Monomial, int]] = []
    C: List[List[Poly]] = []
    pairs: set = set()

    def add(f: Poly, cof: Optional[List[Poly]]) -> None:
        nonlocal pairs
        lf = f.leading_term(order)
        lmf = lf[0]
        k = len(G)
        # Gebauer-Moeller update
        kept = set()
        for (i, j) in pairs:
            lij = mono_lcm(L[i][0], L[j][0])
            if (
                not mono_divides(lmf, lij)
                or lij == mono_lcm(L[i][0], lmf)
                or lij == mono_lcm(L[j][0], lmf)
            ):
                kept.add((i, j))
        by_lcm: dict = {}
        for i in range(k):
            by_lcm.setdefault(mono_lcm(L[i][0], lmf), []).append(i)
        minimal: List[Monomial] = []
        for lc in sorted(by_lcm, key=order.key):
            if all(not mono_divides(m, lc) for m in minimal):
                minimal.append(lc)
        for lc in minimal:
            idx = by_lcm[lc]
            if not any(mono_mul(L[i][0], lmf) == lc for i in idx):
                kept.add((min(idx), k))
        pairs = kept
        G.append(f)
        L.append(lf)
        C.append(cof)

    for idx, g in enumerate(gens):
        if not g:
            continue
        cof = tr.unit(idx) if track else None
        add(g, cof)

    def pair_key(ij):
        i, j = ij
        return (order.key(mono_lcm(L[i][0], L[j][0])), i, j)

    while pairs:
        ij = min(pairs, key=pair_key)
        pairs.remove(ij)
        i, j = ij
        sf, cf, sg, cg = _spoly(G[i], G[j], L[i], L[j])
        s = G[i].mul_term(sf, cf) - G[j].mul_term(sg, cg)
        if not s:
            continue
        live = range(len(G))
        if track:
            quots, r = divmod_sets(s, [G[t] for t in live], order, [L[t] for t in live], track=True)
        else:
            _, r = divmod_sets(s, [G[t] for t in live], order, [L[t] for t in live])
        if not r:
            continue
        cof = None
        if track:
            parts = [
                (Poly.monomial(sf, nvars, p, cf), C[i]),
                (Poly.monomial(sg, nvars, p, -cg), C[j]),
            ]
            for t, q in zip(live, quots):
                if q:
                    parts.append((-q, C[t]))
            cof = tr.combine(parts)
        add(r, cof)

    return _reduce_basis(G, L, C if track else None, order, tr)


def _reduce_basis(G, L, C, order, tr) -> GroebnerBasis:
    # minimalize: drop elements whose leading monomial is divisible by another's
    n = len(G)
    keep: List[int] = []
    for i in sorted(range(n), key=lambda t: (order.key(L[t][0]), t)):
        if any(mono_divides(L[k][0], L[i][0]) for k in keep):
            continue
        keep.append(i)
    polys = [G[i] for i in keep]
    leads = [L[i] for i in keep]
    cofs = [C[i] for i in keep] if C is not None else None
    p = polys[0].p if polys else 0
    nvars = polys[0].nvars if polys else 0
    out_p: List[Poly] = []
    out_c: List[List[Poly]] = []
    for k in range(len(polys)):
        others = polys[:k] + polys[k + 1:]
        olead = leads[:k] + leads[k + 1:]
        f = polys[k]
        if cofs is not None:
            quots, r = divmod_sets(f, others, order, olead, track=True)
        else:
            _, r = divmod_sets(f, others, order, olead)
        lc = r.leading_term(order)[1]
        inv = pow(lc, -1, p)
        out_p.append(r.scale(inv))
        if cofs is not None:
            ocof = cofs[:k] + cofs[k + 1:]
            parts = [(Poly.constant(inv, nvars, p), cofs[k])]
            for q, c in zip(quots, ocof):
                if q:
                    parts.append((-(q.scale(inv)), c))
            out_c.append(tr.combine(parts))
    # interreduction of element k used the unreduced others, which generate the
    # same ideal with the same leading monomials, so the result is reduced.
    idx = sorted(range(len(out_p)), key=lambda t: order.key(out_p[t].leading_monomial(order)))
    polys_t = tuple(out_p[t] for t in idx)
    leads_t = tuple(q.leading_term(order) for q in polys_t)
    cof_t = tuple(tuple(out_c[t]) for t in idx) if cofs is not None else None
    return GroebnerBasis(order, polys_t, leads_t, cof_t)


def is_groebner(polys: Sequence[Poly], order: MonomialOrder = GREVLEX) -> bool:
    """Check Buchberger's criterion: every S-polynomial reduces to zero."""
    polys = [f for f in polys if f]
    leads = [f.leading_term(order) for f in polys]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            sf, cf, sg, cg = _spoly(polys[i], polys[j], leads[i], leads[j])
            s = polys[i].mul_term(sf, cf) - polys[j].mul_term(sg, cg)
            _, r = divmod_sets(s, polys, order, leads)
            if r:
                return False
    return True
