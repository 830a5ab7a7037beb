"""Top local cohomology of W_n(R) as a colimit over a system of parameters.

Stage ``m`` is ``W_n(R) / ([x_1^m], ..., [x_d^m])`` and the transition to
stage ``m + l`` multiplies by ``[x_1^l ... x_d^l]``.  Classes are handled at
finite stages; zero tests push up to an explicit stage bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple, Union

from .closure import SearchConfig
from .rings import RingElem, is_regular_sequence
from .witt import WittContext, WittVector
from .witt_ideal import (
    Member,
    MembershipCertificate,
    TeichIdeal,
    layered_membership,
    verify_certificate,
)


class ColimError(ValueError):
    pass


class ColimContext:
    """Colimit presentation of ``H^d_m(W_n(R))`` along the parameters ``sop``."""

    def __init__(self, ctx: WittContext, sop: Sequence[Union[RingElem, str]]):
        sop = tuple(ctx.ring(x) for x in sop)
        if not sop:
            raise ColimError("empty system of parameters")
        if not is_regular_sequence(list(sop)):
            raise ColimError(f"{sop} is not a regular sequence")
        self.ctx = ctx
        self.sop = sop
        self._stages: Dict[int, TeichIdeal] = {}

    def stage_ideal(self, m: int) -> TeichIdeal:
        if m < 1:
            raise ColimError("stages start at 1")
        I = self._stages.get(m)
        if I is None:
            I = self._stages.setdefault(m, TeichIdeal(self.ctx, [x ** m for x in self.sop]))
        return I

    def denominator(self, l: int) -> RingElem:
        out = self.ctx.ring.one()
        for x in self.sop:
            out = out * x ** l
        return out

    def cls(self, stage: int, rep: Union[WittVector, str, Sequence]) -> "ColimClass":
        return ColimClass(self, stage, self.ctx(rep))


@dataclass(frozen=True)
class ColimClass:
    """Element of the colimit represented by ``rep`` at ``stage``."""

    colim: ColimContext
    stage: int
    rep: WittVector

    def __post_init__(self):
        if self.stage < 1:
            raise ColimError("stages start at 1")
        if self.rep.ctx is not self.colim.ctx:
            raise ColimError("representative from a different Witt ring")

    def __str__(self) -> str:
        return f"<stage {self.stage}: {self.rep}>"


@dataclass(frozen=True)
class Zero:
    """Vanishes at ``stage``; ``certificate`` shows the pushed representative lies in the stage ideal."""

    stage: int
    element: Optional[WittVector] = None
    certificate: Optional[MembershipCertificate] = None
    is_zero = True


@dataclass(frozen=True)
class NonzeroUpTo:
    bound: int
    is_zero = False


def push(cl: ColimClass, l: int) -> ColimClass:
    """Image at stage ``stage + l``: multiply by ``[x_1^l ... x_d^l]``."""
    if l < 0:
        raise ColimError("push length must be >= 0")
    if l == 0:
        return cl
    rep = cl.rep.scale_teichmuller(cl.colim.denominator(l))
    return ColimClass(cl.colim, cl.stage + l, rep)


def is_zero_at(cl: ColimClass) -> bool:
    return isinstance(layered_membership(cl.rep, cl.colim.stage_ideal(cl.stage)), Member)


def verify_zero(cl: ColimClass, z: Zero) -> bool:
    """Replay a Zero verdict's certificate without any ideal-membership search."""
    if z.certificate is None or z.element is None or z.stage < cl.stage:
        return False
    if push(cl, z.stage - cl.stage).rep != z.element:
        return False
    return verify_certificate(z.element, cl.colim.stage_ideal(z.stage), z.certificate)


def is_zero_bounded(cl: ColimClass, M: int) -> Union[Zero, NonzeroUpTo]:
    """Zero(stage) if some push to a stage <= M lands in the stage ideal."""
    if M < cl.stage:
        raise ColimError(f"bound {M} is below the class stage {cl.stage}")
    for target in range(cl.stage, M + 1):
        pushed = push(cl, target - cl.stage)
        verdict = layered_membership(pushed.rep, cl.colim.stage_ideal(target))
        if isinstance(verdict, Member):
            return Zero(target, pushed.rep, verdict.certificate)
    return NonzeroUpTo(M)


def classes_equal_bounded(a: ColimClass, b: ColimClass, M: int) -> bool:
    """Equality after pushing both to a common stage (bounded by M)."""
    if a.colim is not b.colim:
        raise ColimError("classes from different colimits")
    top = max(a.stage, b.stage)
    a2 = push(a, top - a.stage)
    b2 = push(b, top - b.stage)
    diff = ColimClass(a.colim, top, a2.rep - b2.rep)
    return is_zero_bounded(diff, max(M, top)).is_zero


def scalar_act(cl: ColimClass, omega: WittVector) -> ColimClass:
    if omega.ctx is not cl.rep.ctx:
        raise ColimError("scalar from a different Witt ring")
    return ColimClass(cl.colim, cl.stage, omega * cl.rep)


@dataclass(frozen=True)
class TorsionReport:
    verdicts: Tuple[Tuple[RingElem, Union[Zero, NonzeroUpTo]], ...]

    @property
    def is_torsion(self) -> bool:
        return all(v.is_zero for _, v in self.verdicts)


def torsion_probe(cl: ColimClass, I: TeichIdeal, M: int) -> TorsionReport:
    """Bounded test of whether every generator of ``I`` kills ``cl``."""
    if I.ctx is not cl.rep.ctx:
        raise ColimError("ideal from a different Witt ring")
    out = []
    for f in I.base:
        out.append((f, is_zero_bounded(scalar_act(cl, I.ctx.teichmuller(f)), M)))
    return TorsionReport(tuple(out))


def i_R_embed(beta: WittVector, I: TeichIdeal, colim: ColimContext) -> ColimClass:
    """Image of ``beta`` under ``W_n(R)/I -> H^d``, where I is a stage ideal of ``colim``."""
    if I.ctx is not colim.ctx or beta.ctx is not colim.ctx:
        raise ColimError("context mismatch")
    if len(I.base) != len(colim.sop):
        raise ColimError("ideal is not presented on the system of parameters")
    for m in range(1, 1 + max(f.poly.degree() for f in I.base)):
        if I.base == colim.stage_ideal(m).base:
            return ColimClass(colim, m, beta)
    raise ColimError("ideal is not a stage ideal of the system of parameters")


@dataclass(frozen=True)
class QFRWitness:
    multiplier: RingElem
    zero_stages: Tuple[int, ...]


def frobenius_class(cl: ColimClass, e: int) -> ColimClass:
    """Frobenius on classes: componentwise on the representative, stage times p^e."""
    p = cl.colim.ctx.p
    return ColimClass(cl.colim, cl.stage * p ** e, cl.rep.frobenius(e))


def qfr_witness_probe(
    cl: ColimClass, cfg: SearchConfig = SearchConfig(), M: Optional[int] = None
) -> Optional[QFRWitness]:
    """First multiplier c killing ``[c] F^e(cl)`` for all ``e <= E`` within stage bound M.

    ``M`` defaults to ``p^E * stage`` and must be at least that.
    """
    ring = cl.colim.ctx.ring
    p = ring.p
    depth = cfg.resolved_depth(p)
    need = cl.stage * p ** depth
    if M is None:
        M = need
    if M < need:
        raise ColimError(f"stage bound {M} is below p^E * stage = {need}")
    frob = [frobenius_class(cl, e) for e in range(depth + 1)]
    for c in cfg.candidates(ring):
        stages = []
        for fc in frob:
            v = is_zero_bounded(
                ColimClass(cl.colim, fc.stage, fc.rep.scale_teichmuller(c)), M
            )
            if not v.is_zero:
                break
            stages.append(v.stage)
        else:
            return QFRWitness(c, tuple(stages))
    return None
