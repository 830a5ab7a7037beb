"""JSON reports and certificate (de)serialization.

Reports are plain dicts dumped with sorted keys, so identical runs give
identical bytes.  Any nested object with a ``certificate`` key holding a dict
with a ``kind`` field is replayed by :func:`verify_report`.
"""

from __future__ import annotations

import json
from importlib import metadata
from typing import Any, Dict, Iterator, List, Optional, Sequence

from .closure import SearchConfig, TCCertificate
from .rings import ICCertificate, QuotientRing, RingElem
from .witt import WittVector, witt_context
from .witt_ideal import MembershipCertificate, TeichIdeal, verify_certificate


class ReportError(ValueError):
    pass


class StaleFingerprint(ReportError):
    pass


def library_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


# -- rings ----------------------------------------------------------------------


def ring_record(R: QuotientRing) -> dict:
    rec = R.describe()
    rec["fingerprint"] = R.fingerprint()
    return rec


def ring_from_record(rec: dict) -> QuotientRing:
    try:
        R = QuotientRing(rec["prime"], rec["vars"], rec["mods"], rec.get("order", "grevlex"))
    except (KeyError, TypeError) as exc:
        raise ReportError(f"malformed ring record: {exc}") from exc
    if R.fingerprint() != rec.get("fingerprint"):
        raise StaleFingerprint(
            f"ring fingerprint {rec.get('fingerprint')} does not match {R.fingerprint()}"
        )
    return R


# -- certificates -------------------------------------------------------------------


def _strs(elems: Sequence[RingElem]) -> List[str]:
    return [str(c) for c in elems]


def membership_record(beta: WittVector, I: TeichIdeal, cert: MembershipCertificate) -> dict:
    return {
        "kind": "membership",
        "n": I.n,
        "element": str(beta),
        "ideal": _strs(I.base),
        "layers": [_strs(layer) for layer in cert.layers],
    }


def tc_record(alpha: WittVector, I: TeichIdeal, cert: TCCertificate) -> dict:
    return {
        "kind": "tight_closure",
        "n": I.n,
        "element": str(alpha),
        "ideal": _strs(I.base),
        "multiplier": str(cert.multiplier),
        "depth": cert.depth,
        "frobenius_layers": [[_strs(layer) for layer in c.layers] for c in cert.certificates],
    }


def ic_record(a: RingElem, gens: Sequence[RingElem], cert: ICCertificate) -> dict:
    return {
        "kind": "integral_closure",
        "element": str(a),
        "ideal": _strs(gens),
        "multiplier": str(cert.multiplier),
        "exponent": cert.exponent,
        "power_bound": cert.power_bound,
        "witnesses": [_strs(w) for w in cert.witnesses],
    }


def _membership_cert(R: QuotientRing, layers) -> MembershipCertificate:
    return MembershipCertificate(tuple(tuple(R(c) for c in layer) for layer in layers))


def verify_record(R: QuotientRing, rec: dict) -> bool:
    """Replay one certificate record; malformed records count as failures."""
    try:
        kind = rec["kind"]
        if kind == "integral_closure":
            cert = ICCertificate(
                R(rec["multiplier"]),
                int(rec["power_bound"]),
                int(rec["exponent"]),
                tuple(tuple(R(c) for c in w) for w in rec["witnesses"]),
            )
            return cert.verify(R(rec["element"]), R.ideal(rec["ideal"]))
        ctx = witt_context(R, int(rec["n"]))
        elem = ctx(rec["element"])
        I = TeichIdeal(ctx, rec["ideal"])
        if kind == "membership":
            return verify_certificate(elem, I, _membership_cert(R, rec["layers"]))
        if kind == "tight_closure":
            cert = TCCertificate(
                R(rec["multiplier"]),
                int(rec["depth"]),
                tuple(_membership_cert(R, layers) for layers in rec["frobenius_layers"]),
            )
            return cert.verify(elem, I)
    except (ValueError, KeyError, TypeError, ArithmeticError, IndexError):
        return False
    return False


# -- reports --------------------------------------------------------------------


def make_report(
    command: Sequence[str],
    R: QuotientRing,
    verdict: str,
    bounds: Optional[dict] = None,
    certificate: Optional[dict] = None,
    statistics: Optional[dict] = None,
    **extra: Any,
) -> dict:
    report: Dict[str, Any] = {
        "command": list(command),
        "version": library_version(),
        "ring": ring_record(R),
        "verdict": verdict,
        "bounds": bounds or {},
        "statistics": statistics or {},
    }
    if certificate is not None:
        report["certificate"] = certificate
    report.update(extra)
    return report


def bounds_of(cfg: SearchConfig, p: int, **more: Any) -> dict:
    out = cfg.to_dict(p)
    out.update(more)
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def iter_certificates(node: Any) -> Iterator[dict]:
    if isinstance(node, dict):
        cert = node.get("certificate")
        if isinstance(cert, dict) and "kind" in cert:
            yield cert
        for key, value in node.items():
            if key != "certificate":
                yield from iter_certificates(value)
    elif isinstance(node, list):
        for item in node:
            yield from iter_certificates(item)


def verify_report(report: dict) -> tuple:
    """``(ok, checked)``: whether every embedded certificate replays, and how many there were."""
    if not isinstance(report, dict) or "ring" not in report:
        raise ReportError("not a report: missing ring record")
    R = ring_from_record(report["ring"])
    checked = 0
    ok = True
    for rec in iter_certificates(report):
        checked += 1
        if not verify_record(R, rec):
            ok = False
    return ok, checked


def load_report(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ReportError(f"{path}: not valid JSON ({exc})") from exc
