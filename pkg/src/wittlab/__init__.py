"""Truncated Witt vectors over F_p-algebras, Teichmüller ideals and bounded tight-closure search."""

from .closure import (
    SearchConfig,
    SearchStats,
    TCCertificate,
    bracket_decompose,
    bs_pipeline,
    qtc_check,
    tc_certify,
    tc_refute_layer0,
    tc_search_lifts,
)
from .lccolim import (
    ColimClass,
    ColimContext,
    NonzeroUpTo,
    Zero,
    i_R_embed,
    is_zero_bounded,
    push,
    qfr_witness_probe,
    scalar_act,
    torsion_probe,
)
from .rings import (
    QuotientRing,
    RIdeal,
    RingElem,
    RingError,
    ideal_colon,
    ideal_intersect,
    ideal_member_with_witness,
    ideal_power,
    is_regular_sequence,
    normal_form,
)
from .universal import universal_witt_polys
from .witt import WittContext, WittError, WittVector, teichmuller, verschiebung, witt_context
from .witt_ideal import (
    Member,
    NonMember,
    TeichIdeal,
    Uncertified,
    layered_membership,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "ColimClass",
    "ColimContext",
    "Member",
    "NonMember",
    "NonzeroUpTo",
    "QuotientRing",
    "RIdeal",
    "RingElem",
    "RingError",
    "SearchConfig",
    "SearchStats",
    "TCCertificate",
    "TeichIdeal",
    "Uncertified",
    "WittContext",
    "WittError",
    "WittVector",
    "Zero",
    "bracket_decompose",
    "bs_pipeline",
    "i_R_embed",
    "ideal_colon",
    "ideal_intersect",
    "ideal_member_with_witness",
    "ideal_power",
    "is_regular_sequence",
    "is_zero_bounded",
    "layered_membership",
    "normal_form",
    "push",
    "qfr_witness_probe",
    "qtc_check",
    "scalar_act",
    "tc_certify",
    "tc_refute_layer0",
    "tc_search_lifts",
    "teichmuller",
    "torsion_probe",
    "universal_witt_polys",
    "verify_certificate",
    "verschiebung",
    "witt_context",
]
