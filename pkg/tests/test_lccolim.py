"""Colimit presentation of top local cohomology."""

import pytest

from wittlab import (
    ColimContext,
    NonzeroUpTo,
    SearchConfig,
    TeichIdeal,
    Zero,
    i_R_embed,
    is_zero_bounded,
    push,
    qfr_witness_probe,
    scalar_act,
    tc_certify,
    torsion_probe,
    witt_context,
)
from wittlab.lccolim import ColimError, classes_equal_bounded, frobenius_class, verify_zero


@pytest.fixture
def colim(f2xy):
    return ColimContext(witt_context(f2xy, 2), ["x", "y"])


def test_rejects_non_regular_sop(f2xy):
    with pytest.raises(ColimError):
        ColimContext(witt_context(f2xy, 2), ["x", "x"])


def test_push_multiplies_by_denominator(colim):
    cl = colim.cls(1, "(1; 0)")
    up = push(cl, 2)
    assert up.stage == 3 and str(up.rep) == "(x^2*y^2; 0)"
    assert push(cl, 0) is cl
    with pytest.raises(ColimError):
        push(cl, -1)


def test_zero_verdict_carries_replayable_certificate(colim):
    cl = colim.cls(1, "(x; 0)")
    v = is_zero_bounded(cl, 3)
    assert isinstance(v, Zero) and v.stage == 1
    assert verify_zero(cl, v)
    assert not verify_zero(colim.cls(1, "(x*y; 0)"), v)


def test_nonzero_up_to_bound(colim):
    assert is_zero_bounded(colim.cls(1, "(1; 0)"), 6) == NonzeroUpTo(6)
    with pytest.raises(ColimError):
        is_zero_bounded(colim.cls(3, "(1; 0)"), 2)


def test_example_three_pattern(colim, f2xy):
    W = colim.ctx
    I = TeichIdeal(W, ["x", "y", "x+y"])
    cl = colim.cls(1, "(1; x^2*y)")
    rep = torsion_probe(cl, I, 6)
    kinds = [v.is_zero for _, v in rep.verdicts]
    assert kinds == [True, True, False] and not rep.is_torsion
    act = scalar_act(cl, W.teichmuller("x+y"))
    assert classes_equal_bounded(act, colim.cls(1, "(0; x*y)"), 6)


def test_equality_across_stages(colim):
    a = colim.cls(1, "(1; 0)")
    b = colim.cls(2, "(x*y; 0)")
    assert classes_equal_bounded(a, b, 4)
    assert not classes_equal_bounded(a, colim.cls(2, "(x; 0)"), 4)


def test_embedding_and_frobenius(colim, f2xy):
    W = colim.ctx
    I2 = colim.stage_ideal(2)
    cl = i_R_embed(W("(1; x)"), I2, colim)
    assert cl.stage == 2
    with pytest.raises(ColimError):
        i_R_embed(W("(1; x)"), TeichIdeal(W, ["x", "y^2"]), colim)
    fc = frobenius_class(cl, 1)
    assert fc.stage == 4 and str(fc.rep) == "(1; x^2)"


def test_qfr_probe_matches_tc_certify(colim):
    W = colim.ctx
    I = colim.stage_ideal(1)
    cfg = SearchConfig(depth=2, mult_degree=3)
    for text in ("(x; 0)", "(x+y; 1)", "(1; 0)", "(x*y; y)"):
        beta = W(text)
        tc = tc_certify(beta, I, cfg)
        q = qfr_witness_probe(i_R_embed(beta, I, colim), cfg, 8)
        assert (tc is None) == (q is None)
    with pytest.raises(ColimError):
        qfr_witness_probe(colim.cls(1, "(1; 0)"), cfg, 3)
