"""Universal polynomials and W_n(R) arithmetic."""

import random

import pytest
from hypothesis import given, strategies as st

from wittlab import QuotientRing, WittError, universal_witt_polys, witt_context
from wittlab.universal import ghost_components
from wittlab.witt import teichmuller_sum


def random_witt(W, rng, degree=2, terms=2):
    R = W.ring
    mons = R.monomials(degree, include_zero=True)
    comps = []
    for _ in range(W.n):
        f = R.zero()
        for m in rng.sample(mons, terms):
            f = f + m * rng.randrange(R.p)
        comps.append(f)
    return W(comps)


# -- universal polynomials -----------------------------------------------------


def test_p2_n2_polynomials_by_hand():
    U = universal_witt_polys(2, 2)
    names = ["X0", "X1", "Y0", "Y1"]
    assert [f.to_str(names) for f in U.add] == ["X0+Y0", "-X0*Y0+X1+Y1"]
    assert [f.to_str(names[:2]) for f in U.neg] == ["-X0", "-X0^2-X1"]
    mul_mod = [f.reduce_mod(2).to_str(names) for f in U.mul]
    assert mul_mod == ["X0*Y0", "X1*Y0^2+X0^2*Y1"]


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 3)])
def test_ghost_identities_exact(p, n):
    assert universal_witt_polys(p, n).check_ghost_identities()


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2)])
@given(data=st.data())
def test_ghost_map_is_a_ring_map_on_integers(p, n, data):
    U = universal_witt_polys(p, n)
    a = data.draw(st.lists(st.integers(-50, 50), min_size=n, max_size=n))
    b = data.draw(st.lists(st.integers(-50, 50), min_size=n, max_size=n))
    s = [f.evaluate(a + b) for f in U.add]
    m = [f.evaluate(a + b) for f in U.mul]
    ng = [f.evaluate(a) for f in U.neg]
    wa, wb = ghost_components(a, p), ghost_components(b, p)
    assert ghost_components(s, p) == [x + y for x, y in zip(wa, wb)]
    assert ghost_components(m, p) == [x * y for x, y in zip(wa, wb)]
    assert ghost_components(ng, p) == [-x for x in wa]


def test_size_caps():
    with pytest.raises(ValueError):
        universal_witt_polys(11, 2)
    with pytest.raises(ValueError):
        universal_witt_polys(2, 5)


# -- W_n(R) --------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_ring_axioms_200_triples(p, n):
    R = QuotientRing(p, "xy")
    W = witt_context(R, n)
    rng = random.Random(1000 * p + n)
    for _ in range(200):
        a, b, c = (random_witt(W, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a - a == W.zero()
        assert a * W.one() == a and a + W.zero() == a


def test_negation_is_not_identity_at_p2(f2xy):
    W = witt_context(QuotientRing(2, "x"), 2)
    # W_2(F_2) = Z/4, where -1 = 3 = (1; 1)
    assert -W.one() == W("(1; 1)")
    assert W.from_int(3) == W("(1; 1)")
    assert W.from_int(4) == W.zero()


def test_teichmuller_addition_carry(f2xy):
    W = witt_context(f2xy, 2)
    assert W.teichmuller("x") + W.teichmuller("y") == W("(x+y; x*y)")


def test_example_ring_carry(ex2):
    W = witt_context(ex2, 2)
    s = W.teichmuller("x^5") + W.teichmuller("y^8")
    assert s == W("(z^4; x^5*y^8)")


@pytest.mark.parametrize("p", [2, 3])
def test_witt_identities(p):
    R = QuotientRing(p, "xy")
    W3, W2 = witt_context(R, 3), witt_context(R, 2)
    rng = random.Random(p)
    mons = R.monomials(3)
    for _ in range(40):
        f, g = rng.choice(mons), rng.choice(mons) + rng.choice(mons)
        gamma = random_witt(W2, rng)
        alpha = random_witt(W3, rng)
        beta = random_witt(W3, rng)
        assert W3.teichmuller(f) * W3.teichmuller(g) == W3.teichmuller(f * g)
        assert W3.teichmuller(f) * W3.verschiebung(gamma) == W3.verschiebung(
            W2.teichmuller(f ** p) * gamma
        )
        assert W3.verschiebung(gamma).frobenius() == W3.verschiebung(gamma.frobenius())
        assert alpha.scale_teichmuller(f) == alpha.mul_generic(W3.teichmuller(f))
        assert alpha * beta == alpha.mul_generic(beta)
        assert W3.from_int(p) * alpha == W3.verschiebung(alpha.restriction().frobenius())
        assert alpha.frobenius() * beta.frobenius() == (alpha * beta).frobenius()


def test_restriction_is_a_ring_map(f3xy):
    W = witt_context(f3xy, 3)
    rng = random.Random(7)
    for _ in range(30):
        a, b = random_witt(W, rng), random_witt(W, rng)
        assert (a * b).restriction() == a.restriction() * b.restriction()
        assert (a + b).restriction() == a.restriction() + b.restriction()


def test_parsing_and_errors(f2xy):
    W = witt_context(f2xy, 2)
    assert W("(x; x*y+1)")[1] == f2xy("x*y+1")
    with pytest.raises(WittError):
        W("(x; y; 1)")
    with pytest.raises(WittError):
        W.zero() + witt_context(f2xy, 3).zero()
    with pytest.raises(WittError):
        W("(x; 0)").unshift()
    assert W("(0; x)").unshift() == witt_context(f2xy, 1)("(x)")


def test_teichmuller_sum_is_left_to_right(f2xy):
    W = witt_context(f2xy, 3)
    elems = [f2xy("x"), f2xy("y"), f2xy("x*y")]
    total = teichmuller_sum(W, elems)
    assert total == W.teichmuller("x") + W.teichmuller("y") + W.teichmuller("x*y")
