import pytest
from hypothesis import given, strategies as st

from wittlab.parsing import ParseError, parse_ideal_spec, parse_poly, parse_ring_text, split_witt


@pytest.mark.parametrize(
    "text,expected",
    [
        ("x^3+y^3+z^3", "x^3+y^3+z^3"),
        ("2xy - 3", "2*x*y+2"),
        ("(x+y)^2", "x^2+2*x*y+y^2"),
        ("-x*(y - 1)", "-x*y+x"),
        ("x y z", "x*y*z"),
        ("0", "0"),
    ],
)
def test_poly_syntax(text, expected):
    assert parse_poly(text, "xyz", 5) == parse_poly(expected, "xyz", 5)


@pytest.mark.parametrize("bad", ["x^", "x +", "w", "(x", "x)", "x^-1"])
def test_poly_syntax_errors(bad):
    with pytest.raises(ParseError):
        parse_poly(bad, "xyz", 5)


@given(st.integers(-100, 100))
def test_constants_reduce_mod_p(k):
    assert parse_poly(str(k), "x", 7) == parse_poly(str(k % 7), "x", 7)


def test_ring_text():
    spec = parse_ring_text("# Example ring\nprime 2\nvars x y z\nmod x^3+y^3+z^3  # cubic\n")
    assert spec.prime == 2 and spec.variables == ("x", "y", "z")
    assert spec.mods == ("x^3+y^3+z^3",) and spec.order == "grevlex"
    with pytest.raises(ParseError):
        parse_ring_text("vars x")
    with pytest.raises(ParseError):
        parse_ring_text("prime 2\nvars x\nmodulus x")


def test_witt_syntax():
    assert split_witt("(x; y^2 + 1)") == ["x", "y^2 + 1"]
    with pytest.raises(ParseError):
        split_witt("x; y")


def test_ideal_syntax():
    assert parse_ideal_spec("[x],[y]").generators == ("x", "y")
    spec = parse_ideal_spec("([x+y],[y])^2[2^1]")
    assert spec.generators == ("x+y", "y")
    assert (spec.power, spec.bracket_prime, spec.bracket_e) == (2, 2, 1)
    with pytest.raises(ParseError):
        parse_ideal_spec("x, [y]")
    with pytest.raises(ParseError):
        parse_ideal_spec("[x")
