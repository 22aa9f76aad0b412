import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import brentq

from gupbound.exceptions import InvalidBracket
from gupbound.numerics import RootBracket, expand_bracket, find_root


@given(st.floats(-3, 3), st.floats(0.1, 4), st.floats(0.1, 4))
def test_root_stays_in_bracket(c, left, right):
    f = lambda x: math.tanh(x - c) + 0.1 * (x - c) ** 3
    lo, hi = c - left, c + right
    r = find_root(f, RootBracket.from_function(f, lo, hi))
    assert lo <= r <= hi
    assert abs(r - c) <= 1e-12


@pytest.mark.parametrize("f,lo,hi", [
    (lambda x: x**3 - 2 * x - 5, 2.0, 3.0),
    (lambda x: math.cos(x) - x, 0.0, 1.0),
    (lambda x: math.exp(x) - 1e4, 0.0, 20.0),
])
def test_matches_brentq(f, lo, hi):
    ref = brentq(f, lo, hi, xtol=1e-15, rtol=8.9e-16)
    assert find_root(f, RootBracket.from_function(f, lo, hi)) == pytest.approx(ref, rel=1e-14)


def test_invalid_brackets():
    with pytest.raises(InvalidBracket):
        RootBracket.from_function(lambda x: x * x + 1, -1.0, 1.0)
    with pytest.raises(InvalidBracket):
        RootBracket(1.0, 0.0, -1.0, 1.0)
    with pytest.raises(InvalidBracket):
        RootBracket(0.0, 1.0, math.nan, 1.0)


def test_expand_bracket_grows_geometrically():
    br = expand_bracket(lambda x: 1.0 - x / 1e5, 1.0, 2.0)
    assert br.lo <= 1e5 <= br.hi


def test_expand_bracket_gives_up():
    with pytest.raises(InvalidBracket):
        expand_bracket(lambda x: 1.0, 1.0, 2.0, max_expand=5)


def test_exact_zero_at_endpoint():
    f = lambda x: x - 1.0
    assert find_root(f, RootBracket.from_function(f, 1.0, 2.0)) == 1.0
