from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from auxham.trigpoly import Amplitude, TrigPolynomial

PHI = np.linspace(0, 2 * np.pi, 13)


def test_product_to_sum():
    s1 = TrigPolynomial.sin(1)
    c2 = TrigPolynomial.cos(2)
    prod = s1 * c2
    P1, P2 = np.meshgrid(PHI, PHI)
    got = prod.evaluate_real(P1, P2, 1.0, 1.0, 1.0)
    assert np.allclose(got, np.sin(P1) * np.cos(P2), atol=1e-15)
    assert prod.support == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert prod.is_conjugate_symmetric()


def test_sin_squared_mean():
    s = TrigPolynomial.sin(1)
    assert (s * s).mean() == Amplitude.monomial(Fraction(1, 2))


def test_cancellation_removes_modes():
    c = TrigPolynomial.cos(1)
    assert (c - c).modes == {}
    assert not (Amplitude.monomial(3, a=1) - Amplitude.monomial(3, a=1))


def test_sqrt2_normalization():
    a = Amplitude.monomial(1, s2=1) * Amplitude.monomial(1, s2=1)
    assert a == Amplitude.monomial(2)


def test_amplitude_branch_and_derivative():
    a = Amplitude.monomial(Fraction(3, 4), a=2, b=3, c=-2)  # 3/4 I1 I2^(3/2) / w
    assert a.evaluate(2.0, 4.0, 0.5, branch2=-1) == pytest.approx(-0.75 * 2 * 8 / 0.5)
    d = a.d_dI(2)
    assert d.evaluate(2.0, 4.0, 0.5, branch2=1) == pytest.approx(0.75 * 2 * 1.5 * 2 / 0.5)


def test_d_dphi_matches_finite_difference():
    f = TrigPolynomial.sin(1, Amplitude.monomial(1, a=1)) * TrigPolynomial.cos(2) \
        + TrigPolynomial.cos(1) * TrigPolynomial.cos(1)
    h = 1e-6
    for idx in (1, 2):
        df = f.d_dphi(idx)
        for p1, p2 in [(0.3, 1.1), (2.0, -0.7)]:
            shift = (h, 0) if idx == 1 else (0, h)
            fd = (f.evaluate_real(p1 + shift[0], p2 + shift[1], 1.3, 1, 1)
                  - f.evaluate_real(p1 - shift[0], p2 - shift[1], 1.3, 1, 1)) / (2 * h)
            assert df.evaluate_real(p1, p2, 1.3, 1, 1) == pytest.approx(fd, abs=1e-8)


fractions = st.fractions(min_value=-50, max_value=50, max_denominator=1000)
keys = st.tuples(st.integers(0, 1), st.integers(-4, 6), st.integers(-4, 6), st.integers(-6, 2))
amplitudes = st.dictionaries(keys, st.tuples(fractions, fractions), max_size=4).map(Amplitude)
polys = st.dictionaries(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), amplitudes,
                        max_size=6).map(TrigPolynomial)


@settings(max_examples=100, deadline=None)
@given(polys)
def test_json_roundtrip_exact(poly):
    back = TrigPolynomial.loads(poly.dumps())
    assert back == poly
    assert back.dumps() == poly.dumps()


def test_floats_rejected():
    with pytest.raises(TypeError):
        Amplitude.monomial(1 + 2j)
