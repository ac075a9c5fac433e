import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy import stats as sps

from octorand.sampling import RngStream, sample_wishart_oct2
from octorand.spectra import eigen2
from octorand.stats import (
    QuadratureError,
    histogram,
    ks_statistic,
    ks_two_sample,
    quadrature,
    smallest_eig_cdf,
    smallest_eig_coefficients,
    smallest_eig_law,
    smallest_eig_pdf,
    surmise_moments,
    surmise_params,
    unfold_spacings,
    wigner_surmise_cdf,
    wigner_surmise_pdf,
)


def test_quadrature_examples():
    assert quadrature(lambda x: math.exp(-x), 0.0) == pytest.approx(1.0, abs=1e-10)
    assert quadrature(lambda x: x**8 * math.exp(-x / 2), 0.0) == pytest.approx(20643840.0, rel=1e-12)
    assert quadrature(lambda x: 3 * x * x, 0.0, 1.0) == pytest.approx(1.0, abs=1e-12)


def test_quadrature_reports_failure():
    with pytest.raises(QuadratureError):
        quadrature(lambda x: math.sin(1.0 / x) if x > 0 else 0.0, 0.0, 1.0, abs_tol=1e-14, max_depth=8)


@pytest.mark.parametrize("beta", [1, 2, 4, 8])
def test_surmise_normalization_and_mean(beta):
    assert wigner_surmise_pdf(0.0, beta) == 0.0
    pdf = lambda s: float(wigner_surmise_pdf(s, beta))  # noqa: E731
    assert quadrature(pdf, 0.0) == pytest.approx(1.0, abs=1e-10)
    assert quadrature(lambda s: s * pdf(s), 0.0) == pytest.approx(1.0, abs=1e-10)


def test_surmise_constants():
    p = surmise_params(8)
    assert p.c_tilde == pytest.approx((math.gamma(5) / math.gamma(4.5)) ** 2, rel=1e-14)
    assert p.c_tilde == pytest.approx(4.2573, abs=5e-5)
    # beta = 1 is the closed form (pi/2) s exp(-pi s^2 / 4)
    s = np.linspace(0, 3, 7)
    assert np.allclose(wigner_surmise_pdf(s, 1), np.pi / 2 * s * np.exp(-np.pi * s * s / 4), rtol=1e-13)
    with pytest.raises(ValueError):
        surmise_params(0)


@pytest.mark.parametrize("beta", [1, 4, 8])
def test_surmise_cdf_matches_quadrature(beta):
    for s in (0.3, 1.0, 1.7):
        integral = quadrature(lambda t: float(wigner_surmise_pdf(t, beta)), 0.0, s)
        assert float(wigner_surmise_cdf(s, beta)) == pytest.approx(integral, abs=1e-11)


def gamma_moments(beta):
    """Central moments of the unit-mean surmise from closed-form Gamma integrals."""
    c = surmise_params(beta).c_tilde
    raw = [math.gamma((beta + 1 + k) / 2) / math.gamma((beta + 1) / 2) / c ** (k / 2) for k in range(5)]
    m = raw[1]
    var = raw[2] - m**2
    c3 = raw[3] - 3 * m * raw[2] + 2 * m**3
    c4 = raw[4] - 4 * m * raw[3] + 6 * m**2 * raw[2] - 3 * m**4
    return var, c3 / var**1.5, c4 / var**2 - 3


@pytest.mark.parametrize("beta", [1, 2, 4, 8])
def test_surmise_moments_match_closed_form(beta):
    assert surmise_moments(beta) == pytest.approx(gamma_moments(beta), abs=1e-9)


def test_surmise_moment_values():
    var4, skew4, kurt4 = surmise_moments(4)
    assert var4 == pytest.approx(0.10447, abs=5e-5)
    assert kurt4 == pytest.approx(0.03698, abs=5e-5)
    assert skew4 == pytest.approx(0.354242, abs=1e-6)
    assert surmise_moments(1)[0] == pytest.approx(4 / math.pi - 1, abs=1e-10)


def test_smallest_coefficients_are_term_integrals():
    n, c = 2, Fraction(1, 2)
    coeffs = smallest_eig_coefficients(n, c)
    assert len(coeffs) == 4
    # proportional to binom(3, l) (11 - l)! c^l
    ratios = [coef / (math.comb(3, l) * math.factorial(11 - l) * c**l) for l, coef in enumerate(coeffs)]
    assert len(set(ratios)) == 1
    s = 0.7
    direct = quadrature(lambda x: math.exp(-0.5 * x) * x**8 * (s + x) ** 3, 0.0)
    assert float(sum(co * Fraction(s) ** l for l, co in enumerate(coeffs))) == pytest.approx(direct, rel=1e-11)


@pytest.mark.parametrize("n", range(2, 7))
def test_smallest_law_normalization(n):
    law = smallest_eig_law(n)
    assert law.pdf(0.0) == 0.0
    assert quadrature(lambda s: float(law.pdf(s)), 0.0) == pytest.approx(1.0, abs=1e-8)
    grid = np.linspace(0, 60, 400)
    assert np.all(law.pdf(grid) >= 0)
    cdf = law.cdf(grid)
    assert np.all(np.diff(cdf) >= -1e-15)
    assert float(law.cdf(1e4)) == pytest.approx(1.0, abs=1e-10)


def test_smallest_cdf_matches_quadrature():
    for n in (2, 3):
        for s in (0.5, 2.0, 5.0):
            integral = quadrature(lambda t: float(smallest_eig_pdf(t, n)), 0.0, s)
            assert float(smallest_eig_cdf(s, n)) == pytest.approx(integral, abs=1e-10)
    with pytest.raises(ValueError):
        smallest_eig_law(1)


def test_smallest_law_against_monte_carlo():
    lmin = eigen2(sample_wishart_oct2(RngStream(21), 2, 20_000))[:, 0]
    assert ks_statistic(lmin, lambda s: smallest_eig_cdf(s, 2)) <= 1.63 / math.sqrt(20_000)


def test_unfold_examples():
    pools = unfold_spacings([[0.0, 2.0], [0.0, 4.0]])
    assert len(pools) == 1 and np.allclose(pools[0], [2 / 3, 4 / 3])
    pools = unfold_spacings([[0.0, 1.0, 2.0], [5.0, 6.0, 7.0]])
    assert all(np.array_equal(p, [1.0, 1.0]) for p in pools)
    for bad in ([], [[1.0]], np.zeros((0, 3))):
        with pytest.raises(ValueError):
            unfold_spacings(bad)


@given(arrays(np.float64, st.tuples(st.integers(1, 40), st.integers(2, 3)), elements=st.floats(-50, 50)))
def test_unfolded_pools_have_unit_mean(spectra):
    spectra = np.sort(spectra, axis=1)
    if np.any(np.diff(spectra, axis=1).mean(axis=0) < 1e-6):
        return
    for pool in unfold_spacings(spectra):
        assert pool.mean() == pytest.approx(1.0, rel=1e-12)


def test_ks_examples():
    assert ks_statistic([0.5], lambda x: x) == 0.5
    u = np.random.default_rng(0).random(10_000)
    assert ks_statistic(u, lambda x: x) <= 0.017
    z = np.random.default_rng(1).standard_normal(100_000)
    assert ks_statistic(z, sps.norm.cdf) <= 1.63 / math.sqrt(1e5)
    with pytest.raises(ValueError):
        ks_statistic([], lambda x: x)


def test_ks_statistic_matches_scipy():
    x = np.random.default_rng(2).exponential(size=3000)
    assert ks_statistic(x, sps.expon.cdf) == pytest.approx(sps.kstest(x, "expon").statistic, abs=1e-14)


@given(
    arrays(np.float64, st.integers(1, 60), elements=st.floats(-5, 5)),
    arrays(np.float64, st.integers(1, 60), elements=st.floats(-5, 5)),
)
@settings(max_examples=100)
@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_two_sample_matches_scipy(x, y):
    assert ks_two_sample(x, y) == pytest.approx(sps.ks_2samp(x, y, method="asymp").statistic, abs=1e-12)


def test_histogram_density():
    x = np.random.default_rng(3).exponential(size=5000)
    h = histogram(x, 40)
    assert h.total == 5000
    assert np.sum(h.density * np.diff(h.edges)) == pytest.approx(1.0, abs=1e-12)
    assert h.centers.shape == (40,)
    with pytest.raises(ValueError):
        histogram(x, 0)


@given(st.lists(arrays(np.float64, st.integers(0, 50), elements=st.floats(0, 10)), min_size=1, max_size=5))
def test_histogram_merge_is_order_free(parts):
    hs = [histogram(p, 10, 0.0, 10.0) for p in parts]
    forward, backward = hs[0], hs[-1]
    for h in hs[1:]:
        forward = forward.merge(h)
    for h in reversed(hs[:-1]):
        backward = h.merge(backward)
    whole = histogram(np.concatenate(parts), 10, 0.0, 10.0)
    assert np.array_equal(forward.counts, whole.counts)
    assert np.array_equal(backward.counts, whole.counts)


def test_histogram_merge_rejects_different_edges():
    with pytest.raises(ValueError):
        histogram([1.0], 4, 0.0, 2.0).merge(histogram([1.0], 4, 0.0, 3.0))
