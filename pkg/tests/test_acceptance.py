"""Exit criteria, one test per criterion; a PASS/FAIL line per criterion is
printed in the terminal summary."""
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from conftest import ACCEPTANCE_LINES
from s2series.diophantine import (
    ContinuedFraction,
    certified_cf_prefix,
    certified_prefix_for_constant,
    cf_of_rational,
    convergents,
    estimate_mu,
    golden_cf,
)
from s2series.enclosure import Enclosure
from s2series.sequences import f_difference, f_multiplicative, f_series_oracle, series_coefficients
from s2series.series import (
    eval_F,
    fermat_reciprocal_sum,
    formal_identity_check,
    liouville_partial,
    verify_relation,
)

MU_TOLERANCE = 1e-6
FROZEN_MU = {
    (2, "F"): 2.215489598229634,
    (2, "S"): 2.215109862893689,
    (3, "F"): 2.114787587574332,
    (3, "S"): 2.176651402751773,
    (10, "F"): 2.1984099007010736,
    (10, "S"): 2.2666006249754838,
}


@contextmanager
def criterion(number, title):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES.append(f"FAIL  [{number}] {title}")
        raise
    ACCEPTANCE_LINES.append(f"PASS  [{number}] {title} ({time.perf_counter() - start:.2f} s)")


def test_1_lemma_cross_check():
    with criterion(1, "f_multiplicative = f_difference = f_series_oracle on [1, 4096]; first two on [1, 10^6]; < 10 s"):
        start = time.perf_counter()
        series_coefficients.cache_clear()
        for n in range(1, 4097):
            assert f_multiplicative(n) == f_difference(n) == f_series_oracle(n, 4096), n
        for n in range(1, 10**6 + 1):
            assert f_multiplicative(n) == f_difference(n), n
        assert time.perf_counter() - start < 10


def test_2_formal_identity():
    with criterion(2, "F(x) = (1-x) S(x) coefficientwise to degree 4096; < 5 s"):
        start = time.perf_counter()
        series_coefficients.cache_clear()
        assert formal_identity_check(4096)
        assert time.perf_counter() - start < 5


def test_3_special_value_identity():
    with criterion(3, "S(1/b) and b/(b-1) F(1/b) enclosures intersect for b in 2..12 at P=64; corrupted control fails"):
        for b in range(2, 13):
            assert verify_relation(b, 64).holds, b
            assert not verify_relation(b, 64, corrupt=True).holds, b


def test_4_fermat_interpretation():
    with criterion(4, "fermat_reciprocal_sum(N).lo == eval_F(2, N).lo for N <= 10"):
        for n in range(11):
            assert fermat_reciprocal_sum(n).lo == eval_F(2, n).lo


def test_5_irrationality_exponent_two():
    with criterion(5, "b in {2,3,10}, F and S: 64 certified quotients, mu_hat in (2, 2.5), frozen to 1e-6; < 60 s"):
        start = time.perf_counter()
        for (b, which), frozen in FROZEN_MU.items():
            prefix, _ = certified_prefix_for_constant(b, which, 64)
            assert len(prefix) >= 64
            mu_hat = estimate_mu(prefix, 10).mu_hat
            assert 2 < mu_hat < 2.5, (b, which, mu_hat)
            assert abs(mu_hat - frozen) <= MU_TOLERANCE, (b, which, mu_hat)
        assert time.perf_counter() - start < 60


@st.composite
def valid_cf_and_window(draw):
    a0 = draw(st.integers(min_value=-100, max_value=100))
    tail = draw(st.lists(st.integers(min_value=1, max_value=10**6), min_size=2, max_size=50))
    cf = ContinuedFraction((a0, *tail))
    qs = convergents(cf).denominators
    valid = [k for k in range(len(cf) - 1) if qs[k] >= 2]
    if not valid:
        # only [a0; 1, a2] has no q_k >= 2 inside the window range
        cf = ContinuedFraction((a0, 2, *tail))
        valid = [1]
    return cf, draw(st.sampled_from(valid))


def test_6_calibration_contrast():
    with criterion(6, "Liouville mu_hat > 5; golden mu_hat < 2.25; mu_hat > 2 on 1000 random CFs"):
        liouville = estimate_mu(certified_cf_prefix(liouville_partial(6)), 1)
        assert liouville.mu_hat > 5
        golden = estimate_mu(golden_cf(30), 5)
        assert 2 < golden.mu_hat < 2.25

        seen = []

        @settings(max_examples=1000, deadline=None, database=None,
                  suppress_health_check=[HealthCheck.too_slow])
        @given(valid_cf_and_window())
        def never_at_most_two(case):
            cf, k0 = case
            seen.append(1)
            assert estimate_mu(cf, k0).mu_hat > 2

        never_at_most_two()
        assert len(seen) >= 1000


rationals = st.builds(
    Fraction,
    st.integers(min_value=-(10**30), max_value=10**30),
    st.integers(min_value=1, max_value=10**30),
)


def test_7_enclosure_soundness():
    with criterion(7, "certified_cf_prefix is a true prefix in 1000 random trials; refinement monotone on F(1/2), depths 3 -> 6"):
        seen = []

        @settings(max_examples=1000, deadline=None, database=None)
        @given(
            rationals,
            st.one_of(st.just(Fraction(0)), st.fractions(min_value=0, max_value=2, max_denominator=10**40)),
            st.one_of(st.just(Fraction(0)), st.fractions(min_value=0, max_value=2, max_denominator=10**40)),
        )
        def prefix_is_sound(alpha, below, above):
            seen.append(1)
            e = Enclosure(alpha - below, alpha + above)
            assert certified_cf_prefix(e).is_prefix_of(cf_of_rational(alpha))

        prefix_is_sound()
        assert len(seen) >= 1000

        prefixes = [certified_cf_prefix(eval_F(2, d)) for d in range(3, 7)]
        for coarse, fine in zip(prefixes, prefixes[1:]):
            assert len(fine) >= len(coarse)
            assert coarse.is_prefix_of(fine)
