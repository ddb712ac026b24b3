"""Integer sequences: binary digit sum, 2-adic valuation and the coefficients
of ``F(x) = sum_{m>=0} x^(2^m) / (1 + x^(2^m))``.

The coefficient ``f(n)`` is computed three ways so the routes can check each
other:

* :func:`f_multiplicative` -- closed form ``1 - v2(n)``
* :func:`f_difference` -- ``s2(n) - s2(n - 1)``
* :func:`f_series_oracle` -- brute-force expansion of the truncated series

The oracle must not share code with the other two routes.
"""
from __future__ import annotations

from functools import lru_cache


def _check_natural(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"{name} must be >= 0, got {n}")


def _check_positive(n: int, name: str = "n") -> None:
    _check_natural(n, name)
    if n == 0:
        raise ValueError(f"{name} must be >= 1, got 0")


def s2(n: int) -> int:
    """Number of 1-bits of ``n`` (arbitrary precision)."""
    _check_natural(n)
    return n.bit_count()


def v2(n: int) -> int:
    """Exponent of the largest power of two dividing ``n``; ``n = 0`` is rejected."""
    _check_positive(n)
    return (n & -n).bit_length() - 1


def f_multiplicative(n: int) -> int:
    # odd prime powers contribute 1, the power of two contributes 1 - k
    return 1 - v2(n)


def f_difference(n: int) -> int:
    _check_positive(n)
    return s2(n) - s2(n - 1)


@lru_cache(maxsize=8)
def series_coefficients(degree_cap: int) -> tuple[int, ...]:
    """Coefficients ``c[0..degree_cap]`` of the truncated series for F.

    Each summand ``x^(2^m)/(1+x^(2^m))`` is expanded term by term as
    ``sum_{j>=1} (-1)^(j-1) x^(j*2^m)`` and accumulated.  Deliberately naive;
    it is the independent oracle for the closed forms.
    """
    _check_natural(degree_cap, "degree_cap")
    coeffs = [0] * (degree_cap + 1)
    step = 1
    while step <= degree_cap:
        sign = 1
        for exponent in range(step, degree_cap + 1, step):
            coeffs[exponent] += sign
            sign = -sign
        step *= 2
    return tuple(coeffs)


def f_series_oracle(n: int, degree_cap: int) -> int:
    """Coefficient of ``x^n`` in F, read off the expansion truncated at ``degree_cap``."""
    _check_positive(n)
    _check_natural(degree_cap, "degree_cap")
    if n > degree_cap:
        raise ValueError(
            f"coefficient of x^{n} is not determined by a truncation at degree {degree_cap}"
        )
    return series_coefficients(degree_cap)[n]
