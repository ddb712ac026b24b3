"""Exact partial sums of F(1/b), S(1/b), the Fermat reciprocal series and the
Liouville constant, each returned as a certified :class:`Enclosure`.

Here ``F(x) = sum_{m>=0} x^(2^m)/(1+x^(2^m))`` and ``S(x) = sum_{n>=0} s2(n) x^n``.
They satisfy ``F(x) = (1-x) S(x)``, so ``S(1/b) = b/(b-1) * F(1/b)``.
No floating point is used in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .enclosure import Enclosure
from .sequences import _check_natural, s2, series_coefficients

FERMAT_INDEX_CAP = 25
LIOUVILLE_MAX_J = 8
DEFAULT_PRECISION = 64


def _check_base(b: int) -> None:
    if not isinstance(b, int) or isinstance(b, bool):
        raise TypeError(f"base must be an int, got {type(b).__name__}")
    if b < 2:
        raise ValueError(f"base must be ≥ 2, got {b}")


def f_tail_bound(b: int, terms: int) -> Fraction:
    """Upper bound ``2 b^(-2^terms)`` for ``sum_{n>=terms} 1/(b^(2^n)+1)``.

    With ``t = b^(-2^terms) <= 1/2`` the tail is below
    ``t + t^2 + t^4 + ... <= t/(1-t) <= 2t``.
    """
    return Fraction(2, b ** (2**terms))


def s_tail_bound(b: int, terms: int) -> Fraction:
    """Upper bound for ``sum_{n>terms} s2(n) b^-n`` using ``s2(n) <= n``.

    ``sum_{n>=M} n x^n = x^M (M(1-x) + x)/(1-x)^2``; at ``x = 1/b`` and
    ``M = terms + 1`` this is ``(M(b-1) + 1) / (b^(M-1) (b-1)^2)``.
    """
    m = terms + 1
    return Fraction(m * (b - 1) + 1, b ** (m - 1) * (b - 1) ** 2)


def eval_F(b: int, terms: int) -> Enclosure:
    """Enclosure of ``F(1/b)`` from the first ``terms`` summands."""
    _check_base(b)
    _check_natural(terms, "terms")
    lo = sum((Fraction(1, b ** (2**n) + 1) for n in range(terms)), Fraction(0))
    return Enclosure(lo, lo + f_tail_bound(b, terms), f"F(1/{b})")


def _s_partial(b: int, terms: int, corrupt_index: int | None = None) -> Fraction:
    # Horner in integers: sum_{n<=terms} s2(n) b^(terms-n) / b^terms
    num = 0
    for n in range(terms + 1):
        c = s2(n)
        if n == corrupt_index:
            c += 1
        num = num * b + c
    return Fraction(num, b**terms)


def eval_S(b: int, terms: int, *, corrupt_index: int | None = None) -> Enclosure:
    """Enclosure of ``S(1/b)`` from the summands ``n = 0..terms``.

    ``corrupt_index`` adds 1 to a single coefficient; only for negative controls.
    """
    _check_base(b)
    _check_natural(terms, "terms")
    lo = _s_partial(b, terms, corrupt_index)
    name = f"S(1/{b})" if corrupt_index is None else f"S(1/{b})[corrupt@{corrupt_index}]"
    return Enclosure(lo, lo + s_tail_bound(b, terms), name)


def fermat_number(n: int, cap: int = FERMAT_INDEX_CAP) -> int:
    """``2^(2^n) + 1``; indices above ``cap`` are refused."""
    _check_natural(n)
    if n > cap:
        raise ValueError(f"Fermat index {n} exceeds cap {cap}")
    return (1 << (1 << n)) + 1


def fermat_reciprocal_sum(terms: int) -> Enclosure:
    """Enclosure of ``sum 1/F_n``, which equals ``F(1/2)``."""
    _check_natural(terms, "terms")
    lo = Fraction(0)
    for n in range(terms):
        lo += Fraction(1, fermat_number(n))
    return Enclosure(lo, lo + f_tail_bound(2, terms), "sum 1/F_n")


def liouville_partial(J: int) -> Enclosure:
    """Enclosure of ``sum_{j>=1} 10^(-j!)`` from its first ``J`` terms.

    Consecutive terms shrink by at least a factor 10, so the tail is below
    twice its first term ``10^(-(J+1)!)``.
    """
    _check_natural(J, "J")
    if not 1 <= J <= LIOUVILLE_MAX_J:
        raise ValueError(f"J must lie in [1, {LIOUVILLE_MAX_J}], got {J}")
    lo = sum((Fraction(1, 10 ** factorial(j)) for j in range(1, J + 1)), Fraction(0))
    return Enclosure(lo, lo + Fraction(2, 10 ** factorial(J + 1)), "Liouville")


@dataclass(frozen=True)
class RelationReport:
    holds: bool
    gap: Fraction
    scaled_F: Enclosure
    S: Enclosure
    f_terms: int
    s_terms: int
    threshold: Fraction


def verify_relation(
    b: int,
    precision: int = DEFAULT_PRECISION,
    *,
    corrupt: bool = False,
    max_s_terms: int | None = None,
) -> RelationReport:
    """Check that ``b/(b-1) * F(1/b)`` and ``S(1/b)`` have overlapping enclosures.

    Both series are deepened until their widths drop below ``b^-precision``.
    With ``corrupt=True`` the coefficient ``s2(5)`` is replaced by ``s2(5)+1``,
    which must make the check fail once the widths are below ``b^-5``.
    """
    _check_base(b)
    _check_natural(precision, "precision")
    threshold = Fraction(1, b**precision)
    factor = Fraction(b, b - 1)
    if max_s_terms is None:
        max_s_terms = 64 * precision + 1024

    f_terms = 0
    while True:
        scaled = eval_F(b, f_terms).scale(factor, f"{b}/{b - 1}*F(1/{b})")
        if scaled.width < threshold:
            break
        f_terms += 1

    s_terms = max(precision, 5)
    corrupt_index = 5 if corrupt else None
    while True:
        s_enc = eval_S(b, s_terms, corrupt_index=corrupt_index)
        if s_enc.width < threshold:
            break
        s_terms += 1
        if s_terms > max_s_terms:
            raise RuntimeError(f"S(1/{b}) did not reach width b^-{precision} within {max_s_terms} terms")

    return RelationReport(
        holds=scaled.intersects(s_enc),
        gap=scaled.gap(s_enc),
        scaled_F=scaled,
        S=s_enc,
        f_terms=f_terms,
        s_terms=s_terms,
        threshold=threshold,
    )


def formal_identity_check(degree: int) -> bool:
    """Coefficientwise check of ``F(x) = (1-x) S(x)`` up to ``x^degree``."""
    _check_natural(degree, "degree")
    if degree < 1:
        raise ValueError("degree must be >= 1")
    lhs = series_coefficients(degree)
    s = [s2(n) for n in range(degree + 1)]
    rhs = [s[0]] + [s[n] - s[n - 1] for n in range(1, degree + 1)]
    return list(lhs) == rhs
