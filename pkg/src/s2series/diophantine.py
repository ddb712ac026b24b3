"""Continued fractions, certified CF prefixes and irrationality-exponent estimates.

The exponent estimate uses the convergent-growth characterisation
``mu = 1 + limsup ln q_{k+1} / ln q_k`` evaluated over a finite window.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .enclosure import Enclosure
from .series import _check_base, eval_F, eval_S

DEFAULT_WINDOW_START = 10
DEFAULT_QUOTIENTS = 64
MAX_F_TERMS = 20
MAX_S_TERMS = 1 << 16


class InsufficientPrefixError(RuntimeError):
    """The depth cap was hit before enough certified partial quotients were found."""

    def __init__(self, message: str, obtained: int, requested: int):
        super().__init__(message)
        self.obtained = obtained
        self.requested = requested


@dataclass(frozen=True)
class ContinuedFraction:
    quotients: tuple[int, ...] = ()

    def __post_init__(self):
        q = tuple(int(a) for a in self.quotients)
        object.__setattr__(self, "quotients", q)
        if any(a < 1 for a in q[1:]):
            raise ValueError("partial quotients after a0 must be >= 1")

    @property
    def is_canonical(self) -> bool:
        return len(self.quotients) < 2 or self.quotients[-1] >= 2

    def __len__(self) -> int:
        return len(self.quotients)

    def __getitem__(self, item):
        return self.quotients[item]

    def value(self) -> Fraction:
        if not self.quotients:
            raise ValueError("empty continued fraction has no value")
        x = Fraction(self.quotients[-1])
        for a in reversed(self.quotients[:-1]):
            x = a + 1 / x
        return x

    def is_prefix_of(self, other: "ContinuedFraction") -> bool:
        n = len(self.quotients)
        return other.quotients[:n] == self.quotients

    def __str__(self) -> str:
        q = self.quotients
        if not q:
            return "[]"
        if len(q) == 1:
            return f"[{q[0]}]"
        return f"[{q[0]}; " + ", ".join(map(str, q[1:])) + "]"

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"not a continued fraction: {text!r}")
        body = body[1:-1].strip()
        if not body:
            return cls(())
        head, _, tail = body.partition(";")
        quotients = [int(head)]
        if tail.strip():
            quotients += [int(t) for t in tail.split(",")]
        return cls(tuple(quotients))


@dataclass(frozen=True)
class ConvergentTable:
    entries: tuple[tuple[int, int], ...]

    @property
    def numerators(self) -> list[int]:
        return [p for p, _ in self.entries]

    @property
    def denominators(self) -> list[int]:
        return [q for _, q in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k) -> Fraction:
        p, q = self.entries[k]
        return Fraction(p, q)


@dataclass(frozen=True)
class MuEstimate:
    ratios: tuple[tuple[int, float], ...]
    mu_hat: float
    window_start: int
    argmax: int = field(default=-1)

    def to_dict(self) -> dict:
        return {
            "window_start": self.window_start,
            "argmax": self.argmax,
            "ratios": [[k, f"{r:.6f}"] for k, r in self.ratios],
            "mu_hat": f"{self.mu_hat:.6f}",
        }


def cf_of_rational(x) -> ContinuedFraction:
    """Canonical continued fraction of a rational (final quotient >= 2 unless length 1)."""
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    if len(out) >= 2 and out[-1] == 1:
        out.pop()
        out[-1] += 1
    return ContinuedFraction(tuple(out))


def certified_cf_prefix(e: Enclosure) -> ContinuedFraction:
    """Partial quotients shared by the CF of every real in ``[e.lo, e.hi]``.

    Longest common prefix of the canonical CFs of both endpoints, each with its
    final quotient dropped.  Sound because the reals sharing a CF prefix form an
    interval, and dropping the final quotient keeps both endpoints away from
    that interval's rational end point.
    """
    a = cf_of_rational(e.lo).quotients[:-1]
    b = cf_of_rational(e.hi).quotients[:-1]
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return ContinuedFraction(a[:n])


def convergents(cf: ContinuedFraction) -> ConvergentTable:
    if not len(cf):
        raise ValueError("convergents of an empty continued fraction")
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    entries = []
    for a in cf.quotients:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        entries.append((p, q))
    return ConvergentTable(tuple(entries))


def _log_ratio(q_next: int, q: int) -> float:
    # ln q_next / ln q written as 1 + ln(q_next/q)/ln q so tiny excesses survive rounding
    if q_next.bit_length() - q.bit_length() > 64:
        return math.log(q_next) / math.log(q)
    return 1.0 + math.log1p((q_next - q) / q) / math.log(q)


def estimate_mu(cf: ContinuedFraction, window_start: int = DEFAULT_WINDOW_START) -> MuEstimate:
    """Estimate the irrationality exponent from convergent denominators.

    ``mu_hat = 1 + max_{k0 <= k < K} ln q_{k+1} / ln q_k`` where ``K`` is the last
    convergent index.  Ties report the smallest ``k``.
    """
    if window_start < 0:
        raise ValueError("window_start must be >= 0")
    if len(cf) < window_start + 2:
        raise ValueError(
            f"need at least {window_start + 2} partial quotients for window_start={window_start}, "
            f"got {len(cf)}"
        )
    qs = convergents(cf).denominators
    if qs[window_start] < 2:
        raise ValueError(
            f"q_{window_start} = {qs[window_start]} has zero logarithm; choose a later window_start"
        )
    ratios = tuple((k, _log_ratio(qs[k + 1], qs[k])) for k in range(window_start, len(qs) - 1))
    best_k, best = ratios[0]
    for k, r in ratios[1:]:
        if r > best:
            best_k, best = k, r
    return MuEstimate(ratios=ratios, mu_hat=1.0 + best, window_start=window_start, argmax=best_k)


def golden_cf(length: int) -> ContinuedFraction:
    """Synthetic all-ones CF of the golden ratio; calibration only."""
    return ContinuedFraction((1,) * length)


def constant_enclosure(b: int, which: str, depth: int) -> Enclosure:
    if which == "F":
        return eval_F(b, depth)
    if which == "S":
        return eval_S(b, depth)
    raise ValueError(f"unknown constant {which!r}; expected 'F' or 'S'")


def certified_prefix_for_constant(
    b: int, which: str, quotients: int = DEFAULT_QUOTIENTS
) -> tuple[ContinuedFraction, Enclosure]:
    """Deepen the truncation of F(1/b) or S(1/b) until ``quotients`` partial
    quotients are certified.  Returns the prefix cut to exactly that length.
    """
    _check_base(b)
    if which == "F":
        depth, cap, step = 1, MAX_F_TERMS, lambda d: d + 1
    elif which == "S":
        depth, cap, step = 16, MAX_S_TERMS, lambda d: 2 * d
    else:
        raise ValueError(f"unknown constant {which!r}; expected 'F' or 'S'")
    while True:
        enc = constant_enclosure(b, which, depth)
        prefix = certified_cf_prefix(enc)
        if len(prefix) >= quotients:
            return ContinuedFraction(prefix.quotients[:quotients]), enc
        if depth >= cap:
            raise InsufficientPrefixError(
                f"only {len(prefix)} of {quotients} quotients certified for {which}(1/{b}) "
                f"at depth cap {cap}",
                obtained=len(prefix),
                requested=quotients,
            )
        depth = min(step(depth), cap)


def estimate_mu_for_constant(
    b: int,
    which: str,
    quotients: int = DEFAULT_QUOTIENTS,
    window_start: int = DEFAULT_WINDOW_START,
) -> MuEstimate:
    prefix, _ = certified_prefix_for_constant(b, which, quotients)
    return estimate_mu(prefix, window_start)
