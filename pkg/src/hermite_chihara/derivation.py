"""Generalized derivation operators D = sum_k eps_k x^{k-1} d^k/dx^k.

The operator acts on monomials as D x^n = v_{n-1} x^{n-1}; the eps coefficients
are produced from a governing sequence by the triangular recurrence

    eps_1 = 1,   eps_k = v_{k-1}/k! - sum_{j=1}^{k-1} eps_j / (k-j)! .

Polynomials are dense tuples of exact rationals (index = power of x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, NamedTuple

from .governing import GoverningSequence, as_fraction

__all__ = [
    "Poly",
    "poly",
    "X_POLY",
    "DerivationOperator",
    "OrderVerdict",
    "epsilons_from_sequence",
]


def _trim(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial over Q; the zero polynomial has no coeffs."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(tuple(as_fraction(c) for c in self.coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(tuple(out))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "Poly":
        c = as_fraction(c)
        return Poly(tuple(c * a for a in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def derivative(self, order: int = 1) -> "Poly":
        c = self.coeffs
        for _ in range(order):
            c = tuple(c[i] * i for i in range(1, len(c)))
        return Poly(c)

    def __call__(self, x):
        """Horner evaluation; exact for Fraction x, float otherwise."""
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, Fraction) else float(c))
        return acc

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self.coeffs), default=Fraction(0))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = [f"{c}*x^{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms)


def poly(coeffs: Iterable) -> Poly:
    return Poly(tuple(coeffs))


X_POLY = Poly((Fraction(0), Fraction(1)))


class OrderVerdict(NamedTuple):
    """Finite order of the operator, or 'infinite within horizon'."""

    finite: bool
    order: int | None
    horizon: int

    def __str__(self) -> str:
        if self.finite:
            return str(self.order)
        return f"infinite within horizon K={self.horizon}"


@dataclass(frozen=True)
class DerivationOperator:
    """eps_1..eps_K plus the source values v_0..; both exact."""

    epsilons: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    @property
    def k_max(self) -> int:
        return len(self.epsilons)

    def eps(self, k: int) -> Fraction:
        return self.epsilons[k - 1]

    def v(self, i: int) -> Fraction:
        return Fraction(0) if i == -1 else self.values[i]

    def apply(self, p: Poly) -> Poly:
        """D p via the x^{k-1} d^k series, cross-checked against the monomial rule."""
        if p.degree > self.k_max:
            raise ValueError(f"degree {p.degree} exceeds available epsilons K={self.k_max}")
        series = Poly(())
        for k in range(1, p.degree + 1):
            series = series + p.derivative(k).shift(k - 1).scale(self.eps(k))
        direct = self.apply_monomial_rule(p)
        if series != direct:
            raise RuntimeError("series and monomial routes disagree; epsilons corrupt")
        return series

    def apply_monomial_rule(self, p: Poly) -> Poly:
        """Linear extension of D x^n = v_{n-1} x^{n-1}."""
        if p.degree > len(self.values):
            raise ValueError("polynomial degree exceeds stored sequence length")
        return Poly(tuple(p.coeff(n) * self.v(n - 1) for n in range(1, p.degree + 1)))

    def apply_upper_part(self, p: Poly) -> Poly:
        """The degree-preserving part sum_{k>=2} eps_k x^k d^k applied to p."""
        if p.degree > self.k_max:
            raise ValueError(f"degree {p.degree} exceeds available epsilons K={self.k_max}")
        out = Poly(())
        for k in range(2, p.degree + 1):
            out = out + p.derivative(k).shift(k).scale(self.eps(k))
        return out

    def order(self) -> OrderVerdict:
        """Smallest k with eps_j = 0 exactly for all k < j <= K."""
        last_nonzero = 0
        for k in range(1, self.k_max + 1):
            if self.eps(k) != 0:
                last_nonzero = k
        if last_nonzero == self.k_max and self.k_max > 1:
            return OrderVerdict(finite=False, order=None, horizon=self.k_max)
        return OrderVerdict(finite=True, order=max(last_nonzero, 1), horizon=self.k_max)

    def a_coefficient(self, s: int, m: int) -> Fraction:
        """A_s(m) = s! sum_{k=m}^{s} eps_k / (s-k)!"""
        if not 1 <= m <= s <= self.k_max:
            raise ValueError(f"need 1 <= m <= s <= K={self.k_max}, got s={s}, m={m}")
        return factorial(s) * sum(
            (self.eps(k) / factorial(s - k) for k in range(m, s + 1)), Fraction(0)
        )


def epsilons_from_sequence(seq: GoverningSequence, K: int | None = None) -> DerivationOperator:
    """Run the triangular recurrence up to eps_K (K defaults to N+1, the most
    the stored prefix supports)."""
    if K is None:
        K = len(seq)
    if K > len(seq):
        raise ValueError(f"K={K} exceeds stored sequence length {len(seq)}")
    eps: list[Fraction] = []
    for k in range(1, K + 1):
        acc = seq.values[k - 1] / factorial(k)
        for j in range(1, k):
            acc -= eps[j - 1] / factorial(k - j)
        eps.append(acc)
    return DerivationOperator(epsilons=tuple(eps), values=seq.values)
