"""Hermite-Chihara polynomial systems.

The orthonormal polynomials are stored through their monic cores P_n:

    psi_n = P_n / nu_n,   nu_n^2 = [n]! b0^{2n} = prod_{k<n} b_k^2,

with P_{n+1} = x P_n - b_{n-1}^2 P_{n-1}, P_0 = 1, P_1 = x.  Since nu_n^2 is
rational, every identity of interest (lowering rule, coefficient formulas,
reduced decompositions) becomes an exact statement about rational polynomials:

    lowering   D P_n = v_{n-1} P_{n-1}
    explicit   coeff of x^{n-2m} in P_n  =  (-1)^m b0^{2m} alpha_{2m-1,n-1}

Floating point enters only at evaluation boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .derivation import DerivationOperator, Poly, epsilons_from_sequence
from .governing import (
    GoverningSequence,
    bracket_table,
    gamma_squares,
    is_special_family,
    recurrence_squares,
)

__all__ = [
    "UnsupportedSystemError",
    "alpha_nested",
    "alpha_closed",
    "alpha_table_entry",
    "NormalizedPoly",
    "DecompositionReport",
    "PolynomialSystem",
]


class UnsupportedSystemError(ValueError):
    """Operation requires a special-family system and this one is not."""


def alpha_nested(brackets: Sequence[Fraction], m: int, n: int) -> Fraction:
    """m-fold nested bracket sum

        alpha_{2m-1,n-1} = sum_{k1=2m-1}^{n-1} [k1] sum_{k2=2m-3}^{k1-2} [k2] ...

    m = 0 returns 0, the sentinel value of the defining display (the value used
    as the m = 0 entry of the coefficient table is 1; see alpha_table_entry).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if m == 0:
        return Fraction(0)
    if not 1 <= m <= n // 2:
        raise ValueError(f"need 1 <= m <= n//2, got m={m}, n={n}")
    brackets = tuple(brackets)

    @lru_cache(maxsize=None)
    def inner(levels: int, upper: int) -> Fraction:
        if levels == 0:
            return Fraction(1)
        lo = 2 * levels - 1
        acc = Fraction(0)
        for k in range(lo, upper + 1):
            acc += brackets[k] * inner(levels - 1, k - 2)
        return acc

    return inner(m, n - 1)


def _gen_factorial(values: Sequence[Fraction], k: int) -> Fraction:
    """(v_k)! = v_0 v_1 ... v_k with (v_{-1})! = 1."""
    acc = Fraction(1)
    for i in range(k + 1):
        acc *= values[i]
    return acc


def _bracket_double_factorial(brackets: Sequence[Fraction], m: int) -> Fraction:
    """[2m-1]!! = [1][3]...[2m-1] (empty product for m = 0)."""
    acc = Fraction(1)
    for j in range(1, m + 1):
        acc *= brackets[2 * j - 1]
    return acc


def alpha_closed(
    values: Sequence[Fraction], brackets: Sequence[Fraction], m: int, n: int
) -> Fraction:
    """Closed form  [2m-1]!! (v_{n-1})! / ((v_{2m-1})! (v_{n-2m-1})!)."""
    if n < 1 or not 0 <= m <= n // 2:
        raise ValueError(f"need n >= 1 and 0 <= m <= n//2, got m={m}, n={n}")
    num = _bracket_double_factorial(brackets, m) * _gen_factorial(values, n - 1)
    den = _gen_factorial(values, 2 * m - 1) * _gen_factorial(values, n - 2 * m - 1)
    return num / den


def alpha_table_entry(
    values: Sequence[Fraction], brackets: Sequence[Fraction], m: int, n: int
) -> Fraction:
    """Coefficient-table value: 1 at m = 0 (monic leading term), closed form
    otherwise.  This is the convention the explicit polynomial formula and the
    p = 1 case of the alpha recurrence require."""
    if m == 0:
        return Fraction(1)
    return alpha_closed(values, brackets, m, n)


@dataclass(frozen=True)
class NormalizedPoly:
    """Exact monic core plus exact squared normalization: psi = core / sqrt(norm2)."""

    core: Poly
    norm_squared: Fraction

    @property
    def norm(self) -> float:
        return math.sqrt(float(self.norm_squared))

    def float_coeffs(self) -> list[float]:
        nu = self.norm
        return [float(c) / nu for c in self.core.coeffs]

    def __call__(self, x) -> float:
        # Horner on the exact core (the float argument converts exactly);
        # rounding enters only through the normalization.
        return float(self.core(Fraction(x))) / self.norm


@dataclass(frozen=True)
class DecompositionReport:
    """Expansion of the degree-preserving operator part applied to psi_n over
    the triangular generating set {x psi_{n-1}, psi_{n-2}, psi_{n-4}, ...}.

    ``support`` lists the basis indices carrying a nonzero coefficient, with
    index n-1 standing for the x psi_{n-1} term.  The *_scaled fields are the
    exact rational coefficients relative to the monic cores:

        delta_scaled = delta_bar * b_{n-1},
        beta_scaled  = beta_bar * b_{n-1} b_{n-2}.
    """

    n: int
    support: tuple[int, ...]
    delta_bar: float
    beta_bar: float
    reduced: bool
    delta_scaled: Fraction
    beta_scaled: Fraction
    tail_scaled: dict[int, Fraction]


class PolynomialSystem:
    """Orthonormal system generated by a governing sequence.

    Immutable once built; all query methods are pure.
    """

    def __init__(self, seq: GoverningSequence, n_max: int | None = None):
        if n_max is None:
            n_max = seq.n_max
        if not 1 <= n_max <= seq.n_max:
            raise ValueError(f"n_max must be in [1, {seq.n_max}]")
        self.seq = seq
        self.n_max = n_max
        self.op: DerivationOperator = epsilons_from_sequence(seq, K=n_max + 1)
        self.brackets = bracket_table(seq)
        self.b2 = recurrence_squares(seq)  # b2[i] = b_i^2
        self.g2 = gamma_squares(seq)  # g2[n] = gamma_n^2
        self.b_float = [math.sqrt(float(x)) for x in self.b2]
        self.gamma_float = [math.sqrt(float(x)) for x in self.g2]

        norm2 = [Fraction(1)]
        for n in range(1, n_max + 1):
            norm2.append(norm2[-1] * self.b2[n - 1])
        self.norm2 = norm2

        monic = [Poly((Fraction(1),)), Poly((Fraction(0), Fraction(1)))]
        for n in range(1, n_max):
            monic.append(monic[n].shift(1) - monic[n - 1].scale(self.b2[n - 1]))
        self.monic = monic[: n_max + 1]

        fam, params = is_special_family(seq)
        self._family_params = params if fam else None

    # -- basic accessors ---------------------------------------------------

    @property
    def values(self) -> tuple[Fraction, ...]:
        return self.seq.values

    @property
    def is_family(self) -> bool:
        return self._family_params is not None

    @property
    def family_params(self) -> tuple[Fraction, Fraction] | None:
        return self._family_params

    def weight_parameters(self) -> tuple[Fraction, Fraction]:
        """(gamma, alpha) of the weight C |x|^gamma exp(-alpha x^2) the system
        is orthonormal against; defined for special-family systems."""
        if not self.is_family:
            raise UnsupportedSystemError("weight parameters exist only for family systems")
        v2 = self.values[2]
        gamma = (3 - v2) / (v2 - 1)
        alpha = 1 / (self.seq.b0_squared * (v2 - 1))
        return gamma, alpha

    # -- polynomials -------------------------------------------------------

    def psi_coeffs(self, n: int) -> NormalizedPoly:
        """psi_n from the three-term recurrence (exact core + squared norm)."""
        self._check_n(n)
        return NormalizedPoly(self.monic[n], self.norm2[n])

    def psi_coeffs_via_alpha(self, n: int, nested: bool = False) -> NormalizedPoly:
        """psi_n from the explicit coefficient formula
        sum_m (-1)^m b0^{2m-n} alpha_{2m-1,n-1} x^{n-2m} / sqrt([n]!)."""
        self._check_n(n)
        coeffs = [Fraction(0)] * (n + 1)
        for m in range(0, n // 2 + 1):
            if m == 0:
                a = Fraction(1)
            elif nested:
                a = alpha_nested(self.brackets, m, n)
            else:
                a = alpha_closed(self.values, self.brackets, m, n)
            coeffs[n - 2 * m] = (-1) ** m * self.seq.b0_squared**m * a
        return NormalizedPoly(Poly(tuple(coeffs)), self.norm2[n])

    def psi_eval(self, n: int, x):
        """Forward three-term recurrence evaluation (float; x scalar or array)."""
        self._check_n(n)
        x = np.asarray(x, dtype=float)
        p_prev = np.ones_like(x)
        if n == 0:
            return p_prev if p_prev.ndim else float(p_prev)
        p_cur = x / self.b_float[0]
        for m in range(1, n):
            p_prev, p_cur = p_cur, (x * p_cur - self.b_float[m - 1] * p_prev) / self.b_float[m]
        return p_cur if p_cur.ndim else float(p_cur)

    def psi_eval_table(self, x: np.ndarray, n_hi: int) -> np.ndarray:
        """Matrix [len(x), n_hi+1] of psi_0..psi_{n_hi} at the nodes x."""
        self._check_n(n_hi)
        x = np.asarray(x, dtype=float)
        out = np.empty((x.size, n_hi + 1))
        out[:, 0] = 1.0
        if n_hi >= 1:
            out[:, 1] = x / self.b_float[0]
        for m in range(1, n_hi):
            out[:, m + 1] = (x * out[:, m] - self.b_float[m - 1] * out[:, m - 1]) / self.b_float[m]
        return out

    # -- identity checks ---------------------------------------------------

    def lowering_residual(self, n: int) -> Fraction:
        """Max |coefficient| of D P_n - v_{n-1} P_{n-1}; exactly 0 for valid
        systems (this is the lowering rule with the radical cleared)."""
        if not 1 <= n <= self.n_max:
            raise ValueError(f"need 1 <= n <= {self.n_max}")
        res = self.op.apply(self.monic[n]) - self.monic[n - 1].scale(self.values[n - 1])
        return res.max_abs_coeff()

    def decompose_b1bar(self, n: int) -> DecompositionReport:
        """Expand (degree-preserving part of D) psi_n over
        {x psi_{n-1}, psi_{n-2}, psi_{n-4}, ...} by exact degree elimination."""
        if not 2 <= n <= self.n_max:
            raise ValueError(f"need 2 <= n <= {self.n_max}")
        rem = self.op.apply_upper_part(self.monic[n])
        delta_scaled = rem.coeff(n)
        rem = rem - self.monic[n - 1].shift(1).scale(delta_scaled)
        beta_scaled = Fraction(0)
        tail: dict[int, Fraction] = {}
        support: list[int] = [n - 1] if delta_scaled != 0 else []
        for k in range(1, n // 2 + 1):
            idx = n - 2 * k
            c = rem.coeff(idx)
            if c != 0:
                rem = rem - self.monic[idx].scale(c)
                support.append(idx)
            if k == 1:
                beta_scaled = c
            elif c != 0:
                tail[idx] = c
        if not rem.is_zero():
            raise RuntimeError("triangular elimination left a remainder")
        reduced = all(i in (n - 1, n - 2) for i in support)
        delta_bar = float(delta_scaled) / self.b_float[n - 1]
        beta_bar = float(beta_scaled) / (self.b_float[n - 1] * self.b_float[n - 2])
        return DecompositionReport(
            n=n,
            support=tuple(support),
            delta_bar=delta_bar,
            beta_bar=beta_bar,
            reduced=reduced,
            delta_scaled=delta_scaled,
            beta_scaled=beta_scaled,
            tail_scaled=tail,
        )

    def classify_reduced(self, n_hi: int | None = None) -> bool:
        """True iff the decomposition stays within two lowering steps for all
        2 <= n <= n_hi.  Coincides with the special-family shape."""
        if n_hi is None:
            n_hi = self.n_max
        return all(self.decompose_b1bar(n).reduced for n in range(2, n_hi + 1))

    def derivative_core_expansion(self, n: int) -> list[Fraction]:
        """Exact coefficients e_j with P_n' = sum_j e_j P_{n-1-2j}."""
        self._check_n(n)
        rem = self.monic[n].derivative()
        out: list[Fraction] = []
        j = 0
        while n - 1 - 2 * j >= 0:
            idx = n - 1 - 2 * j
            c = rem.coeff(idx)
            out.append(c)
            if c != 0:
                rem = rem - self.monic[idx].scale(c)
            j += 1
        if not rem.is_zero():
            raise RuntimeError("derivative elimination left a remainder")
        return out

    def derivative_in_basis(self, n: int) -> list[tuple[int, float]]:
        """psi_n' = sum c_k psi_k with float c_k from the exact expansion."""
        expansion = self.derivative_core_expansion(n)
        out = []
        for j, e in enumerate(expansion):
            idx = n - 1 - 2 * j
            if e != 0:
                ratio = math.sqrt(float(self.norm2[idx] / self.norm2[n]))
                out.append((idx, float(e) * ratio))
        return out

    def derivative_decomposition(self, n: int) -> tuple[float, float]:
        """Coefficients (c_prev, c_over_x) of psi_n' = c_prev psi_{n-1}
        + c_over_x psi_{n-2} / x; exists exactly for family systems."""
        if not 2 <= n <= self.n_max:
            raise ValueError(f"need 2 <= n <= {self.n_max}")
        if not self.is_family:
            raise UnsupportedSystemError("two-term derivative decomposition needs a family system")
        # x P_n' - n x P_{n-1} must be an exact multiple of P_{n-2}
        s = self.monic[n].derivative().shift(1) - self.monic[n - 1].shift(1).scale(n)
        c2_scaled = s.coeff(n - 2)
        rem = s - self.monic[n - 2].scale(c2_scaled)
        if not rem.is_zero():
            raise UnsupportedSystemError("decomposition has lower-order residue; not a family system")
        c_prev = n / self.b_float[n - 1]
        c_over_x = float(c2_scaled) / (self.b_float[n - 1] * self.b_float[n - 2])
        return c_prev, c_over_x

    def ode_residual(self, n: int, x, gamma=None, alpha=None) -> float:
        """Left side of the second-order equation

            x psi'' + (gamma - 2 alpha x^2) psi' + (2 alpha n x - theta_n/x) psi

        at x != 0.  (gamma, alpha) default to the system's weight parameters;
        overriding them probes a mismatched equation (negative controls).

        The bracket is combined in rational arithmetic (the float grid value of
        x converts exactly), so the returned residual is free of the
        catastrophic cancellation a naive float evaluation suffers at large
        |x| and n; only the 1/nu_n normalization is applied in floating point.
        """
        self._check_n(n)
        if float(x) == 0.0:
            raise ValueError("the equation has a regular singular point at x = 0")
        default_g, default_a = self.weight_parameters()
        g = default_g if gamma is None else Fraction(gamma)
        a = default_a if alpha is None else Fraction(alpha)
        xq = Fraction(x)
        theta = g if n % 2 == 1 else Fraction(0)
        core = self.monic[n]
        p = core(xq)
        dp = core.derivative()(xq)
        ddp = core.derivative(2)(xq)
        bracket = xq * ddp + (g - 2 * a * xq * xq) * dp + (2 * a * n * xq - theta / xq) * p
        return float(bracket) / math.sqrt(float(self.norm2[n]))

    def _check_n(self, n: int) -> None:
        if not 0 <= n <= self.n_max:
            raise ValueError(f"n must be in [0, {self.n_max}]")
