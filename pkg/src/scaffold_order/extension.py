"""Valuation-level model of near one-dimensional elementary abelian extensions.

An extension is described only by b = -v_K(beta) and the valuations of the
Omega_i. The Galois scaffold is taken as given: the monomial Psi^(a) raises
valuations by a * b_max on elements whose valuation is congruent to b_max
mod q, which is all the calculus below relies on.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional, Sequence

from .digits import PrimePower, digit_leq, residue
from .errors import (
    CoprimalityError,
    MonotonicityError,
    NormalizationError,
    RangeError,
    ScaffoldError,
)


@dataclass(frozen=True)
class ExtensionParams:
    pp: PrimePower
    b: int
    omega_vals: tuple[int, ...]
    # Residue-field linear independence of equal-valuation Omegas cannot be
    # checked from valuations alone; it is carried as an assumption.
    independence_assumed: bool = field(default=True, compare=False)

    def __post_init__(self):
        pp = self.pp
        if not isinstance(self.b, int) or self.b <= 0:
            raise RangeError(f"b must be a positive integer, got {self.b!r}")
        if self.b % pp.p == 0:
            raise CoprimalityError(f"b must be coprime to p (b={self.b}, p={pp.p})")
        om = self.omega_vals
        if len(om) != pp.n + 1:
            raise RangeError(f"expected {pp.n + 1} Omega valuations, got {len(om)}")
        if om[0] != 0:
            raise NormalizationError("v_K(Omega_0) must be 0")
        if any(v > 0 for v in om):
            raise MonotonicityError("Omega valuations must be <= 0")
        if any(om[k + 1] > om[k] for k in range(len(om) - 1)):
            raise MonotonicityError(f"Omega valuations must be non-increasing: {list(om)}")

    @property
    def m(self) -> tuple[int, ...]:
        """Valuation drops m_1..m_n (m_j = v(Omega_{j-1}) - v(Omega_j))."""
        om = self.omega_vals
        return tuple(om[j - 1] - om[j] for j in range(1, len(om)))


def validate_params(p: int, n: int, b: int, omega_vals: Optional[Sequence[int]] = None,
                    independence_assumed: bool = True) -> ExtensionParams:
    """Build an ExtensionParams, raising on any violated condition.

    ``omega_vals`` defaults to all zeros, the single-equation case y^q - y = beta.
    """
    pp = PrimePower(p, n)
    if omega_vals is None:
        omega_vals = [0] * (n + 1)
    try:
        om = tuple(int(v) for v in omega_vals)
    except (TypeError, ValueError) as exc:
        raise ScaffoldError(f"bad Omega valuations {omega_vals!r}") from exc
    return ExtensionParams(pp, b, om, independence_assumed)


@dataclass(frozen=True)
class RamificationData:
    breaks: tuple[int, ...]
    distinct_breaks: tuple[int, ...]
    b_max: int


def ramification_breaks(params: ExtensionParams) -> RamificationData:
    """Lower breaks b_(i) = b + p^n * sum_{j<=i} p^j m_j."""
    p, n = params.pp.p, params.pp.n
    breaks = [params.b]
    acc = 0
    for j, mj in enumerate(params.m, start=1):
        acc += p**j * mj
        breaks.append(params.b + p**n * acc)
    distinct = tuple(sorted(set(breaks)))
    return RamificationData(tuple(breaks), distinct, breaks[-1])


def epsilon_threshold(params: ExtensionParams, i: int) -> Fraction:
    """Exact lower bound T_i: an error term eps_i is admissible iff v_K(eps_i) > T_i."""
    p, n = params.pp.p, params.pp.n
    if not 0 <= i <= n:
        raise RangeError(f"index {i} outside [0, {n}]")
    om, b = params.omega_vals, params.b
    pn = p**n
    tail = sum(p**j * om[j] for j in range(1, n))
    return pn * om[i] - b + Fraction((pn - 1) * b, pn) - (p - 1) * tail


def error_term_admissible(params: ExtensionParams, i: int, v_eps) -> bool:
    """Strict comparison against epsilon_threshold; v_eps may be math.inf (eps_i = 0)."""
    return v_eps > epsilon_threshold(params, i)


def d_value(a: int, b_max: int, q: int) -> int:
    """d_a = floor((1+a) b_max / q)."""
    if q < 1 or not 0 <= a < q:
        raise RangeError(f"a={a} outside [0, {q - 1}]")
    if b_max < 1:
        raise RangeError(f"b_max must be positive, got {b_max}")
    return (1 + a) * b_max // q


def rho_valuation(a: int, b_max: int, q: int) -> int:
    """v_L(rho_a) = r((1+a) b_max)."""
    if q < 1 or not 0 <= a < q:
        raise RangeError(f"a={a} outside [0, {q - 1}]")
    return residue((1 + a) * b_max, q)


def psi_mult(a: int, j: int, pp: PrimePower) -> Optional[int]:
    """Exponent of Psi^(a) Psi^(j), or None when the product vanishes."""
    if digit_leq(a, pp.q - 1 - j, pp):
        return a + j
    return None


class RhoAction(NamedTuple):
    """Psi^(j) rho_a = t^t_exponent * rho_target."""

    t_exponent: int
    target: int


def psi_action_on_rho(j: int, a: int, b_max: int, pp: PrimePower) -> Optional[RhoAction]:
    if not 0 <= a < pp.q:
        raise RangeError(f"a={a} outside [0, {pp.q - 1}]")
    if not digit_leq(a, pp.q - 1 - j, pp):
        return None
    q = pp.q
    return RhoAction(d_value(a + j, b_max, q) - d_value(a, b_max, q), a + j)


def require_coprime(b: int, p: int) -> None:
    if b < 1:
        raise RangeError(f"expected a positive integer, got {b}")
    if gcd(b, p) != 1:
        raise CoprimalityError(f"{b} must be coprime to p={p}")
