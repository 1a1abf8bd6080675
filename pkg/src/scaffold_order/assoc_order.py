"""Associated order of O_L in K[G], expressed through the scaffold basis.

With rho_a = t^(-d_a) Psi^(a) rho, an element sum c_j Psi^(j) of K[G] lies
in the associated order iff v_K(c_j) >= -w_j for every j, where

    w_j = min{ d_{a+j} - d_a : a ⪯ q-1-j }.

O_L is free over the associated order iff w_j = d_j - d_0 for all j.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .digits import PrimePower, chunks, digit_leq, no_carry_pairs, residue
from .errors import RangeError
from .extension import psi_action_on_rho, require_coprime


@dataclass(frozen=True)
class OrderData:
    pp: PrimePower
    b_max: int
    d: tuple[int, ...]
    w: tuple[int, ...]
    free: bool
    failing_j: Optional[int]

    @property
    def q(self) -> int:
        return self.pp.q

    @property
    def basis_exponents(self) -> tuple[int, ...]:
        """Powers of t in the O_K-basis t^(-w_j) Psi^(j)."""
        return tuple(-x for x in self.w)


def d_sequence(b_max: int, q: int) -> np.ndarray:
    return (np.arange(1, q + 1, dtype=np.int64) * b_max) // q


def order_data(b_max: int, pp: PrimePower) -> OrderData:
    require_coprime(b_max, pp.p)
    d = d_sequence(b_max, pp.q)
    a, _, aj, starts = no_carry_pairs(pp)
    diff = d.take(aj)
    diff -= d.take(a)
    w = np.minimum.reduceat(diff, starts)
    bad = np.flatnonzero(w != d - d[0])
    failing = int(bad[0]) if bad.size else None
    return OrderData(pp, b_max, tuple(d.tolist()), tuple(w.tolist()), failing is None, failing)


def w_condition(b_max: int, pp: PrimePower) -> tuple[bool, Optional[int]]:
    """Freeness verdict and smallest failing j, without building w.

    Checks d_{a+j} - d_a >= d_j - d_0 over the no-carry pairs in order of j
    and stops at the first block containing a violation. Agrees with
    ``order_data(b_max, pp).free`` and ``.failing_j``.
    """
    require_coprime(b_max, pp.p)
    d = d_sequence(b_max, pp.q)
    a, j, aj, _ = no_carry_pairs(pp)
    bound = d - d[0]
    for sl in chunks(a.size):
        aa = a[sl]
        jj = j[sl]
        bad = np.flatnonzero(d.take(aj[sl]) - d.take(aa) < bound.take(jj))
        if bad.size:
            return False, int(jj[bad[0]])
    return True, None


def membership_oracle(coeff_vals: Sequence, order: OrderData) -> bool:
    """Decide whether sum_j c_j Psi^(j) maps every rho_a into O_L.

    ``coeff_vals[j]`` is v_K(c_j), with ``math.inf`` for absent terms. This
    checks each coefficient of alpha * rho_a directly and never looks at w.
    """
    q, pp, d = order.q, order.pp, order.d
    if len(coeff_vals) != q:
        raise RangeError(f"expected {q} coefficient valuations, got {len(coeff_vals)}")
    for j, v in enumerate(coeff_vals):
        if v == math.inf:
            continue
        for a in range(q):
            if digit_leq(j, q - 1 - a, pp) and v < d[a] - d[j + a]:
                return False
    return True


def in_associated_order(coeff_vals: Sequence, order: OrderData) -> bool:
    """Membership via the basis description: v_K(c_j) >= -w_j for all j."""
    if len(coeff_vals) != order.q:
        raise RangeError(f"expected {order.q} coefficient valuations, got {len(coeff_vals)}")
    return all(v >= -wj for v, wj in zip(coeff_vals, order.w))


@dataclass(frozen=True)
class FreeGenerator:
    """Any rho_* with v_L(rho_*) = valuation generates O_L freely.

    ``images[j]`` is the index k with t^(-w_j) Psi^(j) rho_* = rho_k.
    """

    valuation: int
    images: tuple[int, ...]


def free_generator_check(order: OrderData) -> Optional[FreeGenerator]:
    if not order.free:
        return None
    images = []
    for j, wj in enumerate(order.w):
        act = psi_action_on_rho(j, 0, order.b_max, order.pp)
        # rho_* = rho_0, so Psi^(j) rho_* = t^(d_j - d_0) rho_j; the basis
        # element cancels the t-power exactly when w_j = d_j - d_0.
        assert act is not None and act.t_exponent - wj == 0
        images.append(act.target)
    return FreeGenerator(residue(order.b_max, order.q), tuple(images))
