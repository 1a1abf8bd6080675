"""Base-p digit arithmetic on [0, q-1] with q = p**(n+1)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import RangeError, ScaffoldError

MAX_Q = 2**32


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimePower:
    """The modulus q = p**(n+1) together with its prime p and level n."""

    p: int
    n: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ScaffoldError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.n, int) or self.n < 0:
            raise ScaffoldError(f"n must be a non-negative integer, got {self.n!r}")
        if self.p ** (self.n + 1) > MAX_Q:
            raise RangeError(f"q = {self.p}^{self.n + 1} exceeds 2^32")

    @property
    def q(self) -> int:
        return self.p ** (self.n + 1)

    @property
    def width(self) -> int:
        """Number of digits, n + 1."""
        return self.n + 1

    def __str__(self):
        return f"q={self.q} (p={self.p}, n={self.n})"


def _check_range(x: int, pp: PrimePower, name: str = "x") -> None:
    if not 0 <= x < pp.q:
        raise RangeError(f"{name}={x} outside [0, {pp.q - 1}]; reduce mod q first")


def residue(x: int, q: int) -> int:
    """Least non-negative residue of x modulo q."""
    if q <= 0:
        raise RangeError(f"modulus must be positive, got {q}")
    return x % q


def digits(x: int, pp: PrimePower) -> tuple[int, ...]:
    """Base-p digits of x, least significant first, always n+1 of them."""
    _check_range(x, pp)
    out = []
    for _ in range(pp.width):
        x, d = divmod(x, pp.p)
        out.append(d)
    return tuple(out)


def from_digits(ds, pp: PrimePower) -> int:
    if len(ds) != pp.width or any(not 0 <= d < pp.p for d in ds):
        raise RangeError(f"not a digit vector for {pp}: {ds!r}")
    return sum(d * pp.p**s for s, d in enumerate(ds))


def digit_leq(x: int, y: int, pp: PrimePower) -> bool:
    """x ⪯ y: every base-p digit of x is at most the matching digit of y."""
    _check_range(x, pp, "x")
    _check_range(y, pp, "y")
    p = pp.p
    while x or y:
        if x % p > y % p:
            return False
        x //= p
        y //= p
    return True


def binomial_nonzero_mod_p(i: int, h: int, p: int) -> bool:
    """True iff C(i, h) is not divisible by p.

    By Lucas' theorem this holds exactly when adding h and i - h in base p
    produces no carry.
    """
    if h < 0 or i < 0 or h > i:
        raise RangeError(f"need 0 <= h <= i, got h={h}, i={i}")
    if not is_prime(p):
        raise ScaffoldError(f"p must be prime, got {p}")
    a, b = h, i - h
    while a and b:
        if a % p + b % p >= p:
            return False
        a //= p
        b //= p
    return True


# -- vectorised helpers shared by the enumeration kernels ------------------


def digit_matrix(values, pp: PrimePower) -> np.ndarray:
    """Digits of an integer array, shape (len(values), n+1)."""
    v = np.asarray(values, dtype=np.int64)
    powers = pp.p ** np.arange(pp.width, dtype=np.int64)
    return (v[:, None] // powers[None, :]) % pp.p


def _digitwise_product(pp: PrimePower, pairs):
    """Combine per-digit pairs (u_s, v_s) into full integers u, v."""
    du = np.array([a for a, _ in pairs], dtype=np.int64)
    dv = np.array([b for _, b in pairs], dtype=np.int64)
    u = np.zeros(1, dtype=np.int64)
    v = np.zeros(1, dtype=np.int64)
    for s in range(pp.width):
        ps = pp.p**s
        u = (u[:, None] + du[None, :] * ps).ravel()
        v = (v[:, None] + dv[None, :] * ps).ravel()
    return u, v


@lru_cache(maxsize=64)
def no_carry_pairs(pp: PrimePower) -> tuple[np.ndarray, ...]:
    """All (a, j) with a ⪯ q-1-j, sorted by j then a.

    Returns ``(a, j, a + j, starts)`` where ``starts[j]`` is the offset of the block
    belonging to j, ready for ``np.minimum.reduceat``. Every block is
    non-empty because a = 0 always qualifies.
    """
    p = pp.p
    pairs = [(x, y) for x in range(p) for y in range(p) if x + y <= p - 1]
    a, j = _digitwise_product(pp, pairs)
    order = np.lexsort((a, j))
    a, j = a[order], j[order]
    starts = np.searchsorted(j, np.arange(pp.q))
    total = a + j
    for arr in (a, j, total, starts):
        arr.flags.writeable = False
    return a, j, total, starts


@lru_cache(maxsize=64)
def lucas_triples(pp: PrimePower) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Triples (h, i, j) with 0 <= h <= i <= j < q, i + j = q-1+h and
    C(i, h) prime to p, in lexicographic order.
    """
    p, q = pp.p, pp.q
    pairs = [(x, y) for x in range(p) for y in range(p) if x <= y]
    h, i = _digitwise_product(pp, pairs)
    j = q - 1 + h - i
    keep = i <= j
    h, i, j = h[keep], i[keep], j[keep]
    order = np.lexsort((i, h))
    h, i, j = h[order], i[order], j[order]
    for arr in (h, i, j):
        arr.flags.writeable = False
    return h, i, j


def chunks(total: int, first: int = 4096, cap: int = 1 << 18):
    """Slices covering range(total) in geometrically growing pieces.

    Lets ordered scans stop at the first violation without paying for the
    whole array when one turns up early.
    """
    lo, size = 0, first
    while lo < total:
        hi = min(total, lo + size)
        yield slice(lo, hi)
        lo, size = hi, min(cap, size * 2)
