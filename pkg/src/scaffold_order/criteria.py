"""Freeness criteria for a residue class c = r(b) modulo q.

Three independent routes decide the same question:

* ``w``      the associated-order test w_j = d_j - d_0 with b_max := c,
* ``miyata`` the triple inequality r(-c) + r(-ic) - r(-hc) > 0,
* ``sq``     membership of c in the digit set S(q).

``freeness(..., method="all")`` runs all three and raises
:class:`ConsistencyError` if they disagree.
"""
from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .assoc_order import w_condition
from .digits import PrimePower, chunks, lucas_triples
from .errors import ConsistencyError, CoprimalityError, RangeError, ScaffoldError

log = logging.getLogger(__name__)

METHODS = ("w", "miyata", "sq", "all")
THREADS_ENV = "SCAFFOLD_ORDER_THREADS"


class Divisibility(NamedTuple):
    kind: str  # "divides_q_minus_1" | "divides_p_d_minus_1" | "none"
    d: Optional[int] = None

    def __str__(self):
        if self.kind == "divides_p_d_minus_1":
            return f"divides p^{self.d}-1"
        if self.kind == "divides_q_minus_1":
            return "divides q-1"
        return "none"


def _check_residue(c: int, pp: PrimePower) -> None:
    if not 1 <= c <= pp.q - 1:
        raise RangeError(f"c={c} outside [1, {pp.q - 1}]")
    if gcd(c, pp.p) != 1:
        raise CoprimalityError(f"c={c} must be coprime to p={pp.p}")


def admissible_residues(pp: PrimePower) -> list[int]:
    return [c for c in range(1, pp.q) if c % pp.p]


def h_value(c: int, pp: PrimePower) -> int:
    """The h in [1, q-1] with h*c = -1 mod q."""
    _check_residue(c, pp)
    return (-pow(c, -1, pp.q)) % pp.q


def miyata_condition(c: int, pp: PrimePower):
    """Check r(-c) + r(-ic) - r(-hc) > 0 over all admissible triples.

    Returns ``(ok, witness)`` where witness is the lexicographically smallest
    failing (h, i, j), or None.
    """
    _check_residue(c, pp)
    q = pp.q
    h, i, j = lucas_triples(pp)
    r = (-c * np.arange(q, dtype=np.int64)) % q
    for sl in chunks(h.size):
        bad = np.flatnonzero(r.take(i[sl]) - r.take(h[sl]) <= -r[1])
        if bad.size:
            k = sl.start + bad[0]
            return False, (int(h[k]), int(i[k]), int(j[k]))
    return True, None


def in_S_q(c: int, pp: PrimePower):
    """Decide c in S(q); returns ``(ok, witness)`` with the smallest failing (u, v).

    A pair u, v >= 1 with u + v < c fails when every digit of r(hu) plus the
    matching digit of r(hv) is at least p-1, i.e. r(hv) ⪰ q-1-r(hu). Since u
    is recovered from x = r(hu) as r(-cx), it suffices to know, for every z,
    the smallest u whose r(hu) dominates z. That is a suffix minimum along
    each digit axis of the lattice [0, p-1]^(n+1).
    """
    _check_residue(c, pp)
    p, q = pp.p, pp.q
    x = np.arange(q, dtype=np.int64)
    u_of = (-c * x) % q  # u_of[r(hu)] == u
    big = np.int64(2 * q)
    m = np.where(u_of == 0, big, u_of)
    # C-order reshape puts digit s on axis n - s; the order of axes is irrelevant here.
    m = m.reshape((p,) * pp.width)
    for ax in range(pp.width):
        m = np.flip(np.minimum.accumulate(np.flip(m, ax), axis=ax), ax)
    min_v = m.reshape(q)[q - 1 - x]
    fails = (u_of >= 1) & (u_of + min_v < c)
    if not fails.any():
        return True, None
    u = int(u_of[fails].min())
    v = int(min_v[(u_of == u)][0])
    return False, (u, v)


def divisibility_test(c: int, pp: PrimePower) -> Divisibility:
    _check_residue(c, pp)
    if (pp.q - 1) % c == 0:
        return Divisibility("divides_q_minus_1")
    for d in range(1, pp.n + 2):
        if (pp.p**d - 1) % c == 0:
            return Divisibility("divides_p_d_minus_1", d)
    return Divisibility("none")


@dataclass
class CriterionReport:
    pp: PrimePower
    c: int
    h_c: int
    divisibility: Divisibility
    verdict_w: Optional[bool] = None
    verdict_miyata: Optional[bool] = None
    verdict_sq: Optional[bool] = None
    failing_j: Optional[int] = None
    witness_miyata: Optional[tuple[int, int, int]] = None
    witness_sq: Optional[tuple[int, int]] = None

    @property
    def verdicts(self) -> dict:
        out = {"w": self.verdict_w, "miyata": self.verdict_miyata, "sq": self.verdict_sq}
        return {k: v for k, v in out.items() if v is not None}

    @property
    def consistent(self) -> bool:
        return len(set(self.verdicts.values())) <= 1

    @property
    def free(self) -> bool:
        """The common verdict; raises if the computed verdicts disagree."""
        vals = set(self.verdicts.values())
        if len(vals) != 1:
            raise ConsistencyError(f"inconsistent verdicts for c={self.c}: {self.verdicts}", [self])
        return vals.pop()

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "h_c": self.h_c,
            "divisibility": self.divisibility.kind,
            "divisibility_d": self.divisibility.d,
            "verdict_w": self.verdict_w,
            "verdict_miyata": self.verdict_miyata,
            "verdict_sq": self.verdict_sq,
            "failing_j": self.failing_j,
            "witness_miyata": list(self.witness_miyata) if self.witness_miyata else None,
            "witness_sq": list(self.witness_sq) if self.witness_sq else None,
        }


def freeness(c: int, pp: PrimePower, method: str = "all", check: bool = True) -> CriterionReport:
    if method not in METHODS:
        raise ScaffoldError(f"unknown method {method!r}; choose from {METHODS}")
    rep = CriterionReport(pp, c, h_value(c, pp), divisibility_test(c, pp))
    if method in ("w", "all"):
        rep.verdict_w, rep.failing_j = w_condition(c, pp)
    if method in ("miyata", "all"):
        rep.verdict_miyata, rep.witness_miyata = miyata_condition(c, pp)
    if method in ("sq", "all"):
        rep.verdict_sq, rep.witness_sq = in_S_q(c, pp)
    if check and not rep.consistent:
        raise ConsistencyError(f"criteria disagree for c={c}, {pp}: {rep.verdicts}", [rep])
    return rep


def worker_count(threads: Optional[int] = None) -> int:
    if threads is None:
        try:
            threads = int(os.environ.get(THREADS_ENV, "1"))
        except ValueError:
            threads = 1
    return max(1, threads)


def _map_ordered(fn, items: list, threads: Optional[int]):
    n = worker_count(threads)
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


@dataclass
class EquivalenceReport:
    pp: PrimePower
    reports: list[CriterionReport]
    mismatches: list[CriterionReport] = field(default_factory=list)

    @property
    def free_set(self) -> list[int]:
        return [r.c for r in self.reports if r.consistent and r.free]

    @property
    def counts(self) -> dict:
        nfree = len(self.free_set)
        return {"admissible": len(self.reports), "free": nfree, "not_free": len(self.reports) - nfree,
                "mismatches": len(self.mismatches)}


def equivalence_report(pp: PrimePower, threads: Optional[int] = None, method: str = "all") -> EquivalenceReport:
    """Run ``freeness`` on every admissible residue mod q, ascending in c.

    Raises ConsistencyError carrying every disagreeing report.
    """
    reports = _map_ordered(lambda c: freeness(c, pp, method, check=False), admissible_residues(pp), threads)
    bad = [r for r in reports if not r.consistent]
    if bad:
        raise ConsistencyError(f"{len(bad)} inconsistent residue(s) for {pp}", bad)
    log.debug("%s: %d admissible residues, all consistent", pp, len(reports))
    return EquivalenceReport(pp, reports)


class ConverseWitness(NamedTuple):
    """A free residue c mod q dividing no p^d - 1 with d <= n+1."""

    p: int
    n: int
    q: int
    c: int


def converse_search(pps: Iterable[PrimePower], threads: Optional[int] = None,
                    method: str = "miyata") -> list[ConverseWitness]:
    pps = list(pps)
    for pp in pps:
        if pp.n < 2:
            raise ScaffoldError(f"converse search needs n >= 2, got {pp}")
    out = []
    for pp in sorted(pps, key=lambda x: (x.q, x.p)):
        cands = [c for c in admissible_residues(pp) if divisibility_test(c, pp).kind == "none"]
        reps = _map_ordered(lambda c: freeness(c, pp, method), cands, threads)
        out.extend(ConverseWitness(pp.p, pp.n, pp.q, r.c) for r in reps if r.free)
    return out


def prime_powers_up_to(q_max: int, primes: Iterable[int], min_n: int = 0) -> list[PrimePower]:
    out = []
    for p in primes:
        n = min_n
        while p ** (n + 1) <= q_max:
            out.append(PrimePower(p, n))
            n += 1
    return sorted(out, key=lambda x: (x.q, x.p))
