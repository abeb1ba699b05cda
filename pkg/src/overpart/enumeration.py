"""Exhaustive generation, exact counting, and signed counting of
overpartitions, plus the identity checks built on those counts.

All counts are exact Python integers (arbitrary precision).

Enumeration order
-----------------
``overpartitions(n)`` yields each overpartition of ``n`` exactly once,
in a fixed documented order: runs of equal parts are chosen left to
right with the run value descending from ``n`` and, for a given value,
the number of copies descending; for each such choice the remainder is
enumerated recursively, and every completed tail is emitted first with
the run entirely plain and then with its first copy overlined.  For
n=4 this gives

    4, 4o, 3,1, 3o,1, 3,1o, 3o,1o, 2,2, 2o,2, 2,1,1, 2o,1,1,
    2,1o,1, 2o,1o,1, 1,1,1,1, 1o,1,1,1

which golden tests freeze.  Family streams preserve this order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .core import (
    POEX, SPTKO,
    FamilySpec, OverPartition, Stats, member_given_stats, stats,
)

__all__ = [
    "overpartitions", "family_members", "family_elements",
    "count_family", "count_many", "count_profile", "profile_tokens",
    "signed_count", "SPTKO_PRIME", "POEX_PRIME",
    "CountTable", "SignedCount", "count_table",
    "IDENTITIES", "IDENTITY_START", "identity_sides", "derivation_sides",
]

SPTKO_PRIME = "SPTKO_PRIME"
POEX_PRIME = "POEX_PRIME"

# annotated enumerations are memoized up to this weight; audits and
# repeated family lookups stay below it, one-shot sweeps above it stream
_CACHE_LIMIT = 25
_annotated_cache: dict[int, tuple] = {}


def _runs(remaining: int, cap: int):
    # raw entry tuples, recursion documented in the module docstring
    if remaining == 0:
        yield ()
        return
    for v in range(min(remaining, cap), 0, -1):
        for total in range(remaining // v, 0, -1):
            head_plain = (v, total, 0)
            head_over = (v, total - 1, 1)
            for tail in _runs(remaining - v * total, v - 1):
                yield (head_plain,) + tail
                yield (head_over,) + tail


def overpartitions(n: int) -> Iterator[OverPartition]:
    """Yield every overpartition of ``n`` once, in the documented order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (OverPartition(entries) for entries in _runs(n, n))


def _annotated(n: int) -> Iterable[tuple[OverPartition, Stats]]:
    if n <= _CACHE_LIMIT:
        hit = _annotated_cache.get(n)
        if hit is None:
            hit = tuple((pi, stats(pi)) for pi in overpartitions(n))
            _annotated_cache[n] = hit
        return hit
    return ((pi, stats(pi)) for pi in overpartitions(n))


def family_members(fam: FamilySpec, n: int) -> Iterator[OverPartition]:
    """Stream the members of the family among overpartitions of ``n``,
    in enumeration order."""
    return (pi for pi, st in _annotated(n) if member_given_stats(pi, st, fam))


@lru_cache(maxsize=None)
def family_elements(fam: FamilySpec, n: int) -> tuple[OverPartition, ...]:
    """Memoized tuple of the family members at weight ``n``."""
    return tuple(family_members(fam, n))


def count_family(fam: FamilySpec, n: int) -> int:
    if n <= _CACHE_LIMIT:
        return len(family_elements(fam, n))
    return sum(1 for _ in family_members(fam, n))


def count_many(n: int, columns: Iterable[tuple[FamilySpec, bool]]) -> list[int]:
    """One enumeration pass computing several counts at weight ``n``.

    Each column is ``(family, signed)``; a signed column accumulates
    the family's sign statistic (parts above s for SPTKO, number of
    parts for POEX) instead of 1.
    """
    cols = list(columns)
    totals = [0] * len(cols)
    for pi, st in _annotated(n):
        for i, (fam, signed) in enumerate(cols):
            if member_given_stats(pi, st, fam):
                if signed:
                    totals[i] += st.sign_spt if fam.id == SPTKO else st.sign_parts
                else:
                    totals[i] += 1
    return totals


def profile_tokens(k_max: int = 1) -> list[str]:
    """Column names produced by :func:`count_profile`."""
    toks = ["pbar", "pe", "pex", "poex", "ce", "co", "poex-prime"]
    for k in range(1, k_max + 1):
        toks += [f"spt{k}", f"spt{k}o", f"be{k}", f"bo{k}", f"spt{k}o-prime"]
    return toks


@lru_cache(maxsize=None)
def count_profile(n: int, k_max: int = 1) -> dict[str, int]:
    """All family counts and signed counts at weight ``n``, keyed by
    family token, from a single enumeration pass."""
    prof = dict.fromkeys(profile_tokens(k_max), 0)
    for pi, st in _annotated(n):
        prof["pbar"] += 1
        if all(not v & 1 for v, _, _ in pi):
            prof["pe"] += 1
        if not pi or pi[-1][0] != 1 or pi[-1][1] == 0:
            prof["pex"] += 1
            if all(v & 1 for v, _, _ in pi):
                prof["poex"] += 1
                prof["ce" if st.num_parts % 2 == 0 else "co"] += 1
                prof["poex-prime"] += st.sign_parts
        if st.s is not None and pi[-1][0] == st.s and not pi[-1][2]:
            k = st.s_multiplicity
            if 1 <= k <= k_max:
                prof[f"spt{k}"] += 1
                par = st.s & 1
                if all((v & 1) != par for v, _, _ in pi[:-1]):
                    prof[f"spt{k}o"] += 1
                    prof[f"be{k}" if st.parts_above_s % 2 == 0 else f"bo{k}"] += 1
                    prof[f"spt{k}o-prime"] += st.sign_spt
    return prof


@dataclass(frozen=True)
class SignedCount:
    """A signed enumeration result: the even-refinement count minus the
    odd-refinement count."""

    n: int
    value: int


def signed_count(which: str, n: int, k: int = 1) -> SignedCount:
    """Signed count by exhaustive enumeration.

    ``which`` is ``SPTKO_PRIME`` (sign: parity of the number of parts
    above the smallest plain part, within the SPTKO family) or
    ``POEX_PRIME`` (sign: parity of the number of parts, within POEX).
    """
    if which == SPTKO_PRIME:
        fam = FamilySpec(SPTKO, k)
    elif which == POEX_PRIME:
        fam = FamilySpec(POEX)
    else:
        raise ValueError(f"unknown signed count {which!r}")
    (value,) = count_many(n, [(fam, True)])
    return SignedCount(n, value)


@dataclass(frozen=True)
class CountTable:
    """Counts of one family for n = 0..n_max."""

    family: FamilySpec
    rows: tuple[tuple[int, int], ...]

    def to_csv(self) -> str:
        return "\n".join(f"{n},{c}" for n, c in self.rows)

    def to_json(self) -> str:
        return json.dumps([{"n": n, "count": str(c)} for n, c in self.rows])


def count_table(fam: FamilySpec, n_max: int) -> CountTable:
    rows = tuple((n, count_family(fam, n)) for n in range(n_max + 1))
    return CountTable(fam, rows)


# ---------------------------------------------------------------------------
# identities between the counting functions, each checked by enumeration
# ---------------------------------------------------------------------------

IDENTITIES = ("T1", "T2", "T3", "T4e", "T4o")

# first n for which each identity is asserted
IDENTITY_START = {"T1": 2, "T2": 3, "T3": 3, "T4e": 3, "T4o": 3}


def identity_sides(identity: str, n: int) -> tuple[int, int]:
    """Left and right side of one identity at ``n``, both by enumeration.

    T1:  spt1(n) + spt1(n-1)            = pex(n)
    T2:  spt1o(n) + spt1o(n-2)          = 2*pe(n-1) + poex(n-1)
    T3:  spt1o'(n) + spt1o'(n-2)        = -poex'(n-1)
    T4e: be1(n) + be1(n-2)              = pe(n-1) + co(n-1)
    T4o: bo1(n) + bo1(n-2)              = pe(n-1) + ce(n-1)
    """
    p = count_profile
    if identity == "T1":
        if n < 2:
            raise ValueError("T1 holds for n > 1")
        return p(n)["spt1"] + p(n - 1)["spt1"], p(n)["pex"]
    if n < 3:
        raise ValueError(f"{identity} holds for n > 2")
    if identity == "T2":
        lhs = p(n)["spt1o"] + p(n - 2)["spt1o"]
        return lhs, 2 * p(n - 1)["pe"] + p(n - 1)["poex"]
    if identity == "T3":
        lhs = p(n)["spt1o-prime"] + p(n - 2)["spt1o-prime"]
        return lhs, -p(n - 1)["poex-prime"]
    if identity == "T4e":
        return p(n)["be1"] + p(n - 2)["be1"], p(n - 1)["pe"] + p(n - 1)["co"]
    if identity == "T4o":
        return p(n)["bo1"] + p(n - 2)["bo1"], p(n - 1)["pe"] + p(n - 1)["ce"]
    raise ValueError(f"unknown identity {identity!r}")


def derivation_sides(n: int) -> dict[str, tuple[int, int]]:
    """Recombine the even/odd refined identities from the b/c tables.

    The sum of the T4e and T4o identities must reproduce T2 and their
    difference must reproduce T3, using only the refined counts be1,
    bo1, ce, co, and pe.  Returns the two (lhs, rhs) pairs.
    """
    if n < 3:
        raise ValueError("defined for n > 2")
    p = count_profile
    be = p(n)["be1"] + p(n - 2)["be1"]
    bo = p(n)["bo1"] + p(n - 2)["bo1"]
    pe1, ce1, co1 = p(n - 1)["pe"], p(n - 1)["ce"], p(n - 1)["co"]
    return {
        "sum": (be + bo, 2 * pe1 + (ce1 + co1)),
        "difference": (be - bo, co1 - ce1),
    }
