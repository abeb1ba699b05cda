"""Overpartition data model: canonical run-length form, text literals,
part statistics, and membership tests for the counted families.

An overpartition is a partition in which the first occurrence of each
part size may additionally be overlined.  The canonical form used
throughout is a run-length encoding: a sequence of ``Entry(value,
plain, over)`` triples with values strictly decreasing, ``plain + over
>= 1``, and ``over`` either 0 or 1 (at most one overlined copy per
value).  The empty sequence is the unique overpartition of 0.

Throughout, ``s`` denotes the smallest non-overlined ("plain") part
value of an overpartition, and ``s2`` the smallest part value strictly
greater than ``s``.  Ten families are selected by :class:`FamilySpec`:

=========  ==========================================================
``PBAR``   every overpartition
``SPTK``   the smallest plain part appears exactly k times (as plain
           copies) and every overlined part exceeds it
``SPTKO``  SPTK, and every part value other than s has parity
           opposite to s
``PE``     all part values even
``PEX``    no plain 1's
``POEX``   all part values odd, no plain 1's
``BEK``    SPTKO with an even number of parts greater than s
``BOK``    SPTKO with an odd number of parts greater than s
``CE``     POEX with an even number of parts
``CO``     POEX with an odd number of parts
=========  ==========================================================

Text literals are comma-separated tokens, largest part first, with a
``o`` suffix marking the overlined copy: ``"4o,2o,2,1"``.  The empty
overpartition is written ``"[]"``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple

__all__ = [
    "INFINITY",
    "PBAR", "SPTK", "SPTKO", "PE", "PEX", "POEX", "BEK", "BOK", "CE", "CO",
    "FAMILY_IDS", "PARAMETRIC_FAMILIES",
    "OverpartitionError", "ParseError", "CollisionError",
    "Entry", "OverPartition", "Stats", "FamilySpec",
    "parse", "stats", "is_member", "member_given_stats", "why_not_member",
    "parse_family_token",
]

INFINITY = math.inf

PBAR = "PBAR"
SPTK = "SPTK"
SPTKO = "SPTKO"
PE = "PE"
PEX = "PEX"
POEX = "POEX"
BEK = "BEK"
BOK = "BOK"
CE = "CE"
CO = "CO"

FAMILY_IDS = (PBAR, SPTK, SPTKO, PE, PEX, POEX, BEK, BOK, CE, CO)
# families whose definition uses the multiplicity parameter k
PARAMETRIC_FAMILIES = (SPTK, SPTKO, BEK, BOK)


class OverpartitionError(ValueError):
    """Structural violation of the overpartition invariants."""


class ParseError(OverpartitionError):
    """Malformed overpartition literal."""


class CollisionError(OverpartitionError):
    """Attempt to overline a value that is already overlined."""


class Entry(NamedTuple):
    """One run of equal parts: `plain` ordinary copies plus an optional
    overlined copy (`over` is 0 or 1)."""

    value: int
    plain: int
    over: int

    @property
    def copies(self) -> int:
        return self.plain + self.over


_TOKEN = re.compile(r"(\d+)(o?)\Z")


class OverPartition(tuple):
    """An overpartition in canonical run-length form.

    Instances are tuples of :class:`Entry` with strictly decreasing
    values, so they are immutable, hashable, and cheaply comparable.
    Construct from entries (validated), from expanded parts with
    :meth:`from_parts`, or from a literal with :func:`parse`.
    """

    __slots__ = ()

    def __new__(cls, entries=()):
        items = []
        prev = None
        for e in entries:
            v, p, o = e
            v, p, o = int(v), int(p), int(o)
            if v < 1:
                raise OverpartitionError(f"part value must be positive, got {v}")
            if p < 0:
                raise OverpartitionError(f"negative plain count for value {v}")
            if o not in (0, 1):
                raise OverpartitionError(f"overline flag for value {v} must be 0 or 1")
            if p + o < 1:
                raise OverpartitionError(f"empty entry for value {v}")
            if prev is not None and v >= prev:
                raise OverpartitionError("entry values must be strictly decreasing")
            prev = v
            items.append(Entry(v, p, o))
        return tuple.__new__(cls, items)

    @classmethod
    def from_parts(cls, parts) -> "OverPartition":
        """Build from expanded ``(value, overlined)`` pairs, in any order."""
        acc: dict[int, list[int]] = {}
        for value, overlined in parts:
            slot = acc.setdefault(int(value), [0, 0])
            if overlined:
                if slot[1]:
                    raise OverpartitionError(f"duplicate overlined copy of {value}")
                slot[1] = 1
            else:
                slot[0] += 1
        entries = [(v, p, o) for v, (p, o) in sorted(acc.items(), reverse=True)]
        return cls(entries)

    def parts(self) -> Iterator[tuple[int, bool]]:
        """Expanded parts, largest first; the overlined copy of a value
        precedes its plain copies."""
        for v, p, o in self:
            if o:
                yield v, True
            for _ in range(p):
                yield v, False

    def to_text(self) -> str:
        """Canonical literal; inverse of :func:`parse`."""
        if not self:
            return "[]"
        return ",".join(f"{v}o" if ov else str(v) for v, ov in self.parts())

    @property
    def weight(self) -> int:
        return sum(v * (p + o) for v, p, o in self)

    @property
    def num_parts(self) -> int:
        return sum(p + o for _, p, o in self)

    def entry_at(self, value: int) -> Entry | None:
        for e in self:
            if e.value == value:
                return e
            if e.value < value:
                return None
        return None

    # ---- entry surgery (all return new instances) -------------------

    def add_plain(self, value: int) -> "OverPartition":
        if value < 1:
            raise OverpartitionError(f"part value must be positive, got {value}")
        items = list(self)
        for i, (v, p, o) in enumerate(items):
            if v == value:
                items[i] = (v, p + 1, o)
                break
            if v < value:
                items.insert(i, (value, 1, 0))
                break
        else:
            items.append((value, 1, 0))
        return OverPartition(items)

    def remove_plain(self, value: int) -> "OverPartition":
        items = list(self)
        for i, (v, p, o) in enumerate(items):
            if v == value:
                if p < 1:
                    raise OverpartitionError(f"no plain copy of {value} to remove")
                if p + o == 1:
                    del items[i]
                else:
                    items[i] = (v, p - 1, o)
                return OverPartition(items)
        raise OverpartitionError(f"no part of value {value}")

    def add_overline(self, value: int) -> "OverPartition":
        if value < 1:
            raise OverpartitionError(f"part value must be positive, got {value}")
        items = list(self)
        for i, (v, p, o) in enumerate(items):
            if v == value:
                if o:
                    raise CollisionError(f"value {value} is already overlined")
                items[i] = (v, p, 1)
                break
            if v < value:
                items.insert(i, (value, 0, 1))
                break
        else:
            items.append((value, 0, 1))
        return OverPartition(items)

    def remove_overline(self, value: int) -> "OverPartition":
        items = list(self)
        for i, (v, p, o) in enumerate(items):
            if v == value:
                if not o:
                    raise OverpartitionError(f"no overlined copy of {value} to remove")
                if p == 0:
                    del items[i]
                else:
                    items[i] = (v, p, 0)
                return OverPartition(items)
        raise OverpartitionError(f"no part of value {value}")

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"OverPartition({self.to_text()!r})"


def parse(text: str) -> OverPartition:
    """Parse an overpartition literal.

    Grammar: ``[]`` for the empty overpartition, otherwise
    comma-separated tokens ``<digits>`` or ``<digits>o`` (overlined),
    whitespace around tokens ignored, any part order accepted.
    """
    stripped = text.strip()
    if stripped == "[]":
        return OverPartition(())
    if not stripped:
        raise ParseError("empty literal (use '[]' for the empty overpartition)")
    pairs = []
    for token in stripped.split(","):
        token = token.strip()
        m = _TOKEN.match(token)
        if not m:
            raise ParseError(f"malformed token {token!r}")
        value = int(m.group(1))
        if value == 0:
            raise ParseError("part value must be positive")
        pairs.append((value, m.group(2) == "o"))
    try:
        return OverPartition.from_parts(pairs)
    except OverpartitionError as exc:
        raise ParseError(str(exc)) from None


class Stats(NamedTuple):
    """Derived statistics of one overpartition.

    ``s`` is the smallest plain part value (None when every part is
    overlined); ``s_multiplicity`` its number of plain copies.  ``s2``
    is the smallest part value strictly greater than s (INFINITY when
    none, None when s is absent) and ``s2_overlined`` says whether the
    s2-valued entry carries an overlined copy.  ``parts_above_s``
    counts part copies with value greater than s; when s is absent
    every part counts.  The two signs are -1 to the power of
    ``parts_above_s`` and of ``num_parts``.
    """

    weight: int
    num_parts: int
    s: int | None
    s_multiplicity: int
    s2: int | float | None
    s2_overlined: bool | None
    parts_above_s: int
    sign_spt: int
    sign_parts: int


def stats(pi: OverPartition) -> Stats:
    """Compute all :class:`Stats` fields in one pass."""
    weight = 0
    num = 0
    s_idx = -1
    for i, (v, p, o) in enumerate(pi):
        c = p + o
        weight += v * c
        num += c
        if p:
            s_idx = i  # entries are descending, so the last hit is smallest
    sign_parts = -1 if num & 1 else 1
    if s_idx < 0:
        return Stats(weight, num, None, 0, None, None, num, sign_parts, sign_parts)
    above = 0
    for i in range(s_idx):
        _, p, o = pi[i]
        above += p + o
    if s_idx > 0:
        e2 = pi[s_idx - 1]
        s2: int | float = e2.value
        s2_over: bool | None = bool(e2.over)
    else:
        s2, s2_over = INFINITY, None
    entry = pi[s_idx]
    sign_spt = -1 if above & 1 else 1
    return Stats(weight, num, entry.value, entry.plain, s2, s2_over, above, sign_spt, sign_parts)


_TOKEN_BY_ID = {PBAR: "pbar", PE: "pe", PEX: "pex", POEX: "poex", CE: "ce", CO: "co"}


@dataclass(frozen=True, slots=True)
class FamilySpec:
    """One of the ten families, with the multiplicity parameter ``k``
    (only meaningful for SPTK, SPTKO, BEK, BOK)."""

    id: str
    k: int = 1

    def __post_init__(self):
        if self.id not in FAMILY_IDS:
            raise ValueError(f"unknown family id {self.id!r}")
        if self.k < 1:
            raise ValueError("k must be a positive integer")

    @property
    def token(self) -> str:
        """Short name used by the command line and table headers."""
        if self.id == SPTK:
            return f"spt{self.k}"
        if self.id == SPTKO:
            return f"spt{self.k}o"
        if self.id == BEK:
            return f"be{self.k}"
        if self.id == BOK:
            return f"bo{self.k}"
        return _TOKEN_BY_ID[self.id]


_SPT_TOKEN = re.compile(r"spt(\d*|k)(o?)\Z")
_B_TOKEN = re.compile(r"(be|bo)(\d*)\Z")


def parse_family_token(token: str, default_k: int = 1) -> tuple[FamilySpec, bool]:
    """Resolve a command-line family token to ``(FamilySpec, signed)``.

    Accepted forms: ``pbar pe pex poex ce co``, ``spt2``/``sptk``
    (k embedded or defaulted), ``spt2o``/``sptko``, ``be2 bo2``, and
    the signed variants ``spt2o-prime``/``sptko-prime`` and
    ``poex-prime``.
    """
    tok = token.strip().lower()
    signed = tok.endswith("-prime")
    if signed:
        tok = tok[: -len("-prime")]
    if tok in _TOKEN_BY_ID.values():
        fam = FamilySpec({v: k for k, v in _TOKEN_BY_ID.items()}[tok])
    else:
        m = _SPT_TOKEN.match(tok)
        b = _B_TOKEN.match(tok)
        if m:
            digits = m.group(1)
            k = default_k if digits in ("", "k") else int(digits)
            fam = FamilySpec(SPTKO if m.group(2) else SPTK, k)
        elif b:
            k = int(b.group(2)) if b.group(2) else default_k
            fam = FamilySpec(BEK if b.group(1) == "be" else BOK, k)
        else:
            raise ValueError(f"unknown family {token!r}")
    if signed and fam.id not in (SPTKO, POEX):
        raise ValueError(f"family {fam.token!r} has no signed (-prime) variant")
    return fam, signed


def member_given_stats(pi: OverPartition, st: Stats, fam: FamilySpec) -> bool:
    """Membership test reusing precomputed statistics (hot path)."""
    fid = fam.id
    if fid == PBAR:
        return True
    if fid == PE:
        return all(v % 2 == 0 for v, _, _ in pi)
    if fid == PEX:
        return not pi or pi[-1][0] != 1 or pi[-1][1] == 0
    if fid in (POEX, CE, CO):
        if pi and pi[-1][0] == 1 and pi[-1][1]:
            return False
        if any(not v & 1 for v, _, _ in pi):
            return False
        if fid == CE:
            return st.num_parts % 2 == 0
        if fid == CO:
            return st.num_parts % 2 == 1
        return True
    # smallest-plain-part families
    if st.s is None or st.s_multiplicity != fam.k:
        return False
    last = pi[-1]
    if last[0] != st.s or last[2]:
        # an entry below s, or an overlined copy of s itself, breaks
        # "every overlined part is greater than s"
        return False
    if fid == SPTK:
        return True
    par = st.s & 1
    if any((v & 1) == par for v, _, _ in pi[:-1]):
        return False
    if fid == SPTKO:
        return True
    if fid == BEK:
        return st.parts_above_s % 2 == 0
    return st.parts_above_s % 2 == 1  # BOK


def is_member(pi: OverPartition, fam: FamilySpec) -> bool:
    return member_given_stats(pi, stats(pi), fam)


def why_not_member(pi: OverPartition, fam: FamilySpec) -> str | None:
    """Explain the first violated membership clause, or None if member.

    Slower than :func:`is_member`; intended for error messages.
    """
    st = stats(pi)
    fid = fam.id
    if fid == PBAR:
        return None
    if fid == PE:
        for v, _, _ in pi:
            if v & 1:
                return f"part {v} is odd; every part must be even"
        return None
    if fid in (PEX, POEX, CE, CO):
        if pi and pi[-1][0] == 1 and pi[-1][1]:
            return "contains a plain (non-overlined) 1"
        if fid != PEX:
            for v, _, _ in pi:
                if not v & 1:
                    return f"part {v} is even; every part must be odd"
            if fid == CE and st.num_parts % 2 != 0:
                return f"number of parts is {st.num_parts} (odd); must be even"
            if fid == CO and st.num_parts % 2 != 1:
                return f"number of parts is {st.num_parts} (even); must be odd"
        return None
    if st.s is None:
        return "every part is overlined, so no smallest plain part exists"
    if st.s_multiplicity != fam.k:
        return (f"smallest plain part {st.s} appears {st.s_multiplicity} "
                f"time(s); must appear exactly {fam.k}")
    last = pi[-1]
    if last[2] and last[0] == st.s:
        return f"the smallest plain part {st.s} also carries an overline"
    if last[0] != st.s:
        return (f"overlined part {last[0]} is not greater than the smallest "
                f"plain part {st.s}")
    if fid == SPTK:
        return None
    par = st.s & 1
    for v, _, _ in pi[:-1]:
        if (v & 1) == par:
            return f"part {v} has the same parity as the smallest plain part {st.s}"
    if fid == SPTKO:
        return None
    if fid == BEK and st.parts_above_s % 2 != 0:
        return f"{st.parts_above_s} parts above {st.s} (odd); must be even"
    if fid == BOK and st.parts_above_s % 2 != 1:
        return f"{st.parts_above_s} parts above {st.s} (even); must be odd"
    return None
