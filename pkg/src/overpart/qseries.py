"""Truncated formal power series in q with exact integer coefficients,
used as an oracle that recomputes every family count independently of
enumeration.

Each allowed part value j contributes the factor

    (1 + z*q^j) / (1 - z*q^j)  =  1 + 2*sum_{m>=1} z^m q^(jm)

to a generating product: the numerator is the optional overlined copy,
the denominator the plain copies, and z = +1 or -1 weights every copy
contributed by that value.  Family series are assembled from these
factors exactly as the family definitions read; evaluating at z = -1
turns the two signed families (SPTKO, POEX) into their even-minus-odd
refinements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import (
    BEK, BOK, CE, CO, PBAR, PE, PEX, POEX, SPTK, SPTKO,
    FamilySpec,
)
from .enumeration import count_profile, profile_tokens

__all__ = ["Series", "part_factor", "family_series", "cross_check"]


@dataclass(frozen=True)
class Series:
    """Integer coefficients of q^0 .. q^order; arithmetic truncates."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if len(self.coeffs) != self.order + 1:
            raise ValueError("need exactly order+1 coefficients")

    @classmethod
    def from_list(cls, coeffs, order: int) -> "Series":
        cs = list(coeffs)[: order + 1]
        cs += [0] * (order + 1 - len(cs))
        return cls(order, tuple(cs))

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.from_list([1], order)

    def coefficient(self, n: int) -> int:
        if not 0 <= n <= self.order:
            raise ValueError(f"coefficient {n} outside truncation order {self.order}")
        return self.coeffs[n]

    def _check_order(self, other: "Series"):
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} != {other.order}")

    def __add__(self, other: "Series") -> "Series":
        self._check_order(other)
        return Series(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Series") -> "Series":
        self._check_order(other)
        return Series(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "Series") -> "Series":
        self._check_order(other)
        n = self.order
        out = [0] * (n + 1)
        b = other.coeffs
        for i, ai in enumerate(self.coeffs):
            if ai:
                for j in range(n - i + 1):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
        return Series(n, tuple(out))


def part_factor(j: int, z: int, order: int) -> Series:
    """Truncation of (1 + z*q^j)/(1 - z*q^j) = 1 + 2*sum z^m q^(jm)."""
    if j < 1:
        raise ValueError("part value must be positive")
    if z not in (1, -1):
        raise ValueError("z must be +1 or -1")
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    zm = 1
    for e in range(j, order + 1, j):
        zm *= z
        coeffs[e] = 2 * zm
    return Series(order, tuple(coeffs))


@lru_cache(maxsize=16)
def _suffix_products(order: int, z: int, parity: str) -> tuple[Series, ...]:
    """prods[s] = product of part_factor(j, z, order) over j > s with j
    restricted by parity ("all", "odd", or "even")."""
    prods = [Series.one(order)] * (order + 1)
    acc = Series.one(order)
    for s in range(order - 1, -1, -1):
        j = s + 1
        if parity == "all" or (j & 1) == (1 if parity == "odd" else 0):
            acc = acc * part_factor(j, z, order)
        prods[s] = acc
    return tuple(prods)


def _shifted_sum(suffix_for, k: int, order: int) -> Series:
    # sum over s >= 1 of q^(k*s) * suffix_for(s); terms with k*s > order vanish
    out = [0] * (order + 1)
    for s in range(1, order // k + 1):
        base = k * s
        ps = suffix_for(s).coeffs
        for i in range(order - base + 1):
            c = ps[i]
            if c:
                out[base + i] += c
        # the k plain copies of s carry no z weight: only parts above s
        # (SPTKO) or all parts (POEX) are signed
    return Series(order, tuple(out))


def _halved(plus: Series, minus: Series, even_half: bool) -> Series:
    out = []
    for a, b in zip(plus.coeffs, minus.coeffs):
        tot = a + b if even_half else a - b
        if tot % 2:
            raise ArithmeticError("signed decomposition produced an odd total")
        out.append(tot // 2)
    return Series(plus.order, tuple(out))


def family_series(fam: FamilySpec, order: int, z: int = 1) -> Series:
    """Generating series of the family, truncated at ``order``.

    With z=+1 the q^n coefficient is the family count at n.  With z=-1
    (allowed only for SPTKO and POEX) it is the signed count: the
    even-refinement minus the odd-refinement of the family's parity
    statistic.
    """
    if z not in (1, -1):
        raise ValueError("z must be +1 or -1")
    if z == -1 and fam.id not in (SPTKO, POEX):
        raise ValueError(f"family {fam.token!r} has no signed statistic; z=-1 invalid")
    fid = fam.id
    if fid == PBAR:
        return _suffix_products(order, z, "all")[0]
    if fid == PE:
        return _suffix_products(order, z, "even")[0]
    if fid == PEX:
        # value 1 may appear only overlined; every value >= 2 is free
        only_overlined_one = Series.from_list([1, z], order)
        return only_overlined_one * _suffix_products(order, z, "all")[1]
    if fid == POEX:
        only_overlined_one = Series.from_list([1, z], order)
        return only_overlined_one * _suffix_products(order, z, "odd")[1]
    if fid == SPTK:
        suffix = _suffix_products(order, z, "all")
        return _shifted_sum(lambda s: suffix[s], fam.k, order)
    if fid == SPTKO:
        # parts above s must have the opposite parity to s
        odd = _suffix_products(order, z, "odd")
        even = _suffix_products(order, z, "even")
        return _shifted_sum(lambda s: odd[s] if s % 2 == 0 else even[s], fam.k, order)
    if fid in (BEK, BOK):
        base = FamilySpec(SPTKO, fam.k)
        return _halved(family_series(base, order, 1), family_series(base, order, -1),
                       even_half=(fid == BEK))
    # CE / CO
    base = FamilySpec(POEX)
    return _halved(family_series(base, order, 1), family_series(base, order, -1),
                   even_half=(fid == CE))


def series_for_token(token: str, order: int, default_k: int = 1) -> Series:
    """Series for a command-line family token; ``-prime`` variants
    evaluate the underlying family at z = -1."""
    from .core import parse_family_token

    fam, signed = parse_family_token(token, default_k)
    return family_series(fam, order, -1 if signed else 1)


def cross_check(n_max: int, k_max: int = 1, order: int | None = None):
    """Compare enumeration against series coefficients for every family
    and signed variant with n <= n_max and k <= k_max.

    Returns a list of mismatches ``(token, n, enumerated, coefficient)``;
    empty means the two oracles agree everywhere.
    """
    if order is None:
        order = max(n_max, 1)
    if order < n_max:
        raise ValueError("order must be at least n_max")
    series = {tok: series_for_token(tok, order, 1) for tok in profile_tokens(k_max)}
    mismatches = []
    for n in range(n_max + 1):
        prof = count_profile(n, k_max)
        for tok, ser in series.items():
            if ser.coeffs[n] != prof[tok]:
                mismatches.append((tok, n, prof[tok], ser.coeffs[n]))
    return mismatches
