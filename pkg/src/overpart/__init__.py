"""Overpartition families, smallest-part statistics, exact counting,
q-series oracles, and the constructive maps behind five counting
identities."""

from .core import (
    BEK, BOK, CE, CO, FAMILY_IDS, INFINITY, PBAR, PE, PEX, POEX, SPTK, SPTKO,
    CollisionError, Entry, FamilySpec, OverPartition, OverpartitionError,
    ParseError, Stats, is_member, member_given_stats, parse,
    parse_family_token, stats, why_not_member,
)
from .enumeration import (
    POEX_PRIME, SPTKO_PRIME, CountTable, SignedCount, count_family,
    count_many, count_profile, count_table, derivation_sides,
    family_elements, family_members, identity_sides, overpartitions,
    signed_count,
)
from .qseries import Series, cross_check, family_series, part_factor
from .bijections import (
    SOURCE_N, SOURCE_N_MINUS_1, SOURCE_N_MINUS_2, MapTrace,
    PreconditionError, VerificationReport, all_traces, apply_map, inv_t1,
    map_t1, map_t2, map_t3_even, map_t3_odd, map_t4, verify_bijection,
    verify_t3,
)

__version__ = "0.1.0"
