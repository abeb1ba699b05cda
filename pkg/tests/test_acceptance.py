"""Acceptance suite: every criterion is an exact integer check and
prints one PASS/FAIL line (run with ``pytest -s`` to see them)."""

import pytest

from overpart.core import (
    BEK, BOK, CE, CO, PBAR, PE, PEX, POEX, SPTK, SPTKO,
    FamilySpec, stats,
)
from overpart.bijections import (
    SOURCE_N, SOURCE_N_MINUS_1, SOURCE_N_MINUS_2,
    map_t1, map_t2, map_t3_even, map_t3_odd, map_t4,
    verify_bijection, verify_t3,
)
from overpart.enumeration import (
    IDENTITY_START, count_profile, derivation_sides, family_elements,
    identity_sides,
)
from overpart.qseries import cross_check

N_IDENTITY = 30
N_AUDIT = 25
K_MAX = 4

_SPT1 = FamilySpec(SPTK, 1)
_SPT1O = FamilySpec(SPTKO, 1)
_BE1 = FamilySpec(BEK, 1)
_BO1 = FamilySpec(BOK, 1)


def _report(name, ok, detail=""):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}"
          + (f" ({detail})" if detail else ""))
    return ok


def test_criterion_1_reference_counts():
    expected = [
        ("spt1", 1, 6, 9), ("spt1", 1, 5, 7), ("pex", None, 6, 16),
        ("spt1o", 1, 7, 13), ("spt1o", 1, 5, 7), ("pe", None, 6, 8),
        ("poex", None, 6, 4),
        ("poex", None, 8, 6), ("ce", None, 8, 6), ("co", None, 8, 0),
        ("be1", 1, 9, 9), ("be1", 1, 7, 5), ("pe", None, 8, 14),
        ("pbar", None, 4, 14),
    ]
    failures = []
    for token, k, n, want in expected:
        got = count_profile(n, k or 1)[token]
        if got != want:
            failures.append((token, n, got, want))
    ok = _report("C1 worked-example counts", not failures, f"{len(expected)} values")
    assert ok, failures


def test_criterion_2_identities_by_enumeration():
    failures = []
    for name, start in IDENTITY_START.items():
        for n in range(start, N_IDENTITY + 1):
            lhs, rhs = identity_sides(name, n)
            if lhs != rhs:
                failures.append((name, n, lhs, rhs))
    ok = _report("C2 identities n<=30", not failures)
    assert ok, failures


def test_criterion_3_dual_oracle_agreement():
    mismatches = cross_check(N_IDENTITY, K_MAX, N_IDENTITY + 1)
    ok = _report("C3 enumeration vs series n<=30 k<=4", not mismatches)
    assert ok, mismatches[:10]


def test_criterion_4_bijectivity_audits():
    failures = []
    for n in range(2, N_AUDIT + 1):
        r = verify_bijection("T1", n)
        if not r.ok:
            failures.append(("T1", n, r.problems, len(r.contract_violations)))
    for theorem in ("T2", "T4e", "T4o"):
        for n in range(3, N_AUDIT + 1):
            r = verify_bijection(theorem, n)
            if not r.ok:
                failures.append((theorem, n, r.problems,
                                 len(r.contract_violations)))
    ok = _report("C4 bijection audits n<=25 (T1 incl. inverse)", not failures)
    assert ok, failures


def test_criterion_5_t3_structural_audit():
    failures = []
    for n in range(3, N_AUDIT + 1):
        r = verify_t3(n)
        if not r.ok:
            failures.append((n, r.problems, len(r.contract_violations)))
    r9 = verify_t3(9)
    blocks_ok = r9.blocks == {"odd-domain": 14, "odd-image": 14,
                              "even-domain": 6, "poex": 6}
    if not blocks_ok:
        failures.append(("blocks", r9.blocks))
    ok = _report("C5 sign-reversing structure n<=25", not failures,
                 "n=9 blocks 14/14 and 6/6")
    assert ok, failures


def test_criterion_6_derivation_from_refined_tables():
    failures = []
    for n in range(3, N_IDENTITY + 1):
        d = derivation_sides(n)
        t2 = identity_sides("T2", n)
        t3 = identity_sides("T3", n)
        if d["sum"][0] != d["sum"][1] or d["sum"] != t2:
            failures.append(("sum", n, d["sum"], t2))
        if (d["difference"][0] != d["difference"][1]
                or d["difference"][0] != t3[0]):
            failures.append(("difference", n, d["difference"], t3))
    ok = _report("C6 refined-table recombination n<=30", not failures)
    assert ok, failures


def _branch_conditions(theorem, tag, st):
    """Independent branch predicates; exactly one must hold per input."""
    if theorem == "T1":
        if tag == SOURCE_N:
            return [st.s > 1, st.s == 1]
        return [st.s2 - st.s > 1, st.s2 - st.s == 1]
    if theorem == "T2":
        if tag == SOURCE_N:
            return [st.s == 1, st.s > 1 and st.s % 2 == 0,
                    st.s > 1 and st.s % 2 == 1]
        return [st.s % 2 == 0, st.s % 2 == 1]
    # T4 variants
    if tag == SOURCE_N:
        return [st.s % 2 == 0, st.s == 1, st.s > 1 and st.s % 2 == 1]
    return [st.s % 2 == 0, st.s % 2 == 1]


def test_criterion_7_branch_contracts():
    failures = []
    checked = 0

    def walk(theorem, domain, apply_fn):
        nonlocal checked
        for tag, fam, w in domain:
            for pi in family_elements(fam, w):
                checked += 1
                st = stats(pi)
                conds = _branch_conditions(theorem, tag, st)
                if sum(map(bool, conds)) != 1:
                    failures.append((theorem, str(pi), tag, "branch overlap"))
                try:
                    apply_fn(pi, tag)
                except Exception as exc:
                    failures.append((theorem, str(pi), tag, repr(exc)))

    for n in range(2, N_AUDIT + 1):
        walk("T1", [(SOURCE_N, _SPT1, n), (SOURCE_N_MINUS_1, _SPT1, n - 1)],
             lambda pi, tag, n=n: map_t1(pi, tag, n))
    for n in range(3, N_AUDIT + 1):
        walk("T2", [(SOURCE_N, _SPT1O, n), (SOURCE_N_MINUS_2, _SPT1O, n - 2)],
             lambda pi, tag, n=n: map_t2(pi, tag, n))
        walk("T4e", [(SOURCE_N, _BE1, n), (SOURCE_N_MINUS_2, _BE1, n - 2)],
             lambda pi, tag, n=n: map_t4(pi, tag, n, "E"))
        walk("T4o", [(SOURCE_N, _BO1, n), (SOURCE_N_MINUS_2, _BO1, n - 2)],
             lambda pi, tag, n=n: map_t4(pi, tag, n, "O"))
        # T3 branch split: s=1 sources take the matching move, even-s
        # elements the even map; odd s>1 elements of the n summand and
        # odd-s elements of the n-2 summand are images, not sources
        for tag, w in ((SOURCE_N, n), (SOURCE_N_MINUS_2, n - 2)):
            for pi in family_elements(_SPT1O, w):
                checked += 1
                st = stats(pi)
                try:
                    if tag == SOURCE_N and st.s == 1:
                        tr = map_t3_odd(pi, n)
                        if not tr.sign_flip:
                            failures.append(("T3", str(pi), tag, "no sign flip"))
                    elif st.s % 2 == 0:
                        tr = map_t3_even(pi, tag, n)
                        if not tr.sign_flip:
                            failures.append(("T3", str(pi), tag, "no sign flip"))
                except Exception as exc:
                    failures.append(("T3", str(pi), tag, repr(exc)))

    # membership/weight/sign contracts per trace are enforced by the
    # audits; re-assert zero violations here
    for n in range(2, N_AUDIT + 1):
        if verify_bijection("T1", n).contract_violations:
            failures.append(("T1", n, "violations"))
    for n in range(3, N_AUDIT + 1):
        for theorem in ("T2", "T4e", "T4o"):
            if verify_bijection(theorem, n).contract_violations:
                failures.append((theorem, n, "violations"))
        if verify_t3(n).contract_violations:
            failures.append(("T3", n, "violations"))

    ok = _report("C7 branch contracts n<=25", not failures,
                 f"{checked} applications")
    assert ok, failures[:10]
