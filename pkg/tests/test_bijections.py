import pytest

from overpart.core import FamilySpec, SPTKO, parse, stats
from overpart.bijections import (
    SOURCE_N, SOURCE_N_MINUS_1, SOURCE_N_MINUS_2,
    PreconditionError, apply_map, inv_t1, map_t1, map_t2, map_t3_even,
    map_t3_odd, map_t4, verify_bijection, verify_t3,
)
from overpart.enumeration import family_elements


class TestMapT1:
    @pytest.mark.parametrize("literal,tag,branch,image", [
        ("5,1", SOURCE_N, "f2", "5,1o"),
        ("5", SOURCE_N_MINUS_1, "f3", "6o"),
        ("3,2", SOURCE_N_MINUS_1, "f4", "3,3"),
        ("4,2", SOURCE_N, "f1", "4,2"),
    ])
    def test_branches(self, literal, tag, branch, image):
        tr = map_t1(parse(literal), tag, 6)
        assert tr.branch == branch
        assert str(tr.output) == image
        assert tr.output.weight == 6
        assert tr.target_tag == "PEX"

    def test_membership_precondition(self):
        with pytest.raises(PreconditionError):
            map_t1(parse("2,2,2"), SOURCE_N, 6)

    def test_weight_precondition(self):
        with pytest.raises(PreconditionError):
            map_t1(parse("4,2"), SOURCE_N, 7)

    def test_bad_source(self):
        with pytest.raises(PreconditionError):
            map_t1(parse("4,2"), SOURCE_N_MINUS_2, 6)


class TestInvT1:
    @pytest.mark.parametrize("literal,pre,tag", [
        ("6o", "5", SOURCE_N_MINUS_1),
        ("2,2,2", "2,2,1", SOURCE_N_MINUS_1),
        ("4,2", "4,2", SOURCE_N),
        ("5,1o", "5,1", SOURCE_N),
        ("3o,3", "3o,2", SOURCE_N_MINUS_1),
    ])
    def test_classification(self, literal, pre, tag):
        assert inv_t1(parse(literal), 6) == (parse(pre), tag)

    def test_non_member_rejected(self):
        with pytest.raises(PreconditionError):
            inv_t1(parse("5,1"), 6)

    @pytest.mark.parametrize("n", range(2, 13))
    def test_round_trip_both_ways(self, n):
        spt1 = FamilySpec("SPTK", 1)
        for tag, w in ((SOURCE_N, n), (SOURCE_N_MINUS_1, n - 1)):
            for pi in family_elements(spt1, w):
                tr = map_t1(pi, tag, n)
                assert inv_t1(tr.output, n) == (pi, tag)
        for mu in family_elements(FamilySpec("PEX"), n):
            pre, tag = inv_t1(mu, n)
            assert map_t1(pre, tag, n).output == mu


class TestMapT2:
    @pytest.mark.parametrize("literal,tag,branch,image,target", [
        ("6,1", SOURCE_N, "A", "6", "PE-copy1"),
        ("5,2", SOURCE_N, "B", "5,1o", "POEX"),
        ("7", SOURCE_N, "C", "6o", "PE-copy2"),
        ("3,2", SOURCE_N_MINUS_2, "D", "3,3", "POEX"),
        ("2,2,1", SOURCE_N_MINUS_2, "E", "2,2,2", "PE-copy2"),
    ])
    def test_branches(self, literal, tag, branch, image, target):
        tr = map_t2(parse(literal), tag, 7)
        assert (tr.branch, str(tr.output), tr.target_tag) == (branch, image, target)
        assert tr.output.weight == 6

    def test_membership_precondition(self):
        # a 5 next to a 1 shares its parity, so not in the domain
        with pytest.raises(PreconditionError):
            map_t2(parse("5,1,1"), SOURCE_N, 7)


class TestMapT3:
    @pytest.mark.parametrize("literal,branch,image,weight", [
        ("8,1", "odd-plain", "7", 7),
        ("6,2o,1", "odd-overlined", "6,3", 9),
        ("8o,1", "odd-overlined", "9", 9),
        ("6,2,1", "odd-plain", "6,1", 7),
    ])
    def test_matching_branches(self, literal, branch, image, weight):
        tr = map_t3_odd(parse(literal), 9)
        assert (tr.branch, str(tr.output)) == (branch, image)
        assert tr.output.weight == weight
        assert tr.sign_flip

    def test_both_copies_lowers_the_plain_one(self):
        tr = map_t3_odd(parse("4,2o,2,1"), 9)
        assert str(tr.output) == "4,2o,1"
        assert tr.branch == "odd-plain"
        assert tr.ambiguous_s2
        assert tr.sign_flip

    def test_unambiguous_not_flagged(self):
        assert not map_t3_odd(parse("8,1"), 9).ambiguous_s2

    def test_requires_smallest_plain_one(self):
        with pytest.raises(PreconditionError):
            map_t3_odd(parse("7,2"), 9)

    def test_lone_one_rejected(self):
        with pytest.raises(PreconditionError):
            map_t3_odd(parse("1"), 1)

    @pytest.mark.parametrize("literal,tag,image", [
        ("7,2", SOURCE_N, "7,1o"),
        ("5,4", SOURCE_N, "5,3o"),
        ("5,2", SOURCE_N_MINUS_2, "5,3"),
    ])
    def test_even_branches(self, literal, tag, image):
        tr = map_t3_even(parse(literal), tag, 9)
        assert str(tr.output) == image
        assert tr.output.weight == 8
        assert tr.target_tag == "POEX"
        assert tr.sign_flip

    def test_even_rejects_odd_s(self):
        with pytest.raises(PreconditionError):
            map_t3_even(parse("6,3"), SOURCE_N, 9)

    def test_sign_contract_is_opposition(self):
        # number-of-parts sign of the image against parts-above-s sign
        # of the source
        tr = map_t3_even(parse("7,2"), SOURCE_N, 9)
        assert stats(tr.output).sign_parts == -stats(tr.input).sign_spt


class TestMapT4:
    @pytest.mark.parametrize("literal,tag,n,variant,branch,image,target", [
        ("9", SOURCE_N, 9, "E", "CaseII-n", "8o", "PE"),
        ("6,2,1", SOURCE_N, 9, "E", "CaseII-s1", "6,2", "PE"),
        ("4,2,1", SOURCE_N_MINUS_2, 9, "E", "CaseII-n-2", "4,2,2", "PE"),
        ("7,2", SOURCE_N, 9, "O", "CaseI-n", "7,1o", "CE"),
        ("4", SOURCE_N, 4, "E", "CaseI-n", "3o", "CO"),
    ])
    def test_branches(self, literal, tag, n, variant, branch, image, target):
        tr = map_t4(parse(literal), tag, n, variant)
        assert (tr.branch, str(tr.output), tr.target_tag) == (branch, image, target)
        assert tr.output.weight == n - 1

    def test_parity_refinement_precondition(self):
        # (8,1) has one part above s, so it sits in the odd refinement
        with pytest.raises(PreconditionError):
            map_t4(parse("8,1"), SOURCE_N, 9, "E")
        tr = map_t4(parse("8,1"), SOURCE_N, 9, "O")
        assert str(tr.output) == "8"

    def test_bad_variant(self):
        with pytest.raises(PreconditionError):
            map_t4(parse("9"), SOURCE_N, 9, "X")


class TestApplyMap:
    def test_dispatch(self):
        assert apply_map("T1", parse("5,1"), 6, SOURCE_N).branch == "f2"
        assert apply_map("T3", parse("8,1"), 9).branch == "odd-plain"
        assert apply_map("T3", parse("7,2"), 9).branch == "even-n"
        assert apply_map("T3", parse("5,2"), 9, SOURCE_N_MINUS_2).branch == "even-n-2"
        assert apply_map("T4e", parse("9"), 9).theorem == "T4e"

    def test_unknown(self):
        with pytest.raises(PreconditionError):
            apply_map("T9", parse("5,1"), 6)


class TestTrace:
    def test_json_dict(self):
        tr = map_t2(parse("5,2"), SOURCE_N, 7)
        d = tr.to_json_dict()
        assert d == {
            "theorem": "T2", "sourceTag": "N", "branch": "B",
            "input": "5,2", "output": "5,1o", "targetTag": "POEX",
            "signFlip": True,
        }
        assert parse(d["output"]) == tr.output

    def test_ambiguity_flag_serialized(self):
        d = map_t3_odd(parse("4,2o,2,1"), 9).to_json_dict()
        assert d["ambiguousS2"] is True


class TestAudits:
    def test_t1_at_6(self):
        r = verify_bijection("T1", 6)
        assert (r.domain_size, r.codomain_size) == (16, 16)
        assert r.injective and r.surjective and r.ok

    def test_t2_at_7(self):
        r = verify_bijection("T2", 7)
        assert r.domain_size == 20
        assert r.blocks["codomain:PE-copy1"] == 8
        assert r.blocks["codomain:PE-copy2"] == 8
        assert r.blocks["codomain:POEX"] == 4
        assert r.ok

    def test_t4e_at_9(self):
        r = verify_bijection("T4e", 9)
        assert (r.domain_size, r.codomain_size) == (14, 14)
        assert r.blocks["codomain:CO"] == 0
        assert r.ok

    def test_t4o_at_9(self):
        r = verify_bijection("T4o", 9)
        assert r.blocks["codomain:CE"] == 6
        assert r.ok

    def test_t3_at_9_blocks(self):
        r = verify_t3(9)
        assert r.blocks == {"odd-domain": 14, "odd-image": 14,
                            "even-domain": 6, "poex": 6}
        assert r.ok

    def test_t3_at_3(self):
        assert verify_t3(3).ok

    def test_small_ranges(self):
        for n in range(2, 14):
            assert verify_bijection("T1", n).ok, n
        for n in range(3, 14):
            for th in ("T2", "T4e", "T4o"):
                assert verify_bijection(th, n).ok, (th, n)
            assert verify_t3(n).ok, n

    def test_range_validation(self):
        with pytest.raises(ValueError):
            verify_bijection("T1", 1)
        with pytest.raises(ValueError):
            verify_bijection("T2", 2)
        with pytest.raises(ValueError):
            verify_bijection("T3", 5)
        with pytest.raises(ValueError):
            verify_t3(2)


class TestWeightContracts:
    def test_t3_matching_weights(self):
        # image weight depends on the branch: lowered plain copy loses
        # two, promoted overlined copy keeps the weight
        spto = FamilySpec(SPTKO, 1)
        for n in range(3, 12):
            for pi in family_elements(spto, n):
                if stats(pi).s != 1:
                    continue
                tr = map_t3_odd(pi, n)
                expect = n - 2 if tr.branch == "odd-plain" else n
                assert tr.output.weight == expect

    def test_output_weights(self):
        for n in range(3, 10):
            spto = FamilySpec(SPTKO, 1)
            for pi in family_elements(spto, n):
                assert map_t2(pi, SOURCE_N, n).output.weight == n - 1
