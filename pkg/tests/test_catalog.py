import itertools

import numpy as np
import pytest

from biq import algebra as al
from biq import catalog as ca
from biq import freeness as fr


class TestSuTori:
    def test_small_rank_matches_unique_form(self):
        for variant in (1, 2):
            tor = ca.su_tori(3, 1, variant)
            assert ca.lattice_equivalent(tor.weights, ca.corollary_su3_weights())

    def test_n5_l2_free(self):
        tor = ca.su_tori(5, 2, 1)
        assert fr.is_free_exact(tor.weights, fr.MOD_CENTER).free

    def test_rewritten_forms_generate_same_subtorus(self):
        for n in (4, 6):
            for variant in (1, 2):
                orig = ca.su_tori(n, n // 2, variant).weights
                rew = ca.su_tori_rewritten(n, variant).weights
                assert ca.lattice_equal(orig, rew)

    def test_all_parameters_free_mod_center(self):
        for n in range(3, 8):
            for l in range(1, n // 2 + 1):
                for variant in (1, 2):
                    w = ca.su_tori(n, l, variant).weights
                    assert fr.is_free_exact(w, fr.MOD_CENTER).free, (n, l, variant)

    def test_variants_equivalent_exactly_for_l_one(self):
        assert ca.lattice_equivalent(
            ca.su_tori(5, 1, 1).weights, ca.su_tori(5, 1, 2).weights
        )
        assert not ca.lattice_equivalent(
            ca.su_tori(5, 2, 1).weights, ca.su_tori(5, 2, 2).weights
        )

    def test_parameter_range_enforced(self):
        with pytest.raises(ValueError):
            ca.su_tori(5, 3, 1)


class TestSpTori:
    def test_rank_two_variants_coincide(self):
        w1 = ca.sp_tori(2, 1).weights
        w2 = ca.sp_tori(2, 2).weights
        assert ca.lattice_equivalent(w1, w2)
        assert ca.lattice_equivalent(w2, ca.corollary_sp2_weights())

    def test_rank_three_variants_differ(self):
        assert not ca.lattice_equivalent(
            ca.sp_tori(3, 1).weights, ca.sp_tori(3, 2).weights
        )

    def test_all_parameters_free_mod_center(self):
        for n in range(2, 6):
            for variant in (1, 2):
                w = ca.sp_tori(n, variant).weights
                assert fr.is_free_exact(w, fr.MOD_CENTER).free, (n, variant)


class TestSpin6Extra:
    def test_free_mod_center_only(self):
        tor = ca.spin6_extra()
        assert fr.is_free_exact(tor.weights, fr.MOD_CENTER).free
        strict = fr.is_free_exact(tor.weights, fr.STRICT)
        assert not strict.free  # the half turn acts as the central -I

    def test_quotient_dimension(self):
        tor = ca.spin6_extra()
        assert tor.group.dim - tor.weights.k == 15 - 3 == 12

    def test_inequivalent_to_other_forms(self):
        w3 = ca.spin6_extra().weights
        for variant in (1, 2):
            other = ca.p_torus_weights(3, variant, al.so(6))
            assert not ca.lattice_equivalent(w3, other)


class TestTables:
    def test_row_counts(self):
        assert len(ca.table_entries("A")) == 8
        assert len(ca.table_entries("B")) == 9

    def test_row8_contents(self):
        row = next(e for e in ca.table_entries("A") if e.row == 8)
        assert row.group_name == "Sp(n)"
        assert row.torus_name == "P_2^n"
        assert "Sp(1)" in row.u1_description
        assert row.quotient == "HP^{n-1}"

    def test_row10_contents(self):
        row = next(e for e in ca.table_entries("B") if e.row == 10)
        assert row.group_name == "SU(2n)"
        assert row.torus_name == "S_{2,n}"
        assert "SU(n)SU(n)" in row.u2_description

    def test_row14_parameter_note(self):
        row = next(e for e in ca.table_entries("B") if e.row == 14)
        assert "odd" in row.parameter_note
        assert "missing" in row.note

    def test_unknown_table_rejected(self):
        with pytest.raises(ValueError):
            ca.table_entries("C")

    def test_exceptional_groups_recorded_not_verified(self):
        assert ca.EXCEPTIONAL_GROUPS["verified"] == "recorded"
        assert "G2" in ca.EXCEPTIONAL_GROUPS["groups"]


class TestVerifyEntry:
    def test_row1_dimension_arithmetic(self):
        row = next(e for e in ca.table_entries("A") if e.row == 1)
        rep = ca.verify_entry(row, 5)
        assert rep["passed"]
        names = dict((n, ok) for n, ok, _ in rep["checks"])
        assert names["quotient_dimension"]  # 24 - 16 = 8
        assert names["circle_normalizes_right_factor"]

    def test_row6_quotient_dimension(self):
        row = next(e for e in ca.table_entries("A") if e.row == 6)
        rep = ca.verify_entry(row, 3)
        assert rep["passed"]  # 15 - 11 = 4

    def test_row3_torus_only(self):
        row = next(e for e in ca.table_entries("A") if e.row == 3)
        rep = ca.verify_entry(row)
        assert rep["verified"] == "torus-only"
        assert rep["passed"]

    def test_every_row_passes_at_smallest_parameter(self):
        for table in ("A", "B"):
            for entry in ca.table_entries(table):
                rep = ca.verify_entry(entry)
                assert rep["passed"], (entry.row, rep["checks"])


class TestEschenburgEnumeration:
    def test_flags_agree_with_checkers(self):
        records = ca.enumerate_eschenburg(1)
        assert records
        for rec in records:
            assert rec.free == fr.eschenburg_free(rec.p, rec.q)
            if rec.free:
                # the record's flag is the class property: the interval
                # condition in either orientation of the pair
                expected = fr.eschenburg_positive_flag(
                    rec.p, rec.q
                ) or fr.eschenburg_positive_flag(rec.q, rec.p)
                assert rec.positive_flag == expected
            else:
                assert not rec.positive_flag
        assert any(r.free for r in records)

    def test_positively_curvable_class_keeps_flag_through_canonicalization(self):
        records = {(r.p, r.q): r for r in ca.enumerate_eschenburg(3)}
        key = ca.eschenburg_canonical((1, 1, 1), (0, 0, 3))
        assert records[key].free
        assert records[key].positive_flag

    def test_trivial_parameters_present_and_not_free(self):
        records = ca.enumerate_eschenburg(1)
        key = ca.eschenburg_canonical((1, 1, 1), (1, 1, 1))
        rec = next(r for r in records if (r.p, r.q) == key)
        assert not rec.free

    def test_normal_form_circle_subactions_appear(self):
        # circles inside the free 2-torus show up as free records
        records = {(r.p, r.q): r for r in ca.enumerate_eschenburg(2)}
        key = ca.eschenburg_canonical((1, 0, 1), (0, 0, 2))
        assert key in records
        assert records[key].free

    def test_canonicalization_is_involutive(self, rng):
        for _ in range(100):
            p = tuple(int(x) for x in rng.integers(-4, 5, size=3))
            q3 = sum(p) - int(rng.integers(-4, 5)) - int(rng.integers(-4, 5))
            q = (int(rng.integers(-4, 5)), int(rng.integers(-4, 5)), 0)
            q = (q[0], q[1], sum(p) - q[0] - q[1])
            cp, cq = ca.eschenburg_canonical(p, q)
            assert (cp, cq) == ca.eschenburg_canonical(cp, cq)
            assert sum(cp) == sum(cq)

    def test_quotient_dimension_is_seven(self):
        rec = ca.enumerate_eschenburg(1)[0]
        assert rec.quotient_dim == 7


class TestBazaikinEnumeration:
    def test_all_ones_present_and_free(self):
        records = {r.p: r for r in ca.enumerate_bazaikin(1)}
        assert records[(1, 1, 1, 1, 1)].free

    def test_one_three_flag(self):
        records = {r.p: r for r in ca.enumerate_bazaikin(3)}
        assert records[(3, 1, 1, 1, 1)].free == fr.bazaikin_free((3, 1, 1, 1, 1))

    def test_count_matches_bruteforce(self):
        records = ca.enumerate_bazaikin(3)
        # independent count: descending odd 5-tuples modulo global sign
        vals = [x for x in range(-3, 4) if x % 2]
        seen = set()
        for p in itertools.product(vals, repeat=5):
            a = tuple(sorted(p, reverse=True))
            b = tuple(sorted((-x for x in p), reverse=True))
            seen.add(max(a, b))
        assert len(records) == len(seen)

    def test_quotient_dimension_is_thirteen(self):
        assert ca.enumerate_bazaikin(1)[0].quotient_dim == 13


class TestScans:
    def test_sp2_scan_uniqueness(self):
        res = ca.scan_two_torus_sp2(bound=2)
        assert res.matches_normal_form
        assert res.free_pairs > 0
        assert len(res.two_sided_classes) == 1

    def test_su3_scan_uniqueness_small(self):
        res = ca.scan_two_torus_su3(bound=2)
        assert res.matches_normal_form
        assert res.free_pairs > 0
        assert len(res.two_sided_classes) == 1
