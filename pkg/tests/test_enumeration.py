"""Exhaustive generation of small algebras and the structure claims."""
import pytest

import qba
from qba.enumeration import (dedupe_up_to_iso, enumerate_all, enumerate_flat,
                             involution_count, iso_signature, verify_structure)
from qba.errors import TooLarge
from qba.quotients import boolean_algebra


def claims(a):
    return dict(verify_structure(a))


class TestInvolutionCount:
    def test_small_values(self):
        assert [involution_count(m) for m in range(8)] == \
            [1, 1, 2, 4, 10, 26, 76, 232]


class TestEnumerateFlat:
    def test_three_elements_two_classes(self, fx):
        report = enumerate_flat(3, up_to_iso=True)
        assert len(report.iso_classes) == 2
        fixed = sorted(sum(1 for x in a.elements() if a.star[x] == x)
                       for a in report.iso_classes)
        assert fixed == [1, 3]
        assert any(qba.find_isomorphism(a, fx["F3"]) is not None
                   for a in report.iso_classes)

    def test_five_elements_three_classes(self):
        assert len(enumerate_flat(5, up_to_iso=True).iso_classes) == 3

    def test_two_elements_only_identity_star(self):
        report = enumerate_flat(2, up_to_iso=True)
        assert len(report.iso_classes) == 1
        (a,) = report.iso_classes
        assert a.star == (0, 1)

    def test_labeled_count_matches_involutions(self):
        for n in range(1, 7):
            report = enumerate_flat(n, up_to_iso=False)
            assert report.total_labeled == involution_count(n - 1)
            assert len(report.iso_classes) == report.total_labeled

    def test_labeled_algebras_validate_and_fix_zero(self):
        for n in range(1, 6):
            for a in enumerate_flat(n, up_to_iso=False).iso_classes:
                assert a.star[0] == 0
                assert qba.validate(a).passed

    def test_star_moving_zero_is_invalid(self):
        # all-zero tables with a star that moves 0 violate the axioms,
        # so restricting the search to involutions fixing 0 loses nothing
        zeros = ((0,) * 3,) * 3
        a = qba.FiniteAlgebra(("0", "x1", "x2"), zeros, zeros, (1, 0, 2), 0, 0)
        assert not qba.validate(a).passed

    def test_no_violations(self):
        for n in range(1, 9):
            assert enumerate_flat(n, up_to_iso=False).violations == ()

    def test_guards(self):
        with pytest.raises(TooLarge):
            enumerate_flat(17)
        with pytest.raises(ValueError):
            enumerate_flat(0)


class TestEnumerateAll:
    def test_two_elements(self, fx):
        report = enumerate_all(2, up_to_iso=True)
        assert len(report.iso_classes) == 2
        kinds = sorted(qba.is_flat(a) for a in report.iso_classes)
        assert kinds == [False, True]
        assert any(qba.find_isomorphism(a, fx["2"]) for a in report.iso_classes
                   if not qba.is_flat(a))

    def test_three_elements_all_flat(self):
        report = enumerate_all(3, up_to_iso=True)
        assert len(report.iso_classes) == 2
        assert all(qba.is_flat(a) for a in report.iso_classes)

    def test_odd_sizes_have_no_nonflat(self):
        for n in (1, 3, 5):
            report = enumerate_all(n, up_to_iso=False)
            assert all(qba.is_flat(a) for a in report.iso_classes)

    def test_four_elements_nonflat_classes(self, fx):
        report = enumerate_all(4, up_to_iso=True)
        nonflat = [a for a in report.iso_classes if not qba.is_flat(a)]
        assert len(nonflat) == 2
        assert any(qba.find_isomorphism(a, fx["4"]) is not None for a in nonflat)
        assert any(qba.find_isomorphism(a, boolean_algebra(2)) is not None
                   for a in nonflat)

    def test_six_elements_contains_fixtures(self, fx):
        report = enumerate_all(6, up_to_iso=True)
        found_6 = any(qba.find_isomorphism(a, fx["6"]) is not None
                      for a in report.iso_classes)
        found_A = any(qba.find_isomorphism(a, fx["A"]) is not None
                      for a in report.iso_classes)
        assert found_6 and found_A

    def test_every_emit_validates(self):
        for n in range(1, 6):
            for a in enumerate_all(n, up_to_iso=False).iso_classes:
                assert qba.validate(a).passed

    def test_representatives_pairwise_non_isomorphic(self):
        for n in range(1, 6):
            reps = enumerate_all(n, up_to_iso=True).iso_classes
            for i, a in enumerate(reps):
                for b in reps[i + 1:]:
                    assert qba.find_isomorphism(a, b) is None

    def test_dedupe_helper(self, fx):
        reps = dedupe_up_to_iso([fx["4"], fx["4bar"], fx["2"]])
        assert len(reps) == 2

    def test_signature_is_isomorphism_invariant(self, fx):
        assert iso_signature(fx["4"]) == iso_signature(fx["4bar"])
        assert iso_signature(fx["4"]) != iso_signature(boolean_algebra(2))

    def test_guard(self):
        with pytest.raises(TooLarge):
            enumerate_all(7)


class TestEmbeddingAcrossEnumeration:
    def test_every_small_algebra_embeds_into_its_quotient_product(self):
        algebras = []
        for n in range(1, 7):
            algebras.extend(enumerate_all(n, up_to_iso=True).iso_classes)
        for n in range(7, 11):
            algebras.extend(enumerate_flat(n, up_to_iso=True).iso_classes)
        for a in algebras:
            emb = qba.embed_into_product(a)  # raises on failure
            assert emb.is_injective

    def test_irreducible_iff_product_of_two_and_flat(self):
        # biconditional in its corrected form: the flat factor has size n/2
        # with any legal star shape; an odd flat factor exists exactly when
        # the size is 2 mod 4 (the size-4 class has no such form)
        for n in (2, 4, 6):
            for a in enumerate_all(n, up_to_iso=True).iso_classes:
                if qba.is_flat(a):
                    continue
                half = n // 2
                factor = qba.make_flat(half, 1 if half % 2 else 2)
                product = qba.direct_product(boolean_algebra(1), factor)
                is_product = qba.find_isomorphism(a, product) is not None
                assert qba.is_irreducible(a) == is_product


class TestVerifyStructure:
    def test_fixture_A(self, fx):
        result = claims(fx["A"])
        assert all(result.values())
        assert "nonflat-regular-even" in result
        assert "irreducible-product-form" not in result  # A is not irreducible

    def test_fixture_F5(self, fx):
        result = claims(fx["F5"])
        assert all(result.values())
        assert result["flat-regulars-trivial"]
        assert result["flat-cloud-zero-whole"]

    def test_fixture_6(self, fx):
        result = claims(fx["6"])
        assert all(result.values())
        assert result["irreducible-product-form"]
        assert result["irreducible-odd-flat-form"]  # size 6 = 4*1 + 2

    def test_fixture_4_product_form(self, fx):
        # size 4 is 0 mod 4: isomorphic to 2 x (two-element flat), but to no
        # product of 2 with an odd flat algebra
        result = claims(fx["4"])
        assert all(result.values())
        assert result["irreducible-product-form"]
        assert "irreducible-odd-flat-form" not in result
        for k in range(3):
            assert qba.find_isomorphism(fx["4"], qba.make_irreducible(k)) is None

    def test_all_fixtures_pass(self, fx):
        for name, a in fx.items():
            assert all(ok for _, ok in verify_structure(a)), name
