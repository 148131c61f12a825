"""Tables, axiom validation and the basic structure queries."""
import pytest

import qba
from qba.algebra import AXIOM_LABELS, axiom_holds_at
from qba.errors import AlgebraParseError, AlgebraSemanticError

TRIVIAL = """
size 1
names 0
zero 0
one 0
join
0
meet
0
star
0
"""


def names_of(a, elements):
    return sorted(a.names[x] for x in elements)


class TestLoading:
    def test_fixture_4_shape(self, fx):
        a = fx["4"]
        assert a.size == 4
        assert a.names == ("0", "a", "b", "1")
        assert a.zero == 0 and a.one == 3

    def test_flat_fixture_has_equal_constants(self, fx):
        a = fx["F3"]
        assert a.zero == a.one == 0

    def test_wrong_row_count_is_semantic_error(self):
        text = "\n".join([
            "size 4", "names 0 a b 1", "zero 0", "one 1", "join",
            "0 0 1 1", "0 0 1 1", "1 1 1 1",  # one row short
            "meet"] + ["0 0 0 0"] * 4 + ["star", "1 b a 0"])
        with pytest.raises(AlgebraSemanticError, match="dimensions"):
            qba.load_algebra(text)

    def test_wrong_row_width_is_semantic_error(self):
        text = "\n".join([
            "size 4", "names 0 a b 1", "zero 0", "one 1", "join",
            "0 0 1", "0 0 1 1", "1 1 1 1", "1 1 1 1",
            "meet"] + ["0 0 0 0"] * 4 + ["star", "1 b a 0"])
        with pytest.raises(AlgebraSemanticError, match="dimensions"):
            qba.load_algebra(text)

    def test_unknown_name_is_semantic_error(self):
        text = TRIVIAL.replace("zero 0", "zero q")
        with pytest.raises(AlgebraSemanticError, match="unknown name"):
            qba.load_algebra(text)

    def test_duplicate_names_rejected(self):
        text = "size 2\nnames 0 0\nzero 0\none 0\njoin\n0 0\n0 0\nmeet\n0 0\n0 0\nstar\n0 0"
        with pytest.raises(AlgebraSemanticError, match="duplicate"):
            qba.load_algebra(text)

    def test_missing_section_is_parse_error(self):
        with pytest.raises(AlgebraParseError):
            qba.load_algebra("size 1\nnames 0\nzero 0\n")

    def test_bad_keyword_is_parse_error(self):
        with pytest.raises(AlgebraParseError):
            qba.load_algebra(TRIVIAL.replace("join", "vee"))

    def test_trailing_content_is_parse_error(self):
        with pytest.raises(AlgebraParseError, match="trailing"):
            qba.load_algebra(TRIVIAL + "\nstar\n0\n")

    def test_comments_and_blank_lines_ignored(self, fx):
        text = "# header\n\n" + qba.dump_algebra(fx["4"]) + "\n# trailing comment\n"
        assert qba.load_algebra(text) == fx["4"]

    def test_roundtrip_exact(self, fx):
        for a in fx.values():
            assert qba.load_algebra(qba.dump_algebra(a)) == a

    def test_dict_roundtrip(self, fx):
        for a in fx.values():
            assert qba.algebra_from_dict(qba.algebra_to_dict(a)) == a

    def test_trivial_algebra_accepted(self):
        a = qba.load_algebra(TRIVIAL)
        assert a.size == 1
        assert qba.validate(a).passed
        assert qba.is_flat(a)


class TestValidate:
    def test_all_fixtures_pass(self, fx):
        for name, a in fx.items():
            report = qba.validate(a)
            assert report.passed, (name, report.violations)

    def test_mutated_join_cell_fails(self, fx):
        a = fx["4"]
        join = [list(row) for row in a.join]
        join[1][2] = 1  # a v b becomes a
        mutant = qba.FiniteAlgebra(a.names, tuple(map(tuple, join)), a.meet,
                                   a.star, a.zero, a.one)
        report = qba.validate(mutant)
        assert not report.passed
        for label, witness in report.violations:
            assert not axiom_holds_at(mutant, label, witness)

    def test_witnesses_reevaluate_false(self, fx):
        a = fx["4"]
        # scramble the star table so several axioms fail at once
        mutant = qba.FiniteAlgebra(a.names, a.join, a.meet, (1, 0, 2, 3),
                                   a.zero, a.one)
        report = qba.validate(mutant)
        assert not report.passed
        assert len(report.violations) >= 2
        for label, witness in report.violations:
            assert label in AXIOM_LABELS
            assert not axiom_holds_at(mutant, label, witness)

    def test_one_witness_per_axiom(self, fx):
        a = fx["4"]
        mutant = qba.FiniteAlgebra(a.names, a.meet, a.join, a.star,
                                   a.zero, a.one)  # swap join and meet
        report = qba.validate(mutant)
        labels = [label for label, _ in report.violations]
        assert len(labels) == len(set(labels))

    def test_axiom_holds_at_rejects_bad_input(self, fx):
        with pytest.raises(ValueError):
            axiom_holds_at(fx["4"], "QL9", (0,))
        with pytest.raises(ValueError):
            axiom_holds_at(fx["4"], "QL5", (0, 1))


class TestQueries:
    def test_regular_elements(self, fx):
        assert names_of(fx["4"], qba.regular_elements(fx["4"])) == ["0", "1"]
        assert names_of(fx["A"], qba.regular_elements(fx["A"])) == ["0", "1", "a", "f"]
        assert names_of(fx["F3"], qba.regular_elements(fx["F3"])) == ["0"]

    def test_is_flat(self, fx):
        assert qba.is_flat(fx["F3"])
        assert not qba.is_flat(fx["4"])
        assert not qba.is_flat(fx["6"])

    def test_quasi_leq_examples(self, fx):
        a = fx["4"]
        ia, ib = a.index_of("a"), a.index_of("b")
        assert qba.quasi_leq(a, ia, ib)
        # not antisymmetric: a <= 0 and 0 <= a although a != 0
        assert qba.quasi_leq(a, ia, a.zero)
        assert qba.quasi_leq(a, a.zero, ia)

    def test_quasi_leq_reflexive_and_transitive(self, fx):
        for a in fx.values():
            leq = {(x, y) for x in a.elements() for y in a.elements()
                   if qba.quasi_leq(a, x, y)}
            assert all((x, x) in leq for x in a.elements())
            assert all((x, z) in leq
                       for (x, y) in leq for (y2, z) in leq if y == y2)

    def test_quasi_leq_bounds(self, fx):
        for a in fx.values():
            for x in a.elements():
                assert qba.quasi_leq(a, a.zero, x)
                assert qba.quasi_leq(a, x, a.one)

    def test_cloud_examples(self, fx):
        a4, a6, f3 = fx["4"], fx["6"], fx["F3"]
        assert names_of(a4, qba.cloud_of(a4, a4.index_of("a"))) == ["0", "a"]
        assert names_of(a6, qba.cloud_of(a6, a6.index_of("e"))) == ["0", "a", "e"]
        for x in f3.elements():
            assert qba.cloud_of(f3, x) == frozenset(f3.elements())


class TestStructuralInvariants:
    def test_star_is_involution(self, fx):
        for a in fx.values():
            assert all(a.star[a.star[x]] == x for x in a.elements())

    def test_star_swaps_bounds(self, fx):
        for a in fx.values():
            if qba.is_flat(a):
                assert a.star[a.zero] == a.zero
            else:
                assert a.star[a.one] == a.zero
                assert a.star[a.zero] == a.one

    def test_monotonicity(self, fx):
        for a in fx.values():
            pairs = [(x, y) for x in a.elements() for y in a.elements()
                     if qba.quasi_leq(a, x, y)]
            for x, y in pairs:
                for u, v in pairs:
                    assert qba.quasi_leq(a, a.meet[x][u], a.meet[y][v])
                    assert qba.quasi_leq(a, a.join[x][u], a.join[y][v])

    def test_antitonicity(self, fx):
        for a in fx.values():
            for x in a.elements():
                for y in a.elements():
                    if qba.quasi_leq(a, x, y):
                        assert qba.quasi_leq(a, a.star[y], a.star[x])

    def test_clouds_partition_with_unique_regular(self, fx):
        for a in fx.values():
            regs = qba.regular_elements(a)
            clouds = {qba.cloud_of(a, x) for x in a.elements()}
            assert sum(len(c) for c in clouds) == a.size
            for c in clouds:
                assert len(c & regs) == 1

    def test_star_maps_clouds_to_clouds(self, fx):
        for a in fx.values():
            for x in a.elements():
                r = a.join[x][x]
                image = frozenset(a.star[y] for y in qba.cloud_of(a, x))
                assert image == qba.cloud_of(a, a.star[r])
                assert len(image) == len(qba.cloud_of(a, x))

    def test_nonflat_star_has_no_fixed_point(self, fx):
        for a in fx.values():
            if not qba.is_flat(a):
                assert all(a.star[x] != x for x in a.elements())
                for r in qba.regular_elements(a):
                    assert not (qba.cloud_of(a, r)
                                & qba.cloud_of(a, a.star[r]))

    def test_flat_operations_collapse(self, fx):
        for name in ("F3", "F5"):
            a = fx[name]
            assert all(v == a.zero for row in a.join for v in row)
            assert all(v == a.zero for row in a.meet for v in row)
