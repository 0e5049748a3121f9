#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest

from groups.permgroup import symmetric_group, commuting_pairs
from groups.fpgroups import (Word, Presentation, Homomorphism, TransitiveAction, word_evaluate, count_homs,
                             enumerate_homs, orbit_stabilizer_action, parse_word, parse_presentation,
                             builtin_presentation, integers, integer_lattice, free_group, cyclic_presentation,
                             trivial_presentation)
from utils.errors import BoundExceededError, DomainError, InputParseError
from tests.conftest import perm


class TestHomCounts:
    def test_trivial_group_has_one_hom(self, s3):
        assert count_homs(trivial_presentation(), s3) == 1

    def test_integers_map_anywhere(self, s3):
        assert count_homs(integers(), s3) == 6

    def test_lattice_counts_commuting_pairs(self, s3):
        assert count_homs(integer_lattice(), s3) == len(commuting_pairs(s3)) == 18

    def test_free_group(self, s3):
        assert count_homs(free_group(2), s3) == 36

    def test_cyclic_group_counts_solutions(self, s3):
        # x^2 = 1 в S_3: тождественная и три транспозиции
        assert count_homs(cyclic_presentation(2), s3) == 4
        assert count_homs(cyclic_presentation(3), s3) == 3

    def test_work_bound(self):
        with pytest.raises(BoundExceededError):
            count_homs(free_group(2), symmetric_group(4), bound=100)

    def test_enumeration_is_deterministic(self, s3):
        first = [h.to_dict() for h in enumerate_homs(integer_lattice(), s3)]
        second = [h.to_dict() for h in enumerate_homs(integer_lattice(), s3)]
        assert first == second


def test_homomorphism_checks_relators():
    with pytest.raises(DomainError):
        Homomorphism(integer_lattice(), 3, (perm(1, 0, 2), perm(0, 2, 1)))


def test_word_evaluate_commutator_is_trivial_for_commuting_images():
    a, b = Word.generator(0), Word.generator(1)
    commutator = a * b * a.inverse() * b.inverse()
    x, y = perm(1, 0, 2, 3), perm(0, 1, 3, 2)
    assert word_evaluate(commutator, (x, y)).is_identity()
    assert word_evaluate(Word.generator(0, 4), (perm(1, 2, 3, 0),)).is_identity()


class TestParsing:
    def test_parse_word_with_powers_and_inverses(self):
        word = parse_word("a^2B", ["a", "b"])
        assert word.letters == ((0, 1), (0, 1), (1, -1))

    def test_parse_presentation_matches_builtin(self):
        parsed = parse_presentation({"generators": ["a", "b"], "relators": ["abAB"]})
        assert parsed.relators == integer_lattice().relators

    @pytest.mark.parametrize("name,rank", [("trivial", 0), ("Z", 1), ("ZxZ", 2), ("F2", 2), ("F3", 3), ("C5", 1)])
    def test_builtins(self, name, rank):
        assert builtin_presentation(name).generator_count == rank

    def test_unknown_letter(self):
        with pytest.raises(InputParseError):
            parse_word("ac", ["a", "b"])

    def test_unknown_builtin(self):
        with pytest.raises(InputParseError):
            builtin_presentation("C13")


class TestOrbitStabilizer:
    def test_restriction_relabels_orbit(self):
        phi = Homomorphism(integers(), 5, (perm(0, 3, 2, 4, 1),))
        action = orbit_stabilizer_action(phi, (1, 3, 4))
        assert action.degree == 3
        assert action.relabeling == (1, 3, 4)
        # 1 -> 3 -> 4 -> 1 в новой нумерации 0 -> 1 -> 2 -> 0
        assert action.action.images[0].images == (1, 2, 0)

    def test_basepoint_is_relabeled(self):
        phi = Homomorphism(integers(), 3, (perm(1, 2, 0),))
        assert orbit_stabilizer_action(phi, (0, 1, 2), basepoint=2).basepoint == 2

    def test_rejects_non_orbit(self):
        phi = Homomorphism(integers(), 3, (perm(1, 0, 2),))
        with pytest.raises(DomainError):
            orbit_stabilizer_action(phi, (0, 2))

    def test_transitive_action_requires_single_orbit(self):
        with pytest.raises(DomainError):
            TransitiveAction(Homomorphism(integers(), 2, (perm(0, 1),)))


def test_presentation_rejects_out_of_range_relator():
    with pytest.raises(DomainError):
        Presentation(1, (Word.generator(1),))
