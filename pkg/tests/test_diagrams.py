from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import brute_force_syt, hook_product_count
from strategies import diagrams, rationals
from threshold_cumulants import (
    InterlacingSequence,
    YoungDiagram,
    cauchy_transform,
    corner_profile,
    count_syt,
    falling_cauchy,
    g_plus,
    perturb,
    transition_measure,
)
from threshold_cumulants.diagrams import partitions, partitions_up_to
from threshold_cumulants.errors import InterlacingViolation, PoleError
from threshold_cumulants.rational import format_rational, parse_rational

F = Fraction


class TestRational:
    def test_parse_forms(self):
        assert parse_rational("3/6") == F(1, 2)
        assert parse_rational("-0.125") == F(-1, 8)
        assert parse_rational("0.1") == F(1, 10)
        assert parse_rational(7) == 7

    def test_parse_rejects(self):
        for bad in ["", "1/0", "abc", "1//2"]:
            with pytest.raises(ValueError):
                parse_rational(bad)
        with pytest.raises(TypeError):
            parse_rational(0.5)

    def test_format_always_has_denominator(self):
        assert format_rational(F(2)) == "2/1"
        assert format_rational(F(-6, 4)) == "-3/2"

    @given(rationals(-1000, 1000, 97))
    def test_round_trip(self, q):
        assert parse_rational(format_rational(q)) == q


class TestYoungDiagram:
    def test_parse_and_validation(self):
        assert YoungDiagram.parse("4,2,2,2").rows == (4, 2, 2, 2)
        assert YoungDiagram.parse("").size == 0
        with pytest.raises(ValueError):
            YoungDiagram((1, 2))
        with pytest.raises(ValueError):
            YoungDiagram((2, 0))

    def test_rectangle(self):
        assert YoungDiagram.rectangle(2, 3).rows == (3, 3)

    def test_partition_counts(self):
        # p(n) for n = 0..10
        assert [sum(1 for _ in partitions(n)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
        assert len(partitions_up_to(4)) == 1 + 1 + 2 + 3 + 5

    @given(diagrams())
    def test_conjugate_involution(self, lam):
        assert lam.conjugate().conjugate() == lam
        assert lam.conjugate().size == lam.size


class TestCornerProfile:
    def test_small_cases(self):
        assert corner_profile(YoungDiagram(())).concave == (0,)
        assert corner_profile(YoungDiagram(())).convex == ()
        p = corner_profile(YoungDiagram((1,)))
        assert (p.concave, p.convex) == ((-1, 1), (0,))

    def test_4222(self):
        # traced by hand: addable boxes at (1,5), (2,3), (5,1); removable at (1,4), (4,2)
        p = corner_profile(YoungDiagram((4, 2, 2, 2)))
        assert p.concave == (-4, 1, 4)
        assert p.convex == (-2, 3)

    def test_4432_has_the_seven_corner_profile(self):
        p = corner_profile(YoungDiagram((4, 4, 3, 2)))
        assert p.concave == (-4, -1, 1, 4)
        assert p.convex == (-2, 0, 2)

    def test_rectangle(self):
        p = corner_profile(YoungDiagram.rectangle(3, 5))
        assert (p.concave, p.convex) == ((-3, 5), (2,))

    def test_interlacing_exhaustive(self):
        for lam in partitions_up_to(10):
            p = corner_profile(lam)
            merged = [p.concave[0]]
            for y, x in zip(p.convex, p.concave[1:]):
                merged += [y, x]
            assert all(a < b for a, b in zip(merged, merged[1:]))
            assert len(p.convex) == len(p.concave) - 1

    def test_invalid_interlacing(self):
        with pytest.raises(InterlacingViolation):
            InterlacingSequence((0, 1), (2,))
        with pytest.raises(InterlacingViolation):
            InterlacingSequence((0, 2), ())


class TestCauchyTransform:
    def test_values(self):
        one = corner_profile(YoungDiagram((1,)))
        assert cauchy_transform(one, 2) == F(2, 3)
        assert cauchy_transform(one, 0) == 0
        assert cauchy_transform(corner_profile(YoungDiagram((4, 4, 3, 2))), 5) == F(35, 72)

    def test_pole(self):
        with pytest.raises(PoleError):
            cauchy_transform(corner_profile(YoungDiagram((1,))), 1)

    @given(diagrams(), rationals(-12, 12, 7))
    def test_partial_fractions(self, lam, z):
        mu = transition_measure(lam)
        if z in mu.atoms:
            return
        assert cauchy_transform(corner_profile(lam), z) == sum(m / (z - x) for x, m in mu.items())


class TestTransitionMeasure:
    def test_examples(self):
        mu = transition_measure(YoungDiagram((1,)))
        assert (mu.atoms, mu.masses) == ((-1, 1), (F(1, 2), F(1, 2)))
        assert transition_measure(YoungDiagram(())).masses == (1,)
        mu = transition_measure(YoungDiagram((4, 2, 2, 2)))
        assert dict(mu.items()) == {-4: F(7, 20), 1: F(2, 5), 4: F(1, 4)}

    @pytest.mark.parametrize("p,q", [(1, 1), (2, 3), (5, 2), (6, 6)])
    def test_rectangle(self, p, q):
        mu = transition_measure(YoungDiagram.rectangle(p, q))
        assert dict(mu.items()) == {-p: F(q, p + q), q: F(p, p + q)}

    def test_masses_exhaustive(self):
        for lam in partitions_up_to(10):
            mu = transition_measure(lam)
            assert all(m > 0 for m in mu.masses)
            assert sum(mu.masses) == 1

    def test_masses_match_syt_ratios(self):
        # Plancherel transition probability: f^{lam+box} / ((n+1) f^lam)
        for lam in partitions_up_to(7):
            mu = transition_measure(lam)
            for (r, c) in lam.addable_boxes():
                rows = list(lam.rows) + [0]
                rows[r - 1] += 1
                bigger = YoungDiagram(tuple(v for v in rows if v))
                assert mu.mass(c - r) == F(count_syt(bigger), (lam.size + 1) * count_syt(lam))

    def test_cdf(self):
        mu = transition_measure(YoungDiagram((4, 2, 2, 2)))
        assert mu.cdf(F(1, 2)) == F(7, 20)
        assert mu.cdf(-5) == 0 and mu.cdf(4) == 1


class TestFallingAndGPlus:
    def test_falling(self):
        one = corner_profile(YoungDiagram((1,)))
        assert falling_cauchy(one, 7, 0) == 1
        assert falling_cauchy(one, 3, 2) == F(1, 4)
        with pytest.raises(PoleError):
            falling_cauchy(one, 1, 1)

    def test_g_plus(self):
        one = corner_profile(YoungDiagram((1,)))
        assert g_plus(one, 0) == F(1, 2)
        assert g_plus(corner_profile(YoungDiagram(())), 0) == 1
        assert g_plus(corner_profile(YoungDiagram.rectangle(1, 1)), 0) == g_plus(one, 0)

    @given(diagrams(), rationals())
    def test_g_plus_in_unit_interval(self, lam, u0):
        assert 0 < g_plus(corner_profile(lam), u0) <= 1


class TestPerturb:
    def test_examples(self):
        p = corner_profile(YoungDiagram((2, 1)))
        assert perturb(p, 0) == p
        q = perturb(p, F(1, 10))
        assert q.concave == (-2, F(1, 10), F(11, 5))
        assert q.convex == (F(-9, 10), F(6, 5))

    def test_large_eps_checked(self):
        with pytest.raises(InterlacingViolation):
            perturb(corner_profile(YoungDiagram((2, 1))), -10)
        # positive shifts only move later corners further right
        assert perturb(corner_profile(YoungDiagram((2, 1))), 10).concave == (-2, 10, 22)

    @given(diagrams(), st.fractions(min_value=0, max_value=3, max_denominator=50))
    def test_gaps_preserved(self, lam, eps):
        p = corner_profile(lam)
        q = perturb(p, eps)
        assert [x - y for x, y in zip(p.concave[1:], p.convex)] == [x - y for x, y in zip(q.concave[1:], q.convex)]

    def test_generic(self):
        p = corner_profile(YoungDiagram((2, 1)))
        assert not p.is_generic()
        assert perturb(p, F(1, 7)).is_generic()


class TestCountSyt:
    def test_examples(self):
        assert count_syt(YoungDiagram((1,))) == 1
        assert count_syt(YoungDiagram((2, 1))) == 2
        assert count_syt(YoungDiagram((2, 2))) == 2
        assert count_syt(YoungDiagram.rectangle(3, 3)) == 42

    def test_against_enumeration(self):
        for lam in partitions_up_to(6, include_empty=False):
            assert count_syt(lam) == len(brute_force_syt(lam.rows)) == hook_product_count(lam.rows)
