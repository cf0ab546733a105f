import json
import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import assume, given, strategies as st

from oracles import frak_T_recursive, moments_from_cumulants_recursive, uniform_cumulants
from strategies import diagrams, half_integers, rationals
from threshold_cumulants import YoungDiagram, corner_profile, g_plus, perturb, transition_measure
from threshold_cumulants.cumulants import (
    SetPartition,
    cauchy_determinant,
    cumulant_bound_check,
    cumulant_caterpillar_formula,
    cumulant_report,
    cumulant_tree_formula,
    cumulants_to_moments,
    determinant,
    frak_C,
    frak_T,
    moment_interlacing,
    moments_to_cumulants,
    multispine_beta,
    regularized_moment_limit_check,
    restricted_growth_strings,
    set_partitions,
    theta,
    theta_via_multispines,
)
from threshold_cumulants.diagrams import partitions_up_to
from threshold_cumulants.errors import GenericityViolation, SubsetSumZero, ZeroDenominator
from threshold_cumulants.growth import moment_oracle

F = Fraction


class TestTheta:
    def test_examples(self):
        assert theta([7], [3]) == 1
        assert theta([3, 0], [1, 1]) == F(9, 8)
        assert theta([5, 0], [2, 1]) == F(10, 9)
        with pytest.raises(ZeroDenominator):
            theta([1, 0], [1, 1])

    def test_multispine_examples(self):
        assert theta_via_multispines([4], [3]) == 1
        assert multispine_beta([(1,)], [3]) == 1
        assert theta_via_multispines([3, 0], [1, 1]) == F(9, 8)
        with pytest.raises(SubsetSumZero):
            theta_via_multispines([3, 0], [1, -1])

    @given(
        st.integers(1, 4).flatmap(
            lambda n: st.tuples(
                st.lists(rationals(-20, 20, 5), min_size=n, max_size=n, unique=True),
                st.lists(st.integers(1, 5), min_size=n, max_size=n),
            )
        )
    )
    def test_decomposition(self, xa):
        x, a = xa
        try:
            expected = theta(x, a)
            got = theta_via_multispines(x, a)
        except ZeroDenominator:
            assume(False)
        assert got == expected


class TestDeterminants:
    def test_examples(self):
        assert cauchy_determinant([2], [0]) == F(1, 2)
        x, z = [3, 1], [0, -1]
        assert cauchy_determinant(x, z) == determinant([[F(1, xi - zj) for zj in z] for xi in x])

    def test_elimination(self):
        assert determinant([[1, 2], [3, 4]]) == -2
        assert determinant([[0, 1], [1, 0]]) == -1
        assert determinant([[1, 2], [2, 4]]) == 0

    def test_random(self):
        rng = random.Random(11)
        for _ in range(50):
            n = rng.randint(1, 5)
            pool = rng.sample(range(-60, 60), 2 * n)
            x = [F(v, rng.randint(1, 4)) for v in pool[:n]]
            z = [F(v, 5) + F(1, 7) for v in pool[n:]]
            assert cauchy_determinant(x, z) == determinant([[1 / (xi - zj) for zj in z] for xi in x])


class TestTreeFormula:
    def test_single_box(self):
        assert [cumulant_tree_formula(YoungDiagram((1,)), 0, n) for n in range(1, 7)] == uniform_cumulants(6)

    @pytest.mark.parametrize("p,q", [(1, 1), (1, 4), (3, 2), (5, 5)])
    def test_rectangles(self, p, q):
        lam = YoungDiagram.rectangle(p, q)
        for u0 in (F(-p) + F(1, 2), F(0), F(q) - F(1, 3)):
            assert cumulant_tree_formula(lam, u0, 1) == F(q, p + q)
            assert cumulant_tree_formula(lam, u0, 2) == F(q * p, (p + q) ** 2 * (p + q + 1))

    @given(diagrams(max_rows=4, max_len=4), half_integers)
    def test_first_two_cumulants(self, lam, u0):
        k1 = cumulant_tree_formula(lam, u0, 1)
        assert k1 == transition_measure(lam).cdf(u0)
        assert 0 <= k1 <= 1
        assert cumulant_tree_formula(lam, u0, 2) >= 0

    @given(diagrams(max_rows=3, max_len=4), st.integers(-6, 6))
    def test_integer_u0_right_continuity(self, lam, u0):
        for n in (1, 2, 3):
            assert cumulant_tree_formula(lam, u0, n) == cumulant_tree_formula(lam, F(u0) + F(1, 2), n)

    def test_tails(self):
        lam = YoungDiagram((3, 1))
        atoms = transition_measure(lam).atoms
        for n in (1, 2, 3, 4):
            assert cumulant_tree_formula(lam, atoms[0] - F(1, 2), n) == 0
        moments = cumulants_to_moments([cumulant_tree_formula(lam, atoms[-1], n) for n in (1, 2, 3, 4)])
        assert moments == [1, 1, 1, 1]

    def test_4222(self):
        lam = YoungDiagram((4, 2, 2, 2))
        kappas = [cumulant_tree_formula(lam, F(1, 2), n) for n in (1, 2, 3, 4)]
        assert kappas[0] == F(7, 20)
        assert cumulants_to_moments(kappas) == [moment_oracle(lam, F(1, 2), n) for n in (1, 2, 3, 4)]

    def test_order_validation(self):
        with pytest.raises(ValueError):
            cumulant_tree_formula(YoungDiagram((1,)), 0, 0)


class TestCaterpillarFormula:
    def test_matches_trees_on_generic_profiles(self):
        for lam in partitions_up_to(4, include_empty=False):
            prof = perturb(corner_profile(lam), F(1, 7))
            for u0 in (F(-1, 2), F(1, 2), F(3, 2)):
                for n in (1, 2, 3):
                    assert cumulant_caterpillar_formula(prof, u0, n) == cumulant_tree_formula(prof, u0, n)

    def test_non_generic_raises(self):
        with pytest.raises(ZeroDenominator):
            cumulant_caterpillar_formula(corner_profile(YoungDiagram((2, 1))), F(1, 2), 3)

    def test_second_order_closed_form(self):
        # n = 2: black-red caterpillar (x2 any atom) minus the black-black one (x2 small)
        prof = perturb(corner_profile(YoungDiagram((3, 1))), F(1, 9))
        mu = dict(transition_measure(prof).items())
        u0 = F(1, 2)
        small = [x for x in mu if x <= u0]
        direct = sum(mu[a] * mu[b] / (b - a + 1) for a in small for b in mu) - sum(
            mu[a] * mu[b] / (b - a + 1) for a in small for b in small
        )
        assert cumulant_caterpillar_formula(prof, u0, 2) == direct
        assert cumulant_tree_formula(prof, u0, 2) == direct


class TestFrak:
    def test_base_cases(self):
        assert frak_T([0], 0) == -1 and frak_T([1], 0) == 0
        assert frak_C([0], 0) == -1 and frak_C([1], 0) == 0
        assert frak_T([-3, 1, 0], F(1, 2)) == 0

    @given(st.lists(rationals(-8, 8, 9), min_size=1, max_size=6), rationals(-4, 4, 3))
    def test_recurrence(self, x, u0):
        try:
            value = frak_T(x, u0)
        except ZeroDenominator:
            assume(False)
        assert value == frak_T_recursive(x, u0)

    @given(st.lists(rationals(-8, 8, 13), min_size=1, max_size=5), rationals(-4, 4, 3))
    def test_caterpillars_equal_trees(self, x, u0):
        try:
            c = frak_C(x, u0)
        except ZeroDenominator:
            assume(False)
        assert c == frak_T(x, u0)


class TestInterlacingMoments:
    def test_first_moment(self):
        prof = perturb(corner_profile(YoungDiagram((2, 1))), F(1, 10))
        assert moment_interlacing(prof, F(1, 2), 1) == transition_measure(prof).cdf(F(1, 2))

    def test_non_generic(self):
        with pytest.raises(GenericityViolation):
            moment_interlacing(corner_profile(YoungDiagram((1,))), 0, 2)

    def test_single_box_limit(self):
        one = corner_profile(YoungDiagram((1,)))
        gaps = [abs(moment_interlacing(perturb(one, F(1, 10**k)), 0, 2) - F(1, 3)) for k in (1, 2, 3)]
        assert gaps[0] > gaps[1] > gaps[2]

    @pytest.mark.parametrize("shape", [(1,), (2, 1), (2, 2)])
    @pytest.mark.parametrize("u0", [F(-1, 2), F(1, 2)])
    def test_regularization(self, shape, u0):
        for n in (1, 2, 3):
            report = regularized_moment_limit_check(shape, u0, n, [F(1, 10), F(1, 100), F(1, 1000)])
            assert report.passed, report

    def test_regularization_exact_case(self):
        # every perturbed atom of (1) stays below 3/2, so the moments never move
        report = regularized_moment_limit_check((1,), F(3, 2), 2, [F(1, 10), F(1, 100)])
        assert report.gaps == (0, 0) and report.passed

    def test_regularization_rejects(self):
        with pytest.raises(ValueError):
            regularized_moment_limit_check((1,), 0, 2, [F(1, 10)])
        with pytest.raises(GenericityViolation):
            regularized_moment_limit_check((1,), F(1, 2), 2, [F(1, 10), 0])


class TestMomentCumulant:
    def test_bell_numbers(self):
        assert [sum(1 for _ in set_partitions(n)) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]
        assert list(restricted_growth_strings(2)) == [(0, 0), (0, 1)]

    def test_set_partition_validation(self):
        assert SetPartition(((3, 1), (2,))).blocks == ((1, 3), (2,))
        with pytest.raises(ValueError):
            SetPartition(((1, 2), (2, 3)))
        with pytest.raises(ValueError):
            SetPartition(((1,), (3,)))

    def test_third_moment(self):
        k1, k2, k3 = F(2, 3), F(5, 7), F(-1, 11)
        assert cumulants_to_moments([k1, k2, k3])[2] == k1**3 + 3 * k2 * k1 + k3

    def test_examples(self):
        c = F(3, 5)
        assert cumulants_to_moments([c, 0, 0, 0, 0]) == [c**k for k in range(1, 6)]
        assert moments_to_cumulants([F(1, k + 1) for k in range(1, 5)]) == [F(1, 2), F(1, 12), 0, F(-1, 120)]

    @given(st.lists(rationals(-5, 5, 9), min_size=1, max_size=7))
    def test_round_trip_and_recursion(self, kappa):
        m = cumulants_to_moments(kappa)
        assert m == moments_from_cumulants_recursive(kappa)
        assert moments_to_cumulants(m) == kappa


class TestBoundAndReport:
    def test_bound_examples(self):
        assert cumulant_bound_check((1,), 0, 1) == (F(1, 2), 1, True)
        assert cumulant_bound_check((1,), 0, 2) == (F(1, 12), F(1, 2), True)

    @given(diagrams(max_rows=3, max_len=4), half_integers, st.integers(1, 4))
    def test_bound_holds(self, lam, u0, n):
        kappa, bound, ok = cumulant_bound_check(lam, u0, n)
        assert ok and bound == factorial(n - 1) * g_plus(corner_profile(lam), u0) ** (n - 1)

    def test_report(self):
        rep = cumulant_report((1,), 0, 2, with_oracle=True)
        assert rep.to_dict() == {
            "shape": [1],
            "u0": "0/1",
            "order": 2,
            "cumulants": ["1/2", "1/12"],
            "moments": ["1/2", "1/3"],
            "bounds": ["1/1", "1/2"],
            "oracle_moments": ["1/2", "1/3"],
        }
        assert json.loads(rep.to_json())["cumulants"] == ["1/2", "1/12"]
        assert "oracle_moments" not in cumulant_report((1,), 0, 2).to_dict()

    def test_report_consistency_enforced(self):
        rep = cumulant_report((2, 1), F(1, 2), 3)
        with pytest.raises(ValueError):
            type(rep)(rep.shape, rep.u0, 3, rep.cumulants, [1, 1, 1], rep.bounds)
