import numpy as np
import pytest

from bohrsharp.errors import DomainError
from bohrsharp.functionals import (
    PRINTED_EXAMPLE_WEIGHT,
    THIRD,
    mobius_bohr_sum,
    phi0_mobius,
)
from bohrsharp.series import Constant, SchurFunction, TruncatedSeries, blaschke, constant, mobius
from bohrsharp.verify import (
    CLASSIC,
    PHI0_16_9,
    PHI0_LAMBDA_R,
    PSI_1,
    WEIGHTED_G,
    cached_population,
    condition_i_spotcheck,
    dominance_check,
    lhs_enclosure,
    radius_grid,
    sharpness_probe,
    verify_bohr_classic,
    verify_improved,
    witness_beyond_third,
)


def corrupted(*coeffs):
    return SchurFunction(TruncatedSeries(list(coeffs)), Constant(coeffs[0]))


def test_radius_grid_closed():
    g = radius_grid(0.2, 5)
    assert g[0] == 0.0 and g[-1] == 0.2 and len(g) == 5
    with pytest.raises(DomainError):
        radius_grid(0.4)


class TestClassic:
    def test_population_clean(self):
        rep = verify_bohr_classic(200, seed=3)
        assert rep.clean and rep.max_lhs <= 1 + 1e-9 and rep.checked == 200 * 20

    def test_constant_one(self):
        rep = verify_bohr_classic(functions=[constant(1.0)])
        assert rep.clean
        assert abs(rep.slack_min) < 1e-14

    def test_mobius_approaches_one(self):
        values = [mobius_bohr_sum(1 - 10.0**-k, THIRD) for k in range(1, 8)]
        assert np.all(np.diff(values) > 0) and 1 - values[-1] < 1e-6

    def test_no_false_alarm(self):
        rep = verify_bohr_classic(functions=[corrupted(1, 1)], r_grid=[0.0, 0.3])
        assert len(rep.violations) == 1
        v = rep.violations[0]
        assert v.r == 0.3 and v.lhs_lo > 1.0

    def test_undecided_is_not_a_violation(self):
        # tail width straddles the threshold at low order
        rep = verify_bohr_classic(functions=[corrupted(0.7, 0.9)], r_grid=[THIRD])
        assert rep.clean and rep.undecided == 1

    def test_deterministic(self):
        a = verify_bohr_classic(50, seed=9).to_dict()
        cached_population.cache_clear()
        b = verify_bohr_classic(50, seed=9).to_dict()
        assert a == b


class TestImproved:
    @pytest.mark.parametrize("kind", [PHI0_16_9, WEIGHTED_G, PSI_1])
    def test_clean(self, kind):
        assert verify_improved(kind, samples=200, seed=5).clean

    def test_lambda_R(self):
        rep = verify_improved(PHI0_LAMBDA_R, R=0.25, samples=100, seed=1)
        assert rep.clean and rep.lam > 16 / 9

    def test_lambda_R_at_zero(self):
        with pytest.raises(DomainError):
            verify_improved(PHI0_LAMBDA_R, R=0.0)

    def test_unknown_kind(self):
        with pytest.raises(DomainError):
            verify_improved(CLASSIC)

    @pytest.mark.parametrize("kind", [CLASSIC, PHI0_16_9, WEIGHTED_G])
    def test_monotone_in_r(self, kind, small_population):
        grid = radius_grid(THIRD, 20)
        lam = {CLASSIC: 0.0, PHI0_16_9: 16 / 9, WEIGHTED_G: 4 / 3}[kind]
        for f in small_population[:100]:
            his = [lhs_enclosure(f, r, kind, lam).hi for r in grid]
            assert np.all(np.diff(his) >= -1e-14)

    def test_psi_equality_family(self):
        fs = [mobius(a) for a in (THIRD, 0.5, 0.8, 0.95)]
        rep = verify_improved(PSI_1, functions=fs, r_grid=[0.1, 0.2, THIRD])
        assert rep.clean
        assert abs(rep.slack_min) <= 1e-12

    def test_printed_weight_fails_with_four_thirds(self):
        a = 0.9
        lhs = mobius_bohr_sum(a, THIRD) + 4 / 3 * PRINTED_EXAMPLE_WEIGHT(a) * phi0_mobius(a, THIRD)
        assert lhs > 1 + 1e-4

    def test_report_keys(self):
        d = verify_improved(PSI_1, samples=10).to_dict()
        assert {"suite", "samples", "seed", "R", "slack_min", "violations"} <= set(d)


class TestWitness:
    def test_examples(self):
        assert mobius_bohr_sum(0.95, 0.35) == pytest.approx(1.0011236, abs=1e-7)
        assert mobius_bohr_sum(0.9, 0.5) == pytest.approx(1.0727273, abs=1e-7)

    @pytest.mark.parametrize("r", [0.334, 0.35, 0.5, 0.9])
    def test_exceeds_one(self, r):
        a, value = witness_beyond_third(r)
        assert value > 1 and r > 1 / (1 + 2 * a)

    def test_approaches_one_near_third(self):
        assert witness_beyond_third(THIRD + 1e-4)[0] > 0.99

    @pytest.mark.parametrize("r", [0.2, THIRD, 1.0])
    def test_domain(self, r):
        with pytest.raises(DomainError):
            witness_beyond_third(r)


class TestProbes:
    def test_phi0(self):
        p = sharpness_probe(PHI0_16_9)
        assert p.holds and abs(p.min_ratio - 16 / 9) < 1e-3

    @pytest.mark.parametrize("R", [0.1, 0.2, THIRD])
    def test_psi(self, R):
        p = sharpness_probe(PSI_1, R)
        assert p.holds and p.min_ratio == pytest.approx(1.0, abs=1e-12)

    def test_weighted(self):
        p = sharpness_probe(WEIGHTED_G)
        assert p.holds and abs(p.min_ratio - 4 / 3) < 1e-3


class TestDominance:
    def test_passes(self):
        rep = dominance_check(400)
        assert rep.passed and rep.max_excess <= 1e-12
        assert rep.scalar_at_third == pytest.approx(91 / 27, abs=1e-12)
        assert rep.scalar_min >= 91 / 27 - 1e-9

    def test_example_point(self):
        assert 16 / 9 * phi0_mobius(0.5, THIRD) == pytest.approx(16 / 9 * 81 / 1144)
        assert 16 / 9 * phi0_mobius(0.5, THIRD) < 0.2


class TestConditionI:
    def test_population(self):
        rep = condition_i_spotcheck(200, seed=2)
        assert rep.clean and rep.max_excess <= 1e-9

    def test_mobius_equality(self):
        rep = condition_i_spotcheck(functions=[mobius(a) for a in (0.0, 0.4, 0.9)])
        assert abs(rep.max_excess) < 1e-12

    def test_two_zero_blaschke_strict(self):
        f = blaschke([0.5j, -0.5j])
        rep = condition_i_spotcheck(functions=[f], r_grid=[0.3])
        assert rep.max_excess < -0.05
