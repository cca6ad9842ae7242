import math
import random

import pytest

from wargrid.utility import (
    AgentVitals,
    UtilityWeights,
    aggression_input,
    binary_split,
    decay_utility,
    normalize,
    reload_utility,
)


class TestAggressionInput:
    def test_zero_vitals(self):
        v = AgentVitals(threat=0, health=0, ammo=0)
        assert aggression_input(v, UtilityWeights(1, 1, 1)) == 0.0

    def test_direct_sum(self):
        v = AgentVitals(threat=1, health=1, ammo=1)
        assert aggression_input(v, UtilityWeights(1, 1, 1)) == 3.0

    def test_weighted_arithmetic(self):
        # independent check: 2*0.5 + 1*1 + 2*0.5 = 3.0
        v = AgentVitals(threat=0.5, health=1.0, ammo=0.5)
        assert aggression_input(v, UtilityWeights(2, 1, 2)) == pytest.approx(3.0)

    def test_vitals_range_enforced(self):
        with pytest.raises(ValueError):
            AgentVitals(threat=1.5, health=0, ammo=0)
        with pytest.raises(ValueError):
            AgentVitals(threat=0, health=-0.1, ammo=0)

    def test_weights_must_not_all_vanish(self):
        with pytest.raises(ValueError):
            UtilityWeights(0, 0, 0)
        with pytest.raises(ValueError):
            UtilityWeights(-1, 2, 2)


class TestDecayUtility:
    def test_at_zero(self):
        assert decay_utility(0) == 1.0

    def test_at_one(self):
        assert decay_utility(1) == pytest.approx(0.36787944117144233, abs=1e-15)

    def test_strictly_decreasing(self):
        assert decay_utility(2) < decay_utility(1)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            decay_utility(-0.5)


class TestBinarySplit:
    def test_boundary(self):
        assert binary_split(0) == (1.0, 0.0)

    def test_at_one(self):
        first, second = binary_split(1)
        assert first == pytest.approx(0.36787944117144233, abs=1e-15)
        assert second == pytest.approx(0.6321205588285577, abs=1e-15)

    def test_components_sum_to_one(self):
        rng = random.Random(1)
        for _ in range(200):
            x = rng.uniform(0, 12)
            assert abs(sum(binary_split(x)) - 1.0) <= 1e-12

    def test_second_component_increasing_concave(self):
        # marginal response: equal increments matter less at higher x
        rng = random.Random(2)
        for _ in range(500):
            x1 = rng.uniform(0, 5)
            x2 = x1 + rng.uniform(0.01, 3)
            delta = rng.uniform(0.01, 2)
            g = lambda x: binary_split(x)[1]
            assert g(x1 + delta) - g(x1) >= g(x2 + delta) - g(x2) - 1e-12
            assert g(x2) > g(x1)


class TestReloadUtility:
    def test_full_magazine(self):
        assert reload_utility(1.0) == pytest.approx(math.e, abs=1e-12)

    def test_half_magazine(self):
        assert reload_utility(0.5, cap=1e6) == pytest.approx(math.e**2, abs=1e-9)

    def test_empty_magazine_returns_cap(self):
        assert reload_utility(0.0, cap=1e6) == 1e6

    def test_saturation_plateau(self):
        # with the default cap, tiny magazines all sit at the cap
        assert reload_utility(0.01, cap=1e6) == 1e6
        assert reload_utility(0.05, cap=1e6) == 1e6

    def test_strictly_decreasing_below_cap(self):
        values = [reload_utility(m / 100, cap=1e308) for m in range(1, 101)]
        for earlier, later in zip(values, values[1:]):
            assert earlier > later

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            reload_utility(-0.1)
        with pytest.raises(ValueError):
            reload_utility(1.1)
        with pytest.raises(ValueError):
            reload_utility(0.5, cap=2.0)

    def test_never_overflows(self):
        for m in (1e-9, 1e-6, 1e-3):
            assert reload_utility(m) == 1e6


class TestNormalize:
    def test_uniform_from_equal_scores(self):
        assert normalize([1, 1, 1, 1]) == [0.25, 0.25, 0.25, 0.25]

    def test_exponential_pair(self):
        p = normalize([math.e, math.e**2])
        assert p[0] == pytest.approx(1 / (1 + math.e), abs=1e-12)
        assert p[1] == pytest.approx(math.e / (1 + math.e), abs=1e-12)

    def test_zero_sum_falls_back_to_uniform(self):
        assert normalize([0, 0]) == [0.5, 0.5]

    def test_sum_is_one(self):
        rng = random.Random(3)
        for _ in range(300):
            scores = [rng.uniform(0, 50) for _ in range(rng.randint(1, 8))]
            assert abs(sum(normalize(scores)) - 1.0) <= 1e-12

    def test_scale_invariance(self):
        rng = random.Random(4)
        for _ in range(300):
            scores = [rng.uniform(0, 10) for _ in range(rng.randint(2, 6))]
            lam = rng.uniform(1e-3, 1e3)
            base = normalize(scores)
            scaled = normalize([lam * s for s in scores])
            assert all(abs(a - b) <= 1e-12 for a, b in zip(base, scaled))
            assert base.index(max(base)) == scaled.index(max(scaled))

    def test_rejects_bad_scores(self):
        with pytest.raises(ValueError):
            normalize([])
        with pytest.raises(ValueError):
            normalize([1, -1])
        with pytest.raises(ValueError):
            normalize([1, math.inf])


class TestReloadDominance:
    def test_lower_magazine_gets_larger_probability(self):
        others = [0.8, 0.4, 0.3]
        previous = None
        for magazine in (1.0, 0.75, 0.5, 0.25, 0.1):
            scores = [reload_utility(magazine, cap=1e308)] + others
            p_reload = normalize(scores)[0]
            if previous is not None:
                assert p_reload > previous
            previous = p_reload
