from unittest.case import TestCase

from numpy import allclose

from ergodic_rl.chains import analyze_policy, induced_chain
from ergodic_rl.enums.chain_class import CHAIN_CLASS
from ergodic_rl.environments import DeliveryParams, delivery_mdp, \
    town_city_delivery_mdp
from ergodic_rl.process import PolicySpec


class TestDeliveryMdp(TestCase):

    def setUp(self) -> None:

        self.mdp = delivery_mdp()

    def test_expected_trip_rewards(self):

        direct = (self.mdp.kernel[0, 0] * self.mdp.reward[0, 0]).sum()
        safe = (self.mdp.kernel[0, 1] * self.mdp.reward[0, 1]).sum()
        self.assertAlmostEqual(89.0, direct)
        self.assertAlmostEqual(80.0, safe)

    def test_destroyed_is_absorbing_ruin(self):

        self.assertEqual((1,), self.mdp.ruin_states)
        self.assertTrue(allclose(1.0, self.mdp.kernel[1, :, 1]))
        self.assertTrue(allclose(0.0, self.mdp.reward[1]))

    def test_always_direct(self):

        report = analyze_policy(self.mdp, PolicySpec.deterministic([0, 0]))
        self.assertIs(CHAIN_CLASS.unichain_aperiodic, report.classification)
        self.assertListEqual([frozenset({1})], report.recurrent_classes)

    def test_always_safe(self):

        report = analyze_policy(self.mdp, PolicySpec.deterministic([1, 1]))
        self.assertIn(frozenset({0}), report.recurrent_classes)
        # destroyed stays closed even though it is never reached
        self.assertIs(CHAIN_CLASS.multichain, report.classification)

    def test_params(self):

        mdp = delivery_mdp(DeliveryParams(destroy_prob=0.1, step_cost=2.0))
        self.assertAlmostEqual(0.1, mdp.kernel[0, 0, 1])
        self.assertAlmostEqual(80.0, mdp.reward[0, 0, 0])
        self.assertAlmostEqual(-20.0, mdp.reward[0, 0, 1])

    def test_reward_floor(self):

        params = DeliveryParams(step_cost=20.0, reward_floor=0.0)
        self.assertEqual(0.0, params.trip_reward(10))

    def test_invalid_params(self):

        self.assertRaises(ValueError, DeliveryParams, destroy_prob=1.5)
        self.assertRaises(ValueError, DeliveryParams, direct_steps=0)
        self.assertRaises(ValueError, DeliveryParams, step_cost=-1.0)


class TestTownCityDelivery(TestCase):

    def setUp(self) -> None:

        self.mdp = town_city_delivery_mdp()

    def test_always_one_region_is_unichain(self):

        report = analyze_policy(self.mdp, PolicySpec.deterministic([1, 1, 1]))
        self.assertTrue(report.is_unichain)
        self.assertListEqual([frozenset({2})], report.recurrent_classes)
        self.assertAlmostEqual(90.0, report.rho)

    def test_wait_everywhere_is_multichain(self):

        report = analyze_policy(self.mdp, PolicySpec.deterministic([2, 2, 2]))
        self.assertIs(CHAIN_CLASS.multichain, report.classification)
        self.assertEqual(3, len(report.recurrent_classes))

    def test_alternating_regions_is_periodic(self):

        # town goes to the city and back
        P = induced_chain(self.mdp, PolicySpec.deterministic([0, 1, 0]))
        self.assertTrue(allclose([[0, 1, 0], [0, 0, 1], [0, 1, 0]], P.rows))
        report = analyze_policy(self.mdp, PolicySpec.deterministic([0, 1, 0]))
        self.assertIs(CHAIN_CLASS.unichain_periodic, report.classification)
        self.assertListEqual([2], report.periods)
