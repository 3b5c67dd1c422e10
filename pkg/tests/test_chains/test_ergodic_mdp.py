from unittest.case import TestCase

from numpy import array, tile

from ergodic_rl.chains import is_ergodic_mdp
from ergodic_rl.enums.mdp_ergodicity import MDP_ERGODICITY
from ergodic_rl.environments import delivery_mdp
from ergodic_rl.process import MdpSpec


class TestIsErgodicMdp(TestCase):

    def test_single_action_irreducible(self):

        mdp = MdpSpec.markov_reward_process(
            [[0.5, 0.5], [0.3, 0.7]], [0.0, 1.0], [1.0, 0.0]
        )
        self.assertIs(MDP_ERGODICITY.ergodic, is_ergodic_mdp(mdp))
        self.assertTrue(is_ergodic_mdp(mdp))

    def test_delivery(self):

        actual = is_ergodic_mdp(delivery_mdp())
        self.assertIs(MDP_ERGODICITY.non_ergodic, actual)
        self.assertFalse(actual)
        self.assertEqual('false', actual.get_name())

    def test_cap_reached(self):

        cycle = array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=float)
        kernel = tile(cycle[:, None, :], (1, 4, 1))
        mdp = MdpSpec(kernel=kernel, reward=[0.0, 0.0, 0.0],
                      initial_dist=[1.0, 0.0, 0.0])
        self.assertIs(MDP_ERGODICITY.inconclusive,
                      is_ergodic_mdp(mdp, max_policies=10))
        self.assertIs(MDP_ERGODICITY.ergodic, is_ergodic_mdp(mdp))

    def test_invalid_cap(self):

        mdp = MdpSpec.markov_reward_process([[1.0]], [0.0], [1.0])
        self.assertRaises(ValueError, is_ergodic_mdp, mdp, 0)
