from unittest.case import TestCase

from ergodic_rl.exceptions import UndefinedGrowth
from ergodic_rl.growth import WindowBuffer, geometric_mean_window


class TestWindowBuffer(TestCase):

    def setUp(self) -> None:

        self.buffer = WindowBuffer(2)

    def test_keeps_the_last_values(self):

        self.buffer.extend([1.0, 2.0, 3.0, 4.0])
        self.assertListEqual([2.0, 3.0, 4.0], self.buffer.values)
        self.assertTrue(self.buffer.is_full)
        self.assertEqual(3, self.buffer.capacity)

    def test_clear(self):

        self.buffer.extend([1.0, 2.0])
        self.buffer.clear()
        self.assertEqual(0, self.buffer.valid_count)

    def test_geometric_mean(self):

        self.buffer.extend([100.0, 110.0, 121.0])
        self.assertAlmostEqual(1.1, geometric_mean_window(self.buffer))

    def test_not_full(self):

        self.buffer.extend([100.0, 110.0])
        self.assertRaises(UndefinedGrowth, geometric_mean_window, self.buffer)

    def test_non_positive_return(self):

        self.buffer.extend([100.0, -10.0, 121.0])
        self.assertRaises(UndefinedGrowth, geometric_mean_window, self.buffer)

    def test_invalid_window(self):

        self.assertRaises(ValueError, WindowBuffer, 0)
