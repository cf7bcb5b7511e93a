# Copyright 2026 The slipfsi Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Tests for slipfsi.grid."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import math

from absl.testing import absltest
import numpy as np
from slipfsi import grid as grid_lib
import tensorflow as tf


class GridTest(tf.test.TestCase):

  def test_two_dimensional(self):
    grid = grid_lib.Grid(16, 9)
    self.assertEqual(grid.dim, 2)
    self.assertEqual(grid.shape, (16, 9))
    self.assertEqual(grid.plate_shape, (16,))
    self.assertAlmostEqual(grid.hx, 2.0 * math.pi / 16)
    self.assertAlmostEqual(grid.hz, 0.125)
    self.assertAlmostEqual(grid.plate_area, 2.0 * math.pi)

  def test_three_dimensional(self):
    grid = grid_lib.Grid(8, 5, ny=4, period=2.0, period_y=1.0)
    self.assertEqual(grid.dim, 3)
    self.assertEqual(grid.shape, (8, 4, 5))
    self.assertEqual(grid.plate_shape, (8, 4))
    self.assertAlmostEqual(grid.plate_area, 2.0)
    x, y, z = grid.coordinates()
    self.assertEqual(x.shape, (8, 4, 5))
    self.assertAlmostEqual(y[0, 3, 0], 0.75)
    self.assertAlmostEqual(z[0, 0, 4], 1.0)

  def test_cell_volumes_sum_to_slab_volume(self):
    for grid in (grid_lib.Grid(16, 9), grid_lib.Grid(8, 5, ny=6)):
      self.assertAllClose(np.sum(grid.cell_volumes().numpy()),
                          grid.plate_area)

  def test_refined(self):
    fine = grid_lib.Grid(16, 9).refined()
    self.assertEqual(fine.shape, (32, 17))
    self.assertAlmostEqual(fine.hz, 1.0 / 16)

  def test_same_as(self):
    self.assertEqual(grid_lib.Grid(16, 9), grid_lib.Grid(16, 9))
    self.assertNotEqual(grid_lib.Grid(16, 9), grid_lib.Grid(16, 9, period=1.0))
    with self.assertRaisesRegex(ValueError, "Grid mismatch for velocity"):
      grid_lib.Grid(16, 9).check_same(grid_lib.Grid(8, 9), "velocity")

  def test_invalid(self):
    with self.assertRaises(ValueError):
      grid_lib.Grid(2, 9)
    with self.assertRaises(ValueError):
      grid_lib.Grid(16, 9, period=0.0)


if __name__ == "__main__":
  absltest.main()
