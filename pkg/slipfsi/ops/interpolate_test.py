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
"""Tests for slipfsi.ops.interpolate."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from absl.testing import absltest
import numpy as np
from slipfsi import errors
from slipfsi import grid as grid_lib
from slipfsi.ops import interpolate
import tensorflow as tf


class InterpolateTest(tf.test.TestCase):

  def setUp(self):
    super(InterpolateTest, self).setUp()
    self.grid = grid_lib.Grid(16, 9)
    x, z = self.grid.coordinates()
    self.values = tf.constant(np.cos(x) + 2.0 * z, tf.float64)

  def test_exact_at_nodes(self):
    points = np.array([[self.grid.hx * 3, 0.25], [0.0, 1.0]])
    self.assertAllClose(interpolate.bilinear(self.values, self.grid, points),
                        [np.cos(self.grid.hx * 3) + 0.5, 3.0])

  def test_linear_in_z_and_periodic_in_x(self):
    points = np.array([[0.0, 0.3], [2.0 * np.pi, 0.3], [-2.0 * np.pi, 0.3]])
    self.assertAllClose(interpolate.bilinear(self.values, self.grid, points),
                        [1.6, 1.6, 1.6])

  def test_leading_axes(self):
    stacked = tf.stack([self.values, 2.0 * self.values])
    result = interpolate.bilinear(stacked, self.grid, [[0.0, 0.5]])
    self.assertEqual(result.shape, (2, 1))
    self.assertAllClose(result[:, 0], [2.0, 4.0])

  def test_outside_the_slab(self):
    with self.assertRaises(errors.InterpolationError):
      interpolate.bilinear(self.values, self.grid, [[0.0, 1.01]])

  def test_resample_field(self):
    _, z = self.grid.coordinates()
    fine = grid_lib.Grid(16, 17)
    _, z_fine = fine.coordinates()
    resampled = interpolate.resample_field(tf.constant(z, tf.float64),
                                           self.grid, fine)
    self.assertAllClose(resampled, z_fine)
    with self.assertRaises(errors.InterpolationError):
      interpolate.resample_field(self.values, self.grid,
                                 grid_lib.Grid(16, 9, period=1.0))


if __name__ == "__main__":
  absltest.main()
