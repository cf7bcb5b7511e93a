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
"""Tests for slipfsi.ops.quadrature."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import math

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np
from slipfsi import field
from slipfsi import grid as grid_lib
from slipfsi.ops import quadrature
import tensorflow as tf


class QuadratureTest(tf.test.TestCase, parameterized.TestCase):

  def setUp(self):
    super(QuadratureTest, self).setUp()
    self.grid = grid_lib.Grid(16, 9)

  def test_constants_and_linear_profiles_are_exact(self):
    _, z = self.grid.coordinates()
    self.assertAllClose(quadrature.integrate_values(
        tf.ones(self.grid.shape, tf.float64), self.grid), 2.0 * math.pi)
    self.assertAllClose(quadrature.integrate_values(
        tf.constant(z, tf.float64), self.grid), math.pi)
    self.assertAllClose(quadrature.integrate_values(
        tf.ones(self.grid.shape, tf.float64), self.grid,
        tf.fill([16, 1], tf.constant(1.5, tf.float64))), 3.0 * math.pi)

  def test_integrate_reference(self):
    f = field.constant_scalar(self.grid, 2.0)
    weight = field.constant_scalar(self.grid, 0.5)
    self.assertAllClose(quadrature.integrate_reference(f, weight),
                        2.0 * math.pi)
    with self.assertRaisesRegex(ValueError, "positive"):
      quadrature.integrate_reference(f, field.constant_scalar(self.grid, 0.0))

  def test_plate_and_walls(self):
    x = self.grid.horizontal_coordinates()[0]
    self.assertAllClose(quadrature.integrate_plate(
        tf.constant(np.cos(x) ** 2, tf.float64), self.grid), math.pi)
    ones = tf.ones([16], tf.float64)
    self.assertAllClose(quadrature.integrate_boundary(ones, 2.0 * ones,
                                                      self.grid),
                        4.0 * math.pi)
    _, z = self.grid.coordinates()
    self.assertAllClose(quadrature.integrate_bottom(
        tf.constant(1.0 + z, tf.float64), self.grid), 2.0 * math.pi)
    self.assertAllClose(quadrature.top_trace(tf.constant(z)), np.ones(16))

  @parameterized.parameters(0.0, 0.125, 0.3, 1.0)
  def test_layer_of_linear_profile(self, sigma):
    _, z = self.grid.coordinates()
    values = tf.constant(z, tf.float64)
    expected = 0.5 * (1.0 - (1.0 - sigma) ** 2) * 2.0 * math.pi
    self.assertAllClose(
        quadrature.integrate_layer(values, tf.ones([16, 1], tf.float64),
                                   self.grid, sigma), expected)

  def test_layer_rejects_thickness(self):
    ones = tf.ones(self.grid.shape, tf.float64)
    with self.assertRaises(ValueError):
      quadrature.integrate_layer(ones, ones, self.grid, 1.5)


if __name__ == "__main__":
  absltest.main()
