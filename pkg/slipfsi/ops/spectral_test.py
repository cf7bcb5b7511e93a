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
"""Tests for slipfsi.ops.spectral."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from absl.testing import absltest
import numpy as np
from slipfsi import grid as grid_lib
from slipfsi.ops import spectral
import tensorflow as tf


class SpectralTest(tf.test.TestCase):

  def setUp(self):
    super(SpectralTest, self).setUp()
    self.grid = grid_lib.Grid(16, 5)
    self.x = self.grid.horizontal_coordinates()[0]

  def test_derivatives_of_a_mode(self):
    w = tf.constant(np.cos(2.0 * self.x), tf.float64)
    self.assertAllClose(spectral.plate_derivative(w, self.grid, 0),
                        -2.0 * np.sin(2.0 * self.x))
    self.assertAllClose(spectral.plate_laplacian(w, self.grid),
                        -4.0 * np.cos(2.0 * self.x))
    self.assertAllClose(spectral.plate_bilaplacian(w, self.grid),
                        16.0 * np.cos(2.0 * self.x))

  def test_round_trip(self):
    w = tf.constant(np.sin(self.x) + 0.3 * np.cos(5.0 * self.x), tf.float64)
    modes = spectral.plate_fourier(w, self.grid)
    self.assertAllClose(spectral.plate_inverse_fourier(modes, self.grid), w)

  def test_evaluate_plate_between_nodes(self):
    w = tf.constant(np.sin(self.x) + 0.5 * np.cos(3.0 * self.x), tf.float64)
    points = np.array([[0.1], [1.234], [6.0]])
    expected = np.sin(points[:, 0]) + 0.5 * np.cos(3.0 * points[:, 0])
    self.assertAllClose(spectral.evaluate_plate(w, self.grid, points),
                        expected)

  def test_resample_plate(self):
    w = tf.constant(np.cos(self.x), tf.float64)
    fine = self.grid.refined()
    x_fine = fine.horizontal_coordinates()[0]
    self.assertAllClose(spectral.resample_plate(w, self.grid, fine),
                        np.cos(x_fine))
    with self.assertRaisesRegex(ValueError, "Cannot resample"):
      spectral.resample_plate(w, self.grid, grid_lib.Grid(16, 5, period=1.0))

  def test_two_horizontal_axes(self):
    grid = grid_lib.Grid(8, 5, ny=8)
    x, y = grid.horizontal_coordinates()
    w = tf.constant(np.cos(x) * np.sin(2.0 * y), tf.float64)
    self.assertAllClose(spectral.plate_laplacian(w, grid), -5.0 * w.numpy())
    gx, gy = spectral.plate_gradient(w, grid)
    self.assertAllClose(gy, 2.0 * np.cos(x) * np.cos(2.0 * y))
    self.assertAllClose(gx, -np.sin(x) * np.sin(2.0 * y))

  def test_wavenumber_squared(self):
    k2 = spectral.wavenumber_squared(self.grid)
    self.assertEqual(k2[0], 0.0)
    self.assertAllClose(k2[3], 9.0)


if __name__ == "__main__":
  absltest.main()
