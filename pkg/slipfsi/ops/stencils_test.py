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
"""Tests for slipfsi.ops.stencils."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import math

from absl.testing import absltest
import numpy as np
from slipfsi import checks
from slipfsi import field
from slipfsi import grid as grid_lib
from slipfsi.geometry import flow_map
from slipfsi.ops import stencils
import tensorflow as tf


def _derivative_error(n):
  grid = grid_lib.Grid(n, 9)
  x, z = grid.coordinates()
  f = tf.constant(np.sin(x) * (1.0 + z), tf.float64)
  exact = np.cos(x) * (1.0 + z)
  return float(np.max(np.abs(
      stencils.reference_derivative(f, grid, 0).numpy() - exact)))


class StencilsTest(tf.test.TestCase):

  def test_horizontal_derivative_is_second_order(self):
    errors = [_derivative_error(n) for n in (16, 32, 64)]
    for order in checks.observed_orders(errors):
      self.assertGreater(order, 1.9)

  def test_vertical_derivative_exact_for_quadratics(self):
    grid = grid_lib.Grid(8, 9)
    _, z = grid.coordinates()
    f = tf.constant(z * z - 3.0 * z, tf.float64)
    self.assertAllClose(stencils.reference_derivative(f, grid, 1),
                        2.0 * z - 3.0, atol=1e-12)

  def test_batch_axes(self):
    grid = grid_lib.Grid(8, 5)
    _, z = grid.coordinates()
    f = tf.constant(np.stack([z, 2.0 * z]), tf.float64)
    d = stencils.reference_derivative(f, grid, 1)
    self.assertAllClose(d[1], np.full((8, 5), 2.0))

  def test_grad_and_div(self):
    grid = grid_lib.Grid(8, 5)
    f = field.scalar_from_function(grid, lambda x, z: 3.0 * z)
    g = stencils.grad(f)
    self.assertAllClose(g.component(0), np.zeros((8, 5)))
    self.assertAllClose(stencils.div(g).numpy(), np.zeros((8, 5)), atol=1e-12)

  def test_stream_fluxes_are_solenoidal(self):
    grid = grid_lib.Grid(32, 17)
    x, z = grid.coordinates()
    psi = tf.constant(np.sin(x) * np.sin(math.pi * z) ** 2, tf.float64)
    fluxes = stencils.stream_fluxes(psi, grid)
    divergence = tf.add_n([stencils.reference_derivative(f, grid, axis)
                           for axis, f in enumerate(fluxes)])
    self.assertLess(float(tf.reduce_max(tf.abs(divergence))), 1e-12)

  def test_physical_divergence_of_pulled_back_fluxes(self):
    grid = grid_lib.Grid(32, 17)
    x, z = grid.coordinates()
    w = tf.constant(0.2 * np.cos(grid.horizontal_coordinates()[0]),
                    tf.float64)
    domain_map = flow_map.DomainMap(grid, w)
    psi = tf.constant(np.cos(2.0 * x) * z * z * (1.0 - z) ** 2, tf.float64)
    velocity = domain_map.from_contravariant(stencils.stream_fluxes(psi, grid))
    divergence = stencils.physical_divergence(velocity, domain_map)
    self.assertLess(float(tf.reduce_max(tf.abs(divergence))), 1e-12)

  def test_physical_gradient_of_height(self):
    grid = grid_lib.Grid(16, 9)
    domain_map = flow_map.DomainMap(grid, np.full(16, 0.2))
    _, z = grid.coordinates()
    height = tf.constant(1.2 * z, tf.float64)
    gx, gz = stencils.physical_gradient(height, domain_map)
    self.assertAllClose(gx, np.zeros((16, 9)), atol=1e-12)
    self.assertAllClose(gz, np.ones((16, 9)))

  def test_contravariant_inverts_from_contravariant(self):
    grid = grid_lib.Grid(16, 9)
    w = tf.constant(0.1 * np.sin(grid.horizontal_coordinates()[0]),
                    tf.float64)
    domain_map = flow_map.DomainMap(grid, w)
    x, z = grid.coordinates()
    fluxes = [tf.constant(np.cos(x) * z, tf.float64),
              tf.constant(np.sin(x) + z, tf.float64)]
    back = stencils.contravariant(domain_map.from_contravariant(fluxes),
                                  domain_map)
    for a, b in zip(back, fluxes):
      self.assertAllClose(a, b)

  def test_upwind_divergence_telescopes(self):
    grid = grid_lib.Grid(16, 9)
    x, z = grid.coordinates()
    q = tf.constant(1.0 + 0.1 * np.cos(x) * z, tf.float64)
    speeds = [tf.constant(np.sin(x) + 0.0 * z, tf.float64),
              tf.constant(z * (1.0 - z) * np.cos(x), tf.float64)]
    top = tf.constant(0.01 * np.cos(grid.horizontal_coordinates()[0]),
                      tf.float64)
    divergence = stencils.upwind_flux_divergence(q, speeds, grid, top)
    total = float(tf.reduce_sum(divergence * grid.cell_volumes()))
    self.assertAllClose(total, float(tf.reduce_sum(top)) * grid.hx,
                        atol=1e-12)

  def test_stream_fluxes_need_two_dimensions(self):
    grid = grid_lib.Grid(8, 5, ny=4)
    with self.assertRaisesRegex(ValueError, "dim = 2"):
      stencils.stream_fluxes(tf.zeros(grid.shape, tf.float64), grid)


if __name__ == "__main__":
  absltest.main()
