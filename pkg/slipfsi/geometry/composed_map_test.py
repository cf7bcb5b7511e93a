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
"""Tests for slipfsi.geometry.composed_map."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from absl.testing import absltest
import numpy as np
from slipfsi import checks
from slipfsi import errors
from slipfsi import grid as grid_lib
from slipfsi.geometry import composed_map
from slipfsi.geometry import flow_map
from slipfsi.test import state_test_util
import tensorflow as tf


class ComposedMapTest(tf.test.TestCase):

  def setUp(self):
    super(ComposedMapTest, self).setUp()
    self.grid = grid_lib.Grid(32, 17)
    self.w, self.eta = state_test_util.smooth_displacement_pairs(
        self.grid, count=1)[0]

  def _full(self, value):
    return tf.broadcast_to(value, self.grid.shape)

  def test_equal_displacements_give_identity(self):
    psi = composed_map.compose_psi(self.grid, self.w, self.w)
    self.assertAllClose(self._full(psi.jacobian()),
                        np.ones(self.grid.shape))
    inverse = psi.inverse_matrix()
    for i in range(2):
      for j in range(2):
        self.assertAllClose(self._full(inverse[i][j]),
                            np.full(self.grid.shape, float(i == j)),
                            atol=1e-12)

  def test_vertical_stretch(self):
    zero = np.zeros(32)
    psi = composed_map.compose_psi(self.grid, zero, np.full(32, 0.1))
    self.assertAllClose(psi.psi([[1.0, 0.5], [3.0, 1.0]]),
                        [[1.0, 0.55], [3.0, 1.1]])
    self.assertAllClose(self._full(psi.jacobian()),
                        np.full(self.grid.shape, 1.1))
    self.assertLess(psi.chain_rule_defect(), 1e-12)

  def test_composition_with_source_map(self):
    psi = composed_map.compose_psi(self.grid, self.w, self.eta)
    source = flow_map.DomainMap(self.grid, self.w)
    target = flow_map.DomainMap(self.grid, self.eta)
    points = np.stack([c.ravel() for c in self.grid.coordinates()], axis=1)
    defect = psi.psi(source.forward(points)) - target.forward(points)
    self.assertLess(np.max(np.abs(defect)), 1e-8)

  def test_chain_rule_is_second_order(self):
    w_fn, eta_fn = checks.random_displacement_pairs(5, count=1)[0]
    defects = []
    for nx, nz in ((32, 17), (64, 33), (128, 65)):
      grid = grid_lib.Grid(nx, nz)
      psi = composed_map.compose_psi(grid, w_fn.sample(grid),
                                     eta_fn.sample(grid))
      defects.append(psi.chain_rule_defect())
    for order in checks.observed_orders(defects):
      if order is not None:
        self.assertGreater(order, 1.9)

  def test_time_derivatives(self):
    w = np.full(32, 0.2)
    psi = composed_map.compose_psi(self.grid, w, np.zeros(32),
                                   w_t=np.zeros(32), eta_t=np.full(32, 0.6))
    self.assertAllClose(psi.stretch_rate, np.full(32, 0.5))
    _, z = self.grid.coordinates()
    self.assertAllClose(psi.time_derivative()[1], 0.5 * 1.2 * z)
    rate = psi.d_cofactor_dt()
    self.assertAllClose(self._full(rate[0][0]), np.full(self.grid.shape, 0.5))
    self.assertAllClose(self._full(rate[1][1]), np.zeros(self.grid.shape))

  def test_cofactor_gradient_of_uniform_stretch(self):
    psi = composed_map.compose_psi(self.grid, np.zeros(32), np.full(32, 0.3))
    for row in psi.cofactor_gradient():
      for entry in row:
        for derivative in entry:
          self.assertAllClose(self._full(derivative),
                              np.zeros(self.grid.shape))

  def test_degenerate_target(self):
    with self.assertRaises(errors.DegeneracyError):
      composed_map.compose_psi(self.grid, self.w, np.full(32, -0.99))


if __name__ == "__main__":
  absltest.main()
