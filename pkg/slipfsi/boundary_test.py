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
"""Tests for slipfsi.boundary."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from absl.testing import absltest
import numpy as np
from slipfsi import boundary
from slipfsi import constitutive
from slipfsi import params as params_lib
from slipfsi.geometry import flow_map
from slipfsi.test import state_test_util
import tensorflow as tf


class BoundaryTest(tf.test.TestCase):

  def setUp(self):
    super(BoundaryTest, self).setUp()
    self.grid = state_test_util.small_grid()
    x, z = self.grid.coordinates()
    plate_x = self.grid.horizontal_coordinates()[0]
    self.w = tf.constant(0.1 * np.cos(plate_x), tf.float64)
    self.w_t = tf.constant(0.2 * np.sin(plate_x), tf.float64)
    self.components = [tf.constant(np.sin(x) + z, tf.float64),
                       tf.constant(np.cos(x) * (1.0 + z), tf.float64)]

  def test_enforce_kinematics(self):
    domain_map = flow_map.DomainMap(self.grid, self.w, self.w_t)
    projected = boundary.enforce_kinematics(self.components, domain_map)
    self.assertAllClose(boundary.top_mismatch(projected, domain_map),
                        np.zeros(16), atol=1e-14)
    self.assertAllEqual(projected[1][:, 0], np.zeros(16))
    self.assertAllEqual(projected[0][:, 1:-1], self.components[0][:, 1:-1])

  def test_enforce_kinematics_with_explicit_velocity(self):
    domain_map = flow_map.DomainMap(self.grid, self.w)
    projected = boundary.enforce_kinematics(self.components, domain_map,
                                            self.w_t)
    self.assertAllClose(
        boundary.top_mismatch(projected, domain_map.with_velocity(self.w_t)),
        np.zeros(16), atol=1e-14)

  def test_slip_tractions_of_translation(self):
    params = params_lib.Params(alpha=1.0, alpha0=2.0, nu=0.1)
    state = state_test_util.translating_state(params=params, speed=0.5)
    domain_map = flow_map.DomainMap(self.grid, state.w, state.w_t)
    slip = boundary.apply_slip_bc(state, domain_map, params)
    self.assertAllClose(slip.top_tangential_traction[0], np.full(16, -0.05))
    self.assertAllClose(slip.top_tangential_traction[1], np.zeros(16))
    self.assertAllClose(slip.bottom_tangential_traction[0],
                        np.full(16, -0.1))
    self.assertAllClose(slip.top_normal_traction, np.zeros(16))
    self.assertAllClose(slip.mismatch, np.zeros(16))
    self.assertIsNone(slip.penalty_flux)

  def test_penalty_flux(self):
    params = params_lib.Params(kappa=0.01)
    state = state_test_util.rest_state().replace(w_t=np.full(16, 0.1))
    domain_map = flow_map.DomainMap(self.grid, state.w, state.w_t)
    slip = boundary.apply_slip_bc(state, domain_map, params,
                                  constitutive.PENALTY)
    self.assertAllClose(slip.penalty_flux, np.full(16, -10.0))
    with self.assertRaisesRegex(ValueError, "kappa"):
      boundary.apply_slip_bc(state, domain_map, params.replace(kappa=None),
                             constitutive.PENALTY)

  def test_relax_penalty_balances_energy(self):
    params = params_lib.Params(kappa=0.05)
    domain_map = flow_map.DomainMap(self.grid, self.w)
    rho = tf.constant(1.0 + 0.1 * self.grid.coordinates()[1], tf.float64)
    dt = 0.01
    components, w_t, dissipated = boundary.relax_penalty(
        self.components, rho, self.w_t, domain_map, params, dt)
    mass = rho[:, -1] * (1.0 + self.w) * (0.5 * self.grid.hz)

    def energy(velocity, plate_velocity):
      kinetic = 0.5 * mass * tf.add_n([c[:, -1] ** 2 for c in velocity])
      total = kinetic + 0.5 * plate_velocity ** 2
      return float(tf.reduce_sum(total)) * self.grid.plate_cell_area

    before = energy(self.components, self.w_t)
    after = energy(components, w_t)
    self.assertGreater(dissipated, 0.0)
    self.assertAllClose(before - after, dissipated, rtol=1e-10, atol=1e-12)
    m0 = boundary.top_mismatch(self.components,
                               domain_map.with_velocity(self.w_t))
    m1 = boundary.top_mismatch(components, domain_map.with_velocity(w_t))
    self.assertTrue(np.all(np.abs(m1.numpy()) <= np.abs(m0.numpy())))
    self.assertAllEqual(components[0][:, :-1], self.components[0][:, :-1])


if __name__ == "__main__":
  absltest.main()
