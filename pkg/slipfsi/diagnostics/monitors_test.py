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
"""Tests for slipfsi.diagnostics.monitors."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from absl.testing import absltest
from slipfsi import params as params_lib
from slipfsi import scheme
from slipfsi.diagnostics import energy
from slipfsi.diagnostics import monitors
from slipfsi.diagnostics import relative_energy
from slipfsi.test import state_test_util
import tensorflow as tf


class MonitorsTest(tf.test.TestCase):

  def setUp(self):
    super(MonitorsTest, self).setUp()
    self.params = params_lib.Params()

  def test_uniform_density_ratio_is_one(self):
    state = state_test_util.displaced_state(amplitude=0.2)
    curve = monitors.boundary_layer_pressure(state, self.params,
                                             [0.05, 0.1, 0.25])
    ratios = monitors.concentration_ratios(state, self.params, curve)
    self.assertEqual([s for s, _ in ratios], [0.05, 0.1, 0.25])
    self.assertAllClose([r for _, r in ratios], [1.0, 1.0, 1.0])

  def test_layer_integral_of_rest_state(self):
    state = state_test_util.rest_state()
    curve = monitors.boundary_layer_pressure(state, self.params, [0.1])
    # p_delta(1) = 1 over a layer of width 0.1 under a flat plate.
    self.assertAllClose(curve[0][1], 0.1 * 2.0 * 3.141592653589793)

  def test_invalid_sigma(self):
    state = state_test_util.rest_state()
    with self.assertRaisesRegex(ValueError, "sigma"):
      monitors.boundary_layer_pressure(state, self.params, [0.5])

  def test_boundary_layer_monitor(self):
    config = state_test_util.pressure_pulse_config(t_final=0.004)
    monitor = monitors.BoundaryLayerMonitor(config.params, [0.1, 0.2])
    scheme.run(config, [monitor])
    self.assertLen(monitor.curves, 3)
    self.assertGreater(monitor.max_ratio, 0.0)

  def test_admissibility_check(self):
    state = state_test_util.displaced_state(amplitude=0.1)
    triple = state_test_util.admissible_triples(state, count=1)[0]
    check = monitors.admissibility_check(triple, state.w, 1e-10)
    self.assertTrue(check.passed)
    self.assertLess(check.defect, 1e-10)

  def test_admissibility_check_detects_defect(self):
    state = state_test_util.displaced_state(amplitude=0.1)
    triple = state_test_util.admissible_triples(state, count=1)[0]
    shifted = triple._replace(W_t=triple.W_t + 0.01)
    check = monitors.admissibility_check(shifted, state.w, 1e-10)
    self.assertFalse(check.passed)
    self.assertAllClose(check.defect, 0.01)

  def test_admissibility_check_takes_a_map(self):
    state = state_test_util.rest_state()
    triple = relative_energy.equilibrium_triple(state.grid, self.params)
    domain_map = energy.state_map(state)
    self.assertTrue(monitors.admissibility_check(triple, domain_map,
                                                 0.0).passed)


if __name__ == "__main__":
  absltest.main()
