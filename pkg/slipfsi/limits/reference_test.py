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
"""Tests for slipfsi.limits.reference."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import os

from absl.testing import absltest
import numpy as np
from slipfsi import grid as grid_lib
from slipfsi import params as params_lib
from slipfsi.limits import reference
from slipfsi.test import state_test_util
import tensorflow as tf


def _linear_reference(grid):
  """Two snapshots whose pressure and plate go from 0 to 1."""
  velocity = np.zeros((2, grid.dim) + grid.shape)
  pressure = np.stack([np.zeros(grid.shape), np.ones(grid.shape)])
  eta = np.stack([np.zeros(grid.plate_shape), np.full(grid.plate_shape, 0.1)])
  eta_t = np.stack([np.zeros(grid.plate_shape), np.ones(grid.plate_shape)])
  return reference.ReferenceSolution(reference.MANUFACTURED, grid, [0.0, 2.0],
                                     velocity, pressure, eta, eta_t)


class ReferenceTest(tf.test.TestCase):

  def setUp(self):
    super(ReferenceTest, self).setUp()
    self.grid = state_test_util.small_grid()
    self.params = params_lib.Params()

  def test_linear_in_time(self):
    snapshot = _linear_reference(self.grid).at(0.5)
    self.assertAllClose(snapshot.pressure, np.full(self.grid.shape, 0.25))
    self.assertAllClose(snapshot.eta, np.full(16, 0.025))
    self.assertAllClose(snapshot.eta_t, np.full(16, 0.25))
    self.assertAllClose(snapshot.eta_tt, np.full(16, 0.5))
    self.assertAllEqual(snapshot.velocity_t.values,
                        np.zeros((2,) + self.grid.shape))
    self.assertEqual(snapshot.t, 0.5)

  def test_endpoints(self):
    ref = _linear_reference(self.grid)
    self.assertAllClose(ref.at(0.0).pressure, np.zeros(self.grid.shape))
    self.assertAllClose(ref.at(2.0).pressure, np.ones(self.grid.shape))

  def test_outside_the_interval(self):
    with self.assertRaisesRegex(ValueError, "outside"):
      _linear_reference(self.grid).at(2.5)

  def test_single_snapshot(self):
    zeros = np.zeros((1,) + self.grid.plate_shape)
    ref = reference.ReferenceSolution(
        reference.MANUFACTURED, self.grid, [1.0],
        np.zeros((1, 2) + self.grid.shape), np.ones((1,) + self.grid.shape),
        zeros, zeros)
    snapshot = ref.at(1.0)
    self.assertAllClose(snapshot.pressure, np.ones(self.grid.shape))
    self.assertAllEqual(snapshot.eta_tt, np.zeros(16))
    self.assertAllEqual(snapshot.velocity_t.values,
                        np.zeros((2,) + self.grid.shape))

  def test_invalid_construction(self):
    shape = self.grid.shape
    plate = self.grid.plate_shape
    with self.assertRaisesRegex(ValueError, "provider"):
      reference.ReferenceSolution("guess", self.grid, [0.0],
                                  np.zeros((1, 2) + shape),
                                  np.zeros((1,) + shape),
                                  np.zeros((1,) + plate),
                                  np.zeros((1,) + plate))
    with self.assertRaisesRegex(ValueError, "increase"):
      reference.ReferenceSolution(reference.MANUFACTURED, self.grid,
                                  [1.0, 0.0], np.zeros((2, 2) + shape),
                                  np.zeros((2,) + shape),
                                  np.zeros((2,) + plate),
                                  np.zeros((2,) + plate))
    with self.assertRaisesRegex(ValueError, "pressure has shape"):
      reference.ReferenceSolution(reference.MANUFACTURED, self.grid, [0.0],
                                  np.zeros((1, 2) + shape),
                                  np.zeros((1, 4, 4)),
                                  np.zeros((1,) + plate),
                                  np.zeros((1,) + plate))

  def test_save_and_load(self):
    ref = reference.manufactured_reference(self.grid, self.params)
    directory = os.path.join(self.create_tempdir().full_path, "ref")
    ref.save(directory)
    self.assertTrue(os.path.exists(os.path.join(directory, "reference.json")))
    loaded = reference.ReferenceSolution.load(directory)
    self.assertEqual(loaded.provider, reference.EXTERNAL_FILE)
    self.assertEqual(loaded.metadata["source_provider"],
                     reference.MANUFACTURED)
    self.assertTrue(loaded.grid.same_as(self.grid))
    self.assertAllEqual(loaded.times, ref.times)
    self.assertAllEqual(loaded.at(0.5).velocity.values,
                        ref.at(0.5).velocity.values)
    self.assertEqual(loaded.defect, ref.defect)

  def test_manufactured_is_divergence_free_and_steady(self):
    ref = reference.manufactured_reference(self.grid, self.params,
                                           amplitude=0.05, t_final=1.0)
    self.assertEqual(ref.provider, reference.MANUFACTURED)
    self.assertLess(ref.defect, 1e-12)
    early, late = ref.at(0.0), ref.at(1.0)
    self.assertAllEqual(early.velocity.values, late.velocity.values)
    self.assertAllEqual(early.pressure, late.pressure)
    self.assertAllEqual(early.velocity_t.values,
                        np.zeros((2,) + self.grid.shape))
    vertical = early.velocity.component(1)
    self.assertAllEqual(vertical, np.zeros(self.grid.shape))
    self.assertAllClose(early.velocity.component(0)[3, :],
                        0.05 * np.cos(np.pi * self.grid.z))
    self.assertAllEqual(early.eta, np.zeros(16))

  def test_manufactured_solves_the_limit_system(self):
    ref = reference.manufactured_reference(self.grid, self.params,
                                           amplitude=0.5, k=2.0)
    for t in (0.0, 0.5):
      residuals = reference.limit_residuals(ref, self.params, t)
      self.assertAllClose(list(residuals), [0.0] * 4, atol=1e-13)

  def test_limit_residuals_see_an_unbalanced_plate(self):
    residuals = reference.limit_residuals(_linear_reference(self.grid),
                                          self.params, 1.0)
    # eta_tt = 0.5 against Pi = 0.5 on the wall; the plate is balanced.
    self.assertAllClose(residuals.plate, 0.0, atol=1e-12)
    # eta_t = 0.5 is not matched by the resting fluid.
    self.assertAllClose(residuals.kinematic, 0.5)
    self.assertAllClose(residuals.momentum, 0.0, atol=1e-12)

  def test_manufactured_in_three_dimensions(self):
    grid = grid_lib.Grid(8, 5, ny=8)
    params = self.params.replace(dim=3)
    ref = reference.manufactured_reference(grid, params)
    self.assertEqual(ref.at(0.0).velocity.values.shape, (3,) + grid.shape)
    self.assertLess(ref.defect, 1e-12)
    self.assertAllClose(list(reference.limit_residuals(ref, params, 0.5)),
                        [0.0] * 4, atol=1e-13)

  def test_covers(self):
    ref = _linear_reference(self.grid)
    self.assertTrue(ref.covers(0.0, 2.0))
    self.assertTrue(ref.covers(0.5, 1.0))
    self.assertFalse(ref.covers(0.0, 2.5))
    self.assertFalse(ref.covers(-0.1, 1.0))

  def test_resampled(self):
    ref = reference.manufactured_reference(self.grid, self.params)
    self.assertIs(ref.resampled(self.grid), ref)
    fine = ref.resampled(self.grid.refined())
    self.assertEqual(fine.at(0.0).pressure.shape, (32, 17))
    self.assertIn("resampled_from", fine.metadata)
    # Nodes shared with the coarse grid keep their values.
    self.assertAllClose(fine.at(0.0).velocity.component(0)[::2, ::2],
                        ref.at(0.0).velocity.component(0), atol=1e-12)

  def test_proxy(self):
    config = state_test_util.pressure_pulse_config(t_final=0.004)
    ref = reference.reference_proxy(config, 0.1, 0.05,
                                    grid=state_test_util.small_grid())
    self.assertEqual(ref.provider, reference.PROXY_RUN)
    self.assertAllClose(ref.times, [0.0, 0.002, 0.004])
    self.assertEqual(ref.metadata["eps0"], 0.1)
    self.assertEqual(ref.metadata["nu0"], 0.05)
    self.assertGreaterEqual(ref.defect, 0.0)
    self.assertEqual(ref.at(0.004).pressure.shape, self.grid.shape)

  def test_proxy_needs_buildable_initial_data(self):
    state = state_test_util.rest_state()
    config = state_test_util.pressure_pulse_config().replace(initial=state)
    with self.assertRaisesRegex(ValueError, "initial"):
      reference.reference_proxy(config, 0.1, 0.05)


if __name__ == "__main__":
  absltest.main()
