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
"""Tests for slipfsi.field."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from absl.testing import absltest
import numpy as np
from slipfsi import errors
from slipfsi import field
from slipfsi import grid as grid_lib
from slipfsi import params as params_lib
import tensorflow as tf


class FieldTest(tf.test.TestCase):

  def setUp(self):
    super(FieldTest, self).setUp()
    self.grid = grid_lib.Grid(16, 9)

  def test_scalar_from_function(self):
    f = field.scalar_from_function(self.grid, lambda x, z: 2.0 + z)
    self.assertAlmostEqual(f.min(), 2.0)
    self.assertAlmostEqual(f.max(), 3.0)

  def test_vector_from_list(self):
    v = field.vector_from_function(self.grid,
                                   lambda x, z: [np.cos(x), 0.0 * z + 1.0])
    self.assertEqual(v.numpy().shape, (2, 16, 9))
    self.assertAllClose(v.component(1), np.ones((16, 9)))
    self.assertLen(v.components(), 2)

  def test_shape_mismatch(self):
    with self.assertRaisesRegex(ValueError, "vector field"):
      field.VectorField(self.grid, np.zeros((16, 9)))
    with self.assertRaisesRegex(ValueError, "Expected 2 components"):
      field.constant_vector(self.grid, [1.0])

  def test_rest_state(self):
    state = field.rest_state(self.grid, params_lib.Params(rho_bar=2.0))
    self.assertEqual(state.t, 0.0)
    self.assertAllEqual(state.rho_hat.numpy(), np.full((16, 9), 2.0))
    self.assertAllEqual(state.u_hat.numpy(), np.zeros((2, 16, 9)))
    state.validate(0.05)
    state.check_finite()

  def test_replace(self):
    state = field.rest_state(self.grid, params_lib.Params())
    moved = state.replace(t=1.5, w=np.full(16, 0.1))
    self.assertEqual(moved.t, 1.5)
    self.assertAllClose(moved.w, np.full(16, 0.1))
    self.assertAllEqual(state.w, np.zeros(16))

  def test_validate(self):
    state = field.rest_state(self.grid, params_lib.Params())
    with self.assertRaises(errors.DegeneracyError):
      state.replace(w=np.full(16, -0.96)).validate(0.05)
    with self.assertRaises(errors.PositivityError):
      state.replace(
          rho_hat=field.constant_scalar(self.grid, 0.0)).validate(0.05)

  def test_check_finite(self):
    state = field.rest_state(self.grid, params_lib.Params())
    w = np.zeros(16)
    w[3] = np.nan
    with self.assertRaises(errors.BlowUpError):
      state.replace(w=w).check_finite()


if __name__ == "__main__":
  absltest.main()
