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
"""Tests for slipfsi.geometry.piola."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from absl.testing import absltest
import numpy as np
from slipfsi import field
from slipfsi import grid as grid_lib
from slipfsi.geometry import composed_map
from slipfsi.geometry import piola
from slipfsi.ops import stencils
from slipfsi.test import state_test_util
import tensorflow as tf


class PiolaTest(tf.test.TestCase):

  def setUp(self):
    super(PiolaTest, self).setUp()
    self.grid = grid_lib.Grid(32, 17)
    self.w, self.eta = state_test_util.smooth_displacement_pairs(
        self.grid, count=1)[0]
    x, z = self.grid.coordinates()
    self.v_tilde = field.VectorField(
        self.grid, [np.sin(x) * np.cos(np.pi * z), np.cos(x) * z * (1.0 - z)])

  def test_identity_map(self):
    psi = composed_map.compose_psi(self.grid, self.w, self.w)
    v = piola.piola_transform(self.v_tilde, psi)
    self.assertAllClose(v.values, self.v_tilde.values)

  def test_uniform_dilation(self):
    v = piola.piola_pointwise(2.0 * np.eye(2), [1.0, -3.0])
    self.assertAllClose(v, [2.0, -6.0])

  def test_identity_residual_of_flat_stretch(self):
    psi = composed_map.compose_psi(self.grid, np.zeros(32), np.full(32, 0.1))
    self.assertLess(piola.piola_identity_residual(psi), 1e-10)
    identity = composed_map.compose_psi(self.grid, self.w, self.w)
    self.assertLess(piola.piola_identity_residual(identity), 1e-12)

  def test_normal_law(self):
    psi = composed_map.compose_psi(self.grid, self.w, self.eta)
    v = piola.piola_transform(self.v_tilde, psi)
    self.assertLess(piola.normal_law_defect(v, self.v_tilde, psi), 1e-10)

  def test_divergence_is_carried_over(self):
    x, z = self.grid.coordinates()
    psi_fn = tf.constant(np.cos(x) * z * z * (1.0 - z) ** 2, tf.float64)
    target_map = composed_map.compose_psi(self.grid, self.w,
                                          self.eta).target_map
    v_tilde = field.VectorField(self.grid, target_map.from_contravariant(
        stencils.stream_fluxes(psi_fn, self.grid)))
    psi = composed_map.compose_psi(self.grid, self.w, self.eta)
    self.assertLess(float(tf.reduce_max(tf.abs(
        piola.target_divergence(v_tilde, psi)))), 1e-10)
    v = piola.piola_transform(v_tilde, psi)
    self.assertLess(float(tf.reduce_max(tf.abs(
        piola.piola_divergence(v, psi)))), 1e-10)

  def test_divergence_is_preserved_on_every_level(self):
    # The flux J_w A_w v equals J_eta A_eta v_tilde node by node, so the two
    # discrete divergences agree to round-off at any resolution.
    for nx, nz in ((32, 17), (64, 33), (128, 65)):
      grid = grid_lib.Grid(nx, nz)
      x = grid.horizontal_coordinates()[0]
      psi = composed_map.compose_psi(grid, 0.2 * np.cos(x), -0.1 * np.sin(x))
      x, z = grid.coordinates()
      v_tilde = field.VectorField(
          grid, [np.sin(x) * np.cos(np.pi * z), np.cos(x) * z * (1.0 - z)])
      self.assertLess(piola.divergence_preservation_defect(v_tilde, psi),
                      1e-10)

  def test_divergence_preservation_of_identity(self):
    psi = composed_map.compose_psi(self.grid, self.w, self.w)
    self.assertLess(piola.divergence_preservation_defect(self.v_tilde, psi),
                    1e-12)

  def test_interpolated_field(self):
    coarse = grid_lib.Grid(16, 9)
    x, z = coarse.coordinates()
    v_tilde = field.VectorField(coarse, [1.0 + 0.0 * x, 2.0 * z])
    psi = composed_map.compose_psi(self.grid, np.zeros(32), np.zeros(32))
    v = piola.piola_transform(v_tilde, psi)
    _, z_fine = self.grid.coordinates()
    self.assertAllClose(v.component(0), np.ones(self.grid.shape))
    self.assertAllClose(v.component(1), 2.0 * z_fine)

  def test_deviation_norms(self):
    norms = piola.psi_deviation_norms(
        composed_map.compose_psi(self.grid, self.w, self.w))
    for value in norms.values():
      self.assertAllClose(value, 0.0, atol=1e-12)
    norms = piola.psi_deviation_norms(
        composed_map.compose_psi(self.grid, self.w, self.eta))
    self.assertGreater(norms["jacobian_deviation"], 0.0)
    self.assertGreater(norms["displacement_h2"], 0.0)


if __name__ == "__main__":
  absltest.main()
