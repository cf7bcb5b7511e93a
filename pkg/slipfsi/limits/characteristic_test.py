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
"""Tests for slipfsi.limits.characteristic."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from unittest import mock

from absl.testing import absltest
from absl.testing import parameterized
from slipfsi.limits import characteristic


class CharacteristicTest(parameterized.TestCase):

  def test_mach_and_reynolds(self):
    cv = characteristic.CharacteristicValues(U_f=1.0, p_f=100.0, rho_f=1.0,
                                             L=1.0, nu_f=0.01)
    scaled = characteristic.nondimensionalize(cv)
    self.assertAlmostEqual(scaled.eps, 0.1)
    self.assertAlmostEqual(scaled.mach, 0.1)
    self.assertAlmostEqual(scaled.reynolds, 100.0)
    self.assertAlmostEqual(scaled.nu, 0.01)
    for ratio in scaled.structural_ratios:
      self.assertAlmostEqual(ratio, 1.0)

  def test_plate_speed(self):
    cv = characteristic.CharacteristicValues(1.0, 1.0, 1.0, 1.0, 1.0, W=2.0,
                                             T_s=4.0)
    self.assertEqual(cv.U_s, 0.5)

  def test_structural_ratios(self):
    cv = characteristic.CharacteristicValues(U_f=2.0, p_f=1.0, rho_f=1.0,
                                             L=1.0, nu_f=1.0, rho_s=4.0,
                                             E=8.0, W=2.0, T_s=1.0, N_s=3.0)
    inertia, stiffness, damping = characteristic.structural_ratios(cv)
    self.assertAlmostEqual(inertia, 4.0 * 4.0 / 4.0)
    self.assertAlmostEqual(stiffness, 16.0 * 8.0 / 4.0)
    self.assertAlmostEqual(damping, 2.0 * 3.0 / 4.0)

  def test_unbalanced_ratio_warns(self):
    cv = characteristic.CharacteristicValues(U_f=1.0, p_f=1.0, rho_f=1.0,
                                             L=1.0, nu_f=1.0, rho_s=2.0)
    with mock.patch.object(characteristic.logging, "warning") as warning:
      characteristic.nondimensionalize(cv)
    self.assertEqual(warning.call_count, 1)

  def test_balanced_ratios_are_quiet(self):
    cv = characteristic.CharacteristicValues(U_f=1.0, p_f=4.0, rho_f=1.0,
                                             L=1.0, nu_f=1.0)
    with mock.patch.object(characteristic.logging, "warning") as warning:
      characteristic.nondimensionalize(cv)
    warning.assert_not_called()

  @parameterized.parameters("U_f", "p_f", "L", "E", "T_s")
  def test_non_positive(self, name):
    values = dict(U_f=1.0, p_f=1.0, rho_f=1.0, L=1.0, nu_f=1.0)
    values[name] = 0.0
    with self.assertRaisesRegex(ValueError, name):
      characteristic.CharacteristicValues(**values)


if __name__ == "__main__":
  absltest.main()
