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
"""Tests for slipfsi.errors."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from absl.testing import absltest
from absl.testing import parameterized
from slipfsi import errors


class ErrorsTest(parameterized.TestCase):

  @parameterized.named_parameters(
      ("degeneracy", errors.DegeneracyError("x"), 2),
      ("positivity", errors.PositivityError("x"), 3),
      ("blow_up", errors.BlowUpError("x"), 4),
      ("energy", errors.EnergyInequalityError("x"), 4),
      ("iteration", errors.IterationError("x", mismatch=1.0), 4),
      ("timeout", errors.SimulationTimeoutError("x"), 5),
      ("config", errors.ConfigError("x"), 64),
      ("other", RuntimeError("x"), 1),
  )
  def test_exit_code(self, error, code):
    self.assertEqual(errors.exit_code_for(error), code)

  def test_time_in_message(self):
    error = errors.DegeneracyError("Self-contact", t=0.25)
    self.assertEqual(error.t, 0.25)
    self.assertEqual(str(error), "Self-contact (t=0.25)")

  def test_mismatch(self):
    error = errors.IterationError("No convergence", t=1.0, mismatch=0.5)
    self.assertEqual(error.mismatch, 0.5)
    self.assertIsInstance(error, errors.SimulationError)

  def test_config_error_is_value_error(self):
    self.assertIsInstance(errors.ConfigError("x"), ValueError)
    self.assertIsInstance(errors.InterpolationError("x"), ValueError)


if __name__ == "__main__":
  absltest.main()
