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
"""Tests for slipfsi.params."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import pickle

from absl.testing import absltest
from absl.testing import parameterized
from slipfsi import params as params_lib


class ParamsTest(parameterized.TestCase):

  def test_defaults(self):
    params = params_lib.Params()
    self.assertEqual(params.gamma, 2.0)
    self.assertEqual(params.eps, 0.1)
    self.assertEqual(params.kappa, 1e-3)
    self.assertEqual(params.dim, 2)
    self.assertAlmostEqual(params.pressure_scale, 100.0)

  def test_replace_validates(self):
    params = params_lib.Params().replace(eps=0.5, nu=0.0)
    self.assertEqual(params.eps, 0.5)
    self.assertEqual(params.nu, 0.0)
    with self.assertRaisesRegex(ValueError, "eps must be positive"):
      params.replace(eps=0.0)

  def test_unknown_parameter(self):
    with self.assertRaisesRegex(ValueError, "Unknown parameters: sigma"):
      params_lib.Params(sigma=1.0)

  def test_strong_coupling_kappa(self):
    self.assertIsNone(params_lib.Params(kappa=None).kappa)

  @parameterized.named_parameters(
      ("gamma", dict(gamma=1.0)),
      ("mu", dict(mu=0.0)),
      ("lam", dict(lam=-1.0)),
      ("nu", dict(nu=-0.1)),
      ("nu_s", dict(nu_s=-1.0)),
      ("beta", dict(delta=0.1, beta=3.0)),
      ("kappa", dict(kappa=0.0)),
      ("rho_bar", dict(rho_bar=0.0)),
      ("dim", dict(dim=4)),
  )
  def test_invalid(self, kwargs):
    with self.assertRaises(ValueError):
      params_lib.Params(**kwargs)

  def test_pickle(self):
    params = params_lib.Params(eps=0.05, dim=3)
    self.assertEqual(pickle.loads(pickle.dumps(params)), params)


if __name__ == "__main__":
  absltest.main()
