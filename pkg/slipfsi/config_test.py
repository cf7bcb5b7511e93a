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
"""Tests for slipfsi.config."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import json
import math
import os

from absl.testing import absltest
from absl.testing import parameterized
from slipfsi import config
from slipfsi import constitutive
from slipfsi import errors
from slipfsi.limits import reference
from slipfsi.limits import sweep

_SMALL = """
{"params": {"eps": 0.2, "nu": 0.05},
 "grid": {"nx": 16, "nz": 9},
 "initial": {"rho1": {"name": "cos", "amplitude": 0.1},
             "u0": [{"name": "sin", "amplitude": 0.2}, {}]},
 "coupling": {"mode": "penalty"},
 "run": {"t_final": 0.01, "dt_policy": "fixed", "dt": 0.001,
         "output_every": 2},
 "sweep": {"eps_list": [0.2, 0.1], "nu_list": [0.2, 0.1], "column_nu": 0.05},
 "outputs": {"directory": "results"}}
"""


class ConfigTest(parameterized.TestCase):

  def test_defaults(self):
    run_config = config.parse_config("{}")
    self.assertEqual(run_config.grid.nx, 64)
    self.assertEqual(run_config.grid.nz, 33)
    self.assertAlmostEqual(run_config.grid.period, 2.0 * math.pi)
    self.assertIsNone(run_config.dt)
    self.assertEqual(run_config.coupling, constitutive.STRONG)
    self.assertEqual(run_config.params.eps, 0.1)
    self.assertEqual(run_config.params.kappa, 0.001)
    self.assertEqual(run_config.options.cfl, 0.4)
    self.assertFalse(run_config.options.strict_energy)

  def test_small_document(self):
    run_config = config.parse_config(_SMALL)
    self.assertEqual(run_config.grid.shape, (16, 9))
    self.assertEqual(run_config.params.eps, 0.2)
    self.assertEqual(run_config.params.nu, 0.05)
    self.assertEqual(run_config.dt, 0.001)
    self.assertEqual(run_config.coupling, constitutive.PENALTY)
    self.assertEqual(run_config.output_every, 2)
    profiles = run_config.initial.profiles
    self.assertEqual(profiles["rho1"].name, "cos")
    self.assertLen(profiles["u0"], 2)
    self.assertEqual(profiles["u0"][1].name, "zero")
    self.assertIsNone(run_config.initial.eps)
    state = run_config.initial_state()
    self.assertAlmostEqual(state.rho_hat.max(), 1.02)

  def test_three_dimensional_grid(self):
    run_config = config.parse_config('{"grid": {"nx": 8, "nz": 5, "ny": 4}}')
    self.assertEqual(run_config.grid.shape, (8, 4, 5))
    self.assertEqual(run_config.params.dim, 3)

  def test_characteristic_values_set_eps_and_nu(self):
    run_config = config.parse_config(
        '{"params": {"eps": 0.5, "nu": 0.5},'
        ' "characteristic": {"U_f": 1.0, "p_f": 100.0, "rho_f": 1.0,'
        ' "L": 1.0, "nu_f": 0.01}}')
    self.assertAlmostEqual(run_config.params.eps, 0.1)
    self.assertAlmostEqual(run_config.params.nu, 0.01)

  @parameterized.named_parameters(
      ("missing", '{"characteristic": {"U_f": 1.0}}', "characteristic: missing"),
      ("negative", '{"characteristic": {"U_f": 1.0, "p_f": -1.0, "rho_f": 1.0,'
       ' "L": 1.0, "nu_f": 0.01}}', "characteristic: .*p_f"))
  def test_invalid_characteristic(self, text, message):
    with self.assertRaisesRegex(errors.ConfigError, message):
      config.parse_config(text)

  def test_effective_config_omits_absent_characteristic(self):
    self.assertNotIn("characteristic",
                     config.effective_config(config.parse_document("{}")))

  @parameterized.named_parameters(
      ("malformed", '{"params": ', "<string>"),
      ("unknown_key", '{"params": {"epsilon": 0.1}}', "epsilon"),
      ("wrong_type", '{"grid": {"nx": "many"}}', "nx"))
  def test_parse_errors(self, text, message):
    with self.assertRaisesRegex(errors.ConfigError, message):
      config.parse_document(text)

  @parameterized.named_parameters(
      ("params", '{"params": {"eps": -1.0}}', "params: eps"),
      ("grid", '{"grid": {"nx": 2}}', "grid"),
      ("profile", '{"initial": {"w0": {"name": "square"}}}', "initial.w0"),
      ("bound", '{"initial": {"D": 0.0}}', "initial.D"),
      ("fixed_dt", '{"run": {"dt_policy": "fixed"}}', "run.dt_policy"),
      ("policy", '{"run": {"dt_policy": "adaptive"}}', "run.dt_policy"),
      ("options", '{"run": {"cfl": 2.0}}', "run: cfl"),
      ("coupling", '{"coupling": {"mode": "loose"}}', "coupling"),
      ("t_final", '{"run": {"t_final": 0.0}}', "coupling"))
  def test_invalid_values(self, text, message):
    with self.assertRaisesRegex(errors.ConfigError, message):
      config.parse_config(text)

  def test_config_error_is_value_error(self):
    with self.assertRaises(ValueError):
      config.parse_config('{"params": {"gamma": 1.0}}')

  def test_load_missing_file(self):
    path = os.path.join(self.create_tempdir().full_path, "missing.json")
    with self.assertRaisesRegex(errors.ConfigError, "missing.json"):
      config.load_config(path)

  def test_load_file(self):
    path = self.create_tempfile("run.json", content=_SMALL).full_path
    self.assertEqual(config.load_config(path).dt, 0.001)

  def test_effective_config_fills_defaults(self):
    effective = config.effective_config(config.parse_document(_SMALL))
    self.assertEqual(effective["params"]["eps"], 0.2)
    self.assertEqual(effective["params"]["gamma"], 2.0)
    self.assertEqual(effective["run"]["cfl"], 0.4)
    self.assertEqual(effective["outputs"]["run_csv"], "run.csv")
    self.assertEqual(effective["sweep"]["eps_list"], [0.2, 0.1])
    self.assertNotIn("reference", effective["run"])
    self.assertNotIn("ny", effective["grid"])

  def test_effective_config_round_trip(self):
    text = config.dump_effective_config(config.parse_document(_SMALL))
    again = config.dump_effective_config(config.parse_document(text))
    self.assertEqual(text, again)
    self.assertEqual(json.loads(text)["coupling"]["mode"], "penalty")

  def test_dump_writes_file(self):
    path = os.path.join(self.create_tempdir().full_path, "effective.json")
    text = config.dump_effective_config(config.parse_document("{}"), path)
    with open(path) as f:
      self.assertEqual(f.read(), text)

  def test_sweep_settings(self):
    settings = config.sweep_settings(config.parse_document(_SMALL))
    self.assertEqual(settings.eps_list, [0.2, 0.1])
    self.assertEqual(settings.pairing, sweep.DIAGONAL_AND_COLUMN)
    self.assertEqual(settings.column_nu, 0.05)
    self.assertIsNone(settings.column_gamma)
    self.assertIsNone(settings.floor)
    self.assertEqual(settings.workers, 1)

  @parameterized.named_parameters(
      ("empty", "{}", "must not be empty"),
      ("pairing", '{"sweep": {"eps_list": [0.1], "nu_list": [0.1], '
       '"pairing": "zip"}}', "pairing"),
      ("workers", '{"sweep": {"eps_list": [0.1], "nu_list": [0.1], '
       '"workers": 0}}', "workers"),
      ("proxy_eps", '{"sweep": {"eps_list": [0.1], "nu_list": [0.1], '
       '"reference": {"eps0": 0.05}}}', "sweep.reference: eps0"),
      ("proxy_nu", '{"sweep": {"eps_list": [0.1], "nu_list": [0.1], '
       '"reference": {"nu0": 0.05}}}', "sweep.reference: nu0"),
      ("proxy_column_nu", '{"sweep": {"eps_list": [0.1], "nu_list": [0.1], '
       '"column_nu": 0.01}}', "sweep.reference: nu0"))
  def test_invalid_sweep(self, text, message):
    with self.assertRaisesRegex(errors.ConfigError, message):
      config.sweep_settings(config.parse_document(text))

  def test_manufactured_reference(self):
    doc = config.parse_document(
        '{"grid": {"nx": 16, "nz": 9}, "run": {"t_final": 0.5, '
        '"reference": {"provider": "manufactured"}}}')
    run_config = config.build_run_config(doc)
    self.assertTrue(doc.run.HasField("reference"))
    ref = config.build_reference(doc.run.reference, run_config)
    self.assertEqual(ref.provider, reference.MANUFACTURED)
    self.assertEqual(list(ref.times), [0.0, 0.5])

  def test_external_reference(self):
    directory = self.create_tempdir().full_path
    run_config = config.parse_config('{"grid": {"nx": 16, "nz": 9}}')
    reference.manufactured_reference(run_config.grid,
                                     run_config.params).save(directory)
    doc = config.parse_document(
        json.dumps({"sweep": {"reference": {"provider": "external-file",
                                            "path": directory}}}))
    ref = config.build_reference(doc.sweep.reference, run_config)
    self.assertEqual(ref.provider, reference.EXTERNAL_FILE)

  def test_manufactured_reference_skips_the_proxy_bounds(self):
    doc = config.parse_document(
        '{"sweep": {"eps_list": [0.1], "nu_list": [0.1], '
        '"reference": {"provider": "manufactured", "eps0": 0.5}}}')
    self.assertEqual(config.sweep_settings(doc).eps_list, [0.1])

  def test_reference_must_reach_t_final(self):
    directory = self.create_tempdir().full_path
    run_config = config.parse_config('{"grid": {"nx": 16, "nz": 9}}')
    reference.manufactured_reference(run_config.grid, run_config.params,
                                     t_final=0.002).save(directory)
    doc = config.parse_document(
        json.dumps({"sweep": {"reference": {"provider": "external-file",
                                            "path": directory}}}))
    with self.assertRaisesRegex(errors.ConfigError,
                                "sweep.reference: reference covers"):
      config.build_reference(doc.sweep.reference, run_config,
                             "sweep.reference")

  @parameterized.named_parameters(
      ("no_path", '{"provider": "external-file"}', "needs a path"),
      ("provider", '{"provider": "oracle"}', "provider"))
  def test_invalid_reference(self, section, message):
    doc = config.parse_document('{"sweep": {"reference": ' + section + '}}')
    run_config = config.build_run_config(doc)
    with self.assertRaisesRegex(errors.ConfigError,
                                "sweep.reference: .*" + message):
      config.build_reference(doc.sweep.reference, run_config,
                             "sweep.reference")


if __name__ == "__main__":
  absltest.main()
