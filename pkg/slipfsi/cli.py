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
r"""Command-line driver.

  slipfsi run --config run.json --out results
  slipfsi sweep --config sweep.json --workers 4
  slipfsi check geometry --seed 7

Exit codes: 0 success, 1 failed check, 2 degeneracy, 3 positivity,
4 blow-up (including strict energy violations and monolithic
non-convergence), 5 timeout, 64 configuration error. The environment
variable FSI_SLAB_OUT overrides --out.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import os
import sys

from absl import app
from absl import flags
from absl import logging

from slipfsi import checks
from slipfsi import config as config_lib
from slipfsi import errors
from slipfsi import output
from slipfsi import scheme
from slipfsi.diagnostics import monitors
from slipfsi.diagnostics import relative_energy
from slipfsi.limits import reference as reference_lib
from slipfsi.limits import sweep as sweep_lib
from slipfsi.limits import transform

FLAGS = flags.FLAGS

flags.DEFINE_string("config", None, "Path of the JSON configuration document.")
flags.DEFINE_string("out", None, "Output directory; overrides outputs.directory.")
flags.DEFINE_integer("workers", None, "Concurrent sweep rows.")
flags.DEFINE_bool("strict", False,
                  "Abort a run on an energy-inequality violation.")
flags.DEFINE_integer("seed", 0, "Seed of the randomized check suites.")
flags.DEFINE_float("tol_energy", 1e-3,
                   "Energy-inequality tolerance of the energy check suite.")

OUT_ENV = "FSI_SLAB_OUT"

RUN = "run"
SWEEP = "sweep"
CHECK = "check"
COMMANDS = (RUN, SWEEP, CHECK)

_LAYER_SIGMAS = (0.25, 0.125, 0.0625)


def output_directory(doc, out_flag=None):
  """FSI_SLAB_OUT, then --out, then outputs.directory; created if needed."""
  directory = os.environ.get(OUT_ENV) or out_flag or doc.outputs.directory
  if not os.path.isdir(directory):
    os.makedirs(directory)
  return directory


def _reference_monitor(ref, config):
  ref = ref.resampled(config.grid)
  params = config.params
  floor = config.options.contact_floor

  def triple_at(state):
    return transform.transform_reference(ref, state, params, floor).triple

  return relative_energy.RelativeEnergyMonitor(triple_at, params)


def cmd_run(config_path, out=None, strict=False):
  """Runs one simulation and writes its CSV files; returns the exit code."""
  doc = config_lib.load_document(config_path)
  config = config_lib.build_run_config(doc)
  if strict:
    config.options.strict_energy = True
  directory = output_directory(doc, out)
  config_lib.dump_effective_config(
      doc, os.path.join(directory, doc.outputs.effective_config))

  layer = monitors.BoundaryLayerMonitor(config.params, _LAYER_SIGMAS)
  reference_monitor = None
  if doc.run.HasField("reference"):
    ref = config_lib.build_reference(doc.run.reference, config,
                                     "run.reference")
    reference_monitor = _reference_monitor(ref, config)
  trajectory = scheme.run(
      config, [m for m in (layer, reference_monitor) if m is not None])
  logging.info("Largest boundary-layer pressure ratio: %g", layer.max_ratio)

  outputs = doc.outputs
  output.write_run_csv(os.path.join(directory, outputs.run_csv), trajectory)
  output.write_energy_csv(os.path.join(directory, outputs.energy_csv),
                          trajectory)
  if reference_monitor is not None:
    output.write_relative_energy_csv(
        os.path.join(directory, outputs.relative_energy_csv),
        reference_monitor.reports)
  if config.dump_fields:
    fields_dir = os.path.join(directory, outputs.fields_dir)
    last = len(trajectory.step_rows)
    for index, (_, state) in enumerate(trajectory.snapshots):
      step = min(index * config.output_every, last)
      output.dump_state(fields_dir, step, state)
  logging.info("Run written to %s", directory)
  return 0


def _floor(section, settings, ref, config):
  if settings.floor is not None:
    return settings.floor
  if section.estimate_floor and ref.provider == reference_lib.PROXY_RUN:
    finer = reference_lib.reference_proxy(config, 0.5 * section.eps0,
                                          0.5 * section.nu0, ref.grid)
    return sweep_lib.proxy_floor(ref, finer, config.params,
                                 config.options.contact_floor)
  return 0.0


def cmd_sweep(config_path, out=None, workers=None):
  """Runs a sweep and writes sweep.csv and its summary; returns 0."""
  doc = config_lib.load_document(config_path)
  config = config_lib.build_run_config(doc)
  settings = config_lib.sweep_settings(doc)
  directory = output_directory(doc, out)
  config_lib.dump_effective_config(
      doc, os.path.join(directory, doc.outputs.effective_config))

  section = doc.sweep.reference
  ref = config_lib.build_reference(section, config, "sweep.reference")
  floor = _floor(section, settings, ref, config)
  table = sweep_lib.sweep(
      settings.eps_list, settings.nu_list, config, ref,
      pairing=settings.pairing, column_nu=settings.column_nu,
      column_gamma=settings.column_gamma, floor=floor,
      workers=workers or settings.workers)
  output.write_sweep(os.path.join(directory, doc.outputs.sweep_csv),
                     os.path.join(directory, doc.outputs.sweep_summary), table)
  return 0


def cmd_check(subject, seed=0, tol_energy=1e-3, stream=None):
  """Runs a check suite, prints one line per assertion; 0 iff all pass."""
  stream = stream or sys.stdout
  results = checks.run_suite(subject, seed=seed, tol_energy=tol_energy)
  for r in results:
    print("%-8s %-32s value=%-12.4g limit=%-12.4g margin=%-12.4g %s" % (
        r.suite, r.name, r.value, r.limit, r.margin,
        "PASS" if r.passed else "FAIL"), file=stream)
  return 0 if all(r.passed for r in results) else 1


def dispatch(argv):
  """Runs the command named in argv[1:] and returns its exit code."""
  if len(argv) < 2 or argv[1] not in COMMANDS:
    raise app.UsageError("Expected one of " + ", ".join(COMMANDS))
  command = argv[1]
  try:
    if command == CHECK:
      if len(argv) != 3:
        raise app.UsageError("check needs one subject of " +
                             ", ".join(checks.SUBJECTS))
      if argv[2] not in checks.SUBJECTS:
        raise app.UsageError("Unknown check subject: " + argv[2])
      return cmd_check(argv[2], FLAGS.seed, FLAGS.tol_energy)
    if not FLAGS.config:
      raise errors.ConfigError("--config is required for " + command)
    if command == RUN:
      return cmd_run(FLAGS.config, FLAGS.out, FLAGS.strict)
    return cmd_sweep(FLAGS.config, FLAGS.out, FLAGS.workers)
  except (errors.ConfigError, errors.SimulationError) as e:
    logging.error("%s failed: %s", command, e)
    print(type(e).__name__ + ": " + str(e), file=sys.stderr)
    return errors.exit_code_for(e)
  except ValueError as e:
    # Bad input that slipped past config validation.
    logging.error("%s failed on its input: %s", command, e)
    print(type(e).__name__ + ": " + str(e), file=sys.stderr)
    return errors.ConfigError.exit_code


def main(argv):
  return dispatch(argv)


def run_main():
  app.run(main)


if __name__ == "__main__":
  run_main()
