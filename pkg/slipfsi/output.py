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
"""Result files: CSV time series, sweep tables and raw field dumps.

Column orders are fixed:

  run.csv              RUN_COLUMNS
  energy.csv           ENERGY_COLUMNS
  relative_energy.csv  RELATIVE_ENERGY_COLUMNS
  sweep.csv            sweep.SWEEP_COLUMNS

Field dumps are raw little-endian float64 arrays in row-major order, one
file per field, each with a JSON sidecar giving shape, grid and time.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import csv
import json
import os

import numpy as np

from slipfsi.limits import sweep as sweep_lib

RUN_COLUMNS = ("t", "step", "dt", "mass", "mismatch", "rho_min", "rho_max",
               "u_max", "w_min", "w_max", "iterations")
ENERGY_COLUMNS = ("t", "kinetic", "pressure_potential", "plate_kinetic",
                  "plate_elastic", "total", "diss_viscous", "diss_top_slip",
                  "diss_bottom_slip", "diss_plate", "diss_penalty", "mass",
                  "mismatch")
RELATIVE_ENERGY_COLUMNS = ("t", "rel_energy", "remainder_total", "advective",
                           "pressure_divergence", "boundary_pressure",
                           "viscous_cross", "plate_residual", "transport",
                           "top_slip_cross", "bottom_slip_cross", "slack")


def _format(value):
  if isinstance(value, float):
    return repr(value)
  return str(value)


def write_rows(path, columns, rows):
  """Writes rows (namedtuples or dicts) with the given header order."""
  with open(path, "w") as f:
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
      values = row if isinstance(row, dict) else row._asdict()
      writer.writerow([_format(values[c]) for c in columns])


def write_run_csv(path, trajectory):
  write_rows(path, RUN_COLUMNS, trajectory.step_rows)


def write_energy_csv(path, trajectory):
  write_rows(path, ENERGY_COLUMNS, trajectory.energy_reports)


def write_relative_energy_csv(path, reports):
  write_rows(path, RELATIVE_ENERGY_COLUMNS, reports)


def write_sweep(csv_path, summary_path, table):
  """Writes sweep.csv and the JSON summary of a SweepTable."""
  write_rows(csv_path, sweep_lib.SWEEP_COLUMNS, table.rows)
  summary = table.summary()
  summary["initial_terms"] = [
      {"eps": r.eps, "nu": r.nu, "terms": r.initial_terms}
      for r in table.rows if r.initial_terms is not None]
  with open(summary_path, "w") as f:
    json.dump(summary, f, indent=2, sort_keys=True)
    f.write("\n")


def _grid_sidecar(grid):
  return {"nx": grid.nx, "ny": grid.ny, "nz": grid.nz, "period": grid.period,
          "period_y": grid.period_y}


def dump_array(directory, name, values, metadata):
  """Writes name.bin and name.json; returns the path of the binary file."""
  values = np.ascontiguousarray(np.asarray(values, dtype="<f8"))
  path = os.path.join(directory, name + ".bin")
  values.tofile(path)
  sidecar = dict(metadata, shape=list(values.shape), dtype="float64",
                 order="C", byteorder="little")
  with open(os.path.join(directory, name + ".json"), "w") as f:
    json.dump(sidecar, f, indent=2, sort_keys=True)
  return path


def dump_state(directory, step, state):
  """Dumps rho_hat, u_hat, w and w_t as step_<n>_<name>.bin."""
  if not os.path.isdir(directory):
    os.makedirs(directory)
  metadata = {"t": state.t, "step": step, "grid": _grid_sidecar(state.grid)}
  arrays = (("rho_hat", state.rho_hat.numpy()), ("u_hat", state.u_hat.numpy()),
            ("w", state.w.numpy()), ("w_t", state.w_t.numpy()))
  return [dump_array(directory, "step_" + str(step) + "_" + name, values,
                     dict(metadata, name=name))
          for name, values in arrays]


def load_array(path):
  """Reads a dump written by dump_array from its .bin path."""
  with open(os.path.splitext(path)[0] + ".json") as f:
    sidecar = json.load(f)
  return np.fromfile(path, dtype="<f8").reshape(sidecar["shape"]), sidecar
