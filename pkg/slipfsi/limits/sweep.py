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
"""Sweeps over (eps, nu) and the convergence-rate fit.

Every row is one compressible run whose relative energy is measured against
the reference transformed onto the run's domain. The rate is fitted as

  log(sup_t E_rel - floor) ~ slope log(eps + nu) + intercept

over the successful rows of the diagonal eps = nu. Rows at a fixed nu (the
column) show the incompressible limit in eps alone.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections
from concurrent import futures

from absl import logging
import numpy as np

from slipfsi import errors
from slipfsi import scheme
from slipfsi.diagnostics import bounds
from slipfsi.diagnostics import energy
from slipfsi.diagnostics import monitors
from slipfsi.diagnostics import relative_energy
from slipfsi.geometry import flow_map
from slipfsi.limits import transform

DIAGONAL = "diagonal"
PRODUCT = "product"
DIAGONAL_AND_COLUMN = "diagonal_and_column"
PAIRINGS = (DIAGONAL, PRODUCT, DIAGONAL_AND_COLUMN)

OK = "ok"
FAILED = "failed"

SWEEP_COLUMNS = ("eps", "nu", "sup_rel_energy", "terminal_rel_energy",
                 "initial_rel_energy", "status")

_MONOTONE_TOLERANCE = 0.1


class SweepRow(collections.namedtuple("SweepRow", SWEEP_COLUMNS + (
    "error", "diagonal", "column", "saturated", "surrogate", "initial_terms"))):
  """One run of a sweep.

  The first six fields are the CSV columns. error is the exception class name
  of a failed run, or None. diagonal and column tell which subsequence the
  row belongs to. saturated is True when the run's energy inequality was
  violated beyond options.tol_energy. surrogate is the largest
  bounds.SurrogateNorms along the run. initial_terms splits the initial
  relative energy into its velocity, density and plate parts.
  """
  __slots__ = ()


class SweepTable(collections.namedtuple("SweepTable", [
    "rows", "slope", "intercept", "residual", "floor", "fit_points",
    "surrogate_maxima", "column_monotone"])):
  """The rows in request order plus the fit over the diagonal.

  slope, intercept and residual (root-mean-square of the fit residuals) are
  None when fewer than two diagonal rows lie above the floor.
  column_monotone is None without column rows.
  """
  __slots__ = ()

  def summary(self):
    """The JSON summary: fit, floor and surrogate-norm maxima."""
    return {"slope": self.slope, "intercept": self.intercept,
            "residual": self.residual, "floor": self.floor,
            "fit_points": self.fit_points,
            "surrogate_maxima": dict(self.surrogate_maxima),
            "column_monotone": self.column_monotone,
            "failed_rows": sum(1 for row in self.rows if row.status != OK)}


def sweep_pairs(eps_list, nu_list, pairing=DIAGONAL_AND_COLUMN,
                column_nu=None):
  """The (eps, nu, diagonal, column) entries of a sweep, in row order.

  Raises:
    ValueError: on an unknown pairing or unequal lists for a diagonal.
  """
  if pairing not in PAIRINGS:
    raise ValueError("Unknown pairing: " + str(pairing))
  eps_list, nu_list = list(eps_list), list(nu_list)
  if not eps_list or not nu_list:
    raise ValueError("A sweep needs at least one eps and one nu")
  if pairing == PRODUCT:
    return [(e, n, e == n, False) for e in eps_list for n in nu_list]
  if len(eps_list) != len(nu_list):
    raise ValueError("Diagonal pairing needs equal lists, got " +
                     str(len(eps_list)) + " eps and " + str(len(nu_list)) +
                     " nu")
  entries = [(e, n, True, False) for e, n in zip(eps_list, nu_list)]
  if pairing == DIAGONAL_AND_COLUMN:
    if column_nu is None:
      logging.info("No column_nu given; the sweep runs the diagonal only")
    else:
      entries.extend((e, column_nu, False, True) for e in eps_list)
  return entries


def initial_terms(state, triple, params, contact_floor):
  """The parts of E_rel(0) that bound the rate from below."""
  domain_map = energy.state_map(state, contact_floor)
  rho = state.rho_hat.values
  difference = [u - v for u, v in zip(state.u_hat.components(),
                                      triple.U.components())]
  plate_kinetic, plate_elastic = energy.plate_part(
      state.w - triple.W, state.w_t - triple.W_t, state.grid)
  return {"velocity": energy.kinetic_part(rho, difference, domain_map),
          "density": energy.pressure_part(rho, triple.r.values, params,
                                          domain_map),
          "plate_kinetic": plate_kinetic,
          "plate_elastic": plate_elastic}


def _surrogate_max(trajectory, grid, gamma):
  largest = None
  for _, state in trajectory.snapshots:
    norms = bounds.surrogate_norms(state.w, grid, gamma)
    if largest is None:
      largest = norms
    else:
      largest = bounds.SurrogateNorms(max(largest.p4, norms.p4),
                                      max(largest.p_gamma, norms.p_gamma),
                                      norms.exponent_floor)
  return largest


def _failed_row(eps, nu, diagonal, column, error, reports):
  nan = float("nan")
  values = [r.rel_energy for r in reports]
  return SweepRow(
      eps=eps, nu=nu, sup_rel_energy=max(values) if values else nan,
      terminal_rel_energy=values[-1] if values else nan,
      initial_rel_energy=values[0] if values else nan, status=FAILED,
      error=type(error).__name__, diagonal=diagonal, column=column,
      saturated=False, surrogate=None, initial_terms=None)


def _warn_if_inadmissible(triple, state, grid, floor):
  h = max(grid.hx, grid.hz)
  result = monitors.admissibility_check(
      triple, energy.state_map(state, floor), 10.0 * h * h)
  if not result.passed:
    logging.warning("Transformed reference violates U . n = W_t by %g",
                    result.defect)


def run_row(eps, nu, base_config, ref, diagonal=True, column=False,
            gamma=None):
  """Runs one sweep row; a failure is recorded, not raised.

  SimulationErrors and ValueErrors (for instance a reference that does not
  reach the row's final time) end the row with status FAILED.

  Args:
    eps: the Mach number of the row.
    nu: the viscosity of the row.
    base_config: the shared scheme.RunConfig.
    ref: a reference.ReferenceSolution already on base_config.grid.
    diagonal: whether the row belongs to the diagonal.
    column: whether the row belongs to the fixed-nu column.
    gamma: overrides the adiabatic exponent when given.

  Returns:
    A SweepRow.
  """
  changes = {"eps": eps, "nu": nu}
  if gamma is not None:
    changes["gamma"] = gamma
  params = base_config.params.replace(**changes)
  config = base_config.replace(params=params)
  floor = config.options.contact_floor

  def triple_at(state):
    return transform.transform_reference(ref, state, params, floor).triple

  monitor = relative_energy.RelativeEnergyMonitor(triple_at, params)
  try:
    state = config.initial_state()
    triple = triple_at(state)
    _warn_if_inadmissible(triple, state, config.grid, floor)
    terms = initial_terms(state, triple, params, floor)
    trajectory = scheme.run(config, [monitor])
  except (errors.SimulationError, ValueError) as e:
    logging.warning("Sweep row eps=%g nu=%g failed: %s", eps, nu, e)
    return _failed_row(eps, nu, diagonal, column, e, monitor.reports)
  values = [r.rel_energy for r in monitor.reports]
  check = energy.energy_inequality_check(trajectory,
                                         config.options.tol_energy)
  row = SweepRow(
      eps=eps, nu=nu, sup_rel_energy=max(values),
      terminal_rel_energy=values[-1], initial_rel_energy=values[0],
      status=OK, error=None, diagonal=diagonal, column=column,
      saturated=not check.passed,
      surrogate=_surrogate_max(trajectory, config.grid, params.gamma),
      initial_terms=terms)
  logging.info("Sweep row eps=%g nu=%g: sup E_rel=%g", eps, nu,
               row.sup_rel_energy)
  return row


def fit_rate(rows, floor=0.0):
  """Fits log(sup E_rel - floor) against log(eps + nu).

  Only successful diagonal rows above the floor enter; the largest-eps row
  is left out when its run saturated the energy-inequality tolerance.

  Returns:
    (slope, intercept, residual, points); the first three are None when
    fewer than two points remain.
  """
  candidates = sorted([r for r in rows if r.diagonal and r.status == OK],
                      key=lambda r: r.eps)
  if candidates and candidates[-1].saturated:
    logging.info("Leaving the saturated row eps=%g out of the fit",
                 candidates[-1].eps)
    candidates = candidates[:-1]
  points = [(r.eps + r.nu, r.sup_rel_energy - floor) for r in candidates
            if r.sup_rel_energy > floor]
  if len(points) < 2:
    return None, None, None, len(points)
  x = np.log([p[0] for p in points])
  y = np.log([p[1] for p in points])
  slope, intercept = np.polyfit(x, y, 1)
  residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
  return float(slope), float(intercept), residual, len(points)


def worst_growth(rows, column=False):
  """Largest ratio of sup E_rel between consecutive rows as eps decreases.

  Successful rows of the column (or of the diagonal) enter; 0 when fewer than
  two do, and inf when a row grows from zero.
  """
  selected = sorted([r for r in rows if r.status == OK and (
      r.column if column else r.diagonal)], key=lambda r: -r.eps)
  worst = 0.0
  for earlier, later in zip(selected, selected[1:]):
    if earlier.sup_rel_energy > 0.0:
      worst = max(worst, later.sup_rel_energy / earlier.sup_rel_energy)
    elif later.sup_rel_energy > 0.0:
      worst = float("inf")
  return worst


def column_is_monotone(rows, tolerance=_MONOTONE_TOLERANCE):
  """Whether sup E_rel does not grow as eps decreases along the column."""
  if not any(r.column and r.status == OK for r in rows):
    return None
  return worst_growth(rows, column=True) <= 1.0 + tolerance


def proxy_floor(ref, ref_fine, params,
                contact_floor=flow_map.DEFAULT_CONTACT_FLOOR):
  """The discrimination floor of a proxy reference.

  Compares a proxy with a finer one (typically at (eps0 / 2, nu0 / 2)) by the
  largest relative-energy-like discrepancy over the coarse snapshot times:
  rho_bar |v - v_fine|^2 / 2 on the coarse domain plus the plate terms.
  """
  fine = ref_fine.resampled(ref.grid)
  worst = 0.0
  for t in ref.times:
    a, b = ref.at(t), fine.at(t)
    domain_map = flow_map.DomainMap(ref.grid, a.eta, a.eta_t, contact_floor)
    difference = [u - v for u, v in zip(a.velocity.components(),
                                        b.velocity.components())]
    kinetic = energy.kinetic_part(params.rho_bar, difference, domain_map)
    plate_kinetic, plate_elastic = energy.plate_part(
        a.eta - b.eta, a.eta_t - b.eta_t, ref.grid)
    worst = max(worst, kinetic + plate_kinetic + plate_elastic)
  return worst


def sweep(eps_list, nu_list, base_config, ref, pairing=DIAGONAL_AND_COLUMN,
          column_nu=None, column_gamma=None, floor=0.0, workers=1):
  """Runs a sweep and fits the rate.

  Args:
    eps_list: Mach numbers.
    nu_list: viscosities.
    base_config: the shared scheme.RunConfig; its initial data must be
      buildable for every eps (see limits.initial_data.InitialSpec).
    ref: a reference.ReferenceSolution covering [0, base_config.t_final].
    pairing: one of PAIRINGS.
    column_nu: the fixed nu of the column rows.
    column_gamma: the adiabatic exponent of the column rows, or None for
      base_config.params.gamma.
    floor: the proxy discrimination floor subtracted in the fit.
    workers: rows run concurrently on this many threads.

  Returns:
    A SweepTable with rows in request order.

  Raises:
    ValueError: if nu_s is not positive or the pairing is invalid.
  """
  if not base_config.params.nu_s > 0.0:
    raise ValueError("Sweeps need nu_s > 0: " + str(base_config.params.nu_s))
  if workers < 1:
    raise ValueError("workers must be at least 1: " + str(workers))
  entries = sweep_pairs(eps_list, nu_list, pairing, column_nu)
  ref = ref.resampled(base_config.grid)
  logging.info("Sweep of %d rows on %d workers", len(entries), workers)

  def run_entry(entry):
    eps, nu, diagonal, column = entry
    return run_row(eps, nu, base_config, ref, diagonal, column,
                   column_gamma if column else None)

  if workers == 1:
    rows = [run_entry(entry) for entry in entries]
  else:
    with futures.ThreadPoolExecutor(max_workers=workers) as executor:
      rows = list(executor.map(run_entry, entries))

  slope, intercept, residual, points = fit_rate(rows, floor)
  surrogates = [r.surrogate for r in rows if r.surrogate is not None]
  maxima = {}
  if surrogates:
    maxima = {"p4": max(s.p4 for s in surrogates),
              "p_gamma": max(s.p_gamma for s in surrogates),
              "exponent_floor": max(s.exponent_floor for s in surrogates)}
  table = SweepTable(rows=rows, slope=slope, intercept=intercept,
                     residual=residual, floor=floor, fit_points=points,
                     surrogate_maxima=maxima,
                     column_monotone=column_is_monotone(rows))
  logging.info("Sweep done: slope=%s over %d points, floor=%g", slope, points,
               floor)
  if slope is not None and slope < 1.0:
    logging.warning("Fitted rate %g is below 1", slope)
  return table
