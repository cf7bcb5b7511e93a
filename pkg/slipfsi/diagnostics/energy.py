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
"""The energy of the coupled system and its dissipation.

  E = int rho |u|^2 / 2 + eps^-2 int (H(rho) - H'(rho_bar)(rho - rho_bar)
      - H(rho_bar)) + int_Gamma |w_t|^2 / 2 + |lap w|^2 / 2

with the dissipation rates

  nu int S(grad u):grad u, alpha nu int_Gamma^w |(u - w_t e_3)_tau|^2,
  alpha0 nu int_bottom |u_h|^2, nu_s int_Gamma |grad w_t|^2,

and, in penalty mode, the exact loss of the relaxation substep. Volume
integrals are taken on the reference slab with weight J_w. The functions that
take differences (u - U, w_t - W_t) are shared with relative_energy, so that
the comparison triple (rho_bar, 0, 0) reproduces these numbers exactly.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections

from absl import logging
import tensorflow as tf

from slipfsi import constitutive
from slipfsi import plate
from slipfsi.geometry import flow_map
from slipfsi.ops import quadrature

_DISSIPATION_FIELDS = ("diss_viscous", "diss_top_slip", "diss_bottom_slip",
                       "diss_plate", "diss_penalty")


class EnergyReport(collections.namedtuple("EnergyReport", [
    "t", "kinetic", "pressure_potential", "plate_kinetic", "plate_elastic",
    "total", "diss_viscous", "diss_top_slip", "diss_bottom_slip",
    "diss_plate", "diss_penalty", "mass", "mismatch"])):
  """Energy parts at time t and the dissipation accumulated since t = 0."""
  __slots__ = ()

  @property
  def dissipated(self):
    return sum(getattr(self, name) for name in _DISSIPATION_FIELDS)


class DissipationRates(collections.namedtuple("DissipationRates", [
    "viscous", "top_slip", "bottom_slip", "plate"])):
  """Instantaneous dissipation rates (the penalty loss is exact per step)."""
  __slots__ = ()

  def __add__(self, other):
    return DissipationRates(*[a + b for a, b in zip(self, other)])

  def scaled(self, factor):
    return DissipationRates(*[factor * a for a in self])


def state_map(state, options_floor=flow_map.DEFAULT_CONTACT_FLOOR):
  """The DomainMap of a state, with its own plate velocity."""
  return flow_map.DomainMap(state.grid, state.w, state.w_t, options_floor,
                            t=state.t)


def kinetic_part(rho, velocity, domain_map):
  """int rho |v|^2 / 2 on the moving domain."""
  square = tf.add_n([v * v for v in velocity])
  return 0.5 * quadrature.integrate_values(rho * square, domain_map.grid,
                                           domain_map.jacobian)


def pressure_part(rho, r, params, domain_map):
  """eps^-2 int H(rho) - H'(r)(rho - r) - H(r) on the moving domain."""
  potential = constitutive.relative_pressure_potential(rho, r, params)
  return params.pressure_scale * quadrature.integrate_values(
      potential, domain_map.grid, domain_map.jacobian)


def plate_part(w, w_t, grid):
  """Kinetic and elastic plate energies of (w, w_t)."""
  kinetic = 0.5 * plate._parseval(w_t, grid)  # pylint: disable=protected-access
  elastic = plate.plate_energy(w, tf.zeros_like(w_t), grid)
  return kinetic, elastic


def _tangential(vector, unit):
  normal = tf.add_n([v * n for v, n in zip(vector, unit)])
  return [v - normal * n for v, n in zip(vector, unit)]


def difference_rates(velocity, plate_velocity, wall_velocity, domain_map,
                     params):
  """Dissipation rates of a velocity difference.

  Args:
    velocity: list of dim tensors, u or u - U.
    plate_velocity: w_t or w_t - W_t, plate shape.
    wall_velocity: the plate velocity entering the top slip, w_t or
      w_t - W_t.
    domain_map: the DomainMap of the state.
    params: the params.Params.

  Returns:
    A DissipationRates.
  """
  grid = domain_map.grid
  gradient = constitutive.velocity_gradient(velocity, domain_map)
  stress = constitutive.stress_tensor(gradient, params)
  d = grid.dim
  contraction = tf.add_n([stress[i][j] * gradient[i][j]
                          for i in range(d) for j in range(d)])
  viscous = params.nu * quadrature.integrate_values(contraction, grid,
                                                    domain_map.jacobian)

  normal = domain_map.normal()
  length = domain_map.area_jacobian()
  unit = [n / length for n in normal]
  relative = [quadrature.top_trace(v) for v in velocity]
  relative[-1] = relative[-1] - wall_velocity
  slip = _tangential(relative, unit)
  slip2 = tf.add_n([s * s for s in slip])
  top = params.alpha * params.nu * quadrature.integrate_boundary(
      slip2, length, grid)

  horizontal2 = tf.add_n([v * v for v in velocity[:-1]])
  bottom = params.alpha0 * params.nu * quadrature.integrate_bottom(
      horizontal2, grid)
  return DissipationRates(
      viscous=viscous, top_slip=top, bottom_slip=bottom,
      plate=plate.plate_dissipation_rate(plate_velocity, grid, params))


def dissipation_rates(state, params, domain_map=None):
  """The dissipation rates of a state."""
  domain_map = domain_map or state_map(state)
  return difference_rates(state.u_hat.components(), state.w_t, state.w_t,
                          domain_map, params)


def mass(state, domain_map=None):
  """int J_w rho_hat over the reference slab."""
  domain_map = domain_map or state_map(state)
  return quadrature.integrate_values(state.rho_hat.values, state.grid,
                                     domain_map.jacobian)


def mismatch_norm(state, domain_map=None):
  """The L^2(Gamma) norm of u . n^w - w_t at the top wall."""
  domain_map = domain_map or state_map(state)
  top = [quadrature.top_trace(c) for c in state.u_hat.components()]
  defect = tf.add_n([u * n for u, n in zip(top, domain_map.normal())])
  defect = defect - state.w_t
  return quadrature.integrate_plate(defect * defect, state.grid) ** 0.5


def energy_report(state, params, cumulative=None, domain_map=None):
  """Evaluates the energy of a state.

  Args:
    state: the field.State.
    params: the params.Params.
    cumulative: dissipation accumulated so far, a dict keyed by the diss_*
      field names, or None for zeros.
    domain_map: the DomainMap of the state, or None to build it.

  Returns:
    An EnergyReport.
  """
  domain_map = domain_map or state_map(state)
  rho = state.rho_hat.values
  kinetic = kinetic_part(rho, state.u_hat.components(), domain_map)
  rho_bar = tf.fill(tf.shape(rho), tf.constant(params.rho_bar, tf.float64))
  potential = pressure_part(rho, rho_bar, params, domain_map)
  plate_kinetic, plate_elastic = plate_part(state.w, state.w_t, state.grid)
  cumulative = cumulative or {}
  return EnergyReport(
      t=state.t,
      kinetic=kinetic,
      pressure_potential=potential,
      plate_kinetic=plate_kinetic,
      plate_elastic=plate_elastic,
      total=kinetic + potential + plate_kinetic + plate_elastic,
      mass=mass(state, domain_map),
      mismatch=mismatch_norm(state, domain_map),
      **{name: cumulative.get(name, 0.0) for name in _DISSIPATION_FIELDS})


class EnergyAccumulator(object):
  """Integrates the dissipation in time along a run.

  Rates are combined with the trapezoidal rule between consecutive states;
  penalty losses are added as reported by the relaxation substep.
  """

  def __init__(self, params, rates_fn=None):
    self._params = params
    self._rates_fn = rates_fn or dissipation_rates
    self._rates = None
    self._cumulative = dict((name, 0.0) for name in _DISSIPATION_FIELDS)
    self._reports = []

  @property
  def reports(self):
    return list(self._reports)

  @property
  def cumulative(self):
    return dict(self._cumulative)

  def begin(self, state, domain_map=None):
    self._rates = self._rates_fn(state, self._params, domain_map)
    report = energy_report(state, self._params, self._cumulative, domain_map)
    self._reports.append(report)
    return report

  def advance(self, state, dt, penalty_loss=0.0, domain_map=None):
    """Adds the dissipation of one step and reports the new state."""
    rates = self._rates_fn(state, self._params, domain_map)
    step = (self._rates + rates).scaled(0.5 * dt)
    self._cumulative["diss_viscous"] += step.viscous
    self._cumulative["diss_top_slip"] += step.top_slip
    self._cumulative["diss_bottom_slip"] += step.bottom_slip
    self._cumulative["diss_plate"] += step.plate
    self._cumulative["diss_penalty"] += penalty_loss
    self._rates = rates
    report = energy_report(state, self._params, self._cumulative, domain_map)
    self._reports.append(report)
    return report


class InequalityCheck(collections.namedtuple("InequalityCheck", [
    "max_violation", "t_max", "passed", "tol"])):
  """Result of an energy-inequality check.

  max_violation is the largest (E(t) + D(0, t) - E(0)) / E(0) over the
  snapshots after the first (absolute when E(0) = 0); negative values mean
  strict dissipation.
  """
  __slots__ = ()


def relative_violation(initial, value, dissipated):
  excess = value + dissipated - initial
  return excess / initial if initial > 0.0 else excess


def energy_inequality_check(reports, tol=1e-3):
  """Checks E(t) + D(0, t) <= E(0)(1 + tol) along a sequence of reports.

  Args:
    reports: a sequence of EnergyReport, or an object with energy_reports.
    tol: the relative tolerance.

  Returns:
    An InequalityCheck.
  """
  reports = list(getattr(reports, "energy_reports", reports))
  if not reports:
    raise ValueError("No energy reports to check")
  initial = reports[0].total
  worst, t_worst = 0.0, reports[0].t
  if len(reports) > 1:
    worst, t_worst = None, None
    for report in reports[1:]:
      violation = relative_violation(initial, report.total, report.dissipated)
      if worst is None or violation > worst:
        worst, t_worst = violation, report.t
  passed = worst <= tol
  if not passed:
    logging.warning("Energy inequality violated by %g at t=%g", worst,
                    t_worst)
  return InequalityCheck(max_violation=worst, t_max=t_worst, passed=passed,
                         tol=tol)
