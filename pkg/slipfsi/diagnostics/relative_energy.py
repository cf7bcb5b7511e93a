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
"""The relative energy of a state against a smooth comparison triple.

A triple (r, U, W) lives on the current moving domain: r and U are sampled at
the images Phi_w(x_hat) of the reference nodes, W and its time derivatives on
the plate grid. The relative energy

  E_rel = int rho |u - U|^2 / 2 + eps^-2 int H(rho) - H'(r)(rho - r) - H(r)
          + int_Gamma |w_t - W_t|^2 / 2 + |lap (w - W)|^2 / 2

obeys, along solutions and for admissible triples (U . n^w = W_t on the top
wall),

  E_rel(tau) + int_0^tau D(u - U, w_t - W_t) <= E_rel(0) + int_0^tau R

with the remainder R itemized by remainder_R.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections

from absl import logging
import tensorflow as tf

from slipfsi import constitutive
from slipfsi import field
from slipfsi.diagnostics import energy
from slipfsi.ops import quadrature
from slipfsi.ops import spectral
from slipfsi.ops import stencils

# Admissibility is checked against this multiple of hz^2 when a triple does
# not declare itself admissible.
_ADMISSIBILITY_FACTOR = 10.0

REMAINDER_ITEMS = ("advective", "pressure_divergence", "boundary_pressure",
                   "viscous_cross", "plate_residual", "transport",
                   "top_slip_cross", "bottom_slip_cross")


class TestTriple(collections.namedtuple("TestTriple", [
    "r", "U", "W", "W_t", "W_tt", "U_t", "r_t", "admissible"])):
  """A comparison triple (r, U, W) with the time derivatives R needs.

  r: ScalarField, positive. U: VectorField. W, W_t, W_tt: plate tensors.
  U_t, r_t: Eulerian time derivatives of U and r (fields). admissible: True
  when U . n^w = W_t holds by construction, None when unknown.
  """
  __slots__ = ()
  # Keeps test runners from collecting the class.
  __test__ = False


def make_triple(r, U, W, W_t, W_tt=None, U_t=None, r_t=None,
                admissible=None):
  """Creates a TestTriple, filling absent time derivatives with zeros.

  Raises:
    ValueError: if r is not positive or the parts do not share one grid.
  """
  grid = r.grid
  grid.check_same(U.grid, "triple velocity")
  if not r.min() > 0.0:
    raise ValueError("Triple density must be positive, min=" + str(r.min()))
  W = tf.convert_to_tensor(W, tf.float64)
  W_t = tf.convert_to_tensor(W_t, tf.float64)
  W_tt = tf.zeros_like(W) if W_tt is None else tf.convert_to_tensor(
      W_tt, tf.float64)
  for name, value in (("W", W), ("W_t", W_t), ("W_tt", W_tt)):
    if tuple(value.shape) != grid.plate_shape:
      raise ValueError("Triple " + name + " has shape " + str(value.shape) +
                       ", expected " + str(grid.plate_shape))
  U_t = field.zero_vector(grid) if U_t is None else U_t
  r_t = field.constant_scalar(grid, 0.0) if r_t is None else r_t
  grid.check_same(U_t.grid, "triple velocity rate")
  grid.check_same(r_t.grid, "triple density rate")
  return TestTriple(r=r, U=U, W=W, W_t=W_t, W_tt=W_tt, U_t=U_t, r_t=r_t,
                    admissible=admissible)


def equilibrium_triple(grid, params):
  """The triple (rho_bar, 0, 0), against which E_rel is the plain energy."""
  zeros = tf.zeros(grid.plate_shape, tf.float64)
  return make_triple(field.constant_scalar(grid, params.rho_bar),
                     field.zero_vector(grid), zeros, zeros, admissible=True)


def state_triple(state):
  """The state itself as a triple (time derivatives zero)."""
  return make_triple(state.rho_hat, state.u_hat, state.w, state.w_t)


class Remainder(collections.namedtuple("Remainder", REMAINDER_ITEMS)):
  """The integral groups of R; total is their sum."""
  __slots__ = ()

  @property
  def total(self):
    return sum(self)


class RelEnergyReport(collections.namedtuple("RelEnergyReport", (
    ("t", "rel_energy", "remainder_total") + REMAINDER_ITEMS +
    ("slack",)))):
  """One row of the relative-energy budget.

  slack = E_rel(0) + int R - E_rel(t) - int D(u - U); the inequality holds
  when slack >= 0.
  """
  __slots__ = ()


def _check_triple(state, triple):
  state.grid.check_same(triple.r.grid, "triple")


def admissibility_defect(triple, domain_map):
  """max over Gamma of |U . n^w - W_t|."""
  top = [quadrature.top_trace(c) for c in triple.U.components()]
  normal = domain_map.normal()
  defect = tf.add_n([u * n for u, n in zip(top, normal)]) - triple.W_t
  return float(tf.reduce_max(tf.abs(defect)))


def relative_energy(state, triple, params, domain_map=None):
  """Evaluates E_rel(state | triple).

  Raises:
    ValueError: if the triple density is not positive or grids differ.
  """
  _check_triple(state, triple)
  if not triple.r.min() > 0.0:
    raise ValueError("Triple density must be positive, min=" +
                     str(triple.r.min()))
  domain_map = domain_map or energy.state_map(state)
  difference = [u - v for u, v in zip(state.u_hat.components(),
                                      triple.U.components())]
  rho = state.rho_hat.values
  kinetic = energy.kinetic_part(rho, difference, domain_map)
  potential = energy.pressure_part(rho, triple.r.values, params, domain_map)
  plate_kinetic, plate_elastic = energy.plate_part(
      state.w - triple.W, state.w_t - triple.W_t, state.grid)
  return kinetic + potential + plate_kinetic + plate_elastic


def _dot(a, b):
  return tf.add_n([x * y for x, y in zip(a, b)])


def remainder_R(state, triple, params, domain_map=None):  # pylint: disable=invalid-name
  """Evaluates the itemized remainder R(state, triple).

  Args:
    state: the field.State.
    triple: a TestTriple on the grid of state.
    params: the params.Params.
    domain_map: the DomainMap of the state, or None to build it.

  Returns:
    A Remainder.
  """
  _check_triple(state, triple)
  domain_map = domain_map or energy.state_map(state)
  grid = state.grid
  weight = domain_map.jacobian
  scale = params.pressure_scale
  if triple.admissible is None:
    defect = admissibility_defect(triple, domain_map)
    if defect > _ADMISSIBILITY_FACTOR * grid.hz * grid.hz:
      logging.warning("Inadmissible triple at t=%g: defect %g", state.t,
                      defect)

  rho = state.rho_hat.values
  r = triple.r.values
  u = state.u_hat.components()
  U = triple.U.components()
  difference = [a - b for a, b in zip(u, U)]
  grad_U = constitutive.velocity_gradient(U, domain_map)

  material = [dU + _dot(u, g) for dU, g in
              zip(triple.U_t.components(), grad_U)]
  advective = -quadrature.integrate_values(
      rho * _dot(difference, material), grid, weight)

  div_U = tf.add_n([grad_U[i][i] for i in range(grid.dim)])
  pressure_gap = (constitutive.pressure_delta(rho, params) -
                  constitutive.pressure_delta(r, params))
  pressure_divergence = -scale * quadrature.integrate_values(
      pressure_gap * div_U, grid, weight)

  r_top = quadrature.top_trace(r)
  wall_pressure = constitutive.pressure_fluctuation(r_top, params)
  top_difference = [quadrature.top_trace(c) for c in difference]
  normal = domain_map.normal()
  boundary_pressure = scale * quadrature.integrate_plate(
      wall_pressure * _dot(top_difference, normal), grid)

  stress_U = constitutive.stress_tensor(grad_U, params)
  grad_difference = constitutive.velocity_gradient(difference, domain_map)
  d = grid.dim
  cross = tf.add_n([stress_U[i][j] * grad_difference[i][j]
                    for i in range(d) for j in range(d)])
  viscous_cross = -params.nu * quadrature.integrate_values(cross, grid,
                                                           weight)

  plate_operator = (triple.W_tt + spectral.plate_bilaplacian(triple.W, grid) -
                    params.nu_s * spectral.plate_laplacian(triple.W_t, grid))
  plate_residual = -quadrature.integrate_plate(
      (state.w_t - triple.W_t) * plate_operator, grid)

  curvature = constitutive.pressure_delta_derivative(r, params) / r
  grad_r = stencils.physical_gradient(r, domain_map)
  transport_density = (rho - r) * curvature * (triple.r_t.values +
                                               _dot(U, grad_r))
  transport_velocity = rho * curvature * _dot(difference, grad_r)
  transport = -scale * quadrature.integrate_values(
      transport_density + transport_velocity, grid, weight)

  length = domain_map.area_jacobian()
  unit = [n / length for n in normal]
  wall_U = [quadrature.top_trace(c) for c in U]
  wall_U[-1] = wall_U[-1] - triple.W_t
  wall_difference = list(top_difference)
  wall_difference[-1] = wall_difference[-1] - (state.w_t - triple.W_t)
  tangential_U = _tangential(wall_U, unit)
  tangential_difference = _tangential(wall_difference, unit)
  top_slip_cross = -params.alpha * params.nu * quadrature.integrate_boundary(
      _dot(tangential_U, tangential_difference), length, grid)

  bottom_product = _dot(U[:-1], difference[:-1])
  bottom_slip_cross = -params.alpha0 * params.nu * quadrature.integrate_bottom(
      bottom_product, grid)

  return Remainder(
      advective=advective,
      pressure_divergence=pressure_divergence,
      boundary_pressure=boundary_pressure,
      viscous_cross=viscous_cross,
      plate_residual=plate_residual,
      transport=transport,
      top_slip_cross=top_slip_cross,
      bottom_slip_cross=bottom_slip_cross)


def _tangential(vector, unit):
  normal = _dot(vector, unit)
  return [v - normal * n for v, n in zip(vector, unit)]


def dissipation_differences(state, triple, params, domain_map=None):
  """The dissipation rates of (u - U, w_t - W_t), an energy.DissipationRates."""
  _check_triple(state, triple)
  domain_map = domain_map or energy.state_map(state)
  difference = [u - v for u, v in zip(state.u_hat.components(),
                                      triple.U.components())]
  plate_difference = state.w_t - triple.W_t
  return energy.difference_rates(difference, plate_difference,
                                 plate_difference, domain_map, params)


class RelativeEnergyMonitor(object):
  """Tracks the relative-energy budget along a run.

  The triple may be fixed or a callable state -> TestTriple, evaluated at
  every observed state. Time integrals use the trapezoidal rule of
  energy.EnergyAccumulator; penalty losses are added exactly.
  """

  def __init__(self, triple, params):
    self._triple_fn = triple if callable(triple) else (lambda _: triple)
    self._params = params
    self._reports = []
    self._initial = None
    self._remainder = None
    self._dissipation = None
    self._integral_remainder = 0.0
    self._integral_dissipation = 0.0

  @property
  def reports(self):
    return list(self._reports)

  def _evaluate(self, state):
    triple = self._triple_fn(state)
    domain_map = energy.state_map(state)
    value = relative_energy(state, triple, self._params, domain_map)
    remainder = remainder_R(state, triple, self._params, domain_map)
    rates = dissipation_differences(state, triple, self._params, domain_map)
    return value, remainder, sum(rates)

  def _report(self, state, value, remainder):
    slack = (self._initial + self._integral_remainder - value -
             self._integral_dissipation)
    report = RelEnergyReport(
        t=state.t, rel_energy=value, remainder_total=remainder.total,
        slack=slack, **remainder._asdict())
    self._reports.append(report)
    return report

  def begin(self, state):
    value, remainder, rate = self._evaluate(state)
    self._initial = value
    self._remainder = remainder.total
    self._dissipation = rate
    return self._report(state, value, remainder)

  def observe(self, state, dt, record=None):
    value, remainder, rate = self._evaluate(state)
    self._integral_remainder += 0.5 * dt * (self._remainder + remainder.total)
    self._integral_dissipation += 0.5 * dt * (self._dissipation + rate)
    if record is not None:
      self._integral_dissipation += record.penalty_loss
    self._remainder = remainder.total
    self._dissipation = rate
    return self._report(state, value, remainder)


def relative_energy_check(reports, tol=5e-3):
  """Checks slack >= -tol E_rel(0) along a list of RelEnergyReport.

  Returns:
    An energy.InequalityCheck with the largest -slack / E_rel(0) after the
    first report (absolute when E_rel(0) = 0).
  """
  reports = list(getattr(reports, "reports", reports))
  if not reports:
    raise ValueError("No relative-energy reports to check")
  initial = reports[0].rel_energy
  worst, t_worst = 0.0, reports[0].t
  if len(reports) > 1:
    worst, t_worst = None, None
    for report in reports[1:]:
      violation = -report.slack / initial if initial > 0.0 else -report.slack
      if worst is None or violation > worst:
        worst, t_worst = violation, report.t
  passed = worst <= tol
  if not passed:
    logging.warning("Relative energy inequality violated by %g at t=%g",
                    worst, t_worst)
  return energy.InequalityCheck(max_violation=worst, t_max=t_worst,
                                passed=passed, tol=tol)
