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
"""Property suites run by `slipfsi check <subject>`.

Each suite returns a list of Assertion records; a suite passes when all of
them do. The margin of an assertion is how far its value sits inside the
limit (negative when it fails).
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections
import math

from absl import logging
import numpy as np
import tensorflow as tf

from slipfsi import constitutive
from slipfsi import field
from slipfsi import fluid
from slipfsi import grid as grid_lib
from slipfsi import params as params_lib
from slipfsi import plate
from slipfsi import scheme
from slipfsi.diagnostics import bounds
from slipfsi.diagnostics import energy
from slipfsi.geometry import composed_map
from slipfsi.geometry import cutoff
from slipfsi.geometry import flow_map
from slipfsi.geometry import general_map
from slipfsi.geometry import piola
from slipfsi.geometry import surfaces
from slipfsi.limits import initial_data
from slipfsi.limits import reference
from slipfsi.limits import sweep
from slipfsi.ops import spectral

GEOMETRY = "geometry"
PLATE = "plate"
ENERGY = "energy"
PENALTY = "penalty"
ARTIFICIAL_PRESSURE = "artificial-pressure"
BOUNDS = "bounds"
LIMIT = "limit"
SUBJECTS = (GEOMETRY, PLATE, ENERGY, PENALTY, ARTIFICIAL_PRESSURE, BOUNDS,
            LIMIT)

# Errors below this count as exact in refinement studies.
_ROUND_OFF = 1e-12
_MIN_ORDER = 1.9
_REFINEMENTS = ((16, 9), (32, 17), (64, 33), (128, 65))


UPPER = "upper"
LOWER = "lower"


class Assertion(collections.namedtuple("Assertion", [
    "suite", "name", "value", "limit", "bound"])):
  """One checked inequality: value <= limit (UPPER) or value >= limit."""
  __slots__ = ()

  @property
  def margin(self):
    if self.bound == UPPER:
      return self.limit - self.value
    return self.value - self.limit

  @property
  def passed(self):
    return self.margin >= 0.0


def _at_most(suite, name, value, limit):
  return Assertion(suite, name, float(value), float(limit), UPPER)


def _at_least(suite, name, value, limit):
  return Assertion(suite, name, float(value), float(limit), LOWER)


def observed_orders(errors_by_level):
  """log2 ratios of consecutive errors; None where both are round-off."""
  orders = []
  for coarse, fine in zip(errors_by_level, errors_by_level[1:]):
    if coarse < _ROUND_OFF and fine < _ROUND_OFF:
      orders.append(None)
    else:
      orders.append(math.log(max(coarse, _ROUND_OFF) /
                             max(fine, _ROUND_OFF), 2.0))
  return orders


def _worst_order(errors_by_level):
  orders = [o for o in observed_orders(errors_by_level) if o is not None]
  return min(orders) if orders else float("inf")


class _SmoothPlate(object):
  """A random trigonometric polynomial in x with max-norm <= amplitude."""

  def __init__(self, rng, amplitude, modes=3):
    self._k = rng.randint(1, 4, size=modes)
    self._phase = rng.uniform(0.0, 2.0 * np.pi, size=modes)
    weights = rng.uniform(-1.0, 1.0, size=modes)
    self._weights = amplitude * weights / np.sum(np.abs(weights))

  def sample(self, grid):
    x = grid.horizontal_coordinates()[0]
    values = sum(a * np.cos(k * 2.0 * np.pi * x / grid.period + p)
                 for a, k, p in zip(self._weights, self._k, self._phase))
    return tf.constant(values, tf.float64)


def random_displacement_pairs(seed, count=10, amplitude=0.3):
  """Seeded pairs of smooth plate functions (w, eta)."""
  rng = np.random.RandomState(seed)
  return [(_SmoothPlate(rng, amplitude), _SmoothPlate(rng, amplitude))
          for _ in range(count)]


def _closed_surface_defects(rng, samples=16, amplitude=0.05):
  """Inversion defect and Hadamard margin of general maps on closed surfaces."""
  profile = cutoff.build_cutoff(-0.4, -0.25, 0.25, 0.4, 0.05)
  inversion, margin = 0.0, np.inf
  for surface in (surfaces.Sphere(1.0), surfaces.Torus(2.0, 0.5)):
    a, b = 0.5 * amplitude * rng.uniform(-1.0, 1.0, 2)

    def w(u, v, a=a, b=b):
      return a * np.cos(u) + b * np.sin(v)

    on_surface = surface.param(rng.uniform(-np.pi, np.pi, samples),
                               rng.uniform(0.2, np.pi - 0.2, samples))
    image = general_map.general_flow_map(surface, profile, w, on_surface)
    back = general_map.general_flow_map_inverse(surface, profile, w, image)
    inversion = max(inversion, float(np.max(np.abs(back - on_surface))))
    margin = min(margin, general_map.hadamard_margin(surface, profile, w,
                                                     on_surface))
  return inversion, margin


def _smooth_velocity(grid):
  x, z = grid.coordinates()
  return field.VectorField(grid, [
      tf.constant(np.sin(x) * np.cos(np.pi * z), tf.float64),
      tf.constant(np.cos(x) * z * (1.0 - z), tf.float64)])


def geometry_suite(seed=0, count=10):
  """Piola identities and map inversion on random smooth pairs."""
  results = []
  identity_orders, chain_orders, divergence_orders = [], [], []
  normal_law, inversion = 0.0, 0.0
  rng = np.random.RandomState(seed + 1)
  for w_fn, eta_fn in random_displacement_pairs(seed, count):
    identity, chain, divergence = [], [], []
    for nx, nz in _REFINEMENTS:
      grid = grid_lib.Grid(nx, nz)
      w, eta = w_fn.sample(grid), eta_fn.sample(grid)
      psi = composed_map.compose_psi(grid, w, eta)
      identity.append(piola.piola_identity_residual(psi))
      chain.append(psi.chain_rule_defect())
      divergence.append(piola.divergence_preservation_defect(
          _smooth_velocity(grid), psi))
    identity_orders.append(_worst_order(identity))
    chain_orders.append(_worst_order(chain))
    divergence_orders.append(_worst_order(divergence))

    grid = grid_lib.Grid(*_REFINEMENTS[1])
    w, eta = w_fn.sample(grid), eta_fn.sample(grid)
    psi = composed_map.compose_psi(grid, w, eta)
    v_tilde = _smooth_velocity(grid)
    v = piola.piola_transform(v_tilde, psi)
    normal_law = max(normal_law, piola.normal_law_defect(v, v_tilde, psi))

    domain_map = flow_map.DomainMap(grid, w)
    points = np.stack([rng.uniform(0.0, grid.period, 64),
                       rng.uniform(0.0, 1.0, 64)], axis=1)
    back = domain_map.inverse(domain_map.forward(points))
    inversion = max(inversion, float(np.max(np.abs(back - points))))

  results.append(_at_least(GEOMETRY, "piola_identity_order",
                           min(identity_orders), _MIN_ORDER))
  results.append(_at_least(GEOMETRY, "chain_rule_order", min(chain_orders),
                           _MIN_ORDER))
  results.append(_at_least(GEOMETRY, "divergence_preservation_order",
                           min(divergence_orders), _MIN_ORDER))
  results.append(_at_most(GEOMETRY, "normal_law_defect", normal_law, 1e-10))
  results.append(_at_most(GEOMETRY, "inverse_composition_defect", inversion,
                          1e-10))
  surface_inversion, margin = _closed_surface_defects(rng)
  results.append(_at_most(GEOMETRY, "surface_inverse_defect",
                          surface_inversion, 1e-8))
  results.append(_at_least(GEOMETRY, "hadamard_margin", margin, 0.0))
  return results


def _closed_form_mode(k2, nu_s, t, amplitude):
  """x(t) of x'' + nu_s k2 x' + k2^2 x = 0 with x(0) = amplitude, x'(0) = 0."""
  sigma = 0.5 * nu_s * k2
  root = np.sqrt(complex(sigma * sigma - k2 * k2))
  if abs(root) < 1e-12:
    return amplitude * math.exp(-sigma * t) * (1.0 + sigma * t)
  s1, s2 = -sigma + root, -sigma - root
  value = amplitude * (s2 * np.exp(s1 * t) - s1 * np.exp(s2 * t)) / (s2 - s1)
  return float(np.real(value))


def _cos_coefficient(w, grid, k):
  x = grid.horizontal_coordinates()[0]
  basis = np.cos(k * 2.0 * np.pi * x / grid.period)
  return float(np.sum(w.numpy() * basis) / np.sum(basis * basis))


def plate_suite(steps=1000, dt=0.01):
  """Exact plate propagation against closed forms."""
  grid = grid_lib.Grid(32, 5)
  x = grid.horizontal_coordinates()[0]
  results = []

  undamped = params_lib.Params(nu_s=0.0)
  propagator = plate.PlatePropagator(grid, undamped, dt)
  w = tf.constant(0.1 * np.cos(2.0 * x), tf.float64)
  w_t = tf.constant(0.05 * np.sin(3.0 * x), tf.float64)
  zero = tf.zeros(grid.plate_shape, tf.float64)
  initial = plate.plate_energy(w, w_t, grid)
  drift = 0.0
  for _ in range(steps):
    w, w_t = propagator.step(w, w_t, zero)
    drift = max(drift, abs(plate.plate_energy(w, w_t, grid) - initial))
  results.append(_at_most(PLATE, "undamped_energy_drift", drift / initial,
                          1e-10))

  worst = 0.0
  for nu_s in (0.1, 3.0):
    damped = params_lib.Params(nu_s=nu_s)
    propagator = plate.PlatePropagator(grid, damped, dt)
    for k in (1, 2, 3):
      w = tf.constant(np.cos(k * x), tf.float64)
      w_t = zero
      for _ in range(100):
        w, w_t = propagator.step(w, w_t, zero)
      expected = _closed_form_mode(float(k * k), nu_s, 100 * dt, 1.0)
      worst = max(worst, abs(_cos_coefficient(w, grid, k) - expected))
  results.append(_at_most(PLATE, "damped_mode_error", worst, 1e-8))

  load = tf.constant(np.cos(2.0 * x), tf.float64)
  deflection = plate.solve_static_deflection(load, grid)
  residual = float(tf.reduce_max(tf.abs(
      spectral.plate_bilaplacian(deflection, grid) - load)))
  results.append(_at_most(PLATE, "static_deflection_residual", residual,
                          1e-10))
  return results


def pressure_pulse_config(coupling=constitutive.STRONG, t_final=0.05,
                          grid=None, params=None, dt=None):
  """The canned run: a density bump of size eps at rest under a flat plate."""
  grid = grid or grid_lib.Grid(32, 17)
  params = params or params_lib.Params(eps=0.5, nu=0.1, nu_s=0.1)
  initial = initial_data.InitialSpec(
      {"rho1": initial_data.Profile("bump", 0.5)})
  return scheme.RunConfig(params, grid, initial=initial, t_final=t_final,
                          dt=dt, coupling=coupling)


def _rest_change(config):
  final = scheme.run(config).final_state
  rest = config.initial_state()
  return max(
      float(tf.reduce_max(tf.abs(final.rho_hat.values -
                                 rest.rho_hat.values))),
      float(tf.reduce_max(tf.abs(final.u_hat.values))),
      float(tf.reduce_max(tf.abs(final.w))),
      float(tf.reduce_max(tf.abs(final.w_t))))


def _half_stable_dt(config):
  return 0.5 * fluid.stable_dt(config.initial_state(), config.params,
                               config.options.cfl)


def energy_suite(tol_energy=1e-3, rest_steps=1000):
  """Energy inequality, mass and rest-state exactness on canned runs."""
  results = []
  trajectory = scheme.run(pressure_pulse_config())
  check = energy.energy_inequality_check(trajectory, tol_energy)
  results.append(_at_most(ENERGY, "energy_inequality_violation",
                          check.max_violation, tol_energy))
  masses = [r.mass for r in trajectory.energy_reports]
  drift = max(abs(m - masses[0]) for m in masses) / masses[0]
  results.append(_at_most(ENERGY, "mass_drift", drift, 1e-10))

  for coupling, name in ((constitutive.STRONG, "half_dt"),
                         (constitutive.PENALTY, "penalty")):
    config = pressure_pulse_config(coupling)
    config = config.replace(dt=_half_stable_dt(config))
    check = energy.energy_inequality_check(scheme.run(config), tol_energy)
    results.append(_at_most(ENERGY, "energy_inequality_violation_" + name,
                            check.max_violation, tol_energy))

  dt = 1e-3
  for coupling in constitutive.COUPLING_MODES:
    config = scheme.RunConfig(params_lib.Params(), grid_lib.Grid(8, 5),
                              t_final=rest_steps * dt, dt=dt,
                              coupling=coupling, output_every=rest_steps)
    results.append(_at_most(ENERGY, "rest_state_change_" + coupling,
                            _rest_change(config), 1e-14))
  return results


def _integrated_mismatch(trajectory):
  return sum(row.mismatch * row.dt for row in trajectory.step_rows)


def penalty_suite(kappas=(1e-1, 1e-2, 1e-3, 1e-4), t_final=0.05, grid=None):
  """Kinematic mismatch of penalty coupling against kappa.

  The time-integrated mismatch should scale like sqrt(kappa); the fitted
  log-log slope is asserted to lie in [0.35, 0.65].
  """
  points = []
  for kappa in kappas:
    params = params_lib.Params(eps=0.5, nu=0.1, nu_s=0.1, kappa=kappa)
    config = pressure_pulse_config(constitutive.PENALTY, t_final, grid,
                                   params)
    mismatch = _integrated_mismatch(scheme.run(config))
    logging.info("Penalty kappa=%g: integrated mismatch %g", kappa, mismatch)
    points.append((kappa, max(mismatch, _ROUND_OFF)))
  slope, _ = np.polyfit(np.log([p[0] for p in points]),
                        np.log([p[1] for p in points]), 1)
  return [_at_least(PENALTY, "penalty_slope_min", slope, 0.35),
          _at_most(PENALTY, "penalty_slope_max", slope, 0.65)]


def _state_distance(a, b):
  return max(
      float(tf.reduce_max(tf.abs(a.rho_hat.values - b.rho_hat.values))),
      float(tf.reduce_max(tf.abs(a.u_hat.values - b.u_hat.values))),
      float(tf.reduce_max(tf.abs(a.w - b.w))))


def artificial_pressure_suite(deltas=(1e-2, 1e-3, 1e-4), t_final=0.05,
                              grid=None):
  """Self-convergence of the run as the artificial pressure delta vanishes.

  All runs share the step of the largest delta. Terminal states of
  consecutive deltas are compared in the max-norm; the difference should
  shrink at least linearly in delta.
  """
  if len(deltas) < 3:
    raise ValueError("Need at least three deltas, got " + str(len(deltas)))
  deltas = sorted(deltas, reverse=True)
  configs = [pressure_pulse_config(
      t_final=t_final, grid=grid,
      params=params_lib.Params(eps=0.5, nu=0.1, nu_s=0.1, delta=d, beta=4.0))
             for d in deltas]
  dt = _half_stable_dt(configs[0])
  finals = [scheme.run(c.replace(dt=dt)).final_state for c in configs]
  differences = [_state_distance(a, b) for a, b in zip(finals, finals[1:])]
  logging.info("Artificial pressure differences: %s", differences)
  order, growth = float("inf"), 0.0
  for i in range(len(differences) - 1):
    coarse, fine = differences[i], differences[i + 1]
    if coarse < _ROUND_OFF and fine < _ROUND_OFF:
      continue
    ratio = math.log(max(coarse, _ROUND_OFF) / max(fine, _ROUND_OFF))
    order = min(order, ratio / math.log(deltas[i] / deltas[i + 1]))
    growth = max(growth, fine / max(coarse, _ROUND_OFF))
  return [_at_least(ARTIFICIAL_PRESSURE, "delta_order", order, 0.8),
          _at_most(ARTIFICIAL_PRESSURE, "delta_difference_growth", growth,
                   1.0)]


def uniform_bounds_suite(eps_list=(0.4, 0.2, 0.1), nu=0.1, t_final=0.05,
                         grid=None):
  """Uniform-in-eps bounds along well-prepared pressure-pulse runs.

  The residual part of the pressure potential over eps^2 and the essential
  density fluctuation over eps must stay of the size they have at the
  largest eps.
  """
  reports = []
  for eps in sorted(eps_list, reverse=True):
    params = params_lib.Params(eps=eps, nu=nu, nu_s=0.1)
    trajectory = scheme.run(pressure_pulse_config(
        t_final=t_final, grid=grid, params=params))
    reports.append(bounds.uniform_bounds_report(trajectory, params))
  residual = [r.residual_over_eps2 for r in reports]
  fluctuation = [r.ess_fluctuation_sup for r in reports]
  spread = max(fluctuation) / max(min(fluctuation), _ROUND_OFF)
  return [_at_most(BOUNDS, "residual_eps2_growth", max(residual),
                   3.0 * residual[0] + 1e-10),
          _at_most(BOUNDS, "ess_fluctuation_spread", spread, 3.0)]


def limit_config(t_final=0.2, grid=None, nu_s=0.1):
  """Well-prepared data with a density cosine and a sheared vortex."""
  initial = initial_data.InitialSpec({
      "rho1": initial_data.Profile("cos", 0.1),
      "u0": initial_data.Profile("vortex", 0.2)})
  return scheme.RunConfig(params_lib.Params(nu_s=nu_s),
                          grid or grid_lib.Grid(32, 17), initial=initial,
                          t_final=t_final)


def limit_suite(eps_list=(0.2, 0.1, 0.05, 0.025), eps0=0.00625,
                column_nu=0.05, column_gamma=3.5, t_final=0.2, grid=None):
  """A reduced diagonal and column sweep against a proxy reference.

  The diagonal nu equals eps. The fitted rate over the diagonal must reach
  0.8; sup E_rel must not grow by more than 10% from one row to the next on
  either subsequence, and every row must finish.
  """
  config = limit_config(t_final, grid)
  ref = reference.reference_proxy(config, eps0, eps0)
  finer = reference.reference_proxy(config, 0.5 * eps0, 0.5 * eps0, ref.grid)
  floor = sweep.proxy_floor(ref, finer, config.params,
                            config.options.contact_floor)
  table = sweep.sweep(eps_list, eps_list, config, ref,
                      pairing=sweep.DIAGONAL_AND_COLUMN, column_nu=column_nu,
                      column_gamma=column_gamma, floor=floor)
  slope = -float("inf") if table.slope is None else table.slope
  return [_at_least(LIMIT, "diagonal_rate_slope", slope, 0.8),
          _at_most(LIMIT, "diagonal_growth", sweep.worst_growth(table.rows),
                   1.1),
          _at_most(LIMIT, "column_growth",
                   sweep.worst_growth(table.rows, column=True), 1.1),
          _at_most(LIMIT, "failed_rows", table.summary()["failed_rows"], 0)]


def run_suite(subject, seed=0, tol_energy=1e-3):
  """Runs the named suite.

  Raises:
    ValueError: on an unknown subject.
  """
  if subject == GEOMETRY:
    results = geometry_suite(seed)
  elif subject == PLATE:
    results = plate_suite()
  elif subject == ENERGY:
    results = energy_suite(tol_energy)
  elif subject == PENALTY:
    results = penalty_suite()
  elif subject == ARTIFICIAL_PRESSURE:
    results = artificial_pressure_suite()
  elif subject == BOUNDS:
    results = uniform_bounds_suite()
  elif subject == LIMIT:
    results = limit_suite()
  else:
    raise ValueError("Unknown check subject: " + str(subject) +
                     ", expected one of " + str(SUBJECTS))
  failed = [r.name for r in results if not r.passed]
  logging.info("Check %s: %d assertions, %d failed", subject, len(results),
               len(failed))
  return results
