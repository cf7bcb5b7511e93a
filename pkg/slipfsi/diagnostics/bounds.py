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
"""Bounds that hold uniformly in the Mach number along a trajectory.

The density is split pointwise into an essential part, where
rho_bar / 2 <= rho <= 2 rho_bar, and a residual part elsewhere. Along a run
with energy of order one the essential fluctuation (rho - rho_bar) / eps stays
bounded in L^2 while the residual part of 1 + rho^gamma is of order eps^2.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections

import numpy as np
import tensorflow as tf

from slipfsi import constitutive
from slipfsi import field
from slipfsi.diagnostics import energy
from slipfsi.diagnostics import relative_energy
from slipfsi.ops import quadrature
from slipfsi.ops import spectral


def _values(f):
  return f.values if isinstance(f, field.ScalarField) else (
      tf.convert_to_tensor(f, tf.float64))


def essential_mask(rho, params):
  rho = _values(rho)
  return tf.logical_and(rho >= 0.5 * params.rho_bar,
                        rho <= 2.0 * params.rho_bar)


def ess_res_split(rho, params, values=None):
  """Splits values (rho itself by default) into essential and residual parts.

  Args:
    rho: the density, a ScalarField or tensor.
    params: the params.Params.
    values: the samples to split, same shape as rho; rho when None.

  Returns:
    A pair (ess, res) of tensors with ess + res == values at every sample.
  """
  mask = essential_mask(rho, params)
  values = _values(rho) if values is None else _values(values)
  zeros = tf.zeros_like(values)
  return tf.where(mask, values, zeros), tf.where(mask, zeros, values)


def convexity_constant(rho_bar, gamma, samples=401):
  """The smallest (p(rho) - p'(rho_bar)(rho - rho_bar) - p(rho_bar)) /
  ((gamma - 1)(rho - rho_bar)^2) over the essential band.

  The band is sampled uniformly; the limit value gamma rho_bar^(gamma - 2) / 2
  stands in for the samples next to rho_bar, where the ratio cancels.
  """
  if not rho_bar > 0.0 or not gamma > 1.0:
    raise ValueError("Need rho_bar > 0 and gamma > 1: " + str((rho_bar,
                                                                gamma)))
  rho = np.linspace(0.5 * rho_bar, 2.0 * rho_bar, samples)
  rho = rho[np.abs(rho - rho_bar) > 1e-2 * rho_bar]
  numerator = (rho ** gamma - gamma * rho_bar ** (gamma - 1.0) *
               (rho - rho_bar) - rho_bar ** gamma)
  ratio = numerator / ((gamma - 1.0) * (rho - rho_bar) ** 2)
  limit = 0.5 * gamma * rho_bar ** (gamma - 2.0)
  return float(min(ratio.min(), limit))


class UniformBounds(collections.namedtuple("UniformBounds", [
    "kinetic_sup", "viscous_l2", "ess_fluctuation_sup", "residual_sup",
    "residual_over_eps2", "plate_kinetic_sup", "plate_elastic_sup",
    "plate_damping_l2", "convexity"])):
  """The uniform-bound quantities of a trajectory.

  kinetic_sup: sup_t int rho |u|^2.
  viscous_l2: sqrt(nu) ||grad u + grad u^T - (2/3) div u I|| in L^2 in time
    and space.
  ess_fluctuation_sup: sup_t int_ess |(rho - rho_bar) / eps|^2.
  residual_sup: sup_t int_res (1 + rho^gamma); residual_over_eps2 divides it
    by eps^2.
  plate_kinetic_sup, plate_elastic_sup: sup_t of ||w_t||^2 and ||lap w||^2.
  plate_damping_l2: sqrt(nu_s) ||grad w_t|| in L^2 in time and space.
  convexity: convexity_constant(rho_bar, gamma).
  """
  __slots__ = ()


def _snapshots(trajectory):
  snapshots = getattr(trajectory, "snapshots", trajectory)
  return [s if isinstance(s, field.State) else s[1] for s in snapshots]


def _time_l2(times, values):
  if len(times) < 2:
    return 0.0
  times = np.asarray(times)
  values = np.asarray(values)
  integral = np.sum(0.5 * (values[1:] + values[:-1]) * np.diff(times))
  return float(np.sqrt(max(integral, 0.0)))


def _deviatoric_square(state, domain_map):
  gradient = constitutive.velocity_gradient(state.u_hat.components(),
                                            domain_map)
  d = state.grid.dim
  divergence = tf.add_n([gradient[i][i] for i in range(d)])
  total = None
  for i in range(d):
    for j in range(d):
      entry = gradient[i][j] + gradient[j][i]
      if i == j:
        entry = entry - (2.0 / 3.0) * divergence
      total = entry * entry if total is None else total + entry * entry
  return total


def uniform_bounds_report(trajectory, params):
  """Evaluates the uniform-bound quantities along a trajectory.

  Args:
    trajectory: a scheme.Trajectory or a sequence of (t, State) or States.
    params: the params.Params.

  Returns:
    A UniformBounds.
  """
  states = _snapshots(trajectory)
  if not states:
    raise ValueError("Empty trajectory")
  times, kinetic, viscous, ess, res = [], [], [], [], []
  plate_kinetic, plate_elastic, damping = [], [], []
  for state in states:
    domain_map = energy.state_map(state)
    grid = state.grid
    weight = domain_map.jacobian
    rho = state.rho_hat.values
    times.append(state.t)
    speed2 = tf.add_n([c * c for c in state.u_hat.components()])
    kinetic.append(quadrature.integrate_values(rho * speed2, grid, weight))
    viscous.append(quadrature.integrate_values(
        _deviatoric_square(state, domain_map), grid, weight))
    fluctuation, _ = ess_res_split(
        rho, params, ((rho - params.rho_bar) / params.eps) ** 2)
    ess.append(quadrature.integrate_values(fluctuation, grid, weight))
    _, residual = ess_res_split(rho, params, 1.0 + rho ** params.gamma)
    res.append(quadrature.integrate_values(residual, grid, weight))
    lap = spectral.plate_laplacian(state.w, grid)
    plate_kinetic.append(quadrature.integrate_plate(state.w_t * state.w_t,
                                                    grid))
    plate_elastic.append(quadrature.integrate_plate(lap * lap, grid))
    damping.append(sum(quadrature.integrate_plate(g * g, grid) for g in
                       spectral.plate_gradient(state.w_t, grid)))
  residual_sup = max(res)
  return UniformBounds(
      kinetic_sup=max(kinetic),
      viscous_l2=np.sqrt(params.nu) * _time_l2(times, viscous),
      ess_fluctuation_sup=max(ess),
      residual_sup=residual_sup,
      residual_over_eps2=residual_sup / params.eps ** 2,
      plate_kinetic_sup=max(plate_kinetic),
      plate_elastic_sup=max(plate_elastic),
      plate_damping_l2=np.sqrt(params.nu_s) * _time_l2(times, damping),
      convexity=convexity_constant(params.rho_bar, params.gamma))


class SurrogateNorms(collections.namedtuple("SurrogateNorms", [
    "p4", "p_gamma", "exponent_floor"])):
  """Discrete W^{1,p} norms of grad w for p = 4 and p = 2 gamma / (gamma - 1).

  exponent_floor is max(4, 2 gamma / (gamma - 1)); the regularity exponent
  must exceed it.
  """
  __slots__ = ()


def _gradient_w1p(w, grid, p):
  gradient = spectral.plate_gradient(w, grid)
  total = 0.0
  for g in gradient:
    total += quadrature.integrate_plate(tf.abs(g) ** p, grid)
    for second in spectral.plate_gradient(g, grid):
      total += quadrature.integrate_plate(tf.abs(second) ** p, grid)
  return total ** (1.0 / p)


def surrogate_norms(w, grid, gamma):
  """Evaluates SurrogateNorms of a plate displacement."""
  w = tf.convert_to_tensor(w, tf.float64)
  p_gamma = 2.0 * gamma / (gamma - 1.0)
  return SurrogateNorms(p4=_gradient_w1p(w, grid, 4.0),
                        p_gamma=_gradient_w1p(w, grid, p_gamma),
                        exponent_floor=max(4.0, p_gamma))


def _smooth(rng, grid, height, coordinates, modes=2):
  """A random trigonometric polynomial of the physical coordinates."""
  horizontal, z = coordinates[:-1], coordinates[-1]
  result = np.zeros(np.broadcast(z, height).shape)
  for _ in range(modes):
    phase = 0.0
    for x, period in zip(horizontal, grid.horizontal_periods):
      phase = phase + rng.randint(1, 3) * 2.0 * np.pi * x / period
    phase = phase + rng.uniform(0.0, 2.0 * np.pi)
    result = result + rng.uniform(-1.0, 1.0) * np.cos(phase) * np.cos(
        rng.randint(0, 2) * np.pi * z / height)
  return result / modes


def _smooth_plate(rng, grid, modes=2):
  horizontal = grid.horizontal_coordinates()
  result = np.zeros(grid.plate_shape)
  for _ in range(modes):
    phase = rng.uniform(0.0, 2.0 * np.pi)
    for x, period in zip(horizontal, grid.horizontal_periods):
      phase = phase + rng.randint(1, 3) * 2.0 * np.pi * x / period
    result = result + rng.uniform(-1.0, 1.0) * np.cos(phase)
  return result / modes


def random_admissible_triples(state, params, count=10, seed=0,
                              amplitude=0.1):
  """Seeded smooth triples that satisfy U . n^w = W_t on the current wall.

  The fields are random trigonometric polynomials of the physical
  coordinates of the nodes; U is made admissible by adjusting its vertical
  component at the top.

  Args:
    state: the field.State whose domain the triples live on.
    params: the params.Params.
    count: number of triples.
    seed: numpy RandomState seed.
    amplitude: size of the perturbations.

  Returns:
    A list of relative_energy.TestTriple.
  """
  grid = state.grid
  rng = np.random.RandomState(seed)
  domain_map = energy.state_map(state)
  height = (1.0 + state.w.numpy())[..., np.newaxis]
  reference = grid.coordinates()
  physical = list(reference[:-1]) + [reference[-1] * height]
  triples = []
  for _ in range(count):
    r = params.rho_bar * (1.0 + amplitude * _smooth(rng, grid, height,
                                                    physical))
    r_t = amplitude * _smooth(rng, grid, height, physical)
    U = [amplitude * _smooth(rng, grid, height, physical)
         for _ in range(grid.dim)]
    U_t = [amplitude * _smooth(rng, grid, height, physical)
           for _ in range(grid.dim)]
    W = amplitude * _smooth_plate(rng, grid)
    W_t = amplitude * _smooth_plate(rng, grid)
    W_tt = amplitude * _smooth_plate(rng, grid)
    U[-1][..., 0] = 0.0
    top = sum(u[..., -1] * n.numpy() for u, n in zip(U, domain_map.normal()))
    U[-1][..., -1] += W_t - top
    triples.append(relative_energy.make_triple(
        field.ScalarField(grid, r), field.VectorField(grid, U), W, W_t,
        W_tt=W_tt, U_t=field.VectorField(grid, U_t),
        r_t=field.ScalarField(grid, r_t), admissible=True))
  return triples
