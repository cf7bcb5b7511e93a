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
"""Semi-discrete compressible barotropic flow on the reference slab.

The unknowns are pulled back through the flat flow map Phi_w. Mass is carried
as q = J_w rho_hat and advanced in the conservative form

  d_t q + div_ref(rho_hat J_w A_w (u_hat - d_t Phi_w)) = 0

with first-order upwinding on dual cells, so that the quadrature of q changes
only by the flux through the top wall. Momentum is advanced in velocity form

  d_t u_hat = -(u - d_t Phi_w) . grad_x u
              - grad_x(p_delta(rho) - p_delta(rho_bar)) / (eps^2 rho)
              + (nu / rho) div_x S(grad_x u)

with central stencils; the viscous divergence takes its wall fluxes from the
Navier-slip conditions of boundary.apply_slip_bc.

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections

import tensorflow as tf

from slipfsi import boundary
from slipfsi import constitutive
from slipfsi import errors
from slipfsi import field
from slipfsi.ops import stencils

STRONG = constitutive.STRONG
PENALTY = constitutive.PENALTY
MONOLITHIC = constitutive.MONOLITHIC
COUPLING_MODES = constitutive.COUPLING_MODES

pressure = constitutive.pressure
pressure_delta = constitutive.pressure_delta
pressure_fluctuation = constitutive.pressure_fluctuation
sound_speed = constitutive.sound_speed
stress_tensor = constitutive.stress_tensor


class FluidRhs(collections.namedtuple(
    "FluidRhs", ["d_rho", "d_mass", "d_u", "boundary"])):
  """Tendencies of one fluid state.

  d_mass is the tendency of q = J_w rho_hat at fixed map; d_rho that of
  rho_hat itself (which also sees d_t J_w = w_t). boundary is the
  boundary.SlipBoundary the viscous fluxes were built from.
  """
  __slots__ = ()


def _viscous_term(stress, slip, domain_map):
  """(1/J) div_ref(J A S^T) row by row, with wall fluxes from slip."""
  grid = domain_map.grid
  d = grid.dim
  result = []
  for i in range(d):
    row = [tf.broadcast_to(s, grid.shape) for s in stress[i]]
    total = None
    for a in range(d - 1):
      term = stencils.reference_derivative(domain_map.jacobian * row[a], grid,
                                           a)
      total = term if total is None else total + term
    vertical = stencils.contravariant(row, domain_map)[-1]
    term = stencils.vertical_flux_divergence(
        vertical, slip.bottom_flux[i], slip.top_flux[i], grid)
    total = term if total is None else total + term
    result.append(total / domain_map.jacobian)
  return result


def fluid_rhs(state, domain_map, params, coupling=STRONG, check_finite=True):
  """Evaluates the tendencies of (rho_hat, u_hat).

  Args:
    state: the field.State; state.w must be the displacement of domain_map.
    domain_map: the geometry.flow_map.DomainMap; its w_t is the mesh
      velocity of the step.
    params: the params.Params.
    coupling: one of COUPLING_MODES. Only in PENALTY mode does mass cross the
      top wall.
    check_finite: raise on non-finite tendencies.

  Returns:
    A FluidRhs.

  Raises:
    errors.BlowUpError: if a tendency is not finite.
    errors.PositivityError: if the density is negative.
  """
  if coupling not in COUPLING_MODES:
    raise ValueError("Unknown coupling mode: " + str(coupling))
  grid = state.grid
  rho = state.rho_hat.values
  components = state.u_hat.components()

  velocities = constitutive.contravariant_velocity(components, domain_map)
  top_flux = None
  if coupling == PENALTY:
    top_flux = rho[..., -1] * velocities[-1][..., -1]
  d_mass = -stencils.upwind_flux_divergence(rho, velocities, grid, top_flux)
  d_rho = (d_mass - rho * domain_map.w_t_field) / domain_map.jacobian

  stress = stress_tensor(
      constitutive.velocity_gradient(components, domain_map), params)
  slip = boundary.apply_slip_bc(state, domain_map, params, coupling,
                                stress=stress)
  viscous = _viscous_term(stress, slip, domain_map)
  pressure_gradient = stencils.physical_gradient(
      pressure_fluctuation(rho, params), domain_map)

  d_u = []
  for i, u_i in enumerate(components):
    advection = tf.add_n([
        v * stencils.reference_derivative(u_i, grid, k)
        for k, v in enumerate(velocities)]) / domain_map.jacobian
    tendency = -advection - params.pressure_scale * pressure_gradient[i] / rho
    if params.nu > 0.0:
      tendency = tendency + params.nu * viscous[i] / rho
    d_u.append(tendency)
  # Impermeable bottom wall.
  d_u[-1] = tf.concat([tf.zeros_like(d_u[-1][..., :1]), d_u[-1][..., 1:]],
                      axis=-1)

  result = FluidRhs(d_rho=field.ScalarField(grid, d_rho), d_mass=d_mass,
                    d_u=field.VectorField(grid, d_u), boundary=slip)
  if check_finite:
    finite = (bool(tf.reduce_all(tf.math.is_finite(d_mass))) and
              result.d_u.is_finite())
    if not finite:
      raise errors.BlowUpError("Non-finite fluid tendency", t=state.t)
  return result


def acoustic_cfl(state, grid, params, cfl=0.4):
  """The explicit acoustic step limit.

  dt_max = cfl min(h) / (max |u| + max sqrt(p_delta'(rho)) / eps)
  """
  speed = float(tf.reduce_max(state.u_hat.magnitude()))
  sound = float(tf.reduce_max(sound_speed(state.rho_hat.values, params)))
  return cfl * grid.min_spacing / (speed + sound)


def viscous_dt_limit(state, params):
  """0.25 h^2 min(rho) / (nu (2 mu + |lam|)); infinite when nu = 0."""
  if params.nu == 0.0:
    return float("inf")
  h = state.grid.min_spacing
  return (0.25 * h * h * state.rho_hat.min() /
          (params.nu * (2.0 * params.mu + abs(params.lam))))


def stable_dt(state, params, cfl=0.4):
  """min(acoustic_cfl, viscous_dt_limit)."""
  return min(acoustic_cfl(state, state.grid, params, cfl),
             viscous_dt_limit(state, params))
