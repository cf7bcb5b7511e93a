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
"""Navier-slip walls and the kinematic coupling with the plate.

Top wall (the plate graph): the tangential viscous traction balances friction
against the slip relative to the plate,

  (nu S n)_tau = -alpha nu (u - w_t e_3)_tau,

and the normal velocity is coupled to w_t either strongly (u . n^w = w_t) or
through the penalty flux (1/kappa)(u . n^w - w_t)|n^w|. Bottom wall:
u . e_3 = 0 and (nu S n)_tau = -alpha0 nu u_tau.

Wall fluxes are per unit reference area; the viscous flux through the top of
the slab is S n^w with the weighted normal n^w = (-grad w, 1).

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections

import tensorflow as tf

from slipfsi import constitutive


class SlipBoundary(collections.namedtuple("SlipBoundary", [
    "top_flux", "bottom_flux", "top_tangential_traction",
    "bottom_tangential_traction", "top_normal_traction", "penalty_flux",
    "mismatch"])):
  """Wall contributions of one fluid state.

  top_flux, bottom_flux: lists of dim plate tensors, the viscous fluxes S n^w
    through the walls (without the factor nu), in +z direction.
  top_tangential_traction: -alpha nu (u - w_t e_3)_tau, list of plate tensors.
  bottom_tangential_traction: -alpha0 nu u_tau, list of plate tensors.
  top_normal_traction: nu (S n) . n - (p_delta(rho) - p_delta(rho_bar)) /
    eps^2 at the top, plate tensor.
  penalty_flux: (1/kappa)(u . n^w - w_t)|n^w| in penalty mode, else None.
  mismatch: u . n^w - w_t at the top, plate tensor.
  """
  __slots__ = ()


def _dot(a, b):
  return tf.add_n([x * y for x, y in zip(a, b)])


def top_mismatch(components, domain_map):
  """u . n^w - w_t at the top wall."""
  top = [c[..., -1] for c in components]
  return _dot(top, domain_map.normal()) - domain_map.w_t


def apply_slip_bc(state, domain_map, params, coupling=constitutive.STRONG,
                  stress=None):
  """Evaluates the wall contributions of a state.

  Args:
    state: the field.State.
    domain_map: the DomainMap of state.w; its w_t is the plate velocity the
      fluid is coupled to.
    params: the params.Params.
    coupling: one of constitutive.COUPLING_MODES.
    stress: S(grad u) as nested lists, or None to compute it here.

  Returns:
    A SlipBoundary.

  Raises:
    ValueError: if penalty coupling is asked for without a positive kappa.
  """
  if coupling == constitutive.PENALTY and not (params.kappa or 0.0) > 0.0:
    raise ValueError("Penalty coupling needs kappa > 0: " +
                     str(params.kappa))
  components = state.u_hat.components()
  if stress is None:
    stress = constitutive.stress_tensor(
        constitutive.velocity_gradient(components, domain_map), params)
  d = state.grid.dim
  normal = domain_map.normal()
  length = domain_map.area_jacobian()
  unit = [n / length for n in normal]

  top_u = [c[..., -1] for c in components]
  traction = [_dot([s[..., -1] for s in stress[i]], normal) for i in range(d)]
  normal_part = _dot(traction, unit)
  relative = list(top_u)
  relative[-1] = relative[-1] - domain_map.w_t
  relative_normal = _dot(relative, unit)
  slip = [r - relative_normal * n for r, n in zip(relative, unit)]
  top_flux = [normal_part * n - params.alpha * length * s
              for n, s in zip(unit, slip)]

  bottom_u = [c[..., 0] for c in components]
  bottom_flux = [params.alpha0 * u for u in bottom_u[:-1]]
  bottom_flux.append(stress[-1][-1][..., 0])

  rho_top = state.rho_hat.values[..., -1]
  normal_traction = (params.nu * normal_part / length -
                     params.pressure_scale *
                     constitutive.pressure_fluctuation(rho_top, params))

  mismatch = _dot(top_u, normal) - domain_map.w_t
  penalty_flux = None
  if coupling == constitutive.PENALTY:
    penalty_flux = mismatch * length / params.kappa

  zero = tf.zeros_like(rho_top)
  return SlipBoundary(
      top_flux=top_flux,
      bottom_flux=bottom_flux,
      top_tangential_traction=[-params.alpha * params.nu * s for s in slip],
      bottom_tangential_traction=(
          [-params.alpha0 * params.nu * u for u in bottom_u[:-1]] + [zero]),
      top_normal_traction=normal_traction,
      penalty_flux=penalty_flux,
      mismatch=mismatch)


def _with_wall(values, top=None, bottom=None):
  parts = []
  if bottom is not None:
    parts.append(bottom[..., tf.newaxis])
    start = 1
  else:
    start = 0
  end = values.shape[-1] - (1 if top is not None else 0)
  parts.append(values[..., start:end])
  if top is not None:
    parts.append(top[..., tf.newaxis])
  return tf.concat(parts, axis=-1)


def enforce_kinematics(components, domain_map, w_t=None):
  """Projects the wall normal velocities onto the kinematic conditions.

  At the top, u is changed along n^w by the least amount that makes
  u . n^w = w_t; at the bottom the vertical velocity is set to zero.

  Args:
    components: list of dim velocity tensors of grid shape.
    domain_map: the DomainMap of the current displacement.
    w_t: plate velocity; domain_map.w_t when None.

  Returns:
    The projected list of components.
  """
  w_t = domain_map.w_t if w_t is None else w_t
  normal = domain_map.normal()
  norm2 = tf.add_n([n * n for n in normal])
  top = [c[..., -1] for c in components]
  correction = (w_t - _dot(top, normal)) / norm2
  result = []
  last = len(components) - 1
  for i, (c, n) in enumerate(zip(components, normal)):
    new_top = top[i] + correction * n
    if i == last:
      result.append(_with_wall(c, top=new_top,
                               bottom=tf.zeros_like(new_top)))
    else:
      result.append(_with_wall(c, top=new_top))
  return result


def relax_penalty(components, rho, w_t, domain_map, params, dt):
  """Advances the penalty exchange between fluid and plate exactly over dt.

  Each top node couples its half cell, of mass M = rho J_w hz / 2 per unit
  reference area, to the plate through the force (1/kappa) m |n^w| along n^w,
  where m = u . n^w - w_t. With N = n^w the mismatch relaxes as
  m(t) = m0 exp(-r t), r = (|N| / kappa)(|N|^2 / M + 1), and the exchanged
  impulse is G = m0 (1 - exp(-r dt)) / (|N|^2 / M + 1): u -= (G / M) N and
  w_t += G. The energy lost is (|N| / kappa) m0^2 (1 - exp(-2 r dt)) / (2 r)
  per unit area.

  Args:
    components: list of dim velocity tensors of grid shape.
    rho: density tensor of grid shape.
    w_t: plate velocity, plate shape.
    domain_map: the DomainMap of the current displacement.
    params: the params.Params; kappa must be positive.
    dt: the step.

  Returns:
    A tuple (components, w_t, dissipated) with the dissipated energy summed
    over the top wall.
  """
  if not (params.kappa or 0.0) > 0.0:
    raise ValueError("Penalty relaxation needs kappa > 0: " +
                     str(params.kappa))
  grid = domain_map.grid
  normal = domain_map.normal()
  length = domain_map.area_jacobian()
  norm2 = length * length
  mass = rho[..., -1] * (1.0 + domain_map.w) * (0.5 * grid.hz)
  top = [c[..., -1] for c in components]
  m0 = _dot(top, normal) - w_t
  ratio = norm2 / mass + 1.0
  rate = length / params.kappa * ratio
  impulse = m0 * (1.0 - tf.exp(-rate * dt)) / ratio
  dissipated = (length / params.kappa * m0 * m0 *
                (1.0 - tf.exp(-2.0 * rate * dt)) / (2.0 * rate))
  result = [_with_wall(c, top=t - impulse / mass * n)
            for c, t, n in zip(components, top, normal)]
  total = float(tf.reduce_sum(dissipated)) * grid.plate_cell_area
  return result, w_t + impulse, total
