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
"""Constitutive laws of the barotropic fluid and the coupling-mode names.

The pressure law is p(rho) = rho^gamma, regularized to the artificial
pressure p_delta(rho) = rho^gamma + delta rho^beta, with the potential
H_delta(rho) = rho^gamma / (gamma - 1) + delta rho^beta / (beta - 1), so that
rho H_delta'(rho) - H_delta(rho) = p_delta(rho). The viscous stress is
S = mu (grad u + grad u^T) + lam div u I.

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import numpy as np
import tensorflow as tf

from slipfsi import errors
from slipfsi.ops import stencils

STRONG = "strong"
PENALTY = "penalty"
MONOLITHIC = "monolithic"
COUPLING_MODES = (STRONG, PENALTY, MONOLITHIC)


def _check_non_negative(rho):
  if isinstance(rho, tf.Tensor):
    smallest = float(tf.reduce_min(rho))
  else:
    smallest = float(np.min(rho))
  if smallest < 0.0:
    raise errors.PositivityError("Negative density: " + repr(smallest))


def pressure(rho, params):
  """p(rho) = rho^gamma.

  Raises:
    errors.PositivityError: if rho < 0 somewhere.
  """
  _check_non_negative(rho)
  return rho ** params.gamma


def pressure_delta(rho, params):
  """p_delta(rho) = rho^gamma + delta rho^beta."""
  _check_non_negative(rho)
  result = rho ** params.gamma
  if params.delta > 0.0:
    result = result + params.delta * rho ** params.beta
  return result


def pressure_delta_derivative(rho, params):
  result = params.gamma * rho ** (params.gamma - 1.0)
  if params.delta > 0.0:
    result = result + params.delta * params.beta * rho ** (params.beta - 1.0)
  return result


def pressure_potential(rho, params):
  """H_delta(rho) = rho^gamma / (gamma - 1) + delta rho^beta / (beta - 1)."""
  result = rho ** params.gamma / (params.gamma - 1.0)
  if params.delta > 0.0:
    result = result + params.delta * rho ** params.beta / (params.beta - 1.0)
  return result


def pressure_potential_derivative(rho, params):
  result = params.gamma * rho ** (params.gamma - 1.0) / (params.gamma - 1.0)
  if params.delta > 0.0:
    result = result + (params.delta * params.beta * rho **
                       (params.beta - 1.0) / (params.beta - 1.0))
  return result


def relative_pressure_potential(rho, r, params):
  """H(rho) - H'(r) (rho - r) - H(r); non-negative by convexity.

  For gamma = 2 and delta = 0 this is exactly (rho - r)^2.
  """
  return (pressure_potential(rho, params) -
          pressure_potential_derivative(r, params) * (rho - r) -
          pressure_potential(r, params))


def pressure_fluctuation(rho, params):
  """p_delta(rho) - p_delta(rho_bar), with rho_bar broadcast to rho."""
  rho_bar = tf.fill(tf.shape(rho), tf.constant(params.rho_bar, tf.float64))
  return pressure_delta(rho, params) - pressure_delta(rho_bar, params)


def sound_speed(rho, params):
  """sqrt(p_delta'(rho)) / eps."""
  return tf.sqrt(pressure_delta_derivative(rho, params)) / params.eps


def stress_tensor(grad_u, params):
  """S = mu (grad u + grad u^T) + lam div u I.

  Args:
    grad_u: nested lists [i][j] = d_j u_i of tensors, arrays or numbers.
    params: the params.Params.

  Returns:
    Nested lists [i][j] of the same kind.
  """
  d = len(grad_u)
  divergence = sum(grad_u[i][i] for i in range(d))
  result = []
  for i in range(d):
    row = []
    for j in range(d):
      entry = params.mu * (grad_u[i][j] + grad_u[j][i])
      if i == j:
        entry = entry + params.lam * divergence
      row.append(entry)
    result.append(row)
  return result


def velocity_gradient(components, domain_map):
  """grad_x u as nested lists [i][j] = d_j u_i."""
  return [stencils.physical_gradient(c, domain_map) for c in components]


def contravariant_velocity(components, domain_map):
  """J_w A_w (u - d_t Phi_w) for the pulled-back velocity."""
  relative = list(components)
  relative[-1] = relative[-1] - domain_map.zeta * domain_map.w_t_field
  return stencils.contravariant(relative, domain_map)

