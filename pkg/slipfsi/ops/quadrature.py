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
"""Quadrature on the reference slab and on its walls.

Integrals over the moving domain are computed on the reference slab with the
Jacobian of the flow map as weight: the integral of g over Omega^w equals the
integral of g_hat * J_w over the reference slab. The horizontal rule is the
periodic rectangle rule and the vertical one the trapezoid rule, so constants
are integrated exactly.

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import numpy as np
import tensorflow as tf


def integrate_values(values, grid, weight=None):
  """Integral of samples (times an optional weight) over the slab."""
  integrand = values if weight is None else values * weight
  integrand = tf.broadcast_to(integrand, grid.shape)
  return float(tf.reduce_sum(integrand * grid.cell_volumes()))


def integrate_reference(f, weight=None):
  """Quadrature of f * weight over the reference slab.

  Args:
    f: a ScalarField.
    weight: a positive ScalarField on the same grid, or None for 1.

  Returns:
    A python float.

  Raises:
    ValueError: if the grids differ or the weight is not positive.
  """
  if weight is None:
    return integrate_values(f.values, f.grid)
  f.grid.check_same(weight.grid, "quadrature weight")
  if not float(tf.reduce_min(weight.values)) > 0.0:
    raise ValueError("Quadrature weight must be positive")
  return integrate_values(f.values, f.grid, weight.values)


def integrate_plate(values, grid):
  """Rectangle rule over the horizontal torus."""
  return float(tf.reduce_sum(values)) * grid.plate_cell_area


def integrate_boundary(values, area_jacobian, grid):
  """Integral over the deformed top wall, pulled back to Gamma."""
  return integrate_plate(values * area_jacobian, grid)


def integrate_bottom(values, grid):
  """Integral of the z_hat = 0 trace of field samples over the flat bottom."""
  return integrate_plate(bottom_trace(values), grid)


def top_trace(values):
  return values[..., -1]


def bottom_trace(values):
  return values[..., 0]


def integrate_layer(values, weight, grid, sigma):
  """Integral over the top layer {z_hat > 1 - sigma}.

  The integrand is taken piecewise linear in z_hat between nodes, and the
  integral of that interpolant is exact, so constants give sigma * |Gamma|
  times the mean weight for any sigma.

  Args:
    values: tensor of grid.shape.
    weight: tensor broadcastable to grid.shape (typically J_w).
    grid: the grid.
    sigma: layer thickness in (0, 1].

  Returns:
    A python float.
  """
  if not 0.0 <= sigma <= 1.0:
    raise ValueError("sigma must lie in [0, 1]: " + str(sigma))
  g = np.broadcast_to((values * weight).numpy(), grid.shape)
  z = grid.z
  start = 1.0 - sigma
  columns = g.reshape(-1, grid.nz)
  total = np.zeros(columns.shape[0])
  for k in range(grid.nz - 1):
    lo, hi = z[k], z[k + 1]
    a, b = max(lo, start), hi
    if b <= a:
      continue
    # Linear interpolant on [lo, hi] integrated over [a, b].
    ta = (a - lo) / (hi - lo)
    ga = columns[:, k] + ta * (columns[:, k + 1] - columns[:, k])
    total += 0.5 * (ga + columns[:, k + 1]) * (b - a)
  return float(np.sum(total)) * grid.plate_cell_area
