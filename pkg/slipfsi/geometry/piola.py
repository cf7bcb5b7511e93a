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
"""The Piola transform v = J A v_tilde o Psi and its identities.

With Psi o Phi_w = Phi_eta the cofactors multiply, J_w A_w J A = J_eta A_eta,
so the reference fluxes of v on the source slab equal those of v_tilde on the
target slab node by node. Divergence and the top normal trace are therefore
carried over by the transform up to round-off when both fields live on the
same grid, and up to interpolation error otherwise.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import numpy as np
import tensorflow as tf

from slipfsi import field
from slipfsi.ops import interpolate
from slipfsi.ops import quadrature
from slipfsi.ops import spectral
from slipfsi.ops import stencils


def piola_pointwise(grad_psi, v_at_image):
  """det(B) B^-1 v for one matrix B = grad Psi and one vector v.

  Args:
    grad_psi: array of shape (d, d).
    v_at_image: array of shape (d,), v_tilde evaluated at Psi(x).

  Returns:
    numpy array of shape (d,).
  """
  grad_psi = np.asarray(grad_psi, dtype=np.float64)
  return np.linalg.det(grad_psi) * np.linalg.solve(
      grad_psi, np.asarray(v_at_image, dtype=np.float64))


def _at_images(v_tilde, composed):
  """v_tilde at Psi of the source nodes, as a list of component tensors."""
  grid = composed.grid
  if v_tilde.grid.same_as(grid):
    return v_tilde.components()
  return tf.unstack(
      interpolate.resample_field(v_tilde.values, v_tilde.grid, grid), axis=0)


def _apply(rows, components):
  return [sum(entry * c for entry, c in zip(row, components))
          for row in rows]


def piola_transform(v_tilde, composed):
  """Pulls a target-domain velocity back to the source domain.

  Args:
    v_tilde: VectorField sampled at the reference nodes of the target map.
      Its grid may differ from composed.grid; it is then interpolated
      bilinearly.
    composed: a composed_map.ComposedMap.

  Returns:
    VectorField on composed.grid: v = J A v_tilde o Psi at the source nodes.

  Raises:
    errors.InterpolationError: if v_tilde cannot be sampled at the images.
  """
  grid = composed.grid
  values = _at_images(v_tilde, composed)
  transformed = _apply(composed.cofactor(), values)
  return field.VectorField(
      grid, [tf.broadcast_to(c, grid.shape) for c in transformed])


def piola_identity_residual(composed):
  """Max-norm of the row divergence of (J A)^T on the source domain.

  Derivatives are the chain-rule stencils of the source map, so entries that
  are constant (identity, uniform stretch) give exactly zero.
  """
  grid = composed.grid
  cofactor = composed.cofactor()
  d = grid.dim
  residual = 0.0
  for i in range(d):
    total = tf.zeros(grid.shape, tf.float64)
    for j in range(d):
      entry = tf.broadcast_to(cofactor[j][i], grid.shape)
      total += stencils.physical_gradient(entry, composed.source_map)[j]
    residual = max(residual, float(tf.reduce_max(tf.abs(total))))
  return residual


def piola_divergence(v, composed):
  """div_x v on the source domain, in the Piola form of ops.stencils."""
  return stencils.physical_divergence(v.components(), composed.source_map)


def target_divergence(v_tilde, composed):
  """div_x v_tilde on the target domain."""
  return stencils.physical_divergence(v_tilde.components(),
                                      composed.target_map)


def divergence_preservation_defect(v_tilde, composed):
  """max |div_x v - J (div v_tilde) o Psi| over the source nodes.

  Both divergences are the discrete ones of ops.stencils. They share the
  reference flux J_w A_w v = J_eta A_eta v_tilde, so the defect stays at
  round-off on every grid.
  """
  grid = composed.grid
  v = piola_transform(v_tilde, composed)
  carried = tf.broadcast_to(composed.jacobian(), grid.shape) * (
      target_divergence(v_tilde, composed))
  return float(tf.reduce_max(tf.abs(piola_divergence(v, composed) - carried)))


def normal_law_defect(v, v_tilde, composed):
  """max over Gamma of |v . n^w - (v_tilde . n^eta) o Psi| at the top."""
  source_normal = composed.source_map.normal()
  target_normal = composed.target_map.normal()
  images = _at_images(v_tilde, composed)
  lhs = tf.add_n([quadrature.top_trace(c) * n
                  for c, n in zip(v.components(), source_normal)])
  rhs = tf.add_n([quadrature.top_trace(c) * n
                  for c, n in zip(images, target_normal)])
  return float(tf.reduce_max(tf.abs(lhs - rhs)))


def _max_abs(tensor, grid):
  return float(tf.reduce_max(tf.abs(tf.broadcast_to(tensor, grid.shape))))


def _plate_w1_inf(f, grid):
  norm = float(tf.reduce_max(tf.abs(f)))
  for g in spectral.plate_gradient(f, grid):
    norm += float(tf.reduce_max(tf.abs(g)))
  return norm


def _plate_h2(f, grid):
  total = quadrature.integrate_plate(f * f, grid)
  for g in spectral.plate_gradient(f, grid):
    total += quadrature.integrate_plate(g * g, grid)
  lap = spectral.plate_laplacian(f, grid)
  total += quadrature.integrate_plate(lap * lap, grid)
  return float(np.sqrt(total))


def psi_deviation_norms(composed):
  """Sizes of Psi - identity next to the sizes of eta - w.

  Returns:
    A dict with the max-norms of J - 1, A - I, d_t Psi and d_t (J A), and the
    discrete W^{1,inf} and H^2 norms of eta - w and the W^{1,inf} norm of
    eta_t - w_t, so that ratios between the two groups can be inspected.
  """
  grid = composed.grid
  d = grid.dim
  inverse = composed.inverse_matrix()
  deviation = 0.0
  for i in range(d):
    for j in range(d):
      identity = 1.0 if i == j else 0.0
      deviation = max(deviation, _max_abs(inverse[i][j] - identity, grid))
  rate = 0.0
  for row in composed.d_cofactor_dt():
    for entry in row:
      rate = max(rate, _max_abs(entry, grid))
  source, target = composed.source_map, composed.target_map
  difference = target.w - source.w
  velocity_difference = target.w_t - source.w_t
  return {
      "jacobian_deviation": _max_abs(composed.jacobian() - 1.0, grid),
      "inverse_deviation": deviation,
      "psi_rate": max(_max_abs(c, grid) for c in composed.time_derivative()),
      "cofactor_rate": rate,
      "displacement_w1_inf": _plate_w1_inf(difference, grid),
      "displacement_h2": _plate_h2(difference, grid),
      "velocity_w1_inf": _plate_w1_inf(velocity_difference, grid),
  }
