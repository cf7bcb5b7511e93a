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
"""The map Psi = Phi_eta o Phi_w^-1 between two flat deformed slabs.

For flat maps Psi is a vertical stretch by g = (1 + eta) / (1 + w):

  Psi(x, z) = (x, z g(x)),   grad Psi = [[I, 0], [z grad g^T, g]],
  J = g,                     J A = [[g I, 0], [-z grad g^T, 1]],
  d_t Psi = (0, z g_t).

Quantities are sampled at the nodes of the source grid, that is at the points
Phi_w(x_hat, z_hat), where z = z_hat (1 + w). Since Psi o Phi_w = Phi_eta,
the image of a source node is the target node with the same reference
coordinates.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import numpy as np
import tensorflow as tf

from slipfsi.geometry import flow_map
from slipfsi.ops import spectral
from slipfsi.ops import stencils


class ComposedMap(object):
  """Psi from the domain of w to the domain of eta, with time derivatives."""

  def __init__(self, grid, w, eta, w_t=None, eta_t=None,
               contact_floor=flow_map.DEFAULT_CONTACT_FLOOR):
    self._grid = grid
    self._source = flow_map.DomainMap(grid, w, w_t, contact_floor)
    self._target = flow_map.DomainMap(grid, eta, eta_t, contact_floor)
    w, eta = self._source.w, self._target.w
    w_t, eta_t = self._source.w_t, self._target.w_t
    height_w = 1.0 + w
    self._g = (1.0 + eta) / height_w
    self._grad_g = [(ge - self._g * gw) / height_w for ge, gw in zip(
        self._target.plate_grad_w, self._source.plate_grad_w)]
    self._g_t = (eta_t * height_w - (1.0 + eta) * w_t) / (height_w * height_w)
    self._z = grid.zeta() * self._source.jacobian

  @property
  def grid(self):
    return self._grid

  @property
  def source_map(self):
    """The DomainMap of w."""
    return self._source

  @property
  def target_map(self):
    """The DomainMap of eta."""
    return self._target

  @property
  def stretch(self):
    """g = (1 + eta) / (1 + w), plate shape."""
    return self._g

  @property
  def stretch_gradient(self):
    return self._grad_g

  @property
  def stretch_rate(self):
    """g_t, plate shape."""
    return self._g_t

  def _field(self, plate_values):
    return plate_values[..., tf.newaxis]

  def psi(self, points):
    """Evaluates Psi at physical points (npoints, dim) of the source domain."""
    points = np.asarray(points, dtype=np.float64).reshape(-1, self._grid.dim)
    stretch = spectral.evaluate_plate(self._g, self._grid, points[:, :-1])
    result = points.copy()
    result[:, -1] = points[:, -1] * stretch
    return result

  def jacobian(self):
    """J = det grad Psi = g, broadcastable to field shape."""
    return self._field(self._g)

  def gradient_matrix(self):
    d = self._grid.dim
    g = self.jacobian()
    one, zero = tf.ones_like(g), tf.zeros_like(g)
    rows = [[one if j == i else zero for j in range(d)]
            for i in range(d - 1)]
    rows.append([self._z * self._field(gg) for gg in self._grad_g] + [g])
    return rows

  def inverse_matrix(self):
    """A = (grad Psi)^-1."""
    d = self._grid.dim
    g = self.jacobian()
    one, zero = tf.ones_like(g), tf.zeros_like(g)
    rows = [[one if j == i else zero for j in range(d)]
            for i in range(d - 1)]
    rows.append([-self._z * self._field(gg) / g for gg in self._grad_g] +
                [1.0 / g])
    return rows

  def cofactor(self):
    """J A as nested lists [row][col]."""
    d = self._grid.dim
    g = self.jacobian()
    zero = tf.zeros_like(g)
    rows = [[g if j == i else zero for j in range(d)] for i in range(d - 1)]
    rows.append([-self._z * self._field(gg) for gg in self._grad_g] +
                [tf.ones_like(g)])
    return rows

  def time_derivative(self):
    """d_t Psi at fixed physical points, as a list of field tensors."""
    shape = self._grid.shape
    zeros = [tf.zeros(shape, tf.float64)] * (self._grid.dim - 1)
    return zeros + [tf.broadcast_to(self._z * self._field(self._g_t), shape)]

  def d_cofactor_dt(self):
    """d_t (J A) = [[g_t I, 0], [-z grad g_t^T, 0]]."""
    d = self._grid.dim
    g_t = self._field(self._g_t)
    zero = tf.zeros_like(g_t)
    rows = [[g_t if j == i else zero for j in range(d)]
            for i in range(d - 1)]
    grad_g_t = spectral.plate_gradient(self._g_t, self._grid)
    rows.append([-self._z * self._field(gg) for gg in grad_g_t] + [zero])
    return rows

  def cofactor_gradient(self):
    """Physical derivatives of J A as nested lists [row][col][axis]."""
    d = self._grid.dim
    g = self.jacobian()
    zero = tf.zeros_like(g)
    grad_g = [self._field(gg) for gg in self._grad_g]
    result = []
    for a in range(d - 1):
      row = []
      for b in range(d):
        if b == a:
          row.append(grad_g + [zero])
        else:
          row.append([zero] * d)
      result.append(row)
    last = []
    for a in range(d - 1):
      second = [self._field(spectral.plate_derivative(self._grad_g[a],
                                                      self._grid, b))
                for b in range(d - 1)]
      last.append([-self._z * s for s in second] + [-grad_g[a]])
    last.append([zero] * d)
    result.append(last)
    return result

  def chain_rule_defect(self):
    """Max difference between the closed-form grad Psi and derived ones.

    Two comparisons: the vertical row of grad Psi against finite differences
    of the sampled Psi_z = z g, and the whole matrix against the product
    grad Phi_eta A_w of the two flat maps.
    """
    shape = self._grid.shape
    psi_z = tf.broadcast_to(self._z * self.jacobian(), shape)
    discrete = stencils.physical_gradient(psi_z, self._source)
    closed = self.gradient_matrix()
    defect = 0.0
    for entry, value in zip(closed[-1], discrete):
      defect = max(defect, float(tf.reduce_max(tf.abs(
          tf.broadcast_to(entry, shape) - value))))
    product = _matmul(self._target.gradient_matrix(),
                      self._source.inverse_matrix())
    for closed_row, product_row in zip(closed, product):
      for entry, value in zip(closed_row, product_row):
        defect = max(defect, float(tf.reduce_max(tf.abs(
            tf.broadcast_to(entry - value, shape)))))
    return defect

  def __str__(self):
    return "ComposedMap(" + str(self._grid) + ")"


def _matmul(left, right):
  d = len(left)
  return [[sum(left[i][k] * right[k][j] for k in range(d))
           for j in range(d)] for i in range(d)]


def compose_psi(grid, w, eta, w_t=None, eta_t=None,
                contact_floor=flow_map.DEFAULT_CONTACT_FLOOR):
  """Builds Psi = Phi_eta o Phi_w^-1.

  Args:
    grid: the grid both displacements are sampled on.
    w: source displacement, plate shape.
    eta: target displacement, plate shape.
    w_t: source plate velocity, or None for zero.
    eta_t: target plate velocity, or None for zero.
    contact_floor: lower bound for 1 + w and 1 + eta.

  Returns:
    A ComposedMap.

  Raises:
    errors.DegeneracyError: if either map degenerates.
  """
  return ComposedMap(grid, w, eta, w_t, eta_t, contact_floor)
