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
"""The flat flow map Phi_w(x_hat, z_hat) = (x_hat, z_hat (1 + w(x_hat))).

On the top wall the map reduces to x -> (x, 1 + w(x)), the graph of the plate.
Its gradient is lower triangular,

  grad Phi_w = [[I, 0], [z_hat grad w^T, 1 + w]],

so J_w = 1 + w does not depend on z_hat, and

  J_w A_w = [[(1 + w) I, 0], [-z_hat grad w^T, 1]]

is the cofactor matrix. Its last row at z_hat = 1 is the weighted normal
n^w = (-grad w, 1), whose dot product with e_3 is 1 for every w.

Plate derivatives are spectral; field derivatives use ops.stencils.

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import numpy as np
import tensorflow as tf

from slipfsi import errors
from slipfsi.ops import spectral

DEFAULT_CONTACT_FLOOR = 0.05


def check_contact(w, contact_floor, t=None):
  """Raises errors.DegeneracyError if 1 + w <= contact_floor somewhere."""
  height = 1.0 + float(tf.reduce_min(w))
  if not height > contact_floor:
    raise errors.DegeneracyError(
        "Self-contact: min(1 + w)=" + repr(height) + " <= " +
        repr(contact_floor), t=t)


class DomainMap(object):
  """Phi_w and its derived quantities, sampled on a grid.

  Tensors that depend only on the plate (jacobian, grad_w, w_t) carry a
  trailing axis of length one so that they broadcast against fields.
  """

  def __init__(self, grid, w, w_t=None, contact_floor=DEFAULT_CONTACT_FLOOR,
               t=None):
    """Creates the map.

    Args:
      grid: the grid.
      w: plate displacement, tensor of grid.plate_shape.
      w_t: plate velocity, tensor of grid.plate_shape; zero when None.
      contact_floor: lower bound for 1 + w.
      t: time, only used in error messages.

    Raises:
      errors.DegeneracyError: on self-contact.
    """
    self._grid = grid
    self._w = tf.convert_to_tensor(w, tf.float64)
    self._w_t = (tf.zeros_like(self._w) if w_t is None else
                 tf.convert_to_tensor(w_t, tf.float64))
    self._contact_floor = contact_floor
    check_contact(self._w, contact_floor, t=t)
    self._plate_grad_w = spectral.plate_gradient(self._w, grid)
    self._zeta = grid.zeta()
    self._height = (1.0 + self._w)[..., tf.newaxis]
    self._grad_w = [g[..., tf.newaxis] for g in self._plate_grad_w]
    self._slopes = [self._zeta * g / self._height for g in self._grad_w]

  def with_velocity(self, w_t):
    """Same displacement, different plate velocity."""
    result = DomainMap.__new__(DomainMap)
    result.__dict__.update(self.__dict__)
    result._w_t = tf.convert_to_tensor(w_t, tf.float64)  # pylint: disable=protected-access
    return result

  @property
  def grid(self):
    return self._grid

  @property
  def w(self):
    return self._w

  @property
  def w_t(self):
    return self._w_t

  @property
  def contact_floor(self):
    return self._contact_floor

  @property
  def zeta(self):
    return self._zeta

  @property
  def jacobian(self):
    """J_w = 1 + w, broadcastable to field shape."""
    return self._height

  @property
  def grad_w(self):
    """Horizontal derivatives of w, broadcastable to field shape."""
    return self._grad_w

  @property
  def plate_grad_w(self):
    """Horizontal derivatives of w, plate shape."""
    return self._plate_grad_w

  @property
  def slopes(self):
    """z_hat * grad w / (1 + w); enters grad_x = A^T grad_ref."""
    return self._slopes

  @property
  def w_t_field(self):
    return self._w_t[..., tf.newaxis]

  def mesh_velocity(self):
    """d_t Phi_w = (0, z_hat w_t) as a list of dim tensors."""
    zeros = [tf.zeros(self._grid.shape, tf.float64)] * (self._grid.dim - 1)
    return zeros + [tf.broadcast_to(self._zeta * self.w_t_field,
                                    self._grid.shape)]

  def gradient_matrix(self):
    """grad Phi_w as nested lists [row][col] of broadcastable tensors."""
    d = self._grid.dim
    one = tf.ones_like(self._height)
    zero = tf.zeros_like(self._height)
    rows = []
    for i in range(d - 1):
      rows.append([one if j == i else zero for j in range(d)])
    rows.append([self._zeta * g for g in self._grad_w] + [self._height])
    return rows

  def inverse_matrix(self):
    """A_w = (grad Phi_w)^-1 as nested lists."""
    d = self._grid.dim
    one = tf.ones_like(self._height)
    zero = tf.zeros_like(self._height)
    rows = []
    for i in range(d - 1):
      rows.append([one if j == i else zero for j in range(d)])
    rows.append([-s for s in self._slopes] + [1.0 / self._height])
    return rows

  def cofactor_rows(self):
    """J_w A_w as nested lists."""
    d = self._grid.dim
    zero = tf.zeros_like(self._height)
    rows = []
    for i in range(d - 1):
      rows.append([self._height if j == i else zero for j in range(d)])
    rows.append([-self._zeta * g for g in self._grad_w] +
                [tf.ones_like(self._height)])
    return rows

  def from_contravariant(self, fluxes):
    """Returns v with J_w A_w v = fluxes; inverse of stencils.contravariant."""
    horizontal = [c / self._height for c in fluxes[:-1]]
    vertical = fluxes[-1]
    for grad_w, c in zip(self._grad_w, horizontal):
      vertical = vertical + self._zeta * grad_w * c
    return horizontal + [vertical]

  def normal(self):
    """The weighted normal n^w = (-grad w, 1) on the top wall, plate shape."""
    return [-g for g in self._plate_grad_w] + [tf.ones_like(self._w)]

  def area_jacobian(self):
    """sqrt(1 + |grad w|^2), plate shape."""
    return tf.sqrt(1.0 + tf.add_n([g * g for g in self._plate_grad_w]))

  def forward(self, points):
    """Maps reference points (npoints, dim) to the deformed domain."""
    points = np.asarray(points, dtype=np.float64).reshape(-1, self._grid.dim)
    w = spectral.evaluate_plate(self._w, self._grid, points[:, :-1])
    result = points.copy()
    result[:, -1] = points[:, -1] * (1.0 + w)
    return result

  def inverse(self, points):
    """Maps deformed points (npoints, dim) back to the reference slab."""
    points = np.asarray(points, dtype=np.float64).reshape(-1, self._grid.dim)
    w = spectral.evaluate_plate(self._w, self._grid, points[:, :-1])
    result = points.copy()
    result[:, -1] = points[:, -1] / (1.0 + w)
    return result

  def hadamard_margin(self):
    """min over samples of d^(d/2) |grad Phi|_F^d - |J_w|; never negative."""
    d = self._grid.dim
    frob2 = tf.zeros(self._grid.shape, tf.float64)
    for row in self.gradient_matrix():
      for entry in row:
        frob2 += tf.broadcast_to(entry * entry, self._grid.shape)
    bound = d ** (d / 2.0) * tf.pow(frob2, d / 2.0)
    jac = tf.broadcast_to(tf.abs(self._height), self._grid.shape)
    return float(tf.reduce_min(bound - jac))


def _point_quantities(w, w_t, grid, x):
  x = np.asarray(x, dtype=np.float64).reshape(1, -1)
  height = 1.0 + spectral.evaluate_plate(w, grid, x)[0]
  grads = [spectral.evaluate_plate(g, grid, x)[0]
           for g in spectral.plate_gradient(w, grid)]
  velocity = 0.0 if w_t is None else spectral.evaluate_plate(w_t, grid, x)[0]
  return height, grads, velocity


def flat_flow_map(w, w_t, point, grid, contact_floor=DEFAULT_CONTACT_FLOOR):
  """Evaluates Phi_w at one reference point.

  Args:
    w: plate displacement samples.
    w_t: plate velocity samples, or None.
    point: reference point (x_hat..., z_hat).
    grid: the grid the plate samples live on.
    contact_floor: lower bound for 1 + w.

  Returns:
    A tuple (image, gradient, jacobian, mesh_velocity) of numpy values.

  Raises:
    errors.DegeneracyError: if 1 + w(x_hat) <= contact_floor.
  """
  point = np.asarray(point, dtype=np.float64)
  height, grads, velocity = _point_quantities(w, w_t, grid, point[:-1])
  if not height > contact_floor:
    raise errors.DegeneracyError("Self-contact at " + str(point) +
                                 ": 1 + w=" + repr(height))
  z_hat = point[-1]
  d = point.shape[0]
  image = point.copy()
  image[-1] = z_hat * height
  gradient = np.eye(d)
  gradient[-1, :-1] = z_hat * np.asarray(grads)
  gradient[-1, -1] = height
  mesh_velocity = np.zeros(d)
  mesh_velocity[-1] = z_hat * velocity
  return image, gradient, height, mesh_velocity


def deformed_normal_flat(w, grid, x):
  """Returns n^w = (-grad w(x), 1) at a horizontal point x."""
  _, grads, _ = _point_quantities(w, None, grid, x)
  return np.array([-g for g in grads] + [1.0])


def area_jacobian(w, grid, x):
  """Returns sqrt(1 + |grad w(x)|^2) at a horizontal point x."""
  _, grads, _ = _point_quantities(w, None, grid, x)
  return float(np.sqrt(1.0 + np.sum(np.square(grads))))
