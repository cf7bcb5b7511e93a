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
"""Value-semantic fields on the reference grid, and the coupled State.

A ScalarField holds a float64 tensor of grid.shape. A VectorField holds a
tensor of shape (dim,) + grid.shape whose last component is vertical. A State
bundles the fluid pair (rho_hat, u_hat), pulled back to the reference slab,
with the plate pair (w, w_t) sampled on the horizontal torus.

Fields are never mutated; operations return new fields.

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import numpy as np
import tensorflow as tf

from slipfsi import errors
from slipfsi import grid as grid_lib


def _as_tensor(values):
  if isinstance(values, np.ndarray):
    values = np.ascontiguousarray(values, dtype=np.float64)
  return tf.convert_to_tensor(values, dtype=tf.float64)


def _check_shape(values, expected, what):
  if tuple(values.shape.as_list()) != tuple(expected):
    raise ValueError("Shape of " + what + " is " +
                     str(values.shape.as_list()) + ", expected " +
                     str(list(expected)))


class ScalarField(object):
  """Samples of a scalar function on a grid."""

  def __init__(self, grid, values):
    """Creates a scalar field.

    Args:
      grid: the grid_lib.Grid the samples live on.
      values: array-like of shape grid.shape.

    Raises:
      ValueError: if the shape does not match the grid.
    """
    self._grid = grid
    self._values = _as_tensor(values)
    _check_shape(self._values, grid.shape, "scalar field")

  @property
  def grid(self):
    return self._grid

  @property
  def values(self):
    return self._values

  @property
  def staggering(self):
    return grid_lib.COLLOCATED

  def numpy(self):
    return self._values.numpy()

  def with_values(self, values):
    return ScalarField(self._grid, values)

  def min(self):
    return float(tf.reduce_min(self._values))

  def max(self):
    return float(tf.reduce_max(self._values))

  def is_finite(self):
    return bool(tf.reduce_all(tf.math.is_finite(self._values)))

  def __str__(self):
    return "ScalarField(" + str(self._grid) + ")"


class VectorField(object):
  """Samples of a vector function on a grid; component axis first."""

  def __init__(self, grid, values):
    """Creates a vector field.

    Args:
      grid: the grid_lib.Grid the samples live on.
      values: array-like of shape (grid.dim,) + grid.shape, or a list of
        grid.dim arrays of grid.shape.

    Raises:
      ValueError: if the shape does not match the grid.
    """
    self._grid = grid
    if isinstance(values, (list, tuple)):
      values = tf.stack([_as_tensor(v) for v in values], axis=0)
    self._values = _as_tensor(values)
    _check_shape(self._values, (grid.dim,) + grid.shape, "vector field")

  @property
  def grid(self):
    return self._grid

  @property
  def values(self):
    return self._values

  @property
  def dim(self):
    return self._grid.dim

  @property
  def staggering(self):
    return grid_lib.COLLOCATED

  def component(self, i):
    return self._values[i]

  def components(self):
    return tf.unstack(self._values, axis=0)

  def numpy(self):
    return self._values.numpy()

  def with_values(self, values):
    return VectorField(self._grid, values)

  def magnitude(self):
    return tf.sqrt(tf.reduce_sum(tf.square(self._values), axis=0))

  def is_finite(self):
    return bool(tf.reduce_all(tf.math.is_finite(self._values)))

  def __str__(self):
    return "VectorField(" + str(self._grid) + ")"


def constant_scalar(grid, value):
  return ScalarField(grid, tf.fill(grid.shape, tf.constant(value, tf.float64)))


def zero_vector(grid):
  return VectorField(grid, tf.zeros((grid.dim,) + grid.shape, tf.float64))


def constant_vector(grid, value):
  """A vector field equal to value (a sequence of grid.dim numbers)."""
  if len(value) != grid.dim:
    raise ValueError("Expected " + str(grid.dim) + " components: " +
                     str(value))
  return VectorField(grid, [tf.fill(grid.shape, tf.constant(v, tf.float64))
                            for v in value])


def scalar_from_function(grid, fn):
  """Samples fn(*coordinates) on the grid nodes (numpy arrays in, out)."""
  return ScalarField(grid, np.broadcast_to(fn(*grid.coordinates()),
                                           grid.shape))


def vector_from_function(grid, fn):
  """Samples fn(*coordinates), which returns grid.dim arrays."""
  return VectorField(grid, [np.broadcast_to(c, grid.shape)
                            for c in fn(*grid.coordinates())])


class State(object):
  """The coupled unknowns at one time."""

  def __init__(self, t, rho_hat, u_hat, w, w_t):
    """Creates a state.

    Args:
      t: time.
      rho_hat: ScalarField, density pulled back to the reference slab.
      u_hat: VectorField, velocity pulled back to the reference slab.
      w: plate displacement, array-like of grid.plate_shape.
      w_t: plate velocity, array-like of grid.plate_shape.

    Raises:
      ValueError: if the fields do not share one grid.
    """
    rho_hat.grid.check_same(u_hat.grid, "velocity")
    self._t = float(t)
    self._rho_hat = rho_hat
    self._u_hat = u_hat
    self._w = _as_tensor(w)
    self._w_t = _as_tensor(w_t)
    _check_shape(self._w, rho_hat.grid.plate_shape, "plate displacement")
    _check_shape(self._w_t, rho_hat.grid.plate_shape, "plate velocity")

  @property
  def t(self):
    return self._t

  @property
  def grid(self):
    return self._rho_hat.grid

  @property
  def rho_hat(self):
    return self._rho_hat

  @property
  def u_hat(self):
    return self._u_hat

  @property
  def w(self):
    return self._w

  @property
  def w_t(self):
    return self._w_t

  def replace(self, t=None, rho_hat=None, u_hat=None, w=None, w_t=None):
    """Returns a copy with the given parts replaced."""
    return State(self._t if t is None else t,
                 self._rho_hat if rho_hat is None else rho_hat,
                 self._u_hat if u_hat is None else u_hat,
                 self._w if w is None else w,
                 self._w_t if w_t is None else w_t)

  def check_finite(self):
    """Raises errors.BlowUpError if any sample is not finite."""
    finite = tf.reduce_all([
        tf.reduce_all(tf.math.is_finite(self._rho_hat.values)),
        tf.reduce_all(tf.math.is_finite(self._u_hat.values)),
        tf.reduce_all(tf.math.is_finite(self._w)),
        tf.reduce_all(tf.math.is_finite(self._w_t))])
    if not bool(finite):
      raise errors.BlowUpError("Non-finite state", t=self._t)

  def validate(self, contact_floor):
    """Checks the invariants of a state.

    Args:
      contact_floor: lower bound for 1 + w.

    Raises:
      errors.PositivityError: if a density sample is not positive.
      errors.DegeneracyError: if 1 + w <= contact_floor somewhere.
    """
    if not float(tf.reduce_min(self._rho_hat.values)) > 0.0:
      raise errors.PositivityError(
          "Density lost positivity, min=" +
          repr(float(tf.reduce_min(self._rho_hat.values))), t=self._t)
    height = 1.0 + float(tf.reduce_min(self._w))
    if not height > contact_floor:
      raise errors.DegeneracyError(
          "Self-contact: min(1 + w)=" + repr(height) + " <= " +
          repr(contact_floor), t=self._t)

  def __str__(self):
    return "State(t=" + str(self._t) + ", " + str(self.grid) + ")"


def rest_state(grid, params, t=0.0):
  """The equilibrium rho = rho_bar, u = 0, w = w_t = 0."""
  zeros = tf.zeros(grid.plate_shape, tf.float64)
  return State(t, constant_scalar(grid, params.rho_bar), zero_vector(grid),
               zeros, zeros)
