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
"""The reference slab Gamma x [0, 1] and its tensor-product sampling.

Horizontal directions are periodic with nodes x_i = i * hx, i < nx. The
vertical direction has walls at z = 0 and z = 1 with nodes z_k = k * hz,
k < nz, so both walls carry samples. Field arrays have shape (nx, nz) in two
dimensions and (nx, ny, nz) in three; the vertical axis is always last. Plate
arrays drop the vertical axis.

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import math

import numpy as np
import tensorflow as tf

PERIODIC_HORIZONTAL = "periodic-horizontal"
WALL_VERTICAL = "wall-vertical"
COLLOCATED = "collocated"

_MIN_SAMPLES = 4


class Grid(object):
  """A collocated grid on the reference slab."""

  def __init__(self, nx, nz, ny=None, period=2.0 * math.pi, period_y=None):
    """Creates a grid.

    Args:
      nx: horizontal sample count.
      nz: vertical sample count, walls included.
      ny: second horizontal sample count; given only in three dimensions.
      period: horizontal period in x.
      period_y: horizontal period in y; defaults to period.

    Raises:
      ValueError: if a count is below 4 or a period is not positive.
    """
    counts = [nx, nz] + ([] if ny is None else [ny])
    for count in counts:
      if int(count) != count or count < _MIN_SAMPLES:
        raise ValueError("Sample counts must be integers >= " +
                         str(_MIN_SAMPLES) + ": " + str(counts))
    if not period > 0.0:
      raise ValueError("period must be positive: " + str(period))
    self._nx = int(nx)
    self._nz = int(nz)
    self._ny = None if ny is None else int(ny)
    self._period = float(period)
    if self._ny is None:
      self._period_y = None
    else:
      self._period_y = float(period if period_y is None else period_y)
      if not self._period_y > 0.0:
        raise ValueError("period_y must be positive: " + str(period_y))
    self._cell_volumes = None

  @property
  def nx(self):
    return self._nx

  @property
  def ny(self):
    return self._ny

  @property
  def nz(self):
    return self._nz

  @property
  def dim(self):
    return 2 if self._ny is None else 3

  @property
  def period(self):
    return self._period

  @property
  def period_y(self):
    return self._period_y

  @property
  def hx(self):
    return self._period / self._nx

  @property
  def hy(self):
    return None if self._ny is None else self._period_y / self._ny

  @property
  def hz(self):
    return 1.0 / (self._nz - 1)

  @property
  def topology(self):
    return (PERIODIC_HORIZONTAL, WALL_VERTICAL)

  @property
  def horizontal_counts(self):
    return (self._nx,) if self._ny is None else (self._nx, self._ny)

  @property
  def horizontal_spacings(self):
    return (self.hx,) if self._ny is None else (self.hx, self.hy)

  @property
  def horizontal_periods(self):
    if self._ny is None:
      return (self._period,)
    return (self._period, self._period_y)

  @property
  def shape(self):
    return self.horizontal_counts + (self._nz,)

  @property
  def plate_shape(self):
    return self.horizontal_counts

  @property
  def min_spacing(self):
    return min(self.horizontal_spacings + (self.hz,))

  @property
  def plate_cell_area(self):
    return float(np.prod(self.horizontal_spacings))

  @property
  def plate_area(self):
    """|Gamma|, which is also the volume of the reference slab."""
    return float(np.prod(self.horizontal_periods))

  @property
  def x(self):
    return np.arange(self._nx) * self.hx

  @property
  def y(self):
    return None if self._ny is None else np.arange(self._ny) * self.hy

  @property
  def z(self):
    return np.arange(self._nz) * self.hz

  def horizontal_coordinates(self):
    """Returns one array of plate shape per horizontal axis."""
    axes = [np.arange(n) * h for n, h in zip(self.horizontal_counts,
                                            self.horizontal_spacings)]
    return np.meshgrid(*axes, indexing="ij")

  def coordinates(self):
    """Returns one array of field shape per axis, vertical last."""
    axes = [np.arange(n) * h for n, h in zip(self.horizontal_counts,
                                            self.horizontal_spacings)]
    axes.append(self.z)
    return np.meshgrid(*axes, indexing="ij")

  def vertical_volumes(self):
    """Trapezoid weights in z: hz/2 at the walls, hz inside."""
    volumes = np.full(self._nz, self.hz)
    volumes[0] = volumes[-1] = 0.5 * self.hz
    return volumes

  def cell_volumes(self):
    """Quadrature weights of field shape (rectangle x trapezoid)."""
    if self._cell_volumes is None:
      weights = np.broadcast_to(self.plate_cell_area * self.vertical_volumes(),
                                self.shape)
      self._cell_volumes = tf.constant(np.ascontiguousarray(weights),
                                       dtype=tf.float64)
    return self._cell_volumes

  def zeta(self):
    """The vertical coordinate as a tensor broadcastable to field shape."""
    return tf.constant(self.z.reshape((1,) * (self.dim - 1) + (self._nz,)),
                       dtype=tf.float64)

  def refined(self, factor=2):
    """Returns the grid with every spacing divided by factor."""
    return Grid(self._nx * factor, (self._nz - 1) * factor + 1,
                ny=None if self._ny is None else self._ny * factor,
                period=self._period, period_y=self._period_y)

  def same_as(self, other):
    return (isinstance(other, Grid) and self.shape == other.shape and
            self.horizontal_periods == other.horizontal_periods)

  def check_same(self, other, what="field"):
    """Raises ValueError if other is a different grid."""
    if not self.same_as(other):
      raise ValueError("Grid mismatch for " + what + ": " + str(self) +
                       " vs " + str(other))

  def __eq__(self, other):
    return self.same_as(other)

  def __ne__(self, other):
    return not self.same_as(other)

  def __hash__(self):
    return hash((self.shape, self.horizontal_periods))

  def __str__(self):
    return ("Grid(shape=" + str(self.shape) + ", periods=" +
            str(self.horizontal_periods) + ")")

  def __repr__(self):
    return str(self)
