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
"""Multilinear interpolation of grid samples at reference points."""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import itertools

import numpy as np
import tensorflow as tf

from slipfsi import errors

_Z_SLACK = 1e-12


def bilinear(values, grid, points):
  """Interpolates samples at reference points (trilinear when dim = 3).

  Args:
    values: tensor or array whose trailing axes are grid.shape; leading axes
      (e.g. vector components) are carried along.
    grid: the grid.
    points: array of shape (npoints, grid.dim) of reference coordinates.

  Returns:
    numpy array of shape leading_shape + (npoints,).

  Raises:
    errors.InterpolationError: if a point lies outside the slab vertically.
  """
  data = values.numpy() if isinstance(values, tf.Tensor) else np.asarray(
      values)
  points = np.asarray(points, dtype=np.float64).reshape(-1, grid.dim)
  z = points[:, -1]
  if np.any(z < -_Z_SLACK) or np.any(z > 1.0 + _Z_SLACK):
    raise errors.InterpolationError(
        "Point outside the sampled slab: z in [" + str(z.min()) + ", " +
        str(z.max()) + "]")
  lower = []
  fraction = []
  for axis, (n, h) in enumerate(zip(grid.horizontal_counts,
                                    grid.horizontal_spacings)):
    s = points[:, axis] / h
    i0 = np.floor(s)
    fraction.append(s - i0)
    lower.append((i0.astype(np.int64) % n, (i0.astype(np.int64) + 1) % n))
  s = np.clip(z, 0.0, 1.0) / grid.hz
  k0 = np.minimum(np.floor(s).astype(np.int64), grid.nz - 2)
  fraction.append(s - k0)
  lower.append((k0, k0 + 1))

  lead = data.shape[:data.ndim - grid.dim]
  result = np.zeros(lead + (points.shape[0],))
  for corner in itertools.product((0, 1), repeat=grid.dim):
    weight = np.ones(points.shape[0])
    index = []
    for axis, bit in enumerate(corner):
      weight = weight * (fraction[axis] if bit else 1.0 - fraction[axis])
      index.append(lower[axis][bit])
    result += weight * data[(Ellipsis,) + tuple(index)]
  return result


def resample_field(values, grid, target_grid):
  """Interpolates samples onto the nodes of another grid of equal periods."""
  if target_grid.horizontal_periods != grid.horizontal_periods:
    raise errors.InterpolationError(
        "Target periods " + str(target_grid.horizontal_periods) +
        " differ from " + str(grid.horizontal_periods))
  coords = np.stack([c.ravel() for c in target_grid.coordinates()], axis=1)
  flat = bilinear(values, grid, coords)
  lead = flat.shape[:-1]
  return tf.constant(flat.reshape(lead + target_grid.shape), tf.float64)
