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
"""Spectral representation of plate samples on the horizontal torus.

Modes are the unnormalized discrete Fourier coefficients (tf.signal.fft in one
horizontal dimension, fft2d in two). Odd derivatives drop the Nyquist mode so
that real samples stay real.

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import numpy as np
import tensorflow as tf


def _forward(values, ndim):
  complex_values = tf.cast(values, tf.complex128)
  if ndim == 1:
    return tf.signal.fft(complex_values)
  return tf.signal.fft2d(complex_values)


def _backward(modes, ndim):
  if ndim == 1:
    return tf.signal.ifft(modes)
  return tf.signal.ifft2d(modes)


def wavenumbers(grid):
  """Returns one wavenumber array of plate shape per horizontal axis."""
  axes = []
  for n, period in zip(grid.horizontal_counts, grid.horizontal_periods):
    axes.append(2.0 * np.pi / period * np.fft.fftfreq(n, d=1.0 / n))
  return np.meshgrid(*axes, indexing="ij")


def wavenumber_squared(grid):
  """|k|^2 per mode, shape grid.plate_shape."""
  return sum(k * k for k in wavenumbers(grid))


def _nyquist_mask(grid):
  """1 except on modes that are a Nyquist mode along some axis."""
  mask = np.ones(grid.plate_shape)
  for axis, n in enumerate(grid.horizontal_counts):
    if n % 2 == 0:
      index = [slice(None)] * len(grid.plate_shape)
      index[axis] = n // 2
      mask[tuple(index)] = 0.0
  return mask


def plate_fourier(w, grid):
  """Returns the complex128 modes of plate samples."""
  return _forward(w, len(grid.plate_shape))


def plate_inverse_fourier(modes, grid):
  """Returns real plate samples from modes."""
  return tf.math.real(_backward(modes, len(grid.plate_shape)))


def apply_symbol(w, grid, symbol):
  """Multiplies the modes of w by a numpy symbol of plate shape."""
  modes = plate_fourier(w, grid) * tf.constant(symbol, tf.complex128)
  return plate_inverse_fourier(modes, grid)


def plate_derivative(w, grid, axis, order=1):
  """order-th derivative of plate samples along a horizontal axis."""
  k = wavenumbers(grid)[axis]
  symbol = (1j * k) ** order
  if order % 2 == 1:
    symbol = symbol * _nyquist_mask(grid)
  return apply_symbol(w, grid, symbol)


def plate_gradient(w, grid):
  return [plate_derivative(w, grid, axis)
          for axis in range(len(grid.plate_shape))]


def plate_laplacian(w, grid):
  return apply_symbol(w, grid, -wavenumber_squared(grid))


def plate_bilaplacian(w, grid):
  k2 = wavenumber_squared(grid)
  return apply_symbol(w, grid, k2 * k2)


def plate_mean(w):
  return float(tf.reduce_mean(w))


def evaluate_plate(w, grid, points):
  """Trigonometric interpolation of plate samples at arbitrary points.

  Args:
    w: plate samples.
    grid: the grid.
    points: array of shape (npoints, dim - 1) of horizontal coordinates.

  Returns:
    numpy array of shape (npoints,).
  """
  points = np.asarray(points, dtype=np.float64).reshape(
      -1, len(grid.plate_shape))
  modes = plate_fourier(w, grid).numpy() / float(np.prod(grid.plate_shape))
  ks = [k.ravel() for k in wavenumbers(grid)]
  # Nyquist modes use the cosine only, matching the real part of the series.
  phase = sum(np.outer(points[:, a], ks[a]) for a in range(len(ks)))
  return np.real(np.exp(1j * phase).dot(modes.ravel()))


def resample_plate(w, grid, target_grid):
  """Resamples plate samples onto the nodes of another grid."""
  if target_grid.horizontal_periods != grid.horizontal_periods:
    raise ValueError("Cannot resample between periods " +
                     str(grid.horizontal_periods) + " and " +
                     str(target_grid.horizontal_periods))
  coords = np.stack([c.ravel() for c in target_grid.horizontal_coordinates()],
                    axis=1)
  values = evaluate_plate(w, grid, coords)
  return tf.constant(values.reshape(target_grid.plate_shape), tf.float64)
