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
"""Discrete projection onto reference fields with zero divergence.

A field c on the reference slab is replaced by c - grad phi, where phi solves
the discrete Poisson problem div grad phi = div c with the wall derivative of
phi set to zero, so that the wall normal components of c are kept. The discrete
operators are exactly those of ops.stencils: in the horizontal Fourier basis
the central difference has the symbol i sin(k h) / h and the vertical one is a
dense (nz, nz) matrix. Each horizontal mode is an independent least-squares
problem of nz + 2 rows (the Poisson rows plus two Neumann rows).

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

from absl import logging
import numpy as np
import tensorflow as tf

from slipfsi.ops import stencils

_DEFECT_WARNING = 1e-6


def vertical_derivative_matrix(grid):
  """The (nz, nz) matrix of stencils.reference_derivative along z."""
  nz, hz = grid.nz, grid.hz
  matrix = np.zeros((nz, nz))
  matrix[0, :3] = [-3.0, 4.0, -1.0]
  matrix[-1, -3:] = [1.0, -4.0, 3.0]
  for k in range(1, nz - 1):
    matrix[k, k - 1] = -1.0
    matrix[k, k + 1] = 1.0
  return matrix / (2.0 * hz)


def _horizontal_symbols(grid):
  axes = []
  for n, h in zip(grid.horizontal_counts, grid.horizontal_spacings):
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=h)
    axes.append(1j * np.sin(k * h) / h)
  return np.meshgrid(*axes, indexing="ij")


def _horizontal_axes(grid):
  return tuple(range(len(grid.plate_shape)))


def solve_potential(source, grid):
  """Least-squares potential of the discrete Neumann problem.

  Args:
    source: numpy array of grid.shape, the divergence to remove.
    grid: the grid.

  Returns:
    numpy array phi of grid.shape.
  """
  dz = vertical_derivative_matrix(grid)
  laplace_z = dz.dot(dz)
  axes = _horizontal_axes(grid)
  modes = np.fft.fftn(source, axes=axes)
  symbols = _horizontal_symbols(grid)
  s2 = sum(np.abs(s) ** 2 for s in symbols)
  nz = grid.nz
  neumann = np.zeros((2, nz))
  neumann[0] = dz[0]
  neumann[1] = dz[-1]
  phi_modes = np.zeros_like(modes)
  for index in np.ndindex(*grid.plate_shape):
    operator = np.vstack([laplace_z - s2[index] * np.eye(nz), neumann])
    rhs = np.concatenate([modes[index], np.zeros(2)])
    phi_modes[index], _, _, _ = np.linalg.lstsq(
        operator.astype(np.complex128), rhs, rcond=None)
  return np.real(np.fft.ifftn(phi_modes, axes=axes))


def reference_divergence(components, grid):
  return tf.add_n([stencils.reference_derivative(c, grid, axis)
                   for axis, c in enumerate(components)])


def project_solenoidal(components, grid):
  """Removes the discrete reference divergence of a vector field.

  Args:
    components: list of grid.dim tensors of grid.shape.
    grid: the grid.

  Returns:
    A pair (projected, defect): the projected components and the max-norm of
    their remaining discrete divergence.
  """
  source = reference_divergence(components, grid).numpy()
  phi = tf.constant(solve_potential(source, grid), tf.float64)
  projected = [c - stencils.reference_derivative(phi, grid, axis)
               for axis, c in enumerate(components)]
  defect = float(tf.reduce_max(tf.abs(reference_divergence(projected, grid))))
  if defect > _DEFECT_WARNING:
    logging.warning("Projection left a divergence defect of %g", defect)
  return projected, defect
