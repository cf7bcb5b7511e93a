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
"""Finite-difference stencils on the reference grid.

Horizontal derivatives are second-order central differences with periodic
wrap. Vertical derivatives are central inside and second-order one-sided at
the walls z = 0 and z = 1. The tensors handed in may carry leading batch axes;
the spatial axes are always the trailing grid.dim axes.

The physical_* functions apply the chain rule through a flat flow map
(anything exposing grid, jacobian, slopes, grad_w and zeta, see
geometry.flow_map.DomainMap).

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import tensorflow as tf

from slipfsi import field


def _tensor_axis(values, grid, axis):
  if not 0 <= axis < grid.dim:
    raise ValueError("Axis out of range: " + str(axis))
  return len(values.shape) - grid.dim + axis


def _vertical_derivative(f, hz):
  bottom = (-3.0 * f[..., 0:1] + 4.0 * f[..., 1:2] - f[..., 2:3]) / (2.0 * hz)
  interior = (f[..., 2:] - f[..., :-2]) / (2.0 * hz)
  top = (3.0 * f[..., -1:] - 4.0 * f[..., -2:-1] + f[..., -3:-2]) / (2.0 * hz)
  return tf.concat([bottom, interior, top], axis=-1)


def reference_derivative(values, grid, axis):
  """Derivative of samples along one reference axis.

  Args:
    values: float64 tensor whose trailing axes are grid.shape.
    grid: the grid.
    axis: 0..dim-2 for horizontal axes, dim-1 for the vertical one.

  Returns:
    A tensor of the same shape.
  """
  if axis == grid.dim - 1:
    _tensor_axis(values, grid, axis)
    return _vertical_derivative(values, grid.hz)
  tensor_axis = _tensor_axis(values, grid, axis)
  h = grid.horizontal_spacings[axis]
  return (tf.roll(values, shift=-1, axis=tensor_axis) -
          tf.roll(values, shift=1, axis=tensor_axis)) / (2.0 * h)


def grad(f):
  """Reference gradient of a ScalarField, as a VectorField."""
  g = f.grid
  return field.VectorField(
      g, [reference_derivative(f.values, g, axis) for axis in range(g.dim)])


def div(v):
  """Reference divergence of a VectorField, as a ScalarField."""
  g = v.grid
  components = v.components()
  return field.ScalarField(
      g, tf.add_n([reference_derivative(components[axis], g, axis)
                   for axis in range(g.dim)]))


def physical_gradient(values, domain_map):
  """Returns grad_x f = A^T grad_ref f_hat as a list of dim tensors."""
  g = domain_map.grid
  dz = reference_derivative(values, g, g.dim - 1)
  result = []
  for axis, slope in enumerate(domain_map.slopes):
    result.append(reference_derivative(values, g, axis) - slope * dz)
  result.append(dz / domain_map.jacobian)
  return result


def contravariant(components, domain_map):
  """Returns J A v for a physical vector v given by its components."""
  zeta = domain_map.zeta
  result = [domain_map.jacobian * c for c in components[:-1]]
  vertical = components[-1]
  for grad_w, c in zip(domain_map.grad_w, components[:-1]):
    vertical = vertical - zeta * grad_w * c
  result.append(vertical)
  return result


def physical_divergence(components, domain_map):
  """Returns div_x v = (1/J) div_ref(J A v) for a list of dim tensors."""
  g = domain_map.grid
  fluxes = contravariant(components, domain_map)
  total = tf.add_n([reference_derivative(flux, g, axis)
                    for axis, flux in enumerate(fluxes)])
  return total / domain_map.jacobian


def stream_fluxes(psi, grid):
  """Reference fluxes (-d_z psi, d_x psi) of a stream function (dim = 2).

  The two central stencils commute, so the reference divergence of the result
  vanishes to round-off.
  """
  if grid.dim != 2:
    raise ValueError("Stream functions need dim = 2, got " + str(grid.dim))
  return [-reference_derivative(psi, grid, 1),
          reference_derivative(psi, grid, 0)]


def vertical_flux_divergence(node_flux, bottom_flux, top_flux, grid):
  """Finite-volume z-divergence on dual cells with prescribed wall fluxes.

  Interior faces take the mean of the two adjacent node fluxes, so the result
  equals the central difference inside. Wall nodes own half cells whose outer
  face carries the given wall flux.

  Args:
    node_flux: tensor whose trailing axes are grid.shape.
    bottom_flux: flux through z = 0, shape node_flux.shape[:-1].
    top_flux: flux through z = 1, shape node_flux.shape[:-1].
    grid: the grid.

  Returns:
    A tensor shaped like node_flux.
  """
  faces = tf.concat([
      bottom_flux[..., tf.newaxis],
      0.5 * (node_flux[..., :-1] + node_flux[..., 1:]),
      top_flux[..., tf.newaxis]], axis=-1)
  volumes = tf.constant(grid.vertical_volumes(), tf.float64)
  return (faces[..., 1:] - faces[..., :-1]) / volumes


def upwind_flux_divergence(q, velocities, grid, top_flux=None):
  """Conservative first-order upwind divergence of q * velocities.

  The face velocity is the mean of the two adjacent nodes; the transported
  value is taken from the upwind node. The bottom wall is impermeable. The
  top wall carries top_flux, or nothing when top_flux is None, so that the
  weighted sum of the result telescopes to the wall flux exactly.

  Args:
    q: transported scalar, tensor of grid.shape.
    velocities: list of grid.dim tensors, contravariant face-normal speeds.
    grid: the grid.
    top_flux: optional flux through z = 1, tensor of grid.plate_shape.

  Returns:
    A tensor of grid.shape.
  """
  total = None
  for axis, h in enumerate(grid.horizontal_spacings):
    speed = velocities[axis]
    face = 0.5 * (speed + tf.roll(speed, shift=-1, axis=axis))
    flux = (tf.maximum(face, 0.0) * q +
            tf.minimum(face, 0.0) * tf.roll(q, shift=-1, axis=axis))
    term = (flux - tf.roll(flux, shift=1, axis=axis)) / h
    total = term if total is None else total + term
  speed = velocities[-1]
  face = 0.5 * (speed[..., :-1] + speed[..., 1:])
  interior = (tf.maximum(face, 0.0) * q[..., :-1] +
              tf.minimum(face, 0.0) * q[..., 1:])
  zeros = tf.zeros_like(q[..., 0])
  top = zeros if top_flux is None else top_flux
  faces = tf.concat([zeros[..., tf.newaxis], interior,
                     top[..., tf.newaxis]], axis=-1)
  volumes = tf.constant(grid.vertical_volumes(), tf.float64)
  return total + (faces[..., 1:] - faces[..., :-1]) / volumes
