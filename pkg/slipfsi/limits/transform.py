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
"""Moves a reference solution onto the domain of a compressible state.

With Psi = Phi_eta o Phi_w^-1 from the state's domain to the reference's,

  U = J A v_tilde o Psi,   Pi = Pi_tilde o Psi,   W = eta,

and U . n^w = (v_tilde . n^eta) o Psi = eta_t on the top wall, so the triple
is admissible whenever the reference is. The transformed momentum equation
picks up five forcing groups that vanish when w = eta; their L^2 norms are
reported for diagnostics.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections
import math

import tensorflow as tf

from slipfsi import field
from slipfsi.diagnostics import relative_energy
from slipfsi.geometry import composed_map as composed_map_lib
from slipfsi.geometry import flow_map
from slipfsi.geometry import piola
from slipfsi.ops import quadrature
from slipfsi.ops import spectral
from slipfsi.ops import stencils

FORCING_GROUPS = ("psi_advective", "cofactor_rate", "cofactor_transport",
                  "jacobian_nonlinear", "pressure_distortion")


class Forcing(collections.namedtuple("Forcing", FORCING_GROUPS + ("total",))):
  """L^2 norms over the state's domain of the forcing groups and their sum.

  psi_advective: rho_bar J A (grad v_tilde o Psi) d_t Psi.
  cofactor_rate: rho_bar d_t(J A) v_tilde o Psi.
  cofactor_transport: rho_bar (U . grad)(J A) v_tilde o Psi.
  jacobian_nonlinear: rho_bar (J - 1) J A (v_tilde . grad v_tilde) o Psi.
  pressure_distortion: (grad Psi^T - J A) grad Pi_tilde o Psi.
  total: the norm of the summed field, which is the momentum forcing
    rho_bar (U_t + U . grad U) + grad Pi of the transformed triple.
  """
  __slots__ = ()

  def groups(self):
    return [getattr(self, name) for name in FORCING_GROUPS]


class Transformed(collections.namedtuple("Transformed", [
    "triple", "forcing", "forcing_field", "composed", "snapshot"])):
  """What transform_reference returns; forcing_field is a VectorField."""
  __slots__ = ()


def _full(values, grid):
  return tf.broadcast_to(values, grid.shape)


def _apply(rows, components):
  return [tf.add_n([entry * c for entry, c in zip(row, components)])
          for row in rows]


def _norm(components, grid, weight):
  square = tf.add_n([c * c for c in components])
  return math.sqrt(max(quadrature.integrate_values(square, grid, weight), 0.0))


def _target_gradients(v_tilde, composed):
  """grad v_tilde o Psi as nested lists [i][a] = d_a v_tilde_i."""
  return [stencils.physical_gradient(c, composed.target_map) for c in v_tilde]


def _contract(gradients, vector):
  """[sum_a gradients[i][a] vector[a]] for each row i."""
  return [tf.add_n([g * v for g, v in zip(row, vector)]) for row in gradients]


def forcing_terms(composed, U, v_tilde, pressure, rho_bar):
  """The five forcing groups as fields on the source domain of composed.

  Args:
    composed: the ComposedMap from the state's domain to the reference's.
    U: list of components of the transformed velocity.
    v_tilde: list of components of the reference velocity at the images.
    pressure: the reference pressure at the images.
    rho_bar: the background density.

  Returns:
    A list with one list of components per entry of FORCING_GROUPS.
  """
  grid = composed.grid
  d = grid.dim
  cofactor = [[_full(e, grid) for e in row] for row in composed.cofactor()]
  gradients = _target_gradients(v_tilde, composed)
  groups = []

  along_psi = _contract(gradients, composed.time_derivative())
  groups.append([rho_bar * c for c in _apply(cofactor, along_psi)])

  rate = [[_full(e, grid) for e in row] for row in composed.d_cofactor_dt()]
  groups.append([rho_bar * c for c in _apply(rate, v_tilde)])

  cofactor_gradient = composed.cofactor_gradient()
  transport = []
  for i in range(d):
    total = tf.zeros(grid.shape, tf.float64)
    for k in range(d):
      derivative = tf.add_n([U[a] * _full(cofactor_gradient[i][k][a], grid)
                             for a in range(d)])
      total += derivative * v_tilde[k]
    transport.append(rho_bar * total)
  groups.append(transport)

  stretch = _full(composed.jacobian(), grid) - 1.0
  advection = _apply(cofactor, _contract(gradients, v_tilde))
  groups.append([rho_bar * stretch * c for c in advection])

  pressure_gradient = stencils.physical_gradient(pressure, composed.target_map)
  gradient_matrix = composed.gradient_matrix()
  distortion = [[_full(gradient_matrix[j][i] - cofactor[i][j], grid)
                 for j in range(d)] for i in range(d)]
  groups.append(_apply(distortion, pressure_gradient))
  return groups


def _summarize(terms, composed):
  grid = composed.grid
  weight = composed.source_map.jacobian
  summed = [tf.add_n(list(parts)) for parts in zip(*terms)]
  norms = [_norm(g, grid, weight) for g in terms]
  return Forcing(*(norms + [_norm(summed, grid, weight)])), summed


def forcing_groups(composed, U, v_tilde, pressure, rho_bar=1.0):
  """Evaluates the forcing groups and returns their Forcing of norms."""
  return _summarize(forcing_terms(composed, U, v_tilde, pressure, rho_bar),
                    composed)[0]


def transformed_velocity_rate(composed, snapshot):
  """d_t (J A v_tilde o Psi) at fixed physical points of the source domain.

  The reference rate is taken from the snapshots at fixed reference nodes
  and made Eulerian with the mesh velocity of the domain of eta.
  """
  grid = composed.grid
  v_tilde = snapshot.velocity.components()
  gradients = _target_gradients(v_tilde, composed)
  mesh = composed.target_map.mesh_velocity()
  eulerian = [rate - m for rate, m in zip(snapshot.velocity_t.components(),
                                          _contract(gradients, mesh))]
  along_psi = _contract(gradients, composed.time_derivative())
  inner = [a + b for a, b in zip(eulerian, along_psi)]
  rate = [[_full(e, grid) for e in row] for row in composed.d_cofactor_dt()]
  cofactor = [[_full(e, grid) for e in row] for row in composed.cofactor()]
  return [a + b for a, b in zip(_apply(rate, v_tilde),
                                _apply(cofactor, inner))]


def transform_reference(ref, state, params,
                        contact_floor=flow_map.DEFAULT_CONTACT_FLOOR):
  """Builds the comparison triple of a reference at the state's time.

  Args:
    ref: a reference.ReferenceSolution. It is resampled onto state.grid if
      needed; resample once beforehand when calling along a run.
    state: the field.State.
    params: the params.Params.
    contact_floor: lower bound for 1 + w and 1 + eta.

  Returns:
    A Transformed: the TestTriple (r = rho_bar, U, eta, eta_t, W_tt, U_t),
    the Forcing with the summed forcing field, the ComposedMap and the
    ReferenceSnapshot used.

  Raises:
    errors.DegeneracyError: if either map degenerates.
    ValueError: if state.t lies outside the reference interval.
  """
  grid = state.grid
  snapshot = ref.resampled(grid).at(state.t)
  composed = composed_map_lib.compose_psi(grid, state.w, snapshot.eta,
                                          state.w_t, snapshot.eta_t,
                                          contact_floor)
  U = piola.piola_transform(snapshot.velocity, composed).components()
  v_tilde = snapshot.velocity.components()
  U_t = transformed_velocity_rate(composed, snapshot)

  triple = relative_energy.make_triple(
      field.constant_scalar(grid, params.rho_bar), field.VectorField(grid, U),
      snapshot.eta, snapshot.eta_t, W_tt=snapshot.eta_tt,
      U_t=field.VectorField(grid, U_t))
  forcing, summed = _summarize(
      forcing_terms(composed, U, v_tilde, snapshot.pressure, params.rho_bar),
      composed)
  return Transformed(triple=triple, forcing=forcing,
                     forcing_field=field.VectorField(grid, summed),
                     composed=composed, snapshot=snapshot)


def momentum_residual(transformed, params):
  """rho_bar (U_t + U . grad U) + grad Pi on the state's domain.

  Equals the summed forcing up to truncation when the reference solves the
  limit system.
  """
  source = transformed.composed.source_map
  triple = transformed.triple
  U = triple.U.components()
  gradients = [stencils.physical_gradient(c, source) for c in U]
  pressure_gradient = stencils.physical_gradient(
      transformed.snapshot.pressure, source)
  return [params.rho_bar * (rate + advection) + grad_p
          for rate, advection, grad_p in zip(triple.U_t.components(),
                                             _contract(gradients, U),
                                             pressure_gradient)]


def forcing_mismatch(transformed, params):
  """L^2 norm of momentum_residual minus the summed forcing field."""
  source = transformed.composed.source_map
  residual = momentum_residual(transformed, params)
  difference = [r - f for r, f in zip(
      residual, transformed.forcing_field.components())]
  return _norm(difference, source.grid, source.jacobian)


class ForcingBound(collections.namedtuple("ForcingBound", [
    "lhs", "rhs", "constant"])):
  """Both sides of ||F||_2 <= C (||grad(w_t - eta_t)|| + ||w_t - eta_t|| +
  ||lap(w - eta)||); constant is lhs / rhs (0 when both vanish)."""
  __slots__ = ()


def forcing_bound_check(transformed, state):
  """Evaluates the forcing bound for one transformed reference."""
  grid = state.grid
  snapshot = transformed.snapshot
  rate = state.w_t - snapshot.eta_t
  lap = spectral.plate_laplacian(state.w - snapshot.eta, grid)
  rhs = (math.sqrt(sum(quadrature.integrate_plate(g * g, grid)
                       for g in spectral.plate_gradient(rate, grid))) +
         math.sqrt(quadrature.integrate_plate(rate * rate, grid)) +
         math.sqrt(quadrature.integrate_plate(lap * lap, grid)))
  lhs = transformed.forcing.total
  if rhs > 0.0:
    constant = lhs / rhs
  else:
    constant = 0.0 if lhs == 0.0 else float("inf")
  return ForcingBound(lhs=lhs, rhs=rhs, constant=constant)
