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
"""Reference solutions of the incompressible Euler-plate limit.

A ReferenceSolution holds snapshots of (v_tilde, Pi_tilde, eta, eta_t) on the
reference grid of its own domain. Three providers build one:

  proxy-run:      a fine compressible run at small (eps0, nu0), with the
                  velocity projected onto the discretely divergence-free
                  fields of its domain;
  external-file:  snapshots loaded from a directory written by save;
  manufactured:   a steady shear flow under a plate at rest, which solves
                  the discrete limit system exactly.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections
import json
import os

from absl import logging
import numpy as np
import tensorflow as tf

from slipfsi import constitutive
from slipfsi import field
from slipfsi import grid as grid_lib
from slipfsi import plate
from slipfsi import scheme
from slipfsi.geometry import flow_map
from slipfsi.ops import interpolate
from slipfsi.ops import projection
from slipfsi.ops import quadrature
from slipfsi.ops import spectral
from slipfsi.ops import stencils

PROXY_RUN = "proxy-run"
EXTERNAL_FILE = "external-file"
MANUFACTURED = "manufactured"
PROVIDERS = (PROXY_RUN, EXTERNAL_FILE, MANUFACTURED)

_SIDECAR = "reference.json"
_ARRAYS = ("velocity", "pressure", "eta", "eta_t")
_TIME_SLACK = 1e-9


class ReferenceSnapshot(collections.namedtuple("ReferenceSnapshot", [
    "t", "velocity", "pressure", "eta", "eta_t", "eta_tt", "velocity_t"])):
  """The reference at one time.

  velocity is a VectorField, pressure a tensor of grid.shape, and the plate
  entries tensors of grid.plate_shape. eta_tt and velocity_t are difference
  quotients between the bracketing snapshots, zero for a single snapshot.
  velocity_t is taken at fixed reference coordinates, so it follows the nodes
  of the moving domain rather than fixed physical points.
  """
  __slots__ = ()


class LimitResiduals(collections.namedtuple("LimitResiduals", [
    "momentum", "plate", "divergence", "kinematic"])):
  """Max-norm residuals of the limit system for one snapshot.

  momentum: rho_bar (v_t + v . grad v) + grad Pi.
  plate: eta_tt + lap^2 eta - nu_s lap eta_t - Pi on the top wall.
  divergence: div v.
  kinematic: v . n^eta - eta_t on the top wall.
  """
  __slots__ = ()


def _grid_to_dict(grid):
  return {"nx": grid.nx, "nz": grid.nz, "ny": grid.ny, "period": grid.period,
          "period_y": grid.period_y}


def _grid_from_dict(values):
  return grid_lib.Grid(values["nx"], values["nz"], ny=values.get("ny"),
                       period=values["period"],
                       period_y=values.get("period_y"))


class ReferenceSolution(object):
  """Snapshots of a limit solution with linear interpolation in time."""

  def __init__(self, provider, grid, times, velocity, pressure, eta, eta_t,
               defect=0.0, metadata=None):
    """Creates a reference.

    Args:
      provider: one of PROVIDERS.
      grid: the grid.Grid of the samples.
      times: increasing sequence of nt times.
      velocity: array (nt, dim) + grid.shape.
      pressure: array (nt,) + grid.shape.
      eta: array (nt,) + grid.plate_shape.
      eta_t: array (nt,) + grid.plate_shape.
      defect: the largest discrete divergence left in the velocity.
      metadata: dict of JSON-serializable facts about the construction.

    Raises:
      ValueError: on an unknown provider, unordered times or bad shapes.
    """
    if provider not in PROVIDERS:
      raise ValueError("Unknown reference provider: " + str(provider))
    self._provider = provider
    self._grid = grid
    self._times = np.asarray(times, dtype=np.float64)
    if self._times.ndim != 1 or not self._times.size:
      raise ValueError("Reference needs a non-empty list of times")
    if np.any(np.diff(self._times) <= 0.0):
      raise ValueError("Reference times must increase: " + str(times))
    nt = self._times.size
    self._velocity = np.asarray(velocity, dtype=np.float64)
    self._pressure = np.asarray(pressure, dtype=np.float64)
    self._eta = np.asarray(eta, dtype=np.float64)
    self._eta_t = np.asarray(eta_t, dtype=np.float64)
    expected = {"velocity": (nt, grid.dim) + grid.shape,
                "pressure": (nt,) + grid.shape,
                "eta": (nt,) + grid.plate_shape,
                "eta_t": (nt,) + grid.plate_shape}
    for name in _ARRAYS:
      if getattr(self, "_" + name).shape != expected[name]:
        raise ValueError("Reference " + name + " has shape " +
                         str(getattr(self, "_" + name).shape) + ", expected " +
                         str(expected[name]))
    self._defect = float(defect)
    self._metadata = dict(metadata or {})

  @property
  def provider(self):
    return self._provider

  @property
  def grid(self):
    return self._grid

  @property
  def times(self):
    return self._times

  @property
  def defect(self):
    """Max-norm of the discrete divergence of the stored velocity."""
    return self._defect

  @property
  def metadata(self):
    return dict(self._metadata)

  def covers(self, t_start, t_end):
    """True if [t_start, t_end] lies inside the sampled interval."""
    times = self._times
    slack = _TIME_SLACK * max(times[-1] - times[0], 1.0)
    return times[0] - slack <= t_start and t_end <= times[-1] + slack

  def _bracket(self, t):
    times = self._times
    if not self.covers(t, t):
      raise ValueError("Time " + str(t) + " outside the reference interval [" +
                       str(times[0]) + ", " + str(times[-1]) + "]")
    if times.size == 1:
      return 0, 0, 0.0
    upper = int(np.clip(np.searchsorted(times, t), 1, times.size - 1))
    lower = upper - 1
    theta = (t - times[lower]) / (times[upper] - times[lower])
    return lower, upper, float(np.clip(theta, 0.0, 1.0))

  def at(self, t):
    """The reference at time t, linear in time between snapshots.

    Raises:
      ValueError: if t lies outside the sampled interval.
    """
    lower, upper, theta = self._bracket(t)

    def blend(values):
      return tf.constant((1.0 - theta) * values[lower] +
                         theta * values[upper], tf.float64)

    def rate(values):
      if upper == lower:
        return tf.zeros(values.shape[1:], tf.float64)
      return tf.constant((values[upper] - values[lower]) /
                         (self._times[upper] - self._times[lower]), tf.float64)

    return ReferenceSnapshot(
        t=float(t), velocity=field.VectorField(self._grid,
                                               blend(self._velocity)),
        pressure=blend(self._pressure), eta=blend(self._eta),
        eta_t=blend(self._eta_t), eta_tt=rate(self._eta_t),
        velocity_t=field.VectorField(self._grid, rate(self._velocity)))

  def resampled(self, grid):
    """The same reference on another grid of equal periods.

    Fields are interpolated bilinearly and plate samples spectrally.
    """
    if grid.same_as(self._grid):
      return self
    velocity = np.stack([interpolate.resample_field(v, self._grid, grid).numpy()
                         for v in self._velocity])
    pressure = np.stack([interpolate.resample_field(p, self._grid, grid).numpy()
                         for p in self._pressure])
    eta = np.stack([spectral.resample_plate(e, self._grid, grid).numpy()
                    for e in self._eta])
    eta_t = np.stack([spectral.resample_plate(e, self._grid, grid).numpy()
                      for e in self._eta_t])
    metadata = dict(self._metadata, resampled_from=_grid_to_dict(self._grid))
    return ReferenceSolution(self._provider, grid, self._times, velocity,
                             pressure, eta, eta_t, self._defect, metadata)

  def save(self, directory):
    """Writes raw row-major float64 arrays and a JSON sidecar."""
    if not os.path.isdir(directory):
      os.makedirs(directory)
    arrays = {}
    for name in _ARRAYS:
      values = getattr(self, "_" + name)
      filename = name + ".bin"
      values.astype("<f8").tofile(os.path.join(directory, filename))
      arrays[name] = {"file": filename, "shape": list(values.shape),
                      "dtype": "float64", "order": "C"}
    sidecar = {"provider": self._provider, "grid": _grid_to_dict(self._grid),
               "times": self._times.tolist(), "defect": self._defect,
               "metadata": self._metadata, "arrays": arrays}
    with open(os.path.join(directory, _SIDECAR), "w") as f:
      json.dump(sidecar, f, indent=2, sort_keys=True)

  @classmethod
  def load(cls, directory):
    """Reads a reference written by save; its provider is external-file."""
    with open(os.path.join(directory, _SIDECAR)) as f:
      sidecar = json.load(f)
    arrays = {}
    for name in _ARRAYS:
      entry = sidecar["arrays"][name]
      values = np.fromfile(os.path.join(directory, entry["file"]),
                           dtype="<f8")
      arrays[name] = values.reshape(entry["shape"])
    metadata = dict(sidecar.get("metadata", {}),
                    source_provider=sidecar["provider"])
    return cls(EXTERNAL_FILE, _grid_from_dict(sidecar["grid"]),
               sidecar["times"], arrays["velocity"], arrays["pressure"],
               arrays["eta"], arrays["eta_t"], sidecar.get("defect", 0.0),
               metadata)

  def __str__(self):
    return ("ReferenceSolution(" + self._provider + ", " + str(self._grid) +
            ", " + str(self._times.size) + " snapshots)")


def solenoidal_velocity(components, domain_map):
  """Projects a velocity onto the divergence-free fields of its domain.

  The projection acts on the contravariant fluxes J A v, whose reference
  divergence is J div_x v.

  Returns:
    A pair (components, defect).
  """
  fluxes = stencils.contravariant(components, domain_map)
  projected, defect = projection.project_solenoidal(fluxes, domain_map.grid)
  return domain_map.from_contravariant(projected), defect


def reference_proxy(config, eps0, nu0, grid=None):
  """Builds a reference from a compressible run at small (eps0, nu0).

  Args:
    config: the scheme.RunConfig of the sweep runs.
    eps0: the proxy Mach number.
    nu0: the proxy viscosity.
    grid: the proxy grid; config.grid.refined() when None.

  Returns:
    A ReferenceSolution with provider proxy-run.

  Raises:
    errors.SimulationError: if the proxy run fails.
  """
  grid = grid or config.grid.refined()
  params = config.params.replace(eps=eps0, nu=nu0)
  if (isinstance(config.initial, field.State) and
      not config.initial.grid.same_as(grid)):
    raise ValueError("A proxy reference on " + str(grid) + " needs initial "
                     "data that can be built on it, got a State on " +
                     str(config.initial.grid))
  proxy_config = config.replace(params=params, grid=grid)
  logging.info("Building proxy reference at eps0=%g nu0=%g on %s", eps0, nu0,
               grid)
  trajectory = scheme.run(proxy_config)
  times, velocity, pressure, eta, eta_t = [], [], [], [], []
  defect = 0.0
  for t, state in trajectory.snapshots:
    domain_map = flow_map.DomainMap(grid, state.w, state.w_t,
                                    proxy_config.options.contact_floor)
    components, step_defect = solenoidal_velocity(state.u_hat.components(),
                                                  domain_map)
    defect = max(defect, step_defect)
    times.append(t)
    velocity.append(np.stack([c.numpy() for c in components]))
    pressure.append((constitutive.pressure_fluctuation(
        state.rho_hat.values, params) / eps0 ** 2).numpy())
    eta.append(state.w.numpy())
    eta_t.append(state.w_t.numpy())
  logging.info("Proxy reference: %d snapshots, projection defect %g",
               len(times), defect)
  return ReferenceSolution(
      PROXY_RUN, grid, times, velocity, pressure, eta, eta_t, defect,
      {"eps0": eps0, "nu0": nu0, "coupling": config.coupling,
       "t_final": config.t_final})


def manufactured_reference(grid, params, amplitude=0.05, k=1.0,
                           t_final=1.0):
  """A steady shear flow under a plate at rest.

  The velocity is (amplitude cos(k pi z), 0, ...): it depends on z only, so
  it is discretely divergence-free, tangential to both walls and free of
  self-advection. The pressure is then constant (zero) and the plate sits at
  the static deflection under the wall pressure, which is flat. The triple
  solves the discrete limit system exactly in any dimension.
  """
  z = grid.zeta().numpy()
  profile = amplitude * np.cos(k * np.pi * z)
  horizontal = np.broadcast_to(profile, grid.shape)
  velocity = np.stack([horizontal] +
                      [np.zeros(grid.shape)] * (grid.dim - 1))
  pressure = np.zeros(grid.shape)
  eta = plate.solve_static_deflection(
      quadrature.top_trace(tf.constant(pressure, tf.float64)), grid).numpy()
  eta_t = np.zeros(grid.plate_shape)
  defect = float(tf.reduce_max(tf.abs(projection.reference_divergence(
      [tf.constant(c, tf.float64) for c in velocity], grid))))
  return ReferenceSolution(
      MANUFACTURED, grid, [0.0, t_final], [velocity, velocity],
      [pressure, pressure], [eta, eta], [eta_t, eta_t], defect,
      {"amplitude": amplitude, "k": k})


def limit_residuals(ref, params, t,
                    contact_floor=flow_map.DEFAULT_CONTACT_FLOOR):
  """Residuals of the incompressible Euler-plate system at time t.

  Time derivatives are the difference quotients of the snapshots; the
  node-following velocity rate is turned into the Eulerian one with the mesh
  velocity of the domain of eta.

  Returns:
    A LimitResiduals of max-norms.

  Raises:
    ValueError: if t lies outside the sampled interval.
  """
  snapshot = ref.at(t)
  grid = ref.grid
  domain_map = flow_map.DomainMap(grid, snapshot.eta, snapshot.eta_t,
                                  contact_floor)
  velocity = snapshot.velocity.components()
  gradients = constitutive.velocity_gradient(velocity, domain_map)
  mesh = domain_map.mesh_velocity()
  pressure_gradient = stencils.physical_gradient(snapshot.pressure, domain_map)
  momentum = []
  for rate, grad_v, grad_p in zip(snapshot.velocity_t.components(), gradients,
                                  pressure_gradient):
    eulerian = rate - tf.add_n([m * g for m, g in zip(mesh, grad_v)])
    advection = tf.add_n([v * g for v, g in zip(velocity, grad_v)])
    momentum.append(params.rho_bar * (eulerian + advection) + grad_p)
  plate_residual = (snapshot.eta_tt +
                    spectral.plate_bilaplacian(snapshot.eta, grid) -
                    params.nu_s * spectral.plate_laplacian(snapshot.eta_t, grid)
                    - quadrature.top_trace(snapshot.pressure))
  kinematic = tf.add_n([quadrature.top_trace(v) * n for v, n in
                        zip(velocity, domain_map.normal())]) - snapshot.eta_t

  def sup(values):
    return float(tf.reduce_max(tf.abs(values)))

  return LimitResiduals(
      momentum=max(sup(m) for m in momentum), plate=sup(plate_residual),
      divergence=sup(stencils.physical_divergence(velocity, domain_map)),
      kinematic=sup(kinematic))
