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
"""Analytically packaged closed surfaces in R^3.

A surface pack supplies the parameterization Phi (param), the closest-point
projection pi (project), the signed distance (negative inside), the outer unit
normal at surface points and the inverse parameterization (to_parameters).
reach is the half-width of the tubular neighborhood in which project and
signed_distance are smooth.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import abc

import numpy as np

from slipfsi import errors


def _points(x):
  x = np.asarray(x, dtype=np.float64)
  if x.shape[-1] != 3:
    raise ValueError("Surface points need 3 coordinates: " + str(x.shape))
  return x


class Surface(object):
  """A closed surface with an analytic tubular neighborhood."""

  __metaclass__ = abc.ABCMeta

  @abc.abstractproperty
  def reach(self):
    """Half-width of the neighborhood where the projection is smooth."""
    raise NotImplementedError()

  @abc.abstractmethod
  def param(self, u, v):
    """Maps parameters (u, v) to points (..., 3)."""
    raise NotImplementedError()

  @abc.abstractmethod
  def to_parameters(self, x):
    """Maps surface points (..., 3) to parameters (u, v)."""
    raise NotImplementedError()

  @abc.abstractmethod
  def signed_distance(self, x):
    raise NotImplementedError()

  @abc.abstractmethod
  def project(self, x):
    raise NotImplementedError()

  @abc.abstractmethod
  def normal(self, x):
    """Outer unit normal at the projection of x."""
    raise NotImplementedError()

  def check_neighborhood(self, x):
    """Raises errors.DomainError if some x is outside the neighborhood."""
    distance = np.abs(self.signed_distance(x))
    if np.any(distance >= self.reach):
      raise errors.DomainError(
          "Point outside the tubular neighborhood of " + str(self) +
          ": |d|=" + str(float(np.max(distance))))


class Sphere(Surface):
  """The sphere of a given radius centered at the origin."""

  def __init__(self, radius=1.0):
    if not radius > 0.0:
      raise ValueError("radius must be positive: " + str(radius))
    self._radius = float(radius)

  @property
  def radius(self):
    return self._radius

  @property
  def reach(self):
    return self._radius

  def param(self, u, v):
    u, v = np.broadcast_arrays(np.asarray(u, np.float64),
                               np.asarray(v, np.float64))
    return self._radius * np.stack(
        [np.sin(v) * np.cos(u), np.sin(v) * np.sin(u), np.cos(v)], axis=-1)

  def to_parameters(self, x):
    x = _points(x)
    radial = np.linalg.norm(x, axis=-1)
    u = np.arctan2(x[..., 1], x[..., 0])
    v = np.arccos(np.clip(x[..., 2] / radial, -1.0, 1.0))
    return u, v

  def signed_distance(self, x):
    return np.linalg.norm(_points(x), axis=-1) - self._radius

  def normal(self, x):
    x = _points(x)
    return x / np.linalg.norm(x, axis=-1)[..., np.newaxis]

  def project(self, x):
    return self._radius * self.normal(x)

  def __str__(self):
    return "Sphere(radius=" + str(self._radius) + ")"


class Torus(Surface):
  """The torus of revolution about the z axis."""

  def __init__(self, major=2.0, minor=0.5):
    if not 0.0 < minor < major:
      raise ValueError("Torus radii must satisfy 0 < minor < major: " +
                       str((major, minor)))
    self._major = float(major)
    self._minor = float(minor)

  @property
  def major(self):
    return self._major

  @property
  def minor(self):
    return self._minor

  @property
  def reach(self):
    return self._minor

  def param(self, u, v):
    u, v = np.broadcast_arrays(np.asarray(u, np.float64),
                               np.asarray(v, np.float64))
    ring = self._major + self._minor * np.cos(v)
    return np.stack([ring * np.cos(u), ring * np.sin(u),
                     self._minor * np.sin(v)], axis=-1)

  def _tube_offset(self, x):
    """x minus the nearest point of the core circle."""
    x = _points(x)
    rho = np.hypot(x[..., 0], x[..., 1])
    scale = self._major / rho
    core = np.stack([x[..., 0] * scale, x[..., 1] * scale,
                     np.zeros_like(rho)], axis=-1)
    return x - core

  def to_parameters(self, x):
    x = _points(x)
    u = np.arctan2(x[..., 1], x[..., 0])
    rho = np.hypot(x[..., 0], x[..., 1])
    v = np.arctan2(x[..., 2], rho - self._major)
    return u, v

  def signed_distance(self, x):
    return np.linalg.norm(self._tube_offset(x), axis=-1) - self._minor

  def normal(self, x):
    offset = self._tube_offset(x)
    return offset / np.linalg.norm(offset, axis=-1)[..., np.newaxis]

  def project(self, x):
    x = _points(x)
    offset = self._tube_offset(x)
    return x - offset + self._minor * self.normal(x)

  def __str__(self):
    return ("Torus(major=" + str(self._major) + ", minor=" +
            str(self._minor) + ")")


def surface_from_name(name, **kwargs):
  """Returns the shipped surface pack called name."""
  packs = {"sphere": Sphere, "torus": Torus}
  if name not in packs:
    raise ValueError("Unknown surface: " + name)
  return packs[name](**kwargs)
