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
"""Physical and approximation constants of the rescaled system.

The constants are those of the scaled fluid-plate system:

  d_t rho + div(rho u) = 0
  d_t(rho u) + div(rho u x u) + eps^-2 grad(p(rho) - p(rho_bar))
      = nu div S(grad u)
  d_tt w + lap^2 w - nu_s lap d_t w = F

with S(grad u) = mu (grad u + grad u^T) + lam div u I, p(rho) = rho^gamma, and
the artificial pressure p_delta(rho) = rho^gamma + delta rho^beta.

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections

_FIELDS = ("gamma", "mu", "lam", "nu", "eps", "nu_s", "alpha", "alpha0",
           "delta", "beta", "kappa", "rho_bar", "dim")

_DEFAULTS = dict(gamma=2.0, mu=1.0, lam=0.0, nu=0.1, eps=0.1, nu_s=0.1,
                 alpha=1.0, alpha0=1.0, delta=0.0, beta=4.0, kappa=1e-3,
                 rho_bar=1.0, dim=2)


class Params(collections.namedtuple("Params", _FIELDS)):
  """All constants of one run.

  kappa is the weight of the kinematic penalty; None stands for strong
  coupling, where the penalty is never evaluated.
  """
  __slots__ = ()

  def __new__(cls, **kwargs):
    unknown = set(kwargs) - set(_FIELDS)
    if unknown:
      raise ValueError("Unknown parameters: " + ", ".join(sorted(unknown)))
    values = dict(_DEFAULTS)
    values.update(kwargs)
    for name in _FIELDS:
      if name == "dim":
        values[name] = int(values[name])
      elif values[name] is not None:
        values[name] = float(values[name])
    result = super(Params, cls).__new__(cls, **values)
    _validate(result)
    return result

  def replace(self, **kwargs):
    """Returns a validated copy with some constants replaced."""
    values = self._asdict()
    values.update(kwargs)
    return Params(**values)

  def __reduce__(self):
    return (_from_dict, (dict(self._asdict()),))

  @property
  def pressure_scale(self):
    """The 1/eps^2 factor in front of the pressure fluctuation."""
    return 1.0 / (self.eps * self.eps)


def _from_dict(values):
  return Params(**values)


def _validate(params):
  """Raises ValueError if a constant is outside its range."""
  if not params.gamma > 1.0:
    raise ValueError("gamma must exceed 1: " + str(params.gamma))
  if not params.mu > 0.0:
    raise ValueError("mu must be positive: " + str(params.mu))
  if params.lam + 2.0 * params.mu / 3.0 < 0.0:
    raise ValueError("lam + 2 mu / 3 must be non-negative: " +
                     str(params.lam + 2.0 * params.mu / 3.0))
  if params.nu < 0.0:
    raise ValueError("nu must be non-negative: " + str(params.nu))
  if not params.eps > 0.0:
    raise ValueError("eps must be positive: " + str(params.eps))
  for name in ("nu_s", "alpha", "alpha0", "delta"):
    if getattr(params, name) < 0.0:
      raise ValueError(name + " must be non-negative: " +
                       str(getattr(params, name)))
  if params.delta > 0.0 and params.beta < 4.0:
    raise ValueError("beta must be at least 4 when delta > 0: " +
                     str(params.beta))
  if params.kappa is not None and not params.kappa > 0.0:
    raise ValueError("kappa must be positive: " + str(params.kappa))
  if not params.rho_bar > 0.0:
    raise ValueError("rho_bar must be positive: " + str(params.rho_bar))
  if params.dim not in (2, 3):
    raise ValueError("dim must be 2 or 3: " + str(params.dim))
