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
"""From dimensional characteristic values to the scaled system.

  Ma = U_f / sqrt(p_f / rho_f) = eps,   Re = rho_f U_f L / nu_f = 1 / nu.

The plate equation carries the three structural ratios

  rho_s U_s^2 / (rho_f U_f^2),  W^4 E / (L^4 rho_f U_f^2),
  W N_s / (L^2 T_s rho_f U_f^2),   U_s = W / T_s,

which the scaled system assumes to equal one.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections
import math

from absl import logging

_RATIO_TOLERANCE = 0.1


class CharacteristicValues(collections.namedtuple("CharacteristicValues", [
    "U_f", "p_f", "rho_f", "L", "nu_f", "rho_s", "h", "E", "W", "T_s",
    "N_s"])):
  """Characteristic fluid and plate values, all positive."""
  __slots__ = ()

  def __new__(cls, U_f, p_f, rho_f, L, nu_f, rho_s=1.0, h=1.0, E=1.0, W=1.0,  # pylint: disable=invalid-name
              T_s=1.0, N_s=1.0):
    values = super(CharacteristicValues, cls).__new__(
        cls, U_f, p_f, rho_f, L, nu_f, rho_s, h, E, W, T_s, N_s)
    for name, value in zip(values._fields, values):
      if not value > 0.0:
        raise ValueError("Characteristic value " + name +
                         " must be positive: " + str(value))
    return values

  @property
  def U_s(self):  # pylint: disable=invalid-name
    return self.W / self.T_s


class Nondimensional(collections.namedtuple("Nondimensional", [
    "eps", "nu", "mach", "reynolds", "structural_ratios"])):
  """The scaled parameters: eps = Ma, nu = 1 / Re, and the plate ratios."""
  __slots__ = ()


def structural_ratios(cv):
  dynamic = cv.rho_f * cv.U_f ** 2
  return (cv.rho_s * cv.U_s ** 2 / dynamic,
          cv.W ** 4 * cv.E / (cv.L ** 4 * dynamic),
          cv.W * cv.N_s / (cv.L ** 2 * cv.T_s * dynamic))


def nondimensionalize(cv):
  """Computes the Mach and Reynolds scaling of a CharacteristicValues.

  Warns when a structural ratio differs from one by more than 10%.

  Returns:
    A Nondimensional.
  """
  mach = cv.U_f / math.sqrt(cv.p_f / cv.rho_f)
  reynolds = cv.rho_f * cv.U_f * cv.L / cv.nu_f
  ratios = structural_ratios(cv)
  for name, ratio in zip(("inertia", "stiffness", "damping"), ratios):
    if abs(ratio - 1.0) > _RATIO_TOLERANCE:
      logging.warning("Structural %s ratio is %g, the scaled plate equation "
                      "assumes 1", name, ratio)
  return Nondimensional(eps=mach, nu=1.0 / reynolds, mach=mach,
                        reynolds=reynolds, structural_ratios=ratios)
