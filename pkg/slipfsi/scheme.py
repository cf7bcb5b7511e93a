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
"""Time integration of the coupled fluid-plate system.

One step is a Lie splitting, plate first:

1. The plate is advanced exactly over dt under the load of the current fluid
   trace (plate.PlatePropagator).
2. The fluid is advanced by two-stage Heun with the map frozen at the old
   displacement and mesh velocity equal to the new plate velocity. The
   conserved mass q = J_w rho_hat is the transported unknown. In strong and
   monolithic coupling the wall normal velocities are projected onto the
   kinematic conditions after every stage.
3. The map is refreshed from the new displacement: rho_hat = q / J_w(w_new),
   and the wall conditions are imposed on the new wall (projection in strong
   coupling, the exact penalty relaxation in penalty coupling).

In monolithic coupling steps 1 and 2 are repeated with a relaxed load until
the kinematic mismatch at the end of the step drops below tol.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections
import time

from absl import logging
import tensorflow as tf

from slipfsi import boundary
from slipfsi import constitutive
from slipfsi import errors
from slipfsi import field
from slipfsi import fluid
from slipfsi import options as options_lib
from slipfsi import plate
from slipfsi.diagnostics import energy
from slipfsi.geometry import flow_map


class RunConfig(object):
  """Everything a run needs.

  Attributes:
    params: the params.Params.
    grid: the grid.Grid.
    initial: a field.State, an object with build(grid, params) returning one
      (see limits.initial_data.InitialSpec), or None for the rest state.
    t_final: end time, positive.
    dt: a fixed step, or None for the CFL-adaptive policy.
    coupling: one of constitutive.COUPLING_MODES. Penalty coupling uses
      params.kappa.
    tol: monolithic mismatch tolerance.
    max_iter: monolithic iteration cap.
    relaxation: monolithic load relaxation; options.monolithic_relaxation
      when None.
    output_every: snapshot cadence in steps.
    wall_clock_budget: seconds, or None for no limit.
    dump_fields: whether the cli writes binary field dumps.
    options: an options.Options.
  """

  def __init__(self, params, grid, initial=None, t_final=1.0, dt=None,
               coupling=constitutive.STRONG, tol=1e-10, max_iter=50,
               relaxation=None, output_every=1, wall_clock_budget=None,
               dump_fields=False, options=None):
    self.params = params
    self.grid = grid
    self.initial = initial
    self.t_final = float(t_final)
    self.dt = None if dt is None else float(dt)
    self.coupling = coupling
    self.tol = float(tol)
    self.max_iter = int(max_iter)
    self.options = options or options_lib.get_default_options()
    self.relaxation = (self.options.monolithic_relaxation
                       if relaxation is None else float(relaxation))
    self.output_every = int(output_every)
    self.wall_clock_budget = wall_clock_budget
    self.dump_fields = bool(dump_fields)
    self.validate()

  def validate(self):
    """Raises ValueError if the configuration is inconsistent."""
    if not self.t_final > 0.0:
      raise ValueError("t_final must be positive: " + str(self.t_final))
    if self.dt is not None and not self.dt > 0.0:
      raise ValueError("dt must be positive: " + str(self.dt))
    if self.coupling not in constitutive.COUPLING_MODES:
      raise ValueError("Unknown coupling mode: " + str(self.coupling))
    if (self.coupling == constitutive.PENALTY and
        not (self.params.kappa or 0.0) > 0.0):
      raise ValueError("Penalty coupling needs kappa > 0: " +
                       str(self.params.kappa))
    if not self.tol > 0.0:
      raise ValueError("tol must be positive: " + str(self.tol))
    if self.max_iter < 1:
      raise ValueError("max_iter must be at least 1: " + str(self.max_iter))
    if not 0.0 < self.relaxation <= 1.0:
      raise ValueError("relaxation must lie in (0, 1]: " +
                       str(self.relaxation))
    if self.output_every < 1:
      raise ValueError("output_every must be at least 1: " +
                       str(self.output_every))
    if self.wall_clock_budget is not None and not self.wall_clock_budget > 0:
      raise ValueError("wall_clock_budget must be positive: " +
                       str(self.wall_clock_budget))
    self.options.validate()
    return self

  def replace(self, **kwargs):
    """Returns a copy with some attributes replaced."""
    values = dict(params=self.params, grid=self.grid, initial=self.initial,
                  t_final=self.t_final, dt=self.dt, coupling=self.coupling,
                  tol=self.tol, max_iter=self.max_iter,
                  relaxation=self.relaxation, output_every=self.output_every,
                  wall_clock_budget=self.wall_clock_budget,
                  dump_fields=self.dump_fields, options=self.options)
    values.update(kwargs)
    return RunConfig(**values)

  def initial_state(self):
    """The state at t = 0."""
    if self.initial is None:
      return field.rest_state(self.grid, self.params)
    if isinstance(self.initial, field.State):
      self.grid.check_same(self.initial.grid, "initial state")
      return self.initial
    return self.initial.build(self.grid, self.params)


class StepRecord(collections.namedtuple("StepRecord", [
    "t", "step", "dt", "mass", "mismatch", "rho_min", "rho_max", "u_max",
    "w_min", "w_max", "iterations", "penalty_loss"])):
  """Scalar diagnostics of one committed step."""
  __slots__ = ()


class StepOutcome(collections.namedtuple("StepOutcome", [
    "state", "iterations", "penalty_loss", "mismatch"])):
  """What advance returns: the new state and the coupling bookkeeping."""
  __slots__ = ()


class Trajectory(object):
  """The output of run.

  Attributes:
    snapshots: list of (t, State) at the output cadence, first and last
      states included.
    energy_reports: one energy.EnergyReport per committed step, plus t = 0.
    step_rows: one StepRecord per committed step.
    final_state: the last state.
  """

  def __init__(self):
    self.snapshots = []
    self.energy_reports = []
    self.step_rows = []
    self.final_state = None

  @property
  def times(self):
    return [t for t, _ in self.snapshots]

  def __len__(self):
    return len(self.snapshots)


def _check_density(q, domain_map, t):
  smallest = float(tf.reduce_min(q / domain_map.jacobian))
  if not smallest > 0.0:
    raise errors.PositivityError(
        "Density lost positivity, min=" + repr(smallest), t=t)


def _fluid_substep(state, frozen_map, params, coupling, dt, check_finite):
  """Heun step of (q, u) on the frozen map.

  Returns:
    The pair (q, components) at the end of the substep.
  """
  grid = state.grid
  jacobian = frozen_map.jacobian
  strong = coupling != constitutive.PENALTY

  def tendency(q, components):
    stage = state.replace(rho_hat=field.ScalarField(grid, q / jacobian),
                          u_hat=field.VectorField(grid, components),
                          w_t=frozen_map.w_t)
    rhs = fluid.fluid_rhs(stage, frozen_map, params, coupling, check_finite)
    return rhs.d_mass, rhs.d_u.components()

  q0 = state.rho_hat.values * jacobian
  u0 = state.u_hat.components()
  dq0, du0 = tendency(q0, u0)
  q1 = q0 + dt * dq0
  u1 = [u + dt * du for u, du in zip(u0, du0)]
  if strong:
    u1 = boundary.enforce_kinematics(u1, frozen_map)
  _check_density(q1, frozen_map, state.t + dt)
  dq1, du1 = tendency(q1, u1)
  q = q0 + 0.5 * dt * (dq0 + dq1)
  u = [a + 0.5 * dt * (b + c) for a, b, c in zip(u0, du0, du1)]
  if strong:
    u = boundary.enforce_kinematics(u, frozen_map)
  _check_density(q, frozen_map, state.t + dt)
  return q, u


def _commit(state, q, components, w, w_t, dt, config):
  """Refreshes the map and imposes the wall conditions on the new wall."""
  params = config.params
  floor = config.options.contact_floor
  t = state.t + dt
  new_map = flow_map.DomainMap(state.grid, w, w_t, floor, t=t)
  rho = q / new_map.jacobian
  penalty_loss = 0.0
  if config.coupling == constitutive.PENALTY:
    components, w_t, penalty_loss = boundary.relax_penalty(
        components, rho, w_t, new_map, params, dt)
  else:
    components = boundary.enforce_kinematics(components, new_map)
  grid = state.grid
  new_state = field.State(t, field.ScalarField(grid, rho),
                          field.VectorField(grid, components), w, w_t)
  return new_state, penalty_loss


def _mismatch(components, w, w_t, grid, floor):
  domain_map = flow_map.DomainMap(grid, w, w_t, floor)
  defect = boundary.top_mismatch(components, domain_map)
  return float(tf.sqrt(tf.reduce_sum(defect * defect) * grid.plate_cell_area))


def advance(state, dt, config, propagator=None):
  """Performs one split step.

  Args:
    state: the field.State at time t.
    dt: the step.
    config: the RunConfig.
    propagator: a plate.PlatePropagator for dt, or None to build one.

  Returns:
    A StepOutcome.

  Raises:
    errors.DegeneracyError, errors.PositivityError, errors.BlowUpError: as
      classified by the checks of the step.
    errors.IterationError: if monolithic coupling does not converge.
  """
  params = config.params
  grid = state.grid
  floor = config.options.contact_floor
  check_finite = config.options.check_finite
  if propagator is None or propagator.dt != dt:
    propagator = plate.PlatePropagator(grid, params, dt)
  old_map = flow_map.DomainMap(grid, state.w, state.w_t, floor, t=state.t)
  load = plate.compute_plate_load(state, old_map, params,
                                  coupling=config.coupling).F

  if config.coupling != constitutive.MONOLITHIC:
    w, w_t = propagator.step(state.w, state.w_t, load)
    q, components = _fluid_substep(state, old_map.with_velocity(w_t), params,
                                   config.coupling, dt, check_finite)
    new_state, penalty_loss = _commit(state, q, components, w, w_t, dt,
                                      config)
    mismatch = _mismatch(new_state.u_hat.components(), new_state.w,
                         new_state.w_t, grid, floor)
    return StepOutcome(new_state, 1, penalty_loss, mismatch)

  mismatch = None
  for iteration in range(1, config.max_iter + 1):
    w, w_t = propagator.step(state.w, state.w_t, load)
    q, components = _fluid_substep(state, old_map.with_velocity(w_t), params,
                                   config.coupling, dt, check_finite)
    trial, _ = _commit(state, q, components, w, w_t, dt, config)
    trial_map = flow_map.DomainMap(grid, w, w_t, floor, t=trial.t)
    candidate = plate.compute_plate_load(trial, trial_map, params,
                                         coupling=config.coupling).F
    load = ((1.0 - config.relaxation) * load +
            config.relaxation * candidate)
    w_next, w_t_next = propagator.step(state.w, state.w_t, load)
    mismatch = _mismatch(trial.u_hat.components(), w_next, w_t_next, grid,
                         floor)
    logging.vlog(1, "t=%g monolithic iteration %d mismatch %g", state.t,
                 iteration, mismatch)
    if mismatch < config.tol:
      new_state, _ = _commit(state, q, components, w_next, w_t_next, dt,
                             config)
      return StepOutcome(new_state, iteration, 0.0, mismatch)
  raise errors.IterationError(
      "Monolithic coupling did not converge in " + str(config.max_iter) +
      " iterations, mismatch=" + repr(mismatch), t=state.t, mismatch=mismatch)


def split_step(state, dt, config, propagator=None):
  """One split step; returns the new field.State."""
  return advance(state, dt, config, propagator).state


def _validate(state, config):
  state.validate(config.options.contact_floor)
  if config.options.check_finite:
    state.check_finite()


def _step_record(outcome, step, dt, mass):
  state = outcome.state
  return StepRecord(
      t=state.t, step=step, dt=dt, mass=mass, mismatch=outcome.mismatch,
      rho_min=state.rho_hat.min(), rho_max=state.rho_hat.max(),
      u_max=float(tf.reduce_max(state.u_hat.magnitude())),
      w_min=float(tf.reduce_min(state.w)), w_max=float(tf.reduce_max(state.w)),
      iterations=outcome.iterations, penalty_loss=outcome.penalty_loss)


def _next_dt(state, config):
  """Returns (dt, stable) where stable is the explicit bound at state."""
  stable = fluid.stable_dt(state, config.params, config.options.cfl)
  return (stable if config.dt is None else config.dt), stable


def run(config, monitors=()):
  """Integrates the coupled system from t = 0 to config.t_final.

  Args:
    config: a RunConfig.
    monitors: objects with begin(state) and observe(state, dt, record), e.g.
      diagnostics.relative_energy.RelativeEnergyMonitor.

  Returns:
    A Trajectory.

  Raises:
    errors.SimulationError: the classified abort of the run.
  """
  params = config.params
  options = config.options
  state = config.initial_state()
  _validate(state, config)
  accumulator = energy.EnergyAccumulator(params)
  initial = accumulator.begin(state)
  for monitor in monitors:
    monitor.begin(state)
  trajectory = Trajectory()
  trajectory.snapshots.append((state.t, state))
  trajectory.energy_reports.append(initial)
  logging.info("Run start: %s, coupling=%s, t_final=%g, %s", state.grid,
               config.coupling, config.t_final, params)

  start = time.time()
  propagator = None
  warned = False
  dt_warned = False
  step = 0
  while state.t < config.t_final * (1.0 - 1e-12):
    if (config.wall_clock_budget is not None and
        time.time() - start > config.wall_clock_budget):
      raise errors.SimulationTimeoutError(
          "Wall-clock budget of " + str(config.wall_clock_budget) +
          "s exceeded", t=state.t)
    dt, stable = _next_dt(state, config)
    if dt > stable and not dt_warned:
      logging.warning("Fixed dt=%g exceeds the stable step %g at t=%g", dt,
                      stable, state.t)
      dt_warned = True
    dt = min(dt, config.t_final - state.t)
    if propagator is None or propagator.dt != dt:
      propagator = plate.PlatePropagator(state.grid, params, dt)
    outcome = advance(state, dt, config, propagator)
    state = outcome.state
    _validate(state, config)
    step += 1

    report = accumulator.advance(state, dt, outcome.penalty_loss)
    record = _step_record(outcome, step, dt, report.mass)
    trajectory.energy_reports.append(report)
    trajectory.step_rows.append(record)
    logging.vlog(1, "step %d t=%g dt=%g mismatch=%g iterations=%d", step,
                 state.t, dt, outcome.mismatch, outcome.iterations)

    violation = energy.relative_violation(initial.total, report.total,
                                          report.dissipated)
    if violation > options.tol_energy:
      if options.strict_energy:
        raise errors.EnergyInequalityError(
            "Energy inequality violated by " + repr(violation), t=state.t)
      if not warned:
        logging.warning("Energy inequality violated by %g at t=%g",
                        violation, state.t)
        warned = True

    for monitor in monitors:
      monitor.observe(state, dt, record)
    if step % config.output_every == 0:
      trajectory.snapshots.append((state.t, state))

  if trajectory.snapshots[-1][0] != state.t:
    trajectory.snapshots.append((state.t, state))
  trajectory.final_state = state
  logging.info("Run end: t=%g after %d steps, energy %g", state.t, step,
               trajectory.energy_reports[-1].total)
  return trajectory
