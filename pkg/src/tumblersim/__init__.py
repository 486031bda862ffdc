"""Tumbling-descent and benthic sensing pod mission simulator."""

from .aerodynamics import (AeroCoefficients, FallState, TerminalEvent,
                           Trajectory, TrajectoryMetrics, calibrate_coefficients,
                           quasi_steady_forces, simulate_descent, step,
                           trajectory_metrics)
from .buoyancy import (BladderCompliance, BladderState, PodGeometry,
                       ReactantCharge, bladder_expansion, equilibrium_inflation,
                       gas_from_reactants, internal_pressure,
                       max_operational_depth, required_charge)
from .environment import (FluidProperties, ThermoclineProfile, WindKind,
                          WindModel, WindSampler, water_pressure,
                          water_temperature, wind_sample)
from .mission import (MissionConfig, MissionEvent, MissionLog, MissionPhase,
                      TriggerConfig, TriggerMode, advance, default_lake_config,
                      run_batch, run_mission, trigger_check, validate_log)
from .pod import (HydroParams, PodState, SensorRecord, detach_check,
                  net_vertical_force, sample_sensors, simulate_underwater,
                  terminal_sink_speed)
from .tumbler import (EffectiveDisc, FallRegime, Shape, TumblerDesign,
                      classify_regime, effective_disc, planform_area, reynolds)

__version__ = "0.1.0"
