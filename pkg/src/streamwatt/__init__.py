"""streamwatt: energy and GHG accounting for online video services.

A hierarchical model of the electricity drawn by end-user terminals,
video providers and transmission networks, plus what-if tools for
encoder selection and CDN sizing.
"""

from .catalog import ParameterCatalog, builtin_catalog
from .model import (
    CarbonIntensity,
    DevicePowerProfile,
    Direction,
    EncodeVariant,
    NetworkProfile,
    ServerProfile,
    StreamRequest,
    TranscodeJob,
    ghg_emissions,
    service_energy,
)
from .optimizer import (
    EncoderOption,
    VideoCostModel,
    assign_optimal_encoders,
    crossover,
    ladder_impact,
    surrogate_scaling,
    sweep_requests,
)
from .report import EnergyReport, emit, evaluate, ghg_report
from .scenario import (
    Scenario,
    ScenarioError,
    builtin_scenario,
    builtin_scenarios,
    load_scenario,
    load_scenario_file,
    serialize_scenario,
)
from .units import DimensionError, Quantity, UnitError, parse_quantity, quantity

__version__ = "1.0.0"

__all__ = [
    "Quantity",
    "quantity",
    "parse_quantity",
    "UnitError",
    "DimensionError",
    "Direction",
    "DevicePowerProfile",
    "StreamRequest",
    "ServerProfile",
    "EncodeVariant",
    "TranscodeJob",
    "NetworkProfile",
    "CarbonIntensity",
    "service_energy",
    "ghg_emissions",
    "ParameterCatalog",
    "builtin_catalog",
    "Scenario",
    "ScenarioError",
    "load_scenario",
    "load_scenario_file",
    "serialize_scenario",
    "builtin_scenario",
    "builtin_scenarios",
    "EnergyReport",
    "evaluate",
    "emit",
    "ghg_report",
    "EncoderOption",
    "VideoCostModel",
    "sweep_requests",
    "crossover",
    "assign_optimal_encoders",
    "ladder_impact",
    "surrogate_scaling",
    "__version__",
]
