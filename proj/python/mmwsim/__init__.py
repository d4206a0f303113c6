"""Slot-level mmWave downlink scheduling simulator under human blockage."""

from ._core import *  # noqa: F401,F403
from ._core import MmwsimError, Policy, ScenarioConfig, run_campaign, run_drop, run_point

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
