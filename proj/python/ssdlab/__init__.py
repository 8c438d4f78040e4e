"""Sequential social dilemma gridworlds with independent deep Q-learners."""

from ssdlab._core import (
    NUM_ACTIONS,
    ConfigError,
    Environment,
    MapError,
    ParamError,
    Policy,
    action_name,
    check_inequalities,
    classify_matrix,
    train,
)

__all__ = [
    "NUM_ACTIONS",
    "ConfigError",
    "Environment",
    "MapError",
    "ParamError",
    "Policy",
    "action_name",
    "check_inequalities",
    "classify_matrix",
    "train",
]
