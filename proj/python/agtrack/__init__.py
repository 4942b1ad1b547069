"""Air-ground cooperative target tracking simulator."""

from ._agtrack import (
    ScenarioError,
    __version__,
    config_digest,
    experiment_csv,
    oracle,
    run_episode,
    run_experiment,
    validate_scenario,
)

__all__ = [
    "ScenarioError",
    "__version__",
    "config_digest",
    "experiment_csv",
    "oracle",
    "run_episode",
    "run_experiment",
    "validate_scenario",
]
