# Copyright 2026 The teamdp Authors.
# SPDX-License-Identifier: Apache-2.0
"""Python access to the teamdp solvers.

Scenarios are plain dicts in the scenario JSON layout; results come back
as dicts.
"""

import json

from . import _core
from ._core import BudgetExceeded, ScenarioError, TeamError, run_cli

__version__ = _core.__version__


def _text(scenario):
    return scenario if isinstance(scenario, str) else json.dumps(scenario)


def toy_scenario(horizon=2):
    return json.loads(_core.toy_scenario(horizon))


def validate(scenario):
    """List of {path, message} violations; empty when valid."""
    return json.loads(_core.validate(_text(scenario)))


def solve_manager(scenario, node_budget=1_000_000):
    return json.loads(_core.solve_manager(_text(scenario), node_budget))


def solve_member(scenario, member, node_budget=1_000_000):
    """Member numbers start at 1."""
    return json.loads(_core.solve_member(_text(scenario), member, node_budget))


def oracle_centralized(scenario):
    return json.loads(_core.oracle_centralized(_text(scenario)))


def oracle_decentralized(scenario):
    return json.loads(_core.oracle_decentralized(_text(scenario)))


def compare(scenario):
    return json.loads(_core.compare(_text(scenario)))


def simulate(scenario, samples, seed=0, threads=1):
    """(mean, std_error) of the manager strategy's cost."""
    return _core.simulate(_text(scenario), samples, seed, threads)


gaussian_closed_form = _core.gaussian_closed_form
gaussian_cost = _core.gaussian_cost
gaussian_mc = _core.gaussian_mc

__all__ = [
    "BudgetExceeded",
    "ScenarioError",
    "TeamError",
    "compare",
    "gaussian_closed_form",
    "gaussian_cost",
    "gaussian_mc",
    "oracle_centralized",
    "oracle_decentralized",
    "run_cli",
    "simulate",
    "solve_manager",
    "solve_member",
    "toy_scenario",
    "validate",
]
