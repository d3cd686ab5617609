"""
Experiment State Schema
=======================

The state that flows through the experiment workflow.

WHY THIS EXISTS:
---------------
In LangGraph, nodes don't call each other. Each node reads what it needs from a shared
state and returns the fields it fills:

1. load_inputs reads the plan, writes the scenario context
2. the experiment node reads the context, writes the experiment result
3. write_outputs reads the result, writes the manifest

HOW IT WORKS:
-------------
A TypedDict lists every field. ``files`` uses ``operator.add`` as its reducer so each node
can append the files it wrote without overwriting the others.
"""

import operator
from typing import Annotated, Any, Optional, TypedDict

from occlusion_risk.models.plan import SweepPlan


class ExperimentState(TypedDict, total=False):
    """
    INPUT FIELDS:
    ├── plan: what to run
    ├── overrides: RunConfig fields set on the command line / in the request
    └── workers: thread workers for Monte Carlo draws

    PROCESSING FIELDS:
    └── context: ExperimentContext (scenario, resolved RunConfig, caches)

    OUTPUT FIELDS:
    ├── files: every file written, in write order
    ├── summary: experiment-specific summary
    └── manifest_path: the run manifest
    """

    plan: SweepPlan
    overrides: dict[str, Any]
    workers: int

    context: Any

    files: Annotated[list[str], operator.add]
    summary: dict[str, Any]
    manifest_path: Optional[str]


__all__ = ["ExperimentState"]
