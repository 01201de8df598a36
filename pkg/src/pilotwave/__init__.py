"""Deterministic guided-particle simulation of a wave packet that splits and re-forms."""

from .ensemble import (Outcome, RecurrenceChain, RecurrenceRecord, outcome_sequence, run_chain,
                       step_recurrence)
from .errors import (DegenerateEquilibrium, DomainError, EmptyInput, NodeSingularity,
                     NonConvergence, PilotWaveError, StepFailure)
from .models import ExcitedStateSplitModel, GroundStateSplitModel, WaveModel, well_center

__all__ = [
    "DegenerateEquilibrium", "DomainError", "EmptyInput", "ExcitedStateSplitModel",
    "GroundStateSplitModel", "NodeSingularity", "NonConvergence", "Outcome", "PilotWaveError",
    "RecurrenceChain", "RecurrenceRecord", "StepFailure", "WaveModel", "outcome_sequence",
    "run_chain", "step_recurrence", "well_center",
]
