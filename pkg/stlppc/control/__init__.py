"""
Decentralised prescribed performance control law.

normalized_error, transform, ErrorTransform
    Normalised funnel error and its logarithmic transformation.
TaskBinding, task_view, evaluate_task
    Tasks attached to their owners and evaluated on the owner's view.
control_input, assemble_input
    Cluster-local control input.
"""
from ._binding import TaskBinding, TaskEvaluation, evaluate_task, task_view
from ._law import SIGN, TRANSPOSE, assemble_input, control_input
from ._transform import ErrorTransform, normalized_error, transform

__all__ = [
    "ErrorTransform",
    "SIGN",
    "TRANSPOSE",
    "TaskBinding",
    "TaskEvaluation",
    "assemble_input",
    "control_input",
    "evaluate_task",
    "normalized_error",
    "task_view",
    "transform",
]
