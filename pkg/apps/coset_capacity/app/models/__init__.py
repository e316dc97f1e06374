from app.models.enums import BellState, CodeFamily, LogicalClass, ViolationKind

__all__ = [
    "BellState",
    "CodeFamily",
    "LogicalClass",
    "ViolationKind",
]
