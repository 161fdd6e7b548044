"""
Model document: a transition network together with its named goals.
"""
from dataclasses import dataclass, field
from typing import Mapping

from apps.core.models import Goal, TransitionNetwork

GoalSpec = Goal


@dataclass(frozen=True)
class ModelDocument:
    """Parsed `.tn` document; `warnings` carry well-formedness violations"""
    network: TransitionNetwork
    goals: Mapping = field(default_factory=dict)
    warnings: tuple = field(default=(), compare=False)

    def goal(self, name):
        from apps.core.exceptions import InputError

        try:
            return self.goals[name]
        except KeyError:
            declared = ', '.join(sorted(self.goals)) or 'none'
            raise InputError(
                f"Goal '{name}' is not declared in {self.network.name} (declared: {declared})"
            ) from None
