"""
Noninterference result models.
"""
from dataclasses import dataclass, field
from typing import Optional, Union

from apps.core.models import natural_key
from apps.core.partitions import Partition


class StatePartition(Partition):
    """Equivalence relation on states (R* and candidate unwindings)"""

    sort_key = staticmethod(natural_key)


@dataclass(frozen=True)
class StatePairWitness:
    """Two related states a Low agent can tell apart"""
    first: str
    second: str
    agent: str
    first_observation: str
    second_observation: str

    def __str__(self):
        return (
            f"{self.first} ~ {self.second} but {self.agent} observes "
            f"{self.first_observation} vs {self.second_observation}"
        )


@dataclass(frozen=True)
class SequenceWitness:
    """Action sequence whose High-purged version looks different to a Low agent"""
    alpha: tuple
    purged: tuple
    agent: str
    observation: str
    purged_observation: str

    def __str__(self):
        shown = ', '.join(str(item) for item in self.alpha) or 'empty'
        return (
            f"after <{shown}> {self.agent} observes {self.observation}, "
            f"after its purge {self.purged_observation}"
        )


@dataclass(frozen=True)
class NIVerdict:
    holds: bool
    method: str
    witness: Optional[Union[StatePairWitness, SequenceWitness]] = None
    depth: Optional[int] = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError('A witness is attached exactly when noninterference fails')


@dataclass(frozen=True)
class UnwindingReport:
    """Output consistency, step consistency and local respect, with counterexamples"""
    oc: bool
    sc: bool
    lr: bool
    oc_counterexamples: tuple = field(default=())
    sc_counterexamples: tuple = field(default=())
    lr_counterexamples: tuple = field(default=())

    @property
    def is_unwinding(self):
        return self.oc and self.sc and self.lr
