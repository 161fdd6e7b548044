"""
Strategy game models: the attacker's belief arena, strategies and results.
"""
from dataclasses import dataclass, field
from typing import Mapping, Optional

from django.db import models

from apps.core.models import natural_sorted

ABSTAIN = None


class Semantics(models.TextChoices):
    STRICT = 'strict', 'Strict (fully adversarial scheduler)'
    FAIR = 'fair', 'Fair (continuously enabled agents eventually act)'


def describe_choice(choice):
    return 'abstain' if choice is ABSTAIN else choice


@dataclass(frozen=True)
class ArenaNode:
    """Belief of the attacker: states sharing its observation"""
    index: int
    belief: frozenset
    label: str
    history: tuple

    def sorted_belief(self):
        return natural_sorted(self.belief)


@dataclass(frozen=True, order=True)
class Outcome:
    """Observable move out of a (node, choice) pair"""
    label: str
    actor: str
    action: str
    successor: int


@dataclass
class BeliefArena:
    """
    Knowledge-subset game graph of one Low attacker.

    `closures[(index, choice)]` is the node's belief saturated with stuttering
    moves under that choice; `edges[(index, choice)]` the observable outcomes.
    """
    network: object
    attacker: str
    nodes: list = field(default_factory=list)
    choices: dict = field(default_factory=dict)
    closures: dict = field(default_factory=dict)
    edges: dict = field(default_factory=dict)
    index_of: dict = field(default_factory=dict)

    initial = 0

    @property
    def initial_node(self):
        return self.nodes[self.initial]

    def node_for(self, belief):
        index = self.index_of.get(belief)
        return None if index is None else self.nodes[index]

    def successor(self, index, choice, label):
        for outcome in self.edges[(index, choice)]:
            if outcome.label == label:
                return outcome.successor
        return None

    def allows(self, agent, action, choice):
        return agent != self.attacker or action == choice

    def enabled(self, state, choice) -> frozenset:
        """Agents able to move at `state` when the attacker commits to `choice`."""
        return frozenset(
            agent for agent, action, _target in self.network.outgoing[state]
            if self.allows(agent, action, choice)
        )


@dataclass(frozen=True)
class Strategy:
    """Belief-positional attacker strategy; a choice of None means abstain"""
    attacker: str
    choices: Mapping
    histories: Mapping = field(default_factory=dict, compare=False)

    def items(self):
        """(history, belief, choice) triples in history order."""
        rows = [
            (tuple(self.histories.get(belief, ())), belief, choice)
            for belief, choice in self.choices.items()
        ]
        return sorted(rows, key=lambda row: (len(row[0]), row[0], natural_sorted(row[1])))

    def describe(self):
        return '; '.join(
            f"on {'>'.join(history) or '?'} play {describe_choice(choice)}"
            for history, _belief, choice in self.items()
        )


@dataclass(frozen=True)
class SolveResult:
    winning: bool
    semantics: str
    strategy: Optional[Strategy] = None
    diagnostics: Mapping = field(default_factory=dict)
    goal_exposed: bool = False
    arena: Optional[BeliefArena] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.winning != (self.strategy is not None):
            raise ValueError('A strategy is attached exactly when the attacker wins')


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    reason: str = ''
    path: tuple = ()
    moves: tuple = ()
    loop_start: Optional[int] = None
