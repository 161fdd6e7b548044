"""
Transition network models for the Effective Security toolkit.

Networks are plain immutable values, not database rows: every analysis is a
pure function of the network it is handed.
"""
import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from types import MappingProxyType
from typing import Mapping, Optional

from django.db import models


class Role(models.TextChoices):
    HIGH = 'high', 'High'
    LOW = 'low', 'Low'


class GoalKind(models.TextChoices):
    SAFETY = 'safety', 'Safety'
    REACHABILITY = 'reachability', 'Reachability'


_DIGITS = re.compile(r'(\d+)')


def natural_key(identifier):
    """Sort key placing `s2` before `s10`."""
    return tuple(
        (0, int(part), '') if part.isdigit() else (1, 0, part)
        for part in _DIGITS.split(str(identifier)) if part
    )


def natural_sorted(identifiers):
    return sorted(identifiers, key=natural_key)


class _Undefined:
    """Result of executing a sequence that hits an undefined transition"""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'Undefined'

    def __bool__(self):
        return False

    def __reduce__(self):
        return (_Undefined, ())


UNDEFINED = _Undefined()


@dataclass(frozen=True, order=True)
class PersonalizedAction:
    """An action submitted by one agent"""
    agent: str
    action: str

    def __str__(self):
        return f"{self.agent}.{self.action}"


def as_sequence(items) -> tuple:
    """Coerce pairs or PersonalizedAction items into an action sequence."""
    sequence = []
    for item in items:
        if isinstance(item, PersonalizedAction):
            sequence.append(item)
        else:
            agent, action = item
            sequence.append(PersonalizedAction(agent, action))
    return tuple(sequence)


@dataclass(frozen=True)
class Goal:
    """Safety (avoid `states`) or reachability (reach `states`) goal"""
    kind: str
    states: frozenset

    def __post_init__(self):
        object.__setattr__(self, 'kind', GoalKind(self.kind))
        object.__setattr__(self, 'states', frozenset(self.states))

    @classmethod
    def safety(cls, avoid):
        return cls(GoalKind.SAFETY, avoid)

    @classmethod
    def reachability(cls, target):
        return cls(GoalKind.REACHABILITY, target)

    @property
    def is_safety(self):
        return self.kind == GoalKind.SAFETY

    def describe(self):
        verb = 'avoid' if self.is_safety else 'reach'
        return f"{self.kind.value} {verb} {{{' '.join(natural_sorted(self.states))}}}"


@dataclass(frozen=True)
class TransitionNetwork:
    """
    Multi-agent asynchronous transition network, possibly partial.

    `obs` maps (state, agent) to an observation label; `transitions` maps
    (state, agent, action) to the successor state and simply lacks the keys
    of undefined moves.
    """
    name: str
    states: frozenset
    initial: str
    high: frozenset
    low: frozenset
    actions: frozenset
    observations: frozenset
    obs: Mapping = field(default_factory=dict)
    transitions: Mapping = field(default_factory=dict)

    def __post_init__(self):
        for attr in ('states', 'high', 'low', 'actions', 'observations'):
            object.__setattr__(self, attr, frozenset(getattr(self, attr)))
        object.__setattr__(self, 'obs', MappingProxyType(dict(self.obs)))
        object.__setattr__(self, 'transitions', MappingProxyType(dict(self.transitions)))

    @property
    def agents(self) -> frozenset:
        return self.high | self.low

    def role(self, agent) -> Optional[Role]:
        if agent in self.low:
            return Role.LOW
        if agent in self.high:
            return Role.HIGH
        return None

    def observe(self, state, agent):
        return self.obs[(state, agent)]

    def successor(self, state, agent, action):
        return self.transitions.get((state, agent, action), UNDEFINED)

    def sorted_states(self):
        return natural_sorted(self.states)

    def sorted_agents(self):
        return sorted(self.agents)

    @cached_property
    def outgoing(self) -> Mapping:
        """Defined moves per state as sorted (agent, action, target) triples."""
        moves = {state: [] for state in self.states}
        for (source, agent, action), target in self.transitions.items():
            moves.setdefault(source, []).append((agent, action, target))
        return MappingProxyType({
            state: tuple(sorted(items)) for state, items in moves.items()
        })

    def with_changes(self, **changes):
        return replace(self, **changes)

    def __str__(self):
        return f"{self.name} ({len(self.states)} states, {len(self.transitions)} transitions)"


@dataclass(frozen=True)
class Violation:
    """One broken well-formedness condition"""
    kind: str
    items: tuple
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def of_kind(self, kind):
        return [violation for violation in self.violations if violation.kind == kind]
