"""
Effective security verdicts and reports.
"""
from dataclasses import dataclass, field
from typing import Mapping, Optional

from apps.core.models import Goal
from apps.games.models import Strategy


@dataclass(frozen=True)
class ESVerdict:
    """Whether the attacker lacks a strategy forcing the negated goal"""
    effectively_secure: bool
    model: str
    goal: Goal
    semantics: str
    attack_strategy: Optional[Strategy] = None
    strict_secure: Optional[bool] = None
    goal_exposed: bool = False

    def __post_init__(self):
        if self.effectively_secure != (self.attack_strategy is None):
            raise ValueError('An attack strategy is attached exactly when the model is insecure')


@dataclass(frozen=True)
class ComparisonVerdict:
    """
    Relations between two models for one attacker and goal.

    `a_preceq_b` reads "B is at least as effectively secure as A", i.e.
    ES(A) implies ES(B); `a_less_b` is the strict version.
    """
    first: ESVerdict
    second: ESVerdict

    @property
    def a_preceq_b(self):
        return not self.first.effectively_secure or self.second.effectively_secure

    @property
    def b_preceq_a(self):
        return not self.second.effectively_secure or self.first.effectively_secure

    @property
    def a_less_b(self):
        return self.second.effectively_secure and not self.first.effectively_secure

    @property
    def b_less_a(self):
        return self.first.effectively_secure and not self.second.effectively_secure

    @property
    def equivalent(self):
        return self.first.effectively_secure == self.second.effectively_secure


@dataclass(frozen=True)
class InfoSecReport:
    """Effective information security of a model against its idealized variant"""
    comparison: ComparisonVerdict
    idealization: object
    attacker: str
    timings: Mapping = field(default_factory=dict, compare=False)

    @property
    def es(self):
        return self.comparison.first

    @property
    def es_ideal(self):
        return self.comparison.second

    @property
    def secure(self):
        return self.comparison.equivalent


@dataclass(frozen=True)
class DominanceReport:
    hypotheses_met: bool
    hypothesis: str
    comparison: ComparisonVerdict

    @property
    def dominated(self):
        """The model is at most as secure as its idealized variant."""
        return self.comparison.a_preceq_b
