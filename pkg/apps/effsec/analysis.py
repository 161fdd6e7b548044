"""
Effective security, the comparison relations between models and effective
information security against the idealized variant.
"""
import logging
import time

from apps.core.conf import effsec_settings
from apps.core.exceptions import InputError
from apps.core.models import Goal, GoalKind
from apps.core.semantics import enabled_agents, is_total
from apps.games.models import Semantics
from apps.games.solvers import solve
from apps.idealization.unification import idealize

from .models import ComparisonVerdict, DominanceReport, ESVerdict, InfoSecReport

logger = logging.getLogger(__name__)

HYPOTHESIS_TOTAL = 'total network'
HYPOTHESIS_SCHEDULED = 'partial network, a non-Low agent enabled everywhere'
HYPOTHESIS_SAFETY = 'partial network, safety goal'
HYPOTHESIS_NONE = 'hypotheses not met'


def negate_goal(goal) -> Goal:
    if goal.is_safety:
        return Goal(GoalKind.REACHABILITY, goal.states)
    return Goal(GoalKind.SAFETY, goal.states)


def _check_goal(net, goal):
    unknown = goal.states - net.states
    if unknown:
        raise InputError(f"Goal mentions states unknown to {net.name}: {', '.join(sorted(unknown))}")


def effective_security(net, attacker, goal, semantics=None, budget=None) -> ESVerdict:
    """
    The model is effectively secure when the attacker has no surely winning
    strategy for the negated goal. The strict verdict is attached alongside.
    """
    semantics = Semantics(semantics or effsec_settings('DEFAULT_SEMANTICS'))
    _check_goal(net, goal)
    attack = solve(net, attacker, negate_goal(goal), semantics, budget)
    if semantics == Semantics.STRICT:
        strict_secure = not attack.winning
    elif attack.winning:
        strict_secure = not solve(net, attacker, negate_goal(goal), Semantics.STRICT).winning
    else:
        # strict wins imply fair wins
        strict_secure = True

    verdict = ESVerdict(
        effectively_secure=not attack.winning,
        model=net.name,
        goal=goal,
        semantics=semantics,
        attack_strategy=attack.strategy,
        strict_secure=strict_secure,
        goal_exposed=attack.goal_exposed,
    )
    logger.info(
        f"ES({net.name}, {attacker}, {goal.describe()}) under {semantics.value}: "
        f"{verdict.effectively_secure}"
    )
    return verdict


def compare(net_a, net_b, attacker, goal, semantics=None, goal_b=None, budget=None) -> ComparisonVerdict:
    """Compare two models; `goal_b` is the same-named goal bound in the second model."""
    goal_b = goal if goal_b is None else goal_b
    _check_goal(net_a, goal)
    _check_goal(net_b, goal_b)
    return ComparisonVerdict(
        first=effective_security(net_a, attacker, goal, semantics, budget),
        second=effective_security(net_b, attacker, goal_b, semantics, budget),
    )


def effective_info_security(net, attacker, goal, semantics=None, budget=None) -> InfoSecReport:
    timings = {}
    started = time.perf_counter()
    idealization = idealize(net)
    timings['idealize'] = (time.perf_counter() - started) * 1000

    started = time.perf_counter()
    first = effective_security(net, attacker, goal, semantics, budget)
    timings['es'] = (time.perf_counter() - started) * 1000

    started = time.perf_counter()
    second = effective_security(idealization.network, attacker, goal, semantics, budget)
    timings['esIdeal'] = (time.perf_counter() - started) * 1000

    report = InfoSecReport(
        comparison=ComparisonVerdict(first=first, second=second),
        idealization=idealization,
        attacker=attacker,
        timings={key: round(value, 3) for key, value in timings.items()},
    )
    logger.info(f"{net.name} effectively information-secure for {attacker}: {report.secure}")
    return report


def dominance_hypothesis(net, goal) -> str:
    if is_total(net):
        return HYPOTHESIS_TOTAL
    if all(enabled_agents(net, state) - net.low for state in net.states):
        return HYPOTHESIS_SCHEDULED
    if goal.is_safety:
        return HYPOTHESIS_SAFETY
    return HYPOTHESIS_NONE


def check_ideal_dominance(net, attacker, goal, semantics=None, budget=None) -> DominanceReport:
    """Whether the idealized variant is at least as effectively secure as `net`."""
    hypothesis = dominance_hypothesis(net, goal)
    comparison = compare(net, idealize(net).network, attacker, goal, semantics, budget=budget)
    report = DominanceReport(
        hypotheses_met=hypothesis != HYPOTHESIS_NONE,
        hypothesis=hypothesis,
        comparison=comparison,
    )
    if report.hypotheses_met and not report.dominated:
        logger.warning(f"Dominance fails on {net.name} although its hypotheses hold ({hypothesis})")
    return report
