"""
Solvers for the attacker's game.

`solve_strict` decides sure winning against a fully adversarial scheduler
(attractor for reachability, greatest fixpoint for safety). `solve_fair`
restricts the adversary to fair schedules and searches belief-positional
strategies in a fixed order, checking each in the product graph. `solve`
is the entry point used by the analyses.
"""
import logging
from dataclasses import replace

import networkx as nx

from apps.core.conf import effsec_settings
from apps.core.exceptions import BudgetExceededError, ConsistencyError, InputError, UnsupportedGoalError

from .arena import build_belief_arena
from .models import ABSTAIN, Semantics, SolveResult, Strategy
from .product import explore_product

logger = logging.getLogger(__name__)


def is_observation_definable(net, attacker, states) -> bool:
    """True if `states` is a union of the attacker's observation classes."""
    inside, outside = set(), set()
    for state in net.states:
        (inside if state in states else outside).add(net.observe(state, attacker))
    return not inside & outside


def expose_goal(net, attacker, states):
    """Let the attacker observe membership in `states` on top of its own labels."""
    obs = dict(net.obs)
    for state in states:
        obs[(state, attacker)] = f"{net.observe(state, attacker)}_reached"
    return net.with_changes(observations=set(obs.values()), obs=obs)


def _check_goal(arena, goal):
    net = arena.network
    unknown = goal.states - net.states
    if unknown:
        raise InputError(f"Goal mentions unknown states: {', '.join(sorted(unknown))}")
    if not goal.is_safety and not is_observation_definable(net, arena.attacker, goal.states):
        raise UnsupportedGoalError(
            f"Reachability target is not a union of {arena.attacker}'s observation classes"
        )


def _reachable_strategy(arena, goal, assignment):
    """Restrict `assignment` to nodes reachable from the initial node."""
    reachable, stack = set(), [arena.initial]
    while stack:
        index = stack.pop()
        if index in reachable:
            continue
        reachable.add(index)
        node = arena.nodes[index]
        if not goal.is_safety and node.belief <= goal.states:
            continue
        if index not in assignment:
            continue
        stack.extend(outcome.successor for outcome in arena.edges[(index, assignment[index])])
    chosen = {index: assignment[index] for index in sorted(reachable) if index in assignment}
    return Strategy(
        attacker=arena.attacker,
        choices={arena.nodes[index].belief: choice for index, choice in chosen.items()},
        histories={arena.nodes[index].belief: arena.nodes[index].history for index in chosen},
    )


def _verified(result, goal):
    if result.winning and effsec_settings('VERIFY_WITNESSES'):
        from .verification import verify_strategy

        verdict = verify_strategy(result.arena.network, result.strategy, goal, result.semantics)
        if not verdict.ok:
            raise ConsistencyError(f"Winning strategy failed verification: {verdict.reason}")
    return result


def _stutter_safe(arena, index, choice):
    """No deadlock and no stuttering cycle inside the closure."""
    net = arena.network
    label = arena.nodes[index].label
    stutter = nx.DiGraph()
    closure = arena.closures[(index, choice)]
    stutter.add_nodes_from(closure)
    for state in closure:
        moves = [
            target for agent, action, target in net.outgoing[state]
            if arena.allows(agent, action, choice)
        ]
        if not moves:
            return False
        stutter.add_edges_from(
            (state, target) for target in moves if net.observe(target, arena.attacker) == label
        )
    return nx.is_directed_acyclic_graph(stutter)


def solve_strict(arena, goal) -> SolveResult:
    _check_goal(arena, goal)
    nodes = arena.nodes
    assignment = {}

    if goal.is_safety:
        alive = {node.index for node in nodes if not node.belief & goal.states}
        changed = True
        while changed:
            changed = False
            for index in sorted(alive):
                for choice in arena.choices[index]:
                    outcomes = arena.edges[(index, choice)]
                    if not arena.closures[(index, choice)] & goal.states and all(
                        outcome.successor in alive for outcome in outcomes
                    ):
                        assignment[index] = choice
                        break
                else:
                    alive.discard(index)
                    assignment.pop(index, None)
                    changed = True
        winning = arena.initial in alive
    else:
        won = {node.index for node in nodes if node.belief <= goal.states}
        changed = True
        while changed:
            changed = False
            for node in nodes:
                if node.index in won:
                    continue
                for choice in arena.choices[node.index]:
                    outcomes = arena.edges[(node.index, choice)]
                    if all(outcome.successor in won for outcome in outcomes) and _stutter_safe(
                        arena, node.index, choice
                    ):
                        won.add(node.index)
                        assignment[node.index] = choice
                        changed = True
                        break
        winning = arena.initial in won

    if not winning:
        initial = arena.initial_node
        return SolveResult(
            winning=False,
            semantics=Semantics.STRICT,
            diagnostics={
                'reason': 'initial belief is not winning',
                'losingNode': {'label': initial.label, 'belief': initial.sorted_belief()},
            },
            arena=arena,
        )
    strategy = _reachable_strategy(arena, goal, assignment)
    logger.info(f"Strict win for {arena.attacker} in {arena.network.name}: {strategy.describe()}")
    return _verified(
        SolveResult(winning=True, semantics=Semantics.STRICT, strategy=strategy, arena=arena), goal,
    )


def search_strategies(arena, goal, semantics, budget=None):
    """
    First winning assignment in the fixed search order, or None.

    Nodes are assigned in the order they become reachable (lowest index
    first), choices in arena order (actions sorted, abstaining last).
    A partial assignment whose explored product already loses is pruned.
    """
    budget = effsec_settings('STRATEGY_BUDGET') if budget is None else budget
    assignment = {}
    visited = 0

    def search():
        nonlocal visited
        visited += 1
        if visited > budget:
            raise BudgetExceededError('Strategy search', budget)
        exploration = explore_product(arena, assignment, goal, semantics)
        if exploration.losing is not None:
            return None
        if not exploration.pending:
            return dict(assignment)
        index = min(exploration.pending)
        for choice in arena.choices[index]:
            assignment[index] = choice
            found = search()
            if found is not None:
                return found
            del assignment[index]
        return None

    return search(), visited


def solve_fair(net, arena, goal, budget=None) -> SolveResult:
    if net is not arena.network and net != arena.network:
        raise InputError('The arena was built for a different network')
    _check_goal(arena, goal)
    found, visited = search_strategies(arena, goal, Semantics.FAIR, budget)
    if found is None:
        return SolveResult(
            winning=False,
            semantics=Semantics.FAIR,
            diagnostics={'reason': 'no belief-positional strategy wins', 'searched': visited},
            arena=arena,
        )
    strategy = _reachable_strategy(arena, goal, found)
    logger.info(f"Fair win for {arena.attacker} in {net.name}: {strategy.describe()}")
    return _verified(
        SolveResult(winning=True, semantics=Semantics.FAIR, strategy=strategy, arena=arena), goal,
    )


def solve(net, attacker, goal, semantics=None, budget=None) -> SolveResult:
    """
    Solve the attacker's game on `net`.

    A reachability target the attacker cannot recognise is made recognisable
    first: the attacker additionally observes whether it has been reached.
    """
    semantics = Semantics(semantics or effsec_settings('DEFAULT_SEMANTICS'))
    unknown = goal.states - net.states
    if unknown:
        raise InputError(f"Goal mentions states unknown to {net.name}: {', '.join(sorted(unknown))}")

    exposed = not goal.is_safety and not is_observation_definable(net, attacker, goal.states)
    if exposed:
        logger.info(f"Target not observable by {attacker} in {net.name}; exposing goal membership")
        net = expose_goal(net, attacker, goal.states)

    arena = build_belief_arena(net, attacker)
    if semantics == Semantics.STRICT:
        result = solve_strict(arena, goal)
    else:
        result = solve_fair(net, arena, goal, budget)
    return replace(result, goal_exposed=exposed) if exposed else result


__all__ = ['ABSTAIN', 'expose_goal', 'is_observation_definable', 'search_strategies',
           'solve', 'solve_fair', 'solve_strict']
