"""
Construction of the attacker's belief arena.

The attacker sees only its stuttering-reduced observation sequence, so a node
is the set of states consistent with what it has seen. Stuttering moves (that
leave its observation unchanged), including its own committed action, are
absorbed into the node; every other move is an observable outcome.
"""
import logging
from collections import deque

from apps.core.exceptions import InputError

from .models import ABSTAIN, ArenaNode, BeliefArena, Outcome

logger = logging.getLogger(__name__)


def stutter_closure(net, attacker, states, choice=ABSTAIN) -> frozenset:
    """Close `states` under allowed moves that keep the attacker's observation."""
    closed = set(states)
    queue = deque(closed)
    while queue:
        state = queue.popleft()
        label = net.observe(state, attacker)
        for agent, action, target in net.outgoing[state]:
            if agent == attacker and action != choice:
                continue
            if target not in closed and net.observe(target, attacker) == label:
                closed.add(target)
                queue.append(target)
    return frozenset(closed)


def attacker_choices(net, attacker, belief) -> tuple:
    """Actions available at every state of `belief`, sorted, then abstaining."""
    common = None
    for state in belief:
        available = {
            action for agent, action, _target in net.outgoing[state] if agent == attacker
        }
        common = available if common is None else common & available
    return tuple(sorted(common or ())) + (ABSTAIN,)


def build_belief_arena(net, attacker) -> BeliefArena:
    if attacker not in net.low:
        raise InputError(f"Attacker '{attacker}' is not a Low agent of {net.name}")

    arena = BeliefArena(network=net, attacker=attacker)

    def node_index(belief, history):
        if belief not in arena.index_of:
            index = len(arena.nodes)
            label = net.observe(next(iter(belief)), attacker)
            arena.nodes.append(ArenaNode(index, belief, label, history))
            arena.index_of[belief] = index
            queue.append(index)
        return arena.index_of[belief]

    queue = deque()
    initial = stutter_closure(net, attacker, {net.initial})
    node_index(initial, (net.observe(net.initial, attacker),))

    while queue:
        node = arena.nodes[queue.popleft()]
        arena.choices[node.index] = attacker_choices(net, attacker, node.belief)
        for choice in arena.choices[node.index]:
            closure = stutter_closure(net, attacker, node.belief, choice)
            arena.closures[(node.index, choice)] = closure

            reached = {}
            movers = {}
            for state in closure:
                for agent, action, target in net.outgoing[state]:
                    if agent == attacker and action != choice:
                        continue
                    label = net.observe(target, attacker)
                    if label == node.label:
                        continue
                    reached.setdefault(label, set()).add(target)
                    movers.setdefault(label, set()).add((agent, action))

            outcomes = set()
            for label in sorted(reached):
                belief = stutter_closure(net, attacker, reached[label])
                successor = node_index(belief, node.history + (label,))
                outcomes.update(
                    Outcome(label, agent, action, successor) for agent, action in movers[label]
                )
            arena.edges[(node.index, choice)] = tuple(sorted(outcomes))

    logger.debug(f"Belief arena of {net.name} for {attacker}: {len(arena.nodes)} nodes")
    return arena
