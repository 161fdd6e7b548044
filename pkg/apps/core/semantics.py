"""
Execution semantics of transition networks: available actions, execution of
action sequences, purge, totalization and stuttering-reduced observations.
"""
import logging
from collections import deque

from .exceptions import InputError
from .models import UNDEFINED, as_sequence

logger = logging.getLogger(__name__)


def _require_state(net, state):
    if state not in net.states:
        raise InputError(f"Unknown state '{state}' in network {net.name}")


def _require_agent(net, agent):
    if agent not in net.agents:
        raise InputError(f"Unknown agent '{agent}' in network {net.name}")


def available_actions(net, state, agent) -> frozenset:
    """Actions with a defined transition for `agent` at `state`."""
    _require_state(net, state)
    _require_agent(net, agent)
    return frozenset(
        action for mover, action, _target in net.outgoing[state] if mover == agent
    )


def enabled_agents(net, state) -> frozenset:
    return frozenset(agent for agent, _action, _target in net.outgoing.get(state, ()))


def is_total(net) -> bool:
    return len(net.transitions) == len(net.states) * len(net.agents) * len(net.actions)


def execute(net, state, alpha):
    """Fold `alpha` over the transition function; UNDEFINED once a step is undefined."""
    _require_state(net, state)
    sequence = as_sequence(alpha)
    for item in sequence:
        if item.agent not in net.agents or item.action not in net.actions:
            raise InputError(f"Malformed personalized action {item} for network {net.name}")

    current = state
    for item in sequence:
        current = net.successor(current, item.agent, item.action)
        if current is UNDEFINED:
            return UNDEFINED
    return current


def purge(alpha, agents) -> tuple:
    """Drop every personalized action owned by one of `agents`, keeping order."""
    agents = frozenset(agents)
    return tuple(item for item in as_sequence(alpha) if item.agent not in agents)


def totalize_low(net, agents=None):
    """
    Make the transitions of `agents` total by adding self-loops where undefined.

    Defaults to the network's Low agents. Observations and every defined entry
    are left untouched.
    """
    agents = net.low if agents is None else frozenset(agents)
    unknown = agents - net.agents
    if unknown:
        raise InputError(f"Cannot totalize unknown agents: {', '.join(sorted(unknown))}")

    transitions = dict(net.transitions)
    added = 0
    for state in net.states:
        for agent in agents:
            for action in net.actions:
                if (state, agent, action) not in transitions:
                    transitions[(state, agent, action)] = state
                    added += 1
    if not added:
        return net
    logger.debug(f"Totalized {net.name}: {added} self-loops added")
    return net.with_changes(transitions=transitions)


def totalize_with_sinks(net, high_sink='s_herr', low_sink='s_lerr', sink_observations=None):
    """
    Total reading of a partial network through two error states.

    Undefined High moves lead to `high_sink`, undefined Low moves to `low_sink`;
    both sinks self-loop on every action. `sink_observations` maps
    (sink, agent) to the label observed there; unspecified pairs observe the
    sink's own name.
    """
    for sink in (high_sink, low_sink):
        if sink in net.states:
            raise InputError(f"Sink state '{sink}' already exists in network {net.name}")

    sink_observations = dict(sink_observations or {})
    states = net.states | {high_sink, low_sink}
    obs = dict(net.obs)
    for sink in (high_sink, low_sink):
        for agent in net.agents:
            obs[(sink, agent)] = sink_observations.get((sink, agent), sink)

    transitions = dict(net.transitions)
    for state in states:
        for agent in net.agents:
            for action in net.actions:
                if (state, agent, action) in transitions:
                    continue
                if state in (high_sink, low_sink):
                    transitions[(state, agent, action)] = state
                elif agent in net.high:
                    transitions[(state, agent, action)] = high_sink
                else:
                    transitions[(state, agent, action)] = low_sink

    return net.with_changes(
        states=states,
        observations=net.observations | set(obs.values()),
        obs=obs,
        transitions=transitions,
    )


def reduced_obs(net, path, agent) -> list:
    """Observations of `agent` along `path` with consecutive repeats collapsed."""
    labels = []
    for state in path:
        label = net.observe(state, agent)
        if not labels or labels[-1] != label:
            labels.append(label)
    return labels


def reachable_states(net) -> frozenset:
    """States reachable from the initial state through defined transitions."""
    seen = {net.initial}
    queue = deque([net.initial])
    while queue:
        state = queue.popleft()
        for _agent, _action, target in net.outgoing.get(state, ()):
            if target not in seen:
                seen.add(target)
                queue.append(target)
    return frozenset(seen)
