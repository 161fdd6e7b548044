"""
Structural validation of transition networks.

Violations are reported as data; nothing here raises.
"""
from itertools import combinations

from .models import ValidationReport, Violation, natural_sorted


def _check_references(net):
    violations = []
    if net.initial not in net.states:
        violations.append(Violation(
            'unknown-initial', (net.initial,),
            f"Initial state '{net.initial}' is not a declared state",
        ))

    for (source, agent, action), target in sorted(net.transitions.items()):
        key = (source, agent, action)
        if source not in net.states or target not in net.states:
            violations.append(Violation(
                'unknown-transition-state', key + (target,),
                f"Transition {source} -> {target} on {agent}.{action} uses an undeclared state",
            ))
        if agent not in net.agents:
            violations.append(Violation(
                'unknown-agent', key, f"Transition on {agent}.{action} uses an undeclared agent",
            ))
        if action not in net.actions:
            violations.append(Violation(
                'unknown-action', key, f"Transition on {agent}.{action} uses an undeclared action",
            ))
    return violations


def _check_observations(net):
    violations = []
    for state in natural_sorted(net.states):
        for agent in sorted(net.agents):
            if (state, agent) not in net.obs:
                violations.append(Violation(
                    'missing-observation', (state, agent),
                    f"No observation for agent {agent} at state {state}",
                ))
                continue
            label = net.obs[(state, agent)]
            if label not in net.observations:
                violations.append(Violation(
                    'unknown-observation', (state, agent, label),
                    f"Observation '{label}' of {agent} at {state} is not declared",
                ))
    return violations


def _check_roles(net):
    violations = []
    overlap = net.high & net.low
    if overlap:
        violations.append(Violation(
            'role-partition', tuple(sorted(overlap)),
            f"Agents with both roles: {', '.join(sorted(overlap))}",
        ))
    return violations


def _check_awareness(net):
    """Agents sharing an observation must share their available actions."""
    available = {}
    for (source, agent, action) in net.transitions:
        available.setdefault((source, agent), set()).add(action)

    violations = []
    for agent in sorted(net.agents):
        by_label = {}
        for state in natural_sorted(net.states):
            if (state, agent) in net.obs:
                by_label.setdefault(net.obs[(state, agent)], []).append(state)
        for label in sorted(by_label):
            seen = set()
            for first, second in combinations(by_label[label], 2):
                if second in seen:
                    continue
                if available.get((first, agent), set()) != available.get((second, agent), set()):
                    seen.add(second)
                    violations.append(Violation(
                        'availability-awareness', (agent, first, second),
                        f"Agent {agent} observes '{label}' at {first} and {second} "
                        f"but has different available actions",
                    ))
    return violations


def validate_network(net) -> ValidationReport:
    """Enumerate every well-formedness violation of `net`."""
    violations = (
        _check_references(net)
        + _check_observations(net)
        + _check_roles(net)
        + _check_awareness(net)
    )
    return ValidationReport(tuple(violations))
