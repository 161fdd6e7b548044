"""
Canonical `.tn` serialization.
"""
from apps.core.models import natural_key, natural_sorted


def _braced(items):
    items = list(items)
    return '{ ' + ' '.join(items) + ' }' if items else '{ }'


def serialize_model(doc) -> str:
    """Render `doc` with sorted states, agents and transitions."""
    net = doc.network
    agents = net.sorted_agents()
    lines = [f"network {net.name}", '', 'agents {']
    lines += [f"  {agent} : {net.role(agent).value}" for agent in agents]
    lines += [
        '}',
        '',
        f"actions {_braced(sorted(net.actions))}",
        '',
        f"observations {_braced(sorted(net.observations))}",
        '',
    ]

    for state in net.sorted_states():
        entries = '  '.join(f"{agent} = {net.obs[(state, agent)]}" for agent in agents)
        lines.append(f"state {state} {_braced([entries] if entries else [])}")

    lines += ['', f"init {net.initial}", '']

    keys = sorted(net.transitions, key=lambda key: (natural_key(key[0]), key[1], key[2]))
    for source, agent, action in keys:
        lines.append(f"{source} -> {net.transitions[(source, agent, action)]} on {agent}.{action}")

    if doc.goals:
        lines.append('')
    for name in sorted(doc.goals):
        goal = doc.goals[name]
        verb = 'avoid' if goal.is_safety else 'reach'
        lines.append(f"goal {name} {goal.kind.value} {verb} {_braced(natural_sorted(goal.states))}")

    return '\n'.join(lines) + '\n'
