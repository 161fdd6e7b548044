"""
Independent checker for attacker strategies.

Rebuilds the strategy-trimmed product of concrete states and attacker beliefs
straight from the transition table and model-checks the goal on it. Nothing
here goes through the arena or the solvers, so a winning strategy they report
can be confirmed from scratch. Choices may be a single action, None (abstain)
or a set of actions the scheduler picks from.
"""
import logging
from collections import defaultdict, deque

import networkx as nx

from apps.core.exceptions import InputError
from apps.core.models import PersonalizedAction, natural_key

from .models import Semantics, VerificationResult

logger = logging.getLogger(__name__)


class UncoveredBeliefError(InputError):
    """The strategy has no choice for a belief the play can reach"""

    def __init__(self, belief):
        self.belief = belief
        super().__init__(
            f"Strategy has no choice for reachable belief {{{', '.join(sorted(belief, key=natural_key))}}}"
        )


def _as_action_set(choice):
    if choice is None:
        return frozenset()
    if isinstance(choice, str):
        return frozenset([choice])
    return frozenset(choice)


class _Checker:
    def __init__(self, net, strategy):
        self.net = net
        self.attacker = strategy.attacker
        if self.attacker not in net.low:
            raise InputError(f"Strategy owner '{self.attacker}' is not a Low agent of {net.name}")

        self.moves = defaultdict(list)
        for (state, agent, action), target in net.transitions.items():
            self.moves[state].append((agent, action, target))
        for state in self.moves:
            self.moves[state].sort(key=lambda move: (move[0], move[1], natural_key(move[2])))

        self.choices = {}
        for belief, choice in strategy.choices.items():
            belief = frozenset(belief)
            if not belief or not belief <= net.states:
                raise InputError(f"Strategy refers to a belief outside {net.name}: {sorted(belief)}")
            if len({self.label(state) for state in belief}) != 1:
                raise InputError(f"Strategy belief {sorted(belief)} mixes observations of {self.attacker}")
            actions = _as_action_set(choice)
            if not actions <= net.actions:
                raise InputError(f"Strategy plays unknown actions {sorted(actions - net.actions)}")
            self.choices[belief] = actions
        self._next_belief = {}

    def label(self, state):
        return self.net.obs[(state, self.attacker)]

    def allowed(self, state, actions):
        return [
            (agent, action, target) for agent, action, target in self.moves.get(state, ())
            if agent != self.attacker or action in actions
        ]

    def saturate(self, states, actions):
        closed, queue = set(states), deque(states)
        while queue:
            state = queue.popleft()
            for _agent, _action, target in self.allowed(state, actions):
                if target not in closed and self.label(target) == self.label(state):
                    closed.add(target)
                    queue.append(target)
        return frozenset(closed)

    def choice(self, belief):
        if belief not in self.choices:
            raise UncoveredBeliefError(belief)
        return self.choices[belief]

    def next_belief(self, belief, label):
        key = (belief, label)
        if key not in self._next_belief:
            actions = self.choices[belief]
            reached = {
                target
                for state in self.saturate(belief, actions)
                for _agent, _action, target in self.allowed(state, actions)
                if self.label(target) == label
            }
            self._next_belief[key] = self.saturate(reached, frozenset())
        return self._next_belief[key]


def verify_strategy(net, strategy, goal, semantics) -> VerificationResult:
    semantics = Semantics(semantics)
    checker = _Checker(net, strategy)
    start = (net.initial, checker.saturate({net.initial}, frozenset()))

    graph = nx.DiGraph()
    graph.add_node(start)
    parent = {start: None}
    queue = deque([start])
    terminal = set()

    def path_to(vertex):
        steps = []
        while parent[vertex] is not None:
            previous, move = parent[vertex]
            steps.append((vertex, move))
            vertex = previous
        steps.reverse()
        return [start] + [vertex for vertex, _move in steps], [move for _vertex, move in steps]

    def failure(reason, vertices, moves, loop_start=None):
        logger.info(f"Strategy of {strategy.attacker} fails on {net.name}: {reason}")
        return VerificationResult(
            ok=False,
            reason=reason,
            path=tuple(state for state, _belief in vertices),
            moves=tuple(moves),
            loop_start=loop_start,
        )

    while queue:
        vertex = queue.popleft()
        state, belief = vertex
        if state in goal.states:
            if goal.is_safety:
                return failure(f"reaches avoided state {state}", *path_to(vertex))
            terminal.add(vertex)
            continue

        actions = checker.choice(belief)
        successors = checker.allowed(state, actions)
        if not successors and not goal.is_safety:
            return failure(f"deadlocks in {state} before reaching the target", *path_to(vertex))

        for agent, action, target in successors:
            if checker.label(target) == checker.label(state):
                successor = (target, belief)
            else:
                successor = (target, checker.next_belief(belief, checker.label(target)))
            if graph.has_edge(vertex, successor):
                graph[vertex][successor]['moves'].append(PersonalizedAction(agent, action))
            else:
                graph.add_edge(vertex, successor, moves=[PersonalizedAction(agent, action)])
            if successor not in parent:
                parent[successor] = (vertex, PersonalizedAction(agent, action))
                queue.append(successor)

    if goal.is_safety:
        return VerificationResult(ok=True)

    inner = graph.subgraph(set(graph) - terminal)
    components = sorted(
        nx.strongly_connected_components(inner),
        key=lambda component: min(natural_key(state) for state, _belief in component),
    )
    for component in components:
        cycle = inner.subgraph(component)
        if cycle.number_of_edges() == 0:
            continue
        if semantics == Semantics.FAIR:
            stuck = None
            actors = set()
            for (state, belief) in component:
                enabled = {agent for agent, _action, _target in checker.allowed(state, checker.choice(belief))}
                stuck = enabled if stuck is None else stuck & enabled
            for _u, _v, moves in cycle.edges(data='moves'):
                actors.update(move.agent for move in moves)
            if not stuck <= actors:
                continue
        return _lasso(cycle, path_to, failure, semantics)
    return VerificationResult(ok=True)


def _lasso(cycle, path_to, failure, semantics):
    """Stem to the component, then a loop through every edge of it."""
    entry = min(cycle, key=lambda vertex: (len(path_to(vertex)[1]), natural_key(vertex[0])))
    vertices, moves = path_to(entry)
    loop_start = len(vertices) - 1
    current = entry
    for u, v in sorted(cycle.edges(), key=lambda edge: (natural_key(edge[0][0]), natural_key(edge[1][0]))):
        for step in _walk(cycle, current, u) + [(u, v)]:
            vertices.append(step[1])
            moves.append(cycle[step[0]][step[1]]['moves'][0])
        current = v
    for step in _walk(cycle, current, entry):
        vertices.append(step[1])
        moves.append(cycle[step[0]][step[1]]['moves'][0])
    kind = 'fair cycle' if semantics == Semantics.FAIR else 'cycle'
    return failure(f"{kind} avoiding the target", vertices, moves, loop_start)


def _walk(graph, source, target):
    nodes = nx.shortest_path(graph, source, target)
    return list(zip(nodes, nodes[1:]))
