"""
Product of the network with the belief arena under a (partial) strategy,
and the losing structures the solvers look for in it.
"""
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from apps.core.models import natural_key

from .models import Semantics


@dataclass
class ProductExploration:
    """Vertices are (state, node index); `pending` lists nodes still lacking a choice"""
    graph: nx.DiGraph
    expanded: set = field(default_factory=set)
    pending: set = field(default_factory=set)
    losing: Optional[dict] = None


def _vertex_key(vertex):
    state, index = vertex
    return (natural_key(state), index)


def explore_product(arena, assignment, goal, semantics) -> ProductExploration:
    net = arena.network
    target = goal.states
    start = (net.initial, arena.initial)
    graph = nx.DiGraph()
    graph.add_node(start)
    exploration = ProductExploration(graph=graph)
    queue = deque([start])
    seen = {start}

    while queue:
        vertex = queue.popleft()
        state, index = vertex
        if state in target:
            if goal.is_safety:
                exploration.losing = {'kind': 'unsafe', 'vertex': vertex}
                return exploration
            continue
        if index not in assignment:
            exploration.pending.add(index)
            continue

        choice = assignment[index]
        label = arena.nodes[index].label
        exploration.expanded.add(vertex)
        for agent, action, successor_state in net.outgoing[state]:
            if not arena.allows(agent, action, choice):
                continue
            successor_label = net.observe(successor_state, arena.attacker)
            if successor_label == label:
                successor_index = index
            else:
                successor_index = arena.successor(index, choice, successor_label)
            successor = (successor_state, successor_index)
            if graph.has_edge(vertex, successor):
                graph[vertex][successor]['actors'].add(agent)
            else:
                graph.add_edge(vertex, successor, actors={agent})
            if successor not in seen:
                seen.add(successor)
                queue.append(successor)

    if not goal.is_safety:
        exploration.losing = _losing_reachability_structure(arena, assignment, exploration, semantics)
    return exploration


def _losing_reachability_structure(arena, assignment, exploration, semantics):
    graph = exploration.graph
    for vertex in sorted(exploration.expanded, key=_vertex_key):
        if graph.out_degree(vertex) == 0:
            return {'kind': 'deadlock', 'vertex': vertex}

    inner = graph.subgraph(exploration.expanded)
    components = sorted(
        (sorted(component, key=_vertex_key) for component in nx.strongly_connected_components(inner)),
        key=lambda component: _vertex_key(component[0]),
    )
    for component in components:
        members = set(component)
        edges = [(u, v) for u, v in inner.edges(component) if v in members]
        if not edges:
            continue
        if semantics == Semantics.STRICT:
            return {'kind': 'cycle', 'vertices': component}
        always_enabled = None
        for state, index in component:
            enabled = arena.enabled(state, assignment[index])
            always_enabled = enabled if always_enabled is None else always_enabled & enabled
        actors = set().union(*(inner[u][v]['actors'] for u, v in edges))
        if always_enabled <= actors:
            return {'kind': 'fair-cycle', 'vertices': component}
    return None
