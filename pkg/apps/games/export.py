"""
DOT export of belief arenas and strategy-trimmed product graphs.
"""
import logging

import networkx as nx
from networkx.drawing.nx_pydot import write_dot as _write_dot

from .models import describe_choice
from .product import explore_product

logger = logging.getLogger(__name__)


def _node_label(node):
    return f"{node.label}\\n{{{', '.join(node.sorted_belief())}}}"


def arena_to_graph(arena) -> nx.MultiDiGraph:
    graph = nx.MultiDiGraph(name=f"arena_{arena.network.name}_{arena.attacker}")
    for node in arena.nodes:
        graph.add_node(f"n{node.index}", label=_node_label(node), shape='box')
    for (index, choice), outcomes in sorted(
        arena.edges.items(), key=lambda item: (item[0][0], describe_choice(item[0][1]))
    ):
        seen = set()
        for outcome in outcomes:
            key = (outcome.successor, outcome.label)
            if key in seen:
                continue
            seen.add(key)
            graph.add_edge(
                f"n{index}", f"n{outcome.successor}",
                label=f"{describe_choice(choice)} / {outcome.label}",
            )
    return graph


def strategy_assignment(arena, strategy):
    """Arena node index to choice for every belief the strategy covers."""
    return {
        arena.index_of[belief]: choice
        for belief, choice in strategy.choices.items() if belief in arena.index_of
    }


def product_to_graph(arena, strategy, goal, semantics) -> nx.DiGraph:
    exploration = explore_product(arena, strategy_assignment(arena, strategy), goal, semantics)
    graph = nx.DiGraph(name=f"product_{arena.network.name}_{arena.attacker}")
    for state, index in exploration.graph.nodes:
        graph.add_node(
            f"{state}_n{index}",
            label=f"{state}\\n{arena.nodes[index].label}",
            shape='doublecircle' if state in goal.states else 'circle',
        )
    for (state, index), (target, target_index), actors in exploration.graph.edges(data='actors'):
        graph.add_edge(
            f"{state}_n{index}", f"{target}_n{target_index}", label=','.join(sorted(actors)),
        )
    return graph


def write_dot(graph, path):
    logger.debug(f"Writing {graph.graph.get('name', 'graph')} to {path}")
    _write_dot(graph, path)
