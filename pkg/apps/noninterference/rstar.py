"""
R*: the least equivalence on states containing every High step and closed
under Low actions defined at both related states.

Computed as a congruence closure: every union-find class remembers, per Low
personalized action, one successor of its members, and merging two classes
queues the merge of their successors for shared keys.
"""
import logging
from collections import deque

from apps.core.semantics import reachable_states
from apps.core.unionfind import UnionFind

from .models import StatePartition

logger = logging.getLogger(__name__)


def compute_rstar(net, reachable_only=True) -> StatePartition:
    """
    R* over the states reachable from the initial state.

    Unreachable states stay in singleton blocks unless `reachable_only` is
    False, in which case every state seeds the closure.
    """
    scope = reachable_states(net) if reachable_only else net.states
    states = net.sorted_states()
    forest = UnionFind(states)

    low_successors = {}
    pending = deque()
    for state in states:
        if state not in scope:
            continue
        low_successors[state] = {}
        for agent, action, target in net.outgoing[state]:
            if agent in net.high:
                pending.append((state, target))
            elif agent in net.low:
                low_successors[state][(agent, action)] = target

    merges = 0
    while pending:
        first, second = pending.popleft()
        root_first, root_second = forest.find(first), forest.find(second)
        if root_first == root_second:
            continue
        forest.union(root_first, root_second)
        merges += 1
        root = forest.find(root_first)
        absorbed = root_second if root == root_first else root_first
        kept = low_successors[root]
        for key, target in low_successors.pop(absorbed).items():
            if key in kept:
                pending.append((kept[key], target))
            else:
                kept[key] = target

    partition = StatePartition(forest.groups())
    logger.debug(f"R* of {net.name}: {len(partition)} blocks after {merges} merges")
    return partition
