"""
Observation unification: U*, its application to a network, and the
noninterferent idealized variant of a network.
"""
import logging

from apps.core.exceptions import InputError
from apps.core.semantics import is_total, reachable_states, totalize_low
from apps.core.unionfind import UnionFind
from apps.core.validation import validate_network
from apps.noninterference.rstar import compute_rstar

from .models import IdealizationResult, ObservationPartition

logger = logging.getLogger(__name__)

TOTAL = 'total'
PTN = 'ptn'


def compute_ustar(net) -> ObservationPartition:
    """Equivalence closure of the Low observations of R*-related states."""
    scope = reachable_states(net)
    forest = UnionFind(sorted(net.observations))
    for block in compute_rstar(net).sorted_blocks():
        members = [state for state in block if state in scope]
        for agent in sorted(net.low):
            labels = [net.observe(state, agent) for state in members]
            for label in labels[1:]:
                forest.union(labels[0], label)
    return ObservationPartition(forest.groups())


def literal_ustar(net) -> frozenset:
    """
    Label pairs (o1, o2) such that some Low agent l and states s1 R* t1,
    s2 R* t2 have obs(s1,l)=o1, obs(s2,l)=o2 and obs(t1,l)=obs(t2,l).
    """
    scope = reachable_states(net)
    blocks = [
        [state for state in block if state in scope]
        for block in compute_rstar(net).sorted_blocks()
    ]
    blocks = [block for block in blocks if block]
    pairs = set()
    for agent in net.low:
        label_sets = [frozenset(net.observe(state, agent) for state in block) for block in blocks]
        for first in label_sets:
            for second in label_sets:
                if first & second:
                    pairs.update((left, right) for left in first for right in second)
    return frozenset(pairs)


def apply_unification(net, unification):
    """Replace every observation, High ones included, by the name of its block."""
    if unification.elements != net.observations:
        missing = sorted(net.observations - unification.elements)
        extra = sorted(unification.elements - net.observations)
        raise InputError(
            f"Unification does not partition the observations of {net.name} "
            f"(missing: {missing}, unknown: {extra})"
        )
    renaming = unification.renaming()
    return net.with_changes(
        observations=set(renaming.values()),
        obs={key: renaming[label] for key, label in net.obs.items()},
    )


def idealize(net) -> IdealizationResult:
    """
    The unique noninterferent idealized variant.

    Partial networks are first made total for their Low agents.
    """
    provenance = TOTAL if is_total(net) else PTN
    base = net if provenance == TOTAL else totalize_low(net)
    unification = compute_ustar(base)
    merged = [block for block in unification.sorted_blocks() if len(block) > 1]
    logger.info(f"Idealizing {net.name} ({provenance}): {len(merged)} merged observation classes")
    return IdealizationResult(
        network=apply_unification(base, unification),
        unification=unification,
        provenance=provenance,
    )


def high_awareness_warnings(result) -> list:
    """Availability-awareness breaches of High agents introduced by the unification."""
    net = result.network
    return [
        violation.message
        for violation in validate_network(net).of_kind('availability-awareness')
        if violation.items[0] in net.high
    ]
