"""
Noninterference checks: unwinding conditions, the exact decision via R*, and
the bounded purge-based oracle.
"""
import logging

from apps.core.models import UNDEFINED, PersonalizedAction, natural_sorted
from apps.core.semantics import execute, purge, reachable_states

from .models import NIVerdict, SequenceWitness, StatePairWitness, UnwindingReport
from .rstar import compute_rstar

logger = logging.getLogger(__name__)


def check_unwinding(net, part, reachable_only=True) -> UnwindingReport:
    """Evaluate OC, SC and LR of `part` on the (reachable) states of `net`."""
    scope = reachable_states(net) if reachable_only else net.states
    low = sorted(net.low)

    oc_failures, sc_failures, lr_failures = [], [], []
    for block in part.sorted_blocks():
        members = [state for state in block if state in scope]
        if not members:
            continue
        reference = members[0]
        for state in members[1:]:
            for agent in low:
                if net.observe(reference, agent) != net.observe(state, agent):
                    oc_failures.append((reference, state, agent))

        first_with_key = {}
        for state in members:
            for agent, action, target in net.outgoing[state]:
                if agent not in net.low:
                    continue
                key = (agent, action)
                if key not in first_with_key:
                    first_with_key[key] = (state, target)
                    continue
                other, other_target = first_with_key[key]
                if not part.related(other_target, target):
                    sc_failures.append((other, state, agent, action))

    for state in natural_sorted(scope):
        for agent, action, target in net.outgoing[state]:
            if agent in net.high and not part.related(state, target):
                lr_failures.append((state, agent, action))

    return UnwindingReport(
        oc=not oc_failures,
        sc=not sc_failures,
        lr=not lr_failures,
        oc_counterexamples=tuple(oc_failures),
        sc_counterexamples=tuple(sc_failures),
        lr_counterexamples=tuple(lr_failures),
    )


def check_ni_exact(net) -> NIVerdict:
    """Noninterference holds iff R* is output consistent."""
    part = compute_rstar(net)
    report = check_unwinding(net, part)
    if report.oc:
        return NIVerdict(holds=True, method='exact')

    first, second, agent = report.oc_counterexamples[0]
    witness = StatePairWitness(
        first=first,
        second=second,
        agent=agent,
        first_observation=net.observe(first, agent),
        second_observation=net.observe(second, agent),
    )
    logger.info(f"{net.name} violates noninterference: {witness}")
    return NIVerdict(holds=False, method='exact', witness=witness)


def _moves(net, state):
    for agent, action, target in net.outgoing.get(state, ()):
        yield PersonalizedAction(agent, action), target


def _observation_gap(net, state, purged_state):
    for agent in sorted(net.low):
        if net.observe(state, agent) != net.observe(purged_state, agent):
            return agent
    return None


def check_ni_bounded(net, depth) -> NIVerdict:
    """
    Search sequences of length <= `depth` for a Low-visible effect of High moves.

    Breadth-first over pairs (exec(alpha), exec(purge(alpha))); a pair already
    reached by a shorter sequence is not expanded again. Sequences whose purge
    is undefined are not violations.
    """
    if depth < 0:
        raise ValueError('depth must be non-negative')
    method = f"bounded({depth})"
    start = (net.initial, net.initial)
    visited = {start}
    frontier = [(start, ())]

    for _length in range(depth):
        successors = []
        for (state, purged_state), alpha in frontier:
            for item, target in _moves(net, state):
                if item.agent in net.high:
                    purged_target = purged_state
                else:
                    purged_target = net.successor(purged_state, item.agent, item.action)
                    if purged_target is UNDEFINED:
                        continue
                pair = (target, purged_target)
                if pair in visited:
                    continue
                visited.add(pair)
                extended = alpha + (item,)
                agent = _observation_gap(net, target, purged_target)
                if agent is not None:
                    witness = SequenceWitness(
                        alpha=extended,
                        purged=purge(extended, net.high),
                        agent=agent,
                        observation=net.observe(target, agent),
                        purged_observation=net.observe(purged_target, agent),
                    )
                    return NIVerdict(holds=False, method=method, witness=witness, depth=depth)
                successors.append((pair, extended))
        if not successors:
            break
        frontier = successors

    return NIVerdict(holds=True, method=method, depth=depth)


def iter_ni_violations(net, depth):
    """Yield a witness for every violating sequence of length <= `depth`, depth-first."""
    def explore(state, alpha):
        if len(alpha) == depth:
            return
        for item, target in _moves(net, state):
            extended = alpha + (item,)
            purged = purge(extended, net.high)
            purged_state = execute(net, net.initial, purged)
            if purged_state is UNDEFINED:
                continue
            for agent in sorted(net.low):
                if net.observe(target, agent) != net.observe(purged_state, agent):
                    yield SequenceWitness(
                        alpha=extended,
                        purged=purged,
                        agent=agent,
                        observation=net.observe(target, agent),
                        purged_observation=net.observe(purged_state, agent),
                    )
            yield from explore(target, extended)

    yield from explore(net.initial, ())


def replay_witness(net, witness) -> bool:
    """Re-evaluate a witness and confirm the observations really differ."""
    if isinstance(witness, StatePairWitness):
        part = compute_rstar(net)
        first = net.observe(witness.first, witness.agent)
        second = net.observe(witness.second, witness.agent)
        return part.related(witness.first, witness.second) and first != second

    state = execute(net, net.initial, witness.alpha)
    purged_state = execute(net, net.initial, purge(witness.alpha, net.high))
    if state is UNDEFINED or purged_state is UNDEFINED:
        return False
    observed = net.observe(state, witness.agent)
    purged_observed = net.observe(purged_state, witness.agent)
    return (
        observed == witness.observation
        and purged_observed == witness.purged_observation
        and observed != purged_observed
    )
