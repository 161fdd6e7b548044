"""
Exhaustive minimality check of a unification: no strictly finer partition
may already make the network noninterferent.
"""
import logging
from itertools import product
from math import prod

from apps.core.conf import effsec_settings
from apps.core.exceptions import BudgetExceededError
from apps.core.semantics import totalize_low
from apps.noninterference.checks import check_ni_exact

from .models import MinimalityReport, ObservationPartition
from .unification import apply_unification

logger = logging.getLogger(__name__)


def bell_number(size):
    row = [1]
    for _ in range(size):
        next_row = [row[-1]]
        for value in row:
            next_row.append(next_row[-1] + value)
        row = next_row
    return row[0]


def set_partitions(items):
    """Every partition of `items` as a list of lists."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in set_partitions(rest):
        yield [[first]] + partial
        for index in range(len(partial)):
            yield partial[:index] + [[first] + partial[index]] + partial[index + 1:]


def strict_refinements(unification):
    """All partitions strictly finer than `unification`, finest first."""
    per_block = [list(set_partitions(sorted(block))) for block in unification.sorted_blocks()]
    candidates = []
    for choice in product(*per_block):
        blocks = [frozenset(group) for split in choice for group in split]
        if len(blocks) > len(unification):
            candidates.append(ObservationPartition(blocks))
    candidates.sort(key=lambda part: (-len(part), part.sorted_blocks()))
    return candidates


def check_minimality(net, unification, budget=None) -> MinimalityReport:
    budget = effsec_settings('REFINEMENT_BUDGET') if budget is None else budget
    count = prod(bell_number(len(block)) for block in unification.blocks) - 1
    if count > budget:
        raise BudgetExceededError(f"{count} refinements of the unification", budget)

    base = totalize_low(net)
    for checked, refinement in enumerate(strict_refinements(unification), start=1):
        if check_ni_exact(apply_unification(base, refinement)).holds:
            logger.info(f"Unification of {net.name} is not minimal: a finer one suffices")
            return MinimalityReport(minimal=False, checked=checked, witness=refinement)
    return MinimalityReport(minimal=True, checked=count)
