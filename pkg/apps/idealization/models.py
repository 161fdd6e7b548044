"""
Idealization models: observation unifications and their results.
"""
from dataclasses import dataclass
from typing import Optional

from apps.core.exceptions import InputError
from apps.core.partitions import Partition


def _members(label):
    if label.startswith('{') and label.endswith('}') and '+' in label:
        return label[1:-1].split('+')
    return [label]


def block_name(block):
    """Singleton blocks keep their label; larger ones become `{a+b+c}`."""
    if len(block) == 1:
        return next(iter(block))
    members = sorted({member for label in block for member in _members(label)})
    return '{' + '+'.join(members) + '}'


class ObservationPartition(Partition):
    """Unification of observation labels"""

    def renaming(self):
        """Label to block name; two blocks flattening to one name are rejected."""
        owners = {}
        for block in self.sorted_blocks():
            name = block_name(block)
            if name in owners:
                raise InputError(
                    f"Observation classes {{{', '.join(owners[name])}}} and {{{', '.join(block)}}} "
                    f"would both be named '{name}'"
                )
            owners[name] = block
        return {label: block_name(block) for block in self.blocks for label in block}


@dataclass(frozen=True)
class IdealizationResult:
    network: object
    unification: ObservationPartition
    provenance: str


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    checked: int
    witness: Optional[ObservationPartition] = None
