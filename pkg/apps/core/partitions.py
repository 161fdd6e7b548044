"""
Equivalence relations kept as their blocks.
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class Partition:
    """Disjoint, nonempty blocks; subclasses fix how members sort"""
    blocks: frozenset

    def __post_init__(self):
        blocks = frozenset(frozenset(block) for block in self.blocks)
        object.__setattr__(self, 'blocks', blocks)
        index = {}
        for block in blocks:
            if not block:
                raise ValueError('Partition blocks must be nonempty')
            for member in block:
                if member in index:
                    raise ValueError(f"'{member}' appears in two blocks")
                index[member] = block
        object.__setattr__(self, '_index', index)

    @staticmethod
    def sort_key(member):
        return member

    @classmethod
    def identity(cls, members):
        return cls(frozenset({member}) for member in members)

    @classmethod
    def single_block(cls, members):
        return cls([frozenset(members)])

    @property
    def elements(self):
        return frozenset(self._index)

    def block_of(self, member):
        return self._index[member]

    def related(self, first, second):
        return second in self._index.get(first, ())

    def refines(self, other):
        """True if every block lies inside one block of `other`."""
        return all(block <= other.block_of(next(iter(block))) for block in self.blocks)

    def is_identity(self):
        return all(len(block) == 1 for block in self.blocks)

    def sorted_blocks(self):
        ordered = [sorted(block, key=self.sort_key) for block in self.blocks]
        return sorted(ordered, key=lambda block: self.sort_key(block[0]))

    def pairs(self):
        return frozenset(
            (first, second) for block in self.blocks for first in block for second in block
        )

    def __len__(self):
        return len(self.blocks)
