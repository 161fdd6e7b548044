"""
Disjoint-set forest used by the R* and U* closures.
"""
from collections.abc import Hashable, Iterable


class UnionFind:
    """Union-Find with path compression and union by rank."""

    def __init__(self, elements: Iterable[Hashable]) -> None:
        elements = list(elements)
        self.parent = {el: el for el in elements}
        self.rank = dict.fromkeys(elements, 0)

    def find(self, item: Hashable) -> Hashable:
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, left: Hashable, right: Hashable) -> bool:
        """Merge the two sets; return False if they were already one."""
        root_left = self.find(left)
        root_right = self.find(right)
        if root_left == root_right:
            return False

        if self.rank[root_left] < self.rank[root_right]:
            root_left, root_right = root_right, root_left
        self.parent[root_right] = root_left
        if self.rank[root_left] == self.rank[root_right]:
            self.rank[root_left] += 1
        return True

    def connected(self, left: Hashable, right: Hashable) -> bool:
        return self.find(left) == self.find(right)

    def groups(self) -> list[frozenset]:
        members = {}
        for element in self.parent:
            members.setdefault(self.find(element), set()).add(element)
        return [frozenset(group) for group in members.values()]
