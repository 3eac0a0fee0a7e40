"""
SolutionTree entity: a tree rooted at r, stored as child -> parent pointers.
"""
from collections import deque
from typing import Optional, Dict, List, Tuple, Any, Iterable, FrozenSet

from .instance import Instance


class SolutionTree:
    """
    Rooted tree (V_T, E_T). Every member other than the root has exactly one
    parent; edge (child, parent) points toward the root.
    """

    def __init__(self, root: int, parent: Optional[Dict[int, int]] = None):
        self.root = int(root)
        self.parent: Dict[int, int] = {int(c): int(p) for c, p in (parent or {}).items()}
        self.members: FrozenSet[int] = frozenset([self.root, *self.parent.keys()])

    @classmethod
    def single(cls, root: int) -> "SolutionTree":
        return cls(root, {})

    @classmethod
    def from_undirected(cls, root: int, edges: Iterable[Tuple[int, int]]) -> "SolutionTree":
        """Orient an undirected edge set by BFS from root; edges not reached are dropped."""
        adjacency: Dict[int, List[int]] = {}
        for a, b in edges:
            adjacency.setdefault(a, []).append(b)
            adjacency.setdefault(b, []).append(a)
        parent: Dict[int, int] = {}
        seen = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(adjacency.get(u, [])):
                if v not in seen:
                    seen.add(v)
                    parent[v] = u
                    queue.append(v)
        return cls(root, parent)

    def validate(self, instance: Optional[Instance] = None) -> Dict[str, str]:
        """
        Check the tree invariants (and edge existence when an instance is given).
        Returns a dictionary of field names to error messages.
        """
        errors = {}
        if self.root in self.parent:
            errors["root"] = "Root cannot have a parent"
        for child, par in self.parent.items():
            if par not in self.members:
                errors["parent"] = f"Parent {par} of {child} is not a member"
                break
        if "parent" not in errors:
            for start in self.parent:
                seen = set()
                v = start
                while v != self.root:
                    if v in seen or v not in self.parent:
                        errors["acyclic"] = f"Vertex {start} does not reach the root"
                        break
                    seen.add(v)
                    v = self.parent[v]
                if "acyclic" in errors:
                    break
        if instance is not None:
            if not 0 <= self.root < instance.num_vertices:
                errors["root"] = "Root out of range"
            for child, par in self.parent.items():
                if not instance.has_edge(child, par):
                    errors["edges"] = f"Edge ({child}, {par}) not in instance"
                    break
        return errors

    def edges(self) -> List[Tuple[int, int]]:
        """Tree edges as sorted (child, parent) pairs."""
        return sorted(self.parent.items())

    def children(self) -> Dict[int, List[int]]:
        kids: Dict[int, List[int]] = {v: [] for v in self.members}
        for child, par in sorted(self.parent.items()):
            kids[par].append(child)
        return kids

    def depths(self) -> Dict[int, int]:
        """Hop distance to the root for every member."""
        kids = self.children()
        depth = {self.root: 0}
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            for v in kids[u]:
                depth[v] = depth[u] + 1
                queue.append(v)
        return depth

    def height(self) -> int:
        return max(self.depths().values())

    def degree(self, vertex: int) -> int:
        """Tree degree: parent edge plus child edges."""
        deg = 1 if vertex in self.parent else 0
        return deg + sum(1 for p in self.parent.values() if p == vertex)

    def leaves(self) -> List[int]:
        kids = self.children()
        return sorted(v for v in self.members if v != self.root and not kids[v])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "root": self.root,
            "members": sorted(self.members),
            "edges": self.edges(),
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SolutionTree):
            return NotImplemented
        return self.root == other.root and self.parent == other.parent

    def __hash__(self) -> int:
        return hash((self.root, tuple(self.edges())))

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"SolutionTree(root={self.root}, members={len(self.members)})"
