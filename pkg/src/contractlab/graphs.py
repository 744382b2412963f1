"""Interaction digraph of a matrix and the reachability predicates used
by the graph-based necessary condition for set-contractivity.

The interaction digraph of A is the directed graph of A^T: edge i -> j is
present iff A[j, i] is structurally nonzero, i.e. j's update depends on i
and influence flows from i to j.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .matcore import as_matrix


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: tuple[frozenset, ...]  # edges[i] = successor set of vertex i

    def __post_init__(self):
        if self.n < 1 or len(self.edges) != self.n:
            raise ValueError("edge list length must equal vertex count")
        for succ in self.edges:
            for j in succ:
                if not 0 <= j < self.n:
                    raise ValueError(f"vertex index {j} out of range")

    def to_json(self) -> dict:
        pairs = sorted((i, j) for i in range(self.n) for j in self.edges[i])
        return {"n": self.n, "edges": [list(p) for p in pairs]}


def digraph_from_edges(n: int, pairs) -> Digraph:
    succ = [set() for _ in range(n)]
    for i, j in pairs:
        succ[i].add(j)
    return Digraph(n, tuple(frozenset(s) for s in succ))


def interaction_digraph(A) -> Digraph:
    """Digraph with edge i -> j iff |A[j, i]| > zero_tol."""
    A = as_matrix(A)
    nz = A.nonzero_pattern()
    succ = [frozenset(int(j) for j in nz[:, i].nonzero()[0]) for i in range(A.n)]
    return Digraph(A.n, tuple(succ))


def _reachable(G: Digraph, root: int) -> set:
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in G.edges[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def has_spanning_directed_tree(G: Digraph) -> tuple[bool, int | None]:
    """Whether some root vertex reaches every vertex by directed paths.

    Returns (True, root) with the smallest such root, or (False, None).
    Self-loops are irrelevant to reachability.
    """
    for root in range(G.n):
        if len(_reachable(G, root)) == G.n:
            return True, root
    return False, None


def is_irreducible(G: Digraph) -> bool:
    """True iff G is strongly connected."""
    if len(_reachable(G, 0)) != G.n:
        return False
    rev = [set() for _ in range(G.n)]
    for i in range(G.n):
        for j in G.edges[i]:
            rev[j].add(i)
    reverse = Digraph(G.n, tuple(frozenset(s) for s in rev))
    return len(_reachable(reverse, 0)) == G.n
