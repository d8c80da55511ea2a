"""Lightweight undirected tree with traversal helpers for spanning tree metrics."""

from fx_network.data_models import CurrencyCode, SpanningTree
from fx_network.errors import NotFoundError, ValidationError

_MODULE = "net-metrics"


class TreeGraph:
    """Undirected acyclic graph over currency nodes.

    Keeps adjacency sets for traversal; rooted views (parents, subtree sizes)
    are computed on demand from any root.
    """

    def __init__(self) -> None:
        """Initialize an empty tree."""
        self._adjacent: dict[CurrencyCode, set[CurrencyCode]] = {}
        self._edge_count = 0

    @classmethod
    def from_tree(cls, tree: SpanningTree) -> "TreeGraph":
        """Build the traversal structure of a spanning tree."""
        graph = cls()
        for node in tree.nodes:
            graph.add_node(node)
        for edge in tree.edges:
            graph.add_edge(edge.source, edge.target)
        return graph

    def add_node(self, name: CurrencyCode) -> None:
        """Add a node to the graph."""
        self._adjacent.setdefault(name, set())

    def add_edge(self, a: CurrencyCode, b: CurrencyCode) -> None:
        """Connect two existing nodes.

        Raises:
            NotFoundError: If either node is unknown.
            ValidationError: If the edge is a self-loop.

        """
        if a == b:
            raise ValidationError(f"Self-loop on {a}", module=_MODULE)
        self._require(a)
        self._require(b)
        if b not in self._adjacent[a]:
            self._edge_count += 1
        self._adjacent[a].add(b)
        self._adjacent[b].add(a)

    def _require(self, node: CurrencyCode) -> None:
        if node not in self._adjacent:
            raise NotFoundError(f"Node '{node}' not found in tree", module=_MODULE, context=node)

    @property
    def nodes(self) -> list[CurrencyCode]:
        """Nodes in lexicographic order."""
        return sorted(self._adjacent)

    def degree(self, node: CurrencyCode) -> int:
        """Number of incident edges.

        Raises:
            NotFoundError: If the node is not in the tree.

        """
        self._require(node)
        return len(self._adjacent[node])

    def neighbours(self, node: CurrencyCode) -> list[CurrencyCode]:
        """Adjacent nodes in lexicographic order."""
        self._require(node)
        return sorted(self._adjacent[node])

    def is_tree(self) -> bool:
        """Connected with exactly N - 1 edges."""
        if not self._adjacent:
            return False
        return self._edge_count == len(self._adjacent) - 1 and len(
            self.reachable(self.nodes[0])
        ) == len(self._adjacent)

    def reachable(self, start: CurrencyCode) -> set[CurrencyCode]:
        """All nodes connected to start, start included."""
        self._require(start)
        visited: set[CurrencyCode] = set()
        stack = [start]
        while stack:
            current = stack.pop()
            if current in visited:
                continue
            visited.add(current)
            stack.extend(self._adjacent[current] - visited)
        return visited

    def rooted(self, root: CurrencyCode) -> tuple[dict, list[CurrencyCode]]:
        """Parent map and depth-first visiting order from a root."""
        self._require(root)
        parent: dict[CurrencyCode, CurrencyCode | None] = {root: None}
        order = []
        stack = [root]
        while stack:
            current = stack.pop()
            order.append(current)
            for nxt in self._adjacent[current]:
                if nxt not in parent:
                    parent[nxt] = current
                    stack.append(nxt)
        return parent, order

    def subtree_sizes(self, root: CurrencyCode) -> tuple[dict, dict[CurrencyCode, int]]:
        """Parent map and subtree size of every node when hanging the tree from root."""
        parent, order = self.rooted(root)
        size = dict.fromkeys(order, 1)
        for node in reversed(order):
            up = parent[node]
            if up is not None:
                size[up] += size[node]
        return parent, size

    def path(self, a: CurrencyCode, b: CurrencyCode) -> list[CurrencyCode]:
        """Unique node sequence from a to b, both ends included."""
        parent, _ = self.rooted(a)
        if b not in parent:
            raise ValidationError(f"No path between {a} and {b}", module=_MODULE)
        route = [b]
        while route[-1] != a:
            route.append(parent[route[-1]])  # type: ignore
        return route[::-1]

    def hop_counts(self, source: CurrencyCode) -> dict[CurrencyCode, int]:
        """Number of edges from source to every reachable node."""
        self._require(source)
        hops = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for node in frontier:
                for neighbour in self._adjacent[node]:
                    if neighbour not in hops:
                        hops[neighbour] = hops[node] + 1
                        nxt.append(neighbour)
            frontier = nxt
        return hops

    def get_node_stats(self) -> dict[str, int]:
        """Node, edge and leaf counts."""
        return {
            "total_nodes": len(self._adjacent),
            "total_edges": self._edge_count,
            "leaves": sum(1 for adj in self._adjacent.values() if len(adj) == 1),
            "max_degree": max((len(adj) for adj in self._adjacent.values()), default=0),
        }
