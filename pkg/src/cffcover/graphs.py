"""Labeled graphs for the bi-intersection, subset, K-minus and complete
families, plus matching, vertex cover, induced matching, C4 and degree
queries.

Vertices are integers ``0..n-1``. In a bipartite graph the left class comes
first. Every label is a sorted tuple of 1-based ints; singleton tuples are
used for index-labeled families so all labels share one shape.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BudgetError, DomainError, ParseError, UnsupportedError

MAX_SUBSET_T = 16
# I_7(3,3) has 70 vertices; the induced-matching and biclique checks run there.
DEFAULT_MAX_VERTICES = 80

Label = tuple[int, ...]


class LabeledGraph:
    """Immutable simple graph with per-vertex labels.

    ``n_left`` is ``None`` for a general graph; otherwise vertices
    ``0..n_left-1`` form the left class and the rest the right class.
    """

    def __init__(
        self,
        labels: Sequence[Label],
        edges: Iterable[tuple[int, int]],
        n_left: int | None = None,
        family: str = "custom",
    ):
        self.labels: tuple[Label, ...] = tuple(tuple(lab) for lab in labels)
        self.n_left = n_left
        self.family = family
        n = len(self.labels)
        if n_left is not None and not 0 <= n_left <= n:
            raise DomainError("n_left out of range")
        for cls in self.classes():
            seen = set()
            for v in cls:
                if self.labels[v] in seen:
                    raise DomainError(f"duplicate label {self.labels[v]} within a class")
                seen.add(self.labels[v])
        adj = [0] * n
        edge_set = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) references a missing vertex")
            if u == v:
                raise DomainError("self-loops are not allowed")
            if u > v:
                u, v = v, u
            if n_left is not None and not (u < n_left <= v):
                raise DomainError(f"edge ({u}, {v}) does not cross the bipartition")
            edge_set.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj: tuple[int, ...] = tuple(adj)
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(edge_set))
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        self._label_index = [
            {self.labels[v]: v for v in cls} for cls in self.classes()
        ]

    @property
    def is_bipartite(self) -> bool:
        return self.n_left is not None

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def classes(self) -> list[range]:
        n = len(self.labels)
        if self.n_left is None:
            return [range(n)]
        return [range(self.n_left), range(self.n_left, n)]

    @property
    def left(self) -> range:
        if self.n_left is None:
            raise UnsupportedError("general graph has no left class")
        return range(self.n_left)

    @property
    def right(self) -> range:
        if self.n_left is None:
            raise UnsupportedError("general graph has no right class")
        return range(self.n_left, len(self.labels))

    def side(self, v: int) -> int:
        """0 for the left class (or a general graph), 1 for the right class."""
        return 0 if self.n_left is None or v < self.n_left else 1

    def vertex(self, label: Sequence[int], side: int = 0) -> int:
        try:
            return self._label_index[side][tuple(label)]
        except (KeyError, IndexError):
            raise KeyError(f"no vertex labeled {tuple(label)} on side {side}") from None

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edge_key(self) -> frozenset:
        """Edges as (side, label) pairs, for comparing graphs across vertex orders."""
        return frozenset(
            frozenset({(self.side(u), self.labels[u]), (self.side(v), self.labels[v])})
            for u, v in self.edges
        )

    def __repr__(self):
        kind = "bipartite" if self.is_bipartite else "general"
        return f"LabeledGraph({self.family}, {kind}, |V|={self.n_vertices}, |E|={self.n_edges})"

    # --- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        if self.is_bipartite:
            return {
                "kind": "bipartite",
                "family": self.family,
                "left": [list(self.labels[v]) for v in self.left],
                "right": [list(self.labels[v]) for v in self.right],
                "edges": [[u, v - self.n_left] for u, v in self.edges],
            }
        return {
            "kind": "general",
            "family": self.family,
            "labels": [list(lab) for lab in self.labels],
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LabeledGraph":
        try:
            kind = data["kind"]
            family = data.get("family", "custom")
            if kind == "bipartite":
                left = [tuple(x) for x in data["left"]]
                right = [tuple(x) for x in data["right"]]
                nl = len(left)
                edges = [(u, nl + v) for u, v in data["edges"]]
                for u, v in data["edges"]:
                    if not (0 <= u < nl and 0 <= v < len(right)):
                        raise ParseError(f"edge [{u}, {v}] out of range")
                return cls(left + right, edges, nl, family)
            if kind == "general":
                return cls([tuple(x) for x in data["labels"]], [tuple(e) for e in data["edges"]], None, family)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed graph document: {exc}") from None
        raise ParseError(f"unknown graph kind {kind!r}")

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "LabeledGraph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc), exc.lineno) from None
        return cls.from_dict(data)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# --- builders ------------------------------------------------------------


def _subsets(t: int, k: int) -> list[Label]:
    return list(combinations(range(1, t + 1), k))


def _check_subset_family(t: int, small: int, big: int) -> None:
    if not 0 < small <= big <= t:
        raise DomainError(f"need 0 < {small} <= {big} <= t = {t}")
    if t > MAX_SUBSET_T:
        raise DomainError(f"subset-labeled families are capped at t <= {MAX_SUBSET_T}")


def bi_intersection(t: int, r: int, w: int) -> LabeledGraph:
    """I_t(r, w): r-subsets on the left, w-subsets on the right, adjacent iff disjoint."""
    _check_subset_family(t, w, r)
    left = _subsets(t, r)
    right = _subsets(t, w)
    nl = len(left)
    right_masks = [sum(1 << x for x in v) for v in right]
    edges = []
    for i, u in enumerate(left):
        um = sum(1 << x for x in u)
        for j, vm in enumerate(right_masks):
            if not um & vm:
                edges.append((i, nl + j))
    return LabeledGraph(left + right, edges, nl, f"it:{t},{r},{w}")


def subset_graph(t: int, w: int, r: int) -> LabeledGraph:
    """S_t(w, r): w-subsets on the left, r-subsets on the right, adjacent iff nested."""
    _check_subset_family(t, w, r)
    left = _subsets(t, w)
    right = _subsets(t, r)
    nl = len(left)
    edges = []
    for i, u in enumerate(left):
        us = set(u)
        for j, v in enumerate(right):
            if us.issubset(v):
                edges.append((i, nl + j))
    return LabeledGraph(left + right, edges, nl, f"subset:{t},{w},{r}")


def kminus(n: int) -> LabeledGraph:
    """K_{n,n} with the perfect matching v_i v'_i removed."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    labels = [(i,) for i in range(1, n + 1)]
    edges = [(i, n + j) for i in range(n) for j in range(n) if i != j]
    return LabeledGraph(labels + labels, edges, n, f"kminus:{n}")


def complete(n: int) -> LabeledGraph:
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    return LabeledGraph(
        [(i,) for i in range(1, n + 1)], combinations(range(n), 2), None, f"complete:{n}"
    )


def _ints(text: str, count: int, family: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise DomainError(f"bad parameters {text!r} for {family}") from None
    if len(values) != count:
        raise DomainError(f"{family} takes {count} parameter(s), got {text!r}")
    return values


def build_graph(family: str) -> LabeledGraph:
    """Build a graph from a descriptor such as ``it:4,2,1``, ``subset:5,2,3``,
    ``kminus:3`` or ``complete:4``."""
    name, _, params = family.partition(":")
    if name in ("it", "bi_intersection"):
        return bi_intersection(*_ints(params, 3, name))
    if name in ("subset", "st"):
        return subset_graph(*_ints(params, 3, name))
    if name == "kminus":
        return kminus(*_ints(params, 1, name))
    if name == "complete":
        return complete(*_ints(params, 1, name))
    raise DomainError(f"unknown graph family {family!r}")


# --- classical quantities --------------------------------------------------


def _require_bipartite(g: LabeledGraph, what: str) -> None:
    if not g.is_bipartite:
        raise UnsupportedError(f"{what} is only implemented for bipartite graphs")


def _matching(g: LabeledGraph) -> dict[int, int]:
    """Maximum matching by augmenting paths; maps each matched right vertex to its partner."""
    match_right: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for v in _bits(g.adj[u]):
            if v in seen:
                continue
            seen.add(v)
            if v not in match_right or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in g.left:
        augment(u, set())
    return match_right


def max_matching(g: LabeledGraph) -> int:
    _require_bipartite(g, "max_matching")
    return len(_matching(g))


def min_vertex_cover(g: LabeledGraph) -> list[int]:
    """A minimum vertex cover of a bipartite graph, built from a maximum
    matching by alternating-path reachability."""
    _require_bipartite(g, "min_vertex_cover")
    match_right = _matching(g)
    match_left = {u: v for v, u in match_right.items()}
    reached_left = {u for u in g.left if u not in match_left}
    reached_right: set[int] = set()
    frontier = list(reached_left)
    while frontier:
        u = frontier.pop()
        for v in _bits(g.adj[u]):
            if v in reached_right:
                continue
            reached_right.add(v)
            partner = match_right.get(v)
            if partner is not None and partner not in reached_left:
                reached_left.add(partner)
                frontier.append(partner)
    cover = [u for u in g.left if u not in reached_left] + sorted(reached_right)
    return cover


def vertex_cover_number(g: LabeledGraph) -> int:
    return len(min_vertex_cover(g))


def _check_size(g: LabeledGraph, max_vertices: int) -> None:
    if g.n_vertices > max_vertices:
        raise BudgetError(f"graph has {g.n_vertices} vertices; cap is {max_vertices}")


def max_induced_matching(g: LabeledGraph, max_vertices: int = DEFAULT_MAX_VERTICES) -> int:
    """Size of a largest induced matching, by branch and bound.

    Two edges can sit together in an induced matching when they share no
    endpoint and no edge joins them; the search looks for a maximum clique of
    that compatibility relation, bounding each node by a greedy colouring.
    """
    _check_size(g, max_vertices)
    return len(_induced_matching_search(g))


def induced_matching(g: LabeledGraph, max_vertices: int = DEFAULT_MAX_VERTICES) -> list[tuple[int, int]]:
    """A maximum induced matching (edges as vertex pairs)."""
    _check_size(g, max_vertices)
    return [g.edges[i] for i in _induced_matching_search(g)]


def _induced_matching_search(g: LabeledGraph) -> list[int]:
    m = g.n_edges
    if m == 0:
        return []
    closed = [g.adj[v] | (1 << v) for v in range(g.n_vertices)]
    compat = [0] * m
    for a in range(m):
        u1, v1 = g.edges[a]
        blocked = closed[u1] | closed[v1]
        for b in range(a + 1, m):
            u2, v2 = g.edges[b]
            if not (blocked >> u2 & 1 or blocked >> v2 & 1):
                compat[a] |= 1 << b
                compat[b] |= 1 << a

    # greedy lower bound: lowest index first
    best: list[int] = []
    cand = (1 << m) - 1
    while cand:
        low = cand & -cand
        e = low.bit_length() - 1
        best.append(e)
        cand &= compat[e]
    best = list(best)

    def colour_order(cand: int) -> list[tuple[int, int]]:
        """Greedy colouring of the candidate set; returns (vertex, colour bound) pairs."""
        order = []
        uncoloured = cand
        colour = 0
        while uncoloured:
            colour += 1
            avail = uncoloured
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                uncoloured ^= low
                avail &= ~compat[v] & ~low
                order.append((v, colour))
        return order

    current: list[int] = []

    def expand(cand: int) -> None:
        nonlocal best
        for v, bound in reversed(colour_order(cand)):
            if len(current) + bound <= len(best):
                return
            current.append(v)
            new = cand & compat[v]
            if new:
                expand(new)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            cand &= ~(1 << v)

    expand((1 << m) - 1)
    return sorted(best)


def has_c4(g: LabeledGraph) -> bool:
    n = g.n_vertices
    for u in range(n):
        for v in range(u + 1, n):
            if (g.adj[u] & g.adj[v]).bit_count() >= 2:
                return True
    return False


def is_c4_free(g: LabeledGraph) -> bool:
    """True iff no two vertices have two common neighbours."""
    return not has_c4(g)


def max_degree(g: LabeledGraph) -> int:
    return max((g.degree(v) for v in range(g.n_vertices)), default=0)
