"""Biclique covers: validation, maximal biclique enumeration, an exact
branch-and-bound solver for the d-biclique covering number, and closed-form
fractional covering numbers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .combinatorics import binomial
from .errors import BudgetError, DomainError, ParseError, StructuralError
from .graphs import (
    DEFAULT_MAX_VERTICES,
    LabeledGraph,
    _bits,
    build_graph,
    is_c4_free,
    max_induced_matching,
    min_vertex_cover,
)

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class Biclique:
    """Two vertex sets of a host graph, every x in X adjacent to every y in Y.

    Either side may be empty, in which case the biclique has no edges.
    """

    X: frozenset[int]
    Y: frozenset[int]

    def __init__(self, X: Iterable[int] = (), Y: Iterable[int] = ()):
        object.__setattr__(self, "X", frozenset(X))
        object.__setattr__(self, "Y", frozenset(Y))

    @property
    def n_edges(self) -> int:
        return len(self.X) * len(self.Y)

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(sorted(self.X)), tuple(sorted(self.Y))

    def __lt__(self, other):
        return self.key() < other.key()

    def edges(self) -> list[tuple[int, int]]:
        return sorted((min(x, y), max(x, y)) for x in self.X for y in self.Y)


@dataclass(frozen=True)
class BicliqueCover:
    host: LabeledGraph
    parts: tuple[Biclique, ...]
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if self.d < 1:
            raise DomainError("coverage multiplicity d must be >= 1")

    def __len__(self):
        return len(self.parts)

    def with_d(self, d: int) -> "BicliqueCover":
        return BicliqueCover(self.host, self.parts, d)


@dataclass
class CoverCheck:
    ok: bool
    coverage: dict[tuple[int, int], int]
    min_coverage: int
    bad_part: int | None = None
    reason: str = ""
    uncovered_edge: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def validate_cover(c: BicliqueCover) -> CoverCheck:
    """Check every part is a biclique of the host and every edge is covered
    at least ``c.d`` times; reports the coverage count of every edge."""
    g = c.host
    n = g.n_vertices
    coverage = {e: 0 for e in g.edges}
    bad_part = None
    reason = ""
    for idx, part in enumerate(c.parts):
        for v in part.X | part.Y:
            if not 0 <= v < n:
                raise StructuralError(f"part {idx} references vertex {v}; host has {n}")
        if bad_part is not None:
            continue
        problem = _part_problem(g, part)
        if problem:
            bad_part, reason = idx, problem
            continue
        for x in part.X:
            for y in part.Y:
                coverage[(x, y) if x < y else (y, x)] += 1
    min_cov = min(coverage.values(), default=c.d)
    uncovered = next((e for e in g.edges if coverage[e] < c.d), None)
    if bad_part is None and uncovered is not None:
        reason = f"edge {uncovered} covered {coverage[uncovered]} < {c.d} times"
    ok = bad_part is None and uncovered is None
    return CoverCheck(ok, coverage, min_cov, bad_part, reason, uncovered)


def _part_problem(g: LabeledGraph, part: Biclique) -> str:
    if part.X & part.Y:
        return "X and Y overlap"
    if g.is_bipartite and part.X and part.Y:
        sx = {g.side(v) for v in part.X}
        sy = {g.side(v) for v in part.Y}
        if len(sx) > 1 or len(sy) > 1 or sx == sy:
            return "sides do not lie in opposite classes"
    for x in part.X:
        missing = [y for y in part.Y if not g.has_edge(x, y)]
        if missing:
            return f"vertices {x} and {missing[0]} are not adjacent"
    return ""


# --- maximal bicliques -----------------------------------------------------


def _closed_neighbourhood_sets(g: LabeledGraph, sources: Iterable[int]) -> set[int]:
    """All nonempty intersections of neighbourhoods of ``sources`` vertices."""
    family: set[int] = set()
    for v in sources:
        nv = g.adj[v]
        if not nv:
            continue
        new = {nv}
        for f in family:
            inter = f & nv
            if inter:
                new.add(inter)
        family |= new
    return family


def _common_neighbours(g: LabeledGraph, mask: int) -> int:
    out = (1 << g.n_vertices) - 1
    for v in _bits(mask):
        out &= g.adj[v]
    return out


def enumerate_maximal_bicliques(g: LabeledGraph, max_vertices: int = DEFAULT_MAX_VERTICES) -> list[Biclique]:
    """All inclusion-maximal bicliques with both sides nonempty, sorted.

    In a bipartite host X is taken from the left class. In a general host
    each unordered biclique appears once, oriented so that X sorts first.
    """
    if g.n_vertices > max_vertices:
        raise BudgetError(f"graph has {g.n_vertices} vertices; cap is {max_vertices}")
    sources = g.left if g.is_bipartite else range(g.n_vertices)
    seen = set()
    out = []
    for ymask in _closed_neighbourhood_sets(g, sources):
        xmask = _common_neighbours(g, ymask)
        if g.is_bipartite:
            b = Biclique(_bits(xmask), _bits(ymask))
        else:
            x, y = sorted([tuple(_bits(xmask)), tuple(_bits(ymask))])
            b = Biclique(x, y)
        if b.key() not in seen:
            seen.add(b.key())
            out.append(b)
    out.sort()
    return out


def max_biclique_edge_count(g: LabeledGraph, max_vertices: int = DEFAULT_MAX_VERTICES) -> int:
    """B(G): the largest edge count of any biclique of ``g`` (0 if edgeless)."""
    return max((b.n_edges for b in enumerate_maximal_bicliques(g, max_vertices)), default=0)


# --- fractional covering ---------------------------------------------------


def bc_star_formula(t: int, r: int, w: int) -> tuple[Fraction, int]:
    """Fractional biclique cover number of I_t(r, w) and the smallest
    minimizing ``m`` of ``C(t, m) / C(t-r-w, m-w)`` over ``w <= m <= t-r``."""
    if not (0 < w <= r and r + w <= t):
        raise DomainError(f"need 0 < w <= r and r + w <= t, got t={t}, r={r}, w={w}")
    best = None
    best_m = None
    for m in range(w, t - r + 1):
        value = Fraction(binomial(t, m), binomial(t - r - w, m - w))
        if best is None or value < best:
            best, best_m = value, m
    return best, best_m


def bc_star_edge_transitive(edge_count: int, B: int) -> Fraction:
    """|E| / B(G), the fractional cover number of an edge-transitive graph."""
    if B < 0 or edge_count < 0:
        raise DomainError("counts must be nonnegative")
    if B == 0:
        if edge_count:
            raise DomainError("B = 0 but the graph has edges")
        return Fraction(0)
    return Fraction(edge_count, B)


def it_edge_count(t: int, r: int, w: int) -> int:
    return binomial(t, r) * binomial(t - r, w)


def it_max_biclique(t: int, r: int, w: int) -> tuple[int, int]:
    """B(I_t(r, w)) as ``max C(t', r) C(t - t', w)`` and the smallest maximizing t'."""
    best, best_tp = -1, None
    for tp in range(t + 1):
        value = binomial(tp, r) * binomial(t - tp, w)
        if value > best:
            best, best_tp = value, tp
    return best, best_tp


# --- exact solver ----------------------------------------------------------


@dataclass
class BcdResult:
    """Outcome of :func:`exact_bcd`.

    ``value`` is set only when the search proved optimality; otherwise the
    optimum lies in ``[lower, upper]`` and ``cover`` is the best one found.
    """

    lower: int
    upper: int | None
    exact: bool
    cover: BicliqueCover | None
    nodes: int = 0
    method: str = "branch-and-bound"

    @property
    def value(self) -> int | None:
        return self.upper if self.exact else None


def star_cover(g: LabeledGraph, centres: Sequence[int], d: int = 1) -> BicliqueCover:
    parts = []
    for v in centres:
        nb = g.neighbors(v)
        if g.is_bipartite and g.side(v) == 1:
            parts.append(Biclique(nb, [v]))
        else:
            parts.append(Biclique([v], nb))
    return BicliqueCover(g, tuple(parts) * d, d)


def exact_bcd(
    g: LabeledGraph,
    d: int = 1,
    budget: int = DEFAULT_BUDGET,
    use_vertex_cover: bool = True,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> BcdResult:
    """Minimum number of bicliques covering every edge of ``g`` at least ``d`` times.

    Candidates are the maximal bicliques, each usable any number of times.
    The search branches on the uncovered edge with the fewest candidates and
    stops after ``budget`` nodes, returning a bracket instead of a value.
    """
    if d < 1:
        raise DomainError("d must be >= 1")
    if g.n_vertices > max_vertices:
        raise BudgetError(f"graph has {g.n_vertices} vertices; cap is {max_vertices}")
    m = g.n_edges
    if m == 0:
        return BcdResult(0, 0, True, BicliqueCover(g, (), d), 0, "trivial")
    if use_vertex_cover and d == 1 and g.is_bipartite and is_c4_free(g):
        cover = star_cover(g, min_vertex_cover(g))
        k = len(cover)
        return BcdResult(k, k, True, cover, 0, "vertex-cover")

    cands = enumerate_maximal_bicliques(g, max_vertices)
    masks = []
    for b in cands:
        mask = 0
        for e in b.edges():
            mask |= 1 << g.edge_index[e]
        masks.append(mask)
    # decreasing edge count, then canonical order
    order = sorted(range(len(cands)), key=lambda i: (-cands[i].n_edges, cands[i].key()))
    cands = [cands[i] for i in order]
    masks = [masks[i] for i in order]
    big_b = cands[0].n_edges
    containing = [[] for _ in range(m)]
    for ci, mask in enumerate(masks):
        for e in _bits(mask):
            containing[e].append(ci)
    reach = [0] * m
    for e in range(m):
        for ci in containing[e]:
            reach[e] |= masks[ci]

    induced = max_induced_matching(g, max_vertices)
    root_lower = max(-(-d * m // big_b), d * induced)

    best_parts = _greedy_multicover(masks, m, d)
    best = len(best_parts)
    deficit = [d] * m
    total = d * m
    need = (1 << m) - 1
    chosen: list[int] = []
    nodes = 0
    exhausted = False

    def lower_bound(allowed_mask: int) -> int:
        gain = 0
        for ci in _bits(allowed_mask):
            gmask = masks[ci] & need
            if gmask:
                c = gmask.bit_count()
                if c > gain:
                    gain = c
        if gain == 0:
            return -1
        lb = -(-total // gain)
        # edges no candidate can cover together each need their own bicliques
        packed = 0
        used = 0
        for e in sorted(_bits(need), key=lambda e: -deficit[e]):
            if not used >> e & 1:
                packed += deficit[e]
                used |= reach[e]
        return max(lb, packed)

    def search(allowed: int) -> None:
        nonlocal best, best_parts, total, need, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        if not need:
            if len(chosen) < best:
                best = len(chosen)
                best_parts = list(chosen)
            return
        lb = lower_bound(allowed)
        if lb < 0 or len(chosen) + lb >= best:
            return
        # edge with the fewest usable candidates
        pick, pick_opts = None, None
        for e in _bits(need):
            opts = [ci for ci in containing[e] if allowed >> ci & 1]
            if pick_opts is None or len(opts) < len(pick_opts) or (
                len(opts) == len(pick_opts) and deficit[e] > deficit[pick]
            ):
                pick, pick_opts = e, opts
                if len(opts) <= 1:
                    break
        if not pick_opts:
            return
        for ci in pick_opts:
            touched = masks[ci] & need
            for e in _bits(touched):
                deficit[e] -= 1
                total -= 1
                if deficit[e] == 0:
                    need &= ~(1 << e)
            chosen.append(ci)
            search(allowed)
            chosen.pop()
            for e in _bits(touched):
                if deficit[e] == 0:
                    need |= 1 << e
                deficit[e] += 1
                total += 1
            allowed &= ~(1 << ci)
            if best <= root_lower or exhausted:
                return

    if best > root_lower:
        search((1 << len(cands)) - 1)
    cover = BicliqueCover(g, tuple(cands[ci] for ci in sorted(best_parts)), d)
    if exhausted:
        return BcdResult(root_lower, best, False, cover, nodes)
    return BcdResult(best, best, True, cover, nodes)


def _greedy_multicover(masks: list[int], m: int, d: int) -> list[int]:
    deficit = [d] * m
    need = (1 << m) - 1
    chosen = []
    while need:
        ci = max(range(len(masks)), key=lambda i: ((masks[i] & need).bit_count(), -i))
        chosen.append(ci)
        for e in _bits(masks[ci] & need):
            deficit[e] -= 1
            if deficit[e] == 0:
                need &= ~(1 << e)
    return chosen


# --- serialization ---------------------------------------------------------


def cover_to_dict(c: BicliqueCover) -> dict:
    g = c.host
    parts = []
    for p in c.parts:
        X, Y = p.X, p.Y
        if g.is_bipartite and (any(g.side(v) for v in X) or not all(g.side(v) for v in Y)):
            X, Y = Y, X
        parts.append({
            "X": sorted(list(g.labels[v]) for v in X),
            "Y": sorted(list(g.labels[v]) for v in Y),
        })
    doc = {"host": g.family, "d": c.d, "parts": parts}
    if g.family == "custom":
        doc["graph"] = g.to_dict()
    return doc


def dumps_cover(c: BicliqueCover) -> str:
    return json.dumps(cover_to_dict(c), indent=1, sort_keys=True)


def cover_from_dict(doc: dict) -> BicliqueCover:
    try:
        family = doc["host"]
        d = int(doc["d"])
        raw_parts = doc["parts"]
        host = LabeledGraph.from_dict(doc["graph"]) if family == "custom" else build_graph(family)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed cover document: {exc}") from None
    parts = []
    for idx, p in enumerate(raw_parts):
        try:
            xs, ys = p["X"], p["Y"]
        except (KeyError, TypeError):
            raise ParseError(f"part {idx} lacks X or Y") from None
        # X on the left class and Y on the right for bipartite hosts
        x_side, y_side = (0, 1) if host.is_bipartite else (0, 0)
        try:
            X = [host.vertex(lab, x_side) for lab in xs]
            Y = [host.vertex(lab, y_side) for lab in ys]
        except KeyError as exc:
            raise StructuralError(f"part {idx}: {exc.args[0]}") from None
        parts.append(Biclique(X, Y))
    return BicliqueCover(host, tuple(parts), d)


def loads_cover(text: str) -> BicliqueCover:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), exc.lineno) from None
    return cover_from_dict(doc)
