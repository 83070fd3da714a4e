"""Set systems, their incidence-matrix text format, and a brute-force
(r, w; d) cover-free family checker.

Points and block indices are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import DomainError, ParseError


@dataclass(frozen=True)
class SetSystem:
    n_points: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n_points < 0:
            raise DomainError("n_points must be nonnegative")
        blocks = tuple(frozenset(b) for b in self.blocks)
        if not blocks:
            raise DomainError("a set system needs at least one block")
        for i, b in enumerate(blocks, 1):
            bad = [x for x in b if not 1 <= x <= self.n_points]
            if bad:
                raise DomainError(f"block {i} has points outside 1..{self.n_points}: {sorted(bad)}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_blocks(cls, n_points: int, blocks: Iterable[Iterable[int]]) -> "SetSystem":
        return cls(n_points, tuple(frozenset(b) for b in blocks))

    @property
    def t(self) -> int:
        return len(self.blocks)

    def masks(self) -> list[int]:
        """Blocks as bitmasks, bit ``x - 1`` standing for point ``x``."""
        out = []
        for b in self.blocks:
            m = 0
            for x in b:
                m |= 1 << (x - 1)
            out.append(m)
        return out

    def incidence(self) -> list[list[int]]:
        return [[int(x in b) for x in range(1, self.n_points + 1)] for b in self.blocks]

    def point_sets(self) -> list[frozenset[int]]:
        """For each point j, the set of block indices containing it (a column of A)."""
        return [
            frozenset(i for i, b in enumerate(self.blocks, 1) if j in b)
            for j in range(1, self.n_points + 1)
        ]

    def complement(self) -> "SetSystem":
        everything = frozenset(range(1, self.n_points + 1))
        return SetSystem(self.n_points, tuple(everything - b for b in self.blocks))

    def permute(self, point_perm=None, block_perm=None) -> "SetSystem":
        """Relabel points by ``point_perm[x]`` and reorder blocks so new block
        ``block_perm[i]`` is old block ``i`` (both mappings 1-based dicts)."""
        blocks = list(self.blocks)
        if point_perm is not None:
            blocks = [frozenset(point_perm[x] for x in b) for b in blocks]
        if block_perm is not None:
            new = [None] * len(blocks)
            for old_i, b in enumerate(blocks, 1):
                new[block_perm[old_i] - 1] = b
            blocks = new
        return SetSystem(self.n_points, tuple(blocks))


class CffWitness(NamedTuple):
    L: tuple[int, ...]
    M: tuple[int, ...]
    shortfall: int


def _popcount(x: int) -> int:
    return bin(x).count("1")


def is_cff(sys: SetSystem, r: int, w: int, d: int = 1) -> tuple[bool, CffWitness | None]:
    """Check the (r, w; d) cover-free property by enumerating every (L, M).

    Returns ``(True, None)`` or ``(False, witness)`` where the witness is the
    lexicographically first disjoint pair whose residual set is too small.
    """
    t = sys.t
    if r < 1 or w < 1 or d < 1:
        raise DomainError(f"need r, w, d >= 1, got r={r}, w={w}, d={d}")
    if r + w > t:
        raise DomainError(f"need r + w <= t, got r + w = {r + w}, t = {t}")
    masks = sys.masks()
    everything = (1 << sys.n_points) - 1
    indices = range(t)
    for L in combinations(indices, r):
        inter = everything
        for l in L:
            inter &= masks[l]
        rest = [i for i in indices if i not in L]
        for M in combinations(rest, w):
            union = 0
            for m in M:
                union |= masks[m]
            size = _popcount(inter & ~union)
            if size < d:
                return False, CffWitness(
                    tuple(l + 1 for l in L), tuple(m + 1 for m in M), d - size
                )
    return True, None


def parse_incidence(text: str) -> SetSystem:
    """Parse rows of 0/1 characters; row i is block i, column j is point j.

    A single trailing newline is tolerated.
    """
    if text.endswith("\n"):
        text = text[:-1]
    if not text:
        raise ParseError("empty incidence matrix", 1)
    rows = text.split("\n")
    width = None
    blocks = []
    for lineno, row in enumerate(rows, 1):
        if not row:
            raise ParseError("empty row", lineno)
        bad = [ch for ch in row if ch not in "01"]
        if bad:
            raise ParseError(f"invalid character {bad[0]!r}", lineno)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"row has {len(row)} columns, expected {width}", lineno)
        blocks.append(frozenset(j for j, ch in enumerate(row, 1) if ch == "1"))
    return SetSystem(width, tuple(blocks))


def emit_incidence(sys: SetSystem) -> str:
    return "\n".join("".join(str(a) for a in row) for row in sys.incidence())
