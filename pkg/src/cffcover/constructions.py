"""Constructions linking cover-free families and biclique covers:
CFF <-> cover conversion, Hadamard and orbit covers, and the set-pair
families used by the recursive lower bounds."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import NamedTuple

import numpy as np

from .cover import Biclique, BicliqueCover, it_edge_count, it_max_biclique, validate_cover
from .errors import BudgetError, DomainError, ParseError, UnsupportedError
from .graphs import LabeledGraph, bi_intersection, complete, kminus
from .setsystem import SetSystem

MAX_ORBIT_T = 7


# --- CFF <-> cover -----------------------------------------------------------


def cff_to_cover(sys: SetSystem, r: int, w: int, d: int = 1) -> BicliqueCover:
    """One biclique per point j: all r-subsets of the blocks containing j
    against all w-subsets of the blocks missing j.

    The result is a cover of I_t(r, w) at level ``d`` exactly when ``sys`` is
    an (r, w; d)-CFF; otherwise it is still returned and validation reports
    the first under-covered edge.
    """
    t = sys.t
    if not (w >= 1 and r >= w and r + w <= t):
        raise DomainError(
            f"need r >= w >= 1 and r + w <= t, got r={r}, w={w}, t={t}; "
            "complement the blocks to view an (r, w)-CFF as a (w, r)-CFF"
        )
    host = bi_intersection(t, r, w)
    everything = frozenset(range(1, t + 1))
    parts = []
    for a_j in sys.point_sets():
        xs = [host.vertex(u, 0) for u in combinations(sorted(a_j), r)]
        ys = [host.vertex(v, 1) for v in combinations(sorted(everything - a_j), w)]
        if not xs or not ys:
            xs, ys = [], []
        parts.append(Biclique(xs, ys))
    return BicliqueCover(host, tuple(parts), d)


def cover_parameters(host: LabeledGraph) -> tuple[int, int, int]:
    """(t, r, w) for a host the CFF correspondence applies to."""
    name, _, params = host.family.partition(":")
    if name == "it":
        t, r, w = (int(x) for x in params.split(","))
        return t, r, w
    if name == "kminus":
        return int(params), 1, 1
    raise DomainError(f"no cover-free family corresponds to host {host.family!r}")


def cover_to_cff(c: BicliqueCover) -> SetSystem:
    """Point i of the result is the union of the labels on the r-side of part i.

    Requires a valid cover of I_t(r, w) or K^-_{t,t}; the result is then an
    (r, w; d)-CFF with one point per part.
    """
    t, r, w = cover_parameters(c.host)
    check = validate_cover(c)
    if not check.ok:
        raise DomainError(f"not a valid {c.d}-cover: {check.reason}")
    g = c.host
    columns = []
    for part in c.parts:
        left = [v for v in part.X | part.Y if g.side(v) == 0]
        if not (part.X and part.Y):
            left = []
        a = set()
        for v in left:
            a.update(g.labels[v])
        columns.append(a)
    blocks = tuple(frozenset(i for i, a in enumerate(columns, 1) if k in a) for k in range(1, t + 1))
    return SetSystem(len(columns), blocks)


# --- Hadamard ----------------------------------------------------------------


@dataclass(frozen=True)
class HadamardMatrix:
    order: int
    entries: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        h = np.asarray(self.entries, dtype=np.int64)
        if h.shape != (self.order, self.order):
            raise DomainError(f"entries must be {self.order}x{self.order}")
        if not np.all(np.abs(h) == 1):
            raise DomainError("entries must be +1 or -1")
        object.__setattr__(self, "entries", h)

    def is_hadamard(self) -> bool:
        h = self.entries
        return bool(np.array_equal(h @ h.T, self.order * np.eye(self.order, dtype=np.int64)))

    def is_normalized(self) -> bool:
        return bool(np.all(self.entries[0] == 1) and np.all(self.entries[:, 0] == 1))

    def dumps(self) -> str:
        return "\n".join("".join("+" if x > 0 else "-" for x in row) for row in self.entries)

    @classmethod
    def loads(cls, text: str) -> "HadamardMatrix":
        rows = text.strip("\n").split("\n")
        n = len(rows)
        data = []
        for lineno, row in enumerate(rows, 1):
            if len(row) != n or set(row) - set("+-"):
                raise ParseError(f"expected {n} characters from '+-'", lineno)
            data.append([1 if ch == "+" else -1 for ch in row])
        h = cls(n, np.array(data))
        return cls(n, h.entries, h.is_normalized())


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, int(q ** 0.5) + 1))


def _paley(q: int) -> np.ndarray:
    """Paley type I matrix of order q + 1 for a prime q = 3 mod 4."""
    residues = {(x * x) % q for x in range(1, q)}
    chi = [0] + [1 if x in residues else -1 for x in range(1, q)]
    jac = np.array([[chi[(j - i) % q] for j in range(q)] for i in range(q)], dtype=np.int64)
    s = np.zeros((q + 1, q + 1), dtype=np.int64)
    s[0, 1:] = 1
    s[1:, 0] = -1
    s[1:, 1:] = jac
    return np.eye(q + 1, dtype=np.int64) + s


def _construct(n: int) -> np.ndarray | None:
    if n == 1:
        return np.ones((1, 1), dtype=np.int64)
    if n == 2:
        return np.array([[1, 1], [1, -1]], dtype=np.int64)
    if n % 4:
        return None
    half = _construct(n // 2)
    if half is not None:
        return np.block([[half, half], [half, -half]])
    q = n - 1
    if _is_prime(q) and q % 4 == 3:
        return _paley(q)
    return None


def hadamard_constructible(n: int) -> bool:
    return n >= 1 and _construct(n) is not None


def normalize(h: np.ndarray) -> np.ndarray:
    h = h * h[0][np.newaxis, :]
    return h * h[:, 0][:, np.newaxis]


def hadamard_matrix(n: int) -> HadamardMatrix:
    """A normalized Hadamard matrix of order ``n``.

    Supported: orders 1 and 2, Sylvester doubling of any supported order,
    and Paley's construction for ``n - 1`` a prime congruent to 3 mod 4.
    """
    h = _construct(n) if n >= 1 else None
    if h is None:
        raise UnsupportedError(f"no implemented Hadamard construction of order {n}")
    out = HadamardMatrix(n, normalize(h), True)
    assert out.is_hadamard() and out.is_normalized()
    return out


def hadamard_cover(H: HadamardMatrix) -> BicliqueCover:
    """Cover of K^-_{4d-1,4d-1} covering every edge exactly d times.

    Drops the first row and column; column j gives the biclique from the rows
    holding +1 to the primed copies of the rows holding -1.
    """
    n = H.order
    if n < 4 or n % 4:
        raise DomainError(f"order must be a positive multiple of 4, got {n}")
    if not H.is_normalized():
        raise DomainError("Hadamard matrix must be normalized")
    core = H.entries[1:, 1:]
    size = n - 1
    host = kminus(size)
    parts = []
    for j in range(size):
        col = core[:, j]
        xs = [i for i in range(size) if col[i] > 0]
        ys = [size + i for i in range(size) if col[i] < 0]
        parts.append(Biclique(xs, ys))
    return BicliqueCover(host, tuple(parts), n // 4)


def hadamard_cff(d: int) -> SetSystem:
    """A (1, 1; d)-CFF with 4d - 1 points and 4d - 1 blocks."""
    if d < 1:
        raise DomainError("d must be >= 1")
    return cover_to_cff(hadamard_cover(hadamard_matrix(4 * d)))


# --- orbit covers --------------------------------------------------------------


def orbit_multiplicity(t: int, r: int, w: int) -> int:
    """Coverage of every edge by the orbit cover: B * t! / |E|."""
    big_b, _ = it_max_biclique(t, r, w)
    num = big_b * math.factorial(t)
    edges = it_edge_count(t, r, w)
    assert num % edges == 0
    return num // edges


def orbit_cover(t: int, r: int, w: int) -> BicliqueCover:
    """Images of one maximum biclique of I_t(r, w) under every permutation of [t].

    The seed pairs all r-subsets of {1..t'} with all w-subsets of the rest,
    t' the smallest size maximizing its edge count. Every edge ends up covered
    exactly B * t! / |E| times.
    """
    if not (0 < w <= r and r + w <= t):
        raise DomainError(f"need 0 < w <= r and r + w <= t, got t={t}, r={r}, w={w}")
    if t > MAX_ORBIT_T:
        raise BudgetError(f"orbit covers have t! parts; capped at t <= {MAX_ORBIT_T}")
    host = bi_intersection(t, r, w)
    _, tp = it_max_biclique(t, r, w)
    seed_x = list(combinations(range(1, tp + 1), r))
    seed_y = list(combinations(range(tp + 1, t + 1), w))
    parts = []
    for perm in permutations(range(1, t + 1)):
        sigma = (0,) + perm
        xs = [host.vertex(sorted(sigma[i] for i in u), 0) for u in seed_x]
        ys = [host.vertex(sorted(sigma[i] for i in v), 1) for v in seed_y]
        parts.append(Biclique(xs, ys))
    return BicliqueCover(host, tuple(parts), orbit_multiplicity(t, r, w))


# --- set-pair families ---------------------------------------------------------


@dataclass(frozen=True)
class SetPairFamily:
    ground_size: int
    pairs: tuple[tuple[frozenset[int], frozenset[int]], ...]

    def __post_init__(self):
        pairs = tuple((frozenset(a), frozenset(b)) for a, b in self.pairs)
        for i, (a, b) in enumerate(pairs, 1):
            if a & b:
                raise DomainError(f"pair {i} is not disjoint")
            outside = [x for x in a | b if not 1 <= x <= self.ground_size]
            if outside:
                raise DomainError(f"pair {i} uses elements outside 1..{self.ground_size}")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self):
        return len(self.pairs)

    def to_dict(self) -> dict:
        return {
            "ground_size": self.ground_size,
            "pairs": [[sorted(a), sorted(b)] for a, b in self.pairs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "SetPairFamily":
        try:
            doc = json.loads(text)
            return cls(int(doc["ground_size"]), tuple((a, b) for a, b in doc["pairs"]))
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc), exc.lineno) from None
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed set-pair document: {exc}") from None


def chain_setpairs(r: int, w: int) -> SetPairFamily:
    """(0, {1}), ({1}, {2}), ..., ({1..r-w}, {r-w+1}), ({1..r-w+1}, 0)."""
    if w < 1 or r < w:
        raise DomainError(f"need r >= w >= 1, got r={r}, w={w}")
    k = r - w
    pairs = [(range(1, i + 1), {i + 1}) for i in range(k + 1)]
    pairs.append((range(1, k + 2), ()))
    return SetPairFamily(k + 1, tuple(pairs))


def uniform_setpairs(s: int, r: int, w: int, mode: str = "left") -> SetPairFamily:
    """All splits (A, [s] minus A) of an s-set with admissible part sizes.

    ``left`` takes |A| = i for max(0, s-w) <= i <= min(r, s), in order of i;
    ``right`` takes |B| = j for max(0, s-r) <= j <= min(w, s), in order of j.
    """
    if not (r >= 1 and w >= 1 and 1 <= s <= r + w):
        raise DomainError(f"need r, w >= 1 and 1 <= s <= r + w, got s={s}, r={r}, w={w}")
    ground = range(1, s + 1)
    everything = frozenset(ground)
    pairs = []
    if mode == "left":
        for i in range(max(0, s - w), min(r, s) + 1):
            for a in combinations(ground, i):
                pairs.append((frozenset(a), everything - set(a)))
    elif mode == "right":
        for j in range(max(0, s - r), min(w, s) + 1):
            for b in combinations(ground, j):
                pairs.append((everything - set(b), frozenset(b)))
    else:
        raise DomainError(f"mode must be 'left' or 'right', got {mode!r}")
    return SetPairFamily(s, tuple(pairs))


class PairCheck(NamedTuple):
    ok: bool
    witness: tuple[int, int] | None


def setpairs_predicate(f: SetPairFamily, mode: str = "weak", r: int | None = None, w: int | None = None) -> PairCheck:
    """Check a set-pair family.

    ``weak``: (A_i & B_j) | (A_j & B_i) nonempty for i != j.
    ``cross``: both A_i & B_j and A_j & B_i nonempty.
    ``rw``: cross, plus |A_i| = r and |B_i| = w. A size violation is
    reported as the witness (i, i). Witness indices are 1-based.
    """
    if mode not in ("weak", "cross", "rw"):
        raise DomainError(f"unknown mode {mode!r}")
    pairs = f.pairs
    if mode == "rw":
        if r is None or w is None:
            raise DomainError("rw mode needs r and w")
        for i, (a, b) in enumerate(pairs, 1):
            if len(a) != r or len(b) != w:
                return PairCheck(False, (i, i))
    for i in range(len(pairs)):
        ai, bi = pairs[i]
        for j in range(i + 1, len(pairs)):
            aj, bj = pairs[j]
            one, two = bool(ai & bj), bool(aj & bi)
            good = (one or two) if mode == "weak" else (one and two)
            if not good:
                return PairCheck(False, (i + 1, j + 1))
    return PairCheck(True, None)


def dual_setpairs(f: SetPairFamily) -> SetPairFamily:
    """Pairs (S_i, T_i) on ground [g]: S_i = {j : i in A_j}, T_i = {j : i in B_j}."""
    out = []
    for i in range(1, f.ground_size + 1):
        s = {j for j, (a, _) in enumerate(f.pairs, 1) if i in a}
        t = {j for j, (_, b) in enumerate(f.pairs, 1) if i in b}
        out.append((s, t))
    return SetPairFamily(len(f.pairs), tuple(out))


def is_strongly_separating(f: SetPairFamily) -> bool:
    """Every ordered pair (i, j) of distinct ground points has some k with
    i in X_k and j in Y_k."""
    n = f.ground_size
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and not any(i in x and j in y for x, y in f.pairs):
                return False
    return True


def as_complete_cover(f: SetPairFamily) -> BicliqueCover:
    """Read the pairs as bicliques (X_k, Y_k) of K_g, g the ground size."""
    host = complete(f.ground_size)
    return BicliqueCover(host, tuple(Biclique([x - 1 for x in a], [y - 1 for y in b]) for a, b in f.pairs))


def is_rw_biclique_cover(f: SetPairFamily, r: int, w: int) -> bool:
    """Pairs form a biclique cover of K_g with every vertex in at most r
    X-sides and at most w Y-sides."""
    for v in range(1, f.ground_size + 1):
        if sum(v in x for x, _ in f.pairs) > r or sum(v in y for _, y in f.pairs) > w:
            return False
    return validate_cover(as_complete_cover(f)).ok
