"""Lower and upper bounds on N((r,w;d),t), the fewest points of an
(r, w; d)-CFF with t blocks.

Every entry carries a tier. ``exact``, ``certified-lower`` and
``certified-upper`` values are proved; ``heuristic`` values depend on an
unknown constant or an asymptotic regime and never feed the certified
summary.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, NamedTuple

from .combinatorics import binomial, lattice_path_count, spencer_R
from .constructions import (
    SetPairFamily,
    chain_setpairs,
    hadamard_constructible,
    setpairs_predicate,
)
from .cover import bc_star_formula, it_edge_count, it_max_biclique
from .errors import BudgetError, DomainError

EXACT = "exact"
LOWER = "certified-lower"
UPPER = "certified-upper"
HEURISTIC = "heuristic"

MAX_R_PLUS_W = 12
MAX_T = 60
# beyond this the d-1 carry is replaced by a carry from d = 1
MONOTONE_D_CAP = 64

DENSITY_VARIANTS = ("rcff", "stinson1", "stinson2", "estimate", "engel_asymptotic", "erdos12")


class NotApplicable(DomainError):
    """A bound's hypotheses fail for these parameters."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def _check_rwt(r: int, w: int, t: int, ordered: bool = True) -> None:
    if w < 1 or r < 1:
        raise DomainError(f"need r, w >= 1, got r={r}, w={w}")
    if ordered and r < w:
        raise DomainError(f"need r >= w, got r={r}, w={w}")
    if t < r + w:
        raise DomainError(f"need t >= r + w, got t={t}, r + w = {r + w}")


# --- closed-form bounds ---------------------------------------------------------


def engel_lower(r: int, w: int, t: int) -> int:
    """C(r+w-1, r) * R(t-r-w+2)."""
    _check_rwt(r, w, t)
    return binomial(r + w - 1, r) * spencer_R(t - r - w + 2)


def fractional_lower(r: int, w: int, d: int, t: int) -> int:
    """ceil(d * bc*(I_t(r, w))), since bc_d >= d * bc*."""
    _check_rwt(r, w, t)
    if d < 1:
        raise DomainError("d must be >= 1")
    value, _ = bc_star_formula(t, r, w)
    return math.ceil(d * value)


def engel_fractional_ratio(r: int, w: int, t: int) -> tuple[Fraction, int]:
    """min over w-1 <= m <= t-r+1 of C(t, m) / C(t-r-w+2, m-w+1), with its argmin."""
    _check_rwt(r, w, t)
    best, best_m = None, None
    for m in range(w - 1, t - r + 2):
        value = Fraction(binomial(t, m), binomial(t - r - w + 2, m - w + 1))
        if best is None or value < best:
            best, best_m = value, m
    return best, best_m


def engel_fractional_lower(r: int, w: int, t: int) -> int:
    """ceil(ratio * R(t-r-w+2)); the ceiling is taken on the product."""
    ratio, _ = engel_fractional_ratio(r, w, t)
    return math.ceil(ratio * spencer_R(t - r - w + 2))


def lovasz_upper(r: int, w: int, t: int) -> float:
    """bc*(I_t(r, w)) * (1 + ln C(t-w, r)), an upper bound on N((r,w),t)."""
    _check_rwt(r, w, t)
    value, _ = bc_star_formula(t, r, w)
    degree = binomial(t - w, r)
    if degree == 1:
        return float(value)
    return float(value) * (1 + math.log(degree))


def _log(x: float, base: float) -> float:
    if base == 2:
        return math.log2(x)
    if base == math.e:
        return math.log(x)
    return math.log(x) / math.log(base)


def _density(c: float, count: int, den_arg: float, t_arg: float, base: float) -> float:
    return c * count / _log(den_arg, base) * _log(t_arg, base)


@dataclass
class BoundEntry:
    name: str
    value: int | Fraction | float | None
    tier: str
    applicable: bool = True
    note: str = ""

    def to_dict(self) -> dict:
        v = self.value
        if isinstance(v, Fraction):
            v = str(v) if v.denominator != 1 else v.numerator
        elif isinstance(v, float):
            v = float(f"{v:.6g}")
        return {"name": self.name, "value": v, "tier": self.tier,
                "applicable": self.applicable, "note": self.note}


def density_lower(
    r: int,
    w: int,
    t: int,
    c: float | None = None,
    variant: str = "estimate",
    epsilon: float | None = None,
    log_base: float = 2,
) -> BoundEntry:
    """Evaluate one of the density-type lower bounds with a supplied constant.

    These bounds hold only up to an unknown constant or asymptotically, so
    the entry is always tier ``heuristic``. Parameter ranges where a formula
    does not apply give ``applicable=False`` instead of a value.
    """
    if variant not in DENSITY_VARIANTS:
        raise DomainError(f"unknown variant {variant!r}")
    _check_rwt(r, w, t, ordered=False)
    if variant in ("rcff", "stinson1", "stinson2", "estimate"):
        if c is None or c <= 0:
            raise DomainError(f"{variant} needs a positive constant c")

    def skip(note: str) -> BoundEntry:
        return BoundEntry(variant, None, HEURISTIC, False, note)

    base_note = f"log base {log_base:g}"
    if variant == "rcff":
        if w != 1 or r < 2:
            return skip("requires w = 1 and r >= 2")
        return BoundEntry(variant, _density(c, r * r, r, t, log_base), HEURISTIC, True, base_note)
    if variant == "estimate":
        if r < w or r < 2:
            return skip("requires r >= w and r >= 2")
        count = binomial(r + w, w + 1) + binomial(r + w - 1, w + 1) + 3 * binomial(r + w - 4, w - 2)
        return BoundEntry(variant, _density(c, count, r, t - w + 1, log_base), HEURISTIC, True, base_note)
    if variant == "stinson1":
        count = 2 * binomial(r + w, r)
        return BoundEntry(variant, _density(c, count, r + w, t, log_base), HEURISTIC, True, base_note)
    if variant == "stinson2":
        threshold = max(((r + w + 1) // 2) ** 2, 5)
        if t <= threshold:
            return skip(f"valid only for t > {threshold}")
        cc = binomial(r + w, r)
        value = 0.7 * c * (r + w) * cc / _log(cc, log_base) * _log(t, log_base)
        return BoundEntry(variant, value, HEURISTIC, True, base_note)
    if variant == "engel_asymptotic":
        if epsilon is None or not 0 < epsilon < 1:
            raise DomainError("engel_asymptotic needs 0 < epsilon < 1")
        a, b1, b2 = w + r - 2, w - 1, r - 1
        factor = Fraction(a ** a, b1 ** b1 * b2 ** b2)
        value = (1 - epsilon) * float(factor) * spencer_R(t - r - w + 2)
        return BoundEntry(variant, value, HEURISTIC, True, "holds only for sufficiently large t")
    # erdos12
    if {r, w} != {1, 2}:
        return skip("requires {r, w} = {1, 2}")
    return BoundEntry(variant, math.log(t) / math.log(1.25), HEURISTIC, True, "asymptotic in t")


# --- exact values ------------------------------------------------------------


class ExactValue(NamedTuple):
    value: int
    source: str


def orbit_unit(t: int, r: int, w: int) -> int:
    """Coverage multiplicity B * t! / |E| of the orbit cover of I_t(r, w)."""
    big_b, _ = it_max_biclique(t, r, w)
    num = big_b * math.factorial(t)
    edges = it_edge_count(t, r, w)
    return num // edges


@lru_cache(maxsize=None)
def _hadamard_ok(n: int) -> bool:
    return hadamard_constructible(n)


def exact_value(r: int, w: int, d: int, t: int) -> ExactValue | None:
    """N((r,w;d),t) when the parameters fall in a catalogued case, else None."""
    if r < w:
        r, w = w, r
    if w < 1 or d < 1 or t < r + w:
        return None
    if d == 1 and t * w <= (r + w) * w + r:
        return ExactValue(binomial(t, w), "C(t, w) for t <= r + w + r/w")
    if (r, w) == (1, 1) and d == 1:
        return ExactValue(spencer_R(t), "Spencer R(t)")
    unit = orbit_unit(t, r, w)
    if d % unit == 0:
        return ExactValue(d // unit * math.factorial(t), f"orbit cover, d a multiple of {unit}")
    if (r, w) == (1, 1) and t == 4 * d - 1 and _hadamard_ok(4 * d):
        return ExactValue(t, f"Hadamard matrix of order {4 * d}")
    return None


# --- recursive engine ------------------------------------------------------


class LowerBoundEngine:
    """Memoized best certified lower bound N_lb(r, w, d, t).

    Combines the closed-form bounds, the set-pair recursion over every
    uniform family, both lattice-path families, the chain family, and the
    monotonicity of N in d and in t.
    """

    def __init__(self):
        self._memo: dict[tuple[int, int, int, int], int] = {}

    def __call__(self, r: int, w: int, d: int, t: int) -> int:
        return self.lower(r, w, d, t)

    def lower(self, r: int, w: int, d: int, t: int) -> int:
        if r == 0 or w == 0:
            return 1
        if r < w:
            r, w = w, r
        _check_rwt(r, w, t)
        if d < 1:
            raise DomainError("d must be >= 1")
        # warm the memo bottom-up so recursion depth stays small
        if d > 1 and d <= MONOTONE_D_CAP:
            for dd in range(1, d):
                if (r, w, dd, t) not in self._memo:
                    self._lower(r, w, dd, t)
        return self._lower(r, w, d, t)

    def _lower(self, r: int, w: int, d: int, t: int) -> int:
        if r == 0 or w == 0:
            return 1
        if r < w:
            r, w = w, r
        key = (r, w, d, t)
        if key in self._memo:
            return self._memo[key]
        exact = exact_value(r, w, d, t)
        if exact is not None:
            self._memo[key] = exact.value
            return exact.value
        best = max(d * binomial(r + w, r), fractional_lower(r, w, d, t))
        if d == 1:
            best = max(best, engel_lower(r, w, t), engel_fractional_lower(r, w, t))
        for s in range(1, r + w + 1):
            best = max(best, recursive_lower(r, w, d, t, s, self._lower))
        for kind in ("lattice", "symmetric"):
            try:
                best = max(best, engelb_lower(r, w, d, t, kind, self._lower))
            except NotApplicable:
                pass
        best = max(best, setpairs_lower(r, w, d, t, chain_setpairs(r, w), self._lower))
        if d > 1:
            best = max(best, self._lower(r, w, d - 1 if d <= MONOTONE_D_CAP else 1, t))
        if t > r + w:
            best = max(best, self._lower(r, w, d, t - 1))
        self._memo[key] = best
        return best


def _convention(base: Callable[[int, int, int, int], int]) -> Callable[[int, int, int, int], int]:
    def wrapped(r, w, d, t):
        if r == 0 or w == 0:
            return 1
        return base(r, w, d, t)
    return wrapped


def setpairs_lower(
    r: int,
    w: int,
    d: int,
    t: int,
    f: SetPairFamily,
    base: Callable[[int, int, int, int], int] | None = None,
) -> int:
    """Sum over the pairs (A, B) of base(r-|A|, w-|B|, d, t-|A|-|B|).

    The family must be weakly cross-intersecting with |A| <= r, |B| <= w and
    ground size at most t. ``base`` must be a certified lower bound; terms
    with a zero coordinate count 1.
    """
    if r < 1 or w < 1 or d < 1:
        raise DomainError("need r, w, d >= 1")
    check = setpairs_predicate(f, "weak")
    if not check.ok:
        raise NotApplicable(f"pairs {check.witness} are not weakly cross-intersecting", check.witness)
    for i, (a, b) in enumerate(f.pairs, 1):
        if len(a) > r or len(b) > w:
            raise NotApplicable(f"pair {i} exceeds sizes ({r}, {w})", (i, i))
    if t < max(f.ground_size, r + w):
        raise NotApplicable(f"need t >= max(ground size, r + w) = {max(f.ground_size, r + w)}")
    base = _convention(base or LowerBoundEngine())
    return sum(base(r - len(a), w - len(b), d, t - len(a) - len(b)) for a, b in f.pairs)


def _recursive_item(r, w, d, t, s, base, mode) -> int:
    total = 0
    if mode == "left":
        for i in range(max(0, s - w), min(r, s) + 1):
            total += binomial(s, i) * base(r - i, w - s + i, d, t - s)
    else:
        for j in range(max(0, s - r), min(w, s) + 1):
            total += binomial(s, j) * base(r - s + j, w - j, d, t - s)
    return total


def recursive_lower(
    r: int,
    w: int,
    d: int,
    t: int,
    s: int,
    base: Callable[[int, int, int, int], int] | None = None,
) -> int:
    """Split-an-s-set recursion: the larger of

    sum_{s-w <= i <= r} C(s, i) N_lb(r-i, w-s+i, d, t-s) and
    sum_{s-r <= j <= w} C(s, j) N_lb(r-s+j, w-j, d, t-s).
    """
    if not (r >= 1 and w >= 1 and 1 <= s <= r + w and t >= r + w):
        raise DomainError(f"need 1 <= s <= r + w <= t, got s={s}, r={r}, w={w}, t={t}")
    base = _convention(base or LowerBoundEngine())
    return max(
        _recursive_item(r, w, d, t, s, base, "left"),
        _recursive_item(r, w, d, t, s, base, "right"),
    )


def lattice_family_size(i: int, j: int) -> int:
    """(2i + 2j - 1) |L(i, j)|: pairs in the lattice-path (i, j) family."""
    return (2 * i + 2 * j - 1) * lattice_path_count(i, j)


def symmetric_family_size(r: int) -> int:
    """floor((2 - 1/(2r-2)) C(2r-2, r-1)) pairs of (r-1, r-1) sets."""
    return math.floor((2 - Fraction(1, 2 * r - 2)) * binomial(2 * r - 2, r - 1))


def engelb_lower(
    r: int,
    w: int,
    d: int,
    t: int,
    family_kind: str = "lattice",
    base: Callable[[int, int, int, int], int] | None = None,
) -> int:
    """g * N_lb(1, 1, d, t - i - j) for an (i, j) set-pair family of size g.

    ``lattice`` uses i = r-1, j = w-1 on ground 2i+2j-1; ``symmetric`` needs
    r = w and uses i = j = r-1 on ground 4r-6.
    """
    if r < 1 or w < 1 or d < 1:
        raise DomainError("need r, w, d >= 1")
    base = _convention(base or LowerBoundEngine())
    if family_kind == "lattice":
        i, j = r - 1, w - 1
        if i < 1 or j < 1:
            raise NotApplicable("lattice family needs r, w >= 2")
        if t < max(2 * i + 2 * j - 1, r + w):
            raise NotApplicable(f"need t >= {max(2 * i + 2 * j - 1, r + w)}")
        return lattice_family_size(i, j) * base(1, 1, d, t - i - j)
    if family_kind == "symmetric":
        if r != w or r < 2:
            raise NotApplicable("symmetric family needs r = w >= 2")
        if t < max(4 * r - 6, 2 * r):
            raise NotApplicable(f"need t >= {max(4 * r - 6, 2 * r)}")
        return symmetric_family_size(r) * base(1, 1, d, t - 2 * r + 2)
    raise DomainError(f"unknown family kind {family_kind!r}")


# --- report ----------------------------------------------------------------


@dataclass
class BoundReport:
    r: int
    w: int
    d: int
    t: int
    c: float | None = None
    entries: list[BoundEntry] = field(default_factory=list)
    best_certified_lower: int | None = None
    best_upper: int | None = None

    def entry(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "parameters": {"r": self.r, "w": self.w, "d": self.d, "t": self.t, "c": self.c},
            "entries": [e.to_dict() for e in self.entries],
            "best_certified_lower": self.best_certified_lower,
            "best_upper": self.best_upper,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    def format_human(self) -> str:
        lines = [f"N(({self.r},{self.w};{self.d}),{self.t})"]
        for e in self.entries:
            if e.applicable:
                value = _format_value(e.value)
            else:
                value = "n/a"
            note = f"  ({e.note})" if e.note else ""
            lines.append(f"  {e.name:<26} {value:>14}  [{e.tier}]{note}")
        lines.append(f"  best certified lower: {self.best_certified_lower}")
        lines.append(f"  best upper:           {self.best_upper}")
        return "\n".join(lines)


def _format_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def best_bounds(
    r: int,
    w: int,
    d: int,
    t: int,
    c: float | None = None,
    epsilon: float | None = None,
    log_base: float = 2,
    engine: LowerBoundEngine | None = None,
) -> BoundReport:
    """Evaluate every applicable bound on N((r,w;d),t) and summarize them."""
    if r < w:
        r, w = w, r
    _check_rwt(r, w, t)
    if d < 1:
        raise DomainError("d must be >= 1")
    if r + w > MAX_R_PLUS_W or t > MAX_T:
        raise BudgetError(f"bounds are capped at r + w <= {MAX_R_PLUS_W}, t <= {MAX_T}")
    engine = engine or LowerBoundEngine()
    rep = BoundReport(r, w, d, t, c)
    add = rep.entries.append

    exact = exact_value(r, w, d, t)
    if exact is not None:
        add(BoundEntry("exact", exact.value, EXACT, True, exact.source))

    bc_star, m = bc_star_formula(t, r, w)
    add(BoundEntry("induced-matching", d * binomial(r + w, r), LOWER, True, "d * C(r+w, r)"))
    add(BoundEntry("fractional", fractional_lower(r, w, d, t), LOWER, True, f"bc* = {bc_star} at m = {m}"))
    if d == 1:
        add(BoundEntry("engel", engel_lower(r, w, t), LOWER))
        ratio, em = engel_fractional_ratio(r, w, t)
        add(BoundEntry("engel-fractional", engel_fractional_lower(r, w, t), LOWER,
                       True, f"ratio {ratio} at m = {em}"))
    else:
        add(BoundEntry("engel", None, LOWER, False, "stated for d = 1"))
        add(BoundEntry("engel-fractional", None, LOWER, False, "stated for d = 1"))
    best_s, best_rec = None, -1
    for s in range(1, r + w + 1):
        value = recursive_lower(r, w, d, t, s, engine._lower)
        if value > best_rec:
            best_s, best_rec = s, value
    add(BoundEntry("recursive", best_rec, LOWER, True, f"best at s = {best_s}"))
    for kind in ("lattice", "symmetric"):
        try:
            add(BoundEntry(f"engelb-{kind}", engelb_lower(r, w, d, t, kind, engine._lower), LOWER))
        except NotApplicable as exc:
            add(BoundEntry(f"engelb-{kind}", None, LOWER, False, str(exc)))
    add(BoundEntry("setpairs-chain", setpairs_lower(r, w, d, t, chain_setpairs(r, w), engine._lower), LOWER))
    add(BoundEntry("engine", engine.lower(r, w, d, t), LOWER, True,
                   "memoized maximum, including monotonicity in d and t"))

    if d == 1:
        add(BoundEntry("lovasz", lovasz_upper(r, w, t), UPPER, True, "natural log"))
    else:
        add(BoundEntry("lovasz", None, UPPER, False, "stated for d = 1"))
    add(BoundEntry("star-cover", d * binomial(t, w), UPPER, True, "d copies of the w-side stars"))
    unit = orbit_unit(t, r, w)
    if d % unit == 0:
        add(BoundEntry("orbit", d // unit * math.factorial(t), UPPER, True, f"orbit multiplicity {unit}"))
    if (r, w) == (1, 1) and t == 4 * d - 1 and _hadamard_ok(4 * d):
        add(BoundEntry("hadamard", t, UPPER, True, f"order {4 * d}"))

    if c is not None:
        for variant in ("rcff", "stinson1", "stinson2", "estimate", "erdos12"):
            entry = density_lower(r, w, t, c, variant, log_base=log_base)
            entry.name = f"density-{variant}"
            add(entry)
    if epsilon is not None:
        entry = density_lower(r, w, t, c, "engel_asymptotic", epsilon, log_base)
        entry.name = "density-engel_asymptotic"
        add(entry)

    lowers = [e.value for e in rep.entries if e.applicable and e.tier in (EXACT, LOWER)]
    uppers = []
    for e in rep.entries:
        if e.applicable and e.tier in (EXACT, UPPER):
            uppers.append(math.floor(e.value) if isinstance(e.value, float) else e.value)
    rep.best_certified_lower = max(lowers) if lowers else None
    rep.best_upper = min(uppers) if uppers else None
    if exact is not None:
        assert rep.best_certified_lower == exact.value == rep.best_upper, rep.format_human()
    assert rep.best_upper is None or rep.best_certified_lower <= rep.best_upper, rep.format_human()
    return rep
