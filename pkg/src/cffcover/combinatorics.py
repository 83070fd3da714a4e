"""Exact counting primitives: binomials, separating-system sizes, lattice
paths below a line, and ballot sequences."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from numbers import Rational

from .errors import BudgetError, DomainError

BALLOT_ENUMERATION_CAP = 22


def binomial(n: int, k: int) -> int:
    """C(n, k) with the convention that it vanishes outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def central_binomial(c: int) -> int:
    return binomial(c, c // 2)


def spencer_R(t: int) -> int:
    """Minimum size of a strongly separating system on ``t`` points.

    This is the least ``c`` with ``C(c, floor(c/2)) >= t``.
    """
    if t < 1:
        raise DomainError(f"spencer_R needs t >= 1, got {t}")
    c = 0
    while central_binomial(c) < t:
        c += 1
    return c


def _check_grid(i: int, j: int) -> None:
    if i < 1 or j < 1:
        raise DomainError(f"lattice grid must be at least 1x1, got {i}x{j}")


def enumerate_lattice_paths(i: int, j: int) -> list[str]:
    """All monotone paths from (0,0) to (i,j) staying strictly below y = (j/i) x.

    Paths are strings over ``R`` (right) and ``U`` (up), returned in
    lexicographic order. Only the two endpoints may touch the line.
    """
    _check_grid(i, j)
    out: list[str] = []
    steps: list[str] = []

    def walk(x: int, y: int) -> None:
        if x == i and y == j:
            out.append("".join(steps))
            return
        for step, nx, ny in (("R", x + 1, y), ("U", x, y + 1)):
            if nx > i or ny > j:
                continue
            if (nx, ny) != (i, j) and not ny * i < nx * j:
                continue
            steps.append(step)
            walk(nx, ny)
            steps.pop()

    walk(0, 0)
    return out


def bizley_count(i: int, j: int) -> int:
    """Closed-form ``|L(i, j)| = C(i+j, i) / (i+j)``, valid for coprime i, j."""
    _check_grid(i, j)
    if math.gcd(i, j) != 1:
        raise DomainError(f"closed form needs gcd(i, j) = 1, got ({i}, {j})")
    total = binomial(i + j, i)
    assert total % (i + j) == 0
    return total // (i + j)


def lattice_path_count(i: int, j: int) -> int:
    """|L(i, j)| by the closed form when it applies, else by enumeration."""
    if math.gcd(i, j) == 1:
        return bizley_count(i, j)
    return len(enumerate_lattice_paths(i, j))


def _as_fraction(k) -> Fraction:
    if isinstance(k, (int, Rational)):
        return Fraction(k)
    if isinstance(k, str):
        return Fraction(k)
    raise DomainError(f"ballot ratio must be rational, got {k!r}")


def ballot_count_enumerated(r: int, w: int, k) -> int:
    """Count vote orders where A stays strictly ahead of k times B, by brute force."""
    k = _as_fraction(k)
    if r < 0 or w < 0:
        raise DomainError("vote counts must be nonnegative")
    if k <= 0:
        raise DomainError("ballot ratio must be positive")
    if r + w > BALLOT_ENUMERATION_CAP:
        raise BudgetError(f"enumeration capped at r+w <= {BALLOT_ENUMERATION_CAP}")
    if not r > k * w:
        return 0
    n = r + w
    good = 0
    for b_positions in combinations(range(n), w):
        b_set = set(b_positions)
        a_votes = b_votes = 0
        for pos in range(n):
            if pos in b_set:
                b_votes += 1
            else:
                a_votes += 1
            if not a_votes > k * b_votes:
                break
        else:
            good += 1
    return good


def ballot_count(r: int, w: int, k) -> int:
    """Number of good vote sequences ``B(r, w; k)``.

    Uses ``(r - k w) / (r + w) * C(r+w, r)`` for positive integer ``k`` and
    exhaustive enumeration otherwise.
    """
    k = _as_fraction(k)
    if r < 0 or w < 0:
        raise DomainError("vote counts must be nonnegative")
    if k <= 0:
        raise DomainError("ballot ratio must be positive")
    if not r > k * w:
        return 0
    if k.denominator == 1:
        value = Fraction(r - k * w, r + w) * binomial(r + w, r)
        assert value.denominator == 1
        return int(value)
    return ballot_count_enumerated(r, w, k)
