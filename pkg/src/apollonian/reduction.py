"""Reduction of integral quadruples and the root/exceptional classification.

The reduction step sorts a quadruple ascending, then applies the first of
S1, S2, S3, S4 (in that order) that strictly lowers the l1 norm, until none
does.  Reduced quadruples with L >= 0 satisfy either a+b+c >= d > 0 (root)
or a+b+c <= 0 < d (exceptional); those with L < 0 are classified through
their reversed negation (-d, -c, -b, -a).
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple, Union

from .core_forms import (
    Quadruple,
    coordinate_sum,
    descartes_form,
    height_sq,
    l1_norm,
    reversed_negation,
)
from .group import GENERATORS, apply_generator


class Kind(enum.Enum):
    ROOT = "root"
    EXCEPTIONAL = "exceptional"


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True, order=True)
class ReducedQuadruple:
    """A reduced quadruple stored ascending, with its kind and the sign of L."""

    quadruple: Quadruple
    kind: Kind = field(compare=False)
    orientation: int = field(compare=False)

    @property
    def canonical(self) -> Quadruple:
        """Ascending representative with L >= 0."""
        if self.orientation < 0:
            return reversed_negation(self.quadruple)
        return self.quadruple

    def mirror(self) -> "ReducedQuadruple":
        q = reversed_negation(self.quadruple)
        return ReducedQuadruple(q, self.kind, -self.orientation)


@dataclass(frozen=True)
class ReductionTrace:
    start: Quadruple
    steps: Tuple[Tuple[int, Quadruple], ...]
    result: ReducedQuadruple

    @property
    def word(self) -> Tuple[int, ...]:
        """Sorted-frame generator indices applied, in order."""
        return tuple(i for i, _ in self.steps)


def _first_decreasing(q: Quadruple) -> Tuple[int, Quadruple] | None:
    size = l1_norm(q)
    for i in GENERATORS:
        child = apply_generator(i, q)
        if l1_norm(child) < size:
            return i, child
    return None


def is_reduced(q: Quadruple) -> bool:
    size = l1_norm(q)
    return all(l1_norm(apply_generator(i, q)) >= size for i in GENERATORS)


def classify_reduced(q: Quadruple) -> Kind:
    q = tuple(sorted(q))  # type: ignore[assignment]
    if not any(q):
        raise ValueError("the zero quadruple has no classification")
    if not is_reduced(q):
        raise ValueError(f"{q} is not reduced")
    if coordinate_sum(q) < 0:
        q = reversed_negation(q)
    a, b, c, d = q
    if a + b + c >= d > 0:
        return Kind.ROOT
    if a + b + c <= 0 < d:
        return Kind.EXCEPTIONAL
    raise AssertionError(f"reduced quadruple {q} fits neither class")


def make_reduced(q: Quadruple) -> ReducedQuadruple:
    q = tuple(sorted(q))  # type: ignore[assignment]
    return ReducedQuadruple(q, classify_reduced(q), _sign(coordinate_sum(q)))


def reduce(q: Quadruple) -> ReductionTrace:
    """Run the general reduction algorithm and record every step."""
    start = tuple(q)
    if not any(start):
        raise ValueError("cannot reduce the zero quadruple")
    steps = []
    cur = tuple(sorted(start))
    while True:
        hit = _first_decreasing(cur)  # type: ignore[arg-type]
        if hit is None:
            break
        steps.append(hit)
        cur = tuple(sorted(hit[1]))
    return ReductionTrace(start, tuple(steps), make_reduced(cur))  # type: ignore[arg-type]


# -- level scans ----------------------------------------------------------


def level_quadruples(k: int, max_height_sq: int) -> List[Quadruple]:
    """All ascending quadruples with Q_D = k, L >= 0 and height_sq <= max_height_sq.

    The three smallest entries are enumerated and the largest is solved for
    exactly from the quadratic d = s +- sqrt(4(ab+bc+ca) + k), s = a+b+c.
    """
    out = set()
    for a, b, c, rest in _triples(max_height_sq):
        disc = 4 * (a * b + b * c + c * a) + k
        if disc < 0:
            continue
        root = math.isqrt(disc)
        if root * root != disc:
            continue
        s = a + b + c
        for d in (s - root, s + root):
            if d >= c and d * d <= rest and s + d >= 0:
                out.add((a, b, c, d))
    return sorted(out)


def _triples(max_height_sq: int, max_sum: int | None = None):
    """Ascending (a, b, c) with a^2+b^2+c^2 <= max_height_sq, plus the leftover budget.

    With ``max_sum`` set, only triples with a+b+c <= max_sum are produced.
    """
    r = math.isqrt(max_height_sq)
    for a in range(-r, r + 1):
        ra = max_height_sq - a * a
        for b in range(a, r + 1):
            rb = ra - b * b
            if rb < 0:
                if b > 0:
                    break
                continue
            if max_sum is not None and a + 2 * b > max_sum:
                break
            for c in range(b, r + 1):
                rc = rb - c * c
                if rc < 0:
                    if c > 0:
                        break
                    continue
                if max_sum is not None and a + b + c > max_sum:
                    break
                yield a, b, c, rc


def find_exceptional(k: int) -> List[ReducedQuadruple]:
    """Exceptional quadruples of level k, as ascending L >= 0 representatives.

    Every exceptional quadruple has height_sq <= 2k^2, so the scan over that
    ball is exhaustive.  Mirror images with L < 0 are implied.
    """
    if k == 0:
        return []
    out = []
    for q in _exceptional_candidates(k):
        if is_reduced(q) and classify_reduced(q) is Kind.EXCEPTIONAL:
            out.append(make_reduced(q))
    return sorted(out)


def _exceptional_candidates(k: int) -> List[Quadruple]:
    # Ascending, L >= 0, a+b+c <= 0 < d and height_sq <= 2k^2.  With s = a+b+c,
    # d = s + r where r^2 = 4(ab+bc+ca) + k, and d > 0 >= s needs r^2 > s^2,
    # i.e. (c - a - b)^2 < k + 4ab: a window of c values around a + b.
    if k <= 0:
        return []
    bound = 2 * k * k
    r = math.isqrt(bound)
    out = []
    for a in range(-r, 1):
        ra = bound - a * a
        for b in range(a, -a // 2 + 1):
            rb = ra - b * b
            if rb < 0:
                if b > 0:
                    break
                continue
            width = k + 4 * a * b
            if width <= 0:
                continue
            w = math.isqrt(width)
            c_lo = max(b, a + b - w)
            c_hi = min(-a - b, a + b + w)
            for c in range(c_lo, c_hi + 1):
                rc = rb - c * c
                if rc < 0:
                    continue
                disc = 4 * (a * b + b * c + c * a) + k
                root = math.isqrt(disc)
                if root * root != disc:
                    continue
                s = a + b + c
                d = s + root
                if d > 0 and d >= c and d * d <= rc and s + d >= 0:
                    out.append((a, b, c, d))
    return out


def group_reduced_into_orbits(reduced: Iterable[ReducedQuadruple | Quadruple], k: int) -> List[List[Quadruple]]:
    """Partition reduced quadruples (ascending) into orbit classes.

    Connectivity is decided by a BFS over ascending quadruples of level k
    with l1 norm at most 4 times the largest input norm.
    """
    items = sorted({tuple(sorted(r.quadruple if isinstance(r, ReducedQuadruple) else r)) for r in reduced})
    for q in items:
        if descartes_form(q) != k:
            raise ValueError(f"{q} is not of level {k}")
    if not items:
        return []
    limit = 4 * max(l1_norm(q) for q in items)
    remaining = set(items)
    groups = []
    for q in items:
        if q not in remaining:
            continue
        seen = {q}
        todo = deque([q])
        while todo:
            cur = todo.popleft()
            for i in GENERATORS:
                nxt = tuple(sorted(apply_generator(i, cur)))
                if nxt not in seen and l1_norm(nxt) <= limit:
                    seen.add(nxt)
                    todo.append(nxt)
        members = sorted(remaining & seen)
        remaining -= seen
        groups.append(members)
    return groups


# -- root quadruples with fixed smallest entry ----------------------------


@dataclass(frozen=True)
class InfiniteFamily:
    """The family (-l, l, c, c), c >= max(l, 1), of level 4 l^2."""

    l: int

    @property
    def level(self) -> int:
        return 4 * self.l * self.l

    def member(self, c: int) -> Quadruple:
        if c < max(self.l, 1):
            raise ValueError(f"c must be at least {max(self.l, 1)}")
        return (-self.l, self.l, c, c)

    def __str__(self) -> str:
        return f"(-{self.l}, {self.l}, c, c) for c >= {max(self.l, 1)}"


RootSearchResult = Union[List[Quadruple], InfiniteFamily]


def _roots_with_smallest(k: int, a: int) -> List[Quadruple]:
    # Roots (a, b, c, d), a <= b <= c <= d, a+b+c >= d > 0, have b >= 0 and
    # a+b >= x := a+b+c-d >= 0 with x^2 = 4(ab+ac+bc) + k, hence
    # (a-b)^2 >= 4(a+b)c + k.  When a+b > 0 this caps c, and c >= b caps b.
    out = []
    b = max(a, 0, -a)
    while True:
        if a + b <= 0:
            # a + b = 0 forces x = 0, d = c and k = 4a^2: the infinite family.
            b += 1
            continue
        slack = (b - a) ** 2 - k
        if slack < 4 * (a + b) * b:
            # 4(a+b)b - (b-a)^2 is increasing in b once a+b > 0.
            break
        c_max = slack // (4 * (a + b))
        for c in range(b, c_max + 1):
            disc = 4 * (a * b + b * c + c * a) + k
            if disc < 0:
                continue
            root = math.isqrt(disc)
            if root * root != disc:
                continue
            d = a + b + c - root
            if d >= c and d > 0:
                q = (a, b, c, d)
                assert descartes_form(q) == k
                out.append(q)
        b += 1
    return out


def root_quadruples_with_min(k: int, n: int) -> RootSearchResult:
    """Root quadruples (-n, b, c, d) of level k with L > 0, ascending."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    if k == 4 * n * n:
        return InfiniteFamily(n)
    return _roots_with_smallest(k, -n)


def root_quadruples_nonnegative_min(k: int) -> List[Quadruple]:
    """Root quadruples of level k whose smallest entry is >= 0.

    Such roots satisfy a <= sqrt(|k|) and exist only for k <= 0; for k = 0
    the family (0, 0, c, c) is infinite and only its primitive member
    (0, 0, 1, 1) is returned.
    """
    if k > 0:
        return []
    out = []
    if k == 0:
        out.append((0, 0, 1, 1))
    for a in range(0, math.isqrt(-k) + 1):
        out.extend(q for q in _roots_with_smallest(k, a) if q not in out)
    return sorted(out)


def count_root_quadruples(k: int, n: int) -> Union[int, float]:
    """N_root(k; -n); ``math.inf`` for the infinite families."""
    res = root_quadruples_with_min(k, n)
    if isinstance(res, InfiniteFamily):
        return math.inf
    return len(res)


def exceptional_orbit_representatives(k: int) -> List[List[Quadruple]]:
    """Exceptional orbits of level k, each given by all its reduced members (both signs)."""
    found = find_exceptional(k)
    both = {r.quadruple for r in found} | {r.mirror().quadruple for r in found}
    return group_reduced_into_orbits(both, k)


def check_root_conditions(q: Sequence[int]) -> bool:
    a, b, c, d = sorted(q)
    return a + b + c >= d > 0


__all__ = [
    "Kind",
    "ReducedQuadruple",
    "ReductionTrace",
    "InfiniteFamily",
    "reduce",
    "is_reduced",
    "classify_reduced",
    "make_reduced",
    "level_quadruples",
    "find_exceptional",
    "group_reduced_into_orbits",
    "root_quadruples_with_min",
    "root_quadruples_nonnegative_min",
    "count_root_quadruples",
    "exceptional_orbit_representatives",
    "height_sq",
]
