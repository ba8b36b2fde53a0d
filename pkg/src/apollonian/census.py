"""Which integers occur as curvatures in an integral Apollonian packing.

For an orbit with a root quadruple every non-root quadruple has a unique
largest entry, and moving away from the root only increases it.  A
depth-first walk over ascending quadruples, pruned at the bound, therefore
visits each circle of curvature <= bound and keeps only the stack in memory.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .core_forms import Quadruple, descartes_form, l1_norm
from .group import apply_generator, GENERATORS


@dataclass(frozen=True)
class CurvatureCensus:
    bases: Tuple[Quadruple, ...]
    bound: int
    present: Tuple[int, ...]
    nodes: int
    max_depth: Optional[int] = None

    def __contains__(self, n: int) -> bool:
        from bisect import bisect_left

        i = bisect_left(self.present, n)
        return i < len(self.present) and self.present[i] == n

    def missing(self) -> List[int]:
        """Positive integers up to the bound that never occur."""
        seen = bytearray(self.bound + 1)
        for v in self.present:
            if 0 < v <= self.bound:
                seen[v] = 1
        return [n for n in range(1, self.bound + 1) if not seen[n]]

    def by_residue(self, m: int) -> Dict[int, List[int]]:
        return missing_report(self, m)


def _root_children(root: Quadruple, bound: int) -> List[Quadruple]:
    out = []
    for i in GENERATORS:
        child = tuple(sorted(apply_generator(i, root)))
        if child == root or child in out or child[3] > bound:
            continue
        out.append(child)
    return out  # type: ignore[return-value]


def curvature_census(root: Sequence[int], bound: int, max_depth: Optional[int] = None,
                     check: bool = True) -> CurvatureCensus:
    """All curvatures <= bound in the packing of a root quadruple.

    ``max_depth`` limits the walk to group words of at most that length
    (the root has depth 0); by default the walk is complete.
    """
    root = tuple(sorted(root))  # type: ignore[assignment]
    if bound < root[3]:
        raise ValueError(f"bound {bound} is below the largest entry of {root}")
    if check:
        from .reduction import Kind, classify_reduced, is_reduced

        if not is_reduced(root) or classify_reduced(root) is not Kind.ROOT:
            raise ValueError(f"{root} is not a root quadruple; use curvature_census_exceptional")
    if max_depth is None:
        max_depth = -1

    seen_pos = bytearray(bound + 1)
    negatives = set()
    for v in root:
        if v >= 0:
            seen_pos[v] = 1
        else:
            negatives.add(v)

    stack = []
    if max_depth != 0:
        stack = [(w, x, y, z, 1) for (w, x, y, z) in _root_children(root, bound)]  # type: ignore[misc]
    nodes = 1
    while stack:
        w, x, y, z, depth = stack.pop()
        nodes += 1
        seen_pos[z] = 1
        if depth == max_depth:
            continue
        depth += 1
        # New entries from replacing y, x, w; they increase in that order.
        ny = 2 * (w + x + z) - y
        if ny > bound:
            continue
        stack.append((w, x, z, ny, depth))
        if x == y:
            continue
        nx = 2 * (w + y + z) - x
        if nx > bound:
            continue
        stack.append((w, y, z, nx, depth))
        if w == x:
            continue
        nw = 2 * (x + y + z) - w
        if nw <= bound:
            stack.append((x, y, z, nw, depth))

    present = sorted(negatives) + [v for v in range(bound + 1) if seen_pos[v]]
    return CurvatureCensus((root,), bound, tuple(present), nodes,  # type: ignore[arg-type]
                           None if max_depth < 0 else max_depth)


def exceptional_orbit_stream(bases: Iterable[Sequence[int]], bound: int) -> Iterator[Quadruple]:
    """Ascending quadruples of the orbits through ``bases`` with l1 norm <= 4 * bound.

    Works for any orbit, rooted or not, at the cost of a visited set.
    """
    limit = 4 * bound
    start = {tuple(sorted(b)) for b in bases}
    seen = set(start)
    todo = deque(sorted(start))
    while todo:
        q = todo.popleft()
        yield q  # type: ignore[misc]
        for i in GENERATORS:
            nxt = tuple(sorted(apply_generator(i, q)))  # type: ignore[arg-type]
            if nxt not in seen and l1_norm(nxt) <= limit:  # type: ignore[arg-type]
                seen.add(nxt)
                todo.append(nxt)


def curvature_census_exceptional(bases: Iterable[Sequence[int]], bound: int) -> CurvatureCensus:
    """Curvatures of absolute value <= bound in an orbit without a root quadruple."""
    bases = tuple(tuple(sorted(b)) for b in bases)
    if not bases:
        raise ValueError("need at least one base quadruple")
    levels = {descartes_form(b) for b in bases}  # type: ignore[arg-type]
    if len(levels) != 1:
        raise ValueError(f"bases have different levels {sorted(levels)}")
    present = set()
    nodes = 0
    for q in exceptional_orbit_stream(bases, bound):
        nodes += 1
        present.update(v for v in q if abs(v) <= bound)
    return CurvatureCensus(bases, bound, tuple(sorted(present)), nodes)  # type: ignore[arg-type]


def missing_report(census: CurvatureCensus, m: int) -> Dict[int, List[int]]:
    """Missing positive curvatures grouped by residue mod m (every residue is a key)."""
    if m < 1:
        raise ValueError("modulus must be positive")
    out: Dict[int, List[int]] = {r: [] for r in range(m)}
    for n in census.missing():
        out[n % m].append(n)
    return out


def depth_to_reach(root: Sequence[int], bound: int) -> Dict[int, int]:
    """Shortest word length at which each curvature <= bound first appears."""
    root = tuple(sorted(root))
    best: Dict[int, int] = {v: 0 for v in root if v >= 0}
    stack = [(w, x, y, z, 1) for (w, x, y, z) in _root_children(root, bound)]  # type: ignore[misc]
    while stack:
        w, x, y, z, depth = stack.pop()
        if z not in best or depth < best[z]:
            best[z] = depth
        depth += 1
        ny = 2 * (w + x + z) - y
        if ny <= bound:
            stack.append((w, x, z, ny, depth))
        nx = 2 * (w + y + z) - x
        if x != y and nx <= bound:
            stack.append((w, y, z, nx, depth))
        nw = 2 * (x + y + z) - w
        if w != x and x != y and nw <= bound:
            stack.append((x, y, z, nw, depth))
    return best
