"""The Apollonian group: generators S1..S4, words, and rooted orbit traversal."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

from .core_forms import Quadruple

Word = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]

GENERATORS = (1, 2, 3, 4)


def _check_index(i: int) -> None:
    if i not in GENERATORS:
        raise ValueError(f"generator index must be in 1..4, got {i}")


def apply_generator(i: int, q: Quadruple) -> Quadruple:
    """Replace coordinate ``i`` (1-based) by twice the sum of the others minus itself."""
    _check_index(i)
    a, b, c, d = q
    if i == 1:
        return (2 * (b + c + d) - a, b, c, d)
    if i == 2:
        return (a, 2 * (a + c + d) - b, c, d)
    if i == 3:
        return (a, b, 2 * (a + b + d) - c, d)
    return (a, b, c, 2 * (a + b + c) - d)


def apply_word(word: Sequence[int], q: Quadruple) -> Quadruple:
    """Apply the letters of ``word`` left to right (first letter first)."""
    for i in word:
        q = apply_generator(i, q)
    return q


def canonical_word(word: Sequence[int]) -> Word:
    """Cancel adjacent equal letters (each S_i is an involution)."""
    out: list[int] = []
    for i in word:
        _check_index(i)
        if out and out[-1] == i:
            out.pop()
        else:
            out.append(i)
    return tuple(out)


def generator_matrix(i: int) -> Matrix:
    _check_index(i)
    rows = []
    for r in range(4):
        if r == i - 1:
            rows.append(tuple(-1 if c == r else 2 for c in range(4)))
        else:
            rows.append(tuple(1 if c == r else 0 for c in range(4)))
    return tuple(rows)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n, m, p = len(A), len(B), len(B[0])
    return tuple(
        tuple(sum(A[r][t] * B[t][c] for t in range(m)) for c in range(p))
        for r in range(n)
    )


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


@dataclass(frozen=True)
class OrbitRecord:
    quadruple: Quadruple
    word_from_base: Word


def rooted_orbit_stream(base: Quadruple, bound: int, check: bool = False) -> Iterator[OrbitRecord]:
    """Yield every ordered quadruple in the orbit of a root quadruple with max entry <= bound.

    Traversal is breadth first by word length.  Each non-root node is
    expanded by the three generators other than the one it arrived by; in
    an orbit with a root, the new coordinate is always the strict maximum
    and grows, so children above ``bound`` can be pruned with their whole
    subtree.  The pruning is invalid for exceptional orbits.

    With ``check=True`` the base is verified to be a root quadruple.
    """
    base = tuple(base)  # type: ignore[assignment]
    if check:
        from .reduction import Kind, classify_reduced, is_reduced

        if not is_reduced(base) or classify_reduced(base) is not Kind.ROOT:
            raise ValueError(f"{base} is not a root quadruple")
    if bound < max(base):
        raise ValueError(f"bound {bound} is below the largest entry of {base}")

    yield OrbitRecord(base, ())
    frontier: deque[tuple[Quadruple, Word]] = deque()
    for i in GENERATORS:
        child = apply_generator(i, base)
        if child == base or child[i - 1] > bound:
            continue
        frontier.append((child, (i,)))
    while frontier:
        q, word = frontier.popleft()
        yield OrbitRecord(q, word)
        last = word[-1]
        for i in GENERATORS:
            if i == last:
                continue
            child = apply_generator(i, q)
            if child[i - 1] <= bound:
                frontier.append((child, word + (i,)))
