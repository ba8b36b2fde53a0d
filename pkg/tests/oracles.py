"""Slow, independent reference computations used only by the tests.

None of these import the package's search code; they rebuild each quantity
from definitions with plain loops.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

DESCARTES = ((1, -1, -1, -1), (-1, 1, -1, -1), (-1, -1, 1, -1), (-1, -1, -1, 1))


def qd_matrix(v):
    return sum(v[i] * DESCARTES[i][j] * v[j] for i in range(4) for j in range(4))


def ql(v):
    return -v[0] ** 2 + v[1] ** 2 + v[2] ** 2 + v[3] ** 2


def ball_points(T):
    r = range(-T, T + 1)
    for v in itertools.product(r, repeat=4):
        if sum(x * x for x in v) <= T * T:
            yield v


def count_descartes_brute(k, T):
    return sum(1 for v in ball_points(T) if qd_matrix(v) == k)


def count_lorentz_brute(k2, T):
    return sum(1 for v in ball_points(T) if ql(v) == k2)


def sorted_level_points(k, max_h2):
    """Ascending quadruples with Q_D = k, sum >= 0 and height^2 <= max_h2, by 4-fold scan."""
    r = math.isqrt(max_h2)
    out = []
    for a in range(-r, r + 1):
        for b in range(a, r + 1):
            for c in range(b, r + 1):
                for d in range(c, r + 1):
                    q = (a, b, c, d)
                    if a * a + b * b + c * c + d * d <= max_h2 and sum(q) >= 0 and qd_matrix(q) == k:
                        out.append(q)
    return out


def step(i, q):
    q = list(q)
    q[i] = 2 * (sum(q) - q[i]) - q[i]
    return tuple(q)


def roots_brute(k, n):
    """Root quadruples (-n, b, c, d) of level k with sum > 0, scanning b <= c <= C and solving for d.

    For a root with a = -n, the largest possible c occurs at b = n + 1, where
    (a - b)^2 >= 4(a + b)c + k gives c <= ((2n + 1)^2 - k) / 4.
    """
    a = -n
    C = ((2 * n + 1) ** 2 + abs(k)) // 4 + 2
    out = set()
    for b in range(0, C + 1):
        for c in range(b, C + 1):
            for d in range(c, a + b + c + 1):
                q = (a, b, c, d)
                if d > 0 and sum(q) > 0 and qd_matrix(q) == k:
                    out.add(q)
    return sorted(out)


def reduce_form(A, B, C):
    """Classical SL2 reduction of A x^2 + 2B xy + C y^2 (A, C > 0)."""
    while True:
        if A > C:
            A, B, C = C, -B, A
            continue
        if 2 * abs(B) > A:
            # x -> x + t y moves B to B + tA, into [-A/2, A/2).
            t = -((2 * B + A) // (2 * A))
            A, B, C = A, B + t * A, C + 2 * t * B + t * t * A
            continue
        break
    if 2 * abs(B) == A or A == C:
        B = abs(B)
    return A, B, C


def sl2_classes_brute(delta, primitive_only=False):
    """Reduce every form with |B| <= bound and collect distinct reduced representatives."""
    N = -delta // 4
    classes = set()
    for A in range(1, 2 * N + 2):
        for B in range(-A, A + 1):
            if (B * B + N) % A:
                continue
            C = (B * B + N) // A
            if primitive_only and math.gcd(math.gcd(A, 2 * B), C) != 1:
                continue
            classes.add(reduce_form(A, B, C))
    return classes


def gl2_classes_brute(delta):
    return {(A, abs(B), C) for A, B, C in sl2_classes_brute(delta)}


def unordered_solutions_brute(m, k):
    return {tuple(sorted(v)) for v in itertools.product(range(m), repeat=4)
            if (qd_matrix(v) - k) % m == 0}


def packing_curvatures_bfs(root, bound):
    """Curvatures <= bound in the packing of ``root`` by breadth-first search with a visited set.

    Descending is impossible past the root, so capping the largest entry at
    ``bound`` keeps the search finite.
    """
    root = tuple(sorted(root))
    seen = {root}
    todo = deque([root])
    found = set(root)
    while todo:
        q = todo.popleft()
        for i in range(4):
            nxt = tuple(sorted(step(i, q)))
            if max(nxt) <= bound and nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
                found.update(nxt)
    return found


def exceptional_in_ball(k, max_h2):
    """Reduced exceptional ascending quadruples of level k with height^2 <= max_h2.

    Scans ascending triples (a, b, c) with numpy over c and solves the
    level equation d^2 - 2sd + 2(a^2+b^2+c^2) - s^2 - k = 0, s = a+b+c,
    for d >= c.  Only the orientation with coordinate sum >= 0 is kept.
    """
    import numpy as np

    r = math.isqrt(max_h2)
    found = []
    for a in range(-r, r + 1):
        for b in range(a, r + 1):
            rest = max_h2 - a * a - b * b
            if rest < b * b and b >= 0:
                break
            if rest < 0:
                continue
            c = np.arange(b, math.isqrt(rest) + 1, dtype=np.int64)
            if c.size == 0:
                continue
            s = a + b + c
            disc = 2 * s * s - 2 * (a * a + b * b + c * c) + k
            ok = disc >= 0
            root = np.zeros_like(disc)
            root[ok] = np.round(np.sqrt(disc[ok].astype(np.float64))).astype(np.int64)
            ok &= root * root == disc
            for ci, si, ri in zip(c[ok].tolist(), s[ok].tolist(), root[ok].tolist()):
                for d in {si + ri, si - ri}:
                    q = (a, b, ci, d)
                    if d >= ci and a * a + b * b + ci * ci + d * d <= max_h2:
                        found.append(q)
    out = set()
    for q in found:
        assert qd_matrix(q) == k
        l1 = sum(map(abs, q))
        if any(sum(map(abs, step(i, q))) < l1 for i in range(4)):
            continue
        a, b, c, d = q
        if sum(q) >= 0 and a + b + c <= 0 < d:
            out.add(q)
    return out
