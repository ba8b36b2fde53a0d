"""Descartes quadruples modulo m, their Apollonian orbits, and lifting sieves.

Residue quadruples are unordered, stored as ascending tuples of residues.
The generators act on an ordered representative and the result is sorted
again; since the generators are permuted among themselves by coordinate
permutations, orbits of unordered quadruples are well defined.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .core_forms import Quadruple, descartes_form

Residues = Tuple[int, int, int, int]

BASE_MODULUS = 12

# Lifting moduli tried after the base modulus, per level.
LIFT_CHAINS: Dict[int, Tuple[int, ...]] = {-4: (24, 48), 4: (24, 48, 96)}


class Status(enum.Enum):
    SURVIVING = "surviving"
    ELIMINATED_24 = "eliminated mod 24"
    ELIMINATED_48 = "eliminated mod 48"
    ELIMINATED_96 = "eliminated mod 96"


_ELIMINATED_AT = {24: Status.ELIMINATED_24, 48: Status.ELIMINATED_48, 96: Status.ELIMINATED_96}


@dataclass(frozen=True)
class ResidueOrbit:
    members: FrozenSet[Residues]
    modulus: int
    name: str = ""
    status: Status = Status.SURVIVING
    witnesses: Tuple[Tuple[Residues, Optional[Quadruple]], ...] = field(default=(), compare=False)

    @property
    def smallest(self) -> Residues:
        return min(self.members)

    def witness_for(self, r: Residues) -> Optional[Quadruple]:
        return dict(self.witnesses).get(r)

    @property
    def fully_witnessed(self) -> bool:
        found = dict(self.witnesses)
        return all(found.get(r) is not None for r in self.members)


def residue_class(q: Sequence[int], m: int) -> Residues:
    return tuple(sorted(v % m for v in q))  # type: ignore[return-value]


def _step(i: int, q: Residues, m: int) -> Residues:
    s = sum(q)
    r = list(q)
    r[i] = (2 * (s - q[i]) - q[i]) % m
    return tuple(sorted(r))  # type: ignore[return-value]


def solutions_mod(m: int, k: int) -> List[Residues]:
    """Unordered residue quadruples with Q_D = k (mod m), sorted."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    return [
        q for q in itertools.combinations_with_replacement(range(m), 4)
        if (descartes_form(q) - k) % m == 0
    ]


def orbits_mod(m: int, k: int) -> List[ResidueOrbit]:
    """Partition solutions_mod(m, k) into orbits, sorted by smallest member."""
    remaining = set(solutions_mod(m, k))
    orbits = []
    for q in sorted(remaining):
        if q not in remaining:
            continue
        seen = {q}
        todo = deque([q])
        while todo:
            cur = todo.popleft()
            for i in range(4):
                nxt = _step(i, cur, m)
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        remaining -= seen
        orbits.append(ResidueOrbit(frozenset(seen), m))
    if m == BASE_MODULUS:
        orbits = [replace(o, name=orbit_name(o.members)) for o in orbits]
    return orbits


def is_orbit_closed(orbit: ResidueOrbit) -> bool:
    return all(_step(i, q, orbit.modulus) in orbit.members for q in orbit.members for i in range(4))


# -- lifting ---------------------------------------------------------------


def lifts_mod(q: Residues, M: int, k: int, base: int = BASE_MODULUS) -> bool:
    """Whether some lift q + base*(a, b, c, d) has Q_D = k (mod M).

    Offsets a..d range over 0 .. M/base - 1, which covers every class mod M.
    """
    if M % base:
        raise ValueError(f"{M} is not a multiple of {base}")
    offs = range(M // base)
    for off in itertools.product(offs, repeat=4):
        v = tuple(r + base * a for r, a in zip(q, off))
        if (descartes_form(v) - k) % M == 0:
            return True
    return False


def lifts_mod96_parity(q: Residues, k: int) -> bool:
    """Mod-96 liftability of a mod-12 class with even coordinate sum.

    Writing the lift as q + 12(a, b, c, d) with alpha = a + b + c + d,
    Q_D - k is congruent mod 96 to
        48 sum(a_i q_i) - 48 alpha^2 - 48 alpha (s/2) + (Q_D(q) - k),
    s = sum(q), which depends only on the parities of the offsets.
    """
    s = sum(q)
    if s % 2:
        return lifts_mod(q, 96, k)
    rest = descartes_form(q) - k
    for off in itertools.product((0, 1), repeat=4):
        alpha = sum(off)
        val = 48 * sum(a * r for a, r in zip(off, q)) - 48 * alpha * alpha - 48 * alpha * (s // 2) + rest
        if val % 96 == 0:
            return True
    return False


def _lifts(q: Residues, M: int, k: int) -> bool:
    if M == 96:
        return lifts_mod96_parity(q, k)
    return lifts_mod(q, M, k)


@dataclass(frozen=True)
class SieveStage:
    modulus: int
    eliminated_classes: int
    eliminated_orbits: Tuple[str, ...]
    remaining_classes: int


def sieve_liftable(orbits: Iterable[ResidueOrbit], k: int,
                   chain: Optional[Sequence[int]] = None) -> Tuple[List[ResidueOrbit], List[SieveStage]]:
    """Mark orbits eliminated at the first modulus where some member fails to lift.

    An orbit of genuine integer quadruples lifts everywhere, so one failing
    member rules out the whole orbit.  Returns the updated orbits and a
    per-modulus summary.
    """
    if chain is None:
        chain = LIFT_CHAINS.get(k, ())
    result = list(orbits)
    stages = []
    for M in chain:
        dead_classes = 0
        dead_names = []
        for idx, o in enumerate(result):
            if o.status is not Status.SURVIVING:
                continue
            failing = sum(1 for r in o.members if not _lifts(r, M, k))
            if failing:
                result[idx] = replace(o, status=_ELIMINATED_AT[M])
                dead_names.append(o.name)
                dead_classes += failing
        remaining = sum(len(o.members) for o in result if o.status is Status.SURVIVING)
        stages.append(SieveStage(M, dead_classes, tuple(dead_names), remaining))
    return result, stages


def surviving(orbits: Iterable[ResidueOrbit]) -> List[ResidueOrbit]:
    return [o for o in orbits if o.status is Status.SURVIVING]


# -- witnesses -------------------------------------------------------------


def _seed_quadruples(k: int, bound: int) -> List[Tuple[Quadruple, bool]]:
    """Starting points for the witness search as (quadruple, is_root)."""
    from .reduction import (
        InfiniteFamily,
        exceptional_orbit_representatives,
        root_quadruples_nonnegative_min,
        root_quadruples_with_min,
    )

    seeds: List[Tuple[Quadruple, bool]] = []
    seeds.extend((q, True) for q in root_quadruples_nonnegative_min(k))
    n = 1
    while n <= bound:
        res = root_quadruples_with_min(k, n)
        if isinstance(res, InfiniteFamily):
            seeds.extend((res.member(c), True) for c in range(max(n, 1), max(n, 1) + 24))
        else:
            seeds.extend((q, True) for q in res if max(q) <= bound)
        n += 1
        if n > 64:
            break
    for group in exceptional_orbit_representatives(k):
        seeds.append((group[0], False))
    return seeds


def find_witnesses(orbits: Iterable[ResidueOrbit], k: int, search_bound: int = 10_000) -> List[ResidueOrbit]:
    """Attach to every residue class of each surviving orbit an integral quadruple reducing to it.

    Orbits of small root quadruples (and their negatives) are walked up to
    max |entry| <= search_bound, growing the walk bound geometrically until
    every class is covered.  Classes left uncovered get ``None``.
    """
    from .census import exceptional_orbit_stream
    from .group import rooted_orbit_stream

    orbits = list(orbits)
    m = orbits[0].modulus if orbits else BASE_MODULUS
    wanted = {r for o in orbits if o.status is Status.SURVIVING for r in o.members}
    found: Dict[Residues, Quadruple] = {}

    def note(q: Quadruple) -> None:
        for v in (q, tuple(-x for x in q)):
            r = residue_class(v, m)
            if r in wanted and r not in found:
                found[r] = tuple(sorted(v))  # type: ignore[assignment]

    walk = 64
    while True:
        walk = min(walk, search_bound)
        for seed, is_root in _seed_quadruples(k, walk):
            if len(found) == len(wanted):
                break
            if is_root:
                if max(seed) > walk:
                    continue
                for rec in rooted_orbit_stream(seed, walk):
                    note(rec.quadruple)
            else:
                for q in exceptional_orbit_stream([seed], walk):
                    note(q)
        if len(found) == len(wanted) or walk >= search_bound:
            break
        walk *= 4

    out = []
    for o in orbits:
        if o.status is Status.SURVIVING:
            o = replace(o, witnesses=tuple((r, found.get(r)) for r in sorted(o.members)))
        out.append(o)
    return out


def omitted_residues(orbit: ResidueOrbit | Iterable[Residues], m: int = BASE_MODULUS) -> List[int]:
    members = orbit.members if isinstance(orbit, ResidueOrbit) else orbit
    seen = {v % m for q in members for v in q}
    return [r for r in range(m) if r not in seen]


# -- naming ----------------------------------------------------------------


def _set(*quads: Sequence[int]) -> FrozenSet[Residues]:
    return frozenset(residue_class(q, BASE_MODULUS) for q in quads)


NAMED_ORBITS: Dict[str, FrozenSet[Residues]] = {
    "O": _set(
        (2, 1, 1, 0), (5, 2, 1, 0), (5, 4, 2, 1), (6, 5, 4, 1), (6, 5, 5, 4), (8, 2, 1, 1),
        (8, 6, 1, 1), (8, 6, 5, 1), (9, 4, 2, 1), (9, 5, 4, 2), (9, 8, 2, 1), (10, 5, 1, 0),
        (10, 5, 5, 0), (10, 5, 5, 4), (10, 8, 5, 1), (10, 9, 5, 4), (10, 9, 8, 1), (10, 9, 8, 5),
    ),
    "O3": _set((2, 4, 8, 8), (2, 8, 8, 8), (8, 8, 8, 10)),
    "O4": _set((1, 2, 2, 11), (2, 2, 5, 11), (2, 2, 5, 7), (2, 5, 10, 11)),
    "O7": _set((0, 0, 0, 10), (0, 0, 0, 2), (0, 0, 2, 4), (0, 0, 4, 6), (0, 0, 6, 8),
               (0, 0, 8, 10), (0, 4, 6, 8)),
    "O13": _set((0, 0, 1, 11), (0, 0, 1, 3), (0, 0, 3, 5), (0, 0, 5, 7), (0, 0, 7, 9),
                (0, 0, 9, 11), (0, 1, 3, 8), (0, 3, 4, 5), (0, 3, 4, 9), (0, 3, 8, 9),
                (0, 4, 9, 11), (0, 7, 8, 9), (3, 4, 8, 9)),
}

# Orbits listed by their members under a label that is not the plain shift
# of the base orbit; the member lists take precedence over the label.
LISTED_ORBITS: Dict[str, FrozenSet[Residues]] = {
    "O3+6": _set((2, 2, 2, 4), (2, 2, 2, 8), (2, 2, 8, 10)),
    "O3+8": _set((2, 4, 10, 10), (4, 10, 10, 10), (8, 10, 10, 10)),
    "O7+6": _set((0, 2, 6, 10), (0, 2, 6, 6), (0, 6, 6, 10), (2, 4, 6, 6), (4, 6, 6, 6),
                 (6, 6, 6, 8), (6, 6, 8, 10)),
}

# Preferred labels, tried in this order before any other sign/shift.
PREFERRED_NAMES = (
    "O", "O+6",
    "O3", "O3+3", "O3-3", "-O3", "-O3+3", "-O3-3",
    "O4", "O4+6", "-O4", "-O4+6",
    "O7", "O7+3", "O7+9",
    "O13", "O13+6",
)


def transform(members: Iterable[Residues], sign: int, shift: int, m: int = BASE_MODULUS) -> FrozenSet[Residues]:
    return frozenset(residue_class([sign * v + shift for v in q], m) for q in members)


def _parse(name: str) -> Tuple[int, str, int]:
    sign = -1 if name.startswith("-") else 1
    body = name.lstrip("-")
    for op in ("+", "-"):
        if op in body:
            base, amount = body.split(op)
            return sign, base, int(amount) if op == "+" else -int(amount)
    return sign, body, 0


def named_orbit(name: str) -> FrozenSet[Residues]:
    if name in LISTED_ORBITS:
        return LISTED_ORBITS[name]
    sign, base, shift = _parse(name)
    return transform(NAMED_ORBITS[base], sign, shift)


def _label(sign: int, base: str, shift: int) -> str:
    head = ("-" if sign < 0 else "") + base
    if shift == 0:
        return head
    return f"{head}+{shift}"


def orbit_name(members: Iterable[Residues]) -> str:
    """Label a mod-12 orbit by its listed name, a sign/shift of a named orbit, or its smallest member."""
    members = frozenset(members)
    for name, listed in LISTED_ORBITS.items():
        if listed == members:
            return name
    for name in PREFERRED_NAMES:
        if named_orbit(name) == members:
            return name
    for base, s in NAMED_ORBITS.items():
        for sign in (1, -1):
            for shift in range(BASE_MODULUS):
                if transform(s, sign, shift) == members:
                    return _label(sign, base, shift)
    return "orbit" + "".join(f"_{v}" for v in min(members))


# -- pipelines -------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceReport:
    level: int
    solutions: int
    orbits: Tuple[ResidueOrbit, ...]
    stages: Tuple[SieveStage, ...]

    @property
    def surviving(self) -> List[ResidueOrbit]:
        return surviving(self.orbits)

    @property
    def surviving_classes(self) -> int:
        return sum(len(o.members) for o in self.surviving)


def congruence_pipeline(k: int, search_bound: int = 10_000, witnesses: bool = True) -> CongruenceReport:
    """Solutions mod 12, orbits, lifting sieve and witness search for level k."""
    orbits = orbits_mod(BASE_MODULUS, k)
    n_solutions = sum(len(o.members) for o in orbits)
    orbits, stages = sieve_liftable(orbits, k)
    if witnesses:
        orbits = find_witnesses(orbits, k, search_bound)
    return CongruenceReport(k, n_solutions, tuple(orbits), tuple(stages))
