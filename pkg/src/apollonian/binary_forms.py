"""Binary quadratic forms [A, B, C] = A T^2 + 2B TU + C U^2 and class counts.

Discriminants here are 4B^2 - 4AC, always divisible by 4.  A form is
primitive when gcd(A, 2B, C) = 1.  Root quadruples of level 4m with
smallest entry -n correspond one to one with GL2-reduced forms
(0 <= 2B <= A <= C) of discriminant -4(n^2 - m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Tuple

from .core_forms import Quadruple, descartes_form


class BinaryForm(NamedTuple):
    A: int
    B: int
    C: int

    def __str__(self) -> str:
        return f"[{self.A},{self.B},{self.C}]"


def discriminant(f: BinaryForm) -> int:
    A, B, C = f
    return 4 * B * B - 4 * A * C


def is_positive_definite(f: BinaryForm) -> bool:
    return discriminant(f) < 0 and f.A > 0 and f.C > 0


def is_gl2_reduced(f: BinaryForm) -> bool:
    A, B, C = f
    return 0 <= 2 * B <= A <= C


def is_sl2_reduced(f: BinaryForm) -> bool:
    A, B, C = f
    return 2 * abs(B) <= A <= C


def is_primitive(f: BinaryForm) -> bool:
    return math.gcd(f.A, 2 * f.B, f.C) == 1


def is_ambiguous_reduced(f: BinaryForm) -> bool:
    """Whether the SL2 class of the reduced form ``f`` equals its opposite.

    For reduced forms this happens exactly for B = 0, 2|B| = A or A = C.
    """
    A, B, C = f
    return B == 0 or 2 * abs(B) == A or A == C


def _check_discriminant(delta: int) -> None:
    if delta >= 0 or delta % 4:
        raise ValueError(f"need a negative discriminant divisible by 4, got {delta}")


def _reduced_forms(delta: int) -> Iterator[BinaryForm]:
    # AC - B^2 = N with A <= C and 4B^2 <= A^2 give 3A^2 <= 4N.
    N = -delta // 4
    a_max = math.isqrt(4 * N // 3) + 1
    for A in range(1, a_max + 1):
        for B in range(-(A // 2), A // 2 + 1):
            num = B * B + N
            if num % A:
                continue
            C = num // A
            if C >= A:
                yield BinaryForm(A, B, C)


def enumerate_reduced_forms(delta: int, mode: str = "GL2") -> List[BinaryForm]:
    """Reduced positive definite forms of discriminant ``delta``.

    ``mode="GL2"`` lists forms with 0 <= 2B <= A <= C.  ``mode="SL2"`` lists
    one reduced form per SL2 class: forms with 2|B| <= A <= C, keeping
    B >= 0 on the boundary cases 2|B| = A and A = C.
    """
    _check_discriminant(delta)
    mode = mode.upper()
    if mode == "GL2":
        return sorted(f for f in _reduced_forms(delta) if f.B >= 0)
    if mode == "SL2":
        return sorted(
            f for f in _reduced_forms(delta)
            if f.B >= 0 or not (2 * abs(f.B) == f.A or f.A == f.C)
        )
    raise ValueError(f"mode must be GL2 or SL2, got {mode!r}")


@dataclass(frozen=True)
class ClassCounts:
    discriminant: int
    h: int
    h_tilde: int
    a: int
    a_tilde: int
    h_pm_tilde: int


def _buell_classes(D: int) -> Tuple[int, int]:
    """Primitive SL2 classes and primitive ambiguous classes of forms ax^2+bxy+cy^2, b^2-4ac = D.

    This uses the odd-middle-coefficient convention, so every D = 0, 1 (mod 4)
    is a valid discriminant.  Kept separate from the even-convention code
    path so the divisor-sum identities compare two independent enumerations.
    """
    if D >= 0 or D % 4 not in (0, 1):
        return 0, 0
    h = amb = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            h += 1
            if b == 0 or b == a or a == c:
                amb += 1
        a += 1
    return h, amb


def _square_divisors(delta: int) -> Iterator[int]:
    N = abs(delta)
    for l in range(1, math.isqrt(N) + 1):
        if N % (l * l) == 0:
            yield l


def class_counts(delta: int) -> ClassCounts:
    """Class numbers of discriminant ``delta``, with internal identity checks.

    h and a count primitive SL2 classes and primitive ambiguous classes;
    h_tilde and a_tilde count all classes; h_pm_tilde counts GL2 classes.
    """
    _check_discriminant(delta)
    sl2 = enumerate_reduced_forms(delta, "SL2")
    gl2 = enumerate_reduced_forms(delta, "GL2")
    h = sum(1 for f in sl2 if is_primitive(f))
    a = sum(1 for f in sl2 if is_primitive(f) and is_ambiguous_reduced(f))
    h_tilde = len(sl2)
    a_tilde = sum(1 for f in sl2 if is_ambiguous_reduced(f))
    counts = ClassCounts(delta, h, h_tilde, a, a_tilde, len(gl2))

    if 2 * counts.h_pm_tilde != counts.h_tilde + counts.a_tilde:
        raise AssertionError(f"GL2/SL2 class identity fails at {delta}: {counts}")
    hs = as_ = 0
    for l in _square_divisors(delta):
        h_l, a_l = _buell_classes(delta // (l * l))
        hs += h_l
        as_ += a_l
    if (hs, as_) != (counts.h_tilde, counts.a_tilde):
        raise AssertionError(f"divisor-sum identity fails at {delta}: {(hs, as_)} vs {counts}")
    return counts


def ambiguous_form_count(delta: int, primitive: str = "content") -> int:
    """Number of positive definite ambiguous forms [A, 0, C] and [2B, B, C], B > 0.

    These are counted as forms, not classes.  ``primitive`` selects the
    primitivity test: "content" keeps forms with gcd(A, B, C) = 1, "proper"
    keeps forms with gcd(A, 2B, C) = 1.
    """
    _check_discriminant(delta)
    N = -delta // 4
    forms = [BinaryForm(A, 0, N // A) for A in range(1, N + 1) if N % A == 0]
    # [2B, B, C]: 2BC - B^2 = N, i.e. B(2C - B) = N.
    for B in range(1, N + 1):
        if N % B == 0 and (N // B + B) % 2 == 0:
            forms.append(BinaryForm(2 * B, B, (N // B + B) // 2))
    if primitive == "content":
        return sum(1 for f in forms if math.gcd(math.gcd(f.A, f.B), f.C) == 1)
    if primitive == "proper":
        return sum(1 for f in forms if is_primitive(f))
    raise ValueError(f"unknown primitivity test {primitive!r}")


def distinct_prime_factors(m: int) -> List[int]:
    m = abs(m)
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


# -- correspondence with root quadruples -----------------------------------


def quadruple_to_form(v: Quadruple, m: int) -> BinaryForm:
    """[A, B, C] = [w + x, (w + x + y - z)/2, w + y] for ascending v = (w, x, y, z), w = -n."""
    w, x, y, z = v
    if list(v) != sorted(v):
        raise ValueError(f"{v} is not sorted ascending")
    if descartes_form(v) != 4 * m:
        raise ValueError(f"{v} does not have level 4*{m}")
    mid = w + x + y - z
    if mid % 2:
        raise AssertionError(f"odd middle coefficient for {v}")
    return BinaryForm(w + x, mid // 2, w + y)


def form_to_quadruple(f: BinaryForm, n: int, m: int) -> Quadruple:
    """(w, x, y, z) = (-n, n + A, n + C, n + A + C - 2B)."""
    if discriminant(f) != -4 * (n * n - m):
        raise ValueError(f"discriminant of {f} is not -4({n}^2 - {m})")
    A, B, C = f
    return (-n, n + A, n + C, n + A + C - 2 * B)


def n_root_via_class_number(m: int, n: int) -> int:
    """N_root(4m; -n) as the GL2 class number of discriminant -4(n^2 - m)."""
    if n * n <= m:
        raise ValueError(f"class number route needs n^2 > m, got n={n}, m={m}")
    return class_counts(-4 * (n * n - m)).h_pm_tilde


def summatory_root_count(m: int, T: int, start: int | None = None) -> int:
    """S(4m, T): sum of N_root(4m; -n) for n from floor(sqrt|4m|) + 1 to T.

    ``start`` overrides the lower summation limit.
    """
    if T < 1:
        raise ValueError("T must be positive")
    if start is None:
        start = math.isqrt(abs(4 * m)) + 1
    return sum(n_root_via_class_number(m, n) for n in range(max(start, 1), T + 1))


# Measured over m = +-1, 2 <= n <= 200 (maximum 102.9 at n = 3, m = 1).
GROWTH_CEILING = 110.0


def growth_ratio(m: int, n: int) -> float:
    """N_root(4m; -n) divided by n (log n)(log log n)^2, for n >= 2."""
    if n < 2:
        raise ValueError("the growth profile needs n >= 2")
    g = n * math.log(n) * math.log(math.log(n)) ** 2
    return n_root_via_class_number(m, n) / g


def within_growth_ceiling(m: int, n_max: int = 200, ceiling: float = GROWTH_CEILING) -> bool:
    """Loose regression guard on the growth of root counts."""
    start = max(2, math.isqrt(max(m, 0)) + 1)
    return all(growth_ratio(m, n) <= ceiling for n in range(start, n_max + 1))
