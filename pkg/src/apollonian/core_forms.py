"""Descartes and Lorentz quaternary forms and the size measures on quadruples.

A quadruple is a plain 4-tuple of Python ints.  Python integers are
unbounded, so none of these functions can overflow.
"""

from __future__ import annotations

from typing import Iterable, Tuple

Quadruple = Tuple[int, int, int, int]

# Matrix of the Descartes form: Q_D(v) = v^T M v.
DESCARTES_MATRIX = (
    (1, -1, -1, -1),
    (-1, 1, -1, -1),
    (-1, -1, 1, -1),
    (-1, -1, -1, 1),
)

LORENTZ_MATRIX = (
    (-1, 0, 0, 0),
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (0, 0, 0, 1),
)


class ParityError(ValueError):
    """Raised when a quadruple with odd coordinate sum is mapped by J0."""


def as_quadruple(values: Iterable[int]) -> Quadruple:
    q = tuple(int(v) for v in values)
    if len(q) != 4:
        raise ValueError(f"expected 4 entries, got {len(q)}")
    return q  # type: ignore[return-value]


def descartes_form(q: Quadruple) -> int:
    """Return 2(w^2+x^2+y^2+z^2) - (w+x+y+z)^2."""
    w, x, y, z = q
    s = w + x + y + z
    return 2 * (w * w + x * x + y * y + z * z) - s * s


def lorentz_form(q: Quadruple) -> int:
    W, X, Y, Z = q
    return -W * W + X * X + Y * Y + Z * Z


def _half_sums(q: Quadruple) -> Quadruple:
    w, x, y, z = q
    if (w + x + y + z) % 2:
        raise ParityError(f"coordinate sum of {q} is odd")
    return (
        (w + x + y + z) // 2,
        (w + x - y - z) // 2,
        (w - x + y - z) // 2,
        (w - x - y + z) // 2,
    )


def to_lorentz(q: Quadruple) -> Quadruple:
    """Apply J0 = (1/2)[[1,1,1,1],[1,1,-1,-1],[1,-1,1,-1],[1,-1,-1,1]].

    Q_L of the image is half of Q_D of the input, and the Euclidean
    height is unchanged.  Only even-sum inputs are accepted.
    """
    return _half_sums(q)


def from_lorentz(q: Quadruple) -> Quadruple:
    """Inverse of :func:`to_lorentz`; J0 is an involution."""
    return _half_sums(q)


def height_sq(q: Quadruple) -> int:
    return sum(v * v for v in q)


def l1_norm(q: Quadruple) -> int:
    return sum(abs(v) for v in q)


def coordinate_sum(q: Quadruple) -> int:
    return sum(q)


def reversed_negation(q: Quadruple) -> Quadruple:
    """(a, b, c, d) -> (-d, -c, -b, -a); keeps ascending order ascending."""
    a, b, c, d = q
    return (-d, -c, -b, -a)


def is_descartes_level(k: int) -> bool:
    """Whether Q_D = k can have integer solutions, i.e. k = 0 or 1 (mod 4).

    An even coordinate sum gives Q_D = 0 (mod 4); an odd one forces an odd
    sum of squares, so Q_D = 2 - 1 = 1 (mod 4).  Every such k occurs.
    """
    return k % 4 in (0, 1)
