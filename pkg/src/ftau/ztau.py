"""Exact arithmetic in Z[tau], tau = (sqrt(5) - 1) / 2.

Every value is stored as a pair of integers ``(a, b)`` meaning ``a + b*tau``.
Products are reduced with ``tau**2 = 1 - tau`` and comparisons never touch
floating point.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import NamedTuple


_INT = r"\s*([+-]?\d+)\s*"
_LITERAL = re.compile(rf"^\s*(?:\({_INT},{_INT}\)|{_INT},{_INT})\s*$")


class ZTauParseError(ValueError):
    pass


class ZTau(NamedTuple):
    a: int
    b: int

    def __add__(self, other: ZTau) -> ZTau:  # type: ignore[override]
        return ZTau(self.a + other.a, self.b + other.b)

    def __sub__(self, other: ZTau) -> ZTau:
        return ZTau(self.a - other.a, self.b - other.b)

    def __neg__(self) -> ZTau:
        return ZTau(-self.a, -self.b)

    def __mul__(self, other: ZTau) -> ZTau:  # type: ignore[override]
        return zt_mul(self, other)

    def __lt__(self, other: ZTau) -> bool:  # type: ignore[override]
        return zt_sign(self - other) < 0

    def __le__(self, other: ZTau) -> bool:  # type: ignore[override]
        return zt_sign(self - other) <= 0

    def __gt__(self, other: ZTau) -> bool:  # type: ignore[override]
        return zt_sign(self - other) > 0

    def __ge__(self, other: ZTau) -> bool:  # type: ignore[override]
        return zt_sign(self - other) >= 0

    def __float__(self) -> float:
        return self.a + self.b * TAU_FLOAT

    def __str__(self) -> str:
        return f"{self.a},{self.b}"

    @classmethod
    def parse(cls, text: str) -> ZTau:
        m = _LITERAL.match(text)
        if m is None:
            raise ZTauParseError(f"expected 'INT,INT' at position 0, got {text!r}")
        a, b = (g for g in m.groups() if g is not None)
        return cls(int(a), int(b))


TAU_FLOAT = (5 ** 0.5 - 1) / 2

ZERO = ZTau(0, 0)
ONE = ZTau(1, 0)
TAU = ZTau(0, 1)


def zt_mul(p: ZTau, q: ZTau) -> ZTau:
    a1, b1 = p
    a2, b2 = q
    bb = b1 * b2
    return ZTau(a1 * a2 + bb, a1 * b2 + a2 * b1 - bb)


def zt_sign(p: ZTau) -> int:
    """Return -1, 0 or 1 according to the sign of ``a + b*tau``.

    Twice the value is ``(2a - b) + b*sqrt(5)``; when the two summands have
    opposite signs the winner is decided by comparing squares.
    """
    u = 2 * p.a - p.b
    v = p.b
    if u >= 0 and v >= 0:
        return 0 if u == 0 and v == 0 else 1
    if u <= 0 and v <= 0:
        return -1
    lhs = u * u
    rhs = 5 * v * v
    if u > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


@lru_cache(maxsize=None)
def zt_tau_pow(k: int) -> ZTau:
    """tau**k for any integer k; tau**-1 = 1 + tau."""
    step = TAU if k >= 0 else ZTau(1, 1)
    out = ONE
    for _ in range(abs(k)):
        out = zt_mul(out, step)
    return out
