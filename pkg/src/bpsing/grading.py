"""Exact arithmetic in the grading group of a Brieskorn-Pham hypersurface.

For weights p = (p_1, ..., p_n) the group L(p) is abelian on generators
x_1, ..., x_n, c subject to p_i x_i = c.  Every element is uniquely a
normal form

    sum(lam_i x_i) + lam c,   0 <= lam_i < p_i,  lam in Z,

and that normal form is the ONLY representation stored here; raw
coefficient combinations are normalized at the boundary.  The partial
order is x <= y iff y - x lies in the submonoid generated by the x_i
and c, which in normal form just means level(y - x) >= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator


class NotInImageError(ValueError):
    """Raised when theta_inv is applied to an element outside the image."""


@dataclass(frozen=True)
class WeightSystem:
    """An n-tuple of integer weights, each at least 2."""

    p: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))
        if len(self.p) < 1:
            raise ValueError("need at least one weight")
        if any(w < 2 for w in self.p):
            raise ValueError(f"weights must be >= 2, got {self.p}")

    @property
    def n(self) -> int:
        return len(self.p)

    def element(self, coeffs: Iterable[int], level: int = 0) -> GradeElement:
        return normalize(self, coeffs, level)

    def zero(self) -> GradeElement:
        return GradeElement(self, (0,) * self.n, 0)

    def x(self, i: int) -> GradeElement:
        """The generator x_i (0-based index)."""
        c = [0] * self.n
        c[i] = 1
        return normalize(self, c, 0)

    def c(self) -> GradeElement:
        """The canonical element c = p_i x_i."""
        return GradeElement(self, (0,) * self.n, 1)

    def s(self) -> GradeElement:
        """The coordinate sum s = x_1 + ... + x_n."""
        return normalize(self, [1] * self.n, 0)

    def omega(self) -> GradeElement:
        """The dualizing element c - s."""
        return self.c() - self.s()

    def delta(self) -> GradeElement:
        """The dominant element sum((p_i - 2) x_i)."""
        return normalize(self, [w - 2 for w in self.p], 0)

    def specials(self) -> dict[str, GradeElement]:
        return {"c": self.c(), "omega": self.omega(), "delta": self.delta(), "s": self.s()}

    def level_zero_box(self, upper: GradeElement) -> Iterator[GradeElement]:
        """All level-0 elements z with 0 <= z <= upper (upper of level 0)."""
        assert upper.level == 0
        def rec(i: int, acc: list[int]) -> Iterator[GradeElement]:
            if i == self.n:
                yield GradeElement(self, tuple(acc), 0)
                return
            for v in range(upper.coeffs[i] + 1):
                yield from rec(i + 1, acc + [v])
        yield from rec(0, [])

    def to_json(self) -> dict:
        return {"p": list(self.p)}

    @staticmethod
    def from_json(data: dict) -> WeightSystem:
        return WeightSystem(tuple(data["p"]))

    def __str__(self) -> str:
        return "(" + ",".join(str(w) for w in self.p) + ")"


@dataclass(frozen=True)
class GradeElement:
    """A group element in normal form.  Equality is structural."""

    weights: WeightSystem
    coeffs: tuple[int, ...]
    level: int

    def __post_init__(self) -> None:
        for lam, w in zip(self.coeffs, self.weights.p):
            if not 0 <= lam < w:
                raise ValueError(f"coefficient {lam} out of range for weight {w}")

    def _check_same(self, other: GradeElement) -> None:
        if self.weights != other.weights:
            raise ValueError("mismatched weight systems")

    def __add__(self, other: GradeElement) -> GradeElement:
        self._check_same(other)
        return normalize(self.weights, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.level + other.level)

    def __neg__(self) -> GradeElement:
        return normalize(self.weights, [-a for a in self.coeffs], -self.level)

    def __sub__(self, other: GradeElement) -> GradeElement:
        return self + (-other)

    def __mul__(self, k: int) -> GradeElement:
        return normalize(self.weights, [k * a for a in self.coeffs], k * self.level)

    __rmul__ = __mul__

    def __le__(self, other: GradeElement) -> bool:
        """Partial order: self <= other iff (other - self) is effective."""
        self._check_same(other)
        return (other - self).level >= 0

    def __ge__(self, other: GradeElement) -> bool:
        return other <= self

    def is_zero(self) -> bool:
        return self.level == 0 and not any(self.coeffs)

    def sigma(self) -> int:
        """Coefficient sum, defined on the box 0 <= self <= delta."""
        if self.level != 0 or any(l > w - 2 for l, w in zip(self.coeffs, self.weights.p)):
            raise ValueError(f"{self} is not in the box [0, delta]")
        return sum(self.coeffs)

    def dim_r(self) -> int:
        """Dimension of the hypersurface ring in this degree.

        Counts the monomial basis prod X_i^(lam_i + d_i p_i) X_n^(lam_n)
        with d_1 + ... + d_(n-1) = level, d_i >= 0.
        """
        if self.level < 0:
            return 0
        n = self.weights.n
        if n == 1:
            return 1 if self.level == 0 else 0
        return math.comb(self.level + n - 2, n - 2)

    def dim_s(self) -> int:
        """Dimension of the ambient polynomial ring in this degree."""
        if self.level < 0:
            return 0
        n = self.weights.n
        return math.comb(self.level + n - 1, n - 1)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "level": self.level}

    @staticmethod
    def from_json(weights: WeightSystem, data: dict) -> GradeElement:
        return normalize(weights, data["coeffs"], data["level"])

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self.coeffs) + f";{self.level})"


def normalize(weights: WeightSystem, coeffs: Iterable[int], level: int = 0) -> GradeElement:
    """Reduce a raw coefficient combination to its unique normal form."""
    out = []
    lev = int(level)
    for a, w in zip(list(coeffs), weights.p):
        q, r = divmod(int(a), w)
        out.append(r)
        lev += q
    if len(out) != weights.n:
        raise ValueError("coefficient list has wrong length")
    return GradeElement(weights, tuple(out), lev)


class Dichotomy(Enum):
    NON_NEGATIVE = "non_negative"
    BELOW_BOUND = "below_bound"


def dichotomy(a: GradeElement) -> tuple[Dichotomy, GradeElement | None]:
    """Exactly one of a >= 0 or a <= (n-2)c + omega holds.

    Returns the branch, with the witness (n-2)c + omega - a in the
    second case.
    """
    ws = a.weights
    bound = (ws.n - 2) * ws.c() + ws.omega()
    witness = bound - a
    nonneg = a.level >= 0
    below = witness.level >= 0
    assert nonneg != below, "dichotomy must be exclusive"
    return (Dichotomy.NON_NEGATIVE, None) if nonneg else (Dichotomy.BELOW_BOUND, witness)


@dataclass(frozen=True)
class GroupEmbedding:
    """The coefficient-preserving injection from a reduced weight system.

    The reduced system replaces the last weight p_n by the split value
    p_{j,n}, where p_{1,n} + p_{2,n} = p_n + 1.  The map theta_j carries
    a normal form of the reduced group to the same coefficients and
    level in the full group; an element lies in its image iff its last
    coefficient is below p_{j,n}.
    """

    target: WeightSystem
    j: int
    split: tuple[int, int]

    def __post_init__(self) -> None:
        p1n, p2n = self.split
        pn = self.target.p[-1]
        if p1n + p2n != pn + 1:
            raise ValueError(f"split {self.split} does not satisfy p1n + p2n = p_n + 1")
        if self.j not in (1, 2):
            raise ValueError("j must be 1 or 2")
        if min(p1n, p2n) < 2:
            raise ValueError("split weights must be >= 2")

    @property
    def split_weight(self) -> int:
        return self.split[self.j - 1]

    @property
    def source(self) -> WeightSystem:
        return WeightSystem(self.target.p[:-1] + (self.split_weight,))

    def theta(self, a: GradeElement) -> GradeElement:
        if a.weights != self.source:
            raise ValueError("element does not live in the reduced system")
        return GradeElement(self.target, a.coeffs, a.level)

    def theta_inv(self, b: GradeElement) -> GradeElement:
        if b.weights != self.target:
            raise ValueError("element does not live in the full system")
        if b.coeffs[-1] >= self.split_weight:
            raise NotInImageError(f"{b} has last coefficient >= {self.split_weight}")
        return GradeElement(self.source, b.coeffs, b.level)
