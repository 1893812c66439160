"""Exact algebra of Herbrand-style transition functions.

A transition function here is a continuous, strictly increasing, piecewise
linear bijection of [-1, oo) onto itself that restricts to the identity on
[-1, 0].  Breakpoints and slopes are arbitrary-precision rationals, so
evaluation, composition and inversion are all exact.  Values are anchored at
f(-1) = -1 and accumulate segment by segment.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction

from .errors import DomainError, ValidationError


def _frac(x) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational: {x!r}") from exc


class PLFunction:
    """Piecewise-linear bijection of [-1, oo) fixing [-1, 0] pointwise.

    ``segments`` is a tuple of (start, slope) pairs with strictly increasing
    starts; the first start is -1 and the last segment extends to +oo.
    Instances are stored in normalized form (adjacent segments with equal
    slopes are merged), which makes ``==`` a valid function-equality test.
    Immutable; safe to share between threads.
    """

    __slots__ = ("_starts", "_slopes", "_values")

    def __init__(self, segments):
        segs = [(_frac(x), _frac(s)) for x, s in segments]
        if not segs:
            raise ValidationError("a PLFunction needs at least one segment")
        if segs[0][0] != -1:
            raise ValidationError("first segment must start at -1")
        starts = [x for x, _ in segs]
        if any(b <= a for a, b in zip(starts, starts[1:])):
            raise ValidationError("segment starts must be strictly increasing")
        if any(s <= 0 for _, s in segs):
            raise ValidationError("slopes must be strictly positive")
        if segs[0][1] != 1:
            raise ValidationError("function must be the identity on [-1, 0]")
        if len(segs) > 1 and segs[1][0] < 0:
            raise ValidationError("no breakpoint allowed inside (-1, 0)")
        # normalize: merge runs of equal slope
        merged = [segs[0]]
        for x, s in segs[1:]:
            if s != merged[-1][1]:
                merged.append((x, s))
        self._starts = tuple(x for x, _ in merged)
        self._slopes = tuple(s for _, s in merged)
        values = [Fraction(-1)]
        for j in range(1, len(merged)):
            width = self._starts[j] - self._starts[j - 1]
            values.append(values[-1] + self._slopes[j - 1] * width)
        self._values = tuple(values)

    @classmethod
    def identity(cls) -> "PLFunction":
        return cls([(-1, 1)])

    @property
    def segments(self):
        return tuple(zip(self._starts, self._slopes))

    @property
    def breakpoints(self):
        return self._starts

    def _segment_index(self, x: Fraction) -> int:
        return bisect_right(self._starts, x) - 1

    def eval(self, x) -> Fraction:
        """Exact value at x; raises DomainError for x < -1."""
        x = _frac(x)
        if x < -1:
            raise DomainError(f"argument {x} below -1")
        j = self._segment_index(x)
        return self._values[j] + self._slopes[j] * (x - self._starts[j])

    __call__ = eval

    def slope_at(self, x) -> Fraction:
        """Slope of the segment containing x (right-continuous at breaks)."""
        x = _frac(x)
        if x < -1:
            raise DomainError(f"argument {x} below -1")
        return self._slopes[self._segment_index(x)]

    def invert(self) -> "PLFunction":
        """Exact functional inverse; slopes are the reciprocals."""
        return PLFunction(
            [(v, 1 / s) for v, s in zip(self._values, self._slopes)]
        )

    def compose(self, other: "PLFunction") -> "PLFunction":
        """self after other: compose(f, g)(x) = f(g(x))."""
        g_inv = other.invert()
        cuts = set(other._starts)
        cuts.update(g_inv.eval(b) for b in self._starts)
        cuts = sorted(c for c in cuts if c >= -1)
        segments = []
        for j, a in enumerate(cuts):
            # sample inside the interval; slopes are constant there
            t = (a + cuts[j + 1]) / 2 if j + 1 < len(cuts) else a + 1
            slope = other.slope_at(t) * self.slope_at(other.eval(t))
            segments.append((a, slope))
        return PLFunction(segments)

    def __eq__(self, other):
        if not isinstance(other, PLFunction):
            return NotImplemented
        return self._starts == other._starts and self._slopes == other._slopes

    def __hash__(self):
        return hash((self._starts, self._slopes))

    def __repr__(self):
        parts = ", ".join(f"({x}, {s})" for x, s in self.segments)
        return f"PLFunction([{parts}])"


def compose(f: PLFunction, g: PLFunction) -> PLFunction:
    """Functional composition f o g."""
    return f.compose(g)


def invert(f: PLFunction) -> PLFunction:
    """Functional inverse of f."""
    return f.invert()
