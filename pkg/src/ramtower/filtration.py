"""Finite ramification filtrations in lower and upper numbering.

Order profiles are stored as breakpoint/value pairs
``[(x0, n0), (x1, n1), ...]`` with ``x0 = -1``.  The first pair gives the
value at -1 and each value ``n_j`` applies on the half-open interval
``(x_j, x_{j+1}]`` (left-continuous: the value *at* a jump is the value
before it, matching how a group leaves its ramification filtration just
after the break).  A repeated break at -1 encodes a drop immediately after
-1, which is how an unramified part of the group is represented.

Point lookups come in two flavours: :meth:`StepFunction.value` reads the
left-continuous function and :meth:`StepFunction.value_after` reads the
right limit.  Integrals are insensitive to the difference.

All values are exact: breaks are rationals, orders are integers.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    DomainError,
    InconsistencyError,
    InvalidSubgroupError,
    UnsupportedInputError,
    ValidationError,
)
from .herbrand import PLFunction, _frac


class StepFunction:
    """Positive-integer step function on [-1, oo) with rational breaks.

    Generic machinery shared by order filtrations (non-increasing) and
    index profiles (non-decreasing); directional invariants are enforced
    by the wrapping types.  Immutable.
    """

    __slots__ = ("_pairs",)

    def __init__(self, pairs):
        cleaned = []
        for x, n in pairs:
            x = _frac(x)
            if not isinstance(n, int) or isinstance(n, bool):
                try:
                    n = int(n)
                except (TypeError, ValueError) as exc:
                    raise ValidationError(f"step value {n!r} is not an integer") from exc
            if n <= 0:
                raise ValidationError(f"step value {n} must be positive")
            cleaned.append((x, n))
        if not cleaned:
            raise ValidationError("a step function needs at least one pair")
        if cleaned[0][0] != -1:
            raise ValidationError("first break must be -1")
        for (a, _), (b, _) in zip(cleaned, cleaned[1:]):
            if b < a or (b == a and a != -1):
                raise ValidationError("breaks must be strictly increasing (a single repeat at -1 is allowed)")
        if sum(1 for x, _ in cleaned if x == -1) > 2:
            raise ValidationError("at most one repeated break at -1")
        # normalize: merge adjacent pairs with equal value
        merged = [cleaned[0]]
        for x, n in cleaned[1:]:
            if n != merged[-1][1]:
                merged.append((x, n))
        self._pairs = tuple(merged)

    @property
    def pairs(self):
        return self._pairs

    @property
    def breaks(self):
        return tuple(x for x, _ in self._pairs)

    @property
    def values(self):
        return tuple(n for _, n in self._pairs)

    @property
    def initial_value(self) -> int:
        """Value at -1."""
        return self._pairs[0][1]

    @property
    def final_value(self) -> int:
        """Value on the unbounded last interval."""
        return self._pairs[-1][1]

    @property
    def last_break(self) -> Fraction:
        return self._pairs[-1][0]

    def value(self, v) -> int:
        """Left-continuous read: the value on the interval with right end v."""
        v = _frac(v)
        if v < -1:
            raise DomainError(f"argument {v} below -1")
        if v == -1:
            return self._pairs[0][1]
        best = self._pairs[0][1]
        for x, n in self._pairs:
            if x < v:
                best = n
            else:
                break
        return best

    def value_after(self, v) -> int:
        """Right limit at v: the value just past v."""
        v = _frac(v)
        if v < -1:
            raise DomainError(f"argument {v} below -1")
        best = self._pairs[0][1]
        for x, n in self._pairs:
            if x <= v:
                best = n
            else:
                break
        return best

    def intervals(self):
        """Yield (lo, hi, n) with hi = None on the last, unbounded piece."""
        for j, (x, n) in enumerate(self._pairs):
            hi = self._pairs[j + 1][0] if j + 1 < len(self._pairs) else None
            yield x, hi, n

    def integral(self, a, b) -> Fraction:
        """Exact integral of the step function over [a, b]."""
        a, b = _frac(a), _frac(b)
        if a < -1 or b < a:
            raise DomainError(f"bad integration range [{a}, {b}]")
        total = Fraction(0)
        for lo, hi, n in self.intervals():
            lo = max(lo, a)
            hi = b if hi is None else min(hi, b)
            if hi > lo:
                total += n * (hi - lo)
        return total

    def map_breaks(self, fn) -> "StepFunction":
        """New step function with breaks fn(x); fn must be increasing and fix -1."""
        return StepFunction([(fn(x), n) for x, n in self._pairs])

    def scale_values(self, k: int) -> "StepFunction":
        return StepFunction([(x, n * k) for x, n in self._pairs])

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self._pairs == other._pairs

    def __hash__(self):
        return hash(self._pairs)

    def __repr__(self):
        inner = ", ".join(f"({x}, {n})" for x, n in self._pairs)
        return f"{type(self).__name__}([{inner}])"


def _validate_order_chain(steps: StepFunction, what: str):
    vals = steps.values
    for a, b in zip(vals, vals[1:]):
        if b >= a:
            raise ValidationError(f"{what}: orders must strictly decrease along breaks")
        if a % b != 0:
            raise ValidationError(f"{what}: order {b} does not divide {a} (not a subgroup chain)")
    if vals[-1] != 1:
        raise ValidationError(f"{what}: final order must be 1")
    for x in steps.breaks[1:]:
        if x != -1 and x < 0:
            raise ValidationError(f"{what}: no break allowed inside (-1, 0)")


class _OrderFiltration:
    """Common behaviour of lower and upper order filtrations."""

    __slots__ = ("_steps",)

    def __init__(self, steps):
        if not isinstance(steps, StepFunction):
            steps = StepFunction(steps)
        _validate_order_chain(steps, type(self).__name__)
        self._steps = steps

    @property
    def steps(self) -> StepFunction:
        return self._steps

    @property
    def group_order(self) -> int:
        return self._steps.initial_value

    @property
    def inertia_order(self) -> int:
        """Order of the ramification group at 0 (value just above -1 .. 0]."""
        return self._steps.value(0)

    def order(self, v) -> int:
        return self._steps.value(v)

    def order_after(self, v) -> int:
        return self._steps.value_after(v)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._steps == other._steps

    def __hash__(self):
        return hash((type(self).__name__, self._steps))

    def __repr__(self):
        return f"{type(self).__name__}({list(self._steps.pairs)!r})"


class LowerFiltration(_OrderFiltration):
    """Orders |G_r| of a lower-numbering ramification filtration."""

    @classmethod
    def from_orders(cls, orders, full_order=None) -> "LowerFiltration":
        """Build from the classical integer-indexed order sequence.

        ``orders[r]`` is |G_r| for r = 0, 1, 2, ...; the sequence must end
        at 1.  ``full_order`` is |G| = |G_{-1}| and defaults to totally
        ramified (equal to orders[0]).
        """
        orders = [int(n) for n in orders]
        if not orders or orders[-1] != 1:
            raise ValidationError("order sequence must end at 1")
        full = int(full_order) if full_order is not None else orders[0]
        pairs = [(Fraction(-1), full)]
        if orders[0] != full:
            pairs.append((Fraction(-1), orders[0]))
        for r in range(len(orders) - 1):
            if orders[r + 1] != orders[r]:
                pairs.append((Fraction(r), orders[r + 1]))
        return cls(StepFunction(pairs))


class UpperFiltration(_OrderFiltration):
    """Orders |G^v| of an upper-numbering ramification filtration."""


def cyclotomic_lower_orders(p: int, m: int):
    """Classical |G_r| sequence for the p^m-th cyclotomic extension of Q_p.

    The Galois group has order (p-1)p^(m-1); the filtration drops to the
    subgroup fixing the p^k-th roots of unity on the range of integers
    r in [p^(k-1), p^k - 1].
    """
    if m < 1:
        raise ValidationError("need m >= 1")
    total = (p - 1) * p ** (m - 1)
    orders = [total]
    for r in range(1, p ** (m - 1) + 1):
        k = 1
        while p ** k - 1 < r:
            k += 1
        # here p^(k-1) <= r <= p^k - 1
        orders.append(p ** (m - k))
    assert orders[-1] == 1
    return orders


def phi_of(lower: LowerFiltration) -> PLFunction:
    """Transition function from lower to upper numbering.

    Identity on [-1, 0]; above 0 the slope on each step is the order there
    divided by the inertia order.
    """
    e = lower.inertia_order
    segments = [(Fraction(-1), Fraction(1))]
    for lo, hi, n in lower.steps.intervals():
        if hi is not None and hi <= 0:
            continue
        segments.append((max(lo, Fraction(0)), Fraction(n, e)))
    return PLFunction(segments)


def psi_of_upper(upper: UpperFiltration) -> PLFunction:
    """Transition function from upper to lower numbering, built directly
    from upper-numbering data: the slope at v is [G^0 : G^v]."""
    e = upper.inertia_order
    segments = [(Fraction(-1), Fraction(1))]
    for lo, hi, n in upper.steps.intervals():
        if hi is not None and hi <= 0:
            continue
        segments.append((max(lo, Fraction(0)), Fraction(e, n)))
    return PLFunction(segments)


def to_upper(lower: LowerFiltration) -> UpperFiltration:
    """Reindex a lower filtration to upper numbering through phi."""
    phi = phi_of(lower)
    return UpperFiltration(lower.steps.map_breaks(phi.eval))


def to_lower(upper: UpperFiltration) -> LowerFiltration:
    """Reindex an upper filtration to lower numbering through psi."""
    psi = psi_of_upper(upper)
    return LowerFiltration(upper.steps.map_breaks(psi.eval))


def different_valuation_parts(lower: LowerFiltration):
    """Both computation routes for the different valuation.

    Returns (by_sum, by_integral): the classical sum of (|G_r| - 1) over
    integers r >= 0, and e * integral of (1 - 1/|G^v|) dv over the derived
    upper filtration.  The sum route requires integer breaks.
    """
    for x in lower.steps.breaks:
        if x != -1 and x.denominator != 1:
            raise UnsupportedInputError(
                f"lower break {x} is not an integer; the summation oracle "
                "only supports integer lower breaks"
            )
    by_sum = 0
    r = 0
    last = lower.steps.last_break
    while r <= last:
        by_sum += lower.order(r) - 1
        r += 1
    upper = to_upper(lower)
    e = lower.inertia_order
    acc = Fraction(0)
    for lo, hi, n in upper.steps.intervals():
        if hi is None:
            break  # final order is 1, integrand vanishes
        acc += (1 - Fraction(1, n)) * (hi - lo)
    by_integral = e * acc
    return by_sum, by_integral


def different_valuation(lower: LowerFiltration) -> int:
    """Valuation of the different, cross-checked two ways.

    Computed by the upper-numbering integral and by the classical sum over
    integer lower indices; the two must agree exactly and be a non-negative
    integer, otherwise an InconsistencyError is raised.
    """
    by_sum, by_integral = different_valuation_parts(lower)
    if by_integral != by_sum:
        raise InconsistencyError(
            f"different valuation mismatch: sum {by_sum} vs integral {by_integral}"
        )
    return by_sum


def different_valuation_rational(steps: StepFunction) -> Fraction:
    """Integral-route different for a lower-numbering order step function.

    Exact rational; used internally where breaks may be non-integral.
    Equals integral over r of (order(r) - 1) dr.
    """
    acc = Fraction(0)
    for lo, hi, n in steps.intervals():
        if hi is None:
            break
        acc += (n - 1) * (hi - lo)
    if steps.final_value != 1:
        raise ValidationError("order profile never reaches 1")
    return acc


def quotient_upper(upper: UpperFiltration, v_cut) -> UpperFiltration:
    """Upper filtration of the quotient by the group just past v_cut.

    The order at v becomes order(v)/order(v_cut) up to the cut and 1
    beyond; the divisions are exact along the subgroup chain.
    """
    v_cut = _frac(v_cut)
    if v_cut < -1:
        raise DomainError(f"v_cut {v_cut} below -1")
    pairs = upper.steps.pairs
    jstar = max(j for j, (x, _) in enumerate(pairs) if x <= v_cut)
    h = pairs[jstar][1]
    new = [(x, n // h) for x, n in pairs[:jstar]]
    new.append((pairs[jstar][0], 1))
    return UpperFiltration(StepFunction(new))


def subgroup_lower(lower: LowerFiltration, subgroup: LowerFiltration) -> LowerFiltration:
    """Validate caller-supplied intersection orders for a subgroup.

    Orders alone cannot determine intersections, so the subgroup filtration
    is input data; this checks it is possible (each |H_r| divides |H| and
    |G_r|, and H only jumps where G jumps) and echoes it back.
    """
    g_jumps = set(lower.steps.breaks)
    for x in subgroup.steps.breaks[1:]:
        if x not in g_jumps:
            raise InvalidSubgroupError(
                f"subgroup filtration jumps at {x} where the group does not"
            )
    h_order = subgroup.group_order
    if lower.group_order % h_order != 0:
        raise InvalidSubgroupError("subgroup order does not divide the group order")
    probes = list(lower.steps.breaks) + [lower.steps.last_break + 1]
    for x in probes:
        g_val = lower.order(x) if x != -1 else lower.group_order
        h_val = subgroup.order(x) if x != -1 else h_order
        if g_val % h_val != 0:
            raise InvalidSubgroupError(
                f"intersection order {h_val} does not divide group order {g_val} at {x}"
            )
        g_after, h_after = lower.order_after(x), subgroup.order_after(x)
        if g_after % h_after != 0:
            raise InvalidSubgroupError(
                f"intersection order {h_after} does not divide group order {g_after} past {x}"
            )
        if h_after > g_after or h_val > g_val:
            raise InvalidSubgroupError("intersection larger than the group")
    return subgroup


_SMALL_PRIMES = (2, 3, 5, 7)


def random_lower_filtration(rng) -> LowerFiltration:
    """Random valid lower filtration with integer breaks.

    Group order is a product of at most 4 primes <= 7; a random divisor
    chain drops at strictly increasing integer breaks <= 30, optionally
    with an unramified part (drop immediately after -1).
    """
    k = rng.randint(1, 4)
    primes = [rng.choice(_SMALL_PRIMES) for _ in range(k)]
    chain = [1]
    for q in primes:
        chain.append(chain[-1] * q)
    chain.reverse()  # N = chain[0] > ... > 1, dividing successively
    # collapse a random subset of intermediate stages to shorten the chain
    keep = [chain[0]]
    for n in chain[1:-1]:
        if rng.random() < 0.7:
            keep.append(n)
    keep.append(1)
    chain = []
    for n in keep:  # drop duplicates from repeated primes
        if not chain or n < chain[-1]:
            chain.append(n)
    full = chain[0]
    pairs = [(Fraction(-1), full)]
    rest = chain[1:]
    if len(rest) >= 2 and rng.random() < 0.3:
        pairs.append((Fraction(-1), rest[0]))  # unramified part
        rest = rest[1:]
    breaks = sorted(rng.sample(range(0, 31), len(rest)))
    pairs.extend((Fraction(b), n) for b, n in zip(breaks, rest))
    return LowerFiltration(StepFunction(pairs))
