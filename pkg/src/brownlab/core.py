"""Fundamental data types and gap analysis for finite colorings.

Positions are 0-based throughout: a coloring assigns one of ``palette``
colors to each position of the initial segment ``0..length-1``.  Finite
sets of naturals are represented as strictly increasing tuples of ints;
they stand for color classes and for homogeneous sets under analysis.

The central quantity is the *gap size* ``gap_size(H)``: the largest
difference between consecutive elements of ``H``, with the convention
that sets of at most one element (including the empty set) have gap
size 1.  A *window* of ``H`` is a run of consecutive elements in H's
sorted enumeration; windows are the sets the growth-bound checks in
:mod:`brownlab.checker` quantify over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import GrowthSpecError, InvalidArgumentError

FiniteSet = tuple  # strictly increasing tuple of naturals


def finite_set(elements: Iterable[int]) -> FiniteSet:
    """Build a finite set (sorted, duplicate-free tuple) from any iterable."""
    out = tuple(sorted(set(elements)))
    if out and out[0] < 0:
        raise InvalidArgumentError("finite sets contain naturals only")
    return out


@dataclass(frozen=True)
class Coloring:
    """An assignment of a color ``< palette`` to each position ``0..length-1``."""

    palette: int
    values: tuple

    def __post_init__(self):
        values = self.values
        if not isinstance(values, tuple):
            object.__setattr__(self, "values", tuple(values))
            values = self.values
        if values:
            if self.palette < 1:
                raise InvalidArgumentError("palette must be >= 1 for a nonempty coloring")
            if min(values) < 0 or max(values) >= self.palette:
                raise InvalidArgumentError("coloring values must lie in 0..palette-1")
        elif self.palette < 0:
            raise InvalidArgumentError("palette must be a natural")

    @property
    def length(self) -> int:
        return len(self.values)

    def color_class(self, color: int) -> FiniteSet:
        """The positions carrying ``color``, as a sorted tuple."""
        if not 0 <= color < self.palette:
            raise InvalidArgumentError(f"color {color} outside palette of size {self.palette}")
        return tuple(x for x, v in enumerate(self.values) if v == color)

    def classes(self) -> list:
        """All color classes at once, in one pass over the values."""
        out: list[list[int]] = [[] for _ in range(self.palette)]
        for x, v in enumerate(self.values):
            out[v].append(x)
        return [tuple(c) for c in out]


def color_class(coloring: Coloring, color: int) -> FiniteSet:
    """Function form of :meth:`Coloring.color_class`."""
    return coloring.color_class(color)


# ---------------------------------------------------------------------------
# Growth functions
# ---------------------------------------------------------------------------

_KINDS = ("id", "linear", "exp2", "table", "closure")


@dataclass(frozen=True)
class GrowthFn:
    """A total function from naturals to naturals used as a largeness threshold.

    Supported shapes: the identity, ``linear`` with slope ``m >= 1``,
    base-2 exponential, a finite lookup table with an explicit tail rule
    (``const`` repeats the last value, ``linear`` extrapolates with the
    last difference, which must be >= 0), and the monotone closure of
    another growth function (pointwise partial sums).

    ``nondecreasing`` is certified at construction for id/linear/exp2/closure
    and checked over the table for lookups; the fast checker paths rely on it.
    """

    kind: str
    slope: int = 0
    table: tuple = ()
    tail: str = "const"
    inner: Optional["GrowthFn"] = None
    nondecreasing: bool = field(default=True)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidArgumentError(f"unknown growth kind {self.kind!r}")
        if self.kind == "linear" and self.slope < 1:
            raise InvalidArgumentError("linear growth needs slope >= 1")
        if self.kind == "table":
            if not self.table:
                raise InvalidArgumentError("lookup table may not be empty")
            if any(v < 0 for v in self.table):
                raise InvalidArgumentError("table values must be naturals")
            if self.tail not in ("const", "linear"):
                raise InvalidArgumentError(f"unknown tail rule {self.tail!r}")
            if self.tail == "linear":
                if len(self.table) < 2:
                    raise InvalidArgumentError("linear tail needs at least two table values")
                if self.table[-1] < self.table[-2]:
                    raise InvalidArgumentError("linear tail must extrapolate with step >= 0")
        if self.kind == "closure" and self.inner is None:
            raise InvalidArgumentError("closure needs an inner growth function")
        object.__setattr__(self, "nondecreasing", self._compute_nondecreasing())

    def _compute_nondecreasing(self) -> bool:
        if self.kind == "table":
            return all(a <= b for a, b in zip(self.table, self.table[1:]))
        return True

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls) -> "GrowthFn":
        return cls("id")

    @classmethod
    def linear(cls, slope: int) -> "GrowthFn":
        return cls("linear", slope=slope)

    @classmethod
    def exp2(cls) -> "GrowthFn":
        return cls("exp2")

    @classmethod
    def from_table(cls, values: Iterable[int], tail: str = "const") -> "GrowthFn":
        return cls("table", table=tuple(values), tail=tail)

    @classmethod
    def closure(cls, inner: "GrowthFn") -> "GrowthFn":
        return cls("closure", inner=inner)

    # -- evaluation ---------------------------------------------------------

    def __call__(self, n: int) -> int:
        if n < 0:
            raise InvalidArgumentError("growth functions are defined on naturals")
        kind = self.kind
        if kind == "id":
            return n
        if kind == "linear":
            return self.slope * n
        if kind == "exp2":
            return 1 << n
        if kind == "table":
            table = self.table
            if n < len(table):
                return table[n]
            if self.tail == "const":
                return table[-1]
            step = table[-1] - table[-2] if len(table) >= 2 else 0
            return table[-1] + (n - (len(table) - 1)) * step
        # closure: pointwise partial sums of the inner function
        inner = self.inner
        return sum(inner(i) for i in range(n + 1))

    # -- spec strings --------------------------------------------------------

    def spec_string(self) -> str:
        """Canonical textual form; ``parse_growth_spec`` inverts it exactly."""
        if self.kind == "id":
            return "id"
        if self.kind == "linear":
            return f"linear:{self.slope}"
        if self.kind == "exp2":
            return "exp2"
        if self.kind == "table":
            body = ",".join(str(v) for v in self.table)
            suffix = ";tail=linear" if self.tail == "linear" else ""
            return f"table:{body}{suffix}"
        return f"closure:{self.inner.spec_string()}"


def parse_growth_spec(text: str, _base: int = 0) -> GrowthFn:
    """Parse a growth spec string.

    Grammar: ``id`` | ``linear:<m>`` | ``exp2`` | ``table:<v0>,<v1>,...[;tail=const|linear]``
    | ``closure:<spec>``.  Malformed input raises :class:`GrowthSpecError`
    with the 0-based position of the offending character.
    """
    if text == "id":
        return GrowthFn.identity()
    if text == "exp2":
        return GrowthFn.exp2()
    if text.startswith("linear:"):
        body = text[len("linear:"):]
        pos = _base + len("linear:")
        if not body.isdigit():
            raise GrowthSpecError(f"expected a slope integer, got {body!r}", pos)
        slope = int(body)
        if slope < 1:
            raise GrowthSpecError("linear slope must be >= 1", pos)
        return GrowthFn.linear(slope)
    if text.startswith("table:"):
        return _parse_table(text, _base)
    if text.startswith("closure:"):
        inner = parse_growth_spec(text[len("closure:"):], _base + len("closure:"))
        return GrowthFn.closure(inner)
    raise GrowthSpecError(f"unrecognized growth spec {text!r}", _base)


def _parse_table(text: str, base: int) -> GrowthFn:
    body_off = len("table:")
    body = text[body_off:]
    head, sep, tail_part = body.partition(";")
    values = []
    offset = base + body_off
    if not head:
        raise GrowthSpecError("table needs at least one value", offset)
    for token in head.split(","):
        if not token.isdigit():
            raise GrowthSpecError(f"expected a table value, got {token!r}", offset)
        values.append(int(token))
        offset += len(token) + 1
    tail = "const"
    if sep:
        tail_off = base + body_off + len(head) + 1
        if not tail_part.startswith("tail="):
            raise GrowthSpecError("expected tail=const or tail=linear", tail_off)
        tail = tail_part[len("tail="):]
        if tail not in ("const", "linear"):
            raise GrowthSpecError(f"unknown tail rule {tail!r}", tail_off + len("tail="))
    try:
        return GrowthFn.from_table(values, tail=tail)
    except InvalidArgumentError as exc:
        raise GrowthSpecError(str(exc), base + body_off) from None


def monotone_closure(f: GrowthFn) -> GrowthFn:
    """The nondecreasing majorant ``g(n) = sum(f(i) for i <= n)``.

    ``g`` dominates ``f`` pointwise and always carries the nondecreasing flag,
    so it unlocks the fast checker paths for arbitrary growth functions.
    """
    return GrowthFn.closure(f)


# ---------------------------------------------------------------------------
# Gap analysis
# ---------------------------------------------------------------------------


def gap_size(h: Sequence[int]) -> int:
    """Largest difference between consecutive elements; 1 when ``|H| <= 1``."""
    if len(h) <= 1:
        return 1
    return max(b - a for a, b in zip(h, h[1:]))


def windows(h: Sequence[int]) -> Iterator[FiniteSet]:
    """All contiguous runs ``H[j..k]`` of ``h``, each exactly once.

    Yields ``len(h) * (len(h) + 1) // 2`` windows; nothing for the empty set.
    """
    h = tuple(h)
    n = len(h)
    for j in range(n):
        for k in range(j, n):
            yield h[j:k + 1]


def max_run_size(h: Sequence[int], d: int) -> int:
    """Size of the largest window of ``h`` whose gaps are all <= ``d``.

    Equals the maximum size over *all* subsets of ``h`` with gap size <= d:
    a gap-bounded subset is contained in the window spanning it, and that
    window is no worse (checked against subset enumeration in the tests).
    Returns 0 for the empty set.
    """
    if d < 1:
        raise InvalidArgumentError("gap bound must be >= 1")
    if not h:
        return 0
    best = cur = 1
    prev = h[0]
    for x in h[1:]:
        cur = cur + 1 if x - prev <= d else 1
        if cur > best:
            best = cur
        prev = x
    return best


@dataclass(frozen=True)
class GapSpectrum:
    """Per gap bound ``d``: the longest window with gap size <= d and == d.

    The ``<=`` column is nondecreasing in d and reaches ``|H|`` once d passes
    ``gap_size(H)``; the ``==`` column never exceeds it.
    """

    entries: Mapping[int, tuple]

    def bounded(self, d: int) -> int:
        return self.entries[d][0]

    def exact(self, d: int) -> int:
        return self.entries[d][1]


def gap_spectrum(h: Sequence[int], d_max: int) -> GapSpectrum:
    """Tabulate, for d in 1..d_max, the longest windows with gap size <= d / == d.

    A window with gap size exactly d (d >= 2) must contain a consecutive
    difference equal to d, so the maximum is attained on maximal d-bounded
    runs that contain such a difference.  For d == 1 every singleton counts,
    matching the ``|H| <= 1`` convention of :func:`gap_size`.
    """
    h = tuple(h)
    entries = {}
    for d in range(1, d_max + 1):
        bounded = 0
        exact = 0
        i = 0
        n = len(h)
        while i < n:
            j = i
            has_d = False
            while j + 1 < n and h[j + 1] - h[j] <= d:
                if h[j + 1] - h[j] == d:
                    has_d = True
                j += 1
            length = j - i + 1
            if length > bounded:
                bounded = length
            if has_d and length > exact:
                exact = length
            i = j + 1
        if d == 1 and n >= 1 and exact == 0:
            exact = 1
        entries[d] = (bounded, exact)
    return GapSpectrum(entries)
