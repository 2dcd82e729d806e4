"""Explicit constructions and bound evaluators.

This module materializes and verifies the library's reference objects:

* the alternating-block coloring ``diag(d, .)`` whose color classes admit
  no gap-d-bounded homogeneous set larger than d;
* the recursive witness ladder: stage s is a coloring on ``n_s`` positions
  with ``2**s`` colors, every class of which satisfies the star condition
  for the base-2 exponential growth function, so stage s certifies that
  the corresponding Brown number exceeds ``n_s``;
* closed-form upper bounds (a linear-growth bound and the generic
  recursion ``n_1 = f(1) + 2``, ``n_{r+1} = (r+1) * f(n_r) + 1``);
* iterated exponentials (towers) with a configurable bit cap;
* generators for piecewise-syndetic prefixes, the syndetic/thick
  decomposition, and the block-selection extraction that pulls a
  gap-bounded homogeneous subset out of an index set.

All integer results are exact (Python ints are arbitrary precision).
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Optional, Sequence

from .checker import satisfies_star
from .core import Coloring, FiniteSet, GrowthFn, gap_size, max_run_size, monotone_closure
from .errors import InsufficientPrefixError, InvalidArgumentError, MagnitudeError

LADDER_MATERIALIZE_CAP = 2   # stages beyond this are evaluator-only
LADDER_LENGTH_CAP = 3        # n_s is not representable past stage 3
TOWER_DEFAULT_BIT_CAP = 1 << 25


try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pure-Python fallback below
    _mpz = None


def decimal_str(n: int) -> str:
    """Exact decimal rendering of a natural, fast at millions of bits.

    The builtin conversion is quadratic and guarded by an interpreter digit
    limit; gmpy2 handles the stage-3 ladder length (~2 million bits) in
    milliseconds when available, and a power-of-ten splitting fallback
    keeps it under a few seconds otherwise.
    """
    if n < 0:
        raise InvalidArgumentError("decimal_str renders naturals only")
    if n.bit_length() <= 10_000:
        return str(n)
    if _mpz is not None:
        return _mpz(n).digits(10)

    powers: dict[int, int] = {}

    def pow10(k: int) -> int:
        value = powers.get(k)
        if value is None:
            value = 10 ** k
            powers[k] = value
        return value

    def render(x: int, digits: int) -> str:
        if digits <= 2_500:
            return str(x).zfill(digits)
        k = digits >> 1
        hi, lo = divmod(x, pow10(k))
        return render(hi, digits - k) + render(lo, k)

    # digit count from the bit length, corrected by at most one
    digits = int(n.bit_length() * 0.30103) + 1
    if n >= pow10(digits):
        digits += 1
    return render(n, digits).lstrip("0") or "0"


# ---------------------------------------------------------------------------
# Alternating-block coloring
# ---------------------------------------------------------------------------


def diag(d: int, x: int) -> int:
    """Color of position x in the width-d alternating-block 2-coloring.

    Positions fall in blocks of d consecutive naturals; blocks alternate
    between colors 0 and 1, so the color is ``(x // d) % 2``.
    """
    if d < 1:
        raise InvalidArgumentError("block width must be >= 1")
    return (x // d) & 1


def diag_prefix(d: int, n: int) -> Coloring:
    """The length-n prefix of the width-d alternating-block coloring."""
    if d < 1:
        raise InvalidArgumentError("block width must be >= 1")
    return Coloring(palette=2, values=tuple((x // d) & 1 for x in range(n)))


def diag_bound_check(d: int, n: int) -> int:
    """Max size of a homogeneous set with gaps <= d in the length-n prefix.

    Measured, not assumed: both color classes are extracted and scanned for
    their longest d-bounded window.  Blocks of one color are d apart plus
    one, so the measured value is exactly d whenever a full block fits,
    which is why a prefix of at least 2d positions is required.
    """
    if d < 1:
        raise InvalidArgumentError("block width must be >= 1")
    if n < 2 * d:
        raise InsufficientPrefixError(f"need a prefix of at least {2 * d} positions for width {d}")
    best = 0
    for parity in (0, 1):
        h = [x for x in range(n) if (x // d) & 1 == parity]
        size = max_run_size(h, d)
        if size > best:
            best = size
    return best


# ---------------------------------------------------------------------------
# The witness ladder
# ---------------------------------------------------------------------------


def ladder_lengths(up_to: int) -> list:
    """Exact stage lengths n_0..n_up_to: n_0 = 2, n_{s+1} = 2 * n_s * 2**n_s."""
    if up_to > LADDER_LENGTH_CAP:
        raise MagnitudeError(
            f"stage {up_to} length is not representable "
            f"(stage {LADDER_LENGTH_CAP} already has ~2 million bits)",
            depth=up_to)
    lengths = [2]
    for _ in range(up_to):
        n = lengths[-1]
        lengths.append(2 * n * (1 << n))
    return lengths


@dataclass(frozen=True)
class LadderStage:
    """Stage s of the witness ladder: palette ``2**s``, length ``n_s``.

    ``coloring`` is materialized only when the stage fits the cap; larger
    stages still expose the exact length and a positional evaluator.
    """

    index: int
    length: int
    palette: int
    coloring: Optional[Coloring]
    lengths: tuple

    @property
    def materialized(self) -> bool:
        return self.coloring is not None

    def color_at(self, x: int) -> int:
        """Color of position x, by unwinding the recursive block structure."""
        if not 0 <= x < self.length:
            raise InvalidArgumentError(f"position {x} outside 0..{self.length - 1}")
        color = 0
        for s in range(self.index, 0, -1):
            half = self.lengths[s - 1]
            pos = x % (2 * half)
            if pos >= half:
                color += 1 << (s - 1)
                pos -= half
            x = pos
        return color


def _ladder_values(s: int, lengths: Sequence[int]) -> list:
    values = [0, 0]
    for stage in range(s):
        shifted = [v + (1 << stage) for v in values]
        values = (values + shifted) * (1 << lengths[stage])
    return values


def ladder(s: int, materialize_cap: int = LADDER_MATERIALIZE_CAP) -> LadderStage:
    """Build stage s.  Stages past the materialization cap come back
    evaluator-only (flagged via ``materialized``); stages whose length is not
    even representable raise :class:`MagnitudeError`."""
    if s < 0:
        raise InvalidArgumentError("stage index must be a natural")
    lengths = ladder_lengths(s)
    coloring = None
    if s <= materialize_cap:
        coloring = Coloring(palette=1 << s, values=tuple(_ladder_values(s, lengths)))
    return LadderStage(index=s, length=lengths[s], palette=1 << s,
                       coloring=coloring, lengths=tuple(lengths))


@dataclass(frozen=True)
class LadderClaim:
    color: int
    size_ok: bool
    star_ok: bool
    span_ok: bool

    @property
    def ok(self) -> bool:
        return self.size_ok and self.star_ok and self.span_ok


@dataclass(frozen=True)
class LadderVerifyReport:
    stage: int
    length: int
    palette: int
    claims: tuple
    failures: tuple

    @property
    def all_ok(self) -> bool:
        return not self.failures


def ladder_verify(s: int) -> LadderVerifyReport:
    """Check, for every color class of stage s:

    1. the class holds exactly ``n_s / 2**s`` positions;
    2. the class satisfies the star condition for base-2 exponential growth;
    3. the span identity ``n_s == max - min + n_0 + ... + n_{s-1} + 1``.
    """
    stage = ladder(s)
    if stage.coloring is None:
        raise MagnitudeError(f"stage {s} exceeds the materialization cap, cannot scan its classes",
                             depth=s)
    exp2 = GrowthFn.exp2()
    pad = sum(stage.lengths[:s]) + 1
    claims = []
    failures = []
    for color, h in enumerate(stage.coloring.classes()):
        size_ok = len(h) == stage.length // stage.palette
        star_ok = satisfies_star(h, exp2, color=color).holds
        span_ok = bool(h) and stage.length == h[-1] - h[0] + pad
        claims.append(LadderClaim(color, size_ok, star_ok, span_ok))
        for name, ok in (("class size", size_ok), ("star condition", star_ok),
                         ("span identity", span_ok)):
            if not ok:
                failures.append(f"color {color}: {name} fails")
    return LadderVerifyReport(stage=s, length=stage.length, palette=stage.palette,
                              claims=tuple(claims), failures=tuple(failures))


# ---------------------------------------------------------------------------
# Bound evaluators
# ---------------------------------------------------------------------------


def upper_bound_seq(f: GrowthFn, r: int) -> int:
    """The recursion bound: ``n_1 = f(1) + 2``, ``n_{r+1} = (r+1) * f(n_r) + 1``.

    Exact for all r; growth functions without the nondecreasing flag are
    replaced by their monotone closure first (the result then bounds the
    quantity for the original function from above, since the closure
    dominates it pointwise).
    """
    if r < 1:
        raise InvalidArgumentError("r must be >= 1")
    if not f.nondecreasing:
        f = monotone_closure(f)
    n = f(1) + 2
    for k in range(2, r + 1):
        n = k * f(n) + 1
    return n


def ardal_bound(m: int, r: int) -> int:
    """Closed-form bound for linear growth with slope m: ``r * (2**(m*r) - m*r) + 1``."""
    if m < 1 or r < 1:
        raise InvalidArgumentError("m and r must be >= 1")
    return r * ((1 << (m * r)) - m * r) + 1


def tower(k: int, n: int, bit_cap: int = TOWER_DEFAULT_BIT_CAP) -> int:
    """Iterated exponential: height 0 is n, each level is 2 to the previous.

    Results whose bit count would exceed ``bit_cap`` raise
    :class:`MagnitudeError` carrying the offending (k, n).
    """
    if k < 0 or n < 0:
        raise InvalidArgumentError("tower arguments must be naturals")
    v = n
    for _ in range(k):
        if v >= bit_cap:
            raise MagnitudeError(
                f"tower of height {k} over {n} exceeds the {bit_cap}-bit cap",
                depth=k, base=n)
        v = 1 << v
    return v


@dataclass(frozen=True)
class LowerBoundEntry:
    stage: int
    ladder_length: int
    tower_value: int

    @property
    def holds(self) -> bool:
        return self.ladder_length >= self.tower_value


@dataclass(frozen=True)
class LadderLowerBoundReport:
    """Ladder lengths dominate the height-s towers, so the exponential-growth
    Brown number at ``r`` colors exceeds the tower of height ``floor(log2 r)``:
    chasing ``B(r) >= B(2**s) > n_s >= tower(s)`` with ``s = floor(log2 r)``."""

    entries: tuple

    @property
    def all_hold(self) -> bool:
        return all(e.holds for e in self.entries)

    def implied_lower_bound(self, r: int) -> tuple:
        """For r colors: (stage s used, the tower value the Brown number exceeds)."""
        if r < 1:
            raise InvalidArgumentError("r must be >= 1")
        s = min(r.bit_length() - 1, len(self.entries) - 1)
        return s, self.entries[s].tower_value


def ladder_lower_bound_check(s_max: int) -> LadderLowerBoundReport:
    """Verify ``n_s >= tower(s)`` exactly for all stages up to ``s_max <= 3``."""
    if s_max > LADDER_LENGTH_CAP:
        raise MagnitudeError(
            f"stage {s_max} length is not representable, cannot compare", depth=s_max)
    lengths = ladder_lengths(s_max)
    entries = tuple(LowerBoundEntry(s, lengths[s], tower(s, 1)) for s in range(s_max + 1))
    return LadderLowerBoundReport(entries=entries)


# ---------------------------------------------------------------------------
# Piecewise-syndetic constructions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockPrefix:
    """A strictly increasing prefix organized into blocks I_1, I_2, ...

    Block n holds exactly n elements whose internal gaps all equal the
    generating sequence's value at n, and consecutive blocks are separated
    by exactly n (the index of the earlier block).  ``bounds[n-1]`` is the
    (start, end) index slice of block n within ``elements``.
    """

    elements: tuple
    bounds: tuple

    def block(self, n: int) -> FiniteSet:
        start, end = self.bounds[n - 1]
        return self.elements[start:end]

    @property
    def block_count(self) -> int:
        return len(self.bounds)

    def block_of_index(self, k: int) -> int:
        """1-based block number containing element index k."""
        if not 0 <= k < len(self.elements):
            raise InvalidArgumentError(f"index {k} outside the generated prefix")
        starts = [b[0] for b in self.bounds]
        return bisect.bisect_right(starts, k)


def ps_generate(gaps: Coloring, blocks: int) -> BlockPrefix:
    """Emit a piecewise-syndetic prefix whose block-n internal gaps equal
    ``gaps(n)``.

    Starts at 0 with the one-element block I_1; after block n the next
    element jumps by n and block n+1 continues with n gaps of ``gaps(n+1)``.
    Needs ``gaps`` defined and >= 1 at every used position 2..blocks.
    The emitted prefix satisfies ``x_k <= palette * k * (k+1) / 2``.
    """
    if blocks < 1:
        raise InvalidArgumentError("at least one block must be requested")
    if gaps.length <= blocks:
        raise InvalidArgumentError(
            f"gap coloring defines positions < {gaps.length}, but block {blocks} is requested")
    for n in range(2, blocks + 1):
        if gaps.values[n] < 1:
            raise InvalidArgumentError(f"gap value at {n} must be >= 1")
    xs = [0]
    bounds = [(0, 1)]
    for n in range(1, blocks):
        xs.append(xs[-1] + n)
        start = len(xs) - 1
        gap = gaps.values[n + 1]
        for _ in range(n):
            xs.append(xs[-1] + gap)
        bounds.append((start, len(xs)))
    return BlockPrefix(elements=tuple(xs), bounds=tuple(bounds))


def ps_problems(prefix: BlockPrefix, gaps: Coloring) -> list:
    """Check the emitted block structure against its contract; list failures."""
    problems = []
    xs = prefix.elements
    if any(b <= a for a, b in zip(xs, xs[1:])):
        problems.append("elements are not strictly increasing")
    for n, (start, end) in enumerate(prefix.bounds, start=1):
        block = xs[start:end]
        if len(block) != n:
            problems.append(f"block {n} holds {len(block)} elements, expected {n}")
        if n >= 2:
            expect = gaps.values[n]
            if any(b - a != expect for a, b in zip(block, block[1:])):
                problems.append(f"block {n} internal gaps differ from {expect}")
        if n >= 2:
            prev_end = prefix.bounds[n - 2][1]
            separation = block[0] - xs[prev_end - 1]
            if separation != n - 1:
                problems.append(f"blocks {n - 1},{n} separated by {separation}, expected {n - 1}")
    r = gaps.palette
    for k, x in enumerate(xs):
        if x > r * k * (k + 1) // 2:
            problems.append(f"growth bound fails at index {k}: {x}")
            break
    return problems


def decompose_ps(x: Sequence[int], d: int, horizon: int):
    """Split a prefix into (syndetic-part, thick-part) with X = Y intersect Z.

    ``Z`` smears X right by 0..d-1 (a thick prefix when X is piecewise
    d-syndetic); ``Y`` re-adds everything outside Z.  The identity
    ``X == Y & Z`` holds on ``[0, horizon - d)``; the last d positions are
    subject to boundary effects of the finite window.
    """
    if d < 1:
        raise InvalidArgumentError("d must be >= 1")
    xset = set(x)
    if xset and (min(xset) < 0 or max(xset) >= horizon):
        raise InvalidArgumentError("x must lie within [0, horizon)")
    zset = {v + s for v in xset for s in range(d) if v + s < horizon}
    yset = xset | (set(range(horizon)) - zset)
    return tuple(sorted(yset)), tuple(sorted(zset))


@dataclass(frozen=True)
class ExtractReport:
    """Outcome of the block-selection extraction."""

    image: tuple           # the x-values indexed by the whole index set
    subset: tuple          # n elements of the image with gaps <= e*d
    source_block: int      # 1-based block that supplied the subset
    used_first_half: bool  # True when the first n elements stayed in the earlier block
    gap_bound: int         # e*d

    @property
    def ok(self) -> bool:
        return (len(self.subset) >= 1
                and gap_size(self.subset) <= self.gap_bound)


def extract_homogeneous_ps(d: int, e: int, index_set: Sequence[int],
                           prefix: BlockPrefix, n: int) -> ExtractReport:
    """Pull an n-element subset with gaps <= e*d out of ``{x_j : j in Y}``.

    ``prefix`` must come from :func:`ps_generate` with all gap values <= d,
    and the index set Y must contain a window of ``k + 2n`` indices with
    gaps <= e, where ``k = 1 + 2 + ... + (2ne - 1)``.  The last 2n indices
    of that window map into at most two consecutive blocks; whichever block
    received n of them supplies the subset, whose gaps are then at most
    e*d because index steps of at most e stay within one block of
    internal gap at most d.
    """
    if d < 1 or e < 1 or n < 1:
        raise InvalidArgumentError("d, e and n must be >= 1")
    y = tuple(index_set)
    k = (2 * n * e - 1) * (2 * n * e) // 2
    needed = k + 2 * n
    window = _first_bounded_window(y, e, needed)
    if window is None:
        raise InsufficientPrefixError(
            f"index set has no window of {needed} indices with gaps <= {e}")
    if y[-1] >= len(prefix.elements):
        raise InsufficientPrefixError(
            f"index {y[-1]} outside the generated prefix of {len(prefix.elements)} elements")
    tail = window[k:]
    image = tuple(prefix.elements[j] for j in y)
    block_first = prefix.block_of_index(tail[0])
    first_start, first_end = prefix.bounds[block_first - 1]
    if all(j < first_end for j in tail[:n]):
        subset = tuple(prefix.elements[j] for j in tail[:n])
        chosen, used_first = block_first, True
    else:
        if block_first >= prefix.block_count:
            raise InsufficientPrefixError("window tail spills past the last generated block")
        next_start, next_end = prefix.bounds[block_first]
        if not all(next_start <= j < next_end for j in tail[n:]):
            raise InsufficientPrefixError(
                "window tail does not fit two consecutive blocks; "
                "the prefix gaps likely exceed the declared bound")
        subset = tuple(prefix.elements[j] for j in tail[n:])
        chosen, used_first = block_first + 1, False
    return ExtractReport(image=image, subset=subset, source_block=chosen,
                         used_first_half=used_first, gap_bound=e * d)


def _first_bounded_window(y: Sequence[int], e: int, size: int):
    """First run of ``size`` consecutive elements of y with gaps <= e."""
    i = 0
    m = len(y)
    while i < m:
        j = i
        while j + 1 < m and y[j + 1] - y[j] <= e:
            j += 1
            if j - i + 1 == size:
                return y[i:i + size]
        i = j + 1
    return None
