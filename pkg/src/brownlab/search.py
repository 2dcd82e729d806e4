"""Exact computation and bracketing of coloring thresholds by pruned DFS.

Both searches share one engine: colorings are extended position by
position, and a branch is cut as soon as the newest assignment makes an
extension invalid.  Validity is monotone (windows and progressions only
grow under extension), so every node of the pruned tree is itself a valid
coloring of its depth, valid colorings are closed under truncation, and
the threshold equals the maximum tree depth plus one.

Symmetry is broken by first-use color canonicalization: a branch may
introduce color c only when colors ``0..c-1`` are already in use.  Every
coloring is a palette permutation of a canonical one and validity is
permutation invariant, so outcomes are unchanged (only node counts drop).

For the Brown-number search each color class keeps, per distinct gap
value d it has ever seen, the length of the maximal d-bounded run ending
at its last element.  An extension is then checked in O(#distinct gaps):
runs either extend by one or restart, and a brand-new gap value g
inherits the run of the largest tracked bound below it, because no gap in
between occurs in the class.  Checking each run against its budget as it
grows covers every window once the growth function is nondecreasing.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Optional

from .checker import WitnessCertificate, is_witness
from .constructions import ardal_bound, upper_bound_seq
from .core import Coloring, GrowthFn, monotone_closure
from .errors import InvalidArgumentError, PreconditionError
from .progressions import ap_partition_check


@dataclass(frozen=True)
class SearchBudget:
    """Resource caps for a search; None means unlimited."""

    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a threshold search.

    ``exact`` outcomes carry the proven value (a witness of length
    ``value - 1`` exists and the full tree shows none of length ``value``).
    ``bracketed`` outcomes guarantee ``lower <= true value`` and, when an
    upper bound is known, ``true value <= upper``.  The longest witness
    found always ships with the outcome; for growth-threshold searches it
    is additionally certified.
    """

    kind: str                                  # "exact" | "bracketed"
    value: Optional[int]
    lower: int
    upper: Optional[int]
    witness: Coloring
    certificate: Optional[WitnessCertificate]
    nodes_explored: int
    wall_time: float
    used_closure: bool = False


@dataclass(frozen=True)
class ConfirmOutcome:
    """Result of a no-witness confirmation; ``result`` is None when the
    budget ran out before the tree was exhausted."""

    result: Optional[bool]
    nodes: int


# ---------------------------------------------------------------------------
# Extension rules
# ---------------------------------------------------------------------------


class _StarRule:
    """Incremental per-class star checking for a nondecreasing growth fn."""

    __slots__ = ("_f", "_limits", "elems", "runs", "undo")

    def __init__(self, f: GrowthFn, palette: int, values):
        self._f = f
        self._limits: dict[int, int] = {}
        self.elems = [[] for _ in range(palette)]
        self.runs = [{} for _ in range(palette)]
        self.undo = [[] for _ in range(palette)]

    def _limit(self, d: int) -> int:
        limit = self._limits.get(d)
        if limit is None:
            limit = self._f(d)
            self._limits[d] = limit
        return limit

    def try_push(self, pos: int, color: int) -> bool:
        elems = self.elems[color]
        runs = self.runs[color]
        if elems:
            g = pos - elems[-1]
            new_runs = {}
            for d, length in runs.items():
                length = length + 1 if d >= g else 1
                if length > self._limit(d):
                    return False
                new_runs[d] = length
            if g not in new_runs:
                below = max(d for d in runs if d <= g)
                length = runs[below] + 1
                if length > self._limit(g):
                    return False
                new_runs[g] = length
        else:
            if 1 > self._limit(1):
                return False
            new_runs = {1: 1}
        self.undo[color].append(runs)
        self.runs[color] = new_runs
        elems.append(pos)
        return True

    def pop(self, pos: int, color: int) -> None:
        self.elems[color].pop()
        self.runs[color] = self.undo[color].pop()


class _ApRule:
    """Reject assignments that complete a monochromatic l-term progression."""

    __slots__ = ("l", "values")

    def __init__(self, l: int, values):
        self.l = l
        self.values = values

    def try_push(self, pos: int, color: int) -> bool:
        l = self.l
        if l == 1:
            return False
        values = self.values
        span = l - 1
        q = 1
        while q * span <= pos:
            for i in range(1, l):
                if values[pos - i * q] != color:
                    break
            else:
                return False
            q += 1
        return True

    def pop(self, pos: int, color: int) -> None:
        pass


def _make_rule(desc, values):
    kind = desc[0]
    if kind == "star":
        return _StarRule(desc[1], desc[2], values)
    return _ApRule(desc[1], values)


# ---------------------------------------------------------------------------
# DFS engine
# ---------------------------------------------------------------------------


@dataclass
class _DfsStats:
    best: tuple
    nodes: int
    exhausted: bool
    reached_cap: bool


def _dfs(palette, cap, rule, values, used0, max_nodes, deadline,
         canonical, stop_at_cap, collect) -> _DfsStats:
    """Iterative DFS over valid extensions; lowest color first.

    ``values`` arrives pre-seeded with a valid prefix already pushed into
    ``rule``.  ``best`` tracks the first (hence lexicographically least)
    deepest valid coloring.  With ``collect`` set, depth-``cap`` nodes are
    gathered as subtree roots instead of stopping the search.
    """
    nodes = 0
    exhausted = False
    reached_cap = False
    best = tuple(values)
    best_len = len(values)
    if cap is not None and best_len >= cap:
        if collect is not None:
            collect.append(best)
        return _DfsStats(best, nodes, False, True)

    frames = [0]
    used_stack = [used0]
    last_color = palette - 1
    while frames:
        if max_nodes is not None and nodes >= max_nodes:
            exhausted = True
            break
        if deadline is not None and nodes & 2047 == 0 and time.monotonic() > deadline:
            exhausted = True
            break
        c = frames[-1]
        limit_c = used_stack[-1] if canonical else last_color
        if limit_c > last_color:
            limit_c = last_color
        if c > limit_c:
            frames.pop()
            if frames:
                prev = values.pop()
                rule.pop(len(values), prev)
                used_stack.pop()
            continue
        frames[-1] = c + 1
        nodes += 1
        pos = len(values)
        if rule.try_push(pos, c):
            values.append(c)
            depth = len(values)
            if depth > best_len:
                best_len = depth
                best = tuple(values)
            if cap is not None and depth >= cap:
                reached_cap = True
                if collect is not None:
                    collect.append(tuple(values))
                values.pop()
                rule.pop(pos, c)
                if stop_at_cap and collect is None:
                    break
                continue
            used_stack.append(max(used_stack[-1], c + 1))
            frames.append(0)
    return _DfsStats(best, nodes, exhausted, reached_cap)


def _run_tree(rule_desc, palette, cap, budget, prefix=(), canonical=True,
              stop_at_cap=True, collect=None) -> _DfsStats:
    values: list[int] = []
    rule = _make_rule(rule_desc, values)
    for pos, c in enumerate(prefix):
        if not rule.try_push(pos, c):
            raise InvalidArgumentError("search prefix is not a valid coloring")
        values.append(c)
    used0 = max(prefix) + 1 if prefix else 0
    deadline = None
    if budget.max_seconds is not None:
        deadline = time.monotonic() + budget.max_seconds
    return _dfs(palette, cap, rule, values, used0, budget.max_nodes,
                deadline, canonical, stop_at_cap, collect)


def _subtree_task(args):
    rule_desc, palette, cap, prefix, max_nodes, max_seconds, canonical = args
    stats = _run_tree(rule_desc, palette, cap,
                      SearchBudget(max_nodes=max_nodes, max_seconds=max_seconds),
                      prefix=prefix, canonical=canonical)
    return stats.best, stats.nodes, stats.exhausted, stats.reached_cap


def _run_parallel(rule_desc, palette, cap, budget, jobs, canonical) -> _DfsStats:
    """Static frontier split: enumerate the valid prefixes at a shallow
    depth, then explore each subtree in a worker.  Merging is deterministic:
    prefixes are generated in DFS (lex) order, so the first task attaining
    the maximum depth holds the lexicographically least deepest coloring."""
    split_depth = None
    prefixes: list[tuple] = []
    probe_nodes = 0
    max_depth = cap if cap is not None else 12
    for k in range(1, min(max_depth, 12) + 1):
        collected: list[tuple] = []
        stats = _run_tree(rule_desc, palette, k, SearchBudget(),
                          canonical=canonical, stop_at_cap=False, collect=collected)
        probe_nodes = stats.nodes
        if not collected:
            return stats  # the whole tree is shallower than k
        split_depth, prefixes = k, collected
        if len(collected) >= 4 * jobs or len(collected) > 5000:
            break
    if not prefixes:
        return _run_tree(rule_desc, palette, cap, budget, canonical=canonical)
    node_share = None
    if budget.max_nodes is not None:
        node_share = max(1, (budget.max_nodes - probe_nodes) // len(prefixes))
    sec_share = None
    if budget.max_seconds is not None:
        sec_share = budget.max_seconds / max(1, jobs)
    tasks = [(rule_desc, palette, cap, p, node_share, sec_share, canonical)
             for p in prefixes]
    with Pool(processes=jobs) as pool:
        results = pool.map(_subtree_task, tasks)
    best = prefixes[0]
    exhausted = False
    reached_cap = False
    nodes = probe_nodes
    for task_best, task_nodes, task_exhausted, task_cap in results:
        nodes += task_nodes
        exhausted = exhausted or task_exhausted
        reached_cap = reached_cap or task_cap
        if len(task_best) > len(best):
            best = task_best
    return _DfsStats(tuple(best), nodes, exhausted, reached_cap)


def _dispatch(rule_desc, palette, cap, budget, jobs, canonical) -> _DfsStats:
    if jobs > 1:
        return _run_parallel(rule_desc, palette, cap, budget, jobs, canonical)
    return _run_tree(rule_desc, palette, cap, budget, canonical=canonical)


# ---------------------------------------------------------------------------
# Public searches
# ---------------------------------------------------------------------------


def formula_upper_bound(f: GrowthFn, r: int) -> int:
    """Best closed-form bound available for (f, r): the recursion value,
    improved by the linear-growth bound when f is linear."""
    bound = upper_bound_seq(f, r)
    if f.kind in ("id", "linear"):
        m = 1 if f.kind == "id" else f.slope
        bound = min(bound, ardal_bound(m, r))
    return bound


def brown_number(f: GrowthFn, r: int, n_cap: Optional[int] = None,
                 budget: Optional[SearchBudget] = None, *,
                 jobs: int = 1, canonical: bool = True) -> SearchOutcome:
    """Least n such that every r-coloring of ``0..n-1`` has a homogeneous
    set H with ``|H| > f(gap_size(H))``.

    Exact when the pruned DFS exhausts the witness tree within budget and
    below ``n_cap``; otherwise a bracket whose lower end is one past the
    longest witness found and whose upper end comes from the closed-form
    bounds.  Growth functions without the nondecreasing flag are replaced
    by their monotone closure, which bounds the original quantity from
    above; the outcome is flagged ``used_closure``.
    """
    if r < 1:
        raise InvalidArgumentError("r must be >= 1")
    budget = budget or SearchBudget()
    started = time.monotonic()
    used_closure = False
    if not f.nondecreasing:
        f = monotone_closure(f)
        used_closure = True
    formula = formula_upper_bound(f, r)
    cap = n_cap if n_cap is not None else formula
    stats = _dispatch(("star", f, r), r, cap, budget, jobs, canonical)
    wall = time.monotonic() - started
    witness = Coloring(palette=r, values=stats.best)
    certificate = is_witness(witness, f)
    if certificate is None:
        raise RuntimeError("search returned a coloring that fails certification; "
                           "this is a bug in the incremental checker")
    lower = len(stats.best) + 1
    if stats.exhausted or stats.reached_cap:
        return SearchOutcome(kind="bracketed", value=None, lower=lower,
                             upper=formula, witness=witness, certificate=certificate,
                             nodes_explored=stats.nodes, wall_time=wall,
                             used_closure=used_closure)
    return SearchOutcome(kind="exact", value=lower, lower=lower, upper=lower,
                         witness=witness, certificate=certificate,
                         nodes_explored=stats.nodes, wall_time=wall,
                         used_closure=used_closure)


def vdw_number(r: int, l: int, n_cap: Optional[int] = None,
               budget: Optional[SearchBudget] = None, *,
               jobs: int = 1, canonical: bool = True) -> SearchOutcome:
    """Least n such that every r-coloring of ``0..n-1`` contains a
    monochromatic l-term arithmetic progression.

    Same engine and outcome semantics as :func:`brown_number`; no
    closed-form upper bound is evaluated, so brackets carry ``upper=None``.
    """
    if r < 1 or l < 1:
        raise InvalidArgumentError("r and l must be >= 1")
    budget = budget or SearchBudget()
    started = time.monotonic()
    stats = _dispatch(("ap", l), r, n_cap, budget, jobs, canonical)
    wall = time.monotonic() - started
    witness = Coloring(palette=r, values=stats.best)
    if ap_partition_check(witness, l) is not None:
        raise RuntimeError("search returned a coloring containing a monochromatic "
                           "progression; this is a bug in the completion check")
    lower = len(stats.best) + 1
    if stats.exhausted or stats.reached_cap:
        return SearchOutcome(kind="bracketed", value=None, lower=lower, upper=None,
                             witness=witness, certificate=None,
                             nodes_explored=stats.nodes, wall_time=wall)
    return SearchOutcome(kind="exact", value=lower, lower=lower, upper=lower,
                         witness=witness, certificate=None,
                         nodes_explored=stats.nodes, wall_time=wall)


def confirm_no_witness(n: int, f: GrowthFn, r: int,
                       budget: Optional[SearchBudget] = None, *,
                       jobs: int = 1, canonical: bool = True) -> ConfirmOutcome:
    """Audit the upper half of an exact claim: does NO valid coloring of
    length n exist?  Runs the complete canonicalized DFS capped at depth n;
    an indeterminate (None) result flags budget exhaustion."""
    if n < 0 or r < 1:
        raise InvalidArgumentError("n must be a natural and r >= 1")
    if not f.nondecreasing:
        raise PreconditionError("no-witness confirmation needs a nondecreasing growth function")
    budget = budget or SearchBudget()
    stats = _dispatch(("star", f, r), r, n, budget, jobs, canonical)
    if stats.reached_cap:
        return ConfirmOutcome(result=False, nodes=stats.nodes)
    if stats.exhausted:
        return ConfirmOutcome(result=None, nodes=stats.nodes)
    return ConfirmOutcome(result=True, nodes=stats.nodes)


def confirm_no_ap_witness(n: int, r: int, l: int,
                          budget: Optional[SearchBudget] = None, *,
                          jobs: int = 1, canonical: bool = True) -> ConfirmOutcome:
    """Progression-side audit: does NO r-coloring of length n avoid a
    monochromatic l-term progression?  Same semantics as
    :func:`confirm_no_witness`."""
    if n < 0 or r < 1 or l < 1:
        raise InvalidArgumentError("n must be a natural, r and l >= 1")
    budget = budget or SearchBudget()
    stats = _dispatch(("ap", l), r, n, budget, jobs, canonical)
    if stats.reached_cap:
        return ConfirmOutcome(result=False, nodes=stats.nodes)
    if stats.exhausted:
        return ConfirmOutcome(result=None, nodes=stats.nodes)
    return ConfirmOutcome(result=True, nodes=stats.nodes)


# ---------------------------------------------------------------------------
# Full-enumeration oracles
# ---------------------------------------------------------------------------


def brown_number_bruteforce(f: GrowthFn, r: int, n_limit: int = 24) -> int:
    """Independent oracle: walk n upward, enumerating every r-coloring of n
    and testing each via subset enumeration, until all colorings have a
    large homogeneous set.  The first color is pinned to 0 (palette
    symmetry); everything else is exhaustive.  Usable for tiny r and n only.
    """
    from .checker import has_large_homogeneous_bruteforce

    if r < 1:
        raise InvalidArgumentError("r must be >= 1")
    for n in range(1, n_limit + 1):
        found_witness = False
        for code in range(r ** max(0, n - 1)):
            values = [0]
            rest = code
            for _ in range(n - 1):
                values.append(rest % r)
                rest //= r
            coloring = Coloring(palette=r, values=tuple(values))
            if has_large_homogeneous_bruteforce(coloring, f) is None:
                found_witness = True
                break
        if not found_witness:
            return n
    raise InvalidArgumentError(f"no value found up to the enumeration limit {n_limit}")


def vdw_number_bruteforce(r: int, l: int, n_limit: int = 16) -> int:
    """Independent oracle for the progression threshold, same shape as
    :func:`brown_number_bruteforce`."""
    if r < 1 or l < 1:
        raise InvalidArgumentError("r and l must be >= 1")
    for n in range(1, n_limit + 1):
        found_witness = False
        for code in range(r ** max(0, n - 1)):
            values = [0]
            rest = code
            for _ in range(n - 1):
                values.append(rest % r)
                rest //= r
            coloring = Coloring(palette=r, values=tuple(values))
            if ap_partition_check(coloring, l) is None:
                found_witness = True
                break
        if not found_witness:
            return n
    raise InvalidArgumentError(f"no value found up to the enumeration limit {n_limit}")
