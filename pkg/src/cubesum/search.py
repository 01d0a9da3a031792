"""Bounded exhaustive search for sums of cubes of univariate polynomials.

Candidates are tuples of ``num_cubes`` polynomials in ``t`` of degree at most
``max_degree`` with coefficients in ``[-coeff_bound, coeff_bound]``.  Because
the target is a constant, the ``t**(3*max_degree)`` coefficient of the cube sum
is the sum of the cubes of the ``t**max_degree`` coefficients and must vanish;
only those "leading tuples" are enumerated.  For each leading tuple the lower
coefficients are matched meet-in-the-middle: cube sums of the first half of the
cubes go in a table, and each second-half assignment looks up the complement.
That decides every candidate in the pruned space exactly.

Results are deduplicated up to permutation of the cubes and the substitutions
``t -> -t`` and ``t -> t + c``; each class is reported by its simplest member
found in the search space.
"""

from __future__ import annotations

import json
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BudgetExceeded, CheckpointMismatch
from .poly import Polynomial
from .representation import Representation
from .verify import verifier_check

DEFAULT_BUDGET = 10**8
SYMMETRY_MODES = ("none", "pair_cancellation")

Coeffs = tuple[int, ...]  # ascending: (c0, c1, ..., cD)
Member = tuple[Coeffs, ...]  # sorted multiset of cubes


def default_budget() -> int:
    return int(os.environ.get("CUBESUM_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class SearchSpace:
    target: int
    num_cubes: int = 4
    max_degree: int = 2
    coeff_bound: int = 2
    symmetry_mode: str = "none"

    def __post_init__(self):
        if self.num_cubes not in (3, 4, 5):
            raise ValueError(f"num_cubes must be 3, 4 or 5, got {self.num_cubes}")
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if self.coeff_bound < 1:
            raise ValueError("coeff_bound must be >= 1")
        if self.symmetry_mode not in SYMMETRY_MODES:
            raise ValueError(f"symmetry_mode must be one of {SYMMETRY_MODES}")

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "num_cubes": self.num_cubes,
            "max_degree": self.max_degree,
            "coeff_bound": self.coeff_bound,
            "symmetry_mode": self.symmetry_mode,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SearchSpace":
        return cls(**data)


@dataclass
class SearchResult:
    space: SearchSpace
    shard: tuple[int, int]
    found: tuple[Representation, ...]
    states_examined: int
    elapsed: float = 0.0
    degenerate: tuple[bool, ...] = field(default=())
    reducible: tuple[bool, ...] = field(default=())

    def to_json(self, include_elapsed: bool = True) -> dict:
        out = {
            "space": self.space.to_json(),
            "shard": list(self.shard),
            "states_examined": self.states_examined,
            "found": [r.to_json() for r in self.found],
            "degenerate": list(self.degenerate),
            "reducible": list(self.reducible),
        }
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 6)
        return out


# --- univariate helpers on ascending coefficient tuples ---

def _trim(c: Sequence[int]) -> Coeffs:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def cube_coefficients(c: Coeffs) -> Coeffs:
    return tuple(_convolve(_convolve(c, c), c))


def _taylor_shift(c: Coeffs, s: int) -> Coeffs:
    """Coefficients of p(t + s)."""
    n = len(c)
    return tuple(sum(c[k] * comb(k, i) * s ** (k - i) for k in range(i, n)) for i in range(n))


def _reflect(c: Coeffs) -> Coeffs:
    return tuple(-x if i % 2 else x for i, x in enumerate(c))


def orbit_key(cubes: Iterable[Sequence[int]]) -> Member:
    """Canonical label of a cube multiset under t -> ±t + c and reordering.

    For each orientation and each non-constant cube there is exactly one shift
    putting that cube's subleading coefficient into ``[0, deg*|lead|)``; the
    least of these normalized forms is the same for every member of a class.
    """
    base = [_trim(c) for c in cubes]
    best: Member | None = None
    for oriented in (base, [_reflect(c) for c in base]):
        for c in oriented:
            d = len(c) - 1
            if d < 1:
                continue
            k = d * c[d]
            b = c[d - 1]
            s = -(b // k) if k > 0 else b // (-k)
            cand = tuple(sorted(_trim(_taylor_shift(x, s)) for x in oriented))
            if best is None or cand < best:
                best = cand
    return best if best is not None else tuple(sorted(base))


def is_pair_cancelling(leading: Sequence[int]) -> bool:
    """Nonzero entries pair off as x, -x."""
    counts = Counter(x for x in leading if x)
    return all(counts[x] == counts[-x] for x in counts)


def pair_cancellation_shape(rep: Representation, max_degree: int) -> bool:
    leads = [c.coefficient({"t": max_degree}) for c in rep.cubes]
    return is_pair_cancelling(leads)


def is_reducible(member: Sequence[Sequence[int]]) -> bool:
    """Contains a zero cube or a cancelling pair c, -c, so fewer cubes would do."""
    trimmed = [_trim(c) for c in member]
    if any(not c for c in trimmed):
        return True
    seen = Counter(trimmed)
    return any(tuple(-x for x in c) in seen for c in seen)


def _member_rank(member: Member) -> tuple:
    return (sum(abs(x) for c in member for x in c), member)


def _coeffs_of(p: Polynomial, length: int) -> Coeffs:
    c = [0] * length
    for mono, v in p.with_variables(("t",)).terms.items():
        c[mono[0]] = v
    return tuple(c)


# --- enumeration ---

def leading_tuples(space: SearchSpace) -> list[tuple[int, ...]]:
    """Admissible ``t**max_degree`` coefficient tuples, in enumeration order."""
    rng = range(-space.coeff_bound, space.coeff_bound + 1)
    need = space.target if space.max_degree == 0 else 0
    out = []
    for lt in product(rng, repeat=space.num_cubes):
        if sum(a**3 for a in lt) != need:
            continue
        if space.symmetry_mode == "pair_cancellation" and not is_pair_cancelling(lt):
            continue
        out.append(lt)
    return out


def shard_leading_tuples(space: SearchSpace, shard: tuple[int, int] = (0, 1)) -> list[tuple[int, ...]]:
    index, total = shard
    if total < 1 or not 0 <= index < total:
        raise ValueError(f"invalid shard {index}/{total}")
    return [lt for i, lt in enumerate(leading_tuples(space)) if i % total == index]


def states_per_leading_tuple(space: SearchSpace) -> int:
    return (2 * space.coeff_bound + 1) ** (space.num_cubes * space.max_degree)


def count_states(space: SearchSpace, shard: tuple[int, int] = (0, 1)) -> int:
    return len(shard_leading_tuples(space, shard)) * states_per_leading_tuple(space)


class _Matcher:
    """Meet-in-the-middle over lower coefficients for a fixed leading tuple."""

    def __init__(self, space: SearchSpace):
        self.space = space
        self.lower = list(product(range(-space.coeff_bound, space.coeff_bound + 1), repeat=space.max_degree))
        self.width = 3 * space.max_degree + 1
        self.goal = (space.target,) + (0,) * (self.width - 1)
        self.half = space.num_cubes // 2
        self._cubes: dict[Coeffs, Coeffs] = {}
        self._left_cache: dict[tuple[int, ...], dict[Coeffs, list[Member]]] = {}

    def _cube(self, c: Coeffs) -> Coeffs:
        v = self._cubes.get(c)
        if v is None:
            v = self._cubes[c] = cube_coefficients(c)
        return v

    def _partial_sums(self, leads: Sequence[int]):
        # extend partial sums one cube at a time so prefixes are shared
        level = [((), (0,) * self.width)]
        for a in leads:
            cands = [(low + (a,), self._cube(low + (a,))) for low in self.lower]
            level = [
                (combo + (c,), tuple(x + y for x, y in zip(vec, cv)))
                for combo, vec in level
                for c, cv in cands
            ]
        return level

    def _left(self, leads: tuple[int, ...]) -> dict[Coeffs, list[Member]]:
        table = self._left_cache.get(leads)
        if table is None:
            table = {}
            for combo, vec in self._partial_sums(leads):
                table.setdefault(vec, []).append(combo)
            self._left_cache[leads] = table
        return table

    def hits(self, leading: tuple[int, ...]) -> set[Member]:
        left = self._left(leading[: self.half])
        goal = self.goal
        found: set[Member] = set()
        for combo, vec in self._partial_sums(leading[self.half:]):
            need = tuple(g - v for g, v in zip(goal, vec))
            for lcombo in left.get(need, ()):
                found.add(tuple(sorted(lcombo + combo)))
        return found


def _write_checkpoint(path: Path, space, shard, position, last, states, best) -> None:
    data = {
        "space": space.to_json(),
        "shard": list(shard),
        "position": position,
        "last_leading": list(last) if last is not None else None,
        "states_examined": states,
        "found": [[list(c) for c in member] for member in sorted(best.values())],
    }
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(data))
    os.replace(tmp, path)


def _read_checkpoint(path: Path, space: SearchSpace, shard: tuple[int, int]):
    data = json.loads(path.read_text())
    if SearchSpace.from_json(data["space"]) != space or tuple(data["shard"]) != tuple(shard):
        raise CheckpointMismatch(f"{path} was written for {data['space']} shard {data['shard']}")
    members = [tuple(tuple(c) for c in m) for m in data["found"]]
    return data["position"], data["states_examined"], members


def _finalize(space: SearchSpace, shard, members: Iterable[Member], states: int, elapsed: float) -> SearchResult:
    best: dict[Member, Member] = {}
    for m in members:
        key = orbit_key(m)
        if key not in best or _member_rank(m) < _member_rank(best[key]):
            best[key] = m
    reps = []
    for m in sorted(best.values(), key=lambda m: (is_reducible(m), _member_rank(m))):
        rep = Representation(
            Polynomial.const(space.target),
            tuple(Polynomial.from_coefficients(c) for c in m),
            id="search",
            params={"target": space.target},
            variables=("t",),
        )
        report = verifier_check(rep)
        if not report.ok:
            raise RuntimeError(f"search emitted a non-identity: {rep} (residual {report.residual})")
        reps.append(rep)
    width = space.max_degree + 1
    return SearchResult(
        space, tuple(shard), tuple(reps), states, elapsed,
        tuple(r.has_zero_cube() for r in reps),
        tuple(is_reducible([_coeffs_of(c, width) for c in r.cubes]) for r in reps),
    )


def search_shard(
    space: SearchSpace,
    shard: tuple[int, int] = (0, 1),
    budget: int | None = None,
    checkpoint: str | os.PathLike | None = None,
    checkpoint_interval: float = 5.0,
) -> SearchResult:
    """Exhaustive search over the leading tuples assigned to ``shard = (index, total)``.

    Leading tuples are dealt round-robin, so shards are disjoint and their
    union is the whole pruned space.  With ``checkpoint`` set, progress is
    saved periodically and an existing file for the same space and shard is
    resumed.
    """
    start = time.perf_counter()
    budget = default_budget() if budget is None else budget
    tuples = shard_leading_tuples(space, shard)
    per = states_per_leading_tuple(space)
    total_states = len(tuples) * per
    if total_states > budget:
        raise BudgetExceeded(total_states, budget)

    position, states = 0, 0
    best: dict[Member, Member] = {}
    ckpt = Path(checkpoint) if checkpoint is not None else None
    if ckpt is not None and ckpt.exists():
        position, states, members = _read_checkpoint(ckpt, space, shard)
        for m in members:
            best[orbit_key(m)] = m

    matcher = _Matcher(space)
    last_save = time.perf_counter()
    for i in range(position, len(tuples)):
        for m in matcher.hits(tuples[i]):
            key = orbit_key(m)
            if key not in best or _member_rank(m) < _member_rank(best[key]):
                best[key] = m
        states += per
        if ckpt is not None and time.perf_counter() - last_save >= checkpoint_interval:
            _write_checkpoint(ckpt, space, shard, i + 1, tuples[i], states, best)
            last_save = time.perf_counter()
    if ckpt is not None:
        _write_checkpoint(ckpt, space, shard, len(tuples), tuples[-1] if tuples else None, states, best)
    return _finalize(space, shard, best.values(), states, time.perf_counter() - start)


def search(space: SearchSpace, budget: int | None = None) -> SearchResult:
    return search_shard(space, (0, 1), budget)


def merge_results(results: Sequence[SearchResult]) -> SearchResult:
    """Deterministic union of shard results for the same space."""
    if not results:
        raise ValueError("nothing to merge")
    space = results[0].space
    if any(r.space != space for r in results):
        raise ValueError("cannot merge results from different search spaces")
    width = space.max_degree + 1
    members = [tuple(sorted(_coeffs_of(c, width) for c in rep.cubes)) for r in results for rep in r.found]
    return _finalize(
        space,
        (0, 1),
        members,
        sum(r.states_examined for r in results),
        sum(r.elapsed for r in results),
    )


def _run_shard(args):
    space, shard, budget = args
    return search_shard(space, shard, budget)


def search_parallel(space: SearchSpace, shards: int, jobs: int | None = None,
                    budget: int | None = None) -> SearchResult:
    """Run ``shards`` shards on a process pool and merge them."""
    budget = default_budget() if budget is None else budget
    work = [(space, (i, shards), budget) for i in range(shards)]
    if jobs == 1:
        results = [_run_shard(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_shard, work))
    return merge_results(results)
