"""Counting and enumerating closed interval sets.

Two independent counting paths are kept side by side: a vectorised sweep
over all subsets (the oracle, usable while the universe fits a configured
bit cap) and Next-Closure enumeration, which walks only the closed sets in
lectic order and scales to the interesting ambient sizes.  A prefix-block
variant partitions the lectic stream for sharded counting.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterator, Optional

import numpy as np

from .closure import ClosureSpec, RuleTable, build_table
from .errors import CapExceeded
from .intervals import IntervalSet, universe_size

BRUTE_CAP_BITS = 24
LATTICE_CAP = 4096
_CHUNK = 1 << 16


def _lectic_masks(table: RuleTable, fixed_bits: int = 0, prefix: int = 0) -> Iterator[int]:
    """Closed sets in lectic order, restricted to a fixed membership prefix.

    The lectic order is induced by the canonical interval index: candidates
    are produced by the step closure((A & below_i) | bit_i) and accepted when
    no new element below i appears.  With ``fixed_bits`` > 0 only closed sets
    whose membership pattern on indices < fixed_bits equals ``prefix`` are
    produced; index i < fixed_bits is never used as a candidate, so each
    prefix block yields a contiguous slice of the unrestricted stream.
    """
    closure = table.closure
    size = table.size
    window = (1 << fixed_bits) - 1
    current = closure(prefix)
    if current & window != prefix:
        return
    yield current
    while True:
        nxt = None
        for i in range(size - 1, fixed_bits - 1, -1):
            bit = 1 << i
            if current & bit:
                continue
            below = bit - 1
            cand = closure((current & below) | bit, below & ~current)
            if cand is not None:
                nxt = cand
                break
        if nxt is None:
            return
        current = nxt
        yield current


def _shard_layout(size: int, shards: int) -> tuple[int, list[int]]:
    """Prefix width and the prefix values in lectic order."""
    if shards < 1:
        raise ValueError(f"shards must be >= 1, got {shards}")
    t = 0 if shards == 1 else min(size, (shards - 1).bit_length())
    prefixes = sorted(range(1 << t), key=lambda p: sum(((p >> i) & 1) << (t - 1 - i) for i in range(t)))
    return t, prefixes


def iter_closed_sets(n: int, spec: ClosureSpec, shards: int = 1) -> Iterator[IntervalSet]:
    """All closed sets for (n, spec) in lectic order.

    With shards > 1 the stream is produced block by block in prefix order,
    which concatenates to exactly the single-shard stream.
    """
    table = build_table(n, spec)
    t, prefixes = _shard_layout(table.size, shards)
    for p in prefixes:
        for mask in _lectic_masks(table, t, p):
            yield IntervalSet(n, mask)


def count_next_closure(n: int, spec: ClosureSpec) -> int:
    """Number of closed sets, by Next-Closure enumeration."""
    table = build_table(n, spec)
    return sum(1 for _ in _lectic_masks(table))


def count_brute(n: int, spec: ClosureSpec, max_bits: int = BRUTE_CAP_BITS) -> int:
    """Number of closed sets, by checking every subset of the universe."""
    size = universe_size(n)
    if size > max_bits:
        raise CapExceeded(f"subset sweep needs {size} bits, cap is {max_bits}")
    table = build_table(n, spec)
    prem, conc = table.numpy_rules()
    total = 0
    upper = 1 << size
    for start in range(0, upper, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, upper), dtype=np.int64)
        ok = np.ones(masks.shape, dtype=bool)
        for p, c in zip(prem, conc):
            ok &= ((masks & p) != p) | ((masks & c) == c)
        total += int(np.count_nonzero(ok))
    return total


def shard_count(n: int, spec: ClosureSpec, shards: int) -> int:
    """Next-Closure count computed as a merge of per-prefix block counts."""
    table = build_table(n, spec)
    t, prefixes = _shard_layout(table.size, shards)
    per_shard = [0] * shards
    for pos, p in enumerate(prefixes):
        per_shard[pos % shards] += sum(1 for _ in _lectic_masks(table, t, p))
    return sum(per_shard)


def reference_sequence(spec: ClosureSpec, n: int) -> Optional[int]:
    """Closed-form count when one is known, else None.

    Cokernel closure is implied by quotient closure and kernel closure by
    subobject closure, so those flags are normalised away first; the
    order-reversing involution then lets the subobject-side combinations
    reuse the quotient-side formulas.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    flags = set(spec.flags)
    if "Q" in flags:
        flags.discard("C")
    if "S" in flags:
        flags.discard("K")
    key = "".join(sorted(flags))
    catalan = comb(2 * n + 2, n + 1) // (n + 2)
    table = {
        "EQS": 2**n,
        "QS": catalan,
        "EQ": catalan,
        "ES": catalan,
        "CEK": catalan,
        "Q": factorial(n + 1),
        "S": factorial(n + 1),
        "": 2 ** (n * (n + 1) // 2),
    }
    return table.get(key)


@dataclass(frozen=True)
class SequenceReport:
    """Counts of closed sets for n = 1..n_max under one spec."""

    spec: ClosureSpec
    algorithm: str
    terms: tuple[tuple[int, int], ...]
    elapsed: tuple[float, ...]

    def counts(self) -> list[int]:
        return [c for _, c in self.terms]

    def to_json_dict(self, include_timings: bool = False) -> dict:
        terms = []
        for (n, count), secs in zip(self.terms, self.elapsed):
            term = {"n": n, "count": count}
            if include_timings:
                term["seconds"] = secs
            terms.append(term)
        return {"ops": str(self.spec), "algorithm": self.algorithm, "terms": terms}

    def to_csv(self, reference: bool = False) -> str:
        lines = ["n,count,reference,match" if reference else "n,count"]
        for n, count in self.terms:
            if reference:
                ref = reference_sequence(self.spec, n)
                lines.append(
                    f"{n},{count},{'' if ref is None else ref},"
                    f"{'' if ref is None else str(ref == count).lower()}"
                )
            else:
                lines.append(f"{n},{count}")
        return "\n".join(lines) + "\n"

    def to_bfile(self) -> str:
        """OEIS b-file style lines "n count"."""
        return "".join(f"{n} {count}\n" for n, count in self.terms)


def sequence(spec: ClosureSpec, n_max: int, algorithm: str = "next_closure") -> SequenceReport:
    """Counts for n = 1..n_max using the chosen algorithm."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if algorithm not in ("next_closure", "brute"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    terms = []
    elapsed = []
    for n in range(1, n_max + 1):
        t0 = time.perf_counter()
        count = count_brute(n, spec) if algorithm == "brute" else count_next_closure(n, spec)
        elapsed.append(time.perf_counter() - t0)
        if count < 2:
            raise AssertionError(f"count {count} below 2 at n={n}: empty and full set are closed")
        terms.append((n, count))
    return SequenceReport(spec, algorithm, tuple(terms), tuple(elapsed))


@dataclass(frozen=True)
class ClosedFamily:
    """All closed sets for one (n, spec), with the cover relation of inclusion."""

    n: int
    spec: ClosureSpec
    members: tuple[IntervalSet, ...]
    covers: tuple[tuple[int, int], ...]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "ops": str(self.spec),
            "members": [m.indices() for m in self.members],
            "covers": [list(c) for c in self.covers],
        }

    def to_dot(self) -> str:
        lines = ["digraph closed_sets {", "  rankdir=BT;"]
        for i, m in enumerate(self.members):
            label = "{" + ",".join(str(iv) for iv in m.members) + "}"
            lines.append(f'  n{i} [label="{label}"];')
        for lo, hi in self.covers:
            lines.append(f"  n{lo} -> n{hi};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def lattice(n: int, spec: ClosureSpec, max_members: int = LATTICE_CAP) -> ClosedFamily:
    """Materialise the closed sets in lectic order plus their Hasse covers."""
    members = []
    for s in iter_closed_sets(n, spec):
        members.append(s)
        if len(members) > max_members:
            raise CapExceeded(f"more than {max_members} closed sets; raise the cap to materialise")
    masks = [m.mask for m in members]
    covers = []
    for j, mj in enumerate(masks):
        subs = [i for i, mi in enumerate(masks) if mi != mj and mi & ~mj == 0]
        subs.sort(key=lambda i: -masks[i].bit_count())
        maximal: list[int] = []
        for i in subs:
            if not any(masks[i] & ~masks[k] == 0 for k in maximal):
                maximal.append(i)
        covers.extend((i, j) for i in maximal)
    covers.sort()
    return ClosedFamily(n, spec, tuple(members), tuple(covers))
