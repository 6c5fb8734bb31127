"""Closure operations on interval sets: rule generation and saturation.

A selection of the five operations Q (quotients), S (subobjects),
C (cokernels), K (kernels), E (extensions) induces a finite set of Horn
rules on intervals: whenever all premises of a rule belong to a set, its
conclusions must too.  Checking one or two indecomposables per rule is
enough: extensions and (co)kernels of maps between direct sums reduce to
the single- and two-summand cases, and quotients/subobjects of sums reduce
to single summands.  The closure of a set is the least fixed point of the
rule system, computed by worklist saturation over bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from .intervals import (
    Interval,
    IntervalSet,
    all_intervals,
    cokernel_pair,
    cokernel_single,
    ext_middle,
    hom_dim,
    kernel_pair,
    kernel_single,
    quotients,
    subobjects,
    universe_size,
)

FLAG_ORDER = "QSCKE"
_DUAL_FLAG = {"Q": "S", "S": "Q", "C": "K", "K": "C", "E": "E"}


@dataclass(frozen=True)
class ClosureSpec:
    """A subset of the operation flags {Q, S, C, K, E}."""

    flags: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        bad = set(self.flags) - set(FLAG_ORDER)
        if bad:
            raise ValueError(f"unknown operation flags {sorted(bad)}; allowed: {FLAG_ORDER}")

    @classmethod
    def parse(cls, text: str) -> "ClosureSpec":
        """Case-insensitive, order-insensitive; '' or 'none' is the empty spec."""
        text = text.strip()
        if text.lower() in ("", "none"):
            return cls(frozenset())
        flags = set()
        for ch in text:
            up = ch.upper()
            if up not in FLAG_ORDER:
                raise ValueError(f"invalid operation {ch!r}: allowed alphabet is {FLAG_ORDER}")
            flags.add(up)
        return cls(frozenset(flags))

    @classmethod
    def all_specs(cls) -> tuple["ClosureSpec", ...]:
        """All 32 flag subsets, shortest first."""
        out = []
        for mask in range(1 << len(FLAG_ORDER)):
            flags = frozenset(f for i, f in enumerate(FLAG_ORDER) if (mask >> i) & 1)
            out.append(cls(flags))
        return tuple(sorted(out, key=lambda s: (len(s.flags), str(s))))

    def dual(self) -> "ClosureSpec":
        """Swap Q with S and C with K; E is self-dual."""
        return ClosureSpec(frozenset(_DUAL_FLAG[f] for f in self.flags))

    def __contains__(self, flag: str) -> bool:
        return flag in self.flags

    def __str__(self) -> str:
        return "".join(f for f in FLAG_ORDER if f in self.flags)

    def __repr__(self) -> str:
        return f"ClosureSpec({str(self)!r})"


@dataclass(frozen=True)
class RuleInstance:
    """One Horn rule: if all premises are present, all conclusions must be."""

    premises: frozenset
    conclusions: frozenset
    tag: str

    def sort_key(self) -> tuple:
        return (
            len(self.premises),
            tuple(sorted(iv.index for iv in self.premises)),
            self.tag,
            tuple(sorted(iv.index for iv in self.conclusions)),
        )


def rule_instances(n: int, spec: ClosureSpec) -> tuple[RuleInstance, ...]:
    """The complete finite rule set for (n, spec).

    Conclusions that already appear among the premises are dropped, as are
    zero objects; instances left with no conclusions are omitted.
    """
    ivs = all_intervals(n)
    merged: dict[tuple[str, frozenset], set] = {}

    def add(tag: str, premises: Iterable[Interval], conclusions: Iterable[Interval]) -> None:
        prem = frozenset(premises)
        conc = set(conclusions) - prem
        if not conc:
            return
        merged.setdefault((tag, prem), set()).update(conc)

    if "Q" in spec:
        for x in ivs:
            add("Q", [x], quotients(x))
    if "S" in spec:
        for x in ivs:
            add("S", [x], subobjects(x))
    if "E" in spec:
        for lower in ivs:
            for upper in ivs:
                middle = ext_middle(upper, lower)
                if middle is None:
                    continue
                y, yp = middle
                add("E", [lower, upper], [y] if yp is None else [y, yp])
    if "C" in spec:
        for x in ivs:
            targets = [y for y in ivs if hom_dim(x, y)]
            for y in targets:
                add("C", [x, y], cokernel_single(x, y))
            for i, y1 in enumerate(targets):
                for y2 in targets[i:]:
                    add("C", [x, y1, y2], cokernel_pair(x, y1, y2))
    if "K" in spec:
        for x in ivs:
            sources = [y for y in ivs if hom_dim(y, x)]
            for y in sources:
                add("K", [y, x], kernel_single(y, x))
            for i, y1 in enumerate(sources):
                for y2 in sources[i:]:
                    add("K", [y1, y2, x], kernel_pair(y1, y2, x))
    out = [RuleInstance(prem, frozenset(conc), tag) for (tag, prem), conc in merged.items()]
    out.sort(key=RuleInstance.sort_key)
    return tuple(out)


class RuleTable:
    """Rule instances compiled to bitmasks with a premise-indexed worklist.

    Building the table saturates each rule's premises against the rules kept
    so far and drops conclusions that are already forced; this prunes the
    table without changing the closure operator.
    """

    __slots__ = ("n", "spec", "size", "_prem", "_conc", "_by_elem", "_np_rules")

    def __init__(self, n: int, spec: ClosureSpec):
        self.n = n
        self.spec = spec
        self.size = universe_size(n)
        self._prem: list[int] = []
        self._conc: list[int] = []
        self._by_elem: list[list[int]] = [[] for _ in range(self.size)]
        self._np_rules = None
        for inst in rule_instances(n, spec):
            pmask = _mask_of(inst.premises)
            cmask = _mask_of(inst.conclusions)
            forced = self.closure(pmask)
            new = cmask & ~forced
            if not new:
                continue
            idx = len(self._prem)
            self._prem.append(pmask)
            self._conc.append(new)
            bits = pmask
            while bits:
                low = bits & -bits
                self._by_elem[low.bit_length() - 1].append(idx)
                bits ^= low

    @property
    def rule_count(self) -> int:
        return len(self._prem)

    def closure(self, mask: int, forbidden: int = 0) -> Optional[int]:
        """Least fixed point containing mask; None as soon as it meets forbidden.

        The early exit makes the lectic validity test in Next-Closure cheap:
        most candidate closures die on their first forbidden element.
        """
        if not self._prem:
            return mask
        by_elem = self._by_elem
        prem = self._prem
        conc = self._conc
        result = mask
        stack = []
        bits = mask
        while bits:
            low = bits & -bits
            stack.append(low.bit_length() - 1)
            bits ^= low
        while stack:
            i = stack.pop()
            for r in by_elem[i]:
                p = prem[r]
                if p & result == p:
                    new = conc[r] & ~result
                    if new:
                        if new & forbidden:
                            return None
                        result |= new
                        bits = new
                        while bits:
                            low = bits & -bits
                            stack.append(low.bit_length() - 1)
                            bits ^= low
        return result

    def is_closed(self, mask: int) -> bool:
        for p, c in zip(self._prem, self._conc):
            if p & mask == p and c & ~mask:
                return False
        return True

    def numpy_rules(self):
        """Rule masks as int64 arrays, for the vectorised subset sweep."""
        if self._np_rules is None:
            import numpy as np

            prem = np.array(self._prem, dtype=np.int64)
            conc = np.array(self._conc, dtype=np.int64)
            self._np_rules = (prem, conc)
        return self._np_rules


def _mask_of(ivs: Iterable[Interval]) -> int:
    mask = 0
    for iv in ivs:
        mask |= 1 << iv.index
    return mask


@lru_cache(maxsize=None)
def build_table(n: int, spec: ClosureSpec) -> RuleTable:
    return RuleTable(n, spec)


def closure(s: IntervalSet, spec: ClosureSpec) -> IntervalSet:
    """Least superset of s closed under every rule of the spec."""
    table = build_table(s.n, spec)
    return IntervalSet(s.n, table.closure(s.mask))


def is_closed(s: IntervalSet, spec: ClosureSpec) -> bool:
    """Whether every rule with premises inside s has its conclusions inside s."""
    table = build_table(s.n, spec)
    return table.is_closed(s.mask)
