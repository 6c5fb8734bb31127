"""Explicit GF(2) representations of the linear A_n quiver.

This module is the ground truth the interval formulas are checked against.
A representation assigns a GF(2) vector space to every vertex of
1 -> 2 -> ... -> n and a linear map M(i+1) -> M(i) to every arrow (the
contravariant orientation; all direction conventions live here).  Kernels,
cokernels, images, hom spaces, first extension groups and barcodes are
computed by plain Gaussian elimination, with no interval combinatorics
involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .gf2 import F2Matrix, block_diag, rank_of_rows
from .intervals import Interval, hom_dim


@dataclass(frozen=True)
class Representation:
    """Per-vertex dimensions plus one matrix per arrow.

    ``dims[v]`` is the dimension at vertex v+1; ``maps[k]`` is the matrix of
    the map M(k+2) -> M(k+1), of shape dims[k] x dims[k+1].
    """

    n: int
    dims: tuple[int, ...]
    maps: tuple[F2Matrix, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"ambient size must be >= 1, got {self.n}")
        if len(self.dims) != self.n or len(self.maps) != self.n - 1:
            raise ValueError("dims/maps lengths inconsistent with n")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")
        for k, m in enumerate(self.maps):
            if m.shape != (self.dims[k], self.dims[k + 1]):
                raise ValueError(
                    f"map {k} has shape {m.shape}, expected {(self.dims[k], self.dims[k + 1])}"
                )

    def dim_at(self, v: int) -> int:
        """Dimension at vertex v (1-based); vertices outside 1..n count as 0."""
        return self.dims[v - 1] if 1 <= v <= self.n else 0

    def total_dim(self) -> int:
        return sum(self.dims)

    def composite(self, a: int, b: int) -> F2Matrix:
        """Matrix of the composite M(b) -> M(a) along the arrows, 1 <= a <= b <= n."""
        if not 1 <= a <= b <= self.n:
            raise ValueError(f"need 1 <= a <= b <= {self.n}, got ({a},{b})")
        cur = F2Matrix.identity(self.dims[b - 1])
        for v in range(b - 1, a - 1, -1):
            cur = self.maps[v - 1] @ cur
        return cur

    def debug_text(self) -> str:
        dims = ",".join(str(d) for d in self.dims)
        maps = ";".join(repr(m) for m in self.maps)
        return f"dims({dims}) maps({maps})"


def zero_rep(n: int) -> Representation:
    return Representation(n, (0,) * n, tuple(F2Matrix.zeros(0, 0) for _ in range(n - 1)))


def module_of(x: Interval, n: int) -> Representation:
    """The interval module: GF(2) on the support of x, identities inside."""
    if x.b > n:
        raise ValueError(f"interval {x} does not fit inside {{1..{n}}}")
    dims = tuple(1 if x.a <= v <= x.b else 0 for v in range(1, n + 1))
    maps = []
    for k in range(n - 1):
        if dims[k] and dims[k + 1]:
            maps.append(F2Matrix.identity(1))
        else:
            maps.append(F2Matrix.zeros(dims[k], dims[k + 1]))
    return Representation(n, dims, tuple(maps))


def direct_sum(reps: Sequence[Representation], n: Optional[int] = None) -> Representation:
    """Blockwise direct sum; an explicit n is required for the empty sum."""
    if not reps:
        if n is None:
            raise ValueError("empty direct sum needs an explicit ambient size")
        return zero_rep(n)
    n0 = reps[0].n
    if n is not None and n != n0:
        raise ValueError(f"ambient mismatch: {n} vs {n0}")
    if any(r.n != n0 for r in reps):
        raise ValueError("summands live in different ambients")
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(n0))
    maps = tuple(block_diag([r.maps[k] for r in reps]) for k in range(n0 - 1))
    return Representation(n0, dims, maps)


def sum_of(intervals: Iterable[Interval], n: int) -> Representation:
    return direct_sum([module_of(x, n) for x in intervals], n)


@dataclass(frozen=True)
class RepMorphism:
    """A morphism of representations: one block per vertex, commuting with the arrows."""

    source: Representation
    target: Representation
    blocks: tuple[F2Matrix, ...]

    def __post_init__(self) -> None:
        s, t = self.source, self.target
        if s.n != t.n:
            raise ValueError("source and target live in different ambients")
        if len(self.blocks) != s.n:
            raise ValueError(f"expected {s.n} blocks, got {len(self.blocks)}")
        for v in range(s.n):
            if self.blocks[v].shape != (t.dims[v], s.dims[v]):
                raise ValueError(
                    f"block {v} has shape {self.blocks[v].shape}, "
                    f"expected {(t.dims[v], s.dims[v])}"
                )
        for k in range(s.n - 1):
            left = self.blocks[k] @ s.maps[k]
            right = t.maps[k] @ self.blocks[k + 1]
            if left != right:
                raise ValueError(f"blocks do not commute with the arrow {k + 1} -> {k + 2}")

    @property
    def n(self) -> int:
        return self.source.n


def compose(outer: RepMorphism, inner: RepMorphism) -> RepMorphism:
    """Composite outer o inner."""
    if inner.target is not outer.source and inner.target != outer.source:
        raise ValueError("morphisms are not composable")
    blocks = tuple(outer.blocks[v] @ inner.blocks[v] for v in range(inner.n))
    return RepMorphism(inner.source, outer.target, blocks)


def morphism_between_sums(
    n: int,
    sources: Sequence[Interval],
    targets: Sequence[Interval],
    coeffs: dict[tuple[int, int], int],
) -> RepMorphism:
    """Morphism sum_of(sources) -> sum_of(targets) from scalar coefficients.

    ``coeffs[(i, j)]`` is the GF(2) coefficient of the canonical nonzero map
    sources[i] -> targets[j]; setting a coefficient on a zero hom space is an
    error.  Because each summand map is a genuine morphism, the assembled
    blocks commute by construction.
    """
    src = sum_of(sources, n)
    tgt = sum_of(targets, n)
    for (i, j), c in coeffs.items():
        if c & 1 and not hom_dim(sources[i], targets[j]):
            raise ValueError(f"hom space {sources[i]} -> {targets[j]} is zero")
    blocks = []
    for v in range(1, n + 1):
        src_pos = {i: p for p, i in enumerate(i for i, x in enumerate(sources) if x.a <= v <= x.b)}
        tgt_pos = {j: p for p, j in enumerate(j for j, y in enumerate(targets) if y.a <= v <= y.b)}
        entries = [[0] * len(src_pos) for _ in range(len(tgt_pos))]
        for (i, j), c in coeffs.items():
            if c & 1 and i in src_pos and j in tgt_pos:
                entries[tgt_pos[j]][src_pos[i]] = 1
        blocks.append(F2Matrix.from_dense(entries, len(src_pos)))
    return RepMorphism(src, tgt, tuple(blocks))


def canonical_morphism(source: Interval, target: Interval, n: int) -> RepMorphism:
    """The nonzero map between two interval modules."""
    if not hom_dim(source, target):
        raise ValueError(f"no nonzero map {source} -> {target}")
    return morphism_between_sums(n, [source], [target], {(0, 0): 1})


def kernel_rep(f: RepMorphism) -> Representation:
    """Vertexwise kernel with the induced arrow maps."""
    incls = [f.blocks[v].kernel_basis() for v in range(f.n)]
    dims = tuple(m.ncols for m in incls)
    maps = []
    for k in range(f.n - 1):
        rhs = f.source.maps[k] @ incls[k + 1]
        maps.append(incls[k].solve(rhs))
    return Representation(f.n, dims, tuple(maps))


def kernel_inclusion(f: RepMorphism) -> RepMorphism:
    """The inclusion of the vertexwise kernel into the source."""
    incls = tuple(f.blocks[v].kernel_basis() for v in range(f.n))
    return RepMorphism(kernel_rep(f), f.source, incls)


def cokernel_rep(f: RepMorphism) -> Representation:
    """Vertexwise cokernel with the induced arrow maps."""
    projs = [f.blocks[v].left_kernel_basis() for v in range(f.n)]
    dims = tuple(p.nrows for p in projs)
    maps = []
    for k in range(f.n - 1):
        rhs = projs[k] @ f.target.maps[k]
        maps.append(projs[k + 1].solve_left(rhs))
    return Representation(f.n, dims, tuple(maps))


def image_rep(f: RepMorphism) -> Representation:
    """Vertexwise image with the induced arrow maps."""
    incls = [f.blocks[v].column_space() for v in range(f.n)]
    dims = tuple(m.ncols for m in incls)
    maps = []
    for k in range(f.n - 1):
        rhs = f.target.maps[k] @ incls[k + 1]
        maps.append(incls[k].solve(rhs))
    return Representation(f.n, dims, tuple(maps))


def barcode(rep: Representation) -> tuple[Interval, ...]:
    """Multiset of intervals in the indecomposable decomposition.

    The multiplicity of [a, b] is recovered from ranks of composite maps by
    inclusion-exclusion: bars containing [a, b] minus those sticking out on
    either side.
    """
    n = rep.n
    rank = [[0] * (n + 2) for _ in range(n + 2)]
    for b in range(1, n + 1):
        cur = F2Matrix.identity(rep.dims[b - 1])
        rank[b][b] = rep.dims[b - 1]
        for a in range(b - 1, 0, -1):
            cur = rep.maps[a - 1] @ cur
            rank[a][b] = cur.rank()
    out = []
    check = [0] * n
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            mult = rank[a][b] - rank[a - 1][b] - (rank[a][b + 1] if b < n else 0) + (
                rank[a - 1][b + 1] if b < n else 0
            )
            if mult < 0:
                raise AssertionError(f"negative multiplicity at [{a},{b}] in {rep.debug_text()}")
            if mult:
                out.extend([Interval(a, b)] * mult)
                for v in range(a, b + 1):
                    check[v - 1] += mult
    if tuple(check) != rep.dims:
        raise AssertionError(f"barcode does not add up to dims in {rep.debug_text()}")
    return tuple(sorted(out))


def hom_space_dim(x_rep: Representation, y_rep: Representation) -> int:
    """Dimension of the space of morphisms x_rep -> y_rep.

    A morphism is a family of per-vertex matrices subject to one commuting
    square per arrow; the dimension is the corank of that linear system.
    """
    if x_rep.n != y_rep.n:
        raise ValueError("ambient mismatch")
    n = x_rep.n
    offsets = []
    nvars = 0
    for v in range(n):
        offsets.append(nvars)
        nvars += y_rep.dims[v] * x_rep.dims[v]

    def var(v: int, row: int, col: int) -> int:
        return offsets[v] + row * x_rep.dims[v] + col

    equations = []
    for k in range(n - 1):
        xm = x_rep.maps[k]
        ym = y_rep.maps[k]
        for r in range(y_rep.dims[k]):
            for c in range(x_rep.dims[k + 1]):
                eq = 0
                for j in range(x_rep.dims[k]):
                    if xm.entry(j, c):
                        eq ^= 1 << var(k, r, j)
                for j in range(y_rep.dims[k + 1]):
                    if ym.entry(r, j):
                        eq ^= 1 << var(k + 1, j, c)
                if eq:
                    equations.append(eq)
    return nvars - rank_of_rows(equations, nvars)


def ext_dim(upper_rep: Representation, lower_rep: Representation) -> int:
    """Dimension of the extension group of upper_rep by lower_rep.

    Each bar [a, b] of the upper barcode has the two-term projective
    resolution by the modules supported on [1, a-1] and [1, b]; applying
    Hom(-, lower_rep) turns it, via Yoneda, into the composite map
    lower(b) -> lower(a-1), whose corank is the contribution of that bar.
    """
    if upper_rep.n != lower_rep.n:
        raise ValueError("ambient mismatch")
    total = 0
    for bar in barcode(upper_rep):
        a, b = bar.a, bar.b
        if a == 1:
            continue
        target_dim = lower_rep.dim_at(a - 1)
        if target_dim == 0:
            continue
        total += target_dim - lower_rep.composite(a - 1, b).rank()
    return total


def generated_submodule(rep: Representation, generators: Iterable[tuple[int, int]]) -> RepMorphism:
    """Inclusion of the submodule generated by (vertex, vector-bitmask) pairs.

    Generators are propagated down the arrows, then a basis is extracted at
    each vertex; the result is the inclusion morphism of the submodule.
    """
    n = rep.n
    buckets: list[list[int]] = [[] for _ in range(n)]
    for v, vec in generators:
        if not 1 <= v <= n:
            raise ValueError(f"vertex {v} out of range")
        if vec >> rep.dims[v - 1]:
            raise ValueError(f"vector {vec:#x} out of range at vertex {v}")
        buckets[v - 1].append(vec)
    for v in range(n - 1, 0, -1):
        m = rep.maps[v - 1]
        for vec in buckets[v]:
            buckets[v - 1].append(m.mat_vec(vec))
    incls = []
    for v in range(n):
        span = F2Matrix(len(buckets[v]), rep.dims[v], buckets[v]).transpose().column_space()
        incls.append(span)
    dims = tuple(m.ncols for m in incls)
    maps = []
    for k in range(n - 1):
        maps.append(incls[k].solve(rep.maps[k] @ incls[k + 1]))
    sub = Representation(n, dims, tuple(maps))
    return RepMorphism(sub, rep, tuple(incls))


def _support_candidate(x: Interval, n: int, chosen: int) -> tuple[Representation, tuple[F2Matrix, ...]]:
    """Rank-one subfamily of module_of(x) from a support choice bitmask."""
    whole = module_of(x, n)
    dims = tuple(1 if (x.a <= v <= x.b and (chosen >> (v - x.a)) & 1) else 0 for v in range(1, n + 1))
    maps = []
    for k in range(n - 1):
        if dims[k] and dims[k + 1]:
            maps.append(F2Matrix.identity(1))
        else:
            maps.append(F2Matrix.zeros(dims[k], dims[k + 1]))
    cand = Representation(n, dims, tuple(maps))
    blocks = tuple(
        F2Matrix.identity(1) if dims[v] else F2Matrix.zeros(whole.dims[v], 0)
        for v in range(n)
    )
    return cand, blocks


def interval_submodule_barcodes(x: Interval, n: int) -> list[tuple[Interval, ...]]:
    """Barcodes of all nonzero submodules of an interval module.

    Enumerates every support choice, keeps the ones whose inclusion into the
    module is a genuine morphism, and reads off the barcode.
    """
    whole = module_of(x, n)
    width = x.b - x.a + 1
    found = []
    for chosen in range(1, 1 << width):
        cand, blocks = _support_candidate(x, n, chosen)
        try:
            incl = RepMorphism(cand, whole, blocks)
        except ValueError:
            continue
        found.append(barcode(incl.source))
    return sorted(found)


def interval_quotient_barcodes(x: Interval, n: int) -> list[tuple[Interval, ...]]:
    """Barcodes of all nonzero quotients of an interval module.

    Quotients are computed as cokernels of the submodule inclusions found by
    exhaustive support enumeration (plus the zero submodule).
    """
    whole = module_of(x, n)
    width = x.b - x.a + 1
    found = []
    for chosen in range(0, 1 << width):
        cand, blocks = _support_candidate(x, n, chosen)
        try:
            incl = RepMorphism(cand, whole, blocks)
        except ValueError:
            continue
        bars = barcode(cokernel_rep(incl))
        if bars:
            found.append(bars)
    return sorted(found)
