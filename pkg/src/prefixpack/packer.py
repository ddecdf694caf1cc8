"""The two packing algorithms behind the prefix-code decision.

``solve_naive`` runs the greedy packer with explicit locations: per block it
re-cuts every container at hand to the componentwise maximum of the remaining
block sizes, then packs the largest block into the lower-left corner of a
smallest adequate container.  Its absence/presence answer is the existence
decision, and its locations feed codebook extraction.

``decide_fast`` answers the same question for the canonical single-container
instance without materializing a single location.  It keeps only a 2D count
array A[i][j] = number of free containers of size [q1**i, q2**j], processes
blocks grouped by size in descending order, splits counts one exponent step
at a time when the layer descends, and packs whole groups with integer
division.  Counts are plain Python ints on purpose: they reach
q1**l1max * q2**l2max, far beyond 64 bits for inputs this path must handle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import codes
from .geometry import corner_cut_regions, cut_sigma, overlap
from .model import (
    Arities,
    Block,
    ProblemSpec,
    Region,
    Size,
    covers,
    is_regular,
    is_sorted_desc,
    total_key,
)


class Placement(NamedTuple):
    index: int
    x: int
    y: int


@dataclass(frozen=True)
class Solution:
    """Per-block packed locations: aligned, non-overlapping, each in one container."""

    assignments: tuple[Placement, ...]

    def location_of(self, index: int) -> tuple[int, int]:
        for p in self.assignments:
            if p.index == index:
                return (p.x, p.y)
        raise KeyError(index)


def _validate_containers(containers: Sequence[Region]) -> None:
    for i in range(len(containers)):
        for j in range(i + 1, len(containers)):
            if overlap(containers[i], containers[j]):
                raise ValueError(
                    f"containers must not overlap: {containers[i]} vs {containers[j]}"
                )


def solve_naive(
    blocks: Sequence[Block], containers: Sequence[Region], q: Arities
) -> Solution | None:
    """Greedy packer with explicit locations; None means no packing exists.

    Expects blocks pre-sorted descending under the total order (rejected
    otherwise, as are overlapping containers and non-regular block sizes).
    Ties among equally small candidate containers are broken by
    lexicographically smallest (x, y) so outputs are reproducible.
    """
    if not is_sorted_desc(blocks):
        raise ValueError("blocks must be sorted descending under the total order")
    for b in blocks:
        if not is_regular(b.size, q):
            raise ValueError(f"block size [{b.size.w}, {b.size.h}] is not regular")
    _validate_containers(containers)

    n = len(blocks)
    if n == 0:
        return Solution(())
    # Suffix componentwise maxima: s*[i] bounds every block from i on.
    smax: list[Size] = [Size(1, 1)] * n
    w, h = blocks[n - 1].size.w, blocks[n - 1].size.h
    smax[n - 1] = Size(w, h)
    for i in range(n - 2, -1, -1):
        w = max(w, blocks[i].size.w)
        h = max(h, blocks[i].size.h)
        smax[i] = Size(w, h)

    pool: list[Region] = list(containers)
    assignments: list[Placement] = []
    for i, blk in enumerate(blocks):
        cut_pool: list[Region] = []
        for r in pool:
            cut_pool.extend(cut_sigma(r, smax[i], q))
        pool = cut_pool
        adequate = [r for r in pool if covers(r.size, blk.size)]
        if not adequate:
            return None
        target = min(adequate, key=lambda r: (total_key(r.size), r.x, r.y))
        assignments.append(Placement(i, target.x, target.y))
        pool.remove(target)
        if target.size != blk.size:
            pool.extend(corner_cut_regions(target, blk.size, q))
    return Solution(tuple(assignments))


class ContainerBank:
    """Count array over free-container sizes, with the successive-assignment run.

    Cells above the current caps are always zero; caps only descend, one
    exponent step at a time, multiplying counts by q1 (resp. q2) as containers
    split.  With audit=True the bank re-checks its area invariant after every
    mutation: the counted free area must equal the tracked one.
    """

    def __init__(self, q: Arities, l1max: int, l2max: int, *, audit: bool = False):
        self.q = q
        self.l1max = l1max
        self.l2max = l2max
        self.pow1 = [q.q1**i for i in range(l1max + 1)]
        self.pow2 = [q.q2**j for j in range(l2max + 1)]
        self.counts = [[0] * (l2max + 1) for _ in range(l1max + 1)]
        self.counts[l1max][l2max] = 1
        self.cap_i = l1max
        self.cap_j = l2max
        self.audit = audit
        self._free = self.pow1[l1max] * self.pow2[l2max]

    def free_area(self) -> int:
        return self._free

    def counted_area(self) -> int:
        return sum(
            cnt * self.pow1[i] * self.pow2[j]
            for i, row in enumerate(self.counts)
            for j, cnt in enumerate(row)
        )

    def _check(self) -> None:
        if self.audit and self.counted_area() != self._free:
            raise AssertionError("bank area accounting out of balance")

    def descend_caps(self, ci: int, cj: int) -> None:
        """Split every free container so no dimension exceeds the new caps."""
        if ci > self.cap_i or cj > self.cap_j:
            raise ValueError("caps may only descend")
        while self.cap_i > ci:
            src = self.counts[self.cap_i]
            dst = self.counts[self.cap_i - 1]
            for j in range(self.cap_j + 1):
                if src[j]:
                    dst[j] += src[j] * self.q.q1
                    src[j] = 0
            self.cap_i -= 1
            self._check()
        while self.cap_j > cj:
            for i in range(self.cap_i + 1):
                row = self.counts[i]
                if row[self.cap_j]:
                    row[self.cap_j - 1] += row[self.cap_j] * self.q.q2
                    row[self.cap_j] = 0
            self.cap_j -= 1
            self._check()

    def _deposit_column(self, i: int, rem_h: int) -> None:
        # Base-q2 digits of the unused height become free slabs of width q1**i.
        t = 0
        while rem_h:
            rem_h, d = divmod(rem_h, self.q.q2)
            if d:
                self.counts[i][t] += d
                self._free += d * self.pow1[i] * self.pow2[t]
            t += 1
        self._check()

    def _deposit_row(self, j: int, rem_w: int) -> None:
        t = 0
        while rem_w:
            rem_w, d = divmod(rem_w, self.q.q1)
            if d:
                self.counts[t][j] += d
                self._free += d * self.pow1[t] * self.pow2[j]
            t += 1
        self._check()

    def consume_column(self, i: int, b: int, need: int) -> bool:
        """Pack `need` blocks of size [q1**i, q2**b] into width-fitted containers.

        Scans column i upward from the exact-fit row, emptying whole cells by
        integer division; at most one container is consumed partially, and its
        unused height returns to the bank as digit slabs at group end.
        """
        col = self.counts[i]
        area_w = self.pow1[i]
        j = b
        while need > 0:
            while j <= self.cap_j and col[j] == 0:
                j += 1
            if j > self.cap_j:
                return False
            per = self.pow2[j - b]  # blocks one container at this row holds
            if per == 1:
                take = col[j] if col[j] < need else need
                col[j] -= take
                self._free -= take * area_w * self.pow2[j]
                need -= take
            else:
                full = min(col[j], need // per)
                if full:
                    col[j] -= full
                    self._free -= full * area_w * self.pow2[j]
                    need -= full * per
                if need and need < per and col[j] > 0:
                    col[j] -= 1
                    self._free -= area_w * self.pow2[j]
                    self._deposit_column(i, self.pow2[j] - need * self.pow2[b])
                    need = 0
            self._check()
        return True

    def consume_row(self, j: int, a: int, need: int) -> bool:
        """Height-fitted mirror of consume_column."""
        area_h = self.pow2[j]
        i = a
        while need > 0:
            while i <= self.cap_i and self.counts[i][j] == 0:
                i += 1
            if i > self.cap_i:
                return False
            per = self.pow1[i - a]
            if per == 1:
                take = self.counts[i][j] if self.counts[i][j] < need else need
                self.counts[i][j] -= take
                self._free -= take * self.pow1[i] * area_h
                need -= take
            else:
                full = min(self.counts[i][j], need // per)
                if full:
                    self.counts[i][j] -= full
                    self._free -= full * self.pow1[i] * area_h
                    need -= full * per
                if need and need < per and self.counts[i][j] > 0:
                    self.counts[i][j] -= 1
                    self._free -= self.pow1[i] * area_h
                    self._deposit_row(j, self.pow1[i] - need * self.pow1[a])
                    need = 0
            self._check()
        return True


def _floor_exp(value: int, powers: list[int], cap: int) -> int:
    """Largest exponent e <= cap with powers[e] <= value."""
    e = cap
    while powers[e] > value:
        e -= 1
    return e


def decide_fast(spec: ProblemSpec, *, audit: bool = False) -> bool:
    """Existence decision on the canonical instance via the count array.

    Matches solve_naive's verdict on the single initial container
    [q1**l1max, q2**l2max] while never materializing locations; runtime is
    O(m + l1max * l2max * max(l1max, l2max)) after grouping.
    """
    if spec.m == 0:
        return True
    q = spec.arities
    l1max, l2max = spec.l1max, spec.l2max
    groups: dict[tuple[int, int], int] = {}
    for l1, l2 in spec.lengths:
        key = (l1max - l1, l2max - l2)
        groups[key] = groups.get(key, 0) + 1

    pow1 = [q.q1**i for i in range(l1max + 1)]
    pow2 = [q.q2**j for j in range(l2max + 1)]
    order = sorted(
        groups,
        key=lambda ab: (max(pow1[ab[0]], pow2[ab[1]]), pow1[ab[0]], pow2[ab[1]]),
        reverse=True,
    )

    bank = ContainerBank(q, l1max, l2max, audit=audit)
    for a, b in order:
        w, h = pow1[a], pow2[b]
        layer = max(w, h)
        ci = min(bank.cap_i, _floor_exp(layer, pow1, bank.cap_i))
        cj = min(bank.cap_j, _floor_exp(layer, pow2, bank.cap_j))
        bank.descend_caps(ci, cj)
        if w >= h:
            ok = bank.consume_column(a, b, groups[(a, b)])
        else:
            ok = bank.consume_row(b, a, groups[(a, b)])
        if not ok:
            return False
        if audit and bank.free_area() < 0:
            raise AssertionError("free area went negative")
    return True


def decide(spec: ProblemSpec) -> bool:
    """True iff a two-channel prefix code with exactly these lengths exists."""
    return decide_fast(spec)


def construct(spec: ProblemSpec) -> Solution | None:
    """Explicit packing of the canonical instance, or None when none exists.

    Assignment indices refer to positions in spec.lengths, so the result maps
    straight onto codewords.  Uses the location-tracking packer; meant for
    instances whose container dimensions are enumerable, unlike decide().
    """
    inst = codes.lengths_to_instance(spec)
    order = sorted(
        range(spec.m), key=lambda k: total_key(inst.blocks[k].size), reverse=True
    )
    sorted_blocks = [inst.blocks[k] for k in order]
    sol = solve_naive(sorted_blocks, [inst.container], spec.arities)
    if sol is None:
        return None
    remapped = sorted(Placement(order[p.index], p.x, p.y) for p in sol.assignments)
    return Solution(tuple(remapped))
