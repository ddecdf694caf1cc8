"""Region algebra: overlap, quotient containers, remainder frames, container cutting.

The cutting function maps a container and a regular size bound to the unique
smallest partition into regular aligned containers, each no larger than the
bound in either dimension.  Two forms exist side by side:

* ``cut_sigma`` materializes every piece as an explicit region.  The number of
  pieces can be exponential in the exponents involved, so this form is meant
  for the naive packer and for desk-scale verification only.
* ``corner_cut`` handles the one cut shape the packers actually produce at
  scale (a block removed from the lower-left corner of a regular aligned
  container) and returns piece *counts* keyed by exponent pairs, never
  enumerating the pieces.

All functions are pure and operate on immutable values.
"""

from __future__ import annotations

from .model import (
    Arities,
    Region,
    RegularExp,
    Size,
    covers,
    ilog_exact,
    is_aligned,
    is_regular,
    reg,
    total_key,
)

# Piece counts keyed by exponent pairs (a, b) meaning size [q1**a, q2**b].
CountTable = dict[RegularExp, int]


def overlap(r1: Region, r2: Region) -> bool:
    """True when the half-open rectangles share at least one point."""
    return (
        r1.x < r2.x + r2.w
        and r2.x < r1.x + r1.w
        and r1.y < r2.y + r2.h
        and r2.y < r1.y + r1.h
    )


def contains(outer: Region, inner: Region) -> bool:
    """True when inner lies entirely inside outer."""
    return (
        outer.x <= inner.x
        and outer.y <= inner.y
        and inner.x + inner.w <= outer.x + outer.w
        and inner.y + inner.h <= outer.y + outer.h
    )


def _ceil_to(value: int, step: int) -> int:
    return -(-value // step) * step


def quotient_bound(c: Region, s: Size) -> Region | None:
    """Bounding region of all aligned sub-containers of size s inside c.

    The aligned candidates of a fixed size form a grid, so their union is a
    rectangle: it starts at the least multiples of (w, h) at or past the
    container's corner and extends by as many whole steps as fit.  Returns
    None when no aligned candidate fits.  Only this bounding rectangle is ever
    materialized; the grid cells themselves may be astronomically many.
    """
    xq = _ceil_to(c.x, s.w)
    yq = _ceil_to(c.y, s.h)
    nx = (c.x + c.w - xq) // s.w
    ny = (c.y + c.h - yq) // s.h
    if nx <= 0 or ny <= 0:
        return None
    return reg(xq, yq, nx * s.w, ny * s.h)


def remainder_regions(c: Region, s: Size) -> tuple[Region, ...]:
    """The at-most-8 frame pieces of c left around the quotient bound of s.

    When no aligned sub-container of size s fits, the remainder is c itself.
    Empty frame pieces are dropped.  The returned regions are pairwise
    disjoint, disjoint from the quotient bound, and together with it tile c.
    """
    qb = quotient_bound(c, s)
    if qb is None:
        return (c,)
    xs = (c.x, qb.x, qb.x + qb.w)
    ws = (qb.x - c.x, qb.w, (c.x + c.w) - (qb.x + qb.w))
    ys = (c.y, qb.y, qb.y + qb.h)
    hs = (qb.y - c.y, qb.h, (c.y + c.h) - (qb.y + qb.h))
    out = []
    for col in range(3):
        for row in range(3):
            if col == 1 and row == 1:
                continue  # the quotient bound itself
            if ws[col] > 0 and hs[row] > 0:
                out.append(reg(xs[col], ys[row], ws[col], hs[row]))
    return tuple(out)


def _largest_feasible(c: Region, s: Size, q: Arities) -> Size:
    """Largest regular size (total order) bounded by s with a nonempty quotient in c.

    Exists for every nonempty integer container: the unit size always fits.
    """
    amax = ilog_exact(s.w, q.q1)
    bmax = ilog_exact(s.h, q.q2)
    if amax is None or bmax is None:
        raise ValueError(f"cut bound must be regular, got [{s.w}, {s.h}]")
    best: Size | None = None
    pw = 1
    for _ in range(amax + 1):
        ph = 1
        for _ in range(bmax + 1):
            cand = Size(pw, ph)
            if (best is None or total_key(cand) > total_key(best)) and quotient_bound(
                c, cand
            ) is not None:
                best = cand
            ph *= q.q2
        pw *= q.q1
    if best is None:
        raise AssertionError("unit size always yields a quotient")
    return best


def cut_sigma(c: Region, s: Size, q: Arities) -> tuple[Region, ...]:
    """Cut a container into the smallest set of regular aligned pieces bounded by s.

    Recursive construction: take the largest feasible regular size, emit its
    whole grid of aligned sub-containers, then recurse into the frame pieces.
    Every output is regular, aligned, no larger than s in either dimension;
    outputs are pairwise disjoint and tile c exactly.

    Piece counts grow with the container area, so this explicit form is for
    small instances; the count-based corner_cut serves the optimized path.
    """
    out: list[Region] = []
    stack = [c]
    while stack:
        r = stack.pop()
        if covers(s, r.size) and is_regular(r.size, q) and is_aligned(r):
            out.append(r)  # already a conforming piece; minimal cut is itself
            continue
        best = _largest_feasible(r, s, q)
        qb = quotient_bound(r, best)
        assert qb is not None
        for i in range(qb.w // best.w):
            for j in range(qb.h // best.h):
                out.append(reg(qb.x + i * best.w, qb.y + j * best.h, best.w, best.h))
        stack.extend(remainder_regions(r, best))
    return tuple(out)


def corner_cut(c: RegularExp, b: RegularExp, q: Arities) -> CountTable:
    """Piece counts for a container minus a block at its lower-left corner.

    Container [q1**i, q2**j] minus block [q1**a, q2**b] leaves an L shape that
    splits into full-height strips right of the block, one scale per width
    exponent in [a, i), and block-width slabs above it, one scale per height
    exponent in [b, j); q1-1 (resp. q2-1) pieces at each scale.
    """
    i, j = c.a, c.b
    a, bb = b.a, b.b
    if a > i or bb > j:
        raise ValueError(f"block ({a}, {bb}) exceeds container ({i}, {j})")
    counts: CountTable = {}
    for k in range(a, i):
        counts[RegularExp(k, j)] = counts.get(RegularExp(k, j), 0) + (q.q1 - 1)
    for t in range(bb, j):
        counts[RegularExp(a, t)] = counts.get(RegularExp(a, t), 0) + (q.q2 - 1)
    return counts


def corner_cut_regions(c: Region, block_size: Size, q: Arities) -> list[Region]:
    """Explicit regions of the corner cut, for the location-tracking packer.

    Requires c regular and aligned with the block at least as small in both
    dimensions; the block is removed from the container's lower-left corner.
    """
    ce = RegularExp.from_size(c.size, q)
    be = RegularExp.from_size(block_size, q)
    if ce is None or be is None:
        raise ValueError("corner cut needs regular container and block sizes")
    if not covers(c.size, block_size):
        raise ValueError(f"block {block_size} exceeds container {c.size}")
    out: list[Region] = []
    pw = q.q1**be.a
    for k in range(be.a, ce.a):
        for t in range(1, q.q1):
            out.append(reg(c.x + t * pw, c.y, pw, c.h))
        pw *= q.q1
    ph = q.q2**be.b
    for t in range(be.b, ce.b):
        for u in range(1, q.q2):
            out.append(reg(c.x, c.y + u * ph, block_size.w, ph))
        ph *= q.q2
    return out
