import random

import pytest

from prefixpack.geometry import overlap
from prefixpack.model import Arities, Region, Size, covers, is_aligned, is_regular


def assert_partition(c: Region, s: Size, q: Arities, pieces) -> None:
    """Pieces tile c exactly and each is regular, aligned, and bounded by s."""
    total = 0
    for p in pieces:
        assert is_regular(p.size, q), f"piece {p} not regular for q=({q.q1},{q.q2})"
        assert is_aligned(p), f"piece {p} not aligned"
        assert covers(s, p.size), f"piece {p} exceeds bound [{s.w},{s.h}]"
        assert c.x <= p.x and p.x + p.w <= c.x + c.w, f"piece {p} leaves {c}"
        assert c.y <= p.y and p.y + p.h <= c.y + c.h, f"piece {p} leaves {c}"
        total += p.area
    assert total == c.area, "pieces do not sum to the container area"
    # area + containment + pairwise disjointness => exact tiling
    seen = sorted(pieces, key=lambda r: (r.x, r.y))
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[j].x >= seen[i].x + seen[i].w:
                break  # sorted by x; nothing further can overlap seen[i]
            assert not overlap(seen[i], seen[j]), f"{seen[i]} overlaps {seen[j]}"


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0DEC)
