"""Integer partitions, bounded enumeration and Durfee rectangles."""

from __future__ import annotations

from typing import Iterator, NamedTuple, Sequence


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    ``Partition(())`` is the empty partition.  Zero parts are rejected; use
    :meth:`from_rows` to build a partition from row lengths that may end in
    zeros.
    """

    __slots__ = ()

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> Partition:
        """Drop trailing zero rows; the remaining rows must be a partition."""
        rows = list(rows)
        while rows and rows[-1] == 0:
            rows.pop()
        return cls(rows)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, t: int) -> int:
        """The ``t``-th part (1-based), zero past the end."""
        return self[t - 1] if 1 <= t <= len(self) else 0

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return format_partition(self)


class Rect(NamedTuple):
    rows: int
    cols: int

    @property
    def area(self) -> int:
        return self.rows * self.cols

    def __str__(self) -> str:
        return f"{self.rows}x{self.cols}"


def parse_partition(text: str) -> Partition:
    """Parse ``3,3,2,2,1``; ``-`` or an empty string is the empty partition."""
    text = text.strip()
    if text in ("", "-"):
        return Partition(())
    return Partition(int(p) for p in text.split(","))


def format_partition(lam: Sequence[int]) -> str:
    return ",".join(str(p) for p in lam) if len(lam) else "-"


def contains_rect(lam: Partition, r: Rect) -> bool:
    if r.rows < 0 or r.cols < 0:
        raise ValueError(f"rectangle dimensions must be nonnegative: {r}")
    if r.rows == 0 or r.cols == 0:
        return True
    return len(lam) >= r.rows and lam[r.rows - 1] >= r.cols


def durfee_rect(lam: Partition, i: int) -> Rect:
    """Largest ``a x (a+i)`` rectangle fitting top-left-justified in ``lam``.

    Rectangles with zero rows or zero columns always fit, so the search
    starts at ``a = max(0, -i)``.
    """
    a = max(0, -i)
    while contains_rect(lam, Rect(a + 1, a + 1 + i)):
        a += 1
    return Rect(a, a + i)


def _partitions_of(size: int, max_part: int, max_len: int | None) -> Iterator[Partition]:
    """Partitions of ``size`` in lexicographically descending order."""

    def rec(remaining: int, cap: int, slots: int | None, prefix: list[int]):
        if remaining == 0:
            yield Partition(prefix)
            return
        if slots == 0:
            return
        for p in range(min(cap, remaining), 0, -1):
            prefix.append(p)
            yield from rec(remaining - p, p, None if slots is None else slots - 1, prefix)
            prefix.pop()

    yield from rec(size, max_part, max_len, [])


def partitions_of(size: int, max_part: int | None = None, max_len: int | None = None):
    """All partitions of ``size`` with optional part and length bounds."""
    if size < 0:
        return iter(())
    return _partitions_of(size, size if max_part is None else max_part, max_len)


def enumerate_bounded(max_part: int, max_size: int) -> Iterator[Partition]:
    """Partitions with parts <= ``max_part`` and size <= ``max_size``.

    Order: by size, then lexicographically descending within a size.
    """
    for size in range(max_size + 1):
        yield from _partitions_of(size, max_part, None)


def enumerate_in_box(rows: int, cols: int) -> Iterator[Partition]:
    """Partitions with at most ``rows`` parts, each at most ``cols``.

    Same canonical order as :func:`enumerate_bounded`.
    """
    for size in range(rows * cols + 1):
        yield from _partitions_of(size, cols, rows)
