"""Lace equivalence classes and their strand statistics.

A lace class on ``n`` columns is stored as its multiplicity function
``m[[i, j]]``: the number of strands starting in column ``i`` and ending in
column ``j``.  Individual lacing diagrams are never built; every statistic
here depends only on the class.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence


class IndexOutOfRange(ValueError):
    pass


class InvalidPermSeq(ValueError):
    pass


class Interval(NamedTuple):
    start: int
    end: int

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and self.start <= x <= self.end

    def __str__(self) -> str:
        return f"[{self.start},{self.end}]"


def intervals(n: int) -> list[Interval]:
    """All ``[i, j]`` with ``1 <= i <= j <= n``, sorted by (start, end)."""
    return [Interval(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


@dataclass(frozen=True)
class LaceClass:
    n: int
    strands: tuple[tuple[Interval, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        cleaned = {}
        for iv, mult in self.strands:
            iv = Interval(*iv)
            if not 1 <= iv.start <= iv.end <= self.n:
                raise IndexOutOfRange(f"interval {iv} not inside 1..{self.n}")
            if mult < 0:
                raise ValueError(f"negative multiplicity for {iv}")
            if mult:
                cleaned[iv] = cleaned.get(iv, 0) + mult
        object.__setattr__(self, "strands", tuple(sorted(cleaned.items())))

    @classmethod
    def from_mults(cls, n: int, m: Mapping[tuple[int, int], int]) -> LaceClass:
        return cls(n, tuple((Interval(*k), v) for k, v in m.items()))

    @cached_property
    def m(self) -> dict[Interval, int]:
        return dict(self.strands)

    def mult(self, i: int, j: int) -> int:
        return self.m.get((i, j), 0)

    @property
    def num_strands(self) -> int:
        return sum(v for _, v in self.strands)

    def __str__(self) -> str:
        return format_lace(self)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "strands": [
                {"start": iv.start, "end": iv.end, "mult": v} for iv, v in self.strands
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> LaceClass:
        return cls(
            int(data["n"]),
            tuple(
                (Interval(int(s["start"]), int(s["end"])), int(s["mult"]))
                for s in data["strands"]
            ),
        )


def format_lace(eta: LaceClass) -> str:
    """Text form such as ``2*[1,3] + [2,3] + 3*[2,2]``; the empty class is ``0``."""
    if not eta.strands:
        return "0"
    return " + ".join(
        str(iv) if v == 1 else f"{v}*{iv}" for iv, v in eta.strands
    )


_TERM = re.compile(r"^\s*(?:(\d+)\s*\*\s*)?\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*$")


def parse_lace(text: str, n: int) -> LaceClass:
    text = text.strip()
    if text in ("", "0"):
        return LaceClass(n)
    found = []
    for term in text.split("+"):
        match = _TERM.match(term)
        if not match:
            raise ValueError(f"cannot parse lace term {term!r}")
        mult, i, j = match.groups()
        found.append((Interval(int(i), int(j)), int(mult) if mult else 1))
    return LaceClass(n, tuple(found))


# -- permutation sequences ------------------------------------------------------


@dataclass(frozen=True)
class PermSeq:
    """Tuple ``w = (w^(1), ..., w^(n))`` with ``w^(k)`` a permutation of 1..k
    in one-line notation and ``w^(k)(k) = k``."""

    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        for k, p in enumerate(perms, start=1):
            if sorted(p) != list(range(1, k + 1)):
                raise InvalidPermSeq(f"w^({k}) = {p} is not a permutation of 1..{k}")
            if p[-1] != k:
                raise InvalidPermSeq(f"w^({k})({k}) = {p[-1]}, expected {k}")

    @property
    def n(self) -> int:
        return len(self.perms)

    def __call__(self, k: int, i: int) -> int:
        """``w^(k)(i)``."""
        return self.perms[k - 1][i - 1]

    def __str__(self) -> str:
        return format_permseq(self)


def format_permseq(w: PermSeq) -> str:
    sep = "" if w.n <= 9 else ","
    return "/".join(sep.join(str(x) for x in p) for p in w.perms)


def parse_permseq(text: str) -> PermSeq:
    """Parse ``1/12/123``; components may be comma-separated (needed past 9)."""
    perms = []
    for comp in text.strip().split("/"):
        comp = comp.strip()
        if "," in comp:
            perms.append(tuple(int(x) for x in comp.split(",")))
        else:
            perms.append(tuple(int(ch) for ch in comp))
    return PermSeq(tuple(perms))


def identity_permseq(n: int) -> PermSeq:
    return PermSeq(tuple(tuple(range(1, k + 1)) for k in range(1, n + 1)))


# -- statistics -------------------------------------------------------------------


def dim_vector(eta: LaceClass) -> tuple[int, ...]:
    d = [0] * eta.n
    for iv, v in eta.strands:
        for x in range(iv.start, iv.end + 1):
            d[x - 1] += v
    return tuple(d)


def s_stat(eta: LaceClass, i: int, k: int) -> int:
    """Strands from column ``i`` to column ``k-1``: ``m[[i, k-1]]``."""
    if not 1 <= i < k <= eta.n:
        raise IndexOutOfRange(f"s_{i}^{k} needs 1 <= i < k <= {eta.n}")
    return eta.mult(i, k - 1)


def t_stat(eta: LaceClass, j: int, k: int) -> int:
    """Strands starting at column ``j`` that reach column ``k``."""
    if not 1 <= j <= k <= eta.n:
        raise IndexOutOfRange(f"t_{j}^{k} needs 1 <= j <= k <= {eta.n}")
    return sum(v for iv, v in eta.strands if iv.start == j and iv.end >= k)


def leftstrands(eta: LaceClass, j: int) -> int:
    """Number of strands terminating at column ``j`` (zero for ``j = 0``)."""
    if j == 0:
        return 0
    if not 1 <= j <= eta.n - 1:
        raise IndexOutOfRange(f"leftstrands needs 0 <= j <= {eta.n - 1}")
    return sum(s_stat(eta, i, j + 1) for i in range(1, j + 1))


def st_tables(eta: LaceClass) -> tuple[dict[tuple[int, int], int], dict[tuple[int, int], int]]:
    """All ``s_i^k`` (keyed ``(i, k)``, ``i < k``) and ``t_j^k`` (``j <= k``)."""
    n = eta.n
    s = {(i, k): eta.mult(i, k - 1) for k in range(2, n + 1) for i in range(1, k)}
    t = {}
    for j in range(1, n + 1):
        running = 0
        for k in range(n, j - 1, -1):
            running += eta.mult(j, k)
            t[(j, k)] = running
    return s, t


def durfee_statistic(eta: LaceClass, w: PermSeq) -> int:
    """``r_w(eta) = sum_k sum_{i<j<=k} s^k_{w(i)} t^k_{w(j)}``."""
    if w.n != eta.n:
        raise InvalidPermSeq(f"w has length {w.n}, lace class has n = {eta.n}")
    s, t = st_tables(eta)
    total = 0
    for k in range(2, eta.n + 1):
        wk = w.perms[k - 1]
        # suffix sums of t over positions j > i
        tail = 0
        for i in range(k, 1, -1):
            tail += t[(wk[i - 1], k)]
            total += s[(wk[i - 2], k)] * tail
    return total


def enumerate_classes(d: Sequence[int]) -> Iterator[LaceClass]:
    """Every lace class with dimension vector ``d``, each exactly once.

    Order: lexicographically *descending* multiplicity vectors, intervals
    taken in (start, end) order.
    """
    n = len(d)
    if any(x < 0 for x in d):
        raise ValueError(f"dimension vector entries must be nonnegative: {d}")
    ivs = intervals(n)
    remaining = list(d)
    chosen: list[int] = [0] * len(ivs)

    def rec(idx: int):
        if idx == len(ivs):
            yield LaceClass(n, tuple((iv, c) for iv, c in zip(ivs, chosen) if c))
            return
        iv = ivs[idx]
        cap = min(remaining[x - 1] for x in range(iv.start, iv.end + 1))
        last_for_start = iv.end == n
        for c in range(cap, -1, -1):
            # [start, n] is the last interval touching column ``start`` for the first time
            if last_for_start and remaining[iv.start - 1] != c:
                continue
            for x in range(iv.start, iv.end + 1):
                remaining[x - 1] -= c
            chosen[idx] = c
            yield from rec(idx + 1)
            for x in range(iv.start, iv.end + 1):
                remaining[x - 1] += c
        chosen[idx] = 0

    yield from rec(0)


def count_classes(d: Sequence[int]) -> int:
    return sum(1 for _ in enumerate_classes(d))


def classes_as_list(d: Iterable[int]) -> list[LaceClass]:
    return list(enumerate_classes(tuple(d)))
