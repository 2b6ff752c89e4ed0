"""Cut/glue bijection between multipartitions and rectangle-partition data.

``phi`` cuts each ``lambda^(k)`` along nested Durfee rectangles, recovering a
lace class ``eta`` together with rectangles ``mu`` and partitions ``nu``;
``psi`` glues them back.

Geometry of the ``k``-th component (``w = w^(k)``, ``t_x = t^k_x``,
``s_x = s^k_x``): rows are grouped in bands ``i = 1..k-1`` of height
``s_{w(i)}`` from top to bottom, followed by the rows of ``nu_k``.  A row in
band ``i`` has length ``t_{w(k)} + ... + t_{w(i+1)}`` (the rectangles
``mu_{i,k}, ..., mu_{i,i+1}`` side by side) plus the matching row of
``nu_i``, which lives in an ``s_{w(i)} x t_{w(i)}`` box.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .lacing import Interval, LaceClass, PermSeq, dim_vector, st_tables
from .partitions import (
    Partition,
    Rect,
    durfee_rect,
    format_partition,
    parse_partition,
    partitions_of,
)


class MalformedCutData(ValueError):
    pass


class PartBoundViolation(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    pass


@dataclass(frozen=True)
class MultiPartition:
    lambdas: tuple[Partition, ...]
    bound: tuple[int, ...]

    def __post_init__(self):
        lambdas = tuple(Partition(p) for p in self.lambdas)
        bound = tuple(int(x) for x in self.bound)
        object.__setattr__(self, "lambdas", lambdas)
        object.__setattr__(self, "bound", bound)
        if len(lambdas) != len(bound):
            raise PartBoundViolation(
                f"{len(lambdas)} partitions for a dimension vector of length {len(bound)}"
            )
        for k, (lam, dk) in enumerate(zip(lambdas, bound), start=1):
            if lam and lam[0] > dk:
                raise PartBoundViolation(f"lambda^({k}) = {lam} has a part exceeding d({k}) = {dk}")

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def weight(self) -> int:
        return sum(lam.size for lam in self.lambdas)

    def __str__(self) -> str:
        return format_multipartition(self.lambdas)


def parse_multipartition(text: str, bound: Sequence[int]) -> MultiPartition:
    """Parse ``"2,1 / 5,1 / 3,3,2,1,1"`` (``lambda^(1)`` first)."""
    pieces = text.split("/")
    return MultiPartition(tuple(parse_partition(p) for p in pieces), tuple(bound))


def format_multipartition(lambdas: Sequence[Partition]) -> str:
    return " / ".join(format_partition(lam) for lam in lambdas)


@dataclass(frozen=True, eq=True)
class CutData:
    """``eta`` plus ``mus[(i, j, k)]`` (rectangles) and ``nus[(i, k)]`` (partitions).

    Keys follow positions in ``w^(k)``: ``mus`` for ``1 <= i < j <= k``,
    ``nus`` for ``1 <= i <= k``.
    """

    eta: LaceClass
    mus: Mapping[tuple[int, int, int], Rect]
    nus: Mapping[tuple[int, int], Partition]

    __hash__ = None  # type: ignore[assignment]

    @property
    def weight(self) -> int:
        return sum(r.area for r in self.mus.values()) + sum(p.size for p in self.nus.values())

    def to_dict(self) -> dict:
        return {
            "eta": self.eta.to_dict(),
            "mus": [
                {"i": i, "j": j, "k": k, "rows": r.rows, "cols": r.cols}
                for (i, j, k), r in sorted(self.mus.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1]))
            ],
            "nus": [
                {"i": i, "k": k, "parts": list(p)}
                for (i, k), p in sorted(self.nus.items(), key=lambda kv: (kv[0][1], kv[0][0]))
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> CutData:
        return cls(
            LaceClass.from_dict(data["eta"]),
            {(m["i"], m["j"], m["k"]): Rect(m["rows"], m["cols"]) for m in data["mus"]},
            {(v["i"], v["k"]): Partition(v["parts"]) for v in data["nus"]},
        )


@dataclass(frozen=True)
class LaceParameters:
    """Intermediate values of the cutting recursion, kept for inspection."""

    s: dict[tuple[int, int], int]
    t: dict[tuple[int, int], int]
    deltas: dict[tuple[int, int], Rect]


def lace_parameters(lam: MultiPartition, w: PermSeq) -> LaceParameters:
    """Run the Durfee-rectangle recursion producing ``s_x^k``, ``t_x^k``.

    ``t_1^1 = d(1)``.  For ``k >= 2`` and ``i < k``, ``delta_i^k`` is the
    Durfee rectangle of ``lambda^(k)`` with offset
    ``d(k) - (t^{k-1}_{w(1)} + ... + t^{k-1}_{w(i)})``; if it is
    ``a_i x b_i`` then ``t^k_{w(i)} = d(k) - b_i - (t^k_{w(1)} + ... + t^k_{w(i-1)})``
    and ``s^k_{w(i)} = a_i - a_{i-1}``.  Finally ``t^k_k`` takes up the rest of
    ``d(k)``.
    """
    n, d = lam.n, lam.bound
    if w.n != n:
        raise ValueError(f"w has length {w.n} but the multipartition has {n} components")
    s: dict[tuple[int, int], int] = {}
    t: dict[tuple[int, int], int] = {}
    deltas: dict[tuple[int, int], Rect] = {}
    if n == 0:
        return LaceParameters(s, t, deltas)
    t[(1, 1)] = d[0]
    for k in range(2, n + 1):
        dk = d[k - 1]
        prev_sum = 0
        cur_sum = 0
        a_prev = 0
        for i in range(1, k):
            x = w(k, i)
            prev_sum += t[(x, k - 1)]
            rect = durfee_rect(lam.lambdas[k - 1], dk - prev_sum)
            deltas[(i, k)] = rect
            t[(x, k)] = dk - rect.cols - cur_sum
            cur_sum += t[(x, k)]
            s[(x, k)] = rect.rows - a_prev
            a_prev = rect.rows
        t[(k, k)] = dk - cur_sum
    bad = {key: v for key, v in {**s, **t}.items() if v < 0}
    if bad:
        raise InternalInconsistency(f"negative lace parameters {bad} for {lam}")
    return LaceParameters(s, t, deltas)


def lace_class_of(params: LaceParameters, n: int) -> LaceClass:
    """``eta(lambda)``: ``s_i^{j+1}`` strands ``[i, j]`` for ``j < n``, ``t_i^n`` strands ``[i, n]``."""
    mults = {}
    for (i, k), v in params.s.items():
        mults[Interval(i, k - 1)] = v
    for i in range(1, n + 1):
        mults[Interval(i, n)] = params.t[(i, n)]
    return LaceClass(n, tuple(mults.items()))


def phi(lam: MultiPartition, w: PermSeq) -> CutData:
    """Cut a multipartition into its lace class, rectangles and partitions."""
    n = lam.n
    params = lace_parameters(lam, w)
    eta = lace_class_of(params, n)
    s, t = params.s, params.t
    mus: dict[tuple[int, int, int], Rect] = {}
    nus: dict[tuple[int, int], Partition] = {}
    for k in range(1, n + 1):
        parts = lam.lambdas[k - 1]
        row = 1
        for i in range(1, k):
            height = s[(w(k, i), k)]
            base = sum(t[(w(k, j), k)] for j in range(i + 1, k + 1))
            width = t[(w(k, i), k)]
            rows = []
            for r in range(row, row + height):
                extra = parts.part(r) - base
                if not 0 <= extra <= width:
                    raise InternalInconsistency(
                        f"row {r} of lambda^({k}) leaves band {i} ({extra} not in [0, {width}])"
                    )
                rows.append(extra)
            nus[(i, k)] = Partition.from_rows(rows)
            for j in range(i + 1, k + 1):
                mus[(i, j, k)] = Rect(height, t[(w(k, j), k)])
            row += height
        tail = Partition(parts[row - 1:])
        if tail and tail[0] > t[(k, k)]:
            raise InternalInconsistency(f"nu_{k}^{k} = {tail} exceeds t_{k}^{k} = {t[(k, k)]}")
        nus[(k, k)] = tail
    return CutData(eta, mus, nus)


def psi(cut: CutData, w: PermSeq) -> MultiPartition:
    """Glue rectangles and partitions back into a multipartition."""
    eta = cut.eta
    n = eta.n
    if w.n != n:
        raise MalformedCutData(f"w has length {w.n} but eta has n = {n}")
    s, t = st_tables(eta)
    expected_mu = {
        (i, j, k) for k in range(1, n + 1) for j in range(2, k + 1) for i in range(1, j)
    }
    expected_nu = {(i, k) for k in range(1, n + 1) for i in range(1, k + 1)}
    if set(cut.mus) != expected_mu or set(cut.nus) != expected_nu:
        raise MalformedCutData("cut data keys do not match n")
    lambdas = []
    for k in range(1, n + 1):
        rows: list[int] = []
        for i in range(1, k):
            height = s[(w(k, i), k)]
            width = t[(w(k, i), k)]
            for j in range(i + 1, k + 1):
                if cut.mus[(i, j, k)] != Rect(height, t[(w(k, j), k)]):
                    raise MalformedCutData(
                        f"mu_{i},{j}^{k} = {cut.mus[(i, j, k)]} should be "
                        f"{height}x{t[(w(k, j), k)]}"
                    )
            nu = cut.nus[(i, k)]
            if len(nu) > height or (nu and nu[0] > width):
                raise MalformedCutData(f"nu_{i}^{k} = {nu} overflows its {height}x{width} box")
            base = sum(t[(w(k, j), k)] for j in range(i + 1, k + 1))
            rows.extend(base + nu.part(r) for r in range(1, height + 1))
        last = cut.nus[(k, k)]
        if last and last[0] > t[(k, k)]:
            raise MalformedCutData(f"nu_{k}^{k} = {last} has parts above t_{k}^{k} = {t[(k, k)]}")
        rows.extend(last)
        try:
            lambdas.append(Partition.from_rows(rows))
        except ValueError as exc:
            raise MalformedCutData(f"glued rows of lambda^({k}) are not a partition: {rows}") from exc
    return MultiPartition(tuple(lambdas), dim_vector(eta))


def roundtrip_check(obj: MultiPartition | CutData, w: PermSeq) -> bool:
    """``psi(phi(lam)) == lam`` or ``phi(psi(cut)) == cut``, weights included."""
    if isinstance(obj, MultiPartition):
        cut = phi(obj, w)
        back = psi(cut, w)
        return back == obj and cut.weight == obj.weight
    lam = psi(obj, w)
    back = phi(lam, w)
    return back == obj and lam.weight == obj.weight


# -- enumeration of both sides --------------------------------------------------


def enumerate_multipartitions(d: Sequence[int], max_weight: int) -> Iterator[MultiPartition]:
    """All members of S for ``d`` with total size <= ``max_weight``."""
    d = tuple(d)

    def rec(k: int, budget: int, acc: list[Partition]):
        if k == len(d):
            yield MultiPartition(tuple(acc), d)
            return
        for size in range(budget + 1):
            for lam in partitions_of(size, max_part=d[k]):
                acc.append(lam)
                yield from rec(k + 1, budget - size, acc)
                acc.pop()

    yield from rec(0, max_weight, [])


def nu_slots(eta: LaceClass, w: PermSeq) -> dict[tuple[int, int], tuple[int | None, int]]:
    """``(i, k) -> (max_rows, max_part)`` for every ``nu`` slot; ``None`` = unbounded."""
    s, t = st_tables(eta)
    slots: dict[tuple[int, int], tuple[int | None, int]] = {}
    for k in range(1, eta.n + 1):
        for i in range(1, k):
            slots[(i, k)] = (s[(w(k, i), k)], t[(w(k, i), k)])
        slots[(k, k)] = (None, t[(k, k)])
    return slots


def rectangles(eta: LaceClass, w: PermSeq) -> dict[tuple[int, int, int], Rect]:
    """The single element of R(eta)."""
    s, t = st_tables(eta)
    return {
        (i, j, k): Rect(s[(w(k, i), k)], t[(w(k, j), k)])
        for k in range(1, eta.n + 1)
        for j in range(2, k + 1)
        for i in range(1, j)
    }


def enumerate_cut_data(eta: LaceClass, w: PermSeq, max_weight: int) -> Iterator[CutData]:
    """All members of T(eta) with weight <= ``max_weight``."""
    mus = rectangles(eta, w)
    base = sum(r.area for r in mus.values())
    if base > max_weight:
        return
    slots = sorted(nu_slots(eta, w).items())

    def rec(idx: int, budget: int, acc: dict):
        if idx == len(slots):
            yield CutData(eta, dict(mus), dict(acc))
            return
        key, (max_rows, max_part) = slots[idx]
        for size in range(budget + 1):
            for nu in partitions_of(size, max_part=max_part, max_len=max_rows):
                acc[key] = nu
                yield from rec(idx + 1, budget - size, acc)
        acc.pop(key, None)

    yield from rec(0, max_weight - base, {})
