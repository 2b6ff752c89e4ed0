"""Exact truncated power series in two commuting variables ``z`` and ``q``.

A :class:`TruncatedSeries` stores integer coefficients keyed by
``(z_degree, q_degree)`` and remembers inclusive truncation bounds
``trunc_z`` and ``trunc_q``.  Univariate q-series are the ``trunc_z == 0``
case.

Binary operations on series with different bounds truncate to the
componentwise minimum of the two bounds.  Constructors for z-free building
blocks (Pochhammer symbols, Gaussian binomials) accept a ``trunc_z``
argument so they can be used inside bivariate computations without losing
the z-direction.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterable, Iterator, Mapping


class SeriesError(ValueError):
    pass


class NonUnitConstantTerm(SeriesError):
    pass


class DegreeBeyondTruncation(SeriesError):
    pass


class TruncatedSeries:
    """Immutable bivariate series with exact integer coefficients."""

    __slots__ = ("_coeffs", "_trunc_q", "_trunc_z", "_hash")

    def __init__(
        self,
        coeffs: Mapping[tuple[int, int], int] | None = None,
        trunc_q: int = 0,
        trunc_z: int = 0,
    ):
        if trunc_q < 0 or trunc_z < 0:
            raise SeriesError("truncation bounds must be nonnegative")
        clean: dict[tuple[int, int], int] = {}
        for (zd, qd), c in (coeffs or {}).items():
            if zd < 0 or qd < 0:
                raise SeriesError(f"negative degree {(zd, qd)}")
            if c and zd <= trunc_z and qd <= trunc_q:
                clean[(zd, qd)] = int(c)
        self._coeffs = clean
        self._trunc_q = trunc_q
        self._trunc_z = trunc_z
        self._hash = None

    @property
    def trunc_q(self) -> int:
        return self._trunc_q

    @property
    def trunc_z(self) -> int:
        return self._trunc_z

    @property
    def bounds(self) -> tuple[int, int]:
        """``(trunc_z, trunc_q)``."""
        return (self._trunc_z, self._trunc_q)

    def terms(self) -> list[tuple[int, int, int]]:
        """Nonzero terms ``(z_degree, q_degree, coeff)`` in canonical order."""
        return [(zd, qd, c) for (zd, qd), c in sorted(self._coeffs.items())]

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(self._coeffs.items())

    def coeff(self, zdeg: int, qdeg: int) -> int:
        if zdeg < 0 or qdeg < 0:
            return 0
        if zdeg > self._trunc_z or qdeg > self._trunc_q:
            raise DegreeBeyondTruncation(
                f"z^{zdeg} q^{qdeg} lies beyond truncation "
                f"(z<={self._trunc_z}, q<={self._trunc_q})"
            )
        return self._coeffs.get((zdeg, qdeg), 0)

    def q_coeffs(self, zdeg: int = 0) -> list[int]:
        """Dense list of the q-coefficients of the ``z**zdeg`` slice."""
        out = [0] * (self._trunc_q + 1)
        for (zd, qd), c in self._coeffs.items():
            if zd == zdeg:
                out[qd] = c
        return out

    def is_zero(self) -> bool:
        return not self._coeffs

    def truncate(self, trunc_q: int, trunc_z: int | None = None) -> TruncatedSeries:
        """Drop terms beyond new bounds; bounds may only shrink."""
        if trunc_z is None:
            trunc_z = self._trunc_z
        if trunc_q > self._trunc_q or trunc_z > self._trunc_z:
            raise DegreeBeyondTruncation("truncate() cannot enlarge the bounds")
        return TruncatedSeries(self._coeffs, trunc_q, trunc_z)

    def shift(self, zdeg: int = 0, qdeg: int = 0) -> TruncatedSeries:
        """Multiply by the monomial ``z**zdeg * q**qdeg``."""
        return TruncatedSeries(
            {(zd + zdeg, qd + qdeg): c for (zd, qd), c in self._coeffs.items()},
            self._trunc_q,
            self._trunc_z,
        )

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        return add(self, other)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return add(self, -other)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(
            {k: -c for k, c in self._coeffs.items()}, self._trunc_q, self._trunc_z
        )

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        return mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.bounds == other.bounds and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.bounds, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self) -> str:
        return (
            f"TruncatedSeries({self.to_text()!r}, trunc_q={self._trunc_q}, "
            f"trunc_z={self._trunc_z})"
        )

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        """Canonical text, e.g. ``1 - q - q^2 + q^3`` or ``z*q - 2*z^2*q^3``."""
        pieces: list[str] = []
        for zd, qd, c in self.terms():
            mono = "*".join(
                v if d == 1 else f"{v}^{d}" for v, d in (("z", zd), ("q", qd)) if d
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces) if pieces else "0"

    def to_dict(self) -> dict:
        return {
            "trunc_q": self._trunc_q,
            "trunc_z": self._trunc_z,
            "terms": [[zd, qd, str(c)] for zd, qd, c in self.terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> TruncatedSeries:
        coeffs = {(int(zd), int(qd)): int(c) for zd, qd, c in data["terms"]}
        return cls(coeffs, int(data["trunc_q"]), int(data["trunc_z"]))

    @classmethod
    def from_json(cls, text: str) -> TruncatedSeries:
        return cls.from_dict(json.loads(text))


# -- constructors -------------------------------------------------------------


def zero(trunc_q: int, trunc_z: int = 0) -> TruncatedSeries:
    return TruncatedSeries({}, trunc_q, trunc_z)


def one(trunc_q: int, trunc_z: int = 0) -> TruncatedSeries:
    return TruncatedSeries({(0, 0): 1}, trunc_q, trunc_z)


def monomial(zdeg: int, qdeg: int, trunc_q: int, trunc_z: int = 0, coeff: int = 1):
    return TruncatedSeries({(zdeg, qdeg): coeff}, trunc_q, trunc_z)


def from_q_poly(coeffs: Iterable[int], trunc_q: int, trunc_z: int = 0):
    """Series from a dense list of q-coefficients (z-degree 0)."""
    return TruncatedSeries(
        {(0, qd): c for qd, c in enumerate(coeffs)}, trunc_q, trunc_z
    )


def geometric(trunc_q: int, trunc_z: int = 0) -> TruncatedSeries:
    """``1 + q + q^2 + ...`` up to the truncation."""
    return from_q_poly([1] * (trunc_q + 1), trunc_q, trunc_z)


# -- ring operations ----------------------------------------------------------


def _common_bounds(a: TruncatedSeries, b: TruncatedSeries) -> tuple[int, int]:
    return min(a.trunc_q, b.trunc_q), min(a.trunc_z, b.trunc_z)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    tq, tz = _common_bounds(a, b)
    out = dict(a._coeffs)
    for k, c in b._coeffs.items():
        out[k] = out.get(k, 0) + c
    return TruncatedSeries(out, tq, tz)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    tq, tz = _common_bounds(a, b)
    left = [(zd, qd, c) for (zd, qd), c in a._coeffs.items() if zd <= tz and qd <= tq]
    right = sorted(
        (qd, zd, c) for (zd, qd), c in b._coeffs.items() if zd <= tz and qd <= tq
    )
    out: dict[tuple[int, int], int] = {}
    for za, qa, ca in left:
        qroom = tq - qa
        zroom = tz - za
        for qb, zb, cb in right:
            if qb > qroom:
                break
            if zb > zroom:
                continue
            key = (za + zb, qa + qb)
            out[key] = out.get(key, 0) + ca * cb
    return TruncatedSeries(out, tq, tz)


def product(factors: Iterable[TruncatedSeries], trunc_q: int, trunc_z: int = 0):
    acc = one(trunc_q, trunc_z)
    for f in factors:
        acc = mul(acc, f)
    return acc


def invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse by coefficient recursion.

    Only series whose constant term is a unit of the integers are invertible.
    """
    c0 = a._coeffs.get((0, 0), 0)
    if c0 not in (1, -1):
        raise NonUnitConstantTerm(f"constant term {c0} is not +1 or -1")
    tq, tz = a.trunc_q, a.trunc_z
    rest = [(zd, qd, c) for (zd, qd), c in a._coeffs.items() if (zd, qd) != (0, 0)]
    inv: dict[tuple[int, int], int] = {}
    for zd in range(tz + 1):
        for qd in range(tq + 1):
            if (zd, qd) == (0, 0):
                inv[(0, 0)] = c0
                continue
            acc = 0
            for za, qa, ca in rest:
                cb = inv.get((zd - za, qd - qa))
                if cb:
                    acc += ca * cb
            if acc:
                inv[(zd, qd)] = -c0 * acc
    return TruncatedSeries(inv, tq, tz)


def coeff(s: TruncatedSeries, zdeg: int, qdeg: int) -> int:
    return s.coeff(zdeg, qdeg)


# -- q-analog building blocks -------------------------------------------------


@lru_cache(maxsize=None)
def _q_pochhammer_poly(k: int) -> tuple[int, ...]:
    poly = [1]
    for i in range(1, k + 1):
        nxt = poly + [0] * i
        for d, c in enumerate(poly):
            nxt[d + i] -= c
        poly = nxt
    return tuple(poly)


def q_pochhammer(k: int, trunc_q: int, trunc_z: int = 0) -> TruncatedSeries:
    """``(q)_k = (1-q)(1-q^2)...(1-q^k)``; ``(q)_0 = 1``."""
    if k < 0:
        raise SeriesError("k must be nonnegative")
    return from_q_poly(_q_pochhammer_poly(k)[: trunc_q + 1], trunc_q, trunc_z)


@lru_cache(maxsize=None)
def _inv_q_pochhammer(k: int, trunc_q: int) -> TruncatedSeries:
    return invert(q_pochhammer(k, trunc_q))


def inv_q_pochhammer(k: int, trunc_q: int, trunc_z: int = 0) -> TruncatedSeries:
    """``1/(q)_k``, memoised; generating series for partitions with parts <= k."""
    base = _inv_q_pochhammer(k, trunc_q)
    if trunc_z == 0:
        return base
    return TruncatedSeries(dict(base.items()), trunc_q, trunc_z)


def zq_pochhammer(k: int, trunc_q: int, trunc_z: int) -> TruncatedSeries:
    """``(z;q)_k = (1-qz)(1-q^2 z)...(1-q^k z)``."""
    if k < 0:
        raise SeriesError("k must be nonnegative")
    acc = one(trunc_q, trunc_z)
    for i in range(1, k + 1):
        acc = mul(acc, TruncatedSeries({(0, 0): 1, (1, i): -1}, trunc_q, trunc_z))
    return acc


@lru_cache(maxsize=None)
def _inv_zq_pochhammer(k: int, trunc_q: int, trunc_z: int) -> TruncatedSeries:
    return invert(zq_pochhammer(k, trunc_q, trunc_z))


def inv_zq_pochhammer(k: int, trunc_q: int, trunc_z: int) -> TruncatedSeries:
    return _inv_zq_pochhammer(k, trunc_q, trunc_z)


@lru_cache(maxsize=None)
def _gauss_poly(k: int, j: int) -> tuple[int, ...]:
    if j < 0 or j > k:
        return ()
    if j == 0 or j == k:
        return (1,)
    # [k j] = [k-1 j] + q^(k-j) [k-1 j-1]
    left = _gauss_poly(k - 1, j)
    right = _gauss_poly(k - 1, j - 1)
    out = [0] * (j * (k - j) + 1)
    for d, c in enumerate(left):
        out[d] += c
    for d, c in enumerate(right):
        out[d + k - j] += c
    return tuple(out)


def gauss_binom(k: int, j: int, trunc_q: int, trunc_z: int = 0) -> TruncatedSeries:
    """Gaussian binomial ``[k choose j]_q`` by Pascal recursion; zero if j not in [0, k]."""
    if k < 0:
        raise SeriesError("k must be nonnegative")
    return from_q_poly(_gauss_poly(k, j)[: trunc_q + 1], trunc_q, trunc_z)


def gauss_binom_by_division(k: int, j: int, trunc_q: int) -> TruncatedSeries:
    """``(q)_k / ((q)_j (q)_{k-j})`` through series inversion; cross-check path."""
    if j < 0 or j > k:
        return zero(trunc_q)
    den = mul(q_pochhammer(j, trunc_q), q_pochhammer(k - j, trunc_q))
    return mul(q_pochhammer(k, trunc_q), invert(den))
