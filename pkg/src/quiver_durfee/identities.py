"""Both sides of the partition identities, assembled as truncated series."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import series as S
from .lacing import (
    LaceClass,
    PermSeq,
    durfee_statistic,
    enumerate_classes,
    leftstrands,
    st_tables,
)
from .quiver import OrientationWord, codim_condition, codim_oracle, wq
from .series import TruncatedSeries

IDENTITIES = ("main", "cancel", "reineke", "enriched")

DEFAULT_TRUNC_Q = 30
DEFAULT_TRUNC_Z = 12


class UnknownIdentity(ValueError):
    pass


class OracleDisagreement(RuntimeError):
    pass


def _check_w(d: Sequence[int], w: PermSeq) -> None:
    if w.n != len(d):
        raise ValueError(f"w has length {w.n} but d has length {len(d)}")


@lru_cache(maxsize=None)
def _inv_poch_product(ks: tuple[int, ...], trunc_q: int) -> TruncatedSeries:
    """``prod 1/(q)_k`` over the sorted multiset ``ks``, via one inversion."""
    poly = S.one(trunc_q)
    for k in ks:
        poly = S.mul(poly, S.q_pochhammer(k, trunc_q))
    return S.invert(poly)


def _inv_poch(ks, trunc_q: int) -> TruncatedSeries:
    return _inv_poch_product(tuple(sorted(k for k in ks if k)), trunc_q)


def lhs_product(d: Sequence[int], trunc_q: int = DEFAULT_TRUNC_Q) -> TruncatedSeries:
    """``prod_k 1/(q)_{d(k)}``."""
    return _inv_poch(d, trunc_q)


def lhs_enriched(d: Sequence[int], trunc_q: int, trunc_z: int) -> TruncatedSeries:
    """``prod_k 1/(z;q)_{d(k)}``."""
    return S.product((S.inv_zq_pochhammer(x, trunc_q, trunc_z) for x in d), trunc_q, trunc_z)


def main_term(eta: LaceClass, w: PermSeq, trunc_q: int) -> TruncatedSeries:
    """Summand of the Durfee identity for one class, without the ``q^{r_w}`` shift."""
    s, t = st_tables(eta)
    factors = []
    for k in range(1, eta.n + 1):
        factors.append(S.inv_q_pochhammer(t[(k, k)], trunc_q))
        for i in range(1, k):
            factors.append(S.gauss_binom(t[(i, k)] + s[(i, k)], s[(i, k)], trunc_q))
    return S.product(factors, trunc_q)


def rhs_main_terms(d: Sequence[int], w: PermSeq, trunc_q: int = DEFAULT_TRUNC_Q):
    """``(eta, r_w(eta), q^{r_w} * term)`` for each class, in enumeration order."""
    _check_w(d, w)
    out = []
    for eta in enumerate_classes(tuple(d)):
        r = durfee_statistic(eta, w)
        out.append((eta, r, main_term(eta, w, trunc_q).shift(0, r)))
    return out


def rhs_main(d: Sequence[int], w: PermSeq, trunc_q: int = DEFAULT_TRUNC_Q) -> TruncatedSeries:
    acc = S.zero(trunc_q)
    for _, _, term in rhs_main_terms(d, w, trunc_q):
        acc = acc + term
    return acc


def _sum_by_multiplicities(weighted: Counter, trunc_q: int) -> TruncatedSeries:
    """``sum q^e prod_I 1/(q)_{m_I}`` grouped by ``(e, sorted multiplicities)``."""
    acc = S.zero(trunc_q)
    for (e, ms), count in sorted(weighted.items()):
        if e > trunc_q:
            continue
        term = _inv_poch_product(ms, trunc_q).shift(0, e)
        if count != 1:
            term = S.mul(term, S.monomial(0, 0, trunc_q, coeff=count))
        acc = acc + term
    return acc


def _mult_key(eta: LaceClass) -> tuple[int, ...]:
    return tuple(sorted(v for _, v in eta.strands))


def rhs_cancel(d: Sequence[int], w: PermSeq, trunc_q: int = DEFAULT_TRUNC_Q) -> TruncatedSeries:
    """``sum_eta q^{r_w(eta)} prod_I 1/(q)_{m_I(eta)}``."""
    _check_w(d, w)
    weighted = Counter(
        (durfee_statistic(eta, w), _mult_key(eta)) for eta in enumerate_classes(tuple(d))
    )
    return _sum_by_multiplicities(weighted, trunc_q)


def rhs_reineke(
    d: Sequence[int],
    Q: OrientationWord,
    trunc_q: int = DEFAULT_TRUNC_Q,
    check_oracle: bool = False,
) -> TruncatedSeries:
    """``sum_eta q^{codim eta} prod_I 1/(q)_{m_I(eta)}``.

    With ``check_oracle`` every combinatorial codimension is compared with
    the Ext computation; a disagreement raises :class:`OracleDisagreement`.
    """
    if Q.n != len(d):
        raise ValueError(f"orientation is for n = {Q.n} but d has length {len(d)}")
    weighted: Counter = Counter()
    for eta in enumerate_classes(tuple(d)):
        c = codim_condition(Q, eta)
        if check_oracle and c != codim_oracle(Q, eta):
            raise OracleDisagreement(f"codim mismatch for {eta} on {Q}")
        weighted[(c, _mult_key(eta))] += 1
    return _sum_by_multiplicities(weighted, trunc_q)


def rhs_enriched(
    d: Sequence[int],
    w: PermSeq,
    trunc_q: int,
    trunc_z: int,
    exponents: dict[LaceClass, int] | None = None,
) -> TruncatedSeries:
    """``sum_eta q^{r_w} prod_k z^{leftstrands(k-1)} / (z;q)_{t_k^k} prod_i [t+s, s]_q``.

    ``exponents`` replaces ``r_w(eta)`` per class (used for the Reineke-style
    variant with codimensions).
    """
    _check_w(d, w)
    acc = S.zero(trunc_q, trunc_z)
    for eta in enumerate_classes(tuple(d)):
        r = exponents[eta] if exponents is not None else durfee_statistic(eta, w)
        s, t = st_tables(eta)
        zdeg = sum(leftstrands(eta, k - 1) for k in range(1, eta.n + 1))
        if r > trunc_q or zdeg > trunc_z:
            continue
        factors = []
        for k in range(1, eta.n + 1):
            factors.append(S.inv_zq_pochhammer(t[(k, k)], trunc_q, trunc_z))
            for i in range(1, k):
                factors.append(S.gauss_binom(t[(i, k)] + s[(i, k)], s[(i, k)], trunc_q, trunc_z))
        acc = acc + S.product(factors, trunc_q, trunc_z).shift(zdeg, r)
    return acc


def cauchy_durfee_rhs(k: int, trunc_q: int = DEFAULT_TRUNC_Q) -> TruncatedSeries:
    """``sum_j q^{j^2} [k j]_q / (q)_j`` (classical Durfee square expansion)."""
    acc = S.zero(trunc_q)
    for j in range(k + 1):
        if j * j > trunc_q:
            break
        term = S.mul(S.gauss_binom(k, j, trunc_q), S.inv_q_pochhammer(j, trunc_q))
        acc = acc + term.shift(0, j * j)
    return acc


def enriched_cauchy_rhs(k: int, trunc_q: int, trunc_z: int) -> TruncatedSeries:
    """``sum_j z^j q^{j^2} [k j]_q / (z;q)_j``."""
    acc = S.zero(trunc_q, trunc_z)
    for j in range(k + 1):
        if j * j > trunc_q or j > trunc_z:
            break
        term = S.mul(
            S.gauss_binom(k, j, trunc_q, trunc_z), S.inv_zq_pochhammer(j, trunc_q, trunc_z)
        )
        acc = acc + term.shift(j, j * j)
    return acc


# -- verification reports -------------------------------------------------------


@dataclass
class IdentityReport:
    name: str
    params: dict
    lhs: TruncatedSeries
    rhs: TruncatedSeries
    class_count: int
    first_mismatch: tuple[int, int, int, int] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.first_mismatch is None

    def to_dict(self) -> dict:
        mismatch = None
        if self.first_mismatch is not None:
            zd, qd, lc, rc = self.first_mismatch
            mismatch = {"zdeg": zd, "qdeg": qd, "lhs": str(lc), "rhs": str(rc)}
        return {
            "identity": self.name,
            "params": self.params,
            "equal": self.equal,
            "first_mismatch": mismatch,
            "class_count": self.class_count,
            "notes": self.notes,
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["zdeg", "qdeg", "lhs", "rhs", "equal"])
        tz = min(self.lhs.trunc_z, self.rhs.trunc_z)
        tq = min(self.lhs.trunc_q, self.rhs.trunc_q)
        for zd in range(tz + 1):
            for qd in range(tq + 1):
                lc, rc = self.lhs.coeff(zd, qd), self.rhs.coeff(zd, qd)
                writer.writerow([zd, qd, lc, rc, int(lc == rc)])
        return buf.getvalue()

    def to_text(self) -> str:
        status = "EQUAL" if self.equal else "MISMATCH"
        lines = [
            f"identity: {self.name}",
            "params: " + ", ".join(f"{k}={v}" for k, v in self.params.items()),
            f"classes summed: {self.class_count}",
            f"result: {status}",
        ]
        if self.first_mismatch is not None:
            zd, qd, lc, rc = self.first_mismatch
            lines.append(f"first mismatch at z^{zd} q^{qd}: lhs={lc} rhs={rc}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def first_mismatch(a: TruncatedSeries, b: TruncatedSeries):
    tz, tq = min(a.trunc_z, b.trunc_z), min(a.trunc_q, b.trunc_q)
    for zd in range(tz + 1):
        for qd in range(tq + 1):
            ca, cb = a.coeff(zd, qd), b.coeff(zd, qd)
            if ca != cb:
                return (zd, qd, ca, cb)
    return None


def resolve_w(d: Sequence[int], w: PermSeq | None, orientation: OrientationWord | None) -> PermSeq:
    if w is not None and orientation is not None:
        raise ValueError("give either w or an orientation, not both")
    if orientation is not None:
        if orientation.n != len(d):
            raise ValueError(f"orientation is for n = {orientation.n} but d has length {len(d)}")
        return wq(orientation)
    if w is None:
        raise ValueError("a permutation sequence or an orientation is required")
    _check_w(d, w)
    return w


def verify(
    name: str,
    d: Sequence[int],
    *,
    w: PermSeq | None = None,
    orientation: OrientationWord | None = None,
    trunc_q: int = DEFAULT_TRUNC_Q,
    trunc_z: int = DEFAULT_TRUNC_Z,
    check_oracle: bool = False,
) -> IdentityReport:
    """Build both sides of identity ``name`` and compare every retained coefficient."""
    d = tuple(int(x) for x in d)
    if name not in IDENTITIES:
        raise UnknownIdentity(f"unknown identity {name!r}; choose from {', '.join(IDENTITIES)}")
    params: dict = {"d": list(d), "trunc_q": trunc_q}
    notes: list[str] = []
    class_count = sum(1 for _ in enumerate_classes(d))

    if name == "reineke":
        if orientation is None:
            raise ValueError("the reineke identity needs an orientation")
        if w is not None:
            raise ValueError("give either w or an orientation, not both")
        params["orientation"] = str(orientation)
        lhs = lhs_product(d, trunc_q)
        rhs = rhs_reineke(d, orientation, trunc_q, check_oracle=check_oracle)
        if check_oracle:
            notes.append("codimensions cross-checked against the Ext oracle")
    else:
        ws = resolve_w(d, w, orientation)
        params["w"] = str(ws)
        if orientation is not None:
            params["orientation"] = str(orientation)
        if name == "main":
            lhs, rhs = lhs_product(d, trunc_q), rhs_main(d, ws, trunc_q)
        elif name == "cancel":
            lhs, rhs = lhs_product(d, trunc_q), rhs_cancel(d, ws, trunc_q)
        else:
            params["trunc_z"] = trunc_z
            lhs = lhs_enriched(d, trunc_q, trunc_z)
            exponents = None
            if orientation is not None:
                exponents = {
                    eta: codim_condition(orientation, eta) for eta in enumerate_classes(d)
                }
                notes.append(
                    "derived by composition: w = w_Q with the Durfee statistic replaced by codimension"
                )
            rhs = rhs_enriched(d, ws, trunc_q, trunc_z, exponents)
    return IdentityReport(name, params, lhs, rhs, class_count, first_mismatch(lhs, rhs), notes)
