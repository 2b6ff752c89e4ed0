"""Command line interface.

Exit codes: 0 success (or identity verified), 1 identity mismatch, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import bijection, identities
from .lacing import (
    InvalidPermSeq,
    LaceClass,
    PermSeq,
    durfee_statistic,
    enumerate_classes,
    format_lace,
    identity_permseq,
    parse_permseq,
    st_tables,
)
from .quiver import BadOrientation, OrientationWord, codim_condition, codim_oracle, wq

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class ConfigError(Exception):
    pass


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"--dims must be comma-separated integers, got {text!r}")
    if any(x < 0 for x in dims):
        raise ConfigError("--dims entries must be nonnegative")
    return dims


def _orientation_and_w(args, n: int) -> tuple[OrientationWord | None, PermSeq]:
    if args.orientation is not None and args.w is not None:
        raise ConfigError("--orientation and --w are mutually exclusive")
    try:
        if args.w is not None:
            w = parse_permseq(args.w)
            if w.n != n:
                raise ConfigError(f"--w has {w.n} permutations but --dims has {n} entries")
            return None, w
        if args.orientation is not None:
            Q = OrientationWord(args.orientation)
        elif n <= 1:
            Q = OrientationWord("")
        else:
            raise ConfigError("one of --orientation or --w is required")
    except (InvalidPermSeq, BadOrientation, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc))
    if Q.n != n:
        raise ConfigError(f"orientation {Q} has length {Q.n - 1}, expected {n - 1}")
    return Q, wq(Q)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _table(s: dict, t: dict, n: int) -> tuple[str, str]:
    s_txt = ";".join(
        " ".join(str(s[(i, k)]) for i in range(k - 1, 0, -1)) for k in range(2, n + 1)
    )
    t_txt = ";".join(
        " ".join(str(t[(j, k)]) for j in range(k, 0, -1)) for k in range(1, n + 1)
    )
    return s_txt, t_txt


def laces_rows(dims: Sequence[int], Q: OrientationWord | None, w: PermSeq) -> list[tuple[LaceClass, dict]]:
    rows = []
    for eta in enumerate_classes(tuple(dims)):
        s, t = st_tables(eta)
        row = {
            "class": format_lace(eta),
            "strands": eta.to_dict()["strands"],
            "s": {f"{i},{k}": v for (i, k), v in s.items()},
            "t": {f"{j},{k}": v for (j, k), v in t.items()},
            "r_w": durfee_statistic(eta, w),
            "codim_condition": codim_condition(Q, eta) if Q else None,
            "codim_oracle": codim_oracle(Q, eta) if Q else None,
        }
        rows.append((eta, row))
    return rows


def cmd_laces(args) -> int:
    dims = _parse_dims(args.dims)
    Q, w = _orientation_and_w(args, len(dims))
    rows = laces_rows(dims, Q, w)
    n = len(dims)
    if args.format == "json":
        doc = {
            "orientation": str(Q) if Q else None,
            "w": str(w),
            "dims": list(dims),
            "classes": [row for _, row in rows],
        }
        _emit(json.dumps(doc, indent=2), args.out)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["class", "s", "t", "r_w", "codim_condition", "codim_oracle"])
        for eta, row in rows:
            s_txt, t_txt = _table(*st_tables(eta), n)
            writer.writerow(
                [row["class"], s_txt, t_txt, row["r_w"], row["codim_condition"], row["codim_oracle"]]
            )
        _emit(buf.getvalue(), args.out)
    else:
        header = f"dims={','.join(map(str, dims))} w={w}" + (f" orientation={Q}" if Q else "")
        lines = [header, f"{len(rows)} lace classes"]
        lines.append("class | s (k=2..n, i descending) | t (k=1..n, j descending) | r_w | codim_condition | codim_oracle")
        for eta, row in rows:
            s_txt, t_txt = _table(*st_tables(eta), n)
            lines.append(
                f"{row['class']} | {s_txt or '-'} | {t_txt or '-'} | {row['r_w']} | "
                f"{row['codim_condition'] if Q else '-'} | {row['codim_oracle'] if Q else '-'}"
            )
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    dims = _parse_dims(args.dims)
    if args.orientation is not None and args.w is not None:
        raise ConfigError("--orientation and --w are mutually exclusive")
    try:
        Q = OrientationWord(args.orientation) if args.orientation is not None else None
        w = parse_permseq(args.w) if args.w is not None else None
        if Q is None and w is None and len(dims) <= 1:
            w = identity_permseq(len(dims))
            if args.identity == "reineke":
                Q, w = OrientationWord(""), None
        report = identities.verify(
            args.identity,
            dims,
            w=w,
            orientation=Q,
            trunc_q=args.N,
            trunc_z=args.M,
            check_oracle=args.check_oracle,
        )
    except (InvalidPermSeq, BadOrientation, ValueError) as exc:
        raise ConfigError(str(exc))
    if args.format == "json":
        _emit(report.to_json(), args.out)
    elif args.format == "csv":
        _emit(report.to_csv(), args.out)
    else:
        _emit(report.to_text(), args.out)
    return EXIT_OK if report.equal else EXIT_MISMATCH


def cmd_bijection(args) -> int:
    dims = _parse_dims(args.dims)
    Q, w = _orientation_and_w(args, len(dims))
    if args.direction == "phi":
        if args.parts is None:
            raise ConfigError("phi needs --parts")
        try:
            lam = bijection.parse_multipartition(args.parts, dims)
        except ValueError as exc:
            raise ConfigError(str(exc))
        cut = bijection.phi(lam, w)
        params = bijection.lace_parameters(lam, w)
        ok = bijection.roundtrip_check(lam, w)
        doc = cut.to_dict()
        doc["t"] = [{"i": i, "k": k, "value": v} for (i, k), v in sorted(params.t.items(), key=lambda kv: (kv[0][1], kv[0][0]))]
        doc["s"] = [{"i": i, "k": k, "value": v} for (i, k), v in sorted(params.s.items(), key=lambda kv: (kv[0][1], kv[0][0]))]
        doc["deltas"] = [
            {"i": i, "k": k, "rows": r.rows, "cols": r.cols}
            for (i, k), r in sorted(params.deltas.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        ]
        doc["roundtrip"] = ok
        if args.format == "json":
            _emit(json.dumps(doc, indent=2), args.out)
        else:
            lines = [f"eta = {format_lace(cut.eta)}", f"weight = {cut.weight}"]
            lines += [f"delta_{d['i']}^{d['k']} = {d['rows']}x{d['cols']}" for d in doc["deltas"]]
            lines += [f"t_{d['i']}^{d['k']} = {d['value']}" for d in doc["t"]]
            lines += [f"s_{d['i']}^{d['k']} = {d['value']}" for d in doc["s"]]
            lines += [f"mu_{m['i']},{m['j']}^{m['k']} = {m['rows']}x{m['cols']}" for m in doc["mus"]]
            lines += [f"nu_{v['i']}^{v['k']} = {','.join(map(str, v['parts'])) or '-'}" for v in doc["nus"]]
            lines.append(f"roundtrip: {'ok' if ok else 'FAILED'}")
            _emit("\n".join(lines), args.out)
        return EXIT_OK if ok else EXIT_MISMATCH
    if args.cut is None:
        raise ConfigError("psi needs --cut (a JSON file, or '-' for stdin)")
    try:
        raw = sys.stdin.read() if args.cut == "-" else open(args.cut).read()
        cut = bijection.CutData.from_dict(json.loads(raw))
        lam = bijection.psi(cut, w)
    except (OSError, KeyError, ValueError) as exc:
        raise ConfigError(f"bad cut data: {exc}")
    if lam.bound != dims:
        raise ConfigError(f"cut data has dimension vector {lam.bound}, not {dims}")
    ok = bijection.roundtrip_check(cut, w)
    if args.format == "json":
        doc = {"parts": [list(p) for p in lam.lambdas], "dims": list(dims), "roundtrip": ok}
        _emit(json.dumps(doc, indent=2), args.out)
    else:
        _emit(f"{lam}\nroundtrip: {'ok' if ok else 'FAILED'}", args.out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_wq(args) -> int:
    try:
        Q = OrientationWord(args.orientation)
    except BadOrientation as exc:
        raise ConfigError(str(exc))
    _emit(str(wq(Q)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiver-durfee",
        description="Lacing diagrams, Durfee statistics and exact q-series identities for type-A quivers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json", "csv")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", help="write output to FILE instead of stdout")

    def quiver_opts(p):
        p.add_argument("--dims", required=True, help="dimension vector, e.g. 1,2,1")
        p.add_argument("--orientation", help="orientation word such as RRL (implies w = w_Q)")
        p.add_argument("--w", help="explicit permutation sequence such as 1/12/123")

    p = sub.add_parser("laces", help="list lace classes with statistics and codimensions")
    quiver_opts(p)
    common(p)
    p.set_defaults(func=cmd_laces)

    p = sub.add_parser("verify", help="verify an identity by exact coefficient comparison")
    p.add_argument("identity", choices=identities.IDENTITIES)
    quiver_opts(p)
    p.add_argument("--N", type=int, default=identities.DEFAULT_TRUNC_Q, help="q truncation (inclusive)")
    p.add_argument("--M", type=int, default=identities.DEFAULT_TRUNC_Z, help="z truncation (inclusive)")
    p.add_argument("--check-oracle", action="store_true", help="cross-check codimensions against Ext")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bijection", help="cut (phi) or glue (psi) multipartitions")
    p.add_argument("direction", choices=("phi", "psi"))
    quiver_opts(p)
    p.add_argument("--parts", help='multipartition, lambda^(1) first: "2,1 / 5,1 / 3,3,2,1,1"')
    p.add_argument("--cut", help="cut data JSON file for psi ('-' reads stdin)")
    common(p, ("text", "json"))
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("wq", help="permutation sequence of an orientation word")
    p.add_argument("orientation")
    p.add_argument("--out")
    p.set_defaults(func=cmd_wq)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
