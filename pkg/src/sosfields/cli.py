"""Command-line front end.

    sosfields hunt --degree 3 --irreducible --count-only
    sosfields classify --degree 2
    sosfields sos decide -f x^2-5 -e 3,1
    sosfields zform witness -f x^2-2 -e 2,-1
    sosfields cyclo verify --q 16 --all

Exit codes: 0 success, 1 usage error, 2 search budget exhausted, 3 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import os
import subprocess
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from . import __version__
from .exact import poly as P
from .exact.roots import QuadIrrBound

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3

# options whose values may legitimately start with "-"
_VALUE_FLAGS = ("-e", "--element", "-f", "--poly")


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict
    version: str = __version__
    started: str = ""
    finished: str = ""
    output_sha256: str = ""

    def write(self, path: str) -> None:
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)


def _now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%S%z")


def _jsonable(obj):
    """JSON with integers beyond 64 bits as strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return obj if -(2**63) <= obj < 2**63 else str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _dump(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# argument helpers


def _parse_bound(text: str) -> QuadIrrBound:
    try:
        return QuadIrrBound.parse(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad --bound {text!r}: {exc}") from None


def _parse_coords(text: str) -> list:
    try:
        out = [Fraction(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed coordinates {text!r}") from None
    if not out:
        raise UsageError("empty coordinate list")
    return out


def _field_from_args(args):
    from .numfield.field import NumberField

    try:
        if args.field_file:
            with open(args.field_file) as fh:
                return NumberField.parse(fh.read())
        if not args.poly:
            raise UsageError("give -f POLY or --field-file")
        return NumberField(P.parse_poly(args.poly))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _element_from_args(fld, args):
    from .numfield.field import Element

    coords = _parse_coords(args.element)
    if len(coords) != fld.d:
        raise UsageError(f"expected {fld.d} coordinates, got {len(coords)}")
    if args.basis == "integral":
        if any(c.denominator != 1 for c in coords):
            raise UsageError("integral-basis coordinates must be integers")
        return Element.from_ivec(fld, [int(c) for c in coords])
    return fld.element(coords)


def _field_name(fld) -> str:
    return fld.name or P.format_poly(fld.f.coeffs)


# ---------------------------------------------------------------------------
# hunt


def _hunt_jobs(args):
    from .hunt import HuntJob

    if args.degree == 5 and not args.long_running:
        raise UsageError("degree 5 enumeration is long-running; pass --long-running")
    bound = _parse_bound(args.bound)
    if args.shard is not None and args.shards is None:
        raise UsageError("--shard needs --shards")
    k = args.shards or 1
    if k < 1:
        raise UsageError("--shards must be positive")
    if args.shard is not None and not 0 <= args.shard < k:
        raise UsageError(f"--shard must be in 0..{k - 1}")
    try:
        if args.shard is not None:
            return [HuntJob(args.degree, bound, args.irreducible, (args.shard, k))]
        return [HuntJob(args.degree, bound, args.irreducible, (i, k)) for i in range(k)]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _run_shard(job):
    from .hunt import enumerate_totally_real

    return list(enumerate_totally_real(job))


def _count_shard(job):
    from .hunt import count

    return count(job)


def cmd_hunt(args, out) -> int:
    from .hunt import HuntCheckpoint, format_jsonl, format_line, lex_key

    fmt = format_jsonl if args.jsonl else format_line
    if args.resume:
        if args.shards is not None and args.shards > 1 and args.shard is None:
            raise UsageError("--resume works on a single job")
        try:
            ckpt = HuntCheckpoint.load(args.resume)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read checkpoint: {exc}") from None
        if args.degree is not None and ckpt.job.degree != args.degree:
            raise UsageError("checkpoint degree differs from --degree")
        return _hunt_single(ckpt.job, ckpt, args, out, fmt)

    if args.degree is None:
        raise UsageError("--degree is required")
    jobs = _hunt_jobs(args)
    if len(jobs) == 1:
        return _hunt_single(jobs[0], None, args, out, fmt)
    if args.checkpoint:
        raise UsageError("--checkpoint applies to a single shard; add --shard i")

    # every shard, merged in traversal order
    workers = max(1, args.workers)
    if args.count_only:
        if workers > 1:
            from multiprocessing import Pool

            with Pool(workers) as pool:
                counts = pool.map(_count_shard, jobs)
        else:
            counts = [_count_shard(j) for j in jobs]
        out.write(f"{sum(counts)}\n")
        return EXIT_OK
    if workers > 1:
        from multiprocessing import Pool

        with Pool(workers) as pool:
            parts = pool.map(_run_shard, jobs)
    else:
        parts = [_run_shard(j) for j in jobs]
    merged = sorted((c for part in parts for c in part), key=lex_key)
    _emit_lines(args, out, (fmt(c) for c in merged))
    return EXIT_OK


def _emit_lines(args, out, lines) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            for line in lines:
                fh.write(line + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def _hunt_single(job, ckpt, args, out, fmt) -> int:
    from .hunt import HuntCheckpoint, enumerate_totally_real

    ckpt_path = args.checkpoint or args.resume
    sink = None
    if not args.count_only:
        if args.out:
            if ckpt is not None:
                # drop anything written after the checkpoint, then append
                _truncate_lines(args.out, ckpt.emitted)
                sink = open(args.out, "a")
            else:
                sink = open(args.out, "w")
        elif ckpt is not None:
            raise UsageError("resuming a listing needs --out (the file the first run wrote)")
        else:
            sink = out

    def on_top_done(top, emitted):
        if sink is not None:
            sink.flush()
            if sink is not out:
                os.fsync(sink.fileno())
        if ckpt_path:
            HuntCheckpoint(job, top, emitted).save(ckpt_path)

    n = ckpt.emitted if ckpt is not None else 0
    try:
        for coeffs in enumerate_totally_real(job, ckpt, on_top_done):
            n += 1
            if sink is not None:
                sink.write(fmt(coeffs) + "\n")
    finally:
        if sink is not None and sink is not out:
            sink.close()
    if args.count_only:
        out.write(f"{n}\n")
    return EXIT_OK


def _truncate_lines(path: str, keep: int) -> None:
    with open(path, "rb") as fh:
        data = fh.read()
    pos = 0
    for _ in range(keep):
        nxt = data.index(b"\n", pos)
        pos = nxt + 1
    with open(path, "wb") as fh:
        fh.write(data[:pos])


def cmd_merge(args, out) -> int:
    """Merge shard listings into traversal order."""
    from .hunt import format_line, lex_key

    coeffs = []
    for path in args.files:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("{"):
                    coeffs.append(tuple(json.loads(line)["coeffs"]))
                else:
                    coeffs.append(tuple(int(t) for t in line.split(",")))
    coeffs.sort(key=lex_key)
    if args.count_only:
        out.write(f"{len(coeffs)}\n")
    else:
        _emit_lines(args, out, (format_line(c) for c in coeffs))
    return EXIT_OK


# ---------------------------------------------------------------------------
# classify / sos / zform / cyclo


def cmd_classify(args, out) -> int:
    from .classify import SieveConfig, classify

    if args.degree == 5 and not args.long_running:
        raise UsageError("degree 5 classification is long-running; pass --long-running")
    if args.degree not in (2, 3, 4, 5):
        raise UsageError("--degree must be 2, 3 or 4")
    config = SieveConfig(args.trace_budget, args.node_budget, escalate=args.escalate)
    report = classify(args.degree, config=config, bound=_parse_bound(args.bound),
                      long_running=args.long_running)
    text = _dump(report.to_json())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        summary = {"counts": report.counts.to_json(), "survivors": report.survivors}
        out.write(_dump(summary))
    else:
        out.write(text)
    return EXIT_OK


def cmd_sos(args, out) -> int:
    from .sos import all_sos_decompositions, decide_sos

    fld = _field_from_args(args)
    mu = _element_from_args(fld, args)
    try:
        if args.all:
            certs = all_sos_decompositions(mu, node_budget=args.node_budget)
            res = {
                "field": _field_name(fld),
                "target": [str(c) for c in mu.int_ivec()] if mu.is_integral() else None,
                "verdict": "representable" if certs else "not_representable",
                "decompositions": len(certs),
                "certificates": [[[str(c) for c in v] for v in cert.vectors] for cert in certs],
            }
        else:
            r = decide_sos(mu, node_budget=args.node_budget)
            res = {"field": _field_name(fld), "target": [str(c) for c in mu.int_ivec()]}
            if r:
                res |= {"verdict": "representable", "parts": [[str(c) for c in v] for v in r.vectors]}
            else:
                res |= {"verdict": "not_representable", "nodes": r.nodes}
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res["basis"] = [[str(c) for c in row] for row in fld.basis]
    out.write(_dump(res))
    return EXIT_OK


def cmd_zform(args, out) -> int:
    from .sos import zform_obstruction

    fld = _field_from_args(args)
    alpha = _element_from_args(fld, args)
    try:
        rep = zform_obstruction(alpha, node_budget=args.node_budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = {"field": _field_name(fld)} | rep.to_json()
    res["decompositions"] = len(rep.decompositions)
    res["details"] = rep.to_json()["decompositions"]
    res["basis"] = [[str(c) for c in row] for row in fld.basis]
    out.write(_dump(res))
    return EXIT_OK


def cmd_cyclo(args, out) -> int:
    from .cyclo import degree_of, verify

    try:
        degree_of(args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    checks = list(verify(args.q))
    if not args.all:
        checks = checks[:2]
    rows = [("identity", "q", "expected", "computed", "status")]
    for c in checks:
        rows.append((c.identity, str(c.q), str(c.expected), str(c.computed), "PASS" if c.ok else "FAIL"))
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    for r in rows:
        out.write("  ".join(s.ljust(w) for s, w in zip(r, widths)).rstrip() + "\n")
    return EXIT_OK if all(c.ok for c in checks) else EXIT_VERIFY


def cmd_acceptance(args, out) -> int:
    here = os.path.dirname(os.path.abspath(__file__))
    suite = os.path.normpath(os.path.join(here, "..", "..", "tests", "test_acceptance.py"))
    if not os.path.exists(suite):
        raise UsageError(f"acceptance suite not found at {suite}")
    cmd = [sys.executable, "-m", "pytest", suite, "-s", "-q"]
    if args.long_running:
        cmd.append("--long-running")
    proc = subprocess.run(cmd)
    return EXIT_OK if proc.returncode == 0 else EXIT_VERIFY


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sosfields", description=__doc__.split("\n\n")[0])
    p.add_argument("--manifest", help="write a run manifest (JSON) to this path")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hunt", help="enumerate totally real polynomials with small house")
    h.add_argument("--degree", type=int)
    h.add_argument("--bound", default="2+sqrt6", help="house bound a+sqrt(b) (default 2+sqrt6)")
    h.add_argument("--irreducible", action="store_true")
    h.add_argument("--count-only", action="store_true")
    h.add_argument("--out")
    h.add_argument("--jsonl", action="store_true")
    h.add_argument("--checkpoint", help="write a checkpoint after each leading coefficient")
    h.add_argument("--resume", metavar="CHECKPOINT")
    h.add_argument("--shards", type=int)
    h.add_argument("--shard", type=int)
    h.add_argument("--workers", type=int, default=1)
    h.add_argument("--long-running", action="store_true")
    h.set_defaults(run=cmd_hunt)

    m = sub.add_parser("merge", help="merge shard listings into traversal order")
    m.add_argument("files", nargs="+")
    m.add_argument("--out")
    m.add_argument("--count-only", action="store_true")
    m.set_defaults(run=cmd_merge)

    c = sub.add_parser("classify", help="fields where every element of 2O+ is a sum of squares")
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--trace-budget", type=int)
    c.add_argument("--node-budget", type=int, default=2_000_000)
    c.add_argument("--bound", default="2+sqrt6")
    c.add_argument("--escalate", action="store_true", help="extend the scan for fields that survive")
    c.add_argument("--out")
    c.add_argument("--long-running", action="store_true")
    c.set_defaults(run=cmd_classify)

    def element_args(q):
        q.add_argument("-f", "--poly", help="defining polynomial, e.g. x^2-5 or -5,0,1")
        q.add_argument("--field-file", help="field description file (f = ..., basis = ...)")
        q.add_argument("-e", "--element", required=True, help="comma-separated coordinates")
        q.add_argument("--basis", choices=("power", "integral"), default="power")
        q.add_argument("--node-budget", type=int, default=2_000_000)

    s = sub.add_parser("sos", help="sums of squares")
    ssub = s.add_subparsers(dest="action", required=True)
    sd = ssub.add_parser("decide")
    element_args(sd)
    sd.add_argument("--all", action="store_true", help="list every decomposition")
    sd.set_defaults(run=cmd_sos)

    z = sub.add_parser("zform", help="parity obstruction to universal Z-forms")
    zsub = z.add_subparsers(dest="action", required=True)
    zw = zsub.add_parser("witness")
    element_args(zw)
    zw.set_defaults(run=cmd_zform)

    y = sub.add_parser("cyclo", help="identities in maximal real cyclotomic subfields")
    ysub = y.add_subparsers(dest="action", required=True)
    yv = ysub.add_parser("verify")
    yv.add_argument("--q", type=int, required=True)
    yv.add_argument("--all", action="store_true")
    yv.set_defaults(run=cmd_cyclo)

    a = sub.add_parser("acceptance", help="run the acceptance suite")
    a.add_argument("--long-running", action="store_true")
    a.set_defaults(run=cmd_acceptance)
    return p


def _normalize_argv(argv: list) -> list:
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[list] = None) -> int:
    from .sos import Indeterminate

    argv = _normalize_argv(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    params = {k: v for k, v in vars(args).items() if k not in ("run", "manifest")}
    manifest = RunManifest(subcommand=args.command, parameters=params, started=_now())
    buf = io.StringIO()
    try:
        code = args.run(args, buf)
    except UsageError as exc:
        print(f"sosfields: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Indeterminate as exc:
        sys.stdout.write(buf.getvalue())
        print(f"sosfields: indeterminate: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    text = buf.getvalue()
    sys.stdout.write(text)
    sys.stdout.flush()
    if args.manifest:
        digest = hashlib.sha256(text.encode())
        if getattr(args, "out", None) and os.path.exists(args.out):
            with open(args.out, "rb") as fh:
                digest.update(fh.read())
        manifest.finished = _now()
        manifest.output_sha256 = digest.hexdigest()
        manifest.write(args.manifest)
    return code


if __name__ == "__main__":
    sys.exit(main())
