"""Command-line front end.

    excmut <subcommand> --quiver a2.json [options]

Reports are JSON with sorted keys (or DOT for ``homext``), written to
stdout or ``--out``.  Exit status: 0 on success, 1 on bad input, 2 when a
mathematical invariant failed to hold.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import cluster, derived, excseq, homext, placement, verify
from .errors import DomainError, InternalInconsistency, ParseError, UnsupportedFormat
from .quiver import Quiver, is_dynkin, parse_quiver
from .repcat import (
    Stalk,
    enumerate_indecomposables,
    is_injective_module,
    is_isomorphic,
    is_exceptional,
    is_projective_module,
    projective,
    injective,
    simple,
)

SUBCOMMANDS = ("indec", "excseq", "mutate", "homext", "silting", "cluster", "complements", "place", "verify-all")


def parse_quiver_file(path: str) -> Quiver:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return parse_quiver(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


# argument resolution

_STANDARD = re.compile(r"^([PIS])_?(\d+)$")
_DIMS = re.compile(r"^\d+(:\d+)*$")
_LABEL = re.compile(r"^M\((\d+(?:,\d+)*)\)$")
_STALK = re.compile(r"^(.+?)\[(-?\d+)\]$")


def _distinct(mods):
    out = []
    for M in mods:
        if not any(is_isomorphic(M, N) for N in out):
            out.append(M)
    return out


def resolve_module(q: Quiver, token: str):
    """A module from ``P2``, ``S_1``, ``I3``, or a dimension vector ``1:0:1`` or ``M(1,0,1)``."""
    token = token.strip()
    lab = _LABEL.match(token)
    if lab:
        token = lab.group(1).replace(",", ":")
    m = _STANDARD.match(token)
    if m:
        kind, i = m.group(1), int(m.group(2))
        if not 1 <= i <= q.n:
            raise DomainError(f"{token}: vertex {i} outside 1..{q.n}")
        return {"P": projective, "I": injective, "S": simple}[kind](q, i - 1)
    if _DIMS.match(token):
        dim = tuple(int(x) for x in token.split(":"))
        if len(dim) != q.n:
            raise DomainError(f"{token}: expected {q.n} entries")
        if is_dynkin(q):
            pool = list(enumerate_indecomposables(q))
        else:
            # exceptional modules are determined by their dimension vector
            pool = [f(q, i) for f in (projective, injective, simple) for i in range(q.n)]
        found = _distinct(M for M in pool if M.dim == dim)
        if not found:
            raise DomainError(f"{token}: no known indecomposable with this dimension vector")
        if len(found) > 1:
            raise DomainError(f"{token}: ambiguous dimension vector")
        return found[0]
    raise DomainError(f"cannot read module name {token!r}; use P_i, I_i, S_i or a:b:c")


def resolve_stalk(q: Quiver, token: str) -> Stalk:
    """``S1[2]`` is the simple at vertex 1 in degree 2."""
    m = _STALK.match(token.strip())
    if not m:
        raise DomainError(f"{token!r} needs a degree, as in S1[0]")
    return Stalk(resolve_module(q, m.group(1)), int(m.group(2)))


def _split(csv: str | None) -> list[str]:
    if not csv:
        return []
    # commas inside M(...) labels do not separate items
    return [t for t in (s.strip() for s in re.split(r",(?![^()]*\))", csv)) if t]


def parse_window(text: str) -> tuple[int, int]:
    m = re.match(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$", text or "")
    if not m:
        raise DomainError(f"window must look like LO..HI, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise DomainError(f"empty window {text}")
    return lo, hi


# report helpers


def _stalk_json(s: Stalk) -> dict:
    return {"module": s.module.label(), "dim": list(s.module.dim), "degree": s.shift}


def _stalks_json(stalks) -> list:
    return [_stalk_json(s) for s in sorted(stalks, key=lambda s: (s.shift, s.module.dim))]


def emit_report(result, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(result, sort_keys=True, indent=2) + "\n"
    if fmt == "dot":
        if isinstance(result, homext.HomExtQuiver):
            return homext.emit_dot(result)
        raise UnsupportedFormat("only homext reports have a DOT form")
    raise UnsupportedFormat(f"unknown format {fmt!r}")


def _need(args, name):
    if getattr(args, name) in (None, ""):
        raise DomainError(f"{args.command} needs --{name}")
    return getattr(args, name)


def _sequence(q, args):
    return excseq.ExceptionalSequence(tuple(resolve_module(q, t) for t in _split(_need(args, "sequence"))))


# subcommands


def cmd_indec(q, args):
    return [{"module": M.label(), "dim": list(M.dim), "exceptional": is_exceptional(M),
             "projective": is_projective_module(M), "injective": is_injective_module(M)}
            for M in enumerate_indecomposables(q)]


def cmd_excseq(q, args):
    if args.enumerate:
        seqs = excseq.enumerate_complete_sequences(q)
        return {"count": len(seqs), "sequences": [s.labels() for s in seqs]}
    seq = _sequence(q, args)
    out = {"sequence": seq.labels(), "complete": seq.is_complete()}
    if len(seq) == q.n - 1:
        out["complements"] = [{"position": j + 1, "module": M.label(), "dim": list(M.dim)}
                              for j, M in excseq.complements_almost_complete(seq)]
    return out


def cmd_mutate(q, args):
    seq = _sequence(q, args)
    i = _need(args, "index")
    if not 1 <= i < len(seq):
        raise DomainError(f"--index must lie in 1..{len(seq) - 1}")
    new = excseq.mutate_inverse(seq, i) if args.inverse else excseq.mutate(seq, i)
    return {"before": seq.labels(), "index": i, "inverse": bool(args.inverse), "after": new.labels(),
            "dims": [list(E.dim) for E in new]}


def cmd_homext(q, args):
    g = homext.build(_sequence(q, args))
    if args.format == "dot":
        return g
    return {"vertices": [E.label() for E in g.vertices],
            "arrows": [{"from": a + 1, "to": b + 1, "decoration": d} for a, b, d in g.arrows],
            "acyclic": homext.is_acyclic(g), "connected": homext.is_connected(g)}


def _candidate(q, args):
    tokens = _split(_need(args, "sequence"))
    if all(_STALK.match(t) for t in tokens):
        return derived.SiltingCandidate(tuple(resolve_stalk(q, t) for t in tokens))
    if any(_STALK.match(t) for t in tokens):
        raise DomainError("give a degree for every summand or for none")
    # bare modules: the staircase placement E_i[i]
    return derived.staircase([resolve_module(q, t) for t in tokens])


def cmd_silting(q, args):
    T = _candidate(q, args)
    order = derived.silting_order(T)
    return {"summands": T.to_json(), "partial_silting": derived.is_partial_silting(T),
            "silting": derived.is_silting(T), "order": order.labels() if order else None}


def _m(args) -> int:
    m = args.m
    if m is None or m < 1:
        raise DomainError(f"{args.command} needs --m >= 1")
    return m


def cmd_cluster(q, args):
    m = _m(args)
    T = [resolve_stalk(q, t) for t in _split(_need(args, "sequence"))]
    outside = [s for s in T if not cluster.in_domain(s, m)]
    if outside:
        raise DomainError(f"outside the fundamental domain for m={m}: {outside}")
    return {"m": m, "summands": _stalks_json(T), "m_rigid": cluster.is_m_rigid(T, m),
            "m_cluster_tilting": cluster.is_m_cluster_tilting(T, m)}


def _triangle_json(left, middle, right) -> dict:
    return {"left": _stalk_json(left), "middle": _stalks_json(middle), "right": _stalk_json(right)}


def cmd_complements(q, args):
    T = [resolve_stalk(q, t) for t in _split(_need(args, "sequence"))]
    if args.window:
        lo, hi = parse_window(args.window)
        recs = derived.silting_complements_in_window(derived.SiltingCandidate(tuple(T)), (lo, hi))
        recs.sort(key=lambda r: (r.stalk.shift, r.stalk.module.dim))
        return {"window": [lo, hi], "complements": [
            {"complement": _stalk_json(r.stalk),
             "triangle": _triangle_json(r.triangle.left, r.triangle.middle, r.triangle.right)}
            for r in recs]}
    m = _m(args)
    tris = cluster.exchange_triangles(T, m)
    chain = cluster.complements(T, m)
    return {"m": m, "complements": [_stalk_json(s) for s in chain],
            "triangles": [dict(_triangle_json(t.left, t.middle, t.right),
                               left_map=t.f_class, right_map=t.g_class, in_D=t.in_d) for t in tris]}


def cmd_place(q, args):
    if q.n == 1:
        # the almost complete sequence is empty
        p = placement.place_rank_one(q)
    else:
        p = placement.place_almost_complete(_sequence(q, args))
    out = p.to_json()
    out["verified"] = {k: ok for k, (ok, _) in sorted(placement.verify_placement(p).items())}
    return out


def cmd_verify_all(q, args):
    max_m = args.max_m if args.max_m is not None else 1
    if max_m < 1:
        raise DomainError("--max-m must be >= 1")
    results = verify.verify_all(q, max_m)
    failed = [r.name for r in results if not r.ok]
    report = {"suites": [r.to_json() for r in results], "all_passed": not failed}
    if failed:
        raise _SuiteFailure(report, failed)
    return report


class _SuiteFailure(InternalInconsistency):
    def __init__(self, report, failed):
        super().__init__("failed suites: " + ", ".join(failed))
        self.report = report


HANDLERS = {
    "indec": cmd_indec, "excseq": cmd_excseq, "mutate": cmd_mutate, "homext": cmd_homext,
    "silting": cmd_silting, "cluster": cmd_cluster, "complements": cmd_complements,
    "place": cmd_place, "verify-all": cmd_verify_all,
}


class _Parser(argparse.ArgumentParser):
    # usage errors are bad input (exit 1); exit 2 is kept for failed invariants
    def error(self, message):
        raise DomainError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="excmut", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=SUBCOMMANDS)
    p.add_argument("--quiver", required=True, metavar="PATH")
    p.add_argument("--m", type=int)
    p.add_argument("--max-m", type=int, dest="max_m")
    p.add_argument("--window", metavar="LO..HI")
    p.add_argument("--sequence", metavar="CSV")
    p.add_argument("--index", type=int)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--format", default="json")
    return p


def run(argv) -> tuple[int, str, str | None]:
    """``(exit status, text, output path)``; the text is the report or an error message."""
    out = None
    try:
        args = build_parser().parse_args(argv)
        out = args.out
        if args.format not in ("json", "dot"):
            raise UnsupportedFormat(f"unknown format {args.format!r}")
        if args.format == "dot" and args.command != "homext":
            raise UnsupportedFormat("only homext reports have a DOT form")
        q = parse_quiver_file(args.quiver)
        result = HANDLERS[args.command](q, args)
        return 0, emit_report(result, args.format), out
    except _SuiteFailure as exc:
        return 2, emit_report(exc.report), out
    except DomainError as exc:
        return 1, f"error: {exc}\n", None
    except InternalInconsistency as exc:
        return 2, f"invariant violated: {type(exc).__name__}: {exc}\n", None


def main(argv=None) -> int:
    status, text, out = run(sys.argv[1:] if argv is None else argv)
    if status and not text.startswith("{"):
        sys.stderr.write(text)
    elif out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status
