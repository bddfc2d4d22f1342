"""Command-line front-end.

Usage errors exit with status 2, computation errors with status 1 and a JSON
diagnostic on stderr.  Output contains no timestamps, so identical
invocations give identical bytes.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import zhat as zhat_mod
from .chambers import find_good_chambers
from .knotfk import (FkDecomposition, fk, framed_unknot_series, knot_chambers, solid_torus_series,
                     zhat_knot)
from .plumbing import LabelPair, SeifertData, graph_from_dict, seifert_to_graph
from .qseries import TriSeries, Window, rat_str, to_json, to_text
from .surgery import (SurgerySlope, glue_graphs, glue_knot_graphs, surgery_labels,
                      surgery_on_knot)
from .torusknots import (TorusKnot, box_window, closed_form_series, mirror_fk, torus_fk,
                         torus_knot_graph)

DEFAULT_QMAX = 10
DEFAULT_YDEG = 12


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Settings shared by every command, validated once."""

    command: str
    window: Window = None
    fmt: str = "text"
    threads: int = 1
    radius_cap: int = None

    @classmethod
    def from_args(cls, args):
        window = None
        if hasattr(args, "qmax"):
            if args.qmax <= 0:
                raise UsageError("--qmax must be positive")
            if args.ydeg < 0:
                raise UsageError("--ydeg must be nonnegative")
            window = Window(args.qmax, args.ydeg)
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        if args.radius_cap is not None and args.radius_cap < 1:
            raise UsageError("--radius-cap must be positive")
        return cls(args.command, window, args.format, args.threads, args.radius_cap)


# -----------------------------------------------------------------------------
# input helpers
# -----------------------------------------------------------------------------

def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _load_source(args, allow_torus=False):
    """``(kind, graph, extra)`` from exactly one of --graph, --seifert, --torus."""
    given = [n for n in ("graph", "seifert", "torus") if getattr(args, n, None)]
    if len(given) != 1:
        choices = "--graph, --seifert" + (", --torus" if allow_torus else "")
        raise UsageError(f"give exactly one of {choices}")
    kind = given[0]
    if kind == "graph":
        return kind, graph_from_dict(_read_json(args.graph)), None
    if kind == "seifert":
        doc = _read_json(args.seifert)
        return kind, seifert_to_graph(SeifertData(doc["b"], tuple(map(tuple, doc["pairs"])))), None
    s, t = _ints(args.torus, 2, "--torus")
    k = TorusKnot(s, t)
    return kind, torus_knot_graph(k), k


def _ints(text, count=None, flag=""):
    try:
        vals = tuple(int(x) for x in text.split(",")) if text else ()
    except ValueError:
        raise UsageError(f"{flag} expects comma separated integers")
    if count is not None and len(vals) != count:
        raise UsageError(f"{flag} expects {count} integers")
    return vals


def _rat(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text}")


def _slope(text):
    p, _, r = text.partition("/")
    try:
        return int(p), int(r or 1)
    except ValueError:
        raise UsageError(f"--slope expects p or p/r, got {text}")


def _label_for(g, b, c):
    if not b and not c:
        return LabelPair((0,) * g.size, (0,) * g.size)
    b = b or (0,) * g.size
    c = c or (0,) * g.size
    if len(b) != g.size or len(c) != g.size:
        raise UsageError(f"labels need {g.size} entries")
    return LabelPair(b, c)


def _chambers(g, which):
    found = find_good_chambers(g)
    if not found:
        raise zhat_mod.BadChamber("graph has no good chamber")
    plus, minus = found[0], found[1]
    return {"plus": [plus], "minus": [minus], "both": [plus, minus]}[which]


# -----------------------------------------------------------------------------
# output helpers
# -----------------------------------------------------------------------------

def _csv(v):
    return ",".join(str(x) for x in v)


def _chamber_str(ch):
    return " ".join(f"{v}:{a:+d}" for v, a in ch.alpha)


def _chamber_name(ch):
    return {1: "plus", -1: "minus"}.get(ch.sign, "unnamed")


def _qlines(coeffs):
    return [f"q^{rat_str(e)} {c}" for e, c in sorted(coeffs.items()) if c]


def _qjson(coeffs):
    return [{"q": rat_str(e), "coeff": str(c)} for e, c in sorted(coeffs.items()) if c]


class Output:
    """Collects text sections or JSON records and writes them once."""

    def __init__(self, fmt, command):
        self.fmt = fmt
        self.command = command
        self.lines = []
        self.records = []

    def section(self, header, body_lines, record):
        self.lines.append(f"# {header}")
        self.lines.extend(body_lines)
        self.records.append(record)

    def series(self, header, ser, record):
        if self.fmt == "json":
            record = dict(record, series=json.loads(to_json(ser)))
        self.section(header, to_text(ser).rstrip("\n").splitlines(), record)

    def write(self, stream):
        if self.fmt == "json":
            stream.write(json.dumps({"command": self.command, "results": self.records},
                                    indent=1) + "\n")
        else:
            stream.write("\n".join(self.lines) + "\n")


# -----------------------------------------------------------------------------
# commands
# -----------------------------------------------------------------------------

def cmd_chambers(args, out):
    _, g, _ = _load_source(args)
    for ch in find_good_chambers(g):
        name = _chamber_name(ch)
        out.section(f"{name} {_chamber_str(ch)}", [],
                    {"name": name, "alpha": {str(v): a for v, a in ch.alpha},
                     "conjectural": ch.conjectural})
    if not out.records:
        out.section("no good chamber", [], {"name": None})
    return 0


def _zhat_record(res):
    return {"b": list(res.label.bvec), "c": list(res.label.cvec),
            "chamber": _chamber_name(res.chamber), "radius": res.enumRadius,
            "constant": str(res.constant), "coefficients": _qjson(res.q_part())}


def _zhat_emit(out, res, qmax):
    head = (f"zhat b={_csv(res.label.bvec)} c={_csv(res.label.cvec)} "
            f"chamber={_chamber_name(res.chamber)} qmax={rat_str(qmax)}")
    body = [f"# q^0 accumulated at radius {res.enumRadius}: {res.constant}"]
    out.section(head, body + _qlines(res.q_part()), _zhat_record(res))


def cmd_zhat(args, out):
    _, g, _ = _load_source(args)
    w = Window(args.qmax, 0)
    for ch in _chambers(g, args.chamber):
        if args.all_labels:
            results = zhat_mod.zhat_all_labels(g, ch, w, threads=args.threads)
            for lab in sorted(results, key=lambda l: (l.bvec, l.cvec)):
                _zhat_emit(out, results[lab], args.qmax)
        else:
            lab = _label_for(g, _ints(args.b, None, "--b"), _ints(args.c, None, "--c"))
            _zhat_emit(out, zhat_mod.zhat_closed(g, lab, ch, w), args.qmax)
    return 0


def _fk_emit(out, head, ser, dec, record):
    out.series(head, ser, record)
    if dec is not None:
        lines = [f"# constant {dec.constant}"]
        rec = {"constant": str(dec.constant), "coefficients": []}
        for (m, n), qs in dec.coeffs.items():
            lines.append(f"f_{m},{n} " + " + ".join(f"{c} q^{rat_str(e)}" for e, c in qs.items()))
            rec["coefficients"].append({"m": m, "n": n, "series": _qjson(qs)})
        out.section("decomposition y^m/z^n - z^n/y^m", lines, rec)


def cmd_fk(args, out):
    w = Window(args.qmax, args.ydeg)
    if args.unknot_framing is not None or args.solid_torus:
        if args.unknot_framing is not None and args.solid_torus:
            raise UsageError("--unknot-framing and --solid-torus are exclusive")
        if args.graph or args.seifert:
            raise UsageError("closed forms take no graph input")
        signs = {"plus": [1], "minus": [-1], "both": [1, -1]}[args.chamber]
        b, c = args.b or 0, args.c or 0
        for sgn in signs:
            if args.unknot_framing is not None:
                p = args.unknot_framing
                ser = framed_unknot_series(p, b, c, args.n, args.m, sgn, w)
                head = f"unknot framing={p}"
            else:
                p, r = _slope(args.solid_torus)
                ser = solid_torus_series(p, r, b, c, args.n, args.m, sgn, w)
                head = f"solid torus slope={p}/{r}"
            head += f" b={b} c={c} n={args.n} m={args.m} chamber={'plus' if sgn == 1 else 'minus'}"
            out.series(head, ser, {"chamber": "plus" if sgn == 1 else "minus"})
        return 0
    _, g, _ = _load_source(args)
    if g.distinguished is None:
        raise UsageError("fk needs a graph with a distinguished vertex")
    if args.chamber == "both":
        ks, dec, _ = fk(g, w, decompose=args.decompose)
        _fk_emit(out, "F_K", ks.series, dec, {"chamber": "both"})
        return 0
    plus, minus = knot_chambers(g)
    ch = plus if args.chamber == "plus" else minus
    half = zhat_knot(g, None, 0, 0, ch, w)
    _fk_emit(out, f"F_K half chamber={args.chamber}", half.series, None,
             {"chamber": args.chamber})
    return 0


def cmd_fk_torus(args, out):
    k = TorusKnot(args.s, args.t)
    w = Window(args.qmax, args.ydeg)
    name = f"T({k.s},{k.t})"
    if args.closed_form:
        if k.s != 2:
            raise UsageError("--closed-form is available for T(2, 2l+1) only")
        ser = closed_form_series((k.t - 1) // 2, w)
        _fk_emit(out, f"F_{name} closed form", ser, None, {"knot": name, "method": "closed-form"})
        return 0
    if args.mirror:
        ks, _, _ = torus_fk(k, box_window(k, w.ydeg), decompose=False)
        mirrored = mirror_fk(ks).series
        ser = TriSeries(mirrored.terms, w)
        _fk_emit(out, f"F_{name} mirror", ser,
                 FkDecomposition.from_series(ser) if args.decompose else None, {"knot": name, "mirror": True})
        return 0
    ks, dec, _ = torus_fk(k, w, decompose=args.decompose)
    _fk_emit(out, f"F_{name}", ks.series, dec, {"knot": name})
    return 0


def cmd_surgery(args, out):
    kind, g, k = _load_source(args, allow_torus=True)
    if g.distinguished is None:
        raise UsageError("surgery needs a knot graph (distinguished vertex)")
    p, r = _slope(args.slope)
    slope = SurgerySlope.of(p, r)
    w = Window(args.qmax, 0)
    labels = [_ints(args.label, 2, "--label")] if args.label else surgery_labels(slope)
    parts = None
    results = []
    for lab in labels:
        res, parts = surgery_on_knot(g, slope, lab, w, fk_parts=parts)
        results.append(res)
        b, c = res.label.bvec[0], res.label.cvec[0]
        out.section(f"surgery slope={p}/{r} label={b},{c} qmax={rat_str(args.qmax)}",
                    [f"# q^0 finite part: {res.constant}"] + _qlines(res.q_part()),
                    {"slope": f"{p}/{r}", "b": b, "c": c, "constant": str(res.constant),
                     "coefficients": _qjson(res.q_part())})
    if args.verify_against_plumbing:
        return _verify_closed(out, glue_graphs(g, slope.chain), [r.q_part() for r in results],
                              w, args.threads)
    return 0


def _verify_closed(out, closed, branches, w, threads):
    """Every computed branch must appear among zhat_closed of the glued graph
    over all labels (q^0 excluded)."""
    found = find_good_chambers(closed)
    if not found:
        out.section("verify: glued graph has no good chamber", [], {"verified": None})
        return 1
    res = zhat_mod.zhat_all_labels(closed, found[0], w, threads=threads)
    known = {tuple(sorted(r.q_part().items())) for r in res.values()}
    missing = [i for i, b in enumerate(branches) if tuple(sorted(b.items())) not in known]
    ok = not missing
    out.section(f"verify against plumbing: {'ok' if ok else 'MISMATCH'}",
                [f"# branch {i} not found" for i in missing],
                {"verified": ok, "missing": missing})
    return 0 if ok else 1


def cmd_glue(args, out):
    g1 = graph_from_dict(_read_json(args.left))
    g2 = graph_from_dict(_read_json(args.right))
    w = Window(args.qmax, 0)
    sign = -1 if args.chamber == "minus" else 1
    ser, closed = glue_knot_graphs(g1, g2, w, sign, args.ydeg, args.nm_bound)
    coeffs = {e: c for e, c in ser.q_coefficients().items() if e != 0}
    out.section(f"glue qmax={rat_str(args.qmax)} ydeg={args.ydeg} chamber={args.chamber}",
                _qlines(coeffs), {"coefficients": _qjson(coeffs),
                                  "glued_graph": closed.to_dict()})
    if args.verify_against_plumbing:
        found = find_good_chambers(closed)
        if not found:
            out.section("verify: glued graph has no good chamber", [], {"verified": None})
            return 1
        lab = LabelPair((0,) * closed.size, (0,) * closed.size)
        ref = zhat_mod.zhat_closed(closed, lab, found[0], w).q_part()
        ok = ref == coeffs
        out.section(f"verify against plumbing: {'ok' if ok else 'MISMATCH'}",
                    [] if ok else _qlines(ref), {"verified": ok})
        return 0 if ok else 1
    return 0


def cmd_verify(args, out):
    from .verify import run_suite
    selected = set(_ints(args.criteria, None, "--criteria")) if args.criteria else None
    results = run_suite(selected, cases=args.cases)
    for res in results:
        out.section(res.line(), [f"#   {d}" for d in res.details],
                    {"criterion": res.number, "name": res.name, "passed": res.passed,
                     "details": res.details})
    return 0 if all(r.passed for r in results) else 1


# -----------------------------------------------------------------------------
# parser
# -----------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--radius-cap", type=int, default=None,
                        help=f"enumeration radius cap (also ${zhat_mod.RADIUS_CAP_ENV})")

    window = argparse.ArgumentParser(add_help=False)
    window.add_argument("--qmax", type=_rat, default=Fraction(DEFAULT_QMAX))
    window.add_argument("--ydeg", type=int, default=DEFAULT_YDEG)

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--graph", help="plumbing graph JSON")
    source.add_argument("--seifert", help="Seifert data JSON")

    chamber = argparse.ArgumentParser(add_help=False)
    chamber.add_argument("--chamber", choices=("plus", "minus", "both"), default="both")

    parser = argparse.ArgumentParser(prog="superzhat",
                                     description="sl(2|1) q-series of plumbed 3-manifolds")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("chambers", parents=[common, source], help="good chambers of a graph")

    p = sub.add_parser("zhat", parents=[common, window, source, chamber],
                       help="closed-manifold invariant")
    p.add_argument("--b", help="label b as csv")
    p.add_argument("--c", help="label c as csv")
    p.add_argument("--all-labels", action="store_true")

    p = sub.add_parser("fk", parents=[common, window, source, chamber],
                       help="knot-complement series")
    p.add_argument("--decompose", action="store_true")
    p.add_argument("--unknot-framing", type=int)
    p.add_argument("--solid-torus", metavar="P/R")
    for name in ("b", "c"):
        p.add_argument(f"--{name}", type=int)
    for name in ("n", "m"):
        p.add_argument(f"--{name}", type=int, default=0)

    p = sub.add_parser("fk-torus", parents=[common, window], help="F_K of a torus knot")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--closed-form", action="store_true")
    p.add_argument("--mirror", action="store_true")
    p.add_argument("--decompose", action="store_true")

    p = sub.add_parser("surgery", parents=[common, window, source], help="Dehn surgery")
    p.add_argument("--torus", metavar="S,T", help="torus knot instead of a graph file")
    p.add_argument("--slope", required=True, metavar="P[/R]")
    p.add_argument("--label", metavar="B,C")
    p.add_argument("--verify-against-plumbing", action="store_true")

    p = sub.add_parser("glue", parents=[common, window], help="glue two knot complements")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--chamber", choices=("plus", "minus"), default="plus")
    p.add_argument("--nm-bound", type=int)
    p.add_argument("--verify-against-plumbing", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="acceptance battery")
    p.add_argument("--suite", choices=("reference",), default="reference")
    p.add_argument("--criteria", help="csv of criterion numbers (default all)")
    p.add_argument("--cases", type=int, default=200, help="cases per property suite")
    return parser


COMMANDS = {
    "chambers": cmd_chambers,
    "zhat": cmd_zhat,
    "fk": cmd_fk,
    "fk-torus": cmd_fk_torus,
    "surgery": cmd_surgery,
    "glue": cmd_glue,
    "verify": cmd_verify,
}


def _diagnostic(exc):
    return json.dumps({"error": type(exc).__name__, "message": str(exc)})


# flags whose values may start with "-" (negative slopes such as -3/2)
_SIGNED_FLAGS = ("--slope", "--solid-torus", "--qmax")


def _attach_signed_values(argv):
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _SIGNED_FLAGS:
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def run(argv=None, stdout=None, stderr=None):
    """Parse ``argv``, run the command and return the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = _attach_signed_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        cfg = RunConfig.from_args(args)
    except UsageError as exc:
        stderr.write(f"superzhat: error: {exc}\n")
        return 2
    out = Output(cfg.fmt, cfg.command)
    saved = os.environ.get(zhat_mod.RADIUS_CAP_ENV)
    if cfg.radius_cap is not None:
        os.environ[zhat_mod.RADIUS_CAP_ENV] = str(cfg.radius_cap)
    try:
        status = COMMANDS[cfg.command](args, out)
    except UsageError as exc:
        stderr.write(f"superzhat: error: {exc}\n")
        return 2
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        stderr.write(_diagnostic(exc) + "\n")
        return 1
    finally:
        if cfg.radius_cap is not None:
            if saved is None:
                os.environ.pop(zhat_mod.RADIUS_CAP_ENV, None)
            else:
                os.environ[zhat_mod.RADIUS_CAP_ENV] = saved
    out.write(stdout)
    return status


def main():
    sys.exit(run())
