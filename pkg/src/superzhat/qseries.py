"""Sparse trivariate Laurent series in y, z with rational powers of q.

A series is a finite dictionary ``{(yexp, zexp, qexp): coeff}`` together with
a truncation :class:`Window`.  Terms outside the window are *absent* (unknown),
never zero.  All arithmetic is exact.
"""

import json
from dataclasses import dataclass
from fractions import Fraction


class WindowMismatch(ValueError):
    pass


class UnboundedBelow(ValueError):
    pass


class InfiniteQSupport(ValueError):
    pass


def as_rat(x):
    """Coerce ints, Fractions and strings like ``"3/2"`` to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def rat_str(x):
    """``"3/2"`` or ``"2"``."""
    return str(as_rat(x))


@dataclass(frozen=True)
class Window:
    """Truncation window: ``qexp < qmax`` and ``|yexp|, |zexp| <= ydeg``."""

    qmax: Fraction
    ydeg: int

    def __post_init__(self):
        object.__setattr__(self, "qmax", as_rat(self.qmax))
        if self.ydeg < 0:
            raise ValueError("ydeg must be nonnegative")

    def contains(self, yexp, zexp, qexp):
        return qexp < self.qmax and abs(yexp) <= self.ydeg and abs(zexp) <= self.ydeg


class TriSeries:
    """Immutable truncated series.

    Parameters
    ----------
    terms : dict
        Maps ``(yexp, zexp, qexp)`` to a coefficient.  Keys outside the window
        and zero coefficients are dropped.
    window : Window
    complete : bool
        Whether every term of the underlying exact object inside the window
        is present.
    qfinite : bool
        Whether each (yexp, zexp) fiber is known to have finite q-support that
        lies entirely inside the window.  Required by :func:`mirror_q`.
    """

    __slots__ = ("_terms", "window", "complete", "qfinite", "_key")

    def __init__(self, terms, window, complete=True, qfinite=False):
        clean = {}
        for (a, b, e), c in terms.items():
            e = as_rat(e)
            c = as_rat(c)
            if c != 0 and window.contains(a, b, e):
                clean[(int(a), int(b), e)] = c
        self._terms = clean
        self.window = window
        self.complete = complete
        self.qfinite = qfinite
        self._key = None

    # -- access -----------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """Terms in canonical order: ascending qexp, then yexp, then zexp."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1]))

    def coeff(self, yexp, zexp, qexp):
        return self._terms.get((yexp, zexp, as_rat(qexp)), Fraction(0))

    @property
    def qmin(self):
        if not self._terms:
            return None
        return min(k[2] for k in self._terms)

    def is_empty(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, TriSeries):
            return NotImplemented
        return self.window == other.window and self._terms == other._terms

    def __hash__(self):
        return hash((self.window, frozenset(self._terms.items())))

    def __repr__(self):
        head = ", ".join(f"{c}*y^{a}z^{b}q^{e}" for (a, b, e), c in self.items()[:6])
        more = "" if len(self) <= 6 else f", ... ({len(self)} terms)"
        return f"TriSeries([{head}{more}], qmax={self.window.qmax}, ydeg={self.window.ydeg})"

    # -- derived views ----------------------------------------------------
    def q_coefficients(self):
        """For a pure q-series, map qexp -> coeff."""
        out = {}
        for (a, b, e), c in self._terms.items():
            if a or b:
                raise ValueError("series has nonzero y/z degrees")
            out[e] = c
        return dict(sorted(out.items()))

    def restrict(self, window):
        """Re-truncate to a window contained in the current one."""
        if window.qmax > self.window.qmax or window.ydeg > self.window.ydeg:
            raise WindowMismatch("restriction must shrink the window")
        return TriSeries(self._terms, window, self.complete, self.qfinite)

    def drop_q0(self):
        """The q-dependent part: every term whose qexp is nonzero."""
        kept = {k: c for k, c in self._terms.items() if k[2] != 0}
        return TriSeries(kept, self.window, self.complete, self.qfinite)

    # -- operator sugar ---------------------------------------------------
    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, TriSeries):
            return series_mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__


def zero(window):
    return TriSeries({}, window)


def monomial(window, coeff=1, yexp=0, zexp=0, qexp=0):
    return TriSeries({(yexp, zexp, as_rat(qexp)): as_rat(coeff)}, window, qfinite=True)


def from_q_dict(coeffs, window):
    """Pure q-series from ``{qexp: coeff}``."""
    return TriSeries({(0, 0, as_rat(e)): c for e, c in coeffs.items()}, window)


def scale(a, c):
    c = as_rat(c)
    return TriSeries({k: v * c for k, v in a._terms.items()}, a.window, a.complete, a.qfinite)


def series_add(a, b):
    if a.window != b.window:
        raise WindowMismatch(f"{a.window} != {b.window}")
    out = dict(a._terms)
    for k, v in b._terms.items():
        out[k] = out.get(k, 0) + v
    return TriSeries(out, a.window, a.complete and b.complete, a.qfinite and b.qfinite)


def _degree_free(s):
    return all(a == 0 and b == 0 for a, b, _ in s._terms)


def series_mul(a, b):
    """Truncated Cauchy product on the shared window.

    The result is flagged complete only when that can be certified from the
    operands' metadata: both complete, nonnegative q-support, and one factor a
    pure q-series (so no y/z degree can cancel back into the window).
    """
    if a.window != b.window:
        raise WindowMismatch(f"{a.window} != {b.window}")
    for s in (a, b):
        if getattr(s, "unbounded_below", False):
            raise UnboundedBelow("operand has no finite qmin")
    w = a.window
    out = {}
    for (ya, za, qa), ca in a._terms.items():
        for (yb, zb, qb), cb in b._terms.items():
            q = qa + qb
            if q >= w.qmax:
                continue
            k = (ya + yb, za + zb, q)
            out[k] = out.get(k, 0) + ca * cb
    qa, qb = a.qmin, b.qmin
    nonneg = (qa is None or qa >= 0) and (qb is None or qb >= 0)
    complete = a.complete and b.complete and nonneg and (_degree_free(a) or _degree_free(b))
    return TriSeries(out, w, complete, a.qfinite and b.qfinite)


def invert_vars(a):
    """(y, z) -> (1/y, 1/z).  The window is symmetric, so nothing is clipped."""
    out = {(-y, -z, q): c for (y, z, q), c in a._terms.items()}
    return TriSeries(out, a.window, a.complete, a.qfinite)


def mirror_q(a):
    """q -> 1/q on a series whose (y, z) fibers are finite and fully present.

    The new window's qmax is one more than the largest mirrored exponent, so
    every stored term survives.
    """
    if not a.qfinite:
        raise InfiniteQSupport("q-support of some (y,z) fiber is not known to be finite")
    out = {(y, z, -q): c for (y, z, q), c in a._terms.items()}
    top = max((k[2] for k in out), default=Fraction(0))
    w = Window(max(Fraction(1), top + 1), a.window.ydeg)
    return TriSeries(out, w, a.complete, True)


# -- serialization ------------------------------------------------------------

def to_text(a):
    lines = [
        f"# window qmax={rat_str(a.window.qmax)} ydeg={a.window.ydeg}",
        f"# qmin={'none' if a.qmin is None else rat_str(a.qmin)}",
        f"# complete={int(a.complete)} qfinite={int(a.qfinite)}",
    ]
    for (y, z, q), c in a.items():
        lines.append(f"{c} q^{rat_str(q)} y^{y} z^{z}")
    return "\n".join(lines) + "\n"


def from_text(text):
    qmax = ydeg = None
    complete, qfinite = True, False
    terms = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                if "=" not in tok:
                    continue
                key, val = tok.split("=", 1)
                if key == "qmax":
                    qmax = Fraction(val)
                elif key == "ydeg":
                    ydeg = int(val)
                elif key == "complete":
                    complete = bool(int(val))
                elif key == "qfinite":
                    qfinite = bool(int(val))
            continue
        c, q, y, z = line.split()
        terms[(int(y[2:]), int(z[2:]), Fraction(q[2:]))] = Fraction(c)
    if qmax is None or ydeg is None:
        raise ValueError("missing window header")
    return TriSeries(terms, Window(qmax, ydeg), complete, qfinite)


def to_json(a):
    doc = {
        "window": {"qmax": rat_str(a.window.qmax), "ydeg": a.window.ydeg},
        "qmin": None if a.qmin is None else rat_str(a.qmin),
        "complete": a.complete,
        "qfinite": a.qfinite,
        "terms": [
            {"coeff": str(c), "q": rat_str(q), "y": y, "z": z} for (y, z, q), c in a.items()
        ],
    }
    return json.dumps(doc, indent=1)


def from_json(text):
    doc = json.loads(text) if isinstance(text, str) else text
    w = Window(Fraction(doc["window"]["qmax"]), int(doc["window"]["ydeg"]))
    terms = {(t["y"], t["z"], Fraction(t["q"])): Fraction(t["coeff"]) for t in doc["terms"]}
    return TriSeries(terms, w, doc.get("complete", True), doc.get("qfinite", False))
