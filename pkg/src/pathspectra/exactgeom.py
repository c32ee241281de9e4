"""Exact geometry kernel: scalar backends, a small LP solver, polytopes and their
oriented edge graphs, and planar projection with upper-chain extraction.

Everything here is deterministic and immutable after construction.  The rational
backend decides every predicate exactly; the float backend treats |a - b| <= tol
as a tie.  Float arithmetic is also used internally to *steer* exact searches
(propose a basis or a support), but verdicts on the rational backend are always
certified in exact arithmetic.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import (DegeneracyError, GenericityError, IndeterminateError,
                     InputError)


# ---------------------------------------------------------------------------
# Scalar backends
# ---------------------------------------------------------------------------

class ExactRational:
    """All values are Fractions; comparisons are exact."""

    name = "rational"
    tolerance = Fraction(0)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, float):
            # floats carry an exact binary value; callers wanting 1/3 must say so
            return Fraction(x)
        raise InputError(f"cannot coerce {x!r} to a rational")

    def pos(self, x):
        return x > 0

    def neg(self, x):
        return x < 0

    def zero(self, x):
        return x == 0

    def eq(self, a, b):
        return a == b

    def __repr__(self):
        return "ExactRational()"


class Float:
    """Plain floats with a tolerance: |a - b| <= tolerance counts as equal."""

    name = "float"

    def __init__(self, tolerance: float = 1e-9):
        if tolerance < 0:
            raise InputError("tolerance must be nonnegative")
        self.tolerance = tolerance

    def coerce(self, x):
        return float(x)

    def pos(self, x):
        return x > self.tolerance

    def neg(self, x):
        return x < -self.tolerance

    def zero(self, x):
        return abs(x) <= self.tolerance

    def eq(self, a, b):
        return abs(a - b) <= self.tolerance

    def __repr__(self):
        return f"Float(tolerance={self.tolerance})"


RATIONAL = ExactRational()
FLOAT = Float()

# Backend used when float arithmetic merely proposes a solution that exact
# arithmetic will certify.
_STEER = Float(1e-9)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# Linear programming (two-phase simplex, Bland's rule)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    objective: object = None
    solution: Optional[tuple] = None


class _Simplex:
    """Dense tableau simplex.  Columns: decision part then slack/artificial.

    Bland's rule (least-index entering, least basis-index on ratio ties)
    guarantees termination, which the rational backend turns into a decision
    procedure.
    """

    def __init__(self, backend):
        self.be = backend
        self.rows = []       # each: list of coefficients + rhs last
        self.basis = []
        self.ncols = 0
        self.banned = set()  # artificial columns may never re-enter

    def add_row(self, coeffs, rhs):
        self.rows.append(list(coeffs) + [rhs])
        self.ncols = max(self.ncols, len(coeffs))

    def _pad(self):
        for r in self.rows:
            rhs = r.pop()
            while len(r) < self.ncols:
                r.append(self._zero)
            r.append(rhs)

    def solve(self, cost, nx, zero):
        """Maximize cost over the current rows; return (status, objective_delta).

        `cost` has one entry per column (padded with zeros).  `nx` is the number
        of decision columns, kept only for callers to slice solutions.  Exact
        backends terminate by Bland's rule; float backends additionally get an
        iteration cap so tolerance jitter cannot stall, reporting "stalled".
        """
        self._zero = zero
        self._pad()
        be = self.be
        rows, basis = self.rows, self.basis
        m = len(rows)
        exact = be.name == "rational"
        cap = None if exact else 60 * (m + self.ncols) + 2000
        # reduced cost row: c_j - c_B . B^-1 A_j
        cr = list(cost) + [zero] * (self.ncols - len(cost))
        obj = zero
        for i in range(m):
            cb = cr[basis[i]] if basis[i] < len(cr) else zero
            if not be.zero(cb):
                row = rows[i]
                for j in range(self.ncols):
                    cr[j] -= cb * row[j]
                obj += cb * row[self.ncols]
                cr[basis[i]] = zero
        pivots = 0
        while True:
            enter = -1
            for j in range(self.ncols):
                if j not in self.banned and be.pos(cr[j]):
                    enter = j
                    break
            if enter < 0:
                return "optimal", obj
            leave, best, bestvar = -1, None, None
            for i in range(m):
                a = rows[i][enter]
                if be.pos(a):
                    ratio = rows[i][self.ncols] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < bestvar):
                        leave, best, bestvar = i, ratio, basis[i]
            if leave < 0:
                return "unbounded", obj
            pivots += 1
            if cap is not None and pivots > cap:
                return "stalled", obj
            obj += cr[enter] * best
            self._pivot(leave, enter, cr)

    def _pivot(self, i, j, cr):
        rows = self.rows
        width = self.ncols + 1
        piv = rows[i][j]
        if piv != 1:
            inv = piv
            rows[i] = [x / inv for x in rows[i]]
        prow = rows[i]
        for k in range(len(rows)):
            if k != i:
                f = rows[k][j]
                if f != 0:
                    rk = rows[k]
                    rows[k] = [rk[t] - f * prow[t] for t in range(width)]
        f = cr[j]
        if f != 0:
            for t in range(self.ncols):
                cr[t] -= f * prow[t]
        self.basis[i] = j

    def value_of(self, col):
        for i, b in enumerate(self.basis):
            if b == col:
                return self.rows[i][self.ncols]
        return self._zero


def _feasible_nonneg(columns, target, backend):
    """Solve sum_k lam_k columns[k] = target with lam >= 0 (phase-1 simplex).

    Returns the lam list, or None when the system is infeasible.  On the
    rational backend infeasibility is an exact certificate; a stalled float run
    raises IndeterminateError instead of guessing.
    """
    m = len(target)
    n = len(columns)
    be = backend
    zero = be.coerce(0)
    one = be.coerce(1)
    sp = _Simplex(be)
    sp.ncols = n + m
    for i in range(m):
        row = [be.coerce(columns[k][i]) for k in range(n)]
        b = be.coerce(target[i])
        if be.neg(b):
            row = [-x for x in row]
            b = -b
        art = [zero] * m
        art[i] = one
        sp.add_row(row + art, b)
        sp.basis.append(n + i)
        sp.banned.add(n + i)
    # maximize -(sum of artificials)
    cost = [zero] * n + [-one] * m
    status, obj = sp.solve(cost, n, zero)
    if status == "stalled":
        raise IndeterminateError("float phase-1 stalled")
    if status != "optimal" or be.neg(obj):
        return None
    lam = [zero] * n
    for i, b in enumerate(sp.basis):
        if b < n:
            lam[b] = sp.rows[i][sp.ncols]
    return lam


_highs_handle = None


def _highs():
    """Cached (linprog, numpy) pair, or False when scipy is unavailable."""
    global _highs_handle
    if _highs_handle is None:
        try:
            import numpy
            from scipy.optimize import linprog
            _highs_handle = (linprog, numpy)
        except Exception:
            _highs_handle = False
    return _highs_handle


def _solve_on_support(columns, support, target):
    """Exact particular solution of the subsystem restricted to `support`, or None."""
    m = len(target)
    s = len(support)
    aug = [[Fraction(columns[k][i]) for k in support] + [Fraction(target[i])]
           for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(s):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][s] != 0:
            return None
    lam = [Fraction(0)] * s
    for row_i, c in enumerate(piv_cols):
        lam[c] = aug[row_i][s]
    return lam


def _steered_feasible(columns, target):
    """Exactly certified lam >= 0 with sum lam_k columns[k] = target, or None.

    A float phase-1 proposes a support, exact elimination certifies it; None
    means "no certificate found", not "infeasible".
    """
    if not columns:
        return [] if all(Fraction(t) == 0 for t in target) else None
    try:
        fcols = [[float(x) for x in col] for col in columns]
        ftarget = [float(x) for x in target]
    except OverflowError:
        return None
    lam_f = None
    handle = _highs()
    if handle:
        linprog, np = handle
        res = linprog(np.zeros(len(fcols)), A_eq=np.array(fcols).T,
                      b_eq=np.array(ftarget), bounds=(0, None), method="highs")
        if res.status == 0 and res.x is not None:
            lam_f = res.x
        elif res.status == 2:
            return None
    if lam_f is None:
        try:
            lam_f = _feasible_nonneg(fcols, ftarget, _STEER)
        except IndeterminateError:
            return None
        if lam_f is None:
            return None
    support = [k for k, v in enumerate(lam_f) if v > 1e-9]
    lam_s = _solve_on_support(columns, support, target)
    if lam_s is None or any(x < 0 for x in lam_s):
        return None
    lam = [Fraction(0)] * len(columns)
    for k, v in zip(support, lam_s):
        lam[k] = v
    for i in range(len(target)):
        if sum(lam[k] * Fraction(columns[k][i]) for k in support) != Fraction(target[i]):
            return None
    return lam


def _rationalize(values, denominator):
    return tuple(Fraction(v).limit_denominator(denominator) for v in values)


def _strict_separation(columns, target):
    """Exactly certified y with <y, col> < 0 for every column and <y, target> > 0.

    Such a y exists whenever target escapes the (pointed) cone of the columns,
    so for edge tests the two certificate hunts cover both outcomes.  Found by
    a float max-min-slack LP and verified in exact arithmetic; None means no
    certificate found.
    """
    d = len(target)
    try:
        frows = [[float(x) for x in col] for col in columns]
        ftarget = [float(x) for x in target]
    except OverflowError:
        return None
    y_float = None
    handle = _highs()
    if handle:
        linprog, np = handle
        a_ub = [row + [1.0] for row in frows]
        a_ub.append([-x for x in ftarget] + [1.0])
        res = linprog(np.array([0.0] * d + [-1.0]), A_ub=np.array(a_ub),
                      b_ub=np.zeros(len(a_ub)),
                      bounds=[(-1, 1)] * d + [(0, 1)], method="highs")
        if res.status != 0 or res.x is None or res.x[d] <= 1e-9:
            return None
        y_float = res.x[:d]
    else:
        constraints = [(tuple(row) + (1.0,), "<=", 0.0) for row in frows]
        constraints.append((tuple(-x for x in ftarget) + (1.0,), "<=", 0.0))
        try:
            lp = lp_maximize([0.0] * d + [1.0], constraints,
                             box=[(-1, 1)] * d + [(0, 1)], backend=_STEER)
        except IndeterminateError:
            return None
        if lp.status != "optimal" or lp.objective <= 1e-9:
            return None
        y_float = lp.solution[:d]
    for denominator in (10**4, 10**8, 10**12):
        y = _rationalize(y_float, denominator)
        if all(dot(y, col) < 0 for col in columns) and dot(y, target) > 0:
            return y
    return None


def nonneg_combination(columns, target, backend=RATIONAL):
    """lam >= 0 with sum lam_k columns[k] = target, or None.

    Rational backend: a float phase-1 proposes a support, exact elimination
    certifies it; the exact simplex is the fallback and the only authority for
    "infeasible".
    """
    if backend.name != "rational":
        return _feasible_nonneg(columns, target, backend)
    lam = _steered_feasible(columns, target)
    if lam is not None:
        return lam
    return _feasible_nonneg(columns, target, backend)


def lp_maximize(objective, constraints, box=None, backend=RATIONAL) -> LPResult:
    """Maximize objective . x subject to linear constraints and per-variable bounds.

    `constraints` is an iterable of (coeffs, rel, rhs) with rel in {"<=", ">=", "=="};
    `box` gives optional (lo, hi) bounds per variable (None for unbounded sides).
    """
    be = backend
    obj = [be.coerce(v) for v in objective]
    n = len(obj)
    zero = be.coerce(0)
    one = be.coerce(1)
    rows = []
    for coeffs, rel, rhs in constraints:
        if len(coeffs) != n:
            raise InputError(f"constraint has {len(coeffs)} coefficients, expected {n}")
        if rel not in ("<=", ">=", "=="):
            raise InputError(f"unknown relation {rel!r}")
        rows.append(([be.coerce(v) for v in coeffs], rel, be.coerce(rhs)))
    if box is None:
        box = [(None, None)] * n
    if len(box) != n:
        raise InputError("box length does not match objective")

    # substitute shifted / split nonnegative variables
    offsets = [zero] * n
    colmap = []  # (var index, sign)
    for j, (lo, hi) in enumerate(box):
        if lo is not None:
            offsets[j] = be.coerce(lo)
            colmap.append((j, one))
            if hi is not None:
                extra = [zero] * n
                extra[j] = one
                rows.append((extra, "<=", be.coerce(hi)))
        elif hi is not None:
            offsets[j] = be.coerce(hi)
            colmap.append((j, -one))
        else:
            colmap.append((j, one))
            colmap.append((j, -one))
    ny = len(colmap)

    def to_y(coeffs):
        return [coeffs[j] * s for j, s in colmap]

    sp = _Simplex(be)
    slack_total = sum(1 for _, rel, _ in rows if rel != "==")
    art_cols = []
    width = ny + slack_total + len(rows)  # upper bound; artificials allocated lazily
    sp.ncols = width
    scol = ny
    for coeffs, rel, rhs in rows:
        r = to_y(coeffs)
        b = rhs - dot(coeffs, offsets)
        if rel == ">=":
            r = [-x for x in r]
            b = -b
            rel = "<="
        if be.neg(b):
            r = [-x for x in r]
            b = -b
            rel = {"<=": ">=", ">=": "<=", "==": "=="}[rel]
        full = [zero] * width
        for j, v in enumerate(r):
            full[j] = v
        if rel == "<=":
            full[scol] = one
            sp.add_row(full, b)
            sp.basis.append(scol)
            scol += 1
        else:
            if rel == ">=":
                full[scol] = -one
                scol += 1
            acol = scol if rel == "==" else scol
            # place the artificial in the next free column
            acol = width - len(rows) + len(art_cols)
            full[acol] = one
            sp.add_row(full, b)
            sp.basis.append(acol)
            art_cols.append(acol)
            sp.banned.add(acol)

    if art_cols:
        cost1 = [zero] * width
        for a in art_cols:
            cost1[a] = -one
        status, obj1 = sp.solve(cost1, ny, zero)
        if status == "stalled":
            raise IndeterminateError("float simplex stalled; retry on the rational backend")
        if status != "optimal" or be.neg(obj1):
            return LPResult("infeasible")
    cost2 = [zero] * width
    for k, (j, s) in enumerate(colmap):
        cost2[k] = obj[j] * s
    status, value = sp.solve(cost2, ny, zero)
    if status == "stalled":
        raise IndeterminateError("float simplex stalled; retry on the rational backend")
    if status == "unbounded":
        return LPResult("unbounded")
    x = list(offsets)
    for k, (j, s) in enumerate(colmap):
        x[j] = x[j] + s * sp.value_of(k)
    return LPResult("optimal", dot(obj, x), tuple(x))


# ---------------------------------------------------------------------------
# Polytopes
# ---------------------------------------------------------------------------

def _primitive_int_vector(vec: Sequence[Fraction]):
    """Clear denominators and divide by the gcd; returns a tuple of ints."""
    denoms = [x.denominator for x in vec]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(x * lcm) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


class Polytope:
    """A polytope given by its vertex list.

    Construction checks that no two vertices coincide and that every listed
    point really is a vertex of the convex hull (an LP per point); offending
    points are rejected or stripped according to `on_nonvertex`.
    """

    def __init__(self, points, label="", backend=RATIONAL, on_nonvertex="reject",
                 validate=True):
        if on_nonvertex not in ("reject", "strip"):
            raise InputError("on_nonvertex must be 'reject' or 'strip'")
        pts = [tuple(backend.coerce(x) for x in p) for p in points]
        if not pts:
            raise InputError("a polytope needs at least one point")
        d = len(pts[0])
        if d < 1 or any(len(p) != d for p in pts):
            raise InputError("all points must share one ambient dimension >= 1")
        self.backend = backend
        self.dim = d
        self.label = label
        if validate:
            pts = self._validated(pts, on_nonvertex)
        self.vertices = tuple(pts)
        self._edges = None

    def _validated(self, pts, on_nonvertex):
        be = self.backend
        kept = []
        for p in pts:
            dup = any(all(be.eq(a, b) for a, b in zip(p, q)) for q in kept)
            if dup:
                if on_nonvertex == "reject":
                    raise InputError(f"duplicate vertex {p}")
                continue
            kept.append(p)
        if len(kept) == 1:
            return kept
        vertices = []
        for i, p in enumerate(kept):
            others = [q for j, q in enumerate(kept) if j != i]
            cols = [tuple(q) + (be.coerce(1),) for q in others]
            target = tuple(p) + (be.coerce(1),)
            if be.name == "rational":
                if _steered_feasible(cols, target) is not None:
                    is_vertex = False
                elif _strict_separation(cols, target) is not None:
                    is_vertex = True
                else:
                    is_vertex = _feasible_nonneg(cols, target, be) is None
            else:
                is_vertex = _feasible_nonneg(cols, target, be) is None
            if is_vertex:
                vertices.append(p)
            elif on_nonvertex == "reject":
                raise InputError(f"point {p} is not a vertex of the hull")
        return vertices

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"Polytope({self.label or 'unlabeled'}, n={len(self.vertices)}, d={self.dim})"

    # -- JSON schema: {"dim": int, "label": str, "vertices": [[num|"p/q", ...]]}

    def to_json(self) -> str:
        verts = []
        for v in self.vertices:
            row = []
            for x in v:
                if isinstance(x, Fraction):
                    row.append(int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}")
                else:
                    row.append(x)
            verts.append(row)
        return json.dumps({"dim": self.dim, "label": self.label, "vertices": verts})

    @classmethod
    def from_json(cls, text: str, backend=RATIONAL, **kwargs) -> "Polytope":
        try:
            data = json.loads(text)
            dim = data["dim"]
            verts = data["vertices"]
            label = data.get("label", "")
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputError(f"bad polytope JSON: {exc}") from exc
        if any(len(v) != dim for v in verts):
            raise InputError("vertex length disagrees with 'dim'")
        return cls(verts, label=label, backend=backend, **kwargs)

    # -- edge graph

    def edges(self):
        """Sorted list of index pairs (i, j), i < j, that span edges of the polytope."""
        if self._edges is None:
            found = []
            n = len(self.vertices)
            for i in range(n):
                for j in range(i + 1, n):
                    if self._is_edge_pair(i, j):
                        found.append((i, j))
            self._edges = tuple(found)
        return list(self._edges)

    def _is_edge_pair(self, i, j):
        be = self.backend
        u, v = self.vertices[i], self.vertices[j]
        gens = [tuple(w[t] - u[t] for t in range(self.dim))
                for k, w in enumerate(self.vertices) if k != i and k != j]
        target = tuple(v[t] - u[t] for t in range(self.dim))
        if be.name != "rational":
            return _feasible_nonneg(gens, target, be) is None
        if _steered_feasible(gens, target) is not None:
            return False
        if _strict_separation(gens, target) is not None:
            return True
        return _feasible_nonneg(gens, target, be) is None

    def neighbors(self, i):
        adj = []
        for a, b in self.edges():
            if a == i:
                adj.append(b)
            elif b == i:
                adj.append(a)
        return adj


def is_edge(P: Polytope, i: int, j: int) -> bool:
    """Whether segment [v_i, v_j] is a 1-face of P.

    Decided by whether v_j - v_i spans an extreme ray of the tangent cone at
    v_i, i.e. whether it escapes the cone of the other vertex directions; this
    is the Farkas dual of the supporting-hyperplane test and is decided exactly
    on the rational backend.
    """
    n = len(P.vertices)
    if i == j:
        raise InputError("is_edge needs two distinct vertex indices")
    if not (0 <= i < n and 0 <= j < n):
        raise InputError("vertex index out of range")
    if P._edges is not None:
        return (min(i, j), max(i, j)) in P._edges
    return P._is_edge_pair(min(i, j), max(i, j))


def edge_graph(P: Polytope):
    return P.edges()


def supporting_margin(P: Polytope, i: int, j: int):
    """Optimal margin t of the supporting-hyperplane LP for the pair (i, j).

    Maximizes t with <c,v_i> = <c,v_j> >= <c,w> + t for all other vertices w and
    -1 <= c_k <= 1.  Positive exactly when [v_i, v_j] is an edge; used as the
    cross-check oracle for `is_edge`.
    """
    be = P.backend
    d = P.dim
    u, v = P.vertices[i], P.vertices[j]
    constraints = [(tuple(u[t] - v[t] for t in range(d)) + (be.coerce(0),), "==", 0)]
    for k, w in enumerate(P.vertices):
        if k in (i, j):
            continue
        constraints.append((tuple(u[t] - w[t] for t in range(d)) + (be.coerce(-1),), ">=", 0))
    box = [(-1, 1)] * d + [(None, None)]
    objective = [0] * d + [1]
    res = lp_maximize(objective, constraints, box, backend=be)
    if res.status != "optimal":
        raise InputError(f"margin LP unexpectedly {res.status}")
    return res.objective


# ---------------------------------------------------------------------------
# Orientation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectedGraph:
    """Graph of a polytope oriented by increasing inner product with `c`.

    `order` lists vertex indices by ascending c-value (ties between non-adjacent
    vertices broken by index); `arcs[u]` are the improving neighbors of u sorted
    by that order.  Acyclic by construction.
    """

    order: tuple
    arcs: tuple
    c: tuple
    source: int
    sink: int

    @property
    def n(self):
        return len(self.order)


def is_generic(P: Polytope, c) -> bool:
    """True when no edge of P is level for c (endpoints share the c-value)."""
    be = P.backend
    cv = [be.coerce(x) for x in c]
    if len(cv) != P.dim:
        raise InputError("direction has wrong dimension")
    if all(be.zero(x) for x in cv):
        raise InputError("direction must be nonzero")
    vals = [dot(v, cv) for v in P.vertices]
    return all(not be.eq(vals[i], vals[j]) for i, j in P.edges())


def orient(P: Polytope, c, drop_level_ties=False) -> DirectedGraph:
    """Directed graph of P along c, with unique source and sink.

    A level edge raises GenericityError naming the edge; with
    `drop_level_ties=True` level edges are omitted from the arc set instead,
    which is the usual convention for graded 0/1 families whose canonical
    direction ties only within levels.
    """
    be = P.backend
    cv = tuple(be.coerce(x) for x in c)
    if len(cv) != P.dim:
        raise InputError("direction has wrong dimension")
    if all(be.zero(x) for x in cv):
        raise InputError("direction must be nonzero")
    vals = [dot(v, cv) for v in P.vertices]
    n = len(P.vertices)
    succ = [[] for _ in range(n)]
    pred_count = [0] * n
    for i, j in P.edges():
        if be.eq(vals[i], vals[j]):
            if drop_level_ties:
                continue
            raise GenericityError(
                f"direction {c} is level on edge {(i, j)}", edge=(i, j))
        lo, hi = (i, j) if vals[i] < vals[j] else (j, i)
        succ[lo].append(hi)
        pred_count[hi] += 1
    order = sorted(range(n), key=lambda k: (vals[k], k))
    rank = {v: r for r, v in enumerate(order)}
    arcs = tuple(tuple(sorted(s, key=rank.__getitem__)) for s in succ)
    sources = [u for u in range(n) if pred_count[u] == 0]
    sinks = [u for u in range(n) if not arcs[u]]
    if len(sources) != 1 or len(sinks) != 1:
        raise GenericityError(
            f"orientation needs a unique source and sink, got {sources} / {sinks}")
    return DirectedGraph(order=tuple(order), arcs=arcs, c=cv,
                         source=sources[0], sink=sinks[0])


# ---------------------------------------------------------------------------
# Planar projection and upper chains
# ---------------------------------------------------------------------------

def project2d(P: Polytope, c, omega):
    """Project every vertex to (<v,c>, <v,omega>), in vertex order."""
    be = P.backend
    cv = [be.coerce(x) for x in c]
    ov = [be.coerce(x) for x in omega]
    if len(cv) != P.dim or len(ov) != P.dim:
        raise InputError("projection directions must match the ambient dimension")
    independent = False
    for a in range(P.dim):
        for b in range(a + 1, P.dim):
            if not be.zero(cv[a] * ov[b] - cv[b] * ov[a]):
                independent = True
                break
        if independent:
            break
    if not independent:
        raise InputError("omega must be linearly independent from c")
    return [(dot(v, cv), dot(v, ov)) for v in P.vertices]


def _infer_backend(points):
    for p in points:
        for x in p:
            if isinstance(x, float):
                return FLOAT
    return RATIONAL


def upper_path(points, backend=None):
    """Indices of hull vertices on the upper chain, by increasing first coordinate.

    Runs from the global minimizer of the first coordinate to the maximizer;
    collinear interior points are not hull vertices and are skipped.  A tie in
    the first coordinate among hull vertices is a DegeneracyError, as is a
    second point coinciding with a hull vertex.
    """
    if len(points) < 2:
        raise InputError("need at least two points")
    be = backend or _infer_backend(points)
    pts = [tuple(be.coerce(x) for x in p) for p in points]
    order = sorted(range(len(pts)), key=lambda k: (pts[k][0], pts[k][1], k))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(idxs, keep_side):
        out = []
        for k in idxs:
            while len(out) >= 2:
                turn = cross(pts[out[-2]], pts[out[-1]], pts[k])
                if be.pos(turn) if keep_side > 0 else be.neg(turn):
                    break
                out.pop()
            out.append(k)
        return out

    lower = chain(order, keep_side=+1)
    upper = chain(list(reversed(order)), keep_side=+1)
    hull = set(lower) | set(upper)
    hull_pts = {}
    for k in hull:
        for other in range(len(pts)):
            if other != k and be.eq(pts[other][0], pts[k][0]) and be.eq(pts[other][1], pts[k][1]):
                raise DegeneracyError(f"point {other} coincides with hull vertex {k}")
        hull_pts[k] = pts[k]
    xs = sorted(hull, key=lambda k: pts[k][0])
    for a, b in zip(xs, xs[1:]):
        if be.eq(pts[a][0], pts[b][0]):
            raise DegeneracyError(
                f"hull vertices {a} and {b} share the first coordinate")
    return list(reversed(upper))


def lower_path(points, backend=None):
    """Companion of `upper_path` for the lower chain (same contracts)."""
    flipped = [(p[0], -p[1] if not isinstance(p[1], float) else -float(p[1]))
               for p in points]
    return upper_path(flipped, backend=backend)
