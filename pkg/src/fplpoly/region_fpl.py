"""Constrained FPL fillings of sub-regions of the grid."""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import _graph
from ._graph import EMPTY, FREE, OCC, Graph
from .lgv import DomainError
from .codec import (boundary_shape, boundary_word, contained, conjugate, heights,
                    lambda_of_matching, path_of_matching, ssyt_count, word_path)

MAX_FREE = 120


class RegionSpec:
    """A region graph plus the routing target of its terminals."""

    def __init__(self, graph, kind, want, meta=None):
        self.graph = graph
        self.kind = list(kind)
        self.want = list(want)
        self.meta = meta or {}

    def forced(self):
        g = self.graph
        keys = {e: k for k, e in g.edge_key.items()}
        occ = {keys[e] for e, s in enumerate(g.state) if s == OCC and e in keys}
        emp = {keys[e] for e, s in enumerate(g.state) if s == EMPTY and e in keys}
        return occ, emp


def triangle_spec(X, E1, E2):
    """Triangle below X: rows y = 0..2d-2, row y spans columns y..4d-2-y.

    Columns are relative to the first link of X (which sits on column 0 of
    row 0, the links of X occupying the even columns 0..4d-2).
    """
    d = X.d
    E1, E2 = set(E1), set(E2)
    W = 4 * d - 2
    g = Graph()
    for y in range(2 * d - 1):
        for x in range(y, W - y + 1):
            g.vertex((y, x))
    inside = g.index
    for y in range(2 * d - 1):
        lo, hi = y, W - y
        for x in range(lo, hi + 1):
            if x + 1 <= hi:
                st = OCC if x in (lo, hi - 1) else FREE
                g.edge((y, x), (y, x + 1), st, key=("h", y, x))
            if (y + 1, x) in inside:
                g.edge((y, x), (y + 1, x), FREE, key=("v", y, x))
    for y in range(1, 2 * d - 1):
        # slots: left e_y links (y-1, y) to (y, y); right links (y-1, W-y) to (y, W-y)
        g.set_state(("v", y - 1, y), OCC if y in E1 else EMPTY)
        g.set_state(("v", y - 1, W - y), OCC if y in E2 else EMPTY)
    kind, want = [], []
    pm = X.partner_map()
    for i in range(1, 2 * d + 1):
        g.stub((0, 2 * (i - 1)), True, key=("x", i))
        kind.append(_graph.KIND_EXACT)
        want.append(pm[i] - 1)
    for y in range(1, 2 * d - 1):
        if y not in E1:
            g.stub((y, y), True, key=("l", y))
            kind.append(_graph.KIND_LEFT)
            want.append(-1)
    for y in range(1, 2 * d - 1):
        if y not in E2:
            g.stub((y, W - y), True, key=("r", y))
            kind.append(_graph.KIND_RIGHT)
            want.append(-1)
    return RegionSpec(g, kind, want, {"X": X, "E1": frozenset(E1), "E2": frozenset(E2)})


class SizeError(ValueError):
    pass


def enumerate_region(spec, store_cap=0):
    """Run the solver on a region; returns the engine result dict."""
    nfree = sum(1 for st in spec.graph.state if st == FREE)
    if nfree > 3 * MAX_FREE:
        raise SizeError(f"{nfree} free edges exceeds the region guard")
    return _graph.run(spec.graph, _graph.MODE_FILTER, kind=spec.kind, want=spec.want,
                      store_cap=store_cap)


def count_region(spec):
    return enumerate_region(spec)["accepted"]


def configurations(spec, cap=1 << 16):
    return enumerate_region(spec, store_cap=cap)["store"]


def boundary_sets(d, size=None):
    size = d - 1 if size is None else size
    return [frozenset(E) for E in combinations(range(1, 2 * d - 1), size)]


def staircase(d):
    return frozenset(range(1, d))


@lru_cache(maxsize=None)
def _a_double(X, E1, E2):
    return count_region(triangle_spec(X, E1, E2))


def a_double(X, E1, E2):
    """Fillings of the triangle below X with slot sets E1 (left), E2 (right)."""
    return _a_double(X, frozenset(E1), frozenset(E2))


def a_single(X, E):
    """Fillings of the triangle plus the strip on its right.

    The strip takes the loops leaving through the right slots E2 and has
    SSYT(lambda(E2), d) fillings, so a_X(E) = sum_E2 a(E, E2) SSYT(lambda(E2), d).
    """
    d = X.d
    E = frozenset(E)
    if len(E) != d - 1:
        return 0
    total = Fraction(0)
    for E2 in boundary_sets(d):
        a = a_double(X, E, E2)
        if a:
            total += a * ssyt_count(boundary_shape(E2, d)[0], d)
    assert total.denominator == 1
    return int(total)


def a_table(X):
    """Nonzero a_X(E) keyed by E."""
    lam = lambda_of_matching(X)
    out = {}
    for E in boundary_sets(X.d):
        if contained(boundary_shape(E, X.d)[0], lam):
            v = a_single(X, E)
            if v:
                out[E] = v
    return out


def a_double_table(X):
    lam = lambda_of_matching(X)
    lamc = conjugate(lam)
    out = {}
    for E1 in boundary_sets(X.d):
        if not contained(boundary_shape(E1, X.d)[0], lam):
            continue
        for E2 in boundary_sets(X.d):
            if not contained(boundary_shape(E2, X.d)[0], lamc):
                continue
            v = a_double(X, E1, E2)
            if v:
                out[(E1, E2)] = v
    return out


def is_dyck(E, d):
    h = heights(boundary_shape(E, d)[1])
    return min(h) >= 0 and h[-1] == 0


def all_boundary_sets(d):
    return [frozenset(c) for s in range(2 * d - 1) for c in combinations(range(1, 2 * d - 1), s)]


def corollary_report(X):
    """Slot sets E1 (any size) admitting a filling for some E2, with the
    containment / Dyck / size / uniqueness checks."""
    d = X.d
    lam = lambda_of_matching(X)
    rows, bad = [], []
    for E1 in all_boundary_sets(d):
        tot = sum(a_double(X, E1, E2) for E2 in all_boundary_sets(d))
        if not tot:
            continue
        mu = boundary_shape(E1, d)[0]
        row = {"E1": sorted(E1), "count": tot, "contained": contained(mu, lam),
               "dyck": is_dyck(E1, d), "size": len(E1) == d - 1}
        if mu == lam:
            row["unique"] = a_single(X, E1) == 1
        rows.append(row)
        if not all(v for k, v in row.items() if k not in ("E1", "count")):
            bad.append(row)
    return {"rows": rows, "violations": bad, "ok": not bad}


# ------------------------------------------------------------ slice census
# Cut lines are the anti-diagonals x + y = c of the triangle: V_i is c = 2i-2,
# Lambda_i is c = 2i-1.  "Below" a line is the side of smaller c (towards the
# first link of X and the left slots), "above" the side of larger c.

TYPES = ("vee", "wedge", "t", "o")


def _adjacency(g, st):
    adj = {}
    for e in np.nonzero(np.asarray(st) == OCC)[0]:
        e = int(e)
        adj.setdefault(g.eu[e], []).append(e)
        if g.ev[e] >= 0:
            adj.setdefault(g.ev[e], []).append(e)
    return adj


def slice_census(spec, st):
    """Per line ('V', i) / ('L', i), counts of the four vertex types."""
    X = spec.meta["X"]
    d = X.d
    g = spec.graph
    keys = {e: k for k, e in g.edge_key.items()}
    pm = X.partner_map()
    adj = _adjacency(g, st)
    cv = [y + x for y, x in g.keys]

    def far(e, v):
        # anti-diagonal position of the far end of edge e seen from vertex v
        b = g.ev[e]
        if b >= 0:
            return cv[b if g.eu[e] == v else g.eu[e]]
        return cv[v] - 0.5 if keys[e][0] in ("x", "l") else cv[v] + 0.5

    def other(e, v):
        b = g.ev[e]
        if b < 0:
            return None
        return b if g.eu[e] == v else g.eu[e]

    out = {}
    for i in range(1, 2 * d):
        for name, c in (("V", 2 * i - 2), ("L", 2 * i - 1)):
            cnt = dict.fromkeys(TYPES, 0)
            for v in range(len(g.keys)):
                if cv[v] != c:
                    continue
                es = adj[v]
                above = [far(e, v) > c for e in es]
                if all(above):
                    cnt["vee"] += 1
                    continue
                if not any(above):
                    cnt["wedge"] += 1
                    continue
                e, cur = es[above.index(False)], v
                while True:
                    u = other(e, cur)
                    if u is None:
                        k = keys[e]
                        if k[0] == "x":
                            # partner link sits at column 2(j-1), half a step below its vertex
                            typ = "o" if 2 * (pm[k[1]] - 1) - 0.5 > c else "t"
                        else:
                            typ = "o"
                        break
                    f = next(q for q in adj[u] if q != e)
                    if cv[u] == c and far(f, u) > c:
                        typ = "t"
                        break
                    e, cur = f, u
                cnt[typ] += 1
            out[(name, i)] = cnt
    return out


def h_values(X, E1):
    d = X.d
    pe = heights(word_path((0,) + boundary_word(E1, d) + (1,)))
    px = heights(path_of_matching(X))
    return [Fraction(pe[i] - px[i], 2) for i in range(1, 2 * d)]


def verify_census(X, E1, census):
    """Check wedge + t/2 on Lambda_i and vee + t/2 on V_i against h_i."""
    h = h_values(X, E1)
    bad = []
    for i in range(1, len(h) + 1):
        L, V = census[("L", i)], census[("V", i)]
        a = L["wedge"] + Fraction(L["t"], 2)
        b = V["vee"] + Fraction(V["t"], 2)
        if not (a == b == h[i - 1]) or L["t"] % 2 or V["t"] % 2:
            bad.append((i, a, b, h[i - 1]))
    return {"h": h, "violations": bad, "ok": not bad}


def lemma_deltas(census):
    """(Lambda - V) at line i and (V_i - Lambda_{i-1}) differences."""
    def lam(i):
        L = census[("L", i)]
        return L["wedge"] + Fraction(L["t"], 2)

    def vv(i):
        V = census[("V", i)]
        return V["vee"] + Fraction(V["t"], 2)

    n = max(i for _, i in census)
    d1 = [lam(i) - vv(i) for i in range(1, n + 1)]
    d2 = [vv(i) - (lam(i - 1) if i > 1 else 0) for i in range(1, n + 1)]
    return d1, d2


def step_rule(X, E1, i):
    """Expected V_i - Lambda_{i-1}: +1 for (E up, X down), -1 for the reverse."""
    d = X.d
    se = word_path((0,) + boundary_word(E1, d) + (1,))[i - 1]
    sx = path_of_matching(X)[i - 1]
    return (se > sx) - (se < sx)


# ------------------------------------------------------------ corner triangle
# Corner-relative coordinates (r, q): r is the row from the top, q the column
# counted from the right side.  The corner triangle is r + q <= 2d-3; the
# diagonal r + q = 2d-2 carries the vertices D_r through which it meets the
# rest of the grid.  X's link i sits on the top side at q = 2d-2i for
# i = 1..d and on the right side at r = 2i-2d-1 for i = d+1..2d.

def _slot_rows(d):
    """D_r -> slot: ('e', j) for r = 1..d-2, ('f', j) with j = 2d-1-r."""
    out = {}
    for r in range(1, 2 * d - 1):
        out[r] = ("e", r) if r <= d - 2 else ("f", 2 * d - 1 - r)
    return out


def corner_spec(X, E, F):
    """Corner triangle at the top-right of the corner placement.

    E marks the e-slots whose up edge into the triangle is occupied (the
    right edge of an e-slot vertex is always occupied); F marks the
    f-slots that are *not* ends, i.e. whose vertex does not meet the
    triangle.  Every other diagonal vertex enters the triangle by exactly
    one edge and leaves through a stub to the outer region.
    """
    d = X.d
    E, F = set(E), set(F)
    if d < 2:
        raise DomainError("corner triangle needs d >= 2")
    if not E <= set(range(1, d - 1)) or not F <= set(range(1, d + 1)):
        raise DomainError("E must lie in 1..d-2 and F in 1..d")
    if len(F) != len(E) + 1:
        raise DomainError(f"need |F| = |E| + 1, got {len(F)} and {len(E)}")
    K = 2 * d - 3
    g = Graph()
    inner = [(r, q) for r in range(K + 1) for q in range(K + 1 - r)]
    for v in inner:
        g.vertex(v)
    slots = _slot_rows(d)
    diag = {}
    for r in range(0, 2 * d - 1):
        q = 2 * d - 2 - r
        if r == 0:
            diag[r] = "x1"
        elif slots[r][0] == "e":
            diag[r] = "e-in" if r in E else "e-out"
        else:
            diag[r] = "f-end" if slots[r][1] not in F else None
        if diag[r] is not None:
            g.vertex((r, q))
    for r, q in inner:
        # right neighbour (r, q-1) and lower neighbour (r+1, q)
        if q >= 1:
            g.edge((r, q), (r, q - 1), key=("h", r, q - 1))
        if (r + 1, q) in g.index:
            g.edge((r, q), (r + 1, q), key=("v", r, q))
        if (r, q + 1) in g.index and r + q + 1 == 2 * d - 2:
            g.edge((r, q + 1), (r, q), key=("h", r, q))
    for r, kind in diag.items():
        q = 2 * d - 2 - r
        if kind in ("x1", "e-in", "e-out"):
            g.set_state(("h", r, q - 1), OCC)
        if kind == "e-in":
            g.set_state(("v", r - 1, q), OCC)
        elif kind == "e-out":
            g.set_state(("v", r - 1, q), EMPTY)
    # edges from inner vertices to absent diagonal vertices do not exist
    kind, want = [], []
    pm = X.partner_map()
    slot_of = {}
    for i in range(1, 2 * d):
        slot_of[i] = (0, 2 * d - 2 * i) if i <= d else (2 * i - 2 * d - 1, 0)
    for i in range(1, 2 * d):
        g.stub(slot_of[i], True, key=("x", i))
        j = pm[i]
        if j == 2 * d:
            # the strand towards link 2d leaves through an f-end
            kind.append(_graph.KIND_LEFT)
            want.append(-1)
        else:
            kind.append(_graph.KIND_EXACT)
            want.append(j - 1)
    for r, k in diag.items():
        if k in ("e-out", "f-end"):
            # e-out stubs pair with f-ends inside the triangle
            g.stub((r, 2 * d - 2 - r), True, key=("p", r))
            kind.append(_graph.KIND_LEFT if k == "e-out" else _graph.KIND_RIGHT)
            want.append(-1)
    occ = set(slot_of.values())
    for r, q in inner:
        # unoccupied external links on the top and right sides
        if (r == 0 or q == 0) and (r, q) not in occ:
            g.stub((r, q), False)
    return RegionSpec(g, kind, want, {"X": X, "E": frozenset(E), "F": frozenset(F)})


@lru_cache(maxsize=None)
def _corner_count(X, E, F):
    return count_region(corner_spec(X, E, F))


def corner_count(X, E, F):
    """c(E, F): fillings of the corner triangle."""
    return _corner_count(X, frozenset(E), frozenset(F))


def corner_table(X):
    """Nonzero c(E, F) keyed by (E, F), F ranging over 1..d."""
    from .lgv import corner_pairs

    out = {}
    for E, F in corner_pairs(X.d):
        v = corner_count(X, E, F)
        if v:
            out[(E, F)] = v
    return out
