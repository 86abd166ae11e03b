"""Fully packed loops on the n x n grid with periodic boundary conditions.

Vertex (r, c): r is the row counted from the top, c the column from the
left, both 0-based.  External links carry labels -2n+1..2n clockwise:
top 1..n left to right, right n+1..2n top to bottom, bottom -2n+1..-n
right to left, left -n+1..0 bottom to top.
"""

from math import factorial

import numpy as np

from . import _graph
from ._graph import EMPTY, FREE, OCC, Graph
from .codec import Matching, matching_from_partner, parity_labels, rotate, word_str

MAX_N = 8


class SizeError(ValueError):
    pass


def link_vertex(n, L):
    """Grid vertex carrying external link L and the direction it points."""
    if 1 <= L <= n:
        return (0, L - 1), "up"
    if n + 1 <= L <= 2 * n:
        return (L - n - 1, n - 1), "right"
    if -2 * n + 1 <= L <= -n:
        return (n - 1, -L - n), "down"
    if -n + 1 <= L <= 0:
        return (-L, 0), "left"
    raise ValueError(f"label {L} out of range for n={n}")


def vertex_links(n):
    out = {}
    for L in range(-2 * n + 1, 2 * n + 1):
        v, _ = link_vertex(n, L)
        out.setdefault(v, []).append(L)
    return out


def asm_total(n):
    num = 1
    for k in range(n):
        num *= factorial(3 * k + 1)
    den = 1
    for k in range(n):
        den *= factorial(n + k)
    return num // den


def _check(n):
    if not 1 <= n <= MAX_N:
        raise SizeError(f"n={n} outside 1..{MAX_N}")


def build_grid(n, parity="even"):
    """Graph of Q_n; edge keys ('h', r, c), ('v', r, c), ('x', L)."""
    _check(n)
    g = Graph()
    for r in range(n):
        for c in range(n):
            g.vertex((r, c))
    r0 = 0 if parity == "even" else 1
    links = vertex_links(n)
    for r in range(n):
        for c in range(n):
            if c + 1 < n:
                g.edge((r, c), (r, c + 1), key=("h", r, c))
            if r + 1 < n:
                g.edge((r, c), (r + 1, c), key=("v", r, c))
    # terminals must be registered in increasing label order
    for L in range(-2 * n + 1, 2 * n + 1):
        v, _ = link_vertex(n, L)
        g.stub(v, L % 2 == r0, key=("x", L))
    return g


def _terminal_labels(n, parity):
    return parity_labels(n, parity)


def enumerate_fpl(n, parity="even"):
    """All configurations as int8 edge-state rows of ``build_grid(n, parity)``."""
    g = build_grid(n, parity)
    nt = len(g.terminals)
    res = _graph.run(g, _graph.MODE_FILTER, kind=[_graph.KIND_ANY] * nt,
                     store_cap=asm_total(n))
    return g, res["store"]


def config_edges(g, st):
    keys = {e: k for k, e in g.edge_key.items()}
    return frozenset(keys[e] for e in np.nonzero(np.asarray(st) == OCC)[0])


def trace_matching(g, st):
    """Abstract matching (increasing label order) of one configuration."""
    from ._engine import _trace

    st, eu, ev, inc_ptr, inc_idx, _, _, term, edge_term = g.arrays(np.asarray(st, np.int8))
    partner = np.empty(len(term), np.int64)
    if not _trace(st, eu, ev, inc_ptr, inc_idx, term, edge_term, partner):
        raise RuntimeError("occupied external link lies on a closed loop")
    return matching_from_partner([int(p) for p in partner])


def _word_key(w, nt):
    return tuple((w >> p) & 1 for p in range(nt))


def census(n, parity="even", workers=1):
    """Map word v(X) (tuple of bits) -> count, over configurations of Q_n."""
    g = build_grid(n, parity)
    nt = len(g.terminals)
    res = _graph.run(g, _graph.MODE_CENSUS, workers=workers)
    counts = res["counts"]
    out = {}
    for w in np.nonzero(counts)[0]:
        out[_word_key(int(w), nt)] = int(counts[w])
    return dict(sorted(out.items()))


def census_by_matching(n, parity="even", workers=1):
    from .codec import word_to_matching

    return {word_to_matching(w): c for w, c in census(n, parity, workers).items()}


def wieland_check(n, workers=1):
    """Compare even census at X with odd census at the rotated matching."""
    even = census_by_matching(n, "even", workers)
    odd = census_by_matching(n, "odd", workers)
    violations = []
    for X, c in even.items():
        Xr = rotate(X, n, "even", 1)
        if odd.get(Xr, 0) != c:
            violations.append((str(X), str(Xr), c, odd.get(Xr, 0)))
    return {"n": n, "checked": len(even), "violations": violations,
            "ok": not violations and sum(even.values()) == sum(odd.values())}


def placed_labels(n, X, labels):
    """Matching X carried to the given external-link labels (label i <- index i)."""
    return tuple((labels[i - 1], labels[j - 1]) for i, j in X.pairs)


def count_with_matching(n, label_pairs, fixed=None, workers=1, store_cap=0, parity=None):
    """|FPL| of Q_n whose open paths pair the given labels.

    ``label_pairs`` lists arcs between external labels of one parity.
    ``fixed`` optionally maps edge keys to forced states (pruning only).
    """
    label_pairs = [tuple(p) for p in label_pairs]
    if parity is None:
        parity = "even" if label_pairs[0][0] % 2 == 0 else "odd"
    g = build_grid(n, parity)
    labels = parity_labels(n, parity)
    pos = {L: t for t, L in enumerate(labels)}
    want = [-1] * len(labels)
    for a, b in label_pairs:
        want[pos[a]], want[pos[b]] = pos[b], pos[a]
    if -1 in want:
        raise ValueError("matching does not cover every occupied link")
    if fixed:
        for key, s in fixed.items():
            g.set_state(key, s)
    res = _graph.run(g, _graph.MODE_FILTER, kind=[_graph.KIND_EXACT] * len(labels),
                     want=want, store_cap=store_cap, workers=workers)
    if store_cap:
        return res["accepted"], g, res
    return res["accepted"]


def count_abstract(n, Z, parity="even", workers=1):
    """|FPL| for an abstract matching Z of the occupied links (increasing labels)."""
    labels = parity_labels(n, parity)
    if Z.d != n:
        raise ValueError(f"matching has {Z.d} arches, Q_{n} needs {n}")
    return count_with_matching(n, placed_labels(n, Z, labels), workers=workers, parity=parity)


# ------------------------------------------------------------ placements

class DomainError(ValueError):
    pass


def wrap_label(n, L):
    return (L + 2 * n - 1) % (4 * n) - 2 * n + 1


def _placed(n, Z, first):
    """Place Z so that its point p sits on label first + 2(p-1) (wrapped)."""
    return tuple(sorted(tuple(sorted((wrap_label(n, first + 2 * (i - 1)),
                                      wrap_label(n, first + 2 * (j - 1)))))
                        for i, j in Z.pairs))


def nested_placement(X, m):
    """X on labels n-4d+2, ..., n; the m arches wrap around it."""
    d = X.d
    if m < 3 * d:
        raise DomainError(f"nested placement needs m >= 3d = {3 * d}")
    n = d + m
    return n, _placed(n, codec_compose(X, m), n - 4 * d + 2 - 2 * m)


def corner_placement(X, m):
    """X on labels n-2d+2, ..., n+2d around the top-right corner."""
    d = X.d
    if m < 2 * d:
        raise DomainError(f"corner placement needs m >= 2d = {2 * d}")
    n = d + m
    return n, _placed(n, codec_compose(X, m), n - 2 * d + 2 - 2 * m)


def squeeze_placement(X, Y, m):
    """X on labels n-4d+2, ..., n and Y right after the m arches."""
    d, e = X.d, Y.d
    if m < 3 * d - e:
        raise DomainError(f"squeeze placement needs m >= 3d-e = {3 * d - e}")
    n = d + e + m
    return n, _placed(n, codec_compose(X, m, Y), n - 4 * d + 2)


def codec_compose(X, m, Y=None):
    from .codec import compose

    return compose(X, m, Y)


# ------------------------------------------------------------ fixed edges
# Symmetries of the square act on vertices and labels together:
# rot (r, c) -> (c, n-1-r), L -> L + n; ref (r, c) -> (n-1-c, n-1-r), L -> 2n+1-L.

def _rot_v(n, v):
    return (v[1], n - 1 - v[0])


def _ref_v(n, v):
    return (n - 1 - v[1], n - 1 - v[0])


def _frames(n):
    """(label map, vertex map back to the original grid) for the 8 symmetries."""
    out = []
    for refl in (False, True):
        for k in range(4):
            def lab(L, k=k, refl=refl):
                L = L + k * n
                return 2 * n + 1 - L if refl else L

            def back(v, k=k, refl=refl):
                if refl:
                    v = _ref_v(n, v)
                for _ in range((4 - k) % 4):
                    v = _rot_v(n, v)
                return v
            out.append((lab, back, refl))
    return out


def _fits(n, a, b):
    if 1 <= a < b <= n:
        return 1
    if 1 <= a <= n < b <= 2 * n and n - a > b - (n + 1):
        return 2
    if -n < a <= 0 and n < b <= 2 * n:
        return 3
    return 0


def _edge_key(u, v):
    (r1, c1), (r2, c2) = sorted((u, v))
    return ("h", r1, c1) if r1 == r2 else ("v", r1, c1)


def sequence_triangle(n, first, k):
    """Vertical edges forced by k links first, first+2, ... on distinct loops.

    The run is carried by a symmetry of the square onto one of three model
    positions (both ends on top; top to right with the top part longer;
    left to right).  There, with x = column + 1, row r holds the verticals
    at x = a+1+r, a+3+r, ..., b-1-r.  Returns an empty set if no
    symmetry brings the run into model position.
    """
    for lab, back, refl in _frames(n):
        ends = [wrap_label(n, lab(first)), wrap_label(n, lab(first + 2 * (k - 1)))]
        a = ends[1] if refl else ends[0]
        b = a + 2 * (k - 1)
        if not _fits(n, a, b):
            continue
        out = set()
        for r in range(n - 1):
            for x in range(a + 1 + r, b - r, 2):
                if 1 <= x <= n:
                    out.add(_edge_key(back((r, x - 1)), back((r + 1, x - 1))))
        return out
    return set()


def propagate(n, parity, fixed):
    """Close a set of occupied edges under the degree-two rule; None on conflict."""
    g = build_grid(n, parity)
    st = np.asarray(g.state, np.int8).copy()
    for key in fixed:
        st[g.edge_key[key]] = OCC
    inc = [[] for _ in g.keys]
    for e in range(len(st)):
        inc[g.eu[e]].append(e)
        if g.ev[e] >= 0:
            inc[g.ev[e]].append(e)
    changed = True
    while changed:
        changed = False
        for es in inc:
            occ = [e for e in es if st[e] == OCC]
            free = [e for e in es if st[e] == FREE]
            if len(occ) > 2 or len(occ) + len(free) < 2:
                return None
            if free and len(occ) == 2:
                st[free] = EMPTY
                changed = True
            elif free and len(occ) + len(free) == 2:
                st[free] = OCC
                changed = True
    keys = {e: k for k, e in g.edge_key.items()}
    return {keys[e] for e in np.nonzero(st == OCC)[0] if keys[e][0] in "hv"}


def placement_runs(kind, X, m, Y=None):
    """(n, [(first label, length)]) of the runs of links on distinct loops."""
    d = X.d
    if kind == "nested":
        n, _ = nested_placement(X, m)
        return n, [(-n - 2 * d + 2, m + 1), (n, m + 1)]
    if kind == "corner":
        n, _ = corner_placement(X, m)
        return n, [(n - 2 * d + 2 - 2 * m, m + 1), (n + 2 * d, m + 1)]
    if kind == "squeeze":
        n, _ = squeeze_placement(X, Y, m)
        e = Y.d
        return n, [(n + 2 * m + 4 * e, m + 2), (n, m + 2)]
    raise ValueError(f"unknown placement {kind!r}")


def placement(kind, X, m, Y=None):
    if kind == "nested":
        return nested_placement(X, m)
    if kind == "corner":
        return corner_placement(X, m)
    if kind == "squeeze":
        return squeeze_placement(X, Y, m)
    raise ValueError(f"unknown placement {kind!r}")


def fixed_edges(kind, X, m, Y=None):
    """Edges occupied by every FPL of the placed matching."""
    n, runs = placement_runs(kind, X, m, Y)
    if n > MAX_N:
        raise SizeError(f"n={n} outside 1..{MAX_N}")
    tri = set()
    for first, k in runs:
        t = sequence_triangle(n, first, k)
        if not t and k > 1:
            raise AssertionError(f"run {first}+2i, i<{k} has no model position")
        tri |= t
    out = propagate(n, "even" if n % 2 == 0 else "odd", tri)
    if out is None:
        raise AssertionError("fixed edges are inconsistent")
    return frozenset(out)


def count_placed(kind, X, m, Y=None, workers=1, seeded=True):
    """|FPL| of a placed matching, pruned by its fixed edges."""
    n, pairs = placement(kind, X, m, Y)
    fixed = {k: OCC for k in fixed_edges(kind, X, m, Y)} if seeded else None
    return count_with_matching(n, pairs, fixed=fixed, workers=workers)


def xi1_edges(n, d):
    """Verticals crossed by xi_1 when X sits on labels n-4d+2, ..., n."""
    return [("v", y - 1, n - 4 * d + 1 + y) for y in range(1, 2 * d - 1)]
