import numpy as np
import pytest

from fplpoly import codec, fpl_grid as G
from fplpoly.fpl_grid import OCC

P = codec.parse_matching


def test_labels_and_corners():
    n = 4
    links = G.vertex_links(n)
    assert sum(len(v) for v in links.values()) == 4 * n
    for v in [(0, 0), (0, n - 1), (n - 1, 0), (n - 1, n - 1)]:
        assert len(links[v]) == 2
    assert G.link_vertex(n, 1) == ((0, 0), "up")
    assert G.link_vertex(n, n + 1) == ((0, n - 1), "right")
    assert G.link_vertex(n, -n) == ((n - 1, 0), "down")
    assert G.link_vertex(n, 0) == ((0, 0), "left")


@pytest.mark.parametrize("n,total", [(1, 1), (2, 2), (3, 7), (4, 42), (5, 429)])
def test_enumerate_counts(n, total):
    g, S = G.enumerate_fpl(n)
    assert len(S) == total == G.asm_total(n)
    assert len({bytes(r) for r in S}) == total


@pytest.mark.parametrize("n", [2, 3, 4])
def test_configurations_are_fpl(n):
    for parity in ("even", "odd"):
        g, S = G.enumerate_fpl(n, parity)
        r0 = 0 if parity == "even" else 1
        for st in S:
            deg = {}
            for e in np.nonzero(st == OCC)[0]:
                for v in (g.eu[e], g.ev[e]):
                    if v >= 0:
                        deg[v] = deg.get(v, 0) + 1
            assert set(deg.values()) == {2} and len(deg) == n * n
            occ = [k[1] for k, e in g.edge_key.items() if k[0] == "x" and st[e] == OCC]
            assert all(L % 2 == r0 for L in occ) and len(occ) == 2 * n


def test_trace_n2():
    g, S = G.enumerate_fpl(2)
    ms = {G.trace_matching(g, st) for st in S}
    assert ms == set(codec.enumerate_matchings(2))


def test_census_n3():
    c = G.census_by_matching(3)
    assert len(c) == 5 and sum(c.values()) == 7


@pytest.mark.parametrize("n", [3, 4, 5])
def test_census_agrees_with_filtered_counts(n):
    c = G.census_by_matching(n)
    assert sum(c.values()) == G.asm_total(n)
    for X, v in c.items():
        assert G.count_abstract(n, X) == v


def test_count_with_matching_examples():
    for n in range(1, 6):
        assert G.count_abstract(n, codec.compose(P("()"), n - 1)) == 1
    assert G.count_abstract(2, P("()()")) == 1


def test_count_with_matching_rejects_partial():
    with pytest.raises(ValueError):
        G.count_with_matching(2, [(2, 4)])


def test_size_guard():
    with pytest.raises(G.SizeError):
        G.build_grid(G.MAX_N + 1)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_wieland(n):
    rep = G.wieland_check(n)
    assert rep["ok"], rep["violations"]


@pytest.mark.parametrize("kind,m,bound", [("nested", 2, "3d"), ("corner", 1, "2d")])
def test_placement_bounds(kind, m, bound):
    with pytest.raises(G.DomainError, match=bound):
        G.placement(kind, P("()"), m)
    with pytest.raises(G.DomainError, match="3d-e"):
        G.squeeze_placement(P("()()"), P("()"), 4)


def test_placements_realize_the_matching():
    for kind, X, m, Y in [("nested", P("()()"), 6, None), ("corner", P("()()"), 4, None),
                          ("squeeze", P("(())"), 5, P("()"))]:
        n, pairs = G.placement(kind, X, m, Y)
        labels = sorted(L for p in pairs for L in p)
        pos = {L: i + 1 for i, L in enumerate(labels)}
        Z = codec.Matching(tuple(sorted((pos[a], pos[b]) for a, b in pairs)))
        # a rotation of the abstract composed matching
        target = codec.compose(X, m, Y)
        rots = {codec.rotate(target, n, "even" if n % 2 == 0 else "odd", 2 * k) for k in range(2 * n)}
        assert Z in rots


def intersection(n, pairs):
    acc, g, res = G.count_with_matching(n, pairs, store_cap=10 ** 6)
    S = res["store"][:acc]
    keys = {e: k for k, e in g.edge_key.items()}
    return {keys[e] for e in np.nonzero(np.all(S == OCC, axis=0))[0] if keys[e][0] in "hv"}


@pytest.mark.parametrize("kind,X,m", [("nested", "()", 3), ("nested", "()", 4),
                                      ("corner", "()()", 4), ("corner", "(())", 4),
                                      ("corner", "()()", 5)])
def test_fixed_edges_contained(kind, X, m):
    X = P(X)
    n, pairs = G.placement(kind, X, m)
    fx = G.fixed_edges(kind, X, m)
    assert fx and fx <= intersection(n, pairs)


@pytest.mark.slow
@pytest.mark.parametrize("X", ["()()", "(())"])
def test_fixed_edges_nested_n8(X):
    X = P(X)
    n, pairs = G.nested_placement(X, 6)
    assert G.fixed_edges("nested", X, 6) <= intersection(n, pairs)


def test_fixed_edges_squeeze():
    X, Y = P("()"), P("()")
    n, pairs = G.squeeze_placement(X, Y, 2)
    assert G.fixed_edges("squeeze", X, 2, Y) <= intersection(n, pairs)


def _forced_by_run(n, first, k, store):
    labs, keys, S, Pm = store
    pos = {L: i for i, L in enumerate(labs)}
    seq = [pos[G.wrap_label(n, first + 2 * i)] for i in range(k)]
    ok = np.ones(len(S), bool)
    for i in seq:
        for j in seq:
            if i < j:
                ok &= Pm[:, i] != j
    T = S[ok]
    return {keys[e] for e in np.nonzero(np.all(T == OCC, axis=0))[0] if keys[e][0] in "hv"}, ok.sum()


@pytest.fixture(scope="module")
def partner_tables():
    from fplpoly._engine import _trace

    out = {}
    for n in (4, 5):
        for par in ("even", "odd"):
            g, S = G.enumerate_fpl(n, par)
            Pm = np.empty((len(S), 2 * n), np.int64)
            for t, st in enumerate(S):
                a = g.arrays(np.asarray(st, np.int8))
                p = np.empty(len(a[7]), np.int64)
                _trace(a[0], a[1], a[2], a[3], a[4], a[7], a[8], p)
                Pm[t] = p
            keys = {e: k for k, e in g.edge_key.items()}
            out[(n, par)] = (G.parity_labels(n, par), [keys[e] for e in range(len(keys))], S, Pm)
    return out


def test_sequence_triangle_sound_and_tight(partner_tables):
    # the triangle plus propagation is exactly the set of edges shared by all
    # configurations in which the run lies on pairwise different loops
    checked = 0
    for n in (4, 5):
        for first in range(-2 * n + 1, 2 * n + 1):
            for k in range(2, 2 * n):
                tri = G.sequence_triangle(n, first, k)
                if not tri:
                    continue
                par = "even" if first % 2 == 0 else "odd"
                fx, cnt = _forced_by_run(n, first, k, partner_tables[(n, par)])
                if not cnt:
                    continue
                assert G.propagate(n, par, tri) == fx
                checked += 1
    assert checked > 50


def test_xi1_occupancy():
    # exactly d-1 occupied verticals cross xi_1 in every configuration
    for kind, X, m, Y in [("nested", P("()()"), 6, None), ("squeeze", P("()()"), 5, P("()")),
                          ("squeeze", P("(())"), 5, P("()"))]:
        n, pairs = G.placement(kind, X, m, Y)
        fx = {k: OCC for k in G.fixed_edges(kind, X, m, Y)}
        acc, g, res = G.count_with_matching(n, pairs, fixed=fx, store_cap=10 ** 5)
        ids = [g.edge_key[k] for k in G.xi1_edges(n, X.d)]
        assert set(res["store"][:acc][:, ids].sum(axis=1).tolist()) == {X.d - 1}


def test_seeded_count_matches_unseeded():
    for kind, X, m in [("corner", P("()()"), 4), ("corner", P("(())"), 5), ("nested", P("()"), 4)]:
        assert G.count_placed(kind, X, m) == G.count_placed(kind, X, m, seeded=False)


def test_workers_split():
    assert G.census(5, workers=2) == G.census(5)
