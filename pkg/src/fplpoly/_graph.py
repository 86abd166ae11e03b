"""Python-side graph description feeding the enumeration kernel."""

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import _engine
from ._engine import KIND_ANY, KIND_EXACT, KIND_LEFT, KIND_RIGHT, MODE_CENSUS, MODE_FILTER

FREE, EMPTY, OCC = -1, 0, 1


class Graph:
    """Vertices must reach degree exactly 2.

    Vertices are processed in insertion order; stubs (edges with a single
    endpoint) stand for external links and always carry a fixed state.
    """

    def __init__(self):
        self.index = {}
        self.keys = []
        self.eu = []
        self.ev = []
        self.state = []
        self.edge_key = {}
        self.terminals = []

    def vertex(self, key):
        if key not in self.index:
            self.index[key] = len(self.keys)
            self.keys.append(key)
        return self.index[key]

    def edge(self, a, b, state=FREE, key=None):
        ia, ib = self.index[a], self.index[b]
        self.eu.append(ia)
        self.ev.append(ib)
        self.state.append(state)
        eid = len(self.eu) - 1
        self.edge_key[key if key is not None else (a, b)] = eid
        return eid

    def stub(self, a, occupied, key=None, terminal=True):
        self.eu.append(self.index[a])
        self.ev.append(-1)
        self.state.append(OCC if occupied else EMPTY)
        eid = len(self.eu) - 1
        if key is not None:
            self.edge_key[key] = eid
        if occupied and terminal:
            self.terminals.append(eid)
        return eid

    def set_state(self, key, state):
        self.state[self.edge_key[key]] = state

    @property
    def n_edges(self):
        return len(self.eu)

    def arrays(self, state=None):
        st = np.asarray(self.state if state is None else state, dtype=np.int8)
        nv = len(self.keys)
        eu = np.asarray(self.eu, dtype=np.int64)
        ev = np.asarray(self.ev, dtype=np.int64)
        inc = [[] for _ in range(nv)]
        dec = [[] for _ in range(nv)]
        for e, (a, b) in enumerate(zip(self.eu, self.ev)):
            inc[a].append(e)
            if b >= 0:
                inc[b].append(e)
            if st[e] == FREE:
                if b < 0:
                    raise ValueError("stubs must carry a fixed state")
                dec[min(a, b)].append(e)
        inc_ptr, inc_idx = _csr(inc)
        dec_ptr, dec_idx = _csr(dec)
        term = np.asarray(self.terminals, dtype=np.int64)
        edge_term = np.full(len(self.eu), -1, dtype=np.int64)
        edge_term[term] = np.arange(len(term))
        return st, eu, ev, inc_ptr, inc_idx, dec_ptr, dec_idx, term, edge_term


def _csr(lists):
    ptr = np.zeros(len(lists) + 1, dtype=np.int64)
    for i, xs in enumerate(lists):
        ptr[i + 1] = ptr[i] + len(xs)
    idx = np.fromiter((x for xs in lists for x in xs), dtype=np.int64, count=int(ptr[-1]))
    return ptr, idx


def _split_states(g, depth):
    """Fix the first ``depth`` free edges every possible way."""
    free = [e for e, s in enumerate(g.state) if s == FREE][:depth]
    out = []
    for bits in range(1 << len(free)):
        st = list(g.state)
        for q, e in enumerate(free):
            st[e] = (bits >> q) & 1
        out.append(st)
    return out


def _run_one(args):
    g, st, mode, kind, want, cap = args
    arrs = g.arrays(st)
    nt = len(g.terminals)
    counts = np.zeros(1 << nt if mode == MODE_CENSUS else 1, dtype=np.int64)
    hits = np.zeros(g.n_edges, dtype=np.int64)
    store = np.zeros((cap, g.n_edges), dtype=np.int8)
    kind = np.zeros(nt, np.int64) if kind is None else np.asarray(kind, np.int64)
    want = np.full(nt, -1, np.int64) if want is None else np.asarray(want, np.int64)
    leaves, acc, nst = _engine.enumerate_kernel(*arrs, kind, want, mode, counts, hits, store)
    return int(leaves), int(acc), counts, hits, store[:nst]


def run(g, mode=MODE_CENSUS, kind=None, want=None, store_cap=0, workers=1, split_depth=None):
    """Enumerate ``g``; returns dict with leaves, accepted, counts, hits, store."""
    if workers and workers > 1:
        depth = split_depth or max(1, int(np.ceil(np.log2(workers))) + 2)
        jobs = [(g, st, mode, kind, want, store_cap) for st in _split_states(g, depth)]
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_run_one, jobs))
    else:
        parts = [_run_one((g, None, mode, kind, want, store_cap))]
    leaves = sum(p[0] for p in parts)
    acc = sum(p[1] for p in parts)
    counts = sum(p[2] for p in parts)
    hits = sum(p[3] for p in parts)
    store = np.concatenate([p[4] for p in parts]) if parts else np.zeros((0, g.n_edges), np.int8)
    if store_cap:
        store = store[:store_cap]
    return {"leaves": leaves, "accepted": acc, "counts": counts, "hits": hits, "store": store}


__all__ = ["Graph", "run", "FREE", "EMPTY", "OCC", "MODE_CENSUS", "MODE_FILTER",
           "KIND_ANY", "KIND_EXACT", "KIND_LEFT", "KIND_RIGHT"]
