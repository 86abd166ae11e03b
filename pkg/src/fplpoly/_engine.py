"""Backtracking enumerator for degree-2 subgraphs with fixed edges.

Both the full grid Q_n and the constrained sub-regions are instances of the
same problem: a graph whose vertices must each end up with exactly two
occupied incident edges, some edges being forced in or out beforehand, and
dangling "stub" edges standing for external links or region exits.  The
kernel walks vertices in a fixed order, decides each free edge at the first
of its endpoints, and keeps per-vertex degree and remaining-capacity
counters for pruning.  At each leaf the stubs are paired by tracing paths.
"""

import numpy as np

from ._jit import njit

MODE_CENSUS = 0
MODE_FILTER = 1

KIND_EXACT = 0
KIND_LEFT = 1
KIND_RIGHT = 2
KIND_ANY = 3


@njit(cache=True)
def _trace(state, edge_u, edge_v, inc_ptr, inc_idx, term_edges, edge_term, partner):
    nt = term_edges.shape[0]
    for t in range(nt):
        partner[t] = -1
    for t in range(nt):
        if partner[t] >= 0:
            continue
        prev = term_edges[t]
        cur = edge_u[prev]
        while True:
            nxt = -1
            for q in range(inc_ptr[cur], inc_ptr[cur + 1]):
                e = inc_idx[q]
                if e != prev and state[e] == 1:
                    nxt = e
                    break
            if nxt < 0:
                return False
            if edge_v[nxt] < 0:
                u = edge_term[nxt]
                partner[t] = u
                partner[u] = t
                break
            prev = nxt
            cur = edge_v[nxt] if edge_u[nxt] == cur else edge_u[nxt]
    return True


@njit(cache=True)
def enumerate_kernel(
    state0,
    edge_u,
    edge_v,
    inc_ptr,
    inc_idx,
    dec_ptr,
    dec_idx,
    term_edges,
    edge_term,
    kind,
    want,
    mode,
    counts,
    hits,
    store,
):
    """Run the search.  Returns (number of leaves, number accepted, number stored).

    MODE_CENSUS adds one to ``counts[word]`` per leaf, where bit p of ``word`` is
    set when terminal p closes an arc opened by an earlier terminal.
    MODE_FILTER accepts leaves whose pairing satisfies ``kind``/``want``; accepted
    leaves add to ``hits`` and are copied into ``store`` while room remains.
    """
    nv = inc_ptr.shape[0] - 1
    ne = edge_u.shape[0]
    nt = term_edges.shape[0]
    state = state0.copy()
    deg = np.zeros(nv, np.int64)
    rem = np.zeros(nv, np.int64)
    for e in range(ne):
        a = edge_u[e]
        b = edge_v[e]
        if state[e] == 1:
            deg[a] += 1
            if b >= 0:
                deg[b] += 1
        elif state[e] < 0:
            rem[a] += 1
            if b >= 0:
                rem[b] += 1
    for v in range(nv):
        if deg[v] > 2 or deg[v] + rem[v] < 2:
            return 0, 0, 0
    partner = np.empty(nt, np.int64)
    masks = np.full(nv + 1, -1, np.int64)
    leaves = 0
    accepted = 0
    stored = 0
    level = 0
    while level >= 0:
        if level == nv:
            leaves += 1
            ok = _trace(state, edge_u, edge_v, inc_ptr, inc_idx, term_edges, edge_term, partner)
            if ok:
                if mode == MODE_CENSUS:
                    w = 0
                    for p in range(nt):
                        if partner[p] < p:
                            w |= 1 << p
                    counts[w] += 1
                    accepted += 1
                else:
                    good = True
                    for p in range(nt):
                        q = partner[p]
                        k = kind[p]
                        if k == KIND_ANY:
                            continue
                        if k == KIND_EXACT:
                            if q != want[p]:
                                good = False
                                break
                        elif k == KIND_LEFT:
                            if kind[q] != KIND_RIGHT:
                                good = False
                                break
                        else:
                            if kind[q] != KIND_LEFT:
                                good = False
                                break
                    if good:
                        accepted += 1
                        for e in range(ne):
                            if state[e] == 1:
                                hits[e] += 1
                        if stored < store.shape[0]:
                            for e in range(ne):
                                store[stored, e] = state[e]
                            stored += 1
            level -= 1
            continue
        k = level
        lo = dec_ptr[k]
        f = dec_ptr[k + 1] - lo
        m = masks[k]
        if m >= 0:
            for q in range(f):
                e = dec_idx[lo + q]
                b = edge_v[e] if edge_u[e] == k else edge_u[e]
                if (m >> q) & 1:
                    deg[k] -= 1
                    deg[b] -= 1
                state[e] = -1
                rem[k] += 1
                rem[b] += 1
        need = 2 - deg[k]
        found = -1
        m += 1
        while m < (1 << f):
            pc = 0
            for q in range(f):
                pc += (m >> q) & 1
            if pc == need:
                good = True
                for q in range(f):
                    e = dec_idx[lo + q]
                    b = edge_v[e] if edge_u[e] == k else edge_u[e]
                    take = (m >> q) & 1
                    # other endpoint after this decision
                    if deg[b] + take > 2 or deg[b] + take + rem[b] - 1 < 2:
                        good = False
                        break
                if good:
                    found = m
                    break
            m += 1
        if found < 0 or need < 0:
            masks[k] = -1
            level -= 1
            continue
        for q in range(f):
            e = dec_idx[lo + q]
            b = edge_v[e] if edge_u[e] == k else edge_u[e]
            take = (found >> q) & 1
            state[e] = take
            rem[k] -= 1
            rem[b] -= 1
            if take:
                deg[k] += 1
                deg[b] += 1
        masks[k] = found
        level += 1
        masks[level] = -1
    return leaves, accepted, stored
