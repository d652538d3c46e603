"""numba kernels for clique search on dense bitset graphs.

Graphs are ``(n, W)`` uint64 adjacency matrices.  Both searches keep their
whole DFS state in caller-owned arrays so they can stop after a node quota
and be resumed; the Python driver uses that to enforce wall-clock budgets.
"""
import numpy as np
from numba import njit

# scalar slots in the ``state`` array
DEPTH, BEST, NODES, STARTED, FOUND = 0, 1, 2, 3, 4

RUNNING, DONE = 0, 1

_DEBRUIJN = np.uint64(0x03F79D71B4CB0A89)
_DB_TABLE = np.array([
    0, 47, 1, 56, 48, 27, 2, 60, 57, 49, 41, 37, 28, 16, 3, 61,
    54, 58, 35, 52, 50, 42, 21, 44, 38, 32, 29, 23, 17, 11, 4, 62,
    46, 55, 26, 59, 40, 36, 15, 53, 34, 51, 20, 43, 31, 22, 10, 45,
    25, 39, 14, 33, 19, 30, 9, 24, 13, 18, 8, 12, 7, 6, 5, 63,
], dtype=np.int64)


@njit(cache=True)
def _ctz(x):
    # bitScanForward via x ^ (x-1), valid for x != 0
    return _DB_TABLE[((x ^ (x - np.uint64(1))) * _DEBRUIJN) >> np.uint64(58)]


@njit(cache=True)
def _lowbit(P, W):
    for w in range(W):
        if P[w] != 0:
            return w * 64 + _ctz(P[w])
    return -1


@njit(cache=True)
def _clear(P, v):
    P[v >> 6] &= ~(np.uint64(1) << np.uint64(v & 63))


@njit(cache=True)
def color_sort(adj, P, order, bnd, U, Q):
    """Greedy sequential colouring of P in index order.

    Fills ``order``/``bnd`` with vertices and their colour numbers (non-decreasing)
    and returns the vertex count.
    """
    W = P.shape[0]
    cnt = 0
    k = 0
    for w in range(W):
        U[w] = P[w]
    while True:
        if _lowbit(U, W) < 0:
            break
        k += 1
        for w in range(W):
            Q[w] = U[w]
        while True:
            v = _lowbit(Q, W)
            if v < 0:
                break
            _clear(U, v)
            _clear(Q, v)
            for w in range(W):
                Q[w] &= ~adj[v, w]
            order[cnt] = v
            bnd[cnt] = k
            cnt += 1
    return cnt


@njit(cache=True)
def max_clique_run(adj, P0, P, order, bnd, pos, R, bestset, U, Q, state, quota):
    """Branch and bound for a clique larger than ``state[BEST]``.

    Runs at most ``quota`` more branching nodes.  Returns DONE when the tree
    is exhausted, RUNNING when the quota ran out first.
    """
    W = adj.shape[1]
    if state[STARTED] == 0:
        for w in range(W):
            P[0, w] = P0[w]
        cnt = color_sort(adj, P[0], order[0], bnd[0], U, Q)
        pos[0] = cnt - 1
        state[DEPTH] = 0
        state[NODES] += 1
        state[STARTED] = 1
    d = state[DEPTH]
    best = state[BEST]
    budget_end = state[NODES] + quota
    status = DONE
    while True:
        i = pos[d]
        if i < 0 or d + bnd[d, i] <= best:
            if d == 0:
                pos[0] = -1
                break
            d -= 1
            _clear(P[d], R[d])
            pos[d] -= 1
            continue
        v = order[d, i]
        R[d] = v
        nonempty = False
        for w in range(W):
            x = P[d, w] & adj[v, w]
            P[d + 1, w] = x
            if x != 0:
                nonempty = True
        if not nonempty:
            if d + 1 > best:
                best = d + 1
                for j in range(d + 1):
                    bestset[j] = R[j]
            _clear(P[d], v)
            pos[d] -= 1
            continue
        if state[NODES] >= budget_end:
            status = RUNNING
            break
        state[NODES] += 1
        cnt = color_sort(adj, P[d + 1], order[d + 1], bnd[d + 1], U, Q)
        d += 1
        pos[d] = cnt - 1
    state[DEPTH] = d
    state[BEST] = best
    return status


@njit(cache=True)
def lex_clique_run(adj, P0, target, P, C, order, bnd, R, U, Q, state, quota):
    """Depth-first search, smallest vertex first, for a clique of size ``target``.

    The first clique reached is the lexicographically smallest one of that size.
    On success ``state[FOUND] = 1`` and ``R[:target]`` holds it.
    """
    W = adj.shape[1]
    if state[STARTED] == 0:
        state[STARTED] = 1
        state[NODES] += 1
        for w in range(W):
            P[0, w] = P0[w]
            C[0, w] = P0[w]
        state[DEPTH] = 0
        if target == 0:
            state[FOUND] = 1
            return DONE
        cnt = color_sort(adj, P[0], order[0], bnd[0], U, Q)
        if cnt == 0 or bnd[0, cnt - 1] < target:
            return DONE
    d = state[DEPTH]
    budget_end = state[NODES] + quota
    while True:
        v = _lowbit(C[d], W)
        if v < 0:
            if d == 0:
                break
            d -= 1
            continue
        _clear(C[d], v)
        R[d] = v
        if d + 1 == target:
            state[FOUND] = 1
            state[DEPTH] = d
            return DONE
        # candidates adjacent to v and larger than v
        vw = v >> 6
        for w in range(W):
            if w < vw:
                P[d + 1, w] = 0
            else:
                P[d + 1, w] = P[d, w] & adj[v, w]
        P[d + 1, vw] &= ~((np.uint64(2) << np.uint64(v & 63)) - np.uint64(1))
        if state[NODES] >= budget_end:
            # roll back so the resumed run retries v
            C[d, vw] |= np.uint64(1) << np.uint64(v & 63)
            state[DEPTH] = d
            return RUNNING
        state[NODES] += 1
        cnt = color_sort(adj, P[d + 1], order[d + 1], bnd[d + 1], U, Q)
        colours = bnd[d + 1, cnt - 1] if cnt > 0 else 0
        if d + 1 + colours < target:
            continue
        for w in range(W):
            C[d + 1, w] = P[d + 1, w]
        d += 1
    state[DEPTH] = d
    return DONE
