# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled detection kernels; exact twins of _sweeps_py.

All state is int64 and every comparison is integral, so the compiled and
pure-Python kernels return identical labelings for identical inputs.
"""

import array

from cpython cimport array


cdef array.array _as_i64(values):
    cdef array.array out = array.array('q', values)
    return out


cdef class LouvainSweeper:
    cdef array.array _indptr, _indices, _weights, _strength, _labels, _tot, _acc, _touched
    cdef long long two_w
    cdef Py_ssize_t n

    def __init__(self, indptr, indices, weights, self_w):
        cdef Py_ssize_t n = len(indptr) - 1
        cdef Py_ssize_t u, idx
        self.n = n
        self._indptr = _as_i64(indptr)
        self._indices = _as_i64(indices)
        self._weights = _as_i64(weights)
        self._strength = _as_i64(self_w)
        cdef long long[::1] ip = self._indptr
        cdef long long[::1] w = self._weights
        cdef long long[::1] strength = self._strength
        cdef long long total = 0
        for u in range(n):
            for idx in range(ip[u], ip[u + 1]):
                strength[u] += w[idx]
            total += strength[u]
        self.two_w = total
        self._labels = _as_i64(range(n))
        self._tot = array.array('q', self._strength)
        self._acc = array.array('q', bytes(8 * n))
        self._touched = array.array('q', bytes(8 * n))

    def sweep(self, order) -> int:
        cdef array.array order_arr = _as_i64(order)
        cdef long long[::1] order_v = order_arr
        cdef long long[::1] indptr = self._indptr
        cdef long long[::1] indices = self._indices
        cdef long long[::1] weights = self._weights
        cdef long long[::1] strength = self._strength
        cdef long long[::1] labels = self._labels
        cdef long long[::1] tot = self._tot
        cdef long long[::1] acc = self._acc
        cdef long long[::1] touched = self._touched
        cdef long long two_w = self.two_w
        cdef Py_ssize_t oi, idx, t
        cdef long long u, cu, ku, c, n_touch, own, best_c, best_score, score, k_uc
        cdef long long moves = 0
        cdef bint moved
        for oi in range(order_v.shape[0]):
            u = order_v[oi]
            cu = labels[u]
            ku = strength[u]
            tot[cu] -= ku
            n_touch = 0
            for idx in range(indptr[u], indptr[u + 1]):
                c = labels[indices[idx]]
                if acc[c] == 0:
                    touched[n_touch] = c
                    n_touch += 1
                acc[c] += weights[idx]
            own = two_w * acc[cu] - tot[cu] * ku
            best_c = cu
            best_score = own
            moved = False
            for t in range(n_touch):
                c = touched[t]
                if c == cu:
                    continue
                k_uc = acc[c]
                score = two_w * k_uc - tot[c] * ku
                if score > best_score or (score == best_score and moved and c < best_c):
                    best_c = c
                    best_score = score
                    moved = True
            labels[u] = best_c
            tot[best_c] += ku
            if best_c != cu:
                moves += 1
            for t in range(n_touch):
                acc[touched[t]] = 0
        return moves

    def labels(self):
        return list(self._labels)


cdef class LabelSweeper:
    cdef array.array _indptr, _indices, _priority, _labels, _counts, _touched
    cdef Py_ssize_t n

    def __init__(self, indptr, indices, priority):
        cdef Py_ssize_t n = len(indptr) - 1
        self.n = n
        self._indptr = _as_i64(indptr)
        self._indices = _as_i64(indices)
        self._priority = _as_i64(priority)
        self._labels = _as_i64(range(n))
        self._counts = array.array('q', bytes(8 * n))
        self._touched = array.array('q', bytes(8 * n))

    def sweep(self, order) -> int:
        cdef array.array order_arr = _as_i64(order)
        cdef long long[::1] order_v = order_arr
        cdef long long[::1] indptr = self._indptr
        cdef long long[::1] indices = self._indices
        cdef long long[::1] priority = self._priority
        cdef long long[::1] labels = self._labels
        cdef long long[::1] counts = self._counts
        cdef long long[::1] touched = self._touched
        cdef Py_ssize_t oi, idx, t
        cdef long long u, lab, n_touch, best, current, chosen, chosen_pri, cnt
        cdef long long changes = 0
        for oi in range(order_v.shape[0]):
            u = order_v[oi]
            if indptr[u] == indptr[u + 1]:
                continue
            n_touch = 0
            best = 0
            for idx in range(indptr[u], indptr[u + 1]):
                lab = labels[indices[idx]]
                if counts[lab] == 0:
                    touched[n_touch] = lab
                    n_touch += 1
                counts[lab] += 1
                if counts[lab] > best:
                    best = counts[lab]
            current = labels[u]
            if counts[current] == best:
                for t in range(n_touch):
                    counts[touched[t]] = 0
                continue
            chosen = -1
            chosen_pri = -1
            for t in range(n_touch):
                lab = touched[t]
                cnt = counts[lab]
                if cnt == best and (chosen < 0 or priority[lab] < chosen_pri):
                    chosen = lab
                    chosen_pri = priority[lab]
            labels[u] = chosen
            changes += 1
            for t in range(n_touch):
                counts[touched[t]] = 0
        return changes

    def labels(self):
        return list(self._labels)
