"""Pure-Python detection kernels.

These are the fallback twins of the compiled kernels in _sweeps.pyx. Both
implementations use integer arithmetic only and identical tie-breaking, so
they produce bit-identical labelings; which one is active never changes a
result, only its speed.
"""


class LouvainSweeper:
    """One level of local moves over a weighted aggregate graph.

    The graph is CSR (indptr/indices/weights) plus per-node self-loop
    weight, where self_w[i] holds twice the internal edge weight of the
    group node i represents. Communities start as singletons; sweep()
    performs one pass over `order`, moving each node to the neighboring
    community with the best modularity gain. Gains are compared via the
    integer score 2W * k(u, c) - tot(c) * k(u); a node moves only when the
    best score strictly beats staying put, ties between target communities
    going to the smallest community id.
    """

    def __init__(self, indptr, indices, weights, self_w):
        self.indptr = list(indptr)
        self.indices = list(indices)
        self.weights = list(weights)
        self.self_w = list(self_w)
        n = len(indptr) - 1
        self.n = n
        strength = []
        for u in range(n):
            s = self.self_w[u]
            for idx in range(self.indptr[u], self.indptr[u + 1]):
                s += self.weights[idx]
            strength.append(s)
        self.strength = strength
        self.two_w = sum(strength)
        self.node_labels = list(range(n))
        self.tot = list(strength)

    def sweep(self, order) -> int:
        indptr = self.indptr
        indices = self.indices
        weights = self.weights
        labels = self.node_labels
        tot = self.tot
        two_w = self.two_w
        moves = 0
        for u in order:
            cu = labels[u]
            ku = self.strength[u]
            tot[cu] -= ku
            acc = {}
            for idx in range(indptr[u], indptr[u + 1]):
                c = labels[indices[idx]]
                acc[c] = acc.get(c, 0) + weights[idx]
            own = two_w * acc.get(cu, 0) - tot[cu] * ku
            best_c = cu
            best_score = own
            moved = False
            for c, k_uc in acc.items():
                if c == cu:
                    continue
                score = two_w * k_uc - tot[c] * ku
                if score > best_score or (score == best_score and moved and c < best_c):
                    best_c = c
                    best_score = score
                    moved = True
            labels[u] = best_c
            tot[best_c] += ku
            if best_c != cu:
                moves += 1
        return moves

    def labels(self):
        return list(self.node_labels)


class LabelSweeper:
    """Asynchronous label-propagation sweeps.

    Each node adopts the most frequent label among its neighbors; when its
    current label already has maximal frequency it is kept, otherwise ties
    between maximal labels are broken by the seeded priority permutation
    supplied by the caller (smallest priority wins).
    """

    def __init__(self, indptr, indices, priority):
        self.indptr = list(indptr)
        self.indices = list(indices)
        self.priority = list(priority)
        self.n = len(indptr) - 1
        self.node_labels = list(range(self.n))

    def sweep(self, order) -> int:
        indptr = self.indptr
        indices = self.indices
        labels = self.node_labels
        priority = self.priority
        changes = 0
        for u in order:
            lo, hi = indptr[u], indptr[u + 1]
            if lo == hi:
                continue
            counts = {}
            for idx in range(lo, hi):
                lab = labels[indices[idx]]
                counts[lab] = counts.get(lab, 0) + 1
            best = max(counts.values())
            current = labels[u]
            if counts.get(current, 0) == best:
                continue
            chosen = -1
            chosen_pri = -1
            for lab, cnt in counts.items():
                if cnt == best and (chosen < 0 or priority[lab] < chosen_pri):
                    chosen = lab
                    chosen_pri = priority[lab]
            labels[u] = chosen
            changes += 1
        return changes

    def labels(self):
        return list(self.node_labels)
