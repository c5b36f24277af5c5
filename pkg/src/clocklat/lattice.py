"""Finite poset and lattice engine over opaque, orderable element keys.

Lattices are built from a move generator: the order is the reflexive
transitive closure of one-step moves, antisymmetry is checked (with a
witness cycle on failure), and cover pairs are derived from the order.
Meets, joins, distributivity, isomorphism, products and deterministic
DOT/JSON exports operate on the resulting structure.
"""

from __future__ import annotations

import json

from .errors import CycleDetected, NotALattice


class Lattice:
    """A finite poset with cached reachability and optional lattice ops.

    ``elements`` is the sorted tuple of canonical keys.  ``moves`` are the
    raw generator pairs (as index pairs); ``covers`` the derived covering
    pairs.  ``down[i]``/``up[i]`` are bitmask closures including ``i``.
    """

    def __init__(self, elements, move_pairs):
        self.elements = tuple(sorted(elements))
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.moves = tuple(sorted((self.index[a], self.index[b])
                                  for a, b in move_pairs))
        self._close()

    def _close(self):
        n = len(self.elements)
        succ = [[] for _ in range(n)]
        pred = [[] for _ in range(n)]
        for a, b in self.moves:
            succ[a].append(b)
            pred[b].append(a)

        order = self._topological(succ)   # post-order: descendants first

        self.up = [0] * n
        for i in order:
            m = 1 << i
            for j in succ[i]:
                m |= self.up[j]
            self.up[i] = m
        self.down = [0] * n
        for i in reversed(order):
            m = 1 << i
            for j in pred[i]:
                m |= self.down[j]
            self.down[i] = m
        # reversed post-order is a linear extension
        self.topo_rank = [0] * n
        for r, i in enumerate(reversed(order)):
            self.topo_rank[i] = r

        covers = []
        for a, b in set(self.moves):
            if a == b:
                continue
            between = self.up[a] & self.down[b] & ~(1 << a) & ~(1 << b)
            if not between:
                covers.append((a, b))
        self.covers = tuple(sorted(covers))
        self._meet = None
        self._join = None

    def _topological(self, succ):
        n = len(self.elements)
        state = [0] * n
        order = []
        for root in range(n):
            if state[root]:
                continue
            stack = [(root, iter(succ[root]))]
            state[root] = 1
            path = [root]
            while stack:
                node, it = stack[-1]
                advanced = False
                for nxt in it:
                    if state[nxt] == 1:
                        cyc = path[path.index(nxt):] + [nxt]
                        raise CycleDetected(
                            "moves are not antisymmetric",
                            [self.elements[i] for i in cyc])
                    if state[nxt] == 0:
                        state[nxt] = 1
                        stack.append((nxt, iter(succ[nxt])))
                        path.append(nxt)
                        advanced = True
                        break
                if not advanced:
                    state[node] = 2
                    order.append(node)
                    stack.pop()
                    path.pop()
        return order

    # -- order queries --

    def __len__(self):
        return len(self.elements)

    def leq(self, x, y):
        return bool(self.up[self.index[x]] >> self.index[y] & 1)

    def cover_pairs(self):
        return [(self.elements[a], self.elements[b]) for a, b in self.covers]

    def move_pairs(self):
        return sorted({(self.elements[a], self.elements[b])
                       for a, b in self.moves if a != b})

    def minimum(self):
        full = (1 << len(self.elements)) - 1
        for i in range(len(self.elements)):
            if self.up[i] == full:
                return self.elements[i]
        return None

    def maximum(self):
        full = (1 << len(self.elements)) - 1
        for i in range(len(self.elements)):
            if self.down[i] == full:
                return self.elements[i]
        return None

    # -- lattice structure --

    def _tables(self):
        """Meet and join index tables, or a witness pair of indices."""
        if self._meet is not None:
            return None
        n = len(self.elements)
        rank = self.topo_rank

        def bits(mask):
            while mask:
                low = mask & -mask
                yield low.bit_length() - 1
                mask ^= low

        meet = [[-1] * n for _ in range(n)]
        join = [[-1] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                lb = self.down[a] & self.down[b]
                if not lb:
                    return (a, b)
                m = max(bits(lb), key=lambda i: rank[i])
                if self.down[m] != lb:
                    return (a, b)
                ub = self.up[a] & self.up[b]
                if not ub:
                    return (a, b)
                j = min(bits(ub), key=lambda i: rank[i])
                if self.up[j] != ub:
                    return (a, b)
                meet[a][b] = meet[b][a] = m
                join[a][b] = join[b][a] = j
        self._meet = meet
        self._join = join
        return None

    def is_lattice(self):
        if len(self.elements) == 0:
            return True
        return self._tables() is None


def from_moves(seeds, move_generator):
    """Close a seed set under a deterministic move generator.

    Raises CycleDetected (with a witness cycle) when the generated relation
    is not a partial order.
    """
    seen = set()
    frontier = sorted(seeds)
    for s in frontier:
        seen.add(s)
    pairs = []
    while frontier:
        nxt = []
        for x in frontier:
            for y in sorted(move_generator(x)):
                pairs.append((x, y))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = sorted(nxt)
    return Lattice(seen, pairs)


def _require_tables(lat):
    wit = lat._tables()
    if wit is not None:
        a, b = wit
        raise NotALattice("no unique meet/join",
                          (lat.elements[a], lat.elements[b]))


def is_lattice(lat: Lattice):
    return lat.is_lattice()


def meet(lat: Lattice, x, y):
    _require_tables(lat)
    return lat.elements[lat._meet[lat.index[x]][lat.index[y]]]


def join(lat: Lattice, x, y):
    _require_tables(lat)
    return lat.elements[lat._join[lat.index[x]][lat.index[y]]]


def is_distributive(lat: Lattice):
    """Exhaustive triple check; returns (ok, witness_triple_or_None)."""
    n = len(lat.elements)
    if n == 0:
        return True, None
    _require_tables(lat)
    mt, jt = lat._meet, lat._join
    for a in range(n):
        ma = mt[a]
        for b in range(n):
            jab = jt[a]
            mab = ma[b]
            for c in range(n):
                if ma[jt[b][c]] != jt[mab][ma[c]]:
                    return False, (lat.elements[a], lat.elements[b],
                                   lat.elements[c])
    return True, None


def is_isomorphic(l1: Lattice, l2: Lattice):
    """An order isomorphism as a key mapping, or None."""
    n = len(l1.elements)
    if n != len(l2.elements):
        return None

    def profile(lat):
        out = []
        for i in range(len(lat.elements)):
            ups = bin(lat.up[i]).count('1')
            downs = bin(lat.down[i]).count('1')
            covs_out = sum(1 for a, _ in lat.covers if a == i)
            covs_in = sum(1 for _, b in lat.covers if b == i)
            out.append((ups, downs, covs_out, covs_in))
        return out

    p1, p2 = profile(l1), profile(l2)
    if sorted(p1) != sorted(p2):
        return None

    candidates = [[j for j in range(n) if p2[j] == p1[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    image = [-1] * n
    used = [False] * n

    def leq1(a, b):
        return bool(l1.up[a] >> b & 1)

    def leq2(a, b):
        return bool(l2.up[a] >> b & 1)

    def rec(k):
        if k == n:
            return True
        i = order[k]
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for k2 in range(k):
                i2 = order[k2]
                if leq1(i, i2) != leq2(j, image[i2]) or \
                        leq1(i2, i) != leq2(image[i2], j):
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                if rec(k + 1):
                    return True
                used[j] = False
                image[i] = -1
        return False

    if not rec(0):
        return None
    return {l1.elements[i]: l2.elements[image[i]] for i in range(n)}


def product(*lattices):
    """Componentwise product order as a lattice over key tuples."""
    if not lattices:
        return Lattice([()], [])
    elems = [()]
    for lat in lattices:
        elems = [e + (x,) for e in elems for x in lat.elements]
    moves = []
    for e in elems:
        for k, lat in enumerate(lattices):
            i = lat.index[e[k]]
            for a, b in lat.covers:
                if a == i:
                    moves.append((e, e[:k] + (lat.elements[b],) + e[k + 1:]))
    return Lattice(elems, moves)


def _labels(lat, label=None):
    if label is None:
        label = repr
    return [label(e) for e in lat.elements]


def export_dot(lat: Lattice, label=None, name="lattice"):
    """Hasse diagram in DOT; byte-identical for identical lattices."""
    labels = _labels(lat, label)
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, text in enumerate(labels):
        lines.append(f'  n{i} [label="{text}"];')
    for a, b in lat.covers:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(lat: Lattice, label=None, extra=None):
    labels = _labels(lat, label)
    witness = None
    lattice_ok = lat.is_lattice()
    distributive = None
    if lattice_ok and len(lat.elements):
        distributive, wit = is_distributive(lat)
        if wit is not None:
            witness = [labels[lat.index[w]] for w in wit]
    doc = {
        "elements": labels,
        "covers": [[a, b] for a, b in lat.covers],
        "is_lattice": lattice_ok,
        "is_distributive": distributive,
    }
    if witness is not None:
        doc["witness"] = witness
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
