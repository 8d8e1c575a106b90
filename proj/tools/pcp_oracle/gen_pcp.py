#!/usr/bin/env python3
"""Generate consistent power-commutator presentations of free Burnside groups.

Runs the p-quotient algorithm (lower exponent-p central series) on the free
group of rank r, enforcing the exponent law w^n = 1 layer by layer, until a
layer comes out empty.  For exponent 4 the result is re-based onto a pc
sequence refining the lower central series so that generator weights are
lower-central classes.

It has its own (slow, recursive) collector and linear algebra, separate from
the C++ library, which checks consistency and exponent on load.

Usage: gen_pcp.py NAME RANK EXPONENT OUTFILE
"""

import itertools
import random
import sys


class Pcp:
    """Power-commutator presentation over GF(p) with exponent-vector elements."""

    def __init__(self, p, m):
        self.p = p
        self.m = m
        self.power = [[0] * m for _ in range(m)]
        self.comm = {}
        self.central = [False] * m
        self.weights = [1] * m
        self.defs = [None] * m

    def finalize(self):
        m = self.m
        for j in range(m):
            for i in range(j):
                self.comm.setdefault((j, i), [0] * m)
        self.power_word = [vec_to_word(v) for v in self.power]
        self.comm_word = {k: vec_to_word(v) for k, v in self.comm.items()}
        self.nontrivial = [[False] * m for _ in range(m)]
        for (j, i), v in self.comm.items():
            self.nontrivial[j][i] = any(v)

    def identity(self):
        return [0] * self.m

    def unit(self, k, e=1):
        v = [0] * self.m
        v[k] = e % self.p
        return v

    def mul_gen(self, a, k):
        p = self.p
        if self.central[k]:
            a = a[:]
            a[k] = (a[k] + 1) % p
            return a
        commutes = all(a[j] == 0 or not self.nontrivial[j][k]
                       for j in range(k + 1, self.m))
        if commutes and a[k] + 1 < p:
            a = a[:]
            a[k] += 1
            return a
        res = a[:k + 1] + [0] * (self.m - k - 1)
        res[k] += 1
        if res[k] == p:
            res[k] = 0
            for g in self.power_word[k]:
                res = self.mul_gen(res, g)
        for j in range(k + 1, self.m):
            for _ in range(a[j]):
                res = self.mul_gen(res, j)
                if self.nontrivial[j][k]:
                    for g in self.comm_word[(j, k)]:
                        res = self.mul_gen(res, g)
        return res

    def mul(self, a, b):
        for j in range(self.m):
            for _ in range(b[j]):
                a = self.mul_gen(a, j)
        return a

    def inv(self, a):
        r = a[:]
        x = [0] * self.m
        for k in range(self.m):
            e = (-r[k]) % self.p
            x[k] = e
            for _ in range(e):
                r = self.mul_gen(r, k)
        assert not any(r)
        return x

    def pow(self, a, n):
        r = self.identity()
        for _ in range(n):
            r = self.mul(r, a)
        return r

    def comm_of(self, a, b):
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def consistency_pairs(self):
        """Yield (lhs, rhs) pairs that agree iff the presentation is consistent."""
        m, p = self.m, self.p
        e = self.unit
        for k in range(m):
            for j in range(k):
                for i in range(j):
                    lhs = self.mul_gen(self.mul_gen(e(k), j), i)
                    rhs = self.mul(e(k), self.mul_gen(e(j), i))
                    yield lhs, rhs
        for j in range(m):
            for i in range(j):
                lhs = self.mul_gen(self.power[j][:], i)
                rhs = self.mul(e(j, p - 1), self.mul_gen(e(j), i))
                yield lhs, rhs
                lhs = self.mul(e(j), self.power[i])
                rhs = self.mul_gen(self.mul(e(j), e(i, p - 1)), i)
                yield lhs, rhs
        for i in range(m):
            yield self.mul_gen(self.power[i][:], i), self.mul(e(i), self.power[i])


def vec_to_word(v):
    w = []
    for j, x in enumerate(v):
        w.extend([j] * x)
    return w


def rref(rows, ncols, p):
    """Reduced row echelon form over GF(p); returns (rows, pivot columns)."""
    rows = [r[:] for r in rows if any(r)]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def initial_pcp(p, r):
    g = Pcp(p, r)
    for i in range(r):
        g.defs[i] = ("gen", i)
    g.finalize()
    return g


def relation_list(g):
    """Relations of g in canonical order: commutators by (j, i), then powers."""
    rels = [("c", j, i) for j in range(g.m) for i in range(j)]
    rels += [("p", i) for i in range(g.m)]
    return rels


def is_definition(g, rel):
    return rel in [d for d in g.defs if d is not None]


def free_preference(g, rel, cls):
    """Higher is better: relations whose tails we would like to keep."""
    if rel[0] == "c":
        _, j, i = rel
        good = g.weights[j] == cls and g.weights[i] == 1
        return (2 if good else 0, -j, -i)
    _, i = rel
    return (1 if g.weights[i] == cls else 0, -i, 0)


def next_class(g, n, cls, rng, log):
    """Compute the class cls+1 quotient from the class cls quotient g."""
    p, m = g.p, g.m
    tail_rels = [rel for rel in relation_list(g) if not is_definition(g, rel)]
    s = len(tail_rels)
    cover = Pcp(p, m + s)
    cover.weights = g.weights + [cls + 1] * s
    for i in range(m):
        cover.power[i] = g.power[i] + [0] * s
    for (j, i), v in g.comm.items():
        cover.comm[(j, i)] = v + [0] * s
    for t, rel in enumerate(tail_rels):
        cover.central[m + t] = True
        if rel[0] == "c":
            cover.comm[(rel[1], rel[2])][m + t] = 1
        else:
            cover.power[rel[1]][m + t] = 1
    cover.finalize()

    relations = []
    for lhs, rhs in cover.consistency_pairs():
        assert lhs[:m] == rhs[:m], "underlying presentation is inconsistent"
        relations.append([(a - b) % p for a, b in zip(lhs[m:], rhs[m:])])
    log(f"  class {cls + 1}: {s} tails, consistency rank "
        f"{len(rref(relations, s, p)[1])}")

    def add_power_relation(vec):
        x = vec + [0] * s
        y = cover.pow(x, n)
        assert not any(y[:m]), "quotient does not satisfy the exponent law"
        relations.append(y[m:])

    # Sampled elements first; if they already kill every tail the layer is
    # provably empty.  Otherwise fall back to the exhaustive enumeration.
    for _ in range(200):
        add_power_relation([rng.randrange(p) for _ in range(m)])
    rows, pivots = rref(relations, s, p)
    if len(pivots) < s:
        log(f"  exhaustive exponent check over {p ** m} elements")
        for vec in itertools.product(range(p), repeat=m):
            add_power_relation(list(vec))
            if len(relations) > 4 * s:
                rows, _ = rref(relations, s, p)
                relations = rows
    # Reorder columns so preferred-free tails sit rightmost (pivots go left).
    order = sorted(range(s), key=lambda t: free_preference(g, tail_rels[t], cls))
    permuted = [[row[t] for t in order] for row in relations]
    rows, pivots = rref(permuted, s, p)
    free_cols = [c for c in range(s) if c not in pivots]
    free_tails = sorted((order[c] for c in free_cols))
    log(f"  class {cls + 1}: new layer dimension {len(free_tails)}")
    if not free_tails:
        return None

    # Express every tail in terms of the free tails.
    tail_value = {}
    for t in free_tails:
        v = [0] * len(free_tails)
        v[free_tails.index(t)] = 1
        tail_value[t] = v
    for row, pc in zip(rows, pivots):
        t = order[pc]
        v = [0] * len(free_tails)
        for c in free_cols:
            if row[c]:
                v[free_tails.index(order[c])] = (-row[c]) % p
        tail_value[t] = v

    k = len(free_tails)
    h = Pcp(p, m + k)
    h.weights = g.weights + [cls + 1] * k
    h.defs = g.defs + [tail_rels[t] for t in free_tails]
    for i in range(m):
        h.power[i] = g.power[i] + [0] * k
    for (j, i), v in g.comm.items():
        h.comm[(j, i)] = v + [0] * k
    for t, rel in enumerate(tail_rels):
        add = tail_value[t]
        target = h.comm[(rel[1], rel[2])] if rel[0] == "c" else h.power[rel[1]]
        for a in range(k):
            target[m + a] = (target[m + a] + add[a]) % p
    h.finalize()
    return h


def burnside(p, r, n, log):
    rng = random.Random(20020529)
    g = initial_pcp(p, r)
    cls = 1
    while True:
        h = next_class(g, n, cls, rng, log)
        if h is None:
            return g
        g = h
        cls += 1


def check(g, n, rng, samples):
    for lhs, rhs in g.consistency_pairs():
        assert lhs == rhs, "output presentation is inconsistent"
    for _ in range(samples):
        x = [rng.randrange(g.p) for _ in range(g.m)]
        assert not any(g.pow(x, n)), "output violates exponent law"


# ---------------------------------------------------------------------------
# Re-basing onto a pc sequence refining the lower central series.


class Subgroup:
    def __init__(self, g, gens):
        self.g = g
        self.elems = {tuple(g.identity())}
        self.gens = []
        for x in gens:
            self.add(x)

    def add(self, x):
        if tuple(x) in self.elems:
            return
        self.gens.append(x)
        frontier = list(self.elems)
        while frontier:
            nxt = []
            for e in frontier:
                for y in self.gens:
                    z = tuple(self.g.mul(list(e), y))
                    if z not in self.elems:
                        self.elems.add(z)
                        nxt.append(z)
            frontier = nxt

    def __contains__(self, x):
        return tuple(x) in self.elems


def normal_closure(g, gens):
    h = Subgroup(g, [])
    queue = [x for x in gens]
    pcgens = [g.unit(k) for k in range(g.m)]
    while queue:
        x = queue.pop()
        if x in h:
            continue
        h.add(x)
        for y in pcgens:
            queue.append(g.mul(g.mul(g.inv(y), x), y))
    return h


def lower_central_rebase(g, r, log):
    """Return a new Pcp whose pc sequence refines the lower central series."""
    p = g.p
    everything = Subgroup(g, [g.unit(k) for k in range(g.m)])
    series = [everything]
    free_gens = [g.unit(k) for k in range(r)]
    while len(series[-1].elems) > 1:
        cur = series[-1]
        comms = [g.comm_of(a, b) for a in cur.gens for b in free_gens]
        series.append(normal_closure(g, comms))
    log("  lower central series orders: " +
        ", ".join(str(len(s.elems)) for s in series))

    chosen = []       # new pc generators, as old exponent vectors
    weights = []
    for w in range(1, len(series)):
        top, bottom = series[w - 1], series[w]
        # refine top/bottom by the p-power series inside the layer
        level = top
        while len(level.elems) > len(bottom.elems):
            powers = [g.pow(x, p) for x in level.gens] + bottom.gens
            below = normal_closure(g, powers)
            cand = list(free_gens) if w == 1 and level is top else []
            for x in chosen:
                cand.append(g.pow(x, p))
            for a in chosen:
                for b in free_gens:
                    cand.append(g.comm_of(a, b))
            cand += [list(e) for e in sorted(level.elems)]
            span = Subgroup(g, below.gens)
            picked = []
            for x in cand:
                if x in level and x not in span:
                    span.add(x)
                    picked.append(x)
                    if len(span.elems) == len(level.elems):
                        break
            chosen.extend(picked)
            weights.extend([w] * len(picked))
            level = below

    m = len(chosen)
    assert m == g.m
    # tails[j] = <chosen[j], ..., chosen[m-1]>
    tails = [None] * (m + 1)
    tails[m] = Subgroup(g, [])
    for j in range(m - 1, -1, -1):
        tails[j] = Subgroup(g, tails[j + 1].gens + [chosen[j]])
        assert len(tails[j].elems) == p * len(tails[j + 1].elems)

    def sift(x):
        v = [0] * m
        for j in range(m):
            inv = g.inv(chosen[j])
            for e in range(p):
                if x in tails[j + 1]:
                    break
                x = g.mul(inv, x)
                v[j] += 1
            assert x in tails[j + 1]
        assert not any(x)
        return v

    h = Pcp(p, m)
    h.weights = weights
    for i in range(m):
        h.power[i] = sift(g.pow(chosen[i], p))
        for j in range(i):
            h.comm[(i, j)] = sift(g.comm_of(chosen[i], chosen[j]))
    h.finalize()
    return h


# ---------------------------------------------------------------------------


def write_pcp(g, name, r, n, path):
    with open(path, "w") as f:
        f.write(f"# Free Burnside group B({r},{n}); generated by tools/pcp_oracle/gen_pcp.py\n")
        f.write(f"# order {g.p}^{g.m}; pc generators 1..{r} are the images of the free generators\n")
        f.write(f"name {name}\n")
        f.write(f"prime {g.p}\n")
        f.write(f"ngens {g.m}\n")
        f.write(f"rank {r}\n")
        f.write(f"exponent {n}\n")
        f.write("weights " + ",".join(str(w) for w in g.weights) + "\n")
        for i in range(g.m):
            f.write(f"p {i + 1} = " + ",".join(map(str, g.power[i])) + "\n")
        for i in range(g.m):
            for j in range(i):
                f.write(f"c {i + 1} {j + 1} = " + ",".join(map(str, g.comm[(i, j)])) + "\n")


def main(argv):
    if len(argv) != 5:
        print(__doc__)
        return 2
    name, r, n, out = argv[1], int(argv[2]), int(argv[3]), argv[4]
    p = {2: 2, 3: 3, 4: 2}[n]
    log = lambda s: print(s, file=sys.stderr)
    log(f"{name}: B({r},{n}) over p = {p}")
    g = burnside(p, r, n, log)
    if n == 4:
        g = lower_central_rebase(g, r, log)
    rng = random.Random(7)
    check(g, n, rng, 500)
    log(f"{name}: {g.m} pc generators, weights {g.weights}")
    write_pcp(g, name, r, n, out)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
