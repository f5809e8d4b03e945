"""Balls in the distance-transitive graphs Gamma_{k,l}: copies of K_{k+1}
glued so that every vertex lies in l of them, with no cycles among cliques.

Vertices are generated breadth first as words: the root has l clique slots,
every other vertex l-1 fresh ones, and each clique contributes k new
vertices. The k children of one clique get consecutive ids, so siblings are
an index range and nothing needs deduplicating.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

DEFAULT_CAP = 1_000_000


def gamma_s(k: int, l: int, s: int) -> int:
    if s < 1:
        raise ValueError("s must be >= 1")
    return l * k**s * (l - 1) ** (s - 1)


def ball_size(k: int, l: int, s: int) -> int:
    """Closed form; equals 1 + the sum of gamma_s up to s."""
    if s < 0:
        raise ValueError("s must be >= 0")
    num = l * k * ((l - 1) ** s * k**s - 1)
    den = (l - 1) * k - 1
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("ball size formula did not divide exactly")
    return 1 + q


def reconstruction_gamma(k: int, l: int, n: int) -> int:
    return ball_size(k, l, 2 * n) - ((l - 1) * k) ** (2 * n)


def _check_kl(k: int, l: int):
    if k < 2 or l < 3:
        raise ValueError(f"need k >= 2 and l >= 3, got k={k}, l={l}")


@dataclass
class GammaBall:
    k: int
    l: int
    radius: int
    parent: list
    sib_start: list
    child_start: list
    child_count: list
    depth: list

    def __len__(self):
        return len(self.depth)

    def neighbors(self, v: int) -> list[int]:
        out = []
        p = self.parent[v]
        if p >= 0:
            out.append(p)
            s = self.sib_start[v]
            out.extend(w for w in range(s, s + self.k) if w != v)
        c = self.child_start[v]
        out.extend(range(c, c + self.child_count[v]))
        return out

    def groups(self, v: int) -> list[list[int]]:
        """The neighbourhood of v split by the clique it shares with v."""
        out = []
        if self.parent[v] >= 0:
            s = self.sib_start[v]
            out.append([self.parent[v]] + [w for w in range(s, s + self.k) if w != v])
        c, n = self.child_start[v], self.child_count[v]
        out.extend(list(range(b, b + self.k)) for b in range(c, c + n, self.k))
        return out

    def sphere_counts(self) -> list[int]:
        counts = [0] * (self.radius + 1)
        for d in self.depth:
            counts[d] += 1
        return counts

    def bfs(self, src: int, limit: int) -> dict[int, int]:
        dist = {src: 0}
        q = deque([src])
        while q:
            v = q.popleft()
            dv = dist[v]
            if dv == limit:
                continue
            for w in self.neighbors(v):
                if w not in dist:
                    dist[w] = dv + 1
                    q.append(w)
        return dist


def build_ball(k: int, l: int, radius: int, cap: int = DEFAULT_CAP) -> GammaBall:
    _check_kl(k, l)
    if radius < 1:
        raise ValueError("radius must be >= 1")
    projected = ball_size(k, l, radius)
    if projected > cap:
        raise ValueError(f"ball of radius {radius} has {projected} vertices, above the cap {cap}")
    parent, sib, cstart, ccount, depth = [-1], [-1], [0], [0], [0]
    frontier = [0]
    for d in range(1, radius + 1):
        nxt = []
        for v in frontier:
            cliques = l if v == 0 else l - 1
            cstart[v] = len(depth)
            ccount[v] = cliques * k
            for _ in range(cliques):
                base = len(depth)
                for _ in range(k):
                    parent.append(v)
                    sib.append(base)
                    cstart.append(0)
                    ccount.append(0)
                    depth.append(d)
                nxt.extend(range(base, base + k))
        frontier = nxt
    return GammaBall(k, l, radius, parent, sib, cstart, ccount, depth)


def interior_checks(ball: GammaBall) -> dict:
    """Degree lk and l disjoint K_k's in every interior neighbourhood."""
    bad_degree, bad_cliques, checked = [], [], 0
    adj_cache: dict[int, set] = {}

    def adj(v):
        s = adj_cache.get(v)
        if s is None:
            s = adj_cache[v] = set(ball.neighbors(v))
        return s

    for v in range(len(ball)):
        if ball.depth[v] >= ball.radius:
            continue
        checked += 1
        nb = ball.neighbors(v)
        if len(nb) != ball.l * ball.k:
            bad_degree.append(v)
            continue
        groups = ball.groups(v)
        ok = len(groups) == ball.l and all(len(g) == ball.k for g in groups)
        if ok and ball.depth[v] + 1 < ball.radius:
            where = {w: i for i, g in enumerate(groups) for w in g}
            for w in nb:
                inside = adj(w) & set(nb)
                if inside != set(groups[where[w]]) - {w}:
                    ok = False
                    break
        if not ok:
            bad_cliques.append(v)
    return {"checked": checked, "bad_degree": bad_degree[:5], "bad_cliques": bad_cliques[:5],
            "ok": not bad_degree and not bad_cliques}


def counting_report(k: int, l: int, radius: int, cap: int = DEFAULT_CAP) -> dict:
    ball = build_ball(k, l, radius, cap)
    spheres = ball.sphere_counts()
    rows = []
    total = 1
    ok = True
    for s in range(1, radius + 1):
        total += spheres[s]
        row = {"s": s, "sphere": spheres[s], "gamma_s": gamma_s(k, l, s), "ball": total, "ball_size": ball_size(k, l, s)}
        row["ok"] = row["sphere"] == row["gamma_s"] and row["ball"] == row["ball_size"]
        ok &= row["ok"]
        rows.append(row)
    inner = interior_checks(ball)
    return {"k": k, "l": l, "radius": radius, "vertices": len(ball), "rows": rows,
            "interior": inner, "ok": ok and inner["ok"]}


def claim_check(k: int, l: int, distances: Iterable[int], radius: int | None = None,
                cap: int = DEFAULT_CAP) -> dict:
    """d(u,v) <= 2n iff some w has d(u,w) and d(w,v) in the distance set, n its maximum.

    u ranges over vertices at depth <= radius - 2n, where every witness the
    claim needs lies inside the ball; v over all vertices within 2n + 1 of u.
    """
    _check_kl(k, l)
    ns = sorted(set(distances))
    if not ns or ns[0] < 1:
        raise ValueError("distance set must contain positive integers")
    n = ns[-1]
    if radius is None:
        radius = 3 * n
    if radius < 3 * n:
        raise ValueError(f"radius {radius} below 3 * {n}")
    ball = build_ball(k, l, radius, cap)
    nset = set(ns)
    reach_cache: dict[int, set] = {}

    def reach(w):
        r = reach_cache.get(w)
        if r is None:
            r = reach_cache[w] = {x for x, d in ball.bfs(w, n).items() if d in nset}
        return r

    pairs = failures = 0
    examples = []
    safe = [u for u in range(len(ball)) if ball.depth[u] <= radius - 2 * n]
    for u in safe:
        du = ball.bfs(u, 2 * n + 1)
        linked = set()
        for w, d in du.items():
            if d in nset:
                linked |= reach(w)
        for v, d in du.items():
            pairs += 1
            if (d <= 2 * n) != (v in linked):
                failures += 1
                if len(examples) < 5:
                    examples.append({"u": u, "v": v, "d": d})
    return {"k": k, "l": l, "distances": ns, "radius": radius, "safe_vertices": len(safe),
            "pairs": pairs, "failures": failures, "examples": examples, "ok": failures == 0}


def adjacency_reconstruction(k: int, l: int, n: int, radius: int | None = None,
                             cap: int = DEFAULT_CAP) -> dict:
    """|B_2n(u) & B_2n(v)| is gamma for adjacent u, v and smaller for other distinct pairs."""
    _check_kl(k, l)
    if n < 1:
        raise ValueError("n must be >= 1")
    if radius is None:
        radius = 4 * n + 1
    if radius < 4 * n + 1:
        raise ValueError(f"radius {radius} below 4n + 1 = {4 * n + 1}")
    ball = build_ball(k, l, radius, cap)
    gamma = reconstruction_gamma(k, l, n)
    safe_depth = radius - 2 * n
    safe = [u for u in range(len(ball)) if ball.depth[u] <= safe_depth]
    balls = {u: set(ball.bfs(u, 2 * n)) for u in safe}
    adjacent_values, other_max = set(), None
    pairs = failures = 0
    examples = []
    for u in safe:
        near = ball.bfs(u, 4 * n + 1)
        for v, d in near.items():
            if v <= u or ball.depth[v] > safe_depth:
                continue
            pairs += 1
            size = len(balls[u] & balls[v])
            if d == 1:
                adjacent_values.add(size)
                bad = size != gamma
            else:
                other_max = size if other_max is None else max(other_max, size)
                bad = size >= gamma
            if bad:
                failures += 1
                if len(examples) < 5:
                    examples.append({"u": u, "v": v, "d": d, "size": size})
    return {"k": k, "l": l, "n": n, "radius": radius, "gamma": gamma, "pairs": pairs,
            "adjacent_values": sorted(adjacent_values), "max_non_adjacent": other_max,
            "failures": failures, "examples": examples, "ok": failures == 0 and adjacent_values == {gamma}}


def _regular_tree(t: int, radius: int, cap: int):
    size = 1 + t * sum((t - 1) ** j for j in range(radius))
    if size > cap:
        raise ValueError(f"tree ball has {size} vertices, above the cap {cap}")
    adj: list[list[int]] = [[]]
    depth = [0]
    frontier = [0]
    for d in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for _ in range(t if v == 0 else t - 1):
                w = len(depth)
                depth.append(d)
                adj.append([v])
                adj[v].append(w)
                nxt.append(w)
        frontier = nxt
    return adj, depth


def _tree_bfs(adj, src):
    dist = {src: 0}
    q = deque([src])
    while q:
        v = q.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def t2_decomposition(t: int, radius: int, cap: int = DEFAULT_CAP) -> dict:
    """The distance-2 graph of a t-regular tree ball splits into the two parity
    classes, and each looks like a ball of Gamma_{t-1,t} from its own centre."""
    if t < 3:
        raise ValueError("t must be >= 3")
    if radius < 2:
        raise ValueError("radius must be >= 2")
    adj, depth = _regular_tree(t, radius, cap)
    nv = len(depth)

    def sq_neighbors(v):
        out = set()
        for a in adj[v]:
            out.update(adj[a])
        out.discard(v)
        return out

    comp = [-1] * nv
    ncomp = 0
    for s in range(nv):
        if comp[s] >= 0:
            continue
        comp[s] = ncomp
        q = deque([s])
        while q:
            v = q.popleft()
            for w in sq_neighbors(v):
                if comp[w] < 0:
                    comp[w] = ncomp
                    q.append(w)
        ncomp += 1
    parity_ok = all((comp[v] == comp[0]) == (depth[v] % 2 == 0) for v in range(nv))
    components = []
    for centre, r_tree in ((0, radius), (adj[0][0], radius - 1)):
        tree_dist = _tree_bfs(adj, centre)
        counts: dict[int, int] = {}
        for v, d in tree_dist.items():
            if d <= r_tree and d % 2 == 0 and d > 0:
                counts[d // 2] = counts.get(d // 2, 0) + 1
        rows = [{"s": s, "sphere": counts.get(s, 0), "gamma_s": gamma_s(t - 1, t, s)} for s in range(1, r_tree // 2 + 1)]
        interior_deg = {len(sq_neighbors(v)) for v, d in tree_dist.items() if d % 2 == 0 and d + 2 <= r_tree}
        components.append({"centre": centre, "gamma_radius": r_tree // 2, "rows": rows,
                           "interior_degrees": sorted(interior_deg),
                           "ok": all(r["sphere"] == r["gamma_s"] for r in rows) and interior_deg <= {t * (t - 1)}})
    return {"t": t, "radius": radius, "vertices": nv, "components": ncomp, "parity_ok": parity_ok,
            "balls": components, "ok": ncomp == 2 and parity_ok and all(c["ok"] for c in components)}
