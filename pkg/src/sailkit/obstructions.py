"""Fixed-pattern subdivision detection, wall surgery, and the separator check.

`contains_subdivision` is exact within its caps.  It layers three stages:

1. counting rejects (vertex, edge, and degree-sequence dominance) that can
   certify absence outright;
2. a structured matcher that suppresses degree-2 vertices on both sides and
   matches the resulting core multigraphs with chain-capacity dominance --
   this finds embeddings quickly in subdivision-shaped hosts but cannot
   certify absence;
3. a full interleaved branch-vertex/path search, complete up to a node
   budget (budget exhaustion raises, it never reports a silent "none").
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceededError
from .graphs import (
    LabeledGraph,
    ValidationResult,
    complete_bipartite,
    complete_graph,
    line_graph,
    path_star_graph,
    wall,
)
from .words import InfiniteWordSpec

HOST_CAP = 60
PATTERN_CAP = 10
SEARCH_BUDGET = 300_000
WALL_SURGERY_CAP = 60  # max k*t


@dataclass(frozen=True)
class SubdivisionEmbedding:
    """Map of pattern vertices to host vertices plus one host path per
    pattern edge; paths include their endpoints and have pairwise disjoint
    interiors that avoid all mapped vertices."""

    branch_map: dict
    paths: dict  # (u, v) with u < v  ->  tuple of host vertices

    def to_obj(self):
        return {
            "branch": {str(p): h for p, h in sorted(self.branch_map.items())},
            "paths": {f"{u}-{v}": list(path) for (u, v), path in sorted(self.paths.items())},
        }


def validate_embedding(host: LabeledGraph, pattern: LabeledGraph,
                       emb: SubdivisionEmbedding) -> ValidationResult:
    """Independent re-validation of a subdivision embedding."""
    problems = []
    images = list(emb.branch_map.values())
    if len(set(images)) != len(images):
        problems.append("branch map is not injective")
    if set(emb.branch_map) != set(pattern.vertices()):
        problems.append("branch map does not cover the pattern's vertices")
    if set(emb.paths) != {tuple(e) for e in pattern.edges()}:
        problems.append("paths do not cover the pattern's edges")
        return ValidationResult(False, tuple(problems))
    image_set = set(images)
    seen_interior = set()
    for (u, v), path in emb.paths.items():
        if path[0] != emb.branch_map[u] or path[-1] != emb.branch_map[v]:
            if path[0] == emb.branch_map[v] and path[-1] == emb.branch_map[u]:
                path = tuple(reversed(path))
            else:
                problems.append(f"path for edge ({u}, {v}) has wrong endpoints")
                continue
        for a, b in zip(path, path[1:]):
            if not host.has_edge(a, b):
                problems.append(f"path for edge ({u}, {v}) uses non-edge ({a}, {b})")
        for x in path[1:-1]:
            if x in image_set:
                problems.append(f"path for edge ({u}, {v}) passes through branch vertex {x}")
            if x in seen_interior:
                problems.append(f"interior vertex {x} used by two paths")
            seen_interior.add(x)
    return ValidationResult(not problems, tuple(problems))


# ---------------------------------------------------------------------------
# stage 1: counting rejects
# ---------------------------------------------------------------------------

def _counting_reject(host, pattern):
    if pattern.n > host.n or pattern.m > host.m:
        return True
    hd = sorted((host.degree(v) for v in host.vertices()), reverse=True)
    pd = sorted((pattern.degree(v) for v in pattern.vertices()), reverse=True)
    for i, d in enumerate(pd):
        if i >= len(hd) or hd[i] < d:
            return True
    return False


def _strip_dangling(host):
    """Iteratively drop degree <= 1 host vertices.

    Sound whenever the pattern has minimum degree >= 2: every vertex of an
    embedded subdivision of such a pattern has degree >= 2 inside the copy,
    so dangling host vertices can never participate.
    """
    keep = set(host.vertices())
    changed = True
    while changed:
        changed = False
        for v in list(keep):
            if sum(1 for w in host.neighbors(v) if w in keep) <= 1:
                keep.discard(v)
                changed = True
    if len(keep) == len(host.vertices()):
        return host
    return host.induced(keep)


# ---------------------------------------------------------------------------
# stage 2: suppressed-core matching
# ---------------------------------------------------------------------------

class _Core:
    """Suppression of degree-2 runs: core vertices (degree >= 3), chains
    between them, loops, pendant tails, and coreless components."""

    def __init__(self, g):
        self.g = g
        self.core = [v for v in g.vertices() if g.degree(v) >= 3]
        core_set = set(self.core)
        self.chains = {}    # (u, w) u <= w -> list of interior tuples (from u)
        self.loops = {}     # u -> list of interior tuples
        self.pendants = {}  # u -> list of interior tuples (include the tip)
        self.path_comps = []
        self.cycle_comps = []
        self.isolated = []

        seen_edges = set()
        absorbed = set()
        for u in self.core:
            for x in sorted(g.neighbors(u)):
                if (min(u, x), max(u, x)) in seen_edges:
                    continue
                interior = []
                prev, cur = u, x
                while cur not in core_set and g.degree(cur) == 2:
                    interior.append(cur)
                    nxt = [w for w in g.neighbors(cur) if w != prev][0]
                    prev, cur = cur, nxt
                for a, b in zip([u] + interior, interior + [cur]):
                    seen_edges.add((min(a, b), max(a, b)))
                absorbed.update(interior)
                if cur in core_set:
                    if cur == u:
                        self.loops.setdefault(u, []).append(tuple(interior))
                    else:
                        key = (min(u, cur), max(u, cur))
                        ordered = tuple(interior if u == key[0] else reversed(interior))
                        self.chains.setdefault(key, []).append(ordered)
                else:
                    absorbed.add(cur)
                    self.pendants.setdefault(u, []).append(tuple(interior + [cur]))
        # loop chains get discovered from both ends; keep one copy of each pair
        for u, items in self.loops.items():
            items.sort()
            self.loops[u] = [it for i, it in enumerate(items) if i % 2 == 0]

        placed = core_set | absorbed
        for v in g.vertices():
            if v in placed:
                continue
            comp, stack = {v}, [v]
            while stack:
                a = stack.pop()
                for b in g.neighbors(a):
                    if b not in comp:
                        comp.add(b)
                        stack.append(b)
            placed |= comp
            if len(comp) == 1:
                self.isolated.append(v)
            elif all(g.degree(a) == 2 for a in comp):
                self.cycle_comps.append(_cycle_order(g, comp))
            else:
                self.path_comps.append(_path_order(g, comp))

    def chain_caps(self, u, w):
        key = (min(u, w), max(u, w))
        return sorted((len(it) for it in self.chains.get(key, [])), reverse=True)


def _path_order(g, comp):
    ends = sorted(v for v in comp if sum(1 for w in g.neighbors(v) if w in comp) <= 1)
    order = [ends[0]]
    prev, cur = None, ends[0]
    while len(order) < len(comp):
        nxt = [w for w in sorted(g.neighbors(cur)) if w in comp and w != prev]
        prev, cur = cur, nxt[0]
        order.append(cur)
    return tuple(order)


def _cycle_order(g, comp):
    start = min(comp)
    order = [start]
    prev, cur = None, start
    while True:
        nxt = [w for w in sorted(g.neighbors(cur)) if w in comp and w != prev]
        if len(order) == len(comp):
            return tuple(order)
        prev, cur = cur, nxt[0]
        order.append(cur)


def _structured_match(host, pattern, budget=12_000_000):
    """Core-level topological-minor search; None means inconclusive.

    Both sides are suppressed.  Pattern core vertices are placed on host
    core vertices and every pattern chain is routed as a vertex-disjoint
    path in the host core multigraph whose total interior capacity covers
    the chain's interior; the result is then expanded back to host paths.
    Pattern pendants, coreless components, and isolated vertices are routed
    through whatever the core phase left unused in the original host.  Any
    embedding found is re-validated, so this stage only errs on the side of
    "inconclusive"; absence is never concluded here.
    """
    stripped = _strip_dangling(host)
    hc = _Core(stripped)
    pc = _Core(pattern)
    if len(pc.core) > len(hc.core):
        return None
    if pc.loops and not hc.loops:
        return None

    # host core multigraph: edge list of (u, w, capacity, oriented interior)
    hedges = []
    hadj = {u: [] for u in hc.core}
    for (u, w), items in sorted(hc.chains.items()):
        for interior in items:
            idx = len(hedges)
            hedges.append((u, w, len(interior), interior))
            hadj[u].append(idx)
            hadj[w].append(idx)

    # pattern core order: each vertex chain-adjacent to an earlier one
    order = []
    placed = set()
    remaining = sorted(pc.core, key=lambda v: (-pattern.degree(v), v))
    while remaining:
        nxt = None
        for v in remaining:
            if any((min(v, u), max(v, u)) in pc.chains for u in placed):
                nxt = v
                break
        if nxt is None:
            nxt = remaining[0]
        order.append(nxt)
        placed.add(nxt)
        remaining.remove(nxt)

    pchains = []  # (a, b, interior) pattern chains, routed when both placed
    for (a, b), items in sorted(pc.chains.items()):
        for interior in items:
            pchains.append((a, b, interior))

    # hop distances in the host core multigraph, for candidate ordering
    hop_dist = {}
    for source in hc.core:
        d = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for node in frontier:
                for ei in hadj[node]:
                    u, w, _, _ = hedges[ei]
                    other = w if node == u else u
                    if other not in d:
                        d[other] = d[node] + 1
                        nxt.append(other)
            frontier = nxt
        hop_dist[source] = d

    # chain-hop distances between pattern cores: a pattern path of L chains
    # maps to a host path of at least L hops, and every extra hop burns one
    # spare host core, so images can exceed pattern distance only by the
    # number of spares still available
    pdist = {}
    padj = {u: set() for u in pc.core}
    for (a, b) in pc.chains:
        padj[a].add(b)
        padj[b].add(a)
    for source in pc.core:
        d = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for node in frontier:
                for other in padj[node]:
                    if other not in d:
                        d[other] = d[node] + 1
                        nxt.append(other)
            frontier = nxt
        pdist[source] = d

    # Each depth-0 anchor gets its own escalating tick budget: wrong
    # anchors on rigid hosts waste enormous subtrees, so restarts dominate
    # a single deep search.  Failure here only means "inconclusive".
    MAX_ALTERNATIVES = 6

    def attempt(anchor, round_budget):
        phi = {}
        used_nodes = set()
        used_edges = set()
        routes = {}
        ticks = [round_budget]
        unplaced = [len(pc.core)]
        slack = len(hc.core) - len(pc.core)
        big = len(hc.core) + len(pc.core)

        def spares():
            return len(hc.core) - len(used_nodes) - unplaced[0]

        def core_paths(src, dst, need):
            # H*-paths src -> dst with interior capacity >= need, increasing
            # hop count; every intermediate core burns one spare
            max_hops = min(spares() + 1, 4)
            for limit in range(1, max_hops + 1):
                results = []
                queue = [(src, (), 0)]
                while queue:
                    ticks[0] -= 1
                    if ticks[0] < 0:
                        return
                    node, hops, cap = queue.pop()
                    for ei in hadj[node]:
                        if ei in used_edges or any(ei == h[0] for h in hops):
                            continue
                        u, w, c, _ = hedges[ei]
                        other = w if node == u else u
                        if other == dst:
                            if len(hops) + 1 == limit and cap + c >= need:
                                results.append(hops + ((ei, other),))
                            continue
                        if other in used_nodes or any(other == h[1] for h in hops):
                            continue
                        if len(hops) + 1 < limit:
                            queue.append((other, hops + ((ei, other),), cap + c + 1))
                results.sort()
                yield from results

        def route(chain_ids, k):
            if ticks[0] < 0:
                return False
            if k == len(chain_ids):
                return place(len(phi))
            ci = chain_ids[k]
            a, b, interior = pchains[ci]
            tried = 0
            for hops in core_paths(phi[a], phi[b], len(interior)):
                if tried >= MAX_ALTERNATIVES:
                    break
                tried += 1
                through = [node for _, node in hops[:-1]]
                edges_used = [ei for ei, _ in hops]
                used_nodes.update(through)
                used_edges.update(edges_used)
                routes[ci] = hops
                if route(chain_ids, k + 1):
                    return True
                del routes[ci]
                used_nodes.difference_update(through)
                used_edges.difference_update(edges_used)
            return False

        def place(i):
            ticks[0] -= 1
            if ticks[0] < 0:
                return False
            if i == len(order):
                return True
            v = order[i]
            pending = [ci for ci, (a, b, _) in enumerate(pchains)
                       if (a == v and b in phi) or (b == v and a in phi)]
            if i == 0:
                cands = [anchor]
            else:
                scored = []
                for h in hc.core:
                    if h in used_nodes or stripped.degree(h) < pattern.degree(v):
                        continue
                    score = 0
                    ok = True
                    for u, hu in phi.items():
                        du = pdist[v].get(u, big)
                        dh = hop_dist[hu].get(h, big)
                        if dh > du + slack:
                            ok = False
                            break
                        score += dh
                    if ok:
                        scored.append((score, h))
                cands = [h for _, h in sorted(scored)]
            for h in cands:
                phi[v] = h
                used_nodes.add(h)
                unplaced[0] -= 1
                if route(pending, 0):
                    return True
                del phi[v]
                used_nodes.discard(h)
                unplaced[0] += 1
            return False

        if place(0):
            return phi, routes, round_budget - ticks[0]
        return None, None, round_budget - ticks[0]

    anchors = [h for h in hc.core
               if stripped.degree(h) >= pattern.degree(order[0])] if order else []
    phi = routes = None
    if not order:
        phi, routes = {}, {}
    else:
        remaining_budget = budget
        round_budget = 40_000
        while remaining_budget > 0 and phi is None:
            for anchor in anchors:
                got_phi, got_routes, spent = attempt(
                    anchor, min(round_budget, remaining_budget))
                remaining_budget -= spent
                if got_phi is not None:
                    phi, routes = got_phi, got_routes
                    break
                if remaining_budget <= 0:
                    break
            round_budget *= 10
    if phi is None:
        return None

    branch_map = dict(phi)
    paths = {}
    used = set(phi.values())

    def lay(pseq, hseq, span):
        """Map pattern path pseq onto host path hseq, len(hseq) >= len(pseq).

        pseq[0] is already mapped to hseq[0]; interior pattern vertices are
        mapped one-to-one.  In span mode pseq[-1] is already mapped to
        hseq[-1] and the final pattern edge absorbs the host tail; otherwise
        pseq[-1] lands on hseq[len(pseq)-1] and the tail stays free.
        """
        L = len(pseq)
        for idx in range(1, L - 1):
            branch_map[pseq[idx]] = hseq[idx]
        if not span and L >= 2:
            branch_map[pseq[L - 1]] = hseq[L - 1]
        for idx in range(L - 2):
            a, b = pseq[idx], pseq[idx + 1]
            paths[(min(a, b), max(a, b))] = (hseq[idx], hseq[idx + 1])
        if L >= 2:
            a, b = pseq[-2], pseq[-1]
            tail = tuple(hseq[L - 2:]) if span else (hseq[L - 2], hseq[L - 1])
            paths[(min(a, b), max(a, b))] = tail
        used.update(hseq if span else hseq[:L])

    # expand routed chains to full host paths
    for ci, (a, b, interior) in enumerate(pchains):
        node = phi[a]
        hpath = [node]
        for ei, nxt in routes[ci]:
            u, w, _, chain_interior = hedges[ei]
            hpath.extend(chain_interior if node == u else tuple(reversed(chain_interior)))
            hpath.append(nxt)
            node = nxt
        lay([a] + list(interior) + [b], hpath, span=True)

    # pattern loops onto host loops at the same image
    free_loops = {v: sorted(items, key=len) for v, items in hc.loops.items()}
    for v, items in sorted(pc.loops.items()):
        for p_int in sorted(items, key=len, reverse=True):
            cands = [it for it in free_loops.get(phi[v], [])
                     if len(it) >= len(p_int) and not (set(it) & used)]
            if not cands:
                return None
            h_int = cands[0]
            free_loops[phi[v]].remove(h_int)
            lay([v] + list(p_int) + [v], [phi[v]] + list(h_int) + [phi[v]], span=True)

    # pendants grow into anything unused around their image
    for v, items in sorted(pc.pendants.items()):
        for p_int in sorted(items, key=len, reverse=True):
            found = _grow_path(host, phi[v], len(p_int), used)
            if found is None:
                return None
            lay([v] + list(p_int), found, span=False)

    # coreless pattern components anywhere unused in the original host
    unused_set = {x for x in host.vertices() if x not in used}
    for pcyc in sorted(pc.cycle_comps, key=len, reverse=True):
        cyc = _find_cycle(host, unused_set, len(pcyc))
        if cyc is None:
            return None
        k = len(pcyc)
        for i in range(k):
            branch_map[pcyc[i]] = cyc[i]
        for i in range(k - 1):
            a, b = pcyc[i], pcyc[i + 1]
            paths[(min(a, b), max(a, b))] = (cyc[i], cyc[i + 1])
        a, b = pcyc[k - 1], pcyc[0]
        paths[(min(a, b), max(a, b))] = tuple(cyc[k - 1:]) + (cyc[0],)
        used.update(cyc)
        unused_set -= set(cyc)
    for ppath in sorted(pc.path_comps, key=len, reverse=True):
        found = _find_path(host, unused_set, len(ppath))
        if found is None:
            return None
        branch_map[ppath[0]] = found[0]
        lay(list(ppath), list(found), span=False)
        unused_set -= set(found[:len(ppath)])
    for pv in pc.isolated:
        if not unused_set:
            return None
        pick = min(unused_set)
        branch_map[pv] = pick
        used.add(pick)
        unused_set.discard(pick)

    emb = SubdivisionEmbedding(branch_map, paths)
    return emb if validate_embedding(host, pattern, emb) else None


def _grow_path(host, start, need, used):
    """A simple path of `need` vertices hanging off `start`, avoiding `used`."""
    out = []

    def dfs(cur):
        if len(out) == need:
            return True
        for w in sorted(host.neighbors(cur)):
            if w not in used and w not in out and w != start:
                out.append(w)
                if dfs(w):
                    return True
                out.pop()
        return False

    if dfs(start):
        return [start] + out
    return None


def _find_path(host, allowed, k):
    """A simple path of k vertices inside `allowed`, or None."""
    for start in sorted(allowed):
        out = [start]

        def dfs(cur):
            if len(out) == k:
                return True
            for w in sorted(host.neighbors(cur)):
                if w in allowed and w not in out:
                    out.append(w)
                    if dfs(w):
                        return True
                    out.pop()
            return False

        if dfs(start):
            return out
    return None


def _find_cycle(host, allowed, k):
    """A simple cycle of at least k vertices inside `allowed`, or None."""
    for start in sorted(allowed):
        path = [start]

        def dfs(cur):
            for w in sorted(host.neighbors(cur)):
                if w == start and len(path) >= k:
                    return True
                if w in allowed and w not in path and w > start:
                    path.append(w)
                    if dfs(w):
                        return True
                    path.pop()
            return False

        if dfs(start):
            return path
    return None


# ---------------------------------------------------------------------------
# stage 3: full interleaved search
# ---------------------------------------------------------------------------

def _full_search(host, pattern, budget):
    p_order = _pattern_order(pattern)
    host_vs = host.vertices()
    images = {}
    used_interior = set()
    paths = {}
    counter = [budget]

    def tick():
        counter[0] -= 1
        if counter[0] < 0:
            raise CapExceededError(
                f"subdivision search budget {budget} exhausted"
                f" (host n={host.n}, pattern n={pattern.n})")

    def route_edges(pending, k):
        if k == len(pending):
            return place(len(images))
        a, b = pending[k]
        ha, hb = images[a], images[b]
        blocked = set(images.values()) | used_interior
        for path in _simple_paths(host, ha, hb, blocked, tick):
            interior = path[1:-1]
            used_interior.update(interior)
            paths[(min(a, b), max(a, b))] = path if a < b else tuple(reversed(path))
            if route_edges(pending, k + 1):
                return True
            del paths[(min(a, b), max(a, b))]
            used_interior.difference_update(interior)
        return False

    def place(i):
        tick()
        if i == len(p_order):
            return True
        v = p_order[i]
        pending = [(v, u) for u in pattern.neighbors(v) if u in images]
        for h in host_vs:
            if h in images.values() or h in used_interior:
                continue
            if host.degree(h) < pattern.degree(v):
                continue
            images[v] = h
            if route_edges(pending, 0):
                return True
            del images[v]
        return False

    if place(0):
        emb = SubdivisionEmbedding(dict(images), dict(paths))
        assert validate_embedding(host, pattern, emb).ok
        return emb
    return None


def _pattern_order(pattern):
    order, placed = [], set()
    remaining = sorted(pattern.vertices(), key=lambda v: (-pattern.degree(v), v))
    while remaining:
        nxt = None
        for v in remaining:
            if any(u in placed for u in pattern.neighbors(v)):
                nxt = v
                break
        if nxt is None:
            nxt = remaining[0]
        order.append(nxt)
        placed.add(nxt)
        remaining.remove(nxt)
    return order


def _simple_paths(host, a, b, blocked, tick):
    """Simple a-b paths with interiors avoiding `blocked`, shortest first."""
    for limit in range(1, host.n + 1):
        found_longer = False
        stack = [(a, (a,))]
        while stack:
            tick()
            cur, path = stack.pop()
            if len(path) - 1 > limit:
                continue
            for w in sorted(host.neighbors(cur), reverse=True):
                if w == b:
                    if len(path) == limit:
                        yield path + (b,)
                    else:
                        found_longer = found_longer or len(path) < limit
                    continue
                if w in blocked or w in path:
                    continue
                if len(path) < limit:
                    stack.append((w, path + (w,)))
                    found_longer = True
        if not found_longer and limit > 1:
            return


def contains_subdivision(host: LabeledGraph, pattern: LabeledGraph, *,
                         host_cap: int = HOST_CAP, pattern_cap: int = PATTERN_CAP,
                         budget: int = SEARCH_BUDGET, fast_budget: int = 12_000_000):
    """An embedding of a subdivision of `pattern` in `host`, or None.

    None is exact: within the caps the search space is exhausted.  Caps and
    the search budget raise CapExceededError instead of guessing.
    `fast_budget` bounds the restart schedule of the structured first stage,
    which can only find embeddings, never certify absence; `budget` bounds
    the complete fallback search.
    """
    if pattern.n > pattern_cap:
        raise CapExceededError(
            f"pattern has {pattern.n} vertices, cap is {pattern_cap}")
    if host.n > host_cap:
        raise CapExceededError(f"host has {host.n} vertices, cap is {host_cap}")
    if _counting_reject(host, pattern):
        return None
    if pattern.n == 0:
        return SubdivisionEmbedding({}, {})
    if min(pattern.degree(v) for v in pattern.vertices()) >= 2:
        host = _strip_dangling(host)
        if _counting_reject(host, pattern):
            return None
    emb = _structured_match(host, pattern, budget=fast_budget)
    if emb is not None:
        return emb
    return _full_search(host, pattern, budget)


# ---------------------------------------------------------------------------
# the four fixed obstruction patterns
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _kkw_patterns():
    w44 = wall(4, 4)
    return (
        ("K5", complete_graph(5)),
        ("K44", complete_bipartite(4, 4)),
        ("W4x4", w44),
        ("LW4x4", line_graph(w44)),
    )


def kkw_scan(g: LabeledGraph, *, host_cap: int = HOST_CAP,
             budget: int = SEARCH_BUDGET, fast_budget: int = 12_000_000) -> dict:
    """Presence of the four classical obstructions as subdivisions.

    Returns {"K5"|"K44"|"W4x4"|"LW4x4": "present"|"absent"|"cap"}.  The wall
    and line-graph entries use the fixed 4x4 patterns; a "cap" entry means
    the search hit its budget, never a silent absence.
    """
    report = {}
    for name, pattern in _kkw_patterns():
        try:
            emb = contains_subdivision(g, pattern, host_cap=host_cap,
                                       pattern_cap=pattern.n, budget=budget,
                                       fast_budget=fast_budget)
            report[name] = "present" if emb is not None else "absent"
        except CapExceededError:
            report[name] = "cap"
    return report


# ---------------------------------------------------------------------------
# wall surgery
# ---------------------------------------------------------------------------

def wall_surgery(k: int, t: int, cap: int = WALL_SURGERY_CAP) -> LabeledGraph:
    """Delete the interiors of k-by-k brick blocks from a kt-brick-row wall.

    The base is `wall(kt, kt+1)`, which has exactly kt complete brick
    columns (the figure-style kt-by-kt brick wall; `wall(kt, kt)` itself is
    one brick column short, and its ragged right edge would leave cells too
    narrow for the girth bound).  Keeping the block-boundary rows (y
    divisible by k) and the t+1 zigzag columns that separate block columns
    leaves a t-by-t arrangement of long cells: a subdivision of the t-by-t
    wall with no cycle shorter than 8k-6.  k = 1 deletes nothing.
    """
    if k < 1 or t < 1:
        raise ValueError("k and t must be >= 1")
    if k * t > cap:
        raise CapExceededError(f"wall surgery capped at k*t <= {cap}, got {k * t}")
    m = k * t
    g = wall(m, m + 1)
    boundary_cols = set(range(0, m + 1, k))
    keep = []
    for v in g.vertices():
        x, y = divmod(v, m + 1)
        if y % k == 0 or (x // 2) in boundary_cols:
            keep.append(v)
    return g.induced(keep)


# ---------------------------------------------------------------------------
# separator property
# ---------------------------------------------------------------------------

def separator_check(spec: InfiniteWordSpec, positions, star_letters,
                    i: int, j: int, k: int) -> bool:
    """Does deleting every path vertex lettered x_1 or x_j separate star i
    from star k?  (Letters sorted ascending; indices are 1-based with
    1 < i < j < k <= n.)  True is the prediction for nested words."""
    letters = sorted(set(star_letters))
    n = len(letters)
    if not (1 < i < j < k <= n):
        raise ValueError(f"need 1 < i < j < k <= {n}, got ({i}, {j}, {k})")
    g = path_star_graph(spec, positions, letters)
    cut_letters = {letters[0], letters[j - 1]}
    blocked = set()
    for pos, v in g.path_vertices().items():
        if spec.letter_at(pos) in cut_letters:
            blocked.add(v)
    source = g.star_nodes()[letters[i - 1]]
    target = g.star_nodes()[letters[k - 1]]
    seen, stack = {source}, [source]
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if w in blocked or w in seen:
                continue
            if w == target:
                return False
            seen.add(w)
            stack.append(w)
    return True
