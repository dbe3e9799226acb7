"""Finite labeled graphs: representation, generators, and structural queries.

Vertices carry tags (path vertex with its word position, star node with its
letter, subdivision vertex, or plain).  Graphs are immutable after
construction, so every query here is a pure function and safe to call
concurrently.

Vertex id conventions, chosen so ids are stable across instances:

* path-star graphs: path vertex at word position i has id i, the star node
  for letter l has id -l;
* walls: vertex (x, y) has id x*(m+1) + y (see `wall_vertex_id`);
* line graphs: edge ranks in sorted order;
* subdivision vertices: fresh ids above the current maximum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .errors import CapExceededError
from .words import InfiniteWordSpec, prefix as word_prefix

DEFAULT_POSITION_CAP = 1_000_000


@dataclass(frozen=True)
class VertexTag:
    kind: str  # "path" | "star" | "subdivision" | "plain"
    pos: int | None = None
    letter: int | None = None

    def to_obj(self):
        if self.kind == "path":
            return {"kind": "path", "pos": self.pos}
        if self.kind == "star":
            return {"kind": "star", "letter": self.letter}
        return {"kind": self.kind}

    @classmethod
    def from_obj(cls, obj):
        kind = obj["kind"]
        if kind == "path":
            return cls("path", pos=obj["pos"])
        if kind == "star":
            return cls("star", letter=obj["letter"])
        if kind in ("subdivision", "plain"):
            return cls(kind)
        raise ValueError(f"unknown tag kind {kind!r}")


PLAIN = VertexTag("plain")
SUBDIVISION = VertexTag("subdivision")


def path_tag(pos: int) -> VertexTag:
    return VertexTag("path", pos=pos)


def star_tag(letter: int) -> VertexTag:
    return VertexTag("star", letter=letter)


@dataclass(frozen=True)
class ValidationResult:
    """Outcome of a structural check, with one message per violation."""

    ok: bool
    problems: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


class LabeledGraph:
    """Simple undirected graph with tagged vertices.

    ``origin`` optionally records the word family a path-star graph was
    built from; induced subgraphs and subdivisions inherit it.
    """

    def __init__(self, tags, edges, origin: InfiniteWordSpec | None = None):
        self._tags = dict(tags)
        adj = {v: set() for v in self._tags}
        edge_set = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u not in self._tags or v not in self._tags:
                raise ValueError(f"edge ({u}, {v}) references unknown vertex")
            a, b = (u, v) if u < v else (v, u)
            edge_set.add((a, b))
            adj[a].add(b)
            adj[b].add(a)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._edges = frozenset(edge_set)
        self.origin = origin

        stars, positions = set(), set()
        for v, tag in self._tags.items():
            if tag.kind == "star":
                if tag.letter in stars:
                    raise ValueError(f"duplicate star node for letter {tag.letter}")
                stars.add(tag.letter)
            elif tag.kind == "path":
                if tag.pos in positions:
                    raise ValueError(f"duplicate path vertex for position {tag.pos}")
                positions.add(tag.pos)

    # -- basic queries ------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._tags)

    @property
    def m(self) -> int:
        return len(self._edges)

    def vertices(self):
        return sorted(self._tags)

    def edges(self):
        return sorted(self._edges)

    def has_vertex(self, v) -> bool:
        return v in self._tags

    def has_edge(self, u, v) -> bool:
        return (min(u, v), max(u, v)) in self._edges

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def tag(self, v) -> VertexTag:
        return self._tags[v]

    def star_nodes(self) -> dict:
        """Mapping letter -> vertex id of the star node, sorted by letter."""
        out = {}
        for v, tag in self._tags.items():
            if tag.kind == "star":
                out[tag.letter] = v
        return dict(sorted(out.items()))

    def path_vertices(self) -> dict:
        """Mapping word position -> vertex id, sorted by position."""
        out = {}
        for v, tag in self._tags.items():
            if tag.kind == "path":
                out[tag.pos] = v
        return dict(sorted(out.items()))

    def induced(self, vertex_subset) -> "LabeledGraph":
        keep = set(vertex_subset)
        missing = keep - set(self._tags)
        if missing:
            raise ValueError(f"unknown vertices: {sorted(missing)}")
        tags = {v: self._tags[v] for v in keep}
        edges = [(u, v) for u, v in self._edges if u in keep and v in keep]
        return LabeledGraph(tags, edges, origin=self.origin)

    def connected_components(self):
        seen, comps = set(), []
        for start in sorted(self._tags):
            if start in seen:
                continue
            comp, stack = {start}, [start]
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(sorted(comp))
        return comps

    # -- serialization -------------------------------------------------

    def to_obj(self):
        return {
            "vertices": [{"id": v, "tag": self._tags[v].to_obj()} for v in sorted(self._tags)],
            "edges": [list(e) for e in sorted(self._edges)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_obj(cls, obj, origin=None):
        tags = {entry["id"]: VertexTag.from_obj(entry["tag"]) for entry in obj["vertices"]}
        return cls(tags, [tuple(e) for e in obj["edges"]], origin=origin)

    @classmethod
    def from_json(cls, text, origin=None):
        return cls.from_obj(json.loads(text), origin=origin)

    def to_dot(self) -> str:
        def label(v):
            tag = self._tags[v]
            if tag.kind == "path":
                return f"p{tag.pos}"
            if tag.kind == "star":
                return f"s{tag.letter}"
            if tag.kind == "subdivision":
                return f"d{v}"
            return f"v{v}"

        lines = ["graph {"]
        for v in sorted(self._tags):
            lines.append(f'  {v} [label="{label(v)}"];')
        for u, v in sorted(self._edges):
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self):
        return f"LabeledGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SailWitness:
    """Ordered star nodes plus ordered disjoint path components.

    Star i must be adjacent to (or, for subdivided witnesses, joined through
    degree-2 chains to) path component j for every i <= j.
    """

    stars: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    subdivided: bool = False

    @property
    def order(self) -> int:
        return len(self.stars)

    def to_obj(self):
        return {
            "stars": list(self.stars),
            "paths": [list(p) for p in self.paths],
            "subdivided": self.subdivided,
        }

    @classmethod
    def from_obj(cls, obj):
        return cls(
            stars=tuple(obj["stars"]),
            paths=tuple(tuple(p) for p in obj["paths"]),
            subdivided=bool(obj.get("subdivided", False)),
        )


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def wall_vertex_id(m: int, x: int, y: int) -> int:
    """Stable id of wall vertex (x, y) in an m-row wall."""
    return x * (m + 1) + y


def wall(m: int, n: int) -> LabeledGraph:
    """Brick wall with m rows of bricks, horizontal extent 2n columns.

    Columns x = 0 .. 2n-1; even columns carry rows y = 0 .. m-1 and odd
    columns rows y = 1 .. m.  Unit horizontal edges where both endpoints
    exist, skip edges (x, y)-(x+2, y) where the middle column has no vertex,
    and vertical edges at even x+y.  |V| = 2nm.
    """
    if m < 1 or n < 1:
        raise ValueError("wall needs m, n >= 1")
    coords = set()
    for x in range(2 * n):
        z = x % 2
        for y in range(m):
            coords.add((x, y + z))
    edges = []
    for x, y in coords:
        if (x + 1, y) in coords:
            edges.append(((x, y), (x + 1, y)))
        if (x + 2, y) in coords and (x + 1, y) not in coords:
            edges.append(((x, y), (x + 2, y)))
        if (x, y + 1) in coords and (x + y) % 2 == 0:
            edges.append(((x, y), (x, y + 1)))
    vid = {c: wall_vertex_id(m, *c) for c in coords}
    tags = {vid[c]: PLAIN for c in coords}
    return LabeledGraph(tags, [(vid[a], vid[b]) for a, b in edges])


def complete_graph(t: int) -> LabeledGraph:
    tags = {i: PLAIN for i in range(t)}
    return LabeledGraph(tags, combinations(range(t), 2))


def complete_bipartite(r: int, s: int) -> LabeledGraph:
    tags = {i: PLAIN for i in range(r + s)}
    return LabeledGraph(tags, [(i, r + j) for i in range(r) for j in range(s)])


def cycle_graph(k: int) -> LabeledGraph:
    tags = {i: PLAIN for i in range(k)}
    return LabeledGraph(tags, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> LabeledGraph:
    tags = {i: PLAIN for i in range(k)}
    return LabeledGraph(tags, [(i, i + 1) for i in range(k - 1)])


def line_graph(g: LabeledGraph) -> LabeledGraph:
    """Graph on the edges of g; adjacency means sharing an endpoint."""
    base_edges = g.edges()
    tags = {i: PLAIN for i in range(len(base_edges))}
    edges = []
    for i, j in combinations(range(len(base_edges)), 2):
        if set(base_edges[i]) & set(base_edges[j]):
            edges.append((i, j))
    return LabeledGraph(tags, edges)


def subdivide(g: LabeledGraph, plan) -> LabeledGraph:
    """Replace each planned edge by a path through new degree-2 vertices.

    ``plan`` maps edges of g to the number of internal vertices to insert;
    count 0 leaves the edge alone.  Unplanned edges are unchanged.
    """
    normalized = {}
    for (u, v), count in plan.items():
        key = (min(u, v), max(u, v))
        if not g.has_edge(*key):
            raise ValueError(f"edge {key} not in graph")
        if count < 0:
            raise ValueError("subdivision count must be >= 0")
        normalized[key] = count

    tags = {v: g.tag(v) for v in g.vertices()}
    edges = []
    next_id = max(g.vertices(), default=0) + 1
    for u, v in g.edges():
        count = normalized.get((u, v), 0)
        if count == 0:
            edges.append((u, v))
            continue
        chain = list(range(next_id, next_id + count))
        next_id += count
        for w in chain:
            tags[w] = SUBDIVISION
        run = [u] + chain + [v]
        edges.extend(zip(run, run[1:]))
    return LabeledGraph(tags, edges, origin=g.origin)


def canonical_sail(t: int):
    """The triangular t-sail: path j has j vertices, star i meets vertex i
    of every path j >= i.  Returns the graph and its natural witness."""
    if t < 1:
        raise ValueError("t must be >= 1")
    tags = {}
    edges = []
    paths = []
    for i in range(1, t + 1):
        tags[-i] = star_tag(i)
    vid = 0
    for j in range(1, t + 1):
        row = []
        for i in range(1, j + 1):
            vid += 1
            tags[vid] = PLAIN
            row.append(vid)
            edges.append((-i, vid))
        edges.extend(zip(row, row[1:]))
        paths.append(tuple(row))
    g = LabeledGraph(tags, edges)
    witness = SailWitness(stars=tuple(range(-1, -t - 1, -1)), paths=tuple(paths))
    return g, witness


def path_star_graph(spec: InfiniteWordSpec, positions, star_letters,
                    cap: int = DEFAULT_POSITION_CAP) -> LabeledGraph:
    """Subgraph of the infinite path-star graph induced by the given
    positions and star letters.

    Path vertices at consecutive positions are adjacent; the star node for
    letter l is adjacent to every selected position whose word letter is l.
    Star nodes whose letter does not occur among the positions are allowed
    and come out isolated.
    """
    positions = sorted(set(positions))
    star_letters = sorted(set(star_letters))
    if positions and positions[0] < 1:
        raise ValueError("positions must be >= 1")
    if any(l < 1 for l in star_letters):
        raise ValueError("star letters must be >= 1")
    if positions and positions[-1] > cap:
        raise CapExceededError(f"position {positions[-1]} exceeds cap {cap}")

    letters = {}
    if positions:
        word = word_prefix(spec, positions[-1], cap=max(cap, positions[-1]))
        letters = {i: word.letters[i - 1] for i in positions}

    tags = {}
    edges = []
    for l in star_letters:
        tags[-l] = star_tag(l)
    star_set = set(star_letters)
    prev = None
    for i in positions:
        tags[i] = path_tag(i)
        if prev is not None and i == prev + 1:
            edges.append((prev, i))
        if letters[i] in star_set:
            edges.append((-letters[i], i))
        prev = i
    return LabeledGraph(tags, edges, origin=spec)


# ---------------------------------------------------------------------------
# structural queries
# ---------------------------------------------------------------------------

def girth(g: LabeledGraph):
    """Length of a shortest cycle, or None for forests.

    BFS from every vertex; a non-tree edge seen at depths d(u), d(w) closes
    a walk of length d(u)+d(w)+1 through the root, which always contains a
    cycle no longer than that, and roots on a shortest cycle achieve it.
    """
    best = None
    vertices = g.vertices()
    for root in vertices:
        dist = {root: 0}
        parent = {root: None}
        queue = [root]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            if best is not None and dist[u] * 2 > best:
                break
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w and parent[w] != u:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def contains_cycle_of_length(g: LabeledGraph, k: int) -> bool:
    """Whether g has a simple cycle of exactly k vertices (k >= 3)."""
    if k < 3:
        raise ValueError("cycle length must be >= 3")
    order = {v: i for i, v in enumerate(g.vertices())}

    def dfs(start, u, depth, used):
        for w in g.neighbors(u):
            if w == start and depth == k:
                return True
            if depth < k and w not in used and order[w] > order[start]:
                used.add(w)
                if dfs(start, w, depth + 1, used):
                    return True
                used.discard(w)
        return False

    for start in g.vertices():
        if dfs(start, start, 1, {start}):
            return True
    return False


def induced(g: LabeledGraph, vertex_subset) -> LabeledGraph:
    """Standard induced subgraph; tags and origin preserved."""
    return g.induced(vertex_subset)


def non_star_components(g: LabeledGraph):
    """Connected components of g minus its star nodes, sorted.

    For path-star graphs these are the path components (maximal runs of
    consecutive positions plus any subdivision vertices threaded through
    them).
    """
    stars = set(g.star_nodes().values())
    seen, comps = set(), []
    for start in g.vertices():
        if start in stars or start in seen:
            continue
        comp, stack = {start}, [start]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w not in stars and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------------------
# sail witness validation
# ---------------------------------------------------------------------------

def is_t_sail_witness(g: LabeledGraph, w: SailWitness) -> ValidationResult:
    """Check the sail witness invariants against g.

    Only the required coverage adjacencies (star i to path j for i <= j)
    are checked; extra adjacencies do not fail the witness.  For subdivided
    witnesses, consecutive path vertices and star coverage may be realized
    through chains of unlisted degree-2 vertices; chains are matched
    greedily (shortest first) and may not share interior vertices.
    """
    ok, problems, _ = _check_witness(g, w)
    return ValidationResult(ok, tuple(problems))


def _check_witness(g, w):
    """Shared checker; returns (ok, problems, chains).

    ``chains`` maps ("path", k, a, b) or ("cover", i, j) to the tuple of
    interior vertices realizing that connection (empty for direct edges).
    """
    listed = list(w.stars) + [v for p in w.paths for v in p]
    for v in listed:
        if not g.has_vertex(v):
            raise ValueError(f"witness references unknown vertex {v}")

    problems = []
    if len(set(listed)) != len(listed):
        problems.append("witness vertices are not pairwise distinct")
        return False, problems, {}
    if any(len(p) == 0 for p in w.paths):
        problems.append("empty path component")
        return False, problems, {}
    if len(w.paths) != len(w.stars):
        problems.append(
            f"witness has {len(w.stars)} stars but {len(w.paths)} path components")
        return False, problems, {}

    listed_set = set(listed)
    used_interior = set()
    chains = {}

    def chain_interiors(src, targets):
        """Shortest path from src to any vertex in targets through unlisted,
        unused, degree-2 vertices; returns (target, interiors) or None."""
        best = None
        parent = {src: None}
        queue = [(src, 0)]
        head = 0
        while head < len(queue):
            u, d = queue[head]
            head += 1
            for x in sorted(g.neighbors(u)):
                if x in targets and x != src:
                    interiors = []
                    back = u
                    while back != src:
                        interiors.append(back)
                        back = parent[back]
                    cand = (d, x, tuple(reversed(interiors)))
                    if best is None or cand < best:
                        best = cand
                elif (x not in parent and x not in listed_set
                      and x not in used_interior and g.degree(x) == 2):
                    parent[x] = u
                    queue.append((x, d + 1))
        if best is None:
            return None
        return best[1], best[2]

    # path components: consecutive listed vertices adjacent (or chained)
    for k, comp in enumerate(w.paths, start=1):
        for a, b in zip(comp, comp[1:]):
            if g.has_edge(a, b):
                continue
            if not w.subdivided:
                problems.append(
                    f"path component {k}: vertices {a} and {b} not adjacent")
                continue
            found = chain_interiors(a, {b})
            if found is None:
                problems.append(
                    f"path component {k}: no subdivision chain joins {a} and {b}")
                continue
            _, interiors = found
            used_interior.update(interiors)
            chains[("path", k, a, b)] = interiors

    # coverage: star i sees component j for all i <= j
    for i, star in enumerate(w.stars, start=1):
        for j in range(i, len(w.paths) + 1):
            comp = set(w.paths[j - 1])
            if any(x in comp for x in g.neighbors(star)):
                continue
            if not w.subdivided:
                problems.append(
                    f"missing coverage: star {i} not adjacent to path component {j}"
                    f" (pair ({i}, {j}))")
                continue
            found = chain_interiors(star, comp)
            if found is None:
                problems.append(
                    f"missing coverage: star {i} not joined to path component {j}"
                    f" (pair ({i}, {j}))")
                continue
            _, interiors = found
            used_interior.update(interiors)
            chains[("cover", i, j)] = interiors

    return not problems, problems, chains
