"""One-particle-irreducible graphs of massless phi^3 theory in six dimensions.

Graphs carry labeled external legs ``e1..eN``; internal vertices are the
integers ``0..V-1`` and internal edges a sorted tuple of vertex pairs.
Isomorphism classes are identified by a canonical string (the GraphKey)
obtained by minimising the encoding over all vertex relabelings that respect
a colour-refinement partition.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .hopf import GraphPoly, HopfPresentation, tensor_add

MAX_LOOPS = 4


class GraphError(ValueError):
    pass


class LoopOrderTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class FeynmanGraph:
    """phi^3 graph: ``ext[i]`` is the vertex carrying leg ``e{i+1}``."""

    n_vertices: int
    edges: tuple
    ext: tuple

    def __post_init__(self):
        edges = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "ext", tuple(self.ext))
        valence = Counter()
        for u, v in edges:
            if u == v:
                raise GraphError("self-loop edges are not allowed")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise GraphError(f"edge {u}-{v} out of range")
            valence[u] += 1
            valence[v] += 1
        for x in self.ext:
            if not 0 <= x < self.n_vertices:
                raise GraphError(f"external leg on missing vertex {x}")
            valence[x] += 1
        for v in range(self.n_vertices):
            if valence[v] != 3:
                raise GraphError(f"vertex {v} has valence {valence[v]}, not 3")

    @property
    def n_ext(self) -> int:
        return len(self.ext)

    @property
    def loops(self) -> int:
        return len(self.edges) - self.n_vertices + 1

    def adjacency(self) -> dict:
        adj = {v: Counter() for v in range(self.n_vertices)}
        for u, v in self.edges:
            adj[u][v] += 1
            adj[v][u] += 1
        return adj

    def is_connected(self) -> bool:
        return _connected(range(self.n_vertices), self.edges)

    def is_1pi(self) -> bool:
        if not self.is_connected():
            return False
        counts = Counter(self.edges)
        for e, m in counts.items():
            if m > 1:
                continue
            rest = [x for x in self.edges if x != e]
            if not _connected(range(self.n_vertices), rest):
                return False
        return True

    def relabel(self, perm) -> "FeynmanGraph":
        """Apply the vertex map ``v -> perm[v]``."""
        return FeynmanGraph(self.n_vertices,
                            tuple((perm[u], perm[v]) for u, v in self.edges),
                            tuple(perm[x] for x in self.ext))

    def with_ext(self, ext) -> "FeynmanGraph":
        return FeynmanGraph(self.n_vertices, self.edges, tuple(ext))

    @property
    def key(self) -> str:
        return canonical_form(self)


def _connected(vertices, edges) -> bool:
    vertices = list(vertices)
    if not vertices:
        return True
    adj = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


# -- canonical labeling ----------------------------------------------------------

def _refined_colors(g: FeynmanGraph) -> list:
    adj = g.adjacency()
    legs = {v: tuple(sorted(i for i, x in enumerate(g.ext) if x == v))
            for v in range(g.n_vertices)}
    sig = {v: (legs[v], tuple(sorted(adj[v].values()))) for v in adj}
    colors = _rank(sig)
    while True:
        sig = {v: (colors[v], tuple(sorted((colors[w], m) for w, m in adj[v].items())))
               for v in adj}
        new = _rank(sig)
        if len(set(new.values())) == len(set(colors.values())):
            return [new[v] for v in range(g.n_vertices)]
        colors = new


def _rank(sig: dict) -> dict:
    order = {s: i for i, s in enumerate(sorted(set(sig.values())))}
    return {v: order[s] for v, s in sig.items()}


def _class_labelings(colors: list):
    """Yield vertex maps old -> new that list colour classes in colour order."""
    classes = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    blocks = [classes[c] for c in sorted(classes)]
    starts = list(itertools.accumulate([0] + [len(b) for b in blocks[:-1]]))
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = [0] * len(colors)
        for start, block in zip(starts, choice):
            for offset, v in enumerate(block):
                perm[v] = start + offset
        yield perm


def _encode(g: FeynmanGraph, perm) -> tuple:
    edges = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges))
    return edges, tuple(perm[x] for x in g.ext)


def canonical_labeling(g: FeynmanGraph) -> list:
    best = None
    best_perm = None
    for perm in _class_labelings(_refined_colors(g)):
        code = _encode(g, perm)
        if best is None or code < best:
            best, best_perm = code, perm
    return best_perm


@lru_cache(maxsize=None)
def canonical_form(g: FeynmanGraph) -> str:
    """GraphKey ``E{n}L{L}:<edges>|<ext attachments>`` under canonical labels."""
    edges, ext = _encode(g, canonical_labeling(g))
    body = ",".join(f"{u}-{v}" for u, v in edges)
    legs = ",".join(str(x) for x in ext)
    return f"E{g.n_ext}L{g.loops}:{body}|{legs}"


def canonical_graph(g: FeynmanGraph) -> FeynmanGraph:
    return g.relabel(canonical_labeling(g))


def parse_key(key: str) -> FeynmanGraph:
    head, body = key.split(":", 1)
    edges_text, ext_text = body.split("|")
    edges = [tuple(int(x) for x in e.split("-")) for e in edges_text.split(",") if e]
    ext = [int(x) for x in ext_text.split(",") if x]
    n = 1 + max([x for e in edges for x in e] + ext)
    return FeynmanGraph(n, tuple(edges), tuple(ext))


# -- automorphisms ---------------------------------------------------------------

def vertex_automorphisms(g: FeynmanGraph) -> int:
    """Vertex permutations preserving edges and each external attachment."""
    colors = _refined_colors(g)
    target = Counter(g.edges)
    count = 0
    classes = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    blocks = list(classes.values())
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = [0] * g.n_vertices
        for block, image in zip(blocks, choice):
            for v, w in zip(block, image):
                perm[v] = w
        if any(perm[x] != x for x in g.ext):
            continue
        mapped = Counter(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges)
        if mapped == target:
            count += 1
    return count


def automorphism_order(g: FeynmanGraph) -> int:
    """|Aut| counting vertex maps together with parallel-edge swaps."""
    edge_swaps = math.prod(math.factorial(m) for m in Counter(g.edges).values())
    return vertex_automorphisms(g) * edge_swaps


def symmetry_factor(g: FeynmanGraph) -> Fraction:
    return Fraction(1, automorphism_order(g))


def divergence_degree(g: FeynmanGraph) -> int:
    """Superficial degree of divergence ``6L - 2I`` in six dimensions."""
    return 6 * g.loops - 2 * len(g.edges)


# -- generation ------------------------------------------------------------------

def _multigraphs(residual: list, n_fixed: int):
    """Loopless multigraphs realising ``residual`` degrees.

    Vertices ``>= n_fixed`` are interchangeable until they receive an edge;
    only the lowest untouched one is ever chosen as a new partner.
    """
    n = len(residual)
    res = list(residual)
    touched = [v < n_fixed for v in range(n)]
    edges = []

    def rec(min_v):
        u = next((v for v in range(n) if res[v] > 0), None)
        if u is None:
            yield tuple(edges)
            return
        start = max(min_v, u + 1)
        fresh = next((v for v in range(n) if not touched[v] and v > u), None)
        for v in range(start, n):
            if res[v] == 0:
                continue
            if not touched[v] and v != fresh:
                continue
            if sum(1 for e in edges if e == (u, v)) >= 2:
                continue
            was = touched[v], touched[u]
            res[u] -= 1
            res[v] -= 1
            touched[u] = touched[v] = True
            edges.append((u, v))
            yield from rec(v if res[u] > 0 else 0)
            edges.pop()
            res[u] += 1
            res[v] += 1
            touched[v], touched[u] = was

    yield from rec(0)


@lru_cache(maxsize=None)
def _generate(n_ext: int, loops: int) -> tuple:
    n_vertices = 2 * loops - 2 + n_ext
    residual = [2] * n_ext + [3] * (n_vertices - n_ext)
    ext = tuple(range(n_ext))
    found = {}
    for edges in _multigraphs(residual, n_ext):
        g = FeynmanGraph(n_vertices, edges, ext)
        if not g.is_1pi():
            continue
        key = canonical_form(g)
        if key not in found:
            found[key] = canonical_graph(g)
    return tuple(found[k] for k in sorted(found))


def generate_graphs(n_ext: int, loops: int, max_loops: int = MAX_LOOPS) -> list:
    """All 1PI phi^3 graphs with ``n_ext`` labeled legs and ``loops`` loops.

    Sorted by GraphKey; tadpoles and self-loops never occur.
    """
    if n_ext not in (2, 3):
        raise GraphError("only 2- and 3-point graphs are generated")
    if loops > max_loops:
        raise LoopOrderTooLarge(f"loop order {loops} exceeds maximum {max_loops}")
    if loops < 1:
        return []
    return list(_generate(n_ext, loops))


# -- subdivergences --------------------------------------------------------------

@dataclass(frozen=True)
class Subgraph:
    """Induced subgraph on ``vertices`` with its boundary legs."""

    vertices: frozenset
    edges: tuple
    legs: tuple  # W-endpoint of every boundary half-edge, in a fixed order

    @property
    def n_ext(self) -> int:
        return len(self.legs)

    @property
    def loops(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def as_graph(self, leg_order=None) -> FeynmanGraph:
        index = {v: i for i, v in enumerate(sorted(self.vertices))}
        legs = self.legs if leg_order is None else [self.legs[i] for i in leg_order]
        return FeynmanGraph(len(index),
                            tuple((index[u], index[v]) for u, v in self.edges),
                            tuple(index[x] for x in legs))

    def symmetrized(self) -> GraphPoly:
        """Average of the generator over all labelings of its legs."""
        n = self.n_ext
        acc = Counter()
        for order in itertools.permutations(range(n)):
            acc[canonical_form(self.as_graph(order))] += 1
        total = math.factorial(n)
        return GraphPoly({(k,): Fraction(c, total) for k, c in acc.items()})


def _induced(g: FeynmanGraph, vertices: frozenset) -> Subgraph:
    inner = tuple(e for e in g.edges if e[0] in vertices and e[1] in vertices)
    legs = []
    for u, v in g.edges:
        if (u in vertices) != (v in vertices):
            legs.append(u if u in vertices else v)
    legs.extend(x for x in g.ext if x in vertices)
    return Subgraph(vertices, inner, tuple(sorted(legs)))


def divergent_subgraph_list(g: FeynmanGraph) -> list:
    """Proper superficially divergent 1PI subgraphs (always induced)."""
    out = []
    n = g.n_vertices
    for size in range(2, n):
        for combo in itertools.combinations(range(n), size):
            w = frozenset(combo)
            sub = _induced(g, w)
            if sub.n_ext not in (2, 3) or sub.loops < 1:
                continue
            if sub.as_graph().is_1pi():
                out.append(sub)
    return out


def contract(g: FeynmanGraph, forest) -> FeynmanGraph:
    """Shrink each subgraph: 3-point ones to a vertex, 2-point ones to a line."""
    edges = list(g.edges)
    ext = list(g.ext)
    vertices = set(range(g.n_vertices))
    for i, sub in enumerate(forest):
        w = sub.vertices
        if sub.n_ext == 3:
            star = ("c", i)
            edges = [tuple(star if x in w else x for x in e) for e in edges
                     if not (e[0] in w and e[1] in w)]
            ext = [star if x in w else x for x in ext]
            vertices = (vertices - w) | {star}
        elif sub.n_ext == 2:
            boundary = [e for e in edges if (e[0] in w) != (e[1] in w)]
            ext_here = [j for j, x in enumerate(ext) if x in w]
            edges = [e for e in edges if e[0] not in w and e[1] not in w]
            ends = [e[0] if e[1] in w else e[1] for e in boundary]
            if len(ends) == 2:
                edges.append(tuple(ends))
            elif len(ends) == 1 and len(ext_here) == 1:
                ext[ext_here[0]] = ends[0]
            else:
                raise GraphError("cannot contract a 2-point subgraph carrying both legs")
            vertices = vertices - w
        else:
            raise GraphError("only 2- and 3-point subgraphs can be contracted")
    index = {v: k for k, v in enumerate(sorted(vertices, key=repr))}
    return FeynmanGraph(len(index),
                        tuple((index[u], index[v]) for u, v in edges),
                        tuple(index[x] for x in ext))


def divergent_subgraphs(g: FeynmanGraph) -> list:
    """All nonempty forests of disjoint divergent subgraphs with ``Γ/γ``.

    Returns a list of ``(forest, quotient)`` where ``forest`` is a tuple of
    :class:`Subgraph` and ``quotient`` the contracted :class:`FeynmanGraph`.
    """
    subs = divergent_subgraph_list(g)
    out = []
    for r in range(1, len(subs) + 1):
        for forest in itertools.combinations(subs, r):
            seen = set()
            disjoint = True
            for s in forest:
                if seen & s.vertices:
                    disjoint = False
                    break
                seen |= s.vertices
            if disjoint:
                out.append((forest, contract(g, forest)))
    return out


def coproduct_terms(g: FeynmanGraph, multiplicities: bool = True) -> list:
    """Reduced coproduct of ``g`` as a list of ``(left GraphPoly, right key)``.

    With ``multiplicities`` every forest contributes; without, identical
    ``(left, right)`` pairs are merged into one term.
    """
    terms = []
    for forest, quotient in divergent_subgraphs(g):
        left = GraphPoly.scalar(1)
        for sub in forest:
            left = left * sub.symmetrized()
        terms.append((left, canonical_form(quotient)))
    if not multiplicities:
        unique = []
        for t in terms:
            if t not in unique:
                unique.append(t)
        terms = unique
    return terms


# -- catalog and presentation ------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    key: str
    graph: FeynmanGraph
    n_ext: int
    loops: int
    symmetry: Fraction
    omega: int


def catalog(max_loops: int) -> list:
    if max_loops < 1 or max_loops > MAX_LOOPS:
        raise LoopOrderTooLarge(f"max_loops must lie in 1..{MAX_LOOPS}")
    out = []
    for loops in range(1, max_loops + 1):
        for n_ext in (2, 3):
            for g in generate_graphs(n_ext, loops):
                out.append(CatalogEntry(canonical_form(g), g, n_ext, loops,
                                        symmetry_factor(g), divergence_degree(g)))
    return sorted(out, key=lambda e: e.key)


@lru_cache(maxsize=None)
def build_presentation(max_loops: int, multiplicities: bool = True) -> HopfPresentation:
    """Hopf algebra of 2- and 3-point graphs up to ``max_loops`` loops."""
    entries = catalog(max_loops)
    degrees = {e.key: e.loops for e in entries}
    reduced = {}
    for e in entries:
        table = {}
        for left, right in coproduct_terms(e.graph, multiplicities):
            for mono, c in left.items():
                tensor_add(table, (mono, (right,)), c)
        if table:
            reduced[e.key] = table
    meta = {
        "max_loops": max_loops,
        "insertion_multiplicities": multiplicities,
        "n_ext": {e.key: e.n_ext for e in entries},
        "symmetry": {e.key: e.symmetry for e in entries},
    }
    return HopfPresentation("phi3", degrees, reduced, meta)
