"""Finite flag complexes, their loops, homology and fundamental groups.

Vertices carry a total order (their position in the vertex list); every
derived enumeration; cliques, spanning trees, boundary bases; follows that
order so all outputs are deterministic.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import words
from .linalg import rank_of_diagonal, smith_normal_form

MAX_VERTICES = 20


class ComplexError(ValueError):
    pass


def _check_simple(vertices: Sequence[str], edges: Iterable[tuple[str, str]]) -> frozenset[frozenset[str]]:
    vset = set(vertices)
    if len(vset) != len(vertices):
        raise ComplexError("duplicate vertices")
    out = set()
    for u, v in edges:
        if u == v:
            raise ComplexError(f"self-loop at {u!r}")
        if u not in vset or v not in vset:
            raise ComplexError(f"edge ({u!r},{v!r}) leaves the vertex set")
        e = frozenset((u, v))
        if e in out:
            raise ComplexError(f"multi-edge ({u!r},{v!r})")
        out.add(e)
    return frozenset(out)


@dataclass(frozen=True)
class SimpleGraph:
    """Finite simple graph with totally ordered vertices."""

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable) -> "SimpleGraph":
        vs = tuple(str(v) for v in vertices)
        es = _check_simple(vs, [(str(u), str(v)) for u, v in edges])
        return cls(vs, es)

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, u: str) -> list[str]:
        return [v for v in self.vertices if v != u and self.has_edge(u, v)]

    def sorted_edges(self) -> list[tuple[str, str]]:
        idx = {v: i for i, v in enumerate(self.vertices)}
        out = []
        for e in self.edges:
            a, b = sorted(e, key=idx.get)
            out.append((a, b))
        out.sort(key=lambda e: (idx[e[0]], idx[e[1]]))
        return out

    def induced(self, keep: Iterable[str]) -> "SimpleGraph":
        ks = [v for v in self.vertices if v in set(keep)]
        es = [e for e in self.sorted_edges() if e[0] in set(ks) and e[1] in set(ks)]
        return SimpleGraph.build(ks, es)

    def is_induced_subgraph_of(self, other: "SimpleGraph") -> bool:
        if not set(self.vertices) <= set(other.vertices):
            return False
        for u, v in itertools.combinations(self.vertices, 2):
            if self.has_edge(u, v) != other.has_edge(u, v):
                return False
        return True


@dataclass(frozen=True)
class FlagComplex:
    """Clique complex of a simple graph; simplices are derived, not stored."""

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    _cliques: tuple[tuple[str, ...], ...] = field(default=None, compare=False, repr=False)

    def graph(self) -> SimpleGraph:
        return SimpleGraph(self.vertices, self.edges)

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def simplices(self) -> tuple[tuple[str, ...], ...]:
        """All cliques in vertex order, smallest dimension first."""
        if self._cliques is not None:
            return self._cliques
        idx = {v: i for i, v in enumerate(self.vertices)}
        cliques: list[tuple[str, ...]] = [(v,) for v in self.vertices]
        frontier = [(v,) for v in self.vertices]
        while frontier:
            nxt = []
            for cl in frontier:
                last = idx[cl[-1]]
                for v in self.vertices[last + 1:]:
                    if all(self.has_edge(u, v) for u in cl):
                        nxt.append(cl + (v,))
            cliques.extend(nxt)
            frontier = nxt
        cliques.sort(key=lambda c: (len(c), tuple(idx[v] for v in c)))
        result = tuple(cliques)
        object.__setattr__(self, "_cliques", result)
        return result

    def simplices_of_dim(self, k: int) -> list[tuple[str, ...]]:
        return [s for s in self.simplices() if len(s) == k + 1]

    @property
    def dimension(self) -> int:
        return max(len(s) for s in self.simplices()) - 1

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            u = stack.pop()
            for v in self.vertices:
                if v not in seen and self.has_edge(u, v):
                    seen.add(v)
                    stack.append(v)
        return len(seen) == len(self.vertices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices())

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.graph().sorted_edges()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FlagComplex":
        return flag_completion(SimpleGraph.build(data["vertices"], data["edges"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def flag_completion(graph: SimpleGraph) -> FlagComplex:
    """Clique complex on the graph's vertex/edge data.  Idempotent."""
    if len(graph.vertices) > MAX_VERTICES:
        raise ComplexError(f"complex capped at {MAX_VERTICES} vertices")
    return FlagComplex(graph.vertices, graph.edges)


@dataclass(frozen=True)
class EdgeLoop:
    """Directed edge loop, stored as the cyclic vertex sequence it visits.

    ``cycle`` lists l vertices for a loop of length l; consecutive vertices
    (cyclically) must span edges.  Directed-edge storage disambiguates
    multi-traversals such as a boundary walked twice.
    """

    cycle: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.cycle)

    def directed_edges(self) -> list[tuple[str, str]]:
        n = len(self.cycle)
        return [(self.cycle[i], self.cycle[(i + 1) % n]) for i in range(n)]

    def validate(self, complex_: FlagComplex) -> None:
        if len(self.cycle) < 3:
            raise ComplexError("simplicial loops have length >= 3")
        for u, v in self.directed_edges():
            if not complex_.has_edge(u, v):
                raise ComplexError(f"loop uses missing edge ({u!r},{v!r})")

    def to_json(self) -> list:
        return list(self.cycle)

    @classmethod
    def from_json(cls, data: Iterable) -> "EdgeLoop":
        return cls(tuple(str(v) for v in data))


@dataclass(frozen=True)
class OmegaSet:
    """Finite list of directed loops, claimed to normally generate pi1."""

    loops: tuple[EdgeLoop, ...]

    def validate(self, complex_: FlagComplex) -> None:
        for lp in self.loops:
            lp.validate(complex_)

    def to_json(self) -> list:
        return [lp.to_json() for lp in self.loops]

    @classmethod
    def from_json(cls, data: Iterable) -> "OmegaSet":
        return cls(tuple(EdgeLoop.from_json(item) for item in data))


def _boundary_matrix(complex_: FlagComplex, k: int) -> list[list[int]]:
    """Matrix of the boundary map C_k -> C_{k-1} in the ordered clique bases."""
    faces = complex_.simplices_of_dim(k - 1)
    cells = complex_.simplices_of_dim(k)
    face_index = {s: i for i, s in enumerate(faces)}
    rows = [[0] * len(cells) for _ in faces]
    for j, cell in enumerate(cells):
        for drop in range(len(cell)):
            face = cell[:drop] + cell[drop + 1:]
            rows[face_index[face]][j] = (-1) ** drop
    return rows


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...]

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion


def reduced_homology(complex_: FlagComplex, degree: int) -> HomologyGroup:
    """Reduced integer simplicial homology via Smith normal form."""
    if degree < 0 or degree > complex_.dimension:
        raise ComplexError(f"degree {degree} outside 0..{complex_.dimension}")
    n_cells = len(complex_.simplices_of_dim(degree))
    if n_cells == 0:
        return HomologyGroup(0, ())
    if degree == 0:
        # augmented boundary: every vertex maps to the generator of Z
        lower = [[1] * n_cells]
    else:
        lower = _boundary_matrix(complex_, degree)
    upper = _boundary_matrix(complex_, degree + 1)

    def diag_of(m: list[list[int]]) -> list[int]:
        if not m or not m[0]:
            return []
        return smith_normal_form(m)[0]

    rank_lower = rank_of_diagonal(diag_of(lower))
    diag_upper = diag_of(upper)
    rank_upper = rank_of_diagonal(diag_upper)
    rank = n_cells - rank_lower - rank_upper
    torsion = tuple(d for d in diag_upper if d > 1)
    return HomologyGroup(rank, torsion)


def is_acyclic(complex_: FlagComplex) -> bool:
    return all(reduced_homology(complex_, k).is_trivial for k in range(complex_.dimension + 1))


def spanning_tree(complex_: FlagComplex, basepoint: str) -> set[frozenset[str]]:
    """Deterministic spanning tree: grow from the basepoint, always attaching
    the lowest-index unreached vertex through its lowest-index reached
    neighbour."""
    if basepoint not in complex_.vertices:
        raise ComplexError(f"unknown basepoint {basepoint!r}")
    reached = [basepoint]
    tree: set[frozenset[str]] = set()
    while len(reached) < len(complex_.vertices):
        grown = False
        for v in complex_.vertices:
            if v in reached:
                continue
            for u in reached:
                if complex_.has_edge(u, v):
                    tree.add(frozenset((u, v)))
                    reached.append(v)
                    grown = True
                    break
            if grown:
                break
        if not grown:
            raise ComplexError("complex is disconnected")
    return tree


def edge_symbol(u: str, v: str) -> str:
    return f"e:{u}:{v}"


def pi1_presentation(complex_: FlagComplex, basepoint: str | None = None):
    """Presentation of pi1 from the 2-skeleton: generators are the edges
    outside a deterministic spanning tree, relators the 2-simplex boundaries
    rewritten through the tree.  Length-1 relators are eliminated."""
    from .presentations import GroupPresentation

    if basepoint is None:
        basepoint = complex_.vertices[0]
    tree = spanning_tree(complex_, basepoint)
    idx = {v: i for i, v in enumerate(complex_.vertices)}
    chords = [e for e in complex_.graph().sorted_edges() if frozenset(e) not in tree]
    gens = [edge_symbol(u, v) for u, v in chords]
    chord_dir = {}
    for u, v in chords:
        chord_dir[(u, v)] = (edge_symbol(u, v), 1)
        chord_dir[(v, u)] = (edge_symbol(u, v), -1)

    def edge_letter(u: str, v: str):
        if frozenset((u, v)) in tree:
            return None
        return chord_dir[(u, v)]

    relators = []
    for x, y, z in complex_.simplices_of_dim(2):
        letters = [edge_letter(*e) for e in ((x, y), (y, z), (z, x))]
        w = words.free_reduce(tuple(l for l in letters if l is not None))
        relators.append(w)
    pres = GroupPresentation.build(gens, relators)
    return _eliminate_unit_relators(pres)


def _eliminate_unit_relators(pres):
    """Tietze cleanup: kill generators forced trivial by length-1 relators."""
    from .presentations import GroupPresentation

    gens = list(pres.generators)
    relators = [tuple(r) for r in pres.relators]
    while True:
        dead = None
        for r in relators:
            if len(r) == 1:
                dead = r[0][0]
                break
        if dead is None:
            break
        gens = [g for g in gens if g != dead]
        relators = [
            words.free_reduce(tuple(l for l in r if l[0] != dead)) for r in relators
        ]
        relators = [r for r in relators if r]
    return GroupPresentation.build(gens, relators)


def loop_word(complex_: FlagComplex, loop: EdgeLoop, basepoint: str | None = None):
    """Rewrite a loop through the pi1 spanning tree into a chord word."""
    if basepoint is None:
        basepoint = complex_.vertices[0]
    tree = spanning_tree(complex_, basepoint)
    out = []
    for u, v in loop.directed_edges():
        if frozenset((u, v)) in tree:
            continue
        a, b = sorted((u, v), key=complex_.vertices.index)
        out.append((edge_symbol(a, b), 1 if (a, b) == (u, v) else -1))
    return words.free_reduce(tuple(out))


def normally_generates(complex_: FlagComplex, omega: OmegaSet, budget=None):
    """Tri-state check that the loops of omega normally generate pi1.

    Proved: coset enumeration of pi1 plus the loop relators collapses to the
    trivial group.  Refuted: a finite quotient in which some pi1 generator
    survives.  Unknown: budget exhausted.
    """
    from . import word_engine
    from .presentations import GroupPresentation

    if not complex_.is_connected():
        raise ComplexError("complex is disconnected")
    omega.validate(complex_)
    if budget is None:
        budget = word_engine.Budget()
    base = pi1_presentation(complex_)
    extra = [loop_word(complex_, lp) for lp in omega.loops]
    pres = GroupPresentation.build(list(base.generators), list(base.relators) + extra)
    return word_engine.group_is_trivial(pres, budget)
