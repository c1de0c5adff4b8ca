"""Free group actions on graphs and semidirect products W_K x| G.

A finite group G acts freely on a graph K with intra-orbit distance >= 4.
From orbit representatives we produce a finite presentation of the semidirect
product J = W_K x| G (Coxeter generators for the vertex orbit reps, plus the
G generators), and run the kernel-transfer experiment: every short kernel
element of J(S) -> J(T) must be shadowed by a kernel element of G(S) -> G(T)
of no greater length.

Convention used throughout for the twist: g * w_x * g^-1 = w_{g.x}, so the
Coxeter generator of a vertex u off the representative set V' expands to
g_u^-1 * w_ubar * g_u where ubar = g_u.u lies in V'.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import words
from .complexes import SimpleGraph
from .normal_forms import TitsEngine
from .presentations import GroupPresentation, PresentationError
from .word_engine import Budget, CosetTable, todd_coxeter
from .words import Word


class DavisError(ValueError):
    pass


def vertex_symbol(v: str) -> str:
    return f"w:{v}"


@dataclass(frozen=True)
class GroupAction:
    """A finite group acting on a simple graph by vertex permutations.

    The group must have a completed coset enumeration (it is the exact
    oracle); ``action`` maps each core generator to a vertex permutation.
    """

    graph: SimpleGraph
    group: GroupPresentation
    action: tuple[tuple[str, tuple[tuple[str, str], ...]], ...]

    @classmethod
    def build(
        cls,
        graph: SimpleGraph,
        group: GroupPresentation,
        action: Mapping[str, Mapping[str, str]],
    ) -> "GroupAction":
        core = group.core_generators()
        if set(action) != set(core):
            raise DavisError("action must cover exactly the core generators")
        packed = []
        for g in core:
            perm = dict(action[g])
            if sorted(perm) != sorted(graph.vertices) or sorted(
                perm.values()
            ) != sorted(graph.vertices):
                raise DavisError(f"image of {g!r} is not a vertex permutation")
            packed.append((g, tuple(sorted(perm.items()))))
        return cls(graph, group, tuple(packed))

    def generator_permutation(self, sym: str) -> dict[str, str]:
        for g, perm in self.action:
            if g == sym:
                return dict(perm)
        raise DavisError(f"unknown generator {sym!r}")

    def table(self, budget: Budget | None = None) -> CosetTable:
        table = todd_coxeter(self.group, (), budget or Budget())
        if not isinstance(table, CosetTable) or not table.complete:
            raise DavisError("group oracle requires a completed enumeration")
        return table

    def apply_word(self, w: Word, vertex: str) -> str:
        """Left action of the group element on a vertex; w acts last letter
        first, matching (gh).x = g.(h.x)."""
        out = vertex
        for sym, exp in reversed(words.word(w)):
            perm = self.generator_permutation(sym)
            if exp == 1:
                out = perm[out]
            else:
                out = {v: k for k, v in perm.items()}[out]
        return out

    def element_permutations(self, budget: Budget | None = None):
        """(representative word, vertex permutation) for every group element."""
        table = self.table(budget)
        out = []
        for rep in table.element_words():
            w = self.group.decode(rep)
            out.append((w, {v: self.apply_word(w, v) for v in self.graph.vertices}))
        return out

    def to_json(self) -> dict:
        return {
            "graph": {
                "vertices": list(self.graph.vertices),
                "edges": [list(e) for e in self.graph.sorted_edges()],
            },
            "group": self.group.to_json(),
            "action": {g: dict(perm) for g, perm in self.action},
        }

    @classmethod
    def from_json(cls, data: dict) -> "GroupAction":
        return cls.build(
            SimpleGraph.build(data["graph"]["vertices"], data["graph"]["edges"]),
            GroupPresentation.from_json(data["group"]),
            data["action"],
        )


@dataclass(frozen=True)
class ActionReport:
    valid: bool
    relators_ok: bool
    free: bool
    min_intra_orbit_distance: int | None
    violations: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "relators_ok": self.relators_ok,
            "free": self.free,
            "min_intra_orbit_distance": self.min_intra_orbit_distance,
            "violations": list(self.violations),
        }


def _graph_distances(graph: SimpleGraph, start: str) -> dict[str, int]:
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for v in graph.neighbors(u):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = nxt
    return dist


def check_action(ga: GroupAction, budget: Budget | None = None) -> ActionReport:
    """Relator compatibility, freeness, edge preservation and the distance-4
    orbit separation, with a witness string per violation."""
    violations: list[str] = []
    relators_ok = True
    for r in ga.group.relators:
        for v in ga.graph.vertices:
            if ga.apply_word(r, v) != v:
                relators_ok = False
                violations.append(f"relator {words.format_word(r)} moves vertex {v}")
                break
    for g, _ in ga.action:
        perm = ga.generator_permutation(g)
        for u, v in ga.graph.sorted_edges():
            if not ga.graph.has_edge(perm[u], perm[v]):
                violations.append(f"generator {g} does not preserve edge ({u},{v})")
    elements = ga.element_permutations(budget)
    free = True
    for w, perm in elements:
        if not w:
            continue
        if any(perm[v] == v for v in ga.graph.vertices):
            free = False
            violations.append(f"element {words.format_word(w)} has a fixed vertex")
    min_dist: int | None = None
    for v in ga.graph.vertices:
        dist = _graph_distances(ga.graph, v)
        orbit = {perm[v] for _, perm in elements}
        for u in orbit:
            if u == v:
                continue
            d = dist.get(u)
            if d is None:
                violations.append(f"orbit of {v} leaves the component")
                continue
            if min_dist is None or d < min_dist:
                min_dist = d
    separated = min_dist is None or min_dist >= 4
    if not separated:
        violations.append(f"intra-orbit distance {min_dist} < 4")
    return ActionReport(
        relators_ok and free and separated and not violations,
        relators_ok,
        free,
        min_dist,
        tuple(violations),
    )


@dataclass(frozen=True)
class OrbitData:
    """Vertex and edge orbit representatives with transfer elements g_u."""

    vprime: tuple[str, ...]
    eprime: tuple[tuple[str, str], ...]
    gu: tuple[tuple[str, Word], ...]  # vertex -> shortest word with g_u.u in V'

    def gu_map(self) -> dict[str, Word]:
        return dict(self.gu)

    def to_json(self) -> dict:
        return {
            "vprime": list(self.vprime),
            "eprime": [list(e) for e in self.eprime],
            "gu": {u: words.to_json(w) for u, w in self.gu},
        }


def choose_orbits(ga: GroupAction, budget: Budget | None = None) -> OrbitData:
    """Canonical orbit representatives: lex-least vertex per orbit, edge reps
    incident to V' whenever possible, and shortest transfer words g_u."""
    elements = ga.element_permutations(budget)
    # order elements by representative length then lexicographically: the
    # first g with g.u in V' is then a shortest transfer word
    elements = sorted(elements, key=lambda t: (len(t[0]), t[0]))
    vprime: list[str] = []
    seen: set[str] = set()
    for v in ga.graph.vertices:
        if v in seen:
            continue
        orbit = {perm[v] for _, perm in elements}
        rep = min(orbit, key=ga.graph.vertices.index)
        vprime.append(rep)
        seen |= orbit
    vset = set(vprime)
    eprime: list[tuple[str, str]] = []
    seen_edges: set[frozenset[str]] = set()
    for u, v in ga.graph.sorted_edges():
        e = frozenset((u, v))
        if e in seen_edges:
            continue
        orbit_edges = []
        for _, perm in elements:
            img = frozenset((perm[u], perm[v]))
            orbit_edges.append(img)
            seen_edges.add(img)
        incident = [e2 for e2 in orbit_edges if e2 & vset]
        if not incident:
            raise DavisError(f"edge orbit of ({u},{v}) misses V'")
        idx = {w: i for i, w in enumerate(ga.graph.vertices)}
        rep = min((tuple(sorted(e2, key=idx.get)) for e2 in incident))
        eprime.append(rep)
    incident_vertices = sorted({u for e in eprime for u in e}, key=ga.graph.vertices.index)
    gu = []
    for u in incident_vertices:
        for w, perm in elements:
            if perm[u] in vset:
                gu.append((u, w))
                break
        else:
            raise DavisError(f"no transfer element for {u}")
    return OrbitData(tuple(vprime), tuple(eprime), tuple(gu))


def compute_N1(ga: GroupAction, orbits: OrbitData) -> int:
    """Max transfer word length over vertices incident to E'; N is 2*N1."""
    gu = orbits.gu_map()
    incident = {u for e in orbits.eprime for u in e}
    lengths = [len(gu[u]) for u in incident]
    return max(lengths, default=0)


def build_J(
    ga: GroupAction, orbits: OrbitData, g_pres: GroupPresentation | None = None
) -> GroupPresentation:
    """Presentation of W_K x| G on V' Coxeter generators and G generators.

    Relator families: v^2 for v in V'; squared conjugated-edge relators of
    length at most 4*N1 + 4; the relators of G.
    """
    if g_pres is None:
        g_pres = ga.group
    gu = orbits.gu_map()
    vset = set(orbits.vprime)

    def coxeter_word(u: str) -> Word:
        """w_u spelled in the J generators: g_u^-1 * w_ubar * g_u."""
        if u in vset:
            return ((vertex_symbol(u), 1),)
        g = gu[u]
        ubar = ga.apply_word(g, u)
        return words.invert(g) + ((vertex_symbol(ubar), 1),) + tuple(words.word(g))

    gens = [vertex_symbol(v) for v in orbits.vprime] + list(g_pres.generators)
    relators: list[Word] = []
    for v in orbits.vprime:
        relators.append(((vertex_symbol(v), 1), (vertex_symbol(v), 1)))
    n1 = compute_N1(ga, orbits)
    for e in orbits.eprime:
        ends = [u for u in e if u in vset]
        if not ends:
            raise DavisError(f"edge rep {e} misses V'")
        v = ends[0]
        u = e[0] if e[1] == v else e[1]
        once = ((vertex_symbol(v), 1),) + coxeter_word(u)
        if len(once) * 2 > 4 * n1 + 4:
            raise DavisError("edge relator exceeds the 4*N1+4 bound")
        relators.append(once + once)
    relators.extend(g_pres.relators)
    return GroupPresentation.build(gens, relators, g_pres.inverse_pairs)


# ---------------------------------------------------------------------------
# Exact semidirect-product engine
# ---------------------------------------------------------------------------


class SemidirectEngine:
    """Elements of W_K x| G as (Tits normal form over K, coset id in G)."""

    def __init__(self, ga: GroupAction, budget: Budget | None = None) -> None:
        self.ga = ga
        self.tits = TitsEngine(ga.graph.vertices, ga.graph.edges)
        self.table = ga.table(budget)
        self.pres = ga.group
        self.identity = ((), 0)
        self._elt_words = [self.pres.decode(r) for r in self.table.element_words()]

    def coset_of(self, w: Word) -> int:
        return self.table.trace(0, self.pres.encode(w))

    def act(self, coset: int, letters: tuple[int, ...]) -> tuple[int, ...]:
        """Twist a Coxeter normal form by the group element of a coset."""
        g = self._elt_words[coset]
        moved = [
            self.tits.index[self.ga.apply_word(g, self.tits.vertices[i])]
            for i in letters
        ]
        return self.tits.normal_form(moved)

    def mul(self, a, b):
        (x1, g1), (x2, g2) = a, b
        twisted = self.act(g1, x2)
        x = self.tits.normal_form(x1 + twisted)
        g = self.table.trace(g1, self.pres.encode(self._elt_words[g2]))
        return (x, g)

    def gen_coxeter(self, v: str):
        return (self.tits.normal_form([self.tits.index[v]]), 0)

    def gen_group(self, sym: str, exp: int):
        return ((), self.coset_of(((sym, exp),)))

    def eval_word(self, w: Word, vprime: Sequence[str]):
        vset = set(vprime)
        out = self.identity
        for sym, exp in words.word(w):
            if sym.startswith("w:"):
                v = sym[2:]
                if v not in vset:
                    raise DavisError(f"{sym!r} is not a V' generator")
                out = self.mul(out, self.gen_coxeter(v))
            else:
                out = self.mul(out, self.gen_group(sym, exp))
        return out


# ---------------------------------------------------------------------------
# The kernel-transfer experiment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SemikerReport:
    n1: int
    n: int
    max_len: int
    kernel_words_checked: int
    counterexamples: tuple[dict, ...]
    samples: tuple[dict, ...]

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "N1": self.n1,
            "N": self.n,
            "max_len": self.max_len,
            "kernel_words_checked": self.kernel_words_checked,
            "passed": self.passed,
            "counterexamples": list(self.counterexamples),
            "samples": list(self.samples),
        }


class _FiniteGroupOracle:
    """Cached completed enumeration used for identity tests in G(T)."""

    def __init__(self, pres: GroupPresentation, budget: Budget | None = None) -> None:
        table = todd_coxeter(pres, (), budget or Budget())
        if not isinstance(table, CosetTable) or not table.complete:
            raise DavisError("quotient group oracle requires a finite group")
        self.pres = pres
        self.table = table

    def is_identity(self, w: Word) -> bool:
        return self.table.trace(0, self.pres.encode(w)) == 0


def _vertex_quotient_map(
    ga_s: GroupAction, ga_t: GroupAction, quotient, t_oracle: _FiniteGroupOracle
) -> dict[str, str]:
    """Vertex map K(S) -> K(T) collapsing kernel orbits.

    K(T) reuses a subset of the K(S) vertex names, so a vertex of K(S) maps
    to the unique K(T)-named vertex in its kernel orbit.
    """
    t_names = set(ga_t.graph.vertices)
    out: dict[str, str] = {}
    elements = ga_s.element_permutations()
    kernel = [
        (w, perm) for w, perm in elements if t_oracle.is_identity(quotient.apply(w))
    ]
    for v in ga_s.graph.vertices:
        orbit = {perm[v] for _, perm in kernel}
        named = orbit & t_names
        if len(named) != 1:
            raise DavisError(f"kernel orbit of {v} has no unique K(T) name")
        out[v] = named.pop()
    return out


def semiker_experiment(
    instance_s: tuple[GroupAction, OrbitData, GroupPresentation],
    instance_t: tuple[GroupAction, OrbitData, GroupPresentation],
    quotient,
    max_len: int,
    budget: Budget | None = None,
) -> SemikerReport:
    """Enumerate kernel elements of J(S) -> J(T) up to max_len and verify the
    transfer bound: each of length > N admits g in ker(G(S) -> G(T)) - {1}
    with l_G(g) <= l_J(w)."""
    ga_s, orbits_s, gp_s = instance_s
    ga_t, orbits_t, gp_t = instance_t
    n1 = compute_N1(ga_s, orbits_s)
    n = 2 * n1
    eng_s = SemidirectEngine(ga_s, budget)
    eng_t = SemidirectEngine(ga_t, budget)
    t_oracle = _FiniteGroupOracle(gp_t, budget)
    vmap = _vertex_quotient_map(ga_s, ga_t, quotient, t_oracle)

    # kernel of G(S) -> G(T): coset ids and the shortest length per element
    g_kernel_lengths: list[int] = []
    kernel_cosets: set[int] = set()
    for i, w in enumerate(eng_s._elt_words):
        if t_oracle.is_identity(quotient.apply(w)):
            kernel_cosets.add(i)
            if i != 0:
                g_kernel_lengths.append(len(w))
    min_g_kernel = min(g_kernel_lengths, default=None)

    def project(state) -> bool:
        """True when the J(S) element dies in J(T)."""
        x, g = state
        if g not in kernel_cosets:
            return False
        mapped = [eng_t.tits.index[vmap[eng_s.tits.vertices[i]]] for i in x]
        return not eng_t.tits.normal_form(mapped)

    moves = [(vertex_symbol(v), 1) for v in orbits_s.vprime]
    for s in gp_s.core_generators():
        moves.extend([(s, 1), (s, -1)])
    start = eng_s.identity
    lengths = {start: 0}
    frontier = [start]
    checked = 0
    counterexamples: list[dict] = []
    samples: list[dict] = []
    state_word = {start: ()}
    for depth in range(1, max_len + 1):
        nxt = []
        for st in frontier:
            for mv in moves:
                sym, exp = mv
                if sym.startswith("w:"):
                    new = eng_s.mul(st, eng_s.gen_coxeter(sym[2:]))
                else:
                    new = eng_s.mul(st, eng_s.gen_group(sym, exp))
                if new in lengths:
                    continue
                lengths[new] = depth
                state_word[new] = state_word[st] + (mv,)
                nxt.append(new)
        frontier = nxt
        for st in nxt:
            if st == start or not project(st):
                continue
            l_j = depth
            if l_j <= n:
                continue
            checked += 1
            ok = min_g_kernel is not None and min_g_kernel <= l_j
            record = {
                "word": words.to_json(state_word[st]),
                "l_J": l_j,
                "g_length": min_g_kernel,
                "ok": ok,
            }
            if not ok:
                counterexamples.append(record)
            elif len(samples) < 10:
                samples.append(record)
    return SemikerReport(
        n1, n, max_len, checked, tuple(counterexamples), tuple(samples)
    )


# ---------------------------------------------------------------------------
# Instance serialization
# ---------------------------------------------------------------------------


def instance_to_json(ga: GroupAction, orbits: OrbitData) -> dict:
    return {"action": ga.to_json(), "orbits": orbits.to_json()}


def instance_from_json(data: dict) -> tuple[GroupAction, OrbitData]:
    ga = GroupAction.from_json(data["action"])
    if "orbits" in data:
        o = data["orbits"]
        orbits = OrbitData(
            tuple(o["vprime"]),
            tuple(tuple(e) for e in o["eprime"]),
            tuple(sorted((u, words.from_json(w)) for u, w in o["gu"].items())),
        )
    else:
        orbits = choose_orbits(ga)
    return ga, orbits
