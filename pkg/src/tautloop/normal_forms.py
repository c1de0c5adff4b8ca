"""Exact, always-terminating word-problem engines.

Right-angled Coxeter words reduce by Tits moves (delete vv, swap commuting
pairs); right-angled Artin words by the analogous piling moves.  Both engines
work in two phases: greedy left-to-right piling that cancels whenever a
matching letter is reachable through commutations (this yields some reduced
representative), then extraction of the lexicographically least word in the
commutation class; repeatedly pick the smallest letter all of whose
predecessors commute with it.  Two words are equal in the group iff their
canonical forms coincide.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .words import Word, word


class NormalFormError(ValueError):
    pass


class TitsEngine:
    """Canonical forms in the right-angled Coxeter group of a graph.

    Letters are vertex indices; every generator is an involution.
    """

    def __init__(self, vertices: Sequence[str], edges) -> None:
        self.vertices = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.comm = [0] * len(self.vertices)
        for e in edges:
            u, v = tuple(e)
            i, j = self.index[u], self.index[v]
            self.comm[i] |= 1 << j
            self.comm[j] |= 1 << i

    def push(self, nf: list[int], v: int) -> None:
        comm_v = self.comm[v]
        i = len(nf) - 1
        while i >= 0:
            u = nf[i]
            if u == v:
                del nf[i]
                return
            if not (comm_v >> u) & 1:
                break
            i -= 1
        j = len(nf)
        while j > 0:
            u = nf[j - 1]
            if u != v and (comm_v >> u) & 1 and u > v:
                j -= 1
            else:
                break
        nf.insert(j, v)

    def _canonize(self, nf: list[int]) -> tuple[int, ...]:
        """Lexicographically least representative of the commutation class."""
        remaining = list(nf)
        out: list[int] = []
        while remaining:
            best = None
            for i, v in enumerate(remaining):
                if any(u == v or not (self.comm[u] >> v) & 1 for u in remaining[:i]):
                    continue
                if best is None or v < remaining[best]:
                    best = i
            out.append(remaining.pop(best))
        return tuple(out)

    def normal_form(self, letters: Iterable[int]) -> tuple[int, ...]:
        nf: list[int] = []
        for v in letters:
            self.push(nf, v)
        return self._canonize(nf)

    def encode(self, w: Sequence[str]) -> list[int]:
        try:
            return [self.index[s] for s in w]
        except KeyError as exc:
            raise NormalFormError(f"unknown vertex symbol {exc.args[0]!r}") from None

    def decode(self, letters: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.vertices[i] for i in letters)


class RaagEngine:
    """Canonical forms in the right-angled Artin group of a flag complex.

    Letters are signed 1-based vertex indices (sign is the exponent).
    """

    def __init__(self, vertices: Sequence[str], edges) -> None:
        self.vertices = tuple(vertices)
        self.index = {v: i + 1 for i, v in enumerate(self.vertices)}
        self.comm = [0] * (len(self.vertices) + 1)
        for e in edges:
            u, v = tuple(e)
            i, j = self.index[u], self.index[v]
            self.comm[i] |= 1 << j
            self.comm[j] |= 1 << i

    def push(self, nf: list[int], c: int) -> None:
        g = abs(c)
        comm_g = self.comm[g]
        i = len(nf) - 1
        while i >= 0:
            u = nf[i]
            if u == -c:
                del nf[i]
                return
            if abs(u) == g:
                break
            if not (comm_g >> abs(u)) & 1:
                break
            i -= 1
        j = len(nf)
        while j > 0:
            u = nf[j - 1]
            if abs(u) == g:
                break
            if (comm_g >> abs(u)) & 1 and abs(u) > g:
                j -= 1
            else:
                break
        nf.insert(j, c)

    def _canonize(self, nf: list[int]) -> tuple[int, ...]:
        """Lexicographically least representative of the commutation class."""
        remaining = list(nf)
        out: list[int] = []
        while remaining:
            best = None
            for i, c in enumerate(remaining):
                g = abs(c)
                if any(
                    abs(u) == g or not (self.comm[abs(u)] >> g) & 1
                    for u in remaining[:i]
                ):
                    continue
                if best is None or (g, c < 0) < (abs(remaining[best]), remaining[best] < 0):
                    best = i
            out.append(remaining.pop(best))
        return tuple(out)

    def normal_form(self, letters: Iterable[int]) -> tuple[int, ...]:
        nf: list[int] = []
        for c in letters:
            self.push(nf, c)
        return self._canonize(nf)

    def encode(self, w: Word) -> list[int]:
        out = []
        for sym, exp in w:
            if sym not in self.index:
                raise NormalFormError(f"unknown vertex symbol {sym!r}")
            out.append(exp * self.index[sym])
        return out

    def decode(self, letters: Iterable[int]) -> Word:
        return tuple(
            (self.vertices[abs(c) - 1], 1 if c > 0 else -1) for c in letters
        )


def tits_reduce(graph, w: Sequence[str]) -> tuple[str, ...]:
    """Canonical Coxeter normal form of a word given as vertex symbols."""
    eng = TitsEngine(graph.vertices, graph.edges)
    return eng.decode(eng.normal_form(eng.encode(tuple(w))))


def raag_normal_form(complex_, w: Word) -> Word:
    """Canonical Artin normal form of a (vertex, exponent) word."""
    eng = RaagEngine(complex_.vertices, complex_.edges)
    return eng.decode(eng.normal_form(eng.encode(word(w))))


def _split_edge_symbol(sym: str) -> tuple[str, str]:
    parts = sym.split(":")
    if len(parts) != 3 or parts[0] != "e":
        raise NormalFormError(f"not a directed-edge symbol: {sym!r}")
    return parts[1], parts[2]


def bb_image(complex_, w: Word) -> Word:
    """Image of a directed-edge word in the Artin group: the edge from x to y
    maps to x y^-1.  A nontrivial image certifies nontriviality of the word in
    every G_L(S)."""
    eng = RaagEngine(complex_.vertices, complex_.edges)
    letters: list[int] = []
    for sym, exp in word(w):
        x, y = _split_edge_symbol(sym)
        if not complex_.has_edge(x, y):
            raise NormalFormError(f"unknown edge symbol {sym!r}")
        i, j = eng.index[x], eng.index[y]
        if exp == 1:
            letters.extend((i, -j))
        else:
            letters.extend((j, -i))
    return eng.decode(eng.normal_form(letters))


def retract(graph, subgraph, w: Sequence[str]) -> tuple[str, ...]:
    """Retraction of a Coxeter word onto a full subgraph: letters outside the
    subgraph map to the identity, the rest reduce in the smaller group."""
    if not subgraph.is_induced_subgraph_of(graph):
        raise NormalFormError("subgraph must be a full (induced) subgraph")
    keep = set(subgraph.vertices)
    for s in w:
        if s not in set(graph.vertices):
            raise NormalFormError(f"unknown vertex symbol {s!r}")
    return tits_reduce(subgraph, tuple(s for s in w if s in keep))
