"""Group presentations: the universal currency between modules.

Covers the directed-edge presentations P(L, Omega, S), right-angled Artin and
Coxeter presentations, and length-truncated presentations.  A presentation may
carry an involution pairing marking generators that are formal inverses of one
another (the directed edge x->y against y->x); engines collapse each pair onto
one core generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import words
from .words import Word


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    inverse_pairs: tuple[tuple[str, str], ...] = ()

    @classmethod
    def build(
        cls,
        generators: Sequence[str],
        relators: Iterable[Word],
        inverse_pairs: Iterable[tuple[str, str]] = (),
    ) -> "GroupPresentation":
        gens = tuple(str(g) for g in generators)
        if len(set(gens)) != len(gens):
            raise PresentationError("duplicate generators")
        gen_set = set(gens)
        pairs = tuple(sorted(tuple(sorted(p)) for p in inverse_pairs))
        for a, b in pairs:
            if a not in gen_set or b not in gen_set:
                raise PresentationError(f"involution pair ({a!r},{b!r}) outside generators")
        seen: set[Word] = set()
        kept: list[Word] = []
        for r in relators:
            r = words.word(r)
            for sym, _ in r:
                if sym not in gen_set:
                    raise PresentationError(f"relator uses unknown generator {sym!r}")
            key = words.canonical_cyclic(r)
            if not key or key in seen:
                continue
            seen.add(key)
            kept.append(r)
        return cls(gens, tuple(kept), pairs)

    # -- core view -----------------------------------------------------

    def pairing_map(self) -> dict[str, str]:
        out: dict[str, str] = {}
        for a, b in self.inverse_pairs:
            out[a] = b
            out[b] = a
        return out

    def core_generators(self) -> tuple[str, ...]:
        """Generators with the larger member of each formal-inverse pair dropped."""
        pairing = self.pairing_map()
        return tuple(g for g in self.generators if pairing.get(g, g) >= g)

    def normalize_word(self, w: Word) -> Word:
        return words.free_reduce(words.normalize(w, self.pairing_map()))

    def encode(self, w: Word) -> tuple[int, ...]:
        """Signed-index encoding of a word over the core alphabet (1-based)."""
        core = self.core_generators()
        index = {g: i + 1 for i, g in enumerate(core)}
        out = []
        for sym, exp in self.normalize_word(w):
            if sym not in index:
                raise PresentationError(f"unknown generator {sym!r}")
            out.append(exp * index[sym])
        return tuple(out)

    def decode(self, codes: Iterable[int]) -> Word:
        core = self.core_generators()
        return tuple((core[abs(c) - 1], 1 if c > 0 else -1) for c in codes)

    def core_relators(self) -> tuple[tuple[int, ...], ...]:
        """Encoded relators, pairing-normalised; trivialised ones are dropped."""
        out = []
        seen = set()
        for r in self.relators:
            enc = reduce_ints(self.encode(r))
            if not enc:
                continue
            key = canonical_cyclic_ints(enc)
            if key in seen:
                continue
            seen.add(key)
            out.append(enc)
        return tuple(out)

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        data = {
            "generators": list(self.generators),
            "relators": [words.to_json(r) for r in self.relators],
        }
        if self.inverse_pairs:
            data["inverse_pairs"] = [list(p) for p in self.inverse_pairs]
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "GroupPresentation":
        return cls.build(
            data["generators"],
            [words.from_json(r) for r in data["relators"]],
            [tuple(p) for p in data.get("inverse_pairs", [])],
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def gap_export(self) -> str:
        """Plain-text export in GAP style, for external cross-checking."""
        names = {g: f"g{i + 1}" for i, g in enumerate(self.generators)}
        lines = [
            "# generators: " + ", ".join(f"{names[g]} = {g}" for g in self.generators),
            "f := FreeGroup(" + ", ".join(f'"{names[g]}"' for g in self.generators) + ");",
        ]
        rel_strs = []
        for r in self.relators:
            if not r:
                continue
            rel_strs.append(
                "*".join(
                    f"f.{self.generators.index(s) + 1}" + ("" if e == 1 else "^-1")
                    for s, e in r
                )
            )
        lines.append("rels := [" + ", ".join(rel_strs) + "];")
        lines.append("g := f / rels;")
        return "\n".join(lines) + "\n"


# -- integer-coded word helpers (engines work on these) -----------------


def reduce_ints(w: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for c in w:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def invert_ints(w: Sequence[int]) -> tuple[int, ...]:
    return tuple(-c for c in reversed(w))


def cyclic_reduce_ints(w: Sequence[int]) -> tuple[int, ...]:
    w = reduce_ints(w)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = reduce_ints(w[1:-1])
    return tuple(w)


def canonical_cyclic_ints(w: Sequence[int]) -> tuple[int, ...]:
    w = cyclic_reduce_ints(w)
    if not w:
        return ()
    cands = [w[i:] + w[:i] for i in range(len(w))]
    iw = invert_ints(w)
    cands += [iw[i:] + iw[:i] for i in range(len(iw))]
    return min(cands)


def exponent_vector(w: Sequence[int], n_gens: int) -> tuple[int, ...]:
    v = [0] * n_gens
    for c in w:
        v[abs(c) - 1] += 1 if c > 0 else -1
    return tuple(v)


# -- homomorphisms -----------------------------------------------------


@dataclass(frozen=True)
class Homomorphism:
    """Generator-image description of a map between presented groups."""

    source: GroupPresentation
    target: GroupPresentation
    images: tuple[tuple[str, Word], ...]
    relator_checks: tuple = field(default=(), compare=False)

    @classmethod
    def build(cls, source, target, images: Mapping[str, Word]) -> "Homomorphism":
        missing = [g for g in source.core_generators() if g not in images]
        if missing:
            raise PresentationError(f"no image for generators {missing}")
        return cls(source, target, tuple(sorted((g, words.word(w)) for g, w in images.items())))

    @classmethod
    def identity_on_generators(cls, source, target) -> "Homomorphism":
        if set(source.generators) != set(target.generators):
            raise PresentationError("generator sets differ")
        return cls.build(source, target, {g: ((g, 1),) for g in source.core_generators()})

    def image_map(self) -> dict[str, Word]:
        return dict(self.images)

    def apply(self, w: Word) -> Word:
        imgs = self.image_map()
        out: list = []
        for sym, exp in self.source.normalize_word(w):
            img = imgs[sym]
            out.extend(img if exp == 1 else words.invert(img))
        return self.target.normalize_word(tuple(out))

    def check_relators(self, budget=None):
        """Tri-state the image of each source relator in the target."""
        from . import word_engine

        if budget is None:
            budget = word_engine.Budget()
        return tuple(
            word_engine.is_trivial(self.target, self.apply(r), budget) for r in self.source.relators
        )


# -- the paper's presentation families ---------------------------------


def edge_symbol(u: str, v: str) -> str:
    return f"e:{u}:{v}"


def build_P(complex_, omega, s_set: Iterable[int]) -> GroupPresentation:
    """Directed-edge presentation with edge, triangle and long-cycle relators.

    Generators are the directed edges of the complex; opposite edges are
    formally inverse.  One edge relator per undirected edge, two triangle
    relators per 2-simplex, and one long-cycle relator per (n, loop) pair
    with n in S minus {0}.
    """
    s_vals = sorted(set(int(n) for n in s_set))
    if 0 not in s_vals:
        raise PresentationError("the standard generating set requires 0 in S")
    if not complex_.is_connected():
        raise PresentationError("complex must be connected")
    omega.validate(complex_)

    gens: list[str] = []
    pairs: list[tuple[str, str]] = []
    relators: list[Word] = []
    for u, v in complex_.graph().sorted_edges():
        a, b = edge_symbol(u, v), edge_symbol(v, u)
        gens.extend([a, b])
        pairs.append((a, b))
        relators.append(((a, 1), (b, 1)))
    for x, y, z in complex_.simplices_of_dim(2):
        tri = (edge_symbol(x, y), edge_symbol(y, z), edge_symbol(z, x))
        relators.append(tuple((g, 1) for g in tri))
        relators.append(tuple((g, -1) for g in tri))
    for n in s_vals:
        if n == 0:
            continue
        for loop in omega.loops:
            w: list = []
            for u, v in loop.directed_edges():
                w.extend([(edge_symbol(u, v), 1 if n > 0 else -1)] * abs(n))
            relators.append(tuple(w))
    return GroupPresentation.build(gens, relators, pairs)


def build_RAAG(complex_) -> GroupPresentation:
    """Right-angled Artin presentation: one commutator per edge."""
    gens = list(complex_.vertices)
    relators = [
        ((u, 1), (v, 1), (u, -1), (v, -1)) for u, v in complex_.graph().sorted_edges()
    ]
    return GroupPresentation.build(gens, relators)


def build_RACG(graph) -> GroupPresentation:
    """Right-angled Coxeter presentation: v^2 per vertex, (vw)^2 per edge."""
    gens = list(graph.vertices)
    relators: list[Word] = [((v, 1), (v, 1)) for v in gens]
    for u, v in graph.sorted_edges():
        relators.append(((u, 1), (v, 1), (u, 1), (v, 1)))
    return GroupPresentation.build(gens, relators)


def truncated_presentation(
    generators: Sequence[str],
    trivial_words: Iterable[Word],
    length_bound: int,
    inverse_pairs: Iterable[tuple[str, str]] = (),
) -> GroupPresentation:
    """Presentation whose relators are the supplied trivial words of length
    strictly below the bound, deduplicated up to rotation, inversion and free
    reduction."""
    pairing: dict[str, str] = {}
    for a, b in inverse_pairs:
        pairing[a] = b
        pairing[b] = a
    kept: list[Word] = []
    seen = set()
    for w in trivial_words:
        w = words.canonical_cyclic(words.normalize(words.word(w), pairing))
        if not w or len(w) >= length_bound:
            continue
        if w in seen:
            continue
        seen.add(w)
        kept.append(w)
    # canonical forms live on the core alphabet; restrict generators to it
    core = [g for g in generators if pairing.get(g, g) >= g]
    return GroupPresentation.build(core, kept)
