"""Colored objects and finitely-supported colored symmetric sequences.

A symmetric sequence is stored skeletally: one entry per (orbit, output
color), holding the value at the orbit's canonical profile together with a
**right** action of the stabilizer of that profile (the contravariant
direction of the indexing groupoid).  The functor on the whole groupoid is
materialized on demand:

* the value at any profile of the orbit is the stored value itself, and

* ``structure_map`` gives the covariant transport ``T(tau) : X(p) -> X(tau.act(p))``
  as ``rho(s_p * tau.inverse() * s_q.inverse())`` where ``s_p``, ``s_q`` are the
  stable-sort permutations of source and target.  In particular the transport
  along a stabilizer element ``g`` at the canonical profile is ``rho(g.inverse())``.

That identity is the single translation point between the stored right
actions and the left/covariant actions used in colimit formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .basecat import BaseCategory
from .errors import CapacityError, InvalidInput, arity_cap
from .profiles import (
    ColorSet,
    Orbit,
    Perm,
    Profile,
    aut_group,
    aut_group_generators,
    canonicalize,
)


@dataclass(frozen=True)
class ColoredObject:
    """One base object per color."""

    colors: ColorSet
    cat: BaseCategory
    parts: tuple

    def __post_init__(self):
        if len(self.parts) != len(self.colors.names):
            raise InvalidInput("colored object must assign every color exactly once")

    def part(self, color: str):
        return self.parts[self.colors.index(color)]

    def is_concentrated_at(self, color: str) -> bool:
        return all(
            self.cat.is_initial(p)
            for c, p in zip(self.colors.names, self.parts)
            if c != color
        )


def colored_object(colors: ColorSet, cat: BaseCategory, parts: Mapping) -> ColoredObject:
    missing = [c for c in colors.names if c not in parts]
    if missing:
        raise InvalidInput(f"missing colors {missing} in colored object")
    return ColoredObject(colors, cat, tuple(parts[c] for c in colors.names))


def initial_colored(colors: ColorSet, cat: BaseCategory) -> ColoredObject:
    return ColoredObject(colors, cat, tuple(cat.initial() for _ in colors.names))


@dataclass(frozen=True)
class ColoredMor:
    """A map of colored objects: one base morphism per color."""

    dom: ColoredObject
    cod: ColoredObject
    parts: tuple

    def __post_init__(self):
        if self.dom.colors != self.cod.colors:
            raise InvalidInput("colored morphism endpoints use different color sets")
        for c, m in zip(self.dom.colors.names, self.parts):
            if m.dom != self.dom.part(c) or m.cod != self.cod.part(c):
                raise InvalidInput(f"part at color {c!r} has wrong endpoints")

    def part(self, color: str):
        return self.parts[self.dom.colors.index(color)]


def colored_mor(dom: ColoredObject, cod: ColoredObject, parts: Mapping) -> ColoredMor:
    return ColoredMor(dom, cod, tuple(parts[c] for c in dom.colors.names))


def colored_identity(x: ColoredObject) -> ColoredMor:
    return ColoredMor(x, x, tuple(x.cat.identity(p) for p in x.parts))


def colored_compose(g: ColoredMor, f: ColoredMor) -> ColoredMor:
    cat = f.dom.cat
    return ColoredMor(
        f.dom, g.cod, tuple(cat.compose(gp, fp) for gp, fp in zip(g.parts, f.parts))
    )


def colored_coproduct(xs: Sequence[ColoredObject]):
    """Colorwise coproduct with colored injections."""
    colors = xs[0].colors
    cat = xs[0].cat
    cops = [cat.coproduct([x.part(c) for x in xs]) for c in colors.names]
    obj = ColoredObject(colors, cat, tuple(cp.obj for cp in cops))
    injections = [
        ColoredMor(x, obj, tuple(cp.injections[i] for cp in cops))
        for i, x in enumerate(xs)
    ]
    return obj, injections


EXHAUSTIVE_GROUP_LIMIT = 24


def stabilizer_word(g: Perm, canonical: Profile) -> list[Perm]:
    """Express a stabilizer element as in-block adjacent transpositions:
    ``g = w[0] * w[1] * ... * w[-1]`` (composition left to right).

    Bubble-sorting the image tuple only ever swaps equal-color positions
    because the canonical profile is sorted.
    """
    img = list(g.img)
    n = len(img)
    rev: list[Perm] = []
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if img[i] > img[i + 1]:
                if canonical.entries[i] != canonical.entries[i + 1]:
                    raise InvalidInput("permutation does not stabilize the profile")
                s = list(range(n))
                s[i], s[i + 1] = s[i + 1], s[i]
                rev.append(Perm(tuple(s)))
                img[i], img[i + 1] = img[i + 1], img[i]
                changed = True
    return rev[::-1]


class EquivariantEntry:
    """A base object with a validated right action of the orbit stabilizer.

    The action is stored on the in-block adjacent transpositions generating
    the stabilizer; arbitrary elements are derived through a word
    decomposition and cached.  Validation checks the Coxeter presentation
    (involutions, braid and commutation relations), which pins the action on
    the whole group, and additionally compares against a fully supplied
    mapping exhaustively when the group is desk-sized.
    """

    __slots__ = ("cat", "orbit", "value", "_gen", "_cache")

    def __init__(self, cat: BaseCategory, orbit: Orbit, value, action):
        self.cat = cat
        self.orbit = orbit
        self.value = value
        gens = aut_group_generators(orbit)
        ident = Perm.identity(len(orbit))
        self._cache = {ident: cat.identity(value)}
        if callable(action):
            gen_vals = {s: action(s) for s in gens}
        else:
            missing = [s for s in gens if s not in action]
            if missing:
                raise InvalidInput("action must cover the stabilizer generators")
            gen_vals = {s: action[s] for s in gens}
        for s, m in gen_vals.items():
            if m.dom != value or m.cod != value:
                raise InvalidInput("action values must be endomorphisms of the entry")
            if not cat.is_isomorphism(m):
                raise InvalidInput("action values must be isomorphisms")
        self._gen = gen_vals
        self._validate_relations()
        if not callable(action):
            group = aut_group(orbit)
            extra = set(action) - set(gens) - {ident}
            if extra and len(group) <= EXHAUSTIVE_GROUP_LIMIT and set(action) >= set(group):
                if action[ident] != cat.identity(value):
                    raise InvalidInput("action must send the identity to the identity")
                for g in group:
                    if action[g] != self.action(g):
                        raise InvalidInput(
                            f"supplied action at {g.img} is inconsistent with the "
                            "values generated from the transpositions"
                        )
            elif extra:
                for g in extra:
                    if action[g] != self.action(g):
                        raise InvalidInput("supplied action values are inconsistent")

    def _validate_relations(self):
        cat = self.cat
        ident = cat.identity(self.value)
        gens = list(self._gen)
        for s in gens:
            if cat.compose(self._gen[s], self._gen[s]) != ident:
                raise InvalidInput("action generator is not an involution")
        for a in gens:
            for b in gens:
                i = next(k for k in range(len(a)) if a(k) != k)
                j = next(k for k in range(len(b)) if b(k) != k)
                if i >= j:
                    continue
                ra, rb = self._gen[a], self._gen[b]
                if j - i >= 2:
                    if cat.compose(ra, rb) != cat.compose(rb, ra):
                        raise InvalidInput("commuting action generators do not commute")
                else:
                    lhs = cat.chain([ra, rb, ra])
                    rhs = cat.chain([rb, ra, rb])
                    if lhs != rhs:
                        raise InvalidInput("action generators violate the braid relation")

    def action(self, g: Perm):
        """The stored right action at ``g``; ``rho(g*h) = rho(h) . rho(g)``."""
        cached = self._cache.get(g)
        if cached is not None:
            return cached
        word = stabilizer_word(g, self.orbit.canonical)
        # rho of a left-to-right composite is the reversed composite of rho's
        mor = self._cache[Perm.identity(len(g))]
        for s in word:
            mor = self.cat.compose(self._gen[s], mor)
        self._cache[g] = mor
        return mor

    def transport(self, g: Perm):
        """Covariant transport along a stabilizer element of the canonical profile."""
        return self.action(g.inverse())

    def __eq__(self, other):
        return (
            isinstance(other, EquivariantEntry)
            and self.orbit == other.orbit
            and self.value == other.value
            and self._gen == other._gen
        )


def trivial_entry(cat: BaseCategory, orbit: Orbit, value) -> EquivariantEntry:
    ident = cat.identity(value)
    return EquivariantEntry(cat, orbit, value, lambda s: ident)


@dataclass
class SymSeq:
    """A finitely-supported colored symmetric sequence.

    ``support`` maps (orbit, output color) to an entry; absent keys denote the
    initial object.  Entries with initial value are normalized away.
    """

    colors: ColorSet
    cat: BaseCategory
    support: dict = field(default_factory=dict)
    cap: int = None

    def __post_init__(self):
        if self.cap is None:
            self.cap = arity_cap()
        cleaned = {}
        for (orbit, color), entry in self.support.items():
            if color not in self.colors:
                raise InvalidInput(f"output color {color!r} not in the color set")
            if len(orbit) > self.cap:
                raise CapacityError(
                    f"support orbit of length {len(orbit)} exceeds the arity cap {self.cap}"
                )
            if entry.orbit != orbit:
                raise InvalidInput("entry stored under the wrong orbit")
            if self.cat.is_initial(entry.value):
                continue
            cleaned[(orbit, color)] = entry
        self.support = cleaned

    def entry(self, d: str, orbit: Orbit):
        return self.support.get((orbit, d))

    def entry_obj(self, d: str, p):
        """The value at (p; d); the initial object when unsupported."""
        orbit = p if isinstance(p, Orbit) else canonicalize(p)[0]
        e = self.support.get((orbit, d))
        return e.value if e is not None else self.cat.initial()

    def structure_map(self, d: str, tau: Perm, p: Profile):
        """The covariant transport X(p) -> X(tau.act(p))."""
        q = tau.act(p)
        orbit, s_p = canonicalize(p)
        _, s_q = canonicalize(q)
        e = self.support.get((orbit, d))
        if e is None:
            return self.cat.identity(self.cat.initial())
        g = s_p * tau.inverse() * s_q.inverse()
        return e.action(g)

    def arities(self):
        return sorted({len(orbit) for (orbit, _) in self.support})

    def is_concentrated(self, n: int) -> bool:
        return all(len(orbit) == n for (orbit, _) in self.support)


def embed_colored_object(a: ColoredObject, cap: int = None) -> SymSeq:
    """The arity-0 imbedding: X(d; empty) = A_d, everything else initial."""
    empty = Orbit(Profile(a.colors, ()))
    support = {}
    for d in a.colors.names:
        part = a.part(d)
        if not a.cat.is_initial(part):
            support[(empty, d)] = trivial_entry(a.cat, empty, part)
    return SymSeq(a.colors, a.cat, support, cap)


def one_color_view(x: SymSeq) -> dict:
    """Per-arity entries of a one-colored sequence, with their symmetric-group
    right actions."""
    if len(x.colors) != 1:
        raise InvalidInput("one_color_view requires a single color")
    out = {}
    for (orbit, _d), entry in x.support.items():
        out[len(orbit)] = entry
    return out


@dataclass
class SeqMor:
    """A map of symmetric sequences: entrywise morphisms commuting with actions."""

    dom: SymSeq
    cod: SymSeq
    parts: dict  # (orbit, color) -> BaseMor on entry values

    def part(self, d: str, orbit: Orbit):
        key = (orbit, d)
        if key in self.parts:
            return self.parts[key]
        cat = self.dom.cat
        return cat.initial_to(self.cod.entry_obj(d, orbit))

    def validate(self) -> None:
        cat = self.dom.cat
        keys = set(self.dom.support) | set(self.cod.support) | set(self.parts)
        for key in keys:
            orbit, d = key
            m = self.part(d, orbit)
            if m.dom != self.dom.entry_obj(d, orbit) or m.cod != self.cod.entry_obj(d, orbit):
                raise InvalidInput(f"entry map at {key} has wrong endpoints")
            de = self.dom.entry(d, orbit)
            ce = self.cod.entry(d, orbit)
            if de is not None and ce is not None:
                for g in aut_group_generators(orbit):
                    lhs = cat.compose(m, de.action(g))
                    rhs = cat.compose(ce.action(g), m)
                    if not cat.equal_mor(lhs, rhs):
                        raise InvalidInput(f"entry map at {key} is not equivariant")

    def is_iso(self) -> bool:
        cat = self.dom.cat
        keys = set(self.dom.support) | set(self.cod.support)
        return all(cat.is_isomorphism(self.part(d, orbit)) for (orbit, d) in keys)


def seq_identity(x: SymSeq) -> SeqMor:
    return SeqMor(x, x, {key: x.cat.identity(e.value) for key, e in x.support.items()})


def seq_compose(g: SeqMor, f: SeqMor) -> SeqMor:
    cat = f.dom.cat
    keys = set(f.dom.support) | set(f.cod.support) | set(g.cod.support)
    parts = {}
    for (orbit, d) in keys:
        parts[(orbit, d)] = cat.compose(g.part(d, orbit), f.part(d, orbit))
    return SeqMor(f.dom, g.cod, parts)


def seq_equal(f: SeqMor, g: SeqMor) -> bool:
    if f.dom.support.keys() != g.dom.support.keys():
        return False
    cat = f.dom.cat
    keys = set(f.dom.support) | set(f.cod.support) | set(g.cod.support)
    return all(
        cat.equal_mor(f.part(d, orbit), g.part(d, orbit)) for (orbit, d) in keys
    )


def embed_colored_mor(f: ColoredMor, cap: int = None) -> SeqMor:
    """The arity-0 imbedding on morphisms."""
    dom = embed_colored_object(f.dom, cap)
    cod = embed_colored_object(f.cod, cap)
    empty = Orbit(Profile(f.dom.colors, ()))
    parts = {}
    for d in f.dom.colors.names:
        if (empty, d) in dom.support or (empty, d) in cod.support:
            parts[(empty, d)] = f.part(d)
    return SeqMor(dom, cod, parts)


def colored_power(a: ColoredObject, p: Profile):
    """The left-nested tensor of the parts of ``a`` along a profile."""
    return a.cat.tensor_many([a.part(c) for c in p.entries])


def colored_power_left_action(a: ColoredObject, orbit: Orbit) -> dict:
    """The covariant (left) action of the stabilizer on the canonical power:
    the factor at position i moves to position g(i)."""
    cat = a.cat
    u = orbit.canonical
    leaves = [a.part(c) for c in u.entries]
    k = len(leaves)
    src = cat.left_nested_tree(k)
    out = {}
    for g in aut_group(orbit):
        dst = _permuted_left_tree(g, k)
        out[g] = cat.restructure(leaves, src, dst)
    return out


def _permuted_left_tree(g: Perm, k: int):
    """Left-nested tree whose s-th slot holds leaf g^{-1}(s)."""
    ginv = g.inverse()
    order = [ginv(s) for s in range(k)]
    if k == 0:
        return None
    tree = order[0]
    for s in range(1, k):
        tree = (tree, order[s])
    return tree


def colored_power_mor(f: ColoredMor, p: Profile):
    cat = f.dom.cat
    return cat.tensor_many_mor([f.part(c) for c in p.entries])
