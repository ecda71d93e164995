"""Colors, profiles, orbits, and the shuffle combinatorics of colored inputs.

Conventions (fixed once here, used everywhere):

* A ``Perm`` stores images 0-based: ``p.img[i]`` is where position ``i`` goes.
  Composition is ``(s * t)(i) = s(t(i))``.

* A permutation acts on a profile **on the left**: ``s.act(a)`` is the profile
  ``b`` with ``b[s(i)] = a[i]``.  A "map ``s : a -> b``" always means a
  permutation with ``s.act(a) == b``.

* The canonical representative of an orbit is the nondecreasing sort of the
  profile in the declared color order, and ``canonicalize`` returns the
  *stable*-sort permutation (equal colors keep their relative order).

* Equivariant data downstream is stored as a *right* action of the stabilizer
  of the canonical profile (the contravariant direction).  The translation to
  the covariant "transport along ``s``" direction used in computations is
  ``transport(s) = right_action(s.inverse())``; both directions appear in this
  package only through those two named accessors, never ad hoc.

All enumerations are returned in a deterministic order (lexicographic on
permutation image tuples, or on color-index tuples for profiles) so that runs
are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvalidInput, profile_cap


@dataclass(frozen=True)
class ColorSet:
    """An ordered finite set of distinct color symbols.

    The declared order is the total order used for canonicalization.
    """

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise InvalidInput("a color set must be non-empty")
        if len(set(self.names)) != len(self.names):
            raise InvalidInput(f"duplicate colors in {self.names}")

    def index(self, color: str) -> int:
        try:
            return self.names.index(color)
        except ValueError:
            raise InvalidInput(f"color {color!r} not in color set {self.names}")

    def __contains__(self, color: str) -> bool:
        return color in self.names

    def __len__(self) -> int:
        return len(self.names)

    def profile(self, entries: Iterable[str]) -> "Profile":
        return Profile(self, tuple(entries))


@dataclass(frozen=True)
class Profile:
    """A finite (possibly empty) sequence of colors from a fixed ColorSet."""

    colors: ColorSet
    entries: tuple[str, ...]

    def __post_init__(self):
        if len(self.entries) > profile_cap():
            raise InvalidInput(
                f"profile of length {len(self.entries)} exceeds the cap {profile_cap()}"
            )
        for c in self.entries:
            if c not in self.colors:
                raise InvalidInput(f"color {c!r} not in color set {self.colors.names}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def key(self) -> tuple[int, ...]:
        """The color-index tuple; the deterministic sort key for profiles."""
        return tuple(self.colors.index(c) for c in self.entries)

    def concat(self, other: "Profile") -> "Profile":
        return Profile(self.colors, self.entries + other.entries)

    def orbit(self) -> "Orbit":
        return canonicalize(self)[0]

    def is_canonical(self) -> bool:
        k = self.key()
        return all(k[i] <= k[i + 1] for i in range(len(k) - 1))


def concat_profiles(colors: ColorSet, parts: Sequence[Profile]) -> Profile:
    entries: tuple[str, ...] = ()
    for p in parts:
        entries = entries + p.entries
    return Profile(colors, entries)


@dataclass(frozen=True)
class Orbit:
    """The permutation class of a profile, named by its canonical member."""

    canonical: Profile

    def __post_init__(self):
        if not self.canonical.is_canonical():
            raise InvalidInput(f"{self.canonical.entries} is not sorted canonically")

    def __len__(self) -> int:
        return len(self.canonical)

    @property
    def colors(self) -> ColorSet:
        return self.canonical.colors


@dataclass(frozen=True)
class Perm:
    """A permutation of {0..n-1} stored as its image tuple."""

    img: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.img) != list(range(len(self.img))):
            raise InvalidInput(f"{self.img} is not a permutation")

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm(tuple(range(n)))

    def __call__(self, i: int) -> int:
        return self.img[i]

    def __len__(self) -> int:
        return len(self.img)

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition ``(self * other)(i) = self(other(i))``."""
        if len(self) != len(other):
            raise InvalidInput("cannot compose permutations of different sizes")
        return Perm(tuple(self.img[j] for j in other.img))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.img)
        for i, j in enumerate(self.img):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(self.img[i] == i for i in range(len(self.img)))

    def act(self, p: Profile) -> Profile:
        """Left action: the profile ``b`` with ``b[self(i)] = p[i]``."""
        if len(self) != len(p):
            raise InvalidInput("permutation and profile lengths differ")
        out = [""] * len(p)
        for i, c in enumerate(p.entries):
            out[self.img[i]] = c
        return Profile(p.colors, tuple(out))

    def act_tuple(self, items: Sequence) -> tuple:
        out = [None] * len(items)
        for i, x in enumerate(items):
            out[self.img[i]] = x
        return tuple(out)


def perm_sign(p: Perm) -> int:
    inversions = 0
    n = len(p)
    for i in range(n):
        for j in range(i + 1, n):
            if p.img[i] > p.img[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def block_sum(perms: Sequence[Perm]) -> Perm:
    """The block-diagonal permutation acting as each ``perms[j]`` on its block."""
    img: list[int] = []
    offset = 0
    for p in perms:
        img.extend(offset + i for i in p.img)
        offset += len(p)
    return Perm(tuple(img))


def block_move(h: Perm, lengths: Sequence[int]) -> Perm:
    """The permutation sending block ``j`` (of the given lengths) to slot ``h(j)``,
    keeping the inner order of every block."""
    if len(h) != len(lengths):
        raise InvalidInput("block permutation size does not match number of blocks")
    src_offsets = [0] * len(lengths)
    for j in range(1, len(lengths)):
        src_offsets[j] = src_offsets[j - 1] + lengths[j - 1]
    slot_lengths = h.act_tuple(lengths)
    dst_offsets = [0] * len(lengths)
    for s in range(1, len(lengths)):
        dst_offsets[s] = dst_offsets[s - 1] + slot_lengths[s - 1]
    img = [0] * sum(lengths)
    for j, ln in enumerate(lengths):
        for q in range(ln):
            img[src_offsets[j] + q] = dst_offsets[h(j)] + q
    return Perm(tuple(img))


def canonicalize(p: Profile) -> tuple[Orbit, Perm]:
    """The orbit of ``p`` and the stable-sort permutation ``s`` with
    ``s.act(p) == canonical``."""
    key = p.key()
    order = sorted(range(len(key)), key=lambda i: (key[i], i))
    img = [0] * len(key)
    for rank, i in enumerate(order):
        img[i] = rank
    canonical = Profile(p.colors, tuple(p.entries[i] for i in order))
    return Orbit(canonical), Perm(tuple(img))


@lru_cache(maxsize=None)
def orbit_members(o: Orbit) -> tuple[Profile, ...]:
    """All distinct rearrangements of the canonical profile, ordered by color key."""
    seen = sorted(set(itertools.permutations(o.canonical.entries)))
    colors = o.colors
    members = [Profile(colors, entries) for entries in seen]
    members.sort(key=lambda q: q.key())
    return tuple(members)


@lru_cache(maxsize=None)
def aut_group(o: Orbit) -> tuple[Perm, ...]:
    """The stabilizer of the canonical profile: all permutations fixing it
    color-wise.  A product of symmetric groups on the equal-color blocks,
    enumerated in lexicographic image order."""
    entries = o.canonical.entries
    n = len(entries)
    blocks: list[list[int]] = []
    start = 0
    for i in range(1, n + 1):
        if i == n or entries[i] != entries[start]:
            blocks.append(list(range(start, i)))
            start = i
    elements: list[Perm] = []
    pools = [list(itertools.permutations(b)) for b in blocks]
    for choice in itertools.product(*pools):
        img = [0] * n
        for block, placed in zip(blocks, choice):
            for src, dst in zip(block, placed):
                img[src] = dst
        elements.append(Perm(tuple(img)))
    elements.sort(key=lambda q: q.img)
    return tuple(elements)


def aut_group_generators(o: Orbit) -> tuple[Perm, ...]:
    """Adjacent transpositions within equal-color blocks."""
    entries = o.canonical.entries
    n = len(entries)
    gens = []
    for i in range(n - 1):
        if entries[i] == entries[i + 1]:
            img = list(range(n))
            img[i], img[i + 1] = img[i + 1], img[i]
            gens.append(Perm(tuple(img)))
    return tuple(gens)


def _block_offsets(blocks: Sequence[Profile]) -> list[int]:
    offsets = [0]
    for b in blocks[:-1]:
        offsets.append(offsets[-1] + len(b))
    return offsets


def is_order_preserving(sigma: Perm, blocks: Sequence[Profile], target: Profile) -> bool:
    """Whether ``sigma : concat(blocks) -> target`` keeps, for each block and
    each color in it, the images of that color in the block's own order."""
    concat = concat_profiles(target.colors, blocks)
    if sigma.act(concat) != target:
        return False
    offsets = _block_offsets(blocks)
    for j, b in enumerate(blocks):
        last: dict[str, int] = {}
        for q, c in enumerate(b.entries):
            pos = sigma(offsets[j] + q)
            if c in last and pos < last[c]:
                return False
            last[c] = pos
    return True


@lru_cache(maxsize=None)
def _order_preserving_maps(blocks: tuple[Profile, ...], target: Profile) -> tuple[Perm, ...]:
    colors = target.colors
    concat = concat_profiles(colors, blocks)
    if canonicalize(concat)[0] != canonicalize(target)[0]:
        raise InvalidInput(
            f"blocks {tuple(b.entries for b in blocks)} do not lie in the orbit "
            f"of {target.entries}"
        )
    n = len(target)
    offsets = _block_offsets(blocks)

    # positions in the target per color, ascending
    target_slots: dict[str, list[int]] = {}
    for pos, c in enumerate(target.entries):
        target_slots.setdefault(c, []).append(pos)

    # per color, the block-j source positions carrying it, in block order
    sources: dict[str, list[list[int]]] = {c: [[] for _ in blocks] for c in target_slots}
    for j, b in enumerate(blocks):
        for q, c in enumerate(b.entries):
            sources[c][j].append(offsets[j] + q)

    # per color choose which target slot goes to which block; within a block
    # the assignment is forced ascending
    per_color_choices: list[list[list[tuple[int, int]]]] = []
    color_order = sorted(target_slots, key=colors.index)
    for c in color_order:
        counts = [len(sources[c][j]) for j in range(len(blocks))]
        slots = target_slots[c]
        choices = []
        for owners in _interleavings(counts):
            taken: list[list[int]] = [[] for _ in blocks]
            for slot, owner in zip(slots, owners):
                taken[owner].append(slot)
            pairs = []
            for j in range(len(blocks)):
                pairs.extend(zip(sources[c][j], taken[j]))
            choices.append(pairs)
        per_color_choices.append(choices)

    result = []
    for combo in itertools.product(*per_color_choices):
        img = [0] * n
        for pairs in combo:
            for src, dst in pairs:
                img[src] = dst
        result.append(Perm(tuple(img)))
    result.sort(key=lambda q: q.img)
    return tuple(result)


def _interleavings(counts: Sequence[int]) -> list[tuple[int, ...]]:
    """All sequences containing ``counts[j]`` copies of ``j``, lexicographically."""
    total = sum(counts)
    if total == 0:
        return [()]
    out = []

    def rec(prefix: list[int], remaining: list[int]):
        if len(prefix) == total:
            out.append(tuple(prefix))
            return
        for j, r in enumerate(remaining):
            if r:
                remaining[j] -= 1
                prefix.append(j)
                rec(prefix, remaining)
                prefix.pop()
                remaining[j] += 1

    rec([], list(counts))
    return out


def order_preserving_maps(blocks: Sequence[Profile], target: Profile) -> tuple[Perm, ...]:
    """All maps ``concat(blocks) -> target`` that are order-preserving blockwise."""
    return _order_preserving_maps(tuple(blocks), target)


def factor_order_preserving(
    v: Perm, blocks: Sequence[Profile], target: Profile
) -> tuple[tuple[Perm, ...], Perm]:
    """Factor an arbitrary map ``v : concat(blocks) -> target`` uniquely as
    ``pi . block_sum(pi_j)`` with each ``pi_j`` fixing its block profile and
    ``pi`` order-preserving, by the per-color tracing rule: within each block,
    the i-th copy of a color goes to the position whose image under ``v`` has
    rank i among that block's images of the color."""
    concat = concat_profiles(target.colors, blocks)
    if v.act(concat) != target:
        raise InvalidInput("v is not a map from the concatenated blocks to the target")
    offsets = _block_offsets(blocks)
    pi_js = []
    for j, b in enumerate(blocks):
        img = list(range(len(b)))
        per_color: dict[str, list[int]] = {}
        for q, c in enumerate(b.entries):
            per_color.setdefault(c, []).append(q)
        for c, qs in per_color.items():
            dests = [v(offsets[j] + q) for q in qs]
            ranking = sorted(range(len(dests)), key=lambda k: dests[k])
            # the i-th copy of c goes to the rank-of-its-destination position
            rank_of = [0] * len(dests)
            for r, k in enumerate(ranking):
                rank_of[k] = r
            for i, q in enumerate(qs):
                img[q] = qs[rank_of[i]]
        pi_js.append(Perm(tuple(img)))
    pi = v * block_sum(pi_js).inverse()
    if not is_order_preserving(pi, blocks, target):
        raise InvalidInput("tracing rule produced a non-order-preserving residue")
    return tuple(pi_js), pi


def decompose_block_perm(
    tau: Perm, sigma: Perm, blocks: Sequence[Profile], target: Profile
) -> tuple[tuple[Perm, ...], Perm]:
    """Factor ``tau . sigma`` as ``pi . (blockwise pi_j)`` with ``pi``
    order-preserving, by the per-color tracing rule.

    ``sigma`` must be an order-preserving map ``concat(blocks) -> target`` and
    ``tau`` a map ``target -> tau.act(target)`` in the orbit.  The returned
    ``pi_j`` fix their block profiles, and ``pi`` is the unique order-preserving
    map ``concat(blocks) -> tau.act(target)`` with ``tau * sigma == pi * block_sum(pi_j)``.
    """
    if not is_order_preserving(sigma, blocks, target):
        raise InvalidInput("sigma is not an order-preserving map onto the target")
    if len(tau) != len(target):
        raise InvalidInput("tau does not act on the target profile")
    return factor_order_preserving(tau * sigma, blocks, tau.act(target))


def multiset_splittings(orbit: Orbit, m: int) -> tuple[tuple[Profile, ...], ...]:
    """All ordered ``m``-tuples of canonical profiles whose multiset union is the
    orbit's color multiset, in lexicographic color-key order."""
    colors = orbit.colors
    counts: dict[str, int] = {}
    for c in orbit.canonical.entries:
        counts[c] = counts.get(c, 0) + 1
    color_list = sorted(counts, key=colors.index)

    def rec(idx: int, partial: list[list[list[str]]]) -> list[list[list[str]]]:
        if idx == len(color_list):
            return [list(map(list, p)) for p in partial]
        c = color_list[idx]
        k = counts[c]
        extended = []
        for p in partial:
            for split in _compositions(k, m):
                q = [part + [c] * split[j] for j, part in enumerate(p)]
                extended.append(q)
        return rec(idx + 1, extended)

    raw = rec(0, [[[] for _ in range(m)]])
    tuples = []
    for p in raw:
        profs = tuple(Profile(colors, tuple(part)) for part in p)
        tuples.append(profs)
    tuples.sort(key=lambda t: tuple(q.key() for q in t))
    return tuple(tuples)


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    if parts == 0:
        return ((),) if total == 0 else ()
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)
