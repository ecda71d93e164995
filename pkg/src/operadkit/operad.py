"""Colored operads in gamma form, their validation, and the built-in zoo.

An operad stores a finite table of composition morphisms

    gamma[(d, c, (b_1, ..., b_m))] :
        O(d; c) (x) O(c_1; b_1) (x) ... (x) O(c_m; b_m)  -->  O(d; b_1 ++ ... ++ b_m)

keyed by actual profiles (equivariance is validated, not assumed), together
with one unit ``I -> O(c; (c))`` per color.  Entry values at arbitrary
profiles are the materialized skeleton objects of the carrier sequence.

Unsupported composition targets are permitted only where the base category
has maps into its initial object (the zero map of rational vector spaces):
that is what makes honestly truncated operads like ``uAs<=N`` possible in
FinVectQ while the corresponding FinSet tables fail closure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .basecat import FINVECTQ, BaseCategory
from .circle import circle_full, unit_seq
from .errors import InvalidInput
from .profiles import (
    ColorSet,
    Orbit,
    Perm,
    Profile,
    block_move,
    block_sum,
    canonicalize,
    concat_profiles,
    orbit_members,
)
from .symseq import EquivariantEntry, SeqMor, SymSeq, trivial_entry


@dataclass
class Violation:
    kind: str
    where: tuple
    detail: str

    def __str__(self):
        return f"[{self.kind}] at {self.where}: {self.detail}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    def ok(self) -> bool:
        return not self.violations

    def add(self, kind, where, detail):
        self.violations.append(Violation(kind, tuple(where), detail))

    def __str__(self):
        if self.ok():
            return "valid"
        return "\n".join(str(v) for v in self.violations)


class Operad:
    def __init__(self, carrier: SymSeq, units: Mapping, gamma: Mapping, check: bool = True):
        self.carrier = carrier
        self.colors = carrier.colors
        self.cat = carrier.cat
        self.units = dict(units)
        self.gamma = dict(gamma)
        if check:
            report = validate(self)
            if not report.ok():
                raise InvalidInput(f"operad fails validation:\n{report}")

    def entry_obj(self, d: str, p: Profile):
        return self.carrier.entry_obj(d, p)

    def transport(self, d: str, tau: Perm, p: Profile):
        return self.carrier.structure_map(d, tau, p)

    def gamma_domain(self, d: str, c: Profile, bs: Sequence[Profile]):
        cat = self.cat
        head = self.entry_obj(d, c)
        tail = cat.tensor_many([self.entry_obj(c.entries[i], bs[i]) for i in range(len(bs))])
        return cat.tensor(head, tail)

    def gamma_mor(self, d: str, c: Profile, bs: Sequence[Profile]):
        """The composition morphism at a shape; implied maps are the unique
        map from an initial domain, or the zero map onto an unsupported
        target where the base category has one."""
        key = (d, c, tuple(bs))
        if key in self.gamma:
            return self.gamma[key]
        cat = self.cat
        dom = self.gamma_domain(d, c, bs)
        target = self.entry_obj(d, concat_profiles(self.colors, bs))
        if cat.is_initial(dom):
            # tensors with an initial factor are the canonical initial object
            return cat.initial_to(target)
        if cat.is_initial(target) and cat is FINVECTQ:
            return cat.zero_mor(dom, target)
        raise InvalidInput(f"no composition recorded at {key}")


def composable_shapes(o: Operad):
    """All (d, c, bs) with supported head entry and supported block entries,
    where c and the b_i range over whole orbits."""
    by_color: dict[str, list[Orbit]] = {}
    for (orbit, color) in o.carrier.support:
        by_color.setdefault(color, []).append(orbit)
    shapes = []
    for (c_orbit, d) in sorted(
        o.carrier.support, key=lambda t: (len(t[0]), t[0].canonical.key(), t[1])
    ):
        if len(c_orbit) == 0:
            continue  # operadic composition needs at least one input slot
        for c in orbit_members(c_orbit):
            pools = []
            ok = True
            for color in c.entries:
                orbits = sorted(
                    by_color.get(color, []), key=lambda t: (len(t), t.canonical.key())
                )
                if not orbits:
                    ok = False
                    break
                pool = []
                for orb in orbits:
                    pool.extend(orbit_members(orb))
                pools.append(pool)
            if not ok:
                continue
            for bs in itertools.product(*pools):
                shapes.append((d, c, tuple(bs)))
    return shapes


def validate(o: Operad) -> ValidationReport:
    """Exhaustively check unit, equivariance, closure, and associativity on
    every composable tuple within the support."""
    report = ValidationReport()
    cat = o.cat
    colors = o.colors

    # units: endpoints and the two unit laws
    for c in colors.names:
        prof = Profile(colors, (c,))
        target = o.entry_obj(c, prof)
        u = o.units.get(c)
        if u is None or u.dom != cat.unit() or u.cod != target:
            report.add("unit", (c,), "missing or ill-typed unit")

    shapes = composable_shapes(o)
    table = {}
    for d, c, bs in shapes:
        try:
            table[(d, c, bs)] = o.gamma_mor(d, c, bs)
        except InvalidInput as exc:
            report.add("closure", (d, c.entries, tuple(b.entries for b in bs)), str(exc))
    if not report.ok():
        return report

    for (d, c, bs), g in table.items():
        dom = o.gamma_domain(d, c, bs)
        target = o.entry_obj(d, concat_profiles(colors, bs))
        if g.dom != dom or g.cod != target:
            report.add(
                "shape",
                (d, c.entries, tuple(b.entries for b in bs)),
                "composition morphism has wrong endpoints",
            )

    if not report.ok():
        return report

    _check_units(o, report)
    _check_equivariance(o, table, report)
    _check_associativity(o, table, report)
    return report


def _unit_leaf_tree_local(n: int):
    tree = None
    for _ in range(n - 1):
        tree = (tree, None)
    return tree


def _check_units(o: Operad, report: ValidationReport):
    cat = o.cat
    colors = o.colors
    for (c_orbit, d) in o.carrier.support:
        if len(c_orbit) == 0:
            continue
        for c in orbit_members(c_orbit):
            # gamma(f; units) = f
            bs = tuple(Profile(colors, (col,)) for col in c.entries)
            try:
                g = o.gamma_mor(d, c, bs)
            except InvalidInput:
                report.add("unity", (d, c.entries), "missing composition with units")
                continue
            head = o.entry_obj(d, c)
            pad = cat.restructure([head], 0, (0, _unit_leaf_tree_local(len(c))))
            expand = cat.tensor_mor(
                cat.identity(head), cat.tensor_many_mor([o.units[col] for col in c.entries])
            )
            if cat.chain([pad, expand, g]) != cat.identity(head):
                report.add("unity", (d, c.entries), "gamma(f; units) != f")
    for (b_orbit, d) in o.carrier.support:
        for b in orbit_members(b_orbit):
            c = Profile(o.colors, (d,))
            try:
                g = o.gamma_mor(d, c, (b,))
            except InvalidInput:
                report.add("unity", (d, b.entries), "missing composition with the unit head")
                continue
            val = o.entry_obj(d, b)
            # I (x) val -> O(d;(d)) (x) val -> val must be the unitor
            lift = cat.tensor_mor(o.units[d], cat.identity(val))
            unitor = cat.restructure([val], (None, 0), 0)
            if cat.compose(g, lift) != unitor:
                report.add("unity", (d, b.entries), "gamma(1; f) != f")


def _check_equivariance(o: Operad, table, report: ValidationReport):
    cat = o.cat
    colors = o.colors
    for (d, c, bs), g in table.items():
        m = len(c)
        lens = [len(b) for b in bs]
        concat = concat_profiles(colors, bs)
        target = o.entry_obj(d, concat)
        # head transpositions
        for i in range(m - 1):
            tau = _adjacent(m, i)
            new_c = tau.act(c)
            new_bs = tau.act_tuple(bs)
            try:
                g2 = o.gamma_mor(d, new_c, new_bs)
            except InvalidInput:
                report.add("equivariance", (d, c.entries, i), "missing permuted shape")
                continue
            tau_star = block_move(tau, lens)
            lhs = cat.compose(o.transport(d, tau_star, concat), g)
            leaves = [o.entry_obj(c.entries[j], bs[j]) for j in range(m)]
            src = cat.left_nested_tree(m)
            dst = _permuted_left_tree_local(tau, m)
            move = cat.restructure(leaves, src, dst)
            rhs = cat.compose(g2, cat.tensor_mor(o.transport(d, tau, c), move))
            if lhs != rhs:
                report.add(
                    "equivariance",
                    (d, c.entries, tuple(b.entries for b in bs), "head", i),
                    "head permutation square does not commute",
                )
        # block transpositions
        for i in range(m):
            for k in range(lens[i] - 1):
                ups = _adjacent(lens[i], k)
                new_bs = list(bs)
                new_bs[i] = ups.act(bs[i])
                try:
                    g2 = o.gamma_mor(d, c, tuple(new_bs))
                except InvalidInput:
                    report.add("equivariance", (d, c.entries, (i, k)), "missing permuted shape")
                    continue
                emb = block_sum(
                    [ups if j == i else Perm.identity(lens[j]) for j in range(m)]
                )
                lhs = cat.compose(o.transport(d, emb, concat), g)
                moves = [
                    o.transport(c.entries[j], ups, bs[j])
                    if j == i
                    else cat.identity(o.entry_obj(c.entries[j], bs[j]))
                    for j in range(m)
                ]
                rhs = cat.compose(
                    g2,
                    cat.tensor_mor(
                        cat.identity(o.entry_obj(d, c)), cat.tensor_many_mor(moves)
                    ),
                )
                if lhs != rhs:
                    report.add(
                        "equivariance",
                        (d, c.entries, tuple(b.entries for b in bs), "block", (i, k)),
                        "block permutation square does not commute",
                    )


def _adjacent(n: int, i: int) -> Perm:
    img = list(range(n))
    img[i], img[i + 1] = img[i + 1], img[i]
    return Perm(tuple(img))


def _permuted_left_tree_local(h: Perm, k: int):
    if k == 0:
        return None
    hinv = h.inverse()
    tree = hinv(0)
    for s in range(1, k):
        tree = (tree, hinv(s))
    return tree


def _check_associativity(o: Operad, table, report: ValidationReport):
    cat = o.cat
    colors = o.colors
    keys_by_head: dict[tuple, list] = {}
    for (d, c, bs) in table:
        keys_by_head.setdefault((d, c.entries), []).append((c, bs))
    for (d, c, bs), g_outer in table.items():
        m = len(c)
        inner_options = []
        feasible = True
        for i in range(m):
            if len(bs[i]) == 0:
                inner_options.append([None])
                continue
            opts = [
                (c2, bs2)
                for (d2, c2, bs2) in table
                if d2 == c.entries[i] and c2 == bs[i]
            ]
            if not opts:
                feasible = False
                break
            inner_options.append(opts)
        if not feasible:
            continue
        for combo in itertools.product(*inner_options):
            _assoc_square(o, report, d, c, bs, g_outer, combo, table)


def _assoc_square(o: Operad, report, d, c, bs, g_outer, combo, table):
    cat = o.cat
    colors = o.colors
    m = len(c)
    # leaves: head, the g_i entries, then the h entries in (i, j) order
    head = o.entry_obj(d, c)
    g_objs = [o.entry_obj(c.entries[i], bs[i]) for i in range(m)]
    h_profiles = []  # flat (i, j) order
    h_objs = []
    inner_as = []
    for i, opt in enumerate(combo):
        if opt is None:
            inner_as.append(())
            continue
        _, as_i = opt
        inner_as.append(as_i)
        for j, a in enumerate(as_i):
            h_profiles.append(a)
            h_objs.append(o.entry_obj(bs[i].entries[j], a))
    flat_as = tuple(h_profiles)
    concat_bs = concat_profiles(colors, bs)
    flat_target_profile = concat_profiles(colors, [p for p in flat_as]) if flat_as else Profile(colors, ())
    try:
        g_flat = o.gamma_mor(d, concat_bs, flat_as)
    except InvalidInput:
        report.add(
            "associativity",
            (d, c.entries),
            "missing flattened composition shape",
        )
        return
    leaves = [head] + g_objs + h_objs
    n_h = len(h_objs)
    src = (
        (0, _shift(cat.left_nested_tree(m), 1)),
        _shift(cat.left_nested_tree(n_h), 1 + m),
    )
    src_obj = cat._build_tree(leaves, src)

    lhs = cat.compose(g_flat, cat.tensor_mor(g_outer, cat.identity(cat.tensor_many(h_objs))))

    # regroup to head (x) ((g_1, h_1s), (g_2, h_2s), ...)
    dst = 0
    groups = None
    h_index = 0
    for i in range(m):
        k_i = len(inner_as[i])
        idx = list(range(1 + m + h_index, 1 + m + h_index + k_i))
        h_index += k_i
        grp = (1 + i, _left_nested_indices(idx))
        groups = grp if groups is None else (groups, grp)
    dst = (0, groups)
    regroup = cat.restructure(leaves, src, dst)
    inner_maps = []
    for i in range(m):
        if combo[i] is None:
            val = g_objs[i]
            inner_maps.append(cat.restructure([val], (0, None), 0))
        else:
            inner_maps.append(o.gamma_mor(c.entries[i], bs[i], combo[i][1]))
    mid = cat.tensor_mor(cat.identity(head), cat.tensor_many_mor(inner_maps))
    try:
        g_top = o.gamma_mor(
            d, c, tuple(concat_profiles(colors, list(inner_as[i])) for i in range(m))
        )
    except InvalidInput:
        report.add("associativity", (d, c.entries), "missing regrouped composition shape")
        return
    rhs = cat.chain([regroup, mid, g_top])
    if lhs != rhs:
        report.add(
            "associativity",
            (d, c.entries, tuple(b.entries for b in bs), tuple(
                tuple(a.entries for a in inner_as[i]) for i in range(m)
            )),
            "three-level composition square does not commute",
        )


def _shift(tree, offset):
    if tree is None:
        return None
    if isinstance(tree, int):
        return tree + offset
    l, r = tree
    return (_shift(l, offset), _shift(r, offset))


def _left_nested_indices(indices):
    if not indices:
        return None
    tree = indices[0]
    for i in indices[1:]:
        tree = (tree, i)
    return tree
