import itertools
import random

import pytest

from operadkit.basecat import FINSET, FINVECTQ
from operadkit.circle import (
    ProductGroupEntry,
    assoc_iso,
    circle,
    circle_full,
    circle_on_mors,
    interchange_iso,
    kan_extend_oracle,
    tensor_over_orbit,
    unit_isos,
    unit_seq,
    y_power,
    y_power_full,
    _random_equivariant_finset_entry,
)
from operadkit.profiles import (
    ColorSet,
    Orbit,
    Perm,
    Profile,
    aut_group,
    canonicalize,
    orbit_members,
    perm_sign,
)
from operadkit.symseq import (
    EquivariantEntry,
    SymSeq,
    colored_object,
    embed_colored_object,
    seq_compose,
    seq_equal,
    seq_identity,
    trivial_entry,
)

ONE = ColorSet(("x",))
AB = ColorSet(("a", "b"))


def one_orbit(s):
    return Orbit(ONE.profile(s))


def ab_orbit(s):
    return canonicalize(AB.profile(s))[0]


# ---------------------------------------------------------------- y_power


def test_y_power_single_input_is_entry():
    orbit = ab_orbit("ab")
    e = trivial_entry(FINSET, orbit, FINSET.obj(("u", "v")))
    y = SymSeq(AB, FINSET, {(orbit, "a"): e})
    full = y_power_full(y, AB.profile("a"), orbit)
    assert len(full.summands) == 1
    assert full.value == FINSET.coproduct([e.value]).obj


def test_y_power_empty_profile_unit():
    y = SymSeq(ONE, FINSET, {})
    empty = one_orbit("")
    full = y_power_full(y, ONE.profile(""), empty)
    assert len(full.summands) == 1
    # single summand carrying the monoidal unit
    assert len(full.value) == 1
    nonempty = one_orbit("x")
    full2 = y_power_full(y, ONE.profile(""), nonempty)
    assert FINSET.is_initial(full2.value)


def test_y_power_arity_zero_square():
    b = FINSET.obj(("p", "q"))
    a = colored_object(ONE, FINSET, {"x": b})
    y = embed_colored_object(a)
    empty = one_orbit("")
    full = y_power_full(y, ONE.profile("xx"), empty)
    # single decomposition (empty, empty), one shuffle
    assert len(full.summands) == 1
    assert len(full.value) == 4


def test_y_power_entry_action_valid():
    # the returned entry passes the exhaustive right-action validation
    orbit = one_orbit("xx")
    e = trivial_entry(FINSET, orbit, FINSET.obj(("s", "t")))
    y = SymSeq(ONE, FINSET, {(orbit, "x"): e, (one_orbit("x"), "x"): trivial_entry(FINSET, one_orbit("x"), FINSET.obj(("u",)))})
    entry = y_power(y, ONE.profile("xx"), one_orbit("xxxx"))
    assert entry.orbit == one_orbit("xxxx")


def test_y_power_cardinality_formula():
    # |Y^c([b])(b0)| = sum over splittings of (#shuffles) * prod |Y(c_j; b_j)|
    rng = random.Random(7)
    for _ in range(10):
        support = {}
        for arity in range(0, 3):
            if rng.random() < 0.7:
                orbit = one_orbit("x" * arity)
                size = rng.randint(1, 3)
                support[(orbit, "x")] = _random_equivariant_finset_entry(rng, orbit)
        y = SymSeq(ONE, FINSET, support)
        m = rng.randint(0, 2)
        n = rng.randint(0, 4)
        target = one_orbit("x" * n)
        full = y_power_full(y, ONE.profile("x" * m), target)
        expected = 0
        from operadkit.profiles import multiset_splittings, order_preserving_maps

        for blocks in multiset_splittings(target, m):
            sizes = []
            ok = True
            for j in range(m):
                e = y.entry("x", Orbit(blocks[j]))
                if e is None:
                    ok = False
                    break
                sizes.append(len(e.value))
            if not ok:
                continue
            count = len(order_preserving_maps(blocks, target.canonical))
            prod = 1
            for s in sizes:
                prod *= s
            expected += count * prod
        assert len(full.value) == expected


# ------------------------------------------------------- tensor over orbit


def test_tensor_over_orbit_trivial_group():
    orbit = ab_orbit("ab")
    v = FINSET.obj(("v1", "v2"))
    w = FINSET.obj(("w1",))
    res = tensor_over_orbit(
        FINSET, orbit, v, lambda g: FINSET.identity(v), w, lambda g: FINSET.identity(w)
    )
    assert len(res.obj) == 2
    assert FINSET.is_isomorphism(res.projection)


def test_tensor_over_orbit_square_by_swap():
    orbit = one_orbit("xx")
    v = FINSET.obj(("*",))
    b = FINSET.obj(("p", "q"))
    w = FINSET.tensor(b, b)
    group = aut_group(orbit)
    swap = Perm((1, 0))
    w_act = {
        Perm.identity(2): FINSET.identity(w),
        swap: FINSET.mor(w, w, {(l1, l2): (l2, l1) for (l1, l2) in w.labels}),
    }
    res = tensor_over_orbit(
        FINSET, orbit, v, lambda g: FINSET.identity(v), w, w_act.__getitem__
    )
    assert len(res.obj) == 3  # orbits of the swap on B x B


def test_tensor_over_orbit_regular_reps():
    orbit = one_orbit("xx")
    group = aut_group(orbit)
    swap = Perm((1, 0))
    v = FINVECTQ.free(2, "v")
    swap_mat = [[0, 1], [1, 0]]
    v_act = {Perm.identity(2): FINVECTQ.identity(v), swap: FINVECTQ.mor(v, v, swap_mat)}
    w = FINVECTQ.free(2, "w")
    w_act = {Perm.identity(2): FINVECTQ.identity(w), swap: FINVECTQ.mor(w, w, swap_mat)}
    res = tensor_over_orbit(
        FINVECTQ, orbit, v, v_act.__getitem__, w, w_act.__getitem__
    )
    assert res.obj.dim == 2


def test_tensor_over_orbit_brute_force_oracle():
    # skeleton coequalizer == colimit over the whole connected groupoid
    rng = random.Random(11)
    for entries in ["aab", "ab", "aa", "abb"]:
        orbit = ab_orbit(entries)
        xe = _random_equivariant_finset_entry(rng, orbit)
        we = _random_equivariant_finset_entry(rng, orbit)
        # left action of the stabilizer on we.value
        left = lambda g: we.action(g.inverse())
        res = tensor_over_orbit(FINSET, orbit, xe.value, xe.action, we.value, left)

        members = list(orbit_members(orbit))
        idx = {p: i for i, p in enumerate(members)}
        objs = [FINSET.tensor(xe.value, we.value) for _ in members]
        edges = []
        n = len(orbit)
        for p in members:
            for tau in [Perm(img) for img in itertools.permutations(range(n))]:
                q = tau.act(p)
                _, sp = canonicalize(p)
                _, sq = canonicalize(q)
                # covariant transports materialized from the skeleton actions
                tx = xe.action(sp * tau.inverse() * sq.inverse())
                tw = we.action((sq * tau * sp.inverse()).inverse())
                edges.append((idx[p], idx[q], FINSET.tensor_mor(tx, tw)))
        colim_obj, cocone = FINSET.diagram_colimit(objs, edges)
        assert len(colim_obj) == len(res.obj)
        # the canonical comparison: skeleton summand is the canonical member
        u = idx[orbit.canonical]
        comparison = FINSET.factor_through_epi(res.projection, cocone[u])
        assert FINSET.is_isomorphism(comparison)


# ----------------------------------------------------------------- circle


def _singleton_arity_entry(colors, cat, orbit, color, labels):
    return (orbit, color), trivial_entry(cat, orbit, cat.obj(tuple(labels)))


def test_circle_arity_one_composition():
    o1 = one_orbit("x")
    x = SymSeq(ONE, FINSET, dict([_singleton_arity_entry(ONE, FINSET, o1, "x", ("f", "g"))]))
    y = SymSeq(ONE, FINSET, dict([_singleton_arity_entry(ONE, FINSET, o1, "x", ("h",))]))
    z = circle(x, y)
    assert len(z.entry_obj("x", ONE.profile("x"))) == 2 * 1
    assert z.is_concentrated(1)


def test_circle_square_collapse():
    o2 = one_orbit("xx")
    x = SymSeq(ONE, FINSET, dict([_singleton_arity_entry(ONE, FINSET, o2, "x", ("*",))]))
    b = colored_object(ONE, FINSET, {"x": FINSET.obj(("p", "q"))})
    y = embed_colored_object(b)
    z = circle(x, y)
    assert len(z.entry_obj("x", ONE.profile(""))) == 3  # B^2 / swap
    assert z.is_concentrated(0)


def test_circle_preserves_arity_zero_concentration():
    rng = random.Random(3)
    o1, o2 = one_orbit("x"), one_orbit("xx")
    x = SymSeq(
        ONE,
        FINSET,
        {
            (o1, "x"): _random_equivariant_finset_entry(rng, o1),
            (o2, "x"): _random_equivariant_finset_entry(rng, o2),
        },
    )
    b = colored_object(ONE, FINSET, {"x": FINSET.obj(("p",))})
    y = embed_colored_object(b)
    assert circle(x, y).is_concentrated(0)


def test_unit_isos_small():
    rng = random.Random(5)
    support = {}
    for entries, color in [("a", "a"), ("ab", "b"), ("aa", "a")]:
        orbit = ab_orbit(entries)
        support[(orbit, color)] = _random_equivariant_finset_entry(rng, orbit)
    x = SymSeq(AB, FINSET, support)
    left, right = unit_isos(x)
    assert left.is_iso() and right.is_iso()


def test_unit_isos_vect():
    o2 = one_orbit("xx")
    swap = Perm((1, 0))
    v = FINVECTQ.free(2)
    action = {
        Perm.identity(2): FINVECTQ.identity(v),
        swap: FINVECTQ.mor(v, v, [[0, 1], [1, 0]]),
    }
    x = SymSeq(ONE, FINVECTQ, {(o2, "x"): EquivariantEntry(FINVECTQ, o2, v, action)})
    left, right = unit_isos(x)
    assert left.is_iso() and right.is_iso()


# ------------------------------------------------------------ kan oracle


def test_kan_oracle_one_block():
    orbit = ab_orbit("ab")
    rng = random.Random(1)
    base = _random_equivariant_finset_entry(rng, orbit)
    xe = ProductGroupEntry(FINSET, (orbit.canonical,), base.value, (base.action,))
    assert kan_extend_oracle(xe, orbit, seed=2, cases=5)


def test_kan_oracle_disjoint_blocks():
    blocks = (AB.profile("a"), AB.profile("b"))
    value = FINSET.obj(("m", "n"))
    acts = tuple({Perm.identity(1): FINSET.identity(value)}.__getitem__ for _ in blocks)
    xe = ProductGroupEntry(FINSET, blocks, value, acts)
    assert kan_extend_oracle(xe, ab_orbit("ab"), seed=3, cases=5)


def test_kan_oracle_two_singletons_same_color():
    blocks = (ONE.profile("x"), ONE.profile("x"))
    value = FINSET.obj(("m", "n"))
    acts = tuple({Perm.identity(1): FINSET.identity(value)}.__getitem__ for _ in blocks)
    xe = ProductGroupEntry(FINSET, blocks, value, acts)
    target = one_orbit("xx")
    from operadkit.circle import explicit_kan

    kan_value, sigmas, _, _ = explicit_kan(xe, target)
    assert len(sigmas) == 2
    assert len(kan_value) == 2 * len(value)
    assert kan_extend_oracle(xe, target, seed=4, cases=5)


def test_kan_oracle_nontrivial_block_group():
    rng = random.Random(9)
    b1 = one_orbit("xx")
    e1 = _random_equivariant_finset_entry(rng, b1)
    blocks = (b1.canonical, ONE.profile("x"))
    value = e1.value
    ident = {Perm.identity(1): FINSET.identity(value)}.__getitem__
    # the (x) block acts trivially on the shared value
    xe = ProductGroupEntry(FINSET, blocks, value, (e1.action, ident))
    assert kan_extend_oracle(xe, one_orbit("xxx"), seed=5, cases=5)


# ------------------------------------------------------------ interchange


def _rand_one_color_seq(rng, max_arity=2, cat=FINSET):
    support = {}
    for arity in range(0, max_arity + 1):
        if rng.random() < 0.8:
            orbit = one_orbit("x" * arity)
            support[(orbit, "x")] = _random_equivariant_finset_entry(
                rng, orbit, max_seeds=1, alphabet_max=2
            )
    return SymSeq(ONE, cat, support)


def _rand_two_color_seq(rng, max_arity=2):
    support = {}
    for entries in ["", "a", "b", "ab", "aa", "bb"]:
        if len(entries) > max_arity:
            continue
        for color in AB.names:
            if rng.random() < 0.5:
                orbit = ab_orbit(entries)
                support[(orbit, color)] = _random_equivariant_finset_entry(
                    rng, orbit, max_seeds=1, alphabet_max=2
                )
    return SymSeq(AB, FINSET, support)


def _max_arity(seq):
    arities = seq.arities()
    return max(arities) if arities else 0


def _composable_triple(draw, rng, cap=6):
    while True:
        x, y, z = draw(rng), draw(rng), draw(rng)
        if _max_arity(x) * _max_arity(y) * _max_arity(z) <= cap:
            return x, y, z


def test_interchange_unit_z():
    rng = random.Random(21)
    y = _rand_one_color_seq(rng)
    z = unit_seq(ONE, FINSET)
    mor, rhs_value, lhs_power = interchange_iso(y, z, one_orbit("xx"), one_orbit("xx"))
    assert FINSET.is_isomorphism(mor)


def test_interchange_single_c():
    rng = random.Random(22)
    y = _rand_one_color_seq(rng)
    z = _rand_one_color_seq(rng)
    mor, _, _ = interchange_iso(y, z, one_orbit("x"), one_orbit("xx"))
    assert FINSET.is_isomorphism(mor)


def test_interchange_random_cases():
    rng = random.Random(23)
    for trial in range(6):
        y = _rand_one_color_seq(rng)
        z = _rand_one_color_seq(rng)
        for c_len in range(0, 3):
            for a_len in range(0, 3):
                mor, _, _ = interchange_iso(
                    y, z, one_orbit("x" * c_len), one_orbit("x" * a_len)
                )
                assert FINSET.is_isomorphism(mor)


def test_interchange_two_colors():
    rng = random.Random(24)
    y = _rand_two_color_seq(rng)
    z = _rand_two_color_seq(rng)
    mor, _, _ = interchange_iso(y, z, ab_orbit("ab"), ab_orbit("ab"))
    assert FINSET.is_isomorphism(mor)


# -------------------------------------------------------------- associator


def test_assoc_arity_one_single_color():
    o1 = one_orbit("x")
    def mk(labels):
        return SymSeq(ONE, FINSET, dict([_singleton_arity_entry(ONE, FINSET, o1, "x", labels)]))

    x, y, z = mk(("f", "g")), mk(("h",)), mk(("k", "l"))
    mor = assoc_iso(x, y, z)
    assert mor.is_iso()
    entry = mor.part("x", o1)
    assert len(entry.dom) == 2 * 1 * 2


def test_assoc_with_arity_zero():
    o2 = one_orbit("xx")
    x = SymSeq(ONE, FINSET, dict([_singleton_arity_entry(ONE, FINSET, o2, "x", ("*",))]))
    y = SymSeq(
        ONE,
        FINSET,
        dict(
            [
                _singleton_arity_entry(ONE, FINSET, one_orbit("x"), "x", ("u", "v")),
                _singleton_arity_entry(ONE, FINSET, one_orbit(""), "x", ("c",)),
            ]
        ),
    )
    z = SymSeq(ONE, FINSET, dict([_singleton_arity_entry(ONE, FINSET, one_orbit(""), "x", ("p", "q"))]))
    mor = assoc_iso(x, y, z)
    assert mor.is_iso()


def test_assoc_random_one_color():
    rng = random.Random(31)
    for trial in range(5):
        x, y, z = _composable_triple(_rand_one_color_seq, rng)
        mor = assoc_iso(x, y, z)
        assert mor.is_iso()


def test_assoc_random_two_colors():
    rng = random.Random(32)
    for trial in range(3):
        x, y, z = _composable_triple(_rand_two_color_seq, rng)
        mor = assoc_iso(x, y, z)
        assert mor.is_iso()


def test_pentagon_two_routes_agree():
    rng = random.Random(41)
    for trial in range(2):
        w = _rand_one_color_seq(rng, max_arity=1)
        x = _rand_one_color_seq(rng, max_arity=1)
        y = _rand_one_color_seq(rng, max_arity=1)
        z = _rand_one_color_seq(rng, max_arity=1)
        wx = circle(w, x)
        yz = circle(y, z)
        xy = circle(x, y)
        # route 1: alpha_{WX,Y,Z} then alpha_{W,X,YZ}
        r1 = seq_compose(assoc_iso(w, x, yz), assoc_iso(wx, y, z))
        # route 2: (alpha_{W,X,Y} o id_Z), alpha_{W,XY,Z}, (id_W o alpha_{X,Y,Z})
        first = circle_on_mors(assoc_iso(w, x, y), seq_identity(z))
        middle = assoc_iso(w, xy, z)
        last = circle_on_mors(seq_identity(w), assoc_iso(x, y, z))
        r2 = seq_compose(last, seq_compose(middle, first))
        assert seq_equal(r1, r2)
