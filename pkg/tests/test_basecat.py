import random
from fractions import Fraction

import pytest

from operadkit.basecat import FINSET, FINVECTQ, FinSetMor, VectMor
from operadkit.errors import InvalidInput


def test_finset_tensor_cardinality():
    x = FINSET.obj("pq")
    y = FINSET.obj("rst")
    assert len(FINSET.tensor(x, y)) == 6


def test_vect_tensor_dimension():
    x = FINVECTQ.free(2)
    y = FINVECTQ.free(3)
    assert FINVECTQ.tensor(x, y).dim == 6


def test_unit_laws_via_restructure():
    for cat, x in [(FINSET, FINSET.obj("pq")), (FINVECTQ, FINVECTQ.free(2))]:
        iso = cat.restructure([x], (None, 0), 0)
        assert cat.is_isomorphism(iso)
        iso2 = cat.restructure([x], (0, None), 0)
        assert cat.is_isomorphism(iso2)


def test_symmetry_involution():
    x = FINSET.obj("pq")
    y = FINSET.obj("uv")
    s = FINSET.symmetry(x, y)
    t = FINSET.symmetry(y, x)
    assert FINSET.compose(t, s) == FINSET.identity(FINSET.tensor(x, y))
    v = FINVECTQ.free(2)
    w = FINVECTQ.free(3)
    sv = FINVECTQ.symmetry(v, w)
    tv = FINVECTQ.symmetry(w, v)
    assert FINVECTQ.compose(tv, sv) == FINVECTQ.identity(FINVECTQ.tensor(v, w))


def test_symmetry_naturality_elementwise():
    x = FINSET.obj("pq")
    y = FINSET.obj("uv")
    f = FINSET.mor(x, x, {"p": "q", "q": "q"})
    g = FINSET.mor(y, y, {"u": "v", "v": "u"})
    s_xy = FINSET.symmetry(x, y)
    s2 = FINSET.symmetry(x, y)
    lhs = FINSET.compose(FINSET.tensor_mor(g, f), s_xy)
    rhs = FINSET.compose(s2, FINSET.tensor_mor(f, g))
    assert lhs == rhs


def test_coproduct_sizes_and_initial():
    assert FINSET.coproduct([]).obj == FINSET.initial()
    x = FINSET.obj("pq")
    y = FINSET.obj("rst")
    assert len(FINSET.coproduct([x, y]).obj) == 5
    assert FINVECTQ.coproduct([FINVECTQ.free(2), FINVECTQ.free(3)]).obj.dim == 5
    assert FINVECTQ.coproduct([]).obj.dim == 0


def test_finset_coequalizer_collapse():
    dom = FINSET.obj((1, 2))
    cod = FINSET.obj((1, 2, 3))
    f = FINSET.mor(dom, cod, {1: 1, 2: 2})
    g = FINSET.mor(dom, cod, {1: 2, 2: 3})
    ce = FINSET.coequalizer(f, g)
    assert len(ce.obj) == 1
    assert FINSET.compose(ce.proj, f) == FINSET.compose(ce.proj, g)


def test_finset_coequalizer_equal_pair_iso():
    dom = FINSET.obj("pq")
    cod = FINSET.obj("xyz")
    f = FINSET.mor(dom, cod, {"p": "x", "q": "y"})
    ce = FINSET.coequalizer(f, f)
    assert FINSET.is_isomorphism(ce.proj)


def test_vect_coequalizer_rank():
    # f - g of rank 1 from dim 2 to dim 3 -> coequalizer dim 2
    dom = FINVECTQ.free(2)
    cod = FINVECTQ.free(3)
    f = FINVECTQ.mor(dom, cod, [[1, 0], [0, 0], [0, 0]])
    g = FINVECTQ.mor(dom, cod, [[0, 0], [0, 0], [0, 0]])
    ce = FINVECTQ.coequalizer(f, g)
    assert ce.obj.dim == 2
    zero = FINVECTQ.zero_mor(dom, ce.obj)
    assert FINVECTQ.compose(ce.proj, f) == zero


def test_pushout_identity_leg():
    x = FINSET.obj("pq")
    a = FINSET.obj("pqr")
    f = FINSET.mor(x, a, {"p": "p", "q": "q"})
    po = FINSET.pushout(f, FINSET.identity(x))
    assert len(po.obj) == len(a)
    assert FINSET.is_isomorphism(po.inj_left)


def test_pushout_initial_domain():
    a = FINSET.obj("pq")
    b = FINSET.obj("rs")
    x = FINSET.initial()
    po = FINSET.pushout(FINSET.initial_to(a), FINSET.initial_to(b))
    assert len(po.obj) == 4


def test_vect_pushout_along_injection():
    # dim = dimA + dimB - dimX for an injection
    x = FINVECTQ.free(1)
    a = FINVECTQ.free(2)
    b = FINVECTQ.free(3)
    f = FINVECTQ.mor(x, a, [[1], [0]])
    g = FINVECTQ.mor(x, b, [[1], [1], [0]])
    po = FINVECTQ.pushout(f, g)
    assert po.obj.dim == 2 + 3 - 1


def test_is_isomorphism_basics():
    x = FINSET.obj("pq")
    assert FINSET.is_isomorphism(FINSET.identity(x))
    collapse = FINSET.mor(x, x, {"p": "p", "q": "p"})
    assert not FINSET.is_isomorphism(collapse)
    m = FINVECTQ.mor(FINVECTQ.free(2), FINVECTQ.free(2), [[1, 1], [0, 1]])
    assert FINVECTQ.is_isomorphism(m)
    assert FINVECTQ.compose(FINVECTQ.inverse(m), m) == FINVECTQ.identity(FINVECTQ.free(2))


def test_factor_through_epi_finset():
    b = FINSET.obj("pqr")
    q = FINSET.obj("xy")
    e = FINSET.mor(b, q, {"p": "x", "q": "x", "r": "y"})
    f = FINSET.mor(b, FINSET.obj("uv"), {"p": "u", "q": "u", "r": "v"})
    u = FINSET.factor_through_epi(e, f)
    assert FINSET.compose(u, e) == f
    bad = FINSET.mor(b, FINSET.obj("uv"), {"p": "u", "q": "v", "r": "v"})
    with pytest.raises(InvalidInput):
        FINSET.factor_through_epi(e, bad)


def test_factor_through_epi_vect():
    b = FINVECTQ.free(3)
    q = FINVECTQ.free(2)
    e = FINVECTQ.mor(b, q, [[1, 1, 0], [0, 0, 1]])
    f = FINVECTQ.mor(b, FINVECTQ.free(1), [[2, 2, 3]])
    u = FINVECTQ.factor_through_epi(e, f)
    assert FINVECTQ.compose(u, e) == f
    bad = FINVECTQ.mor(b, FINVECTQ.free(1), [[1, 2, 3]])
    with pytest.raises(InvalidInput):
        FINVECTQ.factor_through_epi(e, bad)


def test_restructure_reassociation():
    for cat, xs in [
        (FINSET, [FINSET.obj("pq"), FINSET.obj("uv"), FINSET.obj("12")]),
        (FINVECTQ, [FINVECTQ.free(2), FINVECTQ.free(1), FINVECTQ.free(3)]),
    ]:
        src = ((0, 1), 2)
        dst = (0, (1, 2))
        iso = cat.restructure(xs, src, dst)
        assert cat.is_isomorphism(iso)
        back = cat.restructure(xs, dst, src)
        assert cat.compose(back, iso) == cat.identity(cat._build_tree(xs, src))


def test_restructure_matches_binary_symmetry_composites():
    x, y, z = FINSET.obj("pq"), FINSET.obj("uv"), FINSET.obj("12")
    # (x@y)@z -> (y@x)@z via symmetry on the left factor
    direct = FINSET.restructure([x, y, z], ((0, 1), 2), ((1, 0), 2))
    composed = FINSET.tensor_mor(FINSET.symmetry(x, y), FINSET.identity(z))
    assert direct == composed


def _random_finset_pair(rng):
    dom = FINSET.obj(tuple(f"d{i}" for i in range(rng.randint(1, 4))))
    cod = FINSET.obj(tuple(f"c{i}" for i in range(rng.randint(1, 4))))
    f = FINSET.mor(dom, cod, {l: f"c{rng.randrange(len(cod))}" for l in dom.labels})
    g = FINSET.mor(dom, cod, {l: f"c{rng.randrange(len(cod))}" for l in dom.labels})
    return f, g


def test_coequalizer_universal_property_finset_seeded():
    rng = random.Random(20240911)
    for _ in range(100):
        f, g = _random_finset_pair(rng)
        ce = FINSET.coequalizer(f, g)
        z = FINSET.obj(tuple(f"z{i}" for i in range(rng.randint(1, 3))))
        # a random cocone: any map out of the quotient gives one
        v = FINSET.mor(
            ce.obj, z, {l: f"z{rng.randrange(len(z))}" for l in ce.obj.labels}
        )
        u = FINSET.compose(v, ce.proj)
        assert FINSET.compose(u, f) == FINSET.compose(u, g)
        w = FINSET.factor_through_epi(ce.proj, u)
        assert w == v  # mediating morphism is unique
        assert FINSET.compose(w, ce.proj) == u


def _random_vect_pair(rng):
    dom = FINVECTQ.free(rng.randint(1, 3), "d")
    cod = FINVECTQ.free(rng.randint(1, 3), "c")
    rand = lambda: Fraction(rng.randint(-2, 2))
    f = FINVECTQ.mor(dom, cod, [[rand() for _ in range(dom.dim)] for _ in range(cod.dim)])
    g = FINVECTQ.mor(dom, cod, [[rand() for _ in range(dom.dim)] for _ in range(cod.dim)])
    return f, g


def test_coequalizer_universal_property_vect_seeded():
    rng = random.Random(37)
    for _ in range(100):
        f, g = _random_vect_pair(rng)
        ce = FINVECTQ.coequalizer(f, g)
        z = FINVECTQ.free(rng.randint(1, 3), "z")
        v = FINVECTQ.mor(
            ce.obj,
            z,
            [[Fraction(rng.randint(-2, 2)) for _ in range(ce.obj.dim)] for _ in range(z.dim)],
        )
        u = FINVECTQ.compose(v, ce.proj)
        assert FINVECTQ.compose(u, f) == FINVECTQ.compose(u, g)
        w = FINVECTQ.factor_through_epi(ce.proj, u)
        assert w == v


def test_pushout_universal_property_seeded():
    rng = random.Random(99)
    for _ in range(50):
        x = FINSET.obj(tuple(f"x{i}" for i in range(rng.randint(1, 3))))
        a = FINSET.obj(tuple(f"a{i}" for i in range(rng.randint(1, 3))))
        b = FINSET.obj(tuple(f"b{i}" for i in range(rng.randint(1, 3))))
        f = FINSET.mor(x, a, {l: f"a{rng.randrange(len(a))}" for l in x.labels})
        g = FINSET.mor(x, b, {l: f"b{rng.randrange(len(b))}" for l in x.labels})
        po = FINSET.pushout(f, g)
        assert FINSET.compose(po.inj_left, f) == FINSET.compose(po.inj_right, g)
        z = FINSET.obj(("z0", "z1"))
        v = FINSET.mor(po.obj, z, {l: "z0" for l in po.obj.labels})
        pa = FINSET.compose(v, po.inj_left)
        pb = FINSET.compose(v, po.inj_right)
        # re-derive the mediating map from the cocone (pa, pb)
        cop = FINSET.coproduct([a, b])
        both = FINSET.copair(cop, [pa, pb])
        epi = FINSET.copair(cop, [po.inj_left, po.inj_right])
        w = FINSET.factor_through_epi(epi, both)
        assert w == v


def test_vect_exactness_no_floats():
    m = FINVECTQ.mor(FINVECTQ.free(2), FINVECTQ.free(2), [[Fraction(1, 3), 1], [0, 2]])
    out = FINVECTQ.compose(m, m)
    for row in out.mat:
        for x in row:
            assert isinstance(x, Fraction)
