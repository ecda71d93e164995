"""Pluggable symmetric monoidal base categories with finite colimits.

Two concrete instances live here:

* ``FINSET`` — finite sets with cartesian product as tensor.  Labels are
  arbitrary hashable values; constructed objects use structured labels
  (pairs for tensors, ``(i, label)`` tags for coproducts, ``()`` for the unit).

* ``FINVECTQ`` — finite-dimensional rational vector spaces with exact
  arithmetic throughout.  Objects carry a named basis; morphisms are matrices
  of ``Fraction`` with shape (dim codomain) x (dim domain).

Both instances are *concrete*: an object exposes its elements (labels or basis
labels), which is what makes every universal-property factorization in this
package mechanically checkable.  The central primitive is
``factor_through_epi``: given an epimorphism ``e : B ->> Q`` and ``f : B -> Z``
that is constant on the fibers of ``e``, it returns the unique ``u : Q -> Z``
with ``u . e = f`` and raises if no such map exists.  Every canonical
comparison map in the engine is built this way, never by blind search.

Tensor products are not strictly associative; multi-fold tensors are always
built left-nested (``tensor_many``), and re-bracketings are produced once by
``restructure`` from explicit nesting trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .errors import InvalidInput

UNIT_LABEL = ()


@dataclass(frozen=True)
class FinSetObj:
    labels: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise InvalidInput("finite-set labels must be distinct")

    @property
    def cat(self) -> "BaseCategory":
        return FINSET

    def __len__(self) -> int:
        return len(self.labels)


class FinSetMor:
    __slots__ = ("dom", "cod", "mapping")

    def __init__(self, dom: FinSetObj, cod: FinSetObj, mapping: dict):
        missing = [l for l in dom.labels if l not in mapping]
        if missing:
            raise InvalidInput(f"mapping not total; missing {missing[:3]}")
        cod_set = set(cod.labels)
        for l in dom.labels:
            if mapping[l] not in cod_set:
                raise InvalidInput(f"mapping sends {l!r} outside the codomain")
        self.dom = dom
        self.cod = cod
        self.mapping = {l: mapping[l] for l in dom.labels}

    def __call__(self, label):
        return self.mapping[label]

    def __eq__(self, other):
        return (
            isinstance(other, FinSetMor)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.mapping == other.mapping
        )

    def __repr__(self):
        return f"FinSetMor({self.dom.labels} -> {self.cod.labels})"


@dataclass(frozen=True)
class VectObj:
    basis: tuple

    def __post_init__(self):
        if len(set(self.basis)) != len(self.basis):
            raise InvalidInput("basis labels must be distinct")

    @property
    def cat(self) -> "BaseCategory":
        return FINVECTQ

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)


class VectMor:
    __slots__ = ("dom", "cod", "mat")

    def __init__(self, dom: VectObj, cod: VectObj, mat):
        mat = tuple(tuple(Fraction(x) for x in row) for row in mat)
        if len(mat) != cod.dim or any(len(r) != dom.dim for r in mat):
            raise InvalidInput(
                f"matrix shape {linalg.shape(mat)} does not match "
                f"({cod.dim}, {dom.dim})"
            )
        self.dom = dom
        self.cod = cod
        self.mat = mat

    def __eq__(self, other):
        return (
            isinstance(other, VectMor)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.mat == other.mat
        )

    def __repr__(self):
        return f"VectMor({self.dom.dim} -> {self.cod.dim})"


@dataclass(frozen=True)
class CoproductData:
    obj: object
    injections: tuple


@dataclass(frozen=True)
class CoequalizerData:
    obj: object
    proj: object


@dataclass(frozen=True)
class PushoutData:
    obj: object
    inj_left: object
    inj_right: object


@dataclass(frozen=True)
class ProductData:
    obj: object
    projections: tuple


class BaseCategory:
    """Shared interface; see FINSET and FINVECTQ below."""

    name: str

    # -- constructors -------------------------------------------------
    def unit(self):
        raise NotImplementedError

    def initial(self):
        raise NotImplementedError

    def identity(self, x):
        raise NotImplementedError

    def compose(self, g, f):
        """g after f."""
        raise NotImplementedError

    def chain(self, mors: Sequence):
        """Compose a pipeline given in application order: chain([f, g]) = g . f."""
        out = None
        for m in mors:
            out = m if out is None else self.compose(m, out)
        if out is None:
            raise InvalidInput("cannot chain zero morphisms")
        return out

    # -- monoidal structure -------------------------------------------
    def tensor(self, x, y):
        raise NotImplementedError

    def tensor_mor(self, f, g):
        raise NotImplementedError

    def tensor_many(self, objs: Sequence):
        out = None
        for x in objs:
            out = x if out is None else self.tensor(out, x)
        return self.unit() if out is None else out

    def tensor_many_mor(self, mors: Sequence):
        if not mors:
            return self.identity(self.unit())
        out = None
        for m in mors:
            out = m if out is None else self.tensor_mor(out, m)
        return out

    def symmetry(self, x, y):
        return self.restructure([x, y], (0, 1), (1, 0))

    # -- colimits ------------------------------------------------------
    def coproduct(self, xs: Sequence) -> CoproductData:
        raise NotImplementedError

    def copair(self, cop: CoproductData, maps: Sequence, cod=None):
        raise NotImplementedError

    def coequalizer(self, f, g) -> CoequalizerData:
        raise NotImplementedError

    def pushout(self, f, g) -> PushoutData:
        if f.dom != g.dom:
            raise InvalidInput("pushout legs must share their domain")
        cop = self.coproduct([f.cod, g.cod])
        ce = self.coequalizer(
            self.compose(cop.injections[0], f), self.compose(cop.injections[1], g)
        )
        return PushoutData(
            ce.obj,
            self.compose(ce.proj, cop.injections[0]),
            self.compose(ce.proj, cop.injections[1]),
        )

    def product(self, xs: Sequence) -> ProductData:
        raise NotImplementedError

    def diagram_colimit(self, objects: Sequence, edges: Sequence):
        """Colimit of a finite diagram given as objects and ``(src, dst, mor)``
        edges; returns the apex and the cocone components."""
        cop = self.coproduct(list(objects))
        if not edges:
            return cop.obj, list(cop.injections)
        edge_cop = self.coproduct([objects[s] for (s, _, _) in edges])
        leg_src = self.copair(
            edge_cop, [cop.injections[s] for (s, _, _) in edges], cop.obj
        )
        leg_dst = self.copair(
            edge_cop,
            [self.compose(cop.injections[d], m) for (_, d, m) in edges],
            cop.obj,
        )
        ce = self.coequalizer(leg_src, leg_dst)
        return ce.obj, [self.compose(ce.proj, inj) for inj in cop.injections]

    # -- predicates and factorizations ----------------------------------
    def equal_mor(self, f, g) -> bool:
        return f == g

    def is_initial(self, x) -> bool:
        return len(x) == 0

    def initial_to(self, x):
        raise NotImplementedError

    def is_epi(self, f) -> bool:
        raise NotImplementedError

    def is_isomorphism(self, f) -> bool:
        raise NotImplementedError

    def inverse(self, f):
        raise NotImplementedError

    def find_iso(self, x, y, candidate=None):
        """Test a supplied canonical comparison map; never search blindly.

        With no candidate, only the identity-shaped comparison is tried (equal
        element structure), after a cheap size pre-check.
        """
        if candidate is not None:
            if candidate.dom != x or candidate.cod != y:
                return None
            return candidate if self.is_isomorphism(candidate) else None
        if len(x) != len(y):
            return None
        if x == y:
            return self.identity(x)
        return None

    # -- concreteness ----------------------------------------------------
    def elements(self, x) -> tuple:
        raise NotImplementedError

    def from_bijection(self, x, y, fn: Callable):
        raise NotImplementedError

    def factor_through_epi(self, e, f):
        raise NotImplementedError

    # -- structural isomorphisms ------------------------------------------
    def restructure(self, leaves: Sequence, src_tree, dst_tree):
        """The canonical iso between two tensor nestings of the same leaves.

        Trees are nested 2-tuples of leaf indices, with ``None`` for a unit
        factor; e.g. ``((0, 1), 2)`` is the left-nested triple tensor.  Every
        leaf index must occur exactly once in each tree.
        """
        src_obj = self._build_tree(leaves, src_tree)
        dst_obj = self._build_tree(leaves, dst_tree)
        if sorted(_tree_leaf_indices(src_tree)) != sorted(_tree_leaf_indices(dst_tree)):
            raise InvalidInput("restructure trees use different leaf sets")

        def relabel(label):
            assignment: dict[int, object] = {}
            _parse_tree_label(src_tree, label, assignment)
            return _build_tree_label(dst_tree, assignment)

        return self.from_bijection(src_obj, dst_obj, relabel)

    def _build_tree(self, leaves, tree):
        if tree is None:
            return self.unit()
        if isinstance(tree, int):
            return leaves[tree]
        l, r = tree
        return self.tensor(self._build_tree(leaves, l), self._build_tree(leaves, r))

    def left_nested_tree(self, k: int):
        """The tree tensor_many builds for k leaves 0..k-1."""
        if k == 0:
            return None
        tree = 0
        for i in range(1, k):
            tree = (tree, i)
        return tree


def _tree_leaf_indices(tree) -> list[int]:
    if tree is None:
        return []
    if isinstance(tree, int):
        return [tree]
    l, r = tree
    return _tree_leaf_indices(l) + _tree_leaf_indices(r)


def _parse_tree_label(tree, label, out: dict):
    if tree is None:
        if label != UNIT_LABEL:
            raise InvalidInput(f"expected unit label, found {label!r}")
        return
    if isinstance(tree, int):
        out[tree] = label
        return
    l, r = tree
    if not (isinstance(label, tuple) and len(label) == 2):
        raise InvalidInput(f"expected a pair label, found {label!r}")
    _parse_tree_label(l, label[0], out)
    _parse_tree_label(r, label[1], out)


def _build_tree_label(tree, assignment: dict):
    if tree is None:
        return UNIT_LABEL
    if isinstance(tree, int):
        return assignment[tree]
    l, r = tree
    return (_build_tree_label(l, assignment), _build_tree_label(r, assignment))


class FinSet(BaseCategory):
    name = "finset"

    def obj(self, labels) -> FinSetObj:
        return FinSetObj(tuple(labels))

    def mor(self, dom, cod, mapping) -> FinSetMor:
        return FinSetMor(dom, cod, mapping)

    def unit(self):
        return FinSetObj((UNIT_LABEL,))

    def initial(self):
        return FinSetObj(())

    def identity(self, x):
        return FinSetMor(x, x, {l: l for l in x.labels})

    def compose(self, g, f):
        if f.cod != g.dom:
            raise InvalidInput("composition mismatch")
        return FinSetMor(f.dom, g.cod, {l: g.mapping[f.mapping[l]] for l in f.dom.labels})

    def tensor(self, x, y):
        return FinSetObj(tuple((a, b) for a in x.labels for b in y.labels))

    def tensor_mor(self, f, g):
        dom = self.tensor(f.dom, g.dom)
        cod = self.tensor(f.cod, g.cod)
        return FinSetMor(
            dom, cod, {(a, b): (f.mapping[a], g.mapping[b]) for (a, b) in dom.labels}
        )

    def coproduct(self, xs):
        xs = list(xs)
        obj = FinSetObj(tuple((i, l) for i, x in enumerate(xs) for l in x.labels))
        injections = tuple(
            FinSetMor(x, obj, {l: (i, l) for l in x.labels}) for i, x in enumerate(xs)
        )
        return CoproductData(obj, injections)

    def copair(self, cop, maps, cod=None):
        maps = list(maps)
        if cod is None:
            if not maps:
                raise InvalidInput("copair with no maps needs an explicit codomain")
            cod = maps[0].cod
        mapping = {}
        for inj, m in zip(cop.injections, maps):
            if m.cod != cod:
                raise InvalidInput("copair maps disagree on the codomain")
            for l in inj.dom.labels:
                mapping[inj.mapping[l]] = m.mapping[l]
        return FinSetMor(cop.obj, cod, mapping)

    def coequalizer(self, f, g):
        if f.dom != g.dom or f.cod != g.cod:
            raise InvalidInput("coequalizer needs a parallel pair")
        order = {l: i for i, l in enumerate(f.cod.labels)}
        parent = {l: l for l in f.cod.labels}

        def find(l):
            while parent[l] != l:
                parent[l] = parent[parent[l]]
                l = parent[l]
            return l

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra == rb:
                return
            # the smaller label (in codomain order) becomes the representative
            if order[ra] < order[rb]:
                parent[rb] = ra
            else:
                parent[ra] = rb

        for l in f.dom.labels:
            union(f.mapping[l], g.mapping[l])
        reps = []
        for l in f.cod.labels:
            r = find(l)
            if r not in reps:
                reps.append(r)
        obj = FinSetObj(tuple(reps))
        proj = FinSetMor(f.cod, obj, {l: find(l) for l in f.cod.labels})
        return CoequalizerData(obj, proj)

    def product(self, xs):
        xs = list(xs)
        obj = FinSetObj(tuple(_tuples(xs)))
        projections = tuple(
            FinSetMor(obj, x, {t: t[i] for t in obj.labels}) for i, x in enumerate(xs)
        )
        return ProductData(obj, projections)

    def initial_to(self, x):
        return FinSetMor(self.initial(), x, {})

    def is_epi(self, f):
        return set(f.mapping.values()) == set(f.cod.labels)

    def is_isomorphism(self, f):
        return len(f.dom) == len(f.cod) and self.is_epi(f)

    def inverse(self, f):
        if not self.is_isomorphism(f):
            raise InvalidInput("not an isomorphism")
        return FinSetMor(f.cod, f.dom, {v: k for k, v in f.mapping.items()})

    def elements(self, x):
        return x.labels

    def from_bijection(self, x, y, fn):
        mapping = {l: fn(l) for l in x.labels}
        mor = FinSetMor(x, y, mapping)
        if not self.is_isomorphism(mor):
            raise InvalidInput("from_bijection received a non-bijective assignment")
        return mor

    def factor_through_epi(self, e, f):
        if e.dom != f.dom:
            raise InvalidInput("factorization legs must share their domain")
        if not self.is_epi(e):
            raise InvalidInput("factor_through_epi needs an epimorphism")
        mapping = {}
        for l in e.dom.labels:
            q = e.mapping[l]
            v = f.mapping[l]
            if q in mapping and mapping[q] != v:
                raise InvalidInput("map does not factor through the quotient")
            mapping[q] = v
        return FinSetMor(e.cod, f.cod, mapping)

    def all_morphisms(self, x, y):
        """Every function x -> y; exhaustive hom-set enumeration for oracles."""
        import itertools

        if len(x) == 0:
            return [FinSetMor(x, y, {})]
        out = []
        for values in itertools.product(y.labels, repeat=len(x)):
            out.append(FinSetMor(x, y, dict(zip(x.labels, values))))
        return out


def _tuples(xs):
    if not xs:
        return [()]
    rest = _tuples(xs[1:])
    return [(l,) + t for l in xs[0].labels for t in rest]


class FinVectQ(BaseCategory):
    name = "finvectq"

    def obj(self, basis) -> VectObj:
        return VectObj(tuple(basis))

    def free(self, dim: int, prefix: str = "e") -> VectObj:
        return VectObj(tuple(f"{prefix}{i}" for i in range(dim)))

    def mor(self, dom, cod, mat) -> VectMor:
        return VectMor(dom, cod, mat)

    def unit(self):
        return VectObj((UNIT_LABEL,))

    def initial(self):
        return VectObj(())

    def identity(self, x):
        return VectMor(x, x, linalg.identity(x.dim))

    def compose(self, g, f):
        if f.cod != g.dom:
            raise InvalidInput("composition mismatch")
        if f.dom.dim == 0 or g.cod.dim == 0 or f.cod.dim == 0:
            return VectMor(f.dom, g.cod, linalg.zeros(g.cod.dim, f.dom.dim))
        return VectMor(f.dom, g.cod, linalg.matmul(g.mat, f.mat))

    def zero_mor(self, dom, cod):
        return VectMor(dom, cod, linalg.zeros(cod.dim, dom.dim))

    def tensor(self, x, y):
        return VectObj(tuple((a, b) for a in x.basis for b in y.basis))

    def tensor_mor(self, f, g):
        dom = self.tensor(f.dom, g.dom)
        cod = self.tensor(f.cod, g.cod)
        mat = []
        for i in range(f.cod.dim):
            for k in range(g.cod.dim):
                row = []
                for j in range(f.dom.dim):
                    for l in range(g.dom.dim):
                        row.append(f.mat[i][j] * g.mat[k][l])
                mat.append(tuple(row))
        return VectMor(dom, cod, tuple(mat))

    def coproduct(self, xs):
        xs = list(xs)
        obj = VectObj(tuple((i, b) for i, x in enumerate(xs) for b in x.basis))
        injections = []
        offset = 0
        for x in xs:
            rows = [
                tuple(
                    Fraction(1) if r == offset + c else Fraction(0)
                    for c in range(x.dim)
                )
                for r in range(obj.dim)
            ]
            injections.append(VectMor(x, obj, tuple(rows)))
            offset += x.dim
        return CoproductData(obj, tuple(injections))

    def copair(self, cop, maps, cod=None):
        maps = list(maps)
        if cod is None:
            if not maps:
                raise InvalidInput("copair with no maps needs an explicit codomain")
            cod = maps[0].cod
        rows = []
        for r in range(cod.dim):
            row = []
            for m in maps:
                if m.cod != cod:
                    raise InvalidInput("copair maps disagree on the codomain")
                row.extend(m.mat[r] if m.mat else ())
            rows.append(tuple(row))
        return VectMor(cop.obj, cod, tuple(rows))

    def coequalizer(self, f, g):
        if f.dom != g.dom or f.cod != g.cod:
            raise InvalidInput("coequalizer needs a parallel pair")
        n = f.cod.dim
        m = f.dom.dim
        if n == 0:
            q = self.initial()
            return CoequalizerData(q, VectMor(f.cod, q, ()))
        diff = linalg.sub(f.mat, g.mat) if m else linalg.zeros(n, 0)
        # columns spanning im(f - g)
        img_cols = [tuple(diff[r][c] for r in range(n)) for c in linalg.column_space_basis(diff)]
        # extend to a basis of the codomain with standard vectors, greedily
        basis_cols = list(img_cols)
        for j in range(n):
            cand = tuple(Fraction(1) if r == j else Fraction(0) for r in range(n))
            test = basis_cols + [cand]
            mat = tuple(tuple(col[r] for col in test) for r in range(n))
            if linalg.rank(mat) == len(test):
                basis_cols.append(cand)
            if len(basis_cols) == n:
                break
        b = tuple(tuple(col[r] for col in basis_cols) for r in range(n))
        binv = linalg.inverse(b)
        r = len(img_cols)
        proj_mat = tuple(binv[i] for i in range(r, n))
        q = VectObj(tuple(("q", i) for i in range(n - r)))
        return CoequalizerData(q, VectMor(f.cod, q, proj_mat))

    def product(self, xs):
        cop = self.coproduct(xs)
        projections = []
        offset = 0
        for x in xs:
            rows = []
            for r in range(x.dim):
                rows.append(
                    tuple(
                        Fraction(1) if c == offset + r else Fraction(0)
                        for c in range(cop.obj.dim)
                    )
                )
            projections.append(VectMor(cop.obj, x, tuple(rows)))
            offset += x.dim
        return ProductData(cop.obj, tuple(projections))

    def initial_to(self, x):
        return VectMor(self.initial(), x, tuple(() for _ in range(x.dim)))

    def is_epi(self, f):
        return linalg.rank(f.mat) == f.cod.dim

    def is_isomorphism(self, f):
        return f.dom.dim == f.cod.dim and linalg.rank(f.mat) == f.dom.dim

    def inverse(self, f):
        if f.dom.dim != f.cod.dim:
            raise InvalidInput("not an isomorphism")
        if f.dom.dim == 0:
            return VectMor(f.cod, f.dom, ())
        return VectMor(f.cod, f.dom, linalg.inverse(f.mat))

    def is_mono(self, f):
        return linalg.rank(f.mat) == f.dom.dim

    def elements(self, x):
        return x.basis

    def from_bijection(self, x, y, fn):
        if x.dim != y.dim:
            raise InvalidInput("from_bijection needs equal dimensions")
        index = {b: i for i, b in enumerate(y.basis)}
        rows = [[Fraction(0)] * x.dim for _ in range(y.dim)]
        seen = set()
        for j, b in enumerate(x.basis):
            target = fn(b)
            if target not in index or target in seen:
                raise InvalidInput("from_bijection received a non-bijective assignment")
            seen.add(target)
            rows[index[target]][j] = Fraction(1)
        return VectMor(x, y, tuple(tuple(r) for r in rows))

    def factor_through_epi(self, e, f):
        if e.dom != f.dom:
            raise InvalidInput("factorization legs must share their domain")
        if not self.is_epi(e):
            raise InvalidInput("factor_through_epi needs an epimorphism")
        if e.cod.dim == 0:
            return VectMor(e.cod, f.cod, tuple(() for _ in range(f.cod.dim)))
        right_inv = linalg.solve_right_inverse(e.mat)
        if f.cod.dim == 0:
            u = VectMor(e.cod, f.cod, ())
        else:
            u = VectMor(e.cod, f.cod, linalg.matmul(f.mat, right_inv))
        if self.compose(u, e) != f:
            raise InvalidInput("map does not factor through the quotient")
        return u


FINSET = FinSet()
FINVECTQ = FinVectQ()
