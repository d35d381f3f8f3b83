"""Concrete *-categories and *-functors.

A concrete *-category has finitely many named objects, each realized on
a finite-dimensional Q(i)-space, and for each ordered pair of objects a
linear span of matrices closed under composition and conjugate-transpose.
Hom bases are kept in canonical reduced-echelon form (of the flattened
entry vectors), so equality of categories is structural equality.

Each object carries a "unit": the matrix acting as its identity.  For
ordinary categories the unit is the identity matrix.  Allowing a
projection as the unit makes it possible to materialize full
subcategories of an idempotent completion exactly — the object then
lives on the range of its unit, without ever needing the orthonormal
change of basis that Q(i) cannot express.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalar import (
    ExactMatrix,
    MatrixSpan,
    ShapeError,
    span_membership,
)


@dataclass(frozen=True)
class ObjectDecl:
    """One object: a name, its ambient dimension, and its unit matrix."""

    name: str
    dim: int
    unit: ExactMatrix

    def __post_init__(self):
        if self.unit.rows != self.dim or self.unit.cols != self.dim:
            raise ShapeError(f"unit of {self.name} has the wrong shape")


@dataclass(frozen=True)
class ConcreteStarCategory:
    """Finitely many objects with matrix hom spans; immutable."""

    objects: tuple  # tuple[ObjectDecl, ...]
    homs: tuple  # sorted tuple of ((src, tgt), tuple[ExactMatrix, ...])

    def __post_init__(self):
        names = [o.name for o in self.objects]
        if len(set(names)) != len(names):
            raise ValueError("duplicate object names")

    # --- lookups ------------------------------------------------------

    def object_names(self):
        return tuple(o.name for o in self.objects)

    def object(self, name: str) -> ObjectDecl:
        for o in self.objects:
            if o.name == name:
                return o
        raise KeyError(f"no object named {name!r}")

    def has_object(self, name: str) -> bool:
        return any(o.name == name for o in self.objects)

    def dim(self, name: str) -> int:
        return self.object(name).dim

    def unit(self, name: str) -> ExactMatrix:
        return self.object(name).unit

    def hom_basis(self, src: str, tgt: str):
        """Canonical basis of Hom(src, tgt); empty tuple for the zero
        space."""
        for (s, t), mats in self.homs:
            if s == src and t == tgt:
                return mats
        if not (self.has_object(src) and self.has_object(tgt)):
            raise KeyError(f"unknown object pair ({src!r}, {tgt!r})")
        return ()

    def hom_span(self, src: str, tgt: str) -> MatrixSpan:
        return MatrixSpan(
            self.dim(tgt), self.dim(src), list(self.hom_basis(src, tgt))
        )

    def hom_dim(self, src: str, tgt: str) -> int:
        return len(self.hom_basis(src, tgt))

    def pairs(self):
        for a in self.objects:
            for b in self.objects:
                yield a.name, b.name

    def __repr__(self):
        dims = ", ".join(f"{o.name}:{o.dim}" for o in self.objects)
        return f"ConcreteStarCategory({dims})"


def star_category(objects, homs, canonicalize=True) -> ConcreteStarCategory:
    """Build a category from declarations.

    objects: iterable of (name, dim) or (name, dim, unit-matrix).
    homs: mapping (src, tgt) -> iterable of matrices.

    With canonicalize=True (the default) each hom span is replaced by
    its reduced-echelon basis and zero spans are dropped; this is the
    invariant every operation in the library expects.  Pass False only
    to inspect raw input with validate_category.
    """
    decls = []
    for spec in objects:
        if len(spec) == 2:
            name, dim = spec
            unit = ExactMatrix.identity(dim)
        else:
            name, dim, unit = spec
        decls.append(ObjectDecl(name, dim, unit))
    by_name = {d.name: d for d in decls}

    processed = {}
    for (src, tgt), mats in homs.items():
        if src not in by_name or tgt not in by_name:
            raise KeyError(f"hom pair ({src!r}, {tgt!r}) names unknown objects")
        mats = tuple(mats)
        for m in mats:
            if m.rows != by_name[tgt].dim or m.cols != by_name[src].dim:
                raise ShapeError(
                    f"hom({src}, {tgt}) contains a matrix of the wrong shape"
                )
        if canonicalize:
            span = MatrixSpan(by_name[tgt].dim, by_name[src].dim, list(mats))
            mats = span.matrices
            if not mats:
                continue
        processed[(src, tgt)] = mats

    ordered = tuple(sorted(processed.items(), key=lambda kv: kv[0]))
    return ConcreteStarCategory(tuple(decls), ordered)


# --- validation -------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # "unit-membership" | "unit-action" | "composition" |
    #            "adjoint" | "independence"
    pair: tuple
    detail: str

    def __str__(self):
        return f"[{self.kind}] hom{self.pair}: {self.detail}"


def validate_category(cat: ConcreteStarCategory):
    """Every violated closure/identity/independence invariant.

    Returns a list of Violation records; the category is valid iff the
    list is empty.
    """
    report = []
    spans = {}
    for x, y in cat.pairs():
        basis = cat.hom_basis(x, y)
        spans[(x, y)] = MatrixSpan(cat.dim(y), cat.dim(x), list(basis))
        if len(basis) != spans[(x, y)].dim:
            report.append(
                Violation(
                    "independence",
                    (x, y),
                    f"{len(basis)} generators span only "
                    f"{spans[(x, y)].dim} dimensions",
                )
            )

    for x in cat.object_names():
        unit = cat.unit(x)
        if not unit.is_projection():
            report.append(
                Violation(
                    "unit-membership", (x, x), "declared unit is not a projection"
                )
            )
        if not spans[(x, x)].contains(unit):
            report.append(
                Violation(
                    "unit-membership",
                    (x, x),
                    "the unit of the object is not in the endomorphism span",
                )
            )

    for x, y in cat.pairs():
        ux, uy = cat.unit(x), cat.unit(y)
        for b in cat.hom_basis(x, y):
            if uy @ b != b or b @ ux != b:
                report.append(
                    Violation(
                        "unit-action",
                        (x, y),
                        f"unit does not act as identity on {b}",
                    )
                )
            if not spans[(y, x)].contains(b.adjoint()):
                report.append(
                    Violation(
                        "adjoint", (x, y), f"adjoint of {b} leaves the spans"
                    )
                )

    for x in cat.object_names():
        for y in cat.object_names():
            for z in cat.object_names():
                for f in cat.hom_basis(x, y):
                    for g in cat.hom_basis(y, z):
                        if not spans[(x, z)].contains(g @ f):
                            report.append(
                                Violation(
                                    "composition",
                                    (x, z),
                                    f"({g}) o ({f}) leaves the spans",
                                )
                            )
    return report


def is_valid_category(cat: ConcreteStarCategory) -> bool:
    return not validate_category(cat)


# --- standard small categories ---------------------------------------


def ground_category() -> ConcreteStarCategory:
    """The one-object category with scalar endomorphisms."""
    return star_category(
        [("x", 1)], {("x", "x"): [ExactMatrix.identity(1)]}
    )


def coproduct_of_grounds(n: int) -> ConcreteStarCategory:
    """n points: n one-dimensional objects with no morphisms between
    them."""
    objects = [(f"x{k + 1}", 1) for k in range(n)]
    homs = {
        (f"x{k + 1}", f"x{k + 1}"): [ExactMatrix.identity(1)] for k in range(n)
    }
    return star_category(objects, homs)


def matrix_category(n: int, name: str = "x") -> ConcreteStarCategory:
    """One object carrying the full n x n matrix algebra."""
    basis = []
    for i in range(n):
        for j in range(n):
            m = [[0] * n for _ in range(n)]
            m[i][j] = 1
            basis.append(ExactMatrix.from_rows(m))
    return star_category([(name, n)], {(name, name): basis})


def zero_category() -> ConcreteStarCategory:
    """One object on the zero space; its identity is the zero map."""
    return star_category([("z", 0)], {("z", "z"): []})


def disjoint_union(
    a: ConcreteStarCategory, b: ConcreteStarCategory, rename=None
) -> ConcreteStarCategory:
    """Coproduct of two categories; hom spaces across the two halves are
    zero.  Clashing object names are prefixed deterministically."""
    names_a = set(a.object_names())
    names_b = set(b.object_names())
    if rename is None:
        rename = bool(names_a & names_b)
    la = (lambda n: f"l.{n}") if rename else (lambda n: n)
    lb = (lambda n: f"r.{n}") if rename else (lambda n: n)
    objects = [(la(o.name), o.dim, o.unit) for o in a.objects] + [
        (lb(o.name), o.dim, o.unit) for o in b.objects
    ]
    homs = {}
    for (s, t), mats in a.homs:
        homs[(la(s), la(t))] = mats
    for (s, t), mats in b.homs:
        homs[(lb(s), lb(t))] = mats
    return star_category(objects, homs)


# --- functors ---------------------------------------------------------


@dataclass(frozen=True)
class StarFunctor:
    """A *-functor between concrete categories.

    The arrow action is recorded as the images of each canonical hom
    basis element of the source, pair by pair.
    """

    source: ConcreteStarCategory
    target: ConcreteStarCategory
    object_map: tuple  # sorted tuple of (source object, target object)
    arrow_map: tuple  # sorted tuple of ((src, tgt), tuple[ExactMatrix, ...])

    def apply_object(self, name: str) -> str:
        for s, t in self.object_map:
            if s == name:
                return t
        raise KeyError(f"functor has no value on object {name!r}")

    def _images(self, src: str, tgt: str):
        for pair, mats in self.arrow_map:
            if pair == (src, tgt):
                return mats
        return ()

    def apply(self, src: str, tgt: str, m: ExactMatrix) -> ExactMatrix:
        """Image of an arbitrary element of Hom(src, tgt)."""
        basis = self.source.hom_basis(src, tgt)
        coeffs = span_membership(m, list(basis))
        if coeffs is None:
            raise ValueError("matrix is not in the source hom span")
        fs, ft = self.apply_object(src), self.apply_object(tgt)
        acc = ExactMatrix.zeros(self.target.dim(ft), self.target.dim(fs))
        for c, img in zip(coeffs, self._images(src, tgt)):
            if not c.is_zero():
                acc = acc + img.scale(c)
        return acc


def star_functor(source, target, object_map, arrow_map) -> StarFunctor:
    """Build a StarFunctor from dict-like maps.

    object_map: {source object -> target object}
    arrow_map: {(src, tgt) -> [image of each canonical basis element]}
    Pairs with zero hom space may be omitted.
    """
    om = tuple(sorted(object_map.items()))
    mapped = set(object_map)
    for name in source.object_names():
        if name not in mapped:
            raise KeyError(f"object {name!r} has no image")
        if not target.has_object(object_map[name]):
            raise KeyError(f"image object {object_map[name]!r} does not exist")
    am = {}
    for x, y in source.pairs():
        basis = source.hom_basis(x, y)
        if not basis:
            continue
        images = arrow_map.get((x, y))
        if images is None:
            raise KeyError(f"no arrow images for hom({x}, {y})")
        images = tuple(images)
        if len(images) != len(basis):
            raise ValueError(
                f"hom({x}, {y}) needs {len(basis)} images, got {len(images)}"
            )
        fx, fy = object_map[x], object_map[y]
        for img in images:
            if img.rows != target.dim(fy) or img.cols != target.dim(fx):
                raise ShapeError(f"image for hom({x}, {y}) has the wrong shape")
        am[(x, y)] = images
    return StarFunctor(source, target, om, tuple(sorted(am.items())))


def identity_functor(cat: ConcreteStarCategory) -> StarFunctor:
    return star_functor(
        cat,
        cat,
        {x: x for x in cat.object_names()},
        {
            (x, y): list(cat.hom_basis(x, y))
            for x, y in cat.pairs()
            if cat.hom_basis(x, y)
        },
    )


def validate_functor(f: StarFunctor):
    """All ways in which f fails to be a *-functor; empty list if valid."""
    problems = []
    src, tgt = f.source, f.target
    target_spans = {}

    def tspan(x, y):
        if (x, y) not in target_spans:
            target_spans[(x, y)] = tgt.hom_span(x, y)
        return target_spans[(x, y)]

    for x, y in src.pairs():
        basis = src.hom_basis(x, y)
        if not basis:
            continue
        fx, fy = f.apply_object(x), f.apply_object(y)
        for b in basis:
            img = f.apply(x, y, b)
            if not tspan(fx, fy).contains(img):
                problems.append(f"image of a hom({x}, {y}) element leaves the target span")
            if f.apply(y, x, b.adjoint()) != img.adjoint():
                problems.append(f"involution not preserved on hom({x}, {y})")

    for x in src.object_names():
        fx = f.apply_object(x)
        if f.apply(x, x, src.unit(x)) != tgt.unit(fx):
            problems.append(f"unit of {x} is not sent to the unit of {fx}")

    for x in src.object_names():
        for y in src.object_names():
            for z in src.object_names():
                for a in src.hom_basis(x, y):
                    for b in src.hom_basis(y, z):
                        lhs = f.apply(x, z, b @ a)
                        rhs = f.apply(y, z, b) @ f.apply(x, y, a)
                        if lhs != rhs:
                            problems.append(
                                f"composition not preserved on hom({x},{y}) x hom({y},{z})"
                            )
    return problems


def is_valid_functor(f: StarFunctor) -> bool:
    return not validate_functor(f)


def compose_functors(g: StarFunctor, f: StarFunctor) -> StarFunctor:
    """g after f."""
    if f.target is not g.source and f.target != g.source:
        raise ValueError("functors are not composable")
    object_map = {
        x: g.apply_object(f.apply_object(x)) for x in f.source.object_names()
    }
    arrow_map = {}
    for x, y in f.source.pairs():
        basis = f.source.hom_basis(x, y)
        if not basis:
            continue
        fx, fy = f.apply_object(x), f.apply_object(y)
        arrow_map[(x, y)] = [
            g.apply(fx, fy, f.apply(x, y, b)) for b in basis
        ]
    return star_functor(f.source, g.target, object_map, arrow_map)


def hom_component_bijective(f: StarFunctor, x: str, y: str) -> bool:
    """Is Hom(x, y) -> Hom(Fx, Fy) a linear bijection?"""
    basis = f.source.hom_basis(x, y)
    fx, fy = f.apply_object(x), f.apply_object(y)
    target_dim = f.target.hom_dim(fx, fy)
    images = [f.apply(x, y, b) for b in basis]
    if not images:
        return target_dim == 0
    image_span = MatrixSpan(
        f.target.dim(fy), f.target.dim(fx), images
    )
    return image_span.dim == len(basis) == target_dim


def is_fully_faithful(f: StarFunctor) -> bool:
    return all(hom_component_bijective(f, x, y) for x, y in f.source.pairs())


def is_cofibration(f: StarFunctor) -> bool:
    """Injective on objects."""
    images = [t for _, t in f.object_map]
    return len(set(images)) == len(images)


def is_trivial_fibration(f: StarFunctor) -> bool:
    """Surjective on objects with bijective hom components."""
    targets = {t for _, t in f.object_map}
    if targets != set(f.target.object_names()):
        return False
    return is_fully_faithful(f)
