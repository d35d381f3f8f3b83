"""Block decomposition of finite-dimensional *-categories over Q(i).

The linking algebra of a valid concrete *-category (the direct sum of
all its hom spaces) is semisimple, because the conjugate-transpose
involution is positive.  Its simple two-sided blocks are found by
splitting the center: self-adjoint central elements have rational
minimal-polynomial coefficients, and their rational eigenvalues yield
exact Lagrange idempotents.  An irreducible factor of degree > 1 means
the algebra does not split over Q(i); this is reported exactly, with
the offending polynomial, rather than approximated.

Multiplicities are recovered without ever diagonalizing: the block-i
multiplicity of an object x is the exact integer square root of
dim(z_i End(x) z_i), and the ambient rank of z_i on x is that
multiplicity times a per-block constant (the multiplicity of the
block's simple module in the representation).  Dividing ambient ranks
by the constant makes object classes independent of how the category
happens to be realized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .completion import ProjObject, word_dim
from .scalar import (
    ExactMatrix,
    GaussianRational,
    MatrixSpan,
    block_diag,
    linear_combination,
    nullspace,
    span_membership,
)
from .starcat import ConcreteStarCategory, star_category


class NotSemisimple(Exception):
    """The linking algebra is not semisimple (impossible for validated
    adjoint-closed input; indicates corrupt data)."""


class NotSplitOverBaseField(Exception):
    """A central minimal polynomial has an irreducible factor of degree
    > 1 over Q(i); the blocks are not matrix algebras over Q(i)."""

    def __init__(self, polynomial: str, coefficients):
        super().__init__(
            f"center does not split over Q(i): irreducible factor {polynomial}"
        )
        self.polynomial = polynomial
        self.coefficients = tuple(coefficients)  # low to high, Fractions


class WitnessObstruction(Exception):
    """An exact witness (matrix units, partial isometry) requires
    scaling by the square root of a rational that is not a norm from
    Q(i).  The decision that triggered the construction still stands;
    only the explicit witness is unavailable."""


# ---------------------------------------------------------------------------
# families: block-diagonal elements of the linking algebra


def _fam_mul(a, b):
    return {x: a[x] @ b[x] for x in a}


def _fam_sub(a, b):
    return {x: a[x] - b[x] for x in a}


def _fam_scale(a, c):
    return {x: m.scale(c) for x, m in a.items()}


def _fam_adjoint(a):
    return {x: m.adjoint() for x, m in a.items()}


def _fam_flatten(a, order):
    out = []
    for x in order:
        out.extend(a[x].flatten())
    return tuple(out)


def _fam_is_zero(a):
    return all(m.is_zero() for m in a.values())


# ---------------------------------------------------------------------------
# rational polynomial utilities (factorization delegated to sympy)


def _format_poly(coeffs) -> str:
    """Render a rational polynomial, low-to-high coefficients, as e.g.
    "t^2 - 2"."""
    terms = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if power == 0:
            body = f"{mag}"
        else:
            t = "t" if power == 1 else f"t^{power}"
            body = t if mag == 1 else f"{mag}*{t}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def _depress(coeffs):
    """Shift a monic rational polynomial t -> t + s to kill the
    second-highest coefficient: the canonical representative of its
    translation orbit (translates generate the same field extension)."""
    d = len(coeffs) - 1
    s = -coeffs[d - 1] / d
    out = [Fraction(0)] * (d + 1)
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        for j in range(k + 1):
            out[j] += c * math.comb(k, j) * s ** (k - j)
    assert out[d] == 1 and out[d - 1] == 0
    return tuple(out)


def _factor_rational_poly(coeffs):
    """Factor a monic rational polynomial (low-to-high Fraction
    coefficients) into irreducibles over Q.

    Returns a list of (coefficients low-to-high, exponent) pairs with
    Fraction coefficients, monic, sorted deterministically.
    """
    import sympy

    t = sympy.Symbol("t")
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * t**k
        for k, c in enumerate(coeffs)
    )
    _, factors = sympy.Poly(expr, t, domain="QQ").factor_list()
    out = []
    for poly, exp in factors:
        cs = [Fraction(c.p, c.q) for c in reversed(poly.all_coeffs())]
        lead = cs[-1]
        cs = [c / lead for c in cs]
        out.append((tuple(cs), int(exp)))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class SemisimpleForm:
    """The shape of a semisimple *-category: named blocks and, for each
    object, its multiplicity in every block."""

    blocks: tuple  # tuple[str, ...]
    object_classes: tuple  # tuple of (object name, tuple[int, ...])

    def class_of(self, name: str):
        for n, c in self.object_classes:
            if n == name:
                return c
        raise KeyError(name)

    def object_names(self):
        return tuple(n for n, _ in self.object_classes)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def __post_init__(self):
        for n, c in self.object_classes:
            if len(c) != len(self.blocks):
                raise ValueError(f"class of {n!r} has the wrong length")
            if any(m < 0 for m in c):
                raise ValueError(f"negative multiplicity on {n!r}")
        for j, b in enumerate(self.blocks):
            if all(c[j] == 0 for _, c in self.object_classes):
                raise ValueError(f"phantom block {b!r}: no object meets it")


class Decomposition:
    """A category together with its exact block data."""

    def __init__(self, category, blocks, centrals, object_mult, unit_ranks):
        self.category = category
        self.blocks = blocks  # tuple[str]
        self.centrals = centrals  # tuple of families {object -> matrix}
        self.object_mult = object_mult  # {object -> tuple[int]}
        self.unit_ranks = unit_ranks  # tuple[int]: ambient rank of one
        #   block-i multiplicity unit (the constant k_i above)

    @property
    def form(self) -> SemisimpleForm:
        return SemisimpleForm(
            self.blocks,
            tuple((x, self.object_mult[x]) for x in self.category.object_names()),
        )

    def central_on_word(self, i, word) -> ExactMatrix:
        z = self.centrals[i]
        if not word:
            return ExactMatrix.zeros(0, 0)
        return block_diag([z[x] for x in word])


@lru_cache(maxsize=None)
def decompose(cat: ConcreteStarCategory) -> Decomposition:
    """Exact block decomposition of a valid concrete *-category."""
    order = cat.object_names()
    end_bases = {x: cat.hom_basis(x, x) for x in order}

    var_offset = {}
    total_vars = 0
    for x in order:
        var_offset[x] = total_vars
        total_vars += len(end_bases[x])

    if total_vars == 0:
        return Decomposition(cat, (), (), {x: () for x in order}, ())

    # Central elements are block-diagonal families (z_x) with z_x in
    # End(x); centrality is the linear condition z_y b = b z_x for every
    # basis arrow b.
    constraint_rows = []
    for x in order:
        for y in order:
            for b in cat.hom_basis(x, y):
                left = [B @ b for B in end_bases[y]]  # z_y b
                right = [b @ B for B in end_bases[x]]  # b z_x
                for r in range(b.rows):
                    for c in range(b.cols):
                        row = [_ZERO] * total_vars
                        for k, m in enumerate(left):
                            row[var_offset[y] + k] = row[var_offset[y] + k] + m.entry(r, c)
                        for k, m in enumerate(right):
                            row[var_offset[x] + k] = row[var_offset[x] + k] - m.entry(r, c)
                        constraint_rows.append(tuple(row))

    center_vectors = nullspace(constraint_rows) if constraint_rows else tuple(
        tuple(_ONE if i == j else _ZERO for i in range(total_vars))
        for j in range(total_vars)
    )

    def to_family(vec):
        fam = {}
        for x in order:
            acc = ExactMatrix.zeros(cat.dim(x), cat.dim(x))
            for k, basis_elt in enumerate(end_bases[x]):
                c = vec[var_offset[x] + k]
                if not c.is_zero():
                    acc = acc + basis_elt.scale(c)
            fam[x] = acc
        return fam

    center = [to_family(v) for v in center_vectors]
    unit_family = {x: cat.unit(x) for x in order}

    # Self-adjoint elements spanning the center over Q(i).
    half = GaussianRational(Fraction(1, 2), Fraction(0))
    half_over_i = GaussianRational(Fraction(0), Fraction(-1, 2))  # 1/(2i)
    hermitians = []
    for z in center:
        zs = _fam_adjoint(z)
        h1 = _fam_scale({x: z[x] + zs[x] for x in order}, half)
        h2 = _fam_scale({x: z[x] - zs[x] for x in order}, half_over_i)
        for h in (h1, h2):
            if not _fam_is_zero(h):
                hermitians.append(h)

    pieces = [unit_family]
    for h in hermitians:
        refined = []
        for e in pieces:
            refined.extend(_split_piece(cat, order, e, h))
        pieces = refined

    # Deterministic block order: by first supported object, then by the
    # position of the first nonzero entry there.
    def sort_key(fam):
        for idx, x in enumerate(order):
            m = fam[x]
            for pos, entry in enumerate(m.entries):
                if not entry.is_zero():
                    return (idx, pos)
        return (len(order), 0)

    pieces = [p for p in pieces if not _fam_is_zero(p)]
    pieces.sort(key=sort_key)

    for p in pieces:
        for x in order:
            if p[x] != p[x].adjoint():
                raise NotSemisimple(
                    "a central idempotent failed self-adjointness; input "
                    "was not adjoint-closed"
                )

    blocks = tuple(f"b{i + 1}" for i in range(len(pieces)))

    object_mult = {}
    for x in order:
        mults = []
        for p in pieces:
            z = p[x]
            if z.is_zero():
                mults.append(0)
                continue
            compressed = MatrixSpan(
                cat.dim(x), cat.dim(x), [z @ b @ z for b in end_bases[x]]
            )
            m = math.isqrt(compressed.dim)
            if m * m != compressed.dim:
                raise NotSemisimple(
                    f"dim z End({x}) z = {compressed.dim} is not a perfect "
                    "square; the block structure is inconsistent"
                )
            mults.append(m)
        object_mult[x] = tuple(mults)

    unit_ranks = []
    for i, p in enumerate(pieces):
        k_i = None
        for x in order:
            m = object_mult[x][i]
            if m == 0:
                continue
            r = p[x].rank()
            if r % m != 0 or (k_i is not None and r // m != k_i):
                raise NotSemisimple(
                    f"ambient rank of the block-{i + 1} unit on {x} is not "
                    "a consistent multiple of the multiplicity"
                )
            k_i = r // m
        assert k_i is not None, "block with no supporting object"
        unit_ranks.append(k_i)

    # Reconstruction check: hom dimensions must match the block data.
    for x in order:
        for y in order:
            expected = sum(
                object_mult[x][i] * object_mult[y][i] for i in range(len(pieces))
            )
            if cat.hom_dim(x, y) != expected:
                raise NotSemisimple(
                    f"dim hom({x}, {y}) = {cat.hom_dim(x, y)} but the block "
                    f"data predicts {expected}"
                )

    return Decomposition(cat, blocks, tuple(pieces), object_mult, tuple(unit_ranks))


_ZERO = GaussianRational(Fraction(0), Fraction(0))
_ONE = GaussianRational(Fraction(1), Fraction(0))


def _split_piece(cat, order, e, h):
    """Split a central projection e along the spectrum of the
    self-adjoint central element h."""
    a = _fam_mul(_fam_mul(e, h), e)
    # Krylov: find the first linear dependence among e, a, a^2, ...
    powers = [e]
    flats = [_fam_flatten(e, order)]
    cur = a
    coeffs = None
    while True:
        flat = _fam_flatten(cur, order)
        coeffs = linear_combination(flats, flat)
        if coeffs is not None:
            break
        powers.append(cur)
        flats.append(flat)
        cur = _fam_mul(cur, a)
    degree = len(powers)
    if degree == 1:
        return [e]

    minpoly = []
    for c in coeffs:
        if c.im != 0:
            raise NotSemisimple(
                "a self-adjoint central element has a non-real minimal "
                "polynomial; input was not adjoint-closed"
            )
        minpoly.append(-c.re)
    minpoly.append(Fraction(1))  # monic, low-to-high

    roots = []
    for factor_coeffs, exp in _factor_rational_poly(minpoly):
        if exp > 1:
            raise NotSemisimple(
                "nilpotent central element found; input was not adjoint-closed"
            )
        if len(factor_coeffs) > 2:
            depressed = _depress(factor_coeffs)
            raise NotSplitOverBaseField(_format_poly(depressed), depressed)
        roots.append(-factor_coeffs[0])
    roots.sort()

    out = []
    for lam in roots:
        acc = e
        for mu in roots:
            if mu == lam:
                continue
            shifted = _fam_sub(
                _fam_mul(acc, a),
                _fam_scale(acc, GaussianRational(mu, Fraction(0))),
            )
            acc = _fam_scale(
                shifted,
                GaussianRational(Fraction(1) / (lam - mu), Fraction(0)),
            )
        out.append(acc)

    total = out[0]
    for f in out[1:]:
        total = {x: total[x] + f[x] for x in order}
    assert all(total[x] == e[x] for x in order), "Lagrange idempotents do not sum to the piece"
    return out


# ---------------------------------------------------------------------------
# classes


def object_class(decomp: Decomposition, obj):
    """The per-block multiplicity vector of a base object (by name) or
    of any saturation object."""
    if isinstance(obj, str):
        return decomp.object_mult[obj]
    if not isinstance(obj, ProjObject):
        raise TypeError("object_class expects an object name or a ProjObject")
    out = []
    for i in range(len(decomp.blocks)):
        z = decomp.central_on_word(i, obj.word)
        r = (z @ obj.proj).rank()
        k = decomp.unit_ranks[i]
        if r % k != 0:
            raise NotSemisimple(
                "projection rank is not a multiple of the block unit rank"
            )
        out.append(r // k)
    return tuple(out)


# ---------------------------------------------------------------------------
# minimal projections


class MinimalProjectionError(Exception):
    """No exact minimal projection was found in the structured search
    pool.  (Possible for exotically realized blocks; never for standard
    realizations.)"""


def _column_space_basis(m: ExactMatrix):
    """Vectors (tuples) spanning the column space."""
    from .scalar import echelon_basis

    cols = [tuple(m.entry(i, j) for i in range(m.rows)) for j in range(m.cols)]
    return echelon_basis(cols)


def _commutant(dim, unit, span_matrices):
    """All T with T = unit T = T unit commuting with every span
    element, as a list of matrices."""
    rows = []
    n = dim

    def add_constraint(mat_of_var):
        # mat_of_var: function var-index -> entry of constraint matrix
        for r in range(n):
            for c in range(n):
                rows.append(tuple(mat_of_var(r, c, k) for k in range(n * n)))

    # Variables: entries of T, row-major.  Constraint: unit T - T = 0.
    def unit_left(r, c, k):
        i, j = divmod(k, n)
        acc = _ZERO
        if j == c:
            acc = acc + unit.entry(r, i)
        if (i, j) == (r, c):
            acc = acc - _ONE
        return acc

    def unit_right(r, c, k):
        i, j = divmod(k, n)
        acc = _ZERO
        if i == r:
            acc = acc + unit.entry(j, c)
        if (i, j) == (r, c):
            acc = acc - _ONE
        return acc

    add_constraint(unit_left)
    add_constraint(unit_right)
    for b in span_matrices:
        def commute(r, c, k, b=b):
            i, j = divmod(k, n)
            acc = _ZERO
            if i == r:
                acc = acc + b.entry(j, c)  # (T b)[r, c] term
            if j == c:
                acc = acc - b.entry(r, i)  # (b T)[r, c] term
            return acc

        add_constraint(commute)

    basis = nullspace(rows)
    return [ExactMatrix(n, n, v) for v in basis]


def _minimal_projection_in_span(dim, unit, span_matrices, mult, unit_rank):
    """An exact projection in the span with block multiplicity one.

    The span is a simple matrix algebra of size ``mult`` acting with
    multiplicity ``unit_rank`` on the range of ``unit``.  A projection
    commuting with the commutant and of ambient rank ``unit_rank`` is
    orthogonal projection onto a minimal commutant-submodule; the search
    pool of cyclic vectors covers every structured realization.
    """
    if mult == 1:
        return unit
    commutant = _commutant(dim, unit, span_matrices)
    if len(commutant) != unit_rank * unit_rank:
        raise MinimalProjectionError(
            f"commutant has dimension {len(commutant)}, expected "
            f"{unit_rank * unit_rank}; the block is not a matrix algebra "
            "over Q(i)"
        )
    span = MatrixSpan(dim, dim, list(span_matrices))
    col_vectors = [list(v) for v in _column_space_basis(unit)]
    candidates = list(col_vectors)
    iu = GaussianRational(Fraction(0), Fraction(1))
    for a in range(len(col_vectors)):
        for b in range(a + 1, len(col_vectors)):
            va, vb = col_vectors[a], col_vectors[b]
            candidates.append([x + y for x, y in zip(va, vb)])
            candidates.append([x - y for x, y in zip(va, vb)])
            candidates.append([x + iu * y for x, y in zip(va, vb)])
            candidates.append([x - iu * y for x, y in zip(va, vb)])
    from .scalar import echelon_basis

    for w in candidates:
        wcol = ExactMatrix(dim, 1, tuple(w))
        orbit = [c @ wcol for c in commutant]
        basis = echelon_basis([tuple(o.entries) for o in orbit])
        if len(basis) != unit_rank:
            continue
        cols = ExactMatrix.from_rows(
            [[basis[j][i] for j in range(len(basis))] for i in range(dim)]
        )
        from .scalar import orthogonal_projection_onto

        e = orthogonal_projection_onto(cols)
        if not span.contains(e):
            continue
        if e @ e != e or e != e.adjoint() or e.rank() != unit_rank:
            continue
        if unit @ e != e or e @ unit != e:
            continue
        return e
    raise MinimalProjectionError(
        "no cyclic vector in the structured pool produced an exact "
        "minimal projection"
    )


def minimal_projection(decomp: Decomposition, block) -> ProjObject:
    """A saturation object of class one in the given block and zero in
    all others: a one-letter word with an exact minimal projection."""
    if isinstance(block, str):
        i = decomp.blocks.index(block)
    else:
        i = block
    cat = decomp.category
    support = None
    for x in cat.object_names():
        if decomp.object_mult[x][i] > 0:
            support = x
            break
    assert support is not None
    z = decomp.centrals[i][support]
    m = decomp.object_mult[support][i]
    k = decomp.unit_ranks[i]
    block_span = [
        z @ b @ z for b in cat.hom_basis(support, support)
    ]
    e = _minimal_projection_in_span(cat.dim(support), z, block_span, m, k)
    obj = ProjObject((support,), e)
    cls = object_class(decomp, obj)
    assert cls == tuple(1 if j == i else 0 for j in range(len(decomp.blocks)))
    return obj


# ---------------------------------------------------------------------------
# sums of two squares (for exact isometry scaling)


def _gaussian_int_gcd(a, b):
    """gcd in Z[i]; inputs and output are (re, im) integer pairs."""

    def norm(z):
        return z[0] * z[0] + z[1] * z[1]

    def sub(z, w):
        return (z[0] - w[0], z[1] - w[1])

    def mul(z, w):
        return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])

    def divmod_rounded(z, w):
        n = norm(w)
        xr = Fraction(z[0] * w[0] + z[1] * w[1], n)
        xi = Fraction(z[1] * w[0] - z[0] * w[1], n)
        qr = (xr.numerator * 2 + xr.denominator) // (2 * xr.denominator)
        qi = (xi.numerator * 2 + xi.denominator) // (2 * xi.denominator)
        q = (qr, qi)
        return q, sub(z, mul(q, w))

    while b != (0, 0):
        _, r = divmod_rounded(a, b)
        a, b = b, r
    return a


def _two_squares_prime(p: int):
    """For p = 2 or p = 1 mod 4, a Gaussian integer of norm p."""
    if p == 2:
        return (1, 1)
    r = 2
    while pow(r, (p - 1) // 2, p) != p - 1:
        r += 1
    x = pow(r, (p - 1) // 4, p)
    return _gaussian_int_gcd((p, 0), (x, 1))


def rational_as_norm(q: Fraction):
    """A Gaussian rational of norm q, or None if q is not a norm.

    q > 0 is a norm from Q(i) iff every prime = 3 mod 4 divides the
    reduced numerator and denominator to an even power.
    """
    import sympy

    if q < 0:
        return None
    if q == 0:
        return GaussianRational(Fraction(0), Fraction(0))
    n = q.numerator * q.denominator
    g = (1, 0)
    for p, e in sympy.factorint(n).items():
        p = int(p)
        if p % 4 == 3:
            if e % 2 != 0:
                return None
            g = (g[0] * p ** (e // 2), g[1] * p ** (e // 2))
        else:
            gp = _two_squares_prime(p)
            for _ in range(e):
                g = (g[0] * gp[0] - g[1] * gp[1], g[0] * gp[1] + g[1] * gp[0])
    result = GaussianRational(
        Fraction(g[0], q.denominator), Fraction(g[1], q.denominator)
    )
    assert result.norm() == q
    return result


# ---------------------------------------------------------------------------
# matrix units (exact, for witness and representative functors)


@dataclass(frozen=True)
class MatrixUnitSystem:
    """A full system of matrix units for one block of the linking
    algebra: slots (object, copy) with diagonal projections and partial
    isometries between them."""

    block_index: int
    slots: tuple  # tuple of (object name, copy index)
    diagonal: tuple  # tuple of ExactMatrix, aligned with slots
    from_reference: tuple  # u_s in hom(ref object, slot object):
    #   u_s* u_s = diagonal[ref], u_s u_s* = diagonal[s]

    def unit(self, a: int, b: int) -> ExactMatrix:
        """The matrix unit from slot b to slot a."""
        return self.from_reference[a] @ self.from_reference[b].adjoint()


def matrix_units(decomp: Decomposition, block_index: int) -> MatrixUnitSystem:
    """Exact matrix units for a block; raises WitnessObstruction when a
    required scaling is not a Q(i)-norm."""
    cat = decomp.category
    i = block_index
    k = decomp.unit_ranks[i]

    slots = []
    diagonal = []
    for x in cat.object_names():
        m = decomp.object_mult[x][i]
        if m == 0:
            continue
        z = decomp.centrals[i][x]
        end_basis = cat.hom_basis(x, x)
        block_span = [z @ b @ z for b in end_basis]
        remaining = z
        projs = []
        for copy in range(m):
            mult_left = m - copy
            if mult_left == 1:
                f = remaining
            else:
                corner = [remaining @ b @ remaining for b in block_span]
                f = _minimal_projection_in_span(
                    cat.dim(x), remaining, corner, mult_left, k
                )
            projs.append(f)
            remaining = remaining - f
        for copy, f in enumerate(projs):
            slots.append((x, copy))
            diagonal.append(f)

    ref_obj, _ = slots[0]
    ref_proj = diagonal[0]
    from_reference = []
    for (x, copy), f in zip(slots, diagonal):
        if (x, copy) == slots[0]:
            from_reference.append(ref_proj)
            continue
        basis = cat.hom_basis(ref_obj, x)
        compressed = [f @ b @ ref_proj for b in basis]
        span = MatrixSpan(cat.dim(x), cat.dim(ref_obj), compressed)
        assert span.dim == 1, "minimal-to-minimal hom is not a line"
        t = span.matrices[0]
        # t* t is a positive rational multiple of the reference
        # projection; rescale t to a partial isometry exactly.
        tt = t.adjoint() @ t
        coeffs = span_membership(tt, [ref_proj])
        assert coeffs is not None and coeffs[0].im == 0
        lam = coeffs[0].re
        assert lam > 0
        mu = rational_as_norm(lam)
        if mu is None:
            raise WitnessObstruction(
                f"partial isometry scaling needs |mu|^2 = {lam}, which is "
                "not a norm from Q(i)"
            )
        u = t.scale(GaussianRational(Fraction(1), Fraction(0)) / mu)
        assert u.adjoint() @ u == ref_proj
        assert u @ u.adjoint() == f
        from_reference.append(u)
    return MatrixUnitSystem(i, tuple(slots), tuple(diagonal), tuple(from_reference))


def slot_bridge(units, src_obj, src_offsets, tgt_obj, tgt_offsets, counts):
    """A partial isometry assembled from matrix-unit bridges: per block
    i it sends the copies [src_offsets[i], src_offsets[i] + counts[i])
    of src_obj to the copies [tgt_offsets[i], ...) of tgt_obj.

    units: one MatrixUnitSystem per block, in block order.  Returns
    None when every count is zero (the empty bridge)."""
    total = None
    for i, mu in enumerate(units):
        for c in range(counts[i]):
            u_t = mu.from_reference[mu.slots.index((tgt_obj, tgt_offsets[i] + c))]
            u_s = mu.from_reference[mu.slots.index((src_obj, src_offsets[i] + c))]
            term = u_t @ u_s.adjoint()
            total = term if total is None else total + term
    return total


# ---------------------------------------------------------------------------
# standard realization and Morita equivalence of categories


def standard_realization(form: SemisimpleForm) -> ConcreteStarCategory:
    """The canonical concrete model of a semisimple form: each object's
    space is graded by blocks, with all block-compatible matrices."""
    names = form.object_names()
    dims = {x: sum(form.class_of(x)) for x in names}

    def offsets(x):
        offs = [0]
        for m in form.class_of(x):
            offs.append(offs[-1] + m)
        return offs

    homs = {}
    for x in names:
        for y in names:
            basis = []
            offx, offy = offsets(x), offsets(y)
            for i in range(form.k):
                mx, my = form.class_of(x)[i], form.class_of(y)[i]
                for a in range(my):
                    for b in range(mx):
                        m = [[0] * dims[x] for _ in range(dims[y])]
                        m[offy[i] + a][offx[i] + b] = 1
                        basis.append(ExactMatrix.from_rows(m))
            if basis:
                homs[(x, y)] = basis
    return star_category([(x, dims[x]) for x in names], homs)


def witness_functor(a: ConcreteStarCategory, b: ConcreteStarCategory):
    """A Morita-equivalence witness A -> Sat(B) for categories with the
    same number of blocks, matching blocks in order."""
    from .completion import canonical_sum, saturation_functor

    da, db = decompose(a), decompose(b)
    if len(da.blocks) != len(db.blocks):
        raise ValueError("block counts differ; no witness exists")
    k = len(da.blocks)
    units = [matrix_units(da, i) for i in range(k)]
    min_projs = [minimal_projection(db, i) for i in range(k)]

    # Slot layout of F(x): for each block i (in order), for each copy of
    # x in block i, one summand equal to the block-i minimal projection.
    def layout(x):
        out = []
        for i in range(k):
            for copy in range(da.object_mult[x][i]):
                out.append((i, copy))
        return out

    object_map = {}
    sums = {}
    for x in a.object_names():
        summands = [min_projs[i] for i, _ in layout(x)]
        obj, _ = canonical_sum(b, summands)
        object_map[x] = obj
        sums[x] = summands

    def slot_offsets(x):
        offs = [0]
        for po in sums[x]:
            offs.append(offs[-1] + word_dim(b, po.word))
        return offs

    # The image of the matrix unit (block i, copies: c_tgt <- c_src) is
    # the block matrix with the minimal projection in the matching slot.
    def unit_image(x, y, i, c_src, c_tgt):
        rows = word_dim(b, object_map[y].word)
        cols = word_dim(b, object_map[x].word)
        offx, offy = slot_offsets(x), slot_offsets(y)
        sx = layout(x).index((i, c_src))
        sy = layout(y).index((i, c_tgt))
        p = min_projs[i].proj
        ents = [[_ZERO] * cols for _ in range(rows)]
        for r in range(p.rows):
            for c in range(p.cols):
                ents[offy[sy] + r][offx[sx] + c] = p.entry(r, c)
        return ExactMatrix.from_rows(ents) if rows and cols else ExactMatrix.zeros(rows, cols)

    arrow_map = {}
    for x, y in a.pairs():
        basis = a.hom_basis(x, y)
        if not basis:
            continue
        unit_elements = []
        unit_images = []
        for i in range(k):
            mu = units[i]
            for sa, (ya, ca) in enumerate(mu.slots):
                if ya != y:
                    continue
                for sb, (xb, cb) in enumerate(mu.slots):
                    if xb != x:
                        continue
                    unit_elements.append(mu.unit(sa, sb))
                    unit_images.append(unit_image(x, y, i, cb, ca))
        images = []
        for belt in basis:
            coeffs = span_membership(belt, unit_elements)
            assert coeffs is not None, "hom element outside matrix-unit span"
            acc = ExactMatrix.zeros(
                word_dim(b, object_map[y].word), word_dim(b, object_map[x].word)
            )
            for ccoef, img in zip(coeffs, unit_images):
                if not ccoef.is_zero():
                    acc = acc + img.scale(ccoef)
            images.append(acc)
        arrow_map[(x, y)] = images
    return saturation_functor(a, b, object_map, arrow_map)


def are_morita_equivalent(a: ConcreteStarCategory, b: ConcreteStarCategory):
    """Decide Morita equivalence of two decomposable categories.

    Returns (answer, witness): the answer is True iff the block counts
    agree; on True the witness is a functor A -> Sat(B) passing
    is_morita_equivalence (or None if the exact witness construction
    hits a norm obstruction on an exotically realized input)."""
    da, db = decompose(a), decompose(b)
    if len(da.blocks) != len(db.blocks):
        return False, None
    try:
        return True, witness_functor(a, b)
    except (WitnessObstruction, MinimalProjectionError):
        return True, None
