"""Lifts of tropical polytopes to cones over Hahn series, and their facets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import (
    BOTTOM,
    Lex,
    ProjectivePoint,
    TropicalHalfSpace,
    in_general_position,
)
from .errors import (
    BudgetExceeded,
    DegeneracyError,
    DimensionError,
    InternalInconsistency,
    PreconditionError,
    ValidationError,
)
from .polytope import TropicalPolytope
from .series import (
    Series,
    determinant,
    dot,
    maximal_minors,
    monomial,
    parse_series,
    project_series,
)


@dataclass(frozen=True)
class LiftedCone:
    """Cone over Hahn series generated by positive vectors valuating to P's generators."""

    generators: tuple
    provenance: TropicalPolytope

    @property
    def n(self) -> int:
        return len(self.generators[0])

    @property
    def p(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class Facet:
    """Simplicial facet cone(v^r, r in support) with inner normal ``normal``."""

    support: tuple
    normal: tuple


def valuation_point(vector: Sequence[Series]) -> ProjectivePoint:
    vals = [x.valuation() for x in vector]
    if any(v is BOTTOM for v in vals):
        raise ValidationError("zero coordinate has no finite valuation")
    return ProjectivePoint(vals)


def canonical_lift(P: TropicalPolytope) -> LiftedCone:
    """Generator r, coordinate i becomes the monomial ``t^(-v^r_i)``."""
    gens = tuple(tuple(monomial(-c) for c in v) for v in P)
    return LiftedCone(gens, P)


def custom_lift(P: TropicalPolytope, series) -> LiftedCone:
    """Wrap user-supplied series (or series strings) as a lift of P, after validation."""
    rows = []
    if len(series) != P.p:
        raise DimensionError("lift has %d rows for %d generators" % (len(series), P.p))
    group = P.group
    for r, row in enumerate(series):
        if len(row) != P.n:
            raise DimensionError("lift row %d has %d entries, expected %d" % (r, len(row), P.n))
        parsed = tuple(x if isinstance(x, Series) else parse_series(x, group) for x in row)
        for i, x in enumerate(parsed):
            if x.sign() <= 0:
                raise ValidationError("lift entry (r=%d, i=%d) = %s is not positive" % (r, i, x))
        if valuation_point(parsed) != P[r]:
            bad = [i for i, x in enumerate(parsed)
                   if x.valuation() - parsed[0].valuation() != P[r][i]]
            raise ValidationError("lift entry (r=%d, i=%d) has the wrong valuation for %r"
                                  % (r, bad[0], P[r]))
        rows.append(parsed)
    return LiftedCone(tuple(rows), P)


def cofactor_normal(columns: Sequence[Sequence[Series]], max_size: int = 6) -> tuple:
    """Normal vector to n-1 columns in dimension n, by signed maximal minors.

    ``f_i`` is ``(-1)^i`` times the determinant with row i deleted; ``f`` is
    exactly orthogonal to every column.  Returns a zero entry (a degenerate
    normal) rather than raising when the columns are dependent.
    """
    cols = [list(c) for c in columns]
    n = len(cols[0]) if cols else 0
    if len(cols) != n - 1 or any(len(c) != n for c in cols):
        raise DimensionError("cofactor_normal needs n-1 columns of length n")
    if n - 1 > max_size:
        raise BudgetExceeded("cofactor minors limited to %dx%d" % (max_size, max_size), n=n)
    f = []
    for i in range(n):
        minor = [[c[row] for c in cols] for row in range(n) if row != i]
        d = determinant(minor, max_size=max_size)
        f.append(-d if i % 2 else d)
    f = tuple(f)
    for c in cols:
        if dot(f, c):
            raise InternalInconsistency("cofactor normal is not orthogonal to its columns")
    return f


def is_degenerate(f: Sequence[Series]) -> bool:
    return any(not x for x in f)


def _facet_for(L: LiftedCone, R: tuple):
    """(normal oriented towards the cone, or None when R spans no facet)."""
    f = cofactor_normal([L.generators[r] for r in R])
    if is_degenerate(f):
        raise DegeneracyError("normal through %s has a zero coordinate" % (list(R),), support=R)
    signs = set()
    for r in range(L.p):
        if r in R:
            continue
        s = dot(f, L.generators[r]).sign()
        if s == 0:
            raise DegeneracyError("generator %d lies on the hyperplane through %s"
                                  % (r, list(R)), support=R)
        signs.add(s)
    if signs == {-1}:
        return tuple(-x for x in f)
    if signs <= {1}:
        return f
    return None


def enumerate_facets(L: LiftedCone) -> list[Facet]:
    """All facets of a lifted cone whose generators are in general position.

    Each (n-1)-subset R yields the unique hyperplane through its generators;
    R spans a facet iff all remaining generators lie strictly on one side.
    """
    n, p = L.n, L.p
    if p < n:
        raise PreconditionError("facet enumeration needs at least n=%d generators, got %d"
                                % (n, p))
    minors = maximal_minors(L.generators)
    for cols, d in minors.items():
        if not d:
            raise DegeneracyError("generators %s are linearly dependent" % (list(cols),),
                                  support=cols)
    facets = []
    for R in itertools.combinations(range(p), n - 1):
        signs = set()
        for r in range(p):
            if r in R:
                continue
            # f.v^r = (-1)^(n-1+t) det(columns R + {r} sorted), t = #{s in R : s > r}
            t = sum(1 for s in R if s > r)
            d = minors[tuple(sorted(R + (r,)))]
            signs.add(d.sign() * (-1) ** (n - 1 + t))
            if len(signs) > 1:
                break
        if len(signs) == 1:
            f = _facet_for(L, R)
            if f is None:
                raise InternalInconsistency("minor signs and normal disagree on %s" % (R,))
            facets.append(Facet(R, f))
    return facets


def tropicalize_facet(F: Facet, keep_lex: bool = False) -> TropicalHalfSpace:
    """Image under the valuation of the facet-defining half-space f.x >= 0.

    Apex coordinates are minus the valuations of the normal, I the indices of
    its positive entries.  Lex-exponent normals are projected to rationals
    unless ``keep_lex`` is set.
    """
    if is_degenerate(F.normal):
        raise DegeneracyError("normal has a zero coordinate", support=F.support)
    lexy = isinstance(F.normal[0].leading()[0], Lex)
    if lexy and not keep_lex:
        pairs = [project_series(x) for x in F.normal]
    else:
        pairs = [(x.sign(), x.valuation()) for x in F.normal]
    apex = ProjectivePoint(-v for _, v in pairs)
    I = frozenset(i for i, (s, _) in enumerate(pairs) if s > 0)
    return TropicalHalfSpace(apex, I)


def facet_characterization_check(P: TropicalPolytope, L: LiftedCone, R,
                                 check_position: bool = True):
    """Does R span a facet of L?  If so, also return its tropical half-space.

    The half-space is checked to contain every generator of P and to have
    the generators indexed by R on its boundary.
    """
    R = tuple(sorted(R))
    if len(R) != P.n - 1:
        raise ValidationError("support must have n-1 = %d elements" % (P.n - 1))
    if check_position and not in_general_position(list(P)):
        raise PreconditionError("tropical generators are not in general position")
    f = _facet_for(L, R)
    if f is None:
        return False, None
    H = tropicalize_facet(Facet(R, f))
    for r, v in enumerate(P):
        if not H.contains(v):
            raise InternalInconsistency("%r misses generator %d" % (H, r))
    for r in R:
        if not H.on_boundary(P[r]):
            raise InternalInconsistency("generator %d is off the boundary of %r" % (r, H))
    return True, H
