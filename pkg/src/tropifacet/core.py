"""Tropical (max-plus) arithmetic over totally ordered abelian groups.

Two value groups are supported:

* the rationals under ``+`` and ``<=`` (plain :class:`fractions.Fraction`),
* triples of rationals under component-wise ``+`` and lexicographic ``<=``
  (:class:`Lex`), where ``(a, b, c)`` stands for ``a + b*eps + c*eps**2``
  with ``eps`` a positive infinitesimal.

All algorithms below only use ``+``, unary ``-``, ``-`` and the order, so
they run unchanged over either group.  Indices are 0-based throughout the
library; the CLI converts to 1-based labels for display.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, InternalInconsistency, ValidationError


class Lex(tuple):
    """An element of the lexicographically ordered group of rational triples."""

    __slots__ = ()

    def __new__(cls, first=0, second=0, third=0):
        return super().__new__(cls, (Fraction(first), Fraction(second), Fraction(third)))

    def __add__(self, other):
        if not isinstance(other, Lex):
            return NotImplemented
        return Lex(self[0] + other[0], self[1] + other[1], self[2] + other[2])

    def __sub__(self, other):
        if not isinstance(other, Lex):
            return NotImplemented
        return Lex(self[0] - other[0], self[1] - other[1], self[2] - other[2])

    def __neg__(self):
        return Lex(-self[0], -self[1], -self[2])

    def __mul__(self, other):
        # tuple repetition would silently produce a 6-tuple
        return NotImplemented

    __rmul__ = __mul__

    def pi(self, k: int) -> Fraction:
        """Projection onto component ``k`` (1, 2 or 3); a group homomorphism."""
        return self[k - 1]

    def __repr__(self):
        return "Lex(%s)" % ", ".join(str(c) for c in self)

    def __str__(self):
        return "(%s)" % ",".join(str(c) for c in self)


@dataclass(frozen=True)
class ValueGroup:
    """Descriptor for one of the supported value groups."""

    name: str
    zero: object

    def parse(self, text) -> object:
        if self.name == "rat":
            return parse_rational(text)
        return parse_lex(text)

    def format(self, value) -> str:
        return str(value)


RAT = ValueGroup("rat", Fraction(0))
LEX = ValueGroup("lex", Lex())


def group_of(value) -> ValueGroup:
    return LEX if isinstance(value, Lex) else RAT


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, an integer or a decimal string exactly."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool) or isinstance(text, float):
        raise ValidationError("refusing inexact numeric input %r; pass a string" % (text,))
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError("not a rational number: %r" % (text,)) from exc


def parse_lex(text) -> Lex:
    """Parse ``"(a,b,c)"`` (or a plain rational, embedded as ``(a,0,0)``)."""
    if isinstance(text, Lex):
        return text
    if isinstance(text, (tuple, list)):
        if len(text) != 3:
            raise ValidationError("lex triple needs 3 components: %r" % (text,))
        return Lex(*(parse_rational(c) for c in text))
    s = str(text).strip()
    if s.startswith("(") and s.endswith(")"):
        parts = s[1:-1].split(",")
        if len(parts) != 3:
            raise ValidationError("lex triple needs 3 components: %r" % (text,))
        return Lex(*(parse_rational(p) for p in parts))
    return Lex(parse_rational(s))


def coerce(value):
    """Turn user input into a group element (Fraction or Lex)."""
    if isinstance(value, (Lex, Fraction)):
        return value
    if isinstance(value, (tuple, list)):
        return parse_lex(value)
    if isinstance(value, str) and value.strip().startswith("("):
        return parse_lex(value)
    return parse_rational(value)


# -- tropical scalars --------------------------------------------------------

class _Bottom:
    """The tropical zero, below every group element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    __str__ = __repr__

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()


def tplus(x, y):
    """Tropical addition: the maximum, with BOTTOM as neutral element."""
    if x is BOTTOM:
        return y
    if y is BOTTOM:
        return x
    return x if x >= y else y


def ttimes(x, y):
    """Tropical multiplication: the group law, with BOTTOM absorbing."""
    if x is BOTTOM or y is BOTTOM:
        return BOTTOM
    return x + y


def tinv(x):
    """Tropical inverse of a finite scalar."""
    if x is BOTTOM:
        raise ValueError("BOTTOM has no tropical inverse")
    return -x


def tleq(x, y) -> bool:
    if x is BOTTOM:
        return True
    if y is BOTTOM:
        return False
    return x <= y


# -- projective points -------------------------------------------------------

class ProjectivePoint:
    """A point of tropical projective space, stored with first coordinate zero.

    Accepts any iterable of group elements, ints or rational strings.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        values = tuple(coerce(c) for c in coords)
        if len(values) < 2:
            raise DimensionError("projective points need dimension n >= 2")
        kinds = {type(v) for v in values}
        if len(kinds) != 1:
            raise ValidationError("mixed value groups in one point: %r" % (values,))
        shift = values[0]
        object.__setattr__(self, "coords", tuple(v - shift for v in values))

    def __setattr__(self, name, value):
        raise AttributeError("ProjectivePoint is immutable")

    @property
    def group(self) -> ValueGroup:
        return group_of(self.coords[0])

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.coords == other.coords

    def __lt__(self, other):
        return self.coords < other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "ProjectivePoint((%s))" % ", ".join(str(c) for c in self.coords)

    def project(self, k: int) -> "ProjectivePoint":
        """Component-wise projection of a lex point onto rationals."""
        return ProjectivePoint(c.pi(k) for c in self.coords)


def point(*coords) -> ProjectivePoint:
    """Shorthand: ``point(0, 1, 3)``."""
    if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction, Lex)):
        coords = tuple(coords[0])
    return ProjectivePoint(coords)


def check_dims(*points: ProjectivePoint) -> int:
    dims = {len(p) for p in points}
    if len(dims) != 1:
        raise DimensionError("points of different dimensions: %s" % sorted(dims))
    return dims.pop()


# -- permanents ---------------------------------------------------------------

def _square(U) -> list[list]:
    rows = [list(r) for r in U]
    k = len(rows)
    if k == 0 or any(len(r) != k for r in rows):
        raise DimensionError("expected a non-empty square matrix, got %d rows of lengths %s"
                             % (k, [len(r) for r in rows]))
    for r in rows:
        for x in r:
            if x is BOTTOM:
                raise ValidationError("BOTTOM entries are not allowed in matrices")
    return rows


def tperm_with_count(U) -> tuple[object, int]:
    """Tropical permanent of ``U`` and the number of permutations attaining it.

    Dynamic programming over subsets of columns: ``best[mask]`` is the optimal
    partial assignment of the first ``popcount(mask)`` rows to ``mask``.
    """
    rows = _square(U)
    k = len(rows)
    best = {0: (None, 1)}
    for mask in range(1 << k):
        if mask not in best:
            continue
        value, ways = best[mask]
        i = bin(mask).count("1")
        if i == k:
            continue
        for c in range(k):
            bit = 1 << c
            if mask & bit:
                continue
            v = rows[i][c] if value is None else value + rows[i][c]
            nxt = mask | bit
            cur = best.get(nxt)
            if cur is None or v > cur[0]:
                best[nxt] = (v, ways)
            elif v == cur[0]:
                best[nxt] = (v, cur[1] + ways)
    return best[(1 << k) - 1]


def tperm(U):
    """Tropical permanent: max over permutations of the sum of selected entries."""
    return tperm_with_count(U)[0]


def is_tropically_singular(U) -> bool:
    """True when the permanent's maximum is attained by at least two permutations."""
    return tperm_with_count(U)[1] >= 2


def optimal_permutation(U) -> tuple[int, ...] | None:
    """The maximizing permutation when it is unique, else ``None``."""
    rows = _square(U)
    top, ways = tperm_with_count(rows)
    if ways != 1:
        return None
    k = len(rows)
    for sigma in itertools.permutations(range(k)):
        if _perm_sum(rows, sigma) == top:
            return sigma
    raise InternalInconsistency("no permutation attains the computed permanent")


def _perm_sum(rows, sigma):
    total = rows[0][sigma[0]]
    for i in range(1, len(sigma)):
        total = total + rows[i][sigma[i]]
    return total


def generator_matrix(points: Sequence[ProjectivePoint]) -> list[list]:
    """The n x p matrix whose columns are the given points."""
    n = check_dims(*points)
    return [[p[i] for p in points] for i in range(n)]


def in_general_position(points: Sequence[ProjectivePoint]) -> bool:
    """Every square submatrix of the generator matrix is tropically non-singular."""
    if not points:
        return True
    M = generator_matrix(points)
    n, p = len(M), len(points)
    for k in range(2, min(n, p) + 1):
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(p), k):
                sub = [[M[i][c] for c in cols] for i in rows]
                if is_tropically_singular(sub):
                    return False
    return True


# -- sectors and half-spaces --------------------------------------------------

def sector_contains(a: ProjectivePoint, i: int, x: ProjectivePoint) -> bool:
    """Is ``x`` in the closed sector S(a, i)?"""
    check_dims(a, x)
    lead = x[i] - a[i]
    return all(x[j] - a[j] <= lead for j in range(len(a)))


@dataclass(frozen=True)
class TropicalHalfSpace:
    """The tropical half-space H(apex, indices): a union of sectors of the apex."""

    apex: ProjectivePoint
    indices: frozenset

    def __post_init__(self):
        idx = frozenset(self.indices)
        n = len(self.apex)
        if not idx or len(idx) >= n or any(not 0 <= i < n for i in idx):
            raise ValidationError("half-space index set must be a non-empty proper subset "
                                  "of range(%d), got %s" % (n, sorted(idx)))
        object.__setattr__(self, "indices", idx)

    @property
    def complement(self) -> frozenset:
        return frozenset(range(len(self.apex))) - self.indices

    def sort_key(self):
        return (self.apex.coords, tuple(sorted(self.indices)))

    def _sides(self, x):
        check_dims(self.apex, x)
        diffs = [x[k] - self.apex[k] for k in range(len(x))]
        inside = max(diffs[k] for k in self.indices)
        outside = max(diffs[k] for k in self.complement)
        return inside, outside

    def contains(self, x: ProjectivePoint) -> bool:
        inside, outside = self._sides(x)
        return inside >= outside

    def on_boundary(self, x: ProjectivePoint) -> bool:
        inside, outside = self._sides(x)
        return inside == outside

    def __repr__(self):
        return "H(%s, %s)" % (list(map(str, self.apex.coords)), sorted(self.indices))


def halfspace(apex, indices) -> TropicalHalfSpace:
    if not isinstance(apex, ProjectivePoint):
        apex = ProjectivePoint(apex)
    return TropicalHalfSpace(apex, frozenset(indices))


def halfspace_contains(H: TropicalHalfSpace, x: ProjectivePoint) -> bool:
    by_max = H.contains(x)
    by_sectors = any(sector_contains(H.apex, i, x) for i in H.indices)
    if by_max != by_sectors:
        raise InternalInconsistency("half-space membership disagrees with its sector union "
                                    "for %r and %r" % (H, x))
    return by_max


def on_halfspace_boundary(H: TropicalHalfSpace, x: ProjectivePoint) -> bool:
    return H.on_boundary(x)
