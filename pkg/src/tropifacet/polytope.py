"""Tropical polytopes given by generators.

Types, cells, extreme points, purity, pseudovertices and the external
representation built from (I, j)-pseudovertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    ProjectivePoint,
    TropicalHalfSpace,
    check_dims,
    sector_contains,
)
from .errors import (
    BudgetExceeded,
    InternalInconsistency,
    PreconditionError,
    ValidationError,
)

TypeVector = tuple  # tuple of n frozensets of generator indices


class TropicalPolytope:
    """tconv of finitely many pairwise distinct points of tropical projective space."""

    def __init__(self, generators: Iterable):
        gens = tuple(g if isinstance(g, ProjectivePoint) else ProjectivePoint(g)
                     for g in generators)
        if not gens:
            raise ValidationError("a tropical polytope needs at least one generator")
        check_dims(*gens)
        if len({g.group for g in gens}) != 1:
            raise ValidationError("generators mix value groups")
        seen = {}
        for r, g in enumerate(gens):
            if g in seen:
                raise ValidationError("generators %d and %d coincide: %r" % (seen[g], r, g))
            seen[g] = r
        self.generators = gens

    @property
    def n(self) -> int:
        return len(self.generators[0])

    @property
    def p(self) -> int:
        return len(self.generators)

    @property
    def group(self):
        return self.generators[0].group

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, r):
        return self.generators[r]

    def __eq__(self, other):
        return isinstance(other, TropicalPolytope) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return "TropicalPolytope(%r)" % (list(self.generators),)

    def without(self, r: int) -> "TropicalPolytope":
        return TropicalPolytope(g for s, g in enumerate(self.generators) if s != r)

    def __contains__(self, x):
        return contains(self, x)


def _as_point(x) -> ProjectivePoint:
    return x if isinstance(x, ProjectivePoint) else ProjectivePoint(x)


def project_onto(P: TropicalPolytope, x) -> ProjectivePoint:
    """Greatest point of P below x (tropical residuation).

    The result lies in P and equals x exactly when x is in P.
    """
    x = _as_point(x)
    check_dims(P[0], x)
    n = len(x)
    lams = [min(x[i] - v[i] for i in range(n)) for v in P]
    return ProjectivePoint(max(lam + v[i] for lam, v in zip(lams, P)) for i in range(n))


def contains(P: TropicalPolytope, x) -> bool:
    x = _as_point(x)
    return project_onto(P, x) == x


def type_of(P: TropicalPolytope, a) -> TypeVector:
    """S(a): for each sector of a, the indices of generators lying in it."""
    a = _as_point(a)
    check_dims(P[0], a)
    n = len(a)
    sets = [set() for _ in range(n)]
    for r, v in enumerate(P):
        diffs = [v[i] - a[i] for i in range(n)]
        top = max(diffs)
        for i in range(n):
            if diffs[i] == top:
                sets[i].add(r)
    return tuple(frozenset(s) for s in sets)


def _components(n: int, edges) -> int:
    parent = list(range(n))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    count = n
    for u, w in edges:
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[ru] = rw
            count -= 1
    return count


def cell_dimension(S: TypeVector) -> int:
    """Dimension of the cell X_S: components of the sector-overlap graph, minus one."""
    n = len(S)
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if S[i] & S[j]]
    return _components(n, edges) - 1


# -- extreme points -----------------------------------------------------------

@dataclass(frozen=True)
class ExtremePointReport:
    """Extremality types per generator; an empty set means not extreme."""

    types: tuple

    @property
    def extreme(self) -> tuple:
        return tuple(bool(t) for t in self.types)

    def extreme_indices(self) -> list[int]:
        return [r for r, t in enumerate(self.types) if t]

    def multi_type(self) -> list[int]:
        return [r for r, t in enumerate(self.types) if len(t) > 1]


def extreme_points(P: TropicalPolytope) -> ExtremePointReport:
    """Extremality types of every generator.

    Generator r is extreme of type i when no other generator lies in its
    i-th sector.  The resulting flag is cross-checked against membership of
    v^r in the polytope spanned by the remaining generators.
    """
    n = P.n
    types = []
    for r, v in enumerate(P):
        t = frozenset(i for i in range(n)
                      if not any(sector_contains(v, i, w) for s, w in enumerate(P) if s != r))
        if P.p > 1:
            redundant = contains(P.without(r), v)
            if redundant == bool(t):
                raise InternalInconsistency(
                    "generator %d: sector test says extreme=%s but membership test says "
                    "redundant=%s" % (r, bool(t), redundant))
        types.append(t)
    return ExtremePointReport(tuple(types))


def is_pure(P: TropicalPolytope, report: ExtremePointReport | None = None) -> bool:
    """Pure iff every extreme point has exactly one extremality type."""
    report = report or extreme_points(P)
    return all(len(t) <= 1 for t in report.types)


def require_pure(P: TropicalPolytope, report: ExtremePointReport | None = None):
    report = report or extreme_points(P)
    bad = report.multi_type()
    if bad:
        r = bad[0]
        raise PreconditionError(
            "polytope is not pure: generator %d (%r) is extreme of types %s"
            % (r, P[r], sorted(report.types[r])))
    return report


# -- pseudovertices -----------------------------------------------------------

def _tight_connected(P, a, known) -> bool:
    """Is the graph on ``known`` linking coordinates where a generator's
    maximum over ``known`` is attained connected?"""
    if len(known) == 1:
        return True
    index = {k: pos for pos, k in enumerate(known)}
    edges = []
    for v in P:
        diffs = [(v[k] - a[k], k) for k in known]
        top = max(d for d, _ in diffs)
        arg = [index[k] for d, k in diffs if d == top]
        edges.extend((arg[0], other) for other in arg[1:])
    return _components(len(known), edges) == 1


def enumerate_pseudovertices(P: TropicalPolytope, max_states: int = 2_000_000,
                             max_n: int = 6, max_p: int = 16) -> list[ProjectivePoint]:
    """All zero-dimensional cells of the cell decomposition induced by P.

    A pseudovertex a has a connected type graph, so it is pinned down by a
    spanning tree of edges {i, j} each labelled by a generator r with
    a_j - a_i = v^r_j - v^r_i.  The trees are grown from coordinate 0 one
    coordinate at a time; a partial assignment is kept only while the
    generators' maxima over the assigned coordinates still connect them.
    """
    n, p = P.n, P.p
    if n > max_n or p > max_p:
        raise BudgetExceeded("pseudovertex enumeration limited to n <= %d, p <= %d"
                             % (max_n, max_p), n=n, p=p)
    zero = P.group.zero
    start = (zero,) + (None,) * (n - 1)
    seen = {start}
    stack = [start]
    found = set()
    while stack:
        a = stack.pop()
        known = [k for k in range(n) if a[k] is not None]
        if len(known) == n:
            found.add(ProjectivePoint(a))
            continue
        unknown = [k for k in range(n) if a[k] is None]
        for v in P:
            top = max(v[k] - a[k] for k in known)
            for j in unknown:
                b = list(a)
                b[j] = v[j] - top
                b = tuple(b)
                if b in seen:
                    continue
                seen.add(b)
                if len(seen) > max_states:
                    raise BudgetExceeded("pseudovertex search exceeded %d states" % max_states,
                                         states=len(seen), found=len(found))
                if _tight_connected(P, b, known + [j]):
                    stack.append(b)
    result = sorted(found)
    for a in result:
        if cell_dimension(type_of(P, a)) != 0:
            raise InternalInconsistency("enumerated point %r is not a pseudovertex" % (a,))
    return result


# -- (I, j)-pseudovertices and the external representation --------------------

def _check_Ij(n, I, j):
    I = frozenset(I)
    if not I or len(I) >= n or any(not 0 <= i < n for i in I):
        raise ValidationError("I must be a non-empty proper subset of range(%d), got %s"
                              % (n, sorted(I)))
    if not 0 <= j < n or j in I:
        raise ValidationError("j must be an index outside I, got j=%r, I=%s" % (j, sorted(I)))
    return I


def satisfies_Ij(S: TypeVector, p: int, I, j) -> bool:
    """Covering (i), linking (ii) and tightness (iii) conditions on a type."""
    n = len(S)
    I = _check_Ij(n, I, j)
    covered = frozenset().union(*(S[i] for i in I))
    if len(covered) != p:
        return False
    for k in range(n):
        if k not in I and not any(S[i] & S[k] for i in I):
            return False
    for i in I:
        others = frozenset().union(*(S[h] for h in I if h != i))
        if (S[i] & S[j]) <= others:
            return False
    return True


def is_Ij_pseudovertex(P: TropicalPolytope, a, I, j) -> bool:
    return satisfies_Ij(type_of(P, a), P.p, I, j)


def proper_subsets(n: int):
    for size in range(1, n):
        for I in itertools.combinations(range(n), size):
            yield frozenset(I)


@dataclass(frozen=True)
class IjCertificate:
    apex: ProjectivePoint
    I: frozenset
    j: int

    @property
    def halfspace(self) -> TropicalHalfSpace:
        return TropicalHalfSpace(self.apex, self.I)


def ij_pseudovertices(P: TropicalPolytope,
                      pseudovertices: Sequence[ProjectivePoint] | None = None,
                      **budget) -> list[IjCertificate]:
    """Every (a, I, j) such that a is an (I, j)-pseudovertex, sorted."""
    if pseudovertices is None:
        pseudovertices = enumerate_pseudovertices(P, **budget)
    n, p = P.n, P.p
    out = []
    for a in pseudovertices:
        S = type_of(P, a)
        for I in proper_subsets(n):
            if len(frozenset().union(*(S[i] for i in I))) != p:
                continue
            for j in range(n):
                if j not in I and satisfies_Ij(S, p, I, j):
                    out.append(IjCertificate(a, I, j))
    out.sort(key=lambda c: (c.apex.coords, sorted(c.I), c.j))
    return out


def canonical_representation(P: TropicalPolytope,
                             certificates: Sequence[IjCertificate] | None = None,
                             **budget) -> list[TropicalHalfSpace]:
    """Half-spaces H(a, I) over all (I, j)-pseudovertices a of a pure polytope.

    Redundant members are reported, never removed.
    """
    require_pure(P)
    if certificates is None:
        certificates = ij_pseudovertices(P, **budget)
    spaces = {c.halfspace for c in certificates}
    result = sorted(spaces, key=TropicalHalfSpace.sort_key)
    for H in result:
        for r, v in enumerate(P):
            if not H.contains(v):
                raise InternalInconsistency("%r misses generator %d" % (H, r))
    return result


def witness_extreme_points(P: TropicalPolytope, a, I, j,
                           report: ExtremePointReport | None = None) -> dict[int, int]:
    """For k != j, an extreme generator r_k on the boundary of H(a, I).

    For k outside I and j: r_k is extreme of type k and lies in S_k(a).
    For i in I: r_i is extreme of type j and lies in S_i(a) & S_j(a) but in
    no other sector S_h(a), h in I.  Ties are broken by smallest index.
    """
    a = _as_point(a)
    report = require_pure(P, report)
    I = _check_Ij(P.n, I, j)
    S = type_of(P, a)
    if not satisfies_Ij(S, P.p, I, j):
        raise PreconditionError("%r is not an (I, j)-pseudovertex for I=%s, j=%d"
                                % (a, sorted(I), j))
    witnesses = {}
    for k in range(P.n):
        if k == j:
            continue
        if k in I:
            others = frozenset().union(*(S[h] for h in I if h != k))
            pool, kind = (S[k] & S[j]) - others, j
        else:
            pool, kind = S[k], k
        choice = [r for r in sorted(pool) if kind in report.types[r]]
        if not choice:
            raise InternalInconsistency("no witness extreme point for k=%d at %r" % (k, a))
        witnesses[k] = choice[0]
    H = TropicalHalfSpace(a, I)
    if len(set(witnesses.values())) != len(witnesses):
        raise InternalInconsistency("witnesses are not pairwise distinct: %s" % witnesses)
    for k, r in witnesses.items():
        if not H.on_boundary(P[r]):
            raise InternalInconsistency("witness %d for k=%d is off the boundary of %r"
                                        % (r, k, H))
    return witnesses
