"""Symbolic perturbation of pure polytopes into lex-triple space, and the
end-to-end check that facets of a lift represent the original polytope."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .core import Lex, ProjectivePoint, TropicalHalfSpace, in_general_position
from .errors import (
    BudgetExceeded,
    InternalInconsistency,
    TheoremViolation,
    ValidationError,
)
from .lift import canonical_lift, enumerate_facets, tropicalize_facet
from .polytope import (
    TropicalPolytope,
    canonical_representation,
    extreme_points,
    ij_pseudovertices,
    require_pure,
)
from .series import stabilized_projection


def _gp(vectors) -> bool:
    if len(vectors) < 2:
        return True
    return in_general_position([ProjectivePoint(v) for v in vectors])


def generate_gammas(p: int, n: int, seed: int = 0, max_attempts: int = 10_000):
    """``p`` integer n-vectors in tropical general position, by rejection sampling.

    Entries are drawn uniformly from [-w, w]; the width w doubles every 20
    rejected draws.  Returns ``(gammas, attempts)``.
    """
    if p < 1 or n < 2:
        raise ValidationError("need p >= 1 and n >= 2, got p=%d, n=%d" % (p, n))
    rng = random.Random(seed)
    width = max(4, p * n)
    for attempt in range(1, max_attempts + 1):
        gammas = tuple(tuple(rng.randint(-width, width) for _ in range(n)) for _ in range(p))
        if _gp(gammas):
            return gammas, attempt
        if attempt % 20 == 0:
            width *= 2
    raise BudgetExceeded("no general-position gammas after %d attempts" % max_attempts,
                         attempts=max_attempts)


@dataclass(frozen=True)
class PerturbationScheme:
    """Second-order offsets ``gammas[r]`` and first-order types ``types[r]``.

    ``types[r]`` is the unique extremality type of generator r, or None when
    r is not extreme.
    """

    gammas: tuple
    types: tuple
    attempts: int = 1

    def __post_init__(self):
        if len(self.gammas) != len(self.types):
            raise ValidationError("%d gammas for %d generators"
                                  % (len(self.gammas), len(self.types)))
        if len({ProjectivePoint(g) for g in self.gammas}) != len(self.gammas):
            raise ValidationError("gammas are not pairwise distinct")
        if not _gp(self.gammas):
            raise ValidationError("gammas are not in tropical general position")

    @classmethod
    def for_polytope(cls, P: TropicalPolytope, seed: int = 0) -> "PerturbationScheme":
        report = require_pure(P)
        gammas, attempts = generate_gammas(P.p, P.n, seed)
        types = tuple(next(iter(t)) if t else None for t in report.types)
        return cls(gammas, types, attempts)


class ResampleRequired(InternalInconsistency):
    """Perturbed generators came out of general position; draw new gammas."""


def perturb(P: TropicalPolytope, scheme: PerturbationScheme) -> TropicalPolytope:
    """Generator r becomes ``(v^r, e^i, gamma^r)`` if extreme of type i, else ``(v^r, 0, gamma^r)``."""
    report = require_pure(P)
    expected = tuple(next(iter(t)) if t else None for t in report.types)
    if scheme.types != expected:
        raise ValidationError("scheme types %s disagree with the polytope's %s"
                              % (scheme.types, expected))
    if len(scheme.gammas) != P.p or any(len(g) != P.n for g in scheme.gammas):
        raise ValidationError("scheme shape does not match the polytope")
    gens = []
    for v, i, g in zip(P, scheme.types, scheme.gammas):
        gens.append(ProjectivePoint(Lex(v[k], 1 if k == i else 0, g[k]) for k in range(P.n)))
    Pt = TropicalPolytope(gens)
    for r, w in enumerate(Pt):
        if w.project(1) != P[r]:
            raise InternalInconsistency("first projection of generator %d changed" % r)
    if not in_general_position(list(Pt)):
        raise ResampleRequired("perturbed generators are not in general position")
    return Pt


@dataclass(frozen=True)
class LemmaReport:
    types_original: tuple
    types_perturbed: tuple
    types_preserved: bool
    perturbed_pure: bool

    @property
    def passed(self) -> bool:
        return self.types_preserved and self.perturbed_pure


def check_perturbation_lemmas(P: TropicalPolytope, Pt: TropicalPolytope) -> LemmaReport:
    """Extremality types survive the perturbation and the result is pure."""
    before = extreme_points(P).types
    after = extreme_points(Pt).types
    report = LemmaReport(before, after, before == after, all(len(t) <= 1 for t in after))
    if not report.passed:
        raise TheoremViolation("perturbation changed extremality: %s -> %s"
                               % (before, after), report)
    return report


def check_pi2_apex(Pt: TropicalPolytope, apex: ProjectivePoint, I, j) -> bool:
    """After shifting so coordinate j is 1, the second components of the apex
    are 0 on I and 1 elsewhere."""
    del Pt  # the statement only concerns the apex
    second = [c.pi(2) for c in apex]
    shift = 1 - second[j]
    return all(second[k] + shift == (0 if k in I else 1) for k in range(len(second)))


def project_halfspace(H: TropicalHalfSpace) -> TropicalHalfSpace:
    """First-component image of a lex half-space; identity on rational ones."""
    if not isinstance(H.apex[0], Lex):
        return H
    return TropicalHalfSpace(H.apex.project(1), H.indices)


@dataclass(frozen=True)
class Stage:
    name: str
    passed: bool
    seconds: float
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    """Every intermediate artifact of the pipeline plus per-stage outcomes."""

    polytope: TropicalPolytope
    seed: int
    stages: tuple
    scheme: PerturbationScheme | None = None
    perturbed: TropicalPolytope | None = None
    certificates: tuple = ()
    perturbed_representation: tuple = ()
    facets: tuple = ()
    lex_halfspaces: tuple = ()
    projected_halfspaces: tuple = ()
    failure: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.stages) and all(s.passed for s in self.stages)


class _Fail(Exception):
    def __init__(self, detail, certificate):
        super().__init__(detail)
        self.certificate = certificate


def theorem_pipeline(P: TropicalPolytope, seed: int = 0, resamples: int = 20,
                     check_instantiation: bool = False, **budget) -> VerificationReport:
    """Perturb, lift canonically, enumerate facets and check that their
    tropicalizations contain the projected canonical representation.

    Raises PreconditionError if P is not pure.  Any later failure is reported
    in the returned object with the failing certificate.
    """
    require_pure(P)
    stages = []
    art: dict = {}

    def run(name, fn):
        t0 = time.perf_counter()
        try:
            detail = fn() or ""
        except _Fail as exc:
            stages.append(Stage(name, False, time.perf_counter() - t0, str(exc)))
            art["failure"] = {"stage": name, "detail": str(exc), "certificate": exc.certificate}
            return False
        except (TheoremViolation, InternalInconsistency) as exc:
            stages.append(Stage(name, False, time.perf_counter() - t0, str(exc)))
            art["failure"] = {"stage": name, "detail": str(exc), "certificate": None}
            return False
        stages.append(Stage(name, True, time.perf_counter() - t0, detail))
        return True

    def do_perturb():
        for k in range(resamples):
            scheme = PerturbationScheme.for_polytope(P, seed + 7919 * k)
            try:
                art["perturbed"] = perturb(P, scheme)
            except ResampleRequired:
                continue
            art["scheme"] = scheme
            return "resamples=%d" % k
        raise BudgetExceeded("no general-position perturbation after %d schemes" % resamples,
                             schemes=resamples)

    def do_lemmas():
        check_perturbation_lemmas(P, art["perturbed"])

    def do_representation():
        Pt = art["perturbed"]
        certs = ij_pseudovertices(Pt, **budget)
        art["certificates"] = tuple(certs)
        art["perturbed_representation"] = tuple(canonical_representation(Pt, certs))
        for c in certs:
            if not check_pi2_apex(Pt, c.apex, c.I, c.j):
                raise _Fail("second components of apex violate the 0/1 pattern", c)
        return "%d half-spaces" % len(art["perturbed_representation"])

    def do_facets():
        facets = enumerate_facets(canonical_lift(art["perturbed"]))
        art["facets"] = tuple(facets)
        art["lex_halfspaces"] = tuple(tropicalize_facet(F, keep_lex=True) for F in facets)
        art["projected_halfspaces"] = tuple(tropicalize_facet(F) for F in facets)
        for H, Hl in zip(art["projected_halfspaces"], art["lex_halfspaces"]):
            if H != project_halfspace(Hl):
                raise InternalInconsistency("series projection and apex projection disagree")
        return "%d facets" % len(facets)

    def do_instantiation():
        for F in art["facets"]:
            for i, f in enumerate(F.normal):
                s, v, _ = stabilized_projection(f)
                sign, val = f.sign(), f.valuation().pi(1)
                if (s, v) != (sign, val):
                    raise _Fail("numeric instantiation disagrees at coordinate %d" % i, F)

    def do_containment():
        lex = set(art["lex_halfspaces"])
        proj = set(art["projected_halfspaces"])
        for H in art["perturbed_representation"]:
            if H not in lex:
                raise _Fail("perturbed representation member is not a facet", H)
            if project_halfspace(H) not in proj:
                raise _Fail("projected member is not a tropicalized facet", project_halfspace(H))

    def do_generators():
        for H in art["projected_halfspaces"]:
            for r, v in enumerate(P):
                if not H.contains(v):
                    raise _Fail("tropicalized facet misses generator %d" % r, H)

    plan = [("perturb", do_perturb), ("lemmas", do_lemmas),
            ("representation", do_representation), ("facets", do_facets)]
    if check_instantiation:
        plan.append(("instantiation", do_instantiation))
    plan += [("containment", do_containment), ("generators", do_generators)]
    for name, fn in plan:
        if not run(name, fn):
            break
    return VerificationReport(
        polytope=P, seed=seed, stages=tuple(stages),
        scheme=art.get("scheme"), perturbed=art.get("perturbed"),
        certificates=art.get("certificates", ()),
        perturbed_representation=art.get("perturbed_representation", ()),
        facets=art.get("facets", ()),
        lex_halfspaces=art.get("lex_halfspaces", ()),
        projected_halfspaces=art.get("projected_halfspaces", ()),
        failure=art.get("failure", {}),
    )


def projected_representation(report: VerificationReport) -> list[TropicalHalfSpace]:
    """Distinct first-component images of the perturbed canonical representation."""
    return sorted({project_halfspace(H) for H in report.perturbed_representation},
                  key=TropicalHalfSpace.sort_key)

