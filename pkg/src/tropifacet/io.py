"""JSON instance files and JSON renderings of results.

Indices are 0-based inside the library and 1-based in every JSON document.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .core import Lex, ProjectivePoint, TropicalHalfSpace, parse_rational
from .errors import ValidationError
from .lift import Facet, LiftedCone
from .perturbation import VerificationReport, project_halfspace
from .polytope import IjCertificate, TropicalPolytope
from .series import Series, format_series, parse_series

SCHEMA = 1
_KEYS = {"schema", "name", "description", "dimension", "generators", "lift", "seed"}


@dataclass(frozen=True)
class InstanceFile:
    dimension: int
    generators: tuple  # p rows of n Fractions
    lift: tuple | None = None  # p rows of n series strings
    seed: int | None = None
    name: str = ""
    description: str = ""

    def polytope(self) -> TropicalPolytope:
        return TropicalPolytope(self.generators)

    def lift_series(self) -> tuple | None:
        if self.lift is None:
            return None
        return tuple(tuple(parse_series(s) for s in row) for row in self.lift)


def format_rational(q: Fraction) -> str:
    """Exact decimal text when the denominator divides a power of ten, else ``p/q``."""
    q = Fraction(q)
    d, twos, fives = q.denominator, 0, 0
    while d % 2 == 0:
        d, twos = d // 2, twos + 1
    while d % 5 == 0:
        d, fives = d // 5, fives + 1
    if d != 1:
        return str(q)
    if q.denominator == 1:
        return str(q.numerator)
    digits = max(twos, fives)
    scaled = abs(q.numerator) * (10 ** digits // q.denominator)
    whole, frac = divmod(scaled, 10 ** digits)
    sign = "-" if q < 0 else ""
    return "%s%d.%s" % (sign, whole, str(frac).rjust(digits, "0").rstrip("0"))


def _field_error(where: str, msg: str) -> ValidationError:
    return ValidationError("%s: %s" % (where, msg))


def instance_from_dict(data, source: str = "instance") -> InstanceFile:
    if not isinstance(data, dict):
        raise _field_error(source, "top level must be a JSON object")
    unknown = sorted(set(data) - _KEYS)
    if unknown:
        raise _field_error("%s.%s" % (source, unknown[0]),
                           "unknown field(s) %s" % ", ".join(unknown))
    if data.get("schema", SCHEMA) != SCHEMA:
        raise _field_error(source + ".schema", "unsupported schema %r" % (data["schema"],))
    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise _field_error(source + ".generators", "need a non-empty list of points")
    n = data.get("dimension", len(gens[0]) if isinstance(gens[0], list) else None)
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise _field_error(source + ".dimension", "need an integer >= 2, got %r" % (n,))
    rows = []
    for r, row in enumerate(gens):
        where = "%s.generators[%d]" % (source, r)
        if not isinstance(row, list) or len(row) != n:
            raise _field_error(where, "need a list of %d coordinates" % n)
        vals = []
        for i, c in enumerate(row):
            if not isinstance(c, (str, int)) or isinstance(c, bool):
                raise _field_error("%s[%d]" % (where, i),
                                   "coordinates must be strings or integers, got %r" % (c,))
            try:
                vals.append(parse_rational(c))
            except ValidationError as exc:
                raise _field_error("%s[%d]" % (where, i), str(exc)) from None
        rows.append(tuple(vals))
    seen = {}
    for r, row in enumerate(rows):
        key = ProjectivePoint(row)
        if key in seen:
            raise _field_error(source + ".generators",
                               "generators %d and %d coincide" % (seen[key] + 1, r + 1))
        seen[key] = r
    lift = data.get("lift")
    if lift is not None:
        if not isinstance(lift, list) or len(lift) != len(rows):
            raise _field_error(source + ".lift", "need %d rows" % len(rows))
        checked = []
        for r, row in enumerate(lift):
            where = "%s.lift[%d]" % (source, r)
            if not isinstance(row, list) or len(row) != n:
                raise _field_error(where, "need a list of %d series strings" % n)
            for i, s in enumerate(row):
                try:
                    parse_series(str(s))
                except ValidationError as exc:
                    raise _field_error("%s[%d]" % (where, i), str(exc)) from None
            checked.append(tuple(str(s) for s in row))
        lift = tuple(checked)
    seed = data.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise _field_error(source + ".seed", "need an integer, got %r" % (seed,))
    return InstanceFile(n, tuple(rows), lift, seed,
                        str(data.get("name", "")), str(data.get("description", "")))


def parse_instance(text: str, source: str = "instance") -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("%s: invalid JSON at line %d, column %d: %s"
                              % (source, exc.lineno, exc.colno, exc.msg)) from None
    return instance_from_dict(data, source)


def load_instance(path) -> InstanceFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError("%s: %s" % (path, exc.strerror)) from None
    return parse_instance(text, str(path))


def instance_to_dict(inst: InstanceFile) -> dict:
    out = {"schema": SCHEMA}
    if inst.name:
        out["name"] = inst.name
    if inst.description:
        out["description"] = inst.description
    out["dimension"] = inst.dimension
    out["generators"] = [[format_rational(c) for c in row] for row in inst.generators]
    if inst.lift is not None:
        out["lift"] = [list(row) for row in inst.lift]
    if inst.seed is not None:
        out["seed"] = inst.seed
    return out


def serialize_instance(inst: InstanceFile) -> str:
    return dumps(instance_to_dict(inst))


def instance_from_polytope(P: TropicalPolytope, name: str = "", **extra) -> InstanceFile:
    return InstanceFile(P.n, tuple(tuple(v) for v in P), name=name, **extra)


# -- result rendering ------------------------------------------------------------

def value_json(x) -> str:
    return str(x)


def point_json(a: ProjectivePoint) -> list:
    return [value_json(c) for c in a]


def halfspace_json(H: TropicalHalfSpace) -> dict:
    return {"apex": point_json(H.apex), "I": sorted(i + 1 for i in H.indices)}


def certificate_json(c: IjCertificate) -> dict:
    return {"apex": point_json(c.apex), "I": sorted(i + 1 for i in c.I), "j": c.j + 1}


def types_json(S) -> list:
    return [sorted(r + 1 for r in s) for s in S]


def series_json(x: Series) -> str:
    return format_series(x)


def lift_json(L: LiftedCone) -> list:
    return [[series_json(x) for x in row] for row in L.generators]


def facet_json(F: Facet, H: TropicalHalfSpace) -> dict:
    out = {"support": [r + 1 for r in F.support],
           "normal": [series_json(x) for x in F.normal],
           "tropical_halfspace": halfspace_json(H)}
    if isinstance(H.apex[0], Lex):
        out["projected_halfspace"] = halfspace_json(project_halfspace(H))
    return out


def report_json(R: VerificationReport, timing: bool = False) -> dict:
    """JSON form of a pipeline report; stage timings only when ``timing``."""
    failure = dict(R.failure)
    cert = failure.get("certificate")
    if isinstance(cert, TropicalHalfSpace):
        failure["certificate"] = halfspace_json(cert)
    elif isinstance(cert, IjCertificate):
        failure["certificate"] = certificate_json(cert)
    elif isinstance(cert, Facet):
        failure["certificate"] = {"support": [r + 1 for r in cert.support],
                                  "normal": [series_json(x) for x in cert.normal]}
    out = {
        "schema": SCHEMA,
        "passed": R.passed,
        "seed": R.seed,
        "stages": [],
    }
    for s in R.stages:
        stage = {"name": s.name, "passed": s.passed, "detail": s.detail}
        if timing:
            stage["seconds"] = round(s.seconds, 6)
        out["stages"].append(stage)
    if R.scheme is not None:
        out["gammas"] = [list(g) for g in R.scheme.gammas]
        out["types"] = [None if t is None else t + 1 for t in R.scheme.types]
    if R.perturbed is not None:
        out["perturbed_generators"] = [point_json(v) for v in R.perturbed]
    out["ij_pseudovertices"] = [certificate_json(c) for c in R.certificates]
    out["perturbed_representation"] = [halfspace_json(H) for H in R.perturbed_representation]
    out["facets"] = [facet_json(F, H) for F, H in zip(R.facets, R.lex_halfspaces)]
    out["projected_halfspaces"] = [halfspace_json(H) for H in
                                   sorted(set(R.projected_halfspaces),
                                          key=TropicalHalfSpace.sort_key)]
    if failure:
        out["failure"] = failure
    return out


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]", re.S)


def dumps(data: dict) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    text = json.dumps(data, indent=2, default=_default)
    text = _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
    return text + "\n"


def _default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, frozenset):
        return sorted(x)
    raise TypeError("not JSON serializable: %r" % (x,))
