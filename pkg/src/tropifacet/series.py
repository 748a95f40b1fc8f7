"""Real Hahn series with finite support.

A :class:`Series` is a finite sum ``sum c_e t^e`` with rational coefficients
and exponents in a value group (rationals or :class:`~tropifacet.core.Lex`).
The order is the one making ``t`` a positive infinitesimal: the sign of a
series is the sign of the coefficient at its least exponent, and the
valuation is minus that exponent.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Sequence

from .core import BOTTOM, LEX, RAT, Lex, ValueGroup, coerce, parse_rational
from .errors import BudgetExceeded, DimensionError, PreconditionError, ValidationError


class Series:
    """Immutable finite-support Hahn series."""

    __slots__ = ("_terms", "_sorted")

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict = {}
        for e, c in items:
            if not isinstance(c, Fraction):
                c = Fraction(c)
            if c:
                acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c}
        self._sorted = None

    @classmethod
    def _raw(cls, terms: dict) -> "Series":
        # terms already hold non-zero Fraction coefficients
        x = cls.__new__(cls)
        x._terms = terms
        x._sorted = None
        return x

    @property
    def _key(self) -> tuple:
        if self._sorted is None:
            self._sorted = tuple(sorted(self._terms.items()))
        return self._sorted

    # -- structure
    @property
    def terms(self) -> tuple:
        """``(exponent, coefficient)`` pairs by increasing exponent."""
        return self._key

    @property
    def support(self) -> tuple:
        return tuple(e for e, _ in self._key)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, e) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series.constant(other, self._group())
        if not isinstance(other, Series):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def _group(self) -> ValueGroup:
        if self._key and isinstance(self._key[0][0], Lex):
            return LEX
        return RAT

    # -- ring operations
    def _lift(self, other):
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction)):
            return Series.constant(other, self._group())
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        merged = dict(self._terms)
        for e, c in other._terms.items():
            total = merged.get(e, 0) + c
            if total:
                merged[e] = total
            else:
                del merged[e]
        return Series._raw(merged)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, Series):
            return NotImplemented
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return Series._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    # -- valuation and order
    def leading(self):
        """``(exponent, coefficient)`` at the least exponent, or None for zero."""
        if not self._terms:
            return None
        if self._sorted is not None:
            return self._sorted[0]
        e = min(self._terms)
        return e, self._terms[e]

    def valuation(self):
        lead = self.leading()
        return BOTTOM if lead is None else -lead[0]

    def sign(self) -> int:
        lead = self.leading()
        if lead is None:
            return 0
        return 1 if lead[1] > 0 else -1

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # -- construction helpers
    @classmethod
    def constant(cls, c, group: ValueGroup = RAT) -> "Series":
        return cls({group.zero: c})

    def __repr__(self):
        return "Series(%r)" % format_series(self)

    def __str__(self):
        return format_series(self)


def monomial(e, c=1) -> Series:
    """``c * t^e``; the zero series when ``c == 0``."""
    return Series({coerce(e): c})


def valuation(x: Series):
    return x.valuation()


def sign(x: Series) -> int:
    return x.sign()


def dot(f: Sequence[Series], v: Sequence[Series]) -> Series:
    if len(f) != len(v):
        raise DimensionError("dot product of vectors of lengths %d and %d" % (len(f), len(v)))
    total = Series()
    for a, b in zip(f, v):
        total = total + a * b
    return total


def determinant(M: Sequence[Sequence[Series]], max_size: int = 6) -> Series:
    """Exact determinant by Laplace expansion with memoised minors.

    ``minors[mask]`` is the determinant of the first ``popcount(mask)`` rows
    restricted to the columns in ``mask``; no division is ever performed.
    """
    rows = [list(r) for r in M]
    k = len(rows)
    if k == 0 or any(len(r) != k for r in rows):
        raise DimensionError("determinant needs a non-empty square matrix")
    if k > max_size:
        raise BudgetExceeded("determinant limited to %dx%d matrices" % (max_size, max_size),
                             size=k)
    minors = {0: Series.constant(1, _group_of_matrix(rows))}
    for size in range(1, k + 1):
        row = rows[size - 1]
        level = {}
        for mask in _masks_of_size(k, size):
            total = Series()
            cols = [c for c in range(k) if mask >> c & 1]
            for pos, c in enumerate(cols):
                entry = row[c]
                if not entry:
                    continue
                term = entry * minors[mask & ~(1 << c)]
                # expansion along the last row of the (size x size) block
                total = total - term if (size - 1 + pos) % 2 else total + term
            level[mask] = total
        minors = level
    return minors[(1 << k) - 1]


def maximal_minors(vectors: Sequence[Sequence[Series]], max_size: int = 6) -> dict:
    """Determinants of every n x n submatrix of the matrix with the given columns.

    Keys are increasing column-index tuples.  One Laplace recursion over
    column subsets shares all smaller minors between the n x n ones.
    """
    cols = [list(v) for v in vectors]
    p = len(cols)
    n = len(cols[0]) if cols else 0
    if n > max_size:
        raise BudgetExceeded("minors limited to %dx%d" % (max_size, max_size), size=n)
    if p < n:
        return {}
    group = _group_of_matrix(cols)
    level = {(): Series.constant(1, group)}
    for size in range(1, n + 1):
        row = size - 1
        nxt = {}
        for subset in itertools.combinations(range(p), size):
            total = Series()
            for pos, c in enumerate(subset):
                entry = cols[c][row]
                if not entry:
                    continue
                term = entry * level[subset[:pos] + subset[pos + 1:]]
                total = total - term if (row + pos) % 2 else total + term
            nxt[subset] = total
        level = nxt
    return level


def _masks_of_size(k, size):
    for mask in range(1 << k):
        if bin(mask).count("1") == size:
            yield mask


def _group_of_matrix(rows) -> ValueGroup:
    for r in rows:
        for x in r:
            if x:
                return x._group()
    return RAT


# -- lex-exponent series --------------------------------------------------------

def project_series(x: Series) -> tuple[int, object]:
    """Sign and first-level valuation of a lex-exponent series.

    These are the sign and valuation of the rational-exponent series obtained
    by substituting sufficiently small ``0 < mu << nu << 1``.
    """
    v = x.valuation()
    return x.sign(), (BOTTOM if v is BOTTOM else v.pi(1))


def _integral(q: Fraction) -> bool:
    return q.denominator == 1


def instantiate(x: Series, mu, nu) -> Series:
    """Replace ``t^(a,b,c)`` by ``mu^b nu^c t^a``."""
    mu, nu = parse_rational(mu), parse_rational(nu)
    if not (0 < mu < 1 and 0 < nu < 1):
        raise PreconditionError("instantiate needs 0 < mu, nu < 1")
    out = []
    for e, c in x.terms:
        if not isinstance(e, Lex):
            raise PreconditionError("instantiate expects lex exponents, got %r" % (e,))
        if not (_integral(e[1]) and _integral(e[2])):
            raise PreconditionError("second and third exponent components must be integers: %s"
                                    % (e,))
        out.append((e[0], c * mu ** int(e[1]) * nu ** int(e[2])))
    return Series(out)


def _shrink_exponent(x: Series) -> int:
    thirds = [e[2] for e, _ in x.terms] or [0]
    return max(2, int(max(thirds) - min(thirds)) + 1)


def _first_safe_k(x: Series) -> int:
    # Terms sharing the leading t-power carry at least one extra factor of nu
    # after substitution, so nu < |c_lead| / sum|c_other| fixes the sign.
    if not x:
        return 1
    e0, c0 = x.leading()
    rest = sum(abs(c) for e, c in x.terms if e != e0 and e[0] == e0[0])
    k = 1
    while Fraction(1, 2 ** k) * rest >= abs(c0):
        k += 1
    return k


def stabilized_projection(x: Series, window: int = 3, max_k: int = 400):
    """Sign and valuation of ``x`` under ``nu = 2^-k``, ``mu = nu^m`` for growing k.

    ``m`` exceeds the spread of the third exponent components so that
    ``mu^b nu^c`` orders exponents lexicographically, and k starts where the
    leading coefficient outweighs the rest of its t-power.  Returns the first
    (sign, valuation) pair that repeats for ``window`` consecutive k, together
    with the first such k.
    """
    m = _shrink_exponent(x)
    start = _first_safe_k(x)
    if start > max_k:
        raise BudgetExceeded("sign needs k >= %d > %d" % (start, max_k), k=start)
    history = []
    for k in range(start, max_k + 1):
        nu = Fraction(1, 2 ** k)
        y = instantiate(x, nu ** m, nu)
        history.append((y.sign(), y.valuation()))
        if len(history) >= window and len(set(history[-window:])) == 1:
            s, v = history[-1]
            return s, v, k - window + 1
    raise BudgetExceeded("sign did not stabilise within k <= %d" % max_k, k=max_k)


def stabilized_sign(x: Series, window: int = 3, max_k: int = 400) -> tuple[int, int]:
    """Stabilized numerical sign of ``x`` and the k where it settled."""
    s, _, k = stabilized_projection(x, window, max_k)
    return s, k


# -- text format ------------------------------------------------------------------

def _format_exponent(e) -> str:
    if isinstance(e, Lex):
        return ",".join(str(c) for c in e)
    return str(e)


def format_series(x: Series) -> str:
    """``"1/2 - t^(-1) + 3*t^(2)"`` by increasing exponent; ``"0"`` for zero.

    Rational exponent zero prints as a bare constant; lex exponents always
    print the ``t^(a,b,c)`` factor so the group survives a round trip.
    """
    if not x:
        return "0"
    parts = []
    for e, c in x.terms:
        mag = abs(c)
        if not isinstance(e, Lex) and e == 0:
            body = str(mag)
        elif mag == 1:
            body = "t^(%s)" % _format_exponent(e)
        else:
            body = "%s*t^(%s)" % (mag, _format_exponent(e))
        if not parts:
            parts.append("-" + body if c < 0 else body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TERM = re.compile(r"""
    ^(?P<coef>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:/\d+)?)?   # optional coefficient
    (?:\*?t(?:\^\((?P<exp>[^()]*)\)|\^(?P<bare>[+-]?[\d./]+))?)?$  # optional t^(e)
""", re.VERBOSE)


def _split_terms(text: str) -> list[str]:
    s = text.replace(" ", "")
    terms, depth, start = [], 0, 0
    for pos, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and pos > start and s[pos - 1] not in "*^/":
            terms.append(s[start:pos])
            start = pos
    terms.append(s[start:])
    return [t for t in terms if t not in ("", "+")]


def parse_series(text: str, group: ValueGroup | None = None) -> Series:
    """Parse the :func:`format_series` grammar; also accepts ``t^-1``, ``1/2``, ``-t^(2)``."""
    s = str(text).strip()
    if not s:
        raise ValidationError("empty series string")
    out = []
    for raw in _split_terms(s):
        body = raw[1:] if raw.startswith("+") else raw
        negate = False
        if body.startswith("-") and (len(body) == 1 or not body[1].isdigit() and body[1] != "."):
            negate, body = True, body[1:]
        m = _TERM.match(body)
        if not m or not body:
            raise ValidationError("cannot parse series term %r in %r" % (raw, text))
        has_t = "t" in body
        coef = parse_rational(m.group("coef")) if m.group("coef") else Fraction(1)
        if not has_t:
            if m.group("coef") is None:
                raise ValidationError("cannot parse series term %r" % raw)
            exp_text = None
        else:
            exp_text = m.group("exp") if m.group("exp") is not None else m.group("bare")
            if exp_text is None:
                exp_text = "1"
        if exp_text is None:
            e = (group or RAT).zero
        elif "," in exp_text:
            e = coerce("(" + exp_text + ")")
        else:
            e = parse_rational(exp_text)
            if group is LEX:
                e = Lex(e)
        out.append((e, -coef if negate else coef))
    kinds = {type(e) for e, _ in out}
    if len(kinds) > 1:
        # constants written without t take the group of the other terms
        if Lex in kinds:
            out = [(e if isinstance(e, Lex) else Lex(e), c) for e, c in out]
    return Series(out)
