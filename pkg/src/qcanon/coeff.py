"""Exact arithmetic in the coefficient ring Z[Gamma].

Gamma is the abelian group generated by q and the deformation parameters
p_ij, q_ij (one independent symbol per unordered index pair, with
p_ij * p_ji = 1 and q_ij * q_ji = 1).  Internally the base variable is
v with v**2 = q, so half-integer powers of q stay exact; parameter
symbols are keyed by the pair (i, j) with i > j, the orientation in
which they occur in the straightening relations, and the symbol with
swapped indices is a negated exponent.

The ring carries

* the bar conjugation gamma -> gamma**-1 (integer coefficients fixed),
* a total group order splitting Gamma = Gamma_- u {1} u Gamma_+, chosen
  so that q**-1 and the inverses of the declared generators are
  positive, and
* exact division, used wherever a q-factorial or (q - q**-1) must be
  cancelled.

Everything is immutable and pure; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

__all__ = [
    "GammaMonomial",
    "GammaLaurent",
    "Specialization",
    "NotDivisible",
    "NotAntisymmetric",
    "GENERIC",
    "OFFICIAL",
    "AST",
    "QNEG",
    "integer",
    "q_power",
    "v_power",
    "param_p",
    "param_q",
    "solve_bar_equation",
]


class NotDivisible(ArithmeticError):
    """Raised when an exact quotient does not exist in Z[Gamma]."""


class NotAntisymmetric(ValueError):
    """Raised when solve_bar_equation is fed g with bar(g) != -g."""


def _merge_exps(a, b, scale=1):
    """Merge two sorted ((i,j), e) exponent tuples, dropping zeros."""
    out = dict(a)
    for key, e in b:
        new = out.get(key, 0) + scale * e
        if new:
            out[key] = new
        else:
            out.pop(key, None)
    return tuple(sorted(out.items()))


class GammaMonomial:
    """A single group element v**v_exp * prod p_ij**e * prod q_ij**e.

    Parameter exponents are stored as sorted tuples of ((i, j), e) with
    i > j and e != 0; two monomials are equal iff all exponent data are.
    """

    __slots__ = ("v", "p", "q", "_hash")

    def __init__(self, v=0, p=(), q=()):
        self.v = v
        self.p = tuple(sorted((k, e) for k, e in p if e))
        self.q = tuple(sorted((k, e) for k, e in q if e))
        for (i, j), _ in self.p + self.q:
            if not i > j >= 1:
                raise ValueError(f"parameter index pair must have row > col >= 1, got {(i, j)}")
        self._hash = hash((self.v, self.p, self.q))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (
            isinstance(other, GammaMonomial)
            and self.v == other.v
            and self.p == other.p
            and self.q == other.q
        )

    def __mul__(self, other):
        return GammaMonomial(
            self.v + other.v,
            _merge_exps(self.p, other.p),
            _merge_exps(self.q, other.q),
        )

    def inverse(self):
        return GammaMonomial(
            -self.v,
            tuple((k, -e) for k, e in self.p),
            tuple((k, -e) for k, e in self.q),
        )

    def __pow__(self, n):
        if n == 0:
            return GammaMonomial()
        return GammaMonomial(
            self.v * n,
            tuple((k, e * n) for k, e in self.p),
            tuple((k, e * n) for k, e in self.q),
        )

    def is_one(self):
        return self.v == 0 and not self.p and not self.q

    def sign(self):
        """+1 if the monomial is in Gamma_+, -1 if in Gamma_-, 0 if 1.

        The declared generators q, p_ij (i < j), q_ij (i < j) are the
        negative directions; since storage is oriented (i > j), a stored
        parameter exponent > 0 means an inverse of a declared generator,
        hence positive.  The first nonzero exponent in the variable
        order (v, p pairs by lex, q pairs by lex) decides.
        """
        if self.v:
            return -1 if self.v > 0 else 1
        for _, e in self.p:
            return 1 if e > 0 else -1
        for _, e in self.q:
            return 1 if e > 0 else -1
        return 0

    def is_positive(self):
        return self.sign() > 0

    def apply(self, spec: "Specialization") -> "GammaMonomial":
        """Image under a specialization (exponent-multiplicative)."""
        if spec.is_identity:
            return self
        out = GammaMonomial(self.v)
        for (i, j), e in self.p:
            out = out * (spec.p_image(i, j) ** e)
        for (i, j), e in self.q:
            out = out * (spec.q_image(i, j) ** e)
        return out

    def __repr__(self):
        return f"GammaMonomial({self.v}, {self.p}, {self.q})"

    def __str__(self):
        return monomial_str(self)


_ONE_MONO = GammaMonomial()


def _cmp_monomials(a: GammaMonomial, b: GammaMonomial) -> int:
    """Group-order comparison: sign of a * b**-1."""
    if a == b:
        return 0
    return (a * b.inverse()).sign()


class GammaLaurent:
    """A finite Z-linear combination of GammaMonomials (canonical form).

    Instances are immutable; all arithmetic returns fresh values, so
    they are safe to share between threads and to use as cache values.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[GammaMonomial, int] | None = None):
        if terms:
            self._terms = {m: c for m, c in terms.items() if c}
        else:
            self._terms = {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_monomial(m: GammaMonomial, c: int = 1) -> "GammaLaurent":
        return GammaLaurent({m: c}) if c else ZERO

    # -- structure ----------------------------------------------------

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def is_one(self):
        return self._terms == {_ONE_MONO: 1}

    def coefficient(self, m: GammaMonomial) -> int:
        return self._terms.get(m, 0)

    def as_monomial(self) -> GammaMonomial | None:
        """The single monomial if this is one with coefficient +1."""
        if len(self._terms) == 1:
            m, c = next(iter(self._terms.items()))
            if c == 1:
                return m
        return None

    def constant_term(self) -> int:
        return self._terms.get(_ONE_MONO, 0)

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GammaLaurent):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            new = out.get(m, 0) + c
            if new:
                out[m] = new
            else:
                del out[m]
        return GammaLaurent(out)

    def __neg__(self):
        return GammaLaurent({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GammaLaurent({m: c * other for m, c in self._terms.items()})
        if isinstance(other, GammaMonomial):
            return self.mul_monomial(other)
        if not isinstance(other, GammaLaurent):
            return NotImplemented
        if len(other._terms) == 1:
            (m, c), = other._terms.items()
            return self.mul_monomial(m, c)
        out: dict[GammaMonomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                new = out.get(m, 0) + c1 * c2
                if new:
                    out[m] = new
                else:
                    del out[m]
        return GammaLaurent(out)

    __rmul__ = __mul__

    def mul_monomial(self, m: GammaMonomial, c: int = 1) -> "GammaLaurent":
        if not c:
            return ZERO
        if m.is_one():
            return self if c == 1 else self * c
        return GammaLaurent({t * m: k * c for t, k in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({_ONE_MONO: other} if other else {})
        return isinstance(other, GammaLaurent) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- the involution and the order ----------------------------------

    def bar(self) -> "GammaLaurent":
        """Bar conjugation: every monomial inverted, coefficients kept."""
        return GammaLaurent({m.inverse(): c for m, c in self._terms.items()})

    def positive_part(self) -> "GammaLaurent":
        return GammaLaurent({m: c for m, c in self._terms.items() if m.is_positive()})

    def is_nonneg(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def is_bar_symmetric(self) -> bool:
        return self.bar() == self

    def apply(self, spec: "Specialization") -> "GammaLaurent":
        if spec.is_identity:
            return self
        out: dict[GammaMonomial, int] = {}
        for m, c in self._terms.items():
            im = m.apply(spec)
            new = out.get(im, 0) + c
            if new:
                out[im] = new
            else:
                del out[im]
        return GammaLaurent(out)

    # -- division ------------------------------------------------------

    def leading(self) -> tuple[GammaMonomial, int]:
        """Largest monomial in the group order, with its coefficient."""
        best = None
        for m in self._terms:
            if best is None or _cmp_monomials(m, best) > 0:
                best = m
        return best, self._terms[best]

    def is_v_only(self) -> bool:
        return all(not m.p and not m.q for m in self._terms)

    def _v_poly(self):
        return {m.v: c for m, c in self._terms.items()}

    def divide_exact(self, d: "GammaLaurent") -> "GammaLaurent":
        """The w with w * d == self, or raise NotDivisible.

        Monomial divisors and divisors supported on v alone (the only
        kinds produced by the q-combinatorics) are handled by direct
        and by univariate Laurent division; a leading-term loop with an
        iteration cap covers the general case.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by zero in Z[Gamma]")
        if self.is_zero():
            return ZERO
        dm = None
        if len(d._terms) == 1:
            (dm, dc), = d._terms.items()
            out = {}
            inv = dm.inverse()
            for m, c in self._terms.items():
                if c % dc:
                    raise NotDivisible(f"coefficient {c} not divisible by {dc}")
                out[m * inv] = c // dc
            return GammaLaurent(out)
        if d.is_v_only():
            groups: dict[tuple, dict[int, int]] = {}
            for m, c in self._terms.items():
                groups.setdefault((m.p, m.q), {})[m.v] = c
            dpoly = d._v_poly()
            out: dict[GammaMonomial, int] = {}
            for (p, q), poly in groups.items():
                for v, c in _div_v_laurent(poly, dpoly).items():
                    out[GammaMonomial(v, p, q)] = c
            return GammaLaurent(out)
        # General divisor: strip leading terms.  Any true quotient term
        # is produced in strictly decreasing group order, so the number
        # of steps is bounded by the quotient size; cap defensively.
        rem = self
        quot: dict[GammaMonomial, int] = {}
        dlead, dlc = d.leading()
        dinv = dlead.inverse()
        for _ in range(64 * len(self._terms) + 1024):
            if rem.is_zero():
                return GammaLaurent(quot)
            rlead, rlc = rem.leading()
            if rlc % dlc:
                raise NotDivisible("leading coefficient mismatch")
            t = rlead * dinv
            c = rlc // dlc
            quot[t] = quot.get(t, 0) + c
            rem = rem - d.mul_monomial(t, c)
        raise NotDivisible("no exact quotient found")

    # -- rendering ------------------------------------------------------

    def __str__(self):
        return laurent_str(self)

    def __repr__(self):
        return f"GammaLaurent<{laurent_str(self)}>"


ZERO = GammaLaurent()
ONE = GammaLaurent({_ONE_MONO: 1})


def integer(c: int) -> GammaLaurent:
    return GammaLaurent({_ONE_MONO: c})


def v_power(k: int, c: int = 1) -> GammaLaurent:
    return GammaLaurent({GammaMonomial(k): c})


def q_power(k: int, c: int = 1) -> GammaLaurent:
    """c * q**k  (v-exponent 2k)."""
    return GammaLaurent({GammaMonomial(2 * k): c})


def param_p(i: int, j: int, e: int = 1) -> GammaLaurent:
    """The parameter p_ij**e; indices in either orientation."""
    return GammaLaurent.from_monomial(p_monomial(i, j, e))


def param_q(i: int, j: int, e: int = 1) -> GammaLaurent:
    return GammaLaurent.from_monomial(q_monomial(i, j, e))


def p_monomial(i: int, j: int, e: int = 1) -> GammaMonomial:
    if i == j:
        return _ONE_MONO
    if i < j:
        i, j, e = j, i, -e
    return GammaMonomial(0, (((i, j), e),), ())


def q_monomial(i: int, j: int, e: int = 1) -> GammaMonomial:
    if i == j:
        return _ONE_MONO
    if i < j:
        i, j, e = j, i, -e
    return GammaMonomial(0, (), (((i, j), e),))


def _div_v_laurent(num: dict[int, int], den: dict[int, int]) -> dict[int, int]:
    """Exact division of integer Laurent polynomials in v."""
    nmin, nmax = min(num), max(num)
    dmin, dmax = min(den), max(den)
    dlc = den[dmax]
    quot: dict[int, int] = {}
    rem = dict(num)
    # quotient exponents run from nmax-dmax down to nmin-dmin
    for e in range(nmax - dmax, nmin - dmin - 1, -1):
        c = rem.get(e + dmax, 0)
        if not c:
            continue
        if c % dlc:
            raise NotDivisible("coefficient not divisible in v-Laurent division")
        t = c // dlc
        quot[e] = t
        for de, dc in den.items():
            k = e + de
            new = rem.get(k, 0) - t * dc
            if new:
                rem[k] = new
            else:
                rem.pop(k, None)
    if rem:
        raise NotDivisible("nonzero remainder in v-Laurent division")
    return quot


def solve_bar_equation(g: GammaLaurent) -> GammaLaurent:
    """The unique h supported on Gamma_+ with h - bar(h) == g.

    Requires bar(g) == -g; h is simply the Gamma_+-supported part of g.
    """
    if g.bar() != -g:
        raise NotAntisymmetric("input does not satisfy bar(g) == -g")
    return g.positive_part()


# -- specializations ---------------------------------------------------


@dataclass(frozen=True)
class Specialization:
    """A ring homomorphism sending each parameter to a monomial.

    The images are given for the stored orientation (i > j); inverses
    follow automatically, so the map always commutes with bar.
    """

    name: str
    p_image: Callable[[int, int], GammaMonomial] = field(compare=False)
    q_image: Callable[[int, int], GammaMonomial] = field(compare=False)
    is_identity: bool = False

    def __call__(self, x: GammaLaurent) -> GammaLaurent:
        return x.apply(self)

    def __repr__(self):
        return f"Specialization({self.name})"


GENERIC = Specialization(
    "generic",
    p_image=lambda i, j: p_monomial(i, j),
    q_image=lambda i, j: q_monomial(i, j),
    is_identity=True,
)

# The one-parameter quantum matrix algebra: p_ij -> q**-1/2, q_ij -> q**1/2
# for every stored pair i > j.
OFFICIAL = Specialization(
    "official",
    p_image=lambda i, j: GammaMonomial(-1),
    q_image=lambda i, j: GammaMonomial(1),
)

# Identify the two parameter families: q_ij -> p_ij.
AST = Specialization(
    "ast",
    p_image=lambda i, j: p_monomial(i, j),
    q_image=lambda i, j: p_monomial(i, j),
)

# One-parameter convention with q_ij -> q**-1 and p_ij -> 1, under which
# the distinguished 2x2 minors take the plain form Z11 Z22 - q^2 Z12 Z21.
# Used by the two-row closed-form checks.
QNEG = Specialization(
    "qneg",
    p_image=lambda i, j: _ONE_MONO,
    q_image=lambda i, j: GammaMonomial(-2),
)

PRESETS = {s.name: s for s in (GENERIC, OFFICIAL, AST, QNEG)}


def preset(name: str) -> Specialization:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise KeyError(f"unknown specialization {name!r}; choose from {sorted(PRESETS)}")


# -- rendering ----------------------------------------------------------


def _exp_str(base: str, e) -> str:
    if e == 1:
        return base
    return f"{base}^{e}"


def monomial_str(m: GammaMonomial) -> str:
    parts = []
    if m.v:
        if m.v % 2 == 0:
            parts.append(_exp_str("q", m.v // 2))
        else:
            parts.append(f"q^{m.v}/2")
    for (i, j), e in m.p:
        parts.append(_exp_str(f"p[{i}][{j}]", e))
    for (i, j), e in m.q:
        parts.append(_exp_str(f"Q[{i}][{j}]", e))
    return " ".join(parts) if parts else "1"


def _display_key(m: GammaMonomial):
    return (-m.v, m.p, m.q)


def laurent_str(x: GammaLaurent) -> str:
    """Human text form: terms joined by " + " / " - "."""
    if x.is_zero():
        return "0"
    pieces = []
    for m in sorted(x._terms, key=_display_key):
        c = x._terms[m]
        mono = monomial_str(m)
        if abs(c) == 1 and not m.is_one():
            body = mono
        elif m.is_one():
            body = str(abs(c))
        else:
            body = f"{abs(c)} {mono}"
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def monomial_latex(m: GammaMonomial) -> str:
    parts = []
    if m.v:
        if m.v % 2 == 0:
            e = m.v // 2
            parts.append("q" if e == 1 else f"q^{{{e}}}")
        else:
            parts.append(f"q^{{{Fraction(m.v, 2)}}}")
    for (i, j), e in m.p:
        parts.append(f"p_{{{i}{j}}}" if e == 1 else f"p_{{{i}{j}}}^{{{e}}}")
    for (i, j), e in m.q:
        parts.append(f"q_{{{i}{j}}}" if e == 1 else f"q_{{{i}{j}}}^{{{e}}}")
    return "".join(parts) if parts else "1"


def laurent_latex(x: GammaLaurent) -> str:
    if x.is_zero():
        return "0"
    out = ""
    for m in sorted(x._terms, key=_display_key):
        c = x._terms[m]
        mono = monomial_latex(m)
        if abs(c) == 1 and not m.is_one():
            body = mono
        elif m.is_one():
            body = str(abs(c))
        else:
            body = f"{abs(c)}{mono}"
        if not out:
            out = body if c > 0 else f"-{body}"
        else:
            out += (" + " if c > 0 else " - ") + body
    return out


def laurent_json(x: GammaLaurent) -> list[dict]:
    """JSON form: [{coeff, v, p: {"i,j": e}, Q: {"i,j": e}}, ...]."""
    out = []
    for m in sorted(x._terms, key=_display_key):
        out.append(
            {
                "coeff": x._terms[m],
                "v": m.v,
                "p": {f"{i},{j}": e for (i, j), e in m.p},
                "Q": {f"{i},{j}": e for (i, j), e in m.q},
            }
        )
    return out
