"""Exact sparse multivariate and dense univariate polynomials over the rationals.

A multivariate polynomial is a mapping from exponent tuples to nonzero
Fraction coefficients:

  MultiPoly.terms : dict[tuple[int, ...], Fraction]

The exponent tuple has one entry per variable (x0, x1, ...).  Zero
coefficients are never stored, so equality of dicts is equality of
polynomials.  The canonical term order is graded lexicographic with x0
heaviest; serialization and leading-term extraction both use it.

Univariate polynomials (UniPoly) store a coefficient list, lowest degree
first, with no trailing zeros.  They carry restrictions of multivariate
polynomials to lines and characteristic polynomials of rational matrices.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DimensionError, DomainError

Exponent = tuple[int, ...]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def _fraction_gcd(a: Fraction, b: Fraction) -> Fraction:
    # gcd on Q normalised so that the result is positive and both inputs are
    # integer multiples of it.
    num = math.gcd(a.numerator, b.numerator)
    den = math.lcm(a.denominator, b.denominator)
    return Fraction(num, den)


def _grlex_key(exp: Exponent):
    return (sum(exp), exp)


class MultiPoly:
    """A sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Exponent, Fraction] | None = None):
        if nvars < 0:
            raise DimensionError("nvars must be nonnegative")
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            if len(exp) != nvars:
                raise DimensionError(
                    f"exponent tuple {exp} does not have {nvars} entries"
                )
            if any(e < 0 for e in exp):
                raise DomainError(f"negative exponent in {exp}")
            c = _as_fraction(coeff)
            if c != 0:
                clean[tuple(exp)] = c
        self.nvars = nvars
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, value) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: _as_fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise DimensionError(f"variable index {index} out of range for nvars={nvars}")
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "MultiPoly":
        """The linear polynomial sum_i coeffs[i] * x_i."""
        nvars = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = _as_fraction(c)
            if c != 0:
                exp = [0] * nvars
                exp[i] = 1
                terms[tuple(exp)] = c
        return cls(nvars, terms)

    # -- predicates and basic queries ---------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(exp) == 0 for exp in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return -1
        return max(exp[index] for exp in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(exp) for exp in self.terms}
        return len(degrees) <= 1

    def variables(self) -> set[int]:
        """Indices of the variables this polynomial actually depends on."""
        used: set[int] = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(i)
        return used

    def leading_term(self) -> tuple[Exponent, Fraction]:
        """Greatest term in graded-lex order; error on the zero polynomial."""
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order (serialization order)."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------

    def _check_same(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise DimensionError(
                f"polynomials use {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same(other)
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            out[exp] = out.get(exp, Fraction(0)) + coeff
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return MultiPoly(self.nvars, {e: v * c for e, v in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                out[exp] = out.get(exp, Fraction(0)) + ca * cb
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError("polynomial powers must be nonnegative integers")
        result = MultiPoly.const(self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- calculus and evaluation ----------------------------------------

    def partial(self, index: int) -> "MultiPoly":
        """Exact partial derivative with respect to x_index."""
        out: dict[Exponent, Fraction] = {}
        for exp, coeff in self.terms.items():
            e = exp[index]
            if e == 0:
                continue
            new = list(exp)
            new[index] = e - 1
            key = tuple(new)
            out[key] = out.get(key, Fraction(0)) + coeff * e
        return MultiPoly(self.nvars, out)

    def evaluate(self, values: Sequence) -> Fraction:
        vals = [_as_fraction(v) for v in values]
        if len(vals) != self.nvars:
            raise DimensionError("wrong number of values")
        total = Fraction(0)
        for exp, coeff in self.terms.items():
            term = coeff
            for e, v in zip(exp, vals):
                if e:
                    term *= v**e
            total += term
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute x_i -> images[i]; all images must share a variable count."""
        if len(images) != self.nvars:
            raise DimensionError("one image polynomial required per variable")
        if images:
            m = images[0].nvars
            if any(q.nvars != m for q in images):
                raise DimensionError("images use inconsistent variable counts")
        else:
            m = 0
        powers: list[dict[int, MultiPoly]] = [
            {0: MultiPoly.const(m, 1)} for _ in range(self.nvars)
        ]

        def power(i: int, e: int) -> MultiPoly:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        result = MultiPoly.zero(m)
        for exp, coeff in self.terms.items():
            term = MultiPoly.const(m, coeff)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    # -- normalization ---------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-coefficient and coprime."""
        if not self.terms:
            return Fraction(0)
        it = iter(self.terms.values())
        g = abs(next(it))
        for coeff in it:
            g = _fraction_gcd(g, coeff)
        return g

    def normalized(self) -> "MultiPoly":
        """Associate with coprime integer coefficients and positive leading one."""
        if not self.terms:
            return self
        c = self.content()
        p = self * (1 / c)
        if p.leading_term()[1] < 0:
            p = -p
        return p

    # -- rendering ---------------------------------------------------------

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        pieces = []
        for exp, coeff in self.sorted_terms():
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(coeff)
            elif coeff == 1:
                body = mono
            elif coeff == -1:
                body = f"-{mono}"
            else:
                body = f"{coeff}*{mono}"
            pieces.append(body)
        text = pieces[0]
        for body in pieces[1:]:
            if body.startswith("-"):
                text += " - " + body[1:]
            else:
                text += " + " + body
        return text

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.render()})"


class UniPoly:
    """A dense univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def const(cls, value) -> "UniPoly":
        return cls((value,))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return UniPoly([v * c for v in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise DomainError("negative power")
        result = UniPoly.const(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, value) -> Fraction:
        t = _as_fraction(value)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * t + c
        return total

    def derivative(self) -> "UniPoly":
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise DomainError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(), self
        quo = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            if len(rem) < len(other.coeffs) + k:
                continue
            c = rem[len(other.coeffs) + k - 1] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[j + k] -= c * b
        return UniPoly(quo), UniPoly(rem)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.leading()
        return UniPoly([c / lead for c in self.coeffs])

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def integer_primitive(self) -> tuple["UniPoly", Fraction]:
        """Return (p, c) with self = c*p, p having coprime integer coefficients."""
        if self.is_zero():
            return self, Fraction(0)
        den = math.lcm(*[c.denominator for c in self.coeffs])
        ints = [c * den for c in self.coeffs]
        g = 0
        for c in ints:
            g = math.gcd(g, c.numerator)
        scale = Fraction(g, den)
        return UniPoly([c / scale for c in self.coeffs]), scale

    def rational_roots(self) -> tuple[list[tuple[Fraction, int]], bool]:
        """All rational roots with multiplicities, plus a completeness flag.

        The flag is True when the found roots account for the full degree,
        i.e. the polynomial splits into rational linear factors.
        """
        if self.is_zero():
            raise DomainError("zero polynomial has every value as a root")
        poly, _ = self.integer_primitive()
        roots: list[tuple[Fraction, int]] = []
        # factor out roots at zero
        zero_mult = 0
        while poly.coeffs and poly.coeffs[0] == 0:
            poly = UniPoly(poly.coeffs[1:])
            zero_mult += 1
        if zero_mult:
            roots.append((Fraction(0), zero_mult))
        if poly.degree() >= 1:
            a0 = abs(poly.coeffs[0].numerator)
            an = abs(poly.coeffs[-1].numerator)
            candidates: set[Fraction] = set()
            for p in _divisors(a0):
                for q in _divisors(an):
                    candidates.add(Fraction(p, q))
                    candidates.add(Fraction(-p, q))
            for cand in sorted(candidates):
                mult = 0
                while poly.degree() >= 1 and poly(cand) == 0:
                    poly = poly.divmod(UniPoly([-cand, Fraction(1)]))[0]
                    mult += 1
                if mult:
                    roots.append((cand, mult))
        roots.sort(key=lambda rm: rm[0])
        complete = poly.degree() <= 0
        return roots, complete

    def to_multipoly(self) -> MultiPoly:
        return MultiPoly(1, {(i,): c for i, c in enumerate(self.coeffs)})

    def __str__(self):
        if not self.coeffs:
            return "0"
        pieces = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                pieces.append(str(c))
            elif i == 1:
                pieces.append("t" if c == 1 else ("-t" if c == -1 else f"{c}*t"))
            else:
                pieces.append(
                    f"t^{i}" if c == 1 else (f"-t^{i}" if c == -1 else f"{c}*t^{i}")
                )
        text = pieces[0]
        for body in pieces[1:]:
            if body.startswith("-"):
                text += " - " + body[1:]
            else:
                text += " + " + body
        return text

    def __repr__(self):
        return f"UniPoly({self})"


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# ---------------------------------------------------------------------------
# determinants of polynomial matrices
# ---------------------------------------------------------------------------


def poly_det(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Exact determinant of a square matrix of polynomials.

    Uses cofactor expansion for orders up to 4 and fraction-free (Bareiss)
    elimination above that, so intermediates stay in the polynomial ring.
    """
    n = len(rows)
    if n == 0:
        raise DimensionError("empty matrix")
    for row in rows:
        if len(row) != n:
            raise DimensionError("matrix of polynomials is not square")
    nvars = rows[0][0].nvars
    for row in rows:
        for entry in row:
            if entry.nvars != nvars:
                raise DimensionError("matrix entries use inconsistent variable counts")
    if n <= 4:
        return _det_cofactor([list(r) for r in rows])
    return _det_bareiss([list(r) for r in rows])


def _det_cofactor(m: list[list[MultiPoly]]) -> MultiPoly:
    n = len(m)
    nvars = m[0][0].nvars
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    # expand along the row with the most zero entries
    best = max(range(n), key=lambda i: sum(1 for e in m[i] if e.is_zero()))
    total = MultiPoly.zero(nvars)
    for j in range(n):
        entry = m[best][j]
        if entry.is_zero():
            continue
        minor = [
            [m[i][k] for k in range(n) if k != j] for i in range(n) if i != best
        ]
        cofactor = _det_cofactor(minor)
        if (best + j) % 2:
            cofactor = -cofactor
        total = total + entry * cofactor
    return total


def _det_bareiss(m: list[list[MultiPoly]]) -> MultiPoly:
    n = len(m)
    nvars = m[0][0].nvars
    sign = 1
    prev = MultiPoly.const(nvars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next(
                (i for i in range(k + 1, n) if not m[i][k].is_zero()), None
            )
            if pivot_row is None:
                return MultiPoly.zero(nvars)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numer = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = poly_divexact(numer, prev)
            m[i][k] = MultiPoly.zero(nvars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def poly_divexact(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Exact quotient a/b; raises DomainError when b does not divide a."""
    if b.is_zero():
        raise DomainError("division by the zero polynomial")
    if a.is_zero():
        return a
    if a.nvars != b.nvars:
        raise DimensionError("mismatched variable counts")
    quotient: dict[Exponent, Fraction] = {}
    rem = a
    eb, cb = b.leading_term()
    while not rem.is_zero():
        er, cr = rem.leading_term()
        diff = tuple(x - y for x, y in zip(er, eb))
        if any(d < 0 for d in diff):
            raise DomainError("polynomials do not divide exactly")
        coeff = cr / cb
        quotient[diff] = quotient.get(diff, Fraction(0)) + coeff
        rem = rem - MultiPoly(a.nvars, {diff: coeff}) * b
    return MultiPoly(a.nvars, quotient)


# ---------------------------------------------------------------------------
# multivariate gcd via subresultant remainder sequences
# ---------------------------------------------------------------------------


def _univar_coeffs(p: MultiPoly, v: int) -> list[MultiPoly]:
    """View p as a polynomial in x_v; coefficient list, lowest degree first."""
    d = max((exp[v] for exp in p.terms), default=0)
    coeffs = [MultiPoly.zero(p.nvars) for _ in range(d + 1)]
    for exp, coeff in p.terms.items():
        stripped = list(exp)
        k = stripped[v]
        stripped[v] = 0
        coeffs[k] = coeffs[k] + MultiPoly(p.nvars, {tuple(stripped): coeff})
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _univar_assemble(coeffs: Sequence[MultiPoly], v: int) -> MultiPoly:
    nvars = coeffs[0].nvars
    result = MultiPoly.zero(nvars)
    xv = MultiPoly.variable(nvars, v)
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            result = result + c * xv**k
    return result


def _uv_degree(coeffs: Sequence[MultiPoly]) -> int:
    for k in range(len(coeffs) - 1, -1, -1):
        if not coeffs[k].is_zero():
            return k
    return -1


def _uv_trim(coeffs: list[MultiPoly]) -> list[MultiPoly]:
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _uv_pseudo_rem(
    a: list[MultiPoly], b: list[MultiPoly]
) -> list[MultiPoly]:
    """Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b."""
    da, db = _uv_degree(a), _uv_degree(b)
    nvars = b[0].nvars
    lb = b[db]
    rem = list(a)
    steps = da - db + 1
    while True:
        dr = _uv_degree(rem)
        if dr < db:
            break
        lr = rem[dr]
        rem = [c * lb for c in rem]
        for j in range(db + 1):
            rem[dr - db + j] = rem[dr - db + j] - lr * b[j]
        rem = _uv_trim(rem)
        steps -= 1
    # match the classical lc^(da-db+1) convention exactly
    for _ in range(steps):
        rem = [c * lb for c in rem]
    if _uv_degree(rem) < 0:
        return [MultiPoly.zero(nvars)]
    return rem


def _subresultant_last(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    """Last nonzero member of the subresultant remainder sequence of a, b."""
    nvars = a[0].nvars
    if _uv_degree(a) < _uv_degree(b):
        a, b = b, a
    g = MultiPoly.const(nvars, 1)
    h = MultiPoly.const(nvars, 1)
    while True:
        d = _uv_degree(a) - _uv_degree(b)
        rem = _uv_pseudo_rem(a, b)
        if _uv_degree(rem) < 0:
            return b
        divisor = g * h**d
        a = b
        b = [poly_divexact(c, divisor) for c in rem]
        g = a[_uv_degree(a)]
        if d == 0:
            # h unchanged
            pass
        elif d == 1:
            h = g
        else:
            h = poly_divexact(g**d, h ** (d - 1))


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """A greatest common divisor, primitive with positive leading coefficient.

    Works variable by variable: contents and primitive parts are split off
    recursively and the univariate core runs a subresultant remainder
    sequence, so every intermediate stays a polynomial.
    """
    if a.nvars != b.nvars:
        raise DimensionError("mismatched variable counts")
    if a.is_zero() and b.is_zero():
        return MultiPoly.zero(a.nvars)
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    used = a.variables() | b.variables()
    if not used:
        return MultiPoly.const(a.nvars, 1)
    v = max(used)
    da, db = a.degree_in(v), b.degree_in(v)
    if da == 0:
        return poly_gcd(a, _content_in(b, v))
    if db == 0:
        return poly_gcd(_content_in(a, v), b)
    cont_a = _content_in(a, v)
    cont_b = _content_in(b, v)
    pp_a = poly_divexact(a, cont_a)
    pp_b = poly_divexact(b, cont_b)
    cont_gcd = poly_gcd(cont_a, cont_b)
    last = _subresultant_last(_univar_coeffs(pp_a, v), _univar_coeffs(pp_b, v))
    core = _univar_assemble(last, v)
    if core.degree_in(v) == 0:
        core_pp = MultiPoly.const(a.nvars, 1)
    else:
        core_pp = poly_divexact(core, _content_in(core, v))
    return (cont_gcd * core_pp).normalized()


def _content_in(p: MultiPoly, v: int) -> MultiPoly:
    """Gcd of the coefficients of p viewed as a polynomial in x_v."""
    coeffs = [c for c in _univar_coeffs(p, v) if not c.is_zero()]
    g = coeffs[0]
    for c in coeffs[1:]:
        g = poly_gcd(g, c)
        if g.is_constant():
            break
    return g.normalized() if not g.is_constant() else MultiPoly.const(p.nvars, 1)


# ---------------------------------------------------------------------------
# repeated factors
# ---------------------------------------------------------------------------


def repeated_part(p: MultiPoly) -> MultiPoly:
    """gcd of p with all of its partial derivatives, normalized.

    In characteristic zero this is the product of every irreducible factor
    raised to one less than its multiplicity, so it is nonconstant exactly
    when p has a repeated factor.
    """
    if p.is_zero():
        raise DomainError("zero polynomial")
    used = sorted(p.variables())
    if not used:
        return MultiPoly.const(p.nvars, 1)
    d: MultiPoly | None = None
    for i in used:
        pi = p.partial(i)
        d = pi if d is None else poly_gcd(d, pi)
        if d.is_constant() and not d.is_zero():
            break
    assert d is not None
    return poly_gcd(p, d).normalized()


def has_multiple_components(p: MultiPoly) -> bool:
    """True when p has a repeated factor (a multiple component of its zero set)."""
    return not repeated_part(p).is_constant()


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """p with all repeated factors reduced to multiplicity one, normalized."""
    rep = repeated_part(p)
    if rep.is_constant():
        return p.normalized()
    return poly_divexact(p, rep).normalized()


# ---------------------------------------------------------------------------
# restriction to a line
# ---------------------------------------------------------------------------


def restrict(p: MultiPoly, point: Sequence, direction: Sequence) -> UniPoly:
    """The univariate polynomial t -> p(point + t*direction), exactly."""
    if len(point) != p.nvars or len(direction) != p.nvars:
        raise DimensionError("point and direction must match the variable count")
    dirs = [_as_fraction(d) for d in direction]
    if all(d == 0 for d in dirs):
        raise DomainError("direction must be nonzero")
    pts = [_as_fraction(c) for c in point]
    lines = [UniPoly([pt, d]) for pt, d in zip(pts, dirs)]
    powers: list[dict[int, UniPoly]] = [{0: UniPoly.const(1)} for _ in range(p.nvars)]

    def power(i: int, e: int) -> UniPoly:
        cache = powers[i]
        if e not in cache:
            cache[e] = power(i, e - 1) * lines[i]
        return cache[e]

    total = UniPoly.zero()
    for exp, coeff in p.terms.items():
        term = UniPoly.const(coeff)
        for i, e in enumerate(exp):
            if e:
                term = term * power(i, e)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def poly_to_obj(p: MultiPoly) -> list[dict]:
    """JSON-shaped term list in descending graded-lex order."""
    return [
        {"exponents": list(exp), "coefficient": str(coeff)}
        for exp, coeff in p.sorted_terms()
    ]


def poly_from_obj(obj: Iterable[dict], nvars: int) -> MultiPoly:
    terms: dict[Exponent, Fraction] = {}
    for item in obj:
        exp = tuple(int(e) for e in item["exponents"])
        coeff = Fraction(item["coefficient"])
        terms[exp] = terms.get(exp, Fraction(0)) + coeff
    return MultiPoly(nvars, terms)
