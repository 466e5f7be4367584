"""Exact sparse arithmetic in Z[T_1, ..., T_m] and its fraction field.

A polynomial is stored as a dict mapping exponent tuples (one entry per
variable) to nonzero integer coefficients; the zero polynomial is the empty
dict.  Python ints give arbitrary precision, which matters: intermediate
coefficients overflow 64 bits already on modest rectangles.

The graded-lexicographic order with T_1 > T_2 > ... > T_m fixes leading
terms, serialization and printing, so equal polynomials always render
identically.

Fraction-field elements (`RationalElt`) keep their denominator as a multiset
of *linear* forms instead of an arbitrary polynomial.  Every division the
coefficient recursion performs is by a linear form, so keeping fractions
reduced only ever needs trial division of the numerator by each denominator
factor, never a general multivariate gcd.
"""

from __future__ import annotations

from collections import Counter
from math import gcd


class DenominatorNotCleared(Exception):
    """A value that must be polynomial still carries denominator factors."""


class NotTranslationInvariant(Exception):
    """Polynomial changes under the substitution T_i -> T_i + s."""


def _grlex_key(exponents):
    return (sum(exponents), exponents)


class Polynomial:
    """Sparse multivariate polynomial with integer coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        if nvars < 0:
            raise ValueError("variable count must be nonnegative")
        self.nvars = nvars
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent tuple {exps} has wrong length, expected {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if coeff:
                clean[exps] = clean.get(exps, 0) + coeff
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, nvars, terms):
        """Take ownership of a dict built by trusted arithmetic; drop zeros only."""
        self = object.__new__(cls)
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if c}
        return self

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars, value):
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, nvars, index):
        """The polynomial T_{index+1} (0-based index)."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls._raw(nvars, {exps: 1})

    @property
    def is_zero(self):
        return not self.terms

    def _check_compatible(self, other):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return Polynomial._raw(self.nvars, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return Polynomial._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.const(self.nvars, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def total_degree(self):
        """Maximal total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, degree):
        """True iff every term has the given total degree (zero passes for all)."""
        return all(sum(e) == degree for e in self.terms)

    def evaluate(self, point):
        """Value at an integer point; exact."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        total = 0
        for exps, coeff in self.terms.items():
            v = coeff
            for x, e in zip(point, exps):
                if e:
                    v *= x ** e
            total += v
        return total

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            return None
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def try_div_linear(self, form):
        """Quotient of an exact division by a linear form, or None.

        Synthetic division: view the polynomial as univariate in a pivot
        variable (any variable the form touches) with polynomial
        coefficients; divisible iff the remainder vanishes and every
        intermediate integer division is exact.
        """
        if form.is_zero:
            raise ZeroDivisionError("division by the zero form")
        if form.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        if not self.terms:
            return Polynomial.zero(self.nvars)
        pivot = next(i for i, c in enumerate(form.coeffs) if c)
        pc = form.coeffs[pivot]
        rest = [(i, c) for i, c in enumerate(form.coeffs) if c and i != pivot]

        levels = {}
        for exps, coeff in self.terms.items():
            j = exps[pivot]
            base = exps[:pivot] + (0,) + exps[pivot + 1:]
            levels.setdefault(j, {})[base] = coeff
        top = max(levels)
        if top == 0:
            return None  # no pivot present, nonzero remainder

        quotient = {}
        running = dict(levels.get(top, {}))
        for j in range(top, 0, -1):
            layer = {}
            for base, coeff in running.items():
                if coeff % pc:
                    return None
                layer[base] = coeff // pc
            for base, coeff in layer.items():
                exps = base[:pivot] + (j - 1,) + base[pivot + 1:]
                quotient[exps] = quotient.get(exps, 0) + coeff
            running = dict(levels.get(j - 1, {}))
            for base, coeff in layer.items():
                for i, ci in rest:
                    bumped = base[:i] + (base[i] + 1,) + base[i + 1:]
                    running[bumped] = running.get(bumped, 0) - coeff * ci
            running = {e: c for e, c in running.items() if c}
        if running:
            return None
        return Polynomial._raw(self.nvars, quotient)

    def div_exact(self, other):
        """Quotient of an exact division by a polynomial, or None.

        Leading-term cancellation under graded-lex.  Detects failure, so this
        is only an exactness check, not a gcd: the remainder path of a true
        division algorithm is never needed.
        """
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        self._check_compatible(other)
        lt_e, lt_c = other.leading_term()
        quotient = {}
        rem = dict(self.terms)
        while rem:
            re = max(rem, key=_grlex_key)
            rc = rem[re]
            if rc % lt_c:
                return None
            qe = tuple(a - b for a, b in zip(re, lt_e))
            if any(e < 0 for e in qe):
                return None
            qc = rc // lt_c
            quotient[qe] = quotient.get(qe, 0) + qc
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(qe, e2))
                nc = rem.get(key, 0) - qc * c2
                if nc:
                    rem[key] = nc
                else:
                    rem.pop(key, None)
        return Polynomial._raw(self.nvars, quotient)

    def to_json_dict(self):
        """Canonical JSON form; coefficients as decimal strings."""
        return {
            "vars": self.nvars,
            "terms": [{"c": str(c), "e": list(e)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json_dict(cls, data):
        nvars = data["vars"]
        terms = {}
        for entry in data["terms"]:
            exps = tuple(entry["e"])
            coeff = int(entry["c"])
            if exps in terms:
                raise ValueError(f"duplicate monomial {exps} in serialized polynomial")
            terms[exps] = coeff
        return cls(nvars, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                f"T{i + 1}^{e}" if e > 1 else f"T{i + 1}"
                for i, e in enumerate(exps) if e
            )
            mag = abs(coeff)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self})"


class LinearForm:
    """Integer linear form a_1 T_1 + ... + a_m T_m (no constant term)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(int(c) for c in coeffs)

    @property
    def nvars(self):
        return len(self.coeffs)

    @property
    def is_zero(self):
        return not any(self.coeffs)

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g

    def sign_canonical(self):
        """(sign, form) with the first nonzero coefficient positive."""
        for c in self.coeffs:
            if c > 0:
                return 1, self
            if c < 0:
                return -1, LinearForm(tuple(-x for x in self.coeffs))
        return 1, self

    def as_polynomial(self):
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                exps = tuple(1 if j == i else 0 for j in range(len(self.coeffs)))
                terms[exps] = c
        return Polynomial._raw(len(self.coeffs), terms)

    def evaluate(self, point):
        return sum(c * x for c, x in zip(self.coeffs, point))

    def __neg__(self):
        return LinearForm(tuple(-c for c in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return str(self.as_polynomial())

    def __repr__(self):
        return f"LinearForm({self.coeffs})"


class RationalElt:
    """Element of the fraction field: polynomial over a multiset of linear forms.

    Normal form: denominator factors are primitive with their first nonzero
    coefficient positive (so proportional factors coincide and merge through
    multiplicity), and the numerator is not exactly divisible by any of them.
    The zero element carries an empty denominator.
    """

    __slots__ = ("numerator", "denom")

    def __init__(self, numerator, denom=()):
        if isinstance(numerator, int):
            raise TypeError("numerator must be a Polynomial")
        factors = Counter()
        sign = 1
        content = 1
        items = denom.items() if isinstance(denom, dict) else ((f, 1) for f in denom)
        for form, mult in items:
            if mult < 0:
                raise ValueError("negative multiplicity in denominator")
            if form.is_zero:
                raise ZeroDivisionError("zero form in denominator")
            if mult == 0:
                continue
            s, canon = form.sign_canonical()
            g = canon.content()
            if g > 1:
                canon = LinearForm(tuple(c // g for c in canon.coeffs))
                content *= g ** mult
            if s < 0 and mult % 2:
                sign = -sign
            factors[canon] += mult
        if content > 1:
            scaled = {}
            for exps, coeff in numerator.terms.items():
                if coeff % content:
                    raise ValueError("denominator content does not divide the numerator")
                scaled[exps] = coeff // content
            numerator = Polynomial._raw(numerator.nvars, scaled)
        if sign < 0:
            numerator = -numerator
        self.numerator = numerator
        self.denom = factors
        self._reduce()

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    @classmethod
    def zero(cls, nvars):
        return cls(Polynomial.zero(nvars))

    @classmethod
    def one(cls, nvars):
        return cls(Polynomial.const(nvars, 1))

    @property
    def nvars(self):
        return self.numerator.nvars

    @property
    def is_zero(self):
        return self.numerator.is_zero

    def _reduce(self):
        if self.numerator.is_zero:
            self.denom = Counter()
            return
        changed = True
        while changed and self.denom:
            changed = False
            for form in list(self.denom):
                q = self.numerator.try_div_linear(form)
                if q is not None:
                    self.numerator = q
                    self.denom[form] -= 1
                    if not self.denom[form]:
                        del self.denom[form]
                    changed = True

    def denominator_product(self):
        prod = Polynomial.const(self.nvars, 1)
        for form, mult in self.denom.items():
            fp = form.as_polynomial()
            for _ in range(mult):
                prod = prod * fp
        return prod

    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = RationalElt(other)
        if not isinstance(other, RationalElt):
            return NotImplemented
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        common = self.denom & other.denom
        mine = self.denom - common
        theirs = other.denom - common
        # Cross-multiply over the non-shared factors only.
        left = self.numerator * _product_of(theirs, self.nvars)
        right = other.numerator * _product_of(mine, self.nvars)
        return RationalElt(left + right, common + mine + theirs)

    def __sub__(self, other):
        if isinstance(other, Polynomial):
            other = RationalElt(other)
        if not isinstance(other, RationalElt):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        out = object.__new__(RationalElt)
        out.numerator = -self.numerator
        out.denom = Counter(self.denom)
        return out

    def __mul__(self, other):
        if isinstance(other, int):
            other = RationalElt(Polynomial.const(self.nvars, other))
        elif isinstance(other, Polynomial):
            other = RationalElt(other)
        if not isinstance(other, RationalElt):
            return NotImplemented
        return RationalElt(self.numerator * other.numerator, self.denom + other.denom)

    __rmul__ = __mul__

    def div_form(self, form):
        """Divide by a linear form."""
        if form.is_zero:
            raise ZeroDivisionError("division by the zero form")
        return RationalElt(self.numerator, self.denom + Counter({form: 1}))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            other = RationalElt(other)
        if not isinstance(other, RationalElt):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        # Cross-multiplication; avoids relying on reduction being canonical.
        left = self.numerator * _product_of(other.denom, self.nvars)
        right = other.numerator * _product_of(self.denom, self.nvars)
        return left == right

    @property
    def is_polynomial(self):
        return not self.denom

    def to_polynomial(self):
        if self.denom:
            raise DenominatorNotCleared(f"denominator factors remain: {dict(self.denom)}")
        return self.numerator

    def __str__(self):
        if not self.denom:
            return str(self.numerator)
        den = " * ".join(
            f"({form})^{mult}" if mult > 1 else f"({form})"
            for form, mult in sorted(self.denom.items(), key=lambda kv: kv[0].coeffs)
        )
        return f"({self.numerator}) / ({den})"

    def __repr__(self):
        return f"RationalElt({self})"


def _product_of(factors, nvars):
    prod = Polynomial.const(nvars, 1)
    for form, mult in factors.items():
        fp = form.as_polynomial()
        for _ in range(mult):
            prod = prod * fp
    return prod


def shift_all_variables(p):
    """p(T_1 + s, ..., T_m + s) as a polynomial in m+1 variables (s last)."""
    n = p.nvars
    out = {}
    for exps, coeff in p.terms.items():
        partial = {(0,) * (n + 1): coeff}
        for i, e in enumerate(exps):
            if not e:
                continue
            # Multiply by (T_i + s)^e, expanded binomially.
            binom = {}
            b = 1
            for k in range(e + 1):
                key = tuple(e - k if j == i else 0 for j in range(n)) + (k,)
                binom[key] = b
                b = b * (e - k) // (k + 1)
            nxt = {}
            for e1, c1 in partial.items():
                for e2, c2 in binom.items():
                    key = tuple(a + b2 for a, b2 in zip(e1, e2))
                    nxt[key] = nxt.get(key, 0) + c1 * c2
            partial = nxt
        for e1, c1 in partial.items():
            out[e1] = out.get(e1, 0) + c1
    return Polynomial._raw(n + 1, out)


def difference_basis(p):
    """Rewrite in the difference variables y_i = T_i - T_{i+1}.

    Substitutes T_i = y_i + ... + y_{m-1} and T_m = 0, which is faithful only
    for translation-invariant polynomials; invariance under T_i -> T_i + s is
    checked first by symbolic substitution with a fresh variable.  Raises
    NotTranslationInvariant otherwise.
    """
    n = p.nvars
    shifted = shift_all_variables(p)
    embedded = Polynomial._raw(n + 1, {e + (0,): c for e, c in p.terms.items()})
    if shifted != embedded:
        raise NotTranslationInvariant(str(p))
    if n == 0:
        return Polynomial._raw(0, dict(p.terms))
    ny = n - 1
    sums = []
    for i in range(n):
        terms = {}
        for j in range(i, ny):
            terms[tuple(1 if k == j else 0 for k in range(ny))] = 1
        sums.append(Polynomial._raw(ny, terms))  # T_i = y_i + ... + y_{m-1}; T_m = 0
    power_cache = {}

    def power(i, e):
        key = (i, e)
        if key not in power_cache:
            power_cache[key] = sums[i] ** e
        return power_cache[key]

    out = Polynomial.zero(ny)
    for exps, coeff in p.terms.items():
        term = Polynomial.const(ny, coeff)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
        out = out + term
    return out
