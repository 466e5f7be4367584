"""Memoized computation of equivariant quantum Littlewood-Richardson coefficients.

Every coefficient c_{lam,mu}^{nu,d} is pinned down by four facts: the
coefficients of the multiplication by the unit and by the single-box class,
symmetry in (lam, mu), and a recurrence that expresses F_{nu,lam} * c as a
signed sum of coefficients that either have polynomial degree one larger at
the same quantum degree d, or quantum degree d-1.  Iterating the recurrence
within a fixed d strictly increases polynomial degree, which is bounded, so
the recursion is well founded with d as the outer measure.

Off-diagonal keys (lam != nu after symmetry) evaluate the recurrence
directly; each step divides an integer polynomial by the linear form
F_{nu,lam}, and the division must be exact.  Diagonal keys c_{lam,lam}^{lam,d}
with d > 0 cannot use the recurrence (F would vanish), so they are solved:
the box coefficient c_{box,lam}^{lam,d} is zero for d > 0, and evaluating it
symbolically with X = c_{lam,lam}^{lam,d} as the single unknown produces a
linear equation a*X + b = 0 with a != 0.  The symbolic pass works in the
fraction field, with denominators that are always products of linear forms.

Reachable same-degree diagonal keys during a solve are strictly contained in
the one being solved (the target index of the recurrence only ever shrinks),
so solving diagonals in increasing weight order keeps every system single
unknown.

Vanishing filters short-circuit keys known to be zero; they are optional and
the recursion computes the same values with them disabled, which the test
suite exercises.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from . import oracle
from .partition import (
    Partition,
    Rect,
    all_partitions,
    diag_closed_form,
    f_form,
    format_partition,
    parse_partition,
    pieri_diag_coeff,
)
from .poly import DenominatorNotCleared, Polynomial, RationalElt

CACHE_FORMAT = "eqlr-cache-v1"


class InternalInconsistency(Exception):
    """The engine violated an invariant it relies on (exit code 2 at the CLI)."""


@dataclass(frozen=True)
class CoeffKey:
    """One coefficient c_{lam,mu}^{nu,d}; d is the exponent of q."""

    lam: Partition
    mu: Partition
    nu: Partition
    d: int

    def __post_init__(self):
        if not (self.lam.rect == self.mu.rect == self.nu.rect):
            raise ValueError("partitions live in different rectangles")
        if self.d < 0:
            raise ValueError("quantum degree must be nonnegative")

    def normalized(self):
        """Symmetry in the first two indices: store the sorted pair."""
        if self.mu.parts < self.lam.parts:
            return CoeffKey(self.mu, self.lam, self.nu, self.d)
        return self

    def polynomial_degree(self):
        return self.lam.weight + self.mu.weight - self.nu.weight - self.lam.rect.m * self.d


@dataclass
class LinearExpr:
    """a*X + b over the fraction field, X the diagonal unknown being solved."""

    a: RationalElt
    b: RationalElt

    @classmethod
    def const(cls, value):
        if isinstance(value, Polynomial):
            value = RationalElt(value)
        return cls(RationalElt.zero(value.nvars), value)

    @classmethod
    def unknown(cls, nvars):
        return cls(RationalElt.one(nvars), RationalElt.zero(nvars))

    def __add__(self, other):
        return LinearExpr(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return LinearExpr(self.a - other.a, self.b - other.b)

    def div_form(self, form):
        return LinearExpr(self.a.div_form(form), self.b.div_form(form))


class ProductExpansion:
    """Expansion of sigma_lam o sigma_mu over pairs (nu, d) with polynomial coefficients."""

    def __init__(self, rect, lam, mu, terms):
        self.rect = rect
        self.lam = lam
        self.mu = mu
        self.terms = dict(terms)
        bound = (lam.weight + mu.weight) // rect.m
        for (nu, d), coeff in self.terms.items():
            if coeff.is_zero:
                raise ValueError("zero coefficient stored in expansion")
            if d > bound:
                raise ValueError(f"q-degree {d} exceeds bound {bound}")
            pd = lam.weight + mu.weight - nu.weight - rect.m * d
            if not coeff.is_homogeneous(pd):
                raise ValueError(f"coefficient of ({nu}, {d}) not homogeneous of degree {pd}")

    def __eq__(self, other):
        if not isinstance(other, ProductExpansion):
            return NotImplemented
        return (self.rect, self.terms) == (other.rect, other.terms)

    def sorted_terms(self):
        """(d ascending, weight of nu descending, nu lexicographically descending)."""
        return sorted(
            self.terms.items(),
            key=lambda kv: (kv[0][1], -kv[0][0].weight, tuple(-x for x in kv[0][0].parts)),
        )

    def integer_specialization(self):
        """Coefficients at T = 0; drops entries that vanish there."""
        out = {}
        for (nu, d), coeff in self.terms.items():
            c = coeff.terms.get((0,) * self.rect.m, 0)
            if c:
                out[(nu, d)] = c
        return out


class Calculator:
    """Computes and memoizes all coefficients for one rectangle.

    `filters` is one of "default" (the cheap vanishing criteria), "all"
    (additionally the classical-product vanishing test), or "none".  All
    three must produce identical values; "none" exists to test exactly that.
    """

    def __init__(self, rect, filters="default"):
        if filters not in ("default", "all", "none"):
            raise ValueError(f"unknown filter mode {filters!r}")
        self.rect = rect
        self.filters = filters
        self._memo = {}
        self._r_memo = {}
        self._active = set()
        self._by_weight = all_partitions(rect)
        # Same-degree chains lengthen polynomial degree by one per step; the
        # extra p(m-p) headroom covers negative starting degrees in the
        # filterless mode.
        self._depth_limit = 3 * rect.p * rect.cols + 4

    # -- public surface ----------------------------------------------------

    def eqlr(self, lam, mu, nu, d):
        """The coefficient c_{lam,mu}^{nu,d} as an integer polynomial."""
        key = CoeffKey(lam, mu, nu, d).normalized()
        if key.lam.rect != self.rect:
            raise ValueError("partitions do not live in this calculator's rectangle")
        return self._get(key, 0)

    def vanish_filter(self, lam, mu, nu, d):
        """True if a cheap criterion certifies the coefficient is zero."""
        m, p, cols = self.rect.m, self.rect.p, self.rect.cols
        pd = lam.weight + mu.weight - nu.weight - m * d
        if pd < 0:
            return True
        if d == 0:
            return not (nu.contains(lam) and nu.contains(mu))
        if lam.weight + d * d > nu.weight + m * d:
            return True
        if mu.weight + d * d > nu.weight + m * d:
            return True
        if nu.is_zero and (lam.is_full or mu.is_full) and d < min(p, cols):
            return True
        if mu.is_box and not (d == 1 and nu == lam.rim_minus()):
            return True
        if lam.is_box and not (d == 1 and nu == mu.rim_minus()):
            return True
        return False

    def classical_vanish_filter(self, lam, mu, nu, d):
        """True if a classical product obstruction certifies vanishing (d > 0).

        Cuts the first d rows (resp. columns) off lam or mu and off the dual
        of nu and asks whether the corresponding classical product survives
        in the smaller (resp. larger) Grassmannian.
        """
        if d <= 0:
            return False
        p, cols = self.rect.p, self.rect.cols
        nud = nu.dual()
        if d < p:
            target = nud.remove_rows(d)
            for side in (lam, mu):
                if not oracle.classical_nonvanishing(side.remove_rows(d), target):
                    return True
        if d < cols:
            target = nud.remove_cols(d)
            for side in (lam, mu):
                if not oracle.classical_nonvanishing(side.remove_cols(d), target):
                    return True
        return False

    def r_function(self, lam, alpha):
        """Chain sum R over saturated chains from lam down to alpha; never zero."""
        if not lam.contains(alpha):
            raise ValueError(f"{alpha} is not contained in {lam}")
        key = (lam.parts, alpha.parts)
        hit = self._r_memo.get(key)
        if hit is not None:
            return hit
        if lam == alpha:
            value = RationalElt.one(self.rect.m)
        else:
            total = RationalElt.zero(self.rect.m)
            for delta in alpha.covers_above():
                if lam.contains(delta):
                    total = total + self.r_function(lam, delta)
            value = total.div_form(f_form(lam, alpha))
            if value.is_zero:
                raise InternalInconsistency(f"chain sum vanished for {lam}, {alpha}")
        self._r_memo[key] = value
        return value

    def eq_pieri(self, lam):
        """Closed-form expansion of sigma_lam o sigma_box; no recursion."""
        terms = {}
        one = Polynomial.const(self.rect.m, 1)
        for delta in lam.covers_above():
            terms[(delta, 0)] = one
        diag = pieri_diag_coeff(lam)
        if not diag.is_zero:
            terms[(lam, 0)] = diag
        lm = lam.rim_minus()
        if lm is not None:
            terms[(lm, 1)] = one
        return ProductExpansion(self.rect, lam, self.rect.box(), terms)

    def product(self, lam, mu):
        """Full expansion of sigma_lam o sigma_mu."""
        if lam.rect != self.rect or mu.rect != self.rect:
            raise ValueError("rectangle mismatch")
        terms = {}
        dmax = (lam.weight + mu.weight) // self.rect.m
        for d in range(dmax + 1):
            for nu in self._by_weight:
                coeff = self.eqlr(lam, mu, nu, d)
                if not coeff.is_zero:
                    terms[(nu, d)] = coeff
        return ProductExpansion(self.rect, lam, mu, terms)

    def diag_table(self, d):
        """All diagonal coefficients at quantum degree d, in weight order."""
        return [(lam, self.eqlr(lam, lam, lam, d)) for lam in self._by_weight]

    # -- cache persistence ---------------------------------------------------

    def save_cache(self, path):
        entries = {}
        for (lp, mp, np_, d), poly in self._memo.items():
            key = "|".join(
                [
                    format_partition(Partition(self.rect, lp)),
                    format_partition(Partition(self.rect, mp)),
                    format_partition(Partition(self.rect, np_)),
                    str(d),
                ]
            )
            entries[key] = poly.to_json_dict()
        payload = {
            "format": CACHE_FORMAT,
            "p": self.rect.p,
            "m": self.rect.m,
            "entries": dict(sorted(entries.items())),
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")

    def load_cache(self, path):
        """Load entries, validating each one's homogeneity before trusting it."""
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        if payload.get("format") != CACHE_FORMAT:
            raise ValueError(f"unsupported cache format {payload.get('format')!r}")
        if payload.get("p") != self.rect.p or payload.get("m") != self.rect.m:
            raise ValueError("cache was written for a different rectangle")
        loaded = 0
        for key, data in payload.get("entries", {}).items():
            pieces = key.split("|")
            if len(pieces) != 4:
                raise ValueError(f"malformed cache key {key!r}")
            lam = parse_partition(pieces[0], self.rect)
            mu = parse_partition(pieces[1], self.rect)
            nu = parse_partition(pieces[2], self.rect)
            d = int(pieces[3])
            if d < 0:
                raise ValueError(f"negative degree in cache key {key!r}")
            poly = Polynomial.from_json_dict(data)
            if poly.nvars != self.rect.m:
                raise ValueError(f"cache entry {key!r} has wrong variable count")
            pd = lam.weight + mu.weight - nu.weight - self.rect.m * d
            if not poly.is_homogeneous(pd):
                raise ValueError(f"cache entry {key!r} fails its homogeneity check")
            ck = CoeffKey(lam, mu, nu, d).normalized()
            self._memo[(ck.lam.parts, ck.mu.parts, ck.nu.parts, d)] = poly
            loaded += 1
        return loaded

    # -- recursion ----------------------------------------------------------

    def _get(self, key, depth):
        tup = (key.lam.parts, key.mu.parts, key.nu.parts, key.d)
        hit = self._memo.get(tup)
        if hit is not None:
            return hit
        if tup in self._active:
            raise InternalInconsistency(f"cyclic dependency at {tup}")
        self._active.add(tup)
        try:
            value = self._compute(key, depth)
        finally:
            self._active.discard(tup)
        self._memo[tup] = value
        return value

    def _filtered(self, lam, mu, nu, d):
        if self.filters == "none":
            return False
        if self.vanish_filter(lam, mu, nu, d):
            return True
        return self.filters == "all" and self.classical_vanish_filter(lam, mu, nu, d)

    @staticmethod
    def _recursion_pair(lam, mu, nu):
        """Choose the recurrence argument for a non-diagonal key.

        Prefer an argument not contained in nu: its recursion never meets the
        diagonal again, and along the chains toward a diagonal unknown this
        makes the X-coefficient assemble exactly as the chain-sum function.
        Ties break to the normalized (lexicographically smaller) first slot.
        """
        if lam == nu:
            return mu, lam
        if mu == nu:
            return lam, mu
        if not nu.contains(lam):
            return lam, mu
        if not nu.contains(mu):
            return mu, lam
        return lam, mu

    def _compute(self, key, depth):
        lam, mu, nu, d = key.lam, key.mu, key.nu, key.d
        if self._filtered(lam, mu, nu, d):
            return Polynomial.zero(self.rect.m)
        if lam == mu == nu:
            if d == 0:
                return diag_closed_form(lam)
            return self._solve_diagonal(lam, d)
        if depth > self._depth_limit:
            raise InternalInconsistency(f"recursion depth exceeded at {key}")
        first, other = self._recursion_pair(lam, mu, nu)
        total = Polynomial.zero(self.rect.m)
        for sign, (l2, m2, n2, d2) in self._star_terms(first, other, nu, d):
            sub = self._get(CoeffKey(l2, m2, n2, d2).normalized(), depth + 1 if d2 == d else 0)
            total = total + sub if sign > 0 else total - sub
        quotient = total.try_div_linear(f_form(nu, first))
        if quotient is None:
            raise InternalInconsistency(f"recurrence numerator not divisible at {key}")
        return quotient

    @staticmethod
    def _star_terms(first, other, nu, d):
        """Terms of the recurrence for c_{first,other}^{nu,d}, first != nu.

        Same-degree terms raise the polynomial degree by one; the rim terms
        sit at degree d-1 and are omitted when the rim operation leaves the
        rectangle, or entirely when d = 0.
        """
        for delta in first.covers_above():
            yield 1, (delta, other, nu, d)
        for zeta in nu.covers_below():
            yield -1, (first, other, zeta, d)
        if d > 0:
            fm = first.rim_minus()
            if fm is not None:
                yield 1, (fm, other, nu, d - 1)
            np_ = nu.rim_plus()
            if np_ is not None:
                yield -1, (first, other, np_, d - 1)

    def _solve_diagonal(self, lam, d):
        """c_{lam,lam}^{lam,d} for d > 0 via the single-unknown linear equation."""
        if lam.weight <= 1:
            # The unit never multiplies into q-terms and the box coefficient
            # is pinned by the Pieri expansion, whose only q-term targets the
            # rim-removed partition, never the box itself.
            return Polynomial.zero(self.rect.m)
        sort_key = (lam.weight, lam.parts)
        for xi in self._by_weight:
            if (xi.weight, xi.parts) >= sort_key:
                break
            self._get(CoeffKey(xi, xi, xi, d), 0)
        ctx = _SolveContext(unknown=(lam.parts, lam.parts, lam.parts, d), lam=lam, d=d)
        expr = self._symbolic(self.rect.box(), lam, lam, d, ctx, 0)
        if expr.a.is_zero:
            raise InternalInconsistency(f"pinning coefficient vanished for {lam} at d={d}")
        # Solve a*X + b = 0 exactly: X = -(b/a), which must be a polynomial.
        numerator = expr.b.numerator * expr.a.denominator_product()
        value = numerator.div_exact(expr.a.numerator)
        if value is None:
            raise InternalInconsistency(f"diagonal solve not polynomial for {lam} at d={d}")
        for form, mult in expr.b.denom.items():
            for _ in range(mult):
                value = value.try_div_linear(form)
                if value is None:
                    raise InternalInconsistency(f"diagonal solve not polynomial for {lam} at d={d}")
        return -value

    def _symbolic(self, lam, mu, nu, d, ctx, depth):
        """Value of a key as a*X + b during the solve for ctx's diagonal.

        Same-degree keys are *formal* solutions of the recurrence here, so no
        vanishing shortcut may touch them: the pinning equation itself states
        that a key of negative polynomial degree is zero, and zeroing such
        keys early would erase the X-dependence the solve extracts.  Only the
        degree-(d-1) constants go through the filtered engine path.
        """
        key = CoeffKey(lam, mu, nu, d).normalized()
        tup = (key.lam.parts, key.mu.parts, key.nu.parts, d)
        if tup == ctx.unknown:
            return LinearExpr.unknown(self.rect.m)
        hit = ctx.cache.get(tup)
        if hit is not None:
            return hit
        if d < ctx.d:
            expr = LinearExpr.const(self._get(key, 0))
            ctx.cache[tup] = expr
            return expr
        lam, mu, nu = key.lam, key.mu, key.nu
        if lam == mu == nu:
            # A same-degree diagonal other than the unknown must be strictly
            # below it; the weight-ordered pre-pass has already solved it.
            if (lam.weight, lam.parts) >= (ctx.lam.weight, ctx.lam.parts):
                raise InternalInconsistency(
                    f"diagonal {lam} reached while solving {ctx.lam} at d={d}"
                )
            expr = LinearExpr.const(self._get(key, 0))
            ctx.cache[tup] = expr
            return expr
        if depth > self._depth_limit:
            raise InternalInconsistency(f"symbolic recursion depth exceeded at {key}")
        first, other = self._recursion_pair(lam, mu, nu)
        total = LinearExpr.const(Polynomial.zero(self.rect.m))
        for sign, (l2, m2, n2, d2) in self._star_terms(first, other, nu, d):
            if d2 == d:
                term = self._symbolic(l2, m2, n2, d2, ctx, depth + 1)
            else:
                term = LinearExpr.const(self._get(CoeffKey(l2, m2, n2, d2).normalized(), 0))
            total = total + term if sign > 0 else total - term
        expr = total.div_form(f_form(nu, first))
        ctx.cache[tup] = expr
        return expr


@dataclass
class _SolveContext:
    unknown: tuple
    lam: Partition
    d: int
    cache: dict = field(default_factory=dict)


def multiply_expansion(calc, expansion, sigma):
    """Expansion of (expansion) o sigma_sigma, collected over (nu, total degree)."""
    out = {}
    for (rho, d1), c1 in expansion.terms.items():
        sub = calc.product(rho, sigma)
        for (tau, d2), c2 in sub.terms.items():
            key = (tau, d1 + d2)
            piece = c1 * c2
            prev = out.get(key)
            out[key] = piece if prev is None else prev + piece
    return {k: v for k, v in out.items() if not v.is_zero}
