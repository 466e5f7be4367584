"""Independent reference computations used to validate the engine.

Three separate sources of truth, sharing only the polynomial and partition
primitives with the engine:

* classical structure constants by brute-force enumeration of skew tableaux
  with the lattice-word condition;
* the equivariant structure constants by the triangular recursion that peels
  one box at a time off the first index (or grows the second index on the
  diagonal), which has a different shape from the engine's recurrence;
* the integer quantum multiplication by the single-box class.
"""

from __future__ import annotations

from .partition import Partition, all_partitions, diag_closed_form, f_form
from .poly import Polynomial


class SkewShape:
    """Skew diagram outer/inner with componentwise containment."""

    def __init__(self, outer, inner):
        if outer.rect != inner.rect:
            raise ValueError("rectangle mismatch")
        if not outer.contains(inner):
            raise ValueError(f"{inner} is not contained in {outer}")
        self.outer = outer
        self.inner = inner

    def cells_reading_order(self):
        """Cells (row, col) row by row, right to left: the reading word order."""
        cells = []
        for r, (o, i) in enumerate(zip(self.outer.parts, self.inner.parts)):
            cells.extend((r, c) for c in range(o - 1, i - 1, -1))
        return cells


def classical_lr(lam, mu, nu):
    """Multiplicity of sigma_nu in sigma_lam * sigma_mu, by tableau counting.

    Counts column-strict fillings of nu/lam with content mu whose reading
    word is a lattice word; zero whenever the weights or containments rule
    the shape out.
    """
    if lam.rect != mu.rect or lam.rect != nu.rect:
        raise ValueError("rectangle mismatch")
    if lam.weight + mu.weight != nu.weight:
        return 0
    if not (nu.contains(lam) and nu.contains(mu)):
        return 0
    shape = SkewShape(nu, lam)
    cells = shape.cells_reading_order()
    if not cells:
        return 1
    content = mu.parts
    nrows = len(content)
    grid = [[0] * nu.parts[r] for r in range(len(nu.parts))]
    counts = [0] * (nrows + 1)

    def place(idx):
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        right = grid[r][c + 1] if c + 1 < nu.parts[r] and c + 1 >= lam.parts[r] else None
        above = grid[r - 1][c] if r > 0 and c >= lam.parts[r - 1] else 0
        total = 0
        for v in range(1, nrows + 1):
            if counts[v] >= content[v - 1]:
                continue
            if v > 1 and counts[v] >= counts[v - 1]:
                continue  # lattice word: every prefix has #v <= #(v-1)
            if right is not None and v > right:
                continue  # rows weakly increase left to right
            if v <= above:
                continue  # columns strictly increase top to bottom
            grid[r][c] = v
            counts[v] += 1
            total += place(idx + 1)
            counts[v] -= 1
            grid[r][c] = 0
        return total

    return place(0)


def classical_nonvanishing(alpha, beta):
    """Whether sigma_alpha * sigma_beta is nonzero classically.

    Two Schubert varieties in general position meet exactly when the second
    partition fits inside the complement of the first, i.e. beta is
    contained in the dual of alpha.
    """
    if alpha.rect != beta.rect:
        raise ValueError("rectangle mismatch")
    return alpha.dual().contains(beta)


class EquivariantRef:
    """Equivariant structure constants by the one-box peeling recursion.

    Not symmetrized in (lam, mu): symmetry of the result is a theorem this
    implementation gets to re-prove numerically, keeping it a genuinely
    independent check of the engine's d = 0 slice.
    """

    def __init__(self, rect):
        self.rect = rect
        self._memo = {}

    def coeff(self, lam, mu, nu):
        key = (lam.parts, mu.parts, nu.parts)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        value = self._compute(lam, mu, nu)
        self._memo[key] = value
        return value

    def _compute(self, lam, mu, nu):
        m = self.rect.m
        if not (nu.contains(lam) and nu.contains(mu)):
            return Polynomial.zero(m)
        if lam == nu:
            if mu == nu:
                return diag_closed_form(lam)
            # Grow the second index one box at a time toward the diagonal.
            total = Polynomial.zero(m)
            for delta in mu.covers_above():
                total = total + self.coeff(lam, delta, lam)
            quotient = total.try_div_linear(f_form(lam, mu))
        else:
            # Peel the first index; both sums lower the gap |nu| - |lam|.
            total = Polynomial.zero(m)
            for delta in lam.covers_above():
                total = total + self.coeff(delta, mu, nu)
            for zeta in nu.covers_below():
                total = total - self.coeff(lam, mu, zeta)
            quotient = total.try_div_linear(f_form(nu, lam))
        if quotient is None:
            raise RuntimeError(f"reference recursion not divisible at {lam}, {mu}, {nu}")
        return quotient


def quantum_pieri_ref(lam):
    """Integer quantum multiplication by the box: covers plus one q-term."""
    terms = {(delta, 0): 1 for delta in lam.covers_above()}
    lm = lam.rim_minus()
    if lm is not None:
        terms[(lm, 1)] = 1
    return terms


def classical_product_table(rect):
    """All nonzero classical constants of the rectangle, for exhaustive checks."""
    table = {}
    parts = all_partitions(rect)
    for lam in parts:
        for mu in parts:
            for nu in parts:
                c = classical_lr(lam, mu, nu)
                if c:
                    table[(lam, mu, nu)] = c
    return table
