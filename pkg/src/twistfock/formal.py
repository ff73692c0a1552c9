"""Windowed formal calculus: exact Laurent-type series with fractional exponents.

A series here is a finite table of exactly-known coefficients together with a
*window* — the per-variable exponent range inside which the table is complete.
Outside its window a series is unknown, not zero; every operation computes the
window of its result from the windows of its inputs, so a coefficient is never
reported unless it is provably exact.  Formal-distribution kernels (delta
functions and their fractional-lattice variants) are materialized directly
from their defining formulas, which are valid on any window.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum

from .scalars import (
    QQ,
    ZERO,
    binomial,
    cyc_root_of_unity,
    cyc_sqrt_k,
    is_rational,
    rational_ceil,
    rational_floor,
    scalar_is_zero,
)

# ---------------------------------------------------------------------------
# windows
# ---------------------------------------------------------------------------


def _min_opt(a, b):
    """Minimum where None means minus infinity."""
    if a is None or b is None:
        return None
    return min(a, b)


def _max_opt(a, b):
    """Maximum where None means plus infinity."""
    if a is None or b is None:
        return None
    return max(a, b)


def _add_opt(a, b):
    if a is None or b is None:
        return None
    return a + b


class Window:
    """Per-variable closed exponent intervals; None bounds mean unbounded."""

    __slots__ = ("bounds",)

    def __init__(self, bounds: dict):
        norm = {}
        for var, (lo, hi) in bounds.items():
            lo = None if lo is None else QQ(lo)
            hi = None if hi is None else QQ(hi)
            if lo is not None and hi is not None and lo > hi:
                raise ValueError(f"empty window for {var}: [{lo}, {hi}]")
            norm[var] = (lo, hi)
        self.bounds = norm

    @classmethod
    def cube(cls, variables, lo, hi) -> "Window":
        return cls({v: (lo, hi) for v in variables})

    def bounds_for(self, var):
        return self.bounds.get(var, (None, None))

    def contains(self, var, exponent) -> bool:
        lo, hi = self.bounds_for(var)
        if lo is not None and exponent < lo:
            return False
        if hi is not None and exponent > hi:
            return False
        return True

    def contains_mono(self, variables, mono) -> bool:
        return all(self.contains(v, e) for v, e in zip(variables, mono))

    def intersect(self, other: "Window") -> "Window":
        merged = {}
        for var in set(self.bounds) | set(other.bounds):
            alo, ahi = self.bounds_for(var)
            blo, bhi = other.bounds_for(var)
            lo, hi = _max_opt_lo(alo, blo), _min_opt_hi(ahi, bhi)
            if lo is not None and hi is not None and lo > hi:
                raise ValueError(f"empty window intersection for {var}")
            merged[var] = (lo, hi)
        return Window(merged)

    def shifted(self, var, amount) -> "Window":
        bounds = dict(self.bounds)
        lo, hi = self.bounds_for(var)
        bounds[var] = (_add_opt(lo, amount), _add_opt(hi, amount))
        return Window(bounds)

    def drop(self, var) -> "Window":
        return Window({v: b for v, b in self.bounds.items() if v != var})

    def lattice_points(self, variables, den: int):
        """All exponent tuples on the (1/den)-lattice inside this window."""
        ranges = []
        for var in variables:
            lo, hi = self.bounds_for(var)
            if lo is None or hi is None:
                raise ValueError(f"cannot enumerate unbounded window for {var}")
            lo_n = rational_ceil(lo * den)
            hi_n = rational_floor(hi * den)
            ranges.append([QQ(n, den) for n in range(lo_n, hi_n + 1)])
        return itertools.product(*ranges)

    def is_bounded(self, variables) -> bool:
        return all(
            self.bounds_for(v)[0] is not None and self.bounds_for(v)[1] is not None
            for v in variables
        )

    def __eq__(self, other):
        return isinstance(other, Window) and self.bounds == other.bounds

    def __repr__(self):
        inner = ", ".join(
            f"{v}:[{lo},{hi}]" for v, (lo, hi) in sorted(self.bounds.items())
        )
        return f"Window({inner})"


def _max_opt_lo(a, b):
    """Maximum of lower bounds where None means minus infinity."""
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _min_opt_hi(a, b):
    """Minimum of upper bounds where None means plus infinity."""
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def assert_on_lattice(exponent, den: int):
    """Validate that an exponent lies on the (1/den)-lattice."""
    e = QQ(exponent)
    if (e * den).denominator != 1:
        raise ValueError(f"exponent {e} is not on the (1/{den})-lattice")
    return e


# ---------------------------------------------------------------------------
# scalar-valued series
# ---------------------------------------------------------------------------


@dataclass
class ScalarSeries:
    """Finite coefficient table + window + optional true support bounds.

    ``window=None`` means the table is the entire series (complete knowledge).
    ``supp_lo``/``supp_hi`` record mathematically guaranteed support bounds
    per variable (None = unbounded); they make products of truncations sound.
    """

    variables: tuple
    coeffs: dict
    window: Window | None = None
    supp_lo: dict = field(default_factory=dict)
    supp_hi: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for mono, value in self.coeffs.items():
            if scalar_is_zero(value):
                continue
            clean[tuple(QQ(e) for e in mono)] = value
        self.coeffs = clean
        if self.window is None:
            # complete series: true support is the stored hull
            for i, var in enumerate(self.variables):
                exps = [m[i] for m in self.coeffs]
                hull = (min(exps), max(exps)) if exps else (ZERO, ZERO)
                self.supp_lo.setdefault(var, hull[0])
                self.supp_hi.setdefault(var, hull[1])

    # -- knowledge ----------------------------------------------------------

    def _supp(self, var):
        return self.supp_lo.get(var, None), self.supp_hi.get(var, None)

    def is_known(self, mono) -> bool:
        if self.window is None:
            return True
        for var, e in zip(self.variables, mono):
            slo, shi = self._supp(var)
            if slo is not None and e < slo:
                continue  # provably zero there
            if shi is not None and e > shi:
                continue
            if not self.window.contains(var, e):
                return False
        return True

    def get(self, mono):
        mono = tuple(QQ(e) for e in mono)
        if not self.is_known(mono):
            raise ValueError(f"coefficient at {mono} lies outside the window")
        return self.coeffs.get(mono, ZERO)

    # -- linear structure -----------------------------------------------------

    def _aligned(self, other: "ScalarSeries"):
        variables = tuple(dict.fromkeys(self.variables + other.variables))

        def embed(series):
            idx = [
                series.variables.index(v) if v in series.variables else None
                for v in variables
            ]
            coeffs = {}
            for mono, val in series.coeffs.items():
                new = tuple(ZERO if i is None else mono[i] for i in idx)
                coeffs[new] = val
            supp_lo = dict(series.supp_lo)
            supp_hi = dict(series.supp_hi)
            window = series.window
            for v in variables:
                if v not in series.variables:
                    supp_lo[v] = ZERO
                    supp_hi[v] = ZERO
            return ScalarSeries(variables, coeffs, window, supp_lo, supp_hi)

        return embed(self), embed(other)

    def __add__(self, other: "ScalarSeries") -> "ScalarSeries":
        a, b = self._aligned(other)
        coeffs = dict(a.coeffs)
        for mono, val in b.coeffs.items():
            coeffs[mono] = coeffs.get(mono, ZERO) + val
        if a.window is None and b.window is None:
            window = None
        elif a.window is None:
            window = b.window
        elif b.window is None:
            window = a.window
        else:
            window = a.window.intersect(b.window)
        supp_lo = {
            v: _min_opt(a.supp_lo.get(v), b.supp_lo.get(v)) for v in a.variables
        }
        supp_hi = {
            v: _max_opt(a.supp_hi.get(v), b.supp_hi.get(v)) for v in a.variables
        }
        if window is not None:
            coeffs = {
                m: c
                for m, c in coeffs.items()
                if window.contains_mono(a.variables, m)
            }
        return ScalarSeries(a.variables, coeffs, window, supp_lo, supp_hi)

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, scalar) -> "ScalarSeries":
        return ScalarSeries(
            self.variables,
            {m: scalar * c for m, c in self.coeffs.items()},
            self.window,
            dict(self.supp_lo),
            dict(self.supp_hi),
        )

    # -- multiplication ----------------------------------------------------------

    def __mul__(self, other: "ScalarSeries") -> "ScalarSeries":
        """Convolution product with a window computed, never guessed.

        For each variable the set of splittings contributing to an output
        exponent is pinned by the factors' support bounds; the result window
        is the largest interval on which every contributing coefficient of
        both factors is inside its window.
        """
        a, b = self._aligned(other)
        window_bounds = {}
        exact = a.window is None and b.window is None
        for var in a.variables:
            salo, sahi = a._supp(var)
            sblo, sbhi = b._supp(var)
            if (salo is None and sbhi is None) or (sahi is None and sblo is None):
                raise ValueError(
                    f"non-composable product: unbounded splittings in {var}"
                )
            if exact:
                continue
            lo_conds, hi_conds = [], []
            walo, wahi = (None, None) if a.window is None else a.window.bounds_for(var)
            wblo, wbhi = (None, None) if b.window is None else b.window.bounds_for(var)
            # every contributing exponent of a must sit inside a's window
            if walo is not None and not (salo is not None and salo >= walo):
                if sbhi is None:
                    raise ValueError(f"non-composable product in {var}")
                lo_conds.append(walo + sbhi)
            if wahi is not None and not (sahi is not None and sahi <= wahi):
                if sblo is None:
                    raise ValueError(f"non-composable product in {var}")
                hi_conds.append(wahi + sblo)
            # and symmetrically for b
            if wblo is not None and not (sblo is not None and sblo >= wblo):
                if sahi is None:
                    raise ValueError(f"non-composable product in {var}")
                lo_conds.append(wblo + sahi)
            if wbhi is not None and not (sbhi is not None and sbhi <= wbhi):
                if salo is None:
                    raise ValueError(f"non-composable product in {var}")
                hi_conds.append(wbhi + salo)
            lo = max(lo_conds) if lo_conds else None
            hi = min(hi_conds) if hi_conds else None
            if lo is not None and hi is not None and lo > hi:
                raise ValueError(f"non-composable product: empty window in {var}")
            window_bounds[var] = (lo, hi)
        window = None if exact else Window(window_bounds)

        coeffs = {}
        for ma, ca in a.coeffs.items():
            for mb, cb in b.coeffs.items():
                mono = tuple(ea + eb for ea, eb in zip(ma, mb))
                if window is not None and not window.contains_mono(a.variables, mono):
                    continue
                prod = ca * cb
                if mono in coeffs:
                    coeffs[mono] = coeffs[mono] + prod
                else:
                    coeffs[mono] = prod
        supp_lo = {
            v: _add_opt(a.supp_lo.get(v), b.supp_lo.get(v)) for v in a.variables
        }
        supp_hi = {
            v: _add_opt(a.supp_hi.get(v), b.supp_hi.get(v)) for v in a.variables
        }
        return ScalarSeries(a.variables, coeffs, window, supp_lo, supp_hi)

    # -- calculus ------------------------------------------------------------------

    def derivative(self, var) -> "ScalarSeries":
        i = self.variables.index(var)
        coeffs = {}
        for mono, val in self.coeffs.items():
            if mono[i] == 0:
                continue
            new = list(mono)
            new[i] = mono[i] - 1
            coeffs[tuple(new)] = coeffs.get(tuple(new), ZERO) + mono[i] * val
        window = None if self.window is None else self.window.shifted(var, -1)
        supp_lo = dict(self.supp_lo)
        supp_hi = dict(self.supp_hi)
        supp_lo[var] = _add_opt(supp_lo.get(var), -1)
        supp_hi[var] = _add_opt(supp_hi.get(var), -1)
        return ScalarSeries(self.variables, coeffs, window, supp_lo, supp_hi)

    def residue(self, var) -> "ScalarSeries":
        """Coefficient of var^-1, as a series in the remaining variables."""
        if self.window is not None and not self.window.contains(var, QQ(-1)):
            slo, shi = self._supp(var)
            outside = (slo is not None and slo > -1) or (shi is not None and shi < -1)
            if not outside:
                raise ValueError(
                    f"window does not cover the residue exponent -1 in {var}"
                )
        i = self.variables.index(var)
        rest = tuple(v for v in self.variables if v != var)
        coeffs = {}
        for mono, val in self.coeffs.items():
            if mono[i] == -1:
                reduced = tuple(e for j, e in enumerate(mono) if j != i)
                coeffs[reduced] = coeffs.get(reduced, ZERO) + val
        window = None if self.window is None else self.window.drop(var)
        supp_lo = {v: self.supp_lo.get(v) for v in rest}
        supp_hi = {v: self.supp_hi.get(v) for v in rest}
        return ScalarSeries(rest, coeffs, window, supp_lo, supp_hi)

    def coefficient_of(self, var, exponent) -> "ScalarSeries":
        """Slice at a fixed exponent of one variable."""
        exponent = QQ(exponent)
        if self.window is not None and not self.window.contains(var, exponent):
            raise ValueError(f"window does not cover {var}^{exponent}")
        i = self.variables.index(var)
        rest = tuple(v for v in self.variables if v != var)
        coeffs = {}
        for mono, val in self.coeffs.items():
            if mono[i] == exponent:
                reduced = tuple(e for j, e in enumerate(mono) if j != i)
                coeffs[reduced] = coeffs.get(reduced, ZERO) + val
        window = None if self.window is None else self.window.drop(var)
        supp_lo = {v: self.supp_lo.get(v) for v in rest}
        supp_hi = {v: self.supp_hi.get(v) for v in rest}
        return ScalarSeries(rest, coeffs, window, supp_lo, supp_hi)

    def constant_term(self):
        """The scalar value of a zero-variable series."""
        if self.variables:
            raise ValueError("series still has variables")
        return self.coeffs.get((), ZERO)


def series_monomial(variables, mono, coeff=1) -> ScalarSeries:
    return ScalarSeries(tuple(variables), {tuple(QQ(e) for e in mono): QQ(coeff)})


def series_constant(value) -> ScalarSeries:
    return ScalarSeries((), {(): value})


# ---------------------------------------------------------------------------
# exponent rescaling (grading-operator substitutions)
# ---------------------------------------------------------------------------


def scale_exponents(series: ScalarSeries, var, base) -> ScalarSeries:
    """Apply the substitution sending var^n to base^n * var^n (integer n)."""
    i = series.variables.index(var)
    coeffs = {}
    for mono, val in series.coeffs.items():
        e = mono[i]
        if e.denominator != 1:
            raise ValueError(f"scale_exponents needs integer exponents, got {e}")
        coeffs[mono] = (base ** int(e)) * val
    return ScalarSeries(
        series.variables, coeffs, series.window,
        dict(series.supp_lo), dict(series.supp_hi),
    )


def root_substitution(series: ScalarSeries, var, j: int, order: int, conductor: int) -> ScalarSeries:
    """Substitute var^(1/order) -> zeta_order^j * var^(1/order).

    Multiplies the coefficient at var^e by zeta_order^(j * order * e);
    exponents must lie on the (1/order)-lattice.
    """
    i = series.variables.index(var)
    if conductor % order != 0:
        raise ValueError(f"conductor mismatch: {order} does not divide {conductor}")
    zeta = cyc_root_of_unity(conductor, conductor // order)
    coeffs = {}
    for mono, val in series.coeffs.items():
        steps = assert_on_lattice(mono[i], order) * order
        coeffs[mono] = (zeta ** (j * int(steps))) * val
    return ScalarSeries(
        series.variables, coeffs, series.window,
        dict(series.supp_lo), dict(series.supp_hi),
    )


def graded_variable_shift(series: ScalarSeries, var, new_var, ratio) -> ScalarSeries:
    """Send var^n to new_var^(n*ratio) * var^n (a grading-operator action)."""
    ratio = QQ(ratio)
    i = series.variables.index(var)
    variables = series.variables + (new_var,)
    coeffs = {}
    for mono, val in series.coeffs.items():
        coeffs[mono + (mono[i] * ratio,)] = val
    window = series.window
    if window is not None:
        lo, hi = window.bounds_for(var)
        pair = sorted(
            x for x in (_mul_opt(lo, ratio), _mul_opt(hi, ratio)) if x is not None
        )
        bounds = dict(window.bounds)
        if len(pair) == 2:
            bounds[new_var] = (pair[0], pair[1])
        else:
            bounds[new_var] = (None, None)
        window = Window(bounds)
    supp_lo = dict(series.supp_lo)
    supp_hi = dict(series.supp_hi)
    vlo, vhi = series._supp(var)
    pair = sorted(
        (x for x in (_mul_opt(vlo, ratio), _mul_opt(vhi, ratio)) if x is not None)
    )
    supp_lo[new_var] = pair[0] if len(pair) == 2 else None
    supp_hi[new_var] = pair[1] if len(pair) == 2 else None
    return ScalarSeries(variables, coeffs, window, supp_lo, supp_hi)


def _mul_opt(a, ratio):
    return None if a is None else a * ratio


# ---------------------------------------------------------------------------
# binomials and delta kernels
# ---------------------------------------------------------------------------


def binom_expand(var1, var2, exponent, window: Window, second_sign=-1) -> ScalarSeries:
    """(x1 + sign*x2)^r expanded in nonnegative integral powers of var2.

    The second listed variable carries the nonnegative powers, so
    binom_expand('x2','x1',r,...) is a genuinely different series from
    binom_expand('x1','x2',r,...).
    """
    r = QQ(exponent)
    variables = (var1, var2)
    lo2, hi2 = window.bounds_for(var2)
    lo1, hi1 = window.bounds_for(var1)
    if hi2 is None and lo1 is None:
        raise ValueError("binom_expand needs a bounded window to materialize")
    i_max = []
    if hi2 is not None:
        i_max.append(rational_floor(hi2))
    if lo1 is not None:
        i_max.append(rational_floor(r - lo1))
    coeffs = {}
    for i in range(0, min(i_max) + 1):
        c = binomial(r, i) * (QQ(second_sign) ** i)
        mono = (r - i, QQ(i))
        if window.contains_mono(variables, mono):
            coeffs[mono] = c
    return ScalarSeries(
        variables,
        coeffs,
        window,
        {var1: None, var2: ZERO},
        {var1: r, var2: None},
    )


def delta_series(var, window: Window) -> ScalarSeries:
    """The formal distribution with every integer power of var."""
    lo, hi = window.bounds_for(var)
    if lo is None or hi is None:
        raise ValueError("delta_series needs a bounded window")
    coeffs = {(QQ(n),): QQ(1) for n in range(rational_ceil(lo), rational_floor(hi) + 1)}
    return ScalarSeries((var,), coeffs, window, {var: None}, {var: None})


def merged_delta_kernel(
    top,
    second,
    bottom,
    window: Window,
    *,
    shift=0,
    lattice_den: int = 1,
    second_sign: int = -1,
    bottom_sign: int = 1,
) -> ScalarSeries:
    """bottom^-1 * sum over e in shift + Z/lattice_den of ((top ± second)/(±bottom))^e.

    This is the merged (single-sum) form in which fractional powers of a
    delta argument are well defined; the top binomial is expanded in
    nonnegative integral powers of `second`.  With shift=0, lattice_den=1,
    it is bottom^-1 * delta((top ± second)/(±bottom)); a pure coset shift
    uses a fractional `shift` with lattice_den=1.
    """
    shift = QQ(shift)
    variables = (top, second, bottom)
    blo, bhi = window.bounds_for(bottom)
    if blo is None or bhi is None:
        raise ValueError("kernel window must bound the denominator variable")
    slo, shi = window.bounds_for(second)
    tlo, thi = window.bounds_for(top)
    if shi is None:
        raise ValueError("kernel window must bound the expansion variable")
    # bottom exponent is -e-1, so e runs over [-1-bhi, -1-blo]
    e_lo, e_hi = -1 - bhi, -1 - blo
    n_lo = rational_ceil((e_lo - shift) * lattice_den)
    n_hi = rational_floor((e_hi - shift) * lattice_den)
    coeffs = {}
    for n in range(n_lo, n_hi + 1):
        e = shift + QQ(n, lattice_den)
        if bottom_sign == -1 and e.denominator != 1:
            raise ValueError("sign-reversed denominator requires integer exponents")
        bot_coeff = QQ(1) if bottom_sign == 1 else QQ(-1) ** int(e)
        for i in range(max(0, rational_ceil(slo or ZERO)), rational_floor(shi) + 1):
            mono = (e - i, QQ(i), -e - 1)
            if not window.contains_mono(variables, mono):
                continue
            c = binomial(e, i) * (QQ(second_sign) ** i) * bot_coeff
            if not scalar_is_zero(c):
                coeffs[mono] = c
    return ScalarSeries(
        variables,
        coeffs,
        window,
        {top: None, second: ZERO, bottom: None},
        {top: None, second: None, bottom: None},
    )


# ---------------------------------------------------------------------------
# substitution of a series into a Laurent expansion (change of variable)
# ---------------------------------------------------------------------------


def _scalar_power(base, exponent):
    """base**e for rational base: integer e directly, half-integer via sqrt."""
    e = QQ(exponent)
    if e.denominator == 1:
        return QQ(base) ** int(e)
    if e.denominator != 2:
        raise ValueError(f"cannot raise scalar to exponent {e}")
    b = QQ(base)
    if b <= 0:
        raise ValueError(f"cannot take half-integer power of {b}")
    n = rational_floor(e)
    root = cyc_sqrt_k(int(b.numerator * b.denominator)) / QQ(b.denominator)
    return (b**n) * root


def series_power(unit: ScalarSeries, expansion_var, exponent) -> ScalarSeries:
    """Raise a series with invertible leading term to a rational power.

    The series must have its lowest `expansion_var`-order slice equal to a
    single monomial c*m; then unit^e = c^e * m^e * (1 + w)^e with w of
    positive order, expanded binomially and truncated by the window.
    """
    e = QQ(exponent)
    i = unit.variables.index(expansion_var)
    if unit.window is None:
        raise ValueError("series_power expects a windowed truncation")
    lo, hi = unit.window.bounds_for(expansion_var)
    if lo is None or hi is None:
        raise ValueError("series_power needs a bounded expansion window")
    depth = hi - lo
    orders = sorted({m[i] for m in unit.coeffs})
    if not orders:
        raise ValueError("cannot raise the zero series to a power")
    lead_order = orders[0]
    lead_terms = [(m, c) for m, c in unit.coeffs.items() if m[i] == lead_order]
    if len(lead_terms) != 1:
        raise ValueError("leading slice is not a single monomial")
    lead_mono, lead_coeff = lead_terms[0]
    if not is_rational(lead_coeff):
        raise ValueError("leading coefficient must be rational")
    # w = unit/lead - 1 has expansion_var-order >= 1 lattice step
    inv_lead_mono = tuple(-x for x in lead_mono)
    inv_lead = ScalarSeries(
        unit.variables,
        {inv_lead_mono: QQ(1) / lead_coeff},
        None,
    )
    w = (inv_lead * unit) + series_monomial(
        unit.variables, (ZERO,) * len(unit.variables), -1
    )
    result = series_monomial(unit.variables, (ZERO,) * len(unit.variables), 1)
    w_power = result
    step_lo = min((m[i] for m in w.coeffs), default=None)
    if step_lo is None:
        term_count = 0
    elif step_lo <= 0:
        raise ValueError("unit part has nonpositive order; not a unit series")
    else:
        term_count = rational_floor(depth / step_lo)
    for n in range(1, term_count + 1):
        w_power = w_power * w
        result = result + w_power.scaled(binomial(e, n))
    # a non-terminating binomial series is exact only up to the truncation
    # depth, even when the inputs were complete polynomials; its true support
    # is the limit over all powers of w, not the hull of the kept terms
    terminates = e.denominator == 1 and 0 <= e <= term_count
    if not terminates:
        cap = Window({expansion_var: (None, depth)})
        capped = cap if result.window is None else result.window.intersect(cap)
        supp_lo, supp_hi = {}, {}
        for var in unit.variables:
            wlo, whi = w._supp(var)
            supp_lo[var] = ZERO if (wlo is not None and wlo >= 0) else None
            supp_hi[var] = ZERO if (whi is not None and whi <= 0) else None
        supp_lo[expansion_var] = ZERO
        result = ScalarSeries(
            result.variables,
            {
                m: c
                for m, c in result.coeffs.items()
                if capped.contains_mono(result.variables, m)
            },
            capped,
            supp_lo,
            supp_hi,
        )
    prefactor_mono = tuple(x * e for x in lead_mono)
    prefactor = ScalarSeries(
        unit.variables, {prefactor_mono: _scalar_power(lead_coeff, e)}, None
    )
    return prefactor * result


def change_of_variable(
    f: ScalarSeries, var, h: ScalarSeries, dh: ScalarSeries, expansion_var
) -> ScalarSeries:
    """Substitute var -> h and multiply by dh (the Jacobian factor).

    Returns dh * f(h); with dh = dh/d(expansion_var) this preserves residues:
    Res_var f = Res_expansion_var of the result.  f must be a complete series
    in var (its other variables are untouched); h is a truncated expansion
    whose window bounds the output.
    """
    if f.window is not None:
        raise ValueError(f"non-composable: f must be completely known in {var}")
    i = f.variables.index(var)
    total = None
    for mono, coeff in f.coeffs.items():
        e = mono[i]
        rest_mono = tuple(x for j, x in enumerate(mono) if j != i)
        rest_vars = tuple(v for v in f.variables if v != var)
        h_pow = series_power(h, expansion_var, e)
        if rest_mono:
            h_pow = h_pow * series_monomial(rest_vars, rest_mono, 1)
        term = h_pow.scaled(coeff)
        total = term if total is None else total + term
    if total is None:
        return ScalarSeries((expansion_var,), {}, h.window)
    return total * dh


# ---------------------------------------------------------------------------
# comparison engine
# ---------------------------------------------------------------------------


@dataclass
class ComparisonResult:
    """Outcome of a window-exact coefficient comparison."""

    name: str
    compared: int
    mismatches: list

    @property
    def passed(self) -> bool:
        return self.compared > 0 and not self.mismatches


def _known_on_window(series: ScalarSeries, window: Window) -> bool:
    """True when every point of `window` is inside the series' knowledge.

    Per variable, the points not already forced to zero by the support bounds
    must lie inside the series' own window.
    """
    if series.window is None:
        return True
    for var in series.variables:
        lo, hi = window.bounds_for(var)
        slo, shi = series._supp(var)
        lo2 = _max_opt_lo(lo, slo)
        hi2 = _min_opt_hi(hi, shi)
        if lo2 is not None and hi2 is not None and lo2 > hi2:
            continue  # the whole range is provably zero in this variable
        wlo, whi = series.window.bounds_for(var)
        if wlo is not None and (lo2 is None or lo2 < wlo):
            return False
        if whi is not None and (hi2 is None or hi2 > whi):
            return False
    return True


def _lattice_size(window: Window, variables, den: int) -> int:
    total = 1
    for var in variables:
        lo, hi = window.bounds_for(var)
        total *= max(0, rational_floor(hi * den) - rational_ceil(lo * den) + 1)
    return total


def compare_series(
    name: str,
    lhs: ScalarSeries,
    rhs: ScalarSeries,
    window: Window,
    lattice_den: int,
) -> ComparisonResult:
    """Compare two series on every lattice point of a bounded window."""
    variables = tuple(dict.fromkeys(lhs.variables + rhs.variables))
    if not window.is_bounded(variables):
        raise ValueError("comparison window must be bounded")
    lhs_a, rhs_a = lhs._aligned(rhs)
    if _known_on_window(lhs_a, window) and _known_on_window(rhs_a, window):
        # every lattice point is known on both sides, so only stored
        # monomials can disagree; zeros elsewhere match for free
        mismatches = []
        for mono in set(lhs_a.coeffs) | set(rhs_a.coeffs):
            if not window.contains_mono(lhs_a.variables, mono):
                continue
            if any((e * lattice_den).denominator != 1 for e in mono):
                continue
            a = lhs_a.coeffs.get(mono, ZERO)
            b = rhs_a.coeffs.get(mono, ZERO)
            if a != b:
                mismatches.append((mono, a, b))
        mismatches.sort(key=lambda item: item[0])
        compared = _lattice_size(window, lhs_a.variables, lattice_den)
        return ComparisonResult(name, compared, mismatches)
    compared = 0
    mismatches = []
    for mono in window.lattice_points(lhs_a.variables, lattice_den):
        a = lhs_a.get(mono)
        b = rhs_a.get(mono)
        compared += 1
        if a != b:
            mismatches.append((mono, a, b))
    return ComparisonResult(name, compared, mismatches)


# ---------------------------------------------------------------------------
# the delta-function identity suite
# ---------------------------------------------------------------------------


class DeltaIdentity(Enum):
    """The four structural delta-function identities checked by the suite."""

    DF1 = "DF1"
    DF2 = "DF2"
    DF3 = "DF3"
    THREE_TERM = "ThreeTerm"


def verify_delta_identity(
    kind: DeltaIdentity, k: int, r, window: Window
) -> ComparisonResult:
    """Window-exact check of one delta-function identity.

    DF1 equates the r-shifted kernels in (x1 - x0)/x2 and (x2 + x0)/x1;
    DF2 merges the k fractional shifts of an integer-lattice kernel into the
    (1/k)-lattice kernel; DF3 is the fractional-lattice version of DF1 at
    shift 0; THREE_TERM is the three-term substitution identity.  Comparisons
    run over the (1/2k)-lattice inside the window.
    """
    r = QQ(r)
    den = 2 * k
    if kind is DeltaIdentity.DF1:
        lhs = merged_delta_kernel("x1", "x0", "x2", window, shift=r, lattice_den=1)
        rhs = merged_delta_kernel(
            "x2", "x0", "x1", window, shift=-r, lattice_den=1, second_sign=1
        )
        name = f"delta-identity-DF1[k={k},r={r}]"
    elif kind is DeltaIdentity.DF2:
        lhs = None
        for p in range(k):
            term = merged_delta_kernel(
                "x1", "x0", "x2", window, shift=QQ(p, k), lattice_den=1
            )
            lhs = term if lhs is None else lhs + term
        rhs = merged_delta_kernel("x1", "x0", "x2", window, shift=0, lattice_den=k)
        name = f"delta-identity-DF2[k={k}]"
    elif kind is DeltaIdentity.DF3:
        lhs = merged_delta_kernel("x1", "x0", "x2", window, shift=0, lattice_den=k)
        rhs = merged_delta_kernel(
            "x2", "x0", "x1", window, shift=0, lattice_den=k, second_sign=1
        )
        name = f"delta-identity-DF3[k={k}]"
    elif kind is DeltaIdentity.THREE_TERM:
        first = merged_delta_kernel("x1", "x2", "x0", window)
        second = merged_delta_kernel("x2", "x1", "x0", window, bottom_sign=-1)
        lhs = first - second
        rhs = merged_delta_kernel("x1", "x0", "x2", window)
        name = f"delta-identity-ThreeTerm[k={k}]"
    else:  # pragma: no cover - exhaustive enum
        raise ValueError(f"unknown identity {kind}")
    return compare_series(name, lhs, rhs, window, den)


# ---------------------------------------------------------------------------
# operator-valued windowed series
# ---------------------------------------------------------------------------


@dataclass
class OperatorField:
    """Exponent -> sparse linear map, with a window and a parity.

    Maps are dictionaries input-key -> {output-key -> scalar}; keys are the
    basis labels of whatever graded space the field acts on.  The window has
    the same unknown-outside semantics as for ScalarSeries.
    """

    variables: tuple
    terms: dict
    window: Window | None
    parity: int = 0

    def __post_init__(self):
        clean = {}
        for mono, table in self.terms.items():
            mono = tuple(QQ(e) for e in mono)
            entry = {}
            for key, column in table.items():
                col = {o: c for o, c in column.items() if not scalar_is_zero(c)}
                if col:
                    entry[key] = col
            if entry:
                clean[mono] = entry
        self.terms = clean

    def column(self, mono, key) -> dict:
        mono = tuple(QQ(e) for e in mono)
        if self.window is not None and not self.window.contains_mono(
            self.variables, mono
        ):
            raise ValueError(f"field coefficient at {mono} is outside the window")
        return self.terms.get(mono, {}).get(key, {})

    def derivative(self, var) -> "OperatorField":
        i = self.variables.index(var)
        terms = {}
        for mono, table in self.terms.items():
            if mono[i] == 0:
                continue
            new = list(mono)
            new[i] = mono[i] - 1
            target = terms.setdefault(tuple(new), {})
            for key, column in table.items():
                out = target.setdefault(key, {})
                for okey, c in column.items():
                    out[okey] = out.get(okey, ZERO) + mono[i] * c
        window = None if self.window is None else self.window.shifted(var, -1)
        return OperatorField(self.variables, terms, window, self.parity)


def compare_fields(
    name: str,
    lhs: OperatorField,
    rhs: OperatorField,
    window: Window,
    lattice_den: int,
    keys,
) -> ComparisonResult:
    """Compare two operator fields entrywise over a window and a key set."""
    if lhs.variables != rhs.variables:
        raise ValueError("fields must share variables for comparison")
    compared = 0
    mismatches = []
    for mono in window.lattice_points(lhs.variables, lattice_den):
        for key in keys:
            a = lhs.column(mono, key)
            b = rhs.column(mono, key)
            outs = set(a) | set(b)
            compared += 1 + len(outs)
            for okey in outs:
                va = a.get(okey, ZERO)
                vb = b.get(okey, ZERO)
                if va != vb:
                    mismatches.append((mono + (key, okey), va, vb))
    return ComparisonResult(name, compared, mismatches)


# ---------------------------------------------------------------------------
# graded dimensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QSeries:
    """Truncated graded-dimension series on a rational weight lattice.

    ``coeffs[i]`` is the dimension of the graded piece of weight
    ``offset + i*step``; weights off that arithmetic progression carry
    dimension zero, and weights beyond the truncation are unknown.
    """

    offset: QQ
    coeffs: tuple
    step: QQ = QQ(1)

    def __post_init__(self):
        object.__setattr__(self, "offset", QQ(self.offset))
        object.__setattr__(self, "step", QQ(self.step))
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if self.step <= 0:
            raise ValueError("step must be positive")

    def weight(self, i: int) -> QQ:
        return self.offset + i * self.step

    def top_weight(self) -> QQ:
        if not self.coeffs:
            raise ValueError("empty graded-dimension series has no top weight")
        return self.weight(len(self.coeffs) - 1)

    def coefficient_at(self, weight) -> int:
        """Dimension at a weight: 0 off the lattice, error past the truncation."""
        slot = (QQ(weight) - self.offset) / self.step
        if slot.denominator != 1 or slot < 0:
            return 0
        index = int(slot)
        if index >= len(self.coeffs):
            raise ValueError(
                f"weight {weight} is beyond the truncation {self.top_weight()}"
            )
        return self.coeffs[index]

    def to_json(self) -> str:
        payload = {"offset": str(self.offset), "coeffs": list(self.coeffs)}
        if self.step != 1:
            payload["step"] = str(self.step)
        return json.dumps(payload)

    @staticmethod
    def from_json(text: str) -> "QSeries":
        payload = json.loads(text)
        step = QQ(payload.get("step", 1))
        return QSeries(QQ(payload["offset"]), tuple(payload["coeffs"]), step)
