"""The graded coordinate-change operator for k-fold covers.

This module builds the exponential-of-Virasoro-derivations operator that
moves free-fermion states between a base coordinate and a k-th-root cover
coordinate.  It provides:

* the coefficient table of the generating derivation, solved exactly from
  the cover map ((1+x)^k - 1)/k and cross-checked against the compositional
  inverse (1+kx)^{1/k} - 1;
* the cover map series and its compositional inverse as exact windowed
  series;
* forward and inverse application of the operator to homogeneous states,
  producing finite graded expansions with exact scalar prefactors
  (half-integer weights land in a real quadratic subfield of a cyclotomic
  field);
* coefficientwise verification of the conjugation identity relating a
  conjugated vertex operator to the vertex operator of a transformed state
  in a shifted coordinate, and of the two derivative identities tying the
  operator to the translation generator.

Everything is exact; nothing is floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .scalars import (
    QQ,
    ZERO,
    ONE,
    CycScalar,
    binomial,
    k_to_the,
    rational_ceil,
    rational_floor,
    scalar_str,
)
from .formal import (
    ComparisonResult,
    ScalarSeries,
    Window,
    compare_series,
    series_power,
)
from .fermion import State, ZERO_STATE, ns_basis, format_ns_word, vertex_mode, virasoro


# ---------------------------------------------------------------------------
# the derivation coefficient table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AjTable:
    """Coefficients a_1..a_J of the derivation D = sum_j a_j x^{j+1} d/dx
    chosen so that exp(-D) x = ((1+x)^k - 1)/k exactly through degree J+1."""

    k: int
    depth: int
    values: tuple

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")
        if len(self.values) != self.depth:
            raise ValueError("coefficient count does not match depth")

    def a(self, j: int):
        """The j-th coefficient, 1-indexed."""
        if not 1 <= j <= self.depth:
            raise ValueError(f"index {j} outside table of depth {self.depth}")
        return self.values[j - 1]

    def rows(self):
        """CSV-facing rows (j, a_j)."""
        return [(j, self.values[j - 1]) for j in range(1, self.depth + 1)]


def _apply_derivation(values, poly, top: int):
    """One application of sum_j a_j x^{j+1} d/dx to a dense polynomial.

    ``poly[i]`` is the coefficient of x^i; output truncated to degree top.
    """
    out = [ZERO] * (top + 1)
    for i, c in enumerate(poly):
        if i == 0 or c == 0:
            continue
        for j, a in enumerate(values, start=1):
            d = i + j
            if d > top:
                break
            out[d] += a * c * i
    return out


def _exp_derivation_on_x(values, sign: int, top: int):
    """exp(sign * D) applied to the polynomial x, truncated to degree top.

    Each application of D raises the minimal degree by at least one, so the
    exponential series terminates after at most ``top`` applications.
    """
    total = [ZERO] * (top + 1)
    if top >= 1:
        total[1] = ONE
    term = list(total)
    m = 0
    while any(c != 0 for c in term):
        m += 1
        term = _apply_derivation(values, term, top)
        term = [c * QQ(sign) / m for c in term]
        total = [t + c for t, c in zip(total, term)]
    return total


@lru_cache(maxsize=None)
def solve_aj(k: int, J: int) -> AjTable:
    """Solve for the derivation coefficients a_1..a_J, triangularly.

    The j-th coefficient first enters the expansion of exp(-D) x at degree
    j+1, linearly and with unit coefficient, so matching against the degree
    j+1 coefficient of ((1+x)^k - 1)/k determines each a_j in turn.  The
    finished table is cross-checked against the independent expansion
    exp(+D) x = (1+kx)^{1/k} - 1 through degree J+1.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if J < 1:
        raise ValueError(f"J must be >= 1, got {J}")
    values = []
    for j in range(1, J + 1):
        partial = _exp_derivation_on_x(tuple(values), -1, j + 1)
        target = binomial(QQ(k), j + 1) / k
        values.append(partial[j + 1] - target)
    values = tuple(values)

    forward = _exp_derivation_on_x(values, +1, J + 1)
    for m in range(J + 2):
        oracle = binomial(QQ(1, k), m) * QQ(k) ** m if m >= 1 else ZERO
        if forward[m] != oracle:
            raise ArithmeticError(
                f"coefficient table failed the inverse-map cross-check at "
                f"degree {m}: {forward[m]} != {oracle}"
            )
    return AjTable(k, J, values)


def aj_to_csv(table: AjTable) -> str:
    """Render the coefficient table as CSV rows (j, a_j), exact fractions."""
    lines = ["j,a_j"]
    for j, a in table.rows():
        lines.append(f"{j},{a}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the cover map and its compositional inverse
# ---------------------------------------------------------------------------


def f_series(k: int, window: Window | None = None, *, with_z: bool = True) -> ScalarSeries:
    """The cover map (z^{1/k}/k)((1+x)^k - 1), an exact polynomial in x.

    With ``with_z`` the base-point variable z is tracked with its fractional
    exponents; without it the series lives in x alone (base point 1).
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    variables = ("x", "z") if with_z else ("x",)
    coeffs = {}
    for m in range(1, k + 1):
        c = binomial(QQ(k), m) / k
        mono = (QQ(m), QQ(1, k)) if with_z else (QQ(m),)
        coeffs[mono] = c
    series = ScalarSeries(variables, coeffs, None)
    if window is not None:
        kept = {
            m: c
            for m, c in series.coeffs.items()
            if window.contains_mono(variables, m)
        }
        series = ScalarSeries(variables, kept, window,
                              dict(series.supp_lo), dict(series.supp_hi))
    return series


def f_inverse_series(k: int, window: Window, *, with_z: bool = True) -> ScalarSeries:
    """The compositional inverse (1 + k z^{-1/k} x)^{1/k} - 1, truncated.

    The leading term is z^{-1/k} x; the x-window must be bounded above
    because the binomial series does not terminate for k > 1.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    _, hi = window.bounds_for("x")
    if hi is None:
        raise ValueError("f_inverse_series needs a bounded x-window")
    top = rational_floor(hi)
    variables = ("x", "z") if with_z else ("x",)
    coeffs = {}
    for m in range(1, top + 1):
        c = binomial(QQ(1, k), m) * QQ(k) ** m
        mono = (QQ(m), QQ(-m, k)) if with_z else (QQ(m),)
        coeffs[mono] = c
    supp_lo = {"x": ONE}
    supp_hi = {"x": None}
    if with_z:
        supp_lo["z"] = None
        supp_hi["z"] = QQ(-1, k)
    return ScalarSeries(
        variables, coeffs, Window({"x": (None, hi)}), supp_lo, supp_hi
    )


def check_f_composition(k: int, degree: int = 10, *, with_z: bool = True) -> ComparisonResult:
    """Verify that the cover map undoes its compositional inverse.

    Substitutes the inverse series into the cover map and compares the
    result against the identity series coefficientwise through the given
    x-degree (every lattice point of the window, exact equality).
    """
    window = Window({"x": (None, QQ(degree))})
    inner = f_inverse_series(k, window, with_z=with_z)
    variables = inner.variables
    zero_mono = (ZERO,) * len(variables)
    one = ScalarSeries(variables, {zero_mono: ONE}, None)
    shifted = inner + one
    power = one
    for _ in range(k):
        power = power * shifted
    composed = power - one
    if with_z:
        prefactor = ScalarSeries(variables, {(ZERO, QQ(1, k)): QQ(1, k)}, None)
        identity = ScalarSeries(variables, {(ONE, ZERO): ONE}, None)
    else:
        prefactor = ScalarSeries(variables, {zero_mono: QQ(1, k)}, None)
        identity = ScalarSeries(variables, {(ONE,): ONE}, None)
    composed = prefactor * composed
    bounds = {"x": (ZERO, QQ(degree))}
    if with_z:
        bounds["z"] = (QQ(-degree), QQ(degree))
    return compare_series(
        f"cover-map-composition[k={k},degree={degree}]",
        composed,
        identity,
        Window(bounds),
        k,
    )


# ---------------------------------------------------------------------------
# the operator on states
# ---------------------------------------------------------------------------


FORWARD = "forward"
INVERSE = "inverse"


@dataclass(frozen=True)
class DeltaOp:
    """A truncated coordinate-change operator: direction plus table depth."""

    k: int
    depth: int
    direction: str = FORWARD

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")
        if self.direction not in (FORWARD, INVERSE):
            raise ValueError(
                f"direction must be '{FORWARD}' or '{INVERSE}', got {self.direction!r}"
            )

    @property
    def table(self) -> AjTable:
        return solve_aj(self.k, self.depth)


def delta_op(k: int, direction: str = FORWARD, *, cutoff=QQ(2)) -> DeltaOp:
    """An operator whose depth covers every state of weight <= cutoff."""
    depth = max(1, int(rational_ceil(QQ(cutoff))) * k + 2)
    return DeltaOp(k, depth, direction)


@dataclass(frozen=True)
class DeltaExpansion:
    """A finite graded expansion: prefactor * sum_j state_j * x^{exponent_j}.

    The prefactor is k^{-weight} (forward) or k^{+weight} (inverse); for
    half-integer weights it is an exact square root in a cyclotomic field.
    The per-piece states carry all remaining rational scalars.
    """

    k: int
    direction: str
    weight: QQ
    prefactor: object
    pieces: tuple

    def leading_exponent(self):
        if not self.pieces:
            raise ValueError("empty expansion has no leading exponent")
        return self.pieces[0][0]

    def state_at(self, exponent) -> State:
        target = QQ(exponent)
        for e, s in self.pieces:
            if e == target:
                return s
        return ZERO_STATE

    def exponents(self):
        return tuple(e for e, _ in self.pieces)

    def render(self) -> str:
        if not self.pieces:
            return "0"
        parts = []
        for e, s in self.pieces:
            parts.append(f"x^({e}) * [{s.render()}]")
        return f"({scalar_str(self.prefactor)}) * (" + " + ".join(parts) + ")"


def _exp_virasoro(u: State, table: AjTable, sign: int) -> dict:
    """exp(sign * sum_j a_j L(j)) applied to u, graded by total weight drop.

    Each positive Virasoro mode strictly lowers the grade, so the series
    terminates once the drop exceeds the weight of u.
    """
    total = {0: u}
    term = {0: u}
    m = 0
    while term:
        m += 1
        nxt = {}
        for drop, state in term.items():
            for j in range(1, table.depth + 1):
                image = virasoro(QQ(j), state)
                if image.is_zero():
                    continue
                scaled = image.scaled(table.a(j) * QQ(sign) / m)
                key = drop + j
                nxt[key] = nxt.get(key, ZERO_STATE) + scaled
        term = {d: s for d, s in nxt.items() if not s.is_zero()}
        for d, s in term.items():
            total[d] = total.get(d, ZERO_STATE) + s
    return {d: s for d, s in total.items() if not s.is_zero()}


def apply_delta(op: DeltaOp, u: State, window: Window | None = None) -> DeltaExpansion:
    """Apply the coordinate-change operator to a homogeneous state.

    Forward direction: pieces of weight p-j at exponents p/k - p - j/k with
    a common prefactor k^{-p}.  Inverse direction: pieces at exponents
    p - p/k - j with prefactor k^{+p} (the rational part k^{-j} is folded
    into the piece states).  An optional window keeps only the exponents it
    contains (variable "x").
    """
    if u.is_zero():
        return DeltaExpansion(op.k, op.direction, ZERO, ONE, ())
    p = u.homogeneous_level()
    if op.depth < rational_floor(p):
        raise ValueError(
            f"table depth {op.depth} does not cover states of weight {p}"
        )
    k = op.k
    sign = 1 if op.direction == FORWARD else -1
    drops = _exp_virasoro(u, op.table, sign)
    pieces = []
    for j in sorted(drops):
        state = drops[j]
        if op.direction == FORWARD:
            exponent = p / k - p - QQ(j, k)
        else:
            exponent = p - p / k - j
            state = state.scaled(QQ(k) ** (-j))
        if window is not None and not window.contains("x", exponent):
            continue
        pieces.append((exponent, state))
    pieces.sort(key=lambda item: -item[0])
    prefactor = k_to_the(k, -p) if op.direction == FORWARD else k_to_the(k, p)
    return DeltaExpansion(k, op.direction, p, prefactor, tuple(pieces))


def round_trip_defect(k: int, u: State, *, depth: int | None = None) -> State:
    """forward then inverse, minus the identity, on one homogeneous state.

    Returns the accumulated defect state (zero when the two directions are
    exact mutual inverses); the mixed-weight intermediate pieces are pushed
    through one by one and recombined at total exponent zero.
    """
    if u.is_zero():
        return ZERO_STATE
    p = u.homogeneous_level()
    if depth is None:
        depth = max(1, int(rational_ceil(p)) * k + 2)
    fwd = apply_delta(DeltaOp(k, depth, FORWARD), u)
    by_exponent = {}
    for e_f, piece in fwd.pieces:
        inv = apply_delta(DeltaOp(k, depth, INVERSE), piece)
        scalar = _rationalized(fwd.prefactor * inv.prefactor)
        for e_i, back in inv.pieces:
            total = e_f + e_i
            contribution = back.scaled(scalar)
            by_exponent[total] = by_exponent.get(total, ZERO_STATE) + contribution
    defect = ZERO_STATE
    for e, s in by_exponent.items():
        if e == 0:
            defect = defect + (s - u)
        else:
            defect = defect + s
    return defect


def _rationalized(scalar):
    """Collapse a cyclotomic scalar that happens to be rational back to QQ."""
    if isinstance(scalar, CycScalar) and scalar.is_rational():
        return scalar.rational_value()
    return scalar


# ---------------------------------------------------------------------------
# the conjugation identity
# ---------------------------------------------------------------------------


def _geometric_root_series(k: int, top: int) -> ScalarSeries:
    """(1+y)^{1/k} - 1 as a windowed one-variable series through y^top."""
    coeffs = {(QQ(m),): binomial(QQ(1, k), m) for m in range(1, top + 1)}
    return ScalarSeries(
        ("y",), coeffs, Window({"y": (ONE, QQ(top))}), {"y": ONE}, {"y": None}
    )


def _conjugation_lhs(k: int, u: State, v: State, depth_z0: int) -> dict:
    """Conjugated side: operator, then vertex modes, then inverse operator.

    Returns a dict (word, z-exponent, z0-exponent) -> scalar with every
    z0-exponent <= depth_z0 included exactly.
    """
    p_u = u.homogeneous_level()
    p_v = v.homogeneous_level()
    # modes down to -depth_z0 - 1 raise the weight by up to depth_z0, and the
    # table must cover every state pushed through the operator
    table_depth = max(1, int(rational_floor(p_u + p_v)) + depth_z0 + 2)
    inv = apply_delta(DeltaOp(k, table_depth, INVERSE), v)
    out = {}
    for e_j, piece in inv.pieces:
        w_j = piece.homogeneous_level()
        if w_j is None:
            continue
        t_hi = rational_floor(p_u + w_j - 1)
        t = QQ(-depth_z0 - 1)
        while t <= t_hi:
            image = vertex_mode(u, t, piece)
            if not image.is_zero():
                q = p_u + w_j - t - 1
                fwd = apply_delta(DeltaOp(k, table_depth, FORWARD), image)
                scalar = k_to_the(k, p_v - q)
                for e_i, result in fwd.pieces:
                    e_z = e_j + e_i
                    for word, c in result.terms:
                        key = (word, e_z, QQ(-t - 1))
                        prev = out.get(key, ZERO)
                        out[key] = prev + scalar * c
            t += 1
    return {key: val for key, val in out.items() if val != 0}


def _conjugation_rhs(k: int, u: State, v: State, depth_z0: int) -> dict:
    """Transformed side: operator applied to u, then vertex modes in the
    shifted coordinate (z+z0)^{1/k} - z^{1/k}, expanded binomially."""
    p_u = u.homogeneous_level()
    p_v = v.homogeneous_level()
    table_depth = max(1, int(rational_floor(p_u + p_v)) + depth_z0 + 2)
    fwd_u = apply_delta(DeltaOp(k, table_depth, FORWARD), u)
    prefactor = k_to_the(k, -p_u)
    t_hi_global = rational_floor(p_u + p_v - 1)
    root_top = depth_z0 + max(0, int(t_hi_global) + 1) + 2
    root = _geometric_root_series(k, root_top)
    out = {}
    for e_piece, piece in fwd_u.pieces:
        w_piece = piece.homogeneous_level()
        if w_piece is None:
            continue
        # z-exponent of the binomial base for this piece
        alpha = e_piece
        t_hi = rational_floor(w_piece + p_v - 1)
        t = QQ(-depth_z0 - 1)
        while t <= t_hi:
            image = vertex_mode(piece, t, v)
            if image.is_zero():
                t += 1
                continue
            e = -t - 1  # power of the shifted coordinate
            powered = series_power(root, "y", e)
            # (z+z0)^alpha in nonnegative z0-powers, capped by the z0 budget
            i_top = int(depth_z0 - e) if depth_z0 - e >= 0 else -1
            for i in range(0, i_top + 1):
                binom_c = binomial(alpha, i)
                if binom_c == 0:
                    continue
                n = e
                while n <= depth_z0 - i:
                    g_c = powered.get((QQ(n),))
                    if g_c != 0:
                        e_z = alpha - i + e / k - n
                        e_z0 = QQ(i + n)
                        factor = binom_c * g_c
                        for word, c in image.terms:
                            key = (word, e_z, e_z0)
                            prev = out.get(key, ZERO)
                            out[key] = prev + prefactor * factor * c
                    n += 1
            t += 1
    return {key: val for key, val in out.items() if val != 0}


def check_conjugation(k: int, u: State, *, cutoff=QQ(5, 2), depth: int = 4,
                      name: str | None = None) -> ComparisonResult:
    """Verify the conjugation identity coefficientwise, exactly.

    For every basis state of weight <= cutoff, both sides are expanded as
    maps (word, z-exponent, z0-exponent) -> scalar with z0-exponents capped
    at ``depth``; the two maps must agree on every key.
    """
    if u.is_zero():
        raise ValueError("conjugation check needs a nonzero homogeneous state")
    u.homogeneous_level()
    label = name or f"conjugation[k={k},wt<= {cutoff},depth={depth}]"
    compared = 0
    mismatches = []
    for word in ns_basis(cutoff):
        v = State({word: ONE})
        lhs = _conjugation_lhs(k, u, v, depth)
        rhs = _conjugation_rhs(k, u, v, depth)
        for key in sorted(set(lhs) | set(rhs)):
            a = lhs.get(key, ZERO)
            b = rhs.get(key, ZERO)
            compared += 1
            if a != b:
                out_word, e_z, e_z0 = key
                mismatches.append(
                    ((format_ns_word(word), format_ns_word(out_word), e_z, e_z0), a, b)
                )
    return ComparisonResult(label, compared, mismatches)


# ---------------------------------------------------------------------------
# the translation-generator identities
# ---------------------------------------------------------------------------


def check_L_minus1_identities(k: int, *, cutoff=QQ(2),
                              name: str | None = None) -> ComparisonResult:
    """Verify both derivative identities tying the operator to L(-1).

    Forward form: (op applied to L(-1)u) minus (1/k) z^{1/k-1} L(-1) (op
    applied to u) equals d/dz of (op applied to u).  Inverse form: (inverse
    op applied to L(-1)u) minus k z^{-1/k+1} L(-1) (inverse op applied to u)
    equals k z^{-1/k+1} d/dz of (inverse op applied to u).  Both sides are
    exact finite expansions; every (state, word, exponent) slot is compared.
    """
    label = name or f"translation-identities[k={k},wt<={cutoff}]"
    compared = 0
    mismatches = []
    basis = ns_basis(cutoff)
    depth = max(1, int(rational_ceil(QQ(cutoff) + 1)) * k + 2)
    fwd_op = DeltaOp(k, depth, FORWARD)
    inv_op = DeltaOp(k, depth, INVERSE)
    for word in basis:
        u = State({word: ONE})
        p = u.homogeneous_level()
        lu = virasoro(QQ(-1), u)

        for tag, op, shift_scalar, shift_exp in (
            ("forward", fwd_op, QQ(1, k), QQ(1, k) - 1),
            ("inverse", inv_op, QQ(k), -QQ(1, k) + 1),
        ):
            ex_u = apply_delta(op, u)
            lhs = {}
            if not lu.is_zero():
                ex_lu = apply_delta(op, lu)
                for e, s in ex_lu.pieces:
                    for w, c in s.terms:
                        key = (w, e)
                        lhs[key] = lhs.get(key, ZERO) + ex_lu.prefactor * c
            for e, s in ex_u.pieces:
                moved = virasoro(QQ(-1), s)
                for w, c in moved.terms:
                    key = (w, e + shift_exp)
                    lhs[key] = lhs.get(key, ZERO) - shift_scalar * ex_u.prefactor * c

            rhs = {}
            for e, s in ex_u.pieces:
                if tag == "forward":
                    # plain d/dz
                    if e != 0:
                        for w, c in s.terms:
                            key = (w, e - 1)
                            rhs[key] = rhs.get(key, ZERO) + e * ex_u.prefactor * c
                else:
                    # k z^{-1/k+1} d/dz
                    if e != 0:
                        for w, c in s.terms:
                            key = (w, e - 1 + shift_exp)
                            rhs[key] = (
                                rhs.get(key, ZERO) + QQ(k) * e * ex_u.prefactor * c
                            )

            keys = sorted(set(lhs) | set(rhs))
            if not keys:
                # both sides identically zero: that agreement is itself a check
                compared += 1
            for key in keys:
                a = lhs.get(key, ZERO)
                b = rhs.get(key, ZERO)
                compared += 1
                if a != b:
                    w, e = key
                    mismatches.append(
                        ((tag, format_ns_word(word), format_ns_word(w), e), a, b)
                    )
    return ComparisonResult(label, compared, mismatches)


__all__ = [
    "AjTable",
    "DeltaExpansion",
    "DeltaOp",
    "FORWARD",
    "INVERSE",
    "aj_to_csv",
    "apply_delta",
    "check_L_minus1_identities",
    "check_conjugation",
    "check_f_composition",
    "delta_op",
    "f_inverse_series",
    "f_series",
    "round_trip_defect",
    "solve_aj",
]
