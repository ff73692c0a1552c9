"""The one-free-fermion vertex operator superalgebra, truncated exactly.

The space V is spanned by words of distinct negative half-integer creation
modes applied to a vacuum; the generating field obeys canonical
anticommutation relations {psi_m, psi_n} = delta_{m+n,0}.  Vertex operators
of descendant vectors are never expanded by hand: every mode is produced by
the residue-extraction recursion (`iterate_mode_word`), which also covers the
parity-twisted sector used by the `ramond` module through its half-integer
lattice shift.  All coefficients stay exact rationals.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache

from .formal import OperatorField, Window
from .scalars import (
    HALF,
    QQ,
    ZERO,
    binomial,
    rational_floor,
    scalar_is_zero,
    scalar_str,
)

# ---------------------------------------------------------------------------
# words: ordered mode tuples applied to a highest-weight vector
# ---------------------------------------------------------------------------


def check_ns_word(word) -> tuple:
    """Validate and normalize an untwisted-sector word.

    Entries are physical modes in Z + 1/2, each <= -1/2, strictly
    ascending (leftmost = most negative = applied first in print order).
    """
    modes = tuple(QQ(m) for m in word)
    for m in modes:
        if (2 * m).denominator != 1 or (2 * m).numerator % 2 == 0:
            raise ValueError(f"mode {m} is not in Z + 1/2")
        if m > QQ(-1, 2):
            raise ValueError(f"mode {m} is not a creation mode")
    if any(a >= b for a, b in zip(modes, modes[1:])):
        raise ValueError(f"word {modes} is not strictly ascending")
    return modes


def check_ramond_word(word) -> tuple:
    """Validate a parity-twisted-sector word: strictly ascending integers <= 0."""
    modes = tuple(QQ(m) for m in word)
    for m in modes:
        if m.denominator != 1:
            raise ValueError(f"mode {m} is not an integer")
        if m > 0:
            raise ValueError(f"mode {m} is not a creation mode")
    if any(a >= b for a, b in zip(modes, modes[1:])):
        raise ValueError(f"word {modes} is not strictly ascending")
    return modes


def word_level(word) -> QQ:
    """Sum of -mode over the word: the grading above the sector's floor."""
    return sum((-m for m in word), ZERO)


ns_word_weight = word_level  # untwisted sector: the floor is 0


def word_parity(word) -> int:
    return len(word) % 2


def format_ns_word(word) -> str:
    return "".join(f"psi({m})" for m in word) + "|0>"


def format_ramond_word(word) -> str:
    return "".join(f"psi({m})" for m in word) + "|R>"


# ---------------------------------------------------------------------------
# states: exact linear combinations of words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class State:
    """A finite linear combination of basis words with exact coefficients."""

    terms: tuple

    def __init__(self, table):
        if isinstance(table, State):
            table = dict(table.terms)
        clean = {}
        for word, coeff in dict(table).items():
            if scalar_is_zero(coeff):
                continue
            clean[tuple(word)] = coeff
        object.__setattr__(
            self, "terms", tuple(sorted(clean.items(), key=lambda t: t[0]))
        )

    def table(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "State") -> "State":
        out = self.table()
        for word, coeff in other.terms:
            out[word] = out.get(word, ZERO) + coeff
        return State(out)

    def __sub__(self, other: "State") -> "State":
        return self + other.scaled(-1)

    def __neg__(self) -> "State":
        return self.scaled(-1)

    def scaled(self, scalar) -> "State":
        return State({word: scalar * coeff for word, coeff in self.terms})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word):
        target = tuple(QQ(m) for m in word)
        for w, c in self.terms:
            if w == target:
                return c
        return ZERO

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        mine, theirs = self.table(), other.table()
        if set(mine) != set(theirs):
            return False
        return all(mine[w] == theirs[w] for w in mine)

    def __hash__(self):
        return hash(self.terms)

    def map_words(self, rule) -> "State":
        """Push the state through a linear rule word -> [(word, coeff)]."""
        out = {}
        for word, coeff in self.terms:
            for new_word, factor in rule(word):
                out[new_word] = out.get(new_word, ZERO) + coeff * factor
        return State(out)

    def homogeneous_level(self):
        """The common word level, or raise if the state is mixed."""
        levels = {word_level(w) for w, _ in self.terms}
        if len(levels) > 1:
            raise ValueError(f"state is not homogeneous: levels {sorted(levels)}")
        return levels.pop() if levels else None

    def homogeneous_parity(self):
        parities = {word_parity(w) for w, _ in self.terms}
        if len(parities) > 1:
            raise ValueError("state is not parity-homogeneous")
        return parities.pop() if parities else None

    def render(self, word_formatter=format_ns_word) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, coeff in self.terms:
            parts.append(f"({scalar_str(coeff)})*{word_formatter(word)}")
        return " + ".join(parts)


ZERO_STATE = State({})
VACUUM = State({(): QQ(1)})
PSI = State({(QQ(-1, 2),): QQ(1)})
#: conformal vector: (1/2) psi_{-3/2} psi_{-1/2} |0>, central charge 1/2
OMEGA = State({(QQ(-3, 2), QQ(-1, 2)): HALF})
CENTRAL_CHARGE = HALF
RAMOND_GROUND = State({(): QQ(1)})  # interpreted over |R> words


# ---------------------------------------------------------------------------
# the canonical anticommutation kernel
# ---------------------------------------------------------------------------


def apply_phys_mode(word, m, ramond: bool):
    """psi_m applied to one ordered word; returns [(word, rational)].

    Annihilation (m > 0) contracts against a matching creation mode with the
    sign of the anticommutations passed; creation (m < 0) inserts in order,
    vanishing on a repeated mode; the twisted-sector zero mode squares to 1/2.
    """
    m = QQ(m)
    if ramond:
        if m.denominator != 1:
            raise ValueError(f"twisted-sector mode {m} must be an integer")
    elif (2 * m).denominator != 1 or (2 * m).numerator % 2 == 0:
        raise ValueError(f"untwisted-sector mode {m} must be in Z + 1/2")
    if m > 0:
        for i, entry in enumerate(word):
            if entry + m == 0:
                reduced = word[:i] + word[i + 1 :]
                return [(reduced, QQ(-1) ** i)]
        return []
    if m == 0:  # only reachable in the twisted sector
        if word and word[-1] == 0:
            return [(word[:-1], HALF * QQ(-1) ** (len(word) - 1))]
        return [(word + (ZERO,), QQ(-1) ** len(word))]
    if m in word:
        return []
    position = sum(1 for entry in word if entry < m)
    inserted = tuple(sorted(word + (m,)))
    return [(inserted, QQ(-1) ** position)]


def fermion_mode(n, s: State) -> State:
    """The generating field's physical mode psi_n on an untwisted state."""
    n = QQ(n)
    return s.map_words(lambda word: apply_phys_mode(word, n, ramond=False))


# ---------------------------------------------------------------------------
# the iterate recursion: modes of descendant fields in either sector
# ---------------------------------------------------------------------------
#
# For a = psi_{m1} a' the coefficient extraction of the (possibly twisted)
# Jacobi identity gives, with n = m1 - 1/2, s the sector shift (0 untwisted,
# 1/2 parity-twisted), and eps the parity sign (-1)^{|a'|}:
#
#   (psi_n a')_mu = sum_{i>=0} (-1)^i C(n,i) [ psi_{s+n-i} (a')_{mu-s+i}
#                     - eps (-1)^n (a')_{n+mu-s-i} psi_{s+i} ]
#                 - sum_{i>=1} C(s,i) (psi_{n+i} a')_{mu-i}
#
# where field subscripts are lattice indices (physical mode = index + 1/2)
# and the final sum re-enters the recursion on strictly lower word weight.


def _merge(table, addition, factor):
    for word, coeff in addition:
        new = table.get(word, ZERO) + coeff * factor
        if scalar_is_zero(new):
            table.pop(word, None)
        else:
            table[word] = new


@lru_cache(maxsize=None)
def iterate_mode_word(a_word, mu, word, sector_half: int):
    """Mode `mu` (lattice index) of the field of `a_word`, on one word.

    `sector_half` is twice the sector shift: 0 acts on the untwisted module,
    1 on the parity-twisted one.  Returns a tuple of (word, coefficient)
    pairs; every sum below is finite because annihilation kills high modes
    and the graded pieces below the sector floor vanish.
    """
    mu = QQ(mu)
    s = QQ(sector_half, 2)
    ramond = sector_half == 1
    if not a_word:
        return ((word, QQ(1)),) if mu == -1 else ()
    m1 = a_word[0]
    rest = a_word[1:]
    n = m1 - HALF
    eps = QQ(-1) ** (len(rest) % 2)
    sign_n = QQ(-1) ** (int(n) % 2)
    rest_weight = word_level(rest)
    level = word_level(word)
    out: dict = {}

    # first regular sum: psi_{s+n-i} after (a')_{mu-s+i}
    i = 0
    while True:
        inner_index = mu - s + i
        if level + rest_weight - inner_index - 1 < 0:
            break  # below the sector floor for this and all larger i
        inner = iterate_mode_word(rest, inner_index, word, sector_half)
        factor = (QQ(-1) ** i) * binomial(n, i)
        psi_phys = s + n - i + HALF
        for mid_word, mid_coeff in inner:
            for out_word, c in apply_phys_mode(mid_word, psi_phys, ramond):
                _merge(out, ((out_word, c),), factor * mid_coeff)
        i += 1

    # second regular sum: (a')_{n+mu-s-i} after psi_{s+i}
    max_annihilator = -word[0] if word else None
    i = 0
    while True:
        psi_phys = s + i + HALF
        if max_annihilator is None or psi_phys > max_annihilator:
            break
        first = apply_phys_mode(word, psi_phys, ramond)
        if first:
            factor = (QQ(-1) ** i) * binomial(n, i) * (-eps) * sign_n
            inner_index = n + mu - s - i
            for mid_word, mid_coeff in first:
                inner = iterate_mode_word(rest, inner_index, mid_word, sector_half)
                _merge(out, inner, factor * mid_coeff)
        i += 1

    # twisted correction terms: strictly lower weight, same length
    if sector_half:
        bound = -m1 + (-(rest[0]) if rest else ZERO)
        for i in range(1, rational_floor(bound) + 1):
            for mid_word, mid_coeff in apply_phys_mode(rest, m1 + i, False):
                inner = iterate_mode_word(mid_word, mu - i, word, sector_half)
                _merge(out, inner, -binomial(s, i) * mid_coeff)

    return tuple(sorted(out.items(), key=lambda t: t[0]))


def vertex_mode(v: State, t, target: State) -> State:
    """Lattice mode t of Y(v, x) acting on an untwisted state.

    The index is the lattice one: Y(v,x) = sum_t v_t x^{-t-1}, so the
    generator's mode t corresponds to the physical mode t + 1/2.
    """
    t = QQ(t)
    out = ZERO_STATE
    for a_word, a_coeff in v.terms:
        contribution = target.map_words(
            lambda word, a=a_word: iterate_mode_word(a, t, word, 0)
        )
        out = out + contribution.scaled(a_coeff)
    return out


def virasoro(n, s: State) -> State:
    """L(n): lattice mode n+1 of the conformal vector's field."""
    return vertex_mode(OMEGA, QQ(n) + 1, s)


# ---------------------------------------------------------------------------
# materialized fields
# ---------------------------------------------------------------------------


def ns_basis(max_level) -> list:
    """All untwisted words of level <= max_level, sorted by (level, word)."""
    max_level = QQ(max_level)
    words = []

    def build(prefix, next_mode, budget):
        words.append(tuple(reversed(prefix)))
        m = next_mode
        while -m <= budget:
            build(prefix + [m], m - 1, budget + m)
            m -= 1

    build([], QQ(-1, 2), max_level)
    return sorted(words, key=lambda w: (word_level(w), w))


def ramond_basis(max_level) -> list:
    """All parity-twisted words of level <= max_level (mode 0 allowed once)."""
    max_level = QQ(max_level)
    words = []

    def build(prefix, next_mode, budget):
        words.append(tuple(reversed(prefix)))
        m = next_mode
        while -m <= budget:
            build(prefix + [m], m - 1, budget + m)
            m -= 1

    build([], ZERO, max_level)
    return sorted(words, key=lambda w: (word_level(w), w))


def vertex_op(v: State, window: Window, *, domain_level=QQ(2)) -> OperatorField:
    """Materialize Y(v, x) over a window of x-exponents.

    Columns are indexed by the untwisted words of level <= domain_level; the
    coefficient of x^e is the lattice mode -e-1.  Exponents outside the
    window stay unknown rather than silently zero.
    """
    return _materialize_field(v, window, ns_basis(domain_level), 0)


def _materialize_field(v: State, window: Window, basis, sector_half: int) -> OperatorField:
    lo, hi = window.bounds_for("x")
    if lo is None or hi is None:
        raise ValueError("vertex operators need a bounded exponent window")
    parity = v.homogeneous_parity()
    offset = HALF if (sector_half and parity) else ZERO
    terms: dict = {}
    # enumerate lattice exponents congruent to offset (mod 1) inside window
    exponents = []
    val = offset + rational_floor(lo - offset)
    while val < lo:
        val += 1
    while val <= hi:
        exponents.append(val)
        val += 1
    for e in exponents:
        t = -e - 1
        column = {}
        for word in basis:
            cell = {}
            for a_word, a_coeff in v.terms:
                for out_word, c in iterate_mode_word(a_word, t, word, sector_half):
                    new = cell.get(out_word, ZERO) + a_coeff * c
                    if scalar_is_zero(new):
                        cell.pop(out_word, None)
                    else:
                        cell[out_word] = new
            if cell:
                column[word] = cell
        if column:
            terms[(e,)] = column
    return OperatorField(("x",), terms, window, parity)


def field_to_json(field: OperatorField, word_formatter=format_ns_word) -> str:
    """Serialize a materialized field as JSON with string-exact scalars."""
    payload = []
    for mono in sorted(field.terms):
        column = field.terms[mono]
        entry = {
            "exponent": [str(e) for e in mono],
            "matrix": {
                word_formatter(in_word): {
                    word_formatter(out_word): scalar_str(c)
                    for out_word, c in sorted(cell.items())
                }
                for in_word, cell in sorted(column.items())
            },
        }
        payload.append(entry)
    return json.dumps(payload, indent=2)


def field_to_csv(field: OperatorField, in_basis, out_basis,
                 word_formatter=format_ns_word) -> str:
    """CSV export: one row per (exponent, out index), one column per in index."""
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["exponent", "row"] + [word_formatter(w) for w in in_basis])
    for mono in sorted(field.terms):
        column = field.terms[mono]
        for r, out_word in enumerate(out_basis):
            row = [str(mono[0]), str(r)]
            for in_word in in_basis:
                value = column.get(in_word, {}).get(out_word, ZERO)
                row.append(scalar_str(value))
            writer.writerow(row)
    return buffer.getvalue()


# ---------------------------------------------------------------------------
# the tensor power and its signed permutation action
# ---------------------------------------------------------------------------


def check_tensor_word(factors, k=None) -> tuple:
    word = tuple(check_ns_word(f) for f in factors)
    if k is not None and len(word) != k:
        raise ValueError(f"expected {k} tensor factors, got {len(word)}")
    return word


def tensor_level(tword) -> QQ:
    return sum((word_level(f) for f in tword), ZERO)


def tensor_parity(tword) -> int:
    return sum(len(f) for f in tword) % 2


def format_tensor_word(tword) -> str:
    return " (x) ".join(format_ns_word(f) for f in tword)


def tensor_slot_mode(j: int, m, tword):
    """psi_m on tensor slot j (1-based), with the parity sign of the pass.

    The operator acting on slot j anticommutes past the factors in slots
    1..j-1, so it picks up (-1) per odd factor it crosses.
    """
    factors = tuple(tword)
    sign = QQ(-1) ** (sum(len(f) for f in factors[: j - 1]) % 2)
    out = []
    for new_factor, coeff in apply_phys_mode(factors[j - 1], m, ramond=False):
        new_word = factors[: j - 1] + (new_factor,) + factors[j:]
        out.append((new_word, sign * coeff))
    return out


def tensor_vertex_mode(a_tword, t, target_tword):
    """Lattice mode t of Y(a_1 (x) ... (x) a_k, x) on one tensor word.

    The field factorizes slot-by-slot in the same variable; the mode is the
    finite convolution over integer slot modes t_1 + ... + t_k = t - (k-1).
    Each t_j is bounded above by its slot's grading floor and below by the
    other slots' upper bounds, so the sum is finite.  The Koszul sign counts
    each odd slot field crossing the odd original factors to its left.
    """
    t = QQ(t)
    k = len(a_tword)
    if len(target_tword) != k:
        raise ValueError("tensor words must have the same number of factors")
    budget_total = t - (k - 1)
    if budget_total.denominator != 1:
        return ()

    sign = QQ(1)
    left_parity = 0
    for j in range(k):
        if word_parity(a_tword[j]) and left_parity:
            sign = -sign
        left_parity ^= word_parity(target_tword[j])

    # largest integer mode keeping slot j at or above its grading floor
    his = [
        rational_floor(word_level(target_tword[j]) + word_level(a_tword[j]) - 1)
        for j in range(k)
    ]
    suffix_hi = [0] * (k + 1)
    for j in range(k - 1, -1, -1):
        suffix_hi[j] = suffix_hi[j + 1] + his[j]

    out: dict = {}

    def assemble(j, budget, factors, coeff):
        if j == k - 1:
            t_j = budget
            if t_j > his[j]:
                return
            for w, c in iterate_mode_word(a_tword[j], t_j, target_tword[j], 0):
                word = factors + (w,)
                new = out.get(word, ZERO) + coeff * c
                if scalar_is_zero(new):
                    out.pop(word, None)
                else:
                    out[word] = new
            return
        lo_j = budget - suffix_hi[j + 1]
        for t_j in range(rational_floor(his[j]), rational_floor(lo_j) - 1, -1):
            res = iterate_mode_word(a_tword[j], QQ(t_j), target_tword[j], 0)
            for w, c in res:
                assemble(j + 1, budget - t_j, factors + (w,), coeff * c)

    assemble(0, budget_total, (), sign)
    return tuple(sorted(out.items(), key=lambda item: item[0]))


def tensor_vertex_op(v_terms, window: Window, *, k: int, domain) -> OperatorField:
    """Materialize the tensor-power vertex operator over a window.

    `v_terms` is a State whose words are tensor words; `domain` lists the
    tensor words to use as columns.
    """
    lo, hi = window.bounds_for("x")
    if lo is None or hi is None:
        raise ValueError("vertex operators need a bounded exponent window")
    terms: dict = {}
    for e_int in range(rational_floor(lo), rational_floor(hi) + 1):
        e = QQ(e_int)
        t = -e - 1
        column = {}
        for tword in domain:
            cell = {}
            for a_tword, a_coeff in v_terms.terms:
                for out_word, c in tensor_vertex_mode(a_tword, t, tword):
                    new = cell.get(out_word, ZERO) + a_coeff * c
                    if scalar_is_zero(new):
                        cell.pop(out_word, None)
                    else:
                        cell[out_word] = new
            if cell:
                column[tword] = cell
        if column:
            terms[(e,)] = column
    parity = None
    parities = {tensor_parity(w) for w, _ in v_terms.terms}
    if len(parities) == 1:
        parity = parities.pop()
    return OperatorField(("x",), terms, window, parity)


def permutation_action(perm, tword):
    """The signed right action of a permutation on a tensor word.

    `perm` maps 1-based positions to 1-based positions; the image word has
    factor v_{perm(i)} in slot i, and the sign is the Koszul sign of the
    rearrangement: -1 for every inverted pair of odd factors.
    """
    k = len(tword)
    if sorted(perm) != list(range(1, k + 1)):
        raise ValueError(f"not a permutation of 1..{k}: {perm}")
    factors = tuple(tword)
    new_factors = tuple(factors[perm[i] - 1] for i in range(k))
    sign = 1
    for i in range(k):
        for j in range(i + 1, k):
            if perm[i] > perm[j] and len(new_factors[i]) % 2 and len(new_factors[j]) % 2:
                sign = -sign
    return new_factors, QQ(sign)


def cycle_permutation(k: int) -> tuple:
    """(1 2 ... k): position i receives the factor from position i+1."""
    return tuple(list(range(2, k + 1)) + [1])


def compose_permutations(g1, g2) -> tuple:
    """The product acting as: first g1, then g2 (right-action composition)."""
    return tuple(g1[g2[i] - 1] for i in range(len(g1)))


def tensor_slot_vector(v: State, j: int, k: int) -> State:
    """The tensor state with v in slot j (1-based) and vacua elsewhere."""
    table = {}
    for word, coeff in v.terms:
        factors = tuple(() if i != j - 1 else word for i in range(k))
        table[factors] = coeff
    return State(table)
