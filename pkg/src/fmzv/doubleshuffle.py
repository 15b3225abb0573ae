"""Double shuffle machinery: Racinet's linearized conditions, stuffle and
shuffle regularization, the extended double shuffle ideal and the formal
zeta quotient algebra with its dimension table, plus the low-weight
verifications of the classical identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .exact import Q, QMatrix, RowReducer
from .ihara import ihara_bracket
from .levelmatrix import bzd, c_coeff
from .words import (NCPoly, STUFFLE, Tensor2, Word, as_poly, conc_mul,
                    dual_coproduct_poly, empty_word, is_primitive, lie_basis,
                    quasi_shuffle, shuffle, shuffle_power, stuffle, word,
                    words_of_weight, x_word)

_X, _Y = "X", "Y"


# ---------------------------------------------------------------------------
# Translation between the x- and y-encodings

def iota(w: Word) -> Word:
    """y_{k_1} ... y_{k_d} -> x0^{k_1 - 1} x1 ... x0^{k_d - 1} x1."""
    letters = []
    for k in w.letters:
        letters += [0] * (k - 1) + [1]
    return x_word(letters)


def xword_to_yword(w: Word) -> Word:
    """Inverse of iota on words ending in x1 (the empty word included)."""
    if w.letters and w.letters[-1] != 1:
        raise ValueError(f"{w} does not end in x1")
    ks = []
    run = 0
    for c in w.letters:
        if c == 0:
            run += 1
        else:
            ks.append(run + 1)
            run = 0
    return word(_Y, ks)


def pi_Y(p) -> NCPoly:
    """Projection to the y-algebra: words ending in x1 translate, words
    ending in x0 map to zero, the empty word to the empty word."""
    p = as_poly(p)
    out = NCPoly.zero(_Y)
    for w, c in p.terms.items():
        if w.letters and w.letters[-1] != 1:
            continue
        out = out + NCPoly.from_word(xword_to_yword(w), c)
    return out


def psi_star(p) -> NCPoly:
    """Stuffle-side correction of the projection.

    pi_Y(p) plus sum over n >= 2 of (-1)^(n-1)/n times the y_n coefficient
    times y1^n.
    """
    p = as_poly(p)
    proj = pi_Y(p)
    out = proj
    for n in range(2, p.max_weight() + 1):
        c = proj.coeff(word(_Y, [n]))
        if c:
            out = out + NCPoly.from_word(word(_Y, [1] * n),
                                         Q((-1) ** (n - 1), n) * c)
    return out


# ---------------------------------------------------------------------------
# Racinet's linearized double shuffle conditions

def check_dm_conditions(psi) -> bool:
    """Conditions: no x0/x1 terms, shuffle-primitivity, stuffle-primitivity
    of the corrected projection, and no x0x1 term."""
    psi = as_poly(psi)
    if psi.coeff(x_word([0])) != 0 or psi.coeff(x_word([1])) != 0:
        return False
    if psi.coeff(x_word([0, 1])) != 0:
        return False
    if not is_primitive(psi, None):
        return False
    ps = psi_star(psi)
    if ps.is_zero():
        return True
    return is_primitive(ps, STUFFLE)


def xi3() -> NCPoly:
    """[x0,[x0,x1]] + [[x0,x1],x1]."""
    x0 = NCPoly.from_word(x_word([0]))
    x1 = NCPoly.from_word(x_word([1]))
    b = lambda p, q: conc_mul(p, q) - conc_mul(q, p)
    return b(x0, b(x0, x1)) + b(b(x0, x1), x1)


def xi5() -> NCPoly:
    """The weight-5 double shuffle element."""
    x0 = NCPoly.from_word(x_word([0]))
    x1 = NCPoly.from_word(x_word([1]))
    b = lambda p, q: conc_mul(p, q) - conc_mul(q, p)
    t1 = b(x0, b(x0, b(x0, b(x0, x1))))
    t2 = b(b(x0, b(x0, b(x0, x1))), x1)
    t3 = b(b(x0, b(x0, x1)), b(x0, x1))
    t4 = b(x1, b(x1, b(x0, b(x0, x1))))
    t5 = b(b(x0, x1), b(b(x0, x1), x1))
    t6 = b(b(b(b(x0, x1), x1), x1), x1)
    return (t1 + 2 * t2 + Q(1, 2) * t3 + 2 * t4 - Q(3, 2) * t5 + t6)


def _nonprimitive_part(t: Tensor2, p: NCPoly, alphabet: str) -> Tensor2:
    one = empty_word(alphabet)
    out = t
    for w, c in p.terms.items():
        out = out - Tensor2.single(w, one, c) - Tensor2.single(one, w, c)
    return out


def dm_basis(w: int) -> list:
    """Canonical basis of the weight-w double shuffle Lie algebra.

    Shuffle-primitivity is enforced structurally by working in the
    Lyndon-bracket basis of the free Lie algebra; the remaining conditions
    become an exact linear system whose kernel is returned (mapped back to
    word polynomials).
    """
    if w < 1:
        raise ValueError("weight must be >= 1")
    params = lie_basis(_X, w)
    if not params:
        return []
    constraints: dict = {}   # constraint key -> {param index: coeff}

    def put(key, i, c):
        if c:
            constraints.setdefault(key, {})[i] = c

    for i, p in enumerate(params):
        put(("x0",), i, p.coeff(x_word([0])))
        put(("x1",), i, p.coeff(x_word([1])))
        put(("x0x1",), i, p.coeff(x_word([0, 1])))
        ps = psi_star(p)
        np = _nonprimitive_part(dual_coproduct_poly(ps, STUFFLE), ps, _Y)
        for (u, v), c in np.terms.items():
            put(("t", u.letters, v.letters), i, c)

    red = RowReducer()
    for key in sorted(constraints):
        red.add(constraints[key])
    lam_basis = red.kernel_basis(len(params))
    out = []
    for lam in lam_basis:
        elt = NCPoly.zero(_X)
        for i, c in enumerate(lam):
            if c:
                elt = elt + params[i].scale(c)
        out.append(elt)
    return out


def check_depth1_even_vanishing(psi, w: int) -> bool:
    """Coefficients of x0^(k-1) x1 vanish for every even k <= w."""
    psi = as_poly(psi)
    for k in range(2, w + 1, 2):
        if psi.coeff(x_word([0] * (k - 1) + [1])) != 0:
            return False
    return True


def dm_closure_bracket(f, g) -> NCPoly:
    """Ihara bracket, re-exported next to the conditions it preserves."""
    return ihara_bracket(f, g)


# ---------------------------------------------------------------------------
# Regularization isomorphisms

def _solve_combination(images: list, target: dict):
    """Express target as a linear combination of the image vectors.

    images: list of dicts over comparable keys.  Returns the coefficient
    list, or None if the target is not in the span.
    """
    red = RowReducer()
    for i, img in enumerate(images):
        row = {("a",) + k: v for k, v in img.items()}
        row[("z", i)] = Q(1)  # tags sort after all word keys
        red.add(row)
    res = red.reduce({("a",) + k: v for k, v in target.items()})
    coeffs = [Q(0)] * len(images)
    for key, v in res.items():
        if key[0] == "a":
            return None
        coeffs[key[1]] = -v
    return coeffs


def _y0_words(n: int) -> list:
    return [w for w in words_of_weight(_Y, n)
            if not w.letters or w.letters[0] != 1]


def _h0_words(n: int) -> list:
    return [w for w in words_of_weight(_X, n)
            if not w.letters or (w.letters[0] == 0 and w.letters[-1] == 1)]


def _h1_words(n: int) -> list:
    return [w for w in words_of_weight(_X, n)
            if not w.letters or w.letters[-1] == 1]


def stuffle_y1_power(n: int) -> NCPoly:
    out = NCPoly.one(_Y)
    for _ in range(n):
        out = stuffle(out, NCPoly.from_word(word(_Y, [1])))
    return out


def reg_stuffle_inverse(w: Word) -> dict:
    """Preimage under w T^n -> w * y1^(*n): a dict T-power -> polynomial
    supported on words that do not start in y1."""
    N = w.weight
    cols = []
    images = []
    for n in range(N + 1):
        y1n = stuffle_y1_power(n)
        for u in _y0_words(N - n):
            cols.append((u, n))
            img = stuffle(NCPoly.from_word(u), y1n)
            images.append({t.sort_key(): c for t, c in img.terms.items()})
    coeffs = _solve_combination(images, {w.sort_key(): Q(1)})
    if coeffs is None:
        raise AssertionError("stuffle regularization failed to invert")
    out: dict = {}
    for (u, n), c in zip(cols, coeffs):
        if c:
            out[n] = out.get(n, NCPoly.zero(_Y)) + NCPoly.from_word(u, c)
    return out


def reg_stuffle_forward(parts: dict) -> NCPoly:
    out = NCPoly.zero(_Y)
    for n, p in parts.items():
        out = out + stuffle(p, stuffle_y1_power(n))
    return out


def reg_shuffle_inverse(w: Word) -> dict:
    """Preimage under w T^n U^m -> w sh x1^(sh n) sh x0^(sh m): a dict
    (n, m) -> polynomial supported on words in the convergent span."""
    N = w.weight
    x1p = [shuffle_power(x_word([1]), n) for n in range(N + 1)]
    x0p = [shuffle_power(x_word([0]), m) for m in range(N + 1)]
    cols = []
    images = []
    for n in range(N + 1):
        for m in range(N + 1 - n):
            for u in _h0_words(N - n - m):
                cols.append((u, n, m))
                img = shuffle(shuffle(NCPoly.from_word(u), x1p[n]), x0p[m])
                images.append({t.sort_key(): c for t, c in img.terms.items()})
    coeffs = _solve_combination(images, {w.sort_key(): Q(1)})
    if coeffs is None:
        raise AssertionError("shuffle regularization failed to invert")
    out: dict = {}
    for (u, n, m), c in zip(cols, coeffs):
        if c:
            key = (n, m)
            out[key] = out.get(key, NCPoly.zero(_X)) + NCPoly.from_word(u, c)
    return out


def reg_shuffle_forward(parts: dict) -> NCPoly:
    out = NCPoly.zero(_X)
    for (n, m), p in parts.items():
        out = out + shuffle(shuffle(p, shuffle_power(x_word([1]), n)),
                            shuffle_power(x_word([0]), m))
    return out


# ---------------------------------------------------------------------------
# The extended double shuffle ideal and the quotient

@dataclass
class EDSWeightSpace:
    N: int
    quotient_dim: int
    canonical_section: tuple
    _cols: tuple
    _index: dict
    _reducer: RowReducer

    @property
    def relation_basis(self) -> QMatrix:
        rows = []
        for piv in sorted(self._reducer.pivot_rows):
            row = [Q(0)] * len(self._cols)
            for j, c in self._reducer.pivot_rows[piv].items():
                row[j] = c
            rows.append(row)
        if not rows:
            return QMatrix(0, len(self._cols), ())
        return QMatrix.from_rows(rows)


def _shuffle_defect(u: Word, v: Word) -> NCPoly:
    """u sh v minus the embedded stuffle product of the y-translations."""
    yu, yv = xword_to_yword(u), xword_to_yword(v)
    st = stuffle(NCPoly.from_word(yu), NCPoly.from_word(yv))
    emb = NCPoly.zero(_X)
    for t, c in st.terms.items():
        emb = emb + NCPoly.from_word(iota(t), c)
    return shuffle(u, v) - emb


@lru_cache(maxsize=None)
def eds_weight_space(N: int) -> EDSWeightSpace:
    """Weight-N piece of the ideal generated by x0, x1 and the double
    shuffle defects, row-reduced once and cached.

    Columns put the non-admissible words first so the canonical section
    prefers words starting in x0 and ending in x1.
    """
    if N < 0:
        raise ValueError("weight must be >= 0")
    all_words = words_of_weight(_X, N)
    admissible = {w for w in all_words
                  if w.letters and w.letters[0] == 0 and w.letters[-1] == 1}
    cols = sorted(all_words, key=lambda w: (w in admissible, w.sort_key()))
    index = {w: i for i, w in enumerate(cols)}
    red = RowReducer()

    def add_poly(p: NCPoly):
        red.add({index[t]: c for t, c in p.terms.items()})

    if N >= 1:
        for m in words_of_weight(_X, N - 1):
            add_poly(shuffle(x_word([0]), m))
            add_poly(shuffle(x_word([1]), m))
    for a in range(2, N + 1):
        for u in _h0_words(a):
            if not u.letters:
                continue
            for b in range(1, N - a + 1):
                for v in _h1_words(b):
                    if not v.letters:
                        continue
                    defect = _shuffle_defect(u, v)
                    if defect.is_zero():
                        continue
                    for m in words_of_weight(_X, N - a - b):
                        add_poly(shuffle(defect, m))
    section = tuple(w for w in cols if index[w] not in red.pivot_rows)
    return EDSWeightSpace(N, len(all_words) - red.rank, section,
                          tuple(cols), index, red)


def zf_reduce(p, N: int) -> NCPoly:
    """Canonical representative modulo the weight-N extended double shuffle
    relations; two polynomials are equal in the quotient iff their
    canonical forms coincide."""
    p = as_poly(p)
    if not p.is_homogeneous(N):
        raise ValueError(f"input is not homogeneous of weight {N}")
    space = eds_weight_space(N)
    res = space._reducer.reduce({space._index[w]: c for w, c in p.terms.items()})
    return NCPoly(_X, {space._cols[i]: c for i, c in res.items()})


def zf_dim(N: int) -> int:
    return eds_weight_space(N).quotient_dim


# ---------------------------------------------------------------------------
# Identities verified inside the quotient

def hoffman_word(a: int, b: int) -> Word:
    """The block word for the index (2^a, 3, 2^b)."""
    return bzd((2,) * a + (3,) + (2,) * b)


def zf2_power(n: int) -> NCPoly:
    """Representative of the n-th power of the weight-2 class."""
    return shuffle_power(x_word([0, 1]), n)


def twos_word(n: int) -> Word:
    """The word (x0x1)^n representing the all-2 index of depth n."""
    return x_word([0, 1] * n)


def odd_zeta_word(r: int) -> Word:
    return x_word([0] * (2 * r) + [1])


def verify_level_one_identity(n: int) -> bool:
    """Both palindromic level-one identities at weight 2n+1."""
    N = 2 * n + 1
    pal = NCPoly.from_word(x_word([0, 1] * n + [0]))
    lhs1 = pal
    for i in range(n):
        lhs1 = lhs1 + NCPoly.from_word(hoffman_word(i, n - 1 - i), 2)
    if not zf_reduce(lhs1, N).is_zero():
        return False
    rhs = NCPoly.zero(_X)
    for i in range(1, n + 1):
        rhs = rhs + shuffle(NCPoly.from_word(odd_zeta_word(i)),
                            NCPoly.from_word(twos_word(n - i))).scale(2 * (-1) ** i)
    return zf_reduce(pal - rhs, N).is_zero()


def verify_formal_zagier(a: int, b: int) -> bool:
    """The level-one evaluation at the index (2^a, 3, 2^b)."""
    N = 2 * a + 2 * b + 3
    lhs = NCPoly.from_word(hoffman_word(a, b))
    rhs = NCPoly.zero(_X)
    for r in range(1, a + b + 2):
        rhs = rhs + shuffle(NCPoly.from_word(odd_zeta_word(r)),
                            NCPoly.from_word(twos_word(a + b + 1 - r))
                            ).scale(c_coeff(a, b, r))
    return zf_reduce(lhs - rhs, N).is_zero()
