"""The Goncharov coproduct on X-words and its level-lowering derivations.

The coproduct sums over subsets of letter positions; each gap between
chosen positions contributes an I-factor whose value depends on the two
bounding letters (identity, concatenation antipode, or zero), with
virtual bounds x1 on the left and x0 on the right.  Subsets containing a
vanishing factor are pruned before any shuffle expansion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .exact import Q
from .ihara import TruncatedSeries, grossman_larson
from .words import (NCPoly, Tensor2, Word, antipode_conc, as_poly, empty_word,
                    pairing, pi_indec, shuffle, x_word)

_X = "X"


def iformal(a: int, f, b: int) -> NCPoly:
    """I-factor with bounding letters a, b: f for (x1, x0), the
    concatenation antipode for (x0, x1), the constant term for a = b."""
    f = as_poly(f)
    if a == b:
        return NCPoly.from_word(empty_word(_X), f.coeff(empty_word(_X)))
    if (a, b) == (1, 0):
        return f
    return antipode_conc(f)


def _iformal_word(a: int, body: tuple, b: int):
    """I-factor of a single word; returns (sign, letters) or None if zero."""
    if a == b:
        return (1, ()) if not body else None
    if (a, b) == (1, 0):
        return (1, body)
    return ((1 if len(body) % 2 == 0 else -1), body[::-1])


def gon_coproduct(w: Word) -> Tensor2:
    """Goncharov coproduct of an X-word."""
    if w.alphabet != _X:
        raise ValueError("the Goncharov coproduct lives on X-words")
    letters = w.letters
    n = len(letters)
    ext = (1,) + letters + (0,)  # virtual bounds
    out: dict = {}
    for mask in range(1 << n):
        positions = [i + 1 for i in range(n) if mask >> i & 1]
        bounds = [0] + [p for p in positions] + [n + 1]
        factors = []
        dead = False
        for p in range(len(bounds) - 1):
            lo, hi = bounds[p], bounds[p + 1]
            fac = _iformal_word(ext[lo], letters[lo:hi - 1], ext[hi])
            if fac is None:
                dead = True
                break
            if fac[1]:
                factors.append(fac)
        if dead:
            continue
        sign = 1
        prod = NCPoly.one(_X)
        for s, body in factors:
            sign *= s
            prod = shuffle(prod, NCPoly.from_word(Word(_X, body)))
        right = Word(_X, tuple(letters[p - 1] for p in positions))
        for u, c in prod.terms.items():
            key = (u, right)
            out[key] = out.get(key, Q(0)) + sign * c
    return Tensor2(out)


def gon_coproduct_poly(p: NCPoly) -> Tensor2:
    out = Tensor2()
    for w, c in as_poly(p).terms.items():
        out = out + gon_coproduct(w).scale(c)
    return out


def gon_prime(w: Word) -> Tensor2:
    """Reduced coproduct: the Goncharov coproduct minus 1 (x) w."""
    return gon_coproduct(w) - Tensor2.single(empty_word(_X), w)


def partial_2r1(w: Word, r: int) -> Tensor2:
    """Strict-subword component of weight 2r+1.

    Sums, over every window of 2r+1 consecutive letters, the I-factor of
    the window (with the adjacent letters as bounds, virtual bounds at the
    ends) tensored with the word left after deleting the window.  Returns
    zero when 2r+1 exceeds the weight.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    letters = w.letters
    n = len(letters)
    width = 2 * r + 1
    if width > n:
        return Tensor2.zero()
    ext = (1,) + letters + (0,)
    out: dict = {}
    for j in range(n - width + 1):
        fac = _iformal_word(ext[j], letters[j:j + width], ext[j + width + 1])
        if fac is None:
            continue
        sign, body = fac
        left = Word(_X, body)
        right = Word(_X, letters[:j] + letters[j + width:])
        key = (left, right)
        out[key] = out.get(key, Q(0)) + sign
    return Tensor2(out)


def derivation_D(p, r: int) -> Tensor2:
    """Weight-(2r+1) derivation: the strict-subword component with left
    factors projected onto indecomposables (Lyndon-supported form)."""
    p = as_poly(p)
    out = Tensor2()
    for w, c in p.terms.items():
        for (u, v), cc in partial_2r1(w, r).terms.items():
            reduced = pi_indec(NCPoly.from_word(u), 2 * r + 1)
            for uw, cu in reduced.terms.items():
                out = out + Tensor2.single(uw, v, c * cc * cu)
    return out


def d_less_n(p, N: int) -> list:
    """All derivation components (r, D_{2r+1}(p)) with 3 <= 2r+1 < N."""
    out = []
    r = 1
    while 2 * r + 1 < N:
        out.append((r, derivation_D(p, r)))
        r += 1
    return out


def duality_check(G: TruncatedSeries, H: TruncatedSeries, w: Word) -> bool:
    """(G (*) H | w) == (G (x) H | Goncharov coproduct of w)."""
    if w.weight > min(G.truncation_weight, H.truncation_weight):
        raise ValueError("word exceeds the truncation weight")
    lhs = pairing(grossman_larson(G.value, H.value), w)
    rhs = Q(0)
    for (u, v), c in gon_coproduct(w).terms.items():
        cu = G.value.coeff(u)
        if not cu:
            continue
        cv = H.value.coeff(v)
        if cv:
            rhs += c * cu * cv
    return lhs == rhs
