"""The post-Lie structure on the free Lie algebra over x0, x1.

Implements the special derivations d_f, the triangle product extended to
the enveloping algebra by the four extension rules, the Ihara bracket,
the Grossman-Larson product (recursive and closed form), its antipode,
truncated exp/log between primitives and grouplike series, and the
conjugation substitution kappa_G.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import Q
from .words import (NCPoly, Tensor2, Word, antipode_conc, as_poly, conc_mul,
                    dual_coproduct, empty_word, word, x_word)

_X = "X"
_ONE = empty_word(_X)


@lru_cache(maxsize=None)
def _deshuffle_splits(letters: tuple) -> tuple:
    """Sweedler terms of the dual-shuffle coproduct of an X-word.

    Returns ((u_letters, v_letters, multiplicity), ...).
    """
    t = dual_coproduct(Word(_X, letters), None)
    return tuple((u.letters, v.letters, c) for (u, v), c in t.terms.items())


def _commutator(p: NCPoly, q: NCPoly) -> NCPoly:
    return conc_mul(p, q) - conc_mul(q, p)


def special_derivation(f, g) -> NCPoly:
    """d_f: the derivation of the concatenation algebra with
    d_f(x0) = 0 and d_f(x1) = [x1, f].  Linear in f."""
    f, g = as_poly(f), as_poly(g)
    bracket = _commutator(NCPoly.from_word(x_word([1])), f)
    out = NCPoly.zero(_X)
    for w, c in g.terms.items():
        for i, letter in enumerate(w.letters):
            if letter != 1:
                continue
            pre = NCPoly.from_word(Word(_X, w.letters[:i]), c)
            post = NCPoly.from_word(Word(_X, w.letters[i + 1:]))
            out = out + conc_mul(conc_mul(pre, bracket), post)
    return out


_TR_CACHE: dict = {}


def _tr_lie_factors(factors: tuple, y: int) -> NCPoly:
    """(f_1 ... f_n) |> y for Lie-element factors f_i and a letter y.

    Recursion on the number of factors: (f F) |> y = f |> (F |> y)
    - (f |> F) |> y, where f |> F is the factorwise Leibniz expansion and
    f |> u for f Lie and u in the enveloping algebra is the derivation d_f.
    """
    if not factors:
        return NCPoly.from_word(x_word([y]))
    f, rest = factors[0], factors[1:]
    if not rest:
        if y == 0:
            return NCPoly.zero(_X)
        return _commutator(NCPoly.from_word(x_word([1])), f)
    out = special_derivation(f, _tr_lie_factors(rest, y))
    for i in range(len(rest)):
        dfi = special_derivation(f, rest[i])
        if dfi.is_zero():
            continue
        out = out - _tr_lie_factors(rest[:i] + (dfi,) + rest[i + 1:], y)
    return out


def _tr_words(a: tuple, b: tuple) -> NCPoly:
    """Triangle product of two words via the extension rules."""
    key = (a, b)
    cached = _TR_CACHE.get(key)
    if cached is not None:
        return cached
    if not b:
        res = NCPoly.one(_X) if not a else NCPoly.zero(_X)
    elif not a:
        res = NCPoly.from_word(Word(_X, b))
    elif len(b) == 1:
        res = _tr_lie_factors(tuple(NCPoly.from_word(x_word([c])) for c in a),
                              b[0])
    else:
        # A |> (y C) = (A_(1) |> y)(A_(2) |> C)
        res = NCPoly.zero(_X)
        for u, v, m in _deshuffle_splits(a):
            left = _tr_words(u, b[:1])
            if left.is_zero():
                continue
            res = res + conc_mul(left, _tr_words(v, b[1:])).scale(m)
    _TR_CACHE[key] = res
    return res


def postlie_tr(A, B) -> NCPoly:
    """The triangle product on the enveloping algebra, bilinear."""
    A, B = as_poly(A), as_poly(B)
    out = NCPoly.zero(_X)
    for wa, ca in A.terms.items():
        for wb, cb in B.terms.items():
            out = out + _tr_words(wa.letters, wb.letters).scale(ca * cb)
    return out


def ihara_bracket(f, g) -> NCPoly:
    """{f, g} = d_f(g) - d_g(f) + [f, g]."""
    f, g = as_poly(f), as_poly(g)
    return (special_derivation(f, g) - special_derivation(g, f)
            + _commutator(f, g))


def grossman_larson(A, B) -> NCPoly:
    """A (*) B = A_(1) (A_(2) |> B)."""
    A, B = as_poly(A), as_poly(B)
    out = NCPoly.zero(_X)
    for wa, ca in A.terms.items():
        for u, v, m in _deshuffle_splits(wa.letters):
            left = NCPoly.from_word(Word(_X, u))
            for wb, cb in B.terms.items():
                tr = _tr_words(v, wb.letters)
                if tr.is_zero():
                    continue
                out = out + conc_mul(left, tr).scale(ca * cb * m)
    return out


def _x_run_decomposition(w: Word):
    """Write w as x0^{k_1} x1 ... x0^{k_d} x1 x0^{k_{d+1}}; return the k's."""
    ks = [0]
    for c in w.letters:
        if c == 0:
            ks[-1] += 1
        else:
            ks.append(0)
    return ks


def gl_closed_form(A, w: Word) -> NCPoly:
    """Insertion formula for the Grossman-Larson product.

    Equals grossman_larson(A, w); the iterated Sweedler components of A
    are spliced around the x1 letters of w, every second one through the
    concatenation antipode.
    """
    A = as_poly(A)
    ks = _x_run_decomposition(w)
    d = len(ks) - 1
    slots = 2 * d + 1
    out: dict = {}
    for wa, ca in A.terms.items():
        n = len(wa.letters)
        for assign in _slot_assignments(n, slots):
            parts = [[] for _ in range(slots)]
            for pos, s in enumerate(assign):
                parts[s].append(wa.letters[pos])
            sign = 1
            letters = []
            for i, k in enumerate(ks):
                if i > 0:
                    # S(A_(2i)) then the x1 that ends the i-th run
                    even = parts[2 * i - 1]
                    if len(even) % 2 == 1:
                        sign = -sign
                    letters.extend(reversed(even))
                    letters.append(1)
                    letters.extend(parts[2 * i])
                else:
                    letters.extend(parts[0])
                letters.extend([0] * k)
            target = Word(_X, tuple(letters))
            out[target] = out.get(target, Q(0)) + sign * ca
    return NCPoly(_X, out)


@lru_cache(maxsize=None)
def _slot_assignments(n: int, slots: int) -> tuple:
    if n == 0:
        return ((),)
    shorter = _slot_assignments(n - 1, slots)
    return tuple(a + (s,) for a in shorter for s in range(slots))


_GL_ANTIPODE_CACHE: dict = {}


def gl_antipode_word(w: Word) -> NCPoly:
    """Antipode of the Grossman-Larson Hopf algebra on a single word.

    Solved weight by weight from (*) o (S (x) id) o coproduct = unit o counit;
    the top Sweedler term contributes S(w) itself and everything else is
    already known on lower weight.
    """
    cached = _GL_ANTIPODE_CACHE.get(w.letters)
    if cached is not None:
        return cached
    if len(w.letters) == 0:
        res = NCPoly.one(_X)
    else:
        res = NCPoly.zero(_X)
        for u, v, m in _deshuffle_splits(w.letters):
            if u == w.letters:
                continue
            res = res - grossman_larson(gl_antipode_word(Word(_X, u)),
                                        NCPoly.from_word(Word(_X, v))).scale(m)
    _GL_ANTIPODE_CACHE[w.letters] = res
    return res


def gl_antipode(p, max_weight=None) -> NCPoly:
    """Linear extension of the Grossman-Larson antipode.

    On a series with constant term 1 (truncated grouplike) this computes
    the (*)-inverse; on primitives it is the sign flip.
    """
    p = as_poly(p)
    out = NCPoly.zero(_X)
    for w, c in p.terms.items():
        if max_weight is not None and w.weight > max_weight:
            continue
        out = out + gl_antipode_word(w).scale(c)
    return out


# ---------------------------------------------------------------------------
# Truncated series

@dataclass(frozen=True)
class TruncatedSeries:
    """A polynomial representing a series modulo weight > truncation_weight."""

    value: NCPoly
    truncation_weight: int

    def __post_init__(self):
        if self.value.max_weight() > self.truncation_weight:
            raise ValueError("terms above the truncation weight")

    def coeff(self, w: Word) -> Fraction:
        return self.value.coeff(w)


def ts_conc_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.truncation_weight, b.truncation_weight)
    return TruncatedSeries(conc_mul(a.value, b.value).truncate(n), n)


def exp_trunc(f, N: int) -> TruncatedSeries:
    """exp of f for the concatenation product, truncated at weight N."""
    f = as_poly(f)
    if f.coeff(_ONE) != 0:
        raise ValueError("exp requires zero constant term")
    out = NCPoly.one(_X)
    term = NCPoly.one(_X)
    for k in range(1, N + 1):
        term = conc_mul(term, f).truncate(N).scale(Q(1, k))
        if term.is_zero():
            break
        out = out + term
    return TruncatedSeries(out.truncate(N), N)


def log_trunc(G: TruncatedSeries) -> NCPoly:
    """Inverse of exp_trunc: log of a series with constant term 1."""
    if G.value.coeff(_ONE) != 1:
        raise ValueError("log requires constant term 1")
    N = G.truncation_weight
    x = G.value - NCPoly.one(_X)
    out = NCPoly.zero(_X)
    term = NCPoly.one(_X)
    for k in range(1, N + 1):
        term = conc_mul(term, x).truncate(N)
        if term.is_zero():
            break
        out = out + term.scale(Q((-1) ** (k + 1), k))
    return out


def is_grouplike(G: TruncatedSeries) -> bool:
    """Check the grouplike identity for the dual-shuffle coproduct up to
    the truncation weight."""
    N = G.truncation_weight
    lhs = Tensor2()
    for w, c in G.value.terms.items():
        lhs = lhs + dual_coproduct(w, None).scale(c)
    rhs = Tensor2()
    for u, cu in G.value.terms.items():
        for v, cv in G.value.terms.items():
            if u.weight + v.weight <= N:
                rhs = rhs + Tensor2.single(u, v, cu * cv)
    lhs = Tensor2({(u, v): c for (u, v), c in lhs.terms.items()
                   if u.weight + v.weight <= N})
    return lhs == rhs


def is_lie_element(p) -> bool:
    """Primitivity for the dual-shuffle coproduct (degreewise)."""
    p = as_poly(p)
    if p.is_zero():
        return True
    from .words import is_primitive
    return is_primitive(p, None)


def kappa_apply(G: TruncatedSeries, w: Word) -> NCPoly:
    """Substitution x0 -> x0, x1 -> G^{-1} x1 G, truncated.

    G must be grouplike up to its truncation weight; its concatenation
    inverse is the antipode.
    """
    if not is_grouplike(G):
        raise ValueError("kappa requires a grouplike series")
    N = G.truncation_weight
    ginv = antipode_conc(G.value)
    x1sub = conc_mul(conc_mul(ginv, NCPoly.from_word(x_word([1]))),
                     G.value).truncate(N)
    out = NCPoly.one(_X)
    for c in w.letters:
        factor = NCPoly.from_word(x_word([0])) if c == 0 else x1sub
        out = conc_mul(out, factor).truncate(N)
    return out
