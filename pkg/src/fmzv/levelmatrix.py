"""Level filtration on words in the blocks 2 = x0x1 and 3 = x0x0x1.

Words over {2, 3} are plain tuples of ints.  This module provides the
block embedding into X-words, the level-graded bases in the order that
makes the weight-shifting bijection psi order-preserving, the coefficient
map phi on the space of possible left factors, the level-lowering
operator and its representing matrices, and the arithmetic facts about
the coefficients c_{a,b}^r that certify those matrices invertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb

from .exact import INFINITY, Q, QMatrix, nu_p
from .goncharov import partial_2r1
from .words import NCPoly, Word, x_word

Word23 = tuple


def format_word23(u: Word23) -> str:
    return "(" + ",".join(str(c) for c in u) + ")"


def weight23(u: Word23) -> int:
    return sum(u)


def level23(u: Word23) -> int:
    return sum(1 for c in u if c == 3)


def bzd(u: Word23) -> Word:
    """Embed a {2,3}-word into X-words: 2 -> x0x1, 3 -> x0x0x1."""
    letters = []
    for c in u:
        if c == 2:
            letters += [0, 1]
        elif c == 3:
            letters += [0, 0, 1]
        else:
            raise ValueError(f"letters must be 2 or 3, got {c}")
    return x_word(letters)


def word23_from_x(w: Word) -> Word23:
    """Inverse of bzd; raises if w is not a block word."""
    out = []
    i = 0
    ls = w.letters
    while i < len(ls):
        if ls[i:i + 2] == (0, 1):
            out.append(2)
            i += 2
        elif ls[i:i + 3] == (0, 0, 1):
            out.append(3)
            i += 3
        else:
            raise ValueError(f"{w} is not a word in the blocks x0x1, x0x0x1")
    return tuple(out)


def level(w: Word) -> int:
    """Number of 3-blocks of a block word."""
    return level23(word23_from_x(w))


@dataclass(frozen=True)
class LevelBasis:
    N: int
    ell: int
    elements: tuple


@lru_cache(maxsize=None)
def _words23(N: int, ell: int) -> tuple:
    """All {2,3}-words of weight N and level ell, descending lex (2 < 3)."""
    if (N - 3 * ell) % 2 != 0 or N < 3 * ell or ell < 0:
        return ()
    m = (N - 3 * ell) // 2
    base = (3,) * ell + (2,) * m
    return tuple(sorted(set(permutations(base)), reverse=True))


def enumerate_basis(N: int, ell: int) -> LevelBasis:
    """Domain basis: weight-N level-ell words, largest first in the
    lexicographic order with 2 < 3 (so 3... words lead)."""
    return LevelBasis(N, ell, _words23(N, ell))


def enumerate_codomain(N: int, ell: int) -> list:
    """Codomain basis: level-(ell-1) words of weight < N-1 and matching
    parity, by decreasing weight then descending lex; the order transported
    from the domain basis through psi."""
    out = []
    w = N - 3
    while w >= max(0, 3 * (ell - 1)):
        out.extend(_words23(w, ell - 1))
        w -= 2
    return out


def psi(v: Word23, N: int) -> Word23:
    """Prepend 2^(r-1) 3 with 2r = N - 1 - weight(v)."""
    two_r = N - 1 - weight23(v)
    if two_r < 2 or two_r % 2 != 0:
        raise ValueError(f"no valid r for weight {weight23(v)} inside weight {N}")
    r = two_r // 2
    return (2,) * (r - 1) + (3,) + tuple(v)


def c_coeff(a: int, b: int, r: int) -> Fraction:
    """Zagier's coefficient 2 (-1)^r (binom(2r, 2b+2) - (1 - 2^-2r) binom(2r, 2a+1))."""
    if a < 0 or b < 0 or r < 1:
        raise ValueError("need a, b >= 0 and r >= 1")
    return 2 * Q((-1) ** r) * (comb(2 * r, 2 * b + 2)
                               - (1 - Q(1, 4**r)) * comb(2 * r, 2 * a + 1))


def c_ab(a: int, b: int) -> Fraction:
    return c_coeff(a, b, a + b + 1)


def _phi_word(w: Word) -> Fraction:
    """phi on a single word of the left-factor space.

    (x0x1)^a x0x0x1 (x0x1)^b maps to c_{a,b}; (x0x1)^n x0 maps to 2 (-1)^n.
    """
    ls = w.letters
    n = len(ls)
    if n % 2 == 1 and ls[-1] == 0 and ls == (0, 1) * (n // 2) + (0,):
        return 2 * Q((-1) ** (n // 2))
    # locate the double zero of a gr_1 word
    for i in range(n - 2):
        if ls[i:i + 3] == (0, 0, 1):
            a, rest = ls[:i], ls[i + 3:]
            if a == (0, 1) * (len(a) // 2) and rest == (0, 1) * (len(rest) // 2):
                return c_ab(len(a) // 2, len(rest) // 2)
    raise ValueError(f"{w} is not a valid left factor")


def phi_of_factor(p: NCPoly) -> Fraction:
    """Linear extension of phi; words outside the two shapes are errors."""
    out = Q(0)
    for w, c in p.terms.items():
        out += c * _phi_word(w)
    return out


def partial_phi(u: Word23, N: int, ell: int) -> dict:
    """Level-lowering operator in the {2,3} bases.

    Applies every strict-subword component to the block word, keeps the
    terms whose right factor drops to level ell-1, and sends left factors
    through phi.  Returns a dict Word23 -> Fraction.
    """
    if weight23(u) != N or level23(u) != ell:
        raise ValueError("weight or level mismatch")
    if ell < 1:
        raise ValueError("the operator lowers the level, need ell >= 1")
    w = bzd(u)
    out: dict = {}
    r = 1
    while 2 * r + 1 <= N:
        for (lw, rw), c in partial_2r1(w, r).terms.items():
            rv = word23_from_x(rw)
            if level23(rv) != ell - 1:
                continue
            out[rv] = out.get(rv, Q(0)) + c * _phi_word(lw)
        r += 1
    return {v: c for v, c in out.items() if c}


def build_matrix(N: int, ell: int) -> QMatrix:
    """Representing matrix of the level-lowering operator.

    Rows follow enumerate_basis(N, ell), columns enumerate_codomain(N, ell).
    """
    basis = enumerate_basis(N, ell).elements
    codomain = enumerate_codomain(N, ell)
    if not basis:
        return QMatrix(0, 0, ())
    col_index = {v: j for j, v in enumerate(codomain)}
    rows = []
    for u in basis:
        img = partial_phi(u, N, ell)
        row = [Q(0)] * len(codomain)
        for v, c in img.items():
            row[col_index[v]] = c
        rows.append(row)
    return QMatrix.from_rows(rows)


def verify_c_lemma(max_ab: int) -> bool:
    """Arithmetic properties of c_{a,b}: dyadic denominator, symmetric
    difference in 2Z, and the column-minimal 2-adic valuations."""
    for a in range(max_ab + 1):
        for b in range(max_ab + 1):
            c = c_ab(a, b)
            den = c.denominator
            while den % 2 == 0:
                den //= 2
            if den != 1:
                return False
            diff = c - c_ab(b, a)
            if diff.denominator != 1 or diff.numerator % 2 != 0:
                return False
            v = nu_p(2, c)
            vedge = nu_p(2, c_ab(a + b, 0))
            if nu_p(2, c_ab(0, a + b)) != vedge:
                return False
            if not (vedge <= v <= 0):
                return False
    return True


def verify_binomial_identity(max_ab: int) -> bool:
    """The recursion expressing c_{a,b}^r through smaller c's plus the
    indicator correction term."""
    for a in range(max_ab + 1):
        for b in range(max_ab + 1):
            for r in range(1, a + b + 2):
                rhs = Q(0)
                for alpha in range(0, a + 1):
                    beta = r - 1 - alpha
                    if 0 <= beta <= b:
                        rhs += c_coeff(alpha, beta, r)
                for alpha in range(0, a):
                    beta = r - 1 - alpha
                    if 0 <= beta <= b:
                        rhs -= c_coeff(beta, alpha, r)
                rhs += 2 * Q((-1) ** r) * ((1 if a >= r else 0)
                                           - (1 if b >= r else 0))
                if c_coeff(a, b, r) != rhs:
                    return False
    return True
