"""The free odd-letter model with one extra polynomial generator of weight 2.

Elements are linear combinations of pairs (word in s3, s5, s7, ..., power
of s2).  Even letters are never stored: s_{2n} resolves eagerly to
b_n s2^n.  The deconcatenation coaction acts on the odd word and carries
the s2-power entirely to the right; its weight-graded components have a
one-dimensional kernel in each weight, spanned by the single letter (odd
weight) or the pure s2-power direction (even weight).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .exact import Q, RowReducer, b_coeff
from .words import NCPoly, Word, pi_indec, word

_S = "S"


class UFElement:
    """Finitely supported combination of (odd word, s2-power) pairs."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        clean = {}
        for (letters, k), c in (terms or {}).items():
            letters = tuple(letters)
            if any(l < 3 or l % 2 == 0 for l in letters):
                raise ValueError("word letters must be odd and >= 3")
            if k < 0:
                raise ValueError("negative s2-power")
            c = Q(c)
            if c:
                clean[(letters, k)] = c
        self.terms = clean

    @classmethod
    def from_pair(cls, letters, k: int, coeff=1) -> "UFElement":
        return cls({(tuple(letters), k): Q(coeff)})

    @classmethod
    def s_letter(cls, n: int) -> "UFElement":
        """The element s_n: a letter for odd n >= 3, b_{n/2} s2^{n/2} for even n."""
        if n >= 3 and n % 2 == 1:
            return cls.from_pair((n,), 0)
        if n >= 2 and n % 2 == 0:
            return cls.from_pair((), n // 2, b_coeff(n // 2))
        raise ValueError(f"no letter of weight {n}")

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Q(0)) + c
        return UFElement(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "UFElement":
        c = Q(c)
        return UFElement({key: c * v for key, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, UFElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, letters, k) -> Fraction:
        return self.terms.get((tuple(letters), k), Q(0))

    def weights(self) -> set:
        return {sum(ls) + 2 * k for (ls, k) in self.terms}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (ls, k), c in sorted(self.terms.items()):
            bits = [f"s{l}" for l in ls]
            if k == 1:
                bits.append("s2")
            elif k > 1:
                bits.append(f"s2^{k}")
            body = " ".join(bits) if bits else "1"
            if abs(c) != 1 or not bits:
                body = f"{abs(c)}*{body}" if bits else str(abs(c))
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__


@lru_cache(maxsize=None)
def odd_words(n: int) -> tuple:
    """Words over s3, s5, s7, ... of weight n, lexicographically."""
    if n == 0:
        return ((),)
    out = []
    for first in range(3, n + 1, 2):
        for rest in odd_words(n - first):
            out.append((first,) + rest)
    return tuple(out)


def uf_basis(N: int) -> list:
    """Basis pairs (odd word, s2-power) of weight N; s2-power ascending,
    words lexicographic."""
    if N < 0:
        raise ValueError("weight must be >= 0")
    out = []
    for k in range(N // 2 + 1):
        for ls in odd_words(N - 2 * k):
            out.append((ls, k))
    return out


def uf_dims(max_weight: int) -> list:
    return [len(uf_basis(N)) for N in range(max_weight + 1)]


def uf_mul(a: UFElement, b: UFElement) -> UFElement:
    """Product: shuffle on the odd words, addition of s2-powers."""
    from .words import shuffle
    out = UFElement()
    for (u, k1), c1 in a.terms.items():
        for (v, k2), c2 in b.terms.items():
            sh = shuffle(NCPoly.from_word(word(_S, u)),
                         NCPoly.from_word(word(_S, v)))
            for t, m in sh.terms.items():
                out = out + UFElement.from_pair(t.letters, k1 + k2, c1 * c2 * m)
    return out


def dec_coaction(e: UFElement) -> dict:
    """Deconcatenation coaction; keys (left odd letters, (right letters, k))."""
    out: dict = {}
    for (ls, k), c in e.terms.items():
        for i in range(len(ls) + 1):
            key = (ls[:i], (ls[i:], k))
            out[key] = out.get(key, Q(0)) + c
    return {key: c for key, c in out.items() if c}


def dec_prime(e: UFElement) -> dict:
    """Coaction minus the primitive tail 1 (x) e."""
    out = dec_coaction(e)
    for (ls, k), c in e.terms.items():
        key = ((), (ls, k))
        new = out.get(key, Q(0)) - c
        if new:
            out[key] = new
        else:
            out.pop(key, None)
    return out


def uf_derivation_D(e: UFElement, r: int) -> dict:
    """Weight-(2r+1) derivation: left factors of dec_prime reduced modulo
    shuffle products of odd words (Lyndon-supported canonical form).

    Keys are (left word letters, (right letters, k)).
    """
    w = 2 * r + 1
    out: dict = {}
    for (left, right), c in dec_prime(e).items():
        if sum(left) != w:
            continue
        reduced = pi_indec(NCPoly.from_word(word(_S, left)), w)
        for t, m in reduced.terms.items():
            key = (t.letters, right)
            out[key] = out.get(key, Q(0)) + c * m
    return {key: c for key, c in out.items() if c}


def uf_kernel(N: int) -> list:
    """Kernel of the stacked derivations of weight < N on the weight-N
    part; expected to be the line through s_N."""
    if N < 2:
        raise ValueError("weight must be >= 2")
    basis = uf_basis(N)
    constraints: dict = {}
    for i, (ls, k) in enumerate(basis):
        e = UFElement.from_pair(ls, k)
        r = 1
        while 2 * r + 1 < N:
            for key, c in uf_derivation_D(e, r).items():
                constraints.setdefault((r,) + key, {})[i] = c
            r += 1
    red = RowReducer()
    for key in sorted(constraints):
        red.add(constraints[key])
    out = []
    for lam in red.kernel_basis(len(basis)):
        elt = UFElement()
        for i, c in enumerate(lam):
            if c:
                elt = elt + UFElement.from_pair(*basis[i], coeff=c)
        out.append(elt)
    return out
