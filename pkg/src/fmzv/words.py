"""Words, noncommutative polynomials and the (quasi-)shuffle machinery.

Three alphabets are supported:

* ``"X"`` -- two letters x0, x1 (codes 0 and 1), both of weight 1;
* ``"Y"`` -- letters y1, y2, ... (code k has weight k);
* ``"S"`` -- letters s2, s3, s5, s7, ... (code k has weight k).

A word is an immutable sequence of letter codes over one alphabet.  An
``NCPoly`` is a finitely supported Q-linear combination of words, a
``Tensor2`` one of ordered word pairs.  The products and coproducts
defined here (concatenation, shuffle, quasi-shuffle with a pluggable
diamond, deconcatenation, the coproducts dual to the products, Hoffman's
exponential/logarithm, Lyndon words and the projection onto
indecomposables) are the building blocks for everything else.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Optional

from .exact import Q, RowReducer

ALPHABETS = ("X", "Y", "S")

#: diamond used by the stuffle product on the Y alphabet
STUFFLE = "stuffle"


def _letter_ok(alphabet: str, c: int) -> bool:
    if alphabet == "X":
        return c in (0, 1)
    if alphabet == "Y":
        return c >= 1
    if alphabet == "S":
        return c == 2 or (c >= 3 and c % 2 == 1)
    raise ValueError(f"unknown alphabet {alphabet!r}")


def letter_weight(alphabet: str, c: int) -> int:
    return 1 if alphabet == "X" else c


@dataclass(frozen=True)
class Word:
    """Immutable word over one of the three alphabets."""

    alphabet: str
    letters: tuple

    def __post_init__(self):
        if self.alphabet not in ALPHABETS:
            raise ValueError(f"unknown alphabet {self.alphabet!r}")
        for c in self.letters:
            if not _letter_ok(self.alphabet, c):
                raise ValueError(f"bad letter {c} for alphabet {self.alphabet}")

    def __len__(self):
        return len(self.letters)

    @property
    def weight(self) -> int:
        if self.alphabet == "X":
            return len(self.letters)
        return sum(self.letters)

    @property
    def depth(self) -> int:
        """Number of x1 letters for X-words, length otherwise."""
        if self.alphabet == "X":
            return sum(1 for c in self.letters if c == 1)
        return len(self.letters)

    def __str__(self):
        return word_to_text(self)

    def sort_key(self):
        return (self.weight, len(self.letters), self.letters)


def word(alphabet: str, letters: Iterable[int]) -> Word:
    return Word(alphabet, tuple(letters))


def empty_word(alphabet: str) -> Word:
    return Word(alphabet, ())


X0 = word("X", [0])
X1 = word("X", [1])


def x_word(bits: Iterable[int]) -> Word:
    return word("X", bits)


def word_to_text(w: Word) -> str:
    if not w.letters:
        return "1"
    if w.alphabet == "X":
        return "".join(f"x{c}" for c in w.letters)
    prefix = "y" if w.alphabet == "Y" else "s"
    return " ".join(f"{prefix}{c}" for c in w.letters)


def parse_word(alphabet: str, text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return empty_word(alphabet)
    if alphabet == "X":
        if re.fullmatch(r"[01]+", text):
            return x_word(int(c) for c in text)
        if re.fullmatch(r"(?:x[01])+", text):
            return x_word(int(c) for c in text[1::2])
        raise ValueError(f"cannot parse X-word {text!r}")
    prefix = "y" if alphabet == "Y" else "s"
    letters = []
    for tok in text.split():
        if not re.fullmatch(rf"{prefix}\d+", tok):
            raise ValueError(f"cannot parse {alphabet}-word token {tok!r}")
        letters.append(int(tok[1:]))
    return word(alphabet, letters)


# ---------------------------------------------------------------------------
# Polynomials


class NCPoly:
    """Finitely supported linear combination of words over one alphabet."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: str, terms: Optional[dict] = None):
        self.alphabet = alphabet
        clean = {}
        for w, c in (terms or {}).items():
            if w.alphabet != alphabet:
                raise ValueError("word alphabet does not match polynomial")
            c = Q(c)
            if c:
                clean[w] = c
        self.terms = clean

    # construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, alphabet: str) -> "NCPoly":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: str) -> "NCPoly":
        return cls(alphabet, {empty_word(alphabet): Q(1)})

    @classmethod
    def from_word(cls, w: Word, coeff=1) -> "NCPoly":
        return cls(w.alphabet, {w: Q(coeff)})

    # vector space operations ----------------------------------------------
    def __add__(self, other: "NCPoly") -> "NCPoly":
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Q(0)) + c
        return NCPoly(self.alphabet, out)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __neg__(self):
        return NCPoly(self.alphabet, {w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "NCPoly":
        c = Q(c)
        return NCPoly(self.alphabet, {w: c * v for w, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return (isinstance(other, NCPoly) and self.alphabet == other.alphabet
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w: Word) -> Fraction:
        return self.terms.get(w, Q(0))

    # grading ---------------------------------------------------------------
    def weight_component(self, n: int) -> "NCPoly":
        return NCPoly(self.alphabet,
                      {w: c for w, c in self.terms.items() if w.weight == n})

    def weights(self) -> set:
        return {w.weight for w in self.terms}

    def max_weight(self) -> int:
        return max((w.weight for w in self.terms), default=0)

    def is_homogeneous(self, n: Optional[int] = None) -> bool:
        ws = self.weights()
        if n is None:
            return len(ws) <= 1
        return ws <= {n}

    def truncate(self, n: int) -> "NCPoly":
        return NCPoly(self.alphabet,
                      {w: c for w, c in self.terms.items() if w.weight <= n})

    # presentation ----------------------------------------------------------
    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda wc: wc[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            if len(w) == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = word_to_text(w)
            else:
                body = f"{abs(c)}*{word_to_text(w)}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__


class Tensor2:
    """Finitely supported combination of ordered word pairs.

    The two sides may live over different alphabets (the left factors of
    derivations are X- or S-polynomials while the right side stays in the
    ambient algebra).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        clean = {}
        for uv, c in (terms or {}).items():
            c = Q(c)
            if c:
                clean[uv] = c
        self.terms = clean

    @classmethod
    def zero(cls) -> "Tensor2":
        return cls()

    @classmethod
    def single(cls, u: Word, v: Word, coeff=1) -> "Tensor2":
        return cls({(u, v): Q(coeff)})

    def __add__(self, other: "Tensor2") -> "Tensor2":
        out = dict(self.terms)
        for uv, c in other.terms.items():
            out[uv] = out.get(uv, Q(0)) + c
        return Tensor2(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Tensor2({uv: -c for uv, c in self.terms.items()})

    def scale(self, c) -> "Tensor2":
        c = Q(c)
        return Tensor2({uv: c * v for uv, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, Tensor2) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, u: Word, v: Word) -> Fraction:
        return self.terms.get((u, v), Q(0))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(),
                      key=lambda t: (t[0][0].sort_key(), t[0][1].sort_key()))

    def map_left(self, f) -> "Tensor2":
        """Apply an NCPoly -> NCPoly map to every left factor."""
        out = Tensor2()
        for (u, v), c in self.terms.items():
            img = f(NCPoly.from_word(u))
            for w, cw in img.terms.items():
                out = out + Tensor2.single(w, v, c * cw)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (u, v), c in self.sorted_terms():
            body = f"{word_to_text(u)} (x) {word_to_text(v)}"
            if abs(c) != 1:
                body = f"{abs(c)}*{body}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__


def as_poly(x, alphabet: Optional[str] = None) -> NCPoly:
    if isinstance(x, NCPoly):
        return x
    if isinstance(x, Word):
        return NCPoly.from_word(x)
    raise TypeError(f"cannot promote {type(x).__name__} to NCPoly")


# ---------------------------------------------------------------------------
# Products

def concat(u: Word, v: Word) -> Word:
    if u.alphabet != v.alphabet:
        raise ValueError("alphabet mismatch")
    return Word(u.alphabet, u.letters + v.letters)


def conc_mul(p, q) -> NCPoly:
    """Bilinear concatenation product."""
    p, q = as_poly(p), as_poly(q)
    if p.alphabet != q.alphabet:
        raise ValueError("alphabet mismatch")
    out = {}
    for u, cu in p.terms.items():
        for v, cv in q.terms.items():
            w = concat(u, v)
            out[w] = out.get(w, Q(0)) + cu * cv
    return NCPoly(p.alphabet, out)


def _diamond_fn(alphabet: str, diamond):
    """Return (cache key, callable letter x letter -> letter or None)."""
    if diamond is None:
        return None, lambda a, b: None
    if diamond == STUFFLE:
        if alphabet != "Y":
            raise ValueError("the stuffle diamond lives on the Y alphabet")
        return STUFFLE, lambda a, b: a + b
    if callable(diamond):
        return None if not hasattr(diamond, "__name__") else diamond.__name__, diamond
    raise ValueError(f"unknown diamond {diamond!r}")


_QSH_CACHE: dict = {}


def _qsh_letters(alphabet: str, u: tuple, v: tuple, dkey, dfn) -> dict:
    """Quasi-shuffle of two letter tuples; dict of letter tuples -> int."""
    if dkey is not None:
        cached = _QSH_CACHE.get((alphabet, u, v, dkey))
        if cached is not None:
            return cached
    if not u:
        res = {v: 1}
    elif not v:
        res = {u: 1}
    else:
        res = {}
        a, ut = u[0], u[1:]
        b, vt = v[0], v[1:]
        for w, c in _qsh_letters(alphabet, ut, v, dkey, dfn).items():
            key = (a,) + w
            res[key] = res.get(key, 0) + c
        for w, c in _qsh_letters(alphabet, u, vt, dkey, dfn).items():
            key = (b,) + w
            res[key] = res.get(key, 0) + c
        ab = dfn(a, b)
        if ab is not None:
            for w, c in _qsh_letters(alphabet, ut, vt, dkey, dfn).items():
                key = (ab,) + w
                res[key] = res.get(key, 0) + c
    if dkey is not None:
        _QSH_CACHE[(alphabet, u, v, dkey)] = res
    return res


def quasi_shuffle(p, q, diamond) -> NCPoly:
    """Bilinear quasi-shuffle product for the given diamond."""
    p, q = as_poly(p), as_poly(q)
    if p.alphabet != q.alphabet:
        raise ValueError("alphabet mismatch")
    dkey, dfn = _diamond_fn(p.alphabet, diamond)
    out = {}
    for u, cu in p.terms.items():
        for v, cv in q.terms.items():
            for letters, m in _qsh_letters(p.alphabet, u.letters, v.letters,
                                           dkey, dfn).items():
                w = Word(p.alphabet, letters)
                out[w] = out.get(w, Q(0)) + cu * cv * m
    return NCPoly(p.alphabet, out)


def shuffle(p, q) -> NCPoly:
    """Shuffle product (quasi-shuffle with the zero diamond)."""
    return quasi_shuffle(p, q, None)


def stuffle(p, q) -> NCPoly:
    return quasi_shuffle(p, q, STUFFLE)


def shuffle_power(p, n: int) -> NCPoly:
    p = as_poly(p)
    out = NCPoly.one(p.alphabet)
    for _ in range(n):
        out = shuffle(out, p)
    return out


# ---------------------------------------------------------------------------
# Coproducts and the antipode

def deconcat(w: Word) -> Tensor2:
    """Deconcatenation coproduct, empty factors included."""
    out = {}
    for i in range(len(w.letters) + 1):
        u = Word(w.alphabet, w.letters[:i])
        v = Word(w.alphabet, w.letters[i:])
        out[(u, v)] = out.get((u, v), Q(0)) + 1
    return Tensor2(out)


def _local_coproduct(alphabet: str, a: int, diamond) -> list:
    """Splittings of a single letter under the dual coproduct."""
    out = [((a,), ()), ((), (a,))]
    if diamond == STUFFLE and alphabet == "Y":
        out += [((j,), (a - j,)) for j in range(1, a)]
    return out


def dual_coproduct(w: Word, diamond=None) -> Tensor2:
    """Coproduct dual to the quasi-shuffle product under the coefficient pairing.

    Computed letterwise: the dual coproduct is an algebra morphism for
    concatenation, with a letter a mapping to a(x)1 + 1(x)a plus one term
    b(x)c for every diamond splitting a = b<>c.  Agreement with the
    defining sum over pairs (u, v) weighted by (w | u*v) is covered by the
    test suite.
    """
    dkey, _ = _diamond_fn(w.alphabet, diamond)
    if diamond is not None and dkey != STUFFLE:
        raise ValueError("dual_coproduct supports the zero and stuffle diamonds")
    pairs = {((), ()): Q(1)}
    for a in w.letters:
        local = _local_coproduct(w.alphabet, a, dkey)
        new = {}
        for (lu, rv), c in pairs.items():
            for bu, cv in local:
                key = (lu + bu, rv + cv)
                new[key] = new.get(key, Q(0)) + c
        pairs = new
    return Tensor2({(Word(w.alphabet, u), Word(w.alphabet, v)): c
                    for (u, v), c in pairs.items()})


def dual_coproduct_poly(p: NCPoly, diamond=None) -> Tensor2:
    out = Tensor2()
    for w, c in p.terms.items():
        out = out + dual_coproduct(w, diamond).scale(c)
    return out


def antipode_conc(p) -> NCPoly:
    """Antipode of the concatenation Hopf algebra: w -> (-1)^len reverse(w)."""
    p = as_poly(p)
    out = {}
    for w, c in p.terms.items():
        rw = Word(w.alphabet, w.letters[::-1])
        val = c if len(w) % 2 == 0 else -c
        out[rw] = out.get(rw, Q(0)) + val
    return NCPoly(p.alphabet, out)


def is_primitive(p: NCPoly, diamond=None) -> bool:
    """Is p primitive for the coproduct dual to the (quasi-)shuffle product?"""
    expected = Tensor2()
    one = empty_word(p.alphabet)
    for w, c in p.terms.items():
        if len(w) == 0:
            return False
        expected = expected + Tensor2.single(w, one, c) + Tensor2.single(one, w, c)
    return dual_coproduct_poly(p, diamond) == expected


# ---------------------------------------------------------------------------
# Hoffman's isomorphism

def _compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def _merge_block(alphabet: str, letters: tuple, dkey, dfn):
    cur = letters[0]
    for c in letters[1:]:
        cur = dfn(cur, c)
        if cur is None:
            return None
    return cur


def _hoffman_map(p: NCPoly, diamond, coeff_of) -> NCPoly:
    dkey, dfn = _diamond_fn(p.alphabet, diamond)
    out = NCPoly.zero(p.alphabet)
    acc = {}
    for w, c in p.terms.items():
        n = len(w.letters)
        for comp in _compositions(n):
            merged = []
            pos = 0
            dead = False
            for part in comp:
                m = _merge_block(p.alphabet, w.letters[pos:pos + part], dkey, dfn)
                pos += part
                if m is None:
                    dead = True
                    break
                merged.append(m)
            if dead:
                continue
            target = Word(p.alphabet, tuple(merged))
            acc[target] = acc.get(target, Q(0)) + c * coeff_of(n, comp)
    return NCPoly(p.alphabet, acc)


def hoffman_exp(p, diamond) -> NCPoly:
    """Hoffman's isomorphism from the shuffle to the quasi-shuffle algebra."""
    return _hoffman_map(as_poly(p), diamond,
                        lambda n, comp: Q(1, _prod(factorial(i) for i in comp)))


def hoffman_log(p, diamond) -> NCPoly:
    """Inverse of hoffman_exp."""
    return _hoffman_map(as_poly(p), diamond,
                        lambda n, comp: Q((-1) ** (n - len(comp)),
                                          _prod(comp)))


def _prod(it) -> int:
    out = 1
    for x in it:
        out *= x
    return out


# ---------------------------------------------------------------------------
# Word enumeration and Lyndon machinery

@lru_cache(maxsize=None)
def words_of_weight(alphabet: str, n: int) -> tuple:
    """All words of total weight n, lexicographic in the letter codes."""
    if n < 0:
        raise ValueError("weight must be >= 0")
    if n == 0:
        return (empty_word(alphabet),)
    if alphabet == "X":
        first_letters = [0, 1]
    elif alphabet == "Y":
        first_letters = list(range(1, n + 1))
    else:
        first_letters = [c for c in [2] + list(range(3, n + 1, 2)) if c <= n]
    out = []
    for c in first_letters:
        rest = n - letter_weight(alphabet, c)
        for w in words_of_weight(alphabet, rest):
            out.append(Word(alphabet, (c,) + w.letters))
    return tuple(out)


def is_lyndon(w: Word) -> bool:
    """Is w strictly smaller than each of its proper suffixes?"""
    if len(w.letters) == 0:
        raise ValueError("the empty word is neither Lyndon nor not")
    ls = w.letters
    return all(ls < ls[i:] for i in range(1, len(ls)))


@lru_cache(maxsize=None)
def lyndon_words(alphabet: str, n: int) -> tuple:
    return tuple(w for w in words_of_weight(alphabet, n)
                 if len(w.letters) > 0 and is_lyndon(w))


def lyndon_bracket(w: Word) -> NCPoly:
    """Standard bracketing of a Lyndon word (basis element of the free Lie
    algebra).  Letters map to themselves; otherwise w = uv with v the
    longest proper Lyndon suffix and the bracket is [b(u), b(v)]."""
    if not is_lyndon(w):
        raise ValueError(f"{w} is not a Lyndon word")
    ls = w.letters
    if len(ls) == 1:
        return NCPoly.from_word(w)
    for i in range(1, len(ls)):
        suffix = Word(w.alphabet, ls[i:])
        if is_lyndon(suffix):
            u = Word(w.alphabet, ls[:i])
            bu, bv = lyndon_bracket(u), lyndon_bracket(suffix)
            return conc_mul(bu, bv) - conc_mul(bv, bu)
    raise AssertionError("unreachable: every Lyndon word has a Lyndon suffix")


@lru_cache(maxsize=None)
def lie_basis(alphabet: str, n: int) -> tuple:
    """Lyndon-bracket basis of the weight-n part of the free Lie algebra."""
    return tuple(lyndon_bracket(w) for w in lyndon_words(alphabet, n))


# ---------------------------------------------------------------------------
# Projection onto indecomposables

@lru_cache(maxsize=None)
def _indec_setup(alphabet: str, n: int):
    """Echelonized shuffle-product subspace in weight n.

    Columns are indexed with non-Lyndon words before Lyndon words, so the
    canonical residue of any polynomial is supported on Lyndon words.
    """
    all_words = words_of_weight(alphabet, n)
    lynd = set(lyndon_words(alphabet, n))
    cols = sorted(all_words, key=lambda w: (w in lynd, w.sort_key()))
    index = {w: i for i, w in enumerate(cols)}
    red = RowReducer()
    for a in range(1, n // 2 + 1):
        b = n - a
        for u in words_of_weight(alphabet, a):
            if len(u) == 0:
                continue
            for v in words_of_weight(alphabet, b):
                if len(v) == 0 or (a == b and v.letters < u.letters):
                    continue
                prod = _qsh_letters(alphabet, u.letters, v.letters,
                                    None, lambda x, y: None)
                red.add({index[Word(alphabet, ls)]: c for ls, c in prod.items()})
    return cols, index, red


def pi_indec(p: NCPoly, target_weight: int) -> NCPoly:
    """Weight component of p modulo shuffle products of nonempty elements.

    The canonical representative is the unique one supported on Lyndon
    words; shuffle products of nonempty polynomials map to zero.
    """
    comp = p.weight_component(target_weight)
    if comp.is_zero() or target_weight == 0:
        return NCPoly.zero(p.alphabet)
    cols, index, red = _indec_setup(p.alphabet, target_weight)
    residue = red.reduce({index[w]: c for w, c in comp.terms.items()})
    return NCPoly(p.alphabet, {cols[i]: c for i, c in residue.items()})


def pairing(p: NCPoly, w: Word) -> Fraction:
    """Coefficient extraction (p | w)."""
    p = as_poly(p)
    if p.alphabet != w.alphabet:
        raise ValueError("alphabet mismatch")
    return p.coeff(w)


# ---------------------------------------------------------------------------
# Serialization

def poly_to_json_obj(p: NCPoly) -> dict:
    return {
        "alphabet": p.alphabet,
        "terms": [{"word": word_to_text(w) if len(w) else "",
                   "coeff": str(c)} for w, c in p.sorted_terms()],
    }


def poly_from_json_obj(obj: dict) -> NCPoly:
    alphabet = obj["alphabet"]
    out = NCPoly.zero(alphabet)
    for t in obj["terms"]:
        w = parse_word(alphabet, t["word"])
        out = out + NCPoly.from_word(w, Q(t["coeff"]))
    return out


def tensor_to_json_obj(t: Tensor2, left_alphabet: str, right_alphabet: str) -> dict:
    return {
        "left_alphabet": left_alphabet,
        "right_alphabet": right_alphabet,
        "terms": [{"left": word_to_text(u) if len(u) else "",
                   "right": word_to_text(v) if len(v) else "",
                   "coeff": str(c)} for (u, v), c in t.sorted_terms()],
    }


# ---------------------------------------------------------------------------
# Polynomial parsing (round-trips with NCPoly.__str__)

def parse_poly(alphabet: str, text: str) -> NCPoly:
    """Parse 'c*word + c*word - ...' with optional coefficients.

    Coefficients are nonnegative 'p/q' literals, signs come from the
    separators, a bare coefficient is a constant term.  X-words must use
    the verbose 'x0x1' form here (the compact digit form would clash with
    coefficients).  Errors report the offending position.
    """
    n = len(text)

    def skip_ws(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    out = NCPoly.zero(alphabet)
    pos = skip_ws(0)
    if pos == n:
        raise ValueError("parse error at position 0: empty polynomial")
    first = True
    while pos < n:
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = skip_ws(pos + 1)
        elif not first:
            raise ValueError(f"parse error at position {pos}: expected '+' or '-'")
        end = pos
        while end < n and text[end] not in "+-":
            end += 1
        chunk = text[pos:end].strip()
        if not chunk:
            raise ValueError(f"parse error at position {pos}: expected a term")
        if "*" in chunk:
            cs, ws = chunk.split("*", 1)
            try:
                coeff = Q(cs.strip())
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"parse error at position {pos}: "
                                 f"bad coefficient {cs.strip()!r}") from None
            try:
                w = parse_word(alphabet, ws.strip())
            except ValueError as exc:
                raise ValueError(f"parse error at position {pos}: {exc}") from None
        elif re.fullmatch(r"\d+(?:/\d+)?", chunk):
            coeff = Q(chunk)
            w = empty_word(alphabet)
        else:
            try:
                w = parse_word(alphabet, chunk)
                coeff = Q(1)
            except ValueError as exc:
                raise ValueError(f"parse error at position {pos}: {exc}") from None
        out = out + NCPoly.from_word(w, sign * coeff)
        first = False
        pos = skip_ws(end)
    return out
