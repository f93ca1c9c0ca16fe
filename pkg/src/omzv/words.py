"""Exact word algebra for the deformed double-shuffle structure.

Words in the letters a, b carry coefficients in Q[h, h^-1], Laurent
polynomials in a central parameter h.  On the span of admissible
monomials two commutative products coexist: a shuffle with an h-weighted
merge term, and a harmonic (stuffle) product on the distinguished
alphabet

    E    = h*b        (the combination e1 - g1)
    G(k) = b a^k      (the letter g_k, k >= 1).

An admissible monomial is a (possibly empty) sequence of these letters
not ending in E.  The map sigma (reverse the word, send a -> h*b and
b -> h^-1 * a) is an antiautomorphism exchanging the two products; the
defect of that exchange is `satoh_residual`, which must vanish
identically.  All arithmetic in this module is exact.
"""

import functools
import re
from fractions import Fraction

__all__ = [
    "HbarLaurent",
    "HPoly",
    "ALetter",
    "E",
    "G",
    "AMonomial",
    "APoly",
    "shuffle",
    "shuffle_words",
    "harmonic",
    "harmonic_monomials",
    "sigma",
    "sigma_monomial",
    "satoh_residual",
    "to_a_basis",
    "index_weight",
    "is_admissible_index",
    "index_to_e_word",
    "index_to_g_word",
    "dual_index",
    "parse_index",
    "word_to_str",
    "parse_word",
    "parse_hpoly",
    "parse_apoly",
    "monomials_up_to_weight",
]


# ---------------------------------------------------------------------------
# Laurent polynomials in h

class HbarLaurent:
    """Laurent polynomial in h with Fraction coefficients.

    Instances are treated as immutable; the internal dict never stores a
    zero coefficient.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, q in coeffs.items():
                q = Fraction(q)
                if q:
                    c[int(e)] = q
        self.c = c

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero():
        return HbarLaurent()

    @staticmethod
    def one():
        return HbarLaurent({0: 1})

    @staticmethod
    def h(exp=1, coeff=1):
        return HbarLaurent({exp: coeff})

    @staticmethod
    def of(x):
        if isinstance(x, HbarLaurent):
            return x
        return HbarLaurent({0: Fraction(x)})

    # -- structure ---------------------------------------------------

    def is_zero(self):
        return not self.c

    def min_exp(self):
        if not self.c:
            raise ValueError("zero Laurent polynomial has no degree")
        return min(self.c)

    def max_exp(self):
        if not self.c:
            raise ValueError("zero Laurent polynomial has no degree")
        return max(self.c)

    def is_polynomial(self):
        """True when no negative power of h occurs."""
        return all(e >= 0 for e in self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HbarLaurent.of(other)
        if not isinstance(other, HbarLaurent):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __bool__(self):
        return bool(self.c)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = HbarLaurent.of(other)
        c = dict(self.c)
        for e, q in other.c.items():
            s = c.get(e, Fraction(0)) + q
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        r = HbarLaurent()
        r.c = c
        return r

    __radd__ = __add__

    def __neg__(self):
        r = HbarLaurent()
        r.c = {e: -q for e, q in self.c.items()}
        return r

    def __sub__(self, other):
        return self + (-HbarLaurent.of(other))

    def __rsub__(self, other):
        return HbarLaurent.of(other) + (-self)

    def __mul__(self, other):
        other = HbarLaurent.of(other)
        c = {}
        for e1, q1 in self.c.items():
            for e2, q2 in other.c.items():
                e = e1 + e2
                s = c.get(e, Fraction(0)) + q1 * q2
                if s:
                    c[e] = s
                else:
                    c.pop(e, None)
        r = HbarLaurent()
        r.c = c
        return r

    __rmul__ = __mul__

    def shifted(self, k):
        """Multiply by h**k."""
        r = HbarLaurent()
        r.c = {e + k: q for e, q in self.c.items()}
        return r

    def eval(self, value):
        """Substitute a numeric value for h."""
        return sum((complex(q) * value ** e for e, q in self.c.items()),
                   complex(0))

    def eval_fraction(self, value):
        """Substitute an exact Fraction for h (value must be nonzero if
        negative powers occur)."""
        value = Fraction(value)
        total = Fraction(0)
        for e, q in self.c.items():
            total += q * value ** e
        return total

    # -- text form ----------------------------------------------------

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            q = self.c[e]
            if e == 0:
                t = str(q)
            else:
                base = "h" if e == 1 else "h^%d" % e
                if q == 1:
                    t = base
                elif q == -1:
                    t = "-" + base
                else:
                    t = "%s*%s" % (q, base)
            parts.append(t)
        out = parts[0]
        for t in parts[1:]:
            if t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out

    def __repr__(self):
        return "HbarLaurent(%s)" % self


_H = HbarLaurent.h()
_ONE = HbarLaurent.one()


# ---------------------------------------------------------------------------
# Polynomials in the free letters a, b
#
# A word is a plain string over "ab"; the empty word is "".

def word_to_str(w):
    return " ".join(w) if w else "1"


class HPoly:
    """Finite Q[h,h^-1]-linear combination of a/b words.

    The term dict maps word -> HbarLaurent and never stores zero
    coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for w, c in terms.items():
                c = HbarLaurent.of(c)
                if not c.is_zero():
                    t[w] = c
        self.t = t

    @staticmethod
    def zero():
        return HPoly()

    @staticmethod
    def one():
        return HPoly({"": 1})

    @staticmethod
    def word(w, coeff=1):
        return HPoly({w: coeff})

    def is_zero(self):
        return not self.t

    def __eq__(self, other):
        if not isinstance(other, HPoly):
            return NotImplemented
        return self.t == other.t

    def __add__(self, other):
        t = dict(self.t)
        for w, c in other.t.items():
            s = t.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(w, None)
            else:
                t[w] = s
        r = HPoly()
        r.t = t
        return r

    def __neg__(self):
        r = HPoly()
        r.t = {w: -c for w, c in self.t.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        c = HbarLaurent.of(c)
        if c.is_zero():
            return HPoly()
        r = HPoly()
        r.t = {w: q * c for w, q in self.t.items()}
        return r

    def __mul__(self, other):
        """Concatenation product."""
        t = {}
        for w1, c1 in self.t.items():
            for w2, c2 in other.t.items():
                w = w1 + w2
                c = c1 * c2
                s = t.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    t.pop(w, None)
                else:
                    t[w] = s
        r = HPoly()
        r.t = t
        return r

    def appended(self, letter):
        r = HPoly()
        r.t = {w + letter: c for w, c in self.t.items()}
        return r

    def items_sorted(self):
        return sorted(self.t.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self):
        return _comb_to_str(self.items_sorted(), word_to_str)

    def __repr__(self):
        return "HPoly<%s>" % self


def _comb_to_str(items, word_str):
    if not items:
        return "0"
    parts = []
    for w, c in items:
        ws = word_str(w)
        single = len(c.c) == 1
        if ws == "1":
            cs = str(c)
            parts.append(cs if single else "(%s)" % cs)
        elif c == _ONE:
            parts.append(ws)
        elif c == HbarLaurent.of(-1):
            parts.append("-" + ws)
        elif single:
            parts.append("%s*%s" % (c, ws))
        else:
            parts.append("(%s)*%s" % (c, ws))
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


# ---------------------------------------------------------------------------
# Shuffle product with h-correction
#
# Recursion on last letters:
#   w*1 = 1*w = w
#   (w b) sh w'      = (w sh w') b        (either factor ending in b)
#   (w a) sh (w' a)  = (w a sh w' + w sh w' a + h * (w sh w')) a

@functools.lru_cache(maxsize=None)
def shuffle_words(w1, w2):
    if not w1:
        return HPoly.word(w2)
    if not w2:
        return HPoly.word(w1)
    if w1[-1] == "b":
        return shuffle_words(w1[:-1], w2).appended("b")
    if w2[-1] == "b":
        return shuffle_words(w1, w2[:-1]).appended("b")
    s = shuffle_words(w1[:-1], w2) + shuffle_words(w1, w2[:-1])
    s = s + shuffle_words(w1[:-1], w2[:-1]).scaled(_H)
    return s.appended("a")


def shuffle(p1, p2):
    """Bilinear extension of the word shuffle to HPoly arguments."""
    out = HPoly.zero()
    for w1, c1 in p1.t.items():
        for w2, c2 in p2.t.items():
            out = out + shuffle_words(w1, w2).scaled(c1 * c2)
    return out


# ---------------------------------------------------------------------------
# The distinguished alphabet and admissible monomials

class ALetter:
    """Letter of the distinguished alphabet: E or G(k).

    Encoded by a single integer, 0 for E and k >= 1 for G(k).
    """

    __slots__ = ("k",)

    def __init__(self, k):
        k = int(k)
        if k < 0:
            raise ValueError("letter index must be >= 0")
        self.k = k

    @property
    def is_e(self):
        return self.k == 0

    @property
    def weight(self):
        return self.k if self.k else 1

    def __eq__(self, other):
        return isinstance(other, ALetter) and self.k == other.k

    def __hash__(self):
        return hash(("ALetter", self.k))

    def __lt__(self, other):
        return self.k < other.k

    def __str__(self):
        return "E" if self.k == 0 else "G%d" % self.k

    def __repr__(self):
        return "E" if self.k == 0 else "G(%d)" % self.k

    def to_hpoly(self):
        if self.k == 0:
            return HPoly.word("b", _H)
        return HPoly.word("b" + "a" * self.k)


E = ALetter(0)


def G(k):
    if k < 1:
        raise ValueError("G(k) needs k >= 1")
    return ALetter(k)


class AMonomial:
    """Word in the letters E, G(k); admissible when it does not end in E."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        letters = tuple(letters)
        for l in letters:
            if not isinstance(l, ALetter):
                raise TypeError("AMonomial takes ALetter entries")
        self.letters = letters

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __eq__(self, other):
        return isinstance(other, AMonomial) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __lt__(self, other):
        k1 = (len(self.letters), tuple(l.k for l in self.letters))
        k2 = (len(other.letters), tuple(l.k for l in other.letters))
        return k1 < k2

    @property
    def weight(self):
        return sum(l.weight for l in self.letters)

    def is_admissible(self):
        return not self.letters or not self.letters[-1].is_e

    def blocks(self):
        """Decompose an admissible monomial into (alpha_a, beta_a) pairs,
        one per G letter: E^alpha G(beta+1)."""
        if not self.is_admissible():
            raise ValueError("monomial ends in E, no block form")
        out = []
        alpha = 0
        for l in self.letters:
            if l.is_e:
                alpha += 1
            else:
                out.append((alpha, l.k - 1))
                alpha = 0
        return out

    @staticmethod
    def from_blocks(blocks):
        letters = []
        for alpha, beta in blocks:
            if alpha < 0 or beta < 0:
                raise ValueError("block exponents must be >= 0")
            letters.extend([E] * alpha)
            letters.append(G(beta + 1))
        return AMonomial(letters)

    def to_hpoly(self):
        p = HPoly.one()
        for l in self.letters:
            p = p * l.to_hpoly()
        return p

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(str(l) for l in self.letters)

    def __repr__(self):
        return "AMonomial<%s>" % self


class APoly:
    """Finite Q[h,h^-1]-linear combination of A-monomials."""

    __slots__ = ("t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(m, AMonomial):
                    m = AMonomial(m)
                c = HbarLaurent.of(c)
                if not c.is_zero():
                    t[m] = c
        self.t = t

    @staticmethod
    def zero():
        return APoly()

    @staticmethod
    def one():
        return APoly({AMonomial(): 1})

    @staticmethod
    def monomial(m, coeff=1):
        return APoly({m: coeff})

    @staticmethod
    def from_hpoly(p):
        out = APoly()
        for c, m in to_a_basis(p):
            out = out + APoly.monomial(m, c)
        return out

    def is_zero(self):
        return not self.t

    def __eq__(self, other):
        if not isinstance(other, APoly):
            return NotImplemented
        return self.t == other.t

    def __add__(self, other):
        t = dict(self.t)
        for m, c in other.t.items():
            s = t.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(m, None)
            else:
                t[m] = s
        r = APoly()
        r.t = t
        return r

    def __neg__(self):
        r = APoly()
        r.t = {m: -c for m, c in self.t.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        c = HbarLaurent.of(c)
        if c.is_zero():
            return APoly()
        r = APoly()
        r.t = {m: q * c for m, q in self.t.items()}
        return r

    def to_hpoly(self):
        out = HPoly.zero()
        for m, c in self.t.items():
            out = out + m.to_hpoly().scaled(c)
        return out

    def items_sorted(self):
        return sorted(
            self.t.items(),
            key=lambda kv: (len(kv[0].letters),
                            tuple(l.k for l in kv[0].letters)))

    def __str__(self):
        return _comb_to_str(self.items_sorted(), str)

    def __repr__(self):
        return "APoly<%s>" % self


# ---------------------------------------------------------------------------
# Harmonic (stuffle) product on A-monomials
#
#   (w u) * (w' v) = (w * w'v) u + (wu * w') v + (w * w') (u o v)
# with the letter contraction
#   E o E = h E,   E o G(k) = h G(k),   G(k) o G(l) = G(k+l).

def _contract(u, v):
    if u.is_e and v.is_e:
        return _H, E
    if u.is_e:
        return _H, v
    if v.is_e:
        return _H, u
    return _ONE, ALetter(u.k + v.k)


def _ap_append(p, letter, coeff=_ONE):
    r = APoly()
    r.t = {}
    for m, c in p.t.items():
        r.t[AMonomial(m.letters + (letter,))] = c * coeff
    return r


@functools.lru_cache(maxsize=None)
def _harmonic_tuples(l1, l2):
    if not l1:
        return APoly.monomial(AMonomial(l2))
    if not l2:
        return APoly.monomial(AMonomial(l1))
    u, v = l1[-1], l2[-1]
    out = _ap_append(_harmonic_tuples(l1[:-1], l2), u)
    out = out + _ap_append(_harmonic_tuples(l1, l2[:-1]), v)
    q, w = _contract(u, v)
    out = out + _ap_append(_harmonic_tuples(l1[:-1], l2[:-1]), w, q)
    return out


def harmonic_monomials(m1, m2):
    return _harmonic_tuples(m1.letters, m2.letters)


def harmonic(p1, p2):
    """Bilinear extension of the harmonic product to APoly arguments."""
    out = APoly.zero()
    for m1, c1 in p1.t.items():
        for m2, c2 in p2.t.items():
            out = out + harmonic_monomials(m1, m2).scaled(c1 * c2)
    return out


# ---------------------------------------------------------------------------
# sigma and the Satoh residual

def sigma(p):
    """Antiautomorphism: reverse each word, swap a <-> b, and multiply the
    coefficient by h**(#a - #b).  sigma is Q[h,h^-1]-linear and an
    involution."""
    out = HPoly.zero()
    for w, c in p.t.items():
        na = w.count("a")
        img = w[::-1].translate(_SWAP)
        out = out + HPoly.word(img, c.shifted(2 * na - len(w)))
    return out


_SWAP = str.maketrans("ab", "ba")


def sigma_monomial(m):
    """Image of an admissible monomial under sigma, in block form: the
    block exponents (alpha_a, beta_a) reverse and swap to
    (beta_r, alpha_r), ..., (beta_1, alpha_1)."""
    return AMonomial.from_blocks(
        [(beta, alpha) for alpha, beta in reversed(m.blocks())])


def satoh_residual(p1, p2):
    """p1 * p2 - sigma(sigma(p1) sh sigma(p2)) as an HPoly.

    Both arguments (HPoly or APoly) must lie in the span of admissible
    monomials with h-polynomial coefficients; the result is identically
    zero.
    """
    a1 = p1 if isinstance(p1, APoly) else APoly.from_hpoly(p1)
    a2 = p2 if isinstance(p2, APoly) else APoly.from_hpoly(p2)
    for ap in (a1, a2):
        for m, c in ap.t.items():
            if not m.is_admissible():
                raise ValueError("argument not in the admissible span")
            if not c.is_polynomial():
                raise ValueError("argument has h^-1 terms after rewriting")
    h1, h2 = a1.to_hpoly(), a2.to_hpoly()
    harm = harmonic(a1, a2).to_hpoly()
    sh = sigma(shuffle(sigma(h1), sigma(h2)))
    return harm - sh


# ---------------------------------------------------------------------------
# Rewriting a/b words in the distinguished alphabet

def to_a_basis(p):
    """Rewrite an HPoly whose words all start with b (or are empty) as a
    list of (coefficient, AMonomial) pairs, sorted canonically.

    Each maximal block b a^k becomes G(k); a bare b becomes h^-1 * E.
    """
    acc = {}
    for w, c in p.t.items():
        if w and w[0] != "b":
            raise ValueError("word %r does not start with b" % w)
        letters = []
        shift = 0
        i = 0
        n = len(w)
        while i < n:
            j = i + 1
            while j < n and w[j] == "a":
                j += 1
            k = j - i - 1
            if k == 0:
                letters.append(E)
                shift -= 1
            else:
                letters.append(ALetter(k))
            i = j
        m = AMonomial(letters)
        cc = c.shifted(shift)
        s = acc.get(m)
        s = cc if s is None else s + cc
        if s.is_zero():
            acc.pop(m, None)
        else:
            acc[m] = s
    out = [(c, m) for m, c in acc.items()]
    out.sort(key=lambda cm: (len(cm[1].letters),
                             tuple(l.k for l in cm[1].letters)))
    return out


# ---------------------------------------------------------------------------
# Indices

def index_weight(k):
    return sum(k)


def is_admissible_index(k):
    return len(k) > 0 and all(e >= 1 for e in k) and k[-1] >= 2


def _check_index(k):
    k = tuple(int(e) for e in k)
    if not k or any(e < 1 for e in k):
        raise ValueError("index entries must be integers >= 1")
    return k


def index_to_g_word(k):
    """The monomial G(k_1) ... G(k_r)."""
    k = _check_index(k)
    return AMonomial([ALetter(e) for e in k])


def index_to_e_word(k):
    """The product e_{k_1} ... e_{k_r} expanded in a/b words, where
    e_k = b a^k + h * b a^(k-1)."""
    k = _check_index(k)
    p = HPoly.one()
    for e in k:
        factor = HPoly({"b" + "a" * e: 1, "b" + "a" * (e - 1): _H})
        p = p * factor
    return p


def dual_index(k):
    """Dual of an admissible index.

    Writing k = ({1}^(b1-1), a1+1, ..., {1}^(br-1), ar+1), the dual is
    ({1}^(ar-1), br+1, ..., {1}^(a1-1), b1+1).  An involution that
    preserves weight.
    """
    k = _check_index(k)
    if k[-1] < 2:
        raise ValueError("index not admissible (last entry must be >= 2)")
    blocks = []
    i = 0
    while i < len(k):
        ones = 0
        while k[i] == 1:
            ones += 1
            i += 1
        blocks.append((k[i] - 1, ones + 1))   # (a_j, b_j)
        i += 1
    out = []
    for a, b in reversed(blocks):
        out.extend([1] * (a - 1))
        out.append(b + 1)
    return tuple(out)


def parse_index(text):
    """Parse "1,3,2" (commas or whitespace) into an index tuple.  Empty
    fields such as "2,," are rejected."""
    text = text.strip()
    parts = text.split(",") if "," in text else text.split()
    try:
        k = tuple(int(p.strip()) for p in parts)
    except ValueError:
        raise ValueError("bad index entry in %r" % text) from None
    if not k:
        raise ValueError("empty index")
    return _check_index(k)


# ---------------------------------------------------------------------------
# Parsing (whitespace-tolerant; inverse of the canonical printers)

_TOKEN = re.compile(r"""
    (?P<lpar>\() | (?P<rpar>\)) | (?P<plus>\+) | (?P<minus>-)
  | (?P<star>\*) | (?P<caret>\^)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z]\d*)
""", re.VERBOSE)


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError("bad character %r at %d" % (text[pos], pos))
        toks.append((m.lastgroup, m.group()))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, toks, letter_parser):
        self.toks = toks
        self.i = 0
        self.letter = letter_parser

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, kind):
        k, v = self.take()
        if k != kind:
            raise ValueError("expected %s, got %r" % (kind, v))
        return v

    # laurent := lterm (("+"|"-") lterm)*
    def laurent(self):
        out = self.lterm()
        while True:
            k, _ = self.peek()
            if k == "plus":
                self.take()
                out = out + self.lterm()
            elif k == "minus":
                self.take()
                out = out - self.lterm()
            else:
                return out

    # lterm := ["-"] (num ["*" hfac] | hfac)
    def lterm(self):
        sign = 1
        while self.peek()[0] == "minus":
            self.take()
            sign = -sign
        k, v = self.peek()
        if k == "num":
            self.take()
            q = Fraction(v)
            if self.peek()[0] == "star":
                save = self.i
                self.take()
                if self.peek() == ("name", "h"):
                    return HbarLaurent.of(sign * q) * self.hfac()
                self.i = save
            return HbarLaurent.of(sign * q)
        if (k, v) == ("name", "h"):
            return HbarLaurent.of(sign) * self.hfac()
        raise ValueError("expected coefficient, got %r" % (v,))

    def hfac(self):
        k, v = self.take()
        if (k, v) != ("name", "h"):
            raise ValueError("expected h, got %r" % v)
        if self.peek()[0] == "caret":
            self.take()
            sign = 1
            if self.peek()[0] == "minus":
                self.take()
                sign = -1
            e = int(self.expect("num"))
            return HbarLaurent.h(sign * e)
        return HbarLaurent.h(1)

    # poly := ["-"] term (("+"|"-") term)*
    def poly(self, zero, add, neg):
        first = self.term()
        out = add(zero, first)
        while True:
            k, _ = self.peek()
            if k == "plus":
                self.take()
                out = add(out, self.term())
            elif k == "minus":
                self.take()
                out = add(out, neg(self.term()))
            else:
                if self.i != len(self.toks):
                    raise ValueError("trailing input near %r" % (self.peek()[1],))
                return out

    # term := coeff ["*"] word | coeff | word
    def term(self):
        sign = 1
        while self.peek()[0] == "minus":
            self.take()
            sign = -sign
        coeff = HbarLaurent.of(sign)
        k, v = self.peek()
        if k == "lpar":
            self.take()
            coeff = coeff * self.laurent()
            self.expect("rpar")
            if self.peek()[0] == "star":
                self.take()
        elif k == "num" or (k, v) == ("name", "h"):
            coeff = coeff * self.lterm()
            if self.peek()[0] == "star":
                self.take()
        return self.word(coeff)

    # word := "1" | letter+
    def word(self, coeff):
        letters = []
        while True:
            k, v = self.peek()
            if k == "num" and v == "1" and not letters:
                self.take()
                break
            if k == "name" and v != "h":
                self.take()
                letters.append(self.letter(v))
            else:
                break
        return coeff, letters


def _ab_letter(tok):
    if tok in ("a", "b"):
        return tok
    raise ValueError("unknown letter %r" % tok)


def _a_letter(tok):
    if tok == "E":
        return E
    if tok.startswith("G") and tok[1:].isdigit():
        return G(int(tok[1:]))
    raise ValueError("unknown letter %r" % tok)


def parse_word(text):
    """Parse a plain a/b word like "b a a" (or "1" for the empty word)."""
    toks = _tokenize(text)
    p = _Parser(toks, _ab_letter)
    coeff, letters = p.word(HbarLaurent.one())
    if p.i != len(toks) or coeff != _ONE:
        raise ValueError("not a plain word: %r" % text)
    return "".join(letters)


def parse_hpoly(text):
    toks = _tokenize(text)
    p = _Parser(toks, _ab_letter)

    def add(acc, term):
        coeff, letters = term
        return acc + HPoly.word("".join(letters), coeff)

    def neg(term):
        coeff, letters = term
        return -coeff, letters

    return p.poly(HPoly.zero(), add, neg)


def parse_apoly(text):
    toks = _tokenize(text)
    p = _Parser(toks, _a_letter)

    def add(acc, term):
        coeff, letters = term
        return acc + APoly.monomial(AMonomial(letters), coeff)

    def neg(term):
        coeff, letters = term
        return -coeff, letters

    return p.poly(APoly.zero(), add, neg)


def parse_amonomial(text):
    """Parse a single monomial like "E G2 G1" (or "1")."""
    ap = parse_apoly(text)
    if len(ap.t) != 1:
        raise ValueError("not a single monomial: %r" % text)
    (m, c), = ap.t.items()
    if c != _ONE:
        raise ValueError("monomial carries a coefficient: %r" % text)
    return m


# ---------------------------------------------------------------------------
# Enumeration

def monomials_up_to_weight(w_max, admissible_only=True):
    """All A-monomials of weight <= w_max (admissible ones by default),
    sorted by weight then canonically.  Includes the empty monomial."""
    out = [AMonomial()]
    frontier = [AMonomial()]
    for _ in range(w_max):
        new = []
        for m in frontier:
            for k in range(0, w_max - m.weight + 1):
                l = E if k == 0 else ALetter(k)
                if m.weight + l.weight <= w_max:
                    new.append(AMonomial(m.letters + (l,)))
        frontier = new
        out.extend(new)
    if admissible_only:
        out = [m for m in out if m.is_admissible()]
    seen = set()
    uniq = []
    for m in out:
        if m not in seen:
            seen.add(m)
            uniq.append(m)
    uniq.sort(key=lambda m: (m.weight, len(m.letters),
                             tuple(l.k for l in m.letters)))
    return uniq
