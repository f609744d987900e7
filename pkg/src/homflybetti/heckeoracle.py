"""HOMFLYPT polynomials of closed braids through the Hecke algebra and the Ocneanu trace.

This is an oracle that shares no code with the homology pipeline.  The Hecke
algebra H_n has basis T_w (w in S_n) and relations (T_i - q)(T_i + 1) = 0.
The Ocneanu trace is the linear map with tr(T_e) = 1 and
tr(x T_{n-1} y) = z tr(x y) for x, y in H_{n-1}.

Output convention: ``homfly`` works in variables (a, s) with

    a P(L+) - a^-1 P(L-) = (s - s^-1) P(L0),   P(unknot) = 1,

obtained from the trace by q = s^2, z = a s (s - s^-1) / (a - a^-1) and the
factor kappa^(n-1) (a s)^(-writhe), kappa = (a - a^-1)/(s - s^-1) being the
value of the two-component unlink.  Split links are not Laurent polynomials,
so the value is a :class:`LaurentFraction` over powers of (s - s^-1).

Permutations are one-line tuples, w[x] = w(x), composed right to left.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .braid import BraidWord
from .exactalg import LaurentFraction, LaurentPoly

QZ = ("q", "z")
AS = ("a", "s")
AY = ("a", "y")

_ONE = LaurentPoly.constant(QZ, 1)
_Q = LaurentPoly.var(QZ, "q")
_Z = LaurentPoly.var(QZ, "z")


def length(w: tuple) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def _left_s(i: int, w: tuple) -> tuple:
    """s_i w: swap the values i-1 and i."""
    return tuple(i if x == i - 1 else i - 1 if x == i else x for x in w)


def _right_s(w: tuple, i: int) -> tuple:
    """w s_i: swap the entries at positions i-1 and i."""
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def reduced_word(w: tuple) -> tuple:
    """Lexicographically first reduced word, by peeling left descents."""
    word = []
    w = tuple(w)
    while length(w):
        for i in range(1, len(w)):
            if w.index(i - 1) > w.index(i):
                word.append(i)
                w = _left_s(i, w)
                break
    return tuple(word)


class HeckeElement:
    """Finite sum of T_w with coefficients in Z[q^+-1, z]."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if sorted(w) != list(range(n)):
                raise ValueError(f"{w} is not a permutation of {n} points")
            if not c.is_zero():
                clean[w] = c
        self.terms = clean

    @classmethod
    def identity(cls, n: int) -> "HeckeElement":
        return cls(n, {tuple(range(n)): _ONE})

    @classmethod
    def generator(cls, n: int, i: int) -> "HeckeElement":
        return cls(n, {_right_s(tuple(range(n)), i): _ONE})

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self.n == other.n and self.terms == other.terms

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, LaurentPoly(QZ)) + c
        return HeckeElement(self.n, out)

    def scale(self, c: LaurentPoly) -> "HeckeElement":
        return HeckeElement(self.n, {w: v * c for w, v in self.terms.items()})

    def times_generator(self, i: int) -> "HeckeElement":
        """Right multiplication by T_i."""
        out: dict = {}

        def add(w, c):
            out[w] = out.get(w, LaurentPoly(QZ)) + c

        for w, c in self.terms.items():
            ws = _right_s(w, i)
            if length(ws) > length(w):
                add(ws, c)
            else:
                add(w, c * (_Q - 1))
                add(ws, c * _Q)
        return HeckeElement(self.n, out)

    def generator_times(self, i: int) -> "HeckeElement":
        """Left multiplication by T_i."""
        out: dict = {}

        def add(w, c):
            out[w] = out.get(w, LaurentPoly(QZ)) + c

        for w, c in self.terms.items():
            sw = _left_s(i, w)
            if length(sw) > length(w):
                add(sw, c)
            else:
                add(w, c * (_Q - 1))
                add(sw, c * _Q)
        return HeckeElement(self.n, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (length(w), reduced_word(w))):
            word = reduced_word(w)
            name = "T_e" if not word else "T_" + ".".join(map(str, word))
            parts.append(f"({self.terms[w]})*{name}")
        return " + ".join(parts)

    __repr__ = __str__


def hecke_image(w: BraidWord) -> HeckeElement:
    """sigma_i -> T_i, sigma_i^-1 -> q^-1 T_i + (q^-1 - 1), multiplied left to right."""
    h = HeckeElement.identity(w.strands)
    qinv = _Q ** -1
    for i, sign in w.letters:
        if sign > 0:
            h = h.times_generator(i)
        else:
            h = h.times_generator(i).scale(qinv) + h.scale(qinv - 1)
    return h


def _strip(w: tuple) -> tuple:
    n = len(w)
    while n and w[n - 1] == n - 1:
        n -= 1
    return w[:n]


@lru_cache(maxsize=None)
def _trace_basis(w: tuple) -> LaurentPoly:
    w = _strip(w)
    n = len(w)
    if n == 0:
        return _ONE
    # w = u c with u fixing the last point and c = s_{n-1} ... s_k
    k = w.index(n - 1) + 1
    u = w
    for j in range(k, n):
        u = _right_s(u, j)
    h = HeckeElement(n - 1, {u[:n - 1]: _ONE})
    for j in range(n - 2, k - 1, -1):
        h = h.times_generator(j)
    return _Z * ocneanu_trace(h)


def ocneanu_trace(h: HeckeElement) -> LaurentPoly:
    total = LaurentPoly(QZ)
    for w, c in h.terms.items():
        total = total + c * _trace_basis(w)
    return total


def _homfly_numerator(w: BraidWord) -> LaurentPoly:
    """Numerator over (s - s^-1)^(strands - 1), before cancellation."""
    n, e = w.strands, w.writhe
    tr = ocneanu_trace(hecke_image(w))
    a = LaurentPoly.var(AS, "a")
    s = LaurentPoly.var(AS, "s")
    delta_a = a - a ** -1
    delta_s = s - s ** -1
    num = LaurentPoly(AS)
    for (qe, d), c in tr.terms.items():
        piece = (s ** (2 * qe)) * ((a * s) ** d) * (delta_a ** (n - 1 - d)) * (delta_s ** d)
        num = num + piece.scale(c)
    return num * (a * s) ** (-e)


def homfly(w: BraidWord) -> LaurentFraction:
    """HOMFLYPT polynomial of the closure of w in (a, s); unknot -> 1."""
    return LaurentFraction(_homfly_numerator(w), "s", w.strands - 1)


def skein_holds(w: BraidWord, position: int, i: int) -> bool:
    """a P(+) - a^-1 P(-) = (s - s^-1) P(0) for sigma_i^(+-1) inserted before letter ``position``."""
    before, after = w.letters[:position], w.letters[position:]
    plus = _homfly_numerator(BraidWord(w.strands, before + ((i, 1),) + after))
    minus = _homfly_numerator(BraidWord(w.strands, before + ((i, -1),) + after))
    zero = _homfly_numerator(BraidWord(w.strands, before + after))
    a = LaurentPoly.var(AS, "a")
    s = LaurentPoly.var(AS, "s")
    return a * plus - a ** -1 * minus == (s - s ** -1) * zero


def unlink_factor() -> LaurentFraction:
    """Value of the two-component unlink, (a - a^-1)/(s - s^-1)."""
    a = LaurentPoly.var(AS, "a")
    return LaurentFraction(a - a ** -1, "s", 1)


# ---------------------------------------------------------------------------
# fitting against the homology side


@dataclass(frozen=True)
class VariableChange:
    """a -> ea * a^alpha * y^beta,  s -> es * y^delta."""

    ea: int
    alpha: int
    beta: int
    es: int
    delta: int

    def __str__(self):
        def mono(sign, parts):
            body = "*".join(f"{v}^{k}" if k != 1 else v for v, k in parts if k) or "1"
            return ("-" if sign < 0 else "") + body
        return (f"a -> {mono(self.ea, [('a', self.alpha), ('y', self.beta)])}, "
                f"s -> {mono(self.es, [('y', self.delta)])}")

    def apply(self, P: LaurentFraction) -> LaurentFraction:
        """Image in (a, y) over powers of (y - y^-1)."""
        out = {}
        for (ka, ks), c in P.numerator.terms.items():
            sign = self.ea ** (ka % 2) * self.es ** (ks % 2)
            key = (self.alpha * ka, self.beta * ka + self.delta * ks)
            out[key] = out.get(key, 0) + sign * c
        num = LaurentPoly(AY, out)
        # (s - s^-1) -> es * delta * (y - y^-1)
        if (self.es * self.delta) ** P.power < 0:
            num = -num
        return LaurentFraction(num, "y", P.power)


def candidate_changes(max_beta: int = 3) -> list:
    return [VariableChange(ea, alpha, beta, es, delta)
            for ea, alpha, beta, es, delta in product((1, -1), (1, -1),
                                                      range(-max_beta, max_beta + 1),
                                                      (1, -1), (1, -1))]


def reduced_specialization(table) -> LaurentFraction:
    """P_r(-1, y, a, -1) of a reduced Betti table, over powers of (y - y^-1)."""
    from .linkbetti import poincare

    P = poincare(table)
    num = {}
    for (p, q, j, b), v in P.numerator.terms.items():
        key = (j, q)
        num[key] = num.get(key, 0) + (-1) ** (p + b) * v
    d = P.denominator_power
    # 1 - y^2 = -y (y - y^-1)
    N = LaurentPoly(AY, num) * LaurentPoly.monomial(AY, {"y": -d}, (-1) ** d)
    return LaurentFraction(N, "y", d)


def fit(samples: list) -> list:
    """Variable changes sending homfly(w) to the target on every (w, target) pair."""
    values = [(homfly(w), target) for w, target in samples]
    return [ch for ch in candidate_changes() if all(ch.apply(h) == t for h, t in values)]


def fit_then_predict(fit_samples: list, predict_samples: list) -> dict:
    """Fit on the first list, then test every surviving change on the second.

    Returns {"changes": [...], "predictions": [(word, ok, homfly image, target)]}.
    A prediction is ok when some fitted change matches it and all fitted
    changes agree on it.
    """
    changes = fit(fit_samples)
    preds = []
    for w, target in predict_samples:
        h = homfly(w)
        images = [ch.apply(h) for ch in changes]
        ok = bool(images) and all(im == target for im in images)
        preds.append((w, ok, images[0] if images else None, target))
    return {"changes": changes, "predictions": preds}
