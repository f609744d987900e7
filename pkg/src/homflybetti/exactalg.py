"""Exact rationals and multivariate Laurent polynomials in named variables.

All coefficients in the package are :class:`fractions.Fraction` values.
``LaurentPoly`` is immutable and keeps its terms in canonical form (no zero
coefficients), so equality and hashing are structural.

Text form: terms ``coeff*var^exp`` joined by ``+``/``-``, for example
``-1/2*a^3*b^-1 + y``.  Grammar::

    poly   := term (("+" | "-") term)* | "0"
    term   := ["-"] (coeff ["*" factor ("*" factor)*] | factor ("*" factor)*)
    factor := name ["^" ["-"] digits]
    coeff  := digits ["/" digits]
    name   := [A-Za-z_][A-Za-z0-9_]*

Terms are printed in descending lexicographic order of exponent tuples.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """Laurent polynomial over Q in an ordered list of named variables."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        n = len(self.variables)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match variables {self.variables}")
            c = as_rational(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, variables) -> "LaurentPoly":
        return cls(variables)

    @classmethod
    def constant(cls, variables, c=1) -> "LaurentPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def monomial(cls, variables, exponents: Mapping[str, int], c=1) -> "LaurentPoly":
        variables = tuple(variables)
        unknown = set(exponents) - set(variables)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        exp = tuple(exponents.get(v, 0) for v in variables)
        return cls(variables, {exp: c})

    @classmethod
    def var(cls, variables, name: str) -> "LaurentPoly":
        return cls.monomial(variables, {name: 1})

    # -- basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(self.variables, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def coefficient(self, exponents: Mapping[str, int] | tuple) -> Fraction:
        if not isinstance(exponents, tuple):
            exponents = tuple(exponents.get(v, 0) for v in self.variables)
        return self.terms.get(exponents, Fraction(0))

    def degree(self, name: str) -> int:
        """Largest exponent of ``name``; raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        i = self.variables.index(name)
        return max(e[i] for e in self.terms)

    def min_degree(self, name: str) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        i = self.variables.index(name)
        return min(e[i] for e in self.terms)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "LaurentPoly") -> None:
        if self.variables != other.variables:
            raise ValueError(
                f"variable lists differ: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.variables, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (e, c), = self.terms.items()
            return LaurentPoly(self.variables, {tuple(n * x for x in e): Fraction(1) / c ** (-n)})
        result = LaurentPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "LaurentPoly":
        c = as_rational(c)
        return LaurentPoly(self.variables, {e: c * v for e, v in self.terms.items()})

    def shift(self, exponents: Mapping[str, int]) -> "LaurentPoly":
        """Multiply by the monomial with the given exponents."""
        d = tuple(exponents.get(v, 0) for v in self.variables)
        return LaurentPoly(self.variables,
                           {tuple(a + b for a, b in zip(e, d)): c for e, c in self.terms.items()})

    # -- substitution -------------------------------------------------------
    def substitute(self, assignments: Mapping[str, object]) -> "LaurentPoly":
        """Replace variables by rationals or by Laurent polynomials.

        Rational values eliminate the variable.  LaurentPoly values must live
        over the variable list of the result (the remaining variables, in the
        original order, unless every value shares another list).
        """
        unknown = set(assignments) - set(self.variables)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        poly_values = [v for v in assignments.values() if isinstance(v, LaurentPoly)]
        if poly_values:
            out_vars = poly_values[0].variables
            if any(v.variables != out_vars for v in poly_values):
                raise ValueError("substituted polynomials use different variable lists")
        else:
            out_vars = tuple(v for v in self.variables if v not in assignments)
        keep = [(i, v) for i, v in enumerate(self.variables) if v not in assignments]
        for _, v in keep:
            if v not in out_vars:
                raise ValueError(f"variable {v} is not substituted and missing from {out_vars}")
        pos = {v: out_vars.index(v) for _, v in keep}
        subs = [(self.variables.index(k), val) for k, val in assignments.items()]
        result = LaurentPoly(out_vars)
        cache: dict = {}
        for e, c in self.terms.items():
            term = LaurentPoly.constant(out_vars, c)
            mono = [0] * len(out_vars)
            for i, v in keep:
                mono[pos[v]] += e[i]
            for i, val in subs:
                k = e[i]
                if k == 0:
                    continue
                if isinstance(val, LaurentPoly):
                    key = (i, k)
                    if key not in cache:
                        cache[key] = val ** k
                    term = term * cache[key]
                else:
                    val = as_rational(val)
                    if val == 0 and k < 0:
                        raise ZeroDivisionError(
                            f"substituting 0 for {self.variables[i]} with exponent {k}")
                    term = term.scale(val ** k)
            result = result + LaurentPoly(out_vars, {tuple(mono): 1}) * term
        return result

    def rename(self, variables: Iterable[str]) -> "LaurentPoly":
        """Re-embed into a (super)list of variables, keeping names."""
        variables = tuple(variables)
        idx = [variables.index(v) for v in self.variables]
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for i, x in zip(idx, e):
                new[i] = x
            out[tuple(new)] = c
        return LaurentPoly(variables, out)

    # -- text form ----------------------------------------------------------
    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for name, k in zip(self.variables, exp):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mag = abs(c)
            if not factors:
                body = format_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = format_rational(mag) + "*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({list(self.variables)!r}, '{self}')"

    @classmethod
    def parse(cls, text: str, variables: Iterable[str]) -> "LaurentPoly":
        variables = tuple(variables)
        tokens = _tokenize(text)
        pos = 0

        def peek():
            return tokens[pos] if pos < len(tokens) else None

        def take():
            nonlocal pos
            tok = peek()
            pos += 1
            return tok

        def parse_int() -> int:
            sign = 1
            if peek() == ("op", "-"):
                take()
                sign = -1
            tok = take()
            if tok is None or tok[0] != "num":
                raise ValueError(f"expected integer in {text!r}")
            return sign * int(tok[1])

        def parse_factor(exp):
            tok = take()
            if tok is None or tok[0] != "name":
                raise ValueError(f"expected variable name in {text!r}")
            if tok[1] not in variables:
                raise ValueError(f"unknown variable {tok[1]!r}; expected one of {variables}")
            k = 1
            if peek() == ("op", "^"):
                take()
                k = parse_int()
            exp[variables.index(tok[1])] += k

        def parse_term(sign):
            exp = [0] * len(variables)
            coeff = Fraction(1)
            tok = peek()
            if tok is not None and tok[0] == "num":
                take()
                num = int(tok[1])
                den = 1
                if peek() == ("op", "/"):
                    take()
                    t = take()
                    if t is None or t[0] != "num":
                        raise ValueError(f"bad rational in {text!r}")
                    den = int(t[1])
                coeff = Fraction(num, den)
                if peek() != ("op", "*"):
                    return tuple(exp), sign * coeff
                take()
            parse_factor(exp)
            while peek() == ("op", "*"):
                take()
                parse_factor(exp)
            return tuple(exp), sign * coeff

        terms: dict = {}
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        if peek() is None:
            raise ValueError("empty polynomial text")
        while True:
            exp, c = parse_term(sign)
            terms[exp] = terms.get(exp, 0) + c
            tok = peek()
            if tok is None:
                break
            if tok == ("op", "+"):
                sign = 1
            elif tok == ("op", "-"):
                sign = -1
            else:
                raise ValueError(f"unexpected token {tok[1]!r} in {text!r}")
            take()
        return cls(variables, terms)


def _tokenize(text: str) -> list:
    out = []
    for num, name, op in _TOKEN.findall(text):
        if num:
            out.append(("num", num))
        elif name:
            out.append(("name", name))
        elif op.strip():
            if op not in "+-*/^":
                raise ValueError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
    return out


def laurent_arith(op: str, f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    if f.variables != g.variables:
        raise ValueError(f"variable lists differ: {f.variables} vs {g.variables}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def laurent_substitute(f: LaurentPoly, assignments: Mapping[str, object]) -> LaurentPoly:
    return f.substitute(assignments)


def divide_by_binomial_power(f: LaurentPoly, name: str, power: int) -> tuple[LaurentPoly, int]:
    """Cancel as many factors ``(name - name^-1)`` from ``f`` as divide it exactly.

    Returns the quotient and the number of factors removed (at most ``power``).
    """
    removed = 0
    while removed < power and f:
        q = _exact_div_binomial(f, name)
        if q is None:
            break
        f = q
        removed += 1
    return f, removed


def _exact_div_binomial(f: LaurentPoly, name: str):
    # divide by (t - t^-1) = t^-1 (t^2 - 1), working on coefficients in t
    i = f.variables.index(name)
    rest: dict = {}
    for e, c in f.terms.items():
        key = e[:i] + e[i + 1:]
        rest.setdefault(key, {})[e[i]] = c
    out = {}
    for key, coeffs in rest.items():
        # solve (t^2 - 1) * g = t * coeffs
        shifted = {k + 1: c for k, c in coeffs.items()}
        lo, hi = min(shifted), max(shifted)
        g = {}
        rem = dict(shifted)
        for k in range(hi, lo + 1, -1):
            c = rem.get(k, 0)
            if c:
                g[k - 2] = c
                rem[k] = 0
                rem[k - 2] = rem.get(k - 2, 0) + c
        if any(rem.values()):
            return None
        for k, c in g.items():
            out[key[:i] + (k,) + key[i:]] = c
    return LaurentPoly(f.variables, out)


class LaurentFraction:
    """``numerator / (t - t^-1)^power`` for a named variable t, kept in lowest terms.

    HOMFLYPT values of split links are not Laurent polynomials, so the
    oracle returns this form.  Equality is decided by cross-multiplication.
    """

    __slots__ = ("numerator", "var", "power")

    def __init__(self, numerator: LaurentPoly, var: str, power: int = 0):
        if var not in numerator.variables:
            raise ValueError(f"{var} is not a variable of the numerator")
        numerator, removed = divide_by_binomial_power(numerator, var, power)
        self.numerator = numerator
        self.var = var
        self.power = 0 if numerator.is_zero() else power - removed

    def _factor(self, k: int) -> LaurentPoly:
        t = LaurentPoly.var(self.numerator.variables, self.var)
        return (t - t ** -1) ** k

    def __eq__(self, other):
        if not isinstance(other, LaurentFraction):
            return NotImplemented
        if self.var != other.var or self.numerator.variables != other.numerator.variables:
            return False
        return (self.numerator * other._factor(other.power)
                == other.numerator * self._factor(self.power))

    def __hash__(self):
        return hash((self.numerator, self.var, self.power))

    def is_laurent(self) -> bool:
        return self.power == 0

    def __str__(self):
        if self.power == 0:
            return str(self.numerator)
        den = f"({self.var} - {self.var}^-1)"
        if self.power != 1:
            den += f"^{self.power}"
        return f"({self.numerator})/{den}"

    def __repr__(self):
        return f"LaurentFraction('{self}')"
