"""Exact sparse bivariate polynomials over the rationals.

Two value types live here:

* ``SparsePoly``: f(x, y) with rational coefficients.
* ``ParamPoly``: f_t(x, y) whose coefficients are polynomials in a
  parameter t (class ``TPoly``).

Coefficients are stored as ``gmpy2.mpq``. Every operation returns a new
object; instances are never mutated after construction, so they are safe
to share between threads and processes.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping

from gmpy2 import mpq, mpz

__all__ = [
    "NEG_INF",
    "ParseError",
    "TPoly",
    "SparsePoly",
    "ParamPoly",
    "as_rational",
    "parse_poly",
    "parse_param_poly",
    "to_exchange",
    "from_exchange",
    "quasihomothety",
    "specialize",
    "restrict",
]

#: Degree of the zero polynomial.
NEG_INF = -math.inf

_MPQ_TYPE = type(mpq(0))
_MPZ_TYPE = type(mpz(0))


def as_rational(value) -> mpq:
    """Convert int, Fraction, mpq or a string such as ``"-3/4"`` to mpq.

    Floats are refused: every numeric input is meant to be exact.
    """
    if isinstance(value, _MPQ_TYPE):
        return value
    if isinstance(value, bool):
        return mpq(int(value))
    if isinstance(value, (int, _MPZ_TYPE)):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        try:
            fr = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
        return mpq(fr.numerator, fr.denominator)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _rat_str(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------- TPoly


class TPoly:
    """Univariate polynomial in t, dense, lowest power first."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(a) for a in coeffs]
        while c and not c[-1]:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def _raw(cls, c) -> "TPoly":
        c = list(c)
        while c and not c[-1]:
            c.pop()
        obj = object.__new__(cls)
        obj._c = tuple(c)
        return obj

    @classmethod
    def monomial(cls, coeff, k: int) -> "TPoly":
        if k < 0:
            raise ValueError("negative power of t")
        return cls._raw([mpq(0)] * k + [as_rational(coeff)])

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    @property
    def order(self):
        """Lowest power of t with a nonzero coefficient."""
        for k, a in enumerate(self._c):
            if a:
                return k
        return math.inf

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def constant(self) -> mpq:
        return self._c[0] if self._c else mpq(0)

    def __eq__(self, other):
        if isinstance(other, TPoly):
            return self._c == other._c
        try:
            q = as_rational(other)
        except TypeError:
            return NotImplemented
        return self._c == ((q,) if q else ())

    def __hash__(self):
        if len(self._c) <= 1:
            return hash(self.constant())
        return hash(("TPoly", self._c))

    def _coerce(self, other) -> "TPoly":
        if isinstance(other, TPoly):
            return other
        return TPoly._raw([as_rational(other)])

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] = out[k] + v
        return TPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return TPoly._raw([-a for a in self._c])

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TPoly):
            try:
                q = as_rational(other)
            except TypeError:
                return NotImplemented
            return TPoly._raw([a * q for a in self._c])
        a, b = self._c, other._c
        if not a or not b:
            return TPoly._raw(())
        out = [mpq(0)] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    out[i + j] += u * v
        return TPoly._raw(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TPoly":
        """Multiply by t**k; negative k must not produce negative powers."""
        if not self._c:
            return self
        if k >= 0:
            return TPoly._raw([mpq(0)] * k + list(self._c))
        if self.order < -k:
            raise ValueError("shift would create a negative power of t")
        return TPoly._raw(self._c[-k:])

    def __call__(self, t0) -> mpq:
        t0 = as_rational(t0)
        acc = mpq(0)
        for a in reversed(self._c):
            acc = acc * t0 + a
        return acc

    def terms(self):
        return [(k, a) for k, a in enumerate(self._c) if a]

    def __str__(self):
        return _tpoly_str(self)

    def __repr__(self):
        return f"TPoly({str(self)!r})"


def _tpoly_str(p: TPoly) -> str:
    parts = []
    for k, a in p.terms():
        parts.append(_term_str(a, (("t", k),)))
    return _join_terms(parts) if parts else "0"


# ---------------------------------------------------------------- printing


def _mono_factors(pairs) -> list[str]:
    out = []
    for name, e in pairs:
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return out


def _term_str(c: mpq, pairs) -> str:
    """Signed term string, e.g. ``-3/4*x^2*y``."""
    factors = _mono_factors(pairs)
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    if mag != 1 or not factors:
        factors.insert(0, _rat_str(mag))
    return sign + "*".join(factors)


def _join_terms(parts: list[str]) -> str:
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def _sort_key(ij):
    i, j = ij
    return (i + j, -i)


def _bivar_term_str(coef, i: int, j: int) -> str:
    pairs = (("x", i), ("y", j))
    if isinstance(coef, TPoly):
        tt = coef.terms()
        if len(tt) == 1:
            k, a = tt[0]
            return _term_str(a, (("t", k),) + pairs)
        factors = ["(" + _tpoly_str(coef) + ")"] + _mono_factors(pairs)
        return "+" + "*".join(factors)
    return _term_str(coef, pairs)


def _bivar_str(terms: Mapping) -> str:
    if not terms:
        return "0"
    keys = sorted(terms, key=_sort_key)
    a = min(i for i, _ in keys)
    b = min(j for _, j in keys)
    if (a or b) and len(keys) > 1:
        inner = _join_terms([_bivar_term_str(terms[(i, j)], i - a, j - b) for i, j in keys])
        return "*".join(_mono_factors((("x", a), ("y", b))) + ["(" + inner + ")"])
    return _join_terms([_bivar_term_str(terms[k], *k) for k in keys])


# ---------------------------------------------------------------- bivariate base


def _check_exp(ij):
    if not (isinstance(ij, tuple) and len(ij) == 2):
        raise ValueError(f"exponent must be a pair (i, j), got {ij!r}")
    i, j = ij
    if not (isinstance(i, (int, _MPZ_TYPE)) and isinstance(j, (int, _MPZ_TYPE))) or i < 0 or j < 0:
        raise ValueError(f"exponents must be non-negative integers, got {ij!r}")
    return (int(i), int(j))


class _Bivariate:
    __slots__ = ("_t", "_hash")

    _zero = None  # coefficient zero, set on subclasses

    @classmethod
    def _coef(cls, c):
        raise NotImplementedError

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for ij, c in (terms or {}).items():
            ij = _check_exp(ij)
            c = self._coef(c)
            clean[ij] = clean[ij] + c if ij in clean else c
        self._t = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _from_clean(cls, d: dict):
        obj = object.__new__(cls)
        obj._t = d
        obj._hash = None
        return obj

    # -- inspection
    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._t)

    @property
    def support(self) -> frozenset:
        return frozenset(self._t)

    def __len__(self):
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    @property
    def degree(self):
        if not self._t:
            return NEG_INF
        return max(i + j for i, j in self._t)

    def coeff(self, i: int, j: int):
        return self._t.get((i, j), self._zero)

    def monomial_content(self) -> tuple[int, int]:
        """Largest (a, b) such that x^a y^b divides the polynomial."""
        if not self._t:
            return (0, 0)
        return (min(i for i, _ in self._t), min(j for _, j in self._t))

    def divide_monomial(self, a: int, b: int):
        out = {}
        for (i, j), c in self._t.items():
            if i < a or j < b:
                raise ValueError(f"x^{a}*y^{b} does not divide the polynomial")
            out[(i - a, j - b)] = c
        return type(self)._from_clean(out)

    def strip_monomial(self):
        """Return (cofactor, (a, b)) with self = x^a y^b * cofactor."""
        a, b = self.monomial_content()
        return self.divide_monomial(a, b), (a, b)

    def restrict(self, points: Iterable) -> "_Bivariate":
        pts = {tuple(p) for p in points}
        return type(self)._from_clean({k: v for k, v in self._t.items() if k in pts})

    # -- arithmetic
    def _promote(self, other):
        if isinstance(other, _Bivariate):
            if isinstance(self, ParamPoly) or isinstance(other, ParamPoly):
                return ParamPoly.lift(self), ParamPoly.lift(other)
            return self, other
        try:
            c = self._coef(other)
        except TypeError:
            return None
        return self, type(self)._from_clean({(0, 0): c} if c else {})

    def __add__(self, other):
        pr = self._promote(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        out = dict(a._t)
        for k, v in b._t.items():
            if k in out:
                s = out[k] + v
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = v
        return type(a)._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._from_clean({k: -v for k, v in self._t.items()})

    def __sub__(self, other):
        pr = self._promote(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, _Bivariate):
            try:
                c = self._coef(other)
            except TypeError:
                return NotImplemented
            if not c:
                return type(self)._from_clean({})
            return type(self)._from_clean({k: v * c for k, v in self._t.items()})
        a, b = self._promote(other)
        out: dict = {}
        zero = a._zero
        for (i1, j1), u in a._t.items():
            for (i2, j2), v in b._t.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, zero) + u * v
        return type(a)._from_clean({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = type(self)._from_clean({(0, 0): self._coef(1)})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def diff(self, var) -> "_Bivariate":
        """Partial derivative in ``'x'`` or ``'y'``."""
        if var in ("x", 0):
            return type(self)._from_clean({(i - 1, j): c * i for (i, j), c in self._t.items() if i})
        if var in ("y", 1):
            return type(self)._from_clean({(i, j - 1): c * j for (i, j), c in self._t.items() if j})
        raise ValueError(f"unknown variable {var!r}")

    def mul_monomial(self, a: int, b: int):
        return type(self)._from_clean({(i + a, j + b): c for (i, j), c in self._t.items()})

    def __eq__(self, other):
        if isinstance(other, _Bivariate):
            if type(self) is type(other):
                return self._t == other._t
            a, b = self._promote(other)
            return a._t == b._t
        try:
            c = self._coef(other)
        except TypeError:
            return NotImplemented
        return self._t == ({(0, 0): c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __str__(self):
        return _bivar_str(self._t)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def sorted_terms(self):
        return [(k, self._t[k]) for k in sorted(self._t, key=_sort_key)]


class SparsePoly(_Bivariate):
    """f(x, y) = sum a_ij x^i y^j with exact rational coefficients."""

    __slots__ = ()
    _zero = mpq(0)

    @classmethod
    def _coef(cls, c):
        return as_rational(c)

    @classmethod
    def from_terms(cls, terms: Mapping) -> "SparsePoly":
        return cls(terms)

    @classmethod
    def x(cls):
        return cls._from_clean({(1, 0): mpq(1)})

    @classmethod
    def y(cls):
        return cls._from_clean({(0, 1): mpq(1)})

    def __call__(self, x, y) -> mpq:
        return self.eval(x, y)

    def eval(self, x, y) -> mpq:
        """Exact value at a rational point."""
        x, y = as_rational(x), as_rational(y)
        rows: dict[int, list] = {}
        for (i, j), c in self._t.items():
            rows.setdefault(i, []).append((j, c))
        acc = mpq(0)
        ypow: dict[int, mpq] = {}
        for i, row in rows.items():
            g = mpq(0)
            for j, c in row:
                if j not in ypow:
                    ypow[j] = y ** j
                g += c * ypow[j]
            acc += g * (x ** i)
        return acc

    def eval_interval(self, box) -> tuple[mpq, mpq]:
        """Exact-rational interval enclosure of f over a box.

        ``box`` is ``((xlo, xhi), (ylo, yhi))`` or an object with
        ``x_lo, x_hi, y_lo, y_hi`` attributes. The enclosure is the natural
        extension of a Horner scheme, hence inclusion-isotone.
        """
        (xlo, xhi), (ylo, yhi) = _box_pairs(box)
        if not self._t:
            return (mpq(0), mpq(0))
        X = (as_rational(xlo), as_rational(xhi))
        Y = (as_rational(ylo), as_rational(yhi))
        rows: dict[int, dict[int, mpq]] = {}
        for (i, j), c in self._t.items():
            rows.setdefault(i, {})[j] = c
        acc = (mpq(0), mpq(0))
        for i in range(max(rows), -1, -1):
            row = rows.get(i, {})
            g = (mpq(0), mpq(0))
            if row:
                for j in range(max(row), -1, -1):
                    g = _imul(g, Y)
                    c = row.get(j)
                    if c is not None:
                        g = (g[0] + c, g[1] + c)
            acc = _iadd(_imul(acc, X), g)
        return acc

    def to_sympy(self, gens=None):
        import sympy

        x, y = gens or sympy.symbols("x y")
        return sympy.Add(*[sympy.Rational(int(c.numerator), int(c.denominator)) * x**i * y**j
                           for (i, j), c in self._t.items()])

    @classmethod
    def from_sympy(cls, expr, gens=None) -> "SparsePoly":
        import sympy

        x, y = gens or sympy.symbols("x y")
        p = sympy.Poly(sympy.expand(expr), x, y)
        out = {}
        for (i, j), c in p.terms():
            c = sympy.Rational(c)
            out[(int(i), int(j))] = mpq(int(c.p), int(c.q))
        return cls(out)


def _box_pairs(box):
    if hasattr(box, "x_lo"):
        return (box.x_lo, box.x_hi), (box.y_lo, box.y_hi)
    (a, b), (c, d) = box
    return (a, b), (c, d)


def _iadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _imul(a, b):
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(p), max(p))


class ParamPoly(_Bivariate):
    """f_t(x, y) = sum a_ij(t) x^i y^j, coefficients are TPoly."""

    __slots__ = ()
    _zero = TPoly._raw(())

    @classmethod
    def _coef(cls, c):
        if isinstance(c, TPoly):
            return c
        return TPoly._raw([as_rational(c)])

    @classmethod
    def lift(cls, p: _Bivariate) -> "ParamPoly":
        if isinstance(p, ParamPoly):
            return p
        return cls._from_clean({k: TPoly._raw([v]) for k, v in p._t.items()})

    def specialize(self, t0) -> SparsePoly:
        t0 = as_rational(t0)
        out = {}
        for k, c in self._t.items():
            v = c(t0)
            if v:
                out[k] = v
        return SparsePoly._from_clean(out)

    def t_order(self):
        """Lowest power of t over all coefficients."""
        return min((c.order for c in self._t.values()), default=math.inf)

    def shift_t(self, k: int) -> "ParamPoly":
        return ParamPoly._from_clean({m: c.shift(k) for m, c in self._t.items()})

    def is_constant_in_t(self) -> bool:
        return all(c.is_constant() for c in self._t.values())


# ---------------------------------------------------------------- parsing


class ParseError(ValueError):
    """Raised for malformed polynomial text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            lit = m.group(1)
            if not lit.isdigit():
                raise ParseError(f"non-rational literal {lit!r}; write it as a fraction", m.start(1))
            toks.append(("num", int(lit), m.start(1)))
        elif m.group(2) is not None:
            name = m.group(2)
            if name not in ("x", "y", "t"):
                raise ParseError(f"unknown symbol {name!r}", m.start(2))
            toks.append(("var", name, m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    """Recursive descent over dicts {(i, j, k): mpq} (k is the power of t)."""

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", self.peek()[2])
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return val

    def expr(self):
        val = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                val = _tadd(val, rhs if tok[1] == "+" else _tneg(rhs))
            else:
                return val

    def term(self):
        val = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs = self.unary()
                if tok[1] == "*":
                    val = _tmul(val, rhs)
                else:
                    if any(k != (0, 0, 0) for k in rhs) or not rhs:
                        raise ParseError("division only by a nonzero constant", tok[2])
                    val = {k: v / rhs[(0, 0, 0)] for k, v in val.items()}
            else:
                return val

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            val = self.unary()
            return val if tok[1] == "+" else _tneg(val)
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            if e[0] == "op" and e[1] == "-":
                raise ParseError("negative exponent", e[2])
            if e[0] == "op" and e[1] == "+":
                e = self.take()
            if e[0] != "num":
                raise ParseError("exponent must be a non-negative integer literal", e[2])
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "^":
                raise ParseError("chained exponent; use parentheses", nxt[2])
            return _tpow(base, e[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return {(0, 0, 0): mpq(val)} if val else {}
        if kind == "var":
            key = {"x": (1, 0, 0), "y": (0, 1, 0), "t": (0, 0, 1)}[val]
            return {key: mpq(1)}
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if not (close[0] == "op" and close[1] == ")"):
                raise ParseError("expected ')'", close[2])
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def _tadd(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _tneg(a):
    return {k: -v for k, v in a.items()}


def _tmul(a, b):
    out: dict = {}
    for (i1, j1, k1), u in a.items():
        for (i2, j2, k2), v in b.items():
            key = (i1 + i2, j1 + j2, k1 + k2)
            out[key] = out.get(key, 0) + u * v
    return {k: v for k, v in out.items() if v}


def _tpow(a, n):
    res = {(0, 0, 0): mpq(1)}
    for _ in range(n):
        res = _tmul(res, a)
    return res


def _tri_to_param(d) -> ParamPoly:
    coeffs: dict = {}
    for (i, j, k), v in d.items():
        coeffs.setdefault((i, j), {})[k] = v
    out = {}
    for ij, by_k in coeffs.items():
        dense = [mpq(0)] * (max(by_k) + 1)
        for k, v in by_k.items():
            dense[k] = v
        tp = TPoly._raw(dense)
        if tp:
            out[ij] = tp
    return ParamPoly._from_clean(out)


def parse_poly(text: str) -> SparsePoly:
    """Parse an expression in x, y with rational literals into a SparsePoly."""
    d = _Parser(text).parse()
    for (i, j, k) in d:
        if k:
            pos = text.find("t")
            raise ParseError("parameter t is not allowed here", max(pos, 0))
    return SparsePoly._from_clean({(i, j): v for (i, j, _), v in d.items()})


def parse_param_poly(text: str) -> ParamPoly:
    """Parse an expression in x, y and the parameter t into a ParamPoly."""
    return _tri_to_param(_Parser(text).parse())


# ---------------------------------------------------------------- exchange format


def to_exchange(poly: _Bivariate) -> str:
    """Plain-text exchange format, one ``num/den i j [k]`` line per term."""
    lines = []
    if isinstance(poly, ParamPoly):
        for (i, j), c in poly.sorted_terms():
            for k, a in c.terms():
                lines.append(f"{a.numerator}/{a.denominator} {i} {j} {k}")
    else:
        for (i, j), c in poly.sorted_terms():
            lines.append(f"{c.numerator}/{c.denominator} {i} {j}")
    return "\n".join(lines) + ("\n" if lines else "")


def from_exchange(text: str, param: bool | None = None):
    """Read the exchange format.

    Returns a ParamPoly when any line carries a t exponent (or when
    ``param`` is true), otherwise a SparsePoly.
    """
    tri: dict = {}
    saw_t = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) not in (3, 4):
            raise ValueError(f"line {lineno}: expected 'num/den i j [k]'")
        try:
            a = as_rational(fields[0])
            ints = [int(f) for f in fields[1:]]
        except (ValueError, TypeError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        if any(v < 0 for v in ints):
            raise ValueError(f"line {lineno}: negative exponent")
        if len(ints) == 3:
            saw_t = True
        else:
            ints.append(0)
        key = tuple(ints)
        tri[key] = tri.get(key, mpq(0)) + a
    tri = {k: v for k, v in tri.items() if v}
    if param or saw_t:
        return _tri_to_param(tri)
    return SparsePoly._from_clean({(i, j): v for (i, j, _), v in tri.items()})


# ---------------------------------------------------------------- transformations


def restrict(f: _Bivariate, points: Iterable) -> _Bivariate:
    """Keep only the terms whose exponent lies in ``points``."""
    return f.restrict(points)


def specialize(f_t: ParamPoly, t0) -> SparsePoly:
    """Substitute t = t0 exactly."""
    return ParamPoly.lift(f_t).specialize(t0)


def quasihomothety(f: _Bivariate, alpha: int, beta: int, r: int) -> ParamPoly:
    """Return t^r f(t^alpha x, t^beta y) as a ParamPoly.

    A term c(t) x^i y^j becomes c(t) t^(r + i alpha + j beta) x^i y^j.
    Raises ValueError when a negative power of t would appear.
    """
    for v in (alpha, beta, r):
        if not isinstance(v, (int, _MPZ_TYPE)):
            raise TypeError("alpha, beta and r must be integers")
    fp = ParamPoly.lift(f)
    out = {}
    for (i, j), c in fp._t.items():
        s = int(r) + i * int(alpha) + j * int(beta)
        try:
            out[(i, j)] = c.shift(s)
        except ValueError as exc:
            raise ValueError(f"term x^{i}*y^{j} would get a negative power of t") from exc
    return ParamPoly._from_clean(out)
