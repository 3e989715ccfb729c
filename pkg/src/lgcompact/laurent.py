"""Exact Laurent polynomials over the rationals.

A polynomial in ``n`` variables is a finite map from exponent tuples (signed
ints, one per variable) to nonzero ``Fraction`` coefficients.  Values are
immutable; every operation returns a new polynomial.

Terms are kept and printed in decreasing lexicographic order of exponents,
first variable most significant, e.g.::

    >>> str(parse_laurent("(x + 1/x)^2"))
    'x^2 + 2 + 1/x^2'
"""

from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from lgcompact.errors import (
    LaurentParseError,
    NonMonomialDivisorError,
    NotFullDimensionalError,
    UnknownVariableError,
    VariableCountMismatch,
    ZeroPolynomialError,
)

Exponent = tuple


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficient must be int, Fraction or str, got {type(c).__name__}")


def _default_names(n):
    return tuple(f"x{i + 1}" for i in range(n))


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial with exact rational coefficients.

    Equality and hashing depend on the number of variables and the terms only;
    variable names are presentation metadata.
    """

    __slots__ = ("num_vars", "var_names", "_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), num_vars: int | None = None,
                 var_names: Sequence[str] | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if num_vars is None:
                num_vars = len(exp)
            elif len(exp) != num_vars:
                raise VariableCountMismatch(
                    f"exponent {exp} has length {len(exp)}, expected {num_vars}")
            c = _as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        if num_vars is None:
            if var_names is None:
                raise ValueError("cannot infer num_vars from an empty term list")
            num_vars = len(var_names)
        if var_names is None:
            var_names = _default_names(num_vars)
        elif len(var_names) != num_vars:
            raise VariableCountMismatch(
                f"{len(var_names)} variable names for {num_vars} variables")
        self.num_vars = num_vars
        self.var_names = tuple(var_names)
        self._terms = dict(sorted(clean.items(), reverse=True))
        self._hash = None

    # constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c, num_vars: int, var_names=None) -> "LaurentPolynomial":
        return cls({(0,) * num_vars: c}, num_vars, var_names)

    @classmethod
    def monomial(cls, exp, c=1, var_names=None) -> "LaurentPolynomial":
        exp = tuple(exp)
        return cls({exp: c}, len(exp), var_names)

    @classmethod
    def zero(cls, num_vars: int, var_names=None) -> "LaurentPolynomial":
        return cls({}, num_vars, var_names)

    def _new(self, terms):
        return LaurentPolynomial(terms, self.num_vars, self.var_names)

    def with_names(self, var_names) -> "LaurentPolynomial":
        return LaurentPolynomial(self._terms, self.num_vars, var_names)

    # inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return MappingProxyType(self._terms)

    def support(self) -> list:
        return list(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, exp) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.num_vars)

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.num_vars == other.num_vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPolynomial.constant(other, self.num_vars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self._terms.items())))
        return self._hash

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other.num_vars != self.num_vars:
                raise VariableCountMismatch(
                    f"{self.num_vars} vs {other.num_vars} variables")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(other, self.num_vars, self.var_names)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._new({e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._new(_multiply_terms(self._terms, other._terms, self.num_vars))

    __rmul__ = __mul__

    def __pow__(self, u):
        if not isinstance(u, int):
            return NotImplemented
        if u < 0:
            if not self.is_monomial():
                raise NonMonomialDivisorError("negative power of a non-monomial")
            (e, c), = self._terms.items()
            return self._new({tuple(u * x for x in e): Fraction(1) / c ** -u})
        return power(self, u)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self._new({e: c / other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.is_monomial():
            raise NonMonomialDivisorError("divisor is not a single monomial")
        (de, dc), = other._terms.items()
        return self._new({tuple(a - b for a, b in zip(e, de)): c / dc
                          for e, c in self._terms.items()})

    # presentation -------------------------------------------------------

    def to_string(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self._terms.items():
            sign = "-" if c < 0 else "+"
            pieces.append((sign, _format_term(abs(c), exp, self.var_names)))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_string

    def __repr__(self):
        return f"LaurentPolynomial({self.to_string()!r}, vars={list(self.var_names)})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.var_names),
            "terms": [{"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                      for e, c in self._terms.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPolynomial":
        names = data["vars"]
        terms = {tuple(t["exp"]): Fraction(int(t["num"]), int(t["den"]))
                 for t in data["terms"]}
        return cls(terms, len(names), names)


def _power_str(name, k):
    return name if k == 1 else f"{name}^{k}"


def _format_term(c: Fraction, exp, names) -> str:
    num = [_power_str(n, e) for n, e in zip(names, exp) if e > 0]
    den = [_power_str(n, -e) for n, e in zip(names, exp) if e < 0]
    if num:
        head = "*".join(num)
        if c != 1:
            head = f"{c}*{head}"
    else:
        head = str(c)
    return head + "".join("/" + d for d in den)


# ---------------------------------------------------------------------------
# multiplication kernel


def _multiply_terms(ta: Mapping, tb: Mapping, n: int) -> dict:
    """Distributive product of two term maps.

    Exponents are packed into single ints with a mixed radix wide enough for
    the product's exponent box, so the inner loop is plain int addition.
    """
    if not ta or not tb:
        return {}
    if n == 0:
        return {(): ta[()] * tb[()]}
    lo_a = [min(e[i] for e in ta) for i in range(n)]
    lo_b = [min(e[i] for e in tb) for i in range(n)]
    hi_a = [max(e[i] for e in ta) for i in range(n)]
    hi_b = [max(e[i] for e in tb) for i in range(n)]
    spans = [hi_a[i] + hi_b[i] - lo_a[i] - lo_b[i] + 1 for i in range(n)]
    weights = [1] * n
    for i in range(n - 2, -1, -1):
        weights[i] = weights[i + 1] * spans[i + 1]

    def pack(e, lo):
        return sum((x - l) * w for x, l, w in zip(e, lo, weights))

    integral = all(c.denominator == 1 for c in ta.values()) and \
        all(c.denominator == 1 for c in tb.values())
    conv = int if integral else (lambda c: c)
    a = [(pack(e, lo_a), conv(c)) for e, c in ta.items()]
    b = [(pack(e, lo_b), conv(c)) for e, c in tb.items()]
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ka, ca in a:
        for kb, cb in b:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    lo = [lo_a[i] + lo_b[i] for i in range(n)]
    result = {}
    for k, c in out.items():
        if not c:
            continue
        exp = []
        for w, l in zip(weights, lo):
            d, k = divmod(k, w)
            exp.append(d + l)
        result[tuple(exp)] = Fraction(c)
    return result


def multiply(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    if f.num_vars != g.num_vars:
        raise VariableCountMismatch(f"{f.num_vars} vs {g.num_vars} variables")
    return f * g


def power(f: LaurentPolynomial, u: int) -> LaurentPolynomial:
    """``f**u`` as a left fold of :func:`multiply` (u >= 0)."""
    if u < 0:
        raise ValueError("power exponent must be nonnegative")
    result = LaurentPolynomial.constant(1, f.num_vars, f.var_names)
    for _ in range(u):
        result = result * f
    return result


def constant_term(f: LaurentPolynomial) -> Fraction:
    return f.constant_term()


def period_sequence(f: LaurentPolynomial, n_terms: int, engine: str = "naive") -> list:
    """The constant terms ``[f^u]`` for ``u = 0 .. n_terms-1``.

    ``[f^0] = 1`` always.  ``engine`` selects plain iterated multiplication
    ("naive") or the reachability-pruned kernel ("pruned"); both are exact and
    must agree.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    if engine == "pruned":
        return [constant_term_power_pruned(f, u) for u in range(n_terms)]
    if engine != "naive":
        raise ValueError(f"unknown engine {engine!r}")
    seq = []
    acc = LaurentPolynomial.constant(1, f.num_vars, f.var_names)
    for u in range(n_terms):
        seq.append(acc.constant_term())
        if u + 1 < n_terms:
            acc = acc * f
    return seq


def _reachability_functionals(f: LaurentPolynomial) -> list:
    """Integer functionals ``c`` with ``lo = min <c, v>`` over the support.

    Coordinate directions always; facet normals of N(f) when it is
    full-dimensional.
    """
    n = f.num_vars
    dirs = []
    for i in range(n):
        for s in (1, -1):
            v = [0] * n
            v[i] = s
            dirs.append(tuple(v))
    try:
        P = newton_polytope(f)
    except NotFullDimensionalError:
        P = None
    if P is not None:
        dirs.extend(fc.normal for fc in P.facets)
    support = f.support()
    return [(c, min(sum(a * b for a, b in zip(c, e)) for e in support)) for c in dirs]


def constant_term_power_pruned(f: LaurentPolynomial, u: int) -> Fraction:
    """``[f^u]`` computed by iterated multiplication with reachability pruning.

    After ``j`` factors a partial monomial ``m`` can only contribute to the
    constant term if ``-m`` lies in ``(u-j) N(f)``; anything else is dropped.
    The final factor is applied as a single lookup of ``f`` at ``-m``.
    """
    if u < 0:
        raise ValueError("power exponent must be nonnegative")
    if u == 0:
        return Fraction(1)
    n = f.num_vars
    if not f:
        return Fraction(0)
    if u == 1:
        return f.constant_term()
    funcs = _reachability_functionals(f)
    fterms = list(f.terms.items())

    def keep(m, r):
        for c, lo in funcs:
            if sum(a * b for a, b in zip(c, m)) > -r * lo:
                return False
        return True

    cur = {e: c for e, c in fterms if keep(e, u - 1)}
    for j in range(2, u):
        r = u - j
        nxt = {}
        for m, cm in cur.items():
            for e, ce in fterms:
                k = tuple(x + y for x, y in zip(m, e))
                nxt[k] = nxt.get(k, 0) + cm * ce
        cur = {k: c for k, c in nxt.items() if c and keep(k, r)}
    total = Fraction(0)
    for m, cm in cur.items():
        total += cm * f.coefficient(tuple(-x for x in m))
    return total


def newton_polytope(f: LaurentPolynomial):
    """Convex hull of the exponent vectors of ``f``."""
    from lgcompact.polytope import convex_hull

    if not f:
        raise ZeroPolynomialError("Newton polytope of the zero polynomial")
    return convex_hull([tuple(Fraction(x) for x in e) for e in f.support()])


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"(\d+)|([A-Za-z][A-Za-z0-9]*)|(\S)")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), pos))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), pos))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise LaurentParseError(f"unexpected character {ch!r}", pos)
            tokens.append(("op", ch, pos))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


def _natural_key(name):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name)]


class _Parser:
    def __init__(self, tokens, names):
        self.tokens = tokens
        self.i = 0
        self.names = names
        self.index = {v: k for k, v in enumerate(names)}
        self.n = len(names)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise LaurentParseError(f"expected {op!r}", pos)

    def const(self, c):
        return LaurentPolynomial.constant(c, self.n, self.names)

    def expr(self):
        kind, val, pos = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs_pos = self.peek()[2]
                rhs = self.factor()
                if val == "*":
                    acc = acc * rhs
                else:
                    if not rhs:
                        raise LaurentParseError("division by zero", rhs_pos)
                    if not rhs.is_monomial():
                        raise NonMonomialDivisorError("non-monomial divisor", rhs_pos)
                    acc = acc / rhs
            else:
                return acc

    def factor(self):
        start = self.peek()[2]
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            neg = False
            kind, val, pos = self.peek()
            if kind == "op" and val == "-":
                self.take()
                neg = True
            kind, val, pos = self.take()
            if kind != "int":
                raise LaurentParseError("exponent must be an integer", pos)
            if neg and val:
                if not base.is_monomial():
                    raise NonMonomialDivisorError("negative power of a non-monomial", start)
                return base ** (-val)
            return power(base, val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return self.const(val)
        if kind == "name":
            if val not in self.index:
                raise UnknownVariableError(f"unknown variable {val!r}", pos)
            e = [0] * self.n
            e[self.index[val]] = 1
            return LaurentPolynomial({tuple(e): 1}, self.n, self.names)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            raise LaurentParseError("unexpected end of input", pos)
        raise LaurentParseError(f"unexpected token {val!r}", pos)


def parse_laurent(text: str, var_names: Sequence[str] | None = None) -> LaurentPolynomial:
    """Parse an ASCII Laurent polynomial.

    Grammar: sums and differences of products and quotients of factors, with
    ``^`` taking an integer exponent; atoms are integers, identifiers and
    parenthesised expressions.  Multiplication must be explicit and every
    divisor must evaluate to a single monomial.  Without ``var_names`` the
    variables are the identifiers that occur, in natural sort order.
    """
    tokens = _tokenize(text)
    if var_names is None:
        found = {val for kind, val, _ in tokens if kind == "name"}
        var_names = sorted(found, key=_natural_key)
    else:
        var_names = list(var_names)
        if len(set(var_names)) != len(var_names):
            raise ValueError("duplicate variable names")
    p = _Parser(tokens, tuple(var_names))
    if p.peek()[0] == "end":
        raise LaurentParseError("empty expression", 0)
    result = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise LaurentParseError(f"unexpected token {val!r}", pos)
    return result
