"""Exact polynomial rings with a positive grading and a monomial order."""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from functools import cached_property

DEFAULT_PRIME = 32003
ORDERS = ("degrevlex", "deglex", "lex")


class RingError(ValueError):
    pass


class ParseError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Q (``p == 0``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not _is_prime(p):
            raise RingError(f"{p} is not prime")
        object.__setattr__(self, "p", int(p))

    def __setattr__(self, *_):
        raise AttributeError("Field is immutable")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "Field":
        if not p:
            raise RingError("characteristic must be a prime")
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(Q)" if not self.p else f"Field(F_{self.p})"

    def __str__(self):
        return "Q" if not self.p else f"Fp {self.p}"

    def __call__(self, x):
        """Coerce an int or Fraction into the field."""
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise RingError(f"{x} is not defined modulo {self.p}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return Fraction(x) if not isinstance(x, int) else x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        r = Fraction(1) / x
        return r.numerator if r.denominator == 1 else r

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def mul(self, x, y):
        if self.p:
            return x * y % self.p
        r = x * y
        return r.numerator if isinstance(r, Fraction) and r.denominator == 1 else r

    def add(self, x, y):
        if self.p:
            return (x + y) % self.p
        r = x + y
        return r.numerator if isinstance(r, Fraction) and r.denominator == 1 else r

    def neg(self, x):
        return (-x) % self.p if self.p else -x

    def lift(self, x):
        """Symmetric integer representative (F_p) or the rational itself."""
        if self.p and x > self.p // 2:
            return x - self.p
        return x


def _order_rows(order: str, weights: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Rows of a nonnegative weight matrix whose lexicographic comparison is the order."""
    n = len(weights)
    if order == "degrevlex":
        # prefix weighted sums W_n, W_{n-1}, ..., W_1 give weighted degrevlex
        return tuple(tuple(weights[i] if i < k else 0 for i in range(n)) for k in range(n, 0, -1))
    unit = [tuple(1 if i == k else 0 for i in range(n)) for k in range(n)]
    if order == "deglex":
        return (tuple(weights),) + tuple(unit)
    if order == "lex":
        return tuple(unit)
    if order.startswith("elim:"):
        # internal: first k variables (weight 0) are eliminated, degrevlex on the rest
        k = int(order[5:])
        rest = weights[k:]
        rows = [tuple(1 if i < k else 0 for i in range(n))]
        rows += [(0,) * k + r for r in _order_rows("degrevlex", rest)]
        rows += [unit[i] for i in range(k - 1)]
        return tuple(rows)
    raise RingError(f"unknown monomial order {order!r}")


class GradedRing:
    """Polynomial ring over an exact field with positive integer weights."""

    def __init__(self, field: Field, variables, weights=None, order: str = "degrevlex", *, _internal=False):
        variables = tuple(str(v).strip() for v in variables)
        if not variables:
            raise RingError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise RingError("duplicate variable name")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise RingError(f"invalid variable name {v!r}")
        weights = tuple(int(w) for w in (weights if weights is not None else [1] * len(variables)))
        if len(weights) != len(variables):
            raise RingError("one weight per variable is required")
        if any(w < (0 if _internal else 1) for w in weights):
            raise RingError("weights must be positive")
        if not _internal and order not in ORDERS:
            raise RingError(f"unknown monomial order {order!r}")
        self.field = field
        self.variables = variables
        self.weights = weights
        self.order = order
        self.nvars = len(variables)
        self.order_rows = _order_rows(order, weights)
        self._index = {v: i for i, v in enumerate(variables)}

    def _ident(self):
        return (self.field, self.variables, self.weights, self.order)

    def __eq__(self, other):
        return isinstance(other, GradedRing) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        return f"GradedRing({self.field}, {','.join(self.variables)}, w={list(self.weights)}, {self.order})"

    # -- monomials
    def mono_degree(self, e) -> int:
        return sum(a * w for a, w in zip(e, self.weights))

    def mono_key(self, e) -> tuple:
        return tuple(sum(r * a for r, a in zip(row, e)) for row in self.order_rows)

    @cached_property
    def one_mono(self):
        return (0,) * self.nvars

    # -- elements
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.one_mono: 1})

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self.one_mono: c} if c else {})

    def gen(self, v) -> "Polynomial":
        i = self._index[v] if isinstance(v, str) else int(v)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, e, c=1) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {tuple(e): c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(self, text)

    def check(self, f: "Polynomial"):
        if f.ring != self:
            raise RingError("ring mismatch")

    def dim_piece(self, d: int) -> int:
        """Number of monomials of degree d."""
        if d < 0:
            return 0
        ways = [1] + [0] * d
        for w in self.weights:
            if w == 0:
                raise RingError("graded pieces are infinite with a weight-0 variable")
            for k in range(w, d + 1):
                ways[k] += ways[k - w]
        return ways[d]

    def monomials_of_degree(self, d: int) -> list[tuple[int, ...]]:
        """All exponent vectors of degree d, sorted descending in the ring order."""
        out: list[tuple[int, ...]] = []

        def rec(i, left, acc):
            if i == self.nvars - 1:
                if left % self.weights[i] == 0:
                    out.append(tuple(acc + [left // self.weights[i]]))
                return
            for a in range(left // self.weights[i], -1, -1):
                rec(i + 1, left - a * self.weights[i], acc + [a])

        if d >= 0:
            rec(0, d, [])
        out.sort(key=self.mono_key, reverse=True)
        return out


def create_ring(field: Field | None = None, variables=("x", "y", "z"), weights=None, order: str = "degrevlex") -> GradedRing:
    return GradedRing(field if field is not None else Field.prime(), variables, weights, order)


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: GradedRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        """Maximal weighted degree of a term; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(self.ring.mono_degree(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.mono_degree(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.one_mono in self.terms)

    def constant_coefficient(self):
        return self.terms.get(self.ring.one_mono, 0)

    # -- leading data
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self.ring.mono_key(kv[0]), reverse=True)

    def lead_monomial(self):
        return max(self.terms, key=self.ring.mono_key) if self.terms else None

    def lead_coefficient(self):
        return self.terms[self.lead_monomial()] if self.terms else 0

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coefficient()))

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self.ring.check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = F.add(t.get(e, 0), c)
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: F.mul(v, c) for e, v in self.terms.items()})

    def mul_monomial(self, e, c=1) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(m, e)): F.mul(v, c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = F.add(t.get(e, 0), F.mul(c1, c2))
        return Polynomial(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out, base = self.ring.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divide_exact(self, other: "Polynomial") -> "Polynomial":
        """Quotient q with self == q*other; raises if other does not divide self."""
        self.ring.check(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        F = self.ring.field
        mk = self.ring.mono_key

        def key(m):  # max-heap via componentwise negation
            return tuple(-x for x in mk(m))

        lm = other.lead_monomial()
        lc_inv = F.inv(other.terms[lm])
        rest = [(e, c) for e, c in other.terms.items() if e != lm]
        rem = dict(self.terms)
        heap = [(key(m), m) for m in rem]
        heapq.heapify(heap)
        q = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = rem.pop(m)
            if not c:
                continue
            e = tuple(a - b for a, b in zip(m, lm))
            if min(e) < 0:
                raise ArithmeticError("polynomial does not divide")
            c = F.mul(c, lc_inv)
            q[e] = c
            for mm, v in rest:
                t = tuple(a + b for a, b in zip(mm, e))
                old = rem.get(t)
                if old is None:
                    rem[t] = F.neg(F.mul(c, v))
                    heapq.heappush(heap, (key(t), t))
                else:
                    rem[t] = F.add(old, F.neg(F.mul(c, v)))
        return Polynomial(self.ring, q)

    def homogeneous_components(self) -> dict:
        out: dict = {}
        for e, c in self.terms.items():
            out.setdefault(self.ring.mono_degree(e), {})[e] = c
        return {d: Polynomial(self.ring, t) for d, t in out.items()}

    # -- comparison / display
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        parts = []
        for e, c in self.sorted_terms():
            c = F.lift(c)
            neg = c < 0
            a = -c if neg else c
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.ring.variables, e) if k
            )
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({self})"


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif name is not None:
            toks.append(("var", name))
        elif op is not None and not op.isspace():
            if op not in "+-*^/()":
                raise ParseError(f"unexpected character {op!r}")
            toks.append(("op", op))
    return toks


class _Parser:
    def __init__(self, ring: GradedRing, text: str):
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r}")

    def parse(self) -> Polynomial:
        if not self.toks:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            kind, val = self.peek()
            if kind in ("var", "num") or val == "(":
                raise ParseError("juxtaposition is not allowed; use '*'")
            raise ParseError(f"unexpected token {val!r}")
        return p

    def expr(self):
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            p = p * self.factor()
        return p

    def factor(self):
        p = self.base()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            p = p ** val
        return p

    def base(self):
        kind, val = self.take()
        if kind == "num":
            if self.peek() == ("op", "/"):
                self.take()
                k2, den = self.take()
                if k2 != "num":
                    raise ParseError("a rational constant needs an integer denominator")
                if den == 0:
                    raise ParseError("zero denominator")
                try:
                    return self.ring.const(Fraction(val, den))
                except RingError as exc:
                    raise ParseError(f"coefficient not in field: {exc}") from None
            return self.ring.const(val)
        if kind == "var":
            if val not in self.ring._index:
                raise ParseError(f"unknown variable {val!r}")
            return self.ring.gen(val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "op" and val == "-":
            return -self.factor()
        raise ParseError("malformed polynomial" if kind is None else f"unexpected token {val!r}")


def parse_poly(ring: GradedRing, text: str) -> Polynomial:
    """Parse ``+ - * ^`` expressions with integer (or a/b) coefficients."""
    return _Parser(ring, text).parse()
