"""Hilbert series of graded modules via monomial initial ideals."""

from __future__ import annotations

from functools import lru_cache


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _poly_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def monomial_numerator(gens, weights) -> dict:
    """Numerator N with HS(R/L) = N(t) / prod(1 - t^w) for a monomial ideal L."""
    return dict(_numerator(_minimalize(tuple(tuple(g) for g in gens)), tuple(weights)))


@lru_cache(maxsize=200_000)
def _numerator(gens: tuple, weights: tuple) -> tuple:
    if not gens:
        return ((0, 1),)
    if any(not any(g) for g in gens):
        return ()  # unit ideal
    n = len(weights)

    def deg(e):
        return sum(a * w for a, w in zip(e, weights))

    counts = [0] * n
    for g in gens:
        for i, a in enumerate(g):
            if a:
                counts[i] += 1
    x = max(range(n), key=lambda i: (counts[i], -i))
    if counts[x] <= 1:
        # pairwise coprime generators: product of (1 - t^deg)
        out = {0: 1}
        for g in gens:
            out = _poly_mul(out, {0: 1, deg(g): -1})
        return tuple(sorted(out.items()))
    pure = [g[x] for g in gens if g[x] and sum(1 for a in g if a) == 1]
    mixed = [g[x] for g in gens if g[x] and sum(1 for a in g if a) > 1]
    e = min(mixed)
    if pure:
        e = min(e, pure[0] - 1)
    p = tuple(e if i == x else 0 for i in range(n))
    plus = _minimalize(tuple(g for g in gens if g[x] < e) + (p,))
    colon = _minimalize(tuple(tuple(max(a - e, 0) if i == x else a for i, a in enumerate(g)) for g in gens))
    a = dict(_numerator(plus, weights))
    b = dict(_numerator(colon, weights))
    shifted = {k + weights[x] * e: v for k, v in b.items()}
    return tuple(sorted(_poly_add(a, shifted).items()))


class HilbertSeries:
    """N(t) / prod_i (1 - t^{w_i}); N may carry negative exponents."""

    __slots__ = ("numerator", "weights")

    def __init__(self, numerator: dict, weights):
        self.numerator = {k: v for k, v in numerator.items() if v}
        self.weights = tuple(weights)

    @classmethod
    def of_monomial_quotient(cls, gens, weights, shift: int = 0) -> "HilbertSeries":
        num = monomial_numerator(gens, weights)
        return cls({k + shift: v for k, v in num.items()}, weights)

    @classmethod
    def zero(cls, weights) -> "HilbertSeries":
        return cls({}, weights)

    def is_zero(self) -> bool:
        return not self.numerator

    def __add__(self, other: "HilbertSeries") -> "HilbertSeries":
        assert self.weights == other.weights
        return HilbertSeries(_poly_add(self.numerator, other.numerator), self.weights)

    def __sub__(self, other: "HilbertSeries") -> "HilbertSeries":
        assert self.weights == other.weights
        return HilbertSeries(_poly_add(self.numerator, other.numerator, -1), self.weights)

    def __eq__(self, other):
        return isinstance(other, HilbertSeries) and self.weights == other.weights and self.numerator == other.numerator

    def __hash__(self):
        return hash((tuple(sorted(self.numerator.items())), self.weights))

    def shift(self, k: int) -> "HilbertSeries":
        """Series of M(-k), i.e. multiplied by t^k."""
        return HilbertSeries({e + k: v for e, v in self.numerator.items()}, self.weights)

    def _ring_dims(self, top: int) -> list[int]:
        ways = [1] + [0] * max(top, 0)
        for w in self.weights:
            for k in range(w, top + 1):
                ways[k] += ways[k - w]
        return ways

    def coefficients(self, lo: int, hi: int) -> list[int]:
        """Hilbert function values at degrees lo..hi inclusive."""
        if hi < lo:
            return []
        mn = min(self.numerator, default=0)
        dims = self._ring_dims(max(hi - mn, 0))
        out = []
        for d in range(lo, hi + 1):
            out.append(sum(v * dims[d - e] for e, v in self.numerator.items() if 0 <= d - e < len(dims)))
        return out

    def coefficient(self, d: int) -> int:
        return self.coefficients(d, d)[0]

    def initial_degree(self):
        """Smallest degree with a nonzero coefficient (None for zero)."""
        if not self.numerator:
            return None
        # the lowest numerator exponent always survives in the expansion
        return min(self.numerator)

    def dimension(self) -> int:
        """Krull dimension = order of the pole at t = 1; -1 for zero."""
        if not self.numerator:
            return -1
        mn = min(self.numerator)
        top = max(self.numerator)
        coeffs = [self.numerator.get(mn + i, 0) for i in range(top - mn + 1)]
        order = 0
        while sum(coeffs) == 0:
            # divide by (1 - t): q_i = sum_{j <= i} c_j
            q, acc = [], 0
            for c in coeffs[:-1]:
                acc += c
                q.append(acc)
            coeffs = q
            order += 1
        return len(self.weights) - order

    def multiplicity_data(self):
        """(dimension, h-vector) for the standard grading."""
        if any(w != 1 for w in self.weights):
            raise ValueError("h-vector requires standard grading")
        d = self.dimension()
        if d < 0:
            return d, {}
        mn = min(self.numerator)
        top = max(self.numerator)
        coeffs = [self.numerator.get(mn + i, 0) for i in range(top - mn + 1)]
        for _ in range(len(self.weights) - d):
            q, acc = [], 0
            for c in coeffs[:-1]:
                acc += c
                q.append(acc)
            coeffs = q
        return d, {mn + i: c for i, c in enumerate(coeffs) if c}

    def to_json(self):
        return {
            "numerator": {str(k): v for k, v in sorted(self.numerator.items())},
            "weights": list(self.weights),
        }

    def __repr__(self):
        terms = " + ".join(f"{v}*t^{k}" for k, v in sorted(self.numerator.items())) or "0"
        return f"HilbertSeries(({terms}) / prod(1-t^w), w={list(self.weights)})"
