"""Graded free modules and matrices between them."""

from __future__ import annotations

from .ring import GradedRing, Polynomial


class GradingError(ValueError):
    pass


class GradedMap:
    """Matrix ``F -> G`` with F = ⊕ R(-source_degrees[j]), G = ⊕ R(-target_degrees[i]).

    Entry (i, j) is zero or homogeneous of degree source[j] - target[i],
    so the map has degree 0.
    """

    __slots__ = ("ring", "target", "source", "entries")

    def __init__(self, ring: GradedRing, target_degrees, source_degrees, entries, check: bool = True):
        self.ring = ring
        self.target = tuple(int(d) for d in target_degrees)
        self.source = tuple(int(d) for d in source_degrees)
        rows = [list(r) for r in entries]
        if len(rows) != len(self.target):
            raise GradingError("row count does not match target rank")
        for r in rows:
            if len(r) != len(self.source):
                raise GradingError("column count does not match source rank")
        self.entries = tuple(tuple(r) for r in rows)
        if check:
            self.check()

    def check(self):
        for i, row in enumerate(self.entries):
            for j, f in enumerate(row):
                if f.ring != self.ring:
                    raise GradingError("ring mismatch")
                if f.is_zero():
                    continue
                want = self.source[j] - self.target[i]
                if not f.is_homogeneous() or f.degree() != want:
                    raise GradingError(f"entry ({i},{j}) = {f} is not homogeneous of degree {want}")

    # -- construction helpers
    @classmethod
    def from_columns(cls, ring, target_degrees, columns, source_degrees=None):
        target_degrees = tuple(target_degrees)
        if source_degrees is None:
            source_degrees = []
            for col in columns:
                d = None
                for i, f in enumerate(col):
                    if not f.is_zero():
                        d = f.degree() + target_degrees[i]
                        break
                if d is None:
                    raise GradingError("cannot infer the degree of a zero column")
                source_degrees.append(d)
        rows = [[col[i] for col in columns] for i in range(len(target_degrees))]
        return cls(ring, target_degrees, source_degrees, rows)

    @classmethod
    def identity(cls, ring, degrees):
        degrees = tuple(degrees)
        z, o = ring.zero(), ring.one()
        return cls(ring, degrees, degrees, [[o if i == j else z for j in range(len(degrees))] for i in range(len(degrees))])

    @classmethod
    def zero(cls, ring, target_degrees, source_degrees):
        z = ring.zero()
        return cls(ring, target_degrees, source_degrees, [[z] * len(source_degrees) for _ in target_degrees], check=False)

    # -- shape
    @property
    def nrows(self) -> int:
        return len(self.target)

    @property
    def ncols(self) -> int:
        return len(self.source)

    def column(self, j: int) -> list[Polynomial]:
        return [row[j] for row in self.entries]

    def columns(self) -> list[list[Polynomial]]:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return all(f.is_zero() for row in self.entries for f in row)

    def unit_positions(self):
        """Positions (i, j) holding a nonzero constant."""
        return [
            (i, j)
            for i, row in enumerate(self.entries)
            for j, f in enumerate(row)
            if not f.is_zero() and f.is_constant()
        ]

    def is_minimal(self) -> bool:
        return not self.unit_positions()

    # -- algebra
    def __mul__(self, other: "GradedMap") -> "GradedMap":
        """Composition self ∘ other."""
        if self.source != other.target:
            raise GradingError("maps are not composable")
        z = self.ring.zero()
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    b = other.entries[k][j]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return GradedMap(self.ring, self.target, other.source, rows, check=False)

    def apply(self, col) -> list[Polynomial]:
        out = []
        for row in self.entries:
            acc = self.ring.zero()
            for a, b in zip(row, col):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return out

    def transpose(self) -> "GradedMap":
        """Dual map G* -> F*; twists are negated."""
        rows = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return GradedMap(self.ring, [-d for d in self.source], [-d for d in self.target], rows, check=False)

    def hstack(self, other: "GradedMap") -> "GradedMap":
        if self.target != other.target:
            raise GradingError("targets differ")
        rows = [list(a) + list(b) for a, b in zip(self.entries, other.entries)]
        return GradedMap(self.ring, self.target, self.source + other.source, rows, check=False)

    def submatrix(self, rows, cols) -> "GradedMap":
        return GradedMap(
            self.ring,
            [self.target[i] for i in rows],
            [self.source[j] for j in cols],
            [[self.entries[i][j] for j in cols] for i in rows],
            check=False,
        )

    def __eq__(self, other):
        return (
            isinstance(other, GradedMap)
            and self.ring == other.ring
            and self.target == other.target
            and self.source == other.source
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.target, self.source, self.entries))

    def to_json(self):
        return {
            "target_degrees": list(self.target),
            "source_degrees": list(self.source),
            "entries": [[str(f) for f in row] for row in self.entries],
        }

    def __repr__(self):
        return f"GradedMap({self.nrows}x{self.ncols}, target={list(self.target)}, source={list(self.source)})"

    def __str__(self):
        cells = [[str(f) for f in row] for row in self.entries]
        if not cells or not cells[0]:
            return repr(self)
        w = max(len(c) for row in cells for c in row)
        return "\n".join("| " + "  ".join(c.rjust(w) for c in row) + " |" for row in cells)
