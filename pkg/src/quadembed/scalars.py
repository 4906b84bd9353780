"""Exact scalar arithmetic over Z, Q and Z/m, and the linear solvers built on it.

Every value is immutable and every operation is pure; there is no floating
point anywhere in the package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


class RingError(ValueError):
    """Operation not supported over the given ring."""


class ShapeError(ValueError):
    """Matrix or vector shapes do not line up."""


class Ring:
    """Base class for the supported coefficient rings.

    Instances are interned, so rings compare (and hash) by identity.
    """

    name = "?"

    def normalize(self, value):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def is_unit_value(self, a) -> bool:
        raise NotImplementedError

    def is_nzd_value(self, a) -> bool:
        raise NotImplementedError

    def inverse_value(self, a):
        raise NotImplementedError

    def format_value(self, a) -> str:
        return str(a)

    def __call__(self, value) -> "Scalar":
        return Scalar(self.normalize(value), self)

    @property
    def zero(self) -> "Scalar":
        return Scalar(self.normalize(0), self)

    @property
    def one(self) -> "Scalar":
        return Scalar(self.normalize(1), self)

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    name = "Z"

    def normalize(self, value):
        if isinstance(value, bool):
            raise RingError("booleans are not ring elements")
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise RingError(f"{value} is not an integer")
            return int(value)
        raise RingError(f"cannot interpret {value!r} as an integer")

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit_value(self, a):
        return a in (1, -1)

    def is_nzd_value(self, a):
        return a != 0

    def inverse_value(self, a):
        if a in (1, -1):
            return a
        raise RingError(f"{a} is not a unit in Z")


class RationalRing(Ring):
    name = "Q"

    def normalize(self, value):
        if isinstance(value, bool):
            raise RingError("booleans are not ring elements")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise RingError(f"cannot interpret {value!r} as a rational")

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit_value(self, a):
        return a != 0

    def is_nzd_value(self, a):
        return a != 0

    def inverse_value(self, a):
        if a == 0:
            raise RingError("0 is not a unit in Q")
        return 1 / Fraction(a)

    def format_value(self, a):
        return str(a)


class ModularRing(Ring):
    """Integers mod m, canonical representatives in [0, m)."""

    def __init__(self, modulus: int):
        if modulus < 2:
            raise RingError("modulus must be at least 2")
        self.modulus = modulus
        self.name = f"Z/{modulus}"

    def normalize(self, value):
        if isinstance(value, bool):
            raise RingError("booleans are not ring elements")
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise RingError(f"{value} is not an integer")
            value = int(value)
        if not isinstance(value, int):
            raise RingError(f"cannot interpret {value!r} mod {self.modulus}")
        return value % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def is_unit_value(self, a):
        return math.gcd(a, self.modulus) == 1

    def is_nzd_value(self, a):
        # In Z/m the non-zero divisors are exactly the units.
        return math.gcd(a, self.modulus) == 1

    def inverse_value(self, a):
        if math.gcd(a, self.modulus) != 1:
            raise RingError(f"{a} is not a unit mod {self.modulus}")
        return pow(a, -1, self.modulus)

    def format_value(self, a):
        return f"{a} mod {self.modulus}"


ZZ = IntegerRing()
QQ = RationalRing()


@lru_cache(maxsize=None)
def Zmod(modulus: int) -> ModularRing:
    """Interned ring of integers mod `modulus`."""
    return ModularRing(modulus)


def ring_from_name(name: str) -> Ring:
    if name == "Z":
        return ZZ
    if name == "Q":
        return QQ
    if name.startswith("Z/"):
        return Zmod(int(name[2:]))
    raise RingError(f"unknown ring {name!r}")


class Scalar:
    """An exact element of one of the supported rings."""

    __slots__ = ("value", "ring")

    def __init__(self, value, ring: Ring):
        self.value = value
        self.ring = ring

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.ring is not self.ring:
                raise RingError(f"mixed rings: {self.ring} and {other.ring}")
            return other.value
        return self.ring.normalize(other)

    def __add__(self, other):
        return Scalar(self.ring.add(self.value, self._coerce(other)), self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(
            self.ring.add(self.value, self.ring.neg(self._coerce(other))), self.ring
        )

    def __rsub__(self, other):
        return Scalar(
            self.ring.add(self._coerce(other), self.ring.neg(self.value)), self.ring
        )

    def __mul__(self, other):
        return Scalar(self.ring.mul(self.value, self._coerce(other)), self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.ring.neg(self.value), self.ring)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.ring is other.ring and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.value == self.ring.normalize(other)
            except RingError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    @property
    def is_zero(self) -> bool:
        return not self.value

    def is_unit(self) -> bool:
        return self.ring.is_unit_value(self.value)

    def is_nonzerodivisor(self) -> bool:
        return self.ring.is_nzd_value(self.value)

    def inverse(self) -> "Scalar":
        return Scalar(self.ring.inverse_value(self.value), self.ring)

    def __str__(self):
        return self.ring.format_value(self.value)

    def __repr__(self):
        return f"{self} : {self.ring.name}"


def is_unit(r: Scalar) -> bool:
    """True iff `r` has a multiplicative inverse in its ring."""
    return r.is_unit()


def is_nonzerodivisor(r: Scalar) -> bool:
    """True iff r*s = 0 forces s = 0 in the ring of `r`."""
    return r.is_nonzerodivisor()


def parse_scalar(text: str, ring: Ring) -> Scalar:
    """Inverse of str(): accepts "-7", "3/4" and "5 mod 6" style strings."""
    text = text.strip().replace("−", "-")
    if isinstance(ring, ModularRing):
        head = text.split("mod")[0].strip() if "mod" in text else text
        return ring(int(head))
    if "/" in text:
        if ring is not QQ:
            raise RingError(f"{text!r} is not an element of {ring.name}")
        num, den = text.split("/")
        return ring(Fraction(int(num), int(den)))
    return ring(int(text))


def _as_fraction(s: Scalar) -> Fraction:
    if isinstance(s.ring, ModularRing):
        raise RingError("no fraction field for a modular ring")
    return Fraction(s.value)


class ScalarMatrix:
    """Dense matrix of Scalars over a single ring, row major and immutable."""

    __slots__ = ("rows", "cols", "ring", "entries")

    def __init__(self, rows: int, cols: int, entries, ring: Ring):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        for e in entries:
            if e.ring is not ring:
                raise RingError("all entries must share one ring")
        self.rows = rows
        self.cols = cols
        self.ring = ring
        self.entries = entries

    @classmethod
    def from_rows(cls, rows) -> "ScalarMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeError("matrix needs at least one entry")
        ring = rows[0][0].ring
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), width, [e for r in rows for e in r], ring)

    @classmethod
    def of_ints(cls, ring: Ring, rows) -> "ScalarMatrix":
        return cls.from_rows([[ring(v) for v in row] for row in rows])

    @classmethod
    def identity(cls, n: int, ring: Ring) -> "ScalarMatrix":
        return cls(n, n, [ring(1 if i == j else 0) for i in range(n) for j in range(n)], ring)

    @classmethod
    def zero(cls, rows: int, cols: int, ring: Ring) -> "ScalarMatrix":
        z = ring.zero
        return cls(rows, cols, [z] * (rows * cols), ring)

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError("shape mismatch")
        if self.ring is not other.ring:
            raise RingError("ring mismatch")

    def __add__(self, other):
        self._check_same_shape(other)
        return ScalarMatrix(
            self.rows,
            self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
            self.ring,
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        return ScalarMatrix(
            self.rows,
            self.cols,
            [a - b for a, b in zip(self.entries, other.entries)],
            self.ring,
        )

    def __neg__(self):
        return ScalarMatrix(self.rows, self.cols, [-a for a in self.entries], self.ring)

    def __mul__(self, other):
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError("inner dimensions do not match")
        if self.ring is not other.ring:
            raise RingError("ring mismatch")
        ring = self.ring
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = ring.normalize(0)
                for k in range(self.cols):
                    acc = ring.add(acc, ring.mul(ri[k].value, other.entries[k * other.cols + j].value))
                out.append(Scalar(acc, ring))
        return ScalarMatrix(self.rows, other.cols, out, ring)

    def scale(self, s: Scalar) -> "ScalarMatrix":
        return ScalarMatrix(self.rows, self.cols, [s * a for a in self.entries], self.ring)

    def apply(self, vec) -> list:
        """Matrix times column vector."""
        vec = list(vec)
        if len(vec) != self.cols:
            raise ShapeError("vector length does not match column count")
        ring = self.ring
        out = []
        for i in range(self.rows):
            acc = ring.normalize(0)
            for k in range(self.cols):
                acc = ring.add(acc, ring.mul(self.entry(i, k).value, vec[k].value))
            out.append(Scalar(acc, ring))
        return out

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(
            self.cols,
            self.rows,
            [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)],
            self.ring,
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    def determinant(self) -> Scalar:
        if not self.is_square():
            raise ShapeError("determinant needs a square matrix")
        if isinstance(self.ring, ModularRing):
            if self.rows > 8:
                raise RingError("modular determinant limited to dimension 8")
            return Scalar(_det_expansion_mod(self.row_lists(), self.ring), self.ring)
        scale = Fraction(1)
        int_rows = []
        for i in range(self.rows):
            fr = [_as_fraction(e) for e in self.row(i)]
            den = math.lcm(*(f.denominator for f in fr)) if fr else 1
            scale /= den
            int_rows.append([int(f * den) for f in fr])
        det = Fraction(_det_bareiss(int_rows)) * scale
        return self.ring(det)

    def inverse(self) -> "ScalarMatrix":
        if not self.is_square():
            raise ShapeError("inverse needs a square matrix")
        if isinstance(self.ring, ModularRing):
            return self._inverse_mod()
        n = self.rows
        aug = [[_as_fraction(self.entry(i, j)) for j in range(n)]
               + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        pivots = _row_reduce(aug, n)
        if len(pivots) != n:
            raise RingError("matrix is not invertible")
        inv_rows = [r[n:] for r in aug]
        try:
            return ScalarMatrix.from_rows([[self.ring(v) for v in row] for row in inv_rows])
        except RingError:
            raise RingError("determinant is not a unit, no inverse in the ring") from None

    def _inverse_mod(self):
        ring = self.ring
        n = self.rows
        rows = self.row_lists()
        det = _det_expansion_mod(rows, ring)
        dinv = ring.inverse_value(det)
        out = []
        for i in range(n):
            line = []
            for j in range(n):
                minor = [[rows[r][c].value for c in range(n) if c != i]
                         for r in range(n) if r != j]
                cof = _det_expansion_mod_ints(minor, ring.modulus) if minor else 1
                sign = -1 if (i + j) % 2 else 1
                line.append(ring(sign * cof * dinv))
            out.append(line)
        return ScalarMatrix.from_rows(out)

    def __eq__(self, other):
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.ring is other.ring
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.ring, self.entries))

    def to_json(self):
        return [[str(self.entry(i, j)) for j in range(self.cols)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data, ring: Ring) -> "ScalarMatrix":
        return cls.from_rows([[parse_scalar(v, ring) for v in row] for row in data])

    def __repr__(self):
        return "\n".join(" ".join(str(e).rjust(4) for e in self.row(i)) for i in range(self.rows))


def _det_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (Bareiss elimination)."""
    n = len(rows)
    sign = 1
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return 0
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        pc = rows[c][c]
        for i in range(c + 1, n):
            ric = rows[i][c]
            for j in range(c + 1, n):
                rows[i][j] = (rows[i][j] * pc - ric * rows[c][j]) // prev
            rows[i][c] = 0
        prev = pc
    return sign * rows[n - 1][n - 1]


def _int_rank(rows: list[list[int]]) -> int:
    """Rank over the fraction field, by fraction-free forward elimination."""
    if not rows:
        return 0
    n, m = len(rows), len(rows[0])
    rank = 0
    prev = 1
    for c in range(m):
        p = next((i for i in range(rank, n) if rows[i][c]), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        pc = rows[rank][c]
        for i in range(rank + 1, n):
            ric = rows[i][c]
            for j in range(c + 1, m):
                rows[i][j] = (rows[i][j] * pc - ric * rows[rank][j]) // prev
            rows[i][c] = 0
        prev = pc
        rank += 1
        if rank == n:
            break
    return rank


def _det_expansion_mod(rows, ring: ModularRing) -> int:
    return _det_expansion_mod_ints([[e.value for e in row] for row in rows], ring.modulus)


def _det_expansion_mod_ints(rows: list[list[int]], modulus: int) -> int:
    """Cofactor expansion with memoisation on column subsets."""
    n = len(rows)
    memo = {0: 1}

    def go(colmask: int) -> int:
        if colmask in memo:
            return memo[colmask]
        depth = bin(colmask).count("1")
        row = rows[n - depth]
        total = 0
        sign = 1
        for j in range(n):
            bit = 1 << j
            if not colmask & bit:
                continue
            if row[j]:
                total += sign * row[j] * go(colmask ^ bit)
            sign = -sign
        memo[colmask] = total % modulus
        return memo[colmask]

    return go((1 << n) - 1)


def _row_reduce(rows: list[list[Fraction]], ncols: int) -> list[tuple[int, int]]:
    """In-place reduced row echelon form on the leading `ncols` columns.

    Returns the pivot positions (row, col). Trailing columns (if any) are
    carried along, which is how augmented systems are reduced here.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    width = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    return pivots


def _solve_fraction_field(a: ScalarMatrix, b: list) -> list[Fraction] | None:
    """One particular solution of A x = b over the fraction field, or None.

    Free variables are set to zero.
    """
    aug = []
    for i in range(a.rows):
        row = [_as_fraction(e) for e in a.row(i)]
        row.append(_as_fraction(b[i]))
        aug.append(row)
    pivots = _row_reduce(aug, a.cols)
    rank = len(pivots)
    for i in range(rank, a.rows):
        if aug[i][a.cols]:
            return None
    x = [Fraction(0)] * a.cols
    for r, c in pivots:
        x[c] = aug[r][a.cols]
    return x


def _solve_mod(rows, rhs, ring: ModularRing, cols: list[int]) -> dict | None:
    """Recursive solver over Z/m: unit pivots when available, otherwise
    enumerate the values of one stuck variable."""
    m = ring.modulus
    live = [(r, v) for r, v in zip(rows, rhs) if any(r[c] for c in cols) or v]
    for r, v in live:
        if not any(r[c] for c in cols) and v:
            return None
    if not live:
        return {c: 0 for c in cols}
    rows = [r for r, _ in live]
    rhs = [v for _, v in live]
    # look for a unit pivot
    for ri, row in enumerate(rows):
        for c in cols:
            if math.gcd(row[c], m) == 1:
                inv = pow(row[c], -1, m)
                norm = {cc: row[cc] * inv % m for cc in cols}
                nval = rhs[ri] * inv % m
                sub_rows, sub_rhs = [], []
                for rj, other in enumerate(rows):
                    if rj == ri:
                        continue
                    f = other[c]
                    sub_rows.append({cc: (other[cc] - f * norm[cc]) % m for cc in cols})
                    sub_rhs.append((rhs[rj] - f * nval) % m)
                rest = [cc for cc in cols if cc != c]
                sub = _solve_mod(sub_rows, sub_rhs, ring, rest)
                if sub is None:
                    return None
                val = (nval - sum(norm[cc] * sub[cc] for cc in rest)) % m
                sub[c] = val
                return sub
    # no unit pivot anywhere: enumerate the first live column
    c = next(cc for cc in cols if any(r[cc] for r in rows))
    rest = [cc for cc in cols if cc != c]
    for guess in range(m):
        new_rhs = [(v - r[c] * guess) % m for r, v in zip(rows, rhs)]
        sub = _solve_mod(rows, new_rhs, ring, rest)
        if sub is not None:
            sub[c] = guess
            return sub
    return None


def solve_in_ring(a: ScalarMatrix, b) -> list[Scalar] | None:
    """Solve A x = b with x inside the ring of A, or return None.

    Over Z the system is solved over Q and only an integral solution is
    accepted; over Z/m (m <= 64) the solve is exhaustive.
    """
    b = list(b)
    if len(b) != a.rows:
        raise ShapeError("right-hand side length does not match row count")
    for e in b:
        if e.ring is not a.ring:
            raise RingError("right-hand side must live in the matrix ring")
    ring = a.ring
    if isinstance(ring, ModularRing):
        if ring.modulus > 64:
            raise RingError("modular solve supported only for modulus <= 64")
        rows = [{j: a.entry(i, j).value for j in range(a.cols)} for i in range(a.rows)]
        sol = _solve_mod(rows, [e.value for e in b], ring, list(range(a.cols)))
        if sol is None:
            return None
        return [ring(sol[j]) for j in range(a.cols)]
    x = _solve_fraction_field(a, b)
    if x is None:
        return None
    if ring is ZZ and any(f.denominator != 1 for f in x):
        return None
    return [ring(f) for f in x]


def rank_over_fractions(a: ScalarMatrix) -> int:
    """Rank of A over the fraction field (Z or Q coefficients only)."""
    if isinstance(a.ring, ModularRing):
        raise RingError("rank over fractions is not defined for modular rings")
    int_rows = []
    for i in range(a.rows):
        fr = [_as_fraction(e) for e in a.row(i)]
        den = math.lcm(*(f.denominator for f in fr))
        int_rows.append([int(f * den) for f in fr])
    return _int_rank(int_rows)


class SpanSolver:
    """Repeated exact solves against a fixed set of spanning vectors.

    The reduction of [A | I] is done once; each solve is then a pass of
    integer dot products. Supports Z and Q coefficient rings.
    """

    def __init__(self, columns, ring: Ring):
        if isinstance(ring, ModularRing):
            raise RingError("SpanSolver requires Z or Q")
        self.ring = ring
        self.k = len(columns)
        if self.k == 0:
            raise ShapeError("need at least one spanning vector")
        self.n = len(columns[0])
        rows = []
        for i in range(self.n):
            row = [_as_fraction(col[i]) for col in columns]
            row.extend(Fraction(1 if j == i else 0) for j in range(self.n))
            rows.append(row)
        self.pivots = _row_reduce(rows, self.k)
        self.rank = len(self.pivots)
        # integerised transform rows: (tuple of ints, common denominator)
        self._trows = []
        for row in rows:
            t = row[self.k :]
            den = math.lcm(*(f.denominator for f in t))
            self._trows.append((tuple(int(f * den) for f in t), den))

    def solve(self, target) -> list[Scalar] | None:
        target = list(target)
        if len(target) != self.n:
            raise ShapeError("target length does not match span vectors")
        fr = [_as_fraction(t) for t in target]
        lcm = math.lcm(*(f.denominator for f in fr))
        b = [int(f * lcm) for f in fr]
        ys = []
        for ints, den in self._trows:
            num = sum(t * bv for t, bv in zip(ints, b) if t)
            ys.append(Fraction(num, den * lcm))
        for i in range(self.rank, self.n):
            if ys[i]:
                return None
        x = [Fraction(0)] * self.k
        for r, c in self.pivots:
            x[c] = ys[r]
        if self.ring is ZZ and any(f.denominator != 1 for f in x):
            return None
        return [self.ring(f) for f in x]

    def contains(self, target) -> bool:
        return self.solve(target) is not None


class FractionSpan:
    """Incrementally maintained row space over Q, used for span closures."""

    def __init__(self):
        self._rows = []  # reduced rows, each a list of Fractions
        self._leads = []  # leading column of each stored row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, vec) -> bool:
        """Reduce `vec` against the span; store and return True if it is new."""
        v = [Fraction(x) if not isinstance(x, Fraction) else x for x in vec]
        for row, lead in zip(self._rows, self._leads):
            if v[lead]:
                f = v[lead]
                v = [a - f * b for a, b in zip(v, row)]
        lead = next((i for i, a in enumerate(v) if a), None)
        if lead is None:
            return False
        pv = v[lead]
        v = [a / pv for a in v]
        for i, (row, l2) in enumerate(zip(self._rows, self._leads)):
            if row[lead]:
                f = row[lead]
                self._rows[i] = [a - f * b for a, b in zip(row, v)]
        self._rows.append(v)
        self._leads.append(lead)
        return True

    def contains(self, vec) -> bool:
        v = [Fraction(x) if not isinstance(x, Fraction) else x for x in vec]
        for row, lead in zip(self._rows, self._leads):
            if v[lead]:
                f = v[lead]
                v = [a - f * b for a, b in zip(v, row)]
        return not any(v)
