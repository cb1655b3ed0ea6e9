"""Exact arithmetic in cyclotomic integer rings Z[zeta_n].

Values are represented in the power basis 1, z, ..., z^(phi(n)-1) of the
n-th cyclotomic field, reduced modulo the n-th cyclotomic polynomial, with
the conductor n minimized eagerly after every operation.  Rational values
are plain Python ints (the conductor-1 case, unboxed for speed); the
Cyclotomic class only ever holds genuinely irrational values.  Arithmetic
mixes ints and Cyclotomics freely and demotes rational results back to int,
so equality of values is literal equality of representations.

All coefficients are arbitrary-precision integers.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Union

Value = Union[int, "Cyclotomic"]


class InvalidAutomorphism(ValueError):
    """Galois exponent not coprime to the conductor."""


# ----------------------------------------------------------------------
# number-theoretic helpers


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    out = []
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return tuple(out)


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials (low-to-high coefficients).
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    out = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        q, r = divmod(num[k + dd], den[dd])
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k] = q
        for i, c in enumerate(den):
            num[k + i] -= q * c
    if any(num):
        raise ArithmeticError("nonzero remainder in exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low to high, monic."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n)[:-1]:
        poly = _poly_div_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _monomial_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e-phi(n) is zeta_n^e reduced to the power basis, phi(n) <= e < n."""
    phi = euler_phi(n)
    cp = cyclotomic_polynomial(n)
    # zeta^phi = -(c_0 + c_1 zeta + ... + c_{phi-1} zeta^{phi-1})
    rows = [tuple(-c for c in cp[:phi])]
    for _ in range(phi + 1, n):
        prev = rows[-1]
        shifted = [0] + list(prev[:-1])
        top = prev[-1]
        if top:
            first = rows[0]
            for i in range(phi):
                shifted[i] += top * first[i]
        rows.append(tuple(shifted))
    return tuple(rows)


def _reduce_vector(n: int, coeffs: dict[int, int]) -> list[int]:
    """Reduce exponent->coefficient data (exponents < n) mod Phi_n."""
    phi = euler_phi(n)
    vec = [0] * phi
    rows = None
    for e, c in coeffs.items():
        if not c:
            continue
        if e < phi:
            vec[e] += c
        else:
            if rows is None:
                rows = _monomial_rows(n)
            row = rows[e - phi]
            for i in range(phi):
                if row[i]:
                    vec[i] += c * row[i]
    return vec


# ----------------------------------------------------------------------
# subfield rewriting (conductor minimization)


def _invert_fraction_matrix(m: list[list]) -> list[list]:
    # Gauss-Jordan over exact rationals via Fraction.
    from fractions import Fraction

    k = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
         for i, row in enumerate(m)]
    for col in range(k):
        piv = next(r for r in range(col, k) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(k):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[k:] for row in a]


@lru_cache(maxsize=None)
def _subfield_solver(n: int, d: int):
    """Data for rewriting an element of Q(zeta_n) over the power basis of
    Q(zeta_d), d | n: (embedding columns, pivot row indices, inverse of the
    pivot square submatrix as Fractions)."""
    phi_n, phi_d = euler_phi(n), euler_phi(d)
    step = n // d
    cols = []
    for j in range(phi_d):
        cols.append(_reduce_vector(n, {(j * step) % n: 1}))
    # greedy pivot row selection by fraction-free elimination on a copy
    from fractions import Fraction

    work = [[Fraction(cols[j][i]) for j in range(phi_d)] for i in range(phi_n)]
    pivots = []
    used = [False] * phi_n
    for col in range(phi_d):
        for r in range(phi_n):
            if not used[r] and work[r][col]:
                pivots.append(r)
                used[r] = True
                inv = 1 / work[r][col]
                work[r] = [x * inv for x in work[r]]
                for rr in range(phi_n):
                    if rr != r and work[rr][col]:
                        f = work[rr][col]
                        work[rr] = [x - f * y for x, y in zip(work[rr], work[r])]
                break
        else:
            raise ArithmeticError("embedding matrix is column rank deficient")
    square = [[cols[j][i] for j in range(phi_d)] for i in pivots]
    return cols, tuple(pivots), _invert_fraction_matrix(square)


def _try_rewrite(n: int, vec: list[int], d: int) -> list[int] | None:
    """Coefficients of vec over the power basis of Q(zeta_d), or None."""
    cols, pivots, inv = _subfield_solver(n, d)
    phi_d = len(cols)
    rhs = [vec[i] for i in pivots]
    q = []
    for row in inv:
        s = sum(f * x for f, x in zip(row, rhs))
        if s.denominator != 1:
            return None
        q.append(int(s))
    # verify on all coordinates
    phi_n = len(vec)
    for i in range(phi_n):
        if sum(cols[j][i] * q[j] for j in range(phi_d)) != vec[i]:
            return None
    return q


# ----------------------------------------------------------------------
# the value type


class Cyclotomic:
    """An irrational cyclotomic integer in canonical form.

    Use make() / zeta() / from_json() to construct values; the class
    invariants (minimal conductor > 1, reduced power basis, no zero
    coefficients) are maintained by those constructors.  Instances are
    immutable and hashable.
    """

    __slots__ = ("n", "coeffs", "_key")

    def __init__(self, n: int, coeffs: dict[int, int], _key=None):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(
            self, "_key", _key if _key is not None else (n, tuple(sorted(coeffs.items())))
        )

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic values are immutable")

    # -- ring operations -------------------------------------------------

    def __add__(self, other: Value) -> Value:
        if isinstance(other, int):
            if other == 0:
                return self
            merged = dict(self.coeffs)
            merged[0] = merged.get(0, 0) + other
            return make(self.n, merged)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        m = self.n * other.n // gcd(self.n, other.n)
        a, b = self._lifted(m), other._lifted(m)
        for e, c in b.items():
            a[e] = a.get(e, 0) + c
        return make(m, a)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.n, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: Value) -> Value:
        return self + (-other)

    def __rsub__(self, other: Value) -> Value:
        return (-self) + other

    def __mul__(self, other: Value) -> Value:
        if isinstance(other, int):
            if other == 0:
                return 0
            if other == 1:
                return self
            return Cyclotomic(self.n, {e: c * other for e, c in self.coeffs.items()})
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        m = self.n * other.n // gcd(self.n, other.n)
        a, b = self._lifted(m), other._lifted(m)
        prod: dict[int, int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                if e >= m:
                    e -= m
                prod[e] = prod.get(e, 0) + c1 * c2
        return make(m, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Value:
        if k < 0:
            raise ValueError("negative powers are not defined in Z[zeta_n]")
        result: Value = 1
        base: Value = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _lifted(self, m: int) -> dict[int, int]:
        step = m // self.n
        if step == 1:
            return dict(self.coeffs)
        return {e * step: c for e, c in self.coeffs.items()}

    # -- Galois action ----------------------------------------------------

    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta_n -> zeta_n^k; requires gcd(k, n) = 1."""
        n = self.n
        k %= n
        if gcd(k, n) != 1:
            raise InvalidAutomorphism(f"exponent {k} not coprime to conductor {n}")
        if k == 1:
            return self
        mapped: dict[int, int] = {}
        for e, c in self.coeffs.items():
            mapped[(e * k) % n] = c
        vec = _reduce_vector(n, mapped)
        # automorphisms preserve the (minimal) conductor, so no minimization
        out = {e: c for e, c in enumerate(vec) if c}
        return Cyclotomic(n, out)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    # -- identity / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return self._key == other._key
        return False  # ints never compare equal: rationals are unboxed

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        terms = []
        for e, c in sorted(self.coeffs.items()):
            if e == 0:
                terms.append(f"{c}")
            elif c == 1:
                terms.append(f"z{self.n}^{e}")
            elif c == -1:
                terms.append(f"-z{self.n}^{e}")
            else:
                terms.append(f"{c}*z{self.n}^{e}")
        return " + ".join(terms).replace("+ -", "- ")


# ----------------------------------------------------------------------
# constructors and Value helpers


def make(n: int, coeffs: dict[int, int]) -> Value:
    """Canonicalize exponent->coefficient data in Q(zeta_n) into a Value."""
    if n <= 0:
        raise ValueError("conductor must be positive")
    clean: dict[int, int] = {}
    for e, c in coeffs.items():
        if c:
            e %= n
            clean[e] = clean.get(e, 0) + c
    clean = {e: c for e, c in clean.items() if c}
    if not clean:
        return 0
    if n == 1:
        return clean[0]
    if n % 4 == 2:
        # Q(zeta_2m) = Q(zeta_m) for odd m: zeta_2m = -zeta_m^((m+1)/2)
        m = n // 2
        half = (m + 1) // 2
        folded: dict[int, int] = {}
        for e, c in clean.items():
            if e % 2:
                c = -c
            ee = (e * half) % m
            folded[ee] = folded.get(ee, 0) + c
        return make(m, folded)
    vec = _reduce_vector(n, clean)
    return _from_reduced(n, vec)


def _from_reduced(n: int, vec: list[int]) -> Value:
    while True:
        if not any(vec):
            return 0
        if n == 1:
            return vec[0]
        for p in prime_factors(n):
            d = n // p
            if d % 4 == 2:
                d //= 2
            q = _try_rewrite(n, vec, d)
            if q is not None:
                n, vec = d, q
                break
        else:
            break
    if n == 1:
        return vec[0]
    return Cyclotomic(n, {e: c for e, c in enumerate(vec) if c})


def zeta(n: int, e: int = 1) -> Value:
    """The root of unity zeta_n^e as a canonical Value."""
    return make(n, {e: 1})


def conductor(v: Value) -> int:
    return v.n if isinstance(v, Cyclotomic) else 1


def galois(v: Value, k: int) -> Value:
    """Galois action zeta_n -> zeta_n^k on a Value (identity on ints)."""
    if isinstance(v, int):
        return v
    return v.galois(k)


def conj(v: Value) -> Value:
    if isinstance(v, int):
        return v
    return v.conjugate()


def as_integer(v: Value) -> int | None:
    """The rational integer a Value represents, or None if irrational."""
    return v if isinstance(v, int) else None


def is_value(v) -> bool:
    return isinstance(v, (int, Cyclotomic)) and not isinstance(v, bool)


def divide_exact(v: Value, d: int) -> Value:
    """v / d when the quotient lies in Z[zeta_n]; raises ArithmeticError."""
    if isinstance(v, int):
        q, r = divmod(v, d)
        if r:
            raise ArithmeticError(f"{v} not divisible by {d}")
        return q
    out = {}
    for e, c in v.coeffs.items():
        q, r = divmod(c, d)
        if r:
            raise ArithmeticError(f"coefficient {c} not divisible by {d}")
        out[e] = q
    return Cyclotomic(v.n, out)


# ----------------------------------------------------------------------
# JSON encoding: either a bare integer, or {"n": conductor,
# "c": [[exponent, "coefficient"], ...]} with decimal-string coefficients.


def value_to_json(v: Value):
    if isinstance(v, int):
        return v
    return {"n": v.n, "c": [[e, str(c)] for e, c in sorted(v.coeffs.items())]}


def value_vector(v: Value, n: int) -> list[int]:
    """Coefficients of v over the power basis of Q(zeta_n); the conductor of
    v must divide n."""
    phi = euler_phi(n)
    if isinstance(v, int):
        vec = [0] * phi
        vec[0] = v
        return vec
    if n % v.n:
        raise ValueError(f"conductor {v.n} does not divide {n}")
    step = n // v.n
    if step == 1:
        vec = [0] * phi
        for e, c in v.coeffs.items():
            vec[e] = c
        return vec
    return _reduce_vector(n, {e * step: c for e, c in v.coeffs.items()})


def value_from_json(obj) -> Value:
    if isinstance(obj, bool):
        raise ValueError("boolean is not a cyclotomic value")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        return int(obj)
    if isinstance(obj, dict):
        n = obj["n"]
        coeffs = {int(e): int(c) for e, c in obj["c"]}
        return make(n, coeffs)
    raise ValueError(f"cannot decode cyclotomic value from {obj!r}")
