"""Character table data model: classes, power maps, irreducible characters.

Tables are ingested from JSON fixtures, never derived from groups.  All
queries are read-only; a table is immutable after construction.  Character
values are exact (int | Cyclotomic, see cyclo.py).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .cyclo import (
    Value,
    conj,
    divide_exact,
    prime_factors,
    value_from_json,
    value_to_json,
)


class TableFormatError(ValueError):
    """Structurally malformed table data (misaligned lengths, bad indices)."""


class DataIncompleteError(KeyError):
    """A required power map or class is missing from the table."""


class InexactScalarProduct(ValueError):
    """Scalar product did not divide exactly by the group order."""


@dataclass(frozen=True)
class ClassInfo:
    name: str
    order: int          # element order
    size: int           # class size, arbitrary precision
    centralizer: int    # centralizer order, arbitrary precision


class CharacterTable:
    """An ordinary character table: classes, prime power maps, irreducibles.

    Index 0 is the identity class and irreducibles[0] the trivial character.
    Power maps are stored per prime as 0-based class index sequences.
    """

    def __init__(
        self,
        name: str,
        order: int,
        classes: Sequence[ClassInfo],
        power_maps: dict[int, Sequence[int]],
        irreducibles: Sequence[Sequence[Value]],
        distinguished: int | None = None,
    ):
        self.name = name
        self.order = order
        self.classes = tuple(classes)
        self.power_maps = {int(p): tuple(m) for p, m in power_maps.items()}
        self.irreducibles = tuple(tuple(row) for row in irreducibles)
        self.distinguished = distinguished
        n = len(self.classes)
        if len(self.irreducibles) != n:
            raise TableFormatError(
                f"{name}: {len(self.irreducibles)} irreducibles for {n} classes"
            )
        for i, row in enumerate(self.irreducibles):
            if len(row) != n:
                raise TableFormatError(f"{name}: irreducible {i} has length {len(row)}")
        for p, m in self.power_maps.items():
            if len(m) != n:
                raise TableFormatError(f"{name}: power map for {p} has length {len(m)}")
            if any(not (0 <= x < n) for x in m):
                raise TableFormatError(f"{name}: power map for {p} has bad indices")
        if distinguished is not None and not (0 <= distinguished < n):
            raise TableFormatError(f"{name}: distinguished index {distinguished}")
        self._index = {c.name: i for i, c in enumerate(self.classes)}
        if len(self._index) != n:
            raise TableFormatError(f"{name}: duplicate class names")
        self._conj_rows: dict[int, tuple[Value, ...]] = {}
        self._rational: dict[int, bool] = {}
        self._factor_cache: dict[tuple[int, int], tuple[int, ...] | None] = {}

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.classes)

    def class_index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{self.name}: no class named {label!r}") from None

    def class_name(self, c: int) -> str:
        return self.classes[c].name

    def classes_of_order(self, o: int) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.classes) if c.order == o)

    def conj_row(self, i: int) -> tuple[Value, ...]:
        row = self._conj_rows.get(i)
        if row is None:
            row = tuple(conj(v) for v in self.irreducibles[i])
            self._conj_rows[i] = row
        return row

    # -- power maps ---------------------------------------------------------

    def power_class(self, c: int, k: int) -> int:
        """Class index of g^k for g in class c.

        k is reduced mod the element order and then factored over the primes
        whose maps are stored; since g^k = g^(k + j*o), any congruent
        representative with stored prime factors serves.  Raises
        DataIncompleteError when no representative is expressible.
        """
        if k < 0:
            raise ValueError("negative powers not supported; use k mod order")
        o = self.classes[c].order
        k %= o
        if k == 0:
            return 0
        if k == 1:
            return c
        for p in self._stored_factorization(o, k):
            c = self.power_maps[p][c]
        return c

    def _stored_factorization(self, o: int, k: int) -> tuple[int, ...]:
        key = (o, k)
        cached = self._factor_cache.get(key)
        if cached is None and key not in self._factor_cache:
            cached = self._try_factor_over_stored(o, k)
            self._factor_cache[key] = cached
        if cached is None:
            raise DataIncompleteError(
                f"{self.name}: no stored power maps express k={k} mod {o}"
            )
        return cached

    def _try_factor_over_stored(self, o: int, k: int) -> tuple[int, ...] | None:
        stored = sorted(self.power_maps)
        for j in range(500):
            m = k + j * o
            factors = []
            for p in stored:
                while m % p == 0:
                    m //= p
                    factors.append(p)
            if m == 1:
                return tuple(factors)
        return None

    def is_rational_class(self, c: int) -> bool:
        """True iff the class is fixed by g -> g^k for all k coprime to o(g).

        Exponents the stored maps cannot express are decided through the
        equivalent criterion that every character value on a rational class
        is rational (an irrational value is moved by some Galois power).
        """
        cached = self._rational.get(c)
        if cached is None:
            o = self.classes[c].order
            cached = True
            incomplete = False
            for k in range(2, o):
                if gcd(k, o) != 1:
                    continue
                try:
                    if self.power_class(c, k) != c:
                        cached = False
                        break
                except DataIncompleteError:
                    incomplete = True
            if cached and incomplete:
                cached = all(
                    isinstance(row[c], int) for row in self.irreducibles
                )
            self._rational[c] = cached
        return cached

    # -- serialization ------------------------------------------------------

    @classmethod
    def from_json(cls, obj: dict) -> "CharacterTable":
        try:
            classes = [
                ClassInfo(
                    name=c["name"],
                    order=int(c["order"]),
                    size=int(c["size"]),
                    centralizer=int(c["centralizer"]),
                )
                for c in obj["classes"]
            ]
            irr = [[value_from_json(v) for v in row] for row in obj["irreducibles"]]
            return cls(
                name=obj["name"],
                order=int(obj["order"]),
                classes=classes,
                power_maps={int(p): list(m) for p, m in obj["powermaps"].items()},
                irreducibles=irr,
                distinguished=obj.get("distinguished"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, TableFormatError):
                raise
            raise TableFormatError(f"bad table JSON: {exc}") from exc

    @classmethod
    def from_path(cls, path) -> "CharacterTable":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "order": str(self.order),
            "classes": [
                {
                    "name": c.name,
                    "order": c.order,
                    "size": str(c.size),
                    "centralizer": str(c.centralizer),
                }
                for c in self.classes
            ],
            "powermaps": {str(p): list(m) for p, m in sorted(self.power_maps.items())},
            "irreducibles": [
                [value_to_json(v) for v in row] for row in self.irreducibles
            ],
        }
        if self.distinguished is not None:
            out["distinguished"] = self.distinguished
        return out

    def __repr__(self) -> str:
        return f"CharacterTable({self.name!r}, {len(self)} classes)"


# ----------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    table: str
    failures: list[tuple[str, str]]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        if self.ok:
            return f"{self.table}: all checks passed"
        lines = [f"{self.table}: {len(self.failures)} check(s) failed"]
        lines += [f"  [{check}] {detail}" for check, detail in self.failures]
        return "\n".join(lines)


def validate(t: CharacterTable) -> ValidationReport:
    """Check every table invariant; report each failure with indices.
    The report is cached on the (immutable) table."""
    cached = getattr(t, "_validation_report", None)
    if cached is not None:
        return cached
    fails: list[tuple[str, str]] = []
    n = len(t)

    if t.classes[0].order != 1 or t.classes[0].size != 1:
        fails.append(("identity-class", "classes[0] is not the identity class"))
    if any(v != 1 for v in t.irreducibles[0]):
        fails.append(("trivial-character", "irreducibles[0] is not all-ones"))

    for i, c in enumerate(t.classes):
        if c.size * c.centralizer != t.order:
            fails.append(
                ("class-counting", f"class {i} ({c.name}): size*centralizer != order")
            )
        if c.order <= 0 or t.order % c.order:
            fails.append(
                ("element-order", f"class {i} ({c.name}): order {c.order} invalid")
            )

    for p in prime_factors(t.order):
        if p not in t.power_maps:
            fails.append(("power-map-present", f"no power map for prime {p}"))
    for p, pm in t.power_maps.items():
        same_order_images = {}
        for c in range(n):
            oc = t.classes[c].order
            oi = t.classes[pm[c]].order
            if oc % p == 0:
                expect = oc // p
            else:
                expect = oc
            if oi != expect:
                fails.append(
                    (
                        "power-map-order",
                        f"p={p}: class {c} ({t.classes[c].name}) maps to "
                        f"{t.classes[pm[c]].name} of order {oi}, expected {expect}",
                    )
                )
            if oc % p:
                same_order_images.setdefault(oc, set())
                if pm[c] in same_order_images[oc]:
                    fails.append(
                        ("power-map-permutation",
                         f"p={p}: classes of order {oc} not permuted injectively")
                    )
                same_order_images[oc].add(pm[c])

    sizes = [c.size for c in t.classes]
    for i in range(n):
        row_i = t.irreducibles[i]
        for j in range(i + 1):
            conj_j = t.conj_row(j)
            s: Value = 0
            for c in range(n):
                s = s + sizes[c] * (row_i[c] * conj_j[c])
            expect = t.order if i == j else 0
            if s != expect:
                fails.append(
                    ("row-orthogonality", f"<chi_{i}, chi_{j}> * |G| = {s!r}")
                )

    cols = [[t.irreducibles[i][c] for i in range(n)] for c in range(n)]
    conj_cols = [[conj(v) for v in col] for col in cols]
    for c in range(n):
        col_c = cols[c]
        for d in range(c + 1):
            cc_d = conj_cols[d]
            s = 0
            for i in range(n):
                s = s + col_c[i] * cc_d[i]
            expect = t.classes[c].centralizer if c == d else 0
            if s != expect:
                fails.append(
                    (
                        "column-orthogonality",
                        f"columns {c} ({t.classes[c].name}), {d} "
                        f"({t.classes[d].name}): sum = {s!r}",
                    )
                )

    if t.distinguished is not None:
        deg = t.irreducibles[t.distinguished][0]
        if not isinstance(deg, int) or deg <= 0:
            fails.append(("distinguished", "distinguished character has bad degree"))

    report = ValidationReport(t.name, fails)
    t._validation_report = report
    return report


# ----------------------------------------------------------------------
# scalar products


def scalar_product_numerator(
    t: CharacterTable, theta: Sequence[Value], psi: Sequence[Value]
) -> Value:
    """|G| * <theta, psi> as an exact value (no division)."""
    s: Value = 0
    for c in range(len(t)):
        s = s + t.classes[c].size * (theta[c] * conj(psi[c]))
    return s


def scalar_product(
    t: CharacterTable, theta: Sequence[Value], psi: int | Sequence[Value]
) -> Value:
    """<theta, psi> = (1/|G|) sum size(c) theta(c) conj(psi(c)), exactly.

    psi may be an irreducible index or an explicit value sequence.  Raises
    InexactScalarProduct when the division is not exact (theta was not a
    virtual character over this table).
    """
    if len(theta) != len(t):
        raise TableFormatError(
            f"class function has length {len(theta)}, table has {len(t)} classes"
        )
    psi_row = t.irreducibles[psi] if isinstance(psi, int) else psi
    num = scalar_product_numerator(t, theta, psi_row)
    try:
        return divide_exact(num, t.order)
    except ArithmeticError as exc:
        raise InexactScalarProduct(str(exc)) from exc
