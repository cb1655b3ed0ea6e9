"""Brute-force permutation-group engine.

Desk-scale models of the subgroups under study, full element enumeration,
conjugacy classes, relator checking, and the independent fusion oracle.
Permutations act on the right (i^(p*q) = (i^p)^q); internally elements are
stored as bytes of images, which keeps the hash-set closure over a couple
of million elements affordable in pure Python.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class ResourceLimit(RuntimeError):
    """Enumeration bound exceeded."""


class WordSyntaxError(ValueError):
    """Malformed relator word."""


# ----------------------------------------------------------------------
# permutations


class Permutation:
    """A permutation of {0, ..., n-1}, given by its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("not a permutation of 0..n-1")
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for i, pt in enumerate(cyc):
                images[pt] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        # apply self first, then other
        o = other.images
        return Permutation(o[i] for i in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate_by(self, g: "Permutation") -> "Permutation":
        return g.inverse() * self * g

    def order(self) -> int:
        n = 1
        for cyc in self.cycles():
            n = n * len(cyc) // gcd(n, len(cyc))
        return n

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                seen.add(i)
                continue
            cyc = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            seen.add(i)
            out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


def _compose_bytes(p: bytes, q: bytes) -> bytes:
    # apply p first, then q
    return bytes(map(q.__getitem__, p))


def _invert_bytes(p: bytes) -> bytes:
    inv = bytearray(len(p))
    for i, j in enumerate(p):
        inv[j] = i
    return bytes(inv)


# ----------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class ConjClass:
    rep: Permutation
    size: int
    order: int


class PermGroup:
    """A finite permutation group given by generators, enumerated on demand."""

    def __init__(self, degree: int, gens: Sequence[Permutation], name: str = ""):
        if any(g.degree != degree for g in gens):
            raise ValueError("generator degree mismatch")
        self.degree = degree
        self.gens = tuple(gens)
        self.name = name or f"group on {degree} points"
        self._elements: set[bytes] | None = None
        self._classes: tuple[ConjClass, ...] | None = None
        self._class_of: dict[bytes, int] | None = None

    # -- enumeration --------------------------------------------------------

    def enumerate(self, bound: int = 10_000_000) -> int:
        """Full element enumeration by hash-set closure; returns |G|."""
        if self._elements is None:
            gens_b = [bytes(g.images) for g in self.gens]
            identity = bytes(range(self.degree))
            seen = {identity}
            frontier = [identity]
            while frontier:
                new = []
                for x in frontier:
                    for g in gens_b:
                        y = bytes(map(g.__getitem__, x))
                        if y not in seen:
                            seen.add(y)
                            new.append(y)
                if len(seen) > bound:
                    raise ResourceLimit(
                        f"{self.name}: enumeration exceeded bound {bound}"
                    )
                frontier = new
            self._elements = seen
        return len(self._elements)

    @property
    def order(self) -> int:
        return self.enumerate()

    def elements_bytes(self) -> set[bytes]:
        self.enumerate()
        return self._elements

    def __contains__(self, g: Permutation) -> bool:
        self.enumerate()
        return bytes(g.images) in self._elements

    # -- conjugacy classes ----------------------------------------------------

    def conjugacy_classes(self) -> tuple[ConjClass, ...]:
        """Orbits of the conjugation action, in a deterministic order."""
        if self._classes is None:
            self.enumerate()
            gens_b = [bytes(g.images) for g in self.gens]
            gen_pairs = [(_invert_bytes(g), g) for g in gens_b]
            class_of: dict[bytes, int] = {}
            classes: list[ConjClass] = []
            for rep in sorted(self._elements):
                if rep in class_of:
                    continue
                cid = len(classes)
                orbit = [rep]
                class_of[rep] = cid
                i = 0
                while i < len(orbit):
                    x = orbit[i]
                    i += 1
                    for ginv, g in gen_pairs:
                        y = bytes(map(g.__getitem__, map(x.__getitem__, ginv)))
                        if y not in class_of:
                            class_of[y] = cid
                            orbit.append(y)
                perm = Permutation(rep)
                classes.append(ConjClass(perm, len(orbit), perm.order()))
            # canonical order: identity first, then by (element order, size, rep)
            idx = sorted(
                range(len(classes)),
                key=lambda c: (classes[c].order != 1, classes[c].order,
                               classes[c].size, classes[c].rep.images),
            )
            renumber = {old: new for new, old in enumerate(idx)}
            self._classes = tuple(classes[old] for old in idx)
            self._class_of = {k: renumber[v] for k, v in class_of.items()}
        return self._classes

    def class_of(self, g: Permutation) -> int:
        self.conjugacy_classes()
        try:
            return self._class_of[bytes(g.images)]
        except KeyError:
            raise ValueError("element does not belong to the group") from None

    def class_lookup(self) -> dict[bytes, int]:
        """Image-bytes to class-index map, for bulk membership queries."""
        self.conjugacy_classes()
        return self._class_of

    def class_power_map(self, k: int) -> tuple[int, ...]:
        """Class index of rep^k per class."""
        classes = self.conjugacy_classes()
        return tuple(self.class_of(c.rep ** k) for c in classes)

    def class_multiset(self) -> tuple[tuple[int, int], ...]:
        """Sorted (element order, class size) pairs, for table comparison."""
        return tuple(sorted((c.order, c.size) for c in self.conjugacy_classes()))

    def centralizer_order(self, cid: int) -> int:
        return self.order // self.conjugacy_classes()[cid].size

    def __repr__(self) -> str:
        return f"PermGroup({self.name!r}, degree {self.degree})"


# ----------------------------------------------------------------------
# relator words

_LOWER = "abcdefghijklmnopqrstuvwxyz"


def parse_word(word: str, ngens: int) -> tuple[int, ...]:
    """Parse a relator word like "(b2ab6a)3" or "(ab)3A2" into generator
    indices; lowercase letters are generators a, b, c, ..., uppercase their
    inverses (encoded as ~index), digits repeat the preceding letter or
    parenthesized group."""
    def parse_seq(pos: int, depth: int) -> tuple[list[int], int]:
        out: list[int] = []
        while pos < len(word):
            ch = word[pos]
            if ch == ")":
                if depth == 0:
                    raise WordSyntaxError(f"unmatched ')' at {pos} in {word!r}")
                return out, pos
            if ch == "(":
                unit, pos = parse_seq(pos + 1, depth + 1)
                if pos >= len(word) or word[pos] != ")":
                    raise WordSyntaxError(f"unclosed '(' in {word!r}")
                pos += 1
            elif ch.isalpha():
                low = ch.lower()
                idx = _LOWER.index(low)
                if idx >= ngens:
                    raise WordSyntaxError(
                        f"letter {ch!r} needs generator {idx}, only {ngens} given"
                    )
                unit = [~idx] if ch.isupper() else [idx]
                pos += 1
            else:
                raise WordSyntaxError(f"unexpected {ch!r} at {pos} in {word!r}")
            count = 0
            while pos < len(word) and word[pos].isdigit():
                count = count * 10 + int(word[pos])
                pos += 1
            out.extend(unit * (count if count else 1))
        return out, pos

    seq, pos = parse_seq(0, 0)
    if pos != len(word):
        raise WordSyntaxError(f"trailing input at {pos} in {word!r}")
    if not seq:
        raise WordSyntaxError("empty word")
    return tuple(seq)


def evaluate_word(gens: Sequence[Permutation], word: str | Sequence[int]) -> Permutation:
    if isinstance(word, str):
        word = parse_word(word, len(gens))
    result = Permutation.identity(gens[0].degree)
    for idx in word:
        g = gens[~idx].inverse() if idx < 0 else gens[idx]
        result = result * g
    return result


@dataclass
class RelatorReport:
    ok: bool
    failed_index: int | None = None
    failed_relator: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_relators(gens: Sequence[Permutation], relators: Sequence[str]) -> RelatorReport:
    """True iff every relator word evaluates to the identity permutation."""
    for i, rel in enumerate(relators):
        if not evaluate_word(gens, rel).is_identity():
            return RelatorReport(False, i, rel)
    return RelatorReport(True)


def find_presentation_pair(
    group: PermGroup, relators: Sequence[str], order_a: int, gen_b: Permutation
) -> Permutation | None:
    """Smallest element a of the given order such that (a, gen_b) satisfies
    the relators, or None."""
    group.enumerate()
    for eb in sorted(group.elements_bytes()):
        a = Permutation(eb)
        if a.is_identity() or a.order() != order_a:
            continue
        if check_relators([a, gen_b], relators).ok:
            return a
    return None


# ----------------------------------------------------------------------
# model constructions


def build_affine(p: int, matrix_gens: Sequence[Sequence[Sequence[int]]],
                 name: str = "") -> PermGroup:
    """Permutation group on the p^2 points of GF(p)^2: the two unit
    translations plus the given invertible linear maps."""
    def point(x, y):
        return x + p * y

    # point i = x + p*y
    perms = [
        Permutation([point((i % p + dx) % p, (i // p + dy) % p) for i in range(p * p)])
        for (dx, dy) in ((1, 0), (0, 1))
    ]
    for m in matrix_gens:
        (a, b), (c, d) = m
        if (a * d - b * c) % p == 0:
            raise ValueError(f"singular matrix {m} mod {p}")
        images = []
        for i in range(p * p):
            x, y = i % p, i // p
            images.append(point((a * x + b * y) % p, (c * x + d * y) % p))
        perms.append(Permutation(images))
    return PermGroup(p * p, perms, name or f"affine {p}^2 model")


def build_projective(q: int, with_pgl: bool, name: str = "") -> PermGroup:
    """Moebius action on the q+1 points of the projective line over GF(q):
    PSL_2(q), or PGL_2(q) when with_pgl is set.  Points 0..q-1 are the field
    elements, point q is infinity."""
    if q > 23:
        raise ValueError("projective models are supported for primes q <= 23")
    inf = q
    t = Permutation([(x + 1) % q for x in range(q)] + [inf])   # x -> x+1
    s_images = [inf if x == 0 else (-pow(x, q - 2, q)) % q for x in range(q)]
    s = Permutation(s_images + [0])                            # x -> -1/x
    gens = [t, s]
    if with_pgl:
        nu = next(n for n in range(2, q) if pow(n, (q - 1) // 2, q) == q - 1)
        gens.append(Permutation([(nu * x) % q for x in range(q)] + [inf]))
    kind = "PGL" if with_pgl else "PSL"
    return PermGroup(q + 1, gens, name or f"{kind}(2,{q}) model")


def symmetric_group(n: int, degree: int | None = None) -> PermGroup:
    degree = degree or n
    gens = [
        Permutation.from_cycles(degree, [(0, 1)]),
        Permutation.from_cycles(degree, [tuple(range(n))]),
    ]
    return PermGroup(degree, gens, f"S{n} model")


def alternating_group(n: int, degree: int | None = None) -> PermGroup:
    degree = degree or n
    if n % 2:
        gens = [
            Permutation.from_cycles(degree, [(0, 1, 2)]),
            Permutation.from_cycles(degree, [tuple(range(n))]),
        ]
    else:
        gens = [
            Permutation.from_cycles(degree, [(0, 1, 2)]),
            Permutation.from_cycles(degree, [(0, 1), tuple(range(2, n))]),
        ]
    return PermGroup(degree, gens, f"A{n} model")


def _find_outer_involution(q: int) -> Permutation:
    """Deterministic smallest involution of PGL_2(q) outside PSL_2(q)."""
    psl = build_projective(q, False)
    pgl = build_projective(q, True)
    psl_els = psl.elements_bytes()
    pgl.enumerate()
    for b in sorted(pgl.elements_bytes()):
        if b in psl_els:
            continue
        p = Permutation(b)
        if not p.is_identity() and (p * p).is_identity():
            return p
    raise RuntimeError(f"no outer involution found in PGL(2,{q})")


def model_l2_11_sq_4() -> PermGroup:
    """Product action of PSL_2(11) x PSL_2(11) on 12+12 points, extended by
    an order-4 permutation swapping the blocks; the square of the extension
    induces the same outer automorphism on both factors."""
    psl = build_projective(11, False)
    delta = _find_outer_involution(11)
    n = 12

    def on_block1(p: Permutation) -> Permutation:
        return Permutation(list(p.images) + list(range(n, 2 * n)))

    a = on_block1(psl.gens[0])
    b = on_block1(psl.gens[1])
    swap = Permutation(
        [u + n for u in range(n)] + [delta.images[w] for w in range(n)]
    )
    return PermGroup(2 * n, [a, b, swap], "(L2(11)xL2(11)):4 model")


def _find_sl2_5_pair(p: int = 11) -> list[list[list[int]]]:
    """Deterministic generating pair for an SL_2(5) subgroup of SL_2(p):
    a fixed diagonal element of order 5 plus the first traceless det-1
    matrix extending it to a group of order 120."""
    lam = next(x for x in range(2, p) if pow(x, 5, p) == 1 and x != 1)
    x0 = ((lam, 0), (0, pow(lam, p - 2, p)))

    def closure(mats, bound=200):
        seen = set(mats)
        frontier = list(mats)
        while frontier and len(seen) <= bound:
            new = []
            for m in frontier:
                for g in mats:
                    prod = (
                        ((m[0][0] * g[0][0] + m[0][1] * g[1][0]) % p,
                         (m[0][0] * g[0][1] + m[0][1] * g[1][1]) % p),
                        ((m[1][0] * g[0][0] + m[1][1] * g[1][0]) % p,
                         (m[1][0] * g[0][1] + m[1][1] * g[1][1]) % p),
                    )
                    if prod not in seen:
                        seen.add(prod)
                        new.append(prod)
            frontier = new
        return seen

    for a in range(p):
        for b in range(p):
            for c in range(p):
                # trace 0, det 1: d = -a, -a^2 - bc = 1
                d = (-a) % p
                if (a * d - b * c) % p != 1:
                    continue
                y = ((a, b), (c, d))
                grp = closure([x0, y])
                if len(grp) == 120:
                    return [[list(x0[0]), list(x0[1])], [[a, b], [c, d]]]
    raise RuntimeError(f"no SL_2(5) pair found in SL_2({p})")


def model_11sq_5x2a5() -> PermGroup:
    """Affine model of 11^2:(5 x 2A5) on 121 points: translations, a scalar
    of order 5, and an SL_2(5) subgroup of SL_2(11)."""
    lam = next(x for x in range(2, 11) if pow(x, 5, 11) == 1)
    scalar = [[lam, 0], [0, lam]]
    m1, m2 = _find_sl2_5_pair(11)
    g = build_affine(11, [scalar, m1, m2], "11^2:(5x2A5) model")
    return g


def model_7sq_sl2_7() -> PermGroup:
    """Affine model of 7^2:SL_2(7) on 49 points."""
    return build_affine(7, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]],
                        "7^2:SL2(7) model")


def model_l2_19_2() -> PermGroup:
    """PGL_2(19) = PSL_2(19).2 on the 20 points of the projective line."""
    return build_projective(19, True, "L2(19).2 model")


def translation_subgroup_gens(p: int) -> list[Permutation]:
    """Generators of the translation subgroup of an affine p^2 model."""
    return list(build_affine(p, []).gens)


# ----------------------------------------------------------------------
# fusion oracle


def fusion_oracle(amb: PermGroup, sub: PermGroup) -> tuple[int, ...]:
    """For each conjugacy class of sub, the index of the amb class containing
    it, by direct membership in the enumerated ambient classes."""
    if sub.degree != amb.degree:
        raise ValueError("subgroup model must act on the same points")
    amb.enumerate()
    for g in sub.gens:
        if g not in amb:
            raise ValueError("subgroup generators do not lie in the group")
    return tuple(amb.class_of(c.rep) for c in sub.conjugacy_classes())


# ----------------------------------------------------------------------
# matching model classes against table classes


@dataclass
class ClassMatching:
    """Partition cells pairing model class ids with table class indices that
    share the canonical (order, size, power-map) fingerprint.  Cells with
    more than one member are genuinely ambiguous (table automorphisms) and
    are reported, never resolved by guessing."""

    cells: list[tuple[tuple[int, ...], tuple[int, ...]]]

    @property
    def ambiguous_cells(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [cell for cell in self.cells if len(cell[0]) > 1]

    def table_candidates(self, model_cid: int) -> tuple[int, ...]:
        for model_ids, table_ids in self.cells:
            if model_cid in model_ids:
                return table_ids
        raise KeyError(model_cid)


def match_classes(group: PermGroup, table) -> ClassMatching:
    """Iteratively refine the joint partition of model and table classes by
    (element order, class size) and prime power-map fingerprints."""
    classes = group.conjugacy_classes()
    nm, nt = len(classes), len(table)
    if nm != nt:
        raise ValueError(
            f"{group.name}: {nm} classes vs table {table.name}: {nt}"
        )
    if group.order != table.order:
        raise ValueError(f"{group.name}: order {group.order} vs table {table.order}")
    primes = sorted(table.power_maps)
    model_pm = {p: group.class_power_map(p) for p in primes}
    table_pm = {p: table.power_maps[p] for p in primes}

    def joint_rank(lm, lt):
        ranking = {v: r for r, v in enumerate(sorted(set(lm) | set(lt)))}
        return [ranking[v] for v in lm], [ranking[v] for v in lt]

    labels_m, labels_t = joint_rank(
        [(classes[i].order, classes[i].size) for i in range(nm)],
        [(table.classes[j].order, table.classes[j].size) for j in range(nt)],
    )
    while True:
        count = len(set(labels_m) | set(labels_t))
        labels_m, labels_t = joint_rank(
            [(labels_m[i],) + tuple(labels_m[model_pm[p][i]] for p in primes)
             for i in range(nm)],
            [(labels_t[j],) + tuple(labels_t[table_pm[p][j]] for p in primes)
             for j in range(nt)],
        )
        if len(set(labels_m) | set(labels_t)) == count:
            break

    cells = []
    for lab in sorted(set(labels_m) | set(labels_t)):
        m_ids = tuple(i for i in range(nm) if labels_m[i] == lab)
        t_ids = tuple(j for j in range(nt) if labels_t[j] == lab)
        if len(m_ids) != len(t_ids):
            raise ValueError(
                f"{group.name} vs {table.name}: fingerprint cell mismatch "
                f"({len(m_ids)} model classes vs {len(t_ids)} table classes)"
            )
        cells.append((m_ids, t_ids))
    return ClassMatching(cells)


def oracle_contained(
    sub_model: PermGroup,
    amb_model: PermGroup,
    sub_table,
    amb_table,
    result_maps,
) -> bool:
    """Whether the model-level oracle fusion appears in a set of table-level
    fusion maps, modulo the canonical class matching on both sides.

    For each candidate map, searches for a cell-respecting alignment of
    model classes to table classes under which the map realizes the oracle:
    the induced correspondence of ambient model classes to ambient table
    classes must be single-valued, cell-respecting, and injective.
    """
    fo = fusion_oracle(amb_model, sub_model)
    sub_match = match_classes(sub_model, sub_table)
    amb_match = match_classes(amb_model, amb_table)
    amb_cell_of = {}
    for m_ids, t_ids in amb_match.cells:
        for m in m_ids:
            amb_cell_of[m] = set(t_ids)

    n = len(sub_table)
    order = [(m, t_ids) for m_ids, t_ids in sub_match.cells for m in m_ids]

    def realizes(images) -> bool:
        used = [False] * n
        g: dict[int, int] = {}
        taken: set[int] = set()

        def place(k: int) -> bool:
            if k == len(order):
                return True
            m, t_options = order[k]
            target = fo[m]
            t_cell = amb_cell_of[target]
            prev = g.get(target)
            for t in t_options:
                if used[t]:
                    continue
                img = images[t]
                if img not in t_cell:
                    continue
                if prev is not None:
                    if prev != img:
                        continue
                elif img in taken:
                    continue
                used[t] = True
                if prev is None:
                    g[target] = img
                    taken.add(img)
                if place(k + 1):
                    return True
                used[t] = False
                if prev is None:
                    del g[target]
                    taken.discard(img)
            return False

        return place(0)

    return any(
        realizes(m.images if hasattr(m, "images") else tuple(m))
        for m in result_maps
    )
