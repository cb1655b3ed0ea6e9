"""Identification facts and deduction engines.

A fact records what was measured about one concrete element of the ambient
group: its order, optionally the value of the distinguished character on
it, and power constraints ("its 10th power lies in 2B").  identify_class
turns a fact into the set of ambient classes it pins down; apply_facts
filters fusion candidates with it; closure_deduction derives the full set
of ambient classes a subgroup meets from a few identified seed classes and
the subgroup's element-order spectrum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .chartab import CharacterTable
from .cyclo import Value, value_from_json, value_to_json
from .fusion import FusionMap


class InconsistentFact(ValueError):
    """A fact matches no ambient class, or contradicts every candidate map."""


@dataclass(frozen=True)
class FusionFact:
    """One identification statement about a named element.

    powers lists (k, ambient class label) pairs meaning the element's k-th
    power lies in that class.  subgroup_class (with subgroup naming the
    table it refers to) ties the element to a subgroup class so the fact
    can filter fusion maps.  source records provenance ("reference" for the
    shipped file, "bridge" for regenerated facts).
    """

    label: str
    order: int
    chi: Value | None = None
    powers: tuple[tuple[int, str], ...] = ()
    subgroup_class: str | None = None
    subgroup: str | None = None
    source: str = "reference"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "order": self.order,
            "chi": None if self.chi is None else value_to_json(self.chi),
            "powers": [[k, lbl] for k, lbl in self.powers],
            "class": self.subgroup_class,
            "sub": self.subgroup,
            "source": self.source,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FusionFact":
        chi = obj.get("chi")
        return cls(
            label=obj["label"],
            order=int(obj["order"]),
            chi=None if chi is None else value_from_json(chi),
            powers=tuple((int(k), lbl) for k, lbl in obj.get("powers", ())),
            subgroup_class=obj.get("class"),
            subgroup=obj.get("sub"),
            source=obj.get("source", "reference"),
        )


def load_facts(path) -> list[FusionFact]:
    with open(path, "r", encoding="utf-8") as fh:
        return [FusionFact.from_json(o) for o in json.load(fh)]


def facts_to_json(facts: Iterable[FusionFact]) -> list[dict]:
    return [f.to_json() for f in facts]


# ----------------------------------------------------------------------
# identification


def identify_class(amb: CharacterTable, fact: FusionFact) -> tuple[int, ...]:
    """All ambient classes matching the fact's element order, distinguished
    character value (when present), and every power constraint."""
    matches = list(amb.classes_of_order(fact.order))
    if fact.chi is not None:
        if amb.distinguished is None:
            raise InconsistentFact(
                f"{amb.name}: no distinguished character to compare chi against"
            )
        row = amb.irreducibles[amb.distinguished]
        matches = [c for c in matches if row[c] == fact.chi]
    for k, lbl in fact.powers:
        target = amb.class_index(lbl)
        matches = [c for c in matches if amb.power_class(c, k) == target]
    if not matches:
        raise InconsistentFact(f"fact {fact.label!r} matches no class of {amb.name}")
    return tuple(matches)


def apply_facts(
    maps: Sequence[FusionMap],
    sub: CharacterTable,
    amb: CharacterTable,
    facts: Sequence[FusionFact],
) -> tuple[FusionMap, ...]:
    """Retain only maps sending each fact's subgroup class into the fact's
    identified ambient class set.  Facts without a subgroup class, or tied
    to a different subgroup table, are ignored."""
    surviving = list(maps)
    for fact in facts:
        if fact.subgroup_class is None:
            continue
        if fact.subgroup is not None and fact.subgroup != sub.name:
            continue
        c = sub.class_index(fact.subgroup_class)
        allowed = set(identify_class(amb, fact))
        surviving = [m for m in surviving if m[c] in allowed]
        if not surviving:
            raise InconsistentFact(
                f"fact {fact.label!r} contradicts every candidate fusion map"
            )
    return tuple(surviving)


def expand_by_rationality(
    sub: CharacterTable, amb: CharacterTable, fact: FusionFact
) -> tuple[FusionFact, ...]:
    """Extend a fact pinned to a rational singleton class to the other
    subgroup classes generating the same cyclic subgroups: when the ambient
    target class is rational, one element per cyclic subgroup determines
    the class of all its generators."""
    if fact.subgroup_class is None:
        return (fact,)
    targets = identify_class(amb, fact)
    if len(targets) != 1 or not amb.is_rational_class(targets[0]):
        return (fact,)
    from .chartab import DataIncompleteError

    c = sub.class_index(fact.subgroup_class)
    o = sub.classes[c].order
    out = [fact]
    seen = {c}
    for k in range(2, o):
        if not _coprime(k, o):
            continue
        try:
            ck = sub.power_class(c, k)
        except DataIncompleteError:
            continue  # exponent not expressible from the stored maps
        if ck not in seen:
            seen.add(ck)
            out.append(
                replace(
                    fact,
                    label=f"{fact.label}^{k}",
                    subgroup_class=sub.class_name(ck),
                )
            )
    return tuple(out)


def _coprime(a: int, b: int) -> bool:
    while b:
        a, b = b, a % b
    return a == 1


# ----------------------------------------------------------------------
# power-map closure deduction


@dataclass(frozen=True)
class ClassSetConclusion:
    """The ambient classes a subgroup meets non-trivially, plus any element
    orders whose class could not be pinned down (never guessed)."""

    classes: frozenset[int]
    unresolved: tuple[tuple[int, tuple[int, ...]], ...] = ()

    def labels(self, amb: CharacterTable) -> tuple[str, ...]:
        return tuple(sorted(
            (amb.class_name(c) for c in self.classes),
            key=lambda s: (amb.classes[amb.class_index(s)].order, s),
        ))

    @property
    def resolved(self) -> bool:
        return not self.unresolved


def closure_deduction(
    amb: CharacterTable,
    seeds: Iterable[int | str],
    orders: Iterable[int],
) -> ClassSetConclusion:
    """Deduce the ambient classes met by a subgroup whose element-order
    spectrum is `orders`, starting from identified seed classes.

    Downward, the met set is closed under all prime power maps (a power of
    a subgroup element is a subgroup element).  Upward, for each order o in
    the spectrum not yet represented, the candidates are the ambient
    classes of order o all of whose prime-power images are already met
    ("the only elements of order 8 that square to the met order-4 class
    are those in ..."); a unique candidate is adopted, anything else is
    reported as unresolved.
    """
    met: set[int] = {0}
    for s in seeds:
        met.add(amb.class_index(s) if isinstance(s, str) else s)

    def close_down() -> None:
        frontier = list(met)
        while frontier:
            c = frontier.pop()
            for p, pm in amb.power_maps.items():
                if amb.classes[c].order % p == 0:
                    img = pm[c]
                    if img not in met:
                        met.add(img)
                        frontier.append(img)

    close_down()
    unresolved: list[tuple[int, tuple[int, ...]]] = []
    for o in sorted(set(orders)):
        if any(amb.classes[c].order == o for c in met):
            continue
        candidates = []
        for x in amb.classes_of_order(o):
            good = True
            for p in amb.power_maps:
                if o % p == 0 and amb.power_maps[p][x] not in met:
                    good = False
                    break
            if good:
                candidates.append(x)
        if len(candidates) == 1:
            met.add(candidates[0])
            close_down()
        else:
            unresolved.append((o, tuple(candidates)))
    return ClassSetConclusion(frozenset(met), tuple(unresolved))


# ----------------------------------------------------------------------
# field-level diff between two facts files


def facts_diff(
    reference: Sequence[FusionFact], other: Sequence[FusionFact]
) -> list[str]:
    """Field-level differences, ignoring provenance (source).  Facts are
    paired by label; an empty list means the files agree."""
    diffs: list[str] = []
    ref_by = {f.label: f for f in reference}
    oth_by = {f.label: f for f in other}
    for label in sorted(ref_by.keys() | oth_by.keys()):
        a, b = ref_by.get(label), oth_by.get(label)
        if a is None:
            diffs.append(f"{label}: absent from reference file")
            continue
        if b is None:
            diffs.append(f"{label}: absent from other file")
            continue
        for fieldname in ("order", "chi", "powers", "subgroup_class", "subgroup"):
            va, vb = getattr(a, fieldname), getattr(b, fieldname)
            if va != vb:
                diffs.append(f"{label}: {fieldname} differs ({va!r} vs {vb!r})")
    return diffs
