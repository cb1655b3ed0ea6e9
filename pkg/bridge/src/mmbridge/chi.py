"""Character evaluation on arbitrary Monster elements.

chi_G_x0 only applies inside the distinguished involution centralizer G,
so an element is first moved into G: directly when it already lies there,
by a listed conjugator when one is scripted, or -- for elements of even
order powering to a 2B involution -- by the standardizing conjugator
returned by conjugate_involution (the element centralizes its own power,
so the conjugate lands in G).  Every evaluation records the route taken.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class ChiUncomputable(RuntimeError):
    """No scripted strategy moved the element into the centralizer."""


@dataclass
class ChiResult:
    value: int
    route: str                     # direct | listed-conjugator | involution
    conjugator: str | None = None  # word of the conjugating element
    involution_type: int | None = None
    checks: list[str] = field(default_factory=list)


def _in_g(g) -> bool:
    # in_G_x0 returns a false value for elements outside the centralizer
    return bool(g.in_G_x0())


def _chi(g) -> int:
    return int(g.chi_G_x0()[0])


def involution_class(t) -> tuple[str, object]:
    """Class label of an involution ("2A"/"2B") and the standardizing
    conjugator returned alongside it."""
    itype, c = t.conjugate_involution()
    return ("2A" if itype == 1 else "2B"), c


def compute_chi(g, conjugator=None) -> ChiResult:
    if _in_g(g):
        return ChiResult(_chi(g), "direct")
    if conjugator is not None:
        moved = g ** conjugator
        if _in_g(moved):
            return ChiResult(
                _chi(moved), "listed-conjugator", conjugator=str(conjugator)
            )
    order = g.order()
    if order % 2 == 0:
        t = g ** (order // 2)
        label, c = involution_class(t)
        if label == "2B":
            moved = g ** c
            result = ChiResult(
                _chi(moved), "involution", conjugator=str(c), involution_type=2
            )
            result.checks.append(f"power {order // 2} lies in 2B")
            return result
        raise ChiUncomputable(
            "element powers to a 2A involution; no scripted route into G"
        )
    raise ChiUncomputable(
        "odd order, not in G, and no listed conjugator provided"
    )
