"""Element-level checks behind each subgroup construction.

Each construction has a list of named steps; a step either holds or fails,
and a report collects every outcome.  The checks mirror the documented
computations: orders, relators, commutation, normalization, membership,
involution classes, and the character evaluations that identify classes
(identification itself is delegated to the primary toolkit's endpoint).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chi import compute_chi, involution_class
from .tasks import identify_via_primary
from .words import (
    SECTION_7SQ,
    SECTION_L2_11_SQ,
    SECTION_PGL19,
    SECTION_SYLOW11,
)


@dataclass
class StepResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class LemmaReport:
    construction: str
    steps: list[StepResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps)

    def __str__(self) -> str:
        lines = [f"[{self.construction}]"]
        for s in self.steps:
            mark = "ok" if s.ok else "FAIL"
            lines.append(f"  {mark:4s} {s.name}" + (f" ({s.detail})" if s.detail else ""))
        return "\n".join(lines)


def _key(g) -> str:
    return str(g.reduce())


def _closure(gens, bound=200) -> set[str]:
    from mmgroup import MM

    identity = MM()
    seen = {_key(identity): identity}
    frontier = [identity]
    while frontier and len(seen) <= bound:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                k = _key(y)
                if k not in seen:
                    seen[k] = y
                    new.append(y)
        frontier = new
    return set(seen)


def _cyclic(g) -> set[str]:
    from mmgroup import MM

    out, cur = {_key(MM())}, g
    while _key(cur) not in out:
        out.add(_key(cur))
        cur = cur * g
    return out


def _commute(a, b) -> bool:
    return a * b == b * a


class _Steps:
    def __init__(self, report: LemmaReport):
        self.report = report

    def check(self, name: str, ok: bool, detail: str = "") -> bool:
        self.report.steps.append(StepResult(name, bool(ok), detail))
        return bool(ok)

    def chi_class(self, name: str, element, order: int, expected: str,
                  conjugator=None, extra_powers=()) -> None:
        trace = compute_chi(element, conjugator=conjugator)
        label = identify_via_primary(order, trace.value, extra_powers)
        self.check(
            name, label == expected,
            f"chi = {trace.value} via {trace.route} -> {label}",
        )


def check_l2_11_sq_4(listings) -> LemmaReport:
    from mmgroup import MM

    d = listings[SECTION_L2_11_SQ]
    x2, x11, x4 = d["x2"], d["x11"], d["x4"]
    rep = LemmaReport("l2_11_sq_4")
    s = _Steps(rep)
    one = MM()

    s.check("orders 2, 11, 4",
            x2.order() == 2 and x11.order() == 11 and x4.order() == 4)
    s.check("psl2(11) relators a2=b11=(ba)3=(b2ab6a)3=1",
            x2 ** 2 == one and x11 ** 11 == one
            and (x11 * x2) ** 3 == one
            and (x11 ** 2 * x2 * x11 ** 6 * x2) ** 3 == one)
    s.check("generators lie in the distinguished centralizer",
            bool(x2.in_G_x0()) and bool(x11.in_G_x0()))
    s.check("involution class of x2 is 2A",
            involution_class(x2)[0] == "2A")
    s.chi_class("order-3 elements lie in 3A", x11 * x2, 3, "3A")
    s.chi_class("order-5 elements lie in 5A", x2 * x11 ** 3, 5, "5A")
    conj2, conj11 = x2 ** x4, x11 ** x4
    s.check("factor commutes with its conjugate",
            _commute(x2, conj2) and _commute(x2, conj11)
            and _commute(x11, conj2) and _commute(x11, conj11))
    s.check("conjugate factor is a different factor",
            _key(conj11) not in _cyclic(x11))
    s.check("x4^2 centralizes x2 and inverts x11",
            x2 ** (x4 ** 2) == x2 and x11 ** (x4 ** 2) == x11 ** -1)
    return rep


def check_sylow11(listings) -> LemmaReport:
    d = listings[SECTION_SYLOW11]
    x11, y11, x3, x4, x5 = d["x11"], d["y11"], d["x3"], d["x4"], d["x5"]
    rep = LemmaReport("sylow11")
    s = _Steps(rep)
    from mmgroup import MM

    one = MM()
    s.check("orders 11, 11, 3, 4, 5",
            x11.order() == 11 and y11.order() == 11 and x3.order() == 3
            and x4.order() == 4 and x5.order() == 5)
    s.check("the two order-11 generators commute", _commute(x11, y11))
    s.check("they are not powers of each other",
            _key(y11) not in _cyclic(x11))
    a_set = _closure([x11, y11], bound=130)
    s.check("their span has order 121", len(a_set) == 121)
    s.check("the linear part normalizes the 11^2",
            all(_key(t ** b) in a_set
                for t in (x11, y11) for b in (x3, x4, x5)))
    s.check("x5 is central in the linear part",
            _commute(x5, x3) and _commute(x5, x4))
    x2 = x4 ** 2
    s.check("x2 = x4^2 is a central involution of <x3,x4>",
            x2.order() == 2 and _commute(x2, x3) and _commute(x2, x4))
    # the satisfied triangle presentation mod <x2> is (3,2,5):
    # a^3 = (ab)^5 = 1 exactly and b^2 = x2
    s.check("triangle relators a3=1, b2=x2, (ab)5=1",
            x3 ** 3 == one and x4 ** 2 == x2 and (x3 * x4) ** 5 == one)
    s.check("the 11^2 meets the linear part trivially",
            not (a_set - {_key(one)}) & _closure([x3, x4, x5], bound=700))
    return rep


def check_7sq_sl2_7(listings) -> LemmaReport:
    d = listings[SECTION_7SQ]
    x7, y7, x4, x14 = d["x7"], d["y7"], d["x4"], d["x14"]
    a7, b7, c7, d7, c = d["a7"], d["b7"], d["c7"], d["d7"], d["c"]
    r_el, s_el, t_el = d["r"], d["s"], d["t"]
    rep = LemmaReport("7sq_sl2_7")
    s = _Steps(rep)
    from mmgroup import MM

    one = MM()
    s.check("x7 has order 7 and lies in the centralizer",
            x7.order() == 7 and bool(x7.in_G_x0()))
    s.chi_class("x7 lies in 7B", x7, 7, "7B")
    s.check("a7, b7, c7, d7 centralize x7",
            all(_commute(g, x7) for g in (a7, b7, c7, d7)))
    x7_cyc = _cyclic(x7)
    pairs = [(a7, b7), (a7, c7), (a7, d7), (b7, c7), (b7, d7), (c7, d7)]
    s.check("extension generators commute modulo <x7>",
            all(_key(u ** -1 * v ** -1 * u * v) in x7_cyc for u, v in pairs))
    s.check("a7 and b7 commute and are independent",
            _commute(a7, b7) and _key(b7) not in _cyclic(a7))
    ab_set = _closure([a7, b7], bound=60)
    s.check("x7 lies outside <a7,b7>", _key(x7) not in ab_set)
    big = _closure([x7, a7, b7], bound=400)
    s.check("<x7,a7,b7> is elementary abelian of order 343",
            len(big) == 343)
    cd_set = _closure([c7, d7], bound=60)
    s.check("c7 and d7 commute, <c7,d7> has order 49 and meets "
            "<x7,a7,b7> trivially",
            _commute(c7, d7) and len(cd_set) == 49
            and cd_set & big == {_key(one)})
    s.check("y7 has order 7 and centralizes x7",
            y7.order() == 7 and _commute(y7, x7))
    s.check("y7 does not commute with a7 modulo <x7>",
            _key(y7 ** -1 * a7 ** -1 * y7 * a7) not in x7_cyc)
    # purity: x7 is conjugate to y7 and to y7^i x7 via listed words of
    # <x4, x14>
    words = [
        (x14 * x4 * x14) ** 2,
        (x14 * x4 * x14) ** 2 * x14 ** 2 * x4,
        x14 * x4 * x14 ** 4 * x4 * x14,
        x14 * x4 * x14 ** 3,
        x4 * x14 * (x14 * x4) ** 2,
        x14 * x4 * x14 ** 3 * x4,
        (x14 * x4 * x14) ** 2 * x14 ** 3,
    ]
    targets = [y7] + [y7 ** i * x7 for i in range(1, 7)]
    s.check("the seven listed words conjugate x7 onto generators of the "
            "other cyclic subgroups",
            all(x7 ** w == t for w, t in zip(words, targets)))
    s.check("orders 4 and 14 in the linear part",
            x4.order() == 4 and x14.order() == 14)
    s.check("sl2(7) relators (ab)3=a2, (ab4ab4)2b7a4=1",
            (x4 * x14) ** 3 == x4 ** 2
            and (x4 * x14 ** 4 * x4 * x14 ** 4) ** 2 * x14 ** 7 * x4 ** 4 == one)
    span_7sq = _closure([x7, y7], bound=60)
    s.check("the linear part normalizes the 7^2",
            all(_key(t ** b) in span_7sq
                for t in (x7, y7) for b in (x4, x14)))
    s.check("the central involution x4^2 moves x7",
            not _commute(x4 ** 2, x7))
    s.check("the listed element conjugates x4 and x14 into the centralizer",
            bool((x4 ** c).in_G_x0())
            and bool((x14 ** c).in_G_x0()))
    s.chi_class("x4 lies in 4D", x4, 4, "4D", conjugator=c)
    s.chi_class("x6 = x4*x14 has order 6 and lies in 6F", x4 * x14, 6, "6F",
                conjugator=c)
    s.chi_class("x14^2 lies in 7B", x14 ** 2, 7, "7B", conjugator=c)
    z14 = x14 ** x4
    s.check("the twisted order-14 element does not normalize <x7>",
            _key(x7 ** z14) not in x7_cyc)
    z = z14 ** 2
    s.check("r, s, t conjugate the three representatives back to x7",
            (x7 * z) ** r_el == x7
            and (x7 ** 2 * z) ** s_el == x7
            and (x7 ** 3 * z) ** t_el == x7)
    return rep


def check_pgl2_19(listings) -> LemmaReport:
    d = listings[SECTION_PGL19]
    x2, x19, y4, c, dconj = d["x2"], d["x19"], d["y4"], d["c"], d["d"]
    rep = LemmaReport("pgl2_19")
    s = _Steps(rep)
    from mmgroup import MM

    one = MM()
    s.check("orders 2 and 19", x2.order() == 2 and x19.order() == 19)
    s.check("pgl2(19) relators a2=b19=(ab2)4=(abab2)3=1",
            x2 ** 2 == one and x19 ** 19 == one
            and (x2 * x19 ** 2) ** 4 == one
            and (x2 * x19 * x2 * x19 ** 2) ** 3 == one)
    g2 = (x19 ** 2 * x2) ** 2
    g3 = x2 * x19 ** 2 * x2 * x19
    g5 = g2 * g3
    s.check("a5 relators on (g2, g3): a2=b3=(ab)5=1",
            g2 ** 2 == one and g3 ** 3 == one and (g2 * g3) ** 5 == one)
    s.check("g2 lies in 2B", involution_class(g2)[0] == "2B")
    s.chi_class("g3 lies in 3B", g3, 3, "3B", conjugator=c)
    s.check("g5 = g2*g3 has order 5", g5.order() == 5)
    s.chi_class("g5 lies in 5B", g5, 5, "5B", conjugator=dconj)
    a_set = _closure([g2, g3], bound=70)
    s.check("<g2,g3> has order 60", len(a_set) == 60)
    s.check("y4 has order 4, normalizes but does not centralize the A5, "
            "and its square centralizes it",
            y4.order() == 4
            and _key(g2 ** y4) in a_set and _key(g3 ** y4) in a_set
            and not (_commute(y4, g2) and _commute(y4, g3))
            and _commute(y4 ** 2, g2) and _commute(y4 ** 2, g3))
    x18 = x2 * x19 ** 3
    x20 = x2 * x19
    s.check("x18 and x20 have orders 18 and 20 and power to 2B",
            x18.order() == 18 and x20.order() == 20
            and involution_class(x18 ** 9)[0] == "2B"
            and involution_class(x20 ** 10)[0] == "2B")
    s.chi_class("x18 lies in 18E", x18, 18, "18E",
                extra_powers=((9, "2B"),))
    s.chi_class("x20 lies in 20F", x20, 20, "20F",
                extra_powers=((10, "2B"),))
    return rep


CHECKS = {
    "l2_11_sq_4": check_l2_11_sq_4,
    "sylow11": check_sylow11,
    "7sq_sl2_7": check_7sq_sl2_7,
    "pgl2_19": check_pgl2_19,
}


def run_lemma_checks(construction: str, listings) -> LemmaReport:
    try:
        fn = CHECKS[construction]
    except KeyError:
        raise KeyError(
            f"unknown construction {construction!r}; choose from {sorted(CHECKS)}"
        ) from None
    return fn(listings)
