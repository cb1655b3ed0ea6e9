"""The scripted element tasks: which elements to measure, how to move them
into the centralizer, and which power facts accompany each value.

Power entries are either ("involution", k) -- the class of g^k comes from
conjugate_involution -- or ("identify", k, other_label): the class of g^k
is the class the primary toolkit identifies for the measurements recorded
under the other task (its order, character value, and power facts).
"""

from __future__ import annotations

import os
import subprocess
from dataclasses import dataclass
from typing import Callable

from .chi import ChiResult, compute_chi, involution_class
from .words import (
    SECTION_7SQ,
    SECTION_L2_11_SQ,
    SECTION_PGL19,
    SECTION_SYLOW11,
)

ENV_CLI = "MMBRIDGE_CLASSFUSION"


@dataclass
class Task:
    label: str
    section: str
    build: Callable
    order: int
    powers: tuple = ()
    conjugator: str | None = None   # label of a listed conjugating element
    subgroup_class: str | None = None
    subgroup: str | None = None


@dataclass
class ComputedFact:
    task: Task
    order: int
    chi: int
    powers: list
    trace: ChiResult

    def to_json(self) -> dict:
        return {
            "label": self.task.label,
            "order": self.order,
            "chi": self.chi,
            "powers": [[k, lbl] for k, lbl in self.powers],
            "class": self.task.subgroup_class,
            "sub": self.task.subgroup,
            "source": "bridge",
        }


TASKS = [
    Task("x20=x11*x2*x4", SECTION_L2_11_SQ,
         lambda d: d["x11"] * d["x2"] * d["x4"], 20,
         powers=(("involution", 10),),
         subgroup_class="20c", subgroup="(L2(11)xL2(11)):4"),
    Task("x30=x5*x3*x4^2", SECTION_SYLOW11,
         lambda d: d["x5"] * d["x3"] * d["x4"] ** 2, 30,
         powers=(("identify", 3, "x30^3"), ("involution", 15)),
         subgroup_class="30a", subgroup="11^2:(5x2.A5)"),
    Task("x30^3", SECTION_SYLOW11,
         lambda d: (d["x5"] * d["x3"] * d["x4"] ** 2) ** 3, 10,
         powers=(("involution", 5),)),
    Task("x10=x4*(x3*x5)^2", SECTION_SYLOW11,
         lambda d: d["x4"] * (d["x3"] * d["x5"]) ** 2, 10,
         powers=(("involution", 5),),
         subgroup_class="10f", subgroup="11^2:(5x2.A5)"),
    Task("x4", SECTION_7SQ, lambda d: d["x4"], 4, conjugator="c",
         subgroup_class="4a", subgroup="7^2:2psl(2,7)"),
    Task("x6=x4*x14", SECTION_7SQ, lambda d: d["x4"] * d["x14"], 6,
         conjugator="c",
         subgroup_class="6a", subgroup="7^2:2psl(2,7)"),
    Task("x7", SECTION_7SQ, lambda d: d["x7"], 7,
         subgroup_class="7a", subgroup="7^2:2psl(2,7)"),
    Task("x14^2", SECTION_7SQ, lambda d: d["x14"] ** 2, 7, conjugator="c",
         subgroup_class="7b", subgroup="7^2:2psl(2,7)"),
    Task("g3=x2*x19^2*x2*x19", SECTION_PGL19,
         lambda d: d["x2"] * d["x19"] ** 2 * d["x2"] * d["x19"], 3,
         conjugator="c", subgroup="L2(19).2"),
    Task("g5=g2*g3", SECTION_PGL19,
         lambda d: (d["x19"] ** 2 * d["x2"]) ** 2
         * (d["x2"] * d["x19"] ** 2 * d["x2"] * d["x19"]), 5,
         conjugator="d", subgroup="L2(19).2"),
    Task("x18=x2*x19^3", SECTION_PGL19,
         lambda d: d["x2"] * d["x19"] ** 3, 18,
         powers=(("involution", 9),), subgroup="L2(19).2"),
    Task("x20=x2*x19", SECTION_PGL19,
         lambda d: d["x2"] * d["x19"], 20,
         powers=(("involution", 10),), subgroup="L2(19).2"),
]


def identify_via_primary(order: int, chi: int, powers) -> str:
    """Resolve a class label through the primary toolkit's identify
    endpoint; raises if the result is not a singleton."""
    exe = os.environ.get(ENV_CLI, "classfusion")
    cmd = [exe, "identify", "--order", str(order), "--chi", str(chi)]
    for k, lbl in powers:
        cmd += ["--power", f"{k}:{lbl}"]
    out = subprocess.run(cmd, capture_output=True, text=True, check=True)
    labels = out.stdout.split()
    if len(labels) != 1:
        raise RuntimeError(f"identify returned {labels!r} for order {order}")
    return labels[0]


def run_tasks(listings, progress=None) -> tuple[list[ComputedFact], list[tuple[str, str]]]:
    """Measure every scripted element; power facts referring to other tasks
    are resolved after all character values are known.  Per-task failures
    are collected, not raised, so a partial run still yields a file."""
    facts: dict[str, ComputedFact] = {}
    failed: list[tuple[str, str]] = []
    for task in TASKS:
        try:
            section = listings[task.section]
            element = task.build(section)
            order = element.order()
            conj = section[task.conjugator] if task.conjugator else None
            trace = compute_chi(element, conjugator=conj)
            resolved = []
            for spec in task.powers:
                if spec[0] == "involution":
                    k = spec[1]
                    label, _ = involution_class(element ** k)
                    resolved.append((k, label))
                else:
                    resolved.append(spec)  # resolved in the second pass
            facts[task.label] = ComputedFact(task, order, trace.value,
                                             resolved, trace)
            if progress:
                progress(f"{task.label}: order {order}, chi {trace.value} "
                         f"[{trace.route}]")
        except Exception as exc:
            failed.append((task.label, str(exc)))
            if progress:
                progress(f"{task.label}: FAILED ({exc})")
    for label, fact in list(facts.items()):
        try:
            final = []
            for spec in fact.powers:
                if isinstance(spec[0], str) and spec[0] == "identify":
                    _, k, other_label = spec
                    other = facts[other_label]
                    final.append(
                        (k, identify_via_primary(other.order, other.chi,
                                                 other.powers))
                    )
                else:
                    final.append(spec)
            final.sort(key=lambda kl: kl[0])
            fact.powers = final
        except Exception as exc:
            failed.append((label, f"power resolution: {exc}"))
            del facts[label]
    return [facts[t.label] for t in TASKS if t.label in facts], failed
