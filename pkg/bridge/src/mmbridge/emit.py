"""Write the measured facts as JSON in the shared schema.

The output is shaped exactly like the primary package's reference facts
file (source tagged "bridge"), so the two can be compared field by field
with the primary's facts-diff command.  Partial runs produce a file with
an "incomplete" marker rather than silently dropping failures.
"""

from __future__ import annotations

import json

from .tasks import run_tasks
from .words import load_listings


def emit_facts(output_path, words_path=None, progress=None) -> dict:
    """Measure all scripted elements and write the facts file; returns a
    summary {"facts": n, "failed": [(label, reason)], "trace": {...}}."""
    listings = load_listings(words_path)
    facts, failed = run_tasks(listings, progress=progress)
    payload = [f.to_json() for f in facts]
    doc = payload if not failed else {
        "incomplete": [label for label, _ in failed],
        "facts": payload,
    }
    with open(output_path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, separators=(",", ":"))
        fh.write("\n")
    trace = {
        f.task.label: {
            "route": f.trace.route,
            "conjugator": f.trace.conjugator,
            "checks": f.trace.checks,
        }
        for f in facts
    }
    return {"facts": len(facts), "failed": failed, "trace": trace}
