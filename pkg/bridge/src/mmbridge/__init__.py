"""Monster-side bridge: recompute the class-fusion element facts with the
external mmgroup implementation and re-run the element-level checks behind
each subgroup construction.

The bridge consumes the primary toolkit only through its file formats and
command line (the element-word listing, the facts JSON schema, and the
identify endpoint); no table or search logic is duplicated here.
"""

from .chi import ChiResult, ChiUncomputable, compute_chi, involution_class
from .emit import emit_facts
from .lemmas import CHECKS, LemmaReport, run_lemma_checks
from .tasks import TASKS, run_tasks
from .words import load_listings

__version__ = "0.1.0"

__all__ = [
    "CHECKS", "ChiResult", "ChiUncomputable", "LemmaReport", "TASKS",
    "compute_chi", "emit_facts", "involution_class", "load_listings",
    "run_lemma_checks", "run_tasks",
]
