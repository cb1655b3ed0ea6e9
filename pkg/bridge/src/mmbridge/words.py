"""Load the labeled element-word listings and build Monster elements.

The listing file format is the primary package's fixture: sections headed
by `# name` comment lines, one `label = M<...>` word per line.  Words are
handed verbatim to mmgroup's MM constructor; no algebra happens here.
"""

from __future__ import annotations

import os
from pathlib import Path


ENV_WORDS = "MMBRIDGE_WORDS"


def default_words_path() -> Path:
    """The listing fixture shipped with the primary package, unless
    overridden via the MMBRIDGE_WORDS environment variable."""
    override = os.environ.get(ENV_WORDS)
    if override:
        return Path(override)
    from importlib import resources

    return Path(str(resources.files("classfusion") / "data" / "monster_words.txt"))


def load_listings(path=None) -> dict[str, dict]:
    """Sections of the listing file as {section: {label: MM element}}."""
    from mmgroup import MM

    path = Path(path) if path else default_words_path()
    sections: dict[str, dict] = {}
    current: dict | None = None
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            current = {}
            sections[line.lstrip("#").strip()] = current
            continue
        label, _, word = line.partition("=")
        if current is None:
            current = {}
            sections[""] = current
        current[label.strip()] = MM(word.strip())
    return sections


SECTION_L2_11_SQ = "(L2(11)xL2(11)):4 generators"
SECTION_SYLOW11 = "11^2:(5x2.A5) generators"
SECTION_7SQ = "7^2:SL2(7) generators"
SECTION_PGL19 = "L2(19).2 generators"
