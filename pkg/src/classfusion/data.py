"""Access to the bundled data fixtures (tables, facts, element words).

The fixture directory can be overridden with the CLASSFUSION_DATA_DIR
environment variable; by default the files shipped inside the package are
used.  Table fixtures are cached per process (they are immutable).
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .chartab import CharacterTable

ENV_DATA_DIR = "CLASSFUSION_DATA_DIR"

# bundled table slugs and their aliases (the table's own name field)
TABLE_ALIASES = {
    "M": "monster",
    "(L2(11)xL2(11)):4": "l2_11_x_l2_11_4",
    "11^2:(5x2.A5)": "11sq_5x2a5",
    "7^2:2psl(2,7)": "7sq_sl2_7",
    "L2(19).2": "l2_19_2",
    "S3": "s3",
    "S4": "s4",
    "S5": "s5",
    "A4": "a4",
    "A5": "a5",
    "7^2": "7sq",
}

_table_cache: dict[str, CharacterTable] = {}


def data_path(filename: str) -> Path:
    override = os.environ.get(ENV_DATA_DIR)
    if override:
        return Path(override) / filename
    return Path(str(resources.files(__package__) / "data" / filename))


def resolve_table_path(name: str) -> Path:
    """Resolve a table alias, slug, or filesystem path to a JSON file."""
    p = Path(name)
    if p.suffix == ".json" and p.exists():
        return p
    slug = TABLE_ALIASES.get(name, name)
    candidate = data_path(f"{slug}.json")
    if candidate.exists():
        return candidate
    if p.exists():
        return p
    raise FileNotFoundError(f"no table fixture for {name!r} (tried {candidate})")


def load_table(name: str) -> CharacterTable:
    path = str(resolve_table_path(name))
    t = _table_cache.get(path)
    if t is None:
        t = CharacterTable.from_path(path)
        _table_cache[path] = t
    return t


def canonical_dumps(obj) -> str:
    """The canonical JSON serialization used for all shipped fixtures."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n"


def dump_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps(obj))
