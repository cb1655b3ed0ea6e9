"""Convert raw GAP table exports into the canonical shipped fixtures.

Reads /tmp/raw_tables/<slug>.raw.json (produced by export_tables.g),
re-canonicalizes every character value through the package's cyclotomic
arithmetic, and writes src/classfusion/data/<slug>.json in the canonical
serialization.  Idempotent.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from classfusion.chartab import CharacterTable, ClassInfo  # noqa: E402
from classfusion.cyclo import value_from_json  # noqa: E402
from classfusion.data import canonical_dumps  # noqa: E402

RAW_DIR = Path("/tmp/raw_tables")
OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "classfusion" / "data"

SLUGS = [
    "monster",
    "l2_11_x_l2_11_4",
    "11sq_5x2a5",
    "7sq_sl2_7",
    "l2_19_2",
    "s3",
    "s4",
    "s5",
    "a4",
    "a5",
    "7sq",
]


def convert(slug: str) -> None:
    raw = json.loads((RAW_DIR / f"{slug}.raw.json").read_text())
    classes = [
        ClassInfo(
            name=c["name"],
            order=int(c["order"]),
            size=int(c["size"]),
            centralizer=int(c["centralizer"]),
        )
        for c in raw["classes"]
    ]
    irr = [[value_from_json(v) for v in row] for row in raw["irreducibles"]]
    # the trivial character must sit at index 0
    triv = next(i for i, row in enumerate(irr) if all(v == 1 for v in row))
    if triv != 0:
        irr.insert(0, irr.pop(triv))
    distinguished = None
    if slug == "monster":
        degrees = [row[0] for row in irr]
        distinguished = degrees.index(196883)
    table = CharacterTable(
        name=raw["name"],
        order=int(raw["order"]),
        classes=classes,
        power_maps={int(p): m for p, m in raw["powermaps"].items()},
        irreducibles=irr,
        distinguished=distinguished,
    )
    out = OUT_DIR / f"{slug}.json"
    out.write_text(canonical_dumps(table.to_json()), encoding="utf-8")
    print(f"{slug}: {len(table)} classes -> {out} ({out.stat().st_size} bytes)")


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for slug in SLUGS:
        convert(slug)


if __name__ == "__main__":
    main()
