"""Bridge tests: real Monster computations via mmgroup.

Everything here needs the external implementation; the module is skipped
cleanly when mmgroup is not installed.  The facts comparison additionally
needs the primary package's command line on PATH.
"""

import shutil
import subprocess

import pytest

mmgroup = pytest.importorskip("mmgroup")

from mmbridge.chi import ChiUncomputable, compute_chi, involution_class  # noqa: E402
from mmbridge.emit import emit_facts  # noqa: E402
from mmbridge.lemmas import run_lemma_checks  # noqa: E402
from mmbridge.words import (  # noqa: E402
    SECTION_7SQ,
    SECTION_L2_11_SQ,
    SECTION_PGL19,
    SECTION_SYLOW11,
    default_words_path,
    load_listings,
)


@pytest.fixture(scope="module")
def listings():
    return load_listings()


def test_listing_sections(listings):
    assert set(listings) == {
        SECTION_L2_11_SQ, SECTION_SYLOW11, SECTION_7SQ, SECTION_PGL19,
    }
    assert set(listings[SECTION_PGL19]) == {"x2", "x19", "y4", "c", "d"}
    assert len(listings[SECTION_7SQ]) == 12


def test_chi_routes(listings):
    d1 = listings[SECTION_L2_11_SQ]
    direct = compute_chi(d1["x2"])
    assert direct.route == "direct"
    x20 = d1["x11"] * d1["x2"] * d1["x4"]
    via_involution = compute_chi(x20)
    assert via_involution.route == "involution"
    assert via_involution.value == 2
    assert via_involution.conjugator  # audit trail records the mover
    d3 = listings[SECTION_7SQ]
    via_listed = compute_chi(d3["x4"], conjugator=d3["c"])
    assert via_listed.route == "listed-conjugator"
    assert via_listed.value == -13


def test_chi_uncomputable_without_route(listings):
    y11 = listings[SECTION_SYLOW11]["y11"]
    assert not bool(y11.in_G_x0())
    with pytest.raises(ChiUncomputable):
        compute_chi(y11)


def test_involution_classes(listings):
    d = listings[SECTION_L2_11_SQ]
    assert involution_class(d["x2"])[0] == "2A"
    d19 = listings[SECTION_PGL19]
    g2 = (d19["x19"] ** 2 * d19["x2"]) ** 2
    assert involution_class(g2)[0] == "2B"


@pytest.mark.parametrize("construction", [
    "l2_11_sq_4", "sylow11", "7sq_sl2_7", "pgl2_19",
])
def test_lemma_checks(listings, construction):
    report = run_lemma_checks(construction, listings)
    print()
    print(report)
    assert report.ok, str(report)


def test_emitted_facts_match_reference(tmp_path):
    out = tmp_path / "bridge_facts.json"
    summary = emit_facts(out)
    assert summary["facts"] == 12
    assert not summary["failed"]
    assert all(t["route"] for t in summary["trace"].values())
    exe = shutil.which("classfusion")
    if exe is None:
        pytest.skip("primary command line not on PATH")
    reference = default_words_path().parent / "facts_reference.json"
    proc = subprocess.run(
        [exe, "facts-diff", str(reference), str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
