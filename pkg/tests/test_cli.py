"""CLI surface: identify, facts-diff, error paths, determinism.  The fuse
reproductions run in test_acceptance; here fuse is exercised on small
tables and failure modes."""

import json

from classfusion.cli import main
from classfusion.data import canonical_dumps, data_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----------------------------------------------------------------------
# identify


def test_identify_order20_chi2(capsys):
    code, out, _ = run(capsys, "identify", "--order", "20",
                       "--power", "10:2B", "--chi", "2")
    assert code == 0 and out.strip() == "20E"


def test_identify_order30_two_candidates(capsys):
    code, out, _ = run(capsys, "identify", "--order", "30", "--chi", "-1")
    assert code == 0 and out.split() == ["30C", "30E"]


def test_identify_identity(capsys):
    code, out, _ = run(capsys, "identify", "--order", "1",
                       "--chi", "196883")
    assert code == 0 and out.strip() == "1A"


def test_identify_empty_match_exits_4(capsys):
    code, _, err = run(capsys, "identify", "--order", "2", "--chi", "12345")
    assert code == 4 and "no class matches" in err


def test_identify_is_deterministic(capsys):
    first = run(capsys, "identify", "--order", "30", "--chi", "-1")
    second = run(capsys, "identify", "--order", "30", "--chi", "-1")
    assert first == second


# ----------------------------------------------------------------------
# fuse (small inputs and failure modes)


def test_fuse_small_pair_unique(capsys, tmp_path):
    out_json = tmp_path / "result.json"
    code, out, _ = run(capsys, "fuse", "A5", "S5", "--json", str(out_json))
    assert code == 0
    assert "candidate fusion maps: 1" in out
    payload = json.loads(out_json.read_text())
    assert payload["count"] == 1
    assert payload["sub"] == "A5"


def test_fuse_corrupted_table_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    table = json.loads(data_path("s3.json").read_text())
    table["irreducibles"][1][1] = 99
    bad.write_text(json.dumps(table))
    code, _, err = run(capsys, "fuse", str(bad), "S4")
    assert code == 2 and "row-orthogonality" in err


def test_fuse_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "fuse", "no-such-table", "S4")
    assert code == 2 and "cannot load" in err


def test_fuse_impossible_pair_exits_4(capsys):
    code, _, err = run(capsys, "fuse", "A5", "S4")
    assert code == 4 and "no fusion possible" in err


def test_fuse_node_limit_exits_1(capsys):
    code, _, err = run(capsys, "fuse", "7^2", "7^2:2psl(2,7)",
                       "--node-limit", "3")
    assert code == 1 and "aborted" in err


def test_fuse_ambiguous_exits_3(capsys):
    # the elementary abelian square has many fusions into its extension
    code, out, _ = run(capsys, "fuse", "S3", "S4")
    if code == 3:
        assert "--- map" in out
    else:
        assert code == 0


# ----------------------------------------------------------------------
# verify-models


def test_verify_models_single(capsys):
    code, out, _ = run(capsys, "verify-models", "--only", "pgl2_19")
    assert code == 0
    assert "[pgl2_19]" in out and "presentation" in out


def test_verify_models_unknown_key(capsys):
    code, _, err = run(capsys, "verify-models", "--only", "nope")
    assert code == 2 and "unknown model" in err


# ----------------------------------------------------------------------
# facts-diff


def test_facts_diff_identical(capsys):
    ref = str(data_path("facts_reference.json"))
    code, out, _ = run(capsys, "facts-diff", ref, ref)
    assert code == 0 and "agree" in out


def test_facts_diff_changed_value(capsys, tmp_path):
    ref = data_path("facts_reference.json")
    facts = json.loads(ref.read_text())
    facts[0]["chi"] = 4
    other = tmp_path / "other.json"
    other.write_text(canonical_dumps(facts))
    code, out, _ = run(capsys, "facts-diff", str(ref), str(other))
    assert code == 1
    assert sum("chi differs" in line for line in out.splitlines()) == 1


def test_facts_diff_missing_entry(capsys, tmp_path):
    ref = data_path("facts_reference.json")
    facts = json.loads(ref.read_text())
    other = tmp_path / "other.json"
    other.write_text(canonical_dumps(facts[1:]))
    code, out, _ = run(capsys, "facts-diff", str(ref), str(other))
    assert code == 1 and "absent from other" in out


def test_facts_diff_unreadable_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "facts-diff", str(tmp_path / "nope.json"),
                       str(tmp_path / "nope.json"))
    assert code == 2
