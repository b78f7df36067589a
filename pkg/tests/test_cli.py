import json
import subprocess
import sys

import pytest

from rickartlab.cli import EXIT, main
from rickartlab.corpus import builtins
from rickartlab.finring import RING_PROPERTIES, decide_ring_property
from rickartlab.modprops import MODULE_PROPERTIES, decide_module_property


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out.strip() else None, err


def test_z_plus_z2_is_not_rickart(capsys):
    code, rep, _ = run_json(capsys, "check", "zmodule", "builtin:z_plus_z2", "--property", "rickart")
    assert code == 1
    phi = rep["result"]["witness"]["endomorphism"]
    assert phi["matrix"] == [[0, 0], [1, 0]]
    assert rep["result"]["witness"]["inclusion"]["matrix"] == [[2, 0], [0, 1]]


def test_z6_is_regular(capsys):
    assert run(capsys, "check", "ring", "builtin:z6", "--property", "vn_regular")[0] == 0


def test_missing_file(capsys):
    code, out, err = run(capsys, "check", "ring", "nosuchfile.json", "--property", "baer")
    assert code == 2 and "file not found" in err


@pytest.mark.parametrize("argv", [
    ["check", "ring", "builtin:z6", "--property", "rickart"],
    ["check", "ring", "builtin:nosuch", "--property", "baer"],
    ["check", "module", "builtin:reg_z4"],
    ["check", "zmodule", "builtin:z", "--report", "correspondence"],
    ["suite", "--filter", "no-such-id"],
    ["bogus"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_schema_error_names_field(capsys, tmp_path):
    p = tmp_path / "ring.json"
    p.write_text(json.dumps({"tables": {"add": [[0]], "mul": [[0]], "zero": 0}}))
    code, _, err = run(capsys, "check", "ring", str(p), "--property", "baer")
    assert code == 2 and "one" in err
    p.write_text("{not json")
    assert run(capsys, "check", "ring", str(p), "--property", "baer")[0] == 2
    p.write_text(json.dumps({"tables": {"add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 0]], "zero": 0, "one": 1}}))
    code, _, err = run(capsys, "check", "ring", str(p), "--property", "baer")
    assert code == 2 and "identity" in err


def test_cap_overrun_exit_2(capsys):
    code, _, err = run(capsys, "check", "module", "builtin:reg_m2_z2", "--property", "rickart",
                       "--cap-module", "8")
    assert code == 2 and "module_order" in err


def test_undecided_exit_3(capsys, monkeypatch):
    import rickartlab.zmodsnf as z
    monkeypatch.setattr(z, "SWEEP_LIMIT", 0)
    assert run(capsys, "check", "zmodule", "builtin:z_plus_z2", "--property", "rickart")[0] == 3


def test_exit_codes_match_verdicts_over_corpus(capsys):
    c = builtins()
    for name in c.ring_specs:
        for p in RING_PROPERTIES:
            expect = EXIT[decide_ring_property(c.get("ring", name), p).status]
            assert run(capsys, "check", "ring", f"builtin:{name}", "--property", p)[0] == expect
    for name in c.module_specs:
        for p in MODULE_PROPERTIES:
            expect = EXIT[decide_module_property(c.get("module", name), p).status]
            assert run(capsys, "check", "module", f"builtin:{name}", "--property", p)[0] == expect
    for name in ("z", "z_plus_z2", "z2_plus_z4", "z4", "zero"):
        code = run(capsys, "check", "zmodule", f"builtin:{name}", "--property", "rickart", "--bound", "2")[0]
        assert code == (1 if name in ("z_plus_z2", "z2_plus_z4", "z4") else 0)


def strip_timing(rep):
    rep = dict(rep)
    rep.pop("timings")
    return rep


def test_reports_are_deterministic(capsys):
    for argv in (["check", "module", "builtin:z2+z4_over_z4", "--property", "rickart", "--all-witnesses"],
                 ["check", "module", "builtin:reg_z6", "--report", "correspondence"],
                 ["suite", "--filter", "prop-2.2,chart"]):
        _, a, _ = run_json(capsys, *argv)
        _, b, _ = run_json(capsys, *argv)
        assert json.dumps(strip_timing(a), sort_keys=True) == json.dumps(strip_timing(b), sort_keys=True)
        assert a["engine"] == "rickartlab" and a["version"] and a["input_digests"]


def test_report_kinds(capsys):
    code, rep, _ = run_json(capsys, "check", "module", "builtin:reg_z4", "--report", "faith-utumi")
    assert code == 0 and rep["result"]["status"] == "CONSISTENT"
    code, rep, _ = run_json(capsys, "check", "module", "builtin:z2_over_z6", "--report", "direct-sum",
                            "--with", "builtin:z3_over_z6")
    assert code == 0 and rep["result"]["status"] == "HYPOTHESES_MET"
    code, rep, _ = run_json(capsys, "check", "ring", "builtin:t2_z2", "--report", "chart")
    assert code == 0 and rep["result"]["values"]["vn_regular"] == "FAILS"


def test_text_output_mentions_witness(capsys):
    code, out, _ = run(capsys, "check", "module", "builtin:z4_over_z4", "--property", "rickart")
    assert code == 1 and "rickart: FAILS" in out and "g0 -> (2)" in out


def test_module_file_input(capsys, tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"ring": {"constructor": "zmod(4)"}, "cyclic_orders": [2, 4],
                             "action": {str(r): [[r % 2, 0], [0, r]] for r in range(4)}}))
    code, rep, _ = run_json(capsys, "check", "module", str(p), "--property", "rickart")
    assert code == 1 and rep["result"]["witness"]["endomorphism"]["images"] == [[0, 0], [0, 2]]


def test_endo_ring_export(capsys, tmp_path):
    out = tmp_path / "end.json"
    assert run(capsys, "endo-ring", "builtin:reg_z4", "--out", str(out))[0] == 0
    doc = json.loads(out.read_text())
    assert len(doc["carrier"]) == 4
    assert run(capsys, "check", "ring", str(out), "--property", "right_rickart")[0] == 1


def test_list_builtins(capsys):
    code, out, _ = run(capsys, "list-builtins", "--json")
    doc = json.loads(out)
    assert code == 0 and "z_plus_z2" in doc["zmodules"] and "reg_z4" in doc["modules"]


def test_suite_filter_and_empty_corpus(capsys, tmp_path):
    code, rep, _ = run_json(capsys, "suite", "--corpus", "builtin", "--filter", "thm-qi-equiv")
    assert code == 0
    [t] = rep["result"]["theorems"]
    results = {r["instance"]: r for r in t["results"]}
    assert set(results["reg_z4"]["detail"]["conditions"].values()) == {False}
    assert set(results["reg_z6"]["detail"]["conditions"].values()) == {True}
    empty = tmp_path / "empty.json"
    empty.write_text("{}")
    assert run(capsys, "suite", "--corpus", str(empty))[0] == 2


def test_suite_file_corpus(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"rings": {"r": "zmod(9)"},
                             "modules": {"m": {"ring": "builtin:z9", "cyclic_orders": [3, 9], "action": "scalar"}},
                             "pairs": [["m", "m"]]}))
    code, rep, _ = run_json(capsys, "suite", "--corpus", str(p))
    assert code == 0 and rep["result"]["violations"] == 0


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rickartlab", "check", "ring", "builtin:z4", "--property",
                           "right_rickart"], capture_output=True, text=True)
    assert proc.returncode == 1 and "right_rickart: FAILS" in proc.stdout


def test_overflow_exit_2(capsys, monkeypatch):
    import rickartlab.zmodsnf as z
    monkeypatch.setattr(z, "OVERFLOW_LIMIT", 1)
    code, _, err = run(capsys, "check", "zmodule", "builtin:z_plus_z2", "--property", "rickart")
    assert code == 2 and "overflow" in err
