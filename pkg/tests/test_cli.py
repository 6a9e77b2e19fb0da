"""End-to-end command-line checks through run(), no subprocesses.

Exit code contract: 0 success, 1 a verification failed, 2 usage error.
The failure paths that cannot be reached with honest inputs (the
verifications all pass on real data) are driven by monkeypatching the
library functions the commands call.
"""

import dataclasses
import json

import pytest

from spindim import cli
from spindim.cli import run
from spindim.edcalc import ed_table
from spindim.spinlat import Parity, build_char_data


def ok_json(argv):
    code, out, err = run(argv)
    assert code == 0 and err == ""
    return json.loads(out)


def usage_error(argv):
    code, out, err = run(argv)
    assert code == 2, (out, err)
    assert out == ""
    assert err
    return err


# ---------------------------------------------------------------------------
# ed-table


def test_ed_table_tsv_matches_library():
    code, out, err = run(["ed-table", "--min", "15", "--max", "20"])
    assert (code, err) == (0, "")
    assert out == ed_table(15, 20)
    assert out.splitlines()[0] == "15\t23\t23\t23\todd"


def test_ed_table_json():
    rows = ok_json(["ed-table", "--min", "11", "--max", "16",
                    "--format", "json"])
    assert [r["n"] for r in rows] == list(range(11, 17))
    assert rows[0]["value"] == "unknown"
    assert rows[4]["value"] == 23
    assert rows[5]["trace"]


def test_ed_table_usage_errors():
    err = usage_error(["ed-table", "--min", "2", "--max", "10"])
    assert "range must satisfy" in err
    usage_error(["ed-table", "--min", "15"])
    usage_error(["ed-table", "--min", "15", "--max", "20", "--format", "csv"])
    usage_error(["ed-table", "--min", "20", "--max", "15"])


# ---------------------------------------------------------------------------
# verify-lattice


def test_verify_lattice():
    payload = ok_json(["verify-lattice", "--r-max", "4"])
    assert payload["ok"] is True
    assert len(payload["rows"]) == 8
    row = payload["rows"][0]
    assert {"r", "parity", "xL_invariant_factors", "xT_free_rank",
            "xK_order", "faithful_count", "action_free", "orbit_sizes",
            "ok"} <= set(row)
    odd4 = next(r for r in payload["rows"]
                if r["r"] == 4 and r["parity"] == "odd")
    assert odd4["xL_invariant_factors"] == [2, 2, 2, 4]
    assert odd4["orbit_sizes"] == [16]


def test_verify_lattice_usage():
    usage_error(["verify-lattice", "--r-max", "0"])
    usage_error(["verify-lattice", "--r-max", "99"])
    usage_error(["verify-lattice"])


def test_verify_lattice_failure_exit_code(monkeypatch):
    real = cli.spinlat.free_transitive_check

    def broken(data):
        return dataclasses.replace(real(data), is_free=False)

    monkeypatch.setattr(cli.spinlat, "free_transitive_check", broken)
    code, out, err = run(["verify-lattice", "--r-max", "2"])
    assert code == 1
    assert json.loads(out)["ok"] is False


# ---------------------------------------------------------------------------
# verify-heisenberg


def test_verify_heisenberg_exhaustive_small_rank():
    payload = ok_json(["verify-heisenberg", "--r", "4", "--parity", "odd"])
    assert payload["ok"] is True
    assert payload["expected"] == 16
    assert payload["min_faithful_dim"] == 16 and payload["gcd_dim"] == 16
    assert payload["exhaustive_checked_to"] == 32
    assert payload["exhaustive_ok"] is True


def test_verify_heisenberg_even_parity():
    payload = ok_json(["verify-heisenberg", "--r", "3", "--parity", "even"])
    assert payload["expected"] == 4
    assert payload["orbit_sizes"] == [4, 4]


def test_verify_heisenberg_skips_brute_force_at_large_rank():
    payload = ok_json(["verify-heisenberg", "--r", "8", "--parity", "even"])
    assert payload["ok"] is True
    assert payload["exhaustive_checked_to"] is None
    assert payload["exhaustive_ok"] is None


def test_verify_heisenberg_usage():
    usage_error(["verify-heisenberg", "--r", "0", "--parity", "odd"])
    usage_error(["verify-heisenberg", "--r", "3", "--parity", "both"])
    usage_error(["verify-heisenberg", "--parity", "odd"])


def test_verify_heisenberg_failure_exit_code(monkeypatch):
    real = cli.repdim.divisibility_report

    def broken(data, exhaustive=False):
        return dataclasses.replace(real(data, exhaustive=exhaustive),
                                   gcd_dim=3)

    monkeypatch.setattr(cli.repdim, "divisibility_report", broken)
    code, out, err = run(["verify-heisenberg", "--r", "2", "--parity", "odd"])
    assert code == 1
    assert json.loads(out)["ok"] is False


# ---------------------------------------------------------------------------
# qform


def test_qform_witt():
    payload = ok_json(["qform", "--field", "f2^2", "--op", "witt",
                       "--form", "[1,1]+[2,3]"])
    assert payload["witt_index"] == 2
    assert payload["kernel"] == "0"
    assert payload["dim"] == 4


def test_qform_witt_anisotropic_over_f2():
    payload = ok_json(["qform", "--field", "f2^1", "--op", "witt",
                       "--form", "[1,1]"])
    assert payload["witt_index"] == 0
    assert payload["kernel"] == "[1,1]"


def test_qform_arf():
    payload = ok_json(["qform", "--field", "f2^2", "--op", "arf",
                       "--form", "pf(2;1)"])
    assert payload["arf"] == 0
    assert payload["dim"] == 4
    payload = ok_json(["qform", "--field", "f2^1", "--op", "arf",
                       "--form", "[1,1]"])
    assert payload["arf"] == 1


def test_qform_classify():
    payload = ok_json(["qform", "--field", "f2^2", "--op", "classify",
                       "--form", "[1,1]+<0>"])
    assert payload["class"] == "singular"
    assert payload["radical_dim"] == 1
    assert payload["vanishing_radical_vector"] == ["0", "0", "1"]
    payload = ok_json(["qform", "--field", "f2^2", "--op", "classify",
                       "--form", "[1,2]"])
    assert payload["class"] == "nondegenerate"


def test_qform_normalize():
    payload = ok_json(["qform", "--field", "f2^1", "--op", "normalize",
                       "--form", "mat(1,1;0,1)"])
    assert payload["form"] == "[1,1]"
    # entries below the diagonal fold up to the same form
    payload2 = ok_json(["qform", "--field", "f2^1", "--op", "normalize",
                        "--form", "mat(1,0;1,1)"])
    assert payload2["form"] == "[1,1]"


def test_qform_equiv():
    payload = ok_json(["qform", "--field", "f2^2", "--op", "equiv",
                       "--form", "[1,1]", "--form2", "[0,0]"])
    assert payload["equivalent"] is True
    payload = ok_json(["qform", "--field", "f2^1", "--op", "equiv",
                       "--form", "[1,1]", "--form2", "[0,0]"])
    assert payload["equivalent"] is False


def test_qform_usage_errors():
    assert "needs --form2" in usage_error(
        ["qform", "--field", "f2^2", "--op", "equiv", "--form", "[1,1]"])
    assert "Arf invariant" in usage_error(
        ["qform", "--field", "f2^2", "--op", "arf", "--form", "<1>"])
    usage_error(["qform", "--field", "f2^2", "--op", "witt", "--form", "<0>"])
    usage_error(["qform", "--field", "f3^2", "--op", "arf", "--form", "[1,1]"])
    usage_error(["qform", "--field", "f2^0", "--op", "arf", "--form", "[1,1]"])
    usage_error(["qform", "--field", "f2^2", "--op", "arf", "--form", "[g,1]"])
    usage_error(["qform", "--field", "f2^2", "--op", "arf", "--form", "foo"])
    usage_error(["qform", "--field", "f2^2", "--op", "arf", "--form", "[4,1]"])
    usage_error(["qform", "--field", "f2^2", "--op", "normalize",
                 "--form", "mat(1,2)"])
    usage_error(["qform", "--field", "f2^2", "--op", "transmogrify",
                 "--form", "[1,1]"])


# ---------------------------------------------------------------------------
# symbol


@pytest.mark.parametrize("expr,want", [
    ("{a*b,c,d] + {b,c,d]", "{a,c,d]"),
    ("{b,a,c] + {a,b,c]", "0"),
    ("{1,c,d]", "0"),
    ("{a,a,c]", "0"),
    ("{a,b+c]", "{a,b] + {a,c]"),
    ("0", "0"),
    ("{d,a]", "{d,a]"),
])
def test_symbol_normalize(expr, want):
    code, out, err = run(["symbol", "--normalize", expr])
    assert (code, err) == (0, "")
    assert out.rstrip("\n") == want


def test_symbol_usage_errors():
    usage_error(["symbol", "--normalize", "{a]"])
    usage_error(["symbol", "--normalize", "nonsense"])
    usage_error(["symbol", "--normalize", "{a,&,c]"])
    usage_error(["symbol", "--normalize", ""])


# ---------------------------------------------------------------------------
# invariant


def test_invariant_spin9():
    payload = ok_json(["invariant", "--group", "spin9",
                       "--labels", "a,b,c,d,e"])
    assert payload["ok"] is True
    assert payload["expansion_identity_ok"] is True
    assert payload["symbol"] == "{a,b,d,e,c]"
    assert payload["nonvanishing"] == "certified_nonzero"
    assert "citation" in payload["nonvanishing_note"]
    assert payload["torsor_forms"] == [
        "H + (d)*<<a,b;c]]",
        "(e)*<<a,b;c]] + (d*e)*<<a,b;c]]",
    ]


def test_invariant_spin7_trivial_scale():
    payload = ok_json(["invariant", "--group", "spin7",
                       "--labels", "a,b,c,1"])
    assert payload["ok"] is True
    assert payload["symbol"] == "0"
    assert payload["nonvanishing"] == "zero"
    assert payload["torsor_forms"] == ["<<a,b;c]]", "<<a,b;c]]"]


def test_invariant_spin10():
    payload = ok_json(["invariant", "--group", "spin10",
                       "--labels", "a,b,c,d"])
    assert payload["symbol"] == "{a,b,d,c]"
    assert payload["torsor_forms"] == ["H + (d)*<<a,b;c]]"]


def test_invariant_usage_errors():
    assert "needs 5 parameters" in usage_error(
        ["invariant", "--group", "spin8", "--labels", "a,b,c,d"])
    usage_error(["invariant", "--group", "spin11", "--labels", "a,b,c,d"])
    usage_error(["invariant", "--group", "spin7"])


def test_invariant_failure_exit_code(monkeypatch):
    def broken(t):
        raise AssertionError("torsor forms do not match the Pfister expansion")

    monkeypatch.setattr(cli.invariants, "invariant_f", broken)
    code, out, err = run(["invariant", "--group", "spin7",
                          "--labels", "a,b,c,d"])
    assert code == 1
    payload = json.loads(out)
    assert payload["ok"] is False
    assert "Pfister expansion" in payload["error"]


# ---------------------------------------------------------------------------
# global behavior


def test_help_exits_zero():
    code, out, err = run(["--help"])
    assert code == 0
    for name in ("ed-table", "verify-lattice", "verify-heisenberg",
                 "qform", "symbol", "invariant"):
        assert name in out
    code, out, _ = run(["qform", "--help"])
    assert code == 0 and "--op" in out


def test_no_arguments_is_a_usage_error():
    usage_error([])


def test_unknown_subcommand_is_a_usage_error():
    usage_error(["frobnicate"])


@pytest.mark.parametrize("argv", [
    ["ed-table", "--min", "15", "--max", "25", "--format", "json"],
    ["verify-heisenberg", "--r", "5", "--parity", "even"],
    ["qform", "--field", "f2^3", "--op", "witt", "--form", "pf(2,3;1)"],
    ["symbol", "--normalize", "{a*b,c,d]+{b,c,d]"],
    ["invariant", "--group", "spin8", "--labels", "a,b,c,d,e"],
])
def test_identical_invocations_print_identical_bytes(argv):
    assert run(argv) == run(argv)


def test_main_raises_system_exit(capsys, monkeypatch):
    monkeypatch.setattr(cli.sys, "argv",
                        ["spindim", "ed-table", "--min", "15", "--max", "15"])
    with pytest.raises(SystemExit) as exc:
        cli.main()
    assert exc.value.code == 0
    captured = capsys.readouterr()
    assert captured.out == "15\t23\t23\t23\todd\n"
