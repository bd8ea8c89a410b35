"""End-to-end command-line behavior: output shapes, exit codes, errors.

Exit code contract: 0 success, 1 failed verification under
--expect-pass, 2 malformed input (bad document, unknown map, bad
flags).  JSON output must be byte-stable across runs.
"""

import json
import subprocess
import sys

import pytest

from digitop.cli import main


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write(tmp_path, name, obj):
    target = tmp_path / name
    target.write_text(json.dumps(obj))
    return str(target)


@pytest.fixture
def finite(tmp_path):
    return write(
        tmp_path,
        "finite.json",
        {
            "dimension": 1,
            "points": [[0], [1], [2]],
            "adjacency": {"type": "cu", "u": 1},
            "metric": {"type": "lp", "p": "1"},
            "maps": [
                {"name": "T", "pairs": [[[0], [0]], [[1], [0]], [[2], [1]]]},
                {"name": "J", "pairs": [[[0], [0]], [[1], [2]], [[2], [0]]]},
                {"name": "S", "pairs": [[[0], [2]], [[1], [1]], [[2], [0]]]},
            ],
        },
    )


@pytest.fixture
def two_point(tmp_path):
    return write(
        tmp_path,
        "two.json",
        {
            "dimension": 1,
            "points": [[0], [1]],
            "adjacency": {"type": "cu", "u": 1},
            "metric": {"type": "lp", "p": "1"},
            "maps": [
                {"name": "swap", "pairs": [[[0], [1]], [[1], [0]]]},
                {"name": "id", "pairs": [[[0], [0]], [[1], [1]]]},
            ],
        },
    )


@pytest.fixture
def integer_line(tmp_path):
    return write(
        tmp_path,
        "line.json",
        {
            "dimension": 1,
            "points": "Z",
            "adjacency": {"type": "cu", "u": 1},
            "metric": {"type": "lp", "p": 1},
            "maps": [
                {"name": "G", "affine": {"p": 1, "q": 1}},
                {"name": "H", "affine": {"p": 0, "q": 0}},
            ],
        },
    )


# -- check-map -------------------------------------------------------


def test_check_map_text(finite, capsys):
    code, out, _ = run(["check-map", "--space", finite, "--map", "T"], capsys)
    assert code == 0
    assert out == (
        "map T: valid self-map of 3 point(s) in Z^1 with c1\n"
        "continuous: yes\n"
        "fixed points: 0\n"
    )


def test_check_map_discontinuous(finite, capsys):
    code, out, _ = run(["check-map", "--space", finite, "--map", "J"], capsys)
    assert code == 0
    assert "continuous: no (edge 0 ~ 1)" in out


def test_check_map_json(finite, capsys):
    code, out, _ = run(
        ["check-map", "--space", finite, "--map", "T", "--format", "json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "command": "check-map",
        "map": "T",
        "valid": True,
        "continuous": True,
        "continuity_violation": None,
        "fixed_points": [[0]],
    }


def test_check_map_affine(integer_line, capsys):
    code, out, _ = run(["check-map", "--space", integer_line, "--map", "G"], capsys)
    assert code == 0
    assert out == "map G: x -> 1*x + 1\nfixed points: none\n"


def test_check_map_requires_map_flag(finite, capsys):
    with pytest.raises(SystemExit):
        main(["check-map", "--space", finite])
    assert "requires --map" in capsys.readouterr().err


# -- classify --------------------------------------------------------


def test_classify_single_map(finite, capsys):
    code, out, _ = run(["classify", "--space", finite, "--map", "T"], capsys)
    assert code == 0
    assert out.splitlines() == [
        "classification on 3 point(s) in Z^1 with c1, metric l1:",
        "  contraction: minimal_constant=1 holds_below_one=False",
        "  quasi-max: minimal_constant=1 holds_below_one=False",
        "  five-term-max: minimal_constant=1/2 holds_below_one=True",
    ]


def test_classify_pair(finite, capsys):
    code, out, _ = run(
        ["classify", "--space", finite, "--map", "T", "--map2", "S", "--format", "json"],
        capsys,
    )
    assert code == 0
    rows = {r["condition"]: r for r in json.loads(out)["conditions"]}
    # T collapses pairs that S separates, so no constant works
    dom = rows["domination-of-second-by-first"]
    assert dom["no_finite_constant"] is True and dom["minimal_constant"] is None
    assert rows["sum-bound"]["minimal_constant"] == "2"
    assert rows["sum-bound"]["both_constant"] is False
    assert rows["weakly-commutative"]["holds"] is False
    assert rows["compatible"]["holds"] is True
    assert rows["rational-two-map"]["undefined_pairs"] == 0


def test_classify_affine_pair_both_orientations(integer_line, capsys):
    # --map names the dominating map, --map2 the dominated one
    code, out, _ = run(
        ["classify", "--space", integer_line, "--map", "G", "--map2", "H"], capsys
    )
    assert code == 0
    assert out.splitlines() == [
        "classification on the integer line:",
        "  domination-of-second-by-first: minimal_constant=0"
        " no_finite_constant=False range_included=True",
    ]
    code, out, _ = run(
        ["classify", "--space", integer_line, "--map", "H", "--map2", "G"], capsys
    )
    assert code == 0
    assert "no_finite_constant=True" in out


# -- fix -------------------------------------------------------------


def test_fix_all_orbits(finite, capsys):
    code, out, _ = run(["fix", "--space", finite, "--map", "T"], capsys)
    assert code == 0
    assert out.splitlines() == [
        "fixed points: 0",
        "0 -> 0: settles at 0 (index 0)",
        "1 -> 0 -> 0: settles at 0 (index 1)",
        "2 -> 1 -> 0 -> 0: settles at 0 (index 2)",
    ]


def test_fix_single_start(finite, capsys):
    code, out, _ = run(
        ["fix", "--space", finite, "--map", "T", "--start", "2"], capsys
    )
    assert code == 0
    assert out == "2 -> 1 -> 0 -> 0: settles at 0 (index 2)\n"


def test_fix_truncation(two_point, capsys):
    code, out, _ = run(
        ["fix", "--space", two_point, "--map", "swap", "--start", "0", "--max-steps", "1"],
        capsys,
    )
    assert code == 0
    assert out == "0 -> 1: truncated before repetition\n"


def test_fix_alternating(two_point, capsys):
    code, out, _ = run(
        ["fix", "--space", two_point, "--map", "swap", "--map2", "id", "--start", "0"],
        capsys,
    )
    assert code == 0
    assert out == "0 -> 1 -> 1 -> 0 -> 0: eventually periodic (period 4)\n"


def test_fix_bad_start(finite, capsys):
    code, _, err = run(
        ["fix", "--space", finite, "--map", "T", "--start", "nonsense"], capsys
    )
    assert code == 2
    assert "error: --start" in err


# -- hausdorff -------------------------------------------------------


def test_hausdorff_text_and_json(finite, capsys):
    code, out, _ = run(
        ["hausdorff", "--space", finite, "--first", "[[0]]", "--second", "[[2]]"],
        capsys,
    )
    assert code == 0 and out == "hausdorff distance: 2\n"
    code, out, _ = run(
        ["hausdorff", "--space", finite, "--first", "[[0],[2]]", "--second", "[[1]]"],
        capsys,
    )
    assert code == 0 and out == "hausdorff distance: 1\n"
    code, out, _ = run(
        [
            "hausdorff",
            "--space",
            finite,
            "--first",
            "[[0]]",
            "--second",
            "[[2]]",
            "--format",
            "json",
        ],
        capsys,
    )
    assert json.loads(out) == {"command": "hausdorff", "distance": 2}


def test_hausdorff_rejects_alien_points(finite, capsys):
    code, _, err = run(
        ["hausdorff", "--space", finite, "--first", "[[9]]", "--second", "[[0]]"],
        capsys,
    )
    assert code == 2
    assert err == "error: --first: 9 is not a point of the space\n"


# -- fpp -------------------------------------------------------------


def test_fpp_two_point_fails_with_witness(two_point, capsys):
    code, out, _ = run(["fpp", "--space", two_point], capsys)
    assert code == 0
    assert out == (
        "fixed point property: fails\n"
        "witness map without fixed points: {0->1, 1->0}\n"
    )


def test_fpp_expect_pass_exit_codes(tmp_path, two_point, capsys):
    code, _, _ = run(["fpp", "--space", two_point, "--expect-pass"], capsys)
    assert code == 1
    singleton = write(
        tmp_path,
        "one.json",
        {
            "dimension": 1,
            "points": [[5]],
            "adjacency": {"type": "cu", "u": 1},
            "metric": {"type": "lp", "p": "1"},
        },
    )
    code, out, _ = run(["fpp", "--space", singleton, "--expect-pass"], capsys)
    assert code == 0
    assert out == "fixed point property: holds\n"


def test_fpp_json_witness_table(two_point, capsys):
    code, out, _ = run(
        ["fpp", "--space", two_point, "--all-maps", "--format", "json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["restricted_to_continuous"] is False
    assert payload["holds"] is False
    assert payload["witness"] == [[[0], [1]], [[1], [0]]]


# -- search ----------------------------------------------------------


def test_search_counterexample_text(capsys):
    code, out, _ = run(
        ["search", "--assertion", "dominated-common-fix", "--size-bound", "2"], capsys
    )
    assert code == 0
    assert out.splitlines() == [
        "dominated-common-fix: counterexample",
        "space: 2 point(s) in Z^1 with c1, metric l1",
        "M1: {0->0, 1->0}",
        "M2: {0->1, 1->1}",
        "parameter: 1/4",
        "replayed: True",
        "hypothesis_hits: 11",
        "instances_scanned: 13",
        "space_metric_combinations: 4",
    ]


def test_search_expect_pass_codes(capsys):
    code, _, _ = run(
        [
            "search",
            "--assertion",
            "dominated-common-fix",
            "--size-bound",
            "2",
            "--expect-pass",
        ],
        capsys,
    )
    assert code == 1
    code, out, _ = run(
        [
            "search",
            "--assertion",
            "quasi-fixed-point",
            "--size-bound",
            "2",
            "--expect-pass",
        ],
        capsys,
    )
    assert code == 0
    assert out.startswith("quasi-fixed-point: exhausted\n")


def test_search_witness_document_is_reusable(tmp_path, capsys):
    code, out, _ = run(
        [
            "search",
            "--assertion",
            "dominated-common-fix",
            "--size-bound",
            "2",
            "--format",
            "json",
        ],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    witness = payload["witness"]
    assert witness["replayed"] is True
    assert witness["param"] == "1/4"
    reread = write(tmp_path, "witness.json", witness["document"])
    code, out, _ = run(
        ["classify", "--space", reread, "--map", "M1", "--map2", "M2"], capsys
    )
    assert code == 0
    assert "classification on 2 point(s)" in out


def test_search_bad_params(capsys):
    code, _, err = run(
        ["search", "--assertion", "quasi-fixed-point", "--params", "1/0"], capsys
    )
    assert code == 2
    assert err.startswith("error: --params:")


def test_search_rejects_bad_assertion_flag(capsys):
    with pytest.raises(SystemExit):
        main(["search", "--assertion", "made-up"])
    assert "invalid choice" in capsys.readouterr().err


# -- verify-paper ----------------------------------------------------


def test_verify_paper_passes_and_is_byte_identical(capsys):
    code, first, _ = run(["verify-paper"], capsys)
    assert code == 0
    code, second, _ = run(["verify-paper"], capsys)
    assert code == 0
    assert first == second
    lines = first.splitlines()
    assert lines[0] == "PASS  contraction-theorem-exhaustive"
    assert lines[-1] == "PASS  overall (10/10 entries)"
    code, js1, _ = run(["verify-paper", "--format", "json"], capsys)
    code, js2, _ = run(["verify-paper", "--format", "json"], capsys)
    assert js1 == js2
    assert json.loads(js1)["passed"] is True


# -- error paths -----------------------------------------------------


def test_missing_document(tmp_path, capsys):
    code, _, err = run(
        ["check-map", "--space", str(tmp_path / "absent.json"), "--map", "T"], capsys
    )
    assert code == 2
    assert "cannot read" in err


def test_unknown_map_name(finite, capsys):
    code, _, err = run(["check-map", "--space", finite, "--map", "X"], capsys)
    assert code == 2
    assert err == "error: maps: no map named 'X'; document has: J, S, T\n"


def test_half_step_map_rejected_naming_the_point(tmp_path, capsys):
    # t -> t/2 + 1 lands off-lattice first at t = 1
    doc = write(
        tmp_path,
        "half.json",
        {
            "dimension": 1,
            "points": [[0], [1], [2], [3], [4]],
            "adjacency": {"type": "cu", "u": 1},
            "metric": {"type": "lp", "p": "1"},
            "maps": [
                {
                    "name": "F",
                    "pairs": [
                        [[0], [1]],
                        [[1], [1.5]],
                        [[2], [2]],
                        [[3], [2.5]],
                        [[4], [3]],
                    ],
                }
            ],
        },
    )
    code, _, err = run(["check-map", "--space", doc, "--map", "F"], capsys)
    assert code == 2
    assert err == "error: map value [1.5] at 1 is not a lattice point\n"


def test_float_in_structural_field(tmp_path, capsys):
    doc = write(
        tmp_path,
        "bad.json",
        {
            "dimension": 1,
            "points": [[0], [1]],
            "adjacency": {"type": "cu", "u": 1},
            "metric": {"type": "lp", "p": 0.5},
        },
    )
    code, _, err = run(["fpp", "--space", doc], capsys)
    assert code == 2
    assert 'float literals are not allowed; write "num/den"' in err


def test_finite_command_on_integer_line(integer_line, capsys):
    code, _, err = run(
        ["hausdorff", "--space", integer_line, "--first", "[[0]]", "--second", "[[1]]"],
        capsys,
    )
    assert code == 2
    assert "needs a finite space document" in err


def test_console_entry_point(finite):
    proc = subprocess.run(
        [sys.executable, "-m", "digitop.cli", "check-map", "--space", finite, "--map", "T"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "fixed points: 0" in proc.stdout
