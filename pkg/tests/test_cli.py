import json

import pytest

from turanl2.cli import main
from turanl2.formats import load_h3, load_p3, write_cg
from turanl2.colored import build_lambda


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_and_norm(tmp_path, capsys):
    stem = tmp_path / "c6"
    code, out, _ = run(["construct", "--type", "C", "--sizes", "2,2,2", "--output", str(stem)], capsys)
    assert code == 0
    h = load_h3(stem.with_suffix(".h3"))
    p = load_p3(stem.with_suffix(".p3"))
    assert len(h.edges) == 14 and p.sizes == (2, 2, 2)

    code, out, _ = run(["norm", "--input", str(stem.with_suffix(".h3"))], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["l2"] == 120 and payload["identity_holds"] is True


def test_construct_b_and_sweep(tmp_path, capsys):
    stem = tmp_path / "b4"
    code, _, _ = run(["construct", "--type", "B", "--sizes", "2,2", "--output", str(stem)], capsys)
    assert code == 0
    assert len(load_h3(stem.with_suffix(".h3")).edges) == 4
    code, out, _ = run(["construct", "--sweep", "5", "--sizes", ""], capsys)
    assert code == 0 and out.startswith("n1,n2,n3,l2")


def test_classify_improve_roundtrip(tmp_path, capsys):
    stem = tmp_path / "c6"
    run(["construct", "--type", "C", "--sizes", "2,2,2", "--output", str(stem)], capsys)
    code, out, _ = run(
        ["classify", "--input", str(stem.with_suffix(".h3")),
         "--partition", str(stem.with_suffix(".p3"))],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["intersection"] == 14
    assert payload["families"]["B"]["size"] == 0

    code, out, _ = run(
        ["improve", "--input", str(stem.with_suffix(".h3")),
         "--partition", str(stem.with_suffix(".p3")), "--delta4", "1/40"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["inside_construction"] is True and payload["steps"] == []


def test_census_subcommand(tmp_path, capsys):
    code, out, err = run(["census", "--problem", "k43-l2", "--n", "4"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["optimum"] == 15
    assert "wall" in err  # human log goes to stderr, never into the JSON
    assert "wall_time" not in payload


def test_census_artifacts(tmp_path, capsys):
    stem = tmp_path / "k4"
    code, _, _ = run(
        ["census", "--problem", "k43-l2", "--n", "4", "--output", str(stem), "--json"],
        capsys,
    )
    assert code == 0
    csv = stem.with_suffix(".csv").read_text()
    assert csv.splitlines()[1].startswith("k43-l2,4,15,1,")
    extremal = load_h3(tmp_path / "k4-extremal0.h3")
    assert extremal.n == 4 and len(extremal.edges) == 3


def test_mantel_subcommand(capsys):
    code, out, _ = run(["mantel", "--n", "2", "--objective", "edges", "--mode", "exhaustive"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["optimum"] == 9 and payload["extra"]["edge_bound_holds"] is True


def test_symmetrize_subcommand(tmp_path, capsys):
    path = tmp_path / "lam.cg"
    path.write_text(write_cg(build_lambda(2, 2, 2)))
    code, out, _ = run(["symmetrize", "--input", str(path)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["merge_steps"] == 0 and payload["facts"]["all_pass"] is True


def test_ineq_subcommand(capsys):
    code, out, _ = run(["ineq", "--resolution", "9", "--interval"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["worst_margin_num"] == 0  # 3 | 9: equality at the barycenter
    assert payload["certificate"]["certified"] is True


def test_check_subcommand_quick(capsys):
    code, out, _ = run(["check", "--suite", "2,3,12", "--quick"], capsys)
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("[")]
    assert len(lines) == 3 and all(l.startswith("[PASS]") for l in lines)


def test_reports_are_byte_identical_for_same_config(tmp_path, capsys):
    stem = tmp_path / "c9"
    run(["construct", "--type", "C", "--sizes", "3,3,3", "--output", str(stem)], capsys)
    argv = ["norm", "--input", str(stem.with_suffix(".h3")), "--seed", "11"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["census", "--problem", "nope", "--n", "3"])
    assert exc.value.code == 2
