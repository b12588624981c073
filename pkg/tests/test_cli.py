import json
from pathlib import Path

import pytest

from vbraid.cli import main

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"
BETA = "(s2^-1 r1 s2 r3)^3"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


# verify


def test_verify_m5(capsys):
    code, d = run_json(capsys, "verify", "--rep", "M", "--n", "5")
    assert code == 0
    assert d["F1"] == "fails" and d["F2"] == "fails"


def test_verify_a2(capsys):
    code, out, _ = run(capsys, "verify", "--rep", "A", "--n", "2")
    assert code == 0 and out.rstrip().endswith("OK")


def test_verify_psi(capsys):
    code, d = run_json(capsys, "verify", "--rep", "PSI", "--n", "4")
    assert code == 0
    assert d["F1"] == "holds" and d["F2"] == "fails"


def test_verify_bad_n(capsys):
    code, _, err = run(capsys, "verify", "--rep", "M", "--n", "1")
    assert code == 2 and "at least 2" in err


def test_unknown_rep_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--rep", "NOPE", "--n", "3"])
    assert exc.value.code == 2


# image


def test_image_single_generator(capsys):
    code, out, _ = run(capsys, "image", "--rep", "MTILDE", "--n", "4", "--word", BETA, "--gen", "x2")
    assert code == 0 and out.strip() == "x2 -> x2"


def test_image_sw_identity(capsys):
    code, d = run_json(capsys, "image", "--rep", "SW", "--n", "4", "--word", BETA)
    assert code == 0 and all(k == v for k, v in d.items())


def test_image_empty_word(capsys):
    code, d = run_json(capsys, "image", "--rep", "A", "--n", "2", "--word", "")
    assert code == 0 and d == {"x1": "x1", "x2": "x2", "y": "y"}


def test_image_parse_error(capsys):
    code, _, err = run(capsys, "image", "--rep", "A", "--n", "2", "--word", "s7")
    assert code == 2 and err


def test_image_unknown_generator(capsys):
    code, _, _ = run(capsys, "image", "--rep", "A", "--n", "2", "--word", "s1", "--gen", "q")
    assert code == 2


# group


def test_group_trefoil_diagram(capsys):
    code, d = run_json(capsys, "group", "--diagram", str(DATA / "virtual_trefoil.json"), "--simplify")
    assert code == 0 and len(d["generators"]) == 3
    code, out, _ = run(capsys, "group", "--diagram", str(DATA / "virtual_trefoil.json"), "--simplify", "--ascii")
    assert out.startswith("<") and "⟨" not in out


def test_group_empty_mtilde(capsys):
    code, out, _ = run(capsys, "group", "--rep", "MTILDE", "--braid", "", "--n", "2", "--ascii")
    assert code == 0
    assert out.strip() == "< y1, y2, v1, v2 | v1^-1 v2^-1 v1 v2 >"


def test_group_layered_matches_direct(capsys, tmp_path):
    _, layered = run_json(capsys, "group", "--rep", "M", "--braid", "s1", "--n", "2", "--layered", "--simplify")
    _, direct = run_json(capsys, "group", "--rep", "M", "--braid", "s1", "--n", "2", "--simplify")
    reports = []
    for i, pres in enumerate((layered, direct)):
        f = tmp_path / f"p{i}.json"
        f.write_text(json.dumps(pres))
        reports.append(run_json(capsys, "invariants", "--presentation", str(f))[1])
    a, b = reports
    assert a["abelianization"] == b["abelianization"]
    assert a["gamma2_over_gamma3"] == b["gamma2_over_gamma3"]


def test_group_needs_one_source(capsys):
    assert run(capsys, "group", "--n", "2")[0] == 2
    assert run(capsys, "group", "--braid", "s1", "--diagram", "x.json")[0] == 2


def test_group_layered_only_for_m(capsys):
    assert run(capsys, "group", "--rep", "SW", "--braid", "s1", "--n", "2", "--layered")[0] == 2


def test_group_missing_file(capsys):
    assert run(capsys, "group", "--diagram", "/nonexistent.json")[0] == 2


def test_group_budget_warning(capsys, monkeypatch):
    monkeypatch.setenv("VBRAID_TIETZE_BUDGET", "1")
    code, _, err = run(capsys, "group", "--rep", "M", "--braid", "s1 s1 s1", "--n", "2", "--simplify")
    assert code == 0 and "budget" in err


# invariants


@pytest.mark.parametrize("name, rank", [("H", 2), ("G", 1), ("free3", 3)])
def test_invariants_files(capsys, name, rank):
    code, d = run_json(capsys, "invariants", "--presentation", str(DATA / f"{name}.txt"))
    assert code == 0 and d["gamma2_over_gamma3"] == {"free_rank": rank, "torsion": []}


def test_invariants_malformed(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("< a, b | a ^ ^ >")
    assert run(capsys, "invariants", "--presentation", str(f))[0] == 2


# markov


def test_markov_trefoil_all(capsys):
    code, d = run_json(capsys, "markov", "--rep", "MTILDE", "--braid", "s1 s1 s1", "--n", "2", "--all")
    assert code == 0 and d["all_equal"]


def test_markov_m_mixed(capsys):
    code, out, _ = run(capsys, "markov", "--rep", "M", "--braid", "s1 r1", "--n", "2", "--all")
    assert code == 0 and "DIFFERENT" not in out


def test_markov_empty_braid_conjugation(capsys):
    code, _, _ = run(capsys, "markov", "--braid", "", "--n", "2", "--moves", "RealConj(1), VirtConj(1)")
    assert code == 0


def test_markov_bad_moves(capsys):
    assert run(capsys, "markov", "--braid", "s1", "--n", "2", "--moves", "twist(3)")[0] == 2
    assert run(capsys, "markov", "--braid", "s1", "--n", "2")[0] == 2


# kernel demo


def test_kernel_demo(capsys):
    code, out, _ = run(capsys, "kernel-demo")
    assert code == 0
    assert "x1 -> x2^{v3^-1}" in out
    code, d = run_json(capsys, "kernel-demo")
    assert d["verdicts"] == {"SW": "kernel", "BD": "kernel", "MTILDE": "non-kernel"}
    assert d["witness_matches"]


def test_output_is_deterministic(capsys):
    first = run(capsys, "markov", "--braid", "s1 r1", "--n", "2", "--all", "--json")
    second = run(capsys, "markov", "--braid", "s1 r1", "--n", "2", "--all", "--json")
    assert first == second
