from __future__ import annotations

import json
import subprocess
import sys
import textwrap

import pytest

from finoperad import cli, monoids


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def cat(objects, arrows, composition=()):
    """Category JSON from objects, [name, source, target] arrows and extra composites."""
    homs = {}
    for a in objects:
        homs[(a, a)] = [f"id{a}"]
    for name, s, t in arrows:
        homs.setdefault((s, t), []).append(name)
    return {
        "objects": list(objects),
        "homs": [{"source": s, "target": t, "morphisms": ms} for (s, t), ms in homs.items()],
        "identities": [[a, f"id{a}"] for a in objects],
        "composition": [list(c) for c in composition],
    }


def poset_max():
    arrows = {(0, 0): "id0", (1, 1): "id1", (0, 1): "u"}
    source = {v: k for k, v in arrows.items()}
    data = cat([0, 1], [["u", 0, 1]])
    names = list(arrows.values())
    data["tensor"] = {
        "objects": [[a, b, max(a, b)] for a in (0, 1) for b in (0, 1)],
        "morphisms": [
            [f, g, arrows[(max(source[f][0], source[g][0]), max(source[f][1], source[g][1]))]]
            for f in names for g in names
        ],
    }
    data["unit"] = 0
    return data


# ---- factor


def test_factor_example(capsys):
    code, rep, _ = run(capsys, "factor", '{"m":3,"n":2,"values":[2,0,2]}')
    assert code == 0 and rep["status"] == "pass"
    assert rep["inert"] == {"m": 3, "n": 2, "values": [1, 0, 2]}
    assert rep["active"] == {"m": 2, "n": 2, "values": [2, 2]}
    assert rep["factorizations"] == 2


def test_factor_identity(capsys):
    code, rep, _ = run(capsys, "factor", '{"m":2,"n":2,"values":[1,2]}')
    assert code == 0
    assert rep["inert"] == rep["active"] == {"m": 2, "n": 2, "values": [1, 2]}


@pytest.mark.parametrize("text,field", [('{"m":3,"values":[2,0,2]}', "'n'"), ('{"m":3,"n":2,"values":[2,0]}', "values"), ('{"m":3,', "JSON")])
def test_factor_malformed(capsys, text, field):
    code, rep, _ = run(capsys, "factor", text)
    assert code == 2 and rep["status"] == "error"
    assert field in rep["error"]


# ---- check


def test_check_segal_monoid(capsys):
    data = {"monoid": monoids.cyclic_monoid(3).to_json()}
    code, rep, _ = run(capsys, "check", "segal", json.dumps(data), "--truncation", "3")
    assert code == 0 and rep["truncation"] == 3
    assert rep["monoid"] == data["monoid"]


def test_check_segal_gamma_set_json(capsys):
    from finoperad import segal

    M = segal.comm_monoid_to_gamma(monoids.cyclic_group(2), 3)
    code, rep, _ = run(capsys, "check", "segal", json.dumps(M.to_json()))
    assert code == 0


def test_check_segal_constant_fails_at_zero(capsys):
    code, rep, _ = run(capsys, "check", "segal", '{"constant": ["a", "b"]}')
    assert code == 1 and rep["status"] == "fail"
    assert rep["witnesses"][0]["n"] == 0


def test_check_operad_ass(capsys):
    code, rep, _ = run(capsys, "check", "operad", '{"builtin": "ass"}', "--bound", "3")
    assert code == 0 and rep["bound"] == 3


def test_check_operad_unknown_builtin(capsys):
    code, rep, _ = run(capsys, "check", "operad", '{"builtin": "lie"}')
    assert code == 2


def test_check_bimodule(capsys):
    A, B = monoids.cyclic_group(2), monoids.trivial()
    good = {"left": A.to_json(), "right": B.to_json(), "elements": ["p", "q"],
            "left_action": [["p", "q"], ["q", "p"]], "right_action": [["p"], ["q"]]}
    code, rep, _ = run(capsys, "check", "bimodule", json.dumps(good))
    assert code == 0 and all(rep["conditions"].values())
    bad = dict(good, left_action=[["p", "q"], ["p", "p"]])
    code, rep, _ = run(capsys, "check", "bimodule", json.dumps(bad))
    assert code == 1 and rep["witnesses"][0]["condition"] == "bimodule laws"


def test_check_dayconv_file(capsys, tmp_path):
    y1 = {"carriers": [[0, ["u"]], [1, ["id1"]]], "actions": [["u", [0]]]}
    path = tmp_path / "day.json"
    path.write_text(json.dumps({"category": poset_max(), "F": y1, "G": y1, "H": y1}))
    code, rep, _ = run(capsys, "check", "dayconv", str(path))
    assert code == 0
    assert rep["convolution_sizes"] == [[0, 1], [1, 1]]
    assert "associativity" in rep["checks"]


def test_check_dayconv_bad_presheaf(capsys):
    y1 = {"carriers": [[0, ["u"]], [1, ["id1"]]], "actions": [["u", [0]]]}
    broken = {"carriers": [[0, ["a"]], [1, ["b"]]], "actions": [["u", [3]]]}
    code, rep, _ = run(capsys, "check", "dayconv", json.dumps({"category": poset_max(), "F": y1, "G": broken}))
    assert code == 1 and rep["witnesses"][0]["presheaf"] == "G"


def test_check_dayconv_random(capsys):
    code, rep, _ = run(capsys, "check", "dayconv", '{"random": 4}')
    assert code == 0


def test_check_fibration(capsys):
    code, _, _ = run(capsys, "check", "fibration", '{"standard": "fintimes", "N": 2}')
    assert code == 0
    code, rep, _ = run(capsys, "check", "fibration", '{"standard": "triv", "N": 2}')
    assert code == 1 and rep["witness_count"] > len(rep["witnesses"]) - 1


def test_check_fibration_explicit(capsys):
    E = cat(["x", "y"], [["f", "x", "y"]])
    B = cat(["b"], [])
    functor = {"objects": [["x", "b"], ["y", "b"]], "morphisms": [["idx", "idb"], ["idy", "idb"], ["f", "idb"]]}
    code, rep, _ = run(capsys, "check", "fibration", json.dumps({"source": E, "target": B, "functor": functor}))
    assert code == 0


def test_check_cartesian(capsys):
    data = poset_max()
    data["diagonals"] = [[0, "id0"], [1, "id1"]]
    code, rep, _ = run(capsys, "check", "cartesian", json.dumps(data))
    assert code == 1 and rep["witnesses"][0]["condition"] == "unit is terminal"


def test_check_cartesian_missing_diagonal(capsys):
    data = poset_max()
    data["diagonals"] = [[0, "id0"]]
    code, rep, _ = run(capsys, "check", "cartesian", json.dumps(data))
    assert code == 2


# ---- betti


def test_betti_terminal_object(capsys):
    data = cat(["a", "t"], [["!", "a", "t"]])
    code, rep, _ = run(capsys, "betti", json.dumps(data), "--expect-contractible")
    assert code == 0 and rep["betti"] == [1, 0, 0]


def test_betti_square_completion(capsys):
    data = {"square_completion": {"x0": 1, "x": 2, "y0": 1, "alpha": [0], "theta": [0]}}
    code, rep, _ = run(capsys, "betti", json.dumps(data), "-d", "2", "--expect-contractible")
    assert code == 0 and rep["betti"] == [1, 0, 0]


def test_betti_discrete_fails(capsys):
    code, rep, _ = run(capsys, "betti", json.dumps(cat([0, 1], [])), "--expect-contractible")
    assert code == 1 and rep["betti"][0] == 2


def test_betti_without_expectation_passes(capsys):
    code, rep, _ = run(capsys, "betti", json.dumps(cat([0, 1], [])))
    assert code == 0 and rep["betti"] == [2, 0, 0]


def test_betti_budget(capsys, monkeypatch):
    code, rep, _ = run(capsys, "betti", '{"standard": "finseg", "N": 2}', "--budget", "5")
    assert code == 2 and rep["error"].startswith("budget")
    monkeypatch.setenv("FINOPERAD_BUDGET", "5")
    code, _, _ = run(capsys, "betti", '{"standard": "finseg", "N": 2}')
    assert code == 2


# ---- reports


def test_reports_are_deterministic(capsys, tmp_path):
    args = ["check", "fibration", '{"standard": "triv", "N": 2}']
    _, _, first = run(capsys, *args)
    out = tmp_path / "r.json"
    _, _, second = run(capsys, *args, "--json-out", str(out))
    assert first == second
    assert out.read_text() == first


def test_reports_go_to_stdout_and_timing_to_stderr(capsys):
    cli.main(["factor", '{"m":1,"n":1,"values":[1]}'])
    captured = capsys.readouterr()
    assert "elapsed_ms" in captured.err and "elapsed_ms" not in captured.out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "finoperad.cli", "factor", "-"], input='{"m":1,"n":0,"values":[0]}',
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["inert"] == {"m": 1, "n": 0, "values": [0]}


def test_suite_only(capsys):
    code, rep, _ = run(capsys, "suite", "quick", "--only", "factorization", "operad")
    assert code == 0
    assert [c["criterion"] for c in rep["criteria"]] == ["factorization system", "operad categories"]


MUTANT = textwrap.dedent(
    """
    import sys
    import numpy as np
    from finoperad import cli, finseg

    original = finseg._smash_values

    def mutant(fv, f_target, gv, g_target):
        out = original(fv, f_target, gv, g_target)
        # forget the second factor's target size once it exceeds 1
        return np.where(out > 0, (out - 1) % max(1, g_target) + 1, 0) if g_target > 2 else out

    finseg._smash_values = mutant
    sys.exit(cli.main(["suite", "quick"]))
    """
)


def test_suite_quick_catches_smash_mutation():
    proc = subprocess.run([sys.executable, "-c", MUTANT], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 1, proc.stderr[-2000:]
    report = json.loads(proc.stdout)
    failed = [c["criterion"] for c in report["criteria"] if c["status"] == "fail"]
    assert "smash associativity, unit and bifunctoriality" in failed
