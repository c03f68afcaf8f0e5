from __future__ import annotations

import json

import pytest

from tlzero import diagrams as dg
from tlzero.cli import main
from tlzero.commutor import sigma
from tlzero.diagrams import Diagram
from tlzero.jones_wenzl import jw
from tlzero.morphisms import Morphism


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_dims(capsys):
    assert run_json(capsys, "dims", "--m", "4", "--n", "4") == (0, {"dim": 14})


def test_odd_dims_is_usage_error(capsys):
    code, out, err = run(capsys, "dims", "--m", "1", "--n", "2")
    assert code == 2 and "even" in err


def test_missing_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dims", "--m", "1"])
    assert exc.value.code == 2


def test_enumerate(capsys):
    code, obj = run_json(capsys, "enumerate", "--mode", "cap", "--n", "4")
    assert code == 0 and obj["count"] == 6
    code, obj = run_json(capsys, "enumerate", "--m", "3", "--n", "3")
    assert obj["count"] == 5
    assert {Diagram.from_json(d) for d in obj["diagrams"]} == set(dg.hom(3, 3))


def test_bound_flag(capsys):
    code, out, err = run(capsys, "enumerate", "--m", "6", "--n", "6", "--max", "10")
    assert code == 2 and "bound" in err


def test_jw(capsys):
    code, obj = run_json(capsys, "jw", "--n", "4")
    assert code == 0 and Morphism.from_json(obj) == jw(4)
    code, out, _ = run(capsys, "jw", "--n", "2", "--format", "ascii")
    assert out.splitlines() == ["1 *", "    | |", "- 1 *", "    \\_/", "    /-\\"]


def test_compose(capsys):
    cap = json.dumps(dg.cap().to_json())
    cup = json.dumps(dg.cup().to_json())
    code, obj = run_json(capsys, "compose", "--g", cap, "--f", cup)
    assert code == 0 and Morphism.from_json(obj) == Morphism.identity(0)
    code, obj = run_json(capsys, "compose", "--g", cap, "--f", cup, "--param", "generic")
    assert obj["terms"][0]["coeff"] == "1 + q^2"


def test_compose_bad_json(capsys):
    code, _, err = run(capsys, "compose", "--g", "{nope", "--f", "{}")
    assert code == 2 and "--g" in err


def test_compose_file_input(capsys, tmp_path):
    p = tmp_path / "cup.json"
    p.write_text(json.dumps(dg.cup().to_json()))
    code, obj = run_json(capsys, "compose", "--g", json.dumps(dg.cap().to_json()), "--f", f"@{p}")
    assert code == 0 and Morphism.from_json(obj) == Morphism.identity(0)


def test_blocks(capsys):
    code, obj = run_json(capsys, "blocks", "--m", "4")
    assert obj["blocks"] == [{"k": 4, "r": 1}, {"k": 2, "r": 3}, {"k": 0, "r": 2}]


def test_hat_and_mobius(capsys):
    ident = json.dumps(dg.identity(2).to_json())
    code, obj = run_json(capsys, "hat", "--diagram", ident)
    assert code == 0 and Morphism.from_json(obj) == jw(2)
    code, obj = run_json(capsys, "mobius", "--diagram", ident)
    assert code == 0 and obj["equals_hat"] and Morphism.from_json(obj["bracket"]) == jw(2)
    code, obj = run_json(capsys, "hat", "--expand", ident)
    assert [t["coeff"] for t in obj["hat_expansion"]] == ["1", "1"]
    code, _, err = run(capsys, "hat")
    assert code == 2


def test_crystal(capsys):
    assert run_json(capsys, "crystal-tensor", "--lam", "2", "--mu", "3")[1]["components"] == [5, 3, 1]
    code, obj = run_json(capsys, "crystal-components", "--n", "3")
    assert code == 0 and [c["lambda"] for c in obj["components"]] == [3, 1, 1]
    code, out, _ = run(capsys, "crystal-components", "--n", "2", "--edges")
    assert out.splitlines() == ["00 -f-> 10", "10 -f-> 11"]
    code, _, _ = run(capsys, "crystal-components", "--n", "20")
    assert code == 2


def test_sigma(capsys):
    code, obj = run_json(capsys, "sigma", "--m", "1", "--n", "3")
    assert code == 0 and len(obj["sigma"]["terms"]) == 7


def test_interval_reversal(capsys):
    code, obj = run_json(capsys, "interval-reversal", "--p", "1", "--q", "3", "--n", "3")
    assert code == 0
    code, _, err = run(capsys, "interval-reversal", "--p", "3", "--q", "2", "--n", "3")
    assert code == 2


def test_cactus_check(capsys):
    code, obj = run_json(capsys, "cactus-check", "--n", "4", "--word", "1,3;2,4")
    assert code == 0 and obj["ok"]


def test_functor_check(capsys):
    code, obj = run_json(capsys, "functor-check", "--morphism", json.dumps(dg.cup().to_json()))
    assert code == 0


def test_fiber_validate(capsys):
    good = json.dumps({"b": [[0, 1], [0, 0]], "t": [[0, 1], [0, 0]]})
    code, obj = run_json(capsys, "fiber-validate", "--triple", good)
    assert code == 0 and obj["valid"] and obj["b_of_t"] == "1"
    bad = json.dumps({"b": [[0, 1], [0, 0]], "t": [[0, 2], [0, 0]]})
    code, obj = run_json(capsys, "fiber-validate", "--triple", bad)
    assert code == 1 and obj["error"].startswith("TraceNotOne")
    code, _, err = run(capsys, "fiber-validate", "--triple", "{}")
    assert code == 2


def test_fiber_invariant(capsys):
    good = json.dumps({"b": [[0, 1], [0, 0]], "t": [[0, 1], [0, 0]]})
    code, obj = run_json(capsys, "fiber-invariant", "--triple", good)
    assert code == 0 and obj["charpoly"] == ["-1"] and obj["trace"] == "1"


def test_verify(capsys):
    code, obj = run_json(capsys, "verify", "coboundary", "--max", "6")
    assert code == 0 and obj["ok"]
    code, out, _ = run(capsys, "verify", "jw", "--max", "5", "--format", "ascii")
    assert code == 0 and all(line.startswith("PASS") for line in out.splitlines())


def test_render_round_trip(capsys):
    d = dg.tensor(dg.cap(), dg.identity(1))
    code, out, _ = run(capsys, "render", "--input", json.dumps(d.to_json()))
    assert code == 0 and Diagram.from_json(json.loads(out)) == d
    code, out, _ = run(capsys, "render", "--input", json.dumps(jw(2).to_json()), "--render", "tikz")
    assert out.startswith("\\begin{tikzpicture}") and out.count("\\begin{scope}") == 2


def test_context_mismatch_is_usage_error(capsys):
    f = json.dumps(Morphism.identity(1).to_json())
    code, _, err = run(capsys, "compose", "--g", f, "--f", f, "--param", "generic")
    assert code == 2


def test_jw4_ascii_listing(capsys):
    code, out, _ = run(capsys, "jw", "--n", "4", "--render", "ascii")
    heads = [line for line in out.splitlines() if line.endswith("*")]
    assert code == 0 and len(heads) == 5
    assert sorted(h.split()[0] for h in heads) == ["+", "-", "-", "-", "1"]


def test_render_sigma_json(capsys):
    code, out, _ = run(capsys, "render", "--input", json.dumps(sigma(1, 2).to_json()))
    assert code == 0 and Morphism.from_json(json.loads(out)) == sigma(1, 2)
