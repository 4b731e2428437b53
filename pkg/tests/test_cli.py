from __future__ import annotations

import json

import pytest

from idiom import serialize as sz
from idiom.cli import main
from idiom.fixtures import n5


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json", "--deterministic")
    return code, json.loads(out)


def test_validate_named_and_file(capsys, tmp_path, B2):
    code, out, _ = run(capsys, "validate", "--lattice", "B2")
    assert code == 0 and "B2: 4 elements, 4 covers" in out
    f = tmp_path / "b2.json"
    f.write_text(json.dumps(sz.lattice_to_json(B2)))
    dot = tmp_path / "b2.dot"
    code, data = run_json(capsys, "validate", "--lattice", str(f), "--dot", str(dot))
    assert code == 0 and data["schema"] == 1 and data["result"]["elements"] == list(B2.labels)
    assert dot.read_text().startswith("digraph")


def test_bad_input_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"elements": ["0", "1"], "covers": [["0", "1"], ["1", "0"]]}')
    code, _, err = run(capsys, "validate", "--lattice", str(bad))
    assert code == 1 and err.startswith("error: ")
    code, _, err = run(capsys, "validate", "--lattice", "nowhere")
    assert code == 1 and "ParseError" in err
    with pytest.raises(SystemExit) as exc:
        main(["closures", "--lattice", "C3", "sideways"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["chi", "--lattice", "C3"])
    assert exc.value.code == 2


def test_modular_and_frame(capsys, tmp_path):
    assert run(capsys, "modular", "--lattice", "M3")[0] == 0
    f = tmp_path / "n5.json"
    f.write_text(json.dumps(sz.lattice_to_json(n5())))
    code, out, _ = run(capsys, "modular", "--lattice", str(f))
    assert code == 1 and "FAIL modular" in out
    code, data = run_json(capsys, "frame", "--lattice", "M3")
    assert code == 1 and data["result"] == {"frame": False, "implication": False}
    assert run(capsys, "frame", "--lattice", "B2")[0] == 0


def test_intervals_and_closures(capsys):
    code, data = run_json(capsys, "intervals", "--lattice", "C3", "--intervals", "0,m")
    assert data["result"]["level"] == "abstract"
    code, data = run_json(capsys, "closures", "dvs", "--lattice", "C3", "--intervals", "0,m")
    assert code == 0 and data["result"]["level"] == "division"
    code, _, err = run(capsys, "closures", "basic", "--lattice", "C3", "--intervals", "0,q")
    assert code == 1 and "unknown element" in err
    code, data = run_json(capsys, "operators", "crt", "--lattice", "C3", "--intervals", "0,0;m,m;1,1")
    assert code == 0 and len(data["result"]["intervals"]) == 5  # trivials and the two covers


def test_nuclei_and_quotient(capsys):
    code, data = run_json(capsys, "nuclei", "--lattice", "C3")
    assert code == 0 and data["result"]["count"] == 4
    code, data = run_json(capsys, "quotient", "--lattice", "C3", "--nucleus", "j1")
    assert code == 0 and len(data["result"]["elements"]) == 2
    code, _, err = run(capsys, "nuclei", "--lattice", "B2xC2", "--max-size", "4")
    assert code == 1 and "SizeLimit" in err


def test_chi_xi_and_checks(capsys):
    code, data = run_json(capsys, "chi", "--lattice", "B2", "--interval", "0,a")
    assert data["result"]["map"] == {"0": "b", "a": "1", "b": "b", "1": "1"}
    code, data = run_json(capsys, "xi", "--lattice", "C3", "--interval", "0,1")
    assert code == 0 and len(data["result"]["intervals"]) == 6
    assert run(capsys, "allocation-check", "--lattice", "B2", "--map", "chi")[0] == 0
    assert run(capsys, "aspect-check", "--lattice", "B2", "--map", "xi")[0] == 0
    code, out, _ = run(capsys, "allocation-check", "--lattice", "B2", "--map", "xi")
    assert code == 1 and "axiom 2" in out


def test_map_file_needs_values(capsys, tmp_path):
    from idiom import allocations as al
    from idiom.fixtures import c3
    from idiom.lattice import chain

    f = tmp_path / "r.json"
    f.write_text(json.dumps(sz.ivm_to_json(al.R(c3(), chain(2), 1))))
    assert run(capsys, "aspect-check", "--lattice", "C3", "--map", str(f), "--values", "C2")[0] == 0
    code, _, err = run(capsys, "aspect-check", "--lattice", "C3", "--map", str(f))
    assert code == 1 and "--values" in err


def test_decompose_and_support(capsys):
    code, data = run_json(capsys, "decompose", "--lattice", "B2", "--interval", "0,1")
    assert code == 0 and sorted(data["result"]["parts"].values()) == ["a", "b"]
    assert data["result"]["transcript"][-1] == "verified: independent, large, inert"
    code, data = run_json(capsys, "support", "--lattice", "C3", "--interval", "0,1")
    assert data["result"]["support"] == ["j1"]
    code, _, err = run(capsys, "decompose", "--lattice", "C3", "--interval", "m,m")
    assert code == 1 and "Absent" in err


def test_dimensions_and_filtration(capsys):
    code, out, _ = run(capsys, "gabriel-dim", "--lattice", "B2")
    assert code == 0 and out.splitlines()[-1] == "Gabriel dimension: 1"
    code, data = run_json(capsys, "boyle-dim", "--lattice", "C3")
    assert code == 0 and data["result"]["dimension"] == 1
    code, data = run_json(capsys, "filtration", "--lattice", "C3", "--op", "id")
    assert code == 0 and data["result"]["bnd"] == 0
    code, data = run_json(capsys, "filtration", "--lattice", "C3", "--op", "crt")
    assert code == 0 and data["result"]["bnd"] == 1
    code, _, err = run(capsys, "filtration", "--lattice", "C3", "--intervals", "0,m")
    assert code == 1 and "NotDivision" in err


def test_deterministic_output_is_byte_identical(capsys):
    outs = {run(capsys, "verify", "--suite", "prop-03", "--json", "--deterministic")[1] for _ in range(2)}
    assert len(outs) == 1
    data = json.loads(outs.pop())
    assert "timestamp" not in data and all(v["seconds"] == 0.0 for v in data["verdicts"])
    loose = json.loads(run(capsys, "verify", "--suite", "prop-03", "--json")[1])
    assert "timestamp" in loose


def test_corpus_out_round_trips(capsys, tmp_path):
    out = tmp_path / "corpus"
    code, data = run_json(capsys, "corpus", "--out", str(out))
    assert code == 0 and (out / "manifest.json").exists()
    names = [e["name"] for e in data["result"]["entries"]]
    code, again = run_json(capsys, "corpus", "--corpus", str(out / "manifest.json"))
    assert code == 0 and [e["name"] for e in again["result"]["entries"]] == names
    code, _, err = run(capsys, "verify", "--suite", "prop-03", "--corpus", str(tmp_path / "none.json"))
    assert code == 1 and "unknown corpus" in err
