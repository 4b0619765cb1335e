import json

import pytest

from msreg.cli import compute_invariants, format_ideal, main, parse_ideal, run_target
from msreg.geometry import scroll_ideal, xf_ideal
from msreg.recipes import F_73, RecipeError, compile_program, parse_program


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def ideal_lines(text):
    return [l for l in text.splitlines() if l and not l.startswith("#")]


# -- recipes ------------------------------------------------------------------------------------

def test_parse_steps():
    prog = parse_program("scroll 1 2\ndivisor H+3F section g0=s^4+t^4,g1=s*t^3")
    assert [s.kind for s in prog.steps] == ["scroll", "divisor"]
    assert parse_program("scroll 3 | project center x0-x3, x1+x2").steps[1].kind == "project-center"
    assert [s.kind for s in parse_program("example-7.3").steps] == ["xf"]


@pytest.mark.parametrize("text,where", [
    ("scroll 1 x", (1, None)),
    ("scroll 1 2\ndivisor H+3F section gx=s", (2, 22)),
    ("blowup 3", (1, 1)),
    ("", (1, 1)),
])
def test_parse_errors_point_at_the_token(text, where):
    with pytest.raises(RecipeError) as err:
        parse_program(text)
    line, col = where
    assert err.value.line == line
    if col is not None:
        assert err.value.column == col


def test_compile_twisted_cubic_param():
    I = compile_program(parse_program("param s^3, s^2*t, s*t^2, t^3"))
    assert len(I) == 3 and all(g.degree() == 2 for g in I)


def test_compile_projection_of_twisted_cubic():
    I = compile_program(parse_program("scroll 3 | project center x0-x3, x1+x2"))
    assert I.ring.nvars == 2 and I.is_zero()


def test_compile_preset_matches_xf():
    assert compile_program(parse_program("example-7.3")).groebner() == xf_ideal(3, 5, F_73).groebner()


def test_ideal_file_roundtrip():
    I = scroll_ideal([1, 2])
    text = format_ideal(I, {"recipe": "scroll 1 2"})
    J = parse_ideal(text)
    assert J.ring.names == I.ring.names and J.groebner() == I.groebner()
    with pytest.raises(RecipeError):
        parse_ideal("ring 32003 x y\nx*+y\n")
    with pytest.raises(RecipeError):
        parse_ideal("x*y\n")


# -- command line ---------------------------------------------------------------------------------

def test_construct_scroll(capsys):
    code, out, _ = run(capsys, "construct", "scroll", "1", "1", "1")
    assert code == 0
    lines = ideal_lines(out)
    assert lines[0].split()[:2] == ["ring", "32003"]
    assert len(lines) == 4


def test_construct_xf_preset(capsys, tmp_path):
    path = tmp_path / "x.txt"
    code, _, _ = run(capsys, "construct", "example-7.3", "-o", str(path))
    assert code == 0
    gens = ideal_lines(path.read_text())[1:]
    degrees = sorted(sum(int(e) if e else 1 for e in _exps(g)) for g in gens)
    assert degrees.count(2) == 6 and degrees.count(3) == 4


def _exps(line):
    # total degree of the first term of a polynomial line
    term = line.lstrip("-").split("+")[0].split("-")[0]
    return [f.split("^")[1] if "^" in f else "" for f in term.split("*") if f.startswith("x")]


def test_construct_reads_recipe_file(capsys, tmp_path):
    f = tmp_path / "r.txt"
    f.write_text("scroll 1 2  # cubic scroll\n")
    code, out, _ = run(capsys, "construct", str(f))
    assert code == 0 and len(ideal_lines(out)) == 4


def test_malformed_recipe_exits_nonzero(capsys):
    code, _, err = run(capsys, "construct", "scroll 1 2 | divisor H+3F section gx=s")
    assert code != 0
    assert "bad section key" in err and "column" in err


def test_bad_characteristic(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "scroll", "1", "1", "--char", "2"])
    assert exc.value.code != 0
    with pytest.raises(SystemExit):
        main(["construct", "scroll", "1", "1", "--char", "32001"])


def test_invariants_of_cubic_scroll(capsys, tmp_path):
    path = tmp_path / "s.txt"
    run(capsys, "construct", "scroll", "1", "2", "-o", str(path))
    code, out, _ = run(capsys, "invariants", str(path), "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert (rep["dim"], rep["degree"], rep["reg"], rep["depth"]) == (2, 3, 2, 3)
    assert all(rep["consistency"].values())


def test_invariants_deterministic_apart_from_timings(capsys, tmp_path):
    path = tmp_path / "x.txt"
    run(capsys, "construct", "example-7.3", "-o", str(path))
    docs = []
    for _ in range(2):
        code, out, _ = run(capsys, "invariants", str(path), "--with-plane", "--format", "json", "--h-window=-2..3")
        assert code == 0
        doc = json.loads(out)
        doc.pop("timings")
        docs.append(doc)
    assert docs[0] == docs[1]
    assert docs[0]["tau"] == [2, 3] and docs[0]["reg"] == 5 and docs[0]["depth"] == 2


def test_invariants_refuses_plane_for_curves(capsys, tmp_path, twisted_cubic):
    path = tmp_path / "c.txt"
    path.write_text(format_ideal(twisted_cubic))
    code, out, err = run(capsys, "invariants", str(path), "--with-plane", "--format", "json")
    assert code != 0
    assert "surface" in (out + err)


def test_compute_invariants_text_view():
    rep = compute_invariants(scroll_ideal([1, 2]))
    assert rep.error is None and rep.N is None
    assert rep.to_dict()["caveat"]


def test_verify_paper_pass(capsys):
    code, out, _ = run(capsys, "verify-paper", "lemma-4.10", "--a", "1", "--r", "5", "--d", "6", "--format", "text")
    assert code == 0
    assert out.startswith("PASS lemma-4.10")


def test_verify_paper_mismatch_reports_diff(capsys):
    # the quoted h^1 value for a = 1, r >= 6 differs from the computed one by one
    code, out, _ = run(capsys, "verify-paper", "lemma-4.10", "--a", "1", "--r", "6", "--d", "9", "--format", "text")
    assert code == 1
    assert "FAIL" in out and "mismatch" in out and "expected 3, computed 4" in out


def test_verify_constr_b(capsys):
    code, out, _ = run(capsys, "verify-paper", "constr-7.1", "--case", "B", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] and doc["caveat"]
    (res,) = doc["results"]
    assert res["passed"] and res["case B"]["32003"]["count"] == 0


def test_run_target_timeout():
    res = run_target("7.4", [32003], timeout=1)
    assert not res["passed"]
    # the timeout surfaces either for the whole target or for one case
    msgs = [res.get("error") or ""] + [str(c["computed"]) for c in res.get("checks", [])]
    assert any("StageTimeout" in m for m in msgs)
