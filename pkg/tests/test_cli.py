import json
import os
import subprocess
import sys

import pytest

from fplpoly import cache as C
from fplpoly import fpl_grid as G
from fplpoly.cli import run


def _json(capsys, argv, code=0):
    assert run(argv) == code
    return json.loads(capsys.readouterr().out)


def test_census_n3(capsys):
    rep = _json(capsys, ["census", "--n", "3"])
    assert rep["matchings"] == 5 and rep["total"] == "7" and rep["ok"]


def test_poly(capsys):
    rep = _json(capsys, ["poly", "--matching", "()()"])
    assert rep["A_text"] == "m + 1" and rep["ok"]
    rep = _json(capsys, ["poly", "--matching", "(())()", "--via", "corner", "--crosscheck", "3"])
    assert rep["ok"] and len(rep["rows"]) == 4


def test_poly2(capsys):
    rep = _json(capsys, ["poly2", "--x", "()()", "--y", "()()"])
    assert rep["A"] == ["7", "6", "1"] and rep["ok"]


def test_tilings_and_triangle(capsys):
    rep = _json(capsys, ["tilings", "--lambda", "2,1", "--d", "2", "--h", "1", "--oracle"])
    assert rep["ok"] and rep["bruteforce"] == rep["lgv"] == rep["ssyt"]
    rep = _json(capsys, ["triangle", "--matching", "()()", "--e1", "1", "--census"])
    assert rep["ok"] and rep["census_violations"] == 0


@pytest.mark.parametrize("argv", [
    ["poly", "--matching", "((("],
    ["census", "--n", "3", "--bogus"],
    ["census", "--n", "99"],
    [],
    ["tilings", "--lambda", "1", "--d", "1", "--h", "0", "--mu", "1"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2
    assert "error" in capsys.readouterr().err


def test_formats_and_out(tmp_path, capsys):
    assert run(["--format", "csv", "census", "--n", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "matching,count" and len(lines) == 3
    assert run(["census", "--n", "2", "--format", "text"]) == 0
    assert "total: 2" in capsys.readouterr().out
    out = tmp_path / "r.json"
    assert run(["census", "--n", "3", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["total"] == "7"


def test_wieland(capsys):
    assert _json(capsys, ["wieland", "--n", "4"])["ok"]


# ------------------------------------------------------------ cache

@pytest.mark.parametrize("n", [4, 6])
def test_cache_roundtrip(tmp_path, n):
    c = C.Cache(str(tmp_path))
    first = C.cached_census(n, cache=c)
    files = list(tmp_path.rglob("*.json"))
    assert len(files) == 1
    again = C.cached_census(n, cache=C.Cache(str(tmp_path)))
    assert again == first == G.census(n)


def test_cache_hit_skips_compute(tmp_path):
    c = C.Cache(str(tmp_path))
    c.store("x", {"a": 1}, 42)
    assert c.get_or_compute("x", {"a": 1}, lambda: pytest.fail("recomputed")) == 42


def test_version_bump_recomputes(tmp_path):
    C.Cache(str(tmp_path)).store("x", {}, 1)
    calls = []
    v = C.Cache(str(tmp_path), version="other").get_or_compute("x", {}, lambda: calls.append(1) or 2)
    assert v == 2 and calls == [1]


def test_corrupt_entry_warns(tmp_path):
    c = C.Cache(str(tmp_path))
    c.store("x", {}, 1)
    (f,) = tmp_path.rglob("*.json")
    f.write_text("{not json")
    with pytest.warns(UserWarning, match="corrupt"):
        assert c.load("x", {}) is None
    with pytest.warns(UserWarning):
        assert c.get_or_compute("x", {}, lambda: 5) == 5
    assert c.load("x", {}) == 5


def test_unwritable_disables(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    c = C.Cache(str(blocker / "sub"))
    with pytest.warns(UserWarning, match="disabled"):
        assert c.get_or_compute("x", {}, lambda: 3) == 3
    assert not c.enabled


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cached_equals_fresh(tmp_path, n):
    for parity in ("even", "odd"):
        c = C.Cache(str(tmp_path))
        C.cached_census(n, parity, cache=c)
        assert C.cached_census(n, parity, cache=c) == G.census(n, parity)


def test_no_cache_flag(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("FPL_CACHE", str(tmp_path / "c"))
    assert run(["census", "--n", "3", "--no-cache"]) == 0
    assert not (tmp_path / "c").exists()


# ------------------------------------------------------------ backends

def test_pure_backend_agrees(tmp_path):
    code = ("import json; from fplpoly import fpl_grid as G, _jit; "
            "print(json.dumps([_jit.backend(), {''.join(map(str, w)): v "
            "for w, v in G.census(5, 'odd').items()}]))")
    env = dict(os.environ, FPLPOLY_PURE="1", FPL_CACHE=str(tmp_path))
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout
    backend, counts = json.loads(out)
    assert backend == "python"
    assert counts == {"".join(map(str, w)): v for w, v in G.census(5, "odd").items()}


def test_console_script_module(tmp_path):
    env = dict(os.environ, FPL_CACHE=str(tmp_path))
    r = subprocess.run([sys.executable, "-m", "fplpoly.cli", "census", "--n", "2"],
                       env=env, capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["total"] == "2"
