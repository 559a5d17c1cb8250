from __future__ import annotations

import json

from avoidgf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_stats(capsys):
    code, out, _ = run(capsys, "stats", "6,7,4,3,5,2,8,1")
    assert code == 0
    assert out.strip() == '{"des": 4, "exc": 4, "fp": 1, "involution": false}'


def test_map(capsys):
    code, out, _ = run(capsys, "map", "--kra", "6,7,4,3,5,2,8,1")
    data = json.loads(out)
    assert code == 0 and data["path"] == "UDUUDUUDUDDUUDDD"
    assert data["tunnels"] == {"ct": 1, "rt": 4, "td0": 2, "tdneg": 4}
    code, out, _ = run(capsys, "map", "--brs", "--inverse", "UUUDDUUDUDDUUDDDUDUD")
    assert json.loads(out)["permutation"] == "9,6,10,4,8,7,3,5,2,1"


def test_domain_errors(capsys):
    code, _, err = run(capsys, "map", "--kra", "1,3,2")
    assert code == 1 and "132" in err
    code, _, err = run(capsys, "map", "--kra", "--inverse", "UDDU")
    assert code == 1 and "index 2" in err
    code, _, _ = run(capsys, "expand", "--id", "pair.zz")
    assert code == 1


def test_usage_errors(capsys):
    assert run(capsys, "nope")[0] == 2
    assert run(capsys, "map", "1,2")[0] == 2
    assert run(capsys, "expand", "--id", "pair.a", "--order", "-1")[0] == 2
    assert run(capsys, "enumerate", "--n", "3", "--avoid", "1,1")[0] == 2


def test_enumerate_and_distribution(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--avoid", "123", "--involutions", "--format", "text")
    assert out.split() == ["3,2,1", "2,1,3", "1,3,2"] or sorted(out.split()) == ["1,3,2", "2,1,3", "3,2,1"]
    code, out, _ = run(capsys, "distribution", "--n", "4", "--avoid", "123/321")
    data = json.loads(out)
    assert data["counts"] == [{"count": 4, "exc": 2, "fp": 0}] and data["total"] == 4


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--id", "pair.h", "--order", "6", "--format", "text")
    lines = out.splitlines()
    assert lines[3] == "z^3 : 2*xq + q^2 + q" and lines[4] == "z^4 : 4*q^2"
    code, out, _ = run(capsys, "expand", "--id", "family.M_k", "--param", "1", "--order", "3")
    assert json.loads(out)[2] == [{"coef": "1", "p": 0, "q": 0, "x": 0}]
    assert json.loads(out)[3] == [{"coef": "1", "p": 0, "q": 0, "x": 1}]


def test_output_is_byte_stable(capsys):
    first = run(capsys, "expand", "--id", "triple.e", "--order", "9")[1]
    second = run(capsys, "expand", "--id", "triple.e", "--order", "9")[1]
    assert first == second


def test_verify_and_catalog(capsys):
    code, out, _ = run(capsys, "verify", "--id", "pair.b", "--id", "triple.b", "--nmax", "7")
    assert code == 0 and all(r["ok"] for r in json.loads(out))
    code, out, _ = run(capsys, "verify", "--id", "family.A_k", "--param", "3", "--nmax", "7", "--format", "text")
    assert code == 0 and "1/1 reports match" in out
    code, out, _ = run(capsys, "verify", "--structures", "--nmax", "5")
    assert code == 0
    code, out, _ = run(capsys, "catalog")
    assert any(e["id"] == "single.312.cf" for e in json.loads(out))
    code, out, _ = run(capsys, "inequalities", "--lo", "4", "--hi", "20", "--format", "text")
    assert code == 0


def test_verify_mismatch_exit_code(capsys, monkeypatch):
    import dataclasses

    from avoidgf import gfcatalog

    entry = gfcatalog.REGISTRY["triple.f"]
    broken = dataclasses.replace(entry, builder=gfcatalog._rational_builder("1/(1-xz-qz^2)"))
    monkeypatch.setitem(gfcatalog.REGISTRY, "triple.f", broken)
    code, out, _ = run(capsys, "verify", "--id", "triple.f", "--nmax", "5")
    assert code == 3
