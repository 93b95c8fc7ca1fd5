import json
from fractions import Fraction

import pytest

from isopoints import cli
from isopoints.arith import UniPoly
from isopoints.curve import make_place, new_hyperelliptic
from isopoints.errors import NotFoundError, OfflineError, PayloadParseError, PreconditionError
from isopoints.examples import (
    cover_identity_defect,
    identity_cover,
    rawson_cover,
    ramification_index,
    ueno_cover,
)
from isopoints.io import (
    PROVENANCE,
    SCHEMA_VERSION,
    CoverSpec,
    Report,
    cover_from_json,
    cover_to_json,
    curve_from_json,
    curve_to_json,
    divisor_from_json,
    divisor_to_json,
    dumps,
)
from isopoints.lmfdb import lmfdb_fetch, parse_payload
from isopoints.rrspace import Divisor

x = UniPoly.x()
G2 = new_hyperelliptic([1, 2, 0, -1, 0, 1])


def run(capsys, *argv):
    rc = cli.main(list(argv))
    out, err = capsys.readouterr()
    return rc, (json.loads(out) if out.strip().startswith("{") else out), err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(dumps(obj))
    return str(path)


# -- formats ----------------------------------------------------------------------

def test_curve_round_trip_is_byte_exact(tmp_path):
    text = dumps({"model": "hyperelliptic", "f": ["10", "25/3", "-22", "8", "1"], "label": "E"})
    C = curve_from_json(json.loads(text))
    assert dumps(curve_to_json(C)) == text
    assert C.f[1] == Fraction(25, 3)


def test_curve_spec_errors():
    with pytest.raises(PreconditionError):
        curve_from_json({"model": "plane", "f": ["1"]})
    with pytest.raises(PreconditionError):
        curve_from_json({"model": "hyperelliptic"})
    with pytest.raises(TypeError):
        curve_from_json({"f": [1.5, 0, 0, 1]})


def test_divisor_round_trip():
    C = new_hyperelliptic([10, 0, 25, 0, 22, 0, 8, 0, 1])
    P = make_place(C, x ** 2 + Fraction(3, 2), UniPoly([Fraction(1, 4)]))
    inert = make_place(C, x - 1)       # f(1) = 66 is not a square
    D = Divisor(C, [(P, 2), (inert, -1), (C.infinite_places()[1], 3)])
    data = divisor_to_json(D)
    assert divisor_from_json(C, data) == D
    assert dumps(divisor_to_json(divisor_from_json(C, json.loads(dumps(data))))) == dumps(data)


def test_cover_round_trip_and_identity():
    for S in (rawson_cover(), ueno_cover(), identity_cover(G2)):
        assert not cover_identity_defect(S)
        S2 = cover_from_json(json.loads(dumps(cover_to_json(S))))
        assert S2 == S
    bad = CoverSpec(G2, G2, x + 1, UniPoly([1]), UniPoly([1]), UniPoly([1]))
    assert cover_identity_defect(bad)


def test_rawson_total_ramification():
    S = rawson_cover()
    assert S.degree == 3
    inf = S.source.infinite_places()[0]
    assert ramification_index(S, inf) == 3


def test_report_schema():
    rep = Report("demo", G2, {"k": Fraction(1, 2)})
    rep.claim("a", 3)
    rep.claim("b", "q", "paper-quoted")
    rep.check("c", False)
    d = rep.to_dict()
    assert set(d) == {"schema_version", "curve", "operation", "inputs", "verdict",
                      "witnesses", "exceptional", "provenance"}
    assert d["schema_version"] == SCHEMA_VERSION and d["inputs"] == {"k": "1/2"}
    assert all(e["provenance"] in PROVENANCE for e in d["provenance"])
    assert not rep.ok and rep.failed == ["c"]
    with pytest.raises(ValueError):
        rep.claim("d", 1, "guessed")


# -- CLI --------------------------------------------------------------------------

def test_cli_verify_cover_builtin(capsys):
    rc, rep, _ = run(capsys, "verify-cover", "--builtin", "rawson")
    assert rc == 0 and rep["verdict"] == "valid cover"
    assert rep["witnesses"][0]["totally_ramified"] is True
    rc, rep, _ = run(capsys, "verify-cover", "--builtin", "identity")
    assert rc == 0


def test_cli_verify_cover_rejects_wrong_map(capsys, tmp_path):
    spec = cover_to_json(rawson_cover())
    spec["x_map"]["num"] = ["-1", "0", "0", "1"]
    rc, rep, _ = run(capsys, "verify-cover", write(tmp_path, "c.json", spec))
    assert rc == 1 and rep["verdict"] == "invalid cover"


def test_cli_classify(capsys, tmp_path):
    curve = write(tmp_path, "c.json", curve_to_json(G2))
    pt = write(tmp_path, "p.json", {"u": ["0", "1"], "v": ["1"]})
    rc, rep, _ = run(capsys, "classify", curve, pt)
    assert rc == 0 and rep["verdict"] == "P1-isolated"
    # f(2) = 32 - 8 + 4 + 1 = 29 is not a square: an inert fiber point
    pt2 = write(tmp_path, "q.json", {"u": ["-2", "1"], "v": None})
    rc, rep, _ = run(capsys, "classify", curve, pt2, "--rank", "0")
    assert rep["verdict"] == "P1-parameterized"
    assert rep["witnesses"][0]["map_degree"] == 2
    assert any(e["claim"] == "AV verdict" and e["provenance"] == "external-input" for e in rep["provenance"])
    bad = write(tmp_path, "r.json", {"u": ["0", "1"], "v": ["2"]})
    rc, _, err = run(capsys, "classify", curve, bad)
    assert rc == 2 and json.loads(err)["error"] == "NotOnCurveError"


def test_cli_zeta_fiber_positivity(capsys, tmp_path):
    curve = write(tmp_path, "c.json", {"model": "hyperelliptic", "f": ["3", "1", "0", "0", "0", "0", "1"]})
    rc, rep, _ = run(capsys, "zeta", curve, "--p", "5")
    assert rc == 0 and isinstance(rep["verdict"], int)
    rc, rep, _ = run(capsys, "--budget", "50", "fiber-sample", curve, "--cycle-primes", "5", "7", "--cycle-t", "2")
    assert rc == 0 and rep["inputs"]["budget"] == 50
    rc, rep, _ = run(capsys, "positivity-check")
    assert rc == 0 and rep["verdict"] == "verified"
    rc, out, _ = run(capsys, "--format", "table", "positivity-check")
    assert "verdict:   verified" in out


def test_cli_avoid_cosets(capsys, tmp_path):
    spec = write(tmp_path, "a.json", {"torsion": [6], "rank": 1, "x": [0, 0],
                                      "cosets": [{"y": [3, 0], "gens": [[0, 1]]}, {"y": [0, 1], "gens": []}]})
    rc, rep, _ = run(capsys, "--seed", "7", "avoid-cosets", spec)
    assert rc == 0 and rep["inputs"]["seed"] == 7
    bad = write(tmp_path, "b.json", {"torsion": [6], "rank": 0, "x": [3], "cosets": [{"y": [0], "gens": [[3]]}]})
    rc, _, err = run(capsys, "avoid-cosets", bad)
    assert rc == 2 and json.loads(err)["error"] == "HypothesisViolation"


def test_cli_is_deterministic(capsys):
    _, a, _ = run(capsys, "positivity-check")
    _, b, _ = run(capsys, "positivity-check")
    assert a == b


# -- LMFDB client ------------------------------------------------------------------

PAYLOAD = json.dumps({"data": [{"lmfdb_label": "37.a1", "rank": 1, "torsion_structure": [],
                                "gens": [[0, 0, 1]]}]}).encode()


def test_lmfdb_fetch_and_cache(tmp_path):
    calls = []

    def fetcher(url):
        calls.append(url)
        return PAYLOAD

    rec = lmfdb_fetch("37.a1", fetcher=fetcher, directory=tmp_path)
    assert rec.rank == 1 and rec.provenance == "network" and len(calls) == 1
    assert "lmfdb_label=37.a1" in calls[0]

    def down(url):
        raise OSError("network is unreachable")

    cached = lmfdb_fetch("37.a1", fetcher=down, directory=tmp_path)
    assert cached.provenance == "cache" and cached.rank == 1
    assert lmfdb_fetch("37.a1", offline=True, directory=tmp_path).provenance == "cache"
    lmfdb_fetch("37.a1", refresh=True, fetcher=fetcher, directory=tmp_path)
    assert len(calls) == 2


def test_lmfdb_errors(tmp_path):
    with pytest.raises(OfflineError):
        lmfdb_fetch("11.a1", offline=True, directory=tmp_path)

    def down(url):
        raise OSError("no route")

    with pytest.raises(OfflineError):
        lmfdb_fetch("11.a1", fetcher=down, directory=tmp_path)
    with pytest.raises(NotFoundError):
        lmfdb_fetch("11.a1", fetcher=lambda u: b'{"data": []}', directory=tmp_path)
    with pytest.raises(PayloadParseError) as exc:
        lmfdb_fetch("11.a1", fetcher=lambda u: b"<html>oops</html>", directory=tmp_path)
    assert exc.value.raw == b"<html>oops</html>"
    with pytest.raises(PayloadParseError):
        parse_payload("11.a1", b'{"data": [{"lmfdb_label": "11.a1"}]}')
    with pytest.raises(PreconditionError):
        lmfdb_fetch("not a label", directory=tmp_path)
    assert not list(tmp_path.iterdir())


def test_cli_lmfdb_offline(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ISOPOINTS_CACHE_DIR", str(tmp_path))
    rc, _, err = run(capsys, "--offline", "lmfdb-fetch", "37.a1")
    assert rc == 2 and json.loads(err)["error"] == "OfflineError"
    lmfdb_fetch("37.a1", fetcher=lambda u: PAYLOAD)
    rc, rep, _ = run(capsys, "--offline", "lmfdb-fetch", "37.a1")
    assert rc == 0 and rep["verdict"] == "rank 1"
    assert all(e["provenance"] == "external-input" for e in rep["provenance"])
    rc, rep, _ = run(capsys, "--offline", "example-ueno", "--height", "20", "--rank-label", "37.a1")
    assert rep["inputs"]["rank"] == 1
