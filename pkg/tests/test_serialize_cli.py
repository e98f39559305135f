import json
import xml.etree.ElementTree as ET

import pytest

from planecode import parse_poly, separation_certificate
from planecode.cli import main
from planecode.errors import SchemaError
from planecode.serialize import (
    certificate_to_json,
    config_from_json,
    config_to_json,
    dumps_canonical,
    format_certificate,
    loads,
)


@pytest.fixture(scope="module")
def cfg(built):
    return built("x^2-2")[0]


@pytest.fixture(scope="module")
def cfg_path(cfg, tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "c.json"
    path.write_text(dumps_canonical(config_to_json(cfg)), encoding="utf-8")
    return path


def test_round_trip_bit_exact(cfg):
    data = loads(dumps_canonical(config_to_json(cfg)))
    again = config_from_json(data)
    assert again == cfg


def test_dumps_deterministic(cfg):
    a = dumps_canonical(config_to_json(cfg))
    b = dumps_canonical(config_to_json(cfg))
    assert a == b


def test_rationals_encoded_as_strings(cfg):
    data = config_to_json(cfg)
    sample = data["lines"][0][0][0]
    assert set(sample) == {"n", "d"}
    assert isinstance(sample["n"], str) and isinstance(sample["d"], str)


def test_schema_errors(cfg):
    good = config_to_json(cfg)
    with pytest.raises(SchemaError):
        config_from_json({**good, "v": 99})
    with pytest.raises(SchemaError):
        config_from_json({k: v for k, v in good.items() if k != "points"})
    broken = json.loads(dumps_canonical(good))
    broken["incidence"][0] = [10**6]
    with pytest.raises(SchemaError):
        config_from_json(broken)
    with pytest.raises(SchemaError):
        loads("{not json")


def test_certificate_json_shape():
    cert = separation_certificate(parse_poly("x^2-2"))
    data = certificate_to_json(cert)
    assert data["kind"] == "separation-certificate"
    assert data["pairwise_disjoint"] is True
    assert len(data["embeddings"]) == 2
    text = format_certificate(cert)
    assert "pairwise disjoint: True" in text


# -- CLI ------------------------------------------------------------------------------

def test_cli_build_and_decode(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert main(["build", "-p", "x^2-2", "-o", str(out)]) == 0
    assert main(["decode", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "decoded coefficients: (0, 1)" in printed
    assert "equals the field generator" in printed


def test_cli_build_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["build", "-p", "x^2-x-1", "-o", str(a)])
    main(["build", "-p", "x^2-x-1", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_cli_exit_codes(tmp_path):
    assert main(["build", "-p", "x^2-1", "-o", str(tmp_path / "x.json")]) == 3
    assert main(["build", "-p", "x+3", "-o", str(tmp_path / "x.json")]) == 3
    assert main(["build", "-p", "x^^", "-o", str(tmp_path / "x.json")]) == 2
    assert main(["decode", str(tmp_path / "missing.json")]) == 6


def test_cli_schema_error_exit(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"v": 1}', encoding="utf-8")
    assert main(["decode", str(bad)]) == 6


def _delete_line(data, index):
    """Remove one line from a serialized configuration, renumbering incidences."""
    out = json.loads(json.dumps(data))
    del out["lines"][index]
    out["incidence"] = [
        [j - 1 if j > index else j for j in rows if j != index]
        for rows in out["incidence"]
    ]
    return out


def test_cli_tampered_line_deletion(cfg, tmp_path):
    data = config_to_json(cfg)
    # deleting two late amplification lines through the zero mark drops its
    # valence from M+8 to M+6, tying it with the one mark
    busiest = cfg.marks["zero"]
    targets = sorted(cfg.incidence[busiest])[-2:]
    tampered = _delete_line(_delete_line(data, targets[1]), targets[0])
    path = tmp_path / "tampered.json"
    path.write_text(dumps_canonical(tampered), encoding="utf-8")
    assert main(["decode", str(path)]) == 5


def test_cli_tampered_point_deletion(cfg, tmp_path):
    data = json.loads(dumps_canonical(config_to_json(cfg)))
    victim = max(
        i for i in range(len(data["points"])) if i not in set(cfg.marks.values())
    )
    del data["points"][victim]
    del data["incidence"][victim]
    path = tmp_path / "lost_point.json"
    path.write_text(dumps_canonical(data), encoding="utf-8")
    assert main(["cover", str(path), "-o", str(tmp_path / "r.json")]) == 6


def test_cli_decode_handwritten_three_line_config(tmp_path):
    # a minimal hand-written file: three generic lines, three points
    def rat(n, d=1):
        return {"n": str(n), "d": str(d)}

    def elem(a, b=0):
        return [rat(a), rat(b)]

    data = {
        "v": 1,
        "poly": [rat(-2), rat(0), rat(1)],
        "seed": 0,
        "params_consumed": 0,
        "lines": [
            [elem(1), elem(0), elem(0)],   # x = 0
            [elem(0), elem(1), elem(0)],   # y = 0
            [elem(1), elem(1), elem(-1)],  # x + y = 1
        ],
        "points": [
            [elem(0), elem(0), elem(1)],
            [elem(0), elem(1), elem(0)],
            [elem(1), elem(0), elem(0)],
        ],
        "incidence": [[0, 1], [0, 2], [1, 2]],
        "marks": {},
    }
    path = tmp_path / "hand.json"
    path.write_text(dumps_canonical(data), encoding="utf-8")
    assert main(["decode", str(path)]) == 5


def test_cli_cover_report(cfg_path, tmp_path):
    out = tmp_path / "report.json"
    assert main(["cover", str(cfg_path), "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["kind"] == "cover-report"
    assert data["parity"] == "all-even"
    assert len(data["M"]) == 8
    certified = [k for k, v in data["ampleness"].items() if v["certified"]]
    assert sorted(certified) == ["100", "101", "110", "111"]
    assert data["nef_gap"]["characters"] == ["001", "010", "011"]


def test_cli_certify_writes_json(tmp_path):
    out = tmp_path / "cert.json"
    assert main(["certify", "-p", "x^2-2", "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["equals_generator"] is True


def test_cli_render_valid_svg(cfg, cfg_path, tmp_path):
    out = tmp_path / "pic.svg"
    assert main(["render", str(cfg_path), "-o", str(out)]) == 0
    text = out.read_text()
    ET.fromstring(text)
    # a real embedding draws every line; the inf mark sits at infinity, so
    # only the three finite marks get labels
    assert text.count("<line") == cfg.line_count
    assert text.count("<text") == 3


def test_cli_render_complex_embedding_warns(tmp_path, capsys):
    cfg_out = tmp_path / "c3.json"
    main(["build", "-p", "x^3-2", "-o", str(cfg_out)])
    out = tmp_path / "pic.svg"
    # embedding 0 of x^3 - 2 is a complex root (sorted by real part)
    assert main(["render", str(cfg_out), "--embedding", "0", "-o", str(out)]) == 0
    err = capsys.readouterr().err
    assert "complex" in err
    ET.fromstring(out.read_text())
