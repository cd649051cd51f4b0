import json

import pytest

from hlk import fileio
from hlk.cli import main


def run(args):
    return main(list(args))


@pytest.fixture(scope="module")
def catalog_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("catalog")
    for name in ("torus", "k3-mock", "abelian-surface", "genus2-suite",
                 "sl2-adjoint", "s1s2"):
        assert run(["catalog", name, "--out-dir", str(out)]) == 0
    assert run(["catalog", "g2-family", "--k", "2", "--out-dir", str(out)]) == 0
    return out


def stripped_report(path):
    doc = json.load(open(path))
    doc.pop("timings", None)
    return fileio.canonical_dumps(doc)


def test_catalog_unknown_name(tmp_path):
    assert run(["catalog", "not-a-model", "--out-dir", str(tmp_path)]) == 2


def test_catalog_invalid_params(tmp_path):
    assert run(["catalog", "g2-family", "--k", "0",
                "--out-dir", str(tmp_path)]) == 2


def test_catalog_round_trip(catalog_dir):
    for path in sorted(catalog_dir.glob("*.json")):
        raw = path.read_text()
        kind, obj = fileio.load_document(str(path))
        emit = {
            "algebra": fileio.algebra_to_doc,
            "pair": fileio.pair_to_doc,
            "module": fileio.module_to_doc,
            "spectrum": fileio.spectrum_to_doc,
        }[kind]
        assert fileio.canonical_dumps(emit(obj)) == raw


def test_validate_pass(catalog_dir, tmp_path):
    report = tmp_path / "report.json"
    code = run(["validate",
                "--input", str(catalog_dir / "torus.algebra.json"),
                "--input", str(catalog_dir / "sl2R.pair.json"),
                "--input", str(catalog_dir / "sl2-trivial.module.json"),
                "--report", str(report)])
    assert code == 0
    doc = json.loads(report.read_text())
    assert all(c["status"] in ("pass", "skip") for c in doc["checks"])


def test_validate_broken_algebra(catalog_dir, tmp_path):
    doc = json.loads((catalog_dir / "torus.algebra.json").read_text())
    doc["nu"] = []
    bad = tmp_path / "broken.algebra.json"
    bad.write_text(fileio.canonical_dumps(doc))
    assert run(["validate", "--input", str(bad)]) == 1


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "garbage.json"
    bad.write_text("{not json")
    assert run(["validate", "--input", str(bad)]) == 2


def test_lefschetz_k3_report(catalog_dir, tmp_path):
    report = tmp_path / "k3.json"
    code = run(["lefschetz",
                "--input", str(catalog_dir / "k3-mock.algebra.json"),
                "--report", str(report)])
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["summary"]["k3-mock:signature"] == -16


def test_llgen_g2(catalog_dir, tmp_path):
    report = tmp_path / "llgen.json"
    code = run(["llgen",
                "--input", str(catalog_dir / "g2-k2.algebra.json"),
                "--report", str(report)])
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["summary"]["g2-k2:dimension"] == 6


def test_llgen_product_model(catalog_dir, tmp_path):
    report = tmp_path / "s1s2.json"
    code = run(["llgen",
                "--input", str(catalog_dir / "s1s2-N3.algebra.json"),
                "--report", str(report)])
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["summary"]["s1s2-N3:dimension"] == 9
    assert doc["summary"]["s1s2-N3:minimal-ideals"] == [3, 3, 3]


def test_llgen_large_even_part_skips(catalog_dir):
    assert run(["llgen",
                "--input", str(catalog_dir / "k3-mock.algebra.json")]) == 0


def test_gkcoh_suite(catalog_dir, tmp_path):
    report = tmp_path / "gk.json"
    code = run(["gkcoh",
                "--input", str(catalog_dir / "sl2R.pair.json"),
                "--input", str(catalog_dir / "sl2-trivial.module.json"),
                "--input", str(catalog_dir / "sl2-adjoint.module.json"),
                "--report", str(report)])
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["summary"]["sl2-trivial:hodge"] == {"0,0": 1, "1,1": 1}
    assert doc["summary"]["sl2-adjoint:hodge"] == {}


def test_assemble_suite(catalog_dir, tmp_path, capsys):
    report = tmp_path / "asm.json"
    code = run(["assemble",
                "--input", str(catalog_dir / "sl2R.pair.json"),
                "--input", str(catalog_dir / "sl2-trivial.module.json"),
                "--input", str(catalog_dir / "sl2-ds-plus.module.json"),
                "--input", str(catalog_dir / "sl2-ds-minus.module.json"),
                "--input", str(catalog_dir / "genus2.spectrum.json"),
                "--report", str(report)])
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["summary"]["betti"] == [1, 4, 1]
    assert doc["summary"]["hodge-table"] == {
        "0,0": 1, "0,1": 2, "1,0": 2, "1,1": 1}


def test_assemble_asymmetric_spectrum_fails(catalog_dir, tmp_path):
    spectrum = tmp_path / "bad.spectrum.json"
    spectrum.write_text(fileio.canonical_dumps(
        [{"module": "sl2-ds-plus", "multiplicity": 1, "k2_inv_dim": 1}]))
    code = run(["assemble",
                "--input", str(catalog_dir / "sl2R.pair.json"),
                "--input", str(catalog_dir / "sl2-ds-plus.module.json"),
                "--input", str(spectrum)])
    assert code == 1


def test_assemble_dangling_module(catalog_dir, tmp_path):
    spectrum = tmp_path / "dangling.spectrum.json"
    spectrum.write_text(fileio.canonical_dumps(
        [{"module": "no-such-module", "multiplicity": 1, "k2_inv_dim": 1}]))
    code = run(["assemble",
                "--input", str(catalog_dir / "sl2R.pair.json"),
                "--input", str(catalog_dir / "sl2-trivial.module.json"),
                "--input", str(spectrum)])
    assert code == 2


def test_report_determinism(catalog_dir, tmp_path):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    for rp in (r1, r2):
        assert run(["lefschetz",
                    "--input", str(catalog_dir / "torus.algebra.json"),
                    "--report", str(rp)]) == 0
    assert stripped_report(r1) == stripped_report(r2)


def test_kindless_document_accepted(catalog_dir, tmp_path):
    doc = json.loads((catalog_dir / "torus.algebra.json").read_text())
    doc.pop("kind")
    bare = tmp_path / "bare.json"
    bare.write_text(fileio.canonical_dumps(doc))
    assert run(["validate", "--input", str(bare)]) == 0


def test_lefschetz_odd_mode(catalog_dir):
    assert run(["lefschetz", "--mode", "odd",
                "--input", str(catalog_dir / "abelian-surface.algebra.json")]) == 0


def test_llgen_odd_mode(catalog_dir):
    assert run(["llgen", "--mode", "odd",
                "--input", str(catalog_dir / "abelian-surface.algebra.json")]) == 0


def test_hlk_threads_validation(catalog_dir, monkeypatch):
    monkeypatch.setenv("HLK_THREADS", "not-a-number")
    assert run(["validate",
                "--input", str(catalog_dir / "torus.algebra.json")]) == 2
    monkeypatch.setenv("HLK_THREADS", "4")
    assert run(["validate",
                "--input", str(catalog_dir / "torus.algebra.json")]) == 0
