import json

import numpy as np
import pytest

from qsot import Process, identity_channel
from qsot.cli import main
from qsot import io
from qsot.observables import PAULI


def write_process(tmp_path, process, name="process.json"):
    path = tmp_path / name
    io.dump_document(io.process_doc(process), str(path))
    return str(path)


def write_observable(tmp_path, matrix, name):
    path = tmp_path / name
    doc = io.envelope(
        "observable", {"dim": matrix.shape[0], "matrix": io.matrix_to_json(matrix)}
    )
    io.dump_document(doc, str(path))
    return str(path)


def qutrit_process():
    return Process(identity_channel(3), np.diag([1.0, 0.0, 0.0]))


def test_sot_qutrit_eigenvalues(tmp_path):
    proc_file = write_process(tmp_path, qutrit_process())
    out = tmp_path / "sot.json"
    assert main(["sot", proc_file, "--out", str(out), "--format", "json"]) == 0
    _, payload = io.load_document(str(out), expect_kind="sot")
    assert np.allclose(
        payload["eigenvalues"], [-0.5, -0.5, 0, 0, 0, 0, 0.5, 0.5, 1], atol=1e-10
    )
    assert np.isclose(payload["min_eigenvalue"], -0.5)
    assert np.isclose(payload["negativity"], 1.0)


def test_sot_maximally_mixed_qubit(tmp_path):
    proc_file = write_process(tmp_path, Process(identity_channel(2), np.eye(2) / 2))
    out = tmp_path / "sot.json"
    assert main(["sot", proc_file, "--out", str(out)]) == 0
    _, payload = io.load_document(str(out), expect_kind="sot")
    # half the swap operator
    M = io.matrix_from_json(payload["matrix"])
    swap = np.zeros((4, 4))
    for i in range(2):
        for j in range(2):
            swap[i * 2 + j, j * 2 + i] = 1.0
    assert np.linalg.norm(M - swap / 2) < 1e-12
    assert np.allclose(payload["eigenvalues"], [-0.5, 0.5, 0.5, 0.5], atol=1e-10)


def test_malformed_file_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["sot", str(bad)]) == 2
    wrong_kind = tmp_path / "wrong.json"
    io.dump_document(io.envelope("report", {"passed": True}), str(wrong_kind))
    assert main(["sot", str(wrong_kind)]) == 2


def test_invalid_process_exits_3(tmp_path):
    doc = io.envelope(
        "process",
        {
            "channel": {"kraus": [io.matrix_to_json(1.1 * np.eye(2))]},
            "state": {"dim": 2, "matrix": io.matrix_to_json(np.eye(2) / 2)},
        },
    )
    path = tmp_path / "invalid.json"
    io.dump_document(doc, str(path))
    assert main(["sot", str(path)]) == 3


def test_sic_subcommand(tmp_path):
    out = tmp_path / "sic.json"
    assert main(["sic", "--family", "W", "--chi", "0.0", "--out", str(out)]) == 0
    _, payload = io.load_document(str(out), expect_kind="report")
    assert payload["overlap_residual"] <= 1e-10
    assert len(payload["projectors"]) == 9
    assert len(payload["light_touch_basis"]) == 9
    L00 = io.matrix_from_json(payload["light_touch_basis"][0])
    assert np.linalg.norm(L00 - np.array([[0, 1, 0], [1, 0, 0], [0, 0, -1]])) < 1e-12


def test_sic_rejects_out_of_range_fiducial(tmp_path):
    out = tmp_path / "sic.json"
    assert main(["sic", "--family", "V", "--r0", "0.5", "--out", str(out)]) == 3


def test_sic_arbitrary_chi(tmp_path):
    out = tmp_path / "sic.json"
    assert main(["sic", "--family", "W", "--chi", str(np.pi / 7), "--out", str(out)]) == 0


def test_verify_suites_pass(tmp_path):
    out = tmp_path / "report.json"
    code = main(
        ["verify", "all", "--dims", "2", "--trials", "2", "--out", str(out),
         "--format", "json"]
    )
    assert code == 0
    _, payload = io.load_document(str(out), expect_kind="report")
    assert payload["passed"]
    suites = {s["suite"] for s in payload["suites"]}
    assert suites == {"theorems", "nogo", "sic"}
    for suite in payload["suites"]:
        for claim in suite["claims"]:
            assert claim["passed"], claim


def test_verify_rejects_bad_dims():
    assert main(["verify", "theorems", "--dims", "9", "--trials", "1"]) == 3


def test_sample_deterministic_case(tmp_path):
    proc_file = write_process(tmp_path, Process(identity_channel(2), np.diag([1.0, 0.0])))
    obs_file = write_observable(tmp_path, PAULI[3], "sz.json")
    out = tmp_path / "sample.json"
    code = main(
        ["sample", proc_file, obs_file, obs_file, "--shots", "500", "--out", str(out)]
    )
    assert code == 0
    _, payload = io.load_document(str(out), expect_kind="report")
    counts = np.array(payload["counts"])
    assert counts[1, 1] == 500
    assert payload["estimate"] == 1.0
    assert np.isclose(payload["exact"], 1.0)


def test_sample_rejects_zero_shots(tmp_path):
    proc_file = write_process(tmp_path, Process(identity_channel(2), np.diag([1.0, 0.0])))
    obs_file = write_observable(tmp_path, PAULI[3], "sz.json")
    assert main(["sample", proc_file, obs_file, obs_file, "--shots", "0"]) == 3


def test_pdm_reconstruct_exact(tmp_path):
    proc = qutrit_process()
    proc_file = write_process(tmp_path, proc)
    out = tmp_path / "pdm.json"
    assert main(["pdm-reconstruct", proc_file, "--out", str(out)]) == 0
    _, payload = io.load_document(str(out), expect_kind="sot")
    assert payload["provenance"] == "reconstructed"
    M = io.matrix_from_json(payload["matrix"])
    want = np.zeros((9, 9))
    want[0, 0] = 1.0
    for i, j in [(1, 3), (3, 1), (2, 6), (6, 2)]:
        want[i, j] = 0.5
    assert np.linalg.norm(M - want) < 1e-8


def test_pdm_reconstruct_sampled(tmp_path):
    proc_file = write_process(tmp_path, Process(identity_channel(2), np.diag([1.0, 0.0])))
    out = tmp_path / "pdm.json"
    assert main(["pdm-reconstruct", proc_file, "--shots", "20000", "--out", str(out)]) == 0
    _, payload = io.load_document(str(out), expect_kind="sot")
    assert payload["provenance"] == "sampled"


def test_document_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    G = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    rho = G @ G.conj().T
    rho = rho / np.trace(rho).real
    proc = Process(identity_channel(3), rho)
    path = write_process(tmp_path, proc)
    _, payload = io.load_document(path, expect_kind="process")
    loaded = io.process_from_payload(payload)
    assert np.linalg.norm(loaded.rho - proc.rho) < 1e-15
    assert loaded.dim_in == 3 and loaded.dim_out == 3


def test_envelope_validation():
    with pytest.raises(io.ParseError):
        io.open_envelope({"schema_version": "2", "kind": "state", "payload": {}})
    with pytest.raises(io.ParseError):
        io.open_envelope({"schema_version": "1", "kind": "mystery", "payload": {}})
    with pytest.raises(io.ParseError):
        io.matrix_from_json([[1, 2], [3]])


def test_threads_env_fallback(tmp_path, monkeypatch):
    proc_file = write_process(tmp_path, Process(identity_channel(2), np.eye(2) / 2))
    out = tmp_path / "sot.json"
    monkeypatch.setenv("QSOT_THREADS", "2")
    assert main(["sot", proc_file, "--out", str(out)]) == 0
    monkeypatch.setenv("QSOT_THREADS", "zebra")
    assert main(["sot", proc_file, "--out", str(out)]) == 3


def test_pretty_and_json_formats(tmp_path, capsys):
    proc_file = write_process(tmp_path, Process(identity_channel(2), np.eye(2) / 2))
    assert main(["sot", proc_file, "--format", "json"]) == 0
    compact = capsys.readouterr().out
    assert main(["sot", proc_file, "--format", "pretty"]) == 0
    pretty = capsys.readouterr().out
    assert json.loads(compact) == json.loads(pretty)
    assert len(pretty.splitlines()) > len(compact.splitlines())
