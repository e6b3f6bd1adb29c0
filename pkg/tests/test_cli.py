import json

import pytest

from koptlab import cli, encode_graph6, path_graph, format_edge_list
from koptlab.harness import PROPERTIES


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_tau_k4(capsys):
    code, out, _ = run_cli(capsys, "compute", "tau", "--graph6", "C~")
    assert code == 0
    assert out.strip() == "2"


def test_compute_nu(capsys):
    code, out, _ = run_cli(capsys, "compute", "nu", "--graph6", "C~")
    assert code == 0 and out.strip() == "1"


def test_compute_phi_from_edge_list(tmp_path, capsys):
    p = tmp_path / "p3.el"
    p.write_text(format_edge_list(path_graph(3)))
    code, out, _ = run_cli(capsys, "compute", "phi", "--graph", str(p), "-k", "2", "--set", "0,2")
    assert code == 0
    assert out.strip() == "4"


def test_compute_k_optimal(capsys):
    code, out, _ = run_cli(capsys, "compute", "k-optimal", "--graph6", encode_graph6(path_graph(3)), "-k", "1")
    assert code == 0
    assert "phi=2" in out and "set=0,2" in out


def test_compute_gamma_alpha(capsys):
    code, out, _ = run_cli(capsys, "compute", "gamma-k", "--graph6", "D~{", "-k", "1")
    assert code == 0
    code, out2, _ = run_cli(capsys, "compute", "alpha-k", "--graph6", "D~{", "-k", "1")
    assert code == 0


def test_verify_writes_report(tmp_path, capsys):
    out_path = tmp_path / "report.jsonl"
    code, out, _ = run_cli(
        capsys, "verify", "favaron", "--exhaustive", "4", "-k", "1,2,3", "--out", str(out_path)
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert len(lines) == 64 * 3
    rec = json.loads(lines[0])
    assert set(rec) == {"property", "graph6", "k", "outcome", "witness", "ms"}
    assert not (tmp_path / "report.jsonl.counterexamples.jsonl").exists()


def test_verify_favaron_exhaustive_5(tmp_path, capsys):
    out_path = tmp_path / "fav5.jsonl"
    code, _, _ = run_cli(
        capsys, "verify", "favaron", "--exhaustive", "5", "-k", "1,2,3",
        "--out", str(out_path), "--jobs", "2",
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert len(lines) == 1024 * 3
    assert all(json.loads(ln)["outcome"] == "holds" for ln in lines)


def test_campaign_survives_per_instance_errors(capsys, monkeypatch):
    def explosive(g, k, rng):
        if g.m == 0:
            raise TypeError("synthetic per-instance failure")
        return "holds", None

    monkeypatch.setitem(PROPERTIES, "explosive", explosive)
    code, out, _ = run_cli(capsys, "verify", "explosive", "--exhaustive", "2", "-k", "1")
    assert code == 0
    records = [json.loads(ln) for ln in out.splitlines()]
    outcomes = {r["graph6"]: r["outcome"] for r in records}
    assert outcomes["A?"] == "skipped" and outcomes["A_"] == "holds"


def test_verify_stdout_when_no_out(capsys):
    code, out, _ = run_cli(capsys, "verify", "gamma-alpha", "--graph6", "C~", "-k", "2")
    assert code == 0
    assert json.loads(out.splitlines()[0])["outcome"] == "holds"


def test_search_decomp(capsys):
    code, out, _ = run_cli(capsys, "search", "decomp", "--exhaustive", "3")
    assert code == 0
    assert all(json.loads(ln)["outcome"] == "holds" for ln in out.splitlines())


def test_search_tuza_special(capsys):
    code, out, _ = run_cli(capsys, "search", "tuza-special", "--graph6", encode_graph6(path_graph(3)), "-k", "1,2")
    assert code == 0


def test_decompose_chordal(tmp_path, capsys):
    lists = tmp_path / "lists.txt"
    lists.write_text("0: 1 2\n")  # vertex 0 is last in the MCS order of K3
    code, out, _ = run_cli(
        capsys, "decompose", "chordal-saturate", "--graph6", "Bw", "--lists", str(lists)
    )
    assert code == 0
    data = json.loads(out)
    assert "order" in data and "coloring" in data


def test_decompose_galvin(capsys):
    code, out, _ = run_cli(capsys, "decompose", "galvin", "--graph6", "Bw")
    assert code == 0
    data = json.loads(out)
    assert set(data["certificate"]) == {"arcs", "layers"}


def test_decompose_galvin_with_cert(tmp_path, capsys):
    from koptlab import complete_graph, search_good_decomposition
    from koptlab.kernels import cert_to_json

    cert = search_good_decomposition(complete_graph(3))
    cert_file = tmp_path / "cert.json"
    cert_file.write_text(cert_to_json(cert))
    lists = tmp_path / "lists.txt"
    lists.write_text("1: 1\n")
    code, out, _ = run_cli(
        capsys, "decompose", "galvin", "--graph6", "Bw",
        "--cert", str(cert_file), "--lists", str(lists),
    )
    assert code == 0


def test_exit_code_2_on_bad_input(capsys):
    code, _, err = run_cli(capsys, "compute", "tau", "--graph6", "~bad")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "compute", "tau")
    assert code == 2
    code, _, err = run_cli(capsys, "compute", "phi", "--graph6", "C~")
    assert code == 2  # --set required
    code, _, err = run_cli(capsys, "decompose", "chordal-saturate", "--graph6", "C]")
    assert code == 2  # C4 is not chordal


def test_exit_code_2_on_unknown_property(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "nonsense", "--exhaustive", "3"])
    assert exc.value.code == 2


def test_exit_code_1_on_violation(tmp_path, capsys, monkeypatch):
    def bogus(g, k, rng):
        from koptlab import encode_graph6 as enc

        return "violated", {"graph6": enc(g)}

    monkeypatch.setitem(PROPERTIES, "bogus", bogus)
    out_path = tmp_path / "rep.jsonl"
    code = cli.main(["verify", "bogus", "--exhaustive", "2", "--out", str(out_path)])
    capsys.readouterr()
    assert code == 1
    sink = tmp_path / "rep.jsonl.counterexamples.jsonl"
    assert sink.exists()
    assert all(json.loads(ln)["outcome"] == "violated" for ln in sink.read_text().splitlines())


def test_cap_override_flag(capsys, monkeypatch):
    # the flag writes the env var; monkeypatch restores the pre-test state
    monkeypatch.setenv("KOPTLAB_CAP_EDGES", "24")
    code, out, _ = run_cli(
        capsys, "compute", "alpha-k-prime", "--graph6", "C~", "-k", "2", "--cap-override", "30"
    )
    assert code == 0
