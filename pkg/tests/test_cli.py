"""End-to-end command-line behavior: JSON output, exit codes, corpus
files, worker parallelism, and the counterexample persistence path."""

import json

import pytest

from qube.cli import main
from qube.cycles import gray_cycle, validate_cycle
from qube.enumeration import enumerate_cycles
from qube.graphs import (
    UndirectedGraph,
    format_bipartite,
    hypercube_bipartite,
    parse_graph,
)
from qube.independence import brute_force_equi, equi_reduction


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def json_lines(out: str) -> list[dict]:
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def write_cycles(path, cycles) -> str:
    with open(path, "w", encoding="utf-8") as f:
        for h in cycles:
            f.write(json.dumps(h.to_dict()) + "\n")
    return str(path)


class TestGray:
    def test_one_cube_exact_output(self, capsys):
        code, out, _ = run(capsys, "gray", "--n", "1")
        assert code == 0
        assert out == '{"n": 1, "seq": [0, 1]}\n'

    def test_output_validates(self, capsys):
        code, out, _ = run(capsys, "gray", "--n", "5")
        doc = json.loads(out)
        assert code == 0
        validate_cycle(doc["n"], doc["seq"])

    def test_bad_dimension_is_a_usage_error(self, capsys):
        code, _, err = run(capsys, "gray", "--n", "0")
        assert code == 2
        assert "error:" in err


class TestEnumerate:
    def test_count_only(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--n", "3", "--count-only")
        assert code == 0
        assert json.loads(out) == {"n": 3, "count": 6}

    def test_emission_to_file(self, capsys, tmp_path):
        target = tmp_path / "q3.jsonl"
        code, _, err = run(capsys, "enumerate", "--n", "3", "--out", str(target))
        assert code == 0
        docs = [json.loads(line) for line in target.read_text().splitlines()]
        assert len(docs) == 6
        for doc in docs:
            validate_cycle(doc["n"], doc["seq"])
        assert "6 cycles" in err

    def test_emission_to_stdout_matches_prune_none(self, capsys):
        code_a, out_a, _ = run(capsys, "enumerate", "--n", "3")
        code_b, out_b, _ = run(capsys, "enumerate", "--n", "3", "--prune", "none")
        assert code_a == code_b == 0
        assert out_a == out_b

    def test_prefix_splitting_flow(self, capsys, tmp_path):
        pre = tmp_path / "prefixes.txt"
        code, out, _ = run(
            capsys, "enumerate", "--n", "3", "--split-depth", "2",
            "--prefixes-out", str(pre),
        )
        assert code == 0
        assert json.loads(out) == {"n": 3, "prefix_count": 6}

        seqs = []
        for k in range(6):
            code, out, _ = run(
                capsys, "enumerate", "--n", "3",
                "--prefixes-in", str(pre), "--prefix-index", str(k),
            )
            assert code == 0
            seqs.extend(tuple(doc["seq"]) for doc in json_lines(out))
        assert seqs == [h.seq for h in enumerate_cycles(3)]

    def test_prefix_index_out_of_range(self, capsys, tmp_path):
        pre = tmp_path / "prefixes.txt"
        run(capsys, "enumerate", "--n", "3", "--split-depth", "2",
            "--prefixes-out", str(pre))
        code, _, err = run(
            capsys, "enumerate", "--n", "3",
            "--prefixes-in", str(pre), "--prefix-index", "99",
        )
        assert code == 2
        assert "out of range" in err

    def test_prefixes_out_requires_depth(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "enumerate", "--n", "3",
            "--prefixes-out", str(tmp_path / "p.txt"),
        )
        assert code == 2
        assert "--split-depth" in err


class TestAnalyze:
    def test_full_profile_document(self, capsys, tmp_path):
        corpus = write_cycles(tmp_path / "g3.jsonl", [gray_cycle(3)])
        code, out, _ = run(capsys, "analyze", "--in", corpus)
        assert code == 0
        doc = json.loads(out)
        assert doc["chromatic_vector"] == [4, 2, 2]
        assert doc["chromatic_ok"] is True
        assert len(doc["profiles"]) == 3
        dim0 = doc["profiles"][0]
        assert dim0["index_list"] == [0, 2, 4, 6]
        assert dim0["segments"] == [2, 2, 2, 2]
        assert dim0["parity_list"] == [0, 1, 0, 1]
        assert dim0["balanced"] is True
        assert dim0["segment_sums_ok"] is True

    def test_single_dimension(self, capsys, tmp_path):
        corpus = write_cycles(tmp_path / "g3.jsonl", [gray_cycle(3)])
        code, out, _ = run(capsys, "analyze", "--in", corpus, "--dim", "2")
        doc = json.loads(out)
        assert code == 0
        assert [p["dim"] for p in doc["profiles"]] == [2]
        assert doc["profiles"][0]["index_list"] == [0, 4]

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "analyze", "--in", "no-such-file.jsonl")
        assert code == 2
        assert "error:" in err

    def test_corrupt_corpus(self, capsys, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text('{"n": 2, "seq": [0, 1, 3]}\n')
        code, _, err = run(capsys, "analyze", "--in", str(bad))
        assert code == 2
        assert "error:" in err


class TestSquares:
    def test_both_squares_of_the_two_cube(self, capsys, tmp_path):
        corpus = write_cycles(tmp_path / "g2.jsonl", [gray_cycle(2)])
        code, out, _ = run(capsys, "squares", "--in", corpus)
        doc = json.loads(out)
        assert code == 0
        assert doc["count"] == 2
        assert {s["kind"] for s in doc["squares"]} == {"straight"}

    def test_first_only(self, capsys, tmp_path):
        corpus = write_cycles(tmp_path / "g2.jsonl", [gray_cycle(2)])
        code, out, _ = run(capsys, "squares", "--in", corpus, "--first-only")
        doc = json.loads(out)
        assert doc["count"] == 1
        assert doc["squares"][0] == {
            "rim_dim": 0, "kind": "straight", "rim_indexes": [0, 2], "ray_dim": 1,
        }


class TestVerify:
    @pytest.mark.parametrize(
        "prop", ["balance", "segments", "squares", "chromatic", "threshold"]
    )
    def test_exhaustive_q3_holds(self, capsys, prop):
        code, out, err = run(
            capsys, "verify", "--n", "3", "--property", prop, "--exhaustive"
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["checked"] == 6
        assert doc["violations"] == 0
        assert doc["first_counterexample"] is None
        assert "holds" in err

    def test_exhaustive_balance_q4(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--n", "4", "--property", "balance", "--exhaustive"
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["checked"] == 1344

    def test_parallel_workers_match_sequential(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys, "verify", "--n", "4", "--property", "squares", "--exhaustive"
        )
        sequential = json.loads(out)
        monkeypatch.setenv("QUBE_THREADS", "2")
        code2, out2, _ = run(
            capsys, "verify", "--n", "4", "--property", "squares", "--exhaustive"
        )
        parallel = json.loads(out2)
        assert code == code2 == 0
        for key in ("checked", "violations", "first_counterexample"):
            assert sequential[key] == parallel[key]

    def test_sampled_corpus(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--n", "5", "--property", "balance",
            "--sample", "30", "--seed", "17",
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["checked"] == 30
        assert doc["corpus"] == "sample(seed=17, k=30)"

    def test_file_corpus(self, capsys, tmp_path):
        corpus = write_cycles(
            tmp_path / "mix.jsonl", [gray_cycle(4), gray_cycle(4).rotated(5)]
        )
        code, out, _ = run(
            capsys, "verify", "--n", "4", "--property", "threshold", "--in", corpus
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["checked"] == 2

    def test_isomorphism_property(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--n", "5", "--property", "isomorphism",
            "--exhaustive",
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["checked"] == 5  # one dimension graph per dimension
        assert doc["violations"] == 0

    def test_sample_requires_seed(self, capsys):
        code, _, err = run(
            capsys, "verify", "--n", "4", "--property", "balance", "--sample", "5"
        )
        assert code == 2
        assert "--seed" in err

    def test_some_corpus_flag_is_required(self, capsys):
        code, _, err = run(capsys, "verify", "--n", "4", "--property", "balance")
        assert code == 2
        assert "required" in err

    def test_file_dimension_mismatch(self, capsys, tmp_path):
        corpus = write_cycles(tmp_path / "g3.jsonl", [gray_cycle(3)])
        code, _, err = run(
            capsys, "verify", "--n", "4", "--property", "balance", "--in", corpus
        )
        assert code == 2
        assert "n=3" in err

    def test_forced_violation_exits_one_and_persists(
        self, capsys, tmp_path, monkeypatch
    ):
        # simulate a square-free discovery to exercise the counterexample
        # reporting contract end to end
        monkeypatch.chdir(tmp_path)
        monkeypatch.setattr("qube.cli.has_square", lambda cyc: False)
        code, out, err = run(
            capsys, "verify", "--n", "3", "--property", "squares", "--exhaustive"
        )
        assert code == 1
        doc = json.loads(out)
        assert doc["violations"] == 6
        assert doc["first_counterexample"]["square_free"] is True
        seq = doc["first_counterexample"]["cycle"]["seq"]
        validate_cycle(3, seq)
        saved = tmp_path / "square_free_counterexamples_n3.jsonl"
        assert saved.exists()
        lines = [json.loads(x) for x in saved.read_text().splitlines()]
        assert len(lines) == 6
        assert "VIOLATED" in err
        assert "square-free counterexamples written" in err

    def test_forced_balance_violation_exits_one(self, capsys, monkeypatch):
        monkeypatch.setattr("qube.cli.check_balance", lambda cyc, i: False)
        code, out, _ = run(
            capsys, "verify", "--n", "3", "--property", "balance", "--exhaustive"
        )
        assert code == 1
        doc = json.loads(out)
        assert doc["violations"] == 18  # three dimensions on each of six cycles
        assert doc["first_counterexample"]["dim"] == 0


class TestEquiind:
    def test_hypercube_all_methods(self, capsys):
        for method in ("direct", "reduction", "oracle"):
            code, out, _ = run(
                capsys, "equiind", "--hypercube", "3", "--method", method
            )
            doc = json.loads(out)
            assert code == 0
            assert doc["size"] == 2
            if method == "oracle":
                assert doc["witness"] is None
            else:
                assert len(doc["witness"]) == 2

    def test_graph_file(self, capsys, tmp_path):
        b = hypercube_bipartite(4)
        path = tmp_path / "q4.bip"
        path.write_text(format_bipartite(b))
        code, out, _ = run(capsys, "equiind", "--graph", str(path))
        doc = json.loads(out)
        assert code == 0
        assert doc["size"] == 4 == brute_force_equi(b)

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "equiind", "--graph", "missing.bip")
        assert code == 2
        assert "error:" in err


class TestReduce:
    def test_roundtrip(self, capsys, tmp_path):
        b = hypercube_bipartite(3)
        src = tmp_path / "q3.bip"
        dst = tmp_path / "q3.pairs"
        src.write_text(format_bipartite(b))
        code, _, err = run(capsys, "reduce", "--graph", str(src), "--out", str(dst))
        assert code == 0
        assert "4 vertices, 6 edges" in err
        written = parse_graph(dst.read_text())
        direct = equi_reduction(b).graph
        assert written.vertex_count == direct.vertex_count
        assert written.adj == direct.adj


class TestTable1:
    def test_small_rows(self, capsys):
        code, out, _ = run(capsys, "table1", "--max-n", "5")
        rows = json_lines(out)
        assert code == 0
        assert [r["alpha_equi"] for r in rows] == [2, 4, 10]
        assert [r["reduced_vertices"] for r in rows] == [4, 32, 176]
        assert [r["reduced_edges"] for r in rows] == [6, 448, 9720]
        assert all(r["alpha_matches_reference"] for r in rows)
        assert not any(r["reduced_vertices_mismatch"] for r in rows)

    def test_six_cube_row_flags_both_discrepancies(self, capsys):
        code, out, err = run(
            capsys, "table1", "--max-n", "6", "--alpha-max-n", "6"
        )
        rows = json_lines(out)
        assert code == 0
        row6 = rows[-1]
        assert row6["reduced_vertices"] == 832
        assert row6["reference_reduced_vertices"] == 882
        assert row6["reduced_vertices_mismatch"] is True
        assert row6["alpha_equi"] == 20
        assert row6["reference_alpha"] == 16
        assert row6["alpha_matches_reference"] is False
        assert "832 differs from the reference value 882" in err
        assert "20 differs from the reference value 16" in err

    def test_alpha_cap_skips_the_solve(self, capsys):
        code, out, _ = run(
            capsys, "table1", "--max-n", "6", "--alpha-max-n", "4"
        )
        rows = json_lines(out)
        assert code == 0
        assert [r["alpha_equi"] for r in rows] == [2, 4, None, None]
        assert [r["reference_alpha"] for r in rows] == [2, 4, 10, 16]
        assert rows[-1]["reduced_vertices"] == 832

    def test_out_of_range(self, capsys):
        code, _, err = run(capsys, "table1", "--max-n", "9")
        assert code == 2
        assert "error:" in err


class TestPigeonhole:
    def test_full_range(self, capsys):
        code, out, err = run(capsys, "pigeonhole", "--max-n", "7")
        docs = json_lines(out)
        assert code == 0
        assert [d["n"] for d in docs] == [2, 3, 4, 5, 6, 7]
        assert all(d["forced"] for d in docs)
        last = docs[-1]
        assert last == {
            "n": 7, "threshold": 16, "product": 112, "order": 128, "forced": True,
        }
        assert "112 < 128" in err

    def test_eight_cube_is_not_decided_by_counting(self, capsys):
        code, out, err = run(capsys, "pigeonhole", "--max-n", "8")
        docs = json_lines(out)
        assert code == 0
        assert docs[-1] == {
            "n": 8, "threshold": 40, "product": 320, "order": 256, "forced": False,
        }
        assert "not decided by counting" in err

    def test_nine_cube_needs_a_stored_value(self, capsys):
        code, _, err = run(capsys, "pigeonhole", "--max-n", "9")
        assert code == 2
        assert "error:" in err


class TestUsageErrors:
    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_unknown_property(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--n", "3", "--property", "sorcery", "--exhaustive"])
        assert exc.value.code == 2

    def test_equiind_needs_exactly_one_source(self):
        with pytest.raises(SystemExit) as exc:
            main(["equiind", "--hypercube", "3", "--graph", "x.bip"])
        assert exc.value.code == 2
