import json
import math

from click.testing import CliRunner

from cyclescan.cli import main


def run(*args, **kwargs):
    return CliRunner().invoke(main, list(args), **kwargs)


def simulate_file(tmp_path, name="loops.csv", *extra):
    path = str(tmp_path / name)
    res = run(
        "simulate", "circle", "--center", "0.3,0.3", "--radius", "0.1",
        "--turns", "3", "--blocks", "6", "--treatment", "demo", "--out", path,
        *extra,
    )
    assert res.exit_code == 0, res.output
    return path


class TestSimulate:
    def test_writes_canonical_csv(self, tmp_path):
        path = simulate_file(tmp_path)
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().strip()
        assert header == "treatment,block,period,x,y"

    def test_same_seed_is_byte_identical(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        for out in (a, b):
            res = run("simulate", "noisy-loop", "--noise", "0.01", "--seed", "7",
                      "--out", str(out))
            assert res.exit_code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_stdout_when_no_out(self):
        res = run("simulate", "circle", "--turns", "1")
        assert res.exit_code == 0
        assert res.output.startswith("treatment,block,period,x,y")

    def test_out_of_simplex_spec_exits_2(self, tmp_path):
        res = run("simulate", "circle", "--center", "0.05,0.3",
                  "--out", str(tmp_path / "x.csv"))
        assert res.exit_code == 2

    def test_turns_zero_counts_nothing(self, tmp_path):
        path = str(tmp_path / "still.csv")
        res = run("simulate", "circle", "--turns", "0", "--out", path)
        assert res.exit_code == 0
        res = run("count", path, "--format", "json")
        assert res.exit_code == 0
        row = json.loads(res.output)[0]
        assert row["c_values"] == [0.0]


class TestCount:
    def test_three_turn_loops_count_three_per_block(self, tmp_path):
        path = simulate_file(tmp_path)
        res = run("count", path, "--alpha", "0.3", "--beta", "0.3",
                  "--format", "json")
        assert res.exit_code == 0, res.output
        row = json.loads(res.output)[0]
        assert row["treatment"] == "demo"
        assert row["c_values"] == [3.0] * 6
        assert row["c_bar"] == 3.0
        assert row["mean_cri"] == 1.0
        assert row["p_c"] < 0.05

    def test_table_shape_and_star(self, tmp_path):
        path = simulate_file(tmp_path)
        res = run("count", path, "--alpha", "0.3", "--beta", "0.3")
        assert res.exit_code == 0
        lines = res.output.strip().split("\n")
        assert lines[0].split() == ["treatment", "anchor", "ccw", "cw", "cri", "p"]
        assert "1.00*" in lines[1]
        blocks_header = [ln for ln in lines if ln.startswith("treatment") and "c_bar" in ln]
        assert blocks_header, "expected the per-block table"

    def test_anchor_outside_orbit_gives_zero_cri_nan_p(self, tmp_path):
        path = simulate_file(tmp_path)
        res = run("count", path, "--alpha", "0.05", "--beta", "0.05")
        assert res.exit_code == 0
        assert "0.00" in res.output
        assert "nan" in res.output

    def test_tsv_format(self, tmp_path):
        path = simulate_file(tmp_path)
        res = run("count", path, "--alpha", "0.3", "--beta", "0.3",
                  "--format", "tsv")
        header = res.output.split("\n")[0].split("\t")
        assert header[:5] == ["treatment", "alpha", "beta", "rule", "n_blocks"]

    def test_out_written_to_file(self, tmp_path):
        path = simulate_file(tmp_path)
        out = tmp_path / "table.txt"
        res = run("count", path, "--out", str(out))
        assert res.exit_code == 0
        assert out.exists() and "treatment" in out.read_text()

    def test_invalid_data_exits_2(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("treatment,block,period,x,y\nT1,B1,1,0.9,0.9\n")
        res = run("count", str(bad))
        assert res.exit_code == 2

    def test_legacy_rule_accepted(self, tmp_path):
        path = simulate_file(tmp_path)
        res = run("count", path, "--rule", "legacy", "--format", "json")
        assert res.exit_code == 0

    def test_block_table_display_of_reference_counts(self, tmp_path):
        # blocks winding 6,4,2,4,8,1 times -> per-block net counts equal the
        # turn counts; the mean displays as 4.2 with a significance star
        csv_rows = ["treatment,block,period,x,y"]
        for b, turns in enumerate([6, 4, 2, 4, 8, 1], start=1):
            period = 0
            for k in range(turns * 12 + 1):
                theta = 2 * math.pi * turns * k / (turns * 12)
                x = 0.3 + 0.1 * math.cos(theta)
                y = 0.3 + 0.1 * math.sin(theta)
                csv_rows.append(f"ref,B{b},{period},{x!r},{y!r}")
                period += 1
        path = tmp_path / "ref.csv"
        path.write_text("\n".join(csv_rows) + "\n")
        res = run("count", str(path), "--alpha", "0.3", "--beta", "0.3",
                  "--format", "json")
        assert res.exit_code == 0, res.output
        row = json.loads(res.output)[0]
        assert row["c_values"] == [6.0, 4.0, 2.0, 4.0, 8.0, 1.0]
        table = run("count", str(path), "--alpha", "0.3", "--beta", "0.3")
        block_line = [ln for ln in table.output.split("\n") if ln.startswith("ref")][-1]
        assert "4.2*" in block_line
        assert "0.027" in block_line


class TestCompare:
    def test_four_rows_per_treatment(self, tmp_path):
        path = simulate_file(tmp_path)
        res = run("compare", path, "--alpha", "0.3", "--beta", "0.3",
                  "--format", "json")
        assert res.exit_code == 0
        rows = json.loads(res.output)
        assert len(rows) == 4
        assert [(r["rule"], r["index"]) for r in rows] == [
            ("legacy", "cri"), ("corrected", "cri"),
            ("legacy", "c"), ("corrected", "c"),
        ]

    def test_rules_agree_without_edge_geometry(self, tmp_path):
        path = simulate_file(tmp_path)
        res = run("compare", path, "--alpha", "0.3", "--beta", "0.12",
                  "--format", "json")
        rows = json.loads(res.output)
        by = {(r["rule"], r["index"]): r["mean"] for r in rows}
        assert by[("legacy", "cri")] == by[("corrected", "cri")]
        assert by[("legacy", "c")] == by[("corrected", "c")]

    def test_correction_recovers_missed_cycles(self, tmp_path):
        # diamond loops whose crossings all happen at vertices sitting on the
        # tripwire line: the legacy rules score every one of them zero
        diamond = [(0.25, 0.1), (0.4, 0.25), (0.25, 0.4), (0.1, 0.25)]
        csv_rows = ["treatment,block,period,x,y"]
        for b in range(1, 4):
            points = diamond * 2 + [diamond[0]]
            for t, (x, y) in enumerate(points):
                csv_rows.append(f"diamond,B{b},{t},{x},{y}")
        path = tmp_path / "diamond.csv"
        path.write_text("\n".join(csv_rows) + "\n")
        res = run("compare", str(path), "--alpha", "0.25", "--beta", "0.25",
                  "--format", "json")
        rows = json.loads(res.output)
        by = {(r["rule"], r["index"]): r["mean"] for r in rows}
        assert by[("corrected", "c")] == 2.0   # two half-counts per loop
        assert by[("legacy", "c")] == 0.0
        assert abs(by[("corrected", "c")]) > abs(by[("legacy", "c")])


class TestScanCommand:
    def test_writes_grid_and_summary_files(self, tmp_path):
        path = simulate_file(tmp_path)
        outdir = tmp_path / "scanout"
        res = run("scan", path, "--step", "0.1", "--out", str(outdir))
        assert res.exit_code == 0, res.output
        assert (outdir / "grid_demo.tsv").exists()
        assert (outdir / "grid_demo.json").exists()
        assert (outdir / "significant_demo.tsv").exists()
        assert "demo:" in res.output

    def test_significant_anchor_near_orbit_center(self, tmp_path):
        path = simulate_file(tmp_path)
        outdir = tmp_path / "scanout"
        res = run("scan", path, "--step", "0.05", "--out", str(outdir))
        assert res.exit_code == 0
        sig = (outdir / "significant_demo.tsv").read_text().strip().split("\n")
        anchors = [
            (float(ln.split("\t")[1]), float(ln.split("\t")[2]))
            for ln in sig[1:]
            if ln.startswith("cri\t")
        ]
        assert any(abs(a - 0.3) <= 0.05 and abs(b - 0.3) <= 0.05 for a, b in anchors)

    def test_tsv_only_format(self, tmp_path):
        path = simulate_file(tmp_path)
        outdir = tmp_path / "scantsv"
        res = run("scan", path, "--step", "0.1", "--format", "tsv",
                  "--out", str(outdir))
        assert res.exit_code == 0
        assert (outdir / "grid_demo.tsv").exists()
        assert not (outdir / "grid_demo.json").exists()

    def test_bad_step_exits_2(self, tmp_path):
        path = simulate_file(tmp_path)
        res = run("scan", path, "--step", "0.6", "--out", str(tmp_path / "o"))
        assert res.exit_code == 2


class TestWilcoxonCommand:
    def test_reference_sample(self):
        res = run("test", "--", "6", "4", "2", "4", "8", "1")
        assert res.exit_code == 0
        assert "p_two_tailed 0.027" in res.output
        assert "n_effective  6" in res.output

    def test_negative_values_after_separator(self):
        res = run("test", "--", "-52", "-29", "-43", "-49", "-40", "-33")
        assert res.exit_code == 0
        assert "p_two_tailed 0.028" in res.output
        assert "z            -" in res.output

    def test_exact_method(self):
        res = run("test", "--method", "exact", "--", "1", "2", "3", "4", "5", "6")
        assert res.exit_code == 0
        assert "0.031" in res.output

    def test_all_zero_sample_exits_3(self):
        res = run("test", "--", "0", "0", "0")
        assert res.exit_code == 3


class TestRoundTrip:
    def test_simulated_file_counts_like_memory(self, tmp_path):
        from cyclescan import (
            GeneratorSpec, SimplexPoint, Tripwire, count_block, generate, load_csv,
        )

        blocks = [
            generate(
                GeneratorSpec(kind="noisy-loop", center=SimplexPoint(0.3, 0.3),
                              radius=0.1, turns=3, noise=0.01, seed=40 + i),
                block_id=f"B{i + 1}", treatment_id="demo",
            )
            for i in range(3)
        ]
        from cyclescan import write_csv

        path = str(tmp_path / "mem.csv")
        write_csv(path, blocks)
        loaded = load_csv(path).blocks("demo")
        tw = Tripwire(0.3, 0.3)
        for mem, disk in zip(blocks, loaded):
            assert count_block(mem, tw) == count_block(disk, tw)
