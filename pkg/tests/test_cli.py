import awci.cli as cli
from awci.ioformats import parse_sets, write_ist


def write_demo(demo, tmp_path):
    path = tmp_path / "demo.ist"
    with open(path, "w") as fh:
        write_ist(demo, fh)
    return str(path)


def test_sets_command_demo(demo, tmp_path, capsys):
    ist = write_demo(demo, tmp_path)
    out = str(tmp_path / "out.sets")
    rc = cli.main(["sets", ist, "--delta", "1", "--quorum", "3",
                   "--min-size", "6", "--out", out])
    assert rc == 0
    with open(out) as fh:
        records = parse_sets(fh)
    assert len(records) == 1
    s, delta, quorum = records[0]
    assert tuple(str(m) for m in s.members) == ("S1:1-8", "S2:2-7", "S3:1-8")
    assert s.closed and delta == 1 and quorum == 3


def test_pairs_quorum_exceeds_strings(demo, tmp_path, capsys):
    ist = write_demo(demo, tmp_path)
    rc = cli.main(["pairs", ist, "--quorum", "5"])
    assert rc == 1
    assert "usage error" in capsys.readouterr().err


def test_unknown_flag_is_usage_error(demo, tmp_path, capsys):
    ist = write_demo(demo, tmp_path)
    assert cli.main(["pairs", ist, "--bogus"]) == 1
    assert cli.main(["frobnicate"]) == 1


def test_bad_input_is_format_error(tmp_path, capsys):
    bad = tmp_path / "bad.ist"
    bad.write_text(">A\n#\n")
    assert cli.main(["pairs", str(bad)]) == 2
    assert "error" in capsys.readouterr().err
    assert cli.main(["pairs", str(tmp_path / "missing.ist")]) == 2


def test_verify_command(capsys):
    assert cli.main(["verify", "--seeds", "5"]) == 0
    assert "5/5 oracle matches" in capsys.readouterr().out


def test_gen_then_sets_recovers_truth(tmp_path):
    prefix = str(tmp_path / "planted")
    rc = cli.main(["gen", "--m", "3", "--n", "60", "--blocks", "2",
                   "--block-length", "8", "--seed", "3", "--out", prefix])
    assert rc == 0
    out = str(tmp_path / "planted.sets")
    rc = cli.main(["sets", prefix + ".ist", "--delta", "0", "--quorum", "3",
                   "--min-size", "5", "--out", out])
    assert rc == 0
    with open(out) as fh:
        reported = [s for s, _, _ in parse_sets(fh)]
    with open(prefix + ".truth") as fh:
        truth = [s for s, _, _ in parse_sets(fh)]
    assert reported == truth


def test_pairs_filter_flag_same_output(demo, tmp_path):
    ist = write_demo(demo, tmp_path)
    a, b = str(tmp_path / "a.tsv"), str(tmp_path / "b.tsv")
    assert cli.main(["pairs", ist, "--delta", "1", "--min-size", "6",
                     "--out", a]) == 0
    assert cli.main(["pairs", ist, "--delta", "1", "--min-size", "6",
                     "--no-filter", "--out", b]) == 0
    assert open(a).read() == open(b).read()


def test_ingest_command(tmp_path, capsys):
    (tmp_path / "ga.genes").write_text("g1\ng2\n")
    (tmp_path / "gb.genes").write_text("h1\n#\nh2\n")
    (tmp_path / "hits.tsv").write_text("Ga\tg1\tGb\th1\t1.0\nGa\tg2\tGb\th2\t0.4\n")
    out = str(tmp_path / "out.ist")
    rc = cli.main(["ingest", "--homology", str(tmp_path / "hits.tsv"),
                   "--genes", f"Ga={tmp_path}/ga.genes",
                   "--genes", f"Gb={tmp_path}/gb.genes",
                   "--threshold", "0.5", "--out", out])
    assert rc == 0
    text = open(out).read()
    assert ">Ga" in text and ">Gb" in text and "#" in text
    assert "h0" in text      # the accepted hit mints a shared character
    assert cli.main(["ingest", "--homology", str(tmp_path / "hits.tsv"),
                     "--genes", "nonsense"]) == 1


def test_bench_command_small(tmp_path):
    out = str(tmp_path / "bench.tsv")
    rc = cli.main(["bench", "--m-list", "3", "--delta-list", "0", "--n", "60",
                   "--folds", "2", "--min-size", "5", "--block-length", "8",
                   "--out", out])
    assert rc == 0
    lines = open(out).read().splitlines()
    assert lines[0].startswith("m\t")
    assert len(lines) == 3
