from plotviz.cli import main


def test_happy_path_writes_figure_and_sidecar(write_sweep_csv, tmp_path, capsys):
    rows = [{"sweep_value": f"0.{i}00000"} for i in range(3)]
    path = write_sweep_csv("in.csv", rows)
    out = tmp_path / "fig.png"
    rc = main(["--csv", path, "--y", "rtb", "--group", "dist", "--out", str(out)])
    assert rc == 0
    assert out.exists()
    assert (tmp_path / "fig.series.txt").exists()
    assert "1 series" in capsys.readouterr().out


def test_title_flag_is_accepted(write_sweep_csv, tmp_path):
    path = write_sweep_csv("in.csv", [{}])
    rc = main(["--csv", path, "--y", "jds", "--group", "q",
               "--out", str(tmp_path / "t.png"), "--title", "hello"])
    assert rc == 0


def test_bad_y_choice_exits_one(write_sweep_csv, tmp_path, capsys):
    path = write_sweep_csv("in.csv", [{}])
    rc = main(["--csv", path, "--y", "speed", "--group", "dist", "--out", str(tmp_path / "f.png")])
    assert rc == 1
    capsys.readouterr()


def test_unknown_group_exits_one(write_sweep_csv, tmp_path, capsys):
    path = write_sweep_csv("in.csv", [{}])
    rc = main(["--csv", path, "--y", "rtb", "--group", "color", "--out", str(tmp_path / "f.png")])
    assert rc == 1
    assert "unknown group column" in capsys.readouterr().err


def test_missing_input_file_exits_one(tmp_path, capsys):
    rc = main(["--csv", str(tmp_path / "absent.csv"), "--y", "rtb",
               "--group", "dist", "--out", str(tmp_path / "f.png")])
    assert rc == 1
    capsys.readouterr()


def test_schema_mismatch_exits_one_with_diagnostic(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n1,2,3\n")
    rc = main(["--csv", str(bad), "--y", "rtb", "--group", "dist", "--out", str(tmp_path / "f.png")])
    assert rc == 1
    err = capsys.readouterr().err
    assert "does not match" in err and "missing columns" in err


def test_missing_required_flag_exits_one(capsys):
    rc = main(["--y", "rtb", "--group", "dist", "--out", "f.png"])
    assert rc == 1
    capsys.readouterr()
