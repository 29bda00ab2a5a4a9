import json
import shutil
from pathlib import Path

import pytest

from centroid_sum.cli import build_parser, main, read_config
from centroid_sum.corpus import load_corpus, write_cluster_dir
from centroid_sum.synthetic import SyntheticSpec, make_corpus

GOLDEN = Path(__file__).parent / "data" / "golden"


@pytest.fixture
def corpus_dir(tmp_path):
    root = tmp_path / "corpus"
    spec = SyntheticSpec(num_docs=5, sents_per_doc=6, vocab_size=80, num_refs=2)
    for c in make_corpus(4, spec, seed=3):
        write_cluster_dir(c, root)
    return root


def tree(root: Path, skip=("manifest.json",)):
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file() and p.name not in skip}


def test_summarize_writes_outputs(corpus_dir, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["summarize", str(corpus_dir), "-o", str(out), "--sidecar"]) == 0
    files = tree(out)
    assert sorted(files) == sorted(f"syn00{i}{ext}" for i in range(4) for ext in (".txt", ".meta.tsv"))
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["r"] == 0.6 and manifest["config"]["variant"] == "global"
    assert set(manifest["timings_s"]) == {"load", "summarize", "write"}
    for cid in manifest["clusters"]:
        text = (out / f"{cid}.txt").read_text()
        assert text.endswith("\n") and "\r" not in text
        assert len(text.split()) <= 100


def test_summarize_empty_dir_fails(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert main(["summarize", str(empty), "-o", str(tmp_path / "o")]) == 1
    assert str(empty) in capsys.readouterr().err


def test_bad_flag_value_exits_1(corpus_dir, tmp_path, capsys):
    assert main(["summarize", str(corpus_dir), "-o", str(tmp_path / "o"), "--r", "1.5"]) == 1
    assert "r" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        main(["summarize", str(corpus_dir), "--variant", "nope"])
    assert exc.value.code == 1


def test_rerun_and_jobs_byte_identical(corpus_dir, tmp_path):
    outs = []
    for i, jobs in enumerate(("1", "1", "8")):
        out = tmp_path / f"o{i}"
        assert main(["summarize", str(corpus_dir), "-o", str(out), "--sidecar", "--jobs", jobs]) == 0
        outs.append(tree(out))
    assert outs[0] == outs[1] == outs[2]


def test_config_precedence(corpus_dir, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nvariant = ranked\nr = 0.3\nredundancy-filter = false\n")
    out = tmp_path / "o"
    assert main(["summarize", str(corpus_dir), "-o", str(out), "--config", str(cfg), "--r", "0.4"]) == 0
    conf = json.loads((out / "manifest.json").read_text())["config"]
    assert conf["variant"] == "ranked" and conf["r"] == 0.4 and conf["redundancy_filter"] is False
    assert conf["v"] == 0.1 and conf["word_limit"] == 100
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    assert main(["summarize", str(corpus_dir), "-o", str(out), "--config", str(bad)]) == 1
    assert read_config(cfg)["r"] == 0.3


def test_stopword_env_and_flag(corpus_dir, tmp_path, monkeypatch):
    words = tmp_path / "stop.txt"
    words.write_text("term0\nterm1\n")
    default, env, flag = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    assert main(["summarize", str(corpus_dir), "-o", str(default)]) == 0
    monkeypatch.setenv("CENTROID_SUM_STOPWORDS", str(words))
    assert main(["summarize", str(corpus_dir), "-o", str(env)]) == 0
    assert json.loads((env / "manifest.json").read_text())["stopwords"] == str(words)
    assert tree(default) != tree(env)
    monkeypatch.setenv("CENTROID_SUM_STOPWORDS", str(tmp_path / "missing.txt"))
    assert main(["summarize", str(corpus_dir), "-o", str(flag), "--stopwords", str(words)]) == 0
    assert tree(flag) == tree(env)


def test_evaluate_identical_and_disjoint(tmp_path, capsys):
    root = tmp_path / "c"
    (root / "x" / "docs").mkdir(parents=True)
    (root / "x" / "docs" / "d.txt").write_text("Alpha beta gamma delta epsilon.")
    (root / "x" / "refs").mkdir()
    (root / "x" / "refs" / "r.txt").write_text("alpha beta gamma delta epsilon zeta eta theta")
    same, other = tmp_path / "same", tmp_path / "other"
    same.mkdir()
    other.mkdir()
    (same / "x.txt").write_text("alpha beta gamma delta epsilon zeta eta theta\n")
    (other / "x.txt").write_text("one two three four five\n")
    assert main(["evaluate", str(root), str(same), str(other)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1].split() == ["same", "100.00", "100.00", "100.00"]
    assert lines[2].split() == ["other", "0.00", "0.00", "0.00"]


def test_evaluate_missing_refs_fails(corpus_dir, tmp_path, capsys):
    shutil.rmtree(corpus_dir / "syn000" / "refs")
    out = tmp_path / "o"
    assert main(["summarize", str(corpus_dir), "-o", str(out)]) == 0
    assert main(["evaluate", str(corpus_dir), str(out)]) == 1
    assert "syn000" in capsys.readouterr().err


def test_evaluate_matches_golden_table(tmp_path, capsys):
    dump = tmp_path / "records.tsv"
    models = [str(GOLDEN / "summaries" / m) for m in ("ranked", "global_nbest")]
    assert main(["evaluate", str(GOLDEN / "corpus"), *models, "--output", str(dump)]) == 0
    assert capsys.readouterr().out == (GOLDEN / "table.txt").read_text()
    got = {tuple(l.split("\t")[:3]): float(l.split("\t")[3]) for l in dump.read_text().splitlines()[1:]}
    for line in (GOLDEN / "recalls.tsv").read_text().splitlines()[1:]:
        model, cid, n, frac = line.split("\t")
        num, den = map(int, frac.split("/"))
        assert got[(model, cid, n)] == pytest.approx(num / den, abs=1e-12)


def test_tune_rv_grid_file(corpus_dir, tmp_path, capsys):
    grid = tmp_path / "grid.tsv"
    assert main(["tune", str(corpus_dir), "--grid", "rv", "-o", str(grid)]) == 0
    rows = grid.read_text().splitlines()
    assert rows[0] == "r\tv\tR-1\tR-2\tR-4" and len(rows) == 122
    best = capsys.readouterr().out.strip()
    assert best.startswith("best\tr=")


def test_tune_n_grid_file(corpus_dir, tmp_path, capsys):
    grid = tmp_path / "grid.tsv"
    assert main(["tune", str(corpus_dir), "--grid", "n", "--method", "n_first", "-o", str(grid)]) == 0
    rows = grid.read_text().splitlines()
    assert len(rows) == 11 and all(r.startswith("n_first\t") for r in rows[1:])


def _articles(root: Path, count=60):
    root.mkdir()
    for i in range(count):
        topic = f"topic{i % 6}"
        body = f"{topic.capitalize()} story number art{i} begins here. More {topic} details follow today."
        (root / f"a{i:03d}.story").write_text(f"{body}\n\n@highlight\n\n{topic} summary art{i}\n")


def test_build_dev_clusters(tmp_path, capsys):
    arts = tmp_path / "arts"
    _articles(arts)
    outs = []
    for name in ("d1", "d2"):
        out = tmp_path / name
        assert main(["build-dev-clusters", str(arts), "-o", str(out), "--clusters", "50", "--size", "10", "--seed", "13"]) == 0
        outs.append(tree(out))
    assert outs[0] == outs[1]
    clusters = load_corpus(tmp_path / "d1")
    assert len(clusters) == 50 and all(len(c.documents) == 10 and c.references for c in clusters)


def test_help_documents_flags_defaults_and_precedence(capsys):
    parser = build_parser()
    for sub in ("summarize", "evaluate", "tune", "build-dev-clusters"):
        with pytest.raises(SystemExit):
            parser.parse_args([sub, "--help"])
        text = " ".join(capsys.readouterr().out.split())
        action_flags = {
            s for a in parser._subparsers._group_actions[0].choices[sub]._actions for s in a.option_strings
        }
        for flag in action_flags:
            assert flag in text, (sub, flag)
        if sub in ("summarize", "tune"):
            assert "command-line flag > --config file > built-in default" in text
            for default in ("default: 0.6", "default: 0.1", "default: 100", "default: global", "default: none"):
                assert default in text, (sub, default)
