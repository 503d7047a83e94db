import json
import shutil

import pytest

from glossotype.cli import main

from synthdata import write_conllu


def run(*argv) -> int:
    return main(list(argv))


@pytest.fixture(scope="module")
def pipeline_outputs(dirichlet_fixture, tmp_path_factory):
    """profile + compare + train + evaluate over the 5-language fixture."""
    root, codes, _ = dirichlet_fixture
    out = tmp_path_factory.mktemp("cli-out")
    base = ["--corpus-dir", str(root), "--output-dir", str(out)]
    nn = ["--docs-per-lang", "60", "--sentences-per-doc", "20",
          "--epochs", "50", "--learning-rate", "0.01"]
    assert run(*base, "profile") == 0
    assert run(*base, "compare") == 0
    assert run(*base, "train", *nn) == 0
    assert run(*base, "evaluate", *nn, "--folds", "5") == 0
    return root, codes, out


class TestPipeline:
    def test_profile_artifacts(self, pipeline_outputs):
        root, codes, out = pipeline_outputs
        for code in codes:
            assert (out / "profiles" / f"{code}.pos.tsv").exists()
            assert (out / "profiles" / f"{code}.pos.json").exists()
        summary = (out / "profile_summary.tsv").read_text()
        assert summary.splitlines()[0].startswith("language\t")
        assert len(summary.splitlines()) == len(codes) + 1

    def test_compare_artifacts(self, pipeline_outputs):
        _, _, out = pipeline_outputs
        # tagged-only corpus: structure matrix and tree, no written/overall
        assert (out / "matrices" / "structure.tsv").exists()
        assert (out / "matrices" / "structure.phy").exists()
        assert not (out / "matrices" / "written.tsv").exists()
        newick = (out / "trees" / "structure.nwk").read_text()
        assert newick.endswith(";\n")
        graph = json.loads((out / "graph" / "similarity.json").read_text())
        assert set(graph["communities"]) == {"l0", "l1", "l2", "l3", "l4"}
        assert (out / "graph" / "similarity.dot").read_text().startswith("graph ")

    def test_train_artifacts(self, pipeline_outputs):
        _, _, out = pipeline_outputs
        model = json.loads((out / "model" / "model.json").read_text())
        assert model["label_names"] == ["l0", "l1", "l2", "l3", "l4"]
        loss_lines = (out / "model" / "train_loss.tsv").read_text().splitlines()
        assert loss_lines[0] == "epoch\tmean_loss"
        assert len(loss_lines) == 51

    def test_evaluate_artifacts(self, pipeline_outputs):
        _, _, out = pipeline_outputs
        payload = json.loads((out / "metrics" / "metrics.json").read_text())
        assert len(payload["fold_accuracies"]) == 5
        assert payload["mean_accuracy"] >= 0.85  # plumbing check; the full
        # acceptance-scale run has its own criterion in test_acceptance
        per_class = (out / "metrics" / "per_class.tsv").read_text().splitlines()
        assert per_class[0] == "language\tprecision\trecall\tfscore\tsupport"
        assert len(per_class) == 6

    def test_identify_top1(self, pipeline_outputs, tmp_path, capsys):
        root, codes, out = pipeline_outputs
        source = (root / "l2" / "tagged.conllu").read_text().split("\n\n")[:50]
        input_path = tmp_path / "query.conllu"
        input_path.write_text("\n\n".join(source) + "\n", encoding="utf-8")
        code = run("identify", str(out / "model" / "model.json"), str(input_path))
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 5
        top_lang, top_prob = lines[0].split("\t")
        assert top_lang == "l2"
        assert float(top_prob) > 0.5
        probs = [float(line.split("\t")[1]) for line in lines]
        assert sum(probs) == pytest.approx(1.0, abs=1e-9)
        assert probs == sorted(probs, reverse=True)

    def test_identify_json_mode(self, pipeline_outputs, tmp_path, capsys):
        root, _, out = pipeline_outputs
        source = (root / "l0" / "tagged.conllu").read_text().split("\n\n")[:20]
        input_path = tmp_path / "query.conllu"
        input_path.write_text("\n\n".join(source) + "\n", encoding="utf-8")
        assert run("identify", str(out / "model" / "model.json"), str(input_path), "--json") == 0
        ranked = json.loads(capsys.readouterr().out)
        assert ranked[0][0] == "l0"

    def test_report_runs(self, pipeline_outputs, capsys):
        root, _, out = pipeline_outputs
        assert run("--corpus-dir", str(root), "--output-dir", str(out), "report") == 0
        text = capsys.readouterr().out
        assert "== Languages ==" in text
        assert "top sentence structures" in text
        assert "label propagation" in text

    def test_report_distinct_only(self, pipeline_outputs, capsys):
        root, _, out = pipeline_outputs
        assert run(
            "--corpus-dir", str(root), "--output-dir", str(out),
            "report", "--distinct-only", "--top", "5",
        ) == 0
        text = capsys.readouterr().out
        for line in text.splitlines():
            if "|" in line and "(" in line and not line.startswith("=="):
                for item in line.split(", "):
                    tags = item.split(" ")[0].split("|")
                    assert len(set(tags)) == 3


class TestEnglishSample:
    def test_profile_and_report_show_the(self, english_raw_path, english_tagged_path,
                                         tmp_path, capsys):
        lang_dir = tmp_path / "corpora" / "en"
        lang_dir.mkdir(parents=True)
        shutil.copy(english_raw_path, lang_dir / "raw.txt")
        shutil.copy(english_tagged_path, lang_dir / "tagged.conllu")
        base = ["--corpus-dir", str(tmp_path / "corpora"),
                "--output-dir", str(tmp_path / "out")]
        assert run(*base, "profile") == 0
        assert run(*base, "report", "--top", "10") == 0
        out = capsys.readouterr().out
        tri_line = next(l for l in out.splitlines() if l.startswith("tri-grams:"))
        assert "the " in tri_line
        di_line = next(l for l in out.splitlines() if l.startswith("di-grams:"))
        assert "th " in di_line and "he " in di_line


class TestExitCodes:
    def test_usage_error_unknown_config_key(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text('{"no_such_key": 1}', encoding="utf-8")
        assert run("--config", str(config), "profile") == 1

    def test_usage_error_bad_config_json(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text("{not json", encoding="utf-8")
        assert run("--config", str(config), "profile") == 1

    def test_data_error_missing_corpus_dir(self, tmp_path):
        assert run("--corpus-dir", str(tmp_path / "nope"),
                   "--output-dir", str(tmp_path / "out"), "profile") == 2

    def test_data_error_unknown_tag(self, tmp_path):
        lang = tmp_path / "corpora" / "xx"
        lang.mkdir(parents=True)
        (lang / "tagged.conllu").write_text("1\tw\t_\tBAD\n", encoding="utf-8")
        assert run("--corpus-dir", str(tmp_path / "corpora"),
                   "--output-dir", str(tmp_path / "out"), "profile") == 2

    def test_numeric_error_zero_variance(self, tmp_path):
        # three identical corpora: all pairwise distances 0 -> no z-scores
        corpora = tmp_path / "corpora"
        tags = [["NOUN", "VERB", "NOUN", "DET"], ["ADP", "DET", "NOUN"]] * 10
        for code in ("aa", "bb", "cc"):
            lang = corpora / code
            lang.mkdir(parents=True)
            write_conllu(lang / "tagged.conllu", tags)
        out = tmp_path / "out"
        assert run("--corpus-dir", str(corpora), "--output-dir", str(out), "profile") == 0
        assert run("--corpus-dir", str(corpora), "--output-dir", str(out), "compare") == 3

    def test_identify_on_missing_model(self, tmp_path):
        missing = tmp_path / "nope.json"
        query = tmp_path / "q.conllu"
        query.write_text("1\tw\t_\tNOUN\n", encoding="utf-8")
        assert run("identify", str(missing), str(query)) == 2

    def test_identify_two_tag_input_is_data_error(self, pipeline_outputs, tmp_path):
        _, _, out = pipeline_outputs
        query = tmp_path / "q.conllu"
        query.write_text("1\ta\t_\tNOUN\n2\tb\t_\tVERB\n", encoding="utf-8")
        assert run("identify", str(out / "model" / "model.json"), str(query)) == 2


class TestConfigPrecedence:
    def test_flags_override_config(self, dirichlet_fixture, tmp_path, capsys):
        root, _, _ = dirichlet_fixture
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps({
            "corpus_dir": str(root),
            "output_dir": str(tmp_path / "from-config"),
            "nn": {"epochs": 1, "docs_per_lang": 11, "sentences_per_doc": 5},
        }), encoding="utf-8")
        override = tmp_path / "from-flag"
        assert run("--config", str(config), "--output-dir", str(override), "profile") == 0
        assert override.is_dir()
        assert not (tmp_path / "from-config").exists()

    def test_identical_corpora_merge_first(self, tmp_path):
        corpora = tmp_path / "corpora"
        same = [["NOUN", "VERB", "NOUN", "DET"], ["ADP", "DET", "NOUN"]] * 15
        other = [["PRON", "AUX", "ADV", "ADJ"], ["SCONJ", "PRON", "VERB"]] * 15
        for code, tags in (("aa", same), ("bb", same), ("zz", other)):
            lang = corpora / code
            lang.mkdir(parents=True)
            write_conllu(lang / "tagged.conllu", tags)
        out = tmp_path / "out"
        base = ["--corpus-dir", str(corpora), "--output-dir", str(out)]
        assert run(*base, "profile") == 0
        assert run(*base, "compare") == 0
        lines = (out / "matrices" / "structure.tsv").read_text().splitlines()
        header = lines[0].split("\t")[1:]
        row_aa = dict(zip(header, lines[1].split("\t")[1:]))
        assert float(row_aa["bb"]) == 0.0
        newick = (out / "trees" / "structure.nwk").read_text()
        assert "(aa:0.0,bb:0.0)" in newick  # distance-0 pair merges first

    def test_extra_translit_table_flag(self, tmp_path):
        lang = tmp_path / "corpora" / "xx"
        lang.mkdir(parents=True)
        (lang / "raw.txt").write_text("ΞΞΞ ΞΞΞ words here\n" * 5, encoding="utf-8")
        table = tmp_path / "xi.json"
        table.write_text(json.dumps(
            {"script_name": "custom", "entries": [["Ξ", "q"]]}
        ), encoding="utf-8")
        out_plain = tmp_path / "out-plain"
        out_custom = tmp_path / "out-custom"
        base = ["--corpus-dir", str(tmp_path / "corpora")]
        assert run(*base, "--output-dir", str(out_plain), "profile") == 0
        assert run(*base, "--output-dir", str(out_custom), "profile",
                   "--translit-table", str(table)) == 0
        plain = (out_plain / "profiles" / "xx.char.tsv").read_text()
        custom = (out_custom / "profiles" / "xx.char.tsv").read_text()
        # the custom table overrides the bundled Greek xi -> "x"
        assert "xxx" in plain and "qqq" not in plain
        assert "qqq" in custom and "xxx" not in custom

    def test_charset_whitelist_filters(self, tmp_path):
        lang = tmp_path / "corpora" / "mix"
        lang.mkdir(parents=True)
        (lang / "raw.txt").write_text(
            "all latin words here\nμερικά ελληνικά εδώ τώρα\nmore latin text lines\n",
            encoding="utf-8",
        )
        whitelist = tmp_path / "scripts.json"
        whitelist.write_text(json.dumps({"mix": ["Latin"]}), encoding="utf-8")
        out = tmp_path / "out"
        assert run("--corpus-dir", str(tmp_path / "corpora"), "--output-dir", str(out),
                   "profile", "--charset-whitelist", str(whitelist)) == 0
        summary = (out / "profile_summary.tsv").read_text().splitlines()[1].split("\t")
        assert summary[0] == "mix"
        assert summary[1] == "2"  # the Greek line was filtered out

    def test_two_language_compare_has_edgeless_graph(self, tmp_path):
        corpora = tmp_path / "corpora"
        for code, shift in (("aa", "NOUN"), ("bb", "ADJ")):
            lang = corpora / code
            lang.mkdir(parents=True)
            tags = [[shift, "VERB", "NOUN", "DET"]] * 30 + [["ADP", "DET", shift]] * 30
            write_conllu(lang / "tagged.conllu", tags)
        out = tmp_path / "out"
        assert run("--corpus-dir", str(corpora), "--output-dir", str(out), "profile") == 0
        assert run("--corpus-dir", str(corpora), "--output-dir", str(out), "compare") == 0
        graph = json.loads((out / "graph" / "similarity.json").read_text())
        assert graph["edges"] == []
        assert set(graph["communities"].values()) == {0, 1}
        newick = (out / "trees" / "structure.nwk").read_text()
        assert newick.count(":") == 2  # two leaves
