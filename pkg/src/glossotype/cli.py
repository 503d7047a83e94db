"""Command-line front end.

Subcommands: profile, compare, train, evaluate, identify, report.
Configuration comes from one JSON file plus flag overrides (flags win);
every random choice flows from explicit seeds in the config, never from
the clock, so rerunning a command on the same inputs produces
byte-identical artifacts.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import cluster, distance, neural, translit
from .corpus import (
    SentenceCorpus,
    filter_charset,
    load_raw_corpus,
    load_tagged_corpus,
    preprocess,
)
from .errors import DataError, NumericError, UsageError
from .ngram import build_char_profile
from .posgram import build_pos_profile
from .profiles import CHAR_KIND, POS_KIND, load_profile, save_profile

log = logging.getLogger("glossotype")

RAW_NAME = "raw.txt"
TAGGED_NAME = "tagged.conllu"


@dataclass
class NnConfig:
    epochs: int = 50
    batch_size: int = 32
    learning_rate: float = 0.001
    hidden: int = 8
    docs_per_lang: int = 1000
    sentences_per_doc: int = 100
    folds: int = 10


@dataclass
class Seeds:
    sampling: int = 20177
    training: int = 4969
    communities: int = 757


@dataclass
class PipelineConfig:
    corpus_dir: str = "corpora"
    output_dir: str = "out"
    top_k_char: int = 1000
    top_k_pos: int = 2000
    min_words: int = 3
    min_words_overrides: dict = field(default_factory=dict)
    z_threshold: float = cluster.DEFAULT_Z_THRESHOLD
    normalize: str | None = None  # None | "minmax"
    linkage: str = "average"
    translit_tables: list = field(default_factory=list)
    charset_whitelist: str | None = None
    nn: NnConfig = field(default_factory=NnConfig)
    seeds: Seeds = field(default_factory=Seeds)

    def min_words_for(self, lang: str) -> int:
        return int(self.min_words_overrides.get(lang, self.min_words))


def load_config(path: str | None) -> PipelineConfig:
    config = PipelineConfig()
    if path is None:
        return config
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise UsageError(f"config file not found: {path}") from None
    except json.JSONDecodeError as err:
        raise UsageError(f"config file {path} is not valid JSON: {err}") from None
    known = {f.name for f in dataclasses.fields(PipelineConfig)}
    for key, value in payload.items():
        if key not in known:
            raise UsageError(f"unknown config key {key!r}")
        try:
            if key == "nn":
                config.nn = NnConfig(**value)
            elif key == "seeds":
                config.seeds = Seeds(**value)
            else:
                setattr(config, key, value)
        except TypeError as err:
            raise UsageError(f"config key {key!r}: {err}") from None
    return config


def _apply_overrides(config: PipelineConfig, args: argparse.Namespace) -> None:
    simple = [
        "corpus_dir", "output_dir", "top_k_char", "top_k_pos", "min_words",
        "z_threshold", "normalize", "linkage", "charset_whitelist",
    ]
    for name in simple:
        value = getattr(args, name, None)
        if value is not None:
            setattr(config, name, value)
    if getattr(args, "translit_table", None):
        config.translit_tables = list(config.translit_tables) + list(args.translit_table)
    for name in ("epochs", "batch_size", "learning_rate", "hidden",
                 "docs_per_lang", "sentences_per_doc", "folds"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(config.nn, name, value)
    for flag, attr in (("sampling_seed", "sampling"), ("training_seed", "training"),
                       ("community_seed", "communities")):
        value = getattr(args, flag, None)
        if value is not None:
            setattr(config.seeds, attr, value)


def thread_count() -> int:
    """Worker cap from GLOSSOTYPE_THREADS (default: up to 8)."""
    raw = os.environ.get("GLOSSOTYPE_THREADS", "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise UsageError(f"GLOSSOTYPE_THREADS must be an integer, not {raw!r}")
        if n < 1:
            raise UsageError("GLOSSOTYPE_THREADS must be >= 1")
        return n
    return min(8, os.cpu_count() or 1)


def discover_languages(corpus_dir: Path) -> list[str]:
    if not corpus_dir.is_dir():
        raise DataError(f"corpus directory not found: {corpus_dir}")
    langs = []
    for entry in sorted(corpus_dir.iterdir()):
        if entry.is_dir() and ((entry / RAW_NAME).exists() or (entry / TAGGED_NAME).exists()):
            langs.append(entry.name)
    if not langs:
        raise DataError(f"no language subdirectories under {corpus_dir}")
    return langs


def _load_tables(config: PipelineConfig) -> list[translit.TranslitTable]:
    # user tables first: on key conflicts the earlier table wins
    tables = [translit.load_table(path) for path in config.translit_tables]
    tables.extend(translit.bundled_tables())
    return tables


def _load_whitelist(config: PipelineConfig) -> dict:
    if not config.charset_whitelist:
        return {}
    return json.loads(Path(config.charset_whitelist).read_text(encoding="utf-8"))


def _prepare_raw(config: PipelineConfig, lang: str, tables, whitelist) -> SentenceCorpus:
    corpus = load_raw_corpus(Path(config.corpus_dir) / lang / RAW_NAME, lang)
    corpus = preprocess(corpus, min_words=config.min_words_for(lang))
    scripts = whitelist.get(lang)
    if scripts:
        corpus = filter_charset(corpus, scripts)
    return translit.transliterate_corpus(corpus, tables)


def _prepare_tagged(config: PipelineConfig, lang: str) -> SentenceCorpus:
    corpus = load_tagged_corpus(Path(config.corpus_dir) / lang / TAGGED_NAME, lang)
    return preprocess(corpus, min_words=config.min_words_for(lang))


def cmd_profile(config: PipelineConfig) -> int:
    corpus_dir = Path(config.corpus_dir)
    langs = discover_languages(corpus_dir)
    tables = _load_tables(config)
    whitelist = _load_whitelist(config)
    profiles_dir = Path(config.output_dir) / "profiles"
    profiles_dir.mkdir(parents=True, exist_ok=True)

    def build(lang: str) -> dict:
        row = {"language": lang, "sentences_raw": "", "features_written": "",
               "sentences_tagged": "", "features_structure": ""}
        lang_dir = corpus_dir / lang
        if (lang_dir / RAW_NAME).exists():
            corpus = _prepare_raw(config, lang, tables, whitelist)
            profile = build_char_profile(corpus, top_k_per_n=config.top_k_char)
            save_profile(profile, profiles_dir / f"{lang}.char.tsv")
            row["sentences_raw"] = str(len(corpus))
            row["features_written"] = str(len(profile))
        if (lang_dir / TAGGED_NAME).exists():
            corpus = _prepare_tagged(config, lang)
            profile = build_pos_profile(corpus, top_k=config.top_k_pos, exclude_x=False)
            save_profile(profile, profiles_dir / f"{lang}.pos.tsv")
            row["sentences_tagged"] = str(len(corpus))
            row["features_structure"] = str(len(profile))
        return row

    workers = min(thread_count(), len(langs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(build, langs))
    else:
        rows = [build(lang) for lang in langs]

    header = ["language", "sentences_raw", "features_written",
              "sentences_tagged", "features_structure"]
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(row[h] for h in header))
        log.info(
            "%s: %s clean raw sentences (%s written features), %s tagged sentences "
            "(%s structure features)",
            row["language"], row["sentences_raw"] or "0", row["features_written"] or "0",
            row["sentences_tagged"] or "0", row["features_structure"] or "0",
        )
    (Path(config.output_dir) / "profile_summary.tsv").write_text(
        "\n".join(lines) + "\n", encoding="utf-8"
    )
    return 0


def _load_profiles(config: PipelineConfig, kind: str) -> list:
    suffix = ".char.tsv" if kind == CHAR_KIND else ".pos.tsv"
    profiles_dir = Path(config.output_dir) / "profiles"
    if not profiles_dir.is_dir():
        raise DataError(f"no profiles directory under {config.output_dir}; run `profile` first")
    found = []
    for path in sorted(profiles_dir.glob(f"*{suffix}")):
        found.append(load_profile(path))
    return found


def cmd_compare(config: PipelineConfig) -> int:
    out = Path(config.output_dir)
    matrices_dir = out / "matrices"
    trees_dir = out / "trees"
    graph_dir = out / "graph"
    for directory in (matrices_dir, trees_dir, graph_dir):
        directory.mkdir(parents=True, exist_ok=True)

    char_profiles = _load_profiles(config, CHAR_KIND)
    pos_profiles = _load_profiles(config, POS_KIND)

    matrices: dict[str, distance.DistanceMatrix] = {}
    if len(char_profiles) >= 2:
        matrices["written"] = distance.distance_matrix(char_profiles)
    if len(pos_profiles) >= 2:
        matrices["structure"] = distance.distance_matrix(pos_profiles)
    if not matrices:
        raise DataError("need at least 2 languages with profiles of the same kind")

    if "written" in matrices and "structure" in matrices:
        common = sorted(set(matrices["written"].labels) & set(matrices["structure"].labels))
        if len(common) >= 2:
            written = matrices["written"].subset(common)
            structure = matrices["structure"].subset(common)
            if config.normalize == "minmax":
                written = distance.minmax_normalize(written)
                structure = distance.minmax_normalize(structure)
            matrices["overall"] = distance.average_matrices(written, structure)

    for name, matrix in matrices.items():
        distance.save_matrix_tsv(matrix, matrices_dir / f"{name}.tsv")
        distance.save_matrix_phylip(matrix, matrices_dir / f"{name}.phy")
        tree = cluster.build_tree(matrix, linkage=config.linkage)
        cluster.save_newick(tree, trees_dir / f"{name}.nwk")
        log.info("%s: %d languages", name, len(matrix.labels))

    # graph from the averaged distances, falling back to whichever matrix
    # exists when only one kind of profile is available
    graph_matrix = matrices.get("overall") or matrices.get("written") or matrices["structure"]
    if len(graph_matrix.labels) >= 3:
        graph = cluster.zscore_filter(graph_matrix, z_threshold=config.z_threshold)
    else:
        # too few pairs for a z-score population; emit an edgeless graph
        graph = cluster.SimilarityGraph(nodes=graph_matrix.labels, edges=())
    graph = cluster.detect_communities(graph, seed=config.seeds.communities)
    (graph_dir / "similarity.dot").write_text(cluster.to_dot(graph), encoding="utf-8")
    (graph_dir / "similarity.json").write_text(
        json.dumps(cluster.graph_to_json(graph), sort_keys=True, indent=1) + "\n",
        encoding="utf-8",
    )
    log.info(
        "graph: %d nodes, %d edges, %d communities (seeded label propagation, "
        "substituting the flow-based method)",
        len(graph.nodes), len(graph.edges), len(set(graph.communities.values())),
    )
    return 0


def _tagged_corpora(config: PipelineConfig) -> list[SentenceCorpus]:
    corpus_dir = Path(config.corpus_dir)
    corpora = []
    for lang in discover_languages(corpus_dir):
        if (corpus_dir / lang / TAGGED_NAME).exists():
            corpora.append(_prepare_tagged(config, lang))
    if not corpora:
        raise DataError(f"no tagged corpora under {corpus_dir}")
    return corpora


def _build_dataset(config: PipelineConfig) -> neural.DocumentDataset:
    return neural.build_dataset(
        _tagged_corpora(config),
        docs_per_lang=config.nn.docs_per_lang,
        sentences_per_doc=config.nn.sentences_per_doc,
        seed=config.seeds.sampling,
    )


def _hyperparameters(config: PipelineConfig) -> dict:
    return dataclasses.asdict(config.nn)


def cmd_train(config: PipelineConfig) -> int:
    dataset = _build_dataset(config)
    log.info(
        "dataset: %d documents, %d features, %d languages",
        len(dataset), len(dataset.feature_index), len(dataset.label_names),
    )
    model, history = neural.train(
        dataset,
        epochs=config.nn.epochs,
        batch_size=config.nn.batch_size,
        seed=config.seeds.training,
        learning_rate=config.nn.learning_rate,
        hidden=config.nn.hidden,
    )
    model_dir = Path(config.output_dir) / "model"
    model_dir.mkdir(parents=True, exist_ok=True)
    trained = neural.TrainedModel(
        model=model,
        feature_index=dataset.feature_index,
        label_names=dataset.label_names,
        hyperparameters=_hyperparameters(config),
        seed=config.seeds.training,
    )
    neural.save_model(trained, model_dir / "model.json")
    lines = ["epoch\tmean_loss"]
    lines.extend(f"{i}\t{value!r}" for i, value in enumerate(history))
    (model_dir / "train_loss.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    if history:
        log.info("trained %d epochs, final mean loss %.4f", len(history), history[-1])
    return 0


def cmd_evaluate(config: PipelineConfig) -> int:
    dataset = _build_dataset(config)
    per_fold, summary = neural.kfold_cv(
        dataset,
        k=config.nn.folds,
        epochs=config.nn.epochs,
        batch_size=config.nn.batch_size,
        seed=config.seeds.training,
        learning_rate=config.nn.learning_rate,
        hidden=config.nn.hidden,
    )
    metrics_dir = Path(config.output_dir) / "metrics"
    metrics_dir.mkdir(parents=True, exist_ok=True)

    pooled = summary["pooled"]
    lines = ["language\tprecision\trecall\tfscore\tsupport"]
    for i, lang in enumerate(dataset.label_names):
        support = int(pooled.confusion[i].sum())
        lines.append(
            f"{lang}\t{pooled.precision[i]!r}\t{pooled.recall[i]!r}"
            f"\t{pooled.fscore[i]!r}\t{support}"
        )
    (metrics_dir / "per_class.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    lines = ["fold\taccuracy"]
    lines.extend(f"{i}\t{a!r}" for i, a in enumerate(summary["fold_accuracies"]))
    (metrics_dir / "folds.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    payload = {
        "fold_accuracies": summary["fold_accuracies"],
        "mean_accuracy": summary["mean_accuracy"],
        "std_accuracy": summary["std_accuracy"],
        "pooled_accuracy": summary["pooled_accuracy"],
        "per_class": {
            lang: {
                "precision": float(pooled.precision[i]),
                "recall": float(pooled.recall[i]),
                "fscore": float(pooled.fscore[i]),
            }
            for i, lang in enumerate(dataset.label_names)
        },
    }
    (metrics_dir / "metrics.json").write_text(
        json.dumps(payload, sort_keys=True, indent=1) + "\n", encoding="utf-8"
    )
    log.info(
        "%d-fold accuracy: mean %.4f, stddev %.4f, pooled %.4f",
        config.nn.folds, summary["mean_accuracy"], summary["std_accuracy"],
        summary["pooled_accuracy"],
    )
    return 0


def cmd_identify(model_path: str, input_path: str, as_json: bool) -> int:
    trained = neural.load_model(model_path)
    corpus = load_tagged_corpus(input_path, "input")
    ranked = neural.identify(trained, corpus.sentences)
    if as_json:
        print(json.dumps([[lang, prob] for lang, prob in ranked]))
    else:
        for lang, prob in ranked:
            print(f"{lang}\t{prob!r}")
    return 0


def _top_rows(profile_path: Path, top: int, keep) -> list[str]:
    rows = []
    with open(profile_path, encoding="utf-8") as fh:
        fh.readline()
        for line in fh:
            key, _, freq = line.rstrip("\n").partition("\t")
            if not keep(key):
                continue
            rows.append(f"{key} ({float(freq):.5f})")
            if len(rows) >= top:
                break
    return rows


def cmd_report(config: PipelineConfig, top: int, distinct_only: bool) -> int:
    out = Path(config.output_dir)
    summary = out / "profile_summary.tsv"
    if summary.exists():
        print("== Languages ==")
        print(summary.read_text(encoding="utf-8").rstrip("\n"))
        print()
    profiles_dir = out / "profiles"
    if profiles_dir.is_dir():
        for path in sorted(profiles_dir.glob("*.char.tsv")):
            lang = path.name[: -len(".char.tsv")]
            print(f"== {lang}: top written patterns ==")
            print("di-grams:  " + ", ".join(_top_rows(path, top, lambda k: len(k) == 2)))
            print("tri-grams: " + ", ".join(_top_rows(path, top, lambda k: len(k) == 3)))
        for path in sorted(profiles_dir.glob("*.pos.tsv")):
            lang = path.name[: -len(".pos.tsv")]
            title = "top sentence structures"
            keep = lambda key: True
            if distinct_only:
                title += " (three distinct tags only)"
                keep = lambda key: len(set(key.split("|"))) == 3
            print(f"== {lang}: {title} ==")
            print(", ".join(_top_rows(path, top, keep)))
    graph_json = out / "graph" / "similarity.json"
    if graph_json.exists():
        payload = json.loads(graph_json.read_text(encoding="utf-8"))
        groups: dict[int, list[str]] = {}
        for node, community in (payload.get("communities") or {}).items():
            groups.setdefault(community, []).append(node)
        print()
        print("== Communities (seeded asynchronous label propagation; this build")
        print("   substitutes label propagation for the flow-compression method) ==")
        for community in sorted(groups):
            print(f"  {community}: {', '.join(sorted(groups[community]))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glossotype",
        description=(
            "Fingerprint languages from character n-grams and POS tri-grams, "
            "compare them with Manhattan distances (trees, z-filtered similarity "
            "graphs, communities via label propagation), and train a classifier "
            "that identifies a language from sentence structure alone."
        ),
    )
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("--corpus-dir", dest="corpus_dir")
    parser.add_argument("--output-dir", dest="output_dir")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="build per-language feature profiles")
    p.add_argument("--min-words", dest="min_words", type=int)
    p.add_argument("--top-k-char", dest="top_k_char", type=int)
    p.add_argument("--top-k-pos", dest="top_k_pos", type=int)
    p.add_argument("--translit-table", dest="translit_table", action="append",
                   help="extra transliteration table (repeatable)")
    p.add_argument("--charset-whitelist", dest="charset_whitelist",
                   help="JSON map language -> allowed Unicode script names")

    p = sub.add_parser("compare", help="distance matrices, trees, similarity graph")
    p.add_argument("--z-threshold", dest="z_threshold", type=float)
    p.add_argument("--normalize", choices=["minmax"],
                   help="min-max rescale written/structure matrices before averaging")
    p.add_argument("--linkage", choices=["average", "single", "complete"])
    p.add_argument("--community-seed", dest="community_seed", type=int)

    for name, help_text in (
        ("train", "train the structure classifier on all documents"),
        ("evaluate", "k-fold cross-validation with per-class metrics"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--epochs", type=int)
        p.add_argument("--batch-size", dest="batch_size", type=int)
        p.add_argument("--learning-rate", dest="learning_rate", type=float)
        p.add_argument("--hidden", type=int)
        p.add_argument("--docs-per-lang", dest="docs_per_lang", type=int)
        p.add_argument("--sentences-per-doc", dest="sentences_per_doc", type=int)
        p.add_argument("--sampling-seed", dest="sampling_seed", type=int)
        p.add_argument("--training-seed", dest="training_seed", type=int)
        if name == "evaluate":
            p.add_argument("--folds", type=int)

    p = sub.add_parser("identify", help="rank languages for a tagged input")
    p.add_argument("model", help="model.json produced by train")
    p.add_argument("input", help="CoNLL-U style tagged input")
    p.add_argument("--json", action="store_true", dest="as_json")

    p = sub.add_parser("report", help="human-readable summary of the outputs")
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--distinct-only", action="store_true", dest="distinct_only",
                   help="show only structures made of three distinct tags")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 1 if err.code not in (0, None) else 0
    try:
        config = load_config(args.config)
        _apply_overrides(config, args)
        if args.command == "profile":
            return cmd_profile(config)
        if args.command == "compare":
            return cmd_compare(config)
        if args.command == "train":
            return cmd_train(config)
        if args.command == "evaluate":
            return cmd_evaluate(config)
        if args.command == "identify":
            return cmd_identify(args.model, args.input, args.as_json)
        if args.command == "report":
            return cmd_report(config, args.top, args.distinct_only)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as err:
        log.error("usage error: %s", err)
        return 1
    except (DataError, FileNotFoundError, IsADirectoryError, PermissionError) as err:
        log.error("data error: %s", err)
        return 2
    except NumericError as err:
        log.error("numeric failure: %s", err)
        return 3


if __name__ == "__main__":
    sys.exit(main())
