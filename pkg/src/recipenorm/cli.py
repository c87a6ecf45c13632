"""Command line entry point: normalize -> map -> embed -> evaluate.

Each stage reads the previous stage's files from ``--out`` and writes its own
there. Paths and parameters come from a flat ``key=value`` config file;
command-line flags override it. Anything left unset falls back to the small
corpus bundled with the package.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import __version__
from .conversion import to_grams
from .embeddings import build_corpora, load_table
from .errors import ConfigError, ConversionError, NoMatch, RecipeNormError
from .fcdb import NUTRIENTS, load_fcdb
from .lexicons import data_path, load_lexicons
from .mapper import DEFAULT_CAP, match_text
from .modeling import DEFAULT_K, EPS_ABS, EPS_REL, benchmark, write_report
from .nutrition import build_recipe
from .parser import parse_record
from .preprocess import describe

log = logging.getLogger("recipenorm")

FILES = {
    "normalized": "normalized.jsonl",
    "matches": "matches.jsonl",
    "recipes": "recipes.jsonl",
    "report": "report.csv",
    "manifest": "manifest.json",
}


@dataclass
class PipelineConfig:
    input: str = ""
    fcdb: str = ""
    embeddings: str = ""
    units: str = ""
    redundant: str = ""
    brands: str = ""
    conversions: str = ""
    pos: str = ""
    out: str = "out"
    seed: int = 0
    eps_abs: float = EPS_ABS
    eps_rel: float = EPS_REL
    k: int = DEFAULT_K
    cap: int = DEFAULT_CAP
    mode: str = "average"
    models: str = "linear,ridge"
    nutrients: str = ",".join(NUTRIENTS)
    embedding_name: str = "fixture"

    def path(self, name):
        return Path(self.out) / FILES[name]

    def lexicon_paths(self):
        return {k: getattr(self, k) or None
                for k in ("units", "redundant", "brands", "conversions", "pos")}

    def header(self, stage):
        return f"# recipenorm {__version__} {stage} seed={self.seed}\n"

    def manifest(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def read_config(path) -> dict:
    """Parse a flat key=value file; blank lines and # comments are ignored."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    out = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def make_config(values: dict, base_dir=None) -> PipelineConfig:
    known = {f.name: f for f in fields(PipelineConfig)}
    cfg = PipelineConfig()
    for key, raw in values.items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        kind = type(getattr(cfg, key))
        try:
            value = kind(raw)
        except ValueError:
            raise ConfigError(f"{key}={raw!r} is not a valid {kind.__name__}") from None
        if kind is str and value and base_dir is not None and key not in (
                "mode", "models", "nutrients", "embedding_name", "out"):
            # relative paths in a config file are relative to that file
            p = Path(value)
            value = str(p if p.is_absolute() else Path(base_dir) / p)
        setattr(cfg, key, value)
    if not cfg.input:
        cfg.input = str(data_path("fixtures/recipes.jsonl"))
    if not cfg.fcdb:
        cfg.fcdb = str(data_path("fixtures/fcdb.tsv"))
    if not cfg.embeddings:
        cfg.embeddings = str(data_path("fixtures/embeddings.txt"))
    if cfg.k < 2:
        raise ConfigError("k must be at least 2")
    if cfg.eps_abs < 0 or cfg.eps_rel < 0:
        raise ConfigError("tolerances must be non-negative")
    if cfg.mode not in ("sum", "average"):
        raise ConfigError("mode must be sum or average")
    return cfg


def _require(path, what):
    if not Path(path).is_file():
        raise ConfigError(f"{what} not found: {path}")


def _write_jsonl(path, header, records):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header)
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def read_jsonl(path):
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip() and not line.startswith("#"):
                yield json.loads(line)


def read_recipes(path):
    """Recipes as dicts {key, title, lines, targets}.

    ``.jsonl`` files hold one recipe per line; any other file is read as the
    ingredient lines of a single recipe named after the file.
    """
    path = Path(path)
    if path.suffix != ".jsonl":
        lines = [ln for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip()]
        return [{"key": path.stem, "title": path.stem, "lines": lines, "targets": None}]
    recipes = []
    for i, rec in enumerate(read_jsonl(path)):
        title = rec.get("title", "")
        key = rec.get("id") or f"{i:06d}_{title}"
        recipes.append({"key": str(key), "title": title, "lines": list(rec.get("lines", [])),
                        "targets": rec.get("targets")})
    return recipes


def _lexicons(cfg):
    return load_lexicons(**cfg.lexicon_paths())


def cmd_normalize(cfg: PipelineConfig):
    _require(cfg.input, "input")
    lex = _lexicons(cfg)
    out = []
    for rec in read_recipes(cfg.input):
        for n, raw in enumerate(rec["lines"]):
            res = parse_record(raw, lex).to_dict()
            res.update(recipe=rec["key"], title=rec["title"], line_no=n)
            if n == 0:
                res["targets"] = rec["targets"]
            out.append(res)
    Path(cfg.out).mkdir(parents=True, exist_ok=True)
    _write_jsonl(cfg.path("normalized"), cfg.header("normalize"), out)
    return len(out)


def _grams(ing, lemma_food, match, lex, fcdb):
    """Fill grams/grams_source in place; returns an error string or None."""
    qty, unit = ing["qty"], ing["unit"]
    if qty is None and unit is not None:
        qty = 1.0
    if qty is None:
        return "no quantity"
    try:
        g = to_grams(qty, unit, lemma_food, lex.conversions,
                     (fcdb, match) if match else None)
    except (ConversionError, KeyError) as exc:
        return f"{type(exc).__name__}: {exc}"
    ing["grams"], ing["grams_source"] = g.grams, g.source
    return None


def cmd_map(cfg: PipelineConfig):
    _require(cfg.path("normalized"), "normalize output")
    _require(cfg.fcdb, "FCDB")
    lex = _lexicons(cfg)
    fcdb = load_fcdb(cfg.fcdb, lex)
    lines = list(read_jsonl(cfg.path("normalized")))

    matches = {}
    order = []
    for line in lines:
        for ing in line["ingredients"]:
            key = ing["food"].lower()
            if key in matches:
                continue
            try:
                matches[key] = match_text(ing["food"], fcdb, lex, cfg.cap).to_dict()
            except NoMatch:
                matches[key] = {"food": ing["food"], "chosen_id": None, "tier": None,
                                "similarity": None, "candidates": [], "error": "NoMatch"}
            order.append(key)

    recipes, current = [], None
    for line in lines:
        if current is None or line["recipe"] != current["key"]:
            current = {"key": line["recipe"], "title": line["title"],
                       "targets": line.get("targets"), "ingredients": []}
            recipes.append(current)
        for ing in line["ingredients"]:
            ing = dict(ing)
            m = matches[ing["food"].lower()]
            ing["fcdb_id"], ing["tier"] = m["chosen_id"], m["tier"]
            lemma_food = " ".join(describe(ing["food"], lex).lemmas)
            err = _grams(ing, lemma_food, ing["fcdb_id"], lex, fcdb)
            if err:
                ing["error"] = err
            current["ingredients"].append(ing)

    out = []
    for rec in recipes:
        r = build_recipe(rec["title"], rec["ingredients"], fcdb).to_dict()
        r["key"] = rec["key"]
        r["targets"] = rec["targets"]
        out.append(r)
    _write_jsonl(cfg.path("matches"), cfg.header("map"), (matches[k] for k in order))
    _write_jsonl(cfg.path("recipes"), cfg.header("map"), out)
    return len(order), len(out)


def cmd_embed(cfg: PipelineConfig):
    _require(cfg.path("recipes"), "map output")
    _require(cfg.embeddings, "embedding table")
    table = load_table(cfg.embeddings)
    items = []
    for rec in read_jsonl(cfg.path("recipes")):
        foods = [(ing["food"], ing.get("grams")) for ing in rec["ingredients"]
                 if ing.get("fcdb_id") is not None]
        items.append((rec["key"], foods))
    summary = build_corpora(items, table, cfg.out, mode=cfg.mode)
    for w in summary["warnings"]:
        log.info(w)
    return summary


def _read_vectors(path):
    table = load_table(path)
    return dict(table.vectors)


def cmd_evaluate(cfg: PipelineConfig):
    out = Path(cfg.out)
    for name in ("recipe_embeddings_dh.txt", "recipe_embeddings_baseline.txt"):
        _require(out / name, "embed output")
    dh = _read_vectors(out / "recipe_embeddings_dh.txt")
    base = _read_vectors(out / "recipe_embeddings_baseline.txt")
    targets = {}
    for rec in read_jsonl(cfg.path("recipes")):
        # explicit targets win; otherwise the mapped nutrient profile is the target
        t = rec.get("targets") or rec.get("profile")
        if t:
            targets["_".join(rec["key"].split())] = t
    nutrients = [n for n in cfg.nutrients.split(",") if n]
    models = [m for m in cfg.models.split(",") if m]
    rows = benchmark(dh, base, targets, nutrients, models, cfg.embedding_name,
                     cfg.k, cfg.eps_abs, cfg.eps_rel, cfg.seed)
    write_report(rows, cfg.path("report"))
    with open(cfg.path("manifest"), "w", encoding="utf-8") as fh:
        json.dump(cfg.manifest(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return rows


COMMANDS = {
    "normalize": cmd_normalize,
    "map": cmd_map,
    "embed": cmd_embed,
    "evaluate": cmd_evaluate,
}


def build_parser():
    p = argparse.ArgumentParser(prog="recipenorm", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in (*COMMANDS, "all"):
        s = sub.add_parser(name, help="run every stage" if name == "all" else f"{name} stage")
        s.add_argument("--config", help="flat key=value config file")
        s.add_argument("--input")
        s.add_argument("--seed", type=int)
        s.add_argument("--eps-abs", type=float)
        s.add_argument("--eps-rel", type=float)
        s.add_argument("--k", type=int)
        s.add_argument("--out")
        s.add_argument("-v", "--verbose", action="store_true")
    return p


def config_from_args(args) -> PipelineConfig:
    values, base = {}, None
    if args.config:
        values = read_config(args.config)
        base = Path(args.config).parent
    cfg = make_config(values, base)
    for key in ("input", "seed", "eps_abs", "eps_rel", "k", "out"):
        v = getattr(args, key)
        if v is not None:
            setattr(cfg, key, v)
    return make_config(cfg.manifest())  # re-validate overrides


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        stages = list(COMMANDS) if args.command == "all" else [args.command]
        for stage in stages:
            result = COMMANDS[stage](cfg)
            log.info("%s: %s", stage, result if not isinstance(result, list) else len(result))
    except (ConfigError, RecipeNormError, OSError) as exc:
        print(f"recipenorm: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
