"""Python interface to the listforge pipeline."""

import json

from . import _listforge
from ._listforge import Error, MissingInputError, SingleClassError, head_noun, is_plural, singularize

__all__ = [
    "Error",
    "MissingInputError",
    "SingleClassError",
    "build_taxonomy",
    "config",
    "evaluate",
    "extract",
    "gen_fixture",
    "head_noun",
    "is_plural",
    "label",
    "run_all",
    "singularize",
    "train",
]


def config(**overrides):
    """Default pipeline config with top-level keys replaced by `overrides`."""
    cfg = json.loads(_listforge.default_config())
    cfg.update(overrides)
    return cfg


def gen_fixture(out, pages=200, noise=0.15, seed=42):
    _listforge.gen_fixture(str(out), pages, noise, seed)


def _stage(fn, cfg):
    return json.loads(fn(json.dumps(cfg)))


def build_taxonomy(cfg):
    return _stage(_listforge.build_taxonomy, cfg)


def label(cfg):
    return _stage(_listforge.label, cfg)


def train(cfg):
    return _stage(_listforge.train, cfg)


def extract(cfg):
    return _stage(_listforge.extract, cfg)


def evaluate(cfg):
    return _stage(_listforge.evaluate, cfg)


def run_all(cfg):
    """Runs every stage in order and returns their summaries by stage name."""
    return {
        "build_taxonomy": build_taxonomy(cfg),
        "label": label(cfg),
        "train": train(cfg),
        "extract": extract(cfg),
        "eval": evaluate(cfg),
    }
