"""Python bindings for the hexagons library."""

import json as _json

from ._hexagons import (  # noqa: F401
    COLORS,
    COLUMNS,
    ROWS,
    HexagonsError,
    action_score,
    apply_actions,
    blank_grid,
    board_score,
    diff,
    neighbors,
    render_svg,
    run_dsl,
    run_naive,
)
from . import _hexagons


def stats(path):
    return _json.loads(_hexagons.stats_json(str(path)))


def split(path, mode="random", *, seed):
    return _json.loads(_hexagons.split_json(str(path), mode, seed))


def evaluate(gold, pred, mode="action", oracle_prev=False, agg="avg", em_granularity="procedure"):
    return _json.loads(_hexagons.eval_json(str(gold), str(pred), mode, oracle_prev, agg, em_granularity))
