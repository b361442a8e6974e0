"""Python bindings for arbor.

Words are strings such as "a b^-1 a^2". Reports come back as dicts parsed from
the same JSON the command line tool writes.
"""

import json

from ._arbor import (
    ArborError,
    BudgetExceeded,
    CoreGraph,
    FinGroup,
    InputError,
    PreconditionError,
    TheoremViolation,
    Tower,
    builtin_group,
    builtin_group_names,
    exponent,
    ext_enumerate,
    ext_equal,
    ext_order as _ext_order,
    free_object_pair_check,
    member_product,
    reduce,
    s_equal,
    subgroup_core,
)
from ._arbor import dissolves_all_json as _dissolves_all_json

__all__ = [
    "ArborError", "BudgetExceeded", "CoreGraph", "FinGroup", "InputError",
    "PreconditionError", "TheoremViolation", "Tower", "builtin_group",
    "builtin_group_names", "dissolves_all", "exponent", "ext_enumerate",
    "ext_equal", "ext_order", "free_object_pair_check", "member_product",
    "reduce", "rz_experiment", "s_equal", "subgroup_core", "treelike_campaign",
]


def ext_order(group, p):
    """|G| * p^(|G|(|A|-1)+1) as a Python int."""
    return int(_ext_order(group, p))


def dissolves_all(h, g, mode="exhaustive", samples=10_000, max_length=6, seed=1, edge_budget=16):
    return json.loads(_dissolves_all_json(h, g, mode, samples, max_length, seed, edge_budget))


def treelike_campaign(tower, levels=None, mode="exhaustive", samples=10_000, max_length=6, seed=1, edge_budget=16):
    if levels is None:
        levels = tower.top_level
    return json.loads(tower.campaign_json(levels, mode, samples, max_length, seed, edge_budget))


def rz_experiment(tower, factors, word):
    return json.loads(tower.rz_json(factors, word))
