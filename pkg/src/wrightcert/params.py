"""Versioned table of the parameter literals used by the checks.

Every number is kept as a decimal string and turned into an enclosing
interval only when it is used, so the table is exactly what a reader sees.
"""

import copy
import json

from .interval import lit

TABLE_VERSION = "1"

CANONICAL = {
    "version": TABLE_VERSION,
    "cases": {
        "bigbox-a": {"eps": "0.029", "r": ["0.13", "0.17", "0.17"], "rho": "1.78",
                     "scaled": False},
        "bigbox-b": {"eps": "0.09", "r": ["0.1753", "0.0941", "0.3829"], "rho": "1.5940",
                     "scaled": False},
        "tight": {"eps": "0.10", "r": ["0.0594", "0.0260", "0.4929"], "rho": "0.3191",
                  "scaled": True},
    },
    "wright": {
        "alpha_lo": "1.5706",
        "omega_scan": ["1.1", "2.0"],
        "omega_window": ["1.4219", "1.6887"],
        "omega_dev": "0.1489",
        "period_window": ["3.26", "5.64"],
        "omega_coarse": ["1.11", "1.93"],
        "b_star_min": "0.364",
        "z_plus_min": "0.72",
        "c_tilde_max": "0.09",
        "C0_max": "0.0796",
        "kinv_coeff": "5.52",
        "kinv_max": "0.16",
        "box_alpha_dev": "0.0002",
        "box_omega_dev": "0.15",
        "box_c_max": "0.08",
    },
    "nofold": {"reach": "6.830e-3", "neumann_terms": 64},
    "uniqueness": {
        "alpha_dev": "0.00553",
        "omega_dev": "0.0924",
        "eps_max": "0.09",
        "c_max": "0.30232",
        "b_star_min": "0.31",
        "kinv_max": "0.61",
        "a_coeff": "0.302",
        "a_max": "0.18",
        "z_plus_min": "0.595",
        "C0_max": "0.30226",
    },
}


def canonical():
    return copy.deepcopy(CANONICAL)


def _merge(base, over):
    for key, val in over.items():
        if isinstance(val, dict) and isinstance(base.get(key), dict):
            _merge(base[key], val)
        else:
            base[key] = val
    return base


def load(path=None, overrides=None):
    """Return (table, canonical_flag) after applying a JSON file and overrides."""
    table = canonical()
    is_canonical = True
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            _merge(table, json.load(fh))
        is_canonical = False
    if overrides:
        _merge(table, overrides)
        is_canonical = False
    return table, is_canonical


def interval_of(text):
    return lit(text)
