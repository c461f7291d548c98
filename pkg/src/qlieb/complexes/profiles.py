"""Frozen sign conventions of the shipped differentials.

The profiles live in ``data/differentials.json`` next to the package;
``profile_hash`` feeds the CLI cache key so a recalibration invalidates
cached matrices.
"""
import hashlib
import json
from importlib import resources

DELTA_LIEB_INF = "DELTA_LIEB_INF"
DELTA_PLUS = "DELTA_PLUS"
D1_DEFQ = "D1_DEFQ"
D_HOCH_THICK = "D_HOCH_THICK"
DGS_BIALG = "DGS_BIALG"
DGS_POLY = "DGS_POLY"

NAMES = (DELTA_LIEB_INF, DELTA_PLUS, D1_DEFQ, D_HOCH_THICK, DGS_BIALG, DGS_POLY)

_cache = None


def load_profiles():
    global _cache
    if _cache is None:
        text = resources.files("qlieb").joinpath("data/differentials.json").read_text()
        _cache = json.loads(text)
    return _cache


def profile(name):
    """The ``sign_profile`` mapping of one differential family."""
    return dict(load_profiles()["families"][name]["sign_profile"])


def profile_hash(name=None):
    data = load_profiles()["families"]
    blob = data if name is None else data[name]["sign_profile"]
    return hashlib.sha256(json.dumps(blob, sort_keys=True).encode()).hexdigest()[:16]


class DifferentialFamily:
    def __init__(self, name, sign_profile=None):
        if name not in NAMES:
            raise ValueError(f"unknown differential {name}")
        self.name = name
        self.sign_profile = dict(sign_profile) if sign_profile is not None else profile(name)

    def __repr__(self):
        return f"DifferentialFamily({self.name}, {self.sign_profile})"
