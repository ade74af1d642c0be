from functools import lru_cache

from coxnef import preset
from coxnef.coxdeg import analyze


@lru_cache(maxsize=None)
def report(name: str):
    """``analyze`` on a preset, computed once per test session."""
    return analyze(preset(name))


def fmt(model, classes):
    return sorted(model.lattice.format(c) for c in classes)
