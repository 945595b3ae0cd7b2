from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import ttr
from ttr.exchange import enumerate_sttilt
from ttr.formats import load_algebra

DATA = Path(ttr.__file__).parent / "data"


@lru_cache(maxsize=None)
def alg(name: str):
    return load_algebra(name)


@lru_cache(maxsize=None)
def graph(name: str, cap: int = 10_000):
    return enumerate_sttilt(alg(name), cap)


def dims_of(parts):
    return sorted(tuple(s.module.dims) for s in parts)


@lru_cache(maxsize=None)
def report(name: str, module: str):
    from ttr.formats import module_complex
    from ttr.reduction import reduce

    a = alg(name)
    return reduce(a, module_complex(a, module))
