import os
import subprocess
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import pytest

from zassenhaus.engine import EngineCtx
from zassenhaus.freealg import AlgebraCtx

# One engine per (n, K) for the whole session: values are immutable and
# exact, and the expensive high-degree computations should happen once.
_ENGINES = {}


def shared_engine(n, max_degree):
    key = (n, max_degree)
    if key not in _ENGINES:
        _ENGINES[key] = EngineCtx(AlgebraCtx(n, max_degree))
    return _ENGINES[key]


@pytest.fixture
def engine():
    return shared_engine


def run_cli(*args, extra_env=None):
    """Run the installed CLI in a subprocess and capture its output."""
    env = dict(os.environ)
    env.pop("ZASSENHAUS_CACHE_DIR", None)
    if extra_env:
        env.update(extra_env)
    cmd = [sys.executable, "-m", "zassenhaus", *map(str, args)]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


@pytest.fixture
def cli():
    return run_cli
