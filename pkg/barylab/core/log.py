import sys
from functools import lru_cache

from barylab.config import get_settings


@lru_cache(maxsize=1)
def _debug_enabled() -> bool:
    return get_settings().debug


def reset() -> None:
    """Forget the cached BARYLAB_DEBUG flag (tests flip it through the environment)."""
    _debug_enabled.cache_clear()


def debug(message: str) -> None:
    if _debug_enabled():
        print(f"[DEBUG] {message}", file=sys.stderr, flush=True)


def warn(message: str) -> None:
    print(f"[WARN] {message}", file=sys.stderr, flush=True)


def error(message: str) -> None:
    print(f"[ERROR] {message}", file=sys.stderr, flush=True)
