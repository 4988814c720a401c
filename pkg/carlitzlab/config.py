import logging
import os
from dataclasses import dataclass, fields, replace
from functools import lru_cache

from .errors import ConfigError

logger = logging.getLogger(__name__)

ENV_CAPS = "CARLITZLAB_CAPS"

DEFAULT_FIELD_SIZE = 1024
DEFAULT_FACTOR_DEGREE = 8
DEFAULT_RESIDUES = 60000
DEFAULT_LATTICE_ORDER = 128
DEFAULT_GROUP_ORDER = 729
DEFAULT_MODULE_SIZE = 6561
DEFAULT_COCYCLES = 729
DEFAULT_PREIMAGE_DEGREE = 64


@dataclass(frozen=True)
class Caps:
    """Enumeration limits shared by every module.

    Each limit guards one exhaustive computation; exceeding it raises
    ``TooLarge`` naming the key, so a caller can raise it through
    ``$CARLITZLAB_CAPS`` (for example ``lattice_order=256,cocycles=81``).
    """

    field_size: int = DEFAULT_FIELD_SIZE
    factor_degree: int = DEFAULT_FACTOR_DEGREE
    residues: int = DEFAULT_RESIDUES
    lattice_order: int = DEFAULT_LATTICE_ORDER
    group_order: int = DEFAULT_GROUP_ORDER
    module_size: int = DEFAULT_MODULE_SIZE
    cocycles: int = DEFAULT_COCYCLES
    preimage_degree: int = DEFAULT_PREIMAGE_DEGREE


def parse_caps(text, base=None):
    base = base or Caps()
    known = {field.name for field in fields(Caps)}
    overrides = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in known:
            raise ConfigError(
                f"Invalid cap entry {item!r} in ${ENV_CAPS}; expected key=value with key in "
                f"{sorted(known)}."
            )
        try:
            overrides[key] = int(value.strip())
        except ValueError as exc:
            raise ConfigError(f"Cap {key!r} must be an integer, got {value!r}.") from exc
        if overrides[key] < 0:
            raise ConfigError(f"Cap {key!r} must be non-negative.")
    return replace(base, **overrides)


@lru_cache(maxsize=1)
def _caps_from_env(raw):
    caps = parse_caps(raw) if raw else Caps()
    if raw:
        logger.debug("caps overridden from $%s: %s", ENV_CAPS, caps)
    return caps


def load_caps(refresh=False):
    if refresh:
        _caps_from_env.cache_clear()
    return _caps_from_env(os.environ.get(ENV_CAPS, ""))
