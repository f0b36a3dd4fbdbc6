import os

from .errors import SizeBoundExceeded

DEFAULT_MAX_SIZE = 14


def default_max_size():
    """Size bound for congruence-lattice enumeration; ``ALG_MAX_SIZE`` overrides it."""
    value = os.environ.get("ALG_MAX_SIZE")
    return int(value) if value else DEFAULT_MAX_SIZE


def check_size(alg, max_size=None, what="congruence enumeration"):
    bound = default_max_size() if max_size is None else max_size
    if alg.size > bound:
        raise SizeBoundExceeded(
            f"{alg.name} has {alg.size} elements; {what} is limited to {bound} "
            f"(raise with max_size / --max-size / ALG_MAX_SIZE)"
        )
