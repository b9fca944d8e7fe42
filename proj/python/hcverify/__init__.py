"""Python access to the hcverify checks."""

import json

from ._core import (  # noqa: F401
    Error,
    InvalidArgument,
    Unsupported,
    order,
    order_poly,
    centralizer_contains_sylow2,
    two_adic_profile,
    weyl_order,
)
from ._core import run as _run


def run(command, type="", rank=0, q=0, cache="", slow=False, timing=True):
    """Runs a verification command and returns the parsed report."""
    return json.loads(_run(command, type=type, rank=rank, q=q, cache=cache, slow=slow, timing=timing))


__all__ = [
    "Error",
    "InvalidArgument",
    "Unsupported",
    "order",
    "order_poly",
    "run",
    "centralizer_contains_sylow2",
    "two_adic_profile",
    "weyl_order",
]
