"""Generalized angles of prime ideals in number fields with class number one."""

from fractions import Fraction
from pathlib import Path

from ._core import (
    AnglesError,
    Field,
    class_counts,
    irreducible_count,
    irreducibles,
    log_integral,
    necklace_count,
)
from ._core import rn_cocycle as _rn_cocycle

__all__ = [
    "AnglesError",
    "Field",
    "bundled_field",
    "class_counts",
    "irreducible_count",
    "irreducibles",
    "log_integral",
    "necklace_count",
    "rn_cocycle",
]

_HERE = Path(__file__).resolve().parent
# wheel installs ship the configs in the package; editable installs use the repo copy
_DATA = next(
    (d for d in (_HERE / "fields", _HERE.parents[1] / "data" / "fields") if d.is_dir()),
    _HERE / "fields",
)


def bundled_field(name):
    """One of the shipped configs: cubic23, gaussian, sqrt2."""
    path = _DATA / f"{name}.json"
    if not path.is_file():
        raise ValueError(f"no bundled field named {name!r}")
    return Field(str(path))


def rn_cocycle(norms, x, y):
    num, den = _rn_cocycle(list(norms), list(x), list(y))
    return Fraction(num, den)
