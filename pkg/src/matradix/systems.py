"""System configurations: JSON schema and the bundled example systems.

A config names the integer matrix A, the digit set, and (optionally) a
dual digit set for the spectral side.  By convention the radix base is
A^T: encoding and the attractor live on the transpose side of the
Fourier pairing while the dual maps sigma_l(x) = A^-1(x + l) use A
itself.  Set ``transpose_convention`` to false to use A directly as the
radix base.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import linalg
from .errors import ConfigError
from .linalg import IntMat, IntVec
from .radix import RadixSystem


@dataclass(frozen=True)
class SystemConfig:
    dim: int
    matrix: IntMat
    digits: tuple[IntVec, ...]
    dual_digits: tuple[IntVec, ...] | None = None
    transpose_convention: bool = True

    def radix_base(self) -> IntMat:
        return (linalg.transpose(self.matrix) if self.transpose_convention
                else self.matrix)

    def radix_system(self) -> RadixSystem:
        """The validated system on the radix side of the convention."""
        return RadixSystem(self.radix_base(), self.digits)

    def untransposed_system(self) -> RadixSystem:
        """The same digits against A itself (validity can differ)."""
        return RadixSystem(self.matrix, self.digits)

    def to_json(self) -> dict:
        obj = {
            "dim": self.dim,
            "matrix": [list(r) for r in self.matrix],
            "digits": [list(d) for d in self.digits],
            "transpose_convention": self.transpose_convention,
        }
        if self.dual_digits is not None:
            obj["dual_digits"] = [list(l) for l in self.dual_digits]
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "SystemConfig":
        try:
            matrix = linalg.as_matrix(obj["matrix"])
            dim = len(matrix)
            if obj.get("dim", dim) != dim:
                raise ConfigError(f"dim {obj['dim']} does not match a "
                                  f"{dim}x{dim} matrix")
            digits = tuple(linalg.as_int_vector(d) for d in obj["digits"])
            dual = obj.get("dual_digits")
            if dual is not None:
                dual = tuple(linalg.as_int_vector(l) for l in dual)
            for v in digits + (dual or ()):
                if len(v) != dim:
                    raise ConfigError(f"digit {v} has wrong dimension")
            return cls(dim=dim, matrix=matrix, digits=digits,
                       dual_digits=dual,
                       transpose_convention=bool(
                           obj.get("transpose_convention", True)))
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad system config: {exc}") from exc

    def save(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path: str) -> "SystemConfig":
        try:
            with open(path) as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read system config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        return cls.from_json(obj)


_CLOUD_MATRIX = ((1, -2), (2, 1))
_CLOUD_DUAL = ((0, 0), (3, 0), (-3, 0), (0, 2), (0, -2))


def _cfg(matrix, digits, dual=None) -> SystemConfig:
    matrix = linalg.as_matrix(matrix)
    return SystemConfig(
        dim=len(matrix), matrix=matrix,
        digits=tuple(linalg.as_int_vector(d) for d in digits),
        dual_digits=None if dual is None else
        tuple(linalg.as_int_vector(l) for l in dual))


PRESETS: dict[str, SystemConfig] = {
    "dyadic-03": _cfg(((2,),), ((0,), (3,))),
    "binary-01": _cfg(((2,),), ((0,), (1,))),
    "cloud-three": _cfg(_CLOUD_MATRIX,
                        ((0, 0), (0, 1), (0, -1), (0, 2), (0, -2)),
                        _CLOUD_DUAL),
    "cloud-five": _cfg(_CLOUD_MATRIX,
                       ((0, 0), (3, 0), (-3, 0), (1, 0), (-1, 0)),
                       _CLOUD_DUAL),
    "cloud-nine": _cfg(_CLOUD_MATRIX,
                       ((0, 0), (3, 0), (-3, 0), (0, 2), (0, -2)),
                       _CLOUD_DUAL),
    "twin-dragon": _cfg(((1, 1), (-1, 1)), ((0, 0), (1, 0)),
                        ((0, 0), (1, 0))),
}


def get_config(name_or_path: str) -> SystemConfig:
    """Resolve a preset name or a JSON config path."""
    if name_or_path in PRESETS:
        return PRESETS[name_or_path]
    return SystemConfig.load(name_or_path)
