"""Line-oriented ``key=value`` code configuration files.

Example::

    family=c2
    field=gf2^8
    m=4
    lambdas=0,2,4,6

Keys are written in a fixed order so that parse -> serialize is the identity
on files produced by :meth:`CodeConfig.to_text`.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .codes import C1, C2, C2GEN, FAMILIES, Code, build_c1, build_c2, build_c2_general
from .errors import ConfigError
from .gf import Field

DEFAULT_FIELD = "gf2^8"


@dataclass(frozen=True)
class CodeConfig:
    family: str
    field: str = DEFAULT_FIELD
    m: int | None = None
    partition: tuple[int, int, int] | None = None
    lambdas: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family == C2GEN:
            if self.partition is None or self.m is not None:
                raise ConfigError("c2gen needs l1, l2, l3 and no m")
        elif self.m is None or self.partition is not None:
            raise ConfigError(f"{self.family} needs m and no l1/l2/l3")
        if self.family == C1 and self.lambdas is not None:
            raise ConfigError("c1 takes no lambdas")

    def build(self) -> Code:
        fld = Field.parse(self.field)
        if self.family == C1:
            return build_c1(self.m, fld)
        if self.family == C2:
            return build_c2(self.m, fld, self.lambdas)
        return build_c2_general(*self.partition, fld, self.lambdas)

    def to_text(self) -> str:
        lines = [f"family={self.family}", f"field={self.field}"]
        if self.m is not None:
            lines.append(f"m={self.m}")
        else:
            l1, l2, l3 = self.partition
            lines += [f"l1={l1}", f"l2={l2}", f"l3={l3}"]
        if self.lambdas is not None:
            lines.append("lambdas=" + ",".join(str(v) for v in self.lambdas))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CodeConfig":
        kv: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            if key in kv:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            kv[key] = value
        unknown = set(kv) - {"family", "field", "m", "l1", "l2", "l3", "lambdas"}
        if unknown:
            raise ConfigError(f"unknown key(s): {sorted(unknown)}")
        if "family" not in kv:
            raise ConfigError("missing key 'family'")
        try:
            m = int(kv["m"]) if "m" in kv else None
            part = None
            if any(k in kv for k in ("l1", "l2", "l3")):
                part = (int(kv["l1"]), int(kv["l2"]), int(kv["l3"]))
            lams = None
            if kv.get("lambdas"):
                lams = tuple(int(v) for v in kv["lambdas"].split(","))
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"bad numeric value: {exc}") from None
        return cls(kv["family"], kv.get("field", DEFAULT_FIELD), m, part, lams)

    @classmethod
    def load(cls, path) -> "CodeConfig":
        return cls.from_text(Path(path).read_text())

    def save(self, path) -> None:
        Path(path).write_text(self.to_text())
