"""Game specification files: dice (or a direct pmf table) plus slot multipliers.

The on-disk format is JSON. Rationals are written as "numerator/denominator"
strings (plain integers also accepted). A die is either {"sides": n} for a
fair die, or {"faces": {value: weight, ...}} for a loaded one; an entry may
carry "count" to repeat it.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .dice import DieSpec, Pmf, pmf_from_dice
from .errors import ValidationError
from .game import SlotConfig
from .rendering import rational_str


def parse_rational(value: Any) -> Fraction:
    """Parse an int or a "numerator/denominator" (or decimal) string."""
    if isinstance(value, bool):
        raise ValidationError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational: {value!r}") from exc
    raise ValidationError(f"not a rational: {value!r}")


@dataclass(frozen=True)
class GameSpec:
    """A playable game: roll distribution, slot multipliers, optional labels."""

    pmf: Pmf
    config: SlotConfig
    name: str = ""
    dice: tuple[DieSpec, ...] | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != self.config.slot_count:
            raise ValidationError(
                f"{len(self.labels)} labels for {self.config.slot_count} slots"
            )

    @classmethod
    def standard(cls) -> "GameSpec":
        """Three fair six-sided dice, multipliers 1..10."""
        dice = (DieSpec.fair(6),) * 3
        return cls(pmf_from_dice(dice), SlotConfig.standard(10), "standard", dice)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "GameSpec":
        if not isinstance(data, Mapping):
            raise ValidationError("game spec must be a JSON object")
        name = str(data.get("name", ""))

        dice: tuple[DieSpec, ...] | None = None
        if "dice" in data:
            if "pmf" in data:
                raise ValidationError("give either 'dice' or 'pmf', not both")
            dice = _parse_dice(data["dice"])
            pmf = pmf_from_dice(dice)
        elif "pmf" in data:
            table = data["pmf"]
            if not isinstance(table, Mapping):
                raise ValidationError("'pmf' must map values to probabilities")
            pmf = Pmf.from_table(
                {_parse_int(v, "pmf value"): parse_rational(p) for v, p in table.items()}
            )
        else:
            raise ValidationError("game spec needs 'dice' or 'pmf'")

        if "multipliers" not in data:
            raise ValidationError("game spec needs 'multipliers'")
        config = SlotConfig(parse_rational(m) for m in data["multipliers"])

        labels = None
        if data.get("labels") is not None:
            labels = tuple(str(label) for label in data["labels"])
        return cls(pmf, config, name, dice, labels)

    @classmethod
    def from_json(cls, text: str) -> "GameSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: str | Path) -> "GameSpec":
        return cls.from_json(Path(path).read_text())

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {}
        if self.name:
            data["name"] = self.name
        if self.dice is not None:
            data["dice"] = [
                {"faces": {str(v): rational_str(w) for v, w in die.faces}}
                for die in self.dice
            ]
        else:
            data["pmf"] = {
                str(x): rational_str(p) for x, p in self.pmf.as_dict().items() if p > 0
            }
        data["multipliers"] = [rational_str(m) for m in self.config.multipliers]
        if self.labels is not None:
            data["labels"] = list(self.labels)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def digest(self) -> str:
        return game_digest(self.pmf, self.config)


def _parse_int(value: Any, what: str) -> int:
    try:
        return int(str(value))
    except ValueError as exc:
        raise ValidationError(f"bad {what}: {value!r}") from exc


def _parse_dice(entries: Any) -> tuple[DieSpec, ...]:
    if not isinstance(entries, list) or not entries:
        raise ValidationError("'dice' must be a non-empty list")
    dice: list[DieSpec] = []
    for entry in entries:
        if not isinstance(entry, Mapping):
            raise ValidationError(f"bad die entry: {entry!r}")
        count = _parse_int(entry.get("count", 1), "die count")
        if count < 1:
            raise ValidationError(f"die count must be positive, got {count}")
        if "sides" in entry:
            die = DieSpec.fair(_parse_int(entry["sides"], "side count"))
            if "faces" in entry:
                raise ValidationError("give either 'sides' or 'faces' per die")
        elif "faces" in entry:
            faces = entry["faces"]
            if not isinstance(faces, Mapping):
                raise ValidationError("'faces' must map values to weights")
            die = DieSpec.from_weights(
                {_parse_int(v, "face value"): parse_rational(w) for v, w in faces.items()}
            )
        else:
            raise ValidationError(f"die entry needs 'sides' or 'faces': {entry!r}")
        dice.extend([die] * count)
    return tuple(dice)


def game_digest(pmf: Pmf, config: SlotConfig) -> str:
    """Stable fingerprint of (roll distribution, multipliers) for cache keys."""
    parts = [f"{x}={rational_str(p)}" for x, p in pmf.as_dict().items()]
    parts.append("|")
    parts.extend(rational_str(m) for m in config.multipliers)
    return hashlib.sha256(";".join(parts).encode()).hexdigest()
