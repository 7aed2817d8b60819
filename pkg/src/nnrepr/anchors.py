"""Labeled anchor sets and their JSON/CSV forms."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .arith import as_rational, format_rational, res_matrix, squared_norm
from .errors import FormatError, InvalidInputError

SCHEMA_VERSION = "1"


class Label(str, Enum):
    POS = "POS"  # function value 1
    NEG = "NEG"  # function value 0


@dataclass(frozen=True)
class AnchorSet:
    anchors: tuple[tuple[Fraction, ...], ...]
    labels: tuple[Label, ...]
    arity: int
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        anchors = tuple(tuple(as_rational(v) for v in a) for a in self.anchors)
        labels = tuple(Label(lab) for lab in self.labels)
        if not anchors:
            raise InvalidInputError("an anchor set needs at least one anchor")
        if len(labels) != len(anchors):
            raise InvalidInputError(f"{len(anchors)} anchors but {len(labels)} labels")
        for i, a in enumerate(anchors):
            if len(a) != self.arity:
                raise InvalidInputError(f"anchor {i} has length {len(a)}, expected arity {self.arity}")
        object.__setattr__(self, "anchors", anchors)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def build(cls, anchors: Sequence[Sequence], labels: Sequence, meta: dict | None = None) -> "AnchorSet":
        anchors = [list(a) for a in anchors]
        if not anchors:
            raise InvalidInputError("an anchor set needs at least one anchor")
        return cls(tuple(map(tuple, anchors)), tuple(labels), len(anchors[0]), dict(meta or {}))

    @property
    def size(self) -> int:
        return len(self.anchors)

    @property
    def resolution(self) -> int:
        return res_matrix(self.anchors)

    def positives(self) -> list[int]:
        return [i for i, lab in enumerate(self.labels) if lab is Label.POS]

    def negatives(self) -> list[int]:
        return [i for i, lab in enumerate(self.labels) if lab is Label.NEG]

    def squared_norms(self) -> list[Fraction]:
        return [squared_norm(a) for a in self.anchors]

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "arity": self.arity,
            "anchors": [[format_rational(v) for v in a] for a in self.anchors],
            "labels": [lab.value for lab in self.labels],
            "meta": _jsonable(self.meta),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, obj) -> "AnchorSet":
        if isinstance(obj, (str, bytes)):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise FormatError(f"anchor file is not valid JSON: {exc.msg}", exc.lineno, exc.colno) from None
        if not isinstance(obj, dict):
            raise FormatError("anchor file must hold a JSON object")
        for key in ("arity", "anchors", "labels"):
            if key not in obj:
                raise FormatError(f"anchor file is missing {key!r}")
        arity, rows, labels = obj["arity"], obj["anchors"], obj["labels"]
        if not isinstance(rows, list) or not isinstance(labels, list):
            raise FormatError("'anchors' and 'labels' must be lists")
        parsed = []
        for i, row in enumerate(rows, 1):
            if not isinstance(row, list):
                raise FormatError("anchor must be a list of rationals", i)
            if len(row) != arity:
                raise FormatError(f"anchor has {len(row)} entries, expected arity {arity}", i)
            vals = []
            for j, v in enumerate(row, 1):
                try:
                    vals.append(as_rational(v))
                except InvalidInputError as exc:
                    raise FormatError(str(exc), i, j) from None
            parsed.append(tuple(vals))
        if len(labels) != len(parsed):
            raise FormatError(f"{len(parsed)} anchors but {len(labels)} labels")
        try:
            labs = tuple(Label(str(lab).upper()) for lab in labels)
        except ValueError as exc:
            raise FormatError(f"bad label: {exc}") from None
        if not parsed:
            raise FormatError("anchor file holds no anchors")
        return cls(tuple(parsed), labs, arity, dict(obj.get("meta") or {}))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"x{j + 1}" for j in range(self.arity)] + ["label"])
        for a, lab in zip(self.anchors, self.labels):
            writer.writerow([format_rational(v) for v in a] + [lab.value])
        return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj
