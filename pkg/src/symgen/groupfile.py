"""Group spec files: the JSON format describing a progenitor fixture.

A spec file carries the control action (cycle strings over arbitrary
string labels), the control presentation, the factoring relators, and
optionally explicit realizing words for the symmetric generators plus
expected enumeration results for self-testing.  Labels are free-form
strings so symbols like "∞" survive; glyph-heavy alphabets should use
plain encodings (the bundled fixtures write b0..b6) with a display table
kept alongside as metadata.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from .fpgroup import FreeWord, Presentation, parse_word
from .progenitor import ProgenitorSpec, derive_rules
from .dcenum import build_image
from .symrep import SymContext, parse_label_cycles


class SpecFileError(ValueError):
    """The spec file is malformed or internally inconsistent."""


@dataclass(frozen=True)
class Expected:
    index: int | None = None
    group_order: int | None = None
    node_sizes: tuple[int, ...] | None = None


@dataclass(frozen=True)
class GroupSpecFile:
    name: str
    spec: ProgenitorSpec
    t_words: tuple[FreeWord, ...] | None
    expected: Expected
    display: dict[str, str]

    def build_context(self, with_rules: bool = True,
                      max_cosets: int = 10 ** 6) -> SymContext:
        image = build_image(self.spec, self.t_words, max_cosets=max_cosets)
        rules = derive_rules(self.spec) if with_rules else None
        return SymContext(self.spec, rules=rules, image=image)


def _require(data: dict, key: str, path: str):
    if key not in data:
        raise SpecFileError(f"{path}: missing required field {key!r}")
    return data[key]


def load_spec_data(data: dict, path: str = "<data>") -> GroupSpecFile:
    try:
        name = _require(data, "name", path)
        n = _require(data, "n", path)
        labels = tuple(_require(data, "labels", path))
        gen_names = tuple(_require(data, "control_generator_names", path))
        gen_cycles = _require(data, "control_generators", path)
        pres_text = _require(data, "control_presentation", path)
        relator_items = _require(data, "relators", path)
    except SpecFileError:
        raise
    if not isinstance(n, int) or n < 1:
        raise SpecFileError(f"{path}: n must be a positive integer")
    if len(labels) != n:
        raise SpecFileError(f"{path}: expected {n} labels, got {len(labels)}")
    for label in labels:
        if any(ch in label for ch in "(),.|") or label != label.strip() or not label:
            raise SpecFileError(f"{path}: label {label!r} contains reserved characters")
    if len(gen_cycles) != len(gen_names):
        raise SpecFileError(f"{path}: generator names and cycles differ in number")

    try:
        control_gens = tuple(parse_label_cycles(c, labels) for c in gen_cycles)
        presentation = Presentation.parse(gen_names, pres_text)
        relators = []
        for item in relator_items:
            cw = parse_word(item["control_word"], gen_names)
            tail = tuple(labels.index(l) + 1 for l in item["tail"])
            relators.append((cw, tail))
        spec = ProgenitorSpec(n, control_gens, presentation, tuple(relators),
                              labels, t_name=data.get("t_name", "t"))
        t_words = None
        if data.get("t_words") is not None:
            pres_names = gen_names + (spec.t_name,)
            t_words = tuple(parse_word(w, pres_names) for w in data["t_words"])
            if len(t_words) != n:
                raise SpecFileError(f"{path}: expected {n} t_words")
    except SpecFileError:
        raise
    except (ValueError, KeyError) as exc:
        raise SpecFileError(f"{path}: {exc}") from exc

    exp = data.get("expected") or {}
    expected = Expected(
        index=exp.get("index"),
        group_order=exp.get("group_order"),
        node_sizes=tuple(exp["node_sizes"]) if "node_sizes" in exp else None)
    return GroupSpecFile(name, spec, t_words, expected,
                         dict(data.get("display") or {}))


def load_spec_file(path: str) -> GroupSpecFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecFileError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise SpecFileError(f"{path}: top level must be an object")
    return load_spec_data(data, path)


def bundled_fixture_names() -> list[str]:
    names = []
    for entry in resources.files("symgen.fixtures").iterdir():
        if entry.name.endswith(".json"):
            names.append(entry.name[:-5])
    return sorted(names)


def load_bundled(name: str) -> GroupSpecFile:
    ref = resources.files("symgen.fixtures").joinpath(f"{name}.json")
    if not ref.is_file():
        raise SpecFileError(f"no bundled fixture named {name!r}")
    data = json.loads(ref.read_text(encoding="utf-8"))
    return load_spec_data(data, f"fixtures/{name}.json")
