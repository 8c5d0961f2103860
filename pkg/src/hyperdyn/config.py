"""Plain-text system and suite configs.

The format is line based: ``[section]`` headers, ``key = value`` lines whose
values are JSON, and ``#`` comments.  Keys that may repeat (``row``,
``generator``, ``family``...) collect into lists in file order.  A finite
system looks like::

    [system]
    name = "rotation"

    [space]
    points = 3
    metric = "discrete"          # or "line", "cyclic", or one `row` per point

    [group]
    kind = "free_abelian"        # or "finite"
    abelian = true
    generator = [1, 2, 0]

and a subshift replaces ``[space]`` and ``[group]`` with::

    [sft]
    alphabet = 2
    forbidden = ["11"]           # or one `row` per symbol

Distances may be integers, ``"p/q"`` strings or decimals.  Every problem is
reported with its line number and key; nothing stops at the first one.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from .checkers import Bounds
from .errors import (
    ConfigError,
    EmptyShiftError,
    MalformedTableError,
    NonCommutingError,
    NotBijectionError,
    UnknownSystemError,
)
from .groups import ActionSystem, GroupKind, GroupSpec
from .library import builtin, builtin_family
from .metric import FiniteMetricSpace, to_fraction, validate_metric
from .shifts import Sft, sft_from_forbidden_words, sft_from_matrix
from .suite import FamilySpec, SuiteConfig

System = Union[ActionSystem, Sft]

REPEATABLE = {"row", "generator", "family", "system"}
SECTIONS = {
    "system": {"name"},
    "space": {"points", "metric", "row"},
    "group": {"kind", "abelian", "generator"},
    "sft": {"alphabet", "forbidden", "row", "labels", "name"},
    "suite": {"name", "theorems", "radius", "cyl_len", "cap"},
    "family": {"name", "family", "system", "substantive", "substantive_everywhere", "require_vacuous"},
}
METRIC_SHORTCUTS = {
    "discrete": FiniteMetricSpace.discrete,
    "line": FiniteMetricSpace.line,
    "cyclic": FiniteMetricSpace.cyclic,
}


@dataclass(frozen=True)
class ConfigIssue:
    line: int
    key: str
    kind: str
    message: str

    def __str__(self):
        where = f"line {self.line}" if self.line else "config"
        return f"{where} [{self.key}] {self.kind}: {self.message}"


@dataclass
class Entry:
    value: Any
    line: int


@dataclass
class Section:
    name: str
    line: int
    entries: dict[str, list[Entry]] = field(default_factory=dict)

    def get(self, key: str) -> Optional[Entry]:
        got = self.entries.get(key)
        return got[0] if got else None

    def all(self, key: str) -> list[Entry]:
        return self.entries.get(key, [])


def parse_sections(text: str) -> tuple[list[Section], list[ConfigIssue]]:
    """Split the text into sections; syntax problems become issues."""
    sections: list[Section] = []
    issues: list[ConfigIssue] = []
    current: Optional[Section] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                issues.append(ConfigIssue(lineno, line, "syntax", "unterminated section header"))
                continue
            name = line[1:-1].strip()
            if name not in SECTIONS:
                issues.append(ConfigIssue(lineno, name, "unknown-section", f"unknown section [{name}]"))
                current = None
                continue
            current = Section(name, lineno)
            sections.append(current)
            continue
        if "=" not in line:
            issues.append(ConfigIssue(lineno, line, "syntax", "expected `key = value`"))
            continue
        key, _, value_text = (part.strip() for part in line.partition("="))
        if current is None:
            issues.append(ConfigIssue(lineno, key, "syntax", "key outside of any section"))
            continue
        value_text = _strip_comment(value_text)
        try:
            value = json.loads(value_text)
        except json.JSONDecodeError as exc:
            issues.append(ConfigIssue(lineno, key, "syntax", f"value is not JSON: {exc.msg}"))
            continue
        if key not in SECTIONS[current.name]:
            issues.append(ConfigIssue(lineno, key, "unknown-key", f"unknown key in [{current.name}]"))
            continue
        bucket = current.entries.setdefault(key, [])
        if bucket and key not in REPEATABLE:
            issues.append(ConfigIssue(lineno, key, "duplicate-key", f"first given on line {bucket[0].line}"))
            continue
        bucket.append(Entry(value, lineno))
    return sections, issues


def _strip_comment(text: str) -> str:
    """Drop a trailing ``# comment`` that is not inside a JSON string."""
    in_string = escaped = False
    for i, ch in enumerate(text):
        if escaped:
            escaped = False
        elif ch == "\\":
            escaped = True
        elif ch == '"':
            in_string = not in_string
        elif ch == "#" and not in_string:
            return text[:i].rstrip()
    return text


def _one(sections: list[Section], name: str, issues: list[ConfigIssue]) -> Optional[Section]:
    found = [s for s in sections if s.name == name]
    for extra in found[1:]:
        issues.append(ConfigIssue(extra.line, name, "duplicate-section", f"[{name}] given twice"))
    return found[0] if found else None


def _require(section: Section, key: str, issues: list[ConfigIssue]) -> Optional[Entry]:
    entry = section.get(key)
    if entry is None:
        issues.append(ConfigIssue(section.line, key, "missing-key", f"[{section.name}] needs `{key}`"))
    return entry


def _int_list(entry: Entry, key: str, issues: list[ConfigIssue]) -> Optional[list[int]]:
    v = entry.value
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        issues.append(ConfigIssue(entry.line, key, "type", "expected a list of integers"))
        return None
    return v


# --- systems --------------------------------------------------------------------------------


def _parse_space(section: Section, issues: list[ConfigIssue]) -> Optional[FiniteMetricSpace]:
    points = _require(section, "points", issues)
    if points is None:
        return None
    n = points.value
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        issues.append(ConfigIssue(points.line, "points", "type", "points must be a positive integer"))
        return None
    metric, rows = section.get("metric"), section.all("row")
    if metric and rows:
        issues.append(ConfigIssue(metric.line, "metric", "conflict", "give either `metric` or `row` lines"))
        return None
    if metric:
        if metric.value not in METRIC_SHORTCUTS:
            issues.append(ConfigIssue(metric.line, "metric", "value",
                                      f"unknown metric {metric.value!r}; use {sorted(METRIC_SHORTCUTS)} or rows"))
            return None
        return METRIC_SHORTCUTS[metric.value](n)
    if len(rows) != n:
        line = rows[-1].line if rows else section.line
        issues.append(ConfigIssue(line, "row", "shape", f"expected {n} distance rows, got {len(rows)}"))
        return None
    parsed = []
    for entry in rows:
        v = entry.value
        if not isinstance(v, list) or len(v) != n:
            issues.append(ConfigIssue(entry.line, "row", "shape", f"each row needs {n} entries"))
            return None
        try:
            parsed.append([to_fraction(x) for x in v])
        except (ValueError, TypeError, ZeroDivisionError):
            issues.append(ConfigIssue(entry.line, "row", "type", "distances must be numbers or \"p/q\""))
            return None
    try:
        space = FiniteMetricSpace.from_rows(parsed)
    except MalformedTableError as exc:
        issues.append(ConfigIssue(section.line, "row", "shape", str(exc)))
        return None
    violations = validate_metric(space)
    if violations:
        for v in violations[:10]:
            first_point = v.indices[0]
            issues.append(ConfigIssue(rows[first_point].line, "row", "metric-axiom", str(v)))
        return None
    return space


def _parse_group(section: Section, n: int, issues: list[ConfigIssue]) -> Optional[GroupSpec]:
    kind_entry = _require(section, "kind", issues)
    if kind_entry is None:
        return None
    try:
        kind = GroupKind(kind_entry.value)
    except ValueError:
        issues.append(ConfigIssue(kind_entry.line, "kind", "value",
                                  f"kind must be one of {[k.value for k in GroupKind]}"))
        return None
    abelian_entry = section.get("abelian")
    abelian = True if abelian_entry is None else abelian_entry.value
    if not isinstance(abelian, bool):
        issues.append(ConfigIssue(abelian_entry.line, "abelian", "type", "expected true or false"))
        return None
    gens = []
    ok = True
    for i, entry in enumerate(section.all("generator")):
        g = _int_list(entry, "generator", issues)
        if g is None:
            ok = False
            continue
        if len(g) != n or sorted(g) != list(range(n)):
            issues.append(ConfigIssue(entry.line, "generator", "not-bijection",
                                      f"generator {i} {g} is not a permutation of 0..{n - 1}"))
            ok = False
            continue
        gens.append(tuple(g))
    if not ok:
        return None
    if kind is GroupKind.FREE_ABELIAN and abelian_entry is not None and not abelian:
        issues.append(ConfigIssue(abelian_entry.line, "abelian", "value", "a free abelian group is abelian"))
        return None
    return GroupSpec(kind, tuple(gens), abelian)


def _parse_sft(section: Section, name: str, issues: list[ConfigIssue]) -> Optional[Sft]:
    forbidden, rows = section.get("forbidden"), section.all("row")
    labels_entry = section.get("labels")
    name = section.get("name").value if section.get("name") else name
    if forbidden and rows:
        issues.append(ConfigIssue(forbidden.line, "forbidden", "conflict", "give either `forbidden` or `row` lines"))
        return None
    try:
        if rows:
            matrix = []
            for entry in rows:
                r = _int_list(entry, "row", issues)
                if r is None:
                    return None
                if any(v not in (0, 1) for v in r) or len(r) != len(rows):
                    issues.append(ConfigIssue(entry.line, "row", "shape", "rows must form a square 0/1 matrix"))
                    return None
                matrix.append(r)
            labels = ()
            if labels_entry:
                labels = tuple(tuple(x) if isinstance(x, list) else x for x in labels_entry.value)
            return sft_from_matrix(matrix, labels, name=name)
        alphabet = _require(section, "alphabet", issues)
        if alphabet is None:
            return None
        k = alphabet.value
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            issues.append(ConfigIssue(alphabet.line, "alphabet", "type", "alphabet must be a positive integer"))
            return None
        words = forbidden.value if forbidden else []
        if not isinstance(words, list):
            issues.append(ConfigIssue(forbidden.line, "forbidden", "type", "expected a list of words"))
            return None
        words = [w if isinstance(w, str) else tuple(w) for w in words]
        return sft_from_forbidden_words(k, words, name=name)
    except EmptyShiftError as exc:
        line = forbidden.line if forbidden else section.line
        issues.append(ConfigIssue(line, "forbidden" if forbidden else "row", "empty-shift", str(exc)))
    except ValueError as exc:
        line = forbidden.line if forbidden else section.line
        issues.append(ConfigIssue(line, "forbidden" if forbidden else "row", "value", str(exc)))
    return None


def parse_config(text: str) -> System:
    """Parse a system config; raise :class:`ConfigError` listing every located issue."""
    sections, issues = parse_sections(text)
    names = {s.name for s in sections}
    if names & {"suite", "family"}:
        issues.append(ConfigIssue(0, "suite", "wrong-file", "this is a suite file; use parse_suite"))
    meta = _one(sections, "system", issues)
    name = meta.get("name").value if meta and meta.get("name") else ""
    sft_section = _one(sections, "sft", issues)
    space_section = _one(sections, "space", issues)
    group_section = _one(sections, "group", issues)
    system: Optional[System] = None
    if sft_section is not None:
        if space_section or group_section:
            issues.append(ConfigIssue(sft_section.line, "sft", "conflict",
                                      "[sft] cannot be combined with [space] or [group]"))
        else:
            system = _parse_sft(sft_section, name, issues)
    elif space_section is None or group_section is None:
        issues.append(ConfigIssue(0, "space" if space_section is None else "group", "missing-section",
                                  "a finite system needs both [space] and [group]"))
    else:
        space = _parse_space(space_section, issues)
        if space is not None:
            group = _parse_group(group_section, space.point_count, issues)
            if group is not None:
                try:
                    system = ActionSystem(space, group, name)
                except NonCommutingError as exc:
                    issues.append(ConfigIssue(group_section.line, "generator", "non-commuting", str(exc)))
                except NotBijectionError as exc:
                    issues.append(ConfigIssue(group_section.line, "generator", "not-bijection", str(exc)))
    if issues:
        raise ConfigError(issues)
    return system


def _fraction_json(f: Fraction) -> Union[int, str]:
    return f.numerator if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def dump_system(system: System) -> str:
    """Config text that parses back to an equal system."""
    lines = []
    if isinstance(system, Sft):
        lines += ["[sft]"]
        if system.name:
            lines.append(f"name = {json.dumps(system.name)}")
        if system.labels != tuple(range(system.alphabet_size)):
            lines.append(f"labels = {json.dumps([list(l) if isinstance(l, tuple) else l for l in system.labels])}")
        lines += [f"row = {json.dumps(list(r))}" for r in system.matrix]
        return "\n".join(lines) + "\n"
    if system.name:
        lines += ["[system]", f"name = {json.dumps(system.name)}", ""]
    n = system.point_count
    lines += ["[space]", f"points = {n}"]
    for row in system.space.rows():
        lines.append(f"row = {json.dumps([_fraction_json(d) for d in row])}")
    group = system.group
    lines += ["", "[group]", f"kind = {json.dumps(group.kind.value)}",
              f"abelian = {json.dumps(group.abelian)}"]
    lines += [f"generator = {json.dumps(list(g))}" for g in group.generators]
    return "\n".join(lines) + "\n"


def load_system(source: str) -> System:
    """``builtin:expr`` or a path to a config file."""
    if source.startswith("builtin:"):
        return builtin(source)
    with open(source, encoding="utf-8") as fh:
        return parse_config(fh.read())


# --- suites ------------------------------------------------------------------------------


def _str_list(entry: Optional[Entry], key: str, issues: list[ConfigIssue]) -> tuple:
    if entry is None:
        return ()
    if not isinstance(entry.value, list) or not all(isinstance(x, str) for x in entry.value):
        issues.append(ConfigIssue(entry.line, key, "type", "expected a list of strings"))
        return ()
    return tuple(entry.value)


def parse_suite(text: str, base_dir: str = ".") -> SuiteConfig:
    """Parse a ``[suite]`` file with one ``[family]`` section per family.

    A family lists named builtin families (``family = "finite_default"``)
    and individual systems (``system = "builtin:cyclic_rotation(3)"`` or a
    config path relative to the suite file).
    """
    sections, issues = parse_sections(text)
    head = _one(sections, "suite", issues)
    if head is None:
        raise ConfigError(issues + [ConfigIssue(0, "suite", "missing-section", "no [suite] section")])
    bounds_kw = {}
    for key in ("radius", "cyl_len", "cap"):
        e = head.get(key)
        if e is None:
            continue
        if not isinstance(e.value, int) or isinstance(e.value, bool) or e.value < 1:
            issues.append(ConfigIssue(e.line, key, "type", "bounds must be positive integers"))
        else:
            bounds_kw[key] = e.value
    theorems = _str_list(head.get("theorems"), "theorems", issues) or ("T34", "T36", "T38", "T39", "T310")
    families = []
    for sec in (s for s in sections if s.name == "family"):
        systems = []
        for e in sec.all("family"):
            try:
                systems += builtin_family(e.value)
            except (UnknownSystemError, TypeError) as exc:
                issues.append(ConfigIssue(e.line, "family", "unknown-system", str(exc)))
        for e in sec.all("system"):
            src = e.value
            try:
                if isinstance(src, str) and not src.startswith("builtin:"):
                    src = os.path.join(base_dir, src)
                systems.append(load_system(src))
            except UnknownSystemError as exc:
                issues.append(ConfigIssue(e.line, "system", "unknown-system", str(exc)))
            except ConfigError as exc:
                issues += [ConfigIssue(e.line, "system", "nested", f"{src}: {i}") for i in exc.issues]
            except OSError as exc:
                issues.append(ConfigIssue(e.line, "system", "io", str(exc)))
        name_entry = sec.get("name")
        families.append(FamilySpec(
            name_entry.value if name_entry else f"family@{sec.line}",
            systems,
            _str_list(sec.get("substantive"), "substantive", issues),
            _str_list(sec.get("substantive_everywhere"), "substantive_everywhere", issues),
            _str_list(sec.get("require_vacuous"), "require_vacuous", issues),
        ))
    name = head.get("name").value if head.get("name") else "suite"
    if issues:
        raise ConfigError(issues)
    try:
        return SuiteConfig(name, families, theorems, Bounds(**bounds_kw))
    except ValueError as exc:
        raise ConfigError([ConfigIssue(head.line, "theorems", "value", str(exc))]) from None
