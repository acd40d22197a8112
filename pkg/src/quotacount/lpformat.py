"""LP-file bridge for third-party cross-checks.

Writes the committee instance as a plain LP-format text file (the common
CPLEX/GLPK dialect) so anyone can re-solve it with an off-the-shelf MILP
solver, and reads back a 0/1 assignment file to compare answers. The
in-house solver never consumes these files; they exist purely so the
result can be verified with independent tooling.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Mapping

from .model import BoundType, ElectionConfig


def variable_map(config: ElectionConfig) -> dict[str, str]:
    """candidate_id -> LP variable name, deterministic and collision-free."""
    mapping: dict[str, str] = {}
    used: set[str] = set()
    for cand in config.roster:
        base = "x_" + re.sub(r"[^A-Za-z0-9]", "_", cand.candidate_id)
        name = base
        n = 2
        while name in used:
            name = f"{base}__{n}"
            n += 1
        used.add(name)
        mapping[cand.candidate_id] = name
    return mapping


_RELATION = {
    BoundType.EXACT: "=",
    BoundType.AT_LEAST: ">=",
    BoundType.AT_MOST: "<=",
}


def write_lp(
    path: str | Path, votes: Mapping[str, int], config: ElectionConfig
) -> dict[str, str]:
    """Emit the instance; returns the candidate_id -> variable mapping.

    Zero-vote candidates are omitted from the objective (conventional) but
    declared binary and constrained like everyone else.
    """
    if not config.roster:
        raise ValueError("cannot export an instance with an empty roster")
    var = variable_map(config)
    first_var = var[config.roster[0].candidate_id]
    lines: list[str] = []
    lines.append(f"\\ committee selection instance: {config.election_id}")
    lines.append(f"\\ {config.seats} seats, {len(config.roster)} candidates")
    for cand in config.roster:
        if var[cand.candidate_id] != "x_" + cand.candidate_id:
            lines.append(f"\\ {var[cand.candidate_id]} is candidate {cand.candidate_id!r}")
    lines.append("Maximize")
    terms = [
        f"{votes.get(c.candidate_id, 0)} {var[c.candidate_id]}"
        for c in config.roster
        if votes.get(c.candidate_id, 0) != 0
    ]
    lines.append(" obj: " + (" + ".join(terms) if terms else f"0 {first_var}"))
    lines.append("Subject To")
    all_vars = " + ".join(var[c.candidate_id] for c in config.roster)
    lines.append(f" seats: {all_vars} = {config.seats}")
    for j, crit in enumerate(config.criteria, start=1):
        for cb in crit.categories:
            members = [
                var[c.candidate_id]
                for c in config.roster
                if c.attributes.get(crit.attribute) == cb.category
            ]
            cname = "c{}_{}".format(j, re.sub(r"[^A-Za-z0-9]", "_", cb.category))
            rel = _RELATION[cb.bound.type]
            if members:
                lines.append(f" {cname}: {' + '.join(members)} {rel} {cb.bound.value}")
            else:
                # empty category: constraint degenerates to 0 <rel> value
                lines.append(f" {cname}: 0 {first_var} {rel} {cb.bound.value}")
    lines.append("Binaries")
    lines.append(" " + " ".join(var[c.candidate_id] for c in config.roster))
    lines.append("End")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return var


def read_assignment(path: str | Path, config: ElectionConfig) -> frozenset[str]:
    """Read a solver's 0/1 assignment back as a committee.

    Accepts one ``name value`` pair per line (``name = value`` also works;
    blank lines and ``#``/``\\`` comments skipped). Variables omitted from
    the file count as 0. Values must sit within 1e-6 of an integer 0 or 1.
    """
    var = variable_map(config)
    reverse = {v: k for k, v in var.items()}
    selected: set[str] = set()
    for lineno, raw in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("\\"):
            continue
        parts = [p for p in line.replace("=", " ").split() if p]
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'variable value', got {raw!r}")
        name, value_text = parts
        if name not in reverse:
            raise ValueError(f"line {lineno}: unknown variable {name!r}")
        value = float(value_text)
        if abs(value - 1.0) <= 1e-6:
            selected.add(reverse[name])
        elif abs(value) <= 1e-6:
            selected.discard(reverse[name])
        else:
            raise ValueError(
                f"line {lineno}: {name} = {value_text} is not a 0/1 value"
            )
    return frozenset(selected)
