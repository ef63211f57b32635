"""Scenario files: a group H, a normal subgroup K, a prime and a K-interior H-algebra."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import algebras as al
from . import gf_linalg as gl
from . import groups as gr
from . import interior as it
from .errors import ConstructionError
from .groups import GroupTable, Subgroup
from .interior import InteriorAlgebra

DEFAULT_CAPS = {
    "max_order": gr.MAX_ORDER,
    "max_dim": 512,
    "unit_search_attempts": al.UNIT_SEARCH_ATTEMPTS,
    "unit_exhaustive_cap": al.UNIT_EXHAUSTIVE_CAP,
    "hu_cap": 4096,
    "hu_pair_cap": 64,
    "oracle_max_order": 12,
    "oracle_enumeration_cap": 4096,
}


@dataclass
class Scenario:
    p: int
    group: GroupTable
    normal: Subgroup
    algebra: Any  # "group" or an explicit description
    block: str | int = "all"
    seed: int = 0
    caps: dict = field(default_factory=lambda: dict(DEFAULT_CAPS))
    name: str = ""
    raw: dict = field(default_factory=dict)

    @property
    def canonical(self) -> bool:
        return self.algebra == "group"

    def interior(self) -> InteriorAlgebra:
        if self.canonical:
            return it.canonical_interior(self.group, self.normal, self.p)
        return explicit_interior(self.algebra, self.group, self.normal, self.p)

    def echo(self) -> dict:
        out = {"name": self.name, "p": self.p, "order_H": self.group.order, "K": list(self.normal.elements)}
        if self.group.perms is not None:
            out["H_elements"] = [list(x) for x in self.group.perms]
        out["algebra"] = "group" if self.canonical else "explicit"
        out["block"] = self.block
        out["seed"] = self.seed
        out["caps"] = dict(sorted(self.caps.items()))
        return out


def _element(g: GroupTable, desc) -> int:
    if isinstance(desc, (int, np.integer)):
        if not 0 <= desc < g.order:
            raise ConstructionError(f"element index {desc} out of range")
        return int(desc)
    if g.perms is None:
        raise ConstructionError("permutation given for a group defined by a table")
    try:
        return g.perms.index(tuple(int(v) for v in desc))
    except ValueError:
        raise ConstructionError(f"permutation {desc} is not in H") from None


def parse_group(desc: dict, max_order: int) -> GroupTable:
    if "permutations" in desc:
        return gr.build_group(generators=desc["permutations"], max_order=max_order)
    if "table" in desc:
        return gr.build_group(table=desc["table"], max_order=max_order)
    raise ConstructionError("group description needs 'permutations' or 'table'")


def parse_subgroup(g: GroupTable, desc: dict) -> Subgroup:
    if "elements" in desc:
        return gr.as_subgroup(g, [_element(g, e) for e in desc["elements"]])
    if "generators" in desc:
        return gr.closure(g, [_element(g, e) for e in desc["generators"]])
    raise ConstructionError("subgroup description needs 'elements' or 'generators'")


def _pairs(g: GroupTable, desc) -> dict[int, np.ndarray]:
    if isinstance(desc, dict):
        items = [(int(k), v) for k, v in desc.items()]
    else:
        items = [(_element(g, item["element"]), item["value"]) for item in desc]
    return {k: np.asarray(v, dtype=np.int64) for k, v in items}


def _extend(g: GroupTable, given: dict[int, np.ndarray], mult, unit, within: Subgroup) -> dict[int, np.ndarray]:
    """Extend a map given on generators of ``within`` multiplicatively (breadth-first)."""
    out = {0: unit}
    frontier = [0]
    gens = sorted(given)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(g.mul[x, s])
                if y not in out:
                    out[y] = mult(out[x], given[s])
                    nxt.append(y)
        frontier = nxt
    for s, v in given.items():
        if not np.array_equal(out[s], v):
            raise ConstructionError(f"values on generators are inconsistent at element {s}")
    if set(out) != set(within.elements):
        raise ConstructionError("given elements do not generate the required group")
    return out


def explicit_interior(desc: dict, g: GroupTable, k: Subgroup, p: int) -> InteriorAlgebra:
    alg = al.from_json(desc | {"p": desc.get("p", p)})
    if alg.p != p:
        raise ConstructionError("algebra characteristic differs from the scenario prime")
    kap = _pairs(g, desc["kappa"])
    act = _pairs(g, desc["act"])
    kappa = _extend(g, kap, alg.product, alg.unity, k)
    eye = np.eye(alg.dim, dtype=np.int64)
    acts = _extend(g, act, lambda a, b: gl.matmul(a, b, p), eye, g.whole)
    return it.validate_interior(alg, g, k, kappa, [acts[h] for h in range(g.order)])


def from_dict(data: dict, name: str = "") -> Scenario:
    caps = dict(DEFAULT_CAPS)
    caps.update(data.get("caps", {}))
    try:
        p = gl.check_prime(int(data["p"]))
        g = parse_group(data["H"], int(caps["max_order"]))
        k = parse_subgroup(g, data["K"])
    except KeyError as exc:
        raise ConstructionError(f"scenario is missing {exc}") from None
    except ValueError as exc:
        raise ConstructionError(str(exc)) from None
    if not gr.is_normal(g, k):
        raise ConstructionError("K is not normal in H")
    block = data.get("block", "all")
    if block != "all" and not isinstance(block, int):
        raise ConstructionError("block must be 'all' or an index")
    algebra = data.get("algebra", "group")
    if algebra != "group" and not isinstance(algebra, dict):
        raise ConstructionError("algebra must be 'group' or an explicit description")
    return Scenario(p, g, k, algebra, block, int(data.get("seed", 0)), caps, data.get("name", name), data)


def load(path) -> Scenario:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConstructionError(f"{path}: not valid JSON ({exc})") from None
    return from_dict(data, name=path.stem)
