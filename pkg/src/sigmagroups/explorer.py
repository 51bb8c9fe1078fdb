"""Measured descendant trees and IPAD measure aggregation.

Every node carries a GI-automorphism sigma, generators and the order of
Aut_sigma, so its measure follows from the closed formula without any
automorphism search. The root is the elementary abelian group of rank g with
sigma = inversion and Aut_sigma = GL_g(p).
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import autos
from .ipad import Ipad, ipad_le, ipad_of
from .measure import meas_c_formula, meas_formula
from .pc.homs import Homomorphism
from .pc.presentation import PcPresentation
from .pcover import CoverData, Descendant, p_cover, sigma_descendants
from .sigma import CoverSigma, SchurClass, classify_with_sigma, y_exponent


@dataclass
class TreeNode:
    id: str
    parent: str | None
    order_exp: int
    p_class: int
    d: int
    r: int
    h: int
    y: int
    aut_sigma_order: int
    schur_class: SchurClass
    ipad: Ipad
    meas_c: Fraction
    meas: Fraction
    terminal: bool
    children: list[str] = field(default_factory=list)
    status: str = "leaf"
    pres: PcPresentation | None = field(default=None, repr=False, compare=False)
    sigma: Homomorphism | None = field(default=None, repr=False, compare=False)
    aut_gens: list | None = field(default=None, repr=False, compare=False)

    @property
    def is_ancestor(self) -> bool:
        return self.schur_class in (SchurClass.SCHUR_PLUS1_GROUP, SchurClass.ANCESTOR_ONLY)

    @property
    def meas_next(self) -> Fraction:
        """Meas_{c+1} of this node (the stable measure)."""
        return self.meas

    def to_dict(self) -> dict:
        return {
            "id": self.id, "parent": self.parent, "order_exp": self.order_exp,
            "p_class": self.p_class, "d": self.d, "r": self.r, "h": self.h, "y": self.y,
            "aut_sigma_order": self.aut_sigma_order, "schur_class": self.schur_class.value,
            "ipad": str(self.ipad),
            "meas_c": _frac(self.meas_c), "meas": _frac(self.meas),
            "terminal": self.terminal, "children": list(self.children), "status": self.status,
        }


def _frac(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def annotate(pres: PcPresentation, sigma: Homomorphism, aut_gens: list, aut_order: int,
             node_id: str, parent: str | None) -> tuple[TreeNode, CoverData]:
    p, g = pres.p, pres.d
    cd = p_cover(pres, verify=False)
    cs = CoverSigma(cd, cd.action_matrix(sigma), g)
    cls = classify_with_sigma(sigma, cs)
    y = p ** y_exponent(sigma)
    ancestor = cls in (SchurClass.SCHUR_PLUS1_GROUP, SchurClass.ANCESTOR_ONLY)
    meas_c = meas_c_formula(y, aut_order, pres.order, g, cd.h, p) if ancestor else Fraction(0)
    meas = meas_formula(y, aut_order, pres.order, g, cd.r, p, cls == SchurClass.SCHUR_PLUS1_GROUP)
    node = TreeNode(node_id, parent, pres.n, pres.p_class, g, cd.r, cd.h, y, aut_order, cls,
                    ipad_of(pres), meas_c, meas, not cd.nucleus,
                    pres=pres, sigma=sigma, aut_gens=list(aut_gens))
    return node, cd


def root_node(p: int, g: int) -> tuple[TreeNode, CoverData]:
    pres = PcPresentation(p, [1] * g)
    sigma = autos.from_weight1(pres, [pres.gen(i, p - 1) for i in range(g)])
    gens = [autos.matrix_aut(pres, m) for m in autos.gl_generators(g, p)]
    return annotate(pres, sigma, gens, autos.gl_order(g, p), "R", None)


def child_nodes(node: TreeNode, cd: CoverData) -> list[tuple[Descendant, str]]:
    kids = sigma_descendants(node.pres, node.sigma, node.aut_gens, node.aut_sigma_order, cd)
    return [(k, f"{node.id}.{i + 1}") for i, k in enumerate(kids)]


# ---- trees -------------------------------------------------------------------

@dataclass
class Tree:
    p: int
    g: int
    nodes: dict[str, TreeNode]
    root: str = "R"
    complete: bool = True
    frontier: list[str] = field(default_factory=list)

    def edges(self) -> list[tuple[str, str]]:
        return [(n.id, c) for n in self.nodes.values() for c in n.children]

    def children(self, node_id: str) -> list[TreeNode]:
        return [self.nodes[c] for c in self.nodes[node_id].children]

    def recursion_failures(self) -> list[str]:
        """Expanded ancestor nodes where Meas_c != Meas_{c+1} + sum over children."""
        bad = []
        for n in self.nodes.values():
            if n.status != "expanded" or not n.is_ancestor:
                continue
            kids = [k for k in self.children(n.id) if k.is_ancestor]
            if n.meas_c != n.meas_next + sum((k.meas_c for k in kids), Fraction(0)):
                bad.append(n.id)
        return bad


def build_tree(p: int, g: int, max_class: int, max_order: int | None = None,
               ancestors_only: bool = True) -> Tree:
    """Breadth-first tree of descendants with a GI-automorphism, from the
    elementary abelian root. Nodes of class < max_class are expanded when
    they are ancestors; children beyond max_order (an exponent of p) are not
    built and their parent is marked as a frontier node."""
    root, cd = root_node(p, g)
    tree = Tree(p, g, {root.id: root})
    queue = [(root, cd)]
    while queue:
        nxt = []
        for node, cd in queue:
            if node.terminal or not node.is_ancestor or node.p_class >= max_class:
                continue
            node.status = "expanded"
            for kid, kid_id in child_nodes(node, cd):
                if max_order is not None and kid.pres.n > max_order:
                    tree.complete = False
                    node.status = "frontier"
                    if node.id not in tree.frontier:
                        tree.frontier.append(node.id)
                    continue
                child, ccd = annotate(kid.pres, kid.sigma, kid.aut_sigma_gens, kid.aut_sigma_order,
                                      kid_id, node.id)
                if ancestors_only and not child.is_ancestor:
                    continue
                node.children.append(child.id)
                tree.nodes[child.id] = child
                nxt.append((child, ccd))
        queue = nxt
    return tree


def export_json(tree: Tree) -> str:
    doc = {
        "p": tree.p, "g": tree.g, "complete": tree.complete, "frontier": tree.frontier,
        "nodes": [tree.nodes[k].to_dict() for k in sorted(tree.nodes, key=_id_key)],
        "edges": [list(e) for e in sorted(tree.edges(), key=lambda e: (_id_key(e[0]), _id_key(e[1])))],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def export_dot(tree: Tree) -> str:
    lines = ["digraph descendants {", "  node [shape=box];"]
    for k in sorted(tree.nodes, key=_id_key):
        n = tree.nodes[k]
        label = f"order={tree.p}^{n.order_exp}, Meas_{n.p_class}={n.meas_c.numerator}/{n.meas_c.denominator}"
        lines.append(f'  "{n.id}" [label="{label}"];')
    for a, b in sorted(tree.edges(), key=lambda e: (_id_key(e[0]), _id_key(e[1]))):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _id_key(node_id: str) -> tuple:
    return tuple(int(x) for x in node_id.split(".")[1:])


# ---- IPAD measures -----------------------------------------------------------

@dataclass
class IpadMeasureEntry:
    ipad: Ipad
    measure: Fraction
    nodes: list[str]
    status: str = "exact"

    def to_dict(self) -> dict:
        return {"ipad": str(self.ipad), "num": self.measure.numerator, "den": self.measure.denominator,
                "decimal": format_decimal(self.measure), "status": self.status, "nodes": self.nodes}


def format_decimal(x: Fraction, places: int = 4) -> str:
    """Round half to even at `places` decimals."""
    from decimal import ROUND_HALF_EVEN, Decimal, localcontext
    with localcontext() as ctx:
        ctx.prec = 50
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


@dataclass
class Exploration:
    credits: list = field(default_factory=list)    # (ipad, measure, node id, reason)
    open_nodes: list = field(default_factory=list)  # (ipad, node id)
    pruned: list = field(default_factory=list)      # (ipad, meas_c, node id)
    visited: int = 0
    stable_violations: list = field(default_factory=list)

    def merge(self, other: "Exploration") -> None:
        self.credits += other.credits
        self.open_nodes += other.open_nodes
        self.pruned += other.pruned
        self.visited += other.visited
        self.stable_violations += other.stable_violations


@dataclass
class Budget:
    max_order: int = 8
    max_class: int = 99
    max_nodes: int | None = None


def _explore(node: TreeNode, cd: CoverData, targets: list[Ipad] | None, budget: Budget,
             out: Exploration, verify_stable: bool) -> None:
    out.visited += 1
    if node.meas:
        out.credits.append((node.ipad, node.meas, node.id, "schur+1"))
    if node.terminal:
        return
    if node.p_class >= budget.max_class or (budget.max_nodes is not None and out.visited >= budget.max_nodes):
        out.open_nodes.append((node.ipad, node.id))
        return
    for kid, kid_id in child_nodes(node, cd):
        if kid.pres.n > budget.max_order:
            kipad = ipad_of(kid.pres)
            if targets is None or any(ipad_le(kipad, t) for t in targets):
                out.open_nodes.append((kipad, kid_id))
            continue
        child, ccd = annotate(kid.pres, kid.sigma, kid.aut_sigma_gens, kid.aut_sigma_order, kid_id, node.id)
        if not child.is_ancestor:
            continue
        if not ipad_le(node.ipad, child.ipad):
            raise AssertionError(f"IPAD order violated on edge {node.id} -> {child.id}")
        if child.ipad == node.ipad:
            out.credits.append((child.ipad, child.meas_c, child.id, "stable"))
            if verify_stable:
                _check_stable(child, ccd, budget, out)
            continue
        if targets is not None and not any(ipad_le(child.ipad, t) for t in targets):
            out.pruned.append((child.ipad, child.meas_c, child.id))
            continue
        _explore(child, ccd, targets, budget, out, verify_stable)


def _check_stable(node: TreeNode, cd: CoverData, budget: Budget, out: Exploration) -> None:
    if node.terminal:
        return
    for kid, kid_id in child_nodes(node, cd):
        if kid.pres.n > budget.max_order:
            continue
        child, ccd = annotate(kid.pres, kid.sigma, kid.aut_sigma_gens, kid.aut_sigma_order, kid_id, node.id)
        if not child.is_ancestor:
            continue
        if child.ipad != node.ipad:
            out.stable_violations.append(child.id)
        _check_stable(child, ccd, budget, out)


def _explore_task(args) -> Exploration:
    node, targets, budget, verify_stable = args
    out = Exploration()
    cd = p_cover(node.pres, verify=False)
    _explore(node, cd, targets, budget, out, verify_stable)
    return out


def explore_ipads(p: int, g: int, budget: Budget, targets: Sequence[Ipad] | None = None,
                  threads: int = 1, verify_stable: bool = False) -> Exploration:
    """Walk the ancestor tree, crediting Schur+1 nodes with Meas and stable
    children with Meas_{c+1}; prune by IPAD order against the targets."""
    targets = list(targets) if targets is not None else None
    root, cd = root_node(p, g)
    out = Exploration(visited=1)
    # expand two levels serially, then farm out the subtrees
    tasks = []
    level = [(root, cd)]
    for _ in range(2):
        nxt = []
        for node, ncd in level:
            if node.meas:
                out.credits.append((node.ipad, node.meas, node.id, "schur+1"))
            if node.terminal or node.p_class >= budget.max_class:
                if not node.terminal:
                    out.open_nodes.append((node.ipad, node.id))
                continue
            for kid, kid_id in child_nodes(node, ncd):
                if kid.pres.n > budget.max_order:
                    kipad = ipad_of(kid.pres)
                    if targets is None or any(ipad_le(kipad, t) for t in targets):
                        out.open_nodes.append((kipad, kid_id))
                    continue
                child, ccd = annotate(kid.pres, kid.sigma, kid.aut_sigma_gens, kid.aut_sigma_order,
                                      kid_id, node.id)
                if not child.is_ancestor:
                    continue
                if node.id != "R" and child.ipad == node.ipad:
                    out.credits.append((child.ipad, child.meas_c, child.id, "stable"))
                    continue
                if targets is not None and not any(ipad_le(child.ipad, t) for t in targets):
                    out.pruned.append((child.ipad, child.meas_c, child.id))
                    continue
                out.visited += 1
                nxt.append((child, ccd))
        level = nxt
    # `level` holds the unexpanded nodes; each becomes an independent task
    for node, _ in level:
        tasks.append((node, targets, budget, verify_stable))
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_explore_task, tasks))
    else:
        parts = [_explore_task(t) for t in tasks]
    for part in parts:
        out.visited -= 1  # the task root was counted above
        out.merge(part)
    return out


def ipad_measure_table(p: int, g: int, budget: Budget, targets: Sequence[Ipad] | None = None,
                       threads: int = 1, verify_stable: bool = False) -> list[IpadMeasureEntry]:
    ex = explore_ipads(p, g, budget, targets, threads, verify_stable)
    return entries_from(ex, targets)


def entries_from(ex: Exploration, targets: Sequence[Ipad] | None = None) -> list[IpadMeasureEntry]:
    agg: dict[Ipad, IpadMeasureEntry] = {}
    for ipad, m, nid, _ in ex.credits:
        e = agg.setdefault(ipad, IpadMeasureEntry(ipad, Fraction(0), []))
        e.measure += m
        e.nodes.append(nid)
    for t in targets or []:
        agg.setdefault(t, IpadMeasureEntry(t, Fraction(0), []))
    unresolved = [ip for ip, _ in ex.open_nodes] + [ip for ip, _, _ in ex.pruned]
    for e in agg.values():
        e.nodes.sort(key=_id_key)
        if any(ipad_le(u, e.ipad) for u in unresolved):
            e.status = "lower-bound"
    return sorted(agg.values(), key=lambda e: (-e.measure, str(e.ipad)))


# ---- reference labels --------------------------------------------------------

def reference_labels() -> dict[tuple[int, str, str], str]:
    """Published small-group labels keyed by (order exponent, Schur class,
    IPAD), for the groups whose label these invariants pin down among
    sigma-ancestors.
    A label "a|b" marks two groups sharing the key."""
    import csv
    from importlib import resources
    text = resources.files("sigmagroups").joinpath("data/labels.csv").read_text()
    return {(int(r["order_exp"]), r["schur_class"], str(Ipad.parse(r["ipad"]))): r["label"]
            for r in csv.DictReader(text.splitlines())}


def label_of(node: TreeNode, labels: dict | None = None) -> str | None:
    if labels is None:
        labels = reference_labels()
    return labels.get((node.order_exp, node.schur_class.value, str(node.ipad)))
