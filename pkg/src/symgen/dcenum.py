"""Finite image construction and double coset enumeration.

build_image runs the coset enumeration for a progenitor spec, realizes the
symmetric generators as permutations on the coset points, and builds the
table of canonical coset-representative words (breadth-first, shortest
then lexicographically least).  double_cosets then reads the collapsed
Cayley graph straight off the image: nodes are orbits of the control group
on coset points, sized |N| / |N^(w)|, with one edge entry per orbit of the
coset stabilizer on the symmetric generators.

Construction is single-threaded; a built SymImage is effectively immutable
and distinct images can be processed concurrently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .perm import Perm, PermGroup, IdentificationError
from .fpgroup import FreeWord, coset_action, todd_coxeter, word_image
from .progenitor import ProgenitorSpec, Word, build_presentation, default_t_words


class ImageError(ValueError):
    """The enumerated image violates a structural requirement."""


@dataclass
class SymImage:
    """Coset-space realization of a factored progenitor.

    ts[i-1] is the image of the i-th symmetric generator as a permutation
    of the coset points {1..index}; cst[c-1] is the canonical generator
    word reaching coset point c from point 1; control_image is the image
    of the control group on coset points.
    """

    spec: ProgenitorSpec
    index: int
    gens_image: tuple[Perm, ...]
    ts: tuple[Perm, ...]
    control_image: PermGroup
    cst: tuple[Word, ...]
    control_faithful_on_t_cosets: bool
    _full_group: PermGroup | None = field(default=None, repr=False)
    _t_points: tuple[int, ...] | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def full_group(self) -> PermGroup:
        if self._full_group is None:
            self._full_group = PermGroup(self.index, self.gens_image)
        return self._full_group

    @property
    def t_points(self) -> tuple[int, ...]:
        """Coset point of each length-one representative N*t_i."""
        if self._t_points is None:
            self._t_points = tuple(t.apply(1) for t in self.ts)
        return self._t_points

    def follow_word(self, word: Sequence[int], start: int = 1) -> int:
        point = start
        for letter in word:
            point = self.ts[letter - 1].apply(point)
        return point

    def control_perm_of(self, g: Perm) -> Perm:
        """Pull a coset permutation fixing point 1 back to the action on
        generator indices, reading it off the length-one coset points."""
        points = self.t_points
        point_index = {p: i for i, p in enumerate(points, start=1)}
        images = []
        for p in points:
            q = g.apply(p)
            if q not in point_index:
                raise IdentificationError(
                    "permutation does not preserve the length-one coset points")
            images.append(point_index[q])
        pulled = Perm(images)
        if pulled not in self.spec.control_group:
            raise IdentificationError(
                "action on length-one cosets is not induced by the control group")
        return pulled

    def realize_control(self, nu: Perm) -> Perm:
        """Image of a control element as a permutation of coset points:
        coset of word w goes to the coset of w^nu."""
        if nu.degree != self.n:
            raise ValueError(f"control degree {nu.degree} != {self.n}")
        if nu not in self.spec.control_group:
            raise ValueError("permutation is not in the control group")
        images = [self.follow_word(tuple(nu.apply(i) for i in self.cst[c - 1]))
                  for c in range(1, self.index + 1)]
        return Perm(images)


def build_image(spec: ProgenitorSpec, t_words: Sequence[FreeWord] | None = None,
                max_cosets: int = 10 ** 6) -> SymImage:
    """Enumerate the image and realize the symmetric generators.

    t_words may give explicit words (over the built presentation's
    generators) realizing each symmetric generator; by default they are
    conjugates of the t symbol along orbit witness words.
    """
    pres = build_presentation(spec)
    m = len(spec.control_gens)
    table = todd_coxeter(pres, [(i,) for i in range(1, m + 1)], max_cosets)
    gens_image = tuple(coset_action(table))
    if t_words is None:
        t_words = default_t_words(spec)
    if len(t_words) != spec.n:
        raise ValueError(f"expected {spec.n} t_words, got {len(t_words)}")
    ts = tuple(word_image(gens_image, w) for w in t_words)

    for i, t in enumerate(ts, start=1):
        if t.is_identity() or not (t * t).is_identity():
            raise ImageError(f"image of generator {i} does not have order 2")
    if len(set(ts)) != spec.n:
        raise ImageError("images of the symmetric generators are not distinct")
    for g36, gn in zip(gens_image, spec.control_gens):
        for i in range(1, spec.n + 1):
            if ts[i - 1].conj(g36) != ts[gn.apply(i) - 1]:
                raise ImageError(
                    "conjugation by the control image does not permute the "
                    "generators as the control action does")

    control_image = PermGroup(table.index, gens_image[:m])
    faithful = control_image.order() == spec.control_group.order()
    cst = _build_cst(ts, table.index)
    img = SymImage(spec, table.index, gens_image, ts, control_image,
                   cst, faithful)
    return img


def _build_cst(ts: Sequence[Perm], index: int) -> tuple[Word, ...]:
    cst: dict[int, Word] = {1: ()}
    queue = [1]
    for point in queue:
        word = cst[point]
        for i, t in enumerate(ts, start=1):
            target = t.apply(point)
            if target not in cst:
                cst[target] = word + (i,)
                queue.append(target)
    if len(cst) != index:
        raise ImageError(
            "symmetric generators do not reach every coset: "
            f"{len(cst)} of {index}")
    return tuple(cst[c] for c in range(1, index + 1))


def build_cst(img: SymImage) -> tuple[Word, ...]:
    """Canonical word per coset point: BFS over the generators in ascending
    index order, so each coset gets its shortest, lexicographically least
    reaching word."""
    return _build_cst(img.ts, img.index)


@dataclass
class DoubleCoset:
    rep: Word
    points: tuple[int, ...]
    stabilizer: PermGroup      # coset stabilizer, in the degree-n action
    size: int
    edges: list[tuple[int, int, int]]  # (orbit rep t-index, orbit size, target node)


@dataclass
class CollapsedGraph:
    spec: ProgenitorSpec
    index: int
    control_order: int
    nodes: list[DoubleCoset]

    def node_sizes(self) -> list[int]:
        return [node.size for node in self.nodes]


def double_cosets(img: SymImage) -> CollapsedGraph:
    """Collapsed Cayley graph of the image over the control group.

    Nodes appear in breadth-first discovery order from the trivial double
    coset; each node's representative is the least (length, lex) canonical
    word among its coset points.
    """
    N = img.spec.control_group
    n_order = N.order()

    point_orbit: dict[int, int] = {}
    orbits: list[tuple[int, ...]] = []
    for start in range(1, img.index + 1):
        if start in point_orbit:
            continue
        orb, _ = img.control_image.orbit(start)
        oid = len(orbits)
        orbits.append(tuple(sorted(orb)))
        for p in orb:
            point_orbit[p] = oid

    reps: list[Word] = []
    for orb in orbits:
        reps.append(min((img.cst[p - 1] for p in orb), key=lambda w: (len(w), w)))

    # breadth-first order over the collapsed graph, starting at the node
    # containing coset point 1
    order: list[int] = [point_orbit[1]]
    node_id = {point_orbit[1]: 0}
    nodes: list[DoubleCoset] = []
    cursor = 0
    while cursor < len(order):
        oid = order[cursor]
        cursor += 1
        rep = reps[oid]
        rep_point = img.follow_word(rep)
        stab_image = img.control_image.point_stabilizer(rep_point)
        stab = PermGroup(img.n, tuple(img.control_perm_of(g)
                                      for g in stab_image.gens))
        size = len(orbits[oid])
        if size * stab.order() != n_order:
            raise ImageError(
                f"orbit size {size} x stabilizer {stab.order()} != |N| = {n_order}")
        edges: list[tuple[int, int, int]] = []
        for t_orbit in stab.orbits():
            t_rep = t_orbit[0]
            target_point = img.ts[t_rep - 1].apply(rep_point)
            target_oid = point_orbit[target_point]
            if target_oid not in node_id:
                node_id[target_oid] = len(order)
                order.append(target_oid)
            edges.append((t_rep, len(t_orbit), node_id[target_oid]))
        nodes.append(DoubleCoset(rep, orbits[oid], stab, size, edges))
    if len(nodes) != len(orbits):
        raise ImageError("collapsed graph is not connected from the trivial coset")
    return CollapsedGraph(img.spec, img.index, n_order, nodes)


def _word_label(spec: ProgenitorSpec, word: Word) -> str:
    if not word:
        return "*"
    return ".".join(spec.labels[i - 1] for i in word)


def emit_graph(graph: CollapsedGraph, format: str = "dot") -> str:
    """Deterministic DOT or JSON text for a collapsed Cayley graph.

    DOT output is an undirected graph with one line per node pair; the
    tail and head labels give the edge multiplicities seen from each side,
    and loops carry their orbit sizes joined by '+'.
    """
    if format == "json":
        payload = {
            "index": graph.index,
            "control_order": graph.control_order,
            "nodes": [
                {
                    "rep": [graph.spec.labels[i - 1] for i in node.rep],
                    "size": node.size,
                    "stabilizer_order": node.stabilizer.order(),
                    "edges": [
                        {"orbit_rep": graph.spec.labels[t - 1],
                         "orbit_size": size, "target": target}
                        for t, size, target in node.edges
                    ],
                }
                for node in graph.nodes
            ],
        }
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if format != "dot":
        raise ValueError(f"unknown format {format!r}")

    lines = ["graph collapsed_cayley {", "  rankdir=LR;"]
    for i, node in enumerate(graph.nodes):
        label = f"[{_word_label(graph.spec, node.rep)}] / {node.size}"
        lines.append(f'  n{i} [label="{label}"];')
    # collect multiplicities per unordered node pair
    toward: dict[tuple[int, int], int] = {}
    loops: dict[int, list[int]] = {}
    for i, node in enumerate(graph.nodes):
        for _, size, target in node.edges:
            if target == i:
                loops.setdefault(i, []).append(size)
            else:
                toward[(i, target)] = toward.get((i, target), 0) + size
    for i in range(len(graph.nodes)):
        if i in loops:
            label = "+".join(str(s) for s in sorted(loops[i]))
            lines.append(f'  n{i} -- n{i} [label="{label}"];')
        for j in range(i + 1, len(graph.nodes)):
            out_ij = toward.get((i, j))
            out_ji = toward.get((j, i))
            if out_ij is None and out_ji is None:
                continue
            lines.append(
                f'  n{i} -- n{j} [taillabel="{out_ij or 0}", '
                f'headlabel="{out_ji or 0}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def verify_relators_in_image(spec: ProgenitorSpec, img: SymImage) -> list[str]:
    """Check every factoring relator in the image; returns a report line per
    relator, raising ImageError on the first failure.

    Each relator control_word * t_tail = 1 is checked directly, and the
    derived witness identity is checked too: the product of the tail
    generators must act by conjugation on the generators exactly as the
    inverse of the control part acts on indices.
    """
    report = []
    for k, (control_word, tail) in enumerate(spec.relators, start=1):
        pi = spec.control_word_perm(control_word)
        g = img.realize_control(pi)
        for i in tail:
            g = g * img.ts[i - 1]
        if not g.is_identity():
            raise ImageError(f"relator {k} does not evaluate to the identity")
        tail_product = Perm.identity(img.index)
        for i in tail:
            tail_product = tail_product * img.ts[i - 1]
        conj_action = img.control_perm_of(tail_product) if not tail_product.is_identity() \
            else Perm.identity(img.n)
        if conj_action != ~pi:
            raise ImageError(f"relator {k}: tail word does not act as the "
                             "inverse control part")
        report.append(
            f"relator {k}: control * t[{'.'.join(spec.labels[i-1] for i in tail)}] = 1; "
            f"tail acts on the generators as {conj_action!r}")
    return report
