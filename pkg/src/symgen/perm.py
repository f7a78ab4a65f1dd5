"""Permutations on {1..degree} and small permutation-group machinery.

Everything downstream (coset actions, control groups, rewrite rules) is
built on two types: an immutable ``Perm`` stored as an image tuple, and a
``PermGroup`` backed by a deterministic stabilizer chain.  The convention
throughout is the right action: in ``p * q`` the permutation ``p`` acts
first, so ``(p * q)(k) == q(p(k))`` and conjugation is ``p.conj(q) ==
~q * p * q``.

Groups here are desk-scale (orders up to a few tens of thousands), so the
stabilizer chain is the plain deterministic Schreier-Sims construction and
set stabilizers / centralizers are found by filtered element enumeration
behind an explicit size bound.  No randomization anywhere: two builds of
the same group produce identical transversals, orders and element
sequences.

Perm values are immutable.  A PermGroup builds its chain and caches lazily
on first use, so share instances across threads only after forcing that
(e.g. by calling order()); afterwards reads are safe everywhere.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence


class GroupTooLarge(ValueError):
    """Raised when an exhaustive-enumeration operation exceeds its bound."""


class IdentificationError(ValueError):
    """Raised when identify_by_action cannot produce a unique answer."""


class Perm:
    """A permutation of {1..degree}, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @staticmethod
    def identity(degree: int) -> "Perm":
        if degree < 1:
            raise ValueError("degree must be >= 1")
        return Perm(range(1, degree + 1))

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, k: int) -> int:
        if not 1 <= k <= len(self.images):
            raise ValueError(f"point {k} out of range 1..{len(self.images)}")
        return self.images[k - 1]

    __call__ = apply

    def __mul__(self, other: "Perm") -> "Perm":
        # self acts first: k^(self*other) == (k^self)^other
        if len(self.images) != len(other.images):
            raise ValueError(
                f"degree mismatch: {len(self.images)} != {len(other.images)}")
        oi = other.images
        return Perm(tuple(oi[i - 1] for i in self.images))

    def __invert__(self) -> "Perm":
        inv = [0] * len(self.images)
        for k, i in enumerate(self.images, start=1):
            inv[i - 1] = k
        return Perm(inv)

    def __pow__(self, n: int) -> "Perm":
        if n < 0:
            return (~self) ** (-n)
        result = Perm.identity(len(self.images))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self, other: "Perm") -> "Perm":
        """Conjugate self by other: ~other * self * other."""
        return ~other * self * other

    def commutes_with(self, other: "Perm") -> bool:
        return self * other == other * self

    def is_identity(self) -> bool:
        return all(i == k for k, i in enumerate(self.images, start=1))

    def order(self) -> int:
        n = 1
        for cycle in self.cycles():
            n = math.lcm(n, len(cycle))
        return n

    def moved(self) -> list[int]:
        return [k for k, i in enumerate(self.images, start=1) if i != k]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, sorted."""
        seen = set()
        out = []
        for start in range(1, len(self.images) + 1):
            if start in seen or self.images[start - 1] == start:
                continue
            cycle = [start]
            seen.add(start)
            k = self.images[start - 1]
            while k != start:
                cycle.append(k)
                seen.add(k)
                k = self.images[k - 1]
            out.append(tuple(cycle))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm({cycles_str(self)!r}, degree={len(self.images)})"


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse cycle notation like "(1,2,3)(4,5)" into a Perm.

    Whitespace-insensitive; "()" or the empty string is the identity.
    Points must lie in 1..degree and may appear at most once.
    """
    s = "".join(text.split())
    images = list(range(1, degree + 1))
    seen: set[int] = set()
    pos = 0
    while pos < len(s):
        if s[pos] != "(":
            raise ValueError(f"expected '(' at position {pos} in {text!r}")
        end = s.find(")", pos)
        if end < 0:
            raise ValueError(f"unbalanced '(' in {text!r}")
        body = s[pos + 1:end]
        pos = end + 1
        if not body:
            continue
        try:
            cycle = [int(tok) for tok in body.split(",")]
        except ValueError:
            raise ValueError(f"bad cycle {body!r} in {text!r}") from None
        for k in cycle:
            if not 1 <= k <= degree:
                raise ValueError(f"point {k} out of range 1..{degree}")
            if k in seen:
                raise ValueError(f"point {k} repeated in {text!r}")
            seen.add(k)
        for a, b in zip(cycle, cycle[1:]):
            images[a - 1] = b
        images[cycle[-1] - 1] = cycle[0]
    return Perm(images)


def cycles_str(p: Perm) -> str:
    """Cycle notation with fixed points omitted; identity prints as "()"."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)


def word_perm(gens: Sequence[Perm], letters: Iterable[int], degree: int | None = None) -> Perm:
    """Product of generators along a word of signed 1-based indices.

    Positive letter k means gens[k-1], negative means its inverse.
    """
    if degree is None:
        if not gens:
            raise ValueError("cannot infer degree from empty generator list")
        degree = gens[0].degree
    result = Perm.identity(degree)
    for letter in letters:
        if letter == 0 or abs(letter) > len(gens):
            raise ValueError(f"letter {letter} out of range for {len(gens)} generators")
        g = gens[abs(letter) - 1]
        result = result * (g if letter > 0 else ~g)
    return result


class _Level:
    __slots__ = ("point", "orbit", "transversal", "gens")

    def __init__(self, point, orbit, transversal, gens):
        self.point = point            # base point
        self.orbit = orbit            # points in BFS discovery order
        self.transversal = transversal  # point -> Perm u with point^u == that point
        self.gens = gens              # generators of this level's group


class PermGroup:
    """Permutation group with a lazily built deterministic stabilizer chain.

    Base points are the ascending moved points of each level's generators,
    orbits are explored breadth-first with generators in their given order,
    so orders, membership tests, transversals and element enumeration are
    all reproducible.
    """

    def __init__(self, degree: int, generators: Iterable[Perm] = ()):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.degree = degree
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != group degree {degree}")
        self.gens = gens
        self._chain: list[_Level] | None = None
        self._order: int | None = None
        self._elements: tuple[Perm, ...] | None = None
        self._probe_tables: dict[tuple[int, ...], dict[tuple[int, ...], Perm]] = {}

    # -- chain ---------------------------------------------------------

    def _orbit_transversal(self, point: int, gens: Sequence[Perm]):
        trans = {point: Perm.identity(self.degree)}
        orbit = [point]
        for a in orbit:
            ua = trans[a]
            for g in gens:
                b = g.images[a - 1]
                if b not in trans:
                    trans[b] = ua * g
                    orbit.append(b)
        return orbit, trans

    @property
    def chain(self) -> list[_Level]:
        if self._chain is None:
            levels = []
            gens = [g for g in self.gens if not g.is_identity()]
            while gens:
                point = min(min(g.moved()) for g in gens)
                orbit, trans = self._orbit_transversal(point, gens)
                level = _Level(point, orbit, trans, gens)
                levels.append(level)
                # Schreier generators of the stabilizer, deduplicated
                seen: set[tuple[int, ...]] = set()
                nxt = []
                for a in orbit:
                    ua = trans[a]
                    for g in gens:
                        b = g.images[a - 1]
                        sg = ua * g * ~trans[b]
                        if not sg.is_identity() and sg.images not in seen:
                            seen.add(sg.images)
                            nxt.append(sg)
                gens = nxt
            self._chain = levels
        return self._chain

    def order(self) -> int:
        if self._order is None:
            n = 1
            for level in self.chain:
                n *= len(level.orbit)
            self._order = n
        return self._order

    def __contains__(self, p: Perm) -> bool:
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} != {self.degree}")
        r = p
        for level in self.chain:
            b = r.images[level.point - 1]
            if b not in level.transversal:
                return False
            r = r * ~level.transversal[b]
        return r.is_identity()

    def elements(self, max_elements: int = 10 ** 6) -> tuple[Perm, ...]:
        """All elements in a deterministic order; the identity comes first."""
        if self._elements is None:
            if self.order() > max_elements:
                raise GroupTooLarge(
                    f"group order {self.order()} exceeds bound {max_elements}")
            elems = [Perm.identity(self.degree)]
            for level in reversed(self.chain):
                elems = [e * level.transversal[pt]
                         for e in elems for pt in level.orbit]
            self._elements = tuple(elems)
        return self._elements

    def random_element(self, rng) -> Perm:
        g = Perm.identity(self.degree)
        for level in reversed(self.chain):
            g = g * level.transversal[rng.choice(level.orbit)]
        return g

    # -- orbits and stabilizers -----------------------------------------

    def orbit(self, k: int) -> tuple[list[int], dict[int, tuple[int, ...]]]:
        """BFS orbit of k and witness words (1-based generator indices).

        The witness word for a point p multiplies out to a group element
        mapping k to p.
        """
        if not 1 <= k <= self.degree:
            raise ValueError(f"point {k} out of range 1..{self.degree}")
        words: dict[int, tuple[int, ...]] = {k: ()}
        orbit = [k]
        for a in orbit:
            for gi, g in enumerate(self.gens, start=1):
                b = g.images[a - 1]
                if b not in words:
                    words[b] = words[a] + (gi,)
                    orbit.append(b)
        return orbit, words

    def orbits(self) -> list[list[int]]:
        """All orbits on {1..degree}, ordered by least point."""
        seen: set[int] = set()
        out = []
        for k in range(1, self.degree + 1):
            if k in seen:
                continue
            orb, _ = self.orbit(k)
            seen.update(orb)
            out.append(orb)
        return out

    def schreier_generators(self, k: int) -> list[tuple[tuple[int, ...], Perm]]:
        """(word, perm) pairs generating the stabilizer of k.

        Words are over the group's own generators (signed 1-based letters);
        the list is deduplicated by permutation and filtered to a small
        generating set, in deterministic order.
        """
        orbit, words = self.orbit(k)
        out: list[tuple[tuple[int, ...], Perm]] = []
        sub = PermGroup(self.degree)
        for a in orbit:
            wa = words[a]
            for gi, g in enumerate(self.gens, start=1):
                b = g.images[a - 1]
                word = wa + (gi,) + tuple(-x for x in reversed(words[b]))
                perm = word_perm(self.gens, word, self.degree)
                if perm.is_identity() or perm in sub:
                    continue
                out.append((_free_reduce_word(word), perm))
                sub = PermGroup(self.degree, sub.gens + (perm,))
        return out

    def point_stabilizer(self, k: int) -> "PermGroup":
        if not 1 <= k <= self.degree:
            raise ValueError(f"point {k} out of range 1..{self.degree}")
        if all(g.images[k - 1] == k for g in self.gens):
            return PermGroup(self.degree, self.gens)
        gens = tuple(p for _, p in self.schreier_generators(k))
        return PermGroup(self.degree, gens)

    def _span_filter(self, perms: Iterable[Perm]) -> "PermGroup":
        kept: list[Perm] = []
        sub = PermGroup(self.degree)
        for q in perms:
            if q.is_identity() or q in sub:
                continue
            kept.append(q)
            sub = PermGroup(self.degree, tuple(kept))
        return sub

    def setwise_stabilizer(self, points: Iterable[int],
                           max_elements: int = 10 ** 6) -> "PermGroup":
        """Subgroup preserving the given point set, by filtered enumeration."""
        pts = frozenset(points)
        if not pts:
            raise ValueError("point set must be nonempty")
        for k in pts:
            if not 1 <= k <= self.degree:
                raise ValueError(f"point {k} out of range 1..{self.degree}")
        matching = (g for g in self.elements(max_elements)
                    if all(g.images[k - 1] in pts for k in pts))
        return self._span_filter(matching)

    def centralizer(self, p: Perm, max_elements: int = 10 ** 6) -> "PermGroup":
        """Centralizer of p, by filtered enumeration (p must lie in the group)."""
        if p not in self:
            raise ValueError("element is not in the group")
        matching = (g for g in self.elements(max_elements) if g * p == p * g)
        return self._span_filter(matching)

    # -- transversals and identification ---------------------------------

    def is_subgroup(self, h: "PermGroup") -> bool:
        return h.degree == self.degree and all(g in self for g in h.gens)

    def right_transversal(self, h: "PermGroup",
                          max_elements: int = 10 ** 6) -> list[Perm]:
        """One representative per right coset h*x.

        The first entry is the identity; every other coset is represented
        by its minimal element (smallest image tuple), and the list is
        sorted by that key.  Entirely deterministic.
        """
        if not self.is_subgroup(h):
            raise ValueError("h is not a subgroup")
        h_elems = h.elements(max_elements)

        def coset_min(x: Perm) -> Perm:
            return min((e * x for e in h_elems), key=lambda q: q.images)

        identity = Perm.identity(self.degree)
        reps: dict[tuple[int, ...], Perm] = {}
        root = coset_min(identity)
        reps[root.images] = root
        queue = [identity]
        for x in queue:
            for g in self.gens:
                y = x * g
                m = coset_min(y)
                if m.images not in reps:
                    reps[m.images] = m
                    queue.append(y)
        others = sorted((m for key, m in reps.items() if key != root.images),
                        key=lambda q: q.images)
        return [identity] + others

    def identify_by_action(self, candidate: Perm, probes: Sequence[int]) -> Perm:
        """The unique group element agreeing with candidate on the probe points.

        Raises IdentificationError if the action on the probes is not
        faithful, or if no element matches.
        """
        key = tuple(probes)
        table = self._probe_tables.get(key)
        if table is None:
            table = {}
            for g in self.elements():
                sig = tuple(g.images[k - 1] for k in key)
                if sig in table and table[sig] != g:
                    raise IdentificationError(
                        "group action on probe points is not faithful")
                table[sig] = g
            self._probe_tables[key] = table
        sig = tuple(candidate.images[k - 1] for k in key)
        try:
            return table[sig]
        except KeyError:
            raise IdentificationError(
                "candidate does not match any group element on the probes") from None


def _free_reduce_word(word: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def closure_order(gens: Sequence[Perm], limit: int = 10 ** 6) -> int:
    """Order of the generated group by plain product closure (test oracle)."""
    if not gens:
        return 1
    degree = gens[0].degree
    seen = {Perm.identity(degree).images}
    queue = [Perm.identity(degree)]
    for x in queue:
        for g in gens:
            y = x * g
            if y.images not in seen:
                seen.add(y.images)
                queue.append(y)
                if len(seen) > limit:
                    raise GroupTooLarge(f"closure exceeds {limit} elements")
    return len(seen)
