"""Involutory progenitors: a control group acting on n symmetric generators,
factored by relators of the form (control word) * (word in the generators).

This module turns such a specification into

  * a finite presentation suitable for coset enumeration (one extra symbol
    for the first symmetric generator, commutators encoding its stabilizer,
    and the factoring relators rewritten through orbit witness words), and

  * a rewrite-rule system over generator words, derived by closing the
    relators under control-group conjugation, cyclic rotation and
    inversion, then splitting each into pattern -> (permutation, shorter or
    equal replacement) form.  A bounded search service composes rules
    (including through inserted involution squares, t_x t_y = t_x t_k t_k
    t_y) to canonicalize short words, and every letter pair gets a direct
    rule up front.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .perm import Perm, PermGroup, word_perm
from .fpgroup import (FreeWord, Presentation, concat, invert_word, reduce_word,
                      word_conj)

Word = tuple[int, ...]  # letters are symmetric-generator indices in 1..n


class UnsupportedRelator(ValueError):
    """A factoring relator whose shape the rule deriver cannot use."""


def normalize_tail(tail: Iterable[int], n: int) -> Word:
    """Drop adjacent equal letters (the generators are involutions)."""
    out: list[int] = []
    for letter in tail:
        if not 1 <= letter <= n:
            raise ValueError(f"tail letter {letter} out of range 1..{n}")
        if out and out[-1] == letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True)
class ProgenitorSpec:
    """2^{*n} : N with factoring relators.

    control_gens give N's action on the generator indices {1..n}; the
    presentation's generators must line up with control_gens one to one.
    Each factoring relator is (word over N's generators, tail of t-indices)
    and is read as control_word * t_tail = 1.
    """

    n: int
    control_gens: tuple[Perm, ...]
    control_presentation: Presentation
    relators: tuple[tuple[FreeWord, Word], ...]
    labels: tuple[str, ...] = ()
    t_name: str = "t"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        for g in self.control_gens:
            if g.degree != self.n:
                raise ValueError("control generator degree != n")
        if len(self.control_gens) != len(self.control_presentation.names):
            raise ValueError("control generators and presentation names differ in number")
        if self.t_name in self.control_presentation.names:
            raise ValueError(f"symbol {self.t_name!r} collides with a control generator name")
        labels = self.labels or tuple(str(i) for i in range(1, self.n + 1))
        if len(labels) != self.n or len(set(labels)) != self.n:
            raise ValueError("labels must be n distinct strings")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "relators", tuple(
            (reduce_word(cw), normalize_tail(tail, self.n))
            for cw, tail in self.relators))
        group = PermGroup(self.n, self.control_gens)
        orbit, _ = group.orbit(1)
        if len(orbit) != self.n:
            raise ValueError("control group is not transitive on 1..n")
        object.__setattr__(self, "_control_group", group)

    @property
    def control_group(self) -> PermGroup:
        return self._control_group

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label) + 1
        except ValueError:
            raise ValueError(f"unknown generator label {label!r}") from None

    def control_word_perm(self, word: Sequence[int]) -> Perm:
        return word_perm(self.control_gens, word, self.n)


def relator_power_expand(pi: Perm, i: int, k: int) -> tuple[Perm, Word]:
    """Normal form of (pi * t_i)^k: gather the permutations to the left.

    Returns (pi^k, [i^(pi^(k-1)), ..., i^pi, i]).
    """
    if k < 1:
        raise ValueError("power must be >= 1")
    word = []
    p = Perm.identity(pi.degree)
    for _ in range(k):
        word.append(p.apply(i))
        p = p * pi
    return p, tuple(reversed(word))


def build_presentation(spec: ProgenitorSpec) -> Presentation:
    """Presentation of the factored progenitor over N's generators plus one
    symbol for t_1.

    Consists of N's relators, t^2, commutators of t with Schreier-word
    generators of the stabilizer of index 1, and the factoring relators
    with tail letters replaced by conjugates of t along orbit witness
    words.
    """
    m = len(spec.control_gens)
    t = m + 1
    names = spec.control_presentation.names + (spec.t_name,)
    relators: list[FreeWord] = list(spec.control_presentation.relators)
    relators.append((t, t))

    group = spec.control_group
    _, witness = group.orbit(1)

    def t_conj(i: int) -> FreeWord:
        w = witness[i]
        return word_conj((t,), w)

    for stab_word, _ in group.schreier_generators(1):
        relators.append(concat(invert_word((t,)), invert_word(stab_word),
                               (t,), stab_word))
    for control_word, tail in spec.relators:
        rel = control_word
        for i in tail:
            rel = concat(rel, t_conj(i))
        relators.append(rel)
    return Presentation(names, tuple(relators))


def default_t_words(spec: ProgenitorSpec) -> list[FreeWord]:
    """Words realizing each t_i in the built presentation's generators:
    conjugates of the t symbol along orbit witness words."""
    t = len(spec.control_gens) + 1
    _, witness = spec.control_group.orbit(1)
    return [word_conj((t,), witness[i]) for i in range(1, spec.n + 1)]


# -- rewrite rules ---------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    """t_pattern = perm * t_replacement, as an identity in the image."""

    pattern: Word
    perm: Perm
    replacement: Word

    def is_shortening(self) -> bool:
        return len(self.replacement) < len(self.pattern)


def conjugate_rule(rule: Rule, pi: Perm) -> Rule:
    """Map a rule through a control element: letters via pi, perm by conjugation."""
    return Rule(tuple(pi.apply(i) for i in rule.pattern),
                rule.perm.conj(pi),
                tuple(pi.apply(i) for i in rule.replacement))


def _relator_variants(spec: ProgenitorSpec, max_elements: int = 10 ** 6):
    """All (perm, tail) relators: originals closed under control conjugation,
    cyclic rotation and inversion."""
    seeds = []
    for control_word, tail in spec.relators:
        pi = spec.control_word_perm(control_word)
        tail = normalize_tail(tail, spec.n)
        if not tail:
            raise UnsupportedRelator("factoring relator with empty tail")
        seeds.append((pi, tail))

    elems = spec.control_group.elements(max_elements)
    pool: dict[tuple[tuple[int, ...], Word], tuple[Perm, Word]] = {}

    def add(pi: Perm, w: Word):
        w = normalize_tail(w, spec.n)
        key = (pi.images, w)
        if key in pool or not w:
            return
        pool[key] = (pi, w)
        # cyclic rotation: conjugating pi*t_a*u = 1 by pi*t_a gives
        # u*pi*t_a = pi * u^pi * t_a
        a, rest = w[0], w[1:]
        rotated = tuple(pi.apply(i) for i in rest) + (a,)
        add(pi, rotated)
        # inversion: (pi*w)^-1 = pi^-1 * reverse(w)^(pi^-1)
        inv = ~pi
        add(inv, tuple(inv.apply(i) for i in reversed(w)))

    for pi, tail in seeds:
        for nu in elems:
            add(pi.conj(nu), tuple(nu.apply(i) for i in tail))
    return list(pool.values())


def derive_rules(spec: ProgenitorSpec, max_pattern: int | None = None,
                 search_slack: int | None = None) -> "RuleSet":
    """Rewrite rules from the factoring relators.

    Each relator variant pi * t_w = 1 is split at the middle into
    t_u = pi^-1 * t_(reverse v), giving a shortening rule when |u| > |v|
    and a swap rule when equal.  The full set is closed under control
    conjugation by construction.
    """
    rules: dict[tuple[Word, tuple[int, ...], Word], Rule] = {}
    for pi, w in _relator_variants(spec):
        length = len(w)
        a = (length + 1) // 2
        pattern, v = w[:a], w[a:]
        rule = Rule(pattern, ~pi, tuple(reversed(v)))
        rules[(rule.pattern, rule.perm.images, rule.replacement)] = rule
    ordered = sorted(rules.values(),
                     key=lambda r: (len(r.pattern), r.pattern, r.replacement,
                                    r.perm.images))
    widest = max((len(r.pattern) for r in ordered), default=2)
    if max_pattern is None:
        # wide enough to canonicalize whole products of two short elements
        max_pattern = max(4, 2 * widest - 1) if spec.n <= 4 else max(4, widest + 1)
    if search_slack is None:
        search_slack = 2 if widest <= 2 else 4
    ruleset = RuleSet(spec, tuple(ordered), max_pattern, search_slack)
    ruleset.bootstrap_pairs()
    return ruleset


class RuleSet:
    """Base rules plus lazy rewrite services over the rule system.

    A reachability move is a rule application, or an involution square
    t_k t_k inserted and immediately part-consumed by a rule (the standard
    manual derivation step); intermediate words may grow ``slack`` letters
    above the query.  Two services, both memoized:

      shorter_form(word)   -- first strictly shorter reachable form, if any
      canonical_form(word) -- least (length, lex) reachable form

    bootstrap_pairs registers a direct rule for every letter pair,
    retrying unchanged pairs one level deeper and spreading any find over
    its control orbit, so that the badly hidden pair identities (the ones
    whose manual derivations run through long intermediate words) become
    single moves afterwards.
    """

    def __init__(self, spec: ProgenitorSpec, rules: tuple[Rule, ...],
                 max_pattern: int, slack: int = 2):
        self.spec = spec
        self.rules = rules
        self.max_pattern = max_pattern
        self.slack = slack
        self.n = spec.n
        self._by_pattern: dict[Word, list[Rule]] = {}
        for r in rules:
            self._by_pattern.setdefault(r.pattern, []).append(r)
        self.pattern_lengths = sorted({len(p) for p in self._by_pattern})
        self._canon_cache: dict[Word, tuple[Perm, Word]] = {}
        self._shorter_cache: dict[Word, tuple[Perm, Word] | None] = {}

    def rules_for(self, pattern: Word) -> list[Rule]:
        return self._by_pattern.get(pattern, [])

    def _register(self, rule: Rule) -> bool:
        bucket = self._by_pattern.setdefault(rule.pattern, [])
        if rule in bucket:
            return False
        bucket.append(rule)
        return True

    def bootstrap_pairs(self):
        """Derive direct rules for every two-letter word.

        Pass one canonicalizes each pair at the standard depth and keeps
        the changed ones as direct rules.  Pairs that did not move are
        either genuinely canonical or hiding behind a long derivation, so
        pass two retries them one level deeper and propagates anything it
        finds to the whole control orbit by conjugation.  A final sweep
        refreshes every pair's direct rule against the enriched system.
        """
        pairs = [(a, b)
                 for a in range(1, self.n + 1)
                 for b in range(1, self.n + 1) if a != b]
        stuck = []
        for pair in pairs:
            delta, form = self._search(pair, 2 + self.slack, exhaustive=True)
            if form != pair:
                self._register(Rule(pair, delta, form))
            else:
                stuck.append(pair)
        self.pattern_lengths = sorted({len(p) for p in self._by_pattern})
        elems = None
        for pair in stuck:
            delta, form = self._search(pair, 3 + self.slack, exhaustive=True)
            if form == pair:
                continue
            rule = Rule(pair, delta, form)
            if elems is None:
                elems = self.spec.control_group.elements()
            for nu in elems:
                self._register(conjugate_rule(rule, nu))
        self.pattern_lengths = sorted({len(p) for p in self._by_pattern})
        self._canon_cache.clear()
        self._shorter_cache.clear()
        for pair in pairs:
            delta, form = self.canonical_form(pair)
            if form != pair:
                self._register(Rule(pair, delta, form))
        self.pattern_lengths = sorted({len(p) for p in self._by_pattern})
        self._canon_cache.clear()
        self._shorter_cache.clear()

    def canonical_form(self, word: Word) -> tuple[Perm, Word]:
        """Least reachable form of a short word, with its gathered perm."""
        word = normalize_tail(word, self.n)
        if word in self._canon_cache:
            return self._canon_cache[word]
        if not word:
            return Perm.identity(self.n), ()
        result = self._search(word, len(word) + self.slack, exhaustive=True)
        self._canon_cache[word] = result
        return result

    def shorter_form(self, word: Word) -> tuple[Perm, Word] | None:
        """A strictly shorter reachable form, or None; stops at the first
        length drop rather than hunting for the least form."""
        word = normalize_tail(word, self.n)
        if word in self._shorter_cache:
            return self._shorter_cache[word]
        if len(word) < 2:
            return None
        delta, form = self._search(word, len(word) + self.slack,
                                   exhaustive=False)
        result = (delta, form) if len(form) < len(word) else None
        self._shorter_cache[word] = result
        return result

    def _search(self, word: Word, limit: int,
                exhaustive: bool) -> tuple[Perm, Word]:
        # BFS over word states; delta transports t_query = delta * t_state.
        # Any two derivations of the same state carry the same delta (the
        # residue is determined in the image), so first-found wins.
        best: dict[Word, Perm] = {word: Perm.identity(self.n)}
        frontier = [word]
        while frontier:
            nxt: list[Word] = []
            for state in frontier:
                delta = best[state]
                for new_state, step in self._moves(state, limit):
                    if new_state not in best:
                        gathered = delta * step
                        if not exhaustive and len(new_state) < len(word):
                            return gathered, new_state
                        best[new_state] = gathered
                        nxt.append(new_state)
            frontier = nxt
        winner = min(best, key=lambda w: (len(w), w))
        return best[winner], winner

    def _apply_at(self, state: Word, q: int, width: int, out: list):
        """Apply every rule matching state[q:q+width], gathering the rule
        permutation over the prefix: t_x t_pat t_y = pi t_(x^pi) t_rep t_y."""
        window = state[q:q + width]
        for rule in self._by_pattern.get(window, ()):
            prefix = tuple(rule.perm.apply(i) for i in state[:q])
            new_word = normalize_tail(
                prefix + rule.replacement + state[q + width:], self.n)
            out.append((new_word, rule.perm))

    def _moves(self, state: Word, limit: int):
        out: list[tuple[Word, Perm]] = []
        L = len(state)
        for width in self.pattern_lengths:
            if width > L:
                break
            for q in range(L - width + 1):
                self._apply_at(state, q, width, out)
        if L + 2 <= limit:
            # insert t_k t_k at position p and consume it at once with a
            # rule whose window overlaps an inserted letter; unconsumed
            # squares would cancel right back, so they are never kept
            for p in range(L + 1):
                for k in range(1, self.n + 1):
                    grown = state[:p] + (k, k) + state[p:]
                    for width in self.pattern_lengths:
                        lo = max(0, p - width + 1)
                        hi = min(p + 1, len(grown) - width)
                        for q in range(lo, hi + 1):
                            self._apply_at(grown, q, width, out)
        return out
