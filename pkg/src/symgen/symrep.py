"""Arithmetic on symmetrically represented elements.

An element is a pair (control permutation, word in the symmetric
generators); the canonical form uses the coset-representative word of the
element's control-group coset, so a group of order thousands is handled
through permutations of the small control degree plus a short word.

Two independent engines are provided and must agree: a pure rewrite
engine (unify + canon over the derived rule system, no image needed) and
an image-backed engine (convert to a coset permutation, operate, convert
back).  per2sym and sym2per are the two converters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .perm import Perm
from .progenitor import ProgenitorSpec, RuleSet, Word, normalize_tail
from .dcenum import SymImage


class ContextError(ValueError):
    """The operation needs a capability this context does not have."""


@dataclass
class SymContext:
    """Shared context for symmetric-representation arithmetic.

    rules enables the pure rewrite engine; image enables the image-backed
    engine.  Either may be None, but not both.
    """

    spec: ProgenitorSpec
    rules: RuleSet | None = None
    image: SymImage | None = None

    def __post_init__(self):
        if self.rules is None and self.image is None:
            raise ContextError("context needs rules, an image, or both")

    @property
    def n(self) -> int:
        return self.spec.n

    def require_image(self) -> SymImage:
        if self.image is None:
            raise ContextError("operation requires the image engine")
        return self.image

    def require_rules(self) -> RuleSet:
        if self.rules is None:
            raise ContextError("operation requires the rewrite engine")
        return self.rules

    def element(self, control: Perm, word: Sequence[int],
                canonical: bool = False) -> "SymElement":
        return SymElement(self, control, tuple(word), canonical)

    def identity_element(self) -> "SymElement":
        return SymElement(self, Perm.identity(self.n), (), True)


class SymElement:
    """control * t_word, with the control in its action on generator indices."""

    __slots__ = ("ctx", "control", "word", "canonical")

    def __init__(self, ctx: SymContext, control: Perm, word: Sequence[int],
                 canonical: bool = False):
        if control.degree != ctx.n:
            raise ValueError(f"control degree {control.degree} != {ctx.n}")
        if control not in ctx.spec.control_group:
            raise ValueError("control permutation is not in the control group")
        word = tuple(word)
        for letter in word:
            if not 1 <= letter <= ctx.n:
                raise ValueError(f"word letter {letter} out of range 1..{ctx.n}")
        self.ctx = ctx
        self.control = control
        self.word = word
        self.canonical = canonical

    def __mul__(self, other: "SymElement") -> "SymElement":
        return mult(self, other)

    def __invert__(self) -> "SymElement":
        return invert_sym(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymElement):
            return NotImplemented
        return equal_sym(self, other)

    def __hash__(self):
        raise TypeError("SymElement is unhashable; compare via equal_sym")

    def __repr__(self) -> str:
        return f"SymElement({format_element(self)!r})"


def unify(a: SymElement, b: SymElement) -> tuple[Perm, Word]:
    """Gather two elements into one raw pair: pi*u . sigma*v =
    (pi*sigma) . u^sigma ++ v, with no reduction performed."""
    if a.ctx is not b.ctx and a.ctx.spec is not b.ctx.spec:
        raise ValueError("elements come from different contexts")
    sigma = b.control
    return (a.control * sigma,
            tuple(sigma.apply(i) for i in a.word) + b.word)


def canon(raw: tuple[Perm, Word], rules: RuleSet, max_steps: int = 4096,
          trace: list | None = None) -> tuple[Perm, Word]:
    """Reduce a raw pair to canonically shortest form.

    Repeatedly applies the first window whose rule-system canonical form
    is shorter (gathering the rule permutation over the prefix), then
    normalizes the surviving word to the least (length, lex) form of its
    class.  Every step strictly decreases (length, word), so termination
    is structural; max_steps is a defensive bound.  When given, trace
    collects the (length, word) measure after every rewrite step.
    """
    perm, word = raw
    word = normalize_tail(word, rules.n)
    if trace is not None:
        trace.append((len(word), word))
    steps = 0
    while True:
        if steps > max_steps:
            raise RuntimeError("canon exceeded max_steps; rule set is inconsistent")
        improved = False
        L = len(word)
        for width in range(2, min(rules.max_pattern, L) + 1):
            for start in range(L - width + 1):
                found = rules.shorter_form(word[start:start + width])
                if found is not None:
                    delta, form = found
                    prefix = tuple(delta.apply(i) for i in word[:start])
                    perm = perm * delta
                    word = normalize_tail(prefix + form + word[start + width:],
                                          rules.n)
                    improved = True
                    steps += 1
                    if trace is not None:
                        trace.append((len(word), word))
                    break
            if improved:
                break
        if not improved:
            break
    if 2 <= len(word) <= rules.max_pattern:
        delta, form = rules.canonical_form(word)
        if (len(form), form) < (len(word), word):
            perm = perm * delta
            word = form
            if trace is not None:
                trace.append((len(word), word))
    return perm, word


def canon_element(ctx: SymContext, raw: tuple[Perm, Word],
                  max_steps: int = 4096) -> SymElement:
    perm, word = canon(raw, ctx.require_rules(), max_steps)
    return SymElement(ctx, perm, word, canonical=True)


def per2sym(ctx: SymContext, p: Perm) -> SymElement:
    """Algorithm converting a coset permutation to its canonical pair.

    The image of point 1 names the coset, hence the word; stripping the
    word off leaves a permutation fixing point 1, which is identified with
    a control element by its action on the length-one coset points.
    """
    img = ctx.require_image()
    if not img.control_faithful_on_t_cosets:
        raise ContextError("control action on the coset points is not faithful")
    if p.degree != img.index:
        raise ValueError(f"degree {p.degree} != image degree {img.index}")
    word = img.cst[p.apply(1) - 1]
    residue = p
    for letter in reversed(word):
        residue = residue * img.ts[letter - 1]
    control = img.control_perm_of(residue)
    return SymElement(ctx, control, word, canonical=True)


def sym2per(ctx: SymContext, e: SymElement) -> Perm:
    """Realize an element as a permutation of the coset points."""
    img = ctx.require_image()
    p = img.realize_control(e.control)
    for letter in e.word:
        p = p * img.ts[letter - 1]
    return p


def mult(a: SymElement, b: SymElement, mode: str = "auto") -> SymElement:
    """Product of two symmetrically represented elements.

    mode "pure" uses unify + canon; mode "image" multiplies the realized
    permutations and converts back; "auto" prefers pure when rules exist.
    """
    ctx = a.ctx
    mode = _pick_mode(ctx, mode)
    if mode == "pure":
        return canon_element(ctx, unify(a, b))
    return per2sym(ctx, sym2per(ctx, a) * sym2per(ctx, b))


def invert_sym(a: SymElement, mode: str = "auto") -> SymElement:
    """Inverse: (pi*w)^-1 = pi^-1 * reverse(w)^(pi^-1), then canonical form."""
    ctx = a.ctx
    inv = ~a.control
    word = tuple(inv.apply(i) for i in reversed(a.word))
    mode = _pick_mode(ctx, mode)
    if mode == "pure":
        return canon_element(ctx, (inv, word))
    return per2sym(ctx, sym2per(ctx, SymElement(ctx, inv, word)))


def equal_sym(a: SymElement, b: SymElement, mode: str = "auto") -> bool:
    ctx = a.ctx
    mode = _pick_mode(ctx, mode)
    if mode == "pure":
        ca = a if a.canonical else canon_element(ctx, (a.control, a.word))
        cb = b if b.canonical else canon_element(ctx, (b.control, b.word))
        return ca.control == cb.control and ca.word == cb.word
    return sym2per(ctx, a) == sym2per(ctx, b)


def _pick_mode(ctx: SymContext, mode: str) -> str:
    if mode == "auto":
        return "pure" if ctx.rules is not None else "image"
    if mode == "pure":
        ctx.require_rules()
    elif mode == "image":
        ctx.require_image()
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return mode


def cenelt(ctx: SymContext, a: SymElement,
           max_elements: int = 10 ** 6) -> tuple[int, list[SymElement]]:
    """Centralizer of a symmetrically represented element, computed in the
    image and returned symmetrically represented."""
    img = ctx.require_image()
    cent = img.full_group.centralizer(sym2per(ctx, a), max_elements)
    return cent.order(), [per2sym(ctx, g) for g in cent.gens]


# -- the flattened wire form ------------------------------------------------

def flatten(e: SymElement) -> list[int]:
    """Single integer sequence: n control images then the word letters."""
    return list(e.control.images) + list(e.word)


def unflatten(ctx: SymContext, seq: Sequence[int],
              canonical: bool = False) -> SymElement:
    n = ctx.n
    if len(seq) < n:
        raise ValueError(f"sequence shorter than control degree {n}")
    return SymElement(ctx, Perm(seq[:n]), tuple(seq[n:]), canonical)


# -- text form ---------------------------------------------------------------

def format_element(e: SymElement) -> str:
    """Render as "(control-cycles | l1.l2...)" using the group's labels."""
    labels = e.ctx.spec.labels
    cycles = e.control.cycles()
    if not cycles:
        control = "id"
    else:
        control = "".join(
            "(" + ",".join(labels[k - 1] for k in c) + ")" for c in cycles)
    word = ".".join(labels[i - 1] for i in e.word) if e.word else "-"
    return f"({control} | {word})"


def parse_element(ctx: SymContext, text: str) -> SymElement:
    """Inverse of format_element (whitespace-insensitive)."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"element must be parenthesized: {text!r}")
    body = s[1:-1]
    if "|" not in body:
        raise ValueError(f"element needs a '|' separator: {text!r}")
    control_part, word_part = body.rsplit("|", 1)
    control_part = control_part.strip()
    word_part = word_part.strip()
    labels = ctx.spec.labels
    if control_part in ("id", "()", ""):
        control = Perm.identity(ctx.n)
    else:
        control = parse_label_cycles(control_part, labels)
    if word_part in ("", "-"):
        word: Word = ()
    else:
        word = tuple(ctx.spec.label_index(tok.strip())
                     for tok in word_part.split("."))
    return SymElement(ctx, control, word)


def parse_label_cycles(text: str, labels: Sequence[str]) -> Perm:
    """Parse cycle notation whose points are arbitrary labels."""
    s = "".join(text.split())
    index = {label: i + 1 for i, label in enumerate(labels)}
    n = len(labels)
    images = list(range(1, n + 1))
    seen: set[int] = set()
    for match in re.finditer(r"\(([^()]*)\)|(.)", s):
        if match.group(2) is not None:
            raise ValueError(f"unexpected {match.group(2)!r} in {text!r}")
        body = match.group(1)
        if not body:
            continue
        try:
            cycle = [index[tok] for tok in body.split(",")]
        except KeyError as exc:
            raise ValueError(f"unknown label {exc.args[0]!r} in {text!r}") from None
        for k in cycle:
            if k in seen:
                raise ValueError(f"label used twice in {text!r}")
            seen.add(k)
        for a, b in zip(cycle, cycle[1:]):
            images[a - 1] = b
        images[cycle[-1] - 1] = cycle[0]
    return Perm(images)
