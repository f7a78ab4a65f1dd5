import random

import pytest

from symgen.perm import Perm
from symgen.symrep import (ContextError, SymContext, SymElement, canon,
                           canon_element, cenelt, equal_sym, flatten,
                           format_element, invert_sym, mult, parse_element,
                           per2sym, sym2per, unflatten, unify)


def ix_map(ctx):
    return {label: i + 1 for i, label in enumerate(ctx.spec.labels)}


def rand_elements(ctx, count, seed=0):
    rng = random.Random(seed)
    full = ctx.image.full_group
    return [per2sym(ctx, full.random_element(rng)) for _ in range(count)]


def test_context_requires_an_engine(l2_19):
    with pytest.raises(ContextError):
        SymContext(l2_19.spec)


def test_element_validation(l2_19):
    ctx = l2_19
    with pytest.raises(ValueError):
        ctx.element(Perm.identity(5), ())          # wrong degree
    with pytest.raises(ValueError):
        ctx.element(Perm((2, 1, 3, 4, 5, 6)), ())  # not in the control group
    with pytest.raises(ValueError):
        ctx.element(Perm.identity(6), (7,))        # letter out of range


def test_unify_identity_cases(l2_19):
    ctx = l2_19
    e = ctx.identity_element()
    b = rand_elements(ctx, 1, seed=1)[0]
    perm, word = unify(e, b)
    assert perm == b.control and word == b.word
    # one-letter conjugation
    a = ctx.element(Perm.identity(6), (3,))
    sigma = b.control
    perm, word = unify(a, ctx.element(sigma, ()))
    assert perm == sigma and word == (sigma.apply(3),)


def test_unify_flatten_length(u3_3):
    ctx = u3_3
    a, b = rand_elements(ctx, 2, seed=2)
    perm, word = unify(a, b)
    raw = SymElement(ctx, perm, word)
    seq = flatten(raw)
    assert len(seq) == ctx.n + len(a.word) + len(b.word)
    back = unflatten(ctx, seq)
    assert back.control == perm and back.word == word


def test_flatten_roundtrip(all_contexts):
    for ctx in all_contexts.values():
        for e in rand_elements(ctx, 20, seed=3):
            back = unflatten(ctx, flatten(e), canonical=True)
            assert back.control == e.control and back.word == e.word


def test_canon_deletes_squares(l2_19):
    ctx = l2_19
    perm, word = canon((Perm.identity(6), (3, 3)), ctx.rules)
    assert perm.is_identity() and word == ()


def test_canon_empties_first_relator_word(u3_3):
    # the word b0.0.b0 names a control element: the canonical form has an
    # empty word and the control part acts like the paired swap
    ctx = u3_3
    ix = ix_map(ctx)
    perm, word = canon((Perm.identity(14), (ix["b0"], ix["0"], ix["b0"])),
                       ctx.rules)
    assert word == ()
    assert perm == ctx.spec.control_gens[2]


def test_canon_measure_strictly_decreases(all_contexts):
    for ctx in all_contexts.values():
        rng = random.Random(4)
        for _ in range(60):
            a, b = rand_elements(ctx, 2, seed=rng.randrange(10 ** 9))
            trace = []
            canon(unify(a, b), ctx.rules, trace=trace)
            for before, after in zip(trace, trace[1:]):
                assert after < before
            assert len(trace) <= 2 * (len(a.word) + len(b.word)) + 2


def test_canon_idempotent(all_contexts):
    for ctx in all_contexts.values():
        for e in rand_elements(ctx, 30, seed=5):
            c1 = canon((e.control, e.word), ctx.rules)
            assert canon(c1, ctx.rules) == c1


def test_per2sym_trivial_cases(all_contexts):
    for ctx in all_contexts.values():
        img = ctx.image
        e = per2sym(ctx, Perm.identity(img.index))
        assert e.control.is_identity() and e.word == ()
        for i in (1, ctx.n):
            e = per2sym(ctx, img.ts[i - 1])
            assert e.control.is_identity() and e.word == (i,)


def test_sym2per_trivial_cases(all_contexts):
    for ctx in all_contexts.values():
        img = ctx.image
        assert sym2per(ctx, ctx.identity_element()) == Perm.identity(img.index)
        e = ctx.element(Perm.identity(ctx.n), (2,))
        assert sym2per(ctx, e) == img.ts[1]


def test_roundtrip_is_identity(all_contexts):
    for ctx in all_contexts.values():
        rng = random.Random(6)
        full = ctx.image.full_group
        for _ in range(250):
            p = full.random_element(rng)
            assert sym2per(ctx, per2sym(ctx, p)) == p


def test_sym2per_per2sym_canonicalizes(all_contexts):
    for ctx in all_contexts.values():
        rng = random.Random(7)
        full = ctx.image.full_group
        for _ in range(100):
            e = per2sym(ctx, full.random_element(rng))
            raw = ctx.element(e.control, e.word)
            assert per2sym(ctx, sym2per(ctx, raw)).word == canon_element(
                ctx, (raw.control, raw.word)).word


def test_word_length_bounds_sampled(all_contexts):
    bounds = {"l2_19": 3, "u3_3": 2, "5sq_d6": 7}
    for name, ctx in all_contexts.items():
        for e in rand_elements(ctx, 200, seed=8):
            assert len(e.word) <= bounds[name]


def test_mult_engines_agree(all_contexts):
    for ctx in all_contexts.values():
        rng = random.Random(9)
        full = ctx.image.full_group
        for _ in range(150):
            a = per2sym(ctx, full.random_element(rng))
            b = per2sym(ctx, full.random_element(rng))
            mp = mult(a, b, mode="pure")
            mi = mult(a, b, mode="image")
            assert mp.control == mi.control and mp.word == mi.word


def test_mult_is_homomorphic(all_contexts):
    for ctx in all_contexts.values():
        rng = random.Random(10)
        full = ctx.image.full_group
        for _ in range(150):
            p, q = full.random_element(rng), full.random_element(rng)
            prod = mult(per2sym(ctx, p), per2sym(ctx, q))
            assert sym2per(ctx, prod) == p * q


def test_mult_associative_via_image(all_contexts):
    for ctx in all_contexts.values():
        for _ in range(34):
            a, b, c = rand_elements(ctx, 3, seed=11 + _)
            left = mult(mult(a, b), c)
            right = mult(a, mult(b, c))
            assert left.control == right.control and left.word == right.word


def test_mult_inverse_gives_identity(all_contexts):
    for ctx in all_contexts.values():
        for e in rand_elements(ctx, 40, seed=12):
            prod = mult(e, invert_sym(e))
            assert prod.control.is_identity() and prod.word == ()


def test_invert_sym_cases(all_contexts):
    for ctx in all_contexts.values():
        e = ctx.element(Perm.identity(ctx.n), (1,))
        inv = invert_sym(e)
        assert inv.control.is_identity() and inv.word == (1,)
        rng = random.Random(13)
        full = ctx.image.full_group
        for _ in range(150):
            a = per2sym(ctx, full.random_element(rng))
            double = invert_sym(invert_sym(a))
            assert double.control == a.control and double.word == a.word
            assert sym2per(ctx, invert_sym(a)) == ~sym2per(ctx, a)


def test_operator_sugar(u3_3):
    a, b = rand_elements(u3_3, 2, seed=14)
    prod = a * b
    assert prod == mult(a, b)
    assert ~a == invert_sym(a)
    with pytest.raises(TypeError):
        hash(a)


def test_equal_sym_modes_agree(all_contexts):
    for ctx in all_contexts.values():
        rng = random.Random(15)
        full = ctx.image.full_group
        for _ in range(150):
            p, q = full.random_element(rng), full.random_element(rng)
            a, b = per2sym(ctx, p), per2sym(ctx, q)
            assert equal_sym(a, b, mode="pure") == equal_sym(a, b, mode="image") \
                == (p == q)
        e = rand_elements(ctx, 1, seed=16)[0]
        raw = ctx.element(e.control, e.word)
        assert equal_sym(raw, canon_element(ctx, (e.control, e.word)))


def test_equal_sym_specific_relation(u3_3):
    # b0.1 and y * 1.b0 are the same element written two ways
    ctx = u3_3
    ix = ix_map(ctx)
    y = ctx.spec.control_gens[1]
    left = ctx.element(Perm.identity(14), (ix["b0"], ix["1"]))
    right = ctx.element(y, (ix["1"], ix["b0"]))
    assert equal_sym(left, right, mode="pure")
    assert equal_sym(left, right, mode="image")


def test_cenelt_identity_is_whole_group(d6_5sq):
    order, gens = cenelt(d6_5sq, d6_5sq.identity_element())
    assert order == d6_5sq.image.full_group.order() == 300
    for g in gens:
        assert isinstance(g, SymElement)


def test_cenelt_brute_force_count(u3_3):
    ctx = u3_3
    ix = ix_map(ctx)
    a = ctx.element(Perm.identity(14), (ix["b0"],))
    order, gens = cenelt(ctx, a)
    target = sym2per(ctx, a)
    count = sum(1 for e in ctx.image.full_group.elements()
                if e * target == target * e)
    assert order == count
    assert ctx.image.full_group.order() % order == 0
    for g in gens:
        prod1 = mult(g, a)
        prod2 = mult(a, g)
        assert prod1.control == prod2.control and prod1.word == prod2.word


def test_worked_product(u3_3):
    # two short elements whose product collapses back to a two-letter word;
    # the pure and image products agree and multiply correctly
    ctx = u3_3
    img = ctx.image
    ix = ix_map(ctx)
    t = ctx.spec.control_gens[2]
    a = ctx.element(t, (ix["b1"], ix["b2"]))
    pair_swap = per2sym(
        ctx, img.ts[ix["b2"] - 1] * img.ts[ix["3"] - 1] * img.ts[ix["b2"] - 1])
    assert pair_swap.word == ()
    b = ctx.element(pair_swap.control, (ix["b5"], ix["6"]))

    prod = mult(a, b, mode="pure")
    assert sym2per(ctx, prod) == sym2per(ctx, a) * sym2per(ctx, b)
    assert len(prod.word) == 2
    # the product lies in the single coset named by b2.b1 (and equivalently
    # by b1.b2, the canonical spelling)
    point = sym2per(ctx, prod).apply(1)
    assert img.follow_word((ix["b2"], ix["b1"])) == point
    assert prod.word == (ix["b1"], ix["b2"])


def test_format_parse_roundtrip(all_contexts):
    for ctx in all_contexts.values():
        for e in rand_elements(ctx, 30, seed=17):
            text = format_element(e)
            back = parse_element(ctx, text)
            assert back.control == e.control and back.word == e.word
        assert format_element(ctx.identity_element()).endswith("| -)")


def test_parse_element_errors(u3_3):
    with pytest.raises(ValueError):
        parse_element(u3_3, "no parens")
    with pytest.raises(ValueError):
        parse_element(u3_3, "(id)")
    with pytest.raises(ValueError):
        parse_element(u3_3, "(id | nope)")
    with pytest.raises(ValueError):
        parse_element(u3_3, "((b0,zz) | -)")


def test_per2sym_rejects_wrong_degree(u3_3):
    with pytest.raises(ValueError):
        per2sym(u3_3, Perm.identity(35))
