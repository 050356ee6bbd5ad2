"""Combinatorics of the tree of words: the property suite over all words
with length <= 11 and construction exponents <= 6, plus golden cases."""

import pytest

from alphacf.words import (TreeWord, WordError, as_roled, derived,
                           digit_stream, double_prime, enumerate_tree,
                           find_tree_word, frak_f, merge_runs, prime, theta,
                           word_order)

MAX_LEN, Q_CAP = 11, 6


@pytest.fixture(scope="module")
def words():
    return list(enumerate_tree(MAX_LEN, Q_CAP))


@pytest.fixture(scope="module")
def composites(words):
    return [w for w in words if len(w.letters) > 1]


def closed_form_frak_f(w):
    """Closed form of the full-branched prefix from the construction path:
    strip the trailing Theta_0 layers, then repeat the parent-plus-middle
    part of the remaining word."""
    h = 0
    z = w
    while z.path and z.path[-1] == 0:
        h += 1
        z = z.parent
    if len(z.letters) == 1:
        # w = Theta_0^h(c) = c (1 c)^h, prefix (c 1)^h
        assert h >= 1
        return (z.letters[0], 1) * h
    u = z.parent.letters
    a = z.letters[len(u): len(z.letters) - len(u)]
    return (u + a) * (h + 1)


def test_enumeration_size_and_uniqueness(words):
    assert len(words) == 133
    assert len({w.letters for w in words}) == len(words)
    for w in words:
        assert len(w.letters) <= MAX_LEN
        assert len(w.letters) % 2 == 1
        assert all(q <= Q_CAP for q in w.path)


def test_palindrome(words):
    for w in words:
        assert w.is_palindrome(), w


def test_prime_precedes_double_prime(composites):
    """v' comes strictly before v'' in the word order (both read in
    d-first role slots, as they occur inside expansions)."""
    for w in composites:
        vp, vpp = prime(w), double_prime(w)
        assert word_order((as_roled(vp, start="d"), ()),
                          (as_roled(vpp, start="d"), ())) == -1, w


def test_derived_commutation(composites):
    """The derived-word map sends children to children.  The child index is
    preserved except on the spine words whose derived word degenerates to a
    single letter, where it shifts as verified below."""
    for w in composites:
        q = w.path[-1]
        if q == -1:
            continue
        du, dw = derived(w.parent), derived(w)
        if dw == du:
            # first generation: children of the root all derive to the root
            assert len(w.letters) == 3 and w.letters[0] == 1, w
            continue
        tu = find_tree_word(du)
        qp = None
        for cand in range(-1, q + 3):
            try:
                if theta(tu, cand).letters == dw:
                    qp = cand
                    break
            except WordError:
                pass
        assert qp is not None, (w.letters, w.path, du, dw)
        if qp != q:
            # the only index shifts happen on the spine, where the derived
            # word collapses a level: a Theta_0 ladder dropping to the
            # raised-letter child, or a single-letter derived parent other
            # than the root losing its Theta_0 slot
            ladder = (q == 0 and qp == -1 and len(dw) == 1)
            slot_shift = (qp == q - 1 and len(du) == 1 and du != (1,)
                          and len(w.parent.letters) > 1)
            assert ladder or slot_shift, (w.letters, w.path, q, qp, du, dw)


def test_frak_f_even_length(composites):
    for w in composites:
        assert len(frak_f(w)) % 2 == 0, w


def test_frak_f_closed_form(composites):
    for w in composites:
        assert tuple(x for x, _ in frak_f(w)) == closed_form_frak_f(w), w


def test_word_prefix_of_frak_f_squared(composites):
    for w in composites:
        f = tuple(x for x, _ in frak_f(w))
        assert (f + f)[:len(w.letters)] == w.letters, w


def test_frak_f_minimality(words):
    """The defining property: among all prefixes p of v, the power p^inf of
    the returned prefix is minimal, and it is the longest minimizer."""
    for w in words:
        rw = w.roled()
        f = frak_f(w)
        for ell in range(1, len(rw) + 1):
            cmp = word_order(((), rw[:ell]), ((), f))
            assert cmp >= 0, (w, ell)
            if ell > len(f):
                assert cmp == 1, (w, ell)


def test_abutment_identity_on_words(composites):
    """f(Theta_q(v)) equals the reversal of (Theta_{q-1}(v))' for q >= 1:
    the word-level source of consecutive-cylinder abutment."""
    checked = 0
    for w in composites:
        q = w.path[-1]
        if q < 1:
            continue
        try:
            sibling = theta(w.parent, q - 1)
        except WordError:      # Theta_0 undefined below the root
            continue
        f = tuple(x for x, _ in frak_f(w))
        assert f == tuple(reversed(prime(sibling))), (w, sibling)
        checked += 1
    assert checked > 40


def test_frak_f_goldens():
    assert tuple(x for x, _ in frak_f(find_tree_word((1, 1, 1)))) == (1, 1)
    v = theta(find_tree_word((3, 1, 3)), 1)
    assert v.letters == (3, 1, 3, 1, 2, 1, 3, 1, 3)
    assert tuple(x for x, _ in frak_f(v)) == (3, 1, 3, 1, 2, 1)


def test_theta_explicit_forms():
    root = TreeWord.root()
    assert theta(root, -1).letters == (2,)
    assert theta(root, 2).letters == (1, 2, 1)
    assert theta(TreeWord((3,)), 0).letters == (3, 1, 3)
    assert theta(TreeWord((3,)), 2).letters == (3, 1, 2, 1, 2, 1, 3)
    v = find_tree_word((1, 2, 1))
    assert theta(v, 1).letters == (1, 2, 1) + prime(v) + (2, 1)
    with pytest.raises(WordError):
        theta(root, 0)
    with pytest.raises(WordError):
        theta(find_tree_word((1, 1, 1)), -1)


def test_find_tree_word_rejects_non_members():
    with pytest.raises(WordError):
        find_tree_word((2, 1, 1))
    with pytest.raises(WordError):
        find_tree_word((1, 1, 2))
    assert find_tree_word((2, 1, 2)).path == (-1, 0)


def test_tree_word_validation():
    with pytest.raises(WordError):
        TreeWord((1, 2))        # even length
    with pytest.raises(WordError):
        TreeWord((0, 1, 1))     # non-positive letter


def test_word_order_basics():
    # digit 2 precedes digit 1; (1,2)-words compare by first difference
    a = ((), as_roled((1, 1)))          # 1 2 1 2 ...
    b = ((), as_roled((2, 1)))          # 1 1 2 1 1 2 ...
    assert word_order(a, b) == -1
    assert word_order(b, a) == 1
    assert word_order(a, a) == 0
    # equality across different period presentations
    c = ((), as_roled((1, 1, 1, 1)))
    assert word_order(a, c) == 0


def test_digit_stream_power_merge():
    # adjacent equal roles merge in digit space
    s = digit_stream(as_roled((2, 1, 1)), ())
    assert list(s) == [1, 1, 2, 1]


def test_merge_runs():
    assert merge_runs([("a", 2), ("a", 1), ("b", 0), ("a", -1)]) == \
        [("a", 2)]
    with pytest.raises(WordError):
        merge_runs([("a", 1), ("b", -2)])


def test_derived_examples():
    assert derived(TreeWord((2, 1, 2))) == (2,)
    assert derived(find_tree_word((1, 1, 1, 1, 1))) == (2,)
    assert derived(find_tree_word((2, 1, 1, 1, 2))) == (1, 1, 1)
    with pytest.raises(WordError):
        derived((2, 1, 3))
