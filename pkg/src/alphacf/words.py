"""Combinatorics of the tree of synchronization words.

A tree word v = c1 d1 c2 ... d_{s-1} c_s has odd length and alternating
letter roles.  The tree is generated from the root word 1 by the child
operators Theta_q; each TreeWord produced here remembers its construction
path, which certifies membership and makes the parent decomposition
v = u . v'' available.

Words and prefixes that occur in order comparisons are handled as
(letter, role) pairs, because the same letter list can occupy different
role positions (the period word v' always starts in a d slot).
"""


class WordError(Exception):
    pass


class TreeWord:
    __slots__ = ("letters", "path", "parent")

    def __init__(self, letters, path=(), parent=None):
        letters = tuple(letters)
        if not letters or len(letters) % 2 == 0:
            raise WordError("tree words have odd length")
        if any(x < 1 for x in letters):
            raise WordError("letters are positive")
        self.letters = letters
        self.path = tuple(path)
        self.parent = parent

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __eq__(self, other):
        if isinstance(other, TreeWord):
            return self.letters == other.letters
        if isinstance(other, tuple):
            return self.letters == other
        return NotImplemented

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"TreeWord({' '.join(map(str, self.letters))})"

    def __str__(self):
        return " ".join(map(str, self.letters))

    @classmethod
    def root(cls):
        return cls((1,))

    @classmethod
    def parse(cls, text):
        return cls(tuple(int(x) for x in text.split()))

    def is_palindrome(self):
        return self.letters == self.letters[::-1]

    def c_letters(self):
        return self.letters[0::2]

    def d_letters(self):
        return self.letters[1::2]

    def roled(self):
        return as_roled(self.letters)

    def sum_letters(self):
        return sum(self.letters)


def as_roled(letters, start="c"):
    flip = {"c": "d", "d": "c"}
    out = []
    role = start
    for x in letters:
        out.append((x, role))
        role = flip[role]
    return tuple(out)


def rev_roled(rw):
    return tuple(reversed(rw))


def prime(v):
    """The period-adjustment word v', as a plain letter tuple (even length
    except at the root); in context it always occupies d-first role slots."""
    letters = v.letters if isinstance(v, TreeWord) else tuple(v)
    if letters == (1,):
        return (1,)
    if len(letters) == 1:
        c = letters[0]
        return (1, c - 1)
    if letters[0] != 1:
        return (1, letters[0] - 1) + letters[1:]
    return (letters[1] + 1,) + letters[2:]


def double_prime(v):
    """The suffix v'' with v = u . v'' (u the parent in the tree)."""
    if len(v.letters) == 1:
        raise WordError("single letters have no parent decomposition")
    if v.parent is None:
        raise WordError("word lacks a construction path")
    return v.letters[len(v.parent.letters):]


def theta(v, q):
    """Child operator Theta_q."""
    if isinstance(v, tuple):
        v = TreeWord(v)
    letters = v.letters
    if len(letters) == 1:
        c = letters[0]
        if q == -1:
            return TreeWord((c + 1,), v.path + (-1,), v)
        if c == 1:
            if q < 1:
                raise WordError("Theta_0(1) is undefined")
            return TreeWord((1, q, 1), v.path + (q,), v)
        if q < 0:
            raise WordError("q >= -1 only for single letters")
        return TreeWord((c,) + (1, c - 1) * q + (1, c), v.path + (q,), v)
    if q < 0:
        raise WordError("composite words require q >= 0")
    child = letters + prime(v) * q + double_prime(v)
    return TreeWord(child, v.path + (q,), v)


def derived(v):
    """The word of block exponents D(v)."""
    letters = v.letters if isinstance(v, TreeWord) else tuple(v)
    if len(letters) == 1:
        return (1,)
    cs, ds = letters[0::2], letters[1::2]
    if letters[0] > 1:
        a, b = letters[0], letters[0] - 1
        if any(d != 1 for d in ds):
            raise WordError(f"alphabet violation in {letters}: d letters")
        seq = cs
    else:
        a, b = ds[0], ds[0] + 1
        if any(c != 1 for c in cs):
            raise WordError(f"alphabet violation in {letters}: c letters")
        seq = ds
    runs = []
    vals = []
    for x in seq:
        if x not in (a, b):
            raise WordError(f"alphabet violation in {letters}: letter {x}")
        if vals and vals[-1] == x:
            runs[-1] += 1
        else:
            vals.append(x)
            runs.append(1)
    expect = a
    for val in vals:
        if val != expect:
            raise WordError(f"blocks of {letters} do not alternate")
        expect = b if expect == a else a
    if vals[-1] != a:
        raise WordError(f"blocks of {letters} do not end full")
    return tuple(runs)


# ---------------------------------------------------------------------------
# The word order, via simplified-digit expansion over {k, k+1} with k = 1.


def digit_stream(pre, per):
    """Yield 1 for a c-role letter, 2 for a d-role letter, letter-many times.

    `pre` and `per` are (letter, role) tuples; `per` repeats forever.
    Adjacent equal-role letters (the power convention for odd words)
    merge automatically in digit space.
    """
    for x, role in pre:
        d = 1 if role == "c" else 2
        for _ in range(x):
            yield d
    if not per:
        return
    while True:
        for x, role in per:
            d = 1 if role == "c" else 2
            for _ in range(x):
                yield d


def _digit_len(rw):
    return sum(x for x, _ in rw)


def word_order(x, y):
    """Compare two eventually periodic words; returns -1, 0, or 1.

    Inputs are (pre, per) pairs of roled tuples.  The digit order is
    k+1 < k, i.e. a 2 precedes a 1.  Equality is certified once the
    streams agree beyond both preperiods plus both period lengths.
    """
    prex, perx = x
    prey, pery = y
    bound = (max(_digit_len(prex), _digit_len(prey))
             + max(_digit_len(perx), 1) + max(_digit_len(pery), 1) + 2)
    gx, gy = digit_stream(prex, perx), digit_stream(prey, pery)
    for _ in range(bound):
        a = next(gx, None)
        b = next(gy, None)
        if a == b:
            if a is None:
                return 0
            continue
        if a is None:
            # x ran out: a finite word is extended by nothing; treat the
            # exhausted stream as larger (never happens for tree usage)
            return 1
        if b is None:
            return -1
        # 2 precedes 1
        return -1 if a > b else 1
    return 0


def power_word(rw):
    """(pre, per) for rw^infinity."""
    return ((), tuple(rw))


def frak_f(v):
    """Longest prefix p of v with p^inf minimal among all prefix powers.

    Returned as a roled tuple.
    """
    rw = v.roled() if isinstance(v, TreeWord) else tuple(v)
    best = None
    best_pref = None
    for ell in range(1, len(rw) + 1):
        pref = rw[:ell]
        if best is None:
            best, best_pref = power_word(pref), pref
            continue
        cand = power_word(pref)
        if word_order(cand, best) <= 0:
            best, best_pref = cand, pref
    return best_pref


# ---------------------------------------------------------------------------
# Digit sequences attached to (k, v).


def upper_digits_small(k, v):
    """Simplified digits: runs of k for c letters, k+1 for d letters."""
    rw = v.roled() if isinstance(v, TreeWord) else tuple(v)
    out = []
    for x, role in rw:
        out.extend([k if role == "c" else k + 1] * x)
    return out


def w_block(n):
    return [-1] * (n - 2) + [-2] + [-1] * (n - 3) + [-2]


def c_block(k, n):
    return [-1] * (n - 3) + [-2] + w_block(n) * (k - 1)


def d_block(k, n):
    return [-1] * (n - 3) + [-2] + w_block(n) * k


def lower_digits_small(k, v, n):
    """Lower simplified digits for SMALL (k, v): w^k C^(c1-1) D^(d1) ... C^(cs)
    followed by (-1)^(n-2)."""
    rw = v.roled() if isinstance(v, TreeWord) else tuple(v)
    out = list(w_block(n)) * k
    out.extend(lower_digit_body(k, rw, n))
    out.extend([-1] * (n - 2))
    return out


def lower_digit_body(k, rw, n):
    """The C/D-block part of the lower expansion; first c block uses c1-1."""
    out = []
    first = True
    for x, role in rw:
        if role == "c":
            e = x - 1 if first else x
            out.extend(c_block(k, n) * e)
        else:
            out.extend(d_block(k, n) * x)
        first = False
    return out


def merge_runs(runs):
    """Merge adjacent equal-symbol runs with signed counts; error if a
    negative count survives."""
    out = []
    for sym, e in runs:
        if e == 0:
            continue
        if out and out[-1][0] == sym:
            s = out[-1][1] + e
            out.pop()
            if s:
                out.append((sym, s))
        else:
            out.append((sym, e))
    for sym, e in out:
        if e < 0:
            raise WordError(f"net negative run {sym}^{e}")
    return out


def digits_large(k, v, n):
    """Digit data for LARGE/MID index k <= -1: (lower simplified, upper full).

    Lower: runs of -|k| (c letters) and -|k|-1 (d letters).  Upper: the
    (1,2)/(1,1) block word built from the E/F blocks; for k = -1 the block
    E carries a negative run and must cancel, else WordError.
    """
    if k >= 0:
        raise ValueError("large/mid digits need k <= -1")
    kk = -k
    rw = v.roled() if isinstance(v, TreeWord) else tuple(v)
    lower = []
    for x, role in rw:
        lower.extend([-kk if role == "c" else -kk - 1] * x)

    u_run = [((1, 2), n - 2), ((1, 1), 1)]
    if kk >= 2:
        E = [((1, 1), 1)] + u_run * (kk - 2) + [((1, 2), n - 3)]
        F = [((1, 1), 1)] + u_run * (kk - 1) + [((1, 2), n - 3)]
    else:
        E = [((1, 2), -1)]
        F = [((1, 1), 1)] + [((1, 2), n - 3)]
    runs = [((1, 2), n - 2)]
    for x, role in rw:
        runs.extend((E if role == "c" else F) * x)
    merged = merge_runs(runs)
    upper = []
    for sym, e in merged:
        upper.extend([sym] * e)
    return lower, upper


def ef_blocks(k, n):
    """The E, F, G digit blocks of the large regime, expanded, for k >= 2."""
    u = [(1, 2)] * (n - 2) + [(1, 1)]
    E = [(1, 1)] + u * (k - 2) + [(1, 2)] * (n - 3)
    F = [(1, 1)] + u * (k - 1) + [(1, 2)] * (n - 3)
    G = [(1, 2), (1, 1)] + [(1, 2)] * (n - 3)
    return E, F, G


def find_tree_word(letters):
    """Locate a letter tuple in the tree, recovering its construction path.

    Child words strictly increase the letter sum, so a breadth-first search
    pruned by the target sum terminates; raises WordError if the word is
    not generated by the tree.
    """
    from collections import deque
    target = tuple(letters)
    tsum = sum(target)
    queue = deque([TreeWord.root()])
    while queue:
        v = queue.popleft()
        if v.letters == target:
            return v
        room = tsum - v.sum_letters()
        if room <= 0:
            continue
        if len(v.letters) == 1:
            c = v.letters[0]
            kids = [theta(v, -1)]
            q = 1 if c == 1 else 0
            while True:
                child = theta(v, q)
                if child.sum_letters() > tsum:
                    break
                kids.append(child)
                q += 1
        else:
            kids = []
            q = 0
            while True:
                child = theta(v, q)
                if child.sum_letters() > tsum:
                    break
                kids.append(child)
                q += 1
        for child in kids:
            if child.sum_letters() <= tsum:
                queue.append(child)
    raise WordError(f"{target} is not a tree word")


# ---------------------------------------------------------------------------
# Enumeration of the tree.


def enumerate_tree(max_len, q_cap, letter_cap=None, trimmed_n=None):
    """Breadth-first stream of tree words.

    Every word with length <= max_len, construction exponents <= q_cap and
    single-letter values <= letter_cap appears exactly once.  The operator
    Theta_{-1} raises single letters without bound, so letter_cap is a
    separate cap (default q_cap + 1).  With trimmed_n, restrict to the
    middle-regime tree: c letters at most n-2, and the only word whose
    first letter is n-2 is the single letter n-2.
    """
    if letter_cap is None:
        letter_cap = q_cap + 1

    def ok(word):
        if len(word.letters) > max_len:
            return False
        if trimmed_n is not None:
            nm2 = trimmed_n - 2
            if any(c > nm2 for c in word.c_letters()):
                return False
            if word.letters[0] == nm2 and len(word.letters) > 1:
                return False
        return True

    from collections import deque
    root = TreeWord.root()
    if trimmed_n is not None and trimmed_n - 2 < 1:
        return
    queue = deque()
    if ok(root):
        yield root
        queue.append(root)
    while queue:
        v = queue.popleft()
        qs = []
        if len(v.letters) == 1:
            c = v.letters[0]
            if c + 1 <= letter_cap:
                qs.append(-1)
            qs.extend(range(1 if c == 1 else 0, q_cap + 1))
        else:
            qs.extend(range(0, q_cap + 1))
        for q in qs:
            child = theta(v, q)
            if ok(child):
                yield child
                queue.append(child)
