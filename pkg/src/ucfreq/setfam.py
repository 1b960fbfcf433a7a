"""Exact combinatorics of finite set families over small ground sets.

Sets are bitmasks over a ground set {1..n} (element i is bit i-1), so
intersection, union and subset tests are single machine-word operations.
All family-level operations are pure functions; `SetFamily` values are
immutable and safe to share.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

Mask = int

MAX_GROUND = 63


def mask_of(elements: Iterable[int]) -> Mask:
    """Bitmask of a collection of elements (1-based)."""
    m = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"element ids start at 1, got {e}")
        m |= 1 << (e - 1)
    return m


def elements_of(mask: Mask) -> tuple[int, ...]:
    """Ascending tuple of the elements in a bitmask."""
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def set_key(mask: Mask) -> tuple[int, ...]:
    """Canonical sort key for sets: the ascending element tuple."""
    return elements_of(mask)


def format_mask(mask: Mask) -> str:
    """Render a set as '{2,3}' ('{}' for the empty set)."""
    return "{" + ",".join(str(e) for e in elements_of(mask)) + "}"


def submasks(mask: Mask) -> Iterator[Mask]:
    """All subsets of `mask`, in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


@dataclass(frozen=True)
class SetFamily:
    """An ordered collection of distinct subsets of {1..n}."""

    n: int
    sets: tuple[Mask, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_GROUND:
            raise ValueError(f"ground-set size must be in 1..{MAX_GROUND}, got {self.n}")
        ground = (1 << self.n) - 1
        seen = set()
        for s in self.sets:
            if s < 0 or s & ~ground:
                raise ValueError(f"set {format_mask(s)} has elements outside 1..{self.n}")
            if s in seen:
                raise ValueError(f"duplicate set {format_mask(s)}")
            seen.add(s)

    def __len__(self) -> int:
        return len(self.sets)

    def __contains__(self, mask: Mask) -> bool:
        return mask in set(self.sets)

    @property
    def ground(self) -> Mask:
        return (1 << self.n) - 1

    def member_set(self) -> frozenset[Mask]:
        return frozenset(self.sets)

    def sorted(self) -> "SetFamily":
        """The same family with members in canonical order."""
        return SetFamily(self.n, tuple(sorted(self.sets, key=set_key)))

    def __repr__(self) -> str:
        body = ", ".join(format_mask(s) for s in self.sets)
        return f"SetFamily(n={self.n}, {{{body}}})"


def family(n: int, sets: Iterable[Iterable[int]]) -> SetFamily:
    """Build a SetFamily from element collections, e.g. family(2, [[], [1], [1, 2]])."""
    return SetFamily(n, tuple(mask_of(s) for s in sets))


# ---------------------------------------------------------------------------
# closure and frequency structure
# ---------------------------------------------------------------------------

def is_union_closed(fam: SetFamily) -> bool:
    """True iff A, B in the family implies A | B is too."""
    members = fam.member_set()
    sets = fam.sets
    for i, a in enumerate(sets):
        for b in sets[i:]:
            if a | b not in members:
                return False
    return True


def union_closure(generators: SetFamily) -> SetFamily:
    """Smallest union-closed family containing the generators.

    The result is in canonical order.  Raises on an empty generator
    collection (there is no least union-closed superfamily to speak of).
    """
    if not generators.sets:
        raise ValueError("union_closure requires at least one generator")
    closed = set(generators.sets)
    frontier = list(closed)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(closed):
                u = a | b
                if u not in closed:
                    closed.add(u)
                    nxt.append(u)
        frontier = nxt
    return SetFamily(generators.n, tuple(sorted(closed, key=set_key)))


def element_frequencies(fam: SetFamily) -> dict[int, int]:
    """For each element of 1..n, the number of member sets containing it."""
    freqs = dict.fromkeys(range(1, fam.n + 1), 0)
    for s in fam.sets:
        for e in elements_of(s):
            freqs[e] += 1
    return freqs


def kth_frequency(fam: SetFamily, k: int) -> tuple[int, int, Fraction]:
    """The k-th most frequent element, its count, and count/|F| exactly.

    Ties are broken toward the smallest element id.  Requires k <= n and a
    nonempty family.
    """
    if not 1 <= k <= fam.n:
        raise ValueError(f"k must be in 1..{fam.n}, got {k}")
    if not fam.sets:
        raise ValueError("kth_frequency of an empty family")
    ranked = sorted(element_frequencies(fam).items(), key=lambda kv: (-kv[1], kv[0]))
    element, count = ranked[k - 1]
    return element, count, Fraction(count, len(fam.sets))


def normalize(fam: SetFamily) -> SetFamily:
    """Relabel so the most frequent element (smallest id on ties) becomes 1.

    Swaps the labels of element 1 and the top-frequency element; all other
    labels are untouched.  Frequencies and every label-invariant quantity
    are preserved.
    """
    top, _, _ = kth_frequency(fam, 1)
    if top == 1:
        return fam
    bit1, bitt = 1, 1 << (top - 1)

    def swap(mask: Mask) -> Mask:
        has1, hast = bool(mask & bit1), bool(mask & bitt)
        mask &= ~(bit1 | bitt)
        if has1:
            mask |= bitt
        if hast:
            mask |= bit1
        return mask

    return SetFamily(fam.n, tuple(swap(s) for s in fam.sets))


# ---------------------------------------------------------------------------
# 2-good sets, traces, incidence
# ---------------------------------------------------------------------------

def is_two_good(fam: SetFamily, s: Mask, distinguished: int = 1) -> bool:
    """True iff `s` avoids the distinguished element and meets every member
    other than the empty set and the distinguished singleton."""
    dbit = 1 << (distinguished - 1)
    if s & dbit:
        return False
    for a in fam.sets:
        if a == 0 or a == dbit:
            continue
        if a & s == 0:
            return False
    return True


def minimal_two_good_sets(fam: SetFamily, distinguished: int = 1) -> tuple[Mask, ...]:
    """All inclusion-minimal 2-good sets, in canonical order.

    Equivalent to the minimal transversals of {A - {distinguished}} over the
    members A outside {empty, {distinguished}}; computed that way so the
    scan is over candidate sets, not over all pairs of 2-good sets.  The
    empty set is returned when it is (vacuously) 2-good.
    """
    dbit = 1 << (distinguished - 1)
    targets = [a & ~dbit for a in fam.sets if a != 0 and a != dbit]
    if not targets:
        return (0,)
    allowed = fam.ground & ~dbit
    out = []
    for s in submasks(allowed):
        if all(s & a for a in targets):
            if all(not all((s & ~(1 << (e - 1))) & a for a in targets) for e in elements_of(s)):
                out.append(s)
    return tuple(sorted(out, key=set_key))


def incidence(fam: SetFamily, s: Mask) -> int:
    """Total intersection weight: the sum of |A & s| over members A."""
    return sum((a & s).bit_count() for a in fam.sets)


@dataclass(frozen=True)
class TraceCounts:
    """For a base set S, the total map T -> #{A in F : A & S == T} over T <= S."""

    base: Mask
    counts: dict[Mask, int]

    def __getitem__(self, t: Mask) -> int:
        return self.counts[t]

    def total(self) -> int:
        return sum(self.counts.values())

    def weighted_total(self) -> int:
        return sum(q * t.bit_count() for t, q in self.counts.items())


def trace_counts(fam: SetFamily, s: Mask) -> TraceCounts:
    """Count members by their trace on `s`; every subset of `s` gets an entry."""
    counts = {t: 0 for t in submasks(s)}
    for a in fam.sets:
        counts[a & s] += 1
    return TraceCounts(s, counts)


# ---------------------------------------------------------------------------
# covered elements and flexible pairs
# ---------------------------------------------------------------------------

def covered_set(fam: SetFamily, s: Mask, x: int) -> tuple[int, ...]:
    """Elements y of a 2-good `s` with `s + x - y` still 2-good.

    (Equivalently: every member whose trace on `s` is exactly {y} contains
    x; the equivalence needs `s` 2-good, which is why it is a precondition.)
    Requires x outside `s` and x != 1.
    """
    xbit = 1 << (x - 1)
    if x == 1 or s & xbit:
        raise ValueError(f"x must avoid the base set and element 1, got x={x}")
    if not is_two_good(fam, s):
        raise ValueError(f"base set {format_mask(s)} is not 2-good")
    sx = s | xbit
    return tuple(y for y in elements_of(s) if is_two_good(fam, sx & ~(1 << (y - 1))))


@dataclass(frozen=True)
class FlexibleWitness:
    """Witness that `a` is x-flexible for a base set S.

    `fa` and `fa_prime` are members whose traces on S + x are exactly {a}
    and {a, x}.
    """

    a: int
    x: int
    fa: Mask
    fa_prime: Mask


def flexible_pairs(fam: SetFamily, s: Mask) -> tuple[FlexibleWitness, ...]:
    """All (a, x) with a in the 2-good set `s`, x outside s and not 1, such
    that some member meets s + x exactly in {a} and another in {a, x}.

    One witness per pair, with both member sets chosen canonically (least
    under the element-tuple order).  Pairs are ordered by (a, x).
    """
    if not is_two_good(fam, s):
        raise ValueError(f"base set {format_mask(s)} is not 2-good")
    out = []
    for a in elements_of(s):
        abit = 1 << (a - 1)
        for x in range(2, fam.n + 1):
            xbit = 1 << (x - 1)
            if s & xbit:
                continue
            sx = s | xbit
            plain = [f for f in fam.sets if f & sx == abit]
            with_x = [f for f in fam.sets if f & sx == abit | xbit]
            if plain and with_x:
                out.append(
                    FlexibleWitness(a, x, min(plain, key=set_key), min(with_x, key=set_key))
                )
    return tuple(out)


# ---------------------------------------------------------------------------
# covers
# ---------------------------------------------------------------------------

def minimal_covers(fam: SetFamily) -> SetFamily:
    """The family of all inclusion-minimal sets meeting every member.

    Raises if the empty set is a member (nothing can meet it).  The result
    is an antichain, in canonical order.
    """
    if 0 in fam.member_set():
        raise ValueError("family contains the empty set and has no covers")
    sets = fam.sets
    out = []
    for s in submasks(fam.ground):
        if all(s & a for a in sets):
            if all(not all((s & ~(1 << (e - 1))) & a for a in sets) for e in elements_of(s)):
                out.append(s)
    return SetFamily(fam.n, tuple(sorted(out, key=set_key)))


def minimal_elements(fam: SetFamily) -> SetFamily:
    """Members with no proper subset in the family, in canonical order."""
    members = fam.member_set()
    out = [
        s
        for s in fam.sets
        if not any(t != s and t & ~s == 0 for t in members)
    ]
    return SetFamily(fam.n, tuple(sorted(out, key=set_key)))


def is_antichain(fam: SetFamily) -> bool:
    """True iff no member properly contains another."""
    sets = fam.sets
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            if a & ~b == 0 or b & ~a == 0:
                return False
    return True


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def family_to_json(fam: SetFamily) -> str:
    """Canonical JSON: {"n": n, "sets": [[sorted ints], ...]}."""
    return json.dumps({"n": fam.n, "sets": [list(elements_of(s)) for s in fam.sets]})


def family_from_json(text: str) -> SetFamily:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "sets" not in obj:
        raise ValueError('family JSON must be an object with "n" and "sets"')
    n = obj["n"]
    if not isinstance(n, int):
        raise ValueError('"n" must be an integer')
    return SetFamily(n, tuple(mask_of(s) for s in obj["sets"]))


def family_to_text(fam: SetFamily) -> str:
    """Plain text: one set per line, elements ascending, '-' for the empty set."""
    lines = []
    for s in fam.sets:
        lines.append(" ".join(str(e) for e in elements_of(s)) if s else "-")
    return "\n".join(lines) + "\n"


def family_from_text(text: str) -> SetFamily:
    """Parse the plain-text format; blank lines and '#' comments are skipped.

    The ground-set size is the largest element mentioned (at least 1).
    """
    sets = []
    top = 1
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "-":
            sets.append(0)
            continue
        try:
            els = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise ValueError(f"bad family line {line!r}") from exc
        sets.append(mask_of(els))
        top = max(top, max(els))
    if not sets:
        raise ValueError("no sets in family input")
    return SetFamily(top, tuple(sets))
