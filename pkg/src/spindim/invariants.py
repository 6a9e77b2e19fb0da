"""Mod-2 symbol calculus and the cohomological invariants of the small
spin groups, tracked through explicit quadratic form data.

Symbols {a_1, ..., a_n-1, b] have multiplicative slots a_i (square-free
monomials in named indeterminates) and one additive slot b.  They are
the degree-n analogue in characteristic 2 of Milnor symbols mod 2: the
calculus implemented here is purely formal, using only

  * additivity in each slot (products expand multilinearly),
  * {.., 1, ..]  = 0,
  * terms with two equal multiplicative slots vanish,
  * mod-2 cancellation of identical terms,
  * symmetry (slots are sorted into a canonical order).

No Steinberg-type relation is available (the coefficient monoid has no
addition), so a normalized nonzero sum is not automatically nonzero in
cohomology; `symbol_generic_nonzero` only certifies sums containing a
term of pairwise-distinct single indeterminates, citing the known
nonvanishing of such generic symbols over rational function fields.

The invariant of a generic torsor is assembled exactly as the
underlying quadratic forms dictate: the torsor data pins down scaled
Pfister forms, their sum is checked (as an exact multiset of scaled
Pfister summands) against the multilinear expansion of one bigger
Pfister form, and the symbol of that bigger form is returned.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .qform2 import FormalField2, PfisterBase, pfister_expand

Label = frozenset


def label(field: FormalField2, *names: str) -> Label:
    """Product of named indeterminates; "1" factors are allowed and
    drop out.  Repeated factors cancel (everything squares to 1)."""
    out = field.one
    for n in names:
        if n != "1":
            out = field.mul(out, field.var(n))
    return out


# ---------------------------------------------------------------------------
# symbols


@dataclass(frozen=True)
class SymbolTerm:
    """One symbol {a_slots..., b_slot].  The multiplicative slots are
    monomials; the additive slot is a formal sum of monomials."""

    a_slots: tuple
    b_slot: tuple

    def degree(self) -> int:
        return len(self.a_slots) + 1


@dataclass(frozen=True)
class SymbolSum:
    """Formal mod-2 sum of symbol terms (repeats allowed until
    normalization)."""

    terms: tuple

    def __add__(self, other: "SymbolSum") -> "SymbolSum":
        return SymbolSum(self.terms + other.terms)


def symbol(a_slots, b_slot) -> SymbolSum:
    """Single-term sum; `b_slot` may be one monomial or a sequence of
    monomials understood as their sum."""
    if isinstance(b_slot, frozenset):
        b_slot = (b_slot,)
    return SymbolSum((SymbolTerm(tuple(a_slots), tuple(b_slot)),))


ZERO_SYMBOL = SymbolSum(())


def _sort_key(mono: Label):
    return tuple(sorted(mono))


def symbol_normalize(s: SymbolSum) -> SymbolSum:
    """Canonical form: expand products, drop vanishing terms, split
    additive slots, cancel mod 2, sort.  The rules are confluent (the
    tests drive them in random orders); this computes the fixpoint in
    one pass."""
    parity: Counter = Counter()
    for term in s.terms:
        for b in term.b_slot:                     # split the additive slot
            slot_choices = []
            for slot in term.a_slots:             # expand multilinearly
                slot_choices.append([frozenset([v]) for v in sorted(slot)])
            # a slot equal to 1 expands to no choices at all: the term dies
            def walk(idx, picked):
                if idx == len(slot_choices):
                    if len(set(picked)) == len(picked):   # equal slots vanish
                        key = SymbolTerm(tuple(sorted(picked, key=_sort_key)),
                                         (b,))
                        parity[key] ^= 1
                    return
                for choice in slot_choices[idx]:
                    walk(idx + 1, picked + [choice])
            walk(0, [])
    kept = sorted((t for t, p in parity.items() if p),
                  key=lambda t: (tuple(map(_sort_key, t.a_slots)),
                                 tuple(map(_sort_key, t.b_slot))))
    return SymbolSum(tuple(kept))


def format_symbol(s: SymbolSum) -> str:
    if not s.terms:
        return "0"

    def fmt_mono(m):
        return "*".join(sorted(m)) if m else "1"

    parts = []
    for t in s.terms:
        slots = [fmt_mono(m) for m in t.a_slots]
        slots.append("+".join(fmt_mono(m) for m in t.b_slot))
        parts.append("{" + ",".join(slots) + "]")
    return " + ".join(parts)


class Nonvanishing(Enum):
    ZERO = "zero"
    CERTIFIED_NONZERO = "certified_nonzero"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class NonvanishingReport:
    verdict: Nonvanishing
    witness: SymbolTerm | None = None
    note: str = ""


def symbol_generic_nonzero(s: SymbolSum, indeterminates) -> NonvanishingReport:
    """Sound, incomplete nonvanishing test for a normalized symbol sum.

    Zero is decided exactly (the normalized sum is empty).  A sum is
    certified nonzero when it contains a term whose slots, the additive
    one included, are pairwise distinct single indeterminates from the
    given set: such a generic symbol is nonzero over the rational
    function field on those indeterminates.  That step is a citation,
    not a computation, and is labelled as such in the report.
    Everything else is reported unknown.
    """
    indeterminates = set(indeterminates)
    s = symbol_normalize(s)
    if not s.terms:
        return NonvanishingReport(Nonvanishing.ZERO)
    for term in s.terms:
        slots = list(term.a_slots) + list(term.b_slot)
        names = [next(iter(m)) for m in slots if len(m) == 1]
        if (len(names) == len(slots)
                and len(set(names)) == len(names)
                and set(names) <= indeterminates):
            return NonvanishingReport(
                Nonvanishing.CERTIFIED_NONZERO, term,
                "certified by citation: a symbol in pairwise-distinct "
                "indeterminates is nonzero over their rational function field")
    return NonvanishingReport(Nonvanishing.UNKNOWN)


# ---------------------------------------------------------------------------
# torsor form data for the small spin groups


class SpinId(Enum):
    SPIN7 = "spin7"
    SPIN8 = "spin8"
    SPIN9 = "spin9"
    SPIN10 = "spin10"


# how many generic parameters each group's torsor carries
PARAM_COUNT = {SpinId.SPIN7: 4, SpinId.SPIN8: 5,
               SpinId.SPIN9: 5, SpinId.SPIN10: 4}


@dataclass(frozen=True)
class TorsorData:
    """A generic torsor described by its parameter labels.

    The first three labels are the slots of the common 3-fold Pfister
    form P = <<a, b, c]]; the remaining one or two scale its copies.
    A label may be the literal "1", meaning that parameter is trivial;
    the identities below still hold and the symbol degenerates.
    """

    group: SpinId
    labels: tuple

    def __post_init__(self):
        want = PARAM_COUNT[self.group]
        if len(self.labels) != want:
            raise ValueError(
                f"{self.group.value} needs {want} parameters, got {len(self.labels)}")
        for name in self.labels:
            if not isinstance(name, str) or not name:
                raise ValueError(f"bad parameter label: {name!r}")

    def formal_field(self) -> FormalField2:
        names = []
        for n in self.labels:
            if n != "1" and n not in names:
                names.append(n)
        return FormalField2(names)


@dataclass(frozen=True)
class ScaledPfister:
    scalar: Label
    base: PfisterBase


@dataclass(frozen=True)
class TaggedForm:
    """A sum of scaled copies of one Pfister form, plus hyperbolic
    planes.  This is the exact shape of the torsor forms below."""

    h_copies: int
    parts: tuple


def torsor_forms(t: TorsorData) -> tuple:
    """The quadratic forms attached to a generic torsor.

    With P = <<a,b,c]]:
      spin7  (a,b,c,d):    q1 = P,          q2 = d P
      spin8  (a,b,c,d,e):  q1 = d P,  q2 = e P,  q3 = de P
      spin9  (a,b,c,d,e):  r = H + d P,     s = e P + de P
      spin10 (a,b,c,d):    r = H + d P
    """
    f = t.formal_field()
    lab = [label(f, n) for n in t.labels]
    base = PfisterBase((lab[0], lab[1]), lab[2])

    def part(scalar):
        return ScaledPfister(scalar, base)

    if t.group is SpinId.SPIN7:
        d = lab[3]
        return (TaggedForm(0, (part(f.one),)), TaggedForm(0, (part(d),)))
    if t.group is SpinId.SPIN8:
        d, e = lab[3], lab[4]
        return (TaggedForm(0, (part(d),)), TaggedForm(0, (part(e),)),
                TaggedForm(0, (part(f.mul(d, e)),)))
    if t.group is SpinId.SPIN9:
        d, e = lab[3], lab[4]
        return (TaggedForm(1, (part(d),)),
                TaggedForm(0, (part(e), part(f.mul(d, e)))))
    d = lab[3]
    return (TaggedForm(1, (part(d),)),)


def strip_hyperbolic(form: TaggedForm) -> TaggedForm:
    return TaggedForm(0, form.parts)


def pfister_recover(form: TaggedForm) -> PfisterBase:
    """Base Pfister form of a single scaled copy, hyperbolic summands
    and the scale stripped.  Anything that is not literally one scaled
    Pfister copy is rejected: recovery from an arbitrary form is out
    of scope."""
    if len(form.parts) != 1:
        raise ValueError("form is not a single scaled Pfister copy")
    return form.parts[0].base


@dataclass(frozen=True)
class InvariantReport:
    group: SpinId
    labels: tuple
    forms: tuple
    # the verified identity: multiset of (scalar, base) on each side
    summands: tuple
    expansion: tuple
    symbol: SymbolSum
    nonvanishing: NonvanishingReport


def invariant_f(t: TorsorData) -> InvariantReport:
    """Degree-4 or 5 invariant of a generic torsor.

    The scaled Pfister copies carried by the torsor forms (with q0
    adjoined where the construction calls for the base copy itself)
    must add up, as an exact multiset, to the multilinear expansion of
    the bigger Pfister form <<scales..., a, b, c]]; the invariant is
    that form's symbol.  The identity is verified here and a failure
    raises, since it would mean the form data is inconsistent.
    """
    f = t.formal_field()
    forms = torsor_forms(t)
    lab = [label(f, n) for n in t.labels]
    a, b, c = lab[0], lab[1], lab[2]
    scales = lab[3:]

    collected: Counter = Counter()
    if t.group is SpinId.SPIN7:
        for form in forms:
            for p in form.parts:
                collected[(p.scalar, p.base)] += 1
    elif t.group is SpinId.SPIN8:
        base = pfister_recover(forms[0])
        collected[(f.one, base)] += 1          # q0, the base copy
        for form in forms:
            for p in form.parts:
                collected[(p.scalar, p.base)] += 1
    else:   # spin9, spin10: r carries H + dP; adjoin q0 = recovered base
        r = forms[0]
        base = pfister_recover(r)
        collected[(f.one, base)] += 1
        for form in (strip_hyperbolic(r),) + forms[1:]:
            for p in form.parts:
                collected[(p.scalar, p.base)] += 1

    expansion = pfister_expand(f, tuple(scales) + (a, b), c, peel=len(scales))
    if collected != expansion:
        raise AssertionError("torsor forms do not match the Pfister expansion")

    sym = symbol_normalize(symbol(tuple(scales) + (a, b), c))
    indet = {n for n in t.labels if n != "1" and t.labels.count(n) == 1}
    report = symbol_generic_nonzero(sym, indet)
    return InvariantReport(
        group=t.group, labels=t.labels, forms=forms,
        summands=_freeze_counter(collected),
        expansion=_freeze_counter(expansion),
        symbol=sym, nonvanishing=report)


def _freeze_counter(cnt: Counter) -> tuple:
    def key(item):
        (scalar, base), _ = item
        return (tuple(sorted(scalar)),
                tuple(tuple(sorted(s)) for s in base.a_slots),
                tuple(sorted(base.b)))
    return tuple(sorted(cnt.items(), key=key))
