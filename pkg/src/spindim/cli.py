"""Command-line front end.

Subcommands:

  ed-table          essential dimension table rows (tsv or json)
  verify-lattice    recompute the character-lattice structure for a
                    rank range and check it against the expected shape
  verify-heisenberg orbit/divisibility report for one rank and parity
  qform             quadratic form operations over F_{2^k}
  symbol            normalize a mod-2 symbol expression
  invariant         torsor forms, expansion identity and symbol for
                    the small spin groups

Exit codes: 0 success, 1 a verification failed, 2 usage error.  All
output is deterministic: identical invocations print identical bytes.

Form expressions (qform): summands joined by '+', each '[a,b]' (the
block ax^2 + xy + by^2), '<c>' (cz^2), or 'pf(a1,...,am-1;b)' (the
Pfister form <<a1,...,b]]). Field elements are hex bit patterns.  The
normalize op instead takes 'mat(r11,r12,...;r21,...;...)', a square
coefficient matrix (entries below the diagonal are folded up).

Symbol expressions: terms '{s1,...,sn-1,b]' joined by '+'; slots are
'*'-products of names or '1'; the final additive slot may itself be a
'+'-sum of such monomials.
"""

from __future__ import annotations

import argparse
import io
import json
import re
import sys
from contextlib import redirect_stderr, redirect_stdout

from . import edcalc, invariants, qform2, repdim, spinlat
from .invariants import SpinId, TorsorData
from .qform2 import ConcreteField2, QForm, format_qform, orth_sum


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


# ---------------------------------------------------------------------------
# expression parsing

_PAIRS = {"[": "]", "(": ")", "<": ">", "{": "}"}


def _split_top(text: str, sep: str):
    """Split on `sep` outside any brackets.  The symbol syntax closes
    '{' with ']', so both count as closers for '{'."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(<{":
            depth += 1
        elif ch in ")>}":
            depth -= 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_element(field, tok: str) -> int:
    tok = tok.strip()
    if not re.fullmatch(r"[0-9a-fA-F]+", tok):
        raise _UsageError(f"bad field element {tok!r} (expected hex digits)")
    x = int(tok, 16)
    try:
        return field.check(x)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def parse_form(field, text: str) -> QForm:
    text = text.replace(" ", "")
    if not text:
        raise _UsageError("empty form expression")
    q = QForm(field)
    for part in _split_top(text, "+"):
        if re.fullmatch(r"\[[^][]*\]", part):
            toks = part[1:-1].split(",")
            if len(toks) != 2:
                raise _UsageError(f"block needs two entries: {part!r}")
            q = orth_sum(q, qform2.block(field, _parse_element(field, toks[0]),
                                         _parse_element(field, toks[1])))
        elif re.fullmatch(r"<[^<>]*>", part):
            q = orth_sum(q, qform2.diag_form(field, _parse_element(field, part[1:-1])))
        elif part.startswith("pf(") and part.endswith(")"):
            inner = part[3:-1]
            if ";" not in inner:
                raise _UsageError("pf(...) needs 'slots;unit', e.g. pf(2,3;1)")
            slots_text, b_text = inner.rsplit(";", 1)
            slots = [_parse_element(field, t) for t in slots_text.split(",") if t]
            q = orth_sum(q, qform2.pfister_build(field, slots,
                                                 _parse_element(field, b_text)))
        else:
            raise _UsageError(f"cannot parse form summand {part!r}")
    return q


def parse_matrix(field, text: str):
    text = text.replace(" ", "")
    if not (text.startswith("mat(") and text.endswith(")")):
        raise _UsageError("normalize expects mat(row;row;...)")
    rows = [[_parse_element(field, t) for t in row.split(",")]
            for row in text[4:-1].split(";")]
    if any(len(r) != len(rows) for r in rows):
        raise _UsageError("coefficient matrix must be square")
    return rows


def parse_field_name(text: str) -> ConcreteField2:
    m = re.fullmatch(r"f2\^(\d+)", text)
    if not m:
        raise _UsageError(f"bad field {text!r} (expected f2^K)")
    try:
        return ConcreteField2(int(m.group(1)))
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


def parse_symbol_expr(text: str):
    """Parse a sum of symbol terms; returns (SymbolSum, field)."""
    text = text.replace(" ", "")
    if not text:
        raise _UsageError("empty symbol expression")
    names: list = []

    def note_names(mono_text):
        for piece in mono_text.split("*"):
            if piece == "1":
                continue
            if not _NAME_RE.fullmatch(piece):
                raise _UsageError(f"bad monomial factor {piece!r}")
            if piece not in names:
                names.append(piece)

    raw_terms = []
    for part in _split_top(text, "+"):
        if part == "0":
            continue
        if not (part.startswith("{") and part.endswith("]")):
            raise _UsageError(f"cannot parse symbol term {part!r}")
        slots = _split_top(part[1:-1], ",")
        if len(slots) < 2:
            raise _UsageError("a symbol needs at least two slots")
        for s in slots[:-1]:
            note_names(s)
        b_pieces = slots[-1].split("+")
        for b in b_pieces:
            note_names(b)
        raw_terms.append((slots[:-1], b_pieces))

    field = qform2.FormalField2(tuple(names))

    def mono(text_):
        return invariants.label(field, *text_.split("*"))

    acc = invariants.ZERO_SYMBOL
    for a_slots, b_pieces in raw_terms:
        acc = acc + invariants.symbol(
            tuple(mono(s) for s in a_slots),
            tuple(mono(b) for b in b_pieces))
    return acc, field


def _format_tagged(form: invariants.TaggedForm) -> str:
    def fmt_mono(m):
        return "*".join(sorted(m)) if m else "1"

    def fmt_part(p):
        base = "<<" + ",".join(fmt_mono(s) for s in p.base.a_slots) \
               + ";" + fmt_mono(p.base.b) + "]]"
        if p.scalar:
            return f"({fmt_mono(p.scalar)})*{base}"
        return base

    pieces = ["H"] * form.h_copies + [fmt_part(p) for p in form.parts]
    return " + ".join(pieces)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_ed_table(args) -> int:
    try:
        print(edcalc.ed_table(args.min, args.max, args.format), end="")
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    return 0


def _cmd_verify_lattice(args) -> int:
    if not 1 <= args.r_max <= spinlat.MAX_RANK:
        raise _UsageError(f"--r-max must be between 1 and {spinlat.MAX_RANK}")
    rows = []
    all_ok = True
    for r in range(1, args.r_max + 1):
        for parity in (spinlat.Parity.ODD, spinlat.Parity.EVEN):
            data = spinlat.build_char_data(r, parity)
            rep = spinlat.free_transitive_check(data)
            want_sizes = ((1 << r,) if parity is spinlat.Parity.ODD
                          else (1 << (r - 1),) * 2)
            ok = (data.xL.invariant_factors == (2,) * (r - 1) + (4,)
                  and data.xT.free_rank == r
                  and data.xT.invariant_factors == ()
                  and data.xK.order == 1 << r
                  and len(data.faithful) == 1 << r
                  and rep.is_free
                  and rep.orbit_sizes == want_sizes)
            all_ok = all_ok and ok
            rows.append({
                "r": r, "parity": parity.value,
                "xL_invariant_factors": list(data.xL.invariant_factors),
                "xT_free_rank": data.xT.free_rank,
                "xK_order": data.xK.order,
                "faithful_count": len(data.faithful),
                "action_free": rep.is_free,
                "orbit_sizes": list(rep.orbit_sizes),
                "ok": ok,
            })
    print(json.dumps({"r_max": args.r_max, "ok": all_ok, "rows": rows},
                     indent=2))
    return 0 if all_ok else 1


def _cmd_verify_heisenberg(args) -> int:
    if not 1 <= args.r <= spinlat.MAX_RANK:
        raise _UsageError(f"--r must be between 1 and {spinlat.MAX_RANK}")
    parity = spinlat.Parity(args.parity)
    data = spinlat.build_char_data(args.r, parity)
    rep = repdim.divisibility_report(data, exhaustive=args.r <= 6)
    expect_min = 1 << (args.r if parity is spinlat.Parity.ODD else args.r - 1)
    ok = (rep.min_dim == expect_min and rep.gcd_dim == expect_min
          and rep.exhaustive_ok is not False)
    payload = {
        "r": args.r, "parity": parity.value,
        "orbit_sizes": list(rep.orbit_sizes),
        "min_faithful_dim": rep.min_dim,
        "gcd_dim": rep.gcd_dim,
        "expected": expect_min,
        "achieving_multiset_size": rep.min_achieving.total_dim,
        "exhaustive_checked_to": rep.exhaustive_checked_to,
        "exhaustive_ok": rep.exhaustive_ok,
        "ok": ok,
    }
    print(json.dumps(payload, indent=2))
    return 0 if ok else 1


def _cmd_qform(args) -> int:
    field = parse_field_name(args.field)
    out = {"op": args.op, "field": args.field}
    try:
        if args.op == "normalize":
            mat = parse_matrix(field, args.form)
            q = qform2.block_normalize(field, mat)
            out["form"] = format_qform(q)
        else:
            q = parse_form(field, args.form)
            out["form"] = format_qform(q)
            out["dim"] = q.dim
            if args.op == "arf":
                out["arf"] = qform2.arf(q)
            elif args.op == "witt":
                dec = qform2.witt_decompose(q)
                out["witt_index"] = dec.index
                out["kernel"] = format_qform(dec.kernel)
            elif args.op == "classify":
                cls = qform2.classify_form(q)
                out["class"] = cls.kind
                out["radical_dim"] = cls.radical_dim
                if cls.vanishing_radical_vector is not None:
                    out["vanishing_radical_vector"] = [
                        format(x, "x") for x in cls.vanishing_radical_vector]
            else:   # equiv
                if args.form2 is None:
                    raise _UsageError("--op equiv needs --form2")
                q2 = parse_form(field, args.form2)
                out["form2"] = format_qform(q2)
                out["equivalent"] = qform2.equivalent_ff(q, q2)
    except (ValueError, TypeError) as exc:
        raise _UsageError(str(exc)) from None
    print(json.dumps(out, indent=2))
    return 0


def _cmd_symbol(args) -> int:
    s, _ = parse_symbol_expr(args.normalize)
    print(invariants.format_symbol(invariants.symbol_normalize(s)))
    return 0


def _cmd_invariant(args) -> int:
    try:
        group = SpinId(args.group)
    except ValueError:
        raise _UsageError(f"unknown group {args.group!r}") from None
    labels = tuple(t for t in args.labels.split(",") if t)
    try:
        torsor = TorsorData(group, labels)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    try:
        rep = invariants.invariant_f(torsor)
    except AssertionError as exc:
        print(json.dumps({"group": group.value, "labels": list(labels),
                          "ok": False, "error": str(exc)}, indent=2))
        return 1
    nv = rep.nonvanishing
    payload = {
        "group": group.value,
        "labels": list(labels),
        "torsor_forms": [_format_tagged(f) for f in rep.forms],
        "expansion_identity_ok": rep.summands == rep.expansion,
        "symbol": invariants.format_symbol(rep.symbol),
        "nonvanishing": nv.verdict.value,
        "ok": True,
    }
    if nv.note:
        payload["nonvanishing_note"] = nv.note
    print(json.dumps(payload, indent=2))
    return 0


# ---------------------------------------------------------------------------
# wiring


def _build_parser() -> _Parser:
    p = _Parser(prog="spindim", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("ed-table", help="essential dimension table",
                       description="Print essential dimension rows: "
                                   "n, value, upper, lower, case.")
    t.add_argument("--min", type=int, required=True)
    t.add_argument("--max", type=int, required=True)
    t.add_argument("--format", choices=("tsv", "json"), default="tsv")
    t.set_defaults(fn=_cmd_ed_table)

    v = sub.add_parser("verify-lattice",
                       help="character lattice structure checks",
                       description="Recompute X(T), X(L), X(K), the faithful "
                                   "set and the sign-flip orbits for every "
                                   "rank up to --r-max, both parities, and "
                                   "compare with the expected shapes.")
    v.add_argument("--r-max", type=int, required=True)
    v.set_defaults(fn=_cmd_verify_lattice)

    h = sub.add_parser("verify-heisenberg",
                       help="representation dimension divisibility report",
                       description="Orbit sizes, minimal center-faithful "
                                   "dimension and the gcd bound for one rank "
                                   "and parity (brute-force confirmed for "
                                   "small ranks).")
    h.add_argument("--r", type=int, required=True)
    h.add_argument("--parity", choices=("odd", "even"), required=True)
    h.set_defaults(fn=_cmd_verify_heisenberg)

    q = sub.add_parser("qform", help="quadratic form operations",
                       description="Evaluate classification, Arf, Witt "
                                   "decomposition, equivalence or matrix "
                                   "reduction over F_{2^K}.")
    q.add_argument("--field", required=True, metavar="f2^K")
    q.add_argument("--op", required=True,
                   choices=("classify", "arf", "witt", "normalize", "equiv"))
    q.add_argument("--form", required=True)
    q.add_argument("--form2")
    q.set_defaults(fn=_cmd_qform)

    s = sub.add_parser("symbol", help="normalize a symbol expression",
                       description="Normalize a mod-2 symbol sum and print "
                                   "it in the same syntax.")
    s.add_argument("--normalize", required=True, metavar="EXPR")
    s.set_defaults(fn=_cmd_symbol)

    i = sub.add_parser("invariant", help="torsor invariant of a spin group",
                       description="Build the generic torsor's quadratic "
                                   "forms, verify the Pfister expansion "
                                   "identity behind the invariant, and print "
                                   "the invariant's symbol.")
    i.add_argument("--group", required=True,
                   choices=tuple(g.value for g in SpinId))
    i.add_argument("--labels", required=True,
                   help="comma-separated parameter names ('1' = trivial)")
    i.set_defaults(fn=_cmd_invariant)
    return p


def run(argv):
    """Run one invocation; returns (exit_code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            try:
                args = _build_parser().parse_args(argv)
                code = args.fn(args)
            except _UsageError as exc:
                print(str(exc), file=sys.stderr)
                code = 2
    except SystemExit as exc:    # --help and argparse-internal exits
        code = exc.code if isinstance(exc.code, int) else 0
        if code not in (0,):
            code = 2
    return code, out.getvalue(), err.getvalue()


def main() -> None:
    code, out, err = run(sys.argv[1:])
    sys.stdout.write(out)
    sys.stderr.write(err)
    raise SystemExit(code)
