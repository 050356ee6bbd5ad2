"""Command-line front end.

Subcommands: tree | intervals | verify | orbit | measure | identities |
suite | figure-data.  Exit codes: 0 success, 1 verification failure,
2 usage error.  All output is deterministic for a fixed configuration;
decimals are truncations of the exact values, so re-rendering at a higher
precision only appends digits.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .algebra import FieldElement, RealAlgebraic, decimal_string, refine
from .dynamics import (AlphaParam, orbit, regime_constants, alpha0_suite,
                       alpha1_suite)
from .moebius import Ctx
from .relations import run_identity_suite
from .sync import (SMALL, MID, LARGE, constants, endpoints, verify_sync,
                   interior_rationals, digit_certificates, partition_check,
                   small_k_chain, large_k_chain, mid_chain,
                   enumerate_intervals, measure_report, find_tree_word)
from .words import (TreeWord, prime, derived, frak_f, theta, enumerate_tree,
                    WordError)


class UsageError(Exception):
    pass


def _digits_for(bits):
    return max(12, bits * 3 // 10)


def exact_repr(x):
    """Compact exact representation of a rational / field / quadratic value."""
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, FieldElement):
        return "poly:" + ",".join(str(c) for c in x.coeffs)
    if isinstance(x, RealAlgebraic):
        s = x.serialize()
        return "quad:p=" + ",".join(s["p"]) + ";q=" + ",".join(s["q"]) + \
            ";D=" + ",".join(s["D"])
    raise TypeError(type(x))


def parse_word_arg(text):
    parts = text.replace("-", " ").split()
    try:
        letters = tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"bad word {text!r}")
    if len(letters) == 1:
        return TreeWord(letters)
    return find_tree_word(letters)


def parse_alpha(text, n):
    """gamma | epsilon | delta | zeta:k:v | eta:k:v | omega:k:v | p/q |
    decimal string."""
    gamma, eps, delta = constants(n)
    named = {"gamma": gamma, "epsilon": eps, "delta": delta}
    if text in named:
        return named[text]
    if text.startswith(("zeta:", "eta:", "omega:")):
        which, k_s, v_s = text.split(":", 2)
        k = int(k_s)
        v = parse_word_arg(v_s)
        regime = SMALL if k >= 1 else (MID if k == -1 else LARGE)
        iv = endpoints(regime, k, v, n)
        return getattr(iv, {"zeta": "zeta", "eta": "eta",
                            "omega": "omega"}[which])
    try:
        if "/" in text:
            return Fraction(text)
        return Fraction(text).limit_denominator(10 ** 18) \
            if "." in text else Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad alpha {text!r}")


def regime_of(name, k=None):
    if name:
        if name not in (SMALL, MID, LARGE):
            raise UsageError(f"bad regime {name!r}")
        return name
    if k is None:
        raise UsageError("need --regime or --k")
    return SMALL if k >= 1 else (MID if k == -1 else LARGE)


def emit(rows, header, fmt, out):
    """Write rows (list of dicts) deterministically as CSV or JSON."""
    if fmt == "json":
        text = json.dumps([{h: row[h] for h in header} for row in rows],
                          indent=1, sort_keys=False, default=str) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([row[h] for h in header])
        text = buf.getvalue()
    if out and not out.endswith(".png"):
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_tree(args):
    rows = []
    for v in enumerate_tree(args.len_max, args.q_cap,
                            trimmed_n=args.trimmed_n):
        rows.append({
            "word": " ".join(map(str, v.letters)),
            "path": " ".join(map(str, v.path)),
            "parent": " ".join(map(str, v.parent.letters)) if v.parent
            else "",
            "prime": " ".join(map(str, prime(v))),
            "derived": " ".join(map(str, derived(v))),
            "full_prefix": " ".join(str(x) for x, _ in frak_f(v)),
            "palindrome": v.is_palindrome(),
        })
    emit(rows, ["word", "path", "parent", "prime", "derived",
                "full_prefix", "palindrome"], args.format, args.out)
    return 0


def cmd_intervals(args):
    digits = _digits_for(args.precision_bits)
    regime = regime_of(args.regime)
    rows = []
    for iv in enumerate_intervals(regime, args.n, args.k_max, args.len_max,
                                 args.q_cap):
        enc = iv.length_enclosure(args.precision_bits)
        rows.append({
            "regime": iv.regime,
            "k": iv.k,
            "v": " ".join(map(str, iv.v.letters)),
            "zeta_exact": exact_repr(iv.zeta),
            "zeta_dec": decimal_string(iv.zeta, digits),
            "eta_exact": exact_repr(iv.eta),
            "eta_dec": decimal_string(iv.eta, digits),
            "omega_exact": exact_repr(iv.omega),
            "omega_dec": decimal_string(iv.omega, digits),
            "i": iv.i_expected,
            "j": iv.j_expected,
            "length_dec": decimal_string((enc.lo + enc.hi) / 2, digits),
        })
    emit(rows, ["regime", "k", "v", "zeta_exact", "zeta_dec", "eta_exact",
                "eta_dec", "omega_exact", "omega_dec", "i", "j",
                "length_dec"], args.format, args.out)
    return 0


def cmd_verify(args):
    k = args.k
    regime = regime_of(args.regime, k)
    v = parse_word_arg(args.v)
    iv = endpoints(regime, k, v, args.n)
    if args.alpha:
        alphas = [parse_alpha(args.alpha, args.n)]
    else:
        alphas = interior_rationals(*iv.j_bounds(), args.samples)
    rows = []
    ok_all = True
    for a in alphas:
        try:
            w = verify_sync(a, iv)
            ok = w.relation_ok
            note = "extra-step" if w.extra_step else ""
        except Exception as exc:
            ok = False
            note = f"{type(exc).__name__}: {exc}"
            w = None
        ok_all = ok_all and ok
        rows.append({
            "alpha": str(a),
            "i": w.i if w else "",
            "j": w.j if w else "",
            "relation_ok": ok,
            "note": note,
        })
    emit(rows, ["alpha", "i", "j", "relation_ok", "note"],
         args.format, args.out)
    return 0 if ok_all else 1


def cmd_orbit(args):
    digits = _digits_for(args.precision_bits)
    a = parse_alpha(args.alpha, args.n)
    ap = AlphaParam(args.m, args.n, a)
    if args.start == "l0":
        x = ap.l0
    elif args.start == "r0":
        x = ap.r0
    else:
        x = Fraction(args.start)
        if not ap.contains_closed(x):
            raise UsageError(f"start {args.start} outside the interval")
    rec = orbit(x, ap, args.steps)
    rows = []
    for idx, pt in enumerate(rec.points):
        d = rec.digits[idx - 1] if idx >= 1 else None
        rows.append({
            "step": idx,
            "digit_k": d.k if d else "",
            "digit_l": d.l if d else "",
            "value_dec": decimal_string(pt, digits),
        })
    if rec.pole_at is not None:
        rows.append({"step": "pole", "digit_k": "", "digit_l": "",
                     "value_dec": f"orbit ends at step {rec.pole_at}"})
    emit(rows, ["step", "digit_k", "digit_l", "value_dec"],
         args.format, args.out)
    return 0


def _dec_fraction(fr, digits):
    neg = fr < 0
    fr = abs(fr)
    scaled = fr.numerator * 10 ** digits // fr.denominator
    s = str(scaled).rjust(digits + 1, "0")
    return ("-" if neg else "") + s[:-digits] + "." + s[-digits:]


def cmd_measure(args):
    digits = _digits_for(args.precision_bits)
    regime = regime_of(args.regime)
    rep = measure_report(regime, args.n,
                         {"k_max": args.k_max, "len_max": args.len_max,
                          "q_cap": args.q_cap},
                         bits=args.precision_bits)
    rows = []
    for row in rep["rows"]:
        rows.append({
            "k_max": row["k_max"],
            "coverage_lo": _dec_fraction(row["coverage_lo"], digits),
            "coverage_hi": _dec_fraction(row["coverage_hi"], digits),
        })
    emit(rows, ["k_max", "coverage_lo", "coverage_hi"],
         args.format, args.out)
    return 0


def cmd_identities(args):
    rows = []
    ok_all = True
    for case in run_identity_suite(n_max=args.n_max, k_max=args.k_max):
        ok_all = ok_all and case.passed
        rows.append({
            "identity": case.identity,
            "params": json.dumps(case.params, sort_keys=True, default=str),
            "passed": case.passed,
        })
    emit(rows, ["identity", "params", "passed"], args.format, args.out)
    return 0 if ok_all else 1


def cmd_suite(args):
    n = args.n
    results = []

    def add(name, ok):
        results.append({"check": name, "passed": bool(ok)})

    for m, nn in [(3, n), (4, max(4, n)), (5, 7)]:
        add(f"alpha0 m={m} n={nn}",
            all(ok for _, ok in alpha0_suite(m, nn)))
        add(f"alpha1 m={m} n={nn}",
            all(ok for _, ok in alpha1_suite(m, nn)))
    add("identities (n<=4, k<=2)",
        all(c.passed for c in run_identity_suite(n_max=4, k_max=2)))
    for regime, k in ((SMALL, 1), (MID, -1), (LARGE, -2)):
        add(f"partition {regime} k={k}",
            all(ok for _, ok in partition_check(regime, k, (1,), 3, n)))
        iv = endpoints(regime, k, TreeWord((1,)), n)
        add(f"certificates {regime} k={k}",
            all(ok for _, ok in digit_certificates(iv)))
        a = interior_rationals(*iv.j_bounds(), 1)[0]
        try:
            w = verify_sync(a, iv)
            add(f"verify {regime} k={k}", w.relation_ok)
        except Exception:
            add(f"verify {regime} k={k}", False)
    add("small k-chain", all(ok for _, ok in small_k_chain(n, 4)))
    add("large k-chain", all(ok for _, ok in large_k_chain(n, 4)))
    add("mid chain", all(ok for _, ok in mid_chain(n)))
    emit(results, ["check", "passed"], args.format, args.out)
    return 0 if all(r["passed"] for r in results) else 1


def cmd_figure_data(args):
    digits = _digits_for(args.precision_bits)
    n = args.n
    ctx = Ctx(3, n)
    gamma, eps, delta = constants(n)
    rows = []
    if args.figure == "endpoint-curves":
        # ell_1 and r_1, r_2 over an alpha grid, plus the regime markers
        lo, hi = Fraction(1, 50), Fraction(49, 50)
        grid = [lo + (hi - lo) * i / (args.samples - 1)
                for i in range(args.samples)]
        for a in grid:
            ap = AlphaParam(3, n, a)
            lrec = orbit(ap.l0, ap, 1)
            rrec = orbit(ap.r0, ap, 2)
            rows.append({
                "alpha": _dec_fraction(a, digits),
                "l0": decimal_string(ap.l0, digits),
                "l1": decimal_string(lrec.points[1], digits)
                if len(lrec.points) > 1 else "",
                "r1": decimal_string(rrec.points[1], digits)
                if len(rrec.points) > 1 else "",
                "r2": decimal_string(rrec.points[2], digits)
                if len(rrec.points) > 2 else "",
            })
        header = ["alpha", "l0", "l1", "r1", "r2"]
        markers = [("gamma", gamma), ("epsilon", eps), ("delta", delta)]
    else:  # cylinders
        iv = endpoints(SMALL, 1, TreeWord((1,)), n)
        ze, ee = refine(iv.zeta, args.precision_bits), \
            refine(iv.eta, args.precision_bits)
        grid = [ze.hi + (ee.lo - ze.hi) * i / (args.samples - 1)
                for i in range(args.samples)]
        for a in grid:
            ap = AlphaParam(3, n, a)
            lrec = orbit(ap.l0, ap, 5)
            rrec = orbit(ap.r0, ap, 2)
            row = {"alpha": _dec_fraction(a, digits)}
            for idx in range(1, 6):
                row[f"l{idx}"] = decimal_string(lrec.points[idx], digits) \
                    if len(lrec.points) > idx else ""
            row["r2"] = decimal_string(rrec.points[2], digits) \
                if len(rrec.points) > 2 else ""
            rows.append(row)
        header = ["alpha", "l1", "l2", "l3", "l4", "l5", "r2"]
        markers = [("zeta_1_1", iv.zeta), ("eta_1_1", iv.eta)]
    for name, val in markers:
        row = {h: "" for h in header}
        row[header[0]] = f"marker:{name}"
        row[header[1]] = decimal_string(val, digits)
        rows.append(row)
    emit(rows, header, args.format, args.out)
    if args.out and args.out.endswith(".png"):
        _render_png(rows, header, args.out)
    return 0


def _render_png(rows, header, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    xs, series = [], {h: [] for h in header[1:]}
    for row in rows:
        first = row[header[0]]
        if str(first).startswith("marker:"):
            continue
        xs.append(float(first))
        for h in header[1:]:
            series[h].append(float(row[h]) if row[h] != "" else None)
    fig, ax = plt.subplots(figsize=(8, 5))
    for h, ys in series.items():
        ax.plot(xs, ys, label=h, linewidth=1)
    for row in rows:
        if str(row[header[0]]).startswith("marker:"):
            ax.axvline(float(row[header[1]]), color="gray",
                       linewidth=0.8, linestyle="--")
    ax.set_xlabel("alpha")
    ax.legend(fontsize=8)
    fig.savefig(path, dpi=150)
    plt.close(fig)


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="alphacf")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--precision-bits", type=int, default=96)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("tree")
    sp.add_argument("--len-max", type=int, default=5)
    sp.add_argument("--q-cap", type=int, default=3)
    sp.add_argument("--trimmed-n", type=int, default=None)
    sp.set_defaults(func=cmd_tree)

    sp = sub.add_parser("intervals")
    sp.add_argument("--regime", choices=(SMALL, MID, LARGE), required=True)
    sp.add_argument("--k-max", type=int, default=3)
    sp.add_argument("--len-max", type=int, default=3)
    sp.add_argument("--q-cap", type=int, default=2)
    sp.set_defaults(func=cmd_intervals)

    sp = sub.add_parser("verify")
    sp.add_argument("--regime", choices=(SMALL, MID, LARGE), default=None)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--v", default="1")
    sp.add_argument("--alpha", default=None)
    sp.add_argument("--samples", type=int, default=5)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("orbit")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--start", default="l0")
    sp.add_argument("--steps", type=int, default=10)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("measure")
    sp.add_argument("--regime", choices=(SMALL, MID, LARGE), required=True)
    sp.add_argument("--k-max", type=int, default=6)
    sp.add_argument("--len-max", type=int, default=5)
    sp.add_argument("--q-cap", type=int, default=3)
    sp.set_defaults(func=cmd_measure)

    sp = sub.add_parser("identities")
    sp.add_argument("--n-max", type=int, default=5)
    sp.add_argument("--k-max", type=int, default=3)
    sp.set_defaults(func=cmd_identities)

    sp = sub.add_parser("suite")
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("figure-data")
    sp.add_argument("--figure", choices=("endpoint-curves", "cylinders"),
                    default="endpoint-curves")
    sp.add_argument("--samples", type=int, default=60)
    sp.set_defaults(func=cmd_figure_data)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (UsageError, WordError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
