"""Command-line front end.

Examples::

    relaxedchar char verma --rank 1 --level -1/2 --weight [0] --order 3 --format json
    relaxedchar char relaxed --rank 1 --level -1/2 --weight [-1/2] --order 10
    relaxedchar check exponents --rank 2 --level -3/2
    relaxedchar check identity --rank 2 --level -3/2 --weight [0,-3/2] --order 10
    relaxedchar kl table --rank 1 --level -1/2 --weight [0] --bound 6
    relaxedchar oracle rank --rank 1 --level -1/2 --weight [0] --offset [1] --depth 2
    relaxedchar list admissible --rank 2 --level -3/2
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import random
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import admissible as adm
from . import characters as chars
from . import charring, kl, oracle
from .cartan import AffineWeight, finite_weight, in_P0plus_k, parse_vector, sugawara_weight
from .numbers import as_number, format_number, parse_number
from .qseries import QSeries

FIXTURE_DIR = Path(__file__).with_name("fixtures")


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        err = ConfigError(message)
        err.usage = self.format_usage()
        raise err


def threads() -> int:
    raw = os.environ.get("RELAXEDCHAR_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"RELAXEDCHAR_THREADS must be an integer, got {raw!r}")
    return max(1, n)


def _pmap(fn, items):
    n = threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------- parsing


def _rational(text: str):
    try:
        return parse_number(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"not an exact number: {text!r}") from e


def _vector(text: str) -> tuple:
    try:
        return parse_vector(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(str(e)) from e


def _weight(args, required: bool = True) -> AffineWeight | None:
    if args.weight is None:
        if required:
            raise ConfigError("--weight is required")
        return None
    lam = _vector(args.weight)
    if len(lam) != args.rank:
        raise ConfigError(f"--weight has {len(lam)} coordinates, rank is {args.rank}")
    level = _rational(args.level)
    if level + args.rank + 1 == 0:
        raise ConfigError("critical level")
    fw = finite_weight(lam)
    delta = getattr(args, "delta", None)
    if delta is not None:
        return AffineWeight(fw, level, _rational(delta))
    return sugawara_weight(fw, level)


def _fmt_vec(v) -> str:
    return "[" + ",".join(format_number(c) for c in v) + "]"


def _weight_json(L: AffineWeight) -> dict:
    return {
        "rank": L.rank,
        "level": format_number(L.level),
        "lambda": _fmt_vec(L.finite.coords),
        "d": format_number(L.delta_coeff),
    }


def _series_rows(label: str, s: QSeries) -> list:
    return [
        {"weight": label, "n": i, "exponent": format_number(s.base + i), "coefficient": format_number(c)}
        for i, c in enumerate(s.coeffs)
    ]


# ---------------------------------------------------------------- output


def _emit(result: dict, rows: list | None, args) -> str:
    fmt = getattr(args, "format", "json")
    if fmt == "json":
        text = json.dumps(result, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        rows = rows if rows is not None else [_flat(result)]
        buf = io.StringIO()
        cols = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
        text = buf.getvalue()
    else:
        rows = rows if rows is not None else [_flat(result)]
        text = _table(rows)
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return text


def _flat(d: dict) -> dict:
    return {k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v) for k, v in d.items()}


def _table(rows: list) -> str:
    if not rows:
        return "(empty)\n"
    cols = list(rows[0])
    cells = [[str(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    for row in cells:
        lines.append("  ".join(x.rjust(w) for x, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- char


def cmd_char(args) -> int:
    Lam = _weight(args)
    N = args.order
    kind = args.kind
    if kind in ("verma", "relaxed", "simple-relaxed", "parabolic-verma", "w-ord") and not in_P0plus_k(Lam):
        raise ConfigError("weight must be integrable for the Levi factor (first l-1 coordinates in Z>=0)")
    coset = finite_weight(_vector(args.coset)) if args.coset else None
    if kind == "verma":
        ch = chars.relaxed_verma_character(Lam, N, coset)
        return _emit_zchar(ch, kind, Lam, args)
    if kind in ("relaxed", "simple-relaxed"):
        ch = chars.relaxed_simple_character(Lam, N, coset)
        return _emit_zchar(ch, kind, Lam, args)
    if kind == "w-ord":
        s = chars.w_ordinary_character(Lam, N)
        result = {"kind": kind, "weight": _fmt_vec(Lam.finite.coords), "level": format_number(Lam.level), "series": s.to_json()}
        _emit(result, _series_rows(_fmt_vec(Lam.finite.coords), s), args)
        return 0
    # parabolic-verma: strings over a window of weights
    ch = charring.affine_parabolic_verma_char(Lam, N, window=args.window)
    strings = sorted(ch.strings.items(), key=lambda kv: tuple(kv[0].coords))
    result = {
        "kind": kind,
        "weight": _fmt_vec(Lam.finite.coords),
        "level": format_number(Lam.level),
        "support": ch.support_tag,
        "strings": {_fmt_vec(mu.coords): s.to_json() for mu, s in strings},
    }
    rows = []
    for mu, s in strings:
        rows.extend(_series_rows(_fmt_vec(mu.coords), s))
    _emit(result, rows, args)
    return 0


def _emit_zchar(ch, kind, Lam, args) -> int:
    (key, s), = ch.strings.items()
    result = {
        "kind": kind,
        "weight": _fmt_vec(Lam.finite.coords),
        "level": format_number(Lam.level),
        "support": ch.support_tag,
        "coset": _fmt_vec(key.coords),
        "base": format_number(s.base),
        "coeffs": [format_number(c) for c in s.coeffs],
    }
    _emit(result, _series_rows(_fmt_vec(key.coords), s), args)
    return 0


# ---------------------------------------------------------------- check


def _default_weights(rank: int, level) -> list:
    """Admissible weights in P^{0,+}_k found in a small box."""
    level = as_number(level)
    radius = int(abs(level)) + rank + 1
    found = adm.admissible_weights(rank, level, radius)
    return sorted((L for L in found if in_P0plus_k(L)), key=lambda L: tuple(L.finite.coords))


def cmd_check(args) -> int:
    what = args.what
    if what == "fixtures":
        return cmd_fixtures(args)
    level = _rational(args.level)
    if what == "exponents":
        rng = random.Random(args.seed)
        rows = []
        bad = 0
        for _ in range(args.samples):
            lam = [Fraction(rng.randint(0, 4)) for _ in range(args.rank - 1)] + [Fraction(rng.randint(-20, 20), rng.randint(1, 6))]
            Om = sugawara_weight(finite_weight(lam), level)
            d = chars.exponent_defect(Om)
            if d != 0:
                bad += 1
                rows.append({"weight": _fmt_vec(lam), "defect": format_number(d)})
        result = {"check": what, "rank": args.rank, "level": format_number(level), "samples": args.samples, "failures": bad, "ok": bad == 0}
        _emit(result, rows or None, args)
        return 0 if bad == 0 else 1
    if what == "identity":
        weights = [_weight(args)] if args.weight else _default_weights(args.rank, level)
        coset = finite_weight(_vector(args.coset)) if args.coset else None

        def one(L):
            r = chars.main_identity_check(L, coset, args.order)
            return {
                "weight": _fmt_vec(L.finite.coords),
                "ok": r.ok,
                "first_difference": None if r.first_difference is None else format_number(r.first_difference),
            }

        rows = _pmap(one, weights)
        ok = all(r["ok"] for r in rows)
        _emit({"check": what, "order": args.order, "ok": ok, "results": rows}, rows, args)
        return 0 if ok else 1
    if what == "bgg":
        Lam = _weight(args)
        r = chars.bgg_identity_check(Lam, args.order)
        result = {"check": what, "weight": _fmt_vec(Lam.finite.coords), "order": args.order, "ok": r.ok, "strings_checked": r.checked}
        if r.first_failure is not None:
            result["first_failure"] = str(r.first_failure)
        _emit(result, None, args)
        return 0 if r.ok else 1
    if what == "modular-span":
        orders = tuple(int(x) for x in args.orders.split(","))
        spectrum = [e.symbol.weight for e in adm.enumerate_spectrum(args.rank, level)]
        rep = chars.modular_span(spectrum, orders)
        result = {
            "check": what,
            "level": format_number(level),
            "modules": rep.count,
            "orders": list(rep.orders),
            "ranks": list(rep.ranks),
            "ok": rep.stable,
        }
        _emit(result, None, args)
        return 0 if rep.stable else 1
    if what == "oracle":
        Lam = _weight(args)
        rep = oracle_comparison(Lam, args.depth, args.window, args.parabolic)
        _emit(rep, None, args)
        return 0 if rep["ok"] else 1
    raise ConfigError(f"unknown check {what!r}")


def oracle_comparison(Lam: AffineWeight, depth: int, window: int, parabolic: bool = False) -> dict:
    """Gram ranks against KL-route multiplicities for every convention."""
    l = Lam.rank
    offsets = [g for g in itertools.product(range(-window, window + 1), repeat=l) if sum(abs(x) for x in g) <= window]
    ranks = {(g, n): oracle.gram_rank(Lam, g, n, parabolic).rank for g in offsets for n in range(depth + 1)}
    agree = {}
    mismatch = {}
    for conv in kl.CONVENTIONS:
        try:
            mult = chars.simple_weight_multiplicities(Lam, depth, offsets, conv)
        except AssertionError as e:
            agree[conv] = False
            mismatch[conv] = f"assertion: {e}"
            continue
        bad = [k for k in sorted(ranks) if ranks[k] != mult[k]]
        agree[conv] = not bad
        if bad:
            g, n = bad[0]
            mismatch[conv] = {"offset": list(g), "depth": n, "oracle": ranks[bad[0]], "kl": format_number(mult[bad[0]])}
    default = "inverse-signed" if kl._orbit(Lam, Lam.conformal_weight + depth).sign > 0 else "direct-signed"
    return {
        "check": "oracle",
        "weight": _fmt_vec(Lam.finite.coords),
        "level": format_number(Lam.level),
        "depth": depth,
        "weights_checked": len(ranks),
        "default_convention": default,
        "agreeing_conventions": [c for c in kl.CONVENTIONS if agree[c]],
        "mismatches": mismatch,
        "ok": agree[default],
    }


# ---------------------------------------------------------------- kl / oracle / list


def cmd_kl(args) -> int:
    Lam = _weight(args)
    bound = Lam.conformal_weight + _rational(args.bound)
    vec = kl.simple_in_verma(Lam, bound)
    par = {}
    if in_P0plus_k(Lam):
        par = kl.parabolic_coefficients(Lam, bound).entries
    rows = []
    for M, a in vec.sorted_items():
        rows.append(
            {
                "y_word": vec.words.get(M, ""),
                "weight": _fmt_vec(M.finite.coords),
                "h": format_number(M.conformal_weight),
                "a": a,
                "c": par.get(M, "") if M in par else "",
            }
        )
    result = {"weight": _fmt_vec(Lam.finite.coords), "level": format_number(Lam.level), "rows": rows}
    _emit(result, rows, args)
    return 0


def cmd_oracle(args) -> int:
    Lam = _weight(args)
    try:
        if args.what == "rank":
            off = tuple(int(x) for x in _vector(args.offset))
            if len(off) != Lam.rank:
                raise ConfigError("--offset must have rank coordinates")
            blk = oracle.gram_rank(Lam, off, args.depth, args.parabolic)
            out = blk.to_json()
            out["weight"] = _weight_json(blk.weight)
            _emit(out, None, args)
            return 0
        s = oracle.oracle_string_limit(Lam, args.order, (args.nmin, 0), parabolic=args.parabolic)
    except oracle.DepthExceeded as e:
        raise ConfigError(str(e))
    except oracle.NoStabilization as e:
        _emit({"error": str(e)}, None, args)
        return 1
    _emit({"weight": _fmt_vec(Lam.finite.coords), "series": s.to_json()}, _series_rows("limit", s), args)
    return 0


def cmd_list(args) -> int:
    level = _rational(args.level)
    sing = adm.load_sing(args.sing) if args.sing else None
    if args.rank == 2 and level.denominator == 2:
        pairs = [(e.symbol.weight, e.to_json()) for e in adm.enumerate_spectrum(2, level, sing)]
    else:
        radius = args.radius if args.radius is not None else int(abs(level)) + args.rank + 1
        pairs = [(L, adm.is_admissible(L).to_json()) for L in adm.admissible_weights(args.rank, level, radius)]
    for L, it in pairs:
        it["weight"] = _weight_json(L)
    items = [it for _, it in pairs]
    rows = [
        {"lambda": _fmt_vec(L.finite.coords), "admissible": it["admissible"], "cosets": it.get("cosets", "")}
        for L, it in pairs
    ]
    if getattr(args, "format", "json") == "json":
        _emit({"rank": args.rank, "level": format_number(level), "count": len(items), "weights": items}, rows, args)
    else:
        _emit({}, rows, args)
    return 0


# ---------------------------------------------------------------- fixtures


def fixture_regression(suite) -> dict:
    """Re-run every fixture in ``suite`` (a directory or list of files)."""
    if isinstance(suite, (str, Path)):
        files = sorted(Path(suite).glob("*.json"))
    else:
        files = [Path(p) for p in suite]
    results = []
    for f in files:
        fx = json.loads(f.read_text())
        got = run_capture(fx["argv"])
        expected = json.dumps(fx["expected"], indent=2, sort_keys=True) + "\n"
        if got == expected:
            results.append({"fixture": f.name, "ok": True})
            continue
        where = _first_divergence(fx["expected"], json.loads(got) if got.strip().startswith("{") else got)
        results.append({"fixture": f.name, "ok": False, "first_difference": where})
    return {"fixtures": len(files), "ok": all(r["ok"] for r in results), "results": results}


def _first_divergence(a, b, path="$"):
    if type(a) != type(b):
        return f"{path}: {a!r} != {b!r}"
    if isinstance(a, dict):
        for k in sorted(set(a) | set(b)):
            if k not in a or k not in b:
                return f"{path}.{k}: missing"
            d = _first_divergence(a[k], b[k], f"{path}.{k}")
            if d:
                return d
        return None
    if isinstance(a, list):
        for i, (x, y) in enumerate(zip(a, b)):
            d = _first_divergence(x, y, f"{path}[{i}]")
            if d:
                return d
        if len(a) != len(b):
            return f"{path}: length {len(a)} != {len(b)}"
        return None
    return None if a == b else f"{path}: {a!r} != {b!r}"


def run_capture(argv) -> str:
    old = sys.stdout
    buf = io.StringIO()
    sys.stdout = buf
    try:
        run(list(argv) + ["--format", "json"])
    finally:
        sys.stdout = old
    return buf.getvalue()


def cmd_fixtures(args) -> int:
    suite = args.suite or FIXTURE_DIR
    rep = fixture_regression(suite)
    _emit(rep, [{"fixture": r["fixture"], "ok": r["ok"], "first_difference": r.get("first_difference", "")} for r in rep["results"]] or None, args)
    return 0 if rep["ok"] else 1


# ---------------------------------------------------------------- parser


def _common(p, weight=True):
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--level", default="-1/2", help="exact rational, e.g. -3/2")
    if weight:
        p.add_argument("--weight", help="finite part in fundamental-weight coordinates, e.g. [0,-1/2]")
        p.add_argument("--delta", help="override the delta coefficient (default: Sugawara value)")
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--out", help="write output to this file")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="relaxedchar", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)
    raw = argparse.RawDescriptionHelpFormatter

    p = sub.add_parser(
        "char",
        formatter_class=raw,
        help="characters and string functions",
        epilog="example: relaxedchar char verma --rank 1 --level -1/2 --weight [0] --order 3",
    )
    p.add_argument("kind", choices=("verma", "parabolic-verma", "relaxed", "simple-relaxed", "w-ord"))
    _common(p)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--coset", help="coset representative for relaxed characters")
    p.add_argument("--window", type=int, default=2, help="height window for parabolic-verma strings")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser(
        "check",
        formatter_class=raw,
        help="identity checks",
        epilog="example: relaxedchar check exponents --rank 2 --level -3/2",
    )
    p.add_argument("what", choices=("identity", "bgg", "exponents", "modular-span", "oracle", "fixtures"))
    _common(p)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--coset")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--orders", default="10,15,20")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--parabolic", action="store_true")
    p.add_argument("--suite", help="fixture directory (default: bundled fixtures)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser(
        "kl",
        formatter_class=raw,
        help="KL coefficient tables",
        epilog="example: relaxedchar kl table --rank 1 --level -1/2 --weight [0] --bound 6",
    )
    p.add_argument("what", choices=("table",))
    _common(p)
    p.add_argument("--bound", default="6", help="energy window above h of the weight")
    p.set_defaults(func=cmd_kl)

    p = sub.add_parser(
        "oracle",
        formatter_class=raw,
        help="Gram-matrix oracle",
        epilog="example: relaxedchar oracle rank --rank 1 --level -1/2 --weight [0] --offset [1] --depth 2",
    )
    p.add_argument("what", choices=("rank", "string-limit"))
    _common(p)
    p.add_argument("--offset", default=None, help="lambda - mu in simple-root coordinates")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--nmin", type=int, default=-8)
    p.add_argument("--parabolic", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser(
        "list",
        formatter_class=raw,
        help="admissible weights and spectra",
        epilog="example: relaxedchar list admissible --rank 2 --level -3/2",
    )
    p.add_argument("what", choices=("admissible",))
    _common(p, weight=False)
    p.add_argument("--sing", help="JSON file with Sing data")
    p.add_argument("--radius", type=int)
    p.set_defaults(func=cmd_list)
    return top


_NEGATIVE = re.compile(r"-\d[\d/]*")


def _glue_negatives(argv: list) -> list:
    # argparse reads "-3/2" as an option flag; attach it to the preceding option
    out = []
    for tok in argv:
        if out and _NEGATIVE.fullmatch(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv=None) -> int:
    parser = build_parser()
    argv = _glue_negatives(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
        if getattr(args, "what", None) == "rank" and args.command == "oracle" and args.offset is None:
            raise ConfigError("--offset is required")
        return args.func(args)
    except ConfigError as e:
        sys.stderr.write(getattr(e, "usage", None) or parser.format_usage())
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
