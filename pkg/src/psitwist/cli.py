"""Command-line front end.

Subcommands wrap the library modules one-to-one; output is CSV (default) or
JSON with 10 significant digits for complex values, so identical configs
produce byte-identical files.  An optional TOML config file supplies defaults;
explicit flags override it.  Coefficient files resolve against
PSITWIST_DATA_DIR when given as relative paths.
"""

import argparse
import cmath
import json
import math
import sys
from fractions import Fraction

try:
    import tomllib
except ImportError:  # python < 3.11
    import tomli as tomllib

from . import arith, lfun, padic, sources
from .errors import PsitwistError

SIG_DIGITS = 10


def fmt_real(x):
    if x == math.inf:
        return "inf"
    return f"{x:.{SIG_DIGITS}g}"


def fmt_complex(z):
    z = complex(z)
    return f"{fmt_real(z.real)}{'+' if z.imag >= 0 else '-'}{fmt_real(abs(z.imag))}j"


def parse_complex(text):
    """Parse "re", "re,im" or python literal like "1+2j"."""
    text = text.strip()
    if "," in text:
        re, im = text.split(",")
        return complex(float(re), float(im))
    return complex(text)


def parse_range(text):
    """Parse "a..b" or a single integer into an inclusive range."""
    if ".." in text:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    n = int(text)
    return range(n, n + 1)


def _emit(args, lines, header=None):
    fmt = getattr(args, "format", "csv") or "csv"
    out = getattr(args, "output", None)
    if fmt == "json":
        payload = json.dumps(lines if header is None else {"columns": header, "rows": lines}, indent=0)
        text = payload + "\n"
    else:
        rows = lines if header is None else [",".join(header)] + [",".join(str(v) for v in r) for r in lines]
        text = "\n".join(str(r) if not isinstance(r, list) else ",".join(map(str, r)) for r in rows) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_source(args):
    kind = args.source
    if kind == "zeta":
        return sources.zeta_source()
    if kind == "chi4":
        return sources.character_source(sources.DirichletCharacter.quadratic_mod4())
    if kind == "char-file":
        chi = sources.DirichletCharacter.from_file(sources.data_path(args.char_file))
        return sources.character_source(chi)
    if kind == "ec":
        a, b = (int(v) for v in args.curve.split())
        curve = sources.EllipticCurve(a, b)
        bad = {}
        if args.bad_coeffs:
            for item in args.bad_coeffs.split(","):
                p, v = item.split(":")
                bad[int(p)] = int(v)
        conductor = set(bad) | {
            p for p, _ in arith.factorize(abs(curve.discriminant))
        }
        return sources.elliptic_source(curve, conductor, bad, args.prime_bound)
    if kind == "newform-file":
        neb = (
            sources.DirichletCharacter.from_file(sources.data_path(args.char_file))
            if args.char_file
            else sources.DirichletCharacter.trivial(1)
        )
        return sources.NewformSource.from_file(
            args.weight, args.level, neb, sources.data_path(args.newform_file)
        )
    raise ValueError(f"unknown source kind {kind!r}")


def build_padic_source(args, ctx):
    kind = args.source
    if kind == "trivial":
        return padic.trivial_padic_source()
    if kind == "quadratic":
        chi = sources.DirichletCharacter.quadratic_mod4()
        return padic.padic_character_source(chi, ctx)
    if kind == "char-file":
        chi = sources.DirichletCharacter.from_file(sources.data_path(args.char_file))
        return padic.padic_character_source(chi, ctx)
    raise ValueError(f"unknown p-adic source kind {kind!r}")


def parse_padic_alpha(text, ctx):
    """Parse "p", "p^j", "p^j*u" or a plain integer."""
    text = text.strip()
    if text == "p":
        return ctx.scalar(ctx.p)
    if text.startswith("p^"):
        rest = text[2:]
        if "*" in rest:
            j, u = rest.split("*")
            return ctx.scalar(ctx.p ** int(j) * int(u))
        return ctx.scalar(ctx.p ** int(rest))
    return ctx.scalar(int(text))


def cmd_sopfr(args):
    if args.plot is not None:
        n_max = args.plot
        table = arith.sopfr_table(n_max)
        guide = 3 / math.log(3)
        rows = [
            [n, int(table[n]), fmt_real(guide * math.log(n))]
            for n in range(1, n_max + 1)
        ]
        _emit(args, rows, header=["n", "sopfr", "guide"])
        return 0
    values = [str(arith.sopfr(n)) for n in parse_range(args.range)]
    _emit(args, [",".join(values)])
    return 0


def cmd_theta(args):
    values = [str(arith.theta(m)) for m in parse_range(args.range)]
    _emit(args, [",".join(values)])
    return 0


def cmd_preimages(args):
    _emit(args, [" ".join(str(n) for n in arith.sopfr_preimages(args.m))])
    return 0


def cmd_eval(args):
    src = build_source(args)
    alpha = parse_complex(args.alpha)
    s = parse_complex(args.s)
    if args.method == "series":
        r = lfun.eval_series(src, alpha, s, args.N)
    elif args.method == "euler":
        r = lfun.eval_euler(src, alpha, s, args.X)
    else:
        r = lfun.eval_split(src, alpha, s, args.X, args.N)
    _emit(
        args,
        [[fmt_complex(r.value), fmt_real(r.truncation_bound), r.terms_used]],
        header=["value", "truncation_bound", "terms_used"],
    )
    return 0


def cmd_eval_padic(args):
    ctx = padic.PadicContext(args.p, args.K)
    src = build_padic_source(args, ctx)
    alpha = parse_padic_alpha(args.alpha, ctx)
    s = Fraction(args.s)
    s_val = int(s) if s.denominator == 1 else ctx.scalar(s)
    value = padic.eval_padic_series(ctx, src, alpha, s_val)
    _emit(args, [repr(value)])
    return 0


def cmd_poles(args):
    src = build_source(args)
    if args.sweep_alpha:
        lo, hi, step = (float(v) for v in args.sweep_alpha.split(":"))
        rows = []
        a = lo
        while a <= hi + 1e-12:
            ps = lfun.poles(src, a, args.re_min, args.re_max, args.im_max)
            for q in ps[: args.top]:
                rows.append(
                    [fmt_real(a), q.prime, q.root_index, q.branch,
                     fmt_real(q.location.real), fmt_real(q.location.imag)]
                )
            a += step
        _emit(args, rows, header=["alpha", "p", "i", "k", "re", "im"])
        return 0
    alpha = parse_complex(args.alpha)
    ps = lfun.poles(src, alpha, args.re_min, args.re_max, args.im_max)
    if args.top:
        ps = ps[: args.top]
    rows = [
        [q.prime, q.root_index, q.branch, fmt_real(q.location.real),
         fmt_real(q.location.imag), fmt_real(lfun.verify_pole(src, alpha, q))]
        for q in ps
    ]
    _emit(args, rows, header=["p", "i", "k", "re", "im", "residual"])
    return 0


def cmd_bounds(args):
    alpha = parse_complex(args.alpha)
    rows = []
    for sigma in parse_range(args.sigma):
        lo, hi = lfun.magnitude_bounds(
            args.d, args.w, alpha, sigma, start_prime=args.remove_below or 2
        )
        rows.append([sigma, f"{lo:.4f}", f"{hi:.4f}"])
    _emit(args, rows, header=["sigma", "lower", "upper"])
    return 0


def cmd_mellin_check(args):
    chi = (
        sources.DirichletCharacter.from_file(sources.data_path(args.char_file))
        if args.char_file
        else sources.DirichletCharacter.trivial(1)
    )
    alpha = parse_complex(args.alpha)
    s = parse_complex(args.s)
    value = lfun.mellin_check(chi, alpha, s)
    ref = lfun.eval_series(sources.character_source(chi), alpha, s, args.N)
    rows = [[fmt_complex(value), fmt_complex(ref.value), fmt_real(abs(value - ref.value))]]
    _emit(args, rows, header=["mellin", "series", "difference"])
    return 0


def cmd_alpha_series(args):
    src = build_source(args)
    s = parse_complex(args.s)
    coeffs = lfun.alpha_expansion(src, s, args.M)
    rows = [[m, fmt_complex(a)] for m, a in enumerate(coeffs)]
    _emit(args, rows, header=["m", "coefficient"])
    return 0


def cmd_mahler(args):
    ctx = padic.PadicContext(args.p, args.K)
    src = build_padic_source(args, ctx)
    alpha = parse_padic_alpha(args.alpha, ctx)
    ms = padic.mahler_coefficients(ctx, src, alpha, args.n)
    rows = [[n, repr(m)] for n, m in enumerate(ms)]
    _emit(args, rows, header=["n", "coefficient"])
    return 0


def _add_output_flags(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", help="write to file instead of stdout")


def _add_source_flags(p):
    p.add_argument("--source", required=True,
                   choices=("zeta", "chi4", "char-file", "ec", "newform-file"))
    p.add_argument("--curve", help='short Weierstrass "a b" for --source ec')
    p.add_argument("--bad-coeffs", help='comma list "p:ap" for bad primes of ec')
    p.add_argument("--prime-bound", type=int, default=10**5)
    p.add_argument("--char-file", help="Dirichlet character value table file")
    p.add_argument("--newform-file", help='newform a_p table, lines "p a_p"')
    p.add_argument("--weight", type=int, default=2)
    p.add_argument("--level", type=int, default=1)


def build_parser():
    parser = argparse.ArgumentParser(prog="psitwist")
    parser.add_argument("--config", help="TOML file with flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sopfr", help="integer logarithm S(n) over a range")
    p.add_argument("range", nargs="?", default="1..10")
    p.add_argument("--plot", type=int, help="emit (n, S(n), guide curve) up to n_max")
    _add_output_flags(p)
    p.set_defaults(func=cmd_sopfr)

    p = sub.add_parser("theta", help="prime-partition counts")
    p.add_argument("range")
    _add_output_flags(p)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("preimages", help="all n with S(n) = m")
    p.add_argument("m", type=int)
    _add_output_flags(p)
    p.set_defaults(func=cmd_preimages)

    p = sub.add_parser("eval", help="complex-side evaluation")
    _add_source_flags(p)
    p.add_argument("--alpha", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--method", choices=("series", "euler", "split"), default="series")
    p.add_argument("--N", type=int, default=100_000)
    p.add_argument("--X", type=int, default=200)
    _add_output_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("eval-padic", help="p-adic series evaluation")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", default="p")
    p.add_argument("--s", default="0")
    p.add_argument("--K", type=int, default=8)
    p.add_argument("--source", default="trivial",
                   choices=("trivial", "quadratic", "char-file"))
    p.add_argument("--char-file")
    _add_output_flags(p)
    p.set_defaults(func=cmd_eval_padic)

    p = sub.add_parser("poles", help="pole lattice enumeration")
    _add_source_flags(p)
    p.add_argument("--alpha", default="0.5")
    p.add_argument("--re-min", type=float, default=-5.0)
    p.add_argument("--re-max", type=float, default=5.0)
    p.add_argument("--im-max", type=float, default=20.0)
    p.add_argument("--top", type=int)
    p.add_argument("--sweep-alpha", help='grid "lo:hi:step" for the alpha sweep')
    _add_output_flags(p)
    p.set_defaults(func=cmd_poles)

    p = sub.add_parser("bounds", help="sandwich magnitude bounds")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--w", type=float, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--sigma", required=True, help='value or range "1..10"')
    p.add_argument("--remove-below", type=int)
    _add_output_flags(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("mellin-check", help="Mellin quadrature cross-check")
    p.add_argument("--alpha", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--char-file")
    p.add_argument("--N", type=int, default=50_000)
    _add_output_flags(p)
    p.set_defaults(func=cmd_mellin_check)

    p = sub.add_parser("alpha-series", help="power-series coefficients in alpha")
    _add_source_flags(p)
    p.add_argument("--s", required=True)
    p.add_argument("--M", type=int, default=20)
    _add_output_flags(p)
    p.set_defaults(func=cmd_alpha_series)

    p = sub.add_parser("mahler", help="p-adic Mahler coefficients")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", default="p")
    p.add_argument("--K", type=int, default=8)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--source", default="trivial",
                   choices=("trivial", "quadratic", "char-file"))
    p.add_argument("--char-file")
    _add_output_flags(p)
    p.set_defaults(func=cmd_mahler)

    return parser


def _apply_config(parser, argv):
    """Pre-parse --config and inject its values as subparser defaults."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    path = argv[idx + 1]
    with open(path, "rb") as fh:
        cfg = tomllib.load(fh)
    rest = argv[:idx] + argv[idx + 2 :]
    if not rest:
        return rest
    command = rest[0]
    section = cfg.get(command, {})
    injected = []
    for key, value in section.items():
        flag = "--" + key.replace("_", "-")
        if not any(a == flag or a.startswith(flag + "=") for a in rest):
            injected += [flag, str(value)]
    return [command] + injected + rest[1:]


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except PsitwistError as exc:
        print(f"error: {exc.label}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
