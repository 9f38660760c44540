"""Command line front end: ``zeta {algebra|igusa|nondeg-check|oracle} FILE``.

Exit status 0 on success, 2 when the input is refused (degenerate family,
size guards, excluded primes), 1 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from importlib import resources

from .algebra import AlgebraPresentation, cone_integral_data
from .errors import InvalidInput, ZetaError
from .laurent import LaurentPolynomial
from .newton import DEFAULT_POLICY, nondegeneracy_check, probe_degeneracy
from .oracle import congruence_counts, sublattice_counts
from .polyhedra import HalfOpenCone
from .ratfun import TopRatFun, normalize_fraction, power_series_coeffs
from .zeta import igusa_data, padic_zeta, padic_zeta_uniform, specialized, topological_zeta

log = logging.getLogger("conezeta")

COMMANDS = ("algebra", "igusa", "nondeg-check", "oracle")
POLY_KEYS = {"n", "polys", "cone"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def build_parser():
    p = _Parser(prog="zeta", description="Exact p-adic and topological zeta functions.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="JSON problem file, or builtin:NAME for a bundled example")
    p.add_argument("--kind", choices=("topological", "padic"), default="topological")
    p.add_argument("--mode", choices=("subalgebra", "ideal", "module"))
    p.add_argument("--q", type=int, help="residue field size (prime power) for p-adic output")
    p.add_argument("--series", type=int, metavar="K", help="also print coefficients up to T^K")
    p.add_argument("--out", help="write the output here instead of stdout")
    p.add_argument("--format", choices=("text", "latex", "json"), default="text")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--nondeg-policy", metavar="P1,P2,..:E", help="primes and maximal field degree")
    p.add_argument("--allow-likely", action="store_true", default=True,
                   help="accept families only supported by finite-field search (default)")
    p.add_argument("--strict", action="store_true", help="refuse unless non-degeneracy is certified")
    p.add_argument("--interpolate-q", metavar="P1,P2,..", help="heuristic uniform p-adic formula")
    p.add_argument("--timing", action="store_true", help="include timings in the JSON report")
    return p


def parse_policy(text):
    if not text:
        return dict(DEFAULT_POLICY)
    primes, _, deg = text.partition(":")
    try:
        ps = tuple(int(x) for x in primes.split(",") if x)
        out = {"primes": ps or DEFAULT_POLICY["primes"],
               "max_degree": int(deg) if deg else DEFAULT_POLICY["max_degree"]}
    except ValueError:
        raise InvalidInput(f"bad policy {text!r}") from None
    if any(p < 2 for p in out["primes"]) or out["max_degree"] < 1:
        raise InvalidInput(f"bad policy {text!r}")
    return out


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise InvalidInput(f"bad integer list {text!r}") from None


# ------------------------------------------------------------------ input

def read_input(path):
    if path.startswith("builtin:"):
        name = path.split(":", 1)[1]
        try:
            text = resources.files("conezeta").joinpath("data", f"{name}.json").read_text()
        except (FileNotFoundError, OSError):
            raise InvalidInput(f"no bundled example {name!r}") from None
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise InvalidInput(f"cannot read {path}: {e.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInput(f"{path}: not valid JSON ({e.msg})") from None
    if not isinstance(obj, dict):
        raise InvalidInput("top level must be an object")
    return obj


def parse_poly_file(obj):
    """(polys, multiplicities, cone or None)."""
    extra = set(obj) - POLY_KEYS
    if extra:
        raise InvalidInput(f"unknown keys {sorted(extra)}")
    try:
        n = int(obj["n"])
        polys, mults = [], []
        for item in obj["polys"]:
            bad = set(item) - {"coeffs", "multiplicity"}
            if bad:
                raise InvalidInput(f"unknown keys {sorted(bad)}")
            for t in item["coeffs"]:
                if set(t) - {"exp", "c"} or len(t["exp"]) != n:
                    raise InvalidInput(f"bad term {t}")
            f = LaurentPolynomial(n, {tuple(int(x) for x in t["exp"]): Fraction(str(t["c"]))
                                      for t in item["coeffs"]})
            if not f:
                raise InvalidInput("zero polynomial")
            polys.append(f)
            mults.append(int(item.get("multiplicity", 1)))
        cone = None
        if "cone" in obj:
            c = obj["cone"]
            if set(c) - {"closed", "strict"}:
                raise InvalidInput(f"unknown cone keys {sorted(set(c) - {'closed', 'strict'})}")
            cone = HalfOpenCone(n, tuple(tuple(r) for r in c.get("closed", [])),
                                tuple(tuple(r) for r in c.get("strict", [])))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InvalidInput):
            raise
        raise InvalidInput(f"malformed polynomial file: {e}") from None
    if not polys:
        raise InvalidInput("no polynomials given")
    return polys, mults, cone


def parse_algebra(obj, mode=None):
    if mode:
        obj = dict(obj, mode=mode)
    try:
        return AlgebraPresentation.from_json(obj)
    except (TypeError, ValueError, KeyError) as e:
        if isinstance(e, InvalidInput):
            raise
        raise InvalidInput(f"malformed algebra file: {e}") from None


# --------------------------------------------------------------- commands

def _zeta_job(data, args, policy):
    allow = not args.strict
    result = {}
    if args.interpolate_q:
        W, rep = padic_zeta_uniform(data, _int_list(args.interpolate_q), policy=policy, allow_likely=allow)
        S = specialized(data, W)
        result["formula"] = normalize_fraction(S)
        result["termsum"] = S
        return result, rep
    if args.kind == "topological":
        T, rep = topological_zeta(data, policy=policy, allow_likely=allow, workers=args.threads)
        result["formula"] = specialized(data, T)
        return result, rep
    if args.q is None:
        raise InvalidInput("--kind padic needs --q")
    W, rep = padic_zeta(data, args.q, policy=policy, allow_likely=allow, workers=args.threads)
    S = specialized(data, W)
    result["formula"] = normalize_fraction(S, args.q)
    result["termsum"] = S
    if args.series is not None:
        result["series"] = [str(c) for c in power_series_coeffs(S, args.series, args.q)]
    return result, rep


def run(args):
    """Returns (exit status, payload dict)."""
    obj = read_input(args.input)
    policy = parse_policy(args.nondeg_policy)
    if args.threads < 1:
        raise InvalidInput("--threads must be positive")
    payload = {"command": args.command, "input": args.input}
    is_poly = "polys" in obj
    if args.command == "algebra":
        A = parse_algebra(obj, args.mode)
        data = cone_integral_data(A)
        payload["algebra"] = {"name": A.name, "rank": A.rank, "mode": A.mode, "kind": A.kind}
        result, rep = _zeta_job(data, args, policy)
    elif args.command == "igusa":
        polys, mults, cone = parse_poly_file(obj)
        if any(x < 0 for f in polys for e in f.coeffs for x in e):
            raise InvalidInput("igusa input must consist of polynomials")
        data = igusa_data(polys, mults, cone)
        result, rep = _zeta_job(data, args, policy)
    elif args.command == "nondeg-check":
        if is_poly:
            polys, _, cone = parse_poly_file(obj)
            from .newton import PolyFamily
            fam, C0 = PolyFamily([polys], polys[0].n), cone
        else:
            data = cone_integral_data(parse_algebra(obj, args.mode))
            fam, C0 = data.family, data.C0
        verdict = probe_degeneracy(fam, C0, policy) or nondegeneracy_check(fam, C0, policy)
        payload["verdict"] = verdict.to_dict()
        payload["text"] = verdict.status
        return (2 if verdict.status == "WitnessNo" else 0), payload
    else:
        if args.q is None or args.series is None:
            raise InvalidInput("oracle needs --q and --series")
        if is_poly:
            polys, _, _ = parse_poly_file(obj)
            f = polys[0]
            if len(polys) == 1 and not any(x < 0 for e in f.coeffs for x in e):
                table = congruence_counts(f, args.q, args.series)
            else:
                raise InvalidInput("oracle takes a single polynomial")
        else:
            table = sublattice_counts(parse_algebra(obj, args.mode), args.q, args.series)
        payload["counts"] = table.to_dict()
        payload["text"] = " ".join(str(c) for c in table.counts)
        return 0, payload
    payload["result"] = _result_json(result)
    payload["report"] = rep.to_dict()
    if not args.timing:
        payload["report"].pop("timing_seconds", None)
    return 0, payload


def _result_json(result):
    F = result["formula"]
    out = {"text": F.to_text(), "latex": F.to_text(latex=True)}
    if isinstance(F, TopRatFun):
        out["topological"] = F.to_json()
    if "termsum" in result:
        S = result["termsum"]
        out["termsum"] = {"m": S.m, "terms": S.to_json()}
    if "series" in result:
        out["series"] = result["series"]
    return out


def render(payload, fmt="text"):
    """Formula text (or LaTeX) of a payload; recomputed from the stored
    exact data when present, so saved reports re-render identically."""
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True)
    res = payload.get("result")
    if res is None:
        return payload.get("text", "")
    if "topological" in res:
        F = TopRatFun.from_json(res["topological"])
        text = F.to_text(latex=fmt == "latex")
    else:
        text = res["latex"] if fmt == "latex" else res["text"]
    if "series" in res:
        text += "\n" + " ".join(res["series"])
    return text


def _configure_logging():
    level = os.environ.get("ZETA_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    _configure_logging()
    fmt = "text"
    out = None
    try:
        args = build_parser().parse_args(argv)
        fmt, out = args.format, args.out
        status, payload = run(args)
    except InvalidInput as e:
        status, payload = 1, {"error": e.to_dict()}
    except ZetaError as e:
        status, payload = 2, {"error": e.to_dict()}
    if "error" in payload:
        text = json.dumps(payload, indent=2, sort_keys=True)
        print(text, file=sys.stderr)
        if fmt == "json":
            _emit(text, out)
        return status
    for w in payload.get("report", {}).get("warnings", []):
        log.warning(w)
    _emit(render(payload, fmt), out)
    return status


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
