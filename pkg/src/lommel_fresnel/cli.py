"""Command-line interface: ``lommel-fresnel <verb> [flags]``.

Verbs
  eval         evaluate one target at one parameter point
  table        evaluate a target over parameter grids
  compare      closed form against an independent oracle, per grid point
  asym         asymptotic value against the exact value and its error bound
  paper-check  run every acceptance check and print the audit report

Grid syntax for numeric flags: comma lists (``1,2,5``), inclusive integer
ranges (``0..13``), ``lin:start:stop:count``, ``log:start:stop:count`` and
bare ``start:stop:count`` (linear).  ``--kind both`` expands to cos and sin.

Exit status: 0 on success, 1 when any row FAILs, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import importlib
import math
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import asymptotics as asy
from . import finite_integrals as fi
from . import rational_integrals as ri
from . import special_fn as sf
from .numeric import EPS, ConvergenceError, Evaluation
from .oracle import (
    IntegrandSpec,
    bessel_series,
    fresnel_maclaurin,
    quad_finite,
    quad_infinite_oscillatory,
)

# the package re-exports the function lommel(), which hides the submodule
lm = importlib.import_module(f"{__package__}.lommel")

PARAM_ORDER = ("n", "m", "mu", "nu", "eta", "a", "lambda", "kind", "variant", "N", "K")
INTEGER_PARAMS = {"n", "m", "eta", "N", "K"}
FRACTION_PARAMS = {"mu", "nu"}
FLOAT_PARAMS = {"a", "lambda"}


class UsageError(Exception):
    pass


# -- targets -----------------------------------------------------------------

@dataclass(frozen=True)
class Target:
    name: str
    params: tuple[str, ...]
    evaluate: Callable[[dict], Evaluation]
    reference: Callable[[dict], float] | None = None
    exact: Callable[[dict], float] | None = None
    summary: str = ""


def _scalar(value) -> Evaluation:
    if isinstance(value, Evaluation):
        return value
    v = float(value)
    return Evaluation(v, 4 * EPS * abs(v), "closed-form", 0)


def _exact_int(value) -> Evaluation:
    return Evaluation(float(value), 0.0, "closed-form", 0)


def _residual(value: float) -> Evaluation:
    return Evaluation(float(value), 0.0, "closed-form", 0)


def _oracle_value(ev: Evaluation) -> Evaluation:
    return Evaluation(ev.value, ev.abs_error_estimate, "oracle", ev.truncation_used, ev.notes)


def _anger_defining(order):
    def ref(p):
        spec = IntegrandSpec("anger-defining", dict(order=order, z=p["lambda"]), tol=1e-13)
        return quad_finite(spec).value
    return ref


def _moment_quad(p):
    return quad_finite(IntegrandSpec("moment", dict(n=p["n"], lam=p["lambda"], kind=p["kind"]))).value


def _inf_oracle(p, nu=None, eta=None, kind="cos"):
    params = dict(a=p["a"], lam=p["lambda"], nu=float(nu if nu is not None else p["nu"]),
                  eta=int(eta if eta is not None else p["eta"]), kind=kind)
    return quad_infinite_oscillatory(IntegrandSpec("rational-infinite", params, tol=1e-12)).value


def _unit_oracle(p):
    spec = IntegrandSpec("rational-finite", dict(a=p["a"], lam=p["lambda"], nu=1, eta=1,
                                                 kind=p["kind"]), tol=1e-13)
    return quad_finite(spec).value


def _lommel_series(mu_of):
    def ref(p):
        if p.get("variant", "s") != "s":
            raise UsageError("the ascending-series oracle covers the lower variant s only")
        return lm.series_oracle(mu_of(p), Fraction(1, 2), p["lambda"]).value
    return ref


def _moment_lommel_form(p):
    n = p["n"]
    return fi.moment_lommel_form(n // 2, p["lambda"], p["kind"], "even" if n % 2 == 0 else "odd")


def _anger(p, tables):
    order = p["nu"]
    if order.denominator != 1 or order < 2:
        raise UsageError("rational.anger needs an integer order --nu >= 2")
    order = int(order)
    return ri.anger_form_eval(order // 2, "even" if order % 2 == 0 else "odd",
                              tables, p["a"], p["lambda"])


def _build_targets(tables_loader: Callable[[], ri.CoefficientTables]) -> dict[str, Target]:
    T = Target
    lam = ("lambda",)
    half = Fraction(1, 2)
    targets = [
        # special functions; --lambda carries the argument
        T("special.fresnel_S", lam, lambda p: _scalar(sf.fresnel_S(p["lambda"])),
          lambda p: fresnel_maclaurin(p["lambda"], "S").value, summary="S(x), x = --lambda"),
        T("special.fresnel_C", lam, lambda p: _scalar(sf.fresnel_C(p["lambda"])),
          lambda p: fresnel_maclaurin(p["lambda"], "C").value, summary="C(x), x = --lambda"),
        T("special.aux_f", lam, lambda p: _scalar(sf.aux_f(p["lambda"])), summary="f(lambda)"),
        T("special.aux_g", lam, lambda p: _scalar(sf.aux_g(p["lambda"])), summary="g(lambda)"),
        T("special.aux_f_asym", ("lambda", "N"), lambda p: sf.aux_f_asym(p["lambda"], p["N"]),
          exact=lambda p: sf.aux_f(p["lambda"]), summary="asymptotic f"),
        T("special.aux_g_asym", ("lambda", "N"), lambda p: sf.aux_g_asym(p["lambda"], p["N"]),
          exact=lambda p: sf.aux_g(p["lambda"]), summary="asymptotic g"),
        T("special.J0", lam, lambda p: _scalar(sf.bessel_J0(p["lambda"])),
          lambda p: bessel_series(p["lambda"])[0], summary="Bessel J0(z), z = --lambda"),
        T("special.Y0", lam, lambda p: _scalar(sf.bessel_Y0(p["lambda"])),
          lambda p: bessel_series(p["lambda"])[1], summary="Bessel Y0(z), z = --lambda"),
        T("special.anger_half", lam, lambda p: _scalar(sf.anger_J_half(p["lambda"])),
          _anger_defining(0.5), summary="Anger J_{1/2}(z)"),
        T("special.anger_3half", lam, lambda p: _scalar(sf.anger_J_3half(p["lambda"])),
          _anger_defining(1.5), summary="Anger J_{3/2}(z)"),
        T("special.gamma_half", ("mu",), lambda p: _scalar(sf.gamma_half(p["mu"])),
          lambda p: math.gamma(float(p["mu"])), summary="Gamma(q) at half-integer q = --mu"),
        T("special.double_factorial", ("n",), lambda p: _exact_int(sf.double_factorial(p["n"])),
          summary="n!!"),
        T("special.greubel_eta", ("n",), lambda p: _exact_int(sf.greubel_eta(p["n"])),
          summary="Greubel eta(n)"),
        T("special.delta_eta", ("n",), lambda p: _exact_int(sf.delta_eta(p["n"])),
          summary="eta(n+1) - eta(n)"),
        # Lommel functions
        T("lommel.value", ("mu", "lambda", "variant"),
          lambda p: lm.lommel(p["mu"], p["lambda"], p["variant"]),
          _lommel_series(lambda p: p["mu"]), summary="s or S_{mu,1/2}(lambda)"),
        T("lommel.even", ("m", "lambda", "variant"),
          lambda p: lm.lommel_even(p["m"], p["variant"], p["lambda"]),
          _lommel_series(lambda p: Fraction(2 * p["m"])), summary="order 2m"),
        T("lommel.odd", ("m", "lambda", "variant"),
          lambda p: lm.lommel_odd(p["m"], p["variant"], p["lambda"]),
          _lommel_series(lambda p: Fraction(2 * p["m"] + 1)), summary="order 2m+1"),
        T("lommel.half_minus", ("m", "lambda"), lambda p: lm.lommel_half_minus(p["m"], p["lambda"]),
          _lommel_series(lambda p: 2 * p["m"] - half), summary="order 2m-1/2"),
        T("lommel.half_plus", ("m", "lambda"), lambda p: lm.lommel_half_plus(p["m"], p["lambda"]),
          _lommel_series(lambda p: 2 * p["m"] + half), summary="order 2m+1/2"),
        T("lommel.half_next", ("m", "lambda"), lambda p: lm.lommel_half_next(p["m"], p["lambda"]),
          _lommel_series(lambda p: 2 * p["m"] + 3 * half), summary="order 2m+3/2"),
        T("lommel.series", ("mu", "nu", "lambda"),
          lambda p: lm.series_oracle(p["mu"], p["nu"], p["lambda"]),
          summary="ascending series s_{mu,nu}"),
        T("lommel.recurrence_residual", ("mu", "lambda", "variant"),
          lambda p: _residual(lm.recurrence_residual(p["mu"], p["lambda"], p["variant"])),
          summary="three-term recurrence residual"),
        T("lommel.derivative_residual", ("mu", "lambda", "variant"),
          lambda p: _residual(lm.derivative_residual(p["mu"], p["lambda"], p["variant"])),
          summary="first-order derivative relation residual"),
        # moments int_0^1 z^n trig(lambda z^2) dz
        T("moment.closed", ("n", "lambda", "kind"),
          lambda p: fi.moment_closed(p["n"], p["lambda"], p["kind"]), _moment_quad,
          summary="closed form"),
        T("moment.series", ("n", "lambda", "kind"),
          lambda p: fi.moment_series(p["n"], p["lambda"], p["kind"]), _moment_quad,
          summary="Maclaurin series, |lambda| <= 4"),
        T("moment.lommel_form", ("n", "lambda", "kind"), _moment_lommel_form, _moment_quad,
          summary="through s_{mu,1/2}"),
        T("moment.ibp_residual", ("n", "lambda"),
          lambda p: _residual(fi.integration_by_parts_residual(p["n"], p["lambda"])),
          summary="integration-by-parts residual, k = --n"),
        # asymptotics
        T("asym.moment", ("n", "lambda", "kind", "N"),
          lambda p: asy.moment_asym(p["n"], p["lambda"], p["kind"], p["N"]),
          exact=lambda p: fi.moment_closed(p["n"], p["lambda"], p["kind"], precision="extended").value,
          summary="large-lambda moment expansion"),
        T("asym.rational", ("a", "lambda", "kind", "K", "N"),
          lambda p: asy.rational_asym(p["a"], p["lambda"], p["kind"], p["K"], p["N"]),
          exact=_unit_oracle, summary="unit-interval rational double sum"),
        T("asym.rational_lowest", ("a", "lambda", "kind"),
          lambda p: asy.rational_asym_lowest(p["a"], p["lambda"], p["kind"]),
          exact=_unit_oracle, summary="unit-interval lowest order"),
        T("asym.infinite_lowest", ("a", "lambda", "kind"),
          lambda p: asy.infinite_rational_asym_lowest(p["a"], p["lambda"], p["kind"]),
          exact=lambda p: ri.infinite_exact(p["a"], p["lambda"], p["kind"]).value,
          summary="half-line lowest order"),
        T("asym.hankel", ("a", "lambda", "N"),
          lambda p: Evaluation(ri.I_half_one_hankel(p["a"], p["lambda"], p["N"] or 4), 0.0,
                               "asymptotic", p["N"] or 4),
          exact=lambda p: ri.I_half_one(p["a"], p["lambda"], precision="extended").value,
          summary="Hankel expansion of I_1/2^(1); N terms (<= 4)"),
        T("asym.I12", ("a", "lambda"),
          lambda p: Evaluation(ri.I_one_two_asym(p["a"], p["lambda"]), 0.0, "asymptotic", 0),
          exact=lambda p: ri.I_one_two(p["a"], p["lambda"]).value,
          summary="large-lambda I_1^(2)"),
        # rational integrals on the half-line
        T("rational.exact", ("a", "lambda", "kind"),
          lambda p: ri.infinite_exact(p["a"], p["lambda"], p["kind"]),
          lambda p: _inf_oracle(p, 1, 1, p["kind"]), summary="trig(lambda z^2)/(1+a z^2)"),
        T("rational.Ihalf1", ("a", "lambda"), lambda p: ri.I_half_one(p["a"], p["lambda"]),
          lambda p: _inf_oracle(p, 0.5, 1), summary="I_1/2^(1)"),
        T("rational.I12", ("a", "lambda"), lambda p: ri.I_one_two(p["a"], p["lambda"]),
          lambda p: _inf_oracle(p, 1, 2), summary="I_1^(2), Fresnel form"),
        T("rational.I12_aux", ("a", "lambda"), lambda p: ri.I_one_two_aux(p["a"], p["lambda"]),
          lambda p: _inf_oracle(p, 1, 2), summary="I_1^(2), auxiliary-function form"),
        T("rational.I22", ("a", "lambda"), lambda p: ri.I_two_two(p["a"], p["lambda"]),
          lambda p: _inf_oracle(p, 2, 2), summary="I_2^(2)"),
        T("rational.I21", ("a", "lambda"), lambda p: ri.I_two_one(p["a"], p["lambda"]),
          lambda p: _inf_oracle(p, 2, 1), summary="I_2^(1)"),
        T("rational.Inu1", ("nu", "a", "lambda"), lambda p: ri.I_nu_one(p["nu"], p["a"], p["lambda"]),
          lambda p: _inf_oracle(p, p["nu"], 1), summary="I_nu^(1), lifted in nu"),
        T("rational.power_reduce", ("nu", "eta", "a", "lambda"),
          lambda p: ri.power_reduce(ri.RationalSpec(p["a"], p["lambda"], p["nu"], p["eta"])),
          lambda p: _inf_oracle(p), summary="I_nu^(eta) by power reduction"),
        T("rational.value", ("nu", "eta", "a", "lambda"),
          lambda p: ri.rational_value(p["nu"], p["eta"], p["a"], p["lambda"]),
          lambda p: _inf_oracle(p), summary="I_nu^(eta), best route"),
        T("rational.dd_residual", ("nu", "eta", "a", "lambda"),
          lambda p: _residual(ri.dd_recursion_residual(p["nu"], p["eta"], p["a"], p["lambda"])),
          summary="recursion-in-nu residual, relative step 1e-4"),
        T("rational.anger", ("nu", "a", "lambda"), lambda p: _anger(p, tables_loader()),
          lambda p: _inf_oracle(p, p["nu"], 1), summary="Anger-function template, order --nu"),
        # oracles
        T("oracle.moment", ("n", "lambda", "kind"),
          lambda p: _oracle_value(quad_finite(IntegrandSpec(
              "moment", dict(n=p["n"], lam=p["lambda"], kind=p["kind"])))),
          summary="adaptive Gauss-Kronrod"),
        T("oracle.rational_finite", ("nu", "eta", "a", "lambda", "kind"),
          lambda p: _oracle_value(quad_finite(IntegrandSpec("rational-finite", dict(
              a=p["a"], lam=p["lambda"], nu=float(p["nu"]), eta=p["eta"], kind=p["kind"])))),
          summary="unit interval"),
        T("oracle.rational_infinite", ("nu", "eta", "a", "lambda", "kind"),
          lambda p: _oracle_value(quad_infinite_oscillatory(IntegrandSpec("rational-infinite", dict(
              a=p["a"], lam=p["lambda"], nu=float(p["nu"]), eta=p["eta"], kind=p["kind"])))),
          summary="half-line, cell summation"),
    ]
    return {t.name: t for t in targets}


DEFAULTS = {"kind": "cos", "variant": "s", "N": None, "K": None, "nu": Fraction(1), "eta": 1}
LOMMEL_NU_DEFAULT = Fraction(1, 2)


# -- grids -------------------------------------------------------------------

def _parse_number(text: str, name: str):
    text = text.strip()
    try:
        if name in INTEGER_PARAMS:
            value = Fraction(text)
            if value.denominator != 1:
                raise ValueError
            return int(value)
        if name in FRACTION_PARAMS:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--{name}: cannot parse {text!r}") from None


def parse_grid(text: str, name: str) -> list:
    """Expand one grid expression into a list of parameter values."""
    if name == "kind":
        out = []
        for part in text.split(","):
            part = part.strip()
            if part == "both":
                out += ["cos", "sin"]
            elif part in ("cos", "sin"):
                out.append(part)
            else:
                raise UsageError(f"--kind must be cos, sin or both, got {part!r}")
        return out
    if name == "variant":
        out = [v.strip() for v in text.split(",")]
        if any(v not in ("s", "S") for v in out):
            raise UsageError("--variant must be s or S")
        return out
    values: list = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise UsageError(f"--{name}: empty grid entry")
        if ".." in part:
            lo, hi = (_parse_number(x, name) for x in part.split("..", 1))
            if Fraction(lo).denominator != 1 or Fraction(hi).denominator != 1:
                raise UsageError(f"--{name}: '..' ranges need integer ends")
            values += [type(lo)(k) if name not in FLOAT_PARAMS else float(k)
                       for k in range(int(lo), int(hi) + 1)]
        elif ":" in part:
            bits = part.split(":")
            mode = "lin"
            if bits[0] in ("lin", "log"):
                mode, bits = bits[0], bits[1:]
            if len(bits) != 3:
                raise UsageError(f"--{name}: range must be [lin:|log:]start:stop:count")
            try:
                start, stop, count = float(bits[0]), float(bits[1]), int(bits[2])
            except ValueError:
                raise UsageError(f"--{name}: bad range {part!r}") from None
            if count < 1:
                raise UsageError(f"--{name}: count must be >= 1")
            if mode == "log":
                if start <= 0 or stop <= 0:
                    raise UsageError(f"--{name}: log ranges need positive ends")
                pts = np.logspace(math.log10(start), math.log10(stop), count)
            else:
                pts = np.linspace(start, stop, count)
            if name in INTEGER_PARAMS or name in FRACTION_PARAMS:
                conv = [_parse_number(repr(float(x)), name) for x in pts]
                values += conv
            else:
                values += [float(x) for x in pts]
        else:
            values.append(_parse_number(part, name))
    return values


def _points(target: Target, args) -> list[dict]:
    grids = []
    for name in target.params:
        raw = getattr(args, name)
        if raw is None:
            if name == "nu" and target.name == "lommel.series":
                grids.append([LOMMEL_NU_DEFAULT])
            elif name in DEFAULTS:
                grids.append([DEFAULTS[name]])
            else:
                raise UsageError(f"target {target.name} needs --{name}")
        else:
            grids.append(parse_grid(raw, name))
    order = sorted(range(len(target.params)), key=lambda i: PARAM_ORDER.index(target.params[i]))
    names = [target.params[i] for i in order]
    pools = [grids[i] for i in order]
    return [dict(zip(names, combo)) for combo in itertools.product(*pools)]


# -- output ------------------------------------------------------------------

BASE_COLUMNS = ("target", "params", "value", "abs_error_estimate", "method", "truncation_used")


def _json_number(x) -> str:
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def _json_encode(obj) -> str:
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_encode(v) for v in obj) + "]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else json.dumps(str(obj))
    return _json_number(obj)


def _param_text(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _plain_value(v) -> str:
    if isinstance(v, bool) or isinstance(v, str) or isinstance(v, int):
        return str(v)
    if v is None:
        return "-"
    if isinstance(v, list):
        return "|".join(map(str, v)) or "-"
    if isinstance(v, Fraction):
        return str(v)
    return format(float(v), ".12g")


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(_json_encode(r) + "\n" for r in rows)
    extra = []
    for r in rows:
        for k in r:
            if k not in BASE_COLUMNS and k not in extra:
                extra.append(k)
    columns = list(BASE_COLUMNS) + extra
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            cells = []
            for c in columns:
                v = r.get(c)
                if c == "params":
                    v = ";".join(f"{k}={_param_text(x)}" for k, x in v.items())
                elif isinstance(v, float):
                    v = _json_number(v)
                elif isinstance(v, list):
                    v = "|".join(map(str, v))
                cells.append("" if v is None else v)
            w.writerow(cells)
        return buf.getvalue()
    lines = []
    for r in rows:
        head = " ".join(f"{k}={_plain_value(x)}" for k, x in r["params"].items())
        body = "  ".join(f"{c}={_plain_value(r[c])}" for c in columns[2:] if c in r)
        lines.append(f"{r['target']} [{head}]  {body}")
    return "\n".join(lines) + ("\n" if lines else "")


def _row(target: Target, point: dict, ev: Evaluation) -> dict:
    return {"target": target.name, "params": dict(point), "value": ev.value,
            "abs_error_estimate": ev.abs_error_estimate, "method": ev.method,
            "truncation_used": ev.truncation_used, "notes": list(ev.notes)}


# -- verbs -------------------------------------------------------------------

def _verb_eval(target, points, args):
    if len(points) != 1:
        raise UsageError(f"eval takes one point, the flags expand to {len(points)}; use table")
    return [_row(target, points[0], target.evaluate(points[0]))], False


def _verb_table(target, points, args):
    return [_row(target, p, target.evaluate(p)) for p in points], False


def _verb_compare(target, points, args):
    if target.reference is None:
        raise UsageError(f"target {target.name} has no independent oracle to compare with")
    tol = 1e-9 if args.tol is None else args.tol
    rows, failed = [], False
    for p in points:
        ev = target.evaluate(p)
        ref = target.reference(p)
        diff = abs(ev.value - ref)
        ok = diff <= tol * max(abs(ref), 1e-2)
        failed |= not ok
        row = _row(target, p, ev)
        row.update(oracle=ref, abs_diff=diff, rel_diff=diff / abs(ref) if ref else math.inf,
                   status="PASS" if ok else "FAIL")
        rows.append(row)
    return rows, failed


def _verb_asym(target, points, args):
    if target.exact is None:
        raise UsageError(f"target {target.name} has no exact reference; asym targets: "
                         + ", ".join(n for n, t in TARGETS.items() if t.exact))
    rows, failed = [], False
    for p in points:
        ev = target.evaluate(p)
        exact = target.exact(p)
        err = abs(ev.value - exact)
        row = _row(target, p, ev)
        row.update(exact=exact, true_error=err)
        if ev.abs_error_estimate > 0:
            ok = err <= 2 * ev.abs_error_estimate
            failed |= not ok
            row["status"] = "PASS" if ok else "FAIL"
        rows.append(row)
    return rows, failed


def paper_check(fmt: str = "plain") -> tuple[str, bool]:
    """Run the acceptance suite; return (report text, all passed)."""
    from . import checks

    t0 = time.perf_counter()
    results, found = checks.run_all()
    elapsed = time.perf_counter() - t0
    n_warn = sum(1 for level, _ in found if level == "WARN")
    c12_ok = elapsed < 60.0 and n_warn == 3
    c12 = checks.CheckResult(12, "paper-check runtime and WARN count", c12_ok,
                             f"{elapsed:.2f}s (< 60s), {n_warn} WARN entries (expected 3)", elapsed)
    results = results + [c12]
    ok = all(r.passed for r in results)
    if fmt == "json":
        doc = {"status": "PASS" if ok else "FAIL",
               "criteria": [{"id": r.cid, "title": r.title, "status": r.status, "detail": r.detail}
                            for r in results],
               "findings": [{"level": level, "message": msg} for level, msg in found]}
        return _json_encode(doc) + "\n", ok
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "id", "status", "detail"])
        for r in results:
            w.writerow(["criterion", r.cid, r.status, f"{r.title}: {r.detail}"])
        for level, msg in found:
            w.writerow(["finding", "", level, msg])
        return buf.getvalue(), ok
    lines = [r.line() for r in results]
    lines += [f"{level} {msg}" for level, msg in found]
    passed = sum(r.passed for r in results)
    lines.append(f"SUMMARY {passed}/{len(results)} PASS, {n_warn} WARN, "
                 f"{len(found) - n_warn} NOTE -> {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n", ok


VERBS = {"eval": _verb_eval, "table": _verb_table, "compare": _verb_compare, "asym": _verb_asym}


# -- entry point -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lommel-fresnel", description=__doc__.split("\n\n")[0],
                formatter_class=argparse.RawDescriptionHelpFormatter,
                epilog="Run 'lommel-fresnel eval --target list' to list targets.")
    p.add_argument("verb", choices=("eval", "table", "compare", "asym", "paper-check"))
    p.add_argument("--target")
    for name in ("n", "m", "mu", "nu", "eta", "a", "N", "K"):
        p.add_argument(f"--{name}", metavar="GRID")
    p.add_argument("--lambda", dest="lambda", metavar="GRID")
    p.add_argument("--kind", metavar="{cos|sin|both}")
    p.add_argument("--variant", metavar="{s|S}")
    p.add_argument("--tol", type=float)
    p.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    p.add_argument("--out")
    p.add_argument("--coeff-tables", dest="coeff_tables")
    return p


_TABLES_PATH: list = [None]


def _tables() -> ri.CoefficientTables:
    path = _TABLES_PATH[0]
    return ri.bundled_tables() if path is None else ri.CoefficientTables.load(path)


TARGETS = _build_targets(_tables)


def _emit(text: str, out_path: str | None, stdout) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _attach_negative_values(argv: list[str]) -> list[str]:
    # argparse mistakes "--mu -1/2" for two options
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if tok.startswith("--") and "=" not in tok and len(nxt) > 1 and nxt[0] == "-" \
                and (nxt[1].isdigit() or nxt[1] == "."):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = _attach_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
        if args.verb == "paper-check":
            used = [n for n in PARAM_ORDER + ("target", "tol", "coeff_tables") if getattr(args, n)]
            if used:
                raise UsageError("paper-check takes no parameters besides --format/--out")
            text, ok = paper_check(args.format)
            _emit(text, args.out, stdout)
            return 0 if ok else 1
        if not args.target:
            raise UsageError(f"{args.verb} needs --target")
        if args.target == "list":
            _emit("".join(f"{n:30s} {', '.join(t.params):28s} {t.summary}\n"
                          for n, t in TARGETS.items()), args.out, stdout)
            return 0
        target = TARGETS.get(args.target)
        if target is None:
            raise UsageError(f"unknown target {args.target!r}; use --target list")
        stray = [n for n in PARAM_ORDER if getattr(args, n) is not None and n not in target.params]
        if stray:
            raise UsageError(f"target {target.name} does not take --{', --'.join(stray)}")
        if args.tol is not None and args.verb != "compare":
            raise UsageError("--tol applies to compare only")
        if args.coeff_tables is not None:
            if target.name != "rational.anger":
                raise UsageError("--coeff-tables applies to rational.anger only")
            try:
                _TABLES_PATH[0] = args.coeff_tables
                _tables()
            except (OSError, ValueError) as exc:
                raise UsageError(f"--coeff-tables: {exc}") from None
        points = _points(target, args)
        try:
            rows, failed = VERBS[args.verb](target, points, args)
        finally:
            _TABLES_PATH[0] = None
        _emit(render(rows, args.format), args.out, stdout)
        return 1 if failed else 0
    except UsageError as exc:
        stderr.write(f"lommel-fresnel: usage error: {exc}\n")
        return 2
    except ConvergenceError as exc:
        stderr.write(f"lommel-fresnel: no convergence: {exc}\n")
        return 1
    except (ValueError, KeyError) as exc:
        # precondition violations (DomainError, PoleError, UnsupportedOrderError, ...)
        stderr.write(f"lommel-fresnel: {type(exc).__name__}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
