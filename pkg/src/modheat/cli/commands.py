"""Command-line entry point: heat, spectrum, finite and verify."""

import argparse
import logging
import math
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO

import numpy as np
from pydantic import BaseModel, ValidationError

from ..__version__ import __version__
from ..core.context import ComputeContext
from ..core.errors import (
    ArgumentError,
    BoundaryError,
    ModheatError,
    NumericError,
    PreconditionError,
    ResourceError,
)
from ..core.types import OutputFormat, PrefactorReading
from ..graphs.cayley import fiber_partition, gamma_ball, projection_map
from ..graphs.line import LineWindow, apply_projected_laplacian
from ..graphs.weighted import (
    WeightedGraph,
    degree_transfer_check,
    is_covering,
    meq_check,
    quotient,
)
from ..groups.psl import genus, surface_complex
from ..spectral.finite import conjecture_row, spectrum_of
from ..spectral.heat_kernel import (
    SEVEN_QUARTERS,
    THREE_QUARTERS,
    adjudicate_prefactor,
    gamma_oracle_values,
    kernel_gamma_batch,
    line_oracle_values,
    mass_sum,
    spectrum,
)
from ..spectral.line_spectral import (
    DISCRETE_EIGENPAIRS,
    completeness_matrix,
    eval_generalized,
    kernel_pr_batch,
    lambda_of,
)
from ..groups.words import fiber_size
from .config import load_config
from .output import emit_table, write_eigenvalue_csv, write_json

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_ARGUMENT = 2

HEAT_HEADER = ("t", "n", "K_formula", "K_transfer", "K_oracle", "abs_err")
HEAT_TOLERANCE = 1e-6
SPECTRUM_HEADER = ("component", "lower", "upper")
CONJECTURE_HEADER = (
    "p",
    "order",
    "gap",
    "gap_minus_lambda0",
    "has_3/4",
    "has_7/4",
    "zero_multiplicity",
    "residual",
)

COVERING_RADIUS = 12
RESIDUAL_RANGE = 30
ORACLE_RANGE = 12
BALL_READ_RANGE = 8
KNOWN_GENERA = {3: 0, 5: 0, 7: 3}

# RunConfig fields settable from the command line
CONFIG_FLAGS = (
    "quad_tol",
    "oracle_window",
    "oracle_terms",
    "gamma_ball_radius",
    "zero_threshold",
    "output_format",
    "log_level",
    "t_values",
    "primes",
    "output_dir",
)

WindowFactory = Callable[[LineWindow], WeightedGraph]

# Options whose values may start with a minus sign
SIGNED_VALUE_OPTIONS = ("--n", "--t")


def parse_range(text: str) -> List[int]:
    """
    Parse ``a..b`` (inclusive), ``a,b,c`` or a single integer.

    Raises:
        ArgumentError: If the text is malformed or the range is empty
    """
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ArgumentError(f"invalid integer range: {text!r}")
    if not values:
        raise ArgumentError(f"empty integer range: {text!r}")
    return values


def attach_signed_values(argv: Sequence[str]) -> List[str]:
    """Rewrite ``--n -8..8`` as ``--n=-8..8`` so argparse does not read the value as an option."""
    joined: List[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in SIGNED_VALUE_OPTIONS and i + 1 < len(argv):
            joined.append(f"{arg}={argv[i + 1]}")
            i += 2
            continue
        joined.append(arg)
        i += 1
    return joined


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument(
        "--format",
        dest="output_format",
        choices=[f.value for f in OutputFormat],
        help="table format (default csv)",
    )
    common.add_argument("--log-level", dest="log_level", help="logging level (default WARNING)")
    common.add_argument("--quad-tol", dest="quad_tol", type=float)
    common.add_argument("--oracle-window", dest="oracle_window", type=int)
    common.add_argument("--oracle-terms", dest="oracle_terms", type=int)
    common.add_argument("--gamma-ball-radius", dest="gamma_ball_radius", type=int)
    common.add_argument("--zero-threshold", dest="zero_threshold", type=float)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="modheat",
        description="Heat kernel and spectra of the modular group and its finite quotients.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    heat = sub.add_parser("heat", parents=[common], help="K_t(n) by formula, transfer and oracle")
    heat.add_argument("--t", dest="t_values", help="comma-separated times")
    heat.add_argument("--n", dest="n_range", default="-8..8", help="a..b, a,b,c or n (default -8..8)")
    heat.set_defaults(handler=_run_heat)

    spec = sub.add_parser("spectrum", parents=[common], help="components of the spectrum")
    spec.set_defaults(handler=_run_spectrum)

    finite = sub.add_parser("finite", parents=[common], help="spectra of PSL2(F_p) Cayley graphs")
    finite.add_argument("--p", dest="primes", help="comma-separated primes")
    finite.add_argument("--out", dest="output_dir", help="directory for spectrum_p<p>.csv")
    finite.set_defaults(handler=_run_finite)

    verify = sub.add_parser("verify", parents=[common], help="run every verification suite")
    verify.set_defaults(handler=_run_verify)
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger("modheat").setLevel(level)


# Commands


def cmd_heat(ns: Sequence[int], ctx: ComputeContext, stream: TextIO) -> int:
    """
    Tabulate K_t(n) by the closed form, the transfer route and the line oracle.

    Args:
        ns: Line vertices
        ctx: Compute context (times from ``t_values``)
        stream: Output stream

    Returns:
        EXIT_TOLERANCE if any abs_err exceeds 1e-6, else EXIT_OK
    """
    rows: List[Sequence[Any]] = []
    worst = 0.0
    for t in ctx.config.t_values:
        try:
            values = kernel_gamma_batch(t, ns, ctx=ctx)
        except NumericError as e:
            raise NumericError(f"t={t}: {e.message}", details={**e.details, "t": t})
        oracle = line_oracle_values(t, ns, ctx)
        for v in values:
            err = max(abs(v.value - oracle[v.n]), abs(v.transfer_value - oracle[v.n]))
            worst = max(worst, err)
            rows.append((float(t), v.n, v.value, v.transfer_value, oracle[v.n], err))
    emit_table(HEAT_HEADER, rows, ctx.config.output_format, stream)
    if worst > HEAT_TOLERANCE:
        ctx.logger.error(f"Heat kernel routes disagree by {worst:.3e}")
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_spectrum(ctx: ComputeContext, stream: TextIO) -> int:
    """Print the two bands and two points of the spectrum with 12-digit endpoints."""
    s = spectrum()
    (a, b), (c, d) = s.intervals
    rows = [
        ("lower_band", a, b),
        ("point", THREE_QUARTERS, THREE_QUARTERS),
        ("upper_band", c, d),
        ("point", SEVEN_QUARTERS, SEVEN_QUARTERS),
    ]
    text_rows = [(name, f"{lo:.12f}", f"{hi:.12f}") for name, lo, hi in rows]
    emit_table(
        SPECTRUM_HEADER,
        text_rows,
        ctx.config.output_format,
        stream,
        extra={"lambda0": f"{s.lambda0:.12f}", "lambda1": f"{s.lambda1:.12f}", "disjoint": True},
    )
    return EXIT_OK


def cmd_finite(ctx: ComputeContext, stream: TextIO) -> int:
    """
    Eigenvalue CSV per prime plus the spectral-gap table.

    Returns:
        EXIT_TOLERANCE if any gap is below lambda0, else EXIT_OK
    """
    rows: List[Sequence[Any]] = []
    failing = []
    for p in ctx.config.primes:
        spec = spectrum_of(p, ctx)
        path = write_eigenvalue_csv(spec, ctx.config.output_dir)
        ctx.logger.info(f"Wrote {path}")
        row = conjecture_row(spec)
        if not row.holds:
            failing.append(p)
        rows.append(
            (
                row.p,
                row.order,
                row.gap,
                row.margin,
                row.has_three_quarters,
                row.has_seven_quarters,
                row.zero_multiplicity,
                row.residual,
            )
        )
    emit_table(CONJECTURE_HEADER, rows, ctx.config.output_format, stream)
    if failing:
        ctx.logger.error(f"Spectral gap below lambda0 for p in {failing}")
        return EXIT_TOLERANCE
    return EXIT_OK


# Verification


class CheckResult(BaseModel):
    """One verification entry; failures are values, not exceptions."""

    model_config = {"frozen": True}

    name: str
    passed: bool
    measured: Optional[float] = None
    tolerance: Optional[float] = None
    detail: str = ""


class VerificationReport(BaseModel):
    """All verification entries and the prefactor reading certified by the ball oracle."""

    model_config = {"frozen": True}

    checks: List[CheckResult]
    prefactor_verdict: Optional[PrefactorReading] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_payload(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "prefactor_verdict": self.prefactor_verdict.value if self.prefactor_verdict else None,
            "checks": [c.model_dump() for c in self.checks],
        }


def _measured(x: float) -> Optional[float]:
    return float(x) if math.isfinite(x) else None


def _within(name: str, measured: float, tolerance: float, detail: str = "") -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(measured <= tolerance),
        measured=_measured(measured),
        tolerance=tolerance,
        detail=detail,
    )


def _default_window(window: LineWindow) -> WeightedGraph:
    return window.graph()


class _Suite:
    """Shared fixtures of one verification run."""

    def __init__(self, ctx: ComputeContext, window_factory: WindowFactory):
        self.ctx = ctx
        self.config = ctx.config
        self.cover_ball = gamma_ball(COVERING_RADIUS, ctx)
        self.cover_line = window_factory(LineWindow.symmetric(COVERING_RADIUS))
        self.projection = projection_map(self.cover_ball)
        self._oracle_ball: Optional[WeightedGraph] = None
        self.verdict: Optional[PrefactorReading] = None

    @property
    def oracle_ball(self) -> WeightedGraph:
        if self._oracle_ball is None:
            self._oracle_ball = gamma_ball(self.config.gamma_ball_radius, self.ctx)
        return self._oracle_ball

    def covering(self) -> CheckResult:
        report = is_covering(self.cover_ball, self.cover_line, self.projection)
        detail = f"{report.checked} fiber sums"
        if report.witness is not None:
            w = report.witness
            detail = f"x={w.x} u={w.u}: {w.lhs} != {w.rhs}"
        return CheckResult(name="covering", passed=report.passed, detail=detail)

    def degree_transfer(self) -> CheckResult:
        ok = degree_transfer_check(self.cover_ball, self.cover_line, self.projection, ctx=self.ctx)
        return CheckResult(name="degree_transfer", passed=ok)

    def quotient_weights(self) -> CheckResult:
        q, _ = quotient(self.cover_ball, fiber_partition(self.cover_ball))
        line = self.cover_line
        mismatches = [
            (u, v) for u, v, w in line.edges() if q.weight(u, v) != w
        ] + [(u, v) for u, v, w in q.edges() if line.weight(u, v) != w]
        mismatches += [(v, v) for v in line.vertices if q.degree(v) != line.degree(v)]
        detail = f"first mismatch at {mismatches[0]}" if mismatches else f"{len(q)} blocks"
        return CheckResult(name="quotient_weights", passed=not mismatches, detail=detail)

    def meq(self) -> CheckResult:
        report = meq_check(
            self.cover_ball, self.cover_line, self.projection, self.config.meq_k_max, ctx=self.ctx
        )
        return _within("meq", report.max_error, 1e-12, f"{report.sources} sources, k <= {report.k_max}")

    def completeness(self) -> CheckResult:
        r = self.config.completeness_radius
        matrix, quad_error = completeness_matrix(range(-r, r + 1), ctx=self.ctx)
        err = float(np.max(np.abs(matrix - np.eye(2 * r + 1))))
        return _within("completeness", err, 1e-8, f"{2 * r + 1}x{2 * r + 1}, quadrature error {quad_error:.3e}")

    def discrete_residual(self) -> CheckResult:
        worst = 0.0
        for pair in DISCRETE_EIGENPAIRS:
            for m in range(-RESIDUAL_RANGE, RESIDUAL_RANGE + 1):
                worst = max(worst, abs(apply_projected_laplacian(pair, m) - pair.eigenvalue * pair(m)))
        return _within("discrete_residual", worst, 1e-12)

    def generalized_residual(self) -> CheckResult:
        worst = 0.0
        for x in np.linspace(0.0, math.pi, 50):
            for mu in (1, -1):
                lam = float(lambda_of(mu, x))
                for eps in (1, -1):

                    def f(m: int) -> float:
                        return eval_generalized(float(x), mu, eps, m)

                    for m in range(-RESIDUAL_RANGE, RESIDUAL_RANGE + 1):
                        worst = max(worst, abs(apply_projected_laplacian(f, m) - lam * f(m)))
        return _within("generalized_residual", worst, 1e-10)

    def line_oracle(self) -> CheckResult:
        ns = list(range(-ORACLE_RANGE, ORACLE_RANGE + 1))
        worst = 0.0
        for t in self.config.t_values:
            projected, _ = kernel_pr_batch(t, ns, ctx=self.ctx)
            oracle = line_oracle_values(t, ns, self.ctx)
            for n, value in zip(ns, projected):
                worst = max(worst, abs(value / math.sqrt(fiber_size(n)) - oracle[n]))
        return _within("line_oracle", worst, 1e-8)

    def route_equivalence(self) -> CheckResult:
        ns = list(range(0, ORACLE_RANGE + 1))
        worst = 0.0
        for t in self.config.t_values:
            for v in kernel_gamma_batch(t, ns, reading=PrefactorReading.PRINTED, ctx=self.ctx):
                worst = max(worst, abs(v.value - v.transfer_value))
        return _within("route_equivalence", worst, 1e-9)

    def gamma_transfer(self) -> CheckResult:
        ns = list(range(-BALL_READ_RANGE, BALL_READ_RANGE + 1))
        worst = 0.0
        for t in self.config.t_values:
            oracle = gamma_oracle_values(t, ns, graph=self.oracle_ball, ctx=self.ctx)
            projected, _ = kernel_pr_batch(t, ns, ctx=self.ctx)
            for n, value in zip(ns, projected):
                worst = max(worst, abs(value / math.sqrt(fiber_size(n)) - oracle[n]))
        return _within("gamma_transfer", worst, 1e-8, f"ball radius {self.config.gamma_ball_radius}")

    def prefactor_adjudication(self) -> CheckResult:
        report = adjudicate_prefactor(graph=self.oracle_ball, ctx=self.ctx)
        self.verdict = report.verdict
        errors = ", ".join(f"{k.value}={v:.3e}" for k, v in sorted(report.max_error.items()))
        verdict = report.verdict.value if report.verdict else "inconclusive"
        measured = report.max_error[report.verdict] if report.verdict else math.inf
        return CheckResult(
            name="prefactor_adjudication",
            passed=report.verdict is not None,
            measured=_measured(measured),
            tolerance=report.tolerance,
            detail=f"verdict {verdict}; {errors}",
        )

    def initial_condition(self) -> CheckResult:
        ns = list(range(-ORACLE_RANGE, ORACLE_RANGE + 1))
        values = kernel_gamma_batch(0.0, ns, with_transfer=False, ctx=self.ctx)
        worst = max(abs(v.value - (1.0 if v.n == 0 else 0.0)) for v in values)
        return _within("initial_condition", worst, 1e-9)

    def mass(self) -> CheckResult:
        worst = max(abs(mass_sum(t, ctx=self.ctx).total - 1.0) for t in self.config.t_values)
        return _within("mass", worst, 1e-6, f"|n| <= {self.config.mass_radius}")

    def spectrum_endpoints(self) -> CheckResult:
        s = spectrum()
        closed0 = 7 / 8 - 0.5 * math.sqrt(25 / 16 + math.sqrt(2))
        closed1 = 7 / 8 + 0.5 * math.sqrt(25 / 16 - math.sqrt(2))
        err = max(abs(s.lambda0 - closed0), abs(s.lambda1 - closed1))
        printed = f"{s.lambda0:.7f}".startswith("0.01234") and f"{s.lambda1:.7f}".startswith("1.0675")
        return CheckResult(
            name="spectrum_endpoints",
            passed=err <= 1e-12 and printed,
            measured=err,
            tolerance=1e-12,
            detail=f"lambda0={s.lambda0:.12f} lambda1={s.lambda1:.12f}",
        )

    def finite_spectra(self) -> CheckResult:
        problems = []
        margin = math.inf
        for p in self.config.primes:
            spec = spectrum_of(p, self.ctx)
            row = conjecture_row(spec)
            margin = min(margin, row.margin)
            if not (row.holds and row.has_three_quarters and row.has_seven_quarters):
                problems.append(f"p={p} gap={row.gap:.12f}")
            if row.zero_multiplicity != 1 or row.residual > 1e-8:
                problems.append(f"p={p} kernel={row.zero_multiplicity} residual={row.residual:.3e}")
        return CheckResult(
            name="finite_spectra",
            passed=not problems,
            measured=_measured(margin),
            detail="; ".join(problems) or f"primes {self.config.primes}",
        )

    def genus(self) -> CheckResult:
        problems = []
        for p, expected in KNOWN_GENERA.items():
            if genus(p) != expected:
                problems.append(f"genus({p})={genus(p)}")
        for p in self.config.primes:
            if p > 2 and surface_complex(p, self.ctx).genus != genus(p):
                problems.append(f"surface complex of p={p}")
        return CheckResult(name="genus", passed=not problems, detail="; ".join(problems))


SUITES = (
    "covering",
    "degree_transfer",
    "quotient_weights",
    "meq",
    "completeness",
    "discrete_residual",
    "generalized_residual",
    "line_oracle",
    "route_equivalence",
    "gamma_transfer",
    "prefactor_adjudication",
    "initial_condition",
    "mass",
    "spectrum_endpoints",
    "finite_spectra",
    "genus",
)


def run_verification(
    ctx: ComputeContext,
    window_factory: WindowFactory = _default_window,
    suites: Sequence[str] = SUITES,
) -> VerificationReport:
    """
    Run the verification suites; an exception inside a suite becomes a failing entry.

    Args:
        ctx: Compute context
        window_factory: Builds the line window the Cayley ball is compared with
        suites: Names of the suites to run, in order

    Returns:
        Report with one entry per suite
    """
    unknown = [name for name in suites if name not in SUITES]
    if unknown:
        raise ArgumentError(f"unknown verification suites: {unknown}")
    suite = _Suite(ctx, window_factory)
    checks = []
    for name in suites:
        ctx.logger.info(f"Running {name}")
        try:
            result = getattr(suite, name)()
        except (ModheatError, ValidationError) as e:
            result = CheckResult(name=name, passed=False, detail=f"{type(e).__name__}: {e}")
        if not result.passed:
            ctx.logger.warning(f"Check {name} failed: {result.detail}")
        checks.append(result)
    return VerificationReport(checks=checks, prefactor_verdict=suite.verdict)


def cmd_verify(
    ctx: ComputeContext, stream: TextIO, window_factory: WindowFactory = _default_window
) -> int:
    """Write the JSON verification report; the exit code reflects overall success."""
    report = run_verification(ctx, window_factory)
    write_json(report.to_payload(), stream)
    return EXIT_OK if report.passed else EXIT_TOLERANCE


# Dispatch


def _run_heat(args: argparse.Namespace, ctx: ComputeContext, stream: TextIO) -> int:
    return cmd_heat(parse_range(args.n_range), ctx, stream)


def _run_spectrum(args: argparse.Namespace, ctx: ComputeContext, stream: TextIO) -> int:
    return cmd_spectrum(ctx, stream)


def _run_finite(args: argparse.Namespace, ctx: ComputeContext, stream: TextIO) -> int:
    return cmd_finite(ctx, stream)


def _run_verify(args: argparse.Namespace, ctx: ComputeContext, stream: TextIO) -> int:
    return cmd_verify(ctx, stream)


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Run the modheat command line.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])
        stdout: Destination of tables and reports

    Returns:
        0 when every check passes, 1 on a tolerance or numeric failure, 2 on invalid arguments
    """
    parser = build_parser()
    args = parser.parse_args(attach_signed_values(sys.argv[1:] if argv is None else argv))
    stream = stdout or sys.stdout
    flags = {key: getattr(args, key, None) for key in CONFIG_FLAGS}
    try:
        config = load_config(flags, args.config)
    except (ArgumentError, ValidationError) as e:
        print(f"modheat: error: {e}", file=sys.stderr)
        return EXIT_ARGUMENT

    configure_logging(config.log_level)
    ctx = ComputeContext(config)
    try:
        return args.handler(args, ctx, stream)
    except (ArgumentError, ValidationError, ResourceError, PreconditionError, BoundaryError) as e:
        print(f"modheat: error: {e}", file=sys.stderr)
        return EXIT_ARGUMENT
    except ModheatError as e:
        print(f"modheat: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
