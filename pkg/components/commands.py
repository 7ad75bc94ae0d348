"""
Report builders for each ctpair command.
"""
import logging
from typing import Callable, Dict, List

from models.errors import ArityError, CtpairError, LocalInsolubilityError, ValidationFailure
from models.pairing import PairingEngine, check_soluble
from models.quartic import BinaryQuartic, discriminant, invariants
from models.schemas import ARITY, JobSpec, PlaceReport, PointReport, Report, SolubilityReport
from models.surface import surface_form
from utils.rationals import format_rational, parse_rational

logger = logging.getLogger(__name__)

EXIT_CODES = {"ok": 0, "invalid": 2, "error": 1}


def parse_quartics(job: JobSpec) -> List[BinaryQuartic]:
    expected = ARITY[job.command]
    if len(job.quartics) != expected:
        raise ArityError(f"{job.command} takes {expected} quartic(s), got {len(job.quartics)}")
    quartics = []
    for coeffs in job.quartics:
        if len(coeffs) != 5:
            raise ArityError(f"a quartic needs 5 coefficients, got {len(coeffs)}")
        quartics.append(BinaryQuartic(tuple(parse_rational(c) for c in coeffs)))
    return quartics


def _fmt(values) -> List[str]:
    return [format_rational(v) for v in values]


def _with_invariants(report: Report, g: BinaryQuartic) -> Report:
    I, J = invariants(g)
    report.I, report.J = format_rational(I), format_rational(J)
    report.Delta = format_rational(discriminant(g))
    return report


def run_invariants(job: JobSpec, engine: PairingEngine) -> Report:
    (g,) = parse_quartics(job)
    return _with_invariants(Report(command=job.command, inputs=job.quartics), g)


def run_els_check(job: JobSpec, engine: PairingEngine) -> Report:
    (g,) = parse_quartics(job)
    report = _with_invariants(Report(command=job.command, inputs=job.quartics), g)
    results = check_soluble(g, engine.settings)
    report.solubility = [SolubilityReport(place=v.name, soluble=ok) for v, ok in results.items()]
    failed = [v.name for v, ok in results.items() if not ok]
    if failed:
        report.status = "invalid"
        report.reason = f"not locally soluble at {', '.join(failed)}"
    return report


def _triple_report(job: JobSpec, engine: PairingEngine):
    g1, g2, g3 = parse_quartics(job)
    triple = engine.build_triple(g1, g2, g3)
    report = _with_invariants(Report(command=job.command, inputs=job.quartics), triple.g1)
    report.m = _fmt(triple.m.coeffs)
    report.m_choices = len(triple.square_roots)
    alpha1, beta1, gamma1 = engine.gamma_form(triple)
    report.alpha1, report.beta1, report.gamma1 = (_fmt(f.coeffs) for f in (alpha1, beta1, gamma1))
    return triple, report


def run_gamma(job: JobSpec, engine: PairingEngine) -> Report:
    return _triple_report(job, engine)[1]


def run_surface(job: JobSpec, engine: PairingEngine) -> Report:
    triple, report = _triple_report(job, engine)
    report.surface = _fmt(surface_form(triple).flat())
    return report


def run_pair(job: JobSpec, engine: PairingEngine) -> Report:
    triple, report = _triple_report(job, engine)
    trace = engine.pairing(triple)
    report.places = [
        PlaceReport(
            place=e.place.name,
            point=PointReport(
                x=format_rational(e.point.x), z=format_rational(e.point.z), precision=e.point.precision
            ),
            gamma_value=format_rational(e.gamma_value),
            gamma_class=str(e.gamma_class),
            symbol=e.symbol,
        )
        for e in trace.entries
    ]
    report.value = format_rational(trace.value)
    report.shortcut = trace.shortcut
    return report


COMMANDS: Dict[str, Callable[[JobSpec, PairingEngine], Report]] = {
    "invariants": run_invariants,
    "els-check": run_els_check,
    "gamma": run_gamma,
    "surface": run_surface,
    "pair": run_pair,
}


def run(job: JobSpec, engine: PairingEngine) -> Report:
    """
    Run one job; failures become reports with status "invalid" or "error".
    """
    try:
        return COMMANDS[job.command](job, engine)
    except ValidationFailure as e:
        logger.info("%s rejected: %s", job.command, e)
        reason = str(e)
        if isinstance(e, LocalInsolubilityError) and e.place is not None:
            reason = f"{reason} (place {e.place.name})"
        return Report(command=job.command, status="invalid", reason=reason, inputs=job.quartics)
    except CtpairError as e:
        logger.error("%s failed: %s", job.command, e)
        return Report(command=job.command, status="error", reason=str(e), inputs=job.quartics)


def exit_code(report: Report) -> int:
    return EXIT_CODES[report.status]
