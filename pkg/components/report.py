import pandas as pd

from models.schemas import Report


def render_json(report: Report) -> str:
    return report.model_dump_json(indent=2)


def parse_report(text: str) -> Report:
    return Report.model_validate_json(text)


def create_place_table(report: Report) -> pd.DataFrame:
    """One row per place with the local point, gamma1 value and symbol"""
    rows = [
        {
            "place": entry.place,
            "x": entry.point.x,
            "z": entry.point.z,
            "precision": "exact" if entry.point.precision is None else entry.point.precision,
            "gamma1": entry.gamma_value,
            "class": entry.gamma_class,
            "symbol": entry.symbol,
        }
        for entry in report.places
    ]
    return pd.DataFrame(rows, columns=["place", "x", "z", "precision", "gamma1", "class", "symbol"])


def create_solubility_table(report: Report) -> pd.DataFrame:
    rows = [{"place": s.place, "soluble": s.soluble} for s in report.solubility]
    return pd.DataFrame(rows, columns=["place", "soluble"])


def render_text(report: Report) -> str:
    """Human-readable summary written to stderr in verbose mode"""
    lines = [f"{report.command}: {report.status}"]
    if report.reason:
        lines.append(f"reason: {report.reason}")
    if report.places:
        lines.append(create_place_table(report).to_string(index=False))
    if report.solubility:
        lines.append(create_solubility_table(report).to_string(index=False))
    if report.value is not None:
        lines.append(f"value: {report.value}")
    return "\n".join(lines)
