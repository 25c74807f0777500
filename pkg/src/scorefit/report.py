"""Report document assembly and serialization (plain table, CSV, JSON).

Human tables round to 4 decimals; CSV and JSON carry full precision so that
re-parsing a serialized report recovers every numeric field.  CSV column
layouts are part of the CLI contract and documented in the README.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fit import CurvePoint, FitReport
from .simulation import SimulationCell


class OutputFormat(Enum):
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


def _num(value) -> str:
    # repr round-trips floats exactly; ints stay ints.
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return repr(int(value))
    return repr(float(value))


@dataclass(frozen=True)
class ReportDocument:
    """Everything one CLI invocation produced, ready to serialize.

    ``inputs`` echoes dimensions, checksums and parameters; ``fits`` holds
    per-model fit reports; ``values`` holds scalar results; ``curve`` and
    ``cells`` hold the tabular payloads of the curve and simulation commands.
    """

    inputs: tuple[tuple[str, str], ...] = ()
    fits: tuple[tuple[str, FitReport], ...] = ()
    values: tuple[tuple[str, float], ...] = ()
    curve: tuple[CurvePoint, ...] = ()
    cells: tuple[SimulationCell, ...] = ()
    include_residuals: bool = False
    fmt: OutputFormat = OutputFormat.TABLE

    def render(self) -> str:
        if self.fmt is OutputFormat.JSON:
            return self._render_json()
        if self.fmt is OutputFormat.CSV:
            return self._render_csv()
        return self._render_table()

    # -- table ---------------------------------------------------------------

    def _render_table(self) -> str:
        lines = []
        if self.inputs:
            lines.append("inputs")
            width = max(len(k) for k, _ in self.inputs)
            for key, value in self.inputs:
                lines.append(f"  {key.ljust(width)}  {value}")
        if self.fits:
            lines.append("fit")
            width = max(len(label) for label, _ in self.fits)
            for label, report in self.fits:
                lines.append(f"  {label.ljust(width)}  SRMR = {report.srmr:.4f}")
            for label, report in self.fits:
                for message in report.warnings:
                    lines.append(f"  warning [{label}]: {message}")
            if self.include_residuals:
                for label, report in self.fits:
                    lines.append(f"residuals ({label})")
                    for row in report.residuals:
                        lines.append("  " + " ".join(f"{v:7.4f}" for v in row))
        if self.values:
            lines.append("result")
            width = max(len(k) for k, _ in self.values)
            for key, value in self.values:
                shown = f"{value:d}" if isinstance(value, int) else f"{value:.4f}"
                lines.append(f"  {key.ljust(width)}  {shown}")
        if self.curve:
            lines.append("required r by scale length and SRMR level")
            lines.append("  p     level   required_r")
            for point in self.curve:
                r_txt = "unattainable" if point.required_r is None else f"{point.required_r:.4f}"
                lines.append(f"  {point.p:<5d} {point.srmr_level:<7.4f} {r_txt}")
        if self.cells:
            lines.append("simulation")
            lines.append("  n     l     r     p    pattern   pop_srmr  mean_srmr_s  sd_srmr_s  reps")
            for c in self.cells:
                lines.append(
                    f"  {c.n:<5d} {c.l:<5.2f} {c.l * c.l:<5.2f} {c.p:<4d} "
                    f"{c.pattern.value:<9s} {c.population_srmr:<9.4f} "
                    f"{c.mean_srmr_s:<12.4f} {c.sd_srmr_s:<10.4f} {c.replications_used}"
                )
        return "\n".join(lines) + "\n"

    # -- csv -----------------------------------------------------------------

    def _render_csv(self) -> str:
        lines = [f"# {key}={value}" for key, value in self.inputs]
        if self.fits:
            lines.append("record,model,i,j,value")
            for label, report in self.fits:
                lines.append(f"srmr,{label},,,{_num(report.srmr)}")
            for label, report in self.fits:
                for message in report.warnings:
                    lines.append(f"warning,{label},,,{_csv_quote(message)}")
            if self.include_residuals:
                for label, report in self.fits:
                    for i, row in enumerate(report.residuals):
                        for j, value in enumerate(row):
                            lines.append(f"residual,{label},{i},{j},{_num(value)}")
        if self.values:
            lines.append("quantity,value")
            for key, value in self.values:
                lines.append(f"{key},{_num(value)}")
        if self.curve:
            lines.append("p,srmr_level,required_r")
            for point in self.curve:
                r_txt = "unattainable" if point.required_r is None else _num(point.required_r)
                lines.append(f"{point.p},{_num(point.srmr_level)},{r_txt}")
        if self.cells:
            lines.append(
                "n,l,r,p,pattern,population_srmr,mean_srmr_s,sd_srmr_s,replications_used"
            )
            for c in self.cells:
                lines.append(
                    f"{c.n},{_num(c.l)},{_num(c.l * c.l)},{c.p},{c.pattern.value},"
                    f"{_num(c.population_srmr)},{_num(c.mean_srmr_s)},"
                    f"{_num(c.sd_srmr_s)},{c.replications_used}"
                )
        return "\n".join(lines) + "\n"

    # -- json ----------------------------------------------------------------

    def _render_json(self) -> str:
        doc: dict = {"inputs": dict(self.inputs)}
        if self.fits:
            doc["fits"] = []
            for label, report in self.fits:
                entry = {
                    "model": label,
                    "srmr": report.srmr,
                    "warnings": list(report.warnings),
                }
                if self.include_residuals:
                    entry["residuals"] = report.residuals.tolist()
                doc["fits"].append(entry)
        if self.values:
            doc["results"] = dict(self.values)
        if self.curve:
            doc["curve"] = [
                {"p": pt.p, "srmr_level": pt.srmr_level, "required_r": pt.required_r}
                for pt in self.curve
            ]
        if self.cells:
            doc["cells"] = [
                {
                    "n": c.n,
                    "l": c.l,
                    "r": c.l * c.l,
                    "p": c.p,
                    "pattern": c.pattern.value,
                    "population_srmr": c.population_srmr,
                    "mean_srmr_s": c.mean_srmr_s,
                    "sd_srmr_s": c.sd_srmr_s,
                    "replications_used": c.replications_used,
                }
                for c in self.cells
            ]
        return json.dumps(doc, indent=2) + "\n"


def _csv_quote(text: str) -> str:
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text
