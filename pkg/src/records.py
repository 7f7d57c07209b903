"""CSV rows emitted by the command line. Column order is the RunRecord field order."""

import csv
import io
from dataclasses import dataclass, fields
from typing import Iterable, TextIO


@dataclass(frozen=True)
class RunRecord:
    tx_process: str
    tx_param: float
    eve_process: str
    eve_param: float
    strategy: str
    beta: float
    trials: int
    seed: int
    p_hat: float
    ci_half_width: float
    bound: float | None = None
    bound_kind: str = ""
    bound_asymptotic: float | None = None

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def to_row(self) -> list[str]:
        return [
            self.tx_process,
            format_number(self.tx_param),
            self.eve_process,
            format_number(self.eve_param),
            self.strategy,
            format_number(self.beta),
            str(self.trials),
            str(self.seed),
            format_number(self.p_hat),
            format_number(self.ci_half_width),
            format_number(self.bound),
            self.bound_kind,
            format_number(self.bound_asymptotic),
        ]

    @classmethod
    def from_row(cls, row: dict[str, str]) -> "RunRecord":
        return cls(
            tx_process=row["tx_process"],
            tx_param=float(row["tx_param"]),
            eve_process=row["eve_process"],
            eve_param=float(row["eve_param"]),
            strategy=row["strategy"],
            beta=float(row["beta"]),
            trials=int(row["trials"]),
            seed=int(row["seed"]),
            p_hat=float(row["p_hat"]),
            ci_half_width=float(row["ci_half_width"]),
            bound=_optional_float(row.get("bound", "")),
            bound_kind=row.get("bound_kind", "") or "",
            bound_asymptotic=_optional_float(row.get("bound_asymptotic", "")),
        )


def format_number(value: float | None) -> str:
    if value is None:
        return ""
    return format(float(value), ".12g")


def _optional_float(text: str | None) -> float | None:
    return float(text) if text not in (None, "") else None


def write_records(records: Iterable[RunRecord], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(RunRecord.columns())
    for record in records:
        writer.writerow(record.to_row())


def read_records(text: str) -> list[RunRecord]:
    return [RunRecord.from_row(row) for row in csv.DictReader(io.StringIO(text))]
