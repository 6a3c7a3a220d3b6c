"""Export service - CSV and JSON renderings of tables, clouds and sweeps."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence

from pydantic import BaseModel

from limitroots.models.datum import CoxeterDatum
from limitroots.models.limits import LimitCloud
from limitroots.models.root import RootTable
from limitroots.schemas.dominance import DominanceSweep
from limitroots.schemas.limits import LimitPointRecord
from limitroots.schemas.roots import RootRecord
from limitroots.services.rootgen_service import RootgenService


def fmt(x: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(float(x), ".17g")


def _csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


class ExportService:
    """Deterministic text renderings of results."""

    @staticmethod
    def root_records(datum: CoxeterDatum, table: RootTable) -> list[RootRecord]:
        records: list[RootRecord] = []
        for index, root in enumerate(table.roots):
            nhat = root.normalized
            records.append(
                RootRecord(
                    index=index,
                    depth=root.depth,
                    word=list(root.word),
                    coeffs=list(root.coords),
                    norm_sum=root.norm_sum,
                    nhat=list(nhat.coords),
                    q_normalized=RootgenService.isotropy(datum, nhat.vector),
                )
            )
        return records

    @staticmethod
    def roots_csv(datum: CoxeterDatum, table: RootTable) -> str:
        n = datum.rank
        header = [
            "index",
            "depth",
            "word",
            *(f"coeff_{k}" for k in range(1, n + 1)),
            "norm_sum",
            *(f"nhat_{k}" for k in range(1, n + 1)),
            "q_normalized",
        ]
        rows = (
            [
                str(r.index),
                str(r.depth),
                "-".join(str(s) for s in r.word),
                *(fmt(c) for c in r.coeffs),
                fmt(r.norm_sum),
                *(fmt(c) for c in r.nhat),
                fmt(r.q_normalized),
            ]
            for r in ExportService.root_records(datum, table)
        )
        return _csv(header, rows)

    @staticmethod
    def limit_records(cloud: LimitCloud) -> list[LimitPointRecord]:
        return [
            LimitPointRecord(
                index=k,
                nhat=list(point.coords),
                q_residual=residual,
                provenance=origin.tag(),
            )
            for k, (point, residual, origin) in enumerate(
                zip(cloud.points, cloud.residuals, cloud.provenance)
            )
        ]

    @staticmethod
    def limits_csv(rank: int, clouds: Sequence[LimitCloud]) -> str:
        """Rows of several clouds, numbered consecutively."""
        header = [
            "index",
            *(f"nhat_{k}" for k in range(1, rank + 1)),
            "q_residual",
            "provenance",
        ]
        rows: list[list[str]] = []
        for cloud in clouds:
            for record in ExportService.limit_records(cloud):
                rows.append(
                    [
                        str(len(rows)),
                        *(fmt(c) for c in record.nhat),
                        fmt(record.q_residual),
                        record.provenance,
                    ]
                )
        return _csv(header, rows)

    @staticmethod
    def dominance_csv(sweep: DominanceSweep) -> str:
        header = ["x_index", "y_index", "B_xy", "present", "direction", "method"]
        rows = (
            [
                str(row.x_index),
                str(row.y_index),
                fmt(row.B_xy),
                "true" if row.present else "false",
                str(row.direction),
                str(row.method),
            ]
            for row in sweep.rows
        )
        return _csv(header, rows)

    @staticmethod
    def to_json(model: BaseModel) -> str:
        """Sorted-key JSON; floats are written in their shortest round-trip form."""
        payload = model.model_dump(mode="json")
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
