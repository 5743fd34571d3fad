"""Dataset ingestion, experiment plans, the run journal and report tables."""

from pwbench.bench.dataset import (
    Dataset,
    DatasetEntry,
    DatasetError,
    Randomness,
    builtin_reference_set,
    emit_hashfiles,
    load_dataset,
    parse_dataset,
)
from pwbench.bench.plan import AttackKind, AttackSpec, ExperimentPlan, PlanError, load_plan, parse_plan
from pwbench.bench.report import ReportError, ReportTable, Schema, render_report
from pwbench.bench.runner import (
    ExperimentError,
    ExperimentLocked,
    Outcome,
    RunRecord,
    load_cells,
    load_records,
    run_experiment,
)

__all__ = [
    "AttackKind",
    "AttackSpec",
    "Dataset",
    "DatasetEntry",
    "DatasetError",
    "ExperimentError",
    "ExperimentLocked",
    "ExperimentPlan",
    "Outcome",
    "PlanError",
    "Randomness",
    "ReportError",
    "ReportTable",
    "RunRecord",
    "Schema",
    "builtin_reference_set",
    "emit_hashfiles",
    "load_cells",
    "load_dataset",
    "load_plan",
    "parse_dataset",
    "parse_plan",
    "render_report",
    "run_experiment",
]
