"""Four-stage pipeline skeleton: stage contracts, component registry,
validation, and serial run orchestration.

Stages hand off through files at the paths named in the config, never
through memory, so any subset of stages can run in its own process and
produce byte-identical artifacts. Stage outputs carry no timestamps;
wall-clock data lives only in the run manifest.
"""

import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Callable

from .config import ConfigIssue, PipelineConfig, ValidationFailed, check_param_types
from .errors import QAError, UsageError


class StageKind(Enum):
    INFO_SOURCE_PREP = "info-source-prep"
    QUESTION_PROCESSING = "question-processing"
    ANSWER_RETRIEVAL = "answer-retrieval"
    EVALUATION = "evaluation"


PIPELINE_ORDER = (
    StageKind.INFO_SOURCE_PREP,
    StageKind.QUESTION_PROCESSING,
    StageKind.ANSWER_RETRIEVAL,
    StageKind.EVALUATION,
)


class DuplicateName(QAError):
    pass


class OrderViolation(UsageError):
    pass


class StageFailure(QAError):
    def __init__(self, stage: StageKind, cause: BaseException):
        super().__init__(f"stage {stage.value} failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class StageResult:
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    detail: str = ""


@dataclass(frozen=True)
class StageComponent:
    stage: StageKind
    name: str
    run: Callable[[PipelineConfig], StageResult]


class ComponentRegistry:
    """Components per stage; first registered is the stage default."""

    def __init__(self):
        self._by_stage: dict[StageKind, dict[str, StageComponent]] = {
            stage: {} for stage in PIPELINE_ORDER
        }

    def register(self, component: StageComponent) -> None:
        bucket = self._by_stage[component.stage]
        if component.name in bucket:
            raise DuplicateName(
                f"component {component.name!r} already registered for {component.stage.value}"
            )
        bucket[component.name] = component

    def get(self, stage: StageKind, name: str | None = None) -> StageComponent:
        bucket = self._by_stage[stage]
        if not bucket:
            raise QAError(f"no component registered for stage {stage.value}")
        if name is None:
            return next(iter(bucket.values()))
        if name not in bucket:
            raise QAError(f"no component {name!r} for stage {stage.value}")
        return bucket[name]

    def components(self, stage: StageKind) -> list[StageComponent]:
        return list(self._by_stage[stage].values())


def analysis_out_path(config: PipelineConfig) -> str:
    return config.stage_params["questions.analysis_out"]


def stage_inputs(config: PipelineConfig, stage: StageKind) -> list[str]:
    if stage is StageKind.INFO_SOURCE_PREP:
        return [config.corpus_path]
    if stage is StageKind.QUESTION_PROCESSING:
        paths = [config.questions_path]
        if config.classifier_model_path:
            paths.append(config.classifier_model_path)
        return paths
    if stage is StageKind.ANSWER_RETRIEVAL:
        return [config.index_path, analysis_out_path(config)]
    paths = [config.answers_out_path]
    if config.gold_path:
        paths.append(config.gold_path)
    return paths


def stage_outputs(config: PipelineConfig, stage: StageKind) -> list[str]:
    if stage is StageKind.INFO_SOURCE_PREP:
        return [config.index_path]
    if stage is StageKind.QUESTION_PROCESSING:
        return [analysis_out_path(config)]
    if stage is StageKind.ANSWER_RETRIEVAL:
        return [config.answers_out_path]
    return [config.report_out_path] if config.report_out_path else []


# Artifact path -> the stage that produces it.
def _producers(config: PipelineConfig) -> dict[str, StageKind]:
    return {
        config.index_path: StageKind.INFO_SOURCE_PREP,
        analysis_out_path(config): StageKind.QUESTION_PROCESSING,
        config.answers_out_path: StageKind.ANSWER_RETRIEVAL,
    }


def validate_config(
    config: PipelineConfig, stages_requested: set[StageKind]
) -> list[ConfigIssue]:
    """Empty list iff every requested stage can run against this config."""
    issues = check_param_types(config)
    producers = _producers(config)
    for stage in PIPELINE_ORDER:
        if stage not in stages_requested:
            continue
        if stage is StageKind.QUESTION_PROCESSING and not config.classifier_model_path:
            issues.append(
                ConfigIssue("MissingModelPath", "classifier_model_path is not set")
            )
        if stage is StageKind.EVALUATION and not config.gold_path:
            issues.append(ConfigIssue("MissingGoldPath", "gold_path is not set"))
        for path in stage_inputs(config, stage):
            producer = producers.get(path)
            if producer is not None and producer in stages_requested:
                continue  # will exist by the time this stage runs
            if not Path(path).is_file():
                issues.append(ConfigIssue("MissingFile", path))
        for path in stage_outputs(config, stage):
            if not Path(path).parent.is_dir():
                issues.append(ConfigIssue("MissingDir", str(Path(path).parent)))
    if StageKind.ANSWER_RETRIEVAL in stages_requested:
        for key in ("extract.persons", "extract.locations"):
            gaz = config.param(key)
            if gaz and not Path(gaz).is_file():
                issues.append(ConfigIssue("MissingFile", gaz))
    return issues


@dataclass(frozen=True)
class StageRun:
    stage: StageKind
    component: str
    duration_s: float
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    detail: str = ""


@dataclass
class RunManifest:
    started_at: str
    config_digest: str
    stages_run: list[StageRun] = field(default_factory=list)


def run_pipeline(
    config: PipelineConfig,
    registry: ComponentRegistry,
    stages: list[StageKind],
    manifest_path: str | None = None,
) -> RunManifest:
    """Run the requested stages serially; abort on first failure."""
    if not stages:
        raise OrderViolation("no stages requested")
    order = {stage: i for i, stage in enumerate(PIPELINE_ORDER)}
    indices = [order[s] for s in stages]
    if indices != sorted(set(indices)):
        raise OrderViolation(f"stages out of pipeline order: {[s.value for s in stages]}")

    requested = set(stages)
    producers = _producers(config)
    for stage in stages:
        for path in stage_inputs(config, stage):
            producer = producers.get(path)
            if producer is None:
                continue
            if producer not in requested and not Path(path).is_file():
                raise OrderViolation(
                    f"{stage.value} needs {path} but {producer.value} is not requested "
                    "and the artifact does not exist"
                )
    issues = validate_config(config, requested)
    if issues:
        raise ValidationFailed(issues)

    manifest = RunManifest(
        started_at=datetime.now(timezone.utc).isoformat(),
        config_digest=config.digest(),
    )
    for stage in stages:
        component = registry.get(stage)
        t0 = time.perf_counter()
        try:
            result = component.run(config)
        except Exception as exc:
            raise StageFailure(stage, exc) from exc
        manifest.stages_run.append(
            StageRun(
                stage=stage,
                component=component.name,
                duration_s=time.perf_counter() - t0,
                inputs=result.inputs,
                outputs=result.outputs,
                detail=result.detail,
            )
        )
    if manifest_path is None:
        anchor = config.report_out_path or config.answers_out_path
        manifest_path = str(Path(anchor).parent / "run_manifest.txt")
    write_manifest(manifest, manifest_path)
    return manifest


def write_manifest(manifest: RunManifest, path) -> None:
    lines = [
        f"started_at = {manifest.started_at}",
        f"config_digest = {manifest.config_digest}",
    ]
    for run in manifest.stages_run:
        lines.append(f"stage = {run.stage.value}")
        lines.append(f"  component = {run.component}")
        lines.append(f"  duration_s = {run.duration_s:.6f}")
        lines.append(f"  inputs = {', '.join(run.inputs) or '-'}")
        lines.append(f"  outputs = {', '.join(run.outputs) or '-'}")
        if run.detail:
            lines.append(f"  detail = {run.detail}")
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
