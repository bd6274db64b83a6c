import json
import logging
import math
from enum import Enum
from typing import Any, ClassVar, Dict, List, Optional, Type

import attr
from marshmallow import fields

from shubinlab.models.base import ComplexField, Object, Schema
from shubinlab.models.run_config import RunConfig, RunConfigSchema

logger = logging.getLogger(__name__)


class Expectation(Enum):
    CONTRACT = "contract"  # residual <= tolerance
    WITNESS = "witness"  # residual >= tolerance, a failure that must show up
    REPORT = "report"  # measured only


class CheckResultSchema(Schema):
    name = fields.Str()
    relation = fields.Str()
    residual = fields.Float(allow_nan=True)
    tolerance = fields.Float(allow_none=True)
    expectation = fields.Str()
    passed = fields.Bool(data_key="pass")
    phase = ComplexField(allow_none=True)
    details = fields.Dict(keys=fields.Str())


@attr.s(auto_attribs=True, repr=False, kw_only=True)
class CheckResult(Object):
    name: str
    relation: str
    residual: float
    tolerance: Optional[float] = None
    expectation: str = Expectation.CONTRACT.value
    passed: bool = False
    phase: Optional[complex] = None
    details: Dict[str, Any] = attr.Factory(dict)

    _schema: ClassVar[Type[CheckResultSchema]] = CheckResultSchema

    @classmethod
    def contract(
        cls, name: str, relation: str, residual: float, tolerance: float, **kwargs: Any
    ) -> "CheckResult":
        residual = float(residual)
        passed = math.isfinite(residual) and residual <= tolerance
        return cls(
            name=name,
            relation=relation,
            residual=residual,
            tolerance=tolerance,
            expectation=Expectation.CONTRACT.value,
            passed=passed,
            **kwargs,
        )

    @classmethod
    def witness(
        cls, name: str, relation: str, residual: float, tolerance: float, **kwargs: Any
    ) -> "CheckResult":
        residual = float(residual)
        passed = math.isfinite(residual) and residual >= tolerance
        return cls(
            name=name,
            relation=relation,
            residual=residual,
            tolerance=tolerance,
            expectation=Expectation.WITNESS.value,
            passed=passed,
            **kwargs,
        )

    @classmethod
    def report(
        cls, name: str, relation: str, residual: float, **kwargs: Any
    ) -> "CheckResult":
        return cls(
            name=name,
            relation=relation,
            residual=float(residual),
            expectation=Expectation.REPORT.value,
            passed=True,
            **kwargs,
        )

    @classmethod
    def exact(
        cls, name: str, relation: str, holds: bool, **kwargs: Any
    ) -> "CheckResult":
        """Zero-tolerance check of an exact identity"""
        return cls.contract(name, relation, 0.0 if holds else 1.0, 0.0, **kwargs)

    def __repr__(self) -> str:
        return (
            f"CheckResult(name={self.name!r}, residual={self.residual:.3e}, "
            f"passed={self.passed})"
        )


class ReportSchema(Schema):
    config = fields.Nested(RunConfigSchema)
    checks = fields.List(fields.Nested(CheckResultSchema))
    passed = fields.Bool(data_key="pass")


@attr.s(auto_attribs=True, repr=False, kw_only=True)
class Report(Object):
    config: RunConfig
    checks: List[CheckResult] = attr.ib(factory=list)
    passed: bool = True

    _schema: ClassVar[Type[ReportSchema]] = ReportSchema

    @classmethod
    def build(cls, config: RunConfig, checks: List[CheckResult]) -> "Report":
        ordered = sorted(checks, key=lambda check: check.name)
        passed = all(check.passed for check in ordered)
        return cls(config=config, checks=ordered, passed=passed)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_json(self) -> str:
        return json.dumps(self.dump(), sort_keys=True, indent=2, allow_nan=True)

    def __repr__(self) -> str:
        return f"Report(checks={len(self.checks)}, passed={self.passed})"
