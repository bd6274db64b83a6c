import logging
from pathlib import Path
from typing import Any, ClassVar, Dict, List, Mapping, Optional, Type, Union

import attr
import marshmallow
from marshmallow import fields, pre_load, validate, validates

from shubinlab import constants, utils
from shubinlab.exceptions import ShubinLabConfigError
from shubinlab.gridfield import Grid1D
from shubinlab.models.base import Schema, Object

logger = logging.getLogger(__name__)


class RunConfigSchema(Schema):
    N = fields.Int()
    L = fields.Float()
    tau_list = fields.List(fields.Float())
    seed = fields.Int()
    output_dir = fields.Str()
    format = fields.Str(validate=validate.OneOf(constants.FORMATS))

    @pre_load
    def split_tau_list(self, data, many: bool, **kwargs):
        taus = data.get("tau_list")
        if isinstance(taus, str):
            data = dict(data)
            data["tau_list"] = [item for item in taus.replace(",", " ").split() if item]
        return data

    @validates("N")
    def validate_N(self, value: int, **kwargs) -> None:
        if not utils.is_power_of_two(value) or value < 2:
            raise marshmallow.ValidationError(f"N must be a power of two, got {value}")

    @validates("L")
    def validate_L(self, value: float, **kwargs) -> None:
        if not value > 0:
            raise marshmallow.ValidationError(f"L must be positive, got {value}")

    @validates("tau_list")
    def validate_tau_list(self, value: List[float], **kwargs) -> None:
        if not value:
            raise marshmallow.ValidationError("tau_list must not be empty")


@attr.s(auto_attribs=True, repr=False, kw_only=True)
class RunConfig(Object):
    N: int = constants.DEFAULT_N
    L: float = constants.DEFAULT_L
    tau_list: List[float] = attr.Factory(lambda: list(constants.DEFAULT_TAUS))
    seed: int = constants.DEFAULT_SEED
    output_dir: str = constants.DEFAULT_OUTPUT_DIR
    format: str = "json"

    _schema: ClassVar[Type[RunConfigSchema]] = RunConfigSchema

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "RunConfig":
        """Defaults overridden by `data`, validated by the schema

        Raises:
            ShubinLabConfigError: a value fails validation
        """
        merged = cls().dump()
        merged.update({key: value for key, value in data.items() if value is not None})
        try:
            return cls.load(merged)
        except marshmallow.ValidationError as e:
            raise ShubinLabConfigError(
                f"Invalid run configuration: {e.messages}"
            ) from e

    @classmethod
    def from_file(
        cls, path: Union[str, Path], overrides: Optional[Mapping[str, Any]] = None
    ) -> "RunConfig":
        data: Dict[str, Any] = read_key_value_file(path)
        data.update(
            {
                key: value
                for key, value in (overrides or {}).items()
                if value is not None
            }
        )
        return cls.from_mapping(data)

    @property
    def grid(self) -> Grid1D:
        return Grid1D(N=self.N, L=self.L)

    def __repr__(self) -> str:
        return utils.create_repr(self, ["N", "L", "tau_list", "seed"])


def read_key_value_file(path: Union[str, Path]) -> Dict[str, str]:
    """Parse `key = value` lines; `#` starts a comment

    Raises:
        ShubinLabConfigError: the file is missing or a line has no `=`
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ShubinLabConfigError(f"Cannot read config file {path}: {e}") from e
    data = {}
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ShubinLabConfigError(f"{path}:{number}: expected 'key = value'")
        data[key.strip()] = value.strip()
    logger.debug("Read %d settings from %s", len(data), path)
    return data
