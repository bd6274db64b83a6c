import logging
from typing import Any, ClassVar, Dict, Type, TypeVar

import attr
import marshmallow
from cattr.converters import Converter
from marshmallow import fields

from shubinlab import config, utils

logger = logging.getLogger(__name__)

converter = Converter()  # type: ignore


def _structure_complex(value: Any, _: Any) -> complex:
    if isinstance(value, (list, tuple)):
        return complex(*value)
    return complex(value)


converter.register_unstructure_hook(complex, lambda z: z)
converter.register_structure_hook(complex, _structure_complex)


class ComplexField(fields.Field):
    """Complex number as a [re, im] pair"""

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        value = complex(*value) if isinstance(value, (list, tuple)) else complex(value)
        return [value.real, value.imag]

    def _deserialize(self, value, attr, data, **kwargs):
        try:
            real, imag = value
            return complex(float(real), float(imag))
        except (TypeError, ValueError) as e:
            raise marshmallow.ValidationError("Expected a [re, im] pair") from e


class Schema(marshmallow.Schema):
    class Meta:
        unknown = utils.get_unknown_field_handling(config.STRICT_VALIDATION)

    @marshmallow.post_dump
    def remove_none(self, data, many: bool, **kwargs):
        return {key: value for key, value in data.items() if value is not None}


T = TypeVar("T", bound="Object")


@attr.s(auto_attribs=True, repr=False, kw_only=True)
class Object:
    _schema: ClassVar[Type[Schema]] = Schema

    @classmethod
    def load(cls: Type[T], data: Dict[str, Any], **kwargs: Any) -> T:
        normalized_data = cls._schema().load(data)
        normalized_data.update(kwargs)
        return converter.structure(normalized_data, cls)

    def dump(self) -> Dict[str, Any]:
        return self._schema().dump(converter.unstructure(self))
