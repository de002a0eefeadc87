#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
核心包
参数校验、解析函数目录与异常定义
"""

from core.errors import (
    ComputationError,
    ConfigError,
    FieldError,
    FracBodyError,
    GeometryError,
    ParamError,
    QuadratureError,
)
from core.fields import (
    AbsField,
    AffineMap,
    BaseField,
    FieldSpec,
    SumField,
    eval_field,
    eval_gradient,
    field_from_dict,
    make_field,
    random_sl_shear,
)
from core.params import FracParams, alpha_np, alpha_np_exact, omega_n, sphere_area, validate_params

__all__ = [
    'ComputationError',
    'ConfigError',
    'FieldError',
    'FracBodyError',
    'GeometryError',
    'ParamError',
    'QuadratureError',
    'AbsField',
    'AffineMap',
    'BaseField',
    'FieldSpec',
    'SumField',
    'eval_field',
    'eval_gradient',
    'field_from_dict',
    'make_field',
    'random_sl_shear',
    'FracParams',
    'alpha_np',
    'alpha_np_exact',
    'omega_n',
    'sphere_area',
    'validate_params',
]
