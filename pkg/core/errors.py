#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
异常定义
所有计算模块抛出的错误都从 FracBodyError 派生，命令行据此映射退出码
"""


class FracBodyError(Exception):
    """所有业务错误的基类"""


class ParamError(FracBodyError, ValueError):
    """(n, s, p) 参数不满足约束"""

    def __init__(self, message: str, code: str):
        super().__init__(message)
        self.code = code


class FieldError(FracBodyError, ValueError):
    """函数描述无效，或请求了该函数不支持的操作（例如指示函数的梯度）"""


class GeometryError(FracBodyError, ValueError):
    """星形体或仿射映射无效"""


class QuadratureError(FracBodyError, ValueError):
    """求积网格参数无效"""


class ComputationError(FracBodyError):
    """数值计算得到非有限或非正的结果"""


class ConfigError(FracBodyError):
    """配置文件或命令行参数错误"""
