#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
配置管理器
负责 JSON 配置的读取、默认值填充、key=value 覆盖、严格键校验和配置哈希
"""

import copy
import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from core.errors import ConfigError, FracBodyError, ParamError
from core.fields import BaseField, field_from_dict
from core.params import FracParams, validate_params
from quadrature.quad_config import QuadConfig
from quadrature.sphere_grid import SphereGrid
from starbody.star_body import StarBody, body_from_spec

COMMANDS = ("projbody", "chain", "ps", "asym", "optimal", "limits", "riesz", "selftest")
FORMATS = ("json", "csv")
# tolerances 中允许的键：命令名，以及 affine_invariance 报告与 limits 的最终残差
TOLERANCE_KEYS = COMMANDS + ("invariance", "limits_final")
NESTED_SECTIONS = ("quadrature", "output")
# 不影响计算结果、不计入配置哈希的键
UNHASHED_KEYS = ("output", "threads")


@dataclass(frozen=True)
class RunConfig:
    """校验后的运行配置"""

    command: str
    fields: Tuple[BaseField, ...]
    params: FracParams
    s_list: Tuple[float, ...]
    variant: str
    body: Any
    seed: int
    tolerance: float
    tolerances: Dict[str, float]
    candidate_count: int
    shear_count: int
    random_count: int
    threads: Optional[int]
    quad: QuadConfig
    output_dir: str
    formats: Tuple[str, ...]
    document: Dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def primary_field(self) -> BaseField:
        return self.fields[0]

    def tol(self, name: str) -> float:
        """某类检查的容差：tolerances 中的覆盖值优先"""
        return float(self.tolerances.get(name, self.tolerance))

    def body_on(self, grid: SphereGrid) -> StarBody:
        return body_from_spec(self.body, grid)

    @property
    def config_hash(self) -> str:
        return config_hash(self.document)


def canonical_json(document: Dict[str, Any]) -> str:
    return json.dumps(document, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def config_hash(document: Dict[str, Any]) -> str:
    """规范化配置（去掉输出目录与线程数）的 sha1 前 12 位"""
    hashed = {k: v for k, v in document.items() if k not in UNHASHED_KEYS}
    return hashlib.sha1(canonical_json(hashed).encode("utf-8")).hexdigest()[:12]


def _deep_merge(base: Dict[str, Any], update: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict) and key in NESTED_SECTIONS:
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class ConfigManager:
    """配置管理类，负责配置文件读取、默认值填充、命令行覆盖和严格键校验"""

    def __init__(self, config_path: Optional[str] = None):
        """
        初始化配置管理器

        Args:
            config_path: 配置文件路径，None 时只使用默认配置
        """
        self.config_path = config_path
        self.config = self.load_config()

    def get_default_config(self) -> Dict[str, Any]:
        """
        获取默认配置

        Returns:
            默认配置字典
        """
        return {
            "command": "selftest",
            "field": "gaussian",
            "fields": [],
            "n": 2,
            "s": 0.5,
            "p": 2.0,
            "s_list": [0.5, 0.7, 0.9, 0.95],
            "variant": "sym",
            "body": "ball",
            "seed": 0,
            "tolerance": 0.02,
            "tolerances": {},
            "candidate_count": 200,
            "shear_count": 5,
            "random_count": 50,
            "threads": None,
            "quadrature": {
                "sphere_level": None,
                "box_half_extent": None,
                "box_points": None,
                "t_min": 1.0e-4,
                "t_max": 1.0e4,
                "t_points": 200,
                "level_points": None,
                "level_count": 200,
                "oracle_points": None,
                "riesz_points": None,
            },
            "output": {
                "dir": "results",
                "formats": ["json", "csv"],
            },
        }

    def _check_keys(self, document: Dict[str, Any]) -> None:
        """未知键（包括嵌套块中的）一律拒绝"""
        defaults = self.get_default_config()
        for key, value in document.items():
            if key not in defaults:
                raise ConfigError(f"未知的配置项: {key}")
            if key in NESTED_SECTIONS:
                if not isinstance(value, dict):
                    raise ConfigError(f"配置项 {key} 必须是对象")
                for sub in value:
                    if sub not in defaults[key]:
                        raise ConfigError(f"未知的配置项: {key}.{sub}")
            if key == "tolerances":
                if not isinstance(value, dict):
                    raise ConfigError("配置项 tolerances 必须是对象")
                for sub in value:
                    if sub not in TOLERANCE_KEYS:
                        raise ConfigError(f"未知的配置项: tolerances.{sub}")

    def load_config(self) -> Dict[str, Any]:
        """
        加载配置文件并与默认配置合并

        Returns:
            配置字典

        Raises:
            ConfigError: 文件不存在、格式错误或包含未知键
        """
        defaults = self.get_default_config()
        if self.config_path is None:
            return defaults
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                document = json.load(f)
        except FileNotFoundError as e:
            raise ConfigError(f"配置文件不存在: {self.config_path}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"配置文件格式错误: {self.config_path}: {e}") from e
        if not isinstance(document, dict):
            raise ConfigError("配置文件顶层必须是 JSON 对象")
        self._check_keys(document)
        return _deep_merge(defaults, document)

    def save_config(self, path: str) -> str:
        """
        把合并、覆盖后的配置写成可以直接用 --config 重跑的 JSON（键排序）

        Returns:
            写出的路径
        """
        self._check_keys(self.config)
        folder = os.path.dirname(path)
        if folder:
            os.makedirs(folder, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.config, f, sort_keys=True, indent=4, ensure_ascii=False)
            f.write("\n")
        return path

    def get_value(self, key: str) -> Any:
        """
        按点号路径读取配置项，例如 quadrature.t_points

        Raises:
            ConfigError: 路径不存在
        """
        value: Any = self.config
        for part in key.split("."):
            if not isinstance(value, dict) or part not in value:
                raise ConfigError(f"配置项不存在: {key}")
            value = value[part]
        return value

    def set_value(self, key: str, value: Any) -> None:
        """
        设置配置项的值

        Raises:
            ConfigError: 键未知
        """
        keys = key.split(".")
        patch: Dict[str, Any] = {}
        target = patch
        for k in keys[:-1]:
            target[k] = {}
            target = target[k]
        target[keys[-1]] = value
        self._check_keys(patch)

        target = self.config
        for k in keys[:-1]:
            target = target.setdefault(k, {})
        target[keys[-1]] = value

    def apply_override(self, assignment: str) -> None:
        """
        应用 key=value 形式的覆盖，value 按 JSON 解析，解析失败时当作字符串

        Raises:
            ConfigError: 缺少等号或键未知
        """
        if "=" not in assignment:
            raise ConfigError(f"覆盖项必须是 key=value 形式: {assignment}")
        key, raw = assignment.split("=", 1)
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        self.set_value(key.strip(), value)

    def _resolve_fields(self, n: int) -> List[BaseField]:
        specs = self.get_value("fields") or [self.get_value("field")]
        fields = []
        for spec in specs:
            f = field_from_dict(spec, n)
            if f.n != n:
                raise ConfigError(f"函数维数 {f.n} 与 n={n} 不一致")
            fields.append(f)
        return fields

    def to_run_config(self) -> RunConfig:
        """
        校验并生成运行配置

        Raises:
            ConfigError: 任何配置项无效（参数错误沿用核心模块的诊断文本）
        """
        cfg = self.config
        self._check_keys(cfg)
        command = cfg["command"]
        if command not in COMMANDS:
            raise ConfigError(f"未知的命令: {command}，可选 {', '.join(COMMANDS)}")

        from projbody.frac_body import VARIANTS

        if cfg["variant"] not in VARIANTS:
            raise ConfigError(f"未知的投影体类型: {cfg['variant']}，可选 {', '.join(VARIANTS)}")
        formats = tuple(self.get_value("output.formats"))
        if not formats or any(fmt not in FORMATS for fmt in formats):
            raise ConfigError(f"输出格式必须取自 {', '.join(FORMATS)}: {list(formats)}")
        out_dir = str(self.get_value("output.dir"))
        if os.path.exists(out_dir) and not (os.path.isdir(out_dir) and os.access(out_dir, os.W_OK)):
            raise ConfigError(f"输出目录不可写: {out_dir}")

        try:
            n = int(cfg["n"])
            s_list = tuple(float(s) for s in cfg["s_list"])
            # 极限扫描允许 ps ≥ n
            sobolev = command != "limits"
            params = validate_params(n, float(cfg["s"]), float(cfg["p"]), sobolev=sobolev)
            if command == "limits":
                for s in s_list:
                    validate_params(n, s, params.p, sobolev=False)
            fields = self._resolve_fields(n)
            quad = QuadConfig.from_dict(cfg["quadrature"])
            body_from_spec(cfg["body"], quad.sphere(n))
        except ParamError as e:
            raise ConfigError(str(e)) from e
        except FracBodyError as e:
            raise ConfigError(f"配置无效: {e}") from e
        except (TypeError, ValueError) as e:
            raise ConfigError(f"配置无效: {e}") from e

        for name in ("candidate_count", "shear_count", "random_count"):
            if int(cfg[name]) < 0:
                raise ConfigError(f"{name} 不能为负")
        threads = cfg.get("threads")
        if threads is not None and int(threads) < 1:
            raise ConfigError(f"threads 必须为正整数，当前 {threads}")
        tolerance = float(cfg["tolerance"])
        if not tolerance >= 0:
            raise ConfigError(f"tolerance 必须非负，当前 {tolerance}")

        document = copy.deepcopy(cfg)
        document["fields"] = [f.to_dict() for f in fields]
        document["field"] = document["fields"][0]
        return RunConfig(
            command=command,
            fields=tuple(fields),
            params=params,
            s_list=s_list,
            variant=cfg["variant"],
            body=cfg["body"],
            seed=int(cfg["seed"]),
            tolerance=tolerance,
            tolerances={k: float(v) for k, v in cfg["tolerances"].items()},
            candidate_count=int(cfg["candidate_count"]),
            shear_count=int(cfg["shear_count"]),
            random_count=int(cfg["random_count"]),
            threads=None if threads is None else int(threads),
            quad=quad,
            output_dir=out_dir,
            formats=formats,
            document=document,
        )


def parse_config(config_path: Optional[str] = None, overrides: Sequence[str] = ()) -> RunConfig:
    """
    读取配置文件、依次应用 key=value 覆盖并校验

    Raises:
        ConfigError: 文件、键或参数无效
    """
    manager = ConfigManager(config_path)
    for assignment in overrides:
        manager.apply_override(assignment)
    return manager.to_run_config()
