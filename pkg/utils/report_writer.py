#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
报告输出
<command>-<hash>.json 为完整结果（键排序、无时间戳），<command>-<hash>.csv 每个检查一行，
表格写成 <command>-<hash>.<报告>.<表>.csv，时间戳与耗时写入 <command>-<hash>.meta.json
"""

import datetime
import json
import logging
import os
import platform
from typing import Any, Dict, List, Sequence

import pandas as pd
import psutil

from report_providers.base_provider import Report, to_builtin

logger = logging.getLogger(__name__)

CHECK_COLUMNS = [
    "report_index", "report", "check", "lhs", "relation", "rhs", "gap", "relative_gap",
    "tolerance", "asserted", "passed", "note",
]


def checks_frame(reports: Sequence[Report]) -> pd.DataFrame:
    """所有检查项的扁平表格"""
    rows = []
    for index, report in enumerate(reports):
        for check in report.checks:
            row = check.to_dict()
            row["check"] = row.pop("name")
            row.update({"report_index": index, "report": report.kind})
            rows.append(row)
    return pd.DataFrame(rows, columns=CHECK_COLUMNS)


def host_info() -> Dict[str, Any]:
    memory = psutil.virtual_memory()
    return {
        "platform": platform.platform(),
        "python": platform.python_version(),
        "cpu_logical": psutil.cpu_count(logical=True),
        "cpu_physical": psutil.cpu_count(logical=False),
        "memory_total_gb": round(memory.total / (1024 ** 3), 2),
    }


class ReportWriter:
    """把一次运行的报告写到输出目录"""

    def __init__(self, output_dir: str, formats: Sequence[str] = ("json", "csv")):
        self.output_dir = output_dir
        self.formats = tuple(formats)

    def _path(self, name: str) -> str:
        return os.path.join(self.output_dir, name)

    def write(self, command: str, config_hash: str, document: Dict[str, Any], reports: List[Report],
              timings: Dict[str, float]) -> List[str]:
        """
        写出全部文件

        Returns:
            写出的文件路径列表
        """
        os.makedirs(self.output_dir, exist_ok=True)
        stem = f"{command}-{config_hash}"
        written = []

        if "json" in self.formats:
            payload = {
                "command": command,
                "config_hash": config_hash,
                "config": to_builtin(document),
                "passed": all(r.passed for r in reports),
                "reports": [r.to_dict() for r in reports],
            }
            path = self._path(f"{stem}.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump(payload, f, sort_keys=True, indent=2, ensure_ascii=False)
                f.write("\n")
            written.append(path)

        if "csv" in self.formats:
            path = self._path(f"{stem}.csv")
            checks_frame(reports).to_csv(path, index=False)
            written.append(path)
            for index, report in enumerate(reports):
                for table, frame in report.tables.items():
                    path = self._path(f"{stem}.{index:02d}-{report.kind}.{table}.csv")
                    frame.to_csv(path, index=False)
                    written.append(path)

        meta = {
            "command": command,
            "config_hash": config_hash,
            "finished_at": datetime.datetime.now().isoformat(timespec="seconds"),
            "timings": timings,
            "report_timings": [{"report": r.kind, **r.timings} for r in reports],
            "host": host_info(),
        }
        path = self._path(f"{stem}.meta.json")
        with open(path, "w", encoding="utf-8") as f:
            json.dump(to_builtin(meta), f, indent=2, ensure_ascii=False)
        written.append(path)

        for item in written:
            logger.debug("写出 %s", item)
        return written
