#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
分数阶投影体检验程序
读取 JSON 配置，运行一个检验命令，把报告写成 JSON/CSV
"""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional, Sequence


def setup_environment():
    """设置运行环境"""
    # 添加当前目录到系统路径
    current_dir = os.path.dirname(os.path.abspath(__file__))
    if current_dir not in sys.path:
        sys.path.insert(0, current_dir)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="s-分数阶 L^p 极投影体的数值检验")
    parser.add_argument("--config", metavar="PATH", help="JSON 配置文件")
    parser.add_argument("--command", metavar="NAME",
                        help="projbody, chain, ps, asym, optimal, limits, riesz, selftest")
    parser.add_argument("--out", metavar="DIR", help="输出目录")
    parser.add_argument("--threads", type=int, metavar="N", help="线程数上限（默认取 FRACBODY_THREADS 或 CPU 数）")
    parser.add_argument("--seed", type=int, metavar="N", help="随机种子")
    parser.add_argument("--tolerance", type=float, metavar="X", help="默认相对容差")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", dest="overrides",
                        help="覆盖配置项，例如 --set quadrature.t_points=300，可重复")
    parser.add_argument("--verbose", "-v", action="store_true", help="输出调试日志")
    parser.add_argument("--quiet", "-q", action="store_true", help="不打印检查摘要")
    return parser


def collect_overrides(args: argparse.Namespace) -> List[str]:
    """--set 先应用，专用参数后应用，因此专用参数优先"""
    overrides = list(args.overrides)
    flags = {
        "command": args.command,
        "output.dir": args.out,
        "threads": args.threads,
        "seed": args.seed,
        "tolerance": args.tolerance,
    }
    for key, value in flags.items():
        if value is not None:
            overrides.append(f"{key}={json.dumps(value)}")
    return overrides


def main(argv: Optional[Sequence[str]] = None) -> int:
    """主函数，处理命令行参数，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse 的用法错误统一按配置错误处理
        return 0 if e.code == 0 else 2

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    setup_environment()
    from core.errors import FracBodyError
    from run_controller import RunController, exit_code_for

    try:
        controller = RunController(args.config, collect_overrides(args), quiet=args.quiet)
    except FracBodyError as e:
        print(f"❌ 配置错误: {e}")
        return exit_code_for(e)
    return controller.run()


if __name__ == "__main__":
    sys.exit(main())
