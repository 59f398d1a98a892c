#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
报告与日志记录模块
配置日志系统，写出确定性的 JSON 报告、时间戳元数据和按日期追加的运行记录
"""

import json
import logging
import os
import sys
from datetime import datetime
from fractions import Fraction
from typing import Dict, Optional


def _json_default(obj):
    """Fraction 写成 "p/q"，其它未知类型写成字符串"""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return str(obj)


def dumps_report(payload: Dict) -> str:
    """相同输入得到逐字节相同的文本"""
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True, default=_json_default) + "\n"


class ReportLogger:
    """报告与日志记录器"""

    def __init__(self, config, log_level: Optional[str] = None):
        """
        初始化报告记录器

        Args:
            config: 配置模块(import config)
            log_level: 覆盖 config.LOG_LEVEL
        """
        self.log_file = config.LOG_FILE
        self.log_level = getattr(logging, log_level or config.LOG_LEVEL)
        self.log_format = config.LOG_FORMAT
        self.report_dir = config.REPORT_DIR
        self.run_log_dir = config.RUN_LOG_DIR
        self.format_version = config.REPORT_FORMAT_VERSION

        self._handlers = []
        self._setup_logging()

        self.logger = logging.getLogger(__name__)
        self.logger.debug("报告记录器初始化完成")

    def _setup_logging(self):
        """配置日志系统"""
        formatter = logging.Formatter(self.log_format)

        # 文件处理器
        file_handler = logging.FileHandler(self.log_file, encoding="utf-8")
        file_handler.setLevel(self.log_level)
        file_handler.setFormatter(formatter)

        # 控制台处理器，输出到 stderr，stdout 留给报告
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(self.log_level)
        console_handler.setFormatter(formatter)

        root_logger = logging.getLogger()
        root_logger.setLevel(self.log_level)
        root_logger.addHandler(file_handler)
        root_logger.addHandler(console_handler)
        self._handlers = [file_handler, console_handler]

    def close(self):
        """移除本记录器添加的处理器"""
        root_logger = logging.getLogger()
        for handler in self._handlers:
            root_logger.removeHandler(handler)
            handler.close()
        self._handlers = []

    def default_path(self, command: str, extension: str) -> str:
        return os.path.join(self.report_dir, f"{command}.{extension}")

    def _prepare(self, path: str):
        parent = os.path.dirname(os.path.abspath(path))
        if not os.path.exists(parent):
            os.makedirs(parent)

    def write_report(self, path: str, payload: Dict, meta: Optional[Dict] = None) -> str:
        """
        写出 JSON 报告和 <name>.meta.json

        报告本身不含时间戳；时间戳和版本写在元数据文件里
        """
        self._prepare(path)
        with open(path, "w", encoding="utf-8") as f:
            f.write(dumps_report(payload))

        stem = path[:-5] if path.endswith(".json") else path
        sidecar = f"{stem}.meta.json"
        info = {
            "created": datetime.now().isoformat(),
            "format_version": self.format_version,
            "report": os.path.basename(path),
        }
        info.update(meta or {})
        with open(sidecar, "w", encoding="utf-8") as f:
            json.dump(info, f, ensure_ascii=False, indent=2, default=_json_default)
            f.write("\n")
        self.logger.info(f"报告已写入: {path}")
        return path

    def write_text(self, path: str, text: str) -> str:
        self._prepare(path)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        self.logger.info(f"文件已写入: {path}")
        return path

    def write_bytes(self, path: str, data: bytes) -> str:
        self._prepare(path)
        with open(path, "wb") as f:
            f.write(data)
        self.logger.info(f"位向量已写入: {path} ({len(data)} 字节)")
        return path

    def append_run(self, record: Dict):
        """
        追加一条运行记录到 runs/<日期>.jsonl

        Args:
            record: 命令、参数、退出码等
        """
        try:
            if not os.path.exists(self.run_log_dir):
                os.makedirs(self.run_log_dir)
            date_str = datetime.now().strftime("%Y-%m-%d")
            run_file = os.path.join(self.run_log_dir, f"{date_str}.jsonl")
            entry = {"timestamp": datetime.now().isoformat()}
            entry.update(record)
            with open(run_file, "a", encoding="utf-8") as f:
                json.dump(entry, f, ensure_ascii=False, default=_json_default)
                f.write("\n")
            self.logger.debug(f"运行记录已追加到: {run_file}")
        except OSError as e:
            self.logger.error(f"运行记录写入失败: {str(e)}")

    def log_error(self, error_msg: str, exception: Exception = None):
        """
        记录错误信息

        Args:
            error_msg: 错误消息
            exception: 异常对象(可选)
        """
        if exception:
            self.logger.error(f"{error_msg}: {str(exception)}")
        else:
            self.logger.error(error_msg)
