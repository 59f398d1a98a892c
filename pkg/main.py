#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
sumsetlab - 主程序
解析命令行与配置文件，调度各模块，写出报告并按约定返回退出码

退出码:
  0   成功 / 所有条件一致或满足
  1   certify、witness 中至少一项在界内被否定
  2   certify、witness 结果不确定
  64  参数或集合描述错误
  65  资源、精度或构造预算不足
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

import config
from density_lab import CSV_COLUMNS, PRESETS, degree_sum_check, density_scan
from diophantine_lab import (adversarial_thick, angle_make, convergents, eps_probe, example_ncd_build,
                             observation_sequence, orbit, vandermonde_witness)
from errors import (ConstructionError, PrecisionBudgetError, PreconditionError, ResourceLimitError,
                    SpecValidationError)
from fs_engine import (ap_detect, coverage_elements, coverage_report, dump_coverage, fs_coverage,
                       syndeticity_constant)
from hypothesis_checker import (begl_check, certify, density_hypothesis_scan, polynomial_family_check,
                                polynomial_prime_witness, power_family_check, zannier_scan,
                                zannier_witness)
from report_logger import ReportLogger
from set_generators import (IntPoly, PolyPowerProduct, PowerTimesFinite, dump_setspec, enumerate_set,
                            parse_setspec, setspec_schema)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_BUDGET = 65

# 进入 JobConfig.options 的命令行参数
OPTION_KEYS = [
    "partition", "mode", "nodes", "poly", "k", "sum_bound", "zmax", "floor", "kind", "k0", "kmax",
    "depth", "a_list", "eps", "beta", "Ns", "parts", "dump", "terms",
]


# ============================================
# 命令行解析
# ============================================

class _Parser(argparse.ArgumentParser):
    """解析失败时抛出 SpecValidationError，由 main 统一映射为退出码 64"""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SpecValidationError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sumsetlab", description="有限和集与完备集实验工具")
    parser.add_argument("command", choices=config.VALID_COMMANDS + ["schema"], help="子命令")

    spec = parser.add_argument_group("集合描述")
    spec.add_argument("--family", help="集合族名称, 例如 gamma、gamma-single、poly-product")
    spec.add_argument("--spec-file", help="SetSpec JSON 文件")
    spec.add_argument("--preset", choices=sorted(PRESETS), help="预置集合")
    spec.add_argument("--a", type=int)
    spec.add_argument("--b", type=int)
    spec.add_argument("--bs", type=int, nargs="+")
    spec.add_argument("--bases", type=int, nargs="+")
    spec.add_argument("--polys", nargs="+", help="多项式, 系数从低到高, 如 0,0,1 或 0,-1,1/2")
    spec.add_argument("--S", type=int, nargs="+")
    spec.add_argument("--T", type=int, nargs="+")
    spec.add_argument("--coeffs", type=float, nargs="+")
    spec.add_argument("--elements", type=int, nargs="+")
    spec.add_argument("--start", type=int)
    spec.add_argument("--step", type=int)

    job = parser.add_argument_group("作业参数")
    job.add_argument("--config", help="JSON 配置文件, 命令行参数优先")
    job.add_argument("--bound", type=int)
    job.add_argument("--qmax", type=int)
    job.add_argument("--alpha", action="append", help="角度, 可重复: rational:p/q, sqrt:m, cf:[a0;a1,...]")
    job.add_argument("--precision", type=int)
    job.add_argument("--mem-cap", type=int)
    job.add_argument("--out")
    job.add_argument("--format", choices=config.VALID_FORMATS)
    job.add_argument("--jobs", type=int)
    job.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    opts = parser.add_argument_group("命令选项")
    opts.add_argument("--partition", choices=["round-robin", "modulus"])
    opts.add_argument("--mode")
    opts.add_argument("--nodes", type=int, nargs="+")
    opts.add_argument("--poly")
    opts.add_argument("--k", type=int)
    opts.add_argument("--sum-bound", type=int)
    opts.add_argument("--zmax", type=int)
    opts.add_argument("--floor", type=int)
    opts.add_argument("--kind", choices=["ncd", "thick", "observation"])
    opts.add_argument("--k0", type=int)
    opts.add_argument("--kmax", type=int)
    opts.add_argument("--depth", type=int)
    opts.add_argument("--a-list", type=int, nargs="+")
    opts.add_argument("--eps", type=float)
    opts.add_argument("--beta")
    opts.add_argument("--Ns", type=int, nargs="+")
    opts.add_argument("--parts", nargs=4, help="四组逗号分隔的整数 S1 S2 S3 S4")
    opts.add_argument("--dump", help="另外写出 FSBS 位向量")
    opts.add_argument("--terms", type=int)
    return parser


def parse_poly(text: str) -> IntPoly:
    """ "0,-1,1/2" → (x² − x)/2 """
    body, _, den = text.partition("/")
    try:
        coeffs = [int(c) for c in body.split(",") if c.strip()]
        return IntPoly(coeffs=coeffs, denominator=int(den) if den else 1)
    except (ValueError, ValidationError) as e:
        raise SpecValidationError(f"无效的多项式 {text!r}: {e}")


def _need(args, family: str, *names):
    for name in names:
        if getattr(args, name) is None:
            raise SpecValidationError(f"--family {family} 需要 --{name.replace('_', '-')}")


def build_spec(args) -> Optional[dict]:
    """由 --spec-file、--preset 或 --family 系列参数得到规范化的 SetSpec 字典"""
    if args.spec_file:
        try:
            with open(args.spec_file, "r", encoding="utf-8") as f:
                document = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise SpecValidationError(f"无法读取集合描述 {args.spec_file}: {e}")
        return dump_setspec(parse_setspec(document))
    if args.preset:
        return dump_setspec(PRESETS[args.preset])
    family = args.family
    if family is None:
        return None

    if family == "gamma":
        _need(args, family, "a", "b")
        doc = {"a": args.a, "b": args.b}
    elif family == "gamma-single":
        _need(args, family, "a")
        doc = {"a": args.a}
    elif family == "power-finite":
        _need(args, family, "a", "bs")
        doc = {"a": args.a, "bs": args.bs}
    elif family == "poly-product":
        _need(args, family, "bases", "polys")
        doc = {"bases": args.bases, "polys": [parse_poly(p).model_dump() for p in args.polys]}
    elif family in ("geometric-union", "finite-product"):
        _need(args, family, "S")
        doc = {"S": args.S}
    elif family == "floor-poly":
        _need(args, family, "coeffs")
        doc = {"coeffs": args.coeffs}
    elif family == "poly-primes":
        _need(args, family, "polys")
        doc = {"P": parse_poly(args.polys[0]).model_dump()}
    elif family == "power-st":
        _need(args, family, "a", "b", "S", "T")
        doc = {"a": args.a, "b": args.b, "S": args.S, "T": args.T}
    elif family == "explicit":
        _need(args, family, "elements")
        doc = {"elements": args.elements}
    elif family == "arithmetic":
        _need(args, family, "start", "step")
        doc = {"start": args.start, "step": args.step}
    elif family == "floor-table":
        raise SpecValidationError("floor-table 只能通过 --spec-file 给出")
    else:
        raise SpecValidationError(f"未知的集合族: {family}")
    doc["family"] = family
    return dump_setspec(parse_setspec(doc))


def collect_flags(args) -> dict:
    """只收集命令行上显式给出的参数"""
    flags = {"command": args.command}
    spec = build_spec(args)
    if spec is not None:
        flags["spec"] = spec
    direct = {
        "bound": args.bound, "qmax": args.qmax, "alphas": args.alpha, "precision": args.precision,
        "mem_cap": args.mem_cap, "out": args.out, "format": args.format, "jobs": args.jobs,
    }
    flags.update({k: v for k, v in direct.items() if v is not None})
    options = {k: getattr(args, k) for k in OPTION_KEYS if getattr(args, k) is not None}
    if options:
        flags["options"] = options
    return flags


# ============================================
# 作业调度
# ============================================

class SumsetLab:
    """一次命令行作业"""

    def __init__(self, job: config.JobConfig, reporter: ReportLogger):
        self.job = job
        self.reporter = reporter
        self.options = job.options
        self.logger = logging.getLogger(__name__)
        self.spec = parse_setspec(job.spec) if job.spec is not None else None
        self.spec_doc = dump_setspec(self.spec) if self.spec is not None else None

    def _require_spec(self):
        if self.spec is None:
            raise SpecValidationError(f"{self.job.command} 需要集合描述: --family、--preset 或 --spec-file")
        return self.spec

    def _alphas(self):
        return [angle_make(a, self.job.precision) for a in self.job.effective_alphas()]

    def _poly(self) -> IntPoly:
        if "poly" not in self.options:
            raise SpecValidationError("需要 --poly")
        return parse_poly(self.options["poly"])

    def run(self) -> int:
        """执行作业，写出产物，返回退出码"""
        command = self.job.command
        self.logger.info(f"开始执行: {command}")
        handler = getattr(self, f"_cmd_{command}")
        result, code, text, data = handler()

        fmt = self.job.format
        if fmt == "json":
            path = self.job.out or self.reporter.default_path(command, "json")
            report = {
                "format_version": config.REPORT_FORMAT_VERSION,
                "command": command,
                "spec": self.spec_doc,
                "bound": self.job.bound,
                "result": result,
            }
            self.reporter.write_report(path, report, meta={"command": command, "exit_code": code})
        elif fmt == "csv":
            if text is None:
                raise SpecValidationError(f"{command} 不支持 csv 输出")
            path = self.reporter.write_text(self.job.out or self.reporter.default_path(command, "csv"), text)
        else:
            if data is None:
                raise SpecValidationError(f"{command} 不支持 bits 输出")
            path = self.reporter.write_bytes(self.job.out or self.reporter.default_path(command, "bits"), data)

        self.reporter.append_run({"command": command, "spec": self.spec_doc, "bound": self.job.bound,
                                  "out": path, "exit_code": code})
        print(path)
        self.logger.info(f"{command} 完成, 退出码 {code}")
        return code

    # --------------------------------------------

    def _cmd_gen(self):
        A = enumerate_set(self._require_spec(), self.job.bound)
        result = {"count": len(A), "overflow_count": A.overflow_count, "elements": list(A.elements)}
        return result, EXIT_OK, A.to_text(), None

    def _cmd_fs(self):
        A = enumerate_set(self._require_spec(), self.job.bound)
        cov = fs_coverage(A, self.job.bound, self.job.effective_mem_cap())
        report = coverage_report(cov)
        ap_qmax = self.job.qmax if "qmax" in self.job.model_fields_set else config.AP_QMAX
        aps = ap_detect(cov, ap_qmax)
        covered = coverage_elements(cov)
        result = {
            "elements": len(A),
            "coverage": report.to_dict(),
            "syndeticity": syndeticity_constant(covered) if len(covered) else None,
            "progressions": [{"q": q, "residue": i, "onset": onset} for q, i, onset in aps],
        }
        data = dump_coverage(cov)
        if "dump" in self.options:
            self.reporter.write_bytes(self.options["dump"], data)
        self.logger.info(f"FS 覆盖结论: {report.verdict}")
        return result, EXIT_OK, covered.to_text(), data

    def _cmd_certify(self):
        spec = self._require_spec()
        cert = certify(spec, self.job.bound, self.options.get("partition"), self.job.qmax,
                       self._alphas(), self.job.jobs, self.job.effective_mem_cap(), self.options.get("terms"))
        result = cert.to_dict()
        if isinstance(spec, PowerTimesFinite):
            result["family_hypotheses"] = power_family_check(spec.a, spec.bs).to_dict()
        elif isinstance(spec, PolyPowerProduct):
            result["family_hypotheses"] = polynomial_family_check(spec.bases, spec.polys).to_dict()
        return result, cert.exit_code, None, None

    def _cmd_orbit(self):
        mode = self.options.get("mode", "gaps")
        alphas = self._alphas()
        eps = self.options.get("eps", 0.02)
        if mode == "convergents":
            depth = self.options.get("depth", 10)
            result = {"convergents": {a.origin: convergents(a, depth).to_dict() for a in alphas}}
            return result, EXIT_OK, None, None
        if mode == "eps":
            rows = eps_probe(self._require_spec(), alphas, self.job.bound, eps, self.job.jobs)
            text = "alpha,count,max_gap,eps,eps_dense\n" + "".join(
                f"{r.alpha},{r.count},{r.max_gap},{r.eps},{r.eps_dense}\n" for r in rows)
            return {"probes": [r.to_dict() for r in rows]}, EXIT_OK, text, None
        if mode != "gaps":
            raise SpecValidationError(f"未知的 orbit 模式: {mode}")
        A = enumerate_set(self._require_spec(), self.job.bound)
        stats = [orbit(A, a) for a in alphas]
        orbits = []
        for s in stats:
            entry = s.to_dict()
            entry["eps_dense"] = s.eps_dense(eps)
            orbits.append(entry)
        return {"eps": eps, "orbits": orbits}, EXIT_OK, stats[0].to_csv(), None

    def _cmd_density(self):
        spec = self._require_spec()
        Ns = self.options.get("Ns") or _default_Ns(self.job.bound)
        if self.options.get("mode") == "degree-sum":
            if not isinstance(spec, PolyPowerProduct):
                raise SpecValidationError("degree-sum 模式需要 poly-product 集合")
            check = degree_sum_check(spec.bases, spec.polys, Ns, self.job.effective_mem_cap())
            return check.to_dict(), EXIT_OK, None, None
        reports = density_scan(spec, Ns, self.job.effective_mem_cap(), self.job.jobs)
        text = ",".join(CSV_COLUMNS) + "\n" + "".join(r.to_csv_row() + "\n" for r in reports)
        return {"reports": [r.to_dict() for r in reports]}, EXIT_OK, text, None

    def _cmd_witness(self):
        mode = self.options.get("mode", "zannier" if self.spec is not None else "vandermonde")
        if mode == "vandermonde":
            if "nodes" not in self.options:
                raise SpecValidationError("vandermonde 模式需要 --nodes")
            vw = vandermonde_witness(self._poly(), self.options["nodes"])
            return vw.to_dict(), EXIT_OK, None, None
        if mode == "prime":
            res = polynomial_prime_witness(self._poly(), self.options.get("floor", 1000))
            return res.to_dict(), EXIT_OK, None, None
        if mode == "begl":
            if "parts" not in self.options:
                raise SpecValidationError("begl 模式需要 --parts")
            parts = [[int(x) for x in p.split(",") if x.strip()] for p in self.options["parts"]]
            res = begl_check(*parts)
            return res.to_dict(), EXIT_OK if res.holds else EXIT_REFUTED, None, None

        spec = self._require_spec()
        if mode == "zannier":
            A = enumerate_set(spec, self.job.bound)
            k = self.options.get("k", 2)
            b = self.options.get("sum_bound", 2)
            zmax = self.options.get("zmax")
            if "floor" in self.options:
                results = [zannier_witness(A, k, b, zmax, self.options["floor"])]
            else:
                results = zannier_scan(A, k, b, zmax)
            statuses = {r.status for r in results}
            if statuses == {"found"}:
                code = EXIT_OK
            elif statuses == {"absent"}:
                code = EXIT_REFUTED
            else:
                code = EXIT_INCONCLUSIVE
            return {"k": k, "b": b, "floors": [r.to_dict() for r in results]}, code, None, None
        if mode == "density-hypothesis":
            Ns = self.options.get("Ns") or _default_Ns(self.job.bound)
            D = enumerate_set(spec, max(Ns))
            res = density_hypothesis_scan(self._poly(), D, Ns)
            ok = all(row[3] for row in res.rows)
            return res.to_dict(), EXIT_OK if ok else EXIT_REFUTED, None, None
        if mode == "power-family":
            if not isinstance(spec, PowerTimesFinite):
                raise SpecValidationError("power-family 模式需要 power-finite 集合")
            res = power_family_check(spec.a, spec.bs)
            return res.to_dict(), EXIT_OK if res.holds else EXIT_REFUTED, None, None
        if mode == "poly-family":
            if not isinstance(spec, PolyPowerProduct):
                raise SpecValidationError("poly-family 模式需要 poly-product 集合")
            res = polynomial_family_check(spec.bases, spec.polys)
            return res.to_dict(), EXIT_OK if res.holds else EXIT_REFUTED, None, None
        raise SpecValidationError(f"未知的 witness 模式: {mode}")

    def _cmd_construct(self):
        kind = self.options.get("kind", "ncd")
        alpha = self._alphas()[0]
        if kind == "ncd":
            built = example_ncd_build(alpha, self.options.get("k0", 1), self.options.get("kmax", 30))
            result = built.to_dict()
            N = max(self.job.bound, built.A.max())
            report = coverage_report(fs_coverage(built.A, N, self.job.effective_mem_cap()))
            result["coverage"] = report.to_dict()
            return result, EXIT_OK, built.A.to_text(), None
        if kind == "thick":
            log = adversarial_thick(self.options.get("a_list", [2, 3]), alpha, self.options.get("depth"))
            return log.to_dict(), EXIT_OK, None, None
        k0 = self.options.get("k0", 1)
        kmax = self.options.get("kmax", 30)
        beta = angle_make(self.options["beta"], self.job.precision) if "beta" in self.options else None
        steps = observation_sequence(alpha, beta, [k * k for k in range(k0, kmax + 2)])
        return {"steps": [s.to_dict() for s in steps]}, EXIT_OK, None, None


def _default_Ns(bound: int) -> List[int]:
    Ns = []
    N = 1000
    while N < bound:
        Ns.append(N)
        N *= 10
    Ns.append(bound)
    return Ns


def _budget_report(e: Exception) -> str:
    if isinstance(e, ResourceLimitError) and e.required_bytes is not None:
        return f"约需 {e.required_bytes} 字节, 可用 --mem-cap 或 {config.MEM_CAP_ENV} 调整"
    if isinstance(e, PrecisionBudgetError) and e.required_bits is not None:
        return f"至少需要 {e.required_bits} 位精度 (--precision, 上限 {config.MAX_PRECISION})"
    if isinstance(e, ConstructionError) and e.hint:
        return f"建议: {e.hint}"
    return ""


# ============================================
# 主函数
# ============================================

def main(argv: Optional[List[str]] = None) -> int:
    """主函数"""
    is_valid, errors = config.validate_config()
    if not is_valid:
        print("✗ 配置验证失败:", file=sys.stderr)
        for error in errors:
            print(f"  {error}", file=sys.stderr)
        return EXIT_USAGE

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "schema":
            schema = setspec_schema()
            if args.out:
                with open(args.out, "w", encoding="utf-8") as f:
                    f.write(schema + "\n")
            else:
                print(schema)
            return EXIT_OK
        file_values = config.load_config_file(args.config) if args.config else None
        job = config.build_job_config(collect_flags(args), file_values)
    except SpecValidationError as e:
        print(f"✗ 参数错误: {e}", file=sys.stderr)
        return EXIT_USAGE

    reporter = ReportLogger(config, args.log_level)
    try:
        return SumsetLab(job, reporter).run()
    except (SpecValidationError, ValidationError) as e:
        reporter.log_error("参数错误", e)
        print(f"✗ 参数错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimitError, PrecisionBudgetError, PreconditionError, ConstructionError) as e:
        reporter.log_error("作业被拒绝", e)
        print(f"✗ {e}", file=sys.stderr)
        detail = _budget_report(e)
        if detail:
            print(f"  {detail}", file=sys.stderr)
        return EXIT_BUDGET
    except KeyboardInterrupt:
        print("\n收到中断信号, 已停止", file=sys.stderr)
        return 130
    finally:
        reporter.close()


if __name__ == "__main__":
    sys.exit(main())
