"""
File: output.py

Description: Write results to csv and json, every file carrying the run config, and print summary tables

@author Derek Garcia
"""

import csv
import json
import os
from datetime import datetime
from typing import Any, Dict, List, Sequence

from tabulate import tabulate

from dto.metrics_dto import SampleMetrics
from dto.run_config_dto import RunConfigDTO
from dto.trajectory_dto import TrajectoryPoint
from metrics.config import METRIC_NAMES
from metrics.report import MetricsReport

FORMAT_VERSION = 1
ENCODING = "utf-8"

TRAJECTORY_HEADER = ['iteration', 'expected_energy', 'best_energy', 'temperature']


def output_path(directory: str, filename: str) -> str:
    """
    Join a filename to the output directory, creating the directory if needed

    :param directory: Output directory
    :param filename: Name of the file
    :return: Path to the file
    """
    os.makedirs(directory, exist_ok=True)
    return os.path.join(directory, filename)


def _provenance_lines(run_config: RunConfigDTO) -> List[str]:
    """
    :param run_config: Config of the run
    :return: Comment lines to open a csv with
    """
    return [f"# format_version: {FORMAT_VERSION}",
            f"# run_config: {json.dumps(run_config.to_dict(), sort_keys=True)}"]


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence[Any]], run_config: RunConfigDTO) -> str:
    """
    Write rows to a csv file preceded by '#' provenance lines

    :param path: Path to the csv file
    :param header: Column names
    :param rows: Data rows
    :param run_config: Config of the run
    :return: Path to the csv file
    """
    path = path if path.endswith('.csv') else f"{path}.csv"
    with open(path, 'w', encoding=ENCODING, newline='') as f:
        for line in _provenance_lines(run_config):
            f.write(f"{line}\n")
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_json(path: str, data: Dict[str, Any], run_config: RunConfigDTO) -> str:
    """
    Write a report to json with its format version and run config

    :param path: Path to the json file
    :param data: Report data
    :param run_config: Config of the run
    :return: Path to the json file
    """
    data = {
        'format_version': FORMAT_VERSION,
        'generated': datetime.now().isoformat(),
        'run_config': run_config.to_dict(),
        **data
    }
    path = path if path.endswith('.json') else f"{path}.json"
    with open(path, 'w', encoding=ENCODING) as f:
        json.dump(data, f, indent=4)
    return path


def write_trajectory(path: str, points: List[TrajectoryPoint], run_config: RunConfigDTO) -> str:
    """
    Write an annealing trajectory

    :param path: Path to the csv file
    :param points: Trajectory points in iteration order
    :param run_config: Config of the run
    :return: Path to the csv file
    """
    return write_csv(path, TRAJECTORY_HEADER, [p.to_row() for p in points], run_config)


def _sample_header(targets: Sequence[str]) -> List[str]:
    """
    :param targets: Names of the study variables
    :return: Columns of a per-sample row
    """
    header = ['weight', 'size', *METRIC_NAMES]
    for t in targets:
        header.extend([f"{t}_estimate", f"{t}_variance"])
    return header


def _sample_row(row: SampleMetrics, targets: Sequence[str]) -> List[Any]:
    """
    :param row: Metrics of one sample
    :param targets: Names of the study variables
    :return: Values in the per-sample column order
    """
    values = [row.weight, row.size, *(getattr(row, m) for m in METRIC_NAMES)]
    for t in targets:
        values.extend(row.estimates[t])
    return values


def write_sample_metrics(path: str, reports: List[Dict[str, Any]], run_config: RunConfigDTO) -> str:
    """
    Write the per-sample metrics of several reports as one long table for distribution plots

    :param path: Path to the csv file
    :param reports: Dicts with the report and the columns identifying its setting, ie {'p': 5, 'report': ...}
    :param run_config: Config of the run
    :return: Path to the csv file
    """
    keys = [k for k in reports[0] if k != 'report'] if reports else []
    targets = [t.name for t in reports[0]['report'].targets] if reports else []
    rows = []
    for entry in reports:
        report: MetricsReport = entry['report']
        setting = [entry[k] for k in keys]
        for i, r in enumerate(report.rows):
            rows.append([*setting, report.design, report.mode, i, *_sample_row(r, targets)])
    return write_csv(path, [*keys, 'design', 'mode', 'sample', *_sample_header(targets)], rows, run_config)


def summary_rows(reports: List[Dict[str, Any]]) -> tuple[List[str], List[List[Any]]]:
    """
    One row per report with the mean and standard deviation of every metric and the accuracy of every target

    :param reports: Dicts with the report and the columns identifying its setting
    :return: Header and rows
    """
    if not reports:
        return [], []
    keys = [k for k in reports[0] if k != 'report']
    header = [*keys, 'design', 'mode', 'samples', 'conditional']
    for m in METRIC_NAMES:
        header.extend([f"{m}_mean", f"{m}_sd"])
    for t in reports[0]['report'].targets:
        header.extend([f"{t.name}_rrmse" if t.relative else f"{t.name}_rmse", f"{t.name}_coverage"])

    rows = []
    for entry in reports:
        report: MetricsReport = entry['report']
        row = [*(entry[k] for k in keys), report.design, report.mode, report.samples, report.conditional]
        for m in METRIC_NAMES:
            row.extend([report.summary[m].mean, report.summary[m].sd])
        for t in report.targets:
            row.extend([t.rrmse if t.relative else t.rmse, t.coverage])
        rows.append(row)
    return header, rows


def write_summary(path: str, reports: List[Dict[str, Any]], run_config: RunConfigDTO) -> str:
    """
    Write the summary table of several reports

    :param path: Path to the csv file
    :param reports: Dicts with the report and the columns identifying its setting
    :param run_config: Config of the run
    :return: Path to the csv file
    """
    header, rows = summary_rows(reports)
    return write_csv(path, header, rows, run_config)


def print_summary(reports: List[Dict[str, Any]]) -> None:
    """
    Print the summary table of several reports to stdout

    :param reports: Dicts with the report and the columns identifying its setting
    """
    header, rows = summary_rows(reports)
    table = [[f"{v:.4g}" if isinstance(v, float) else v for v in row] for row in rows]
    print(tabulate(table, headers=header, tablefmt='fancy_grid'))


def read_json(path: str) -> Dict[str, Any]:
    """
    Read a json file written by write_json

    :param path: Path to the json file
    :raises FileNotFoundError: If the file does not exist
    :return: Report data
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"File '{path}' does not exist")
    with open(path, 'r', encoding=ENCODING) as f:
        return json.load(f)


def write_reports(directory: str, reports: List[Dict[str, Any]], run_config: RunConfigDTO,
                  include_rows: bool = True) -> Dict[str, str]:
    """
    Write the summary csv, per-sample csv and full json of several reports

    :param directory: Output directory
    :param reports: Dicts with the report and the columns identifying its setting
    :param run_config: Config of the run
    :param include_rows: Include per-sample rows in the json (Default: True)
    :return: Dict of output name to path
    """
    data = [{**{k: v for k, v in entry.items() if k != 'report'}, **entry['report'].to_dict(include_rows)}
            for entry in reports]
    return {
        'summary': write_summary(output_path(directory, "summary.csv"), reports, run_config),
        'samples': write_sample_metrics(output_path(directory, "samples.csv"), reports, run_config),
        'report': write_json(output_path(directory, "report.json"), {'reports': data}, run_config)
    }
