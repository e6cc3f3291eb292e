"""
File: test_cli.py

Description: Argument parsing and end to end runs of every command

@author Derek Garcia
"""

import csv
import os

import pytest

from cli.cmd.benchmark import run_benchmark
from cli.cmd.draw import run_draw
from cli.cmd.evaluate import run_evaluate
from cli.cmd.generate import run_generate
from cli.cmd.optimize import run_optimize
from cli.design_factory import DesignFactory
from cli.parser import parse_arguments, synthetic_type, allocation_type
from config.parser import Config
from dto.run_config_dto import RunConfigDTO
from tactical.configuration import validate
from tactical.io import read_configuration, digest
from util.output import read_json


@pytest.fixture(autouse=True)
def few_replicates(monkeypatch):
    monkeypatch.setenv('DBD_REPLICATES', '50')


def _setup(argv, out):
    args = parse_arguments(["--out", str(out), *argv])
    config = Config()
    run_config = RunConfigDTO.from_args(args)
    return args, config, run_config, DesignFactory(config, run_config.seed, run_config.threads)


def _read_rows(path):
    with open(path, encoding="utf-8") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.reader(lines))


def test_synthetic_type():
    assert synthetic_type("N=100,p=3") == {'N': 100, 'p': 3}
    for bad in ("N=100", "N=a,p=2", "N=0,p=2", "N=10,p=2,q=1"):
        with pytest.raises(Exception):
            synthetic_type(bad)


def test_allocation_type():
    assert allocation_type("north=5, south=3") == {'north': 5, 'south': 3}


@pytest.mark.parametrize("argv", [
    ["optimize", "--synthetic", "N=10,p=2"],
    ["optimize", "--synthetic", "N=10,p=2", "--n", "2", "--stratum-n", "a=1"],
    ["optimize", "-i", "pop.csv", "--n", "2"],
    ["optimize", "--synthetic", "N=10,p=2", "--n", "2", "--compress-size", "2"],
    ["optimize", "--synthetic", "N=10,p=2", "--stratum-n", "a=1"],
    ["draw"],
    ["benchmark", "-i", "pop.csv", "--aux", "x", "--n", "2", "--dims", "2"],
    ["generate", "--size", "10"],
])
def test_parse_rejects(argv):
    with pytest.raises(SystemExit):
        parse_arguments(argv)


def test_parse_defaults():
    args = parse_arguments(["optimize", "--synthetic", "N=10,p=2", "--n", "2"])
    assert args.seed == 0
    assert args.threads == 1
    assert args.init == "cyclic"
    assert not args.compress


def test_run_config_keeps_result_relevant_args():
    args = parse_arguments(["--seed", "4", "--threads", "2", "optimize", "--synthetic", "N=10,p=2", "--n", "2"])
    run_config = RunConfigDTO.from_args(args, {'anneal': {'iterations': 5}})
    data = run_config.to_dict()
    assert data['seed'] == 4
    assert data['threads'] == 2
    assert data['parameters']['n'] == 2
    assert 'silent' not in data['parameters']
    assert data['parameters']['settings'] == {'anneal': {'iterations': 5}}
    with pytest.raises(ValueError):
        RunConfigDTO("optimize", -1)


def test_generate(tmp_path):
    args, _, run_config, _ = _setup(["--seed", "1", "generate", "--size", "20", "--dims", "3"], tmp_path)
    path = run_generate(run_config, args.size, args.dims)
    with open(path, encoding="utf-8") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["id", "x1", "x2", "x3"]
    assert len(rows) == 21


def _optimize(out, argv, threads=1):
    args, config, run_config, factory = _setup(["--seed", "3", "--threads", str(threads), "optimize", *argv], out)
    return run_optimize(run_config, config, factory, args)


def test_optimize(tmp_path):
    paths = _optimize(tmp_path, ["--synthetic", "N=30,p=2", "--n", "6", "--iters", "500"])
    D = read_configuration(paths['configuration'])
    assert validate(D)
    assert (D.N, D.n, D.M) == (30, 6, 5)
    summary = read_json(paths['summary'])
    assert summary['digest'] == digest(D)
    assert summary['best_energy'] <= summary['initial_energy'] + 1e-12
    assert summary['format_version'] == 1
    assert summary['run_config']['seed'] == 3
    assert not summary['conditional']
    trajectory = _read_rows(paths['trajectory'])
    assert trajectory[0] == ['iteration', 'expected_energy', 'best_energy', 'temperature']
    assert trajectory[-1][0] == '500'


def test_optimize_is_reproducible(tmp_path):
    args = ["--synthetic", "N=30,p=2", "--n", "6", "--iters", "300", "--init", "lpm"]
    first = read_json(_optimize(tmp_path / "a", args)['summary'])
    second = read_json(_optimize(tmp_path / "b", args)['summary'])
    assert first['digest'] == second['digest']
    assert first['initial_digest'] == second['initial_digest']


def test_parallel_optimize_is_reproducible(tmp_path):
    args = ["--synthetic", "N=40,p=2", "--n", "4", "--iters", "300"]
    first = read_json(_optimize(tmp_path / "a", args, threads=2)['summary'])
    second = read_json(_optimize(tmp_path / "b", args, threads=2)['summary'])
    assert first['workers'] == 2
    assert first['digest'] == second['digest']


def test_compressed_round_trip(tmp_path, capsys):
    paths = _optimize(tmp_path, ["--synthetic", "N=60,p=2", "--n", "5", "--iters", "200", "--compress",
                                 "--compress-size", "3"])
    plan = read_json(paths['plan'])
    assert plan['N_star'] == 15
    assert len(plan['units']) == 15
    assert read_json(paths['summary'])['conditional']

    args, _, run_config, factory = _setup(["--seed", "3", "draw", paths['configuration'], "--plan", paths['plan']],
                                          tmp_path)
    ids = run_draw(run_config, factory, args)
    assert len(ids) == 5
    assert set(ids) <= set(plan['units'])
    assert capsys.readouterr().out.split() == ids

    args, config, run_config, factory = _setup(["--seed", "3", "evaluate", paths['configuration'], "--plan",
                                                paths['plan'], "--synthetic", "N=60,p=2"], tmp_path / "eval")
    report = read_json(run_evaluate(run_config, config, factory, args)['report'])
    assert report['reports'][0]['conditional']
    assert report['reports'][0]['samples'] == 3


def test_draw_without_population(tmp_path, capsys):
    paths = _optimize(tmp_path, ["--synthetic", "N=12,p=2", "--n", "4", "--iters", "50"])
    args, _, run_config, factory = _setup(["--seed", "5", "draw", paths['configuration']], tmp_path)
    ids = run_draw(run_config, factory, args)
    assert len(ids) == 4
    assert all(1 <= int(i) <= 12 for i in ids)
    assert capsys.readouterr().out == "".join(f"{i}\n" for i in ids)
    again = run_draw(run_config, factory, args)
    assert again == ids


def test_evaluate(tmp_path):
    paths = _optimize(tmp_path, ["--synthetic", "N=20,p=2", "--n", "5", "--iters", "100"])
    args, config, run_config, factory = _setup(["--seed", "3", "evaluate", paths['configuration'], "--synthetic",
                                                "N=20,p=2", "--targets", "x1"], tmp_path / "eval")
    out = run_evaluate(run_config, config, factory, args)
    rows = _read_rows(out['summary'])
    assert rows[0][:4] == ['design', 'mode', 'samples', 'conditional']
    assert 'x1_rrmse' in rows[0]
    assert rows[1][:3] == ['dbdtc', 'support', '4']
    with open(out['summary'], encoding="utf-8") as f:
        assert f.readline() == "# format_version: 1\n"
    samples = _read_rows(out['samples'])
    assert len(samples) == 1 + 4
    report = read_json(out['report'])
    assert report['reports'][0]['provenance']['digest'] == digest(read_configuration(paths['configuration']))


def test_evaluate_rejects_other_population(tmp_path):
    paths = _optimize(tmp_path, ["--synthetic", "N=20,p=2", "--n", "5", "--iters", "10"])
    args, config, run_config, factory = _setup(["evaluate", paths['configuration'], "--synthetic", "N=21,p=2"],
                                               tmp_path)
    with pytest.raises(ValueError):
        run_evaluate(run_config, config, factory, args)


def test_stratified_round_trip(tmp_path, csv_file, capsys):
    rows = [[f"u{i}", i * 0.37 % 1, i * 0.61 % 1, "a" if i % 2 else "b", i] for i in range(20)]
    population = csv_file(["id", "x", "y", "region", "z"], rows)
    source = ["-i", population, "--aux", "x,y", "--id-column", "id", "--stratum-column", "region"]
    paths = _optimize(tmp_path, [*source, "--stratum-n", "a=2,b=3", "--iters", "100"])
    strata = read_json(paths['strata'])
    assert strata['n'] == 5
    assert [s['label'] for s in strata['strata']] == ["b", "a"]
    assert os.path.exists(paths['stratum-1'])

    args, _, run_config, factory = _setup(["draw", "--strata", paths['strata']], tmp_path)
    ids = run_draw(run_config, factory, args)
    assert len(ids) == 5
    labels = [int(i[1:]) % 2 for i in ids]
    assert labels.count(1) == 2
    capsys.readouterr()

    args, config, run_config, factory = _setup(["evaluate", "--strata", paths['strata'], *source,
                                                "--targets", "z"], tmp_path / "eval")
    report = read_json(run_evaluate(run_config, config, factory, args)['report'])
    assert [r['stratum'] for r in report['reports']] == ["b", "a", "pooled"]
    assert report['reports'][-1]['mode'] == "replicate"
    assert report['reports'][-1]['samples'] == 50


def test_benchmark(tmp_path):
    args, config, run_config, factory = _setup(["--seed", "2", "benchmark", "--synthetic", "N=30,p=2", "--dims",
                                                "2", "3", "--n", "6", "--iters", "200", "--replicates", "20",
                                                "--targets", "x1"], tmp_path)
    out = run_benchmark(run_config, config, factory, args)
    rows = _read_rows(out['summary'])
    assert rows[0][:4] == ['N', 'p', 'n', 'design']
    assert len(rows) == 1 + 2 * 5
    report = read_json(out['report'])
    by_design = {(r['p'], r['design']): r for r in report['reports']}
    assert by_design[(2, 'srs')]['mode'] == 'replicate'
    assert by_design[(2, 'srs')]['samples'] == 20
    assert by_design[(3, 'dbdtc')]['mode'] == 'support'
    assert by_design[(3, 'circular')]['note']
    assert len(by_design[(3, 'dbdtc')]['provenance']['digest']) == 64
    assert len(by_design[(3, 'circular')]['provenance']['digest']) == 64
    assert by_design[(3, 'circular')]['provenance']['t0'] > 0
    for p in (2, 3):
        for name in ('dbdtc', 'circular'):
            trajectory = _read_rows(out[f"trajectory-{name}-p{p}-n6"])
            assert os.path.basename(out[f"trajectory-{name}-p{p}-n6"]) == f"trajectory-{name}-p{p}-n6.csv"
            assert trajectory[0] == ['iteration', 'expected_energy', 'best_energy', 'temperature']
            assert trajectory[1][0] == '0'
            assert trajectory[-1][0] == '200'
    assert 'trajectory-srs-p2-n6' not in out
