import csv
import logging

import pytest

import genent


def read_rows(text):
    lines = text.splitlines()
    assert lines[0].startswith('# ')
    return list(csv.DictReader(lines[1:]))


def run_stdout(capsys, argv):
    code = genent.run(argv)
    return code, capsys.readouterr().out


def test_purity_of_ghz(capsys):
    code, out = run_stdout(capsys, ['purity', '--algebra', 'local-qubits', '--n', '4', '--state', 'ghz'])
    assert code == 0
    [row] = read_rows(out)
    assert row['state'] == 'GHZ_4'
    assert float(row['purity']) == 0.0
    assert row['classification'] == 'entangled'


def test_purity_of_reference(capsys):
    code, out = run_stdout(capsys, ['purity', '--algebra', 'spin', '--j', '1', '--state', 'reference'])
    assert code == 0
    [row] = read_rows(out)
    assert abs(float(row['purity']) - 1) < 1e-12
    assert row['classification'] == 'unentangled'
    assert float(row['gap']) > 0


def test_purity_in_parity_sector(capsys):
    code, out = run_stdout(capsys, ['purity', '--algebra', 'fermion-so', '--n', '4', '--parity', 'even',
                                    '--state', 'bcs', '--g', '0.7', '--eta', '0.5'])
    assert code == 0
    [row] = read_rows(out)
    assert abs(float(row['purity']) - 1) < 1e-8


@pytest.mark.parametrize('argv', [
    ['purity', '--algebra', 'no-such-algebra', '--n', '2', '--state', 'ghz'],
    ['purity', '--algebra', 'local-qubits', '--n', '2', '--state', 'no-such-state'],
    ['purity', '--algebra', 'local-qubits', '--state', 'ghz'],
    ['purity', '--algebra', 'local-qubits', '--n', '3', '--state', 'bell'],
    ['scan-xy', '--n', '7'],
    ['scan-xy', '--n', '10', '--gmin', '1', '--gmax', '0.5'],
    ['roof', '--algebra', 'local-qubits', '--n', '2', '--rho', 'werner'],
    ['roof', '--algebra', 'local-qubits', '--n', '2', '--rho', 'werner', '--p', '0.5', '--measure', 'volume'],
    ['theorem-check', '--algebra', 'fermion-u', '--n', '2'],
    ['glocc-check', '--algebra', 'local-qubits', '--n', '2', '--state', 'haar', '--trials', '0'],
    ['glocc-check', '--algebra', 'local-qubits', '--n', '2', '--state', 'haar', '--depth', '0'],
    [],
    ['purity', '--no-such-flag'],
])
def test_configuration_errors(argv):
    assert genent.run(argv) == 2


def test_scan_xy_writes_csv_and_dat(tmp_path):
    out = tmp_path / 'scan.csv'
    code = genent.run(['scan-xy', '--n', '20', '--eta', '1', '--gmin', '0', '--gmax', '2', '--steps', '11',
                       '--out', str(out)])
    assert code == 0
    rows = read_rows(out.read_text())
    assert len(rows) == 11
    assert float(rows[0]['g']) == 0.0 and float(rows[0]['purity']) == 1.0
    dat = (tmp_path / 'scan.dat').read_text().splitlines()
    assert len(dat) == 12 and dat[1] == '0 1'


def test_scan_xy_honours_chain_flags(capsys):
    code, out = run_stdout(capsys, ['scan-xy', '--n', '20', '--eta', '0.5', '--gmin', '0.5', '--gmax', '1.5',
                                    '--steps', '3'])
    assert code == 0
    header = out.splitlines()[0]
    assert 'N=20' in header and 'eta=0.5' in header
    assert [float(r['g']) for r in read_rows(out)] == [0.5, 1.0, 1.5]


def test_scan_xy_estimate(tmp_path, caplog):
    caplog.set_level(logging.INFO)
    code = genent.run(['scan-xy', '--n', '400', '--gmin', '0.5', '--gmax', '1.5', '--steps', '201', '--estimate',
                       '--out', str(tmp_path / 'scan.csv'), '--dat', str(tmp_path / 'plot.dat')])
    assert code == 0
    assert (tmp_path / 'plot.dat').exists()
    assert 'g_c estimate' in caplog.text


def test_roof_is_deterministic(tmp_path):
    argv = ['roof', '--algebra', 'local-qubits', '--n', '2', '--rho', 'random', '--rank', '2',
            '--restarts', '3', '--seed', '11']
    first, second = tmp_path / 'a.csv', tmp_path / 'b.csv'
    assert genent.run(argv + ['--out', str(first)]) == 0
    assert genent.run(argv + ['--out', str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()

    rows = read_rows(first.read_text())
    assert [r['member'] for r in rows[:3]] == ['roof', 'baseline', 'wootters_tangle']
    roof, baseline, tangle = (float(r['value']) for r in rows[:3])
    assert roof <= baseline + 1e-12
    assert roof >= tangle - 1e-6


def test_roof_of_werner_state(capsys):
    code, out = run_stdout(capsys, ['roof', '--algebra', 'local-qubits', '--n', '2', '--rho', 'werner',
                                    '--p', '0.25', '--restarts', '6'])
    assert code == 0
    rows = read_rows(out)
    assert abs(float(rows[0]['value'])) < 2e-2
    assert float(rows[2]['value']) == 0.0


def test_roof_of_renyi_mixedness(capsys):
    code, out = run_stdout(capsys, ['roof', '--algebra', 'local-qubits', '--n', '2', '--rho', 'random',
                                    '--rank', '2', '--measure', 'renyi', '--restarts', '2'])
    assert code == 0
    rows = read_rows(out)
    assert [r['member'] for r in rows[:2]] == ['roof', 'baseline']
    roof, baseline = float(rows[0]['value']), float(rows[1]['value'])
    assert 0.0 <= roof <= baseline + 1e-12
    members = [r for r in rows[2:] if r['index'] == '0']
    assert abs(sum(float(r['weight']) * float(r['value']) for r in members) - roof) < 1e-9


@pytest.mark.parametrize('state, purity', [
    (['--state', 'spin-basis', '--m-value', '0'], 0.0),
    (['--state', 'spin-coherent', '--theta', '1.1', '--phi', '0.4'], 1.0),
])
def test_collective_spin_states_fill_every_copy(capsys, state, purity):
    code, out = run_stdout(capsys, ['purity', '--algebra', 'collective-spin', '--j', '1'] + state)
    assert code == 0
    [row] = read_rows(out)
    assert abs(float(row['purity']) - purity) < 1e-10


def test_config_file(tmp_path, capsys):
    settings = tmp_path / 'run.env'
    settings.write_text('# GHZ on three qubits\nalgebra=local-qubits\nstate=ghz\nn=3\n')
    code, out = run_stdout(capsys, ['purity', '--config', str(settings)])
    assert code == 0
    assert read_rows(out)[0]['state'] == 'GHZ_3'

    code, out = run_stdout(capsys, ['purity', '--config', str(settings), '--n', '5'])
    assert code == 0
    assert read_rows(out)[0]['state'] == 'GHZ_5'


def test_config_file_errors(tmp_path):
    settings = tmp_path / 'run.env'
    settings.write_text('algebra=local-qubits\nstate=ghz\nn=3\nrestarts=4\n')
    assert genent.run(['purity', '--config', str(settings)]) == 2
    assert genent.run(['purity', '--config', str(tmp_path / 'missing.env')]) == 2

    settings.write_text('algebra=local-qubits\nstate=ghz\nn=3\nverbose=maybe\n')
    assert genent.run(['purity', '--config', str(settings)]) == 2


def test_glocc_check_on_pure_state(tmp_path):
    out = tmp_path / 'glocc.csv'
    code = genent.run(['glocc-check', '--algebra', 'local-qubits', '--n', '2', '--state', 'haar',
                       '--trials', '4', '--depth', '2', '--restarts', '2', '--seed', '3', '--out', str(out)])
    assert code == 0
    rows = read_rows(out.read_text())
    assert len(rows) == 5
    summary = rows[-1]
    assert summary['trial'] == 'summary'
    assert summary['after'] == '0'
    assert summary['status'] == 'passed'


def test_theorem_check_single_algebra(capsys):
    code, out = run_stdout(capsys, ['theorem-check', '--algebra', 'spin', '--j', '1',
                                    '--orbit-samples', '5', '--random-samples', '5'])
    assert code == 0
    [row] = read_rows(out)
    assert row['orbit_failures'] == '0' and row['random_failures'] == '0'
    assert abs(float(row['min_orbit_purity']) - 1) < 1e-8


@pytest.mark.slow
def test_theorem_check_all_builtins(capsys):
    code, out = run_stdout(capsys, ['theorem-check', '--seed', '7'])
    assert code == 0
    assert len(read_rows(out)) == 8
