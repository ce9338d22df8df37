"""
CSV input and output

Inputs are comma-separated with a header row (`index,re,im` for amplitude
vectors, `row,col,re,im` for density matrices); lines starting with '#' are
ignored. Outputs start with a '#' line documenting the columns, then a header
row; reals are written with 17 significant digits so they read back exactly.
"""
import csv
import logging
import os
import sys
from contextlib import contextmanager

import numpy as np

from errors import ConfigError, DimensionError
from models import DensityMatrix, PureState

logger = logging.getLogger(__name__)

NORM_WARN_TOL = 1e-8


def format_value(value):
    """Text form of one CSV cell"""
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), '.17g')
    return str(value)


@contextmanager
def _output(path):
    if path is None or path == '-':
        yield sys.stdout
        return
    with open(path, 'w', newline='') as f:
        yield f


def write_csv(path, columns, rows, comment=None):
    """Write `rows` under a '#' column comment and a header row; path None means stdout"""
    comment = comment or ', '.join(columns)
    with _output(path) as f:
        f.write(f'# {comment}\n')
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            if len(row) != len(columns):
                raise DimensionError(f"row of {len(row)} cells under {len(columns)} columns")
            writer.writerow([format_value(v) for v in row])
    if path not in (None, '-'):
        logger.info(f"Wrote {len(rows)} rows to {path}")


def write_dat(path, x, y, comment=''):
    """Plain two-column text file for plotting tools"""
    with open(path, 'w') as f:
        if comment:
            f.write(f'# {comment}\n')
        for a, b in zip(x, y):
            f.write(f'{format_value(float(a))} {format_value(float(b))}\n')
    logger.info(f"Wrote plot data to {path}")


def _read_rows(path, field, required):
    if not os.path.exists(path):
        raise ConfigError(field, f"file not found: {path}")
    with open(path, 'r', newline='') as f:
        reader = csv.DictReader(line for line in f if line.strip() and not line.lstrip().startswith('#'))
        if reader.fieldnames is None or any(c not in reader.fieldnames for c in required):
            raise ConfigError(field, f"{path} needs header columns {','.join(required)}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            try:
                rows.append(tuple(float(row[c]) for c in required))
            except (TypeError, ValueError):
                raise ConfigError(field, f"{path} row {lineno}: cannot parse {row}")
    if not rows:
        raise ConfigError(field, f"{path} holds no data rows")
    return rows


def _index(value, field, path):
    if value < 0 or value != int(value):
        raise ConfigError(field, f"{path}: invalid index {value!r}")
    return int(value)


def load_amplitudes_csv(path, dims=()):
    """Amplitude vector from `index,re,im` rows; missing indices are zero, the result is normalized"""
    rows = _read_rows(path, 'amplitudes', ('index', 're', 'im'))
    indices = [_index(r[0], 'amplitudes', path) for r in rows]
    if len(set(indices)) != len(indices):
        raise ConfigError('amplitudes', f"{path} repeats an index")
    size = int(np.prod(dims)) if dims else max(indices) + 1
    if max(indices) >= size:
        raise DimensionError(f"{path}: index {max(indices)} outside dimension {size}")

    vector = np.zeros(size, dtype=np.complex128)
    for i, (_, re, im) in zip(indices, rows):
        vector[i] = complex(re, im)
    norm = np.linalg.norm(vector)
    if abs(norm - 1.0) > NORM_WARN_TOL:
        logger.warning(f"{path}: amplitudes have norm {norm:.12g}, normalizing")
    return PureState.normalized(vector, label=os.path.basename(path), dims=dims)


def load_density_csv(path, dims=()):
    """Density matrix from `row,col,re,im` rows; missing entries are zero"""
    rows = _read_rows(path, 'rho', ('row', 'col', 're', 'im'))
    cells = [(_index(r[0], 'rho', path), _index(r[1], 'rho', path)) for r in rows]
    size = int(np.prod(dims)) if dims else max(max(c) for c in cells) + 1

    matrix = np.zeros((size, size), dtype=np.complex128)
    for (i, j), (_, _, re, im) in zip(cells, rows):
        if i >= size or j >= size:
            raise DimensionError(f"{path}: entry ({i},{j}) outside dimension {size}")
        matrix[i, j] = complex(re, im)
    return DensityMatrix(matrix, label=os.path.basename(path), dims=dims)
