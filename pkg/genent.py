#!/usr/bin/env python3
"""
Generalized-entanglement command line

Every subcommand writes CSV (to --out or standard output) whose first line
is a '#' comment naming the columns. Logging goes to standard error.

Usage:
    python genent.py purity --algebra local-qubits --state ghz --n 4
    python genent.py scan-xy --n 1000 --eta 1 --gmin 0 --gmax 2 --steps 400 --out scan.csv
    python genent.py theorem-check --seed 7
    python genent.py roof --algebra local-qubits --n 2 --rho werner --p 0.8
    python genent.py glocc-check --algebra local-qubits --n 2 --rho random --rank 2 --trials 20

Config files:
    --config run.env reads `key=value` lines (dotenv grammar, '#' comments).
    Keys are long flag names with '-' written as '_'; flags on the command
    line override file values.

Exit codes:
    0 success, 1 numeric failure (violations, counterexamples), 2 configuration error
"""

import argparse
import logging
import os
import sys
from datetime import datetime

import numpy as np

# Add the current directory to the Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from algebra import (
    algebra_by_name, group_orbit_state, irreducible_builtins, sector_state, summands, verify_normalization,
)
from channels import monotonicity_audit, sample_unitary_glocc
from config import RunConfig, get_config, load_config_file, override_tolerances
from data_io import load_amplitudes_csv, load_density_csv, write_csv, write_dat
from errors import ConfigError, DimensionError, GenentError, UnsupportedAlgebraError
from measures import Mixedness, refined_mixedness, roof_mixedness, roof_purity_deficit, wootters_concurrence
from models import PureState, XYParams
from parallel import spawn_generators
from purity import ground_state_check, h_purity, is_unentangled, theorem_suite
from states import (
    all_down, all_up, bell, ghz, haar_random, haar_random_density, product_state, spin_basis_state,
    spin_coherent, w, werner,
)
from xymodel import bcs_state, estimate_critical, purity_scan

logger = logging.getLogger('genent')

STATE_NAMES = (
    'reference', 'ghz', 'w', 'bell', 'up', 'down', 'product', 'spin-coherent', 'spin-basis',
    'haar', 'orbit', 'bcs', 'file',
)
RHO_NAMES = ('werner', 'random', 'file', 'state')
ROOF_MEASURES = ('deficit', 'entropy', 'renyi')

COMMON_FLAGS = {
    'config': dict(help='key=value file with defaults for any long flag'),
    'out': dict(help='CSV output path (default: standard output)'),
    'verbose': dict(action='store_true', help='Enable verbose logging output'),
    'threads': dict(type=int, help='worker threads (default: GE_THREADS)'),
    'seed': dict(type=int, default=0, help='seed of every random draw'),
}
ALGEBRA_FLAGS = {
    'algebra': dict(help='built-in algebra name'),
    'n': dict(type=int, help='number of qubits or fermion modes'),
    'local-dims': dict(help='comma-separated local dimensions, e.g. 2,3'),
    'j': dict(type=float, help='spin quantum number'),
    'copies': dict(type=int, help='number of spins for collective-spin'),
    'parity': dict(help='fermion-parity sector for fermion-so: even or odd'),
    'cluster': dict(type=int, help='cluster size for the cluster algebras'),
    'dependent-tol': dict(type=float, help='threshold for dropping dependent basis operators'),
}
STATE_FLAGS = {
    'state': dict(help=f"state name: {', '.join(STATE_NAMES)}"),
    'theta': dict(type=float, default=0.0, help='polar angle of spin-coherent'),
    'phi': dict(type=float, default=0.0, help='azimuth of spin-coherent'),
    'm-value': dict(type=float, help='spin projection of spin-basis'),
    'bloch': dict(help='product Bloch vectors, "x,y,z;x,y,z;..."'),
    'amplitudes': dict(help='CSV of index,re,im rows for state=file'),
    'g': dict(type=float, help='XY coupling of state=bcs'),
    'eta': dict(type=float, default=1.0, help='XY anisotropy of state=bcs'),
}
PURITY_FLAGS = {
    'purity-tol': dict(type=float, help='purity >= 1 - tol counts as unentangled'),
    'gap-tol': dict(type=float, help='relative gap below which the ground level counts as degenerate'),
}
SCAN_FLAGS = {
    'n': dict(type=int, help='chain length (even)'),
    'eta': dict(type=float, help='anisotropy in [0, 1]'),
    'gmin': dict(type=float, help='first coupling'),
    'gmax': dict(type=float, help='last coupling'),
    'steps': dict(type=int, help='number of couplings'),
    'dat': dict(help='two-column plot file (default: --out with suffix .dat)'),
    'estimate': dict(action='store_true', help='log the critical coupling and exponent estimates'),
}
THEOREM_FLAGS = {
    'orbit-samples': dict(type=int, help='group-orbit samples per algebra'),
    'random-samples': dict(type=int, help='Haar-random samples per algebra'),
}
MIXED_FLAGS = {
    'rho': dict(help=f"mixed state: {', '.join(RHO_NAMES)}"),
    'p': dict(type=float, help='Werner weight'),
    'rank': dict(type=int, default=2, help='rank of rho=random'),
    'rho-file': dict(help='CSV of row,col,re,im rows for rho=file'),
    'restarts': dict(type=int, help='optimizer restarts'),
    'measure': dict(default='deficit', help=f"roof functional: {', '.join(ROOF_MEASURES)}"),
}
GLOCC_FLAGS = {
    'depth': dict(type=int, help='conditional-composition depth'),
    'trials': dict(type=int, help='number of sampled maps'),
    'measure-probability': dict(type=float, help='chance that a stage measures before its unitary'),
}

SUBCOMMANDS = {
    'purity': ('h-purity, classification and ground gap of one state',
               (COMMON_FLAGS, ALGEBRA_FLAGS, STATE_FLAGS, PURITY_FLAGS)),
    'scan-xy': ('u(N) purity of the XY ground state over a coupling grid',
                (COMMON_FLAGS, SCAN_FLAGS)),
    'theorem-check': ('purity / ground-state / highest-weight equivalence on irreducible algebras',
                      (COMMON_FLAGS, ALGEBRA_FLAGS, THEOREM_FLAGS)),
    'roof': ('convex-roof measure of a mixed state with its certificate ensemble',
             (COMMON_FLAGS, ALGEBRA_FLAGS, STATE_FLAGS, MIXED_FLAGS)),
    'glocc-check': ('monotonicity of the roof under sampled GLOCC maps',
                    (COMMON_FLAGS, ALGEBRA_FLAGS, STATE_FLAGS, MIXED_FLAGS, GLOCC_FLAGS)),
}
BOOLEAN_KEYS = {'verbose', 'estimate'}


def setup_logging(verbose=False):
    """Log to standard error (CSV may go to standard output) and to LOG_FILE when set"""
    cfg = get_config()
    level = logging.DEBUG if verbose else getattr(logging, str(cfg.LOG_LEVEL).upper(), logging.INFO)

    handlers = [logging.StreamHandler(sys.stderr)]
    if cfg.LOG_FILE:
        log_dir = os.path.dirname(os.path.abspath(cfg.LOG_FILE))
        os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(cfg.LOG_FILE))

    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers
    )

    return logger


def _flag_names(subcommand):
    names = set()
    for group in SUBCOMMANDS[subcommand][1]:
        names.update(key.replace('-', '_') for key in group)
    return names


def build_parser():
    parser = argparse.ArgumentParser(
        prog='genent.py',
        description='Generalized entanglement relative to distinguished observable algebras',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split('Usage:')[1]
    )
    sub = parser.add_subparsers(dest='subcommand', required=True)
    for name, (help_text, groups) in SUBCOMMANDS.items():
        cmd = sub.add_parser(name, help=help_text, description=help_text)
        seen = set()
        for group in groups:
            for flag, kwargs in group.items():
                if flag in seen:
                    continue
                seen.add(flag)
                cmd.add_argument(f'--{flag}', **kwargs)
    return parser


def _file_tokens(subcommand, path):
    """Command-line tokens equivalent to a config file, placed before the real flags"""
    tokens = []
    for key, value in load_config_file(path, _flag_names(subcommand) - {'config'}).items():
        flag = f"--{key.replace('_', '-')}"
        if key in BOOLEAN_KEYS:
            if value.strip().lower() in ('1', 'true', 'yes', 'on'):
                tokens.append(flag)
            elif value.strip().lower() not in ('0', 'false', 'no', 'off', ''):
                raise ConfigError(key, f"expected a boolean, got {value!r}")
        else:
            tokens.extend([flag, value])
    return tokens


def parse_args(argv):
    """Parse argv, merging a --config file underneath the explicit flags"""
    parser = build_parser()
    argv = list(argv)
    args = parser.parse_args(argv)
    if args.config:
        argv = [argv[0]] + _file_tokens(args.subcommand, args.config) + argv[1:]
        args = parser.parse_args(argv)
    return args


def _parse_dims(text):
    try:
        dims = tuple(int(x) for x in str(text).split(','))
    except ValueError:
        raise ConfigError('local_dims', f"expected comma-separated integers, got {text!r}")
    if len(dims) != 2 and len(dims) != 1:
        raise ConfigError('local_dims', f"expected one or two dimensions, got {text!r}")
    return dims


def _parse_bloch(text):
    try:
        vectors = [tuple(float(c) for c in part.split(',')) for part in str(text).split(';') if part.strip()]
    except ValueError:
        raise ConfigError('bloch', f"cannot parse {text!r}")
    if not vectors or any(len(v) != 3 for v in vectors):
        raise ConfigError('bloch', "each Bloch vector needs three components")
    return vectors


def run_config(args):
    """RunConfig from parsed arguments"""
    values = vars(args)
    algebra_options = {key: values.get(key) for key in ('n', 'j', 'copies', 'parity', 'cluster')}
    if values.get('local_dims'):
        algebra_options['local_dims'] = _parse_dims(values['local_dims'])
    state_options = {key: values.get(key) for key in
                     ('theta', 'phi', 'm_value', 'bloch', 'amplitudes', 'g', 'eta', 'n', 'j', 'copies')}
    skip = set(algebra_options) | set(state_options) | {'subcommand', 'config', 'out', 'verbose', 'seed',
                                                        'threads', 'algebra', 'state', 'local_dims'}
    numeric = {key: value for key, value in values.items() if key not in skip}
    return RunConfig(
        subcommand=args.subcommand,
        algebra=values.get('algebra'),
        algebra_options=algebra_options,
        state=values.get('state'),
        state_options=state_options,
        numeric=numeric,
        out=args.out,
        seed=args.seed,
        threads=get_config().THREADS if args.threads is None else args.threads,
    )


def resolve_algebra(rc):
    if not rc.algebra:
        raise ConfigError('algebra', "required")
    try:
        return algebra_by_name(rc.algebra, **rc.algebra_options)
    except DimensionError as e:
        raise ConfigError('algebra', str(e))


def _copies(opts, alg):
    """Spin copies of a spin state, one per tensor factor of the algebra unless given"""
    return len(alg.dims) if opts.get('copies') is None else int(opts['copies'])


def _qubit_count(opts, alg):
    if opts.get('n') is not None:
        return int(opts['n'])
    if all(d == 2 for d in alg.dims):
        return len(alg.dims)
    raise ConfigError('n', f"required to build a qubit state for {alg.name}")


def _build_state(name, opts, alg, seed):
    if name == 'reference':
        return alg.reference_state
    if name == 'ghz':
        return ghz(_qubit_count(opts, alg))
    if name == 'w':
        return w(_qubit_count(opts, alg))
    if name == 'bell':
        return bell()
    if name == 'up':
        return all_up(_qubit_count(opts, alg))
    if name == 'down':
        return all_down(_qubit_count(opts, alg))
    if name == 'product':
        if not opts.get('bloch'):
            raise ConfigError('bloch', "required by state 'product'")
        return product_state(_parse_bloch(opts['bloch']))
    if name == 'spin-coherent':
        if opts.get('j') is None:
            raise ConfigError('j', "required by state 'spin-coherent'")
        single = spin_coherent(opts['j'], opts['theta'], opts['phi'])
        vector = single.amplitudes
        for _ in range(_copies(opts, alg) - 1):
            vector = np.kron(vector, single.amplitudes)
        return PureState.normalized(vector, label=single.label, dims=alg.dims)
    if name == 'spin-basis':
        if opts.get('j') is None or opts.get('m_value') is None:
            raise ConfigError('m_value', "state 'spin-basis' needs --j and --m-value")
        return spin_basis_state(opts['j'], opts['m_value'], _copies(opts, alg))
    if name == 'haar':
        return haar_random(alg.dim, seed, dims=alg.dims)
    if name == 'orbit':
        return group_orbit_state(alg, seed)
    if name == 'bcs':
        if opts.get('g') is None:
            raise ConfigError('g', "required by state 'bcs'")
        return bcs_state(XYParams(N=_qubit_count(opts, alg), g=opts['g'], eta=opts['eta']))
    if name == 'file':
        if not opts.get('amplitudes'):
            raise ConfigError('amplitudes', "required by state 'file'")
        return load_amplitudes_csv(opts['amplitudes'])
    raise ConfigError('state', f"unknown state {name!r}; choose from {', '.join(STATE_NAMES)}")


def resolve_state(rc, alg):
    """Named pure state, moved into the algebra's parity sector when the algebra is sector-restricted"""
    if not rc.state:
        raise ConfigError('state', "required")
    try:
        psi = _build_state(rc.state, rc.state_options, alg, rc.seed)
        parity = rc.algebra_options.get('parity')
        n = rc.algebra_options.get('n')
        if parity and n and psi.dim == 2 ** n and psi.dim != alg.dim:
            psi = sector_state(psi, n, parity)
        if psi.dim != alg.dim:
            raise DimensionError(f"state {psi.label!r} has dimension {psi.dim}, algebra {alg.name} needs {alg.dim}")
        if psi.dims != alg.dims:
            psi = PureState(psi.amplitudes, label=psi.label, dims=alg.dims)
        return psi
    except DimensionError as e:
        raise ConfigError('state', str(e))


def resolve_rho(rc, alg):
    kind = rc.numeric.get('rho') or ('state' if rc.state else None)
    try:
        if kind == 'werner':
            if rc.numeric.get('p') is None:
                raise ConfigError('p', "required by rho 'werner'")
            rho = werner(rc.numeric['p'])
        elif kind == 'random':
            rho = haar_random_density(alg.dim, int(rc.numeric['rank']), rc.seed, dims=alg.dims)
        elif kind == 'file':
            if not rc.numeric.get('rho_file'):
                raise ConfigError('rho_file', "required by rho 'file'")
            rho = load_density_csv(rc.numeric['rho_file'], dims=alg.dims)
        elif kind == 'state':
            rho = resolve_state(rc, alg).projector()
        else:
            raise ConfigError('rho', f"unknown mixed state {kind!r}; choose from {', '.join(RHO_NAMES)}")
        if rho.dim != alg.dim:
            raise DimensionError(f"rho has dimension {rho.dim}, algebra {alg.name} needs {alg.dim}")
        return rho
    except DimensionError as e:
        raise ConfigError('rho', str(e))


def _roof_opts(rc):
    opts = {'seed': rc.seed}
    if rc.numeric.get('restarts') is not None:
        if rc.numeric['restarts'] < 1:
            raise ConfigError('restarts', "must be >= 1")
        opts['restarts'] = rc.numeric['restarts']
    return opts


def cmd_purity(rc):
    alg = resolve_algebra(rc)
    psi = resolve_state(rc, alg)
    purity = h_purity(psi, alg)
    unentangled = is_unentangled(psi, alg, tol=rc.numeric.get('purity_tol'))
    report = ground_state_check(psi, alg, gap_tol=rc.numeric.get('gap_tol'))
    logger.info(f"{psi.label} relative to {alg.name}: purity {purity:.12g}, unique ground {report.is_unique_ground}")
    write_csv(rc.out, ('state', 'algebra', 'purity', 'classification', 'gap'),
              [(psi.label, alg.name, purity, 'unentangled' if unentangled else 'entangled', report.gap)],
              comment='state label, algebra, h-purity, classification, gap of H = -sum <x_i> x_i')
    return 0


def cmd_scan_xy(rc):
    settings = get_config().SCAN_CONFIG
    # --n and --eta are parsed with the algebra and state options
    chain = {'n': rc.algebra_options.get('n'), 'eta': rc.state_options.get('eta')}

    def pick(key):
        value = chain[key] if key in chain else rc.numeric.get(key)
        return settings[key] if value is None else value

    n, eta = pick('n'), pick('eta')
    gmin, gmax, steps = pick('gmin'), pick('gmax'), pick('steps')
    if steps < 2:
        raise ConfigError('steps', "need at least two couplings")
    if gmax <= gmin:
        raise ConfigError('gmax', f"must exceed gmin={gmin}")
    if n < 2 or n % 2:
        raise ConfigError('n', f"chain length must be even and >= 2, got {n}")
    if not 0.0 <= eta <= 1.0:
        raise ConfigError('eta', f"must lie in [0, 1], got {eta}")
    if gmin < 0:
        raise ConfigError('gmin', f"must be >= 0, got {gmin}")

    scan = purity_scan(np.linspace(gmin, gmax, steps), eta, n, rc.threads)
    write_csv(rc.out, ('g', 'purity', 'min_gap'), scan.rows(),
              comment=f'coupling g, u(N) purity of the ground state, smallest quasiparticle energy (N={n}, eta={eta:g})')

    dat = rc.numeric.get('dat') or (os.path.splitext(rc.out)[0] + '.dat' if rc.out and rc.out != '-' else None)
    if dat:
        write_dat(dat, scan.g, scan.purity, comment='g purity')

    if rc.numeric.get('estimate'):
        estimate = estimate_critical(scan, threads=rc.threads)
        logger.info(f"g_c estimate {estimate['g_c_hat']:.6g}, nu estimate {estimate['nu_hat']:.6g} "
                    f"(r^2 {estimate['fit_r2']:.4f})")
    return 0


def cmd_theorem_check(rc):
    settings = get_config().THEOREM_CONFIG
    orbit = rc.numeric.get('orbit_samples')
    orbit = settings['orbit_samples'] if orbit is None else orbit
    random = rc.numeric.get('random_samples')
    random = settings['random_samples'] if random is None else random
    if rc.algebra:
        alg = resolve_algebra(rc)
        if not alg.irreducible:
            raise ConfigError('algebra', f"{alg.name} is reducible; the check needs an irreducible algebra")
        algebras = [alg]
    else:
        algebras = irreducible_builtins()

    rows, failed = [], False
    for alg in algebras:
        summary = theorem_suite(alg, orbit_samples=orbit, random_samples=random, seed=rc.seed, threads=rc.threads)
        normalization = verify_normalization(alg, samples=random, seed=rc.seed)
        failed |= bool(summary['orbit_failures'] or summary['random_failures'] or normalization['violations'])
        rows.append((alg.name, summary['orbit_samples'], summary['orbit_failures'], summary['random_samples'],
                     summary['random_tested'], summary['random_failures'], summary['min_orbit_purity'],
                     summary['max_random_purity'], normalization['max_purity']))

    write_csv(rc.out, ('algebra', 'orbit_samples', 'orbit_failures', 'random_samples', 'random_tested',
                       'random_failures', 'min_orbit_purity', 'max_random_purity', 'max_sampled_purity'), rows,
              comment='per algebra: orbit and Haar sample counts, failures, purity extremes')
    return 1 if failed else 0


def _measure(rc):
    name = rc.numeric.get('measure') or 'deficit'
    if name not in ROOF_MEASURES:
        raise ConfigError('measure', f"unknown measure {name!r}; choose from {', '.join(ROOF_MEASURES)}")
    return name


def cmd_roof(rc):
    alg = resolve_algebra(rc)
    rho = resolve_rho(rc, alg)
    measure = _measure(rc)
    opts = _roof_opts(rc)

    if measure == 'deficit':
        result = roof_purity_deficit(rho, alg, opts, threads=rc.threads)

        def member_value(psi):
            return 1.0 - h_purity(psi, alg)
    else:
        result = roof_mixedness(rho, alg, Mixedness(measure), opts, threads=rc.threads)

        def member_value(psi):
            return refined_mixedness(psi, alg, Mixedness(measure), rc.seed)

    logger.info(f"Roof {measure} of {rho.label} relative to {alg.name}: {result.value:.10g} "
                f"(baseline {result.baseline:.10g}, {len(result.ensemble)} members)")
    rows = [('roof', 1.0, result.value, '', '', ''), ('baseline', 1.0, result.baseline, '', '', '')]
    if measure == 'deficit' and alg.dim == 4 and len(alg.summands) == 2:
        rows.append(('wootters_tangle', 1.0, wootters_concurrence(rho) ** 2, '', '', ''))
    for k, (p, psi) in enumerate(zip(result.ensemble.weights, result.ensemble.states)):
        value = member_value(psi)
        for index, amp in enumerate(psi.amplitudes):
            rows.append((f'member{k}', p, value, index, amp.real, amp.imag))

    write_csv(rc.out, ('member', 'weight', 'value', 'index', 're', 'im'), rows,
              comment='roof value and baseline, then per certificate member: weight, member value, amplitudes')
    return 0


def cmd_glocc_check(rc):
    alg = resolve_algebra(rc)
    rho = resolve_rho(rc, alg)
    settings = get_config().GLOCC_CONFIG
    depth = settings['depth'] if rc.numeric.get('depth') is None else rc.numeric['depth']
    trials = settings['trials'] if rc.numeric.get('trials') is None else rc.numeric['trials']
    if depth < 1:
        raise ConfigError('depth', "must be >= 1")
    if trials < 1:
        raise ConfigError('trials', "must be >= 1")
    probability = rc.numeric.get('measure_probability')
    if probability is not None and not 0.0 <= probability <= 1.0:
        raise ConfigError('measure_probability', "must lie in [0, 1]")

    maps = None
    if probability is not None:
        maps = [sample_unitary_glocc(summands(alg), depth, seed=rng, measure_probability=probability)
                for rng in spawn_generators(rc.seed, trials)]

    summary = monotonicity_audit(rho, alg, trials=trials, maps=maps, depth=depth, seed=rc.seed,
                                 roof_opts=_roof_opts(rc), threads=rc.threads)
    rows = [(r['trial'], r['hk_ops'], r['before'], r['after'], r['excess'], r['status'],
             r.get('recheck_excess', '')) for r in summary['rows']]
    rows.append(('summary', summary['trials'], summary['rows'][0]['before'] if summary['rows'] else '',
                 summary['violations'], summary['max_excess'], 'passed' if summary['passed'] else 'failed',
                 summary['tolerance']))
    write_csv(rc.out, ('trial', 'hk_ops', 'before', 'after', 'excess', 'status', 'recheck_excess'), rows,
              comment='per trial: HK operator count, roof before, outcome-averaged roof after, excess, status; '
                      'summary row: trials, before, violations, max excess, verdict, tolerance')
    return 0 if summary['passed'] else 1


COMMANDS = {
    'purity': cmd_purity,
    'scan-xy': cmd_scan_xy,
    'theorem-check': cmd_theorem_check,
    'roof': cmd_roof,
    'glocc-check': cmd_glocc_check,
}


def run(argv):
    """Run one subcommand; returns the exit code"""
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    except ConfigError as e:
        setup_logging()
        logger.error(f"Configuration error: {e}")
        return 2

    setup_logging(args.verbose)

    try:
        rc = run_config(args)
        logger.info("=" * 60)
        logger.info(f"genent {rc.subcommand} - Starting")
        logger.info(f"Timestamp: {datetime.now().isoformat()}")
        logger.info(f"Seed: {rc.seed}, threads: {rc.threads}")
        logger.info("=" * 60)

        with override_tolerances(dependent_operator=getattr(args, 'dependent_tol', None)):
            code = COMMANDS[rc.subcommand](rc)

        if code == 0:
            logger.info(f"{rc.subcommand} completed successfully")
        else:
            logger.error(f"{rc.subcommand} reported numeric failures")
        return code

    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return 2
    except UnsupportedAlgebraError as e:
        logger.error(f"Unsupported algebra: {e}")
        return 1
    except GenentError as e:
        logger.error(f"Numeric failure: {e}")
        if args.verbose:
            logger.exception("Full error details:")
        return 1
    except KeyboardInterrupt:
        logger.info("Run interrupted by user")
        return 1
    finally:
        logger.info("=" * 60)


def main():
    """Main function for the command line"""
    return run(sys.argv[1:])


if __name__ == '__main__':
    exit_code = main()
    sys.exit(exit_code)
