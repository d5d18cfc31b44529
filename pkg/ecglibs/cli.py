# EpyECG/ecglibs/cli.py
# Standard library imports
from concurrent.futures import ProcessPoolExecutor
import argparse
import sys
import os

# Related third party imports
from termcolor import cprint
import numpy as np

# Local application/library specific imports
import ecglibs.initialize
from ecglibs.augment.fitting import fit_subjects
from ecglibs.beats.pipeline import (
    gate_dataset,
    preprocess_recording,
)
from ecglibs.commons.errors import (
    ArgumentError,
    EXIT_CODES,
    EpyECGError,
)
from ecglibs.commons.library import (
    read_beats,
    read_exclusion_list,
    read_model,
    read_ranges,
    read_recordings,
    read_roster,
    recording_stem,
    sha256_file,
    write_beats,
    write_file,
    write_fits,
    write_ground_truth,
    write_json,
    write_model,
    write_predictions,
    write_ranges,
    write_recording,
    write_recording_npy,
    write_roster,
    write_table,
)
from ecglibs.commons.logs import process_logs
from ecglibs.commons.plot import (
    plot_path,
    pyplot_fits,
    pyplot_history,
)
from ecglibs.config import (
    RunConfig,
    SCALARS,
    SECTIONS,
)
from ecglibs.evaluation.experiment import (
    ExperimentData,
    augment_beats,
    augmentation_ranges,
    identify,
    run_ablation_matrix,
    run_experiment,
    train_predictor,
)
from ecglibs.evaluation.features import export_features
from ecglibs.evaluation.models import ABLATIONS
from ecglibs.evaluation.report import (
    aggregate_runs,
    render_report,
    report_to_json,
)
from ecglibs.evaluation.splits import split_recordings
from ecglibs.network.models import ModelGraph
from ecglibs.settings import se_architecture
from ecglibs.synthetic.generator import generate_corpus


__version__ = '1.0.0'


def require_path(path, flag):
    """Check input path exists.

    :raises ArgumentError: If path does not exist.
    """
    if not os.path.exists(path):
        raise ArgumentError('%s: no such file or directory %r' % (flag, path))

    return path


def input_files(paths):
    """Files behind input paths, directories expanded in sorted order.
    """
    files = []

    for path in paths:
        if path and os.path.isdir(path):
            files.extend(sorted(os.path.join(path, f) for f in os.listdir(path)))
        elif path:
            files.append(path)

    return files


def write_run_manifest(f, command, config, inputs=(), seeds=None):
    """Write manifest sufficient to reproduce a run: config digest, seeds and input hashes.
    """
    manifest = {
        'command': command,
        'version': __version__,
        'config_digest': config.digest(),
        'config': config.as_dict(),
        'seeds': seeds or {'seed': config['seed']},
        'inputs': {path: sha256_file(path) for path in input_files(inputs)},
    }

    write_json(manifest, f)

    process_logs('Make: ' + f, level=1)

    return None


def load_beats(args, config):
    """Beats of the dataset without excluded subjects.
    """
    beats = read_beats(require_path(args.beats, '--beats'), config['beats']['sample_rate_hz'])

    if config['exclusion_list']:
        excluded = read_exclusion_list(require_path(config['exclusion_list'], 'exclusion_list'))

        beats = [beat for beat in beats if beat.subject_id not in excluded]

        process_logs('Excluded subjects: %s' % ', '.join(sorted(excluded)), level=2)

    return beats


def load_roster(config):
    """Roster from configuration, `None` when every subject is a Target.
    """
    if not config['roster']:
        return None

    return read_roster(require_path(config['roster'], 'roster'))


def load_data(args, config):
    """Experiment dataset from beat file, roster and split plan.
    """
    beats = load_beats(args, config)

    data = ExperimentData(beats, load_roster(config), config.split_plan(), config['beats']['sample_rate_hz'])

    return data


def command_synth(args, config):
    """Write a synthetic corpus with ground truth sidecars and roster.
    """
    corpus = config['corpus']

    os.makedirs(args.out, exist_ok=True)

    recordings, roster, _ = generate_corpus(corpus['n_subjects'], corpus['n_auxiliary'],
                                            config['seed'], config.split_plan(), corpus)

    for rec, ground_truth in recordings:
        stem = os.path.join(args.out, recording_stem(rec))

        if args.format == 'npy':
            write_recording_npy(rec, stem + '.npy')
        else:
            write_recording(rec, stem + '.txt')

        write_ground_truth(ground_truth, stem + '.truth.csv')

    write_roster(roster, os.path.join(args.out, 'roster.csv'))

    process_logs('Make: %s recordings in %s' % (len(recordings), args.out), level=1)

    write_run_manifest(os.path.join(args.out, 'run.json'), 'synth', config)

    return None


def command_preprocess(args, config):
    """Extract and gate beats of every recording in a directory.
    """
    recordings = read_recordings(require_path(args.input, '--in'))

    filter_spec = config.filter_spec()
    cfg = config.detection_config()

    n = len(recordings)

    if config['threads'] > 1:
        with ProcessPoolExecutor(max_workers=config['threads']) as executor:
            results = list(executor.map(preprocess_recording, recordings, [filter_spec] * n, [cfg] * n))
    else:
        results = [preprocess_recording(rec, filter_spec, cfg) for rec in recordings]

    beats = [beat for rec_beats, _ in results for beat in rec_beats]

    for rec, (_, report) in zip(recordings, results):
        process_logs('%s: %s' % (recording_stem(rec), report.as_dict()), level=0)

    roster = load_roster(config)

    # Roster written by synth
    if roster is None and os.path.exists(os.path.join(args.input, 'roster.csv')):
        roster = read_roster(os.path.join(args.input, 'roster.csv'))

    retained = gate_dataset(beats, roster, cfg, config.split_plan())

    process_logs('Beats: %s extracted, %s retained' % (len(beats), len(retained)), level=1)

    write_beats(retained, args.out, augmented_column=False)

    write_run_manifest(args.out + '.run.json', 'preprocess', config, [args.input])

    return None


def command_fit_ranges(args, config):
    """Fit T-peak against heart rate per subject and select augmentation ranges.
    """
    data = load_data(args, config)

    fits = fit_subjects(data.train)
    ranges = augmentation_ranges('DE-PADA', data.train, config['augment'])

    write_fits(fits, args.fits)
    write_ranges(ranges, args.ranges)

    if args.plot:
        for sid in sorted(fits):
            subject_beats = [beat for beat in data.train if beat.subject_id == sid]

            pyplot_fits(subject_beats, fits[sid], plot_path(args.plot, 'fits_' + sid), sid)

    write_run_manifest(args.ranges + '.run.json', 'fit-ranges', config, [args.beats])

    return None


def command_augment(args, config):
    """Append augmented beats of Target training recordings to a beat dataset.
    """
    beats = load_beats(args, config)
    ranges = read_ranges(require_path(args.ranges, '--ranges'))

    train, _ = split_recordings(beats, config.split_plan())

    train = [beat for beat in train if beat.subject_id in ranges]

    augmented = augment_beats(train, ranges, config['augment'], config['beats']['sample_rate_hz'])

    output = beats + [beat for beat in augmented if beat.augmented]

    write_beats(output, args.out, augmented_column=True)

    process_logs('Beats: %s genuine, %s augmented' % (len(beats), len(output) - len(beats)), level=1)

    write_run_manifest(args.out + '.run.json', 'augment', config, [args.beats, args.ranges])

    return None


def command_train(args, config):
    """Train the model of an ablation once and write the checkpoint.
    """
    data = load_data(args, config)
    experiment = config['experiment']

    model = train_predictor(experiment['ablation'], experiment['classifier_augmented'], data,
                            config['seed'], config['augment'], config['train'])

    write_model(model, args.out)

    if args.plot:
        if isinstance(model, ModelGraph):
            graphs = [model]
        else:
            graphs = model.backbones + [model.classifier]

        for graph in graphs:
            pyplot_history(graph.history, plot_path(args.plot, 'history_' + graph.name), graph.name)

    write_run_manifest(args.out + '.run.json', 'train', config, [args.beats])

    return None


def command_evaluate(args, config):
    """Repeated-run evaluation of one ablation, or a single evaluation of a checkpoint.
    """
    data = load_data(args, config)
    experiment = config['experiment']

    predictions = []

    if args.model:
        model = read_model(require_path(args.model, '--model'))

        idr_by_condition, predictions = identify(model, data)

        report = aggregate_runs([idr_by_condition], experiment['ablation'], experiment['classifier_augmented'])

    else:
        report = run_experiment(experiment['ablation'], experiment['classifier_augmented'], data,
                                experiment['n_runs'], experiment['base_seed'],
                                config['augment'], config['train'], config['threads'], predictions)

    emit_reports([report], args)

    if args.predictions:
        write_predictions(predictions, args.predictions)

    seeds = {'base_seed': experiment['base_seed'], 'n_runs': experiment['n_runs']}

    write_run_manifest((args.out or 'evaluate') + '.run.json', 'evaluate', config, [args.beats, args.model], seeds)

    return None


def command_ablate(args, config):
    """Ablation matrix, four configurations in both classifier scenarios.
    """
    data = load_data(args, config)
    experiment = config['experiment']

    rows = run_ablation_matrix(data, experiment['n_runs'], experiment['base_seed'],
                               config['augment'], config['train'], config['threads'])

    emit_reports(rows, args)

    seeds = {'base_seed': experiment['base_seed'], 'n_runs': experiment['n_runs']}

    write_run_manifest((args.out or 'ablate') + '.run.json', 'ablate', config, [args.beats], seeds)

    return None


def command_export_features(args, config):
    """Write flattened backbone features of test beats.
    """
    data = load_data(args, config)

    model = read_model(require_path(args.model, '--model'))

    if isinstance(model, ModelGraph):
        backbone = model.backbone()
    else:
        backbone = model.backbones[{'pqrs': 0, 'st': -1}[args.expert]]

    fits, mean_train_hr = None, None

    if args.normalized:
        fits = {sid: kinds['balanced'] for sid, kinds in fit_subjects(data.train).items()}
        mean_train_hr = {sid: float(np.mean([b.heart_rate_bpm for b in data.train if b.subject_id == sid]))
                         for sid in data.target_ids}

    beats = [beat for beat in data.test if beat.subject_id in data.target_ids]

    header, rows = export_features(backbone, beats, args.normalized, fits, mean_train_hr,
                                   args.pca, config['beats']['sample_rate_hz'])

    write_table(header, rows, args.out)

    write_run_manifest(args.out + '.run.json', 'export-features', config, [args.beats, args.model])

    return None


def emit_reports(reports, args):
    """Print reports and write text and JSON forms when requested.
    """
    text = render_report(reports)

    print(text)

    if args.out:
        write_file(args.out, [text])

    if args.json:
        write_file(args.json, [report_to_json(reports)])

    return None


def settings_epilog():
    """Every configuration key with its default.
    """
    lines = ['configuration keys (JSON file given with --config, defaults shown):']

    for name, defaults in SECTIONS.items():
        for key, value in defaults.items():
            lines.append('  %s.%s = %r' % (name, key, value))

    for key, value in SCALARS.items():
        lines.append('  %s = %r' % (key, value))

    return '\n'.join(lines)


def build_parser():
    """Command line parser with one subcommand per pipeline stage.

    :rtype: :class:`argparse.ArgumentParser`
    """
    parser = argparse.ArgumentParser(
        prog='epyecg',
        description='Personalized augmentation and dual expert ECG identification.',
        epilog=settings_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='JSON configuration file')
    common.add_argument('--threads', type=int, help='worker processes')
    common.add_argument('--roster', help='subject_id,role file')
    common.add_argument('--exclusion-list', help='subject identifiers to leave out, one per line')

    subparsers = parser.add_subparsers(dest='command', required=True)

    def subcommand(name, func, help):
        sub = subparsers.add_parser(name, parents=[common], help=help, description=help)
        sub.set_defaults(func=func)

        return sub

    sub = subcommand('synth', command_synth, 'write a synthetic corpus')
    sub.add_argument('--subjects', type=int, help='number of Target subjects')
    sub.add_argument('--auxiliary', type=int, help='number of Auxiliary subjects')
    sub.add_argument('--snr-db', type=float, help='signal to noise ratio')
    sub.add_argument('--seed', type=int, help='corpus seed')
    sub.add_argument('--format', choices=['txt', 'npy'], default='txt', help='recording file format')
    sub.add_argument('--out', required=True, help='output directory')

    sub = subcommand('preprocess', command_preprocess, 'extract and gate beats of recordings')
    sub.add_argument('--in', dest='input', required=True, help='directory of recordings')
    sub.add_argument('--out', required=True, help='beat dataset file')

    sub = subcommand('fit-ranges', command_fit_ranges, 'fit T-peak against heart rate and select ranges')
    sub.add_argument('--beats', required=True, help='beat dataset file')
    sub.add_argument('--fits', required=True, help='fits table file')
    sub.add_argument('--ranges', required=True, help='ranges table file')
    sub.add_argument('--refit-global', action='store_true', default=None, help='recompute t_g_min from pooled fit')
    sub.add_argument('--plot', help='directory for fit plots')

    sub = subcommand('augment', command_augment, 'append augmented beats to a beat dataset')
    sub.add_argument('--beats', required=True, help='beat dataset file')
    sub.add_argument('--ranges', required=True, help='ranges table file')
    sub.add_argument('--out', required=True, help='augmented beat dataset file')

    sub = subcommand('train', command_train, 'train an ablation once and write the model')
    sub.add_argument('--beats', required=True, help='beat dataset file')
    sub.add_argument('--ablation', choices=ABLATIONS, help='configuration to train')
    sub.add_argument('--classifier-augmented', action='store_true', default=None, help='augment classifier data')
    sub.add_argument('--refit-global', action='store_true', default=None, help='recompute t_g_min from pooled fit')
    sub.add_argument('--seed', type=int, help='model seed')
    sub.add_argument('--out', required=True, help='model file')
    sub.add_argument('--plot', help='directory for training history plots')

    for name, func, help in [('evaluate', command_evaluate, 'evaluate an ablation over repeated runs'),
                             ('ablate', command_ablate, 'evaluate the ablation matrix')]:

        sub = subcommand(name, func, help)
        sub.add_argument('--beats', required=True, help='beat dataset file')
        sub.add_argument('--runs', type=int, help='number of runs')
        sub.add_argument('--base-seed', type=int, help='seed of first run')
        sub.add_argument('--refit-global', action='store_true', default=None, help='recompute t_g_min from pooled fit')
        sub.add_argument('--out', help='text report file')
        sub.add_argument('--json', help='machine-readable report file')

        if name == 'evaluate':
            sub.add_argument('--ablation', choices=ABLATIONS, help='configuration to evaluate')
            sub.add_argument('--classifier-augmented', action='store_true', default=None, help='augment classifier data')
            sub.add_argument('--model', help='evaluate this model once instead of training')
            sub.add_argument('--predictions', help='per-beat decisions file')

    sub = subcommand('export-features', command_export_features, 'write backbone features of test beats')
    sub.add_argument('--beats', required=True, help='beat dataset file')
    sub.add_argument('--model', required=True, help='model file')
    sub.add_argument('--expert', choices=['pqrs', 'st'], default='st', help='backbone of expert composition')
    sub.add_argument('--normalized', action='store_true', help='normalize ST duration first')
    sub.add_argument('--pca', type=int, default=0, help='principal components to append')
    sub.add_argument('--out', required=True, help='features file')

    return parser


# Configuration key set by each flag
FLAGS = {
    'threads': 'threads',
    'roster': 'roster',
    'exclusion_list': 'exclusion_list',
    'seed': 'seed',
    'subjects': 'corpus.n_subjects',
    'auxiliary': 'corpus.n_auxiliary',
    'snr_db': 'corpus.snr_db',
    'refit_global': 'augment.refit_global',
    'ablation': 'experiment.ablation',
    'classifier_augmented': 'experiment.classifier_augmented',
    'runs': 'experiment.n_runs',
    'base_seed': 'experiment.base_seed',
}


def load_config(args):
    """Configuration from file and flags, flags first.

    :rtype: :class:`ecglibs.config.RunConfig`
    """
    config = RunConfig.from_file(require_path(args.config, '--config')) if args.config else RunConfig()

    config.override({key: getattr(args, flag) for flag, key in FLAGS.items() if hasattr(args, flag)})

    # Network builders read architecture from settings
    se_architecture.update(config['architecture'])

    return config


def exit_code(error):
    """Exit status of error category.
    """
    for category, code in EXIT_CODES.items():
        if isinstance(error, category):
            return code

    return 1


def main(argv=None):
    """Command line entry point.

    :return: Exit status, 0 on success.
    :rtype: int
    """
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args)
        args.func(args, config)

    except EpyECGError as error:
        cprint('epyecg %s: %s: %s' % (args.command, type(error).__name__, error), 'red', file=sys.stderr)

        return exit_code(error)

    except (OSError, KeyError, ValueError) as error:
        cprint('epyecg %s: %s: %s' % (args.command, type(error).__name__, error), 'red', file=sys.stderr)

        return 1

    return 0


if __name__ == '__main__':
    sys.exit(main())
