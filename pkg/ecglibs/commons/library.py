# EpyECG/ecglibs/commons/library.py
# Standard library imports
import hashlib
import pickle
import json
import glob
import os

# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.activation.models import Activation
from ecglibs.augment.models import AugmentationRange
from ecglibs.batchnorm.models import BatchNorm
from ecglibs.beats.models import (
    BeatTemplate,
    beat_geometry,
)
from ecglibs.commons import maths
from ecglibs.commons.errors import DataFormatError
from ecglibs.commons.logs import process_logs
from ecglibs.convolution.models import Convolution
from ecglibs.dense.models import Dense
from ecglibs.dropout.models import Dropout
from ecglibs.embedding.models import Embedding
from ecglibs.experts.models import (
    DualExpertGraph,
    ExpertGraph,
)
from ecglibs.flatten.models import Flatten
from ecglibs.network.models import ModelGraph
from ecglibs.pooling.models import Pooling
from ecglibs.settings import se_beats
from ecglibs.signals.models import RawRecording


# Fixed so that identical models give byte-identical checkpoints
PICKLE_PROTOCOL = 4

CHECKPOINT_FORMAT = 'epyecg-model/1'

BEAT_COLUMNS = ['subject_id', 'session', 'condition', 'heart_rate_bpm', 't_peak_rel_r', 'source_time_s']

TRUTH_COLUMNS = ['r_sample', 't_sample', 'heart_rate_bpm']


def read_pickle(f):
    """Read pickle binary file.

    :param f: Filename.
    :type f: str

    :return: File content.
    :rtype: Object
    """
    with open(f, 'rb') as msg:
        c = pickle.load(msg)

    return c


def read_file(f):
    """Read text file.

    :param f: Filename.
    :type f: str

    :return: File content.
    :rtype: str
    """
    with open(f, 'r') as msg:
        c = msg.read()

    return c


def write_pickle(f, c):
    """Write pickle binary file with a fixed protocol.

    :param f: Filename.
    :type f: str

    :param c: Content to write.
    :type c: Object
    """
    with open(f, 'wb') as msg:
        pickle.dump(c, msg, protocol=PICKLE_PROTOCOL)

    return None


def write_file(f, lines):
    """Write text file, one line per item.
    """
    with open(f, 'w') as msg:
        msg.write('\n'.join(lines) + '\n')

    return None


def sha256_file(f):
    """SHA-256 of file content.

    :return: Hexadecimal digest.
    :rtype: str
    """
    sha = hashlib.sha256()

    with open(f, 'rb') as msg:
        for chunk in iter(lambda: msg.read(1 << 16), b''):
            sha.update(chunk)

    return sha.hexdigest()


def number(value):
    """Shortest text form of a float which reads back identically.
    """
    return repr(float(value))


def parse_float(value, f, line):
    """Read float from text or raise a located error.
    """
    try:
        return float(value)
    except ValueError:
        raise DataFormatError('%s:%s: expected a number, got %r' % (f, line, value))


def recording_stem(rec):
    """Base filename of a recording.
    """
    return '%s_%s_%s' % (rec.subject_id, rec.session, rec.condition)


def write_recording(rec, f):
    """Write recording as text: one header line then one amplitude per line.

    The header holds ``subject_id,session,condition,sample_rate_hz``.

    :param rec: Recording.
    :type rec: :class:`ecglibs.signals.models.RawRecording`

    :param f: Filename.
    :type f: str
    """
    header = ','.join([rec.subject_id, rec.session, rec.condition, number(rec.sample_rate_hz)])

    write_file(f, [header] + [number(x) for x in rec.samples])

    return None


def write_recording_npy(rec, f):
    """Write recording as `.npy` samples with a companion `.json` header.
    """
    np.save(f, np.asarray(rec.samples, dtype='<f8'))

    header = {
        'subject_id': rec.subject_id,
        'session': rec.session,
        'condition': rec.condition,
        'sample_rate_hz': rec.sample_rate_hz,
    }

    with open(os.path.splitext(f)[0] + '.json', 'w') as msg:
        json.dump(header, msg, sort_keys=True)

    return None


def read_recording(f):
    """Read recording in text or `.npy` form.

    :param f: Filename.
    :type f: str

    :raises DataFormatError: If the header or any amplitude is malformed.

    :return: Recording.
    :rtype: :class:`ecglibs.signals.models.RawRecording`
    """
    if f.endswith('.npy'):
        with open(os.path.splitext(f)[0] + '.json', 'r') as msg:
            header = json.load(msg)

        fields = [header.get(k) for k in ['subject_id', 'session', 'condition', 'sample_rate_hz']]
        samples = np.load(f)

    else:
        lines = [line.strip() for line in read_file(f).splitlines() if line.strip()]

        if not lines:
            raise DataFormatError('%s: empty recording file' % f)

        fields = lines[0].split(',')

        if len(fields) != 4:
            raise DataFormatError('%s:1: expected header subject_id,session,condition,sample_rate_hz' % f)

        samples = [parse_float(x, f, i + 2) for i, x in enumerate(lines[1:])]

    subject_id, session, condition, sample_rate_hz = fields

    try:
        rec = RawRecording(subject_id, session, condition, samples,
                           parse_float(sample_rate_hz, f, 1))
    except ValueError as error:
        raise DataFormatError('%s: %s' % (f, error)) from error

    return rec


def read_recordings(path):
    """Read every recording file in a directory, sorted by name.

    :param path: Directory holding `.txt` or `.npy` recordings.
    :type path: str

    :raises DataFormatError: If directory holds no recording.

    :return: Recordings.
    :rtype: list[:class:`ecglibs.signals.models.RawRecording`]
    """
    files = sorted(glob.glob(os.path.join(path, '*.txt')) + glob.glob(os.path.join(path, '*.npy')))

    if not files:
        raise DataFormatError('%s: no recording file' % path)

    return [read_recording(f) for f in files]


def write_ground_truth(ground_truth, f):
    """Write ground truth sidecar of a synthetic recording.
    """
    rows = zip(ground_truth['r_samples'], ground_truth['t_samples'], ground_truth['heart_rate_bpm'])

    lines = [','.join(TRUTH_COLUMNS)]
    lines += ['%d,%d,%s' % (r, t, number(hr)) for r, t, hr in rows]

    write_file(f, lines)

    return None


def read_ground_truth(f):
    """Read ground truth sidecar.

    :return: R-peak and T center samples, heart rates.
    :rtype: dict[str, :class:`numpy.ndarray`]
    """
    lines = read_file(f).splitlines()

    if not lines or lines[0].split(',') != TRUTH_COLUMNS:
        raise DataFormatError('%s:1: expected header %s' % (f, ','.join(TRUTH_COLUMNS)))

    values = np.array([[parse_float(v, f, i + 2) for v in line.split(',')]
                       for i, line in enumerate(lines[1:]) if line.strip()]).reshape(-1, 3)

    ground_truth = {
        'r_samples': values[:, 0].astype(int),
        't_samples': values[:, 1].astype(int),
        'heart_rate_bpm': values[:, 2],
    }

    return ground_truth


def write_beats(beats, f, augmented_column=None):
    """Write beat dataset, one row per beat.

    :param beats: Beats.
    :type beats: list[:class:`ecglibs.beats.models.BeatTemplate`]

    :param f: Filename.
    :type f: str

    :param augmented_column: Append the `augmented` flag column, defaults to `None` which appends it if any beat is augmented.
    :type augmented_column: bool or NoneType, optional
    """
    if augmented_column is None:
        augmented_column = any(beat.augmented for beat in beats)

    length = len(beats[0].samples) if beats else beat_geometry()['length']

    header = BEAT_COLUMNS + ['s%d' % i for i in range(length)]
    header += ['augmented'] if augmented_column else []

    lines = [','.join(header)]

    for beat in beats:
        t_peak = '' if beat.t_peak_rel_r is None else str(beat.t_peak_rel_r)

        row = [beat.subject_id, beat.session, beat.condition,
               number(beat.heart_rate_bpm), t_peak, number(beat.source_time_s)]
        row += [number(x) for x in beat.samples]
        row += [str(int(beat.augmented))] if augmented_column else []

        lines.append(','.join(row))

    write_file(f, lines)

    return None


def read_beats(f, sample_rate_hz=se_beats['sample_rate_hz']):
    """Read beat dataset.

    :param f: Filename.
    :type f: str

    :param sample_rate_hz: Sampling rate of beats, defaults to 200.
    :type sample_rate_hz: float, optional

    :raises DataFormatError: If columns or values are malformed, or beats violate their invariants.

    :return: Beats.
    :rtype: list[:class:`ecglibs.beats.models.BeatTemplate`]
    """
    geometry = beat_geometry(sample_rate_hz)

    lines = read_file(f).splitlines()

    header = lines[0].split(',') if lines else []

    expected = BEAT_COLUMNS + ['s%d' % i for i in range(geometry['length'])]

    if header not in [expected, expected + ['augmented']]:
        raise DataFormatError('%s:1: expected header %s,...,s%d[,augmented]'
                              % (f, ','.join(BEAT_COLUMNS), geometry['length'] - 1))

    augmented_column = header[-1] == 'augmented'

    beats = []

    for i, line in enumerate(lines[1:]):

        if not line.strip():
            continue

        row = line.split(',')

        if len(row) != len(header):
            raise DataFormatError('%s:%s: expected %s columns, got %s' % (f, i + 2, len(header), len(row)))

        end = len(row) - 1 if augmented_column else len(row)

        beat = BeatTemplate(
            samples=[parse_float(v, f, i + 2) for v in row[6:end]],
            r_index=geometry['r_index'],
            heart_rate_bpm=parse_float(row[3], f, i + 2),
            subject_id=row[0],
            session=row[1],
            condition=row[2],
            source_time_s=parse_float(row[5], f, i + 2),
            t_peak_rel_r=int(parse_float(row[4], f, i + 2)) if row[4] else None,
            augmented=augmented_column and row[-1] == '1',
        )

        try:
            beat.check(sample_rate_hz)
        except ValueError as error:
            raise DataFormatError('%s:%s: %s' % (f, i + 2, error)) from error

        beats.append(beat)

    return beats


def write_fits(fits, f):
    """Write fits table ``subject_id,kind,slope,intercept``.

    :param fits: Balanced and unbalanced fits by subject.
    :type fits: dict[str, dict[str, :class:`ecglibs.augment.models.SubjectFit`]]
    """
    lines = ['subject_id,kind,slope,intercept']

    for subject_id in sorted(fits):
        for kind in sorted(fits[subject_id]):
            fit = fits[subject_id][kind]

            lines.append(','.join([subject_id, kind, number(fit.slope), number(fit.intercept)]))

    write_file(f, lines)

    return None


def write_ranges(ranges, f):
    """Write ranges table ``subject_id,t_min,t_max``.

    :param ranges: Augmentation range by subject.
    :type ranges: dict[str, :class:`ecglibs.augment.models.AugmentationRange`]
    """
    lines = ['subject_id,t_min,t_max']
    lines += ['%s,%d,%d' % (sid, ranges[sid].t_min, ranges[sid].t_max) for sid in sorted(ranges)]

    write_file(f, lines)

    return None


def read_ranges(f):
    """Read ranges table.

    :return: Augmentation range by subject.
    :rtype: dict[str, :class:`ecglibs.augment.models.AugmentationRange`]
    """
    lines = read_file(f).splitlines()

    if not lines or lines[0] != 'subject_id,t_min,t_max':
        raise DataFormatError('%s:1: expected header subject_id,t_min,t_max' % f)

    ranges = {}

    for i, line in enumerate(lines[1:]):
        row = line.split(',')

        if len(row) != 3:
            raise DataFormatError('%s:%s: expected 3 columns' % (f, i + 2))

        ranges[row[0]] = AugmentationRange(row[0], int(parse_float(row[1], f, i + 2)),
                                           int(parse_float(row[2], f, i + 2)))

    return ranges


def write_table(header, rows, f):
    """Write delimited text table, used for features and predictions.
    """
    lines = [','.join(header)]
    lines += [','.join(number(v) if isinstance(v, (float, np.floating)) else str(v) for v in row)
              for row in rows]

    write_file(f, lines)

    return None


def write_predictions(rows, f):
    """Write per-beat identification decisions ``run,condition,subject_id,predicted``.
    """
    write_table(['run', 'condition', 'subject_id', 'predicted'], rows, f)

    return None


def read_roster(f):
    """Read roster ``subject_id,role`` with role `target` or `auxiliary`.

    :raises DataFormatError: If a role is unknown or a subject repeats.

    :return: Role by subject.
    :rtype: dict[str, str]
    """
    roster = {}

    for i, line in enumerate(read_file(f).splitlines()):
        row = [v.strip() for v in line.split(',')]

        if not line.strip() or row == ['subject_id', 'role']:
            continue

        if len(row) != 2 or row[1] not in ('target', 'auxiliary'):
            raise DataFormatError('%s:%s: expected subject_id,target|auxiliary' % (f, i + 1))

        if row[0] in roster:
            raise DataFormatError('%s:%s: subject %s listed twice' % (f, i + 1, row[0]))

        roster[row[0]] = row[1]

    return roster


def write_roster(roster, f):
    """Write roster ``subject_id,role``.
    """
    write_file(f, ['subject_id,role'] + ['%s,%s' % (sid, roster[sid]) for sid in sorted(roster)])

    return None


def read_exclusion_list(f):
    """Read subject identifiers to exclude, one per line. Lines starting with `#` are ignored.

    :rtype: set[str]
    """
    lines = [line.strip() for line in read_file(f).splitlines()]

    return {line for line in lines if line and not line.startswith('#')}


def tensor_bytes(value):
    """Shape and little-endian float64 bytes of tensor.
    """
    value = np.ascontiguousarray(value, dtype='<f8')

    return {'shape': tuple(value.shape), 'bytes': value.tobytes()}


def tensor_array(entry):
    """Inverse of :func:`tensor_bytes`.
    """
    return np.frombuffer(entry['bytes'], dtype='<f8').reshape(entry['shape']).copy()


def build_layer(spec):
    """Construct a layer from its static description.

    :param spec: Layer spec as given by :meth:`ecglibs.commons.models.Layer.spec`.
    :type spec: dict

    :raises DataFormatError: If layer kind is unknown.

    :return: Layer without parameters.
    :rtype: :class:`ecglibs.commons.models.Layer`
    """
    kind, config = spec['kind'], spec['config']

    if kind == 'input':
        layer = Embedding(config['input_len'], channels=config['channels'])
    elif kind == 'conv1d':
        layer = Convolution(config['unit_filters'], config['filter_size'], config['strides'],
                            config['padding'], getattr(maths, config['activate']), use_bias=config['use_bias'])
    elif kind == 'batch_norm':
        layer = BatchNorm(**config)
    elif kind in ('max_pool', 'min_pool'):
        layer = Pooling(config['pool_size'], config['strides'], np.max if kind == 'max_pool' else np.min)
    elif kind == 'flatten':
        layer = Flatten()
    elif kind == 'dropout':
        layer = Dropout(config['drop_prob'])
    elif kind == 'fully_connected':
        layer = Dense(config['units'], getattr(maths, config['activate']), per_unit=config['per_unit'])
    elif hasattr(maths, kind):
        layer = Activation(getattr(maths, kind))
    else:
        raise DataFormatError('unknown layer kind %r' % kind)

    layer.trainable = spec['trainable']

    return layer


def graph_to_dict(graph):
    """Plain description of network: specs, tensors, seed and history.
    """
    layers = []

    for layer in graph.layers:
        tensors = {k: tensor_bytes(v) for k, v in sorted(layer.p.items())}
        tensors.update({k: tensor_bytes(layer.s[k]) for k in ['mean', 'var'] if k in layer.s})

        layers.append({'spec': layer.spec(), 'tensors': tensors})

    content = {
        'name': graph.name,
        'seed': graph.seed,
        'se_hPars': dict(graph.se_hPars),
        'history': [dict(record) for record in graph.history],
        'layers': layers,
    }

    return content


def graph_from_dict(content):
    """Rebuild network from :func:`graph_to_dict` output.
    """
    layers = []

    for entry in content['layers']:
        layer = build_layer(entry['spec'])

        for key, tensor in entry['tensors'].items():
            target = layer.s if key in ('mean', 'var') else layer.p
            target[key] = tensor_array(tensor)

        layers.append(layer)

    graph = ModelGraph(layers, name=content['name'])

    if graph.num_classes is not None:
        # Dry pass computes shapes, parameters are kept
        graph.initialize(loss=content['se_hPars']['loss'], se_hPars=content['se_hPars'],
                         seed=content['seed'], params=False, end='\r')
    else:
        graph.seed = content['seed']
        graph.se_hPars = dict(content['se_hPars'])

        A = np.zeros((2, graph.input_len))

        for layer in graph.layers:
            layer.training = False
            layer.compute_shapes(A)
            A = layer.forward(A)

        graph.initialized = True

    graph.history = [dict(record) for record in content['history']]

    return graph


def model_manifest(model):
    """Text manifest: one line per layer with kind, trainable flag and parameter shapes.
    """
    if isinstance(model, ModelGraph):
        graphs = [(model.name, model)]
    else:
        graphs = [('expert%d' % i, backbone) for i, backbone in enumerate(model.backbones)]
        graphs += [('classifier', model.classifier)] if model.classifier else []

    lines = []

    for part, graph in graphs:
        for i, layer in enumerate(graph.layers):
            shapes = ' '.join('%s=%s' % (k, tuple(v.shape)) for k, v in sorted(layer.p.items()))

            lines.append('%s\t%d\t%s\ttrainable=%s\t%s' % (part, i, layer.kind, layer.trainable, shapes))

    return lines


def write_model(model, model_path):
    """Write network or expert composition on disk with its text manifest.

    :param model: Network or expert composition.
    :type model: :class:`ecglibs.network.models.ModelGraph` or :class:`ecglibs.experts.models.ExpertGraph`

    :param model_path: Where to write model.
    :type model_path: str
    """
    if isinstance(model, ModelGraph):
        data = {'format': CHECKPOINT_FORMAT, 'graph': 'ModelGraph', 'model': graph_to_dict(model)}

    else:
        data = {
            'format': CHECKPOINT_FORMAT,
            'graph': 'DualExpertGraph' if isinstance(model, DualExpertGraph) else 'ExpertGraph',
            'name': model.name,
            'input_len': model.input_len,
            'sample_rate_hz': getattr(model, 'sample_rate_hz', None),
            'experts': [((sl.start, sl.stop), graph_to_dict(backbone)) for sl, backbone in model.experts],
            'classifier': graph_to_dict(model.classifier) if model.classifier else None,
        }

    write_pickle(model_path, data)
    write_file(model_path + '.manifest.txt', model_manifest(model))

    process_logs('Make: ' + model_path, level=1)

    return None


def read_model(model_path):
    """Read network or expert composition from disk.

    :param model_path: Where to read model from.
    :type model_path: str

    :raises DataFormatError: If file is not a checkpoint.

    :return: Model.
    :rtype: :class:`ecglibs.network.models.ModelGraph` or :class:`ecglibs.experts.models.ExpertGraph`
    """
    try:
        data = read_pickle(model_path)
    except (pickle.UnpicklingError, EOFError) as error:
        raise DataFormatError('%s: not a checkpoint' % model_path) from error

    if not isinstance(data, dict) or data.get('format') != CHECKPOINT_FORMAT:
        raise DataFormatError('%s: unknown checkpoint format' % model_path)

    if data['graph'] == 'ModelGraph':
        return graph_from_dict(data['model'])

    backbones = [graph_from_dict(content) for _, content in data['experts']]
    classifier = graph_from_dict(data['classifier']) if data['classifier'] else None

    if data['graph'] == 'DualExpertGraph':
        model = DualExpertGraph(backbones[0], backbones[1], classifier, data['sample_rate_hz'])
    else:
        experts = [(slice(*bounds), backbone) for (bounds, _), backbone in zip(data['experts'], backbones)]
        model = ExpertGraph(experts, classifier, data['input_len'], data['name'])

    return model


def write_json(content, f):
    """Write JSON document with sorted keys, used for manifests and reports.
    """
    with open(f, 'w') as msg:
        json.dump(content, msg, indent=2, sort_keys=True)

    return None
