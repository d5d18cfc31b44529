# EpyECG/ecglibs/experts/training.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.errors import (
    ArgumentError,
    ConfigurationError,
)
from ecglibs.commons.logs import process_logs
from ecglibs.commons.models import dataSet
from ecglibs.experts.models import (
    DualExpertGraph,
    ExpertGraph,
    dual_slices,
)
from ecglibs.network.builders import (
    build_classifier_head,
    build_standard_cnn,
)
from ecglibs.settings import (
    se_beats,
    se_hPars,
)


def sliced_set(dset, sl):
    """Restrict beats of a labeled set to an in-beat slice.

    :param dset: Labeled set of beats.
    :type dset: :class:`ecglibs.commons.models.dataSet`

    :param sl: In-beat slice.
    :type sl: slice

    :return: Labeled set of sliced beats.
    :rtype: :class:`ecglibs.commons.models.dataSet`
    """
    sliced = dataSet(dset.X[:, sl], dset.y, num_classes=dset.Y.shape[1], name=dset.name)

    return sliced


def expert_seed(seed, k):
    """Seed of the k-th expert derived from the run seed.
    """
    return None if seed is None else seed + 1000 * (k + 1)


def train_experts(slices, dtrain, dval, num_classes, seed=None, se_hPars=se_hPars):
    """Train one Standard CNN per slice and keep their frozen backbones.

    :param slices: In-beat slices, one per expert.
    :type slices: list[slice]

    :param dtrain: Training beats with subject labels.
    :type dtrain: :class:`ecglibs.commons.models.dataSet`

    :param dval: Validation beats with subject labels.
    :type dval: :class:`ecglibs.commons.models.dataSet`

    :param num_classes: Number of subjects.
    :type num_classes: int

    :param seed: Run seed, defaults to `None`.
    :type seed: int or NoneType, optional

    :return: Frozen headless backbones.
    :rtype: list[:class:`ecglibs.network.models.ModelGraph`]
    """
    backbones = []

    for k, sl in enumerate(slices):

        model = build_standard_cnn(sl.stop - sl.start, num_classes, seed=expert_seed(seed, k), se_hPars=se_hPars)

        model.train(sliced_set(dtrain, sl), sliced_set(dval, sl))

        if se_hPars['verbose']:
            process_logs('Expert [%s, %s) trained for %s epochs' % (sl.start, sl.stop, len(model.history)), level=1)

        # Fully connected head removed
        backbones.append(model.backbone())

    return backbones


def train_dual_expert_stage1(dtrain, dval, num_classes, seed=None, se_hPars=se_hPars,
                             sample_rate_hz=se_beats['sample_rate_hz']):
    """Train the PQRS and ST experts independently on (augmented) Target beats.

    :param dtrain: Training beats with subject labels.
    :type dtrain: :class:`ecglibs.commons.models.dataSet`

    :param dval: Validation beats with subject labels.
    :type dval: :class:`ecglibs.commons.models.dataSet`

    :param num_classes: Number of Target subjects.
    :type num_classes: int

    :param seed: Run seed, defaults to `None`.
    :type seed: int or NoneType, optional

    :return: Frozen PQRS and ST backbones.
    :rtype: tuple[:class:`ecglibs.network.models.ModelGraph`]
    """
    pqrs_slice, st_slice = dual_slices(sample_rate_hz)

    pqrs_backbone, st_backbone = train_experts([pqrs_slice, st_slice], dtrain, dval, num_classes,
                                               seed=seed, se_hPars=se_hPars)

    return pqrs_backbone, st_backbone


def train_dual_expert_stage2(graph, dtrain, dval, num_target, num_aux=0,
                             target_ids=(), aux_ids=(), seed=None, se_hPars=se_hPars):
    """Train a classifier head over frozen backbone features.

    Labels [0, num_target) are Target subjects, [num_target, num_target + num_aux)
    are Auxiliary subjects. Backbones run in inference mode only.

    :param graph: Composition of frozen backbones, or the backbones themselves.
    :type graph: :class:`ecglibs.experts.models.ExpertGraph` or tuple[:class:`ecglibs.network.models.ModelGraph`]

    :param dtrain: Training beats with subject labels.
    :type dtrain: :class:`ecglibs.commons.models.dataSet`

    :param dval: Validation beats with subject labels.
    :type dval: :class:`ecglibs.commons.models.dataSet`

    :param num_target: Number of Target subjects.
    :type num_target: int

    :param num_aux: Number of Auxiliary subjects, defaults to 0.
    :type num_aux: int, optional

    :param target_ids: Target subject identifiers.
    :type target_ids: list[str], optional

    :param aux_ids: Auxiliary subject identifiers.
    :type aux_ids: list[str], optional

    :param seed: Run seed, defaults to `None`.
    :type seed: int or NoneType, optional

    :raises ConfigurationError: If Target and Auxiliary subjects overlap.
    :raises ArgumentError: If backbones are not frozen or labels exceed the head width.

    :return: Composition with trained classifier head.
    :rtype: :class:`ecglibs.experts.models.ExpertGraph`
    """
    overlap = sorted(set(target_ids) & set(aux_ids))

    if overlap:
        raise ConfigurationError('subjects both Target and Auxiliary: %s' % ', '.join(overlap), key='roster')

    if not isinstance(graph, ExpertGraph):
        graph = DualExpertGraph(*graph)

    if any(any(backbone.trainable_mask) for backbone in graph.backbones):
        raise ArgumentError('backbones must be frozen before classifier training')

    num_classes = num_target + num_aux

    for dset in [dtrain, dval]:
        if dset.active and int(dset.y.max()) >= num_classes:
            raise ArgumentError('%s labels exceed %s classes' % (dset.name, num_classes))

    # Features computed once, backbones untouched
    ftrain = dataSet(graph.features(dtrain.X), dtrain.y, num_classes=num_classes, name=dtrain.name)
    fval = dataSet(graph.features(dval.X), dval.y, num_classes=num_classes, name=dval.name)

    classifier = build_classifier_head(graph.feature_width, num_classes, seed=seed, se_hPars=se_hPars)

    classifier.train(ftrain, fval)

    graph.classifier = classifier

    return graph


def prune_aux_classes(graph, num_target):
    """Remove output units of Auxiliary subjects.

    Weight columns and biases of the first `num_target` units are kept
    bit-exactly, so are their logits for any input.

    :param graph: Network or composition whose output layer is expanded.
    :type graph: :class:`ecglibs.network.models.ModelGraph` or :class:`ecglibs.experts.models.ExpertGraph`

    :param num_target: Number of Target subjects.
    :type num_target: int

    :raises ArgumentError: If num_target exceeds the head width.

    :return: The pruned network, modified in place.
    :rtype: same as graph
    """
    model = graph.classifier if isinstance(graph, ExpertGraph) else graph

    output = model.layers[-1]
    width = output.d['u']

    if not 1 <= num_target <= width:
        raise ArgumentError('num_target must lie in [1, %s], got %s' % (width, num_target))

    if num_target < width:
        output.prune_units(np.arange(num_target))

    return graph
