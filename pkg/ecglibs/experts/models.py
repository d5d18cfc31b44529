# EpyECG/ecglibs/experts/models.py
# Standard library imports
import hashlib

# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.beats.models import beat_geometry
from ecglibs.commons.errors import ArgumentError
from ecglibs.commons.models import dataSet
from ecglibs.network.evaluate import model_infer
from ecglibs.settings import se_beats


class ExpertGraph:
    """
    Definition of an expert composition prototype. Frozen backbones each read a slice of the beat, their flattened features are concatenated and fed to a classifier head.

    :param experts: Pairs of beat slice and backbone network.
    :type experts: list[tuple[slice, :class:`ecglibs.network.models.ModelGraph`]]

    :param classifier: Classifier head over concatenated features, defaults to `None` until trained.
    :type classifier: :class:`ecglibs.network.models.ModelGraph` or NoneType, optional

    :param input_len: Number of samples per beat, defaults to 110.
    :type input_len: int, optional

    :param name: Name of composition, defaults to 'ExpertGraph'.
    :type name: str, optional
    """

    def __init__(self, experts, classifier=None, input_len=110, name='ExpertGraph'):
        """Initialize instance variable attributes.
        """
        self.experts = list(experts)
        self.classifier = classifier
        self.input_len = input_len
        self.name = name

        for sl, backbone in self.experts:
            if sl.stop > input_len or backbone.input_len != sl.stop - sl.start:
                raise ArgumentError('backbone %s does not match slice [%s, %s)'
                                    % (backbone.name, sl.start, sl.stop))

        return None

    @property
    def backbones(self):
        """Backbone networks in order.
        """
        return [backbone for _, backbone in self.experts]

    @property
    def num_classes(self):
        """Width of classifier output.
        """
        return self.classifier.num_classes if self.classifier else None

    @property
    def feature_width(self):
        """Number of concatenated features.
        """
        return sum(backbone.layers[-1].d['n'] for backbone in self.backbones)

    def features(self, X):
        """Concatenated flattened features of backbones in inference mode.

        :param X: Set of beats, shaped (n, input_len).
        :type X: :class:`numpy.ndarray`

        :raises ArgumentError: If beats are not shaped (n, input_len).

        :return: Features, shaped (n, feature_width).
        :rtype: :class:`numpy.ndarray`
        """
        X = np.asarray(X, dtype=float)

        if X.ndim != 2 or X.shape[1] != self.input_len:
            raise ArgumentError('%s expects input shaped (n, %s), got %s'
                                % (self.name, self.input_len, X.shape))

        F = np.concatenate([model_infer(backbone, X[:, sl]) for sl, backbone in self.experts], axis=1)

        return F

    def forward(self, X):
        """Class probabilities in inference mode.

        :param X: Set of beats, shaped (n, input_len).
        :type X: :class:`numpy.ndarray`

        :raises ArgumentError: If classifier is not trained yet.

        :return: Output of classifier.
        :rtype: :class:`numpy.ndarray`
        """
        if self.classifier is None:
            raise ArgumentError('%s has no classifier head' % self.name)

        A = model_infer(self.classifier, self.features(X))

        return A

    def predict(self, X_data):
        """Perform prediction of label from beats.

        :param X_data: Set of beats, shaped (n, input_len).
        :type X_data: list[list[float]] or :class:`numpy.ndarray`

        :return: Beats, output probabilities and decisions.
        :rtype: :class:`ecglibs.commons.models.dataSet`
        """
        dset = dataSet(X_data)

        dset.A = self.forward(dset.X)
        dset.P = np.argmax(dset.A, axis=1)

        return dset

    def backbone_digests(self):
        """Parameter digests of backbones.

        :return: One digest per backbone.
        :rtype: list[str]
        """
        return [backbone.parameter_digest() for backbone in self.backbones]

    def parameter_digest(self):
        """SHA-256 over backbone and classifier digests.

        :return: Hexadecimal digest.
        :rtype: str
        """
        digests = self.backbone_digests()

        if self.classifier is not None:
            digests.append(self.classifier.parameter_digest())

        return hashlib.sha256(''.join(digests).encode()).hexdigest()


class DualExpertGraph(ExpertGraph):
    """
    Definition of the Dual Expert prototype. The PQRS expert reads the first 250 ms of the beat, the ST expert reads the last 350 ms, the two overlap by 50 ms.

    :param pqrs_backbone: Backbone over the PQRS slice.
    :type pqrs_backbone: :class:`ecglibs.network.models.ModelGraph`

    :param st_backbone: Backbone over the ST slice.
    :type st_backbone: :class:`ecglibs.network.models.ModelGraph`

    :param classifier: Classifier head, defaults to `None` until trained.
    :type classifier: :class:`ecglibs.network.models.ModelGraph` or NoneType, optional

    :param sample_rate_hz: Sampling rate, defaults to 200.
    :type sample_rate_hz: float, optional
    """

    def __init__(self, pqrs_backbone, st_backbone, classifier=None, sample_rate_hz=se_beats['sample_rate_hz']):
        """Initialize instance variable attributes.
        """
        pqrs_slice, st_slice = dual_slices(sample_rate_hz)

        geometry = beat_geometry(sample_rate_hz)

        super().__init__(
            [(pqrs_slice, pqrs_backbone), (st_slice, st_backbone)],
            classifier=classifier,
            input_len=geometry['length'],
            name='DualExpert',
        )

        self.sample_rate_hz = sample_rate_hz

        return None

    @property
    def pqrs_slice(self):
        return self.experts[0][0]

    @property
    def st_slice(self):
        return self.experts[1][0]

    @property
    def pqrs_backbone(self):
        return self.experts[0][1]

    @property
    def st_backbone(self):
        return self.experts[1][1]


def dual_slices(sample_rate_hz=se_beats['sample_rate_hz']):
    """In-beat slices read by the PQRS and ST experts.

    :param sample_rate_hz: Sampling rate, defaults to 200.
    :type sample_rate_hz: float, optional

    :return: PQRS slice [0, 50) and ST slice [40, 110) at 200 Hz.
    :rtype: tuple[slice]
    """
    geometry = beat_geometry(sample_rate_hz)

    overlap = int(round(0.050 * sample_rate_hz))

    pqrs_slice = slice(0, geometry['split'])
    st_slice = slice(geometry['split'] - overlap, geometry['length'])

    return pqrs_slice, st_slice
