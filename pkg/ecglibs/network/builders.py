# EpyECG/ecglibs/network/builders.py
# Local application/library specific imports
from ecglibs.commons.errors import ConfigurationError
from ecglibs.commons.maths import (
    identity,
    relu,
    softmax,
    he,
)
from ecglibs.network.models import ModelGraph
from ecglibs.embedding.models import Embedding
from ecglibs.convolution.models import Convolution
from ecglibs.batchnorm.models import BatchNorm
from ecglibs.activation.models import Activation
from ecglibs.pooling.models import Pooling
from ecglibs.flatten.models import Flatten
from ecglibs.dense.models import Dense
from ecglibs.dropout.models import Dropout
from ecglibs.settings import (
    se_architecture,
    se_hPars,
)


# Full beat, PQRS expert, ST expert
INPUT_LENGTHS = (110, 50, 70)


def mlp_head(num_classes, se_architecture=se_architecture):
    """Fully connected classifier layers shared by every model.

    :param num_classes: Width of output layer.
    :type num_classes: int

    :param se_architecture: Architecture settings, defaults to :data:`ecglibs.settings.se_architecture`.
    :type se_architecture: dict, optional

    :return: Dense, ReLU, Dropout and softmax output layers.
    :rtype: list[Object]
    """
    layers = [
        Dense(se_architecture['hidden_units'], identity, initialization=he),
        Activation(relu),
        Dropout(se_architecture['dropout']),
        Dense(num_classes, softmax, per_unit=True),
    ]

    return layers


def build_standard_cnn(input_len, num_classes, seed=None, se_architecture=se_architecture, se_hPars=se_hPars):
    """Build and initialize the Standard CNN.

    Three convolution blocks with batch normalization and ReLU, the first two
    followed by max-pooling, then a single hidden layer classifier.

    :param input_len: Number of samples per beat, one of 50, 70 or 110.
    :type input_len: int

    :param num_classes: Number of subjects to classify.
    :type num_classes: int

    :param seed: Seed for parameters initialization, dropout and batch shuffling.
    :type seed: int or NoneType, optional

    :raises ConfigurationError: If input_len or num_classes is not supported.

    :return: Initialized network.
    :rtype: :class:`ecglibs.network.models.ModelGraph`
    """
    if input_len not in INPUT_LENGTHS:
        raise ConfigurationError('input_len must be one of %s, got %s'
                                 % (sorted(INPUT_LENGTHS), input_len), key='architecture.input_len')

    if not int(num_classes) >= 2:
        raise ConfigurationError('at least 2 classes required, got %s' % num_classes,
                                 key='architecture.num_classes')

    channels = se_architecture['channels']
    kernels = se_architecture['kernels']

    layers = [Embedding(input_len)]

    # Convolution blocks, pooling on all but the last
    for i, (u, k) in enumerate(zip(channels, kernels)):

        layers.append(Convolution(unit_filters=u, filter_size=k, padding=k // 2))
        layers.append(BatchNorm())
        layers.append(Activation(relu))

        if i < len(channels) - 1:
            layers.append(Pooling(2))

    layers.append(Flatten())

    layers.extend(mlp_head(int(num_classes), se_architecture))

    model = ModelGraph(layers=layers, name='StandardCNN-%s' % input_len)

    model.initialize(loss='CCE', se_hPars=se_hPars, seed=seed)

    return model


def build_classifier_head(features, num_classes, seed=None, se_architecture=se_architecture, se_hPars=se_hPars):
    """Build and initialize a classifier over flattened features.

    :param features: Number of input features.
    :type features: int

    :param num_classes: Width of output layer.
    :type num_classes: int

    :param seed: Seed for parameters initialization, dropout and batch shuffling.
    :type seed: int or NoneType, optional

    :return: Initialized network.
    :rtype: :class:`ecglibs.network.models.ModelGraph`
    """
    if not int(num_classes) >= 2:
        raise ConfigurationError('at least 2 classes required, got %s' % num_classes,
                                 key='architecture.num_classes')

    layers = [Embedding(features, channels=False)]

    layers.extend(mlp_head(int(num_classes), se_architecture))

    model = ModelGraph(layers=layers, name='ClassifierHead-%s' % features)

    model.initialize(loss='CCE', se_hPars=se_hPars, seed=seed)

    return model
