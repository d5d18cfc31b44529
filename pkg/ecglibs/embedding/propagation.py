# EpyECG/ecglibs/embedding/propagation.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.errors import ArgumentError


def embedding_forward(layer, A):
    """Check sample shape and add the channel axis of the single lead.

    :raises ArgumentError: If samples do not have the input length of the layer.
    """
    X = np.asarray(A, dtype=float)

    if X.ndim < 2 or X.shape[1] != layer.d['l']:
        raise ArgumentError('%s expects input shaped (n, %s), got %s'
                            % (layer.name, layer.d['l'], X.shape))

    layer.fc['X'] = X

    if layer.channels and X.ndim == 2:
        X = X[:, :, np.newaxis]    # (m, l) -> (m, l, 1)

    A = layer.fc['A'] = X

    return A


def embedding_backward(layer, dX):
    """Gradient with respect to network input, in input shape.
    """
    dA = layer.bc['dA'] = dX

    dX = layer.bc['dX'] = dA.reshape(layer.fc['X'].shape)

    return dX
