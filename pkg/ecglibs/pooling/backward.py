# EpyECG/ecglibs/pooling/backward.py
# Related third party imports
import numpy as np


def initialize_backward(layer, dX):
    """Backward cache initialization.

    :param layer: An instance of pooling layer.
    :type layer: :class:`ecglibs.pooling.models.Pooling`

    :param dX: Output of backward propagation from next layer.
    :type dX: :class:`numpy.ndarray`

    :return: Input of backward propagation for current layer.
    :rtype: :class:`numpy.ndarray`
    """
    dA = layer.bc['dA'] = dX

    return dA


def pooling_backward(layer, dX):
    """Backward propagate error gradients to previous layer.

    Each window routes its gradient to a single position so that ties are not counted twice.
    """
    # (1) Initialize cache
    dA = initialize_backward(layer, dX)    # (m, ol, d)

    M = layer.fc['M']    # (m, ol, d)
    X = layer.fc['X']    # (m, l, d)

    sw = layer.d['sw']

    # (2) Gradient of the loss with respect to X
    dX = np.zeros_like(X)

    m_idx, o_idx, d_idx = np.indices(dA.shape)

    np.add.at(dX, (m_idx, o_idx * sw + M, d_idx), dA)

    layer.bc['dX'] = dX

    return dX    # To previous layer
