# EpyECG/ecglibs/batchnorm/backward.py
# Related third party imports
import numpy as np


def initialize_backward(layer, dX):
    """Backward cache initialization.

    :param layer: An instance of batch normalization layer.
    :type layer: :class:`ecglibs.batchnorm.models.BatchNorm`

    :param dX: Output of backward propagation from next layer.
    :type dX: :class:`numpy.ndarray`

    :return: Input of backward propagation for current layer.
    :rtype: :class:`numpy.ndarray`
    """
    dA = layer.bc['dA'] = dX

    return dA


def batchnorm_backward(layer, dX):
    """Backward propagate error gradients to previous layer.
    """
    # (1) Initialize cache
    dA = initialize_backward(layer, dX)

    axes = tuple(range(dA.ndim - 1))

    Xh = layer.fc['Xh']
    inv_std = layer.fc['inv_std']

    # (2) Gradient of the loss with respect to normalized input
    dXh = layer.bc['dXh'] = dA * layer.p['gamma']

    # (3) Gradient of the loss with respect to X
    if layer.batch_stats:
        # Statistics depend on X
        n = dA.size // dA.shape[-1]

        dX = inv_std / n * (
            n * dXh
            - np.sum(dXh, axis=axes)
            - Xh * np.sum(dXh * Xh, axis=axes)
        )

    else:
        # Statistics are constants
        dX = dXh * inv_std

    layer.bc['dX'] = dX

    return dX    # To previous layer
