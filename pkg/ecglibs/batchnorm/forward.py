# EpyECG/ecglibs/batchnorm/forward.py
# Related third party imports
import numpy as np


def initialize_forward(layer, A):
    """Forward cache initialization.

    :param layer: An instance of batch normalization layer.
    :type layer: :class:`ecglibs.batchnorm.models.BatchNorm`

    :param A: Output of forward propagation from previous layer.
    :type A: :class:`numpy.ndarray`

    :return: Input of forward propagation for current layer.
    :rtype: :class:`numpy.ndarray`
    """
    X = layer.fc['X'] = A

    return X


def batchnorm_forward(layer, A):
    """Forward propagate signal to next layer.
    """
    # (1) Initialize cache
    X = initialize_forward(layer, A)    # (m, l, d) or (m, d)

    axes = tuple(range(X.ndim - 1))

    # (2) Batch or running statistics
    if layer.batch_stats:
        mu = np.mean(X, axis=axes)
        var = np.var(X, axis=axes)

        # Running variance is unbiased
        n = X.size // X.shape[-1]
        momentum = layer.d['momentum']

        layer.s['mean'] = (1 - momentum) * layer.s['mean'] + momentum * mu
        layer.s['var'] = (1 - momentum) * layer.s['var'] + momentum * var * n / max(n - 1, 1)

    else:
        mu = layer.s['mean']
        var = layer.s['var']

    inv_std = layer.fc['inv_std'] = 1. / np.sqrt(var + layer.d['epsilon'])

    # (3) Normalize
    Xh = layer.fc['Xh'] = (X - mu) * inv_std

    # (4) Scale and shift
    A = layer.fc['A'] = layer.p['gamma'] * Xh + layer.p['beta']

    return A    # To next layer
