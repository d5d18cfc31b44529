# EpyECG/ecglibs/dense/forward.py
# Related third party imports
import numpy as np


def initialize_forward(layer, A):
    """Forward cache initialization.

    :param layer: An instance of dense layer.
    :type layer: :class:`ecglibs.dense.models.Dense`

    :param A: Output of forward propagation from previous layer.
    :type A: :class:`numpy.ndarray`

    :return: Input of forward propagation for current layer.
    :rtype: :class:`numpy.ndarray`
    """
    X = layer.fc['X'] = A

    return X


def dense_forward(layer, A):
    """Forward propagate signal to next layer.
    """
    # (1) Initialize cache
    X = initialize_forward(layer, A)

    # (2) Linear activation X -> Z
    if layer.per_unit:
        # One contiguous column at a time
        Z = np.stack([X @ np.ascontiguousarray(layer.p['W'][:, j])
                      for j in range(layer.p['W'].shape[1])], axis=1)
        Z = Z.reshape(X.shape[0], -1) + layer.p['b']

    else:
        Z = np.dot(X, layer.p['W']) + layer.p['b']

    Z = layer.fc['Z'] = Z

    # (3) Non-linear activation Z -> A
    A = layer.fc['A'] = layer.activate(Z)

    return A    # To next layer
