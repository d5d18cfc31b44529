# EpyECG/ecglibs/flatten/propagation.py


def flatten_forward(layer, A):
    """Reshape (m, l, d) -> (m, l * d), channel index fastest.
    """
    X = layer.fc['X'] = A

    A = layer.fc['A'] = X.reshape(X.shape[0], -1)

    return A


def flatten_backward(layer, dX):
    """Reshape (m, l * d) -> (m, l, d).
    """
    dA = layer.bc['dA'] = dX

    dX = layer.bc['dX'] = dA.reshape(layer.fc['X'].shape)

    return dX
