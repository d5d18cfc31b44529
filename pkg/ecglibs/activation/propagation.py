# EpyECG/ecglibs/activation/propagation.py


def activation_forward(layer, A):
    """Element-wise non-linearity, input kept for the backward pass.
    """
    X = layer.fc['X'] = A

    A = layer.fc['A'] = layer.activate(X)

    return A    # To next layer


def activation_backward(layer, dX):
    """Chain rule through the non-linearity.
    """
    dA = layer.bc['dA'] = dX

    dX = layer.bc['dX'] = dA * layer.activate(layer.fc['X'], deriv=True)

    return dX    # To previous layer
