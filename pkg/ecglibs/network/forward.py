# EpyECG/ecglibs/network/forward.py


def model_forward(model, X, training=False):
    """Forward propagate input data from input to output layer.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :param X: Set of sample features.
    :type X: :class:`numpy.ndarray`

    :param training: Training mode for batch normalization and dropout, defaults to `False`.
    :type training: bool, optional
    """
    # By convention
    A = X

    # Iterate over layers
    for layer in model.layers:

        # For learning rate schedule
        layer.e = model.e

        layer.training = training

        # Layer returns A - layer.fs, layer.fc
        A = layer.forward(A)

    return A    # To derivative of loss function
