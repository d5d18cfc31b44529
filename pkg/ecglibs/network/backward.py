# EpyECG/ecglibs/network/backward.py


def model_backward(model, dA, update=True):
    """Backward propagate error gradients from output to input layer.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :param dA: Derivative of the loss function with respect to the output of forward propagation.
    :type dA: :class:`numpy.ndarray`

    :param update: Update parameters of trainable layers, defaults to `True`.
    :type update: bool, optional

    :return: Gradient of the loss with respect to network input.
    :rtype: :class:`numpy.ndarray`
    """
    # By convention
    dX = dA

    # Iterate over reversed layers
    for layer in reversed(model.layers):

        # Layer returns dL/dX (dX) - layer.bs, layer.bc
        dX = layer.backward(dX)

        # Update values in layer.g
        layer.compute_gradients()

        # Update values in layer.p
        if update:
            layer.update_parameters()

    return dX
