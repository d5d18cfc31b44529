# EpyECG/ecglibs/activation/models.py
# Local application/library specific imports
from ecglibs.activation.propagation import (
    activation_backward,
    activation_forward,
)
from ecglibs.commons.maths import relu
from ecglibs.commons.models import Layer


class Activation(Layer):
    """
    Definition of an activation layer prototype, placed after batch normalization.

    :param activate: Element-wise function with a `deriv` flag, defaults to `relu`.
    :type activate: function, optional
    """

    def __init__(self, activate=relu):
        """Initialize instance variable attributes.
        """
        super().__init__()

        self.activate = activate
        self.activation = {'activate': activate.__name__}

        # Checkpoints rebuild the layer from the function name
        self.kind = activate.__name__
        self.config = {}

        return None

    def forward(self, A):
        A = activation_forward(self, A)
        self.update_shapes(self.fc, self.fs)

        return A

    def backward(self, dX):
        dX = activation_backward(self, dX)
        self.update_shapes(self.bc, self.bs)

        return dX
