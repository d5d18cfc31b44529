# EpyECG/ecglibs/dropout/models.py
# Local application/library specific imports
from ecglibs.commons.models import Layer
from ecglibs.dropout.propagation import (
    dropout_backward,
    dropout_forward,
)


class Dropout(Layer):
    """
    Definition of a dropout layer prototype.

    :param drop_prob: Probability to drop one value, defaults to 0.5.
    :type drop_prob: float, optional
    """

    def __init__(self, drop_prob=0.5):
        """Initialize instance variable attributes.
        """
        super().__init__()

        self.d['d'] = drop_prob

        self.kind = 'dropout'
        self.config = {'drop_prob': drop_prob}

        return None

    def forward(self, A):
        A = dropout_forward(self, A)
        self.update_shapes(self.fc, self.fs)

        return A

    def backward(self, dX):
        dX = dropout_backward(self, dX)
        self.update_shapes(self.bc, self.bs)

        return dX
