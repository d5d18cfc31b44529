# EpyECG/ecglibs/flatten/models.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.models import Layer
from ecglibs.flatten.propagation import (
    flatten_backward,
    flatten_forward,
)


class Flatten(Layer):
    """
    Definition of a flatten layer prototype. Last layer of a backbone, its
    output is the feature vector of a beat segment.
    """

    def __init__(self):
        """Initialize instance variable attributes.
        """
        super().__init__()

        self.kind = 'flatten'
        self.config = {}

        return None

    def compute_shapes(self, A):
        """Feature width `n` from the (m, l, d) input.
        """
        self.fs['X'] = A.shape

        self.d['m'] = A.shape[0]
        self.d['n'] = int(np.prod(A.shape[1:]))

        return None

    def forward(self, A):
        A = flatten_forward(self, A)
        self.update_shapes(self.fc, self.fs)

        return A

    def backward(self, dX):
        dX = flatten_backward(self, dX)
        self.update_shapes(self.bc, self.bs)

        return dX
