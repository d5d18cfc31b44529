# EpyECG/ecglibs/embedding/models.py
# Local application/library specific imports
from ecglibs.commons.models import Layer
from ecglibs.embedding.dataset import mini_batches
from ecglibs.embedding.propagation import (
    embedding_backward,
    embedding_forward,
)


class Embedding(Layer):
    """
    Definition of an embedding layer prototype. Input layer of a network which holds training and validation sets and checks sample shapes.

    :param input_len: Number of samples per beat segment, or features per sample for a classifier head.
    :type input_len: int

    :param channels: Whether to add a channel axis to 2-D input, defaults to `True`.
    :type channels: bool, optional

    :param batch_size: For training batches, defaults to None which makes a single batch out of the training data.
    :type batch_size: int or NoneType, optional
    """

    def __init__(self,
                 input_len,
                 channels=True,
                 batch_size=None):
        """Initialize instance variable attributes.
        """
        super().__init__()

        self.d['l'] = input_len
        self.channels = channels
        self.batch_size = batch_size

        self.dtrain = self.dval = None
        self.dsets = []

        self.kind = 'input'
        self.config = {'input_len': input_len, 'channels': channels}

        return None

    def set_datasets(self, dtrain, dval, batch_size=None):
        """Attach training and validation sets.

        :param dtrain: Training set.
        :type dtrain: :class:`ecglibs.commons.models.dataSet`

        :param dval: Validation set.
        :type dval: :class:`ecglibs.commons.models.dataSet`

        :param batch_size: For training batches, defaults to None which keeps current setting.
        :type batch_size: int or NoneType, optional
        """
        self.dtrain, self.dval = dtrain, dval
        self.dsets = [dset for dset in [dtrain, dval] if dset.active]

        if batch_size:
            self.batch_size = batch_size

        return None

    def training_batches(self):
        """Wrapper for :func:`ecglibs.embedding.dataset.mini_batches()`.
        """
        self.batch_dtrain = mini_batches(self)

        return None

    def compute_shapes(self, A):
        self.fs['X'] = A.shape
        self.d['m'] = A.shape[0]

        return None

    def forward(self, A):
        A = embedding_forward(self, A)
        self.update_shapes(self.fc, self.fs)

        return A

    def backward(self, dX):
        dX = embedding_backward(self, dX)
        self.update_shapes(self.bc, self.bs)

        return dX
