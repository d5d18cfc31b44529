# EpyECG/ecglibs/embedding/dataset.py
# Related third party imports
import numpy as np

# Local application/library specific imports
from ecglibs.commons.models import dataSet


def mini_batches(layer):
    """Shuffle and divide training set in batches for each training epoch.

    Trailing samples that do not fill a batch are left out of the epoch.

    :param layer: An instance of the :class:`ecglibs.embedding.models.Embedding`
    :type layer: :class:`ecglibs.embedding.models.Embedding`

    :return: Batches made from dataset with respect to batch_size
    :rtype: list[:class:`ecglibs.commons.models.dataSet`]
    """
    dtrain = layer.dtrain

    batch_size = layer.batch_size

    # Shuffle dataset
    order = layer.np_rng.permutation(len(dtrain.X))

    # Compute number of batches w.r.t. batch_size
    if not batch_size:
        batch_size = len(order)

    n_batch = len(order) // batch_size

    if not n_batch:
        n_batch = 1
        batch_size = len(order)

    # Slice to make sure split will result in equal division
    order = order[: n_batch * batch_size]

    num_classes = dtrain.Y.shape[1]

    # Set into dataSet object
    batch_dtrain = [dataSet(X_data=dtrain.X[idx], Y_data=dtrain.y[idx], num_classes=num_classes, name=str(i))
                    for i, idx in enumerate(np.split(order, n_batch))]

    return batch_dtrain
