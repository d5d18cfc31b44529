# EpyECG/ecglibs/network/report.py
# Local application/library specific imports
from ecglibs.commons.logs import (
    current_logs,
    dsets_samples_logs,
    epochs_table,
    headers_logs,
    network_logs,
)


# Rows in tabular report excluding headers
SIZE_TABLE = 11


def model_report(model, record, last=False):
    """Report loss and accuracy for datasets at current epoch.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :param record: History entry for current epoch.
    :type record: dict[str, float]

    :param last: Whether this is the last epoch of training, defaults to `False`.
    :type last: bool, optional
    """
    if not model.se_hPars['verbose']:
        return None

    # Initialize list of rows with headers
    if not getattr(model, 'current_logs', None):
        model.current_logs = [headers_logs(model)]

    model.current_logs.append(current_logs(model, record))

    # Report on terminal
    if len(model.current_logs) == SIZE_TABLE + 1 or last:

        print('\n')
        print(epochs_table(model.current_logs), flush=True)

        # Clear-up
        del model.current_logs

    return None


def initialize_model_report(model):
    """Report datasets and model architecture before training.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`
    """
    if not model.se_hPars['verbose']:
        return None

    dsets = model.embedding.dsets

    print(dsets_samples_logs(dsets, model.embedding.batch_size).draw())
    print(network_logs(model.network).draw())

    return None
