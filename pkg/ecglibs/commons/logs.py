# EpyECG/ecglibs/commons/logs.py
# Standard library imports
import traceback
import warnings
import sys

# Related third party imports
from pygments import highlight
from pygments.formatters import TerminalTrueColorFormatter
from pygments.lexers import get_lexer_by_name
from termcolor import cprint, colored
from texttable import Texttable
from tabulate import tabulate


# You may edit the colorscheme to fulfill your preference
COLORS = [
    'white',
    'green',
    'red',
    'magenta',
    'cyan',
    'yellow',
    'blue',
    'grey',
]


class PipelineWarning(UserWarning):
    """
    Warning status emitted by processing stages which degrade gracefully.
    """


def process_logs(msg, level=0):
    """Pretty print of EpyECG events.

    :param msg: Message to print on terminal.
    :type msg: str

    :param level: Set color for print, defaults to 0 which renders white.
    :type level: int, optional
    """
    cprint(msg, COLORS[level], attrs=['bold'])

    return None


def warning_logs(msg):
    """Print a warning in yellow and raise it as :class:`PipelineWarning`.

    :param msg: Message describing the degraded condition.
    :type msg: str
    """
    cprint('/!\\ ' + msg, COLORS[5], attrs=['bold'], file=sys.stderr)

    warnings.warn(msg, PipelineWarning, stacklevel=3)

    return None


def headers_logs(model):
    """Generate headers to log epochs, learning rate, training and validation metrics.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :return: Headers for the tabular epoch report.
    :rtype: list[str]
    """
    headers = [colored('epoch', COLORS[0], attrs=['bold'])]

    headers.append(colored('lrate', COLORS[0], attrs=['bold']))

    # Iterate over monitored quantities
    for i, s in enumerate(['loss', 'accuracy']):

        i = (i+1) % len(COLORS)

        headers.append(colored('%s\ndtrain' % s, COLORS[i], attrs=['bold']))
        headers.append(colored('%s\ndval' % s, COLORS[i], attrs=['bold']))

    headers.append(colored('Experiment', COLORS[0], attrs=[]))

    return headers


def current_logs(model, record):
    """Build logs with respect to headers for current epoch.

    :param model: An instance of network.
    :type model: :class:`ecglibs.network.models.ModelGraph`

    :param record: History entry for current epoch.
    :type record: dict[str, float]

    :return: Logs for current epoch.
    :rtype: list[str]
    """
    log = [colored(record['epoch'], COLORS[0], attrs=['bold'])]

    log.append(colored('{:.2e}'.format(record['lrate']), COLORS[0], attrs=['bold']))

    for i, s in enumerate(['loss', 'accuracy']):

        i = (i+1) % len(COLORS)

        log.append(colored('%.3f' % record['train_' + s], COLORS[i], attrs=['bold']))
        log.append(colored('%.3f' % record['val_' + s], COLORS[i], attrs=['bold']))

    log.append(colored(model.name, COLORS[0], attrs=[]))

    return log


def epochs_table(rows):
    """Render tabular epoch logs.

    :param rows: Headers followed by epoch rows.
    :type rows: list[list[str]]

    :return: Rendered table.
    :rtype: str
    """
    logs = tabulate(rows,
                    headers='firstrow',
                    numalign='center',
                    stralign='center',
                    tablefmt='pretty',
                    )

    return logs


def network_logs(network):
    """Build tabular logs of current network architecture and shapes.

    :param network: Summary of layers in network.
    :type network: dict[int, dict[str, str or dict]]

    :return: Logs for network architecture and shapes.
    :rtype: :class:`texttable.Texttable`
    """
    headers = [
        'ID',
        'Layer',
        'Trainable',
        'Dimensions',
        'FW_Shapes',
    ]

    logs = Texttable()

    logs.add_row(headers)

    # Iterate over values (layers) in network dictionary
    for i, layer in enumerate(network.values()):

        log = []

        log.append(str(i))
        log.append(layer['Layer'])
        log.append(str(layer['Trainable']))

        for key in ['Dimensions', 'FW_Shapes']:
            log.append('\n'.join([k + ': ' + str(v) for k, v in layer[key].items()]))

        logs.add_row(log)

    logs.set_max_width(0)

    return logs


def dsets_samples_logs(dsets, batch_size):
    """Build tabular logs describing datasets.

    :param dsets: Training and validation sets.
    :type dsets: list[:class:`ecglibs.commons.models.dataSet`]

    :param batch_size: Number of samples per training batch.
    :type batch_size: int

    :return: Logs describing datasets.
    :rtype: :class:`texttable.Texttable`
    """
    logs = Texttable()

    logs.add_row([dset.name for dset in dsets] + ['batch\nsize', 'N_LABELS'])

    log = [len(dset.ids) for dset in dsets]

    log.append(batch_size)
    log.append(dsets[0].Y.shape[1])

    logs.add_row(log)

    logs.set_max_width(0)

    return logs


def set_highlighted_excepthook():
    """Lexer to pretty print tracebacks.
    """
    # Get lexer from pigmentize/minted
    lexer = get_lexer_by_name('py3tb')

    # Colorscheme
    formatter = TerminalTrueColorFormatter(bg='dark', style='fruity')

    # Callback function
    def myexcepthook(type, value, tb):
        tbtext = ''.join(traceback.format_exception(type, value, tb))
        sys.stderr.write(highlight(tbtext, lexer, formatter))

        return None

    sys.excepthook = myexcepthook    # This erase the standard excepthook with the callback

    return None
