# EpyECG/ecglive/synthetic_identification/prepare_dataset.py
# Standard library imports
import os

# Local application/library specific imports
from ecglibs.beats.pipeline import (
    gate_dataset,
    preprocess_recording,
)
from ecglibs.commons.library import (
    read_beats,
    read_roster,
    write_beats,
    write_roster,
)
from ecglibs.commons.logs import process_logs
from ecglibs.synthetic.generator import generate_corpus


def extract_beats(recordings, roster):
    """Extract and gate beats of synthetic recordings.

    :param recordings: Recordings with their ground truth.
    :type recordings: list[tuple]

    :param roster: Role by subject identifier.
    :type roster: dict[str, str]

    :return: Retained beats.
    :rtype: list[:class:`ecglibs.beats.models.BeatTemplate`]
    """
    beats = []

    for rec, _ in recordings:

        rec_beats, report = preprocess_recording(rec)

        beats.extend(rec_beats)

    retained = gate_dataset(beats, roster)

    process_logs('Beats: %s extracted, %s retained' % (len(beats), len(retained)), level=1)

    return retained


def prepare_dataset(se_corpus, seed=1, path='datasets'):
    """Synthesize a corpus and extract its beat dataset, cached on disk.

    :param se_corpus: Corpus settings.
    :type se_corpus: dict

    :param seed: Corpus seed, defaults to 1.
    :type seed: int, optional

    :param path: Directory of cached dataset, defaults to 'datasets'.
    :type path: str, optional

    :return: Beats and roster.
    :rtype: tuple[list[:class:`ecglibs.beats.models.BeatTemplate`], dict[str, str]]
    """
    beats_path = os.path.join(path, 'beats_%s.csv' % seed)
    roster_path = os.path.join(path, 'roster_%s.csv' % seed)

    if os.path.exists(beats_path) and os.path.exists(roster_path):
        return read_beats(beats_path), read_roster(roster_path)

    os.makedirs(path, exist_ok=True)

    recordings, roster, _ = generate_corpus(se_corpus['n_subjects'], se_corpus['n_auxiliary'],
                                            seed=seed, se_corpus=se_corpus)

    beats = extract_beats(recordings, roster)

    write_beats(beats, beats_path)
    write_roster(roster, roster_path)

    return beats, roster
