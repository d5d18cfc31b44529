# EpyECG/tests/test_config.py
# Standard library imports
import json

# Related third party imports
import pytest

# Local application/library specific imports
from ecglibs.commons.errors import ConfigurationError
from ecglibs.config import RunConfig
from ecglibs.settings import se_augment


def test_defaults():
    config = RunConfig()

    assert config['filter']['high_cut_hz'] == 40.
    assert config['augment']['t_g_min'] == 29
    assert config['seed'] == 0
    assert config.split_plan().val_fraction == 0.2
    assert config.detection_config().averaging_window_W == 10


def test_document_overrides_defaults_without_touching_settings():
    config = RunConfig({'augment': {'hr_limit': 150.}, 'seed': 3})

    assert config['augment']['hr_limit'] == 150.
    assert config['augment']['t_p_min'] == 25
    assert config['seed'] == 3
    assert se_augment['hr_limit'] == 140.


@pytest.mark.parametrize('document, key', [
    ({'augment': {'hr_lmit': 150.}}, 'augment.hr_lmit'),
    ({'beat': {}}, 'beat'),
    ({'filter': {'high_cut_hz': 120.}}, 'filter.'),
    ({'augment': {'t_max_source': 'sitting'}}, 'augment.t_max_source'),
    ({'augment': {'uniform_range': [20, 73]}}, 'augment.uniform_range'),
    ({'train': {'batch_size': 0}}, 'train.batch_size'),
    ({'train': {'schedule': 'cosine'}}, 'train.schedule'),
    ({'architecture': {'kernels': [7, 5]}}, 'architecture.channels'),
    ({'architecture': {'dropout': 1.}}, 'architecture.dropout'),
    ({'split': {'val_fraction': 0.}}, 'split.val_fraction'),
    ({'corpus': {'n_subjects': 1}}, 'corpus.n_subjects'),
    ({'experiment': {'n_runs': 0}}, 'experiment.n_runs'),
    ({'experiment': {'ablation': 'SCR', 'classifier_augmented': True}}, 'experiment.classifier_augmented'),
    ({'threads': 0}, 'threads'),
])
def test_invalid_values_name_their_key(document, key):
    with pytest.raises(ConfigurationError) as error:
        RunConfig(document)

    assert (error.value.key or '').startswith(key)


def test_flags_take_precedence():
    config = RunConfig({'experiment': {'n_runs': 5}})

    config.override({'experiment.n_runs': 2, 'experiment.base_seed': None, 'seed': 9})

    assert config['experiment']['n_runs'] == 2
    assert config['experiment']['base_seed'] == 0
    assert config['seed'] == 9


def test_digest_is_stable():
    a = RunConfig({'seed': 1, 'augment': {'hr_limit': 150.}})
    b = RunConfig({'augment': {'hr_limit': 150.}, 'seed': 1})

    assert a.digest() == b.digest()
    assert a.digest() != RunConfig().digest()
    assert len(a.digest()) == 64


def test_from_file(tmp_path):
    path = tmp_path / 'config.json'
    path.write_text(json.dumps({'beats': {'zscore_threshold': 2.5}}))

    config = RunConfig.from_file(str(path))

    assert config['beats']['zscore_threshold'] == 2.5
    assert json.loads(config.dumps())['beats']['zscore_threshold'] == 2.5


@pytest.mark.parametrize('text', ['{"seed": ', '[1, 2]'])
def test_from_file_rejects_malformed_documents(tmp_path, text):
    path = tmp_path / 'config.json'
    path.write_text(text)

    with pytest.raises(ConfigurationError) as error:
        RunConfig.from_file(str(path))

    assert error.value.key == 'config'
