# EpyECG/ecglive/synthetic_identification/train.py
# Standard library imports
import os

# Related third party imports
import numpy as np

# Local application/library specific imports
import ecglibs.initialize
from ecglibs.commons.library import (
    read_model,
    write_model,
)
from ecglibs.commons.plot import pyplot_history
from ecglibs.evaluation.experiment import (
    ExperimentData,
    identify,
    labeled_set,
    run_experiment,
    train_predictor,
)
from ecglibs.evaluation.report import render_report
from ecglibs.evaluation.splits import stratified_split
from ecglibs.network.builders import build_standard_cnn
from prepare_dataset import prepare_dataset
from settings import (
    se_corpus,
    se_hPars,
)


########################## CONFIGURE ##########################
np.set_printoptions(threshold=10)

np.seterr(all='warn')

os.makedirs('models', exist_ok=True)
os.makedirs('plots', exist_ok=True)


############################ DATASET ##########################
beats, roster = prepare_dataset(se_corpus, seed=1)

data = ExperimentData(beats, roster)


####################### BUILD AND TRAIN MODEL #################

### Standard CNN on rest beats

T = data.num_target
labels = {sid: data.labels[sid] for sid in data.target_ids}

rng = np.random.default_rng(1)

tr_idx, val_idx = stratified_split([labels[beat.subject_id] for beat in data.train], 0.2, rng)

model = build_standard_cnn(110, T, seed=1, se_hPars=se_hPars.copy())

model.train(labeled_set([data.train[i] for i in tr_idx], labels, T, 'dtrain'),
            labeled_set([data.train[i] for i in val_idx], labels, T, 'dval'))

pyplot_history(model.history, path=os.path.join('plots', model.name + '.png'), title=model.name)

idr_by_condition, _ = identify(model, data)

for condition, idr in idr_by_condition.items():
    print(condition, None if idr is None else float(idr))


### Dual expert with personalized augmentation and domain adaptation

model = train_predictor('DE-PADA', False, data, seed=1, se_hPars=se_hPars.copy())


### Write/read model

write_model(model, os.path.join('models', 'DE-PADA.pickle'))

model = read_model(os.path.join('models', 'DE-PADA.pickle'))

idr_by_condition, _ = identify(model, data)

for condition, idr in idr_by_condition.items():
    print(condition, None if idr is None else float(idr))


### Repeated runs

se_hPars['verbose'] = False

reports = [run_experiment(ablation_id, False, data, n_runs=3, base_seed=0, se_hPars=se_hPars.copy())
           for ablation_id in ['SCR', 'ACR', 'DE-PADA']]

print(render_report(reports))
