# EpyECG/tests/conftest.py
# Related third party imports
import numpy as np
import pytest

# Local application/library specific imports
from ecglibs.beats.models import BeatTemplate
from ecglibs.synthetic.generator import generate_recording
from ecglibs.synthetic.models import SubjectParams


WAVES = {
    'P': (0.12, -170., 22.),
    'Q': (-0.10, -30., 8.),
    'R': (1.00, 0., 10.),
    'S': (-0.20, 35., 10.),
    'T': (0.35, 0., 40.),
}


@pytest.fixture
def subject_params():
    """Subject with T center at 320 ms at 60 bpm and -1 ms per bpm.
    """
    params = SubjectParams(waves=WAVES,
                           t_slope=-1.0,
                           t_offset=320.,
                           hr_rest=(60., 80.),
                           hr_active=(120., 130.),
                           rng_seed=7)

    return params


@pytest.fixture
def make_beat():
    """Factory of 110-sample beats with an R spike at 35 and a Gaussian T-wave.
    """
    def factory(t_peak_in_beat=75, hr=70., amplitude=0.4, width=4., subject_id='T01',
                session='S1', condition='sit', t_peak_rel_r=None, source_time_s=0.):
        n = np.arange(110)

        samples = amplitude * np.exp(-0.5 * ((n - t_peak_in_beat) / width) ** 2)
        samples[35] = 1.5

        beat = BeatTemplate(samples=samples,
                            r_index=35,
                            heart_rate_bpm=hr,
                            subject_id=subject_id,
                            session=session,
                            condition=condition,
                            source_time_s=source_time_s,
                            t_peak_rel_r=t_peak_rel_r)

        return beat

    return factory


@pytest.fixture
def clean_recording(subject_params):
    """Noise-free 30 s sitting recording with its ground truth.
    """
    rng = np.random.default_rng(0)

    rec, truth = generate_recording(subject_params, 'sit', 30., snr_db=np.inf, rng=rng, subject_id='T01')

    return rec, truth
