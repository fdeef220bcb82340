import numpy as np
import pytest

from pyrosynth.audio import AudioBuffer


@pytest.fixture
def sine_24k():
    def make(freq_hz, duration_s=3.0, amp=0.8, sr=24000):
        t = np.arange(round(sr * duration_s)) / sr
        return AudioBuffer(sr, amp * np.sin(2 * np.pi * freq_hz * t))

    return make
