"""Procedural explosion synthesis, sound matching, and evaluation tools."""

from .audio import AudioBuffer
from .cepstrum import CepstrumConfig, mcd, mel_cepstra
from .dataset import DatasetManifest, generate_dataset
from .engine import RenderWorkspace, render, render_component
from .errors import (
    ParameterError,
    SilentAudioError,
    UndefinedCorrelationError,
    WavFormatError,
)
from .evaluate import (
    CorrelationReport,
    EmbeddingStats,
    control_correlation_all,
    control_correlation_single,
    embed_clip,
    frechet_embedding_distance,
    mmd_rbf,
    spearman,
)
from .features import TimbralFeatures, extract_features
from .matching import MatchConfig, MatchResult, match_sound, perturb, sensitivity
from .params import (
    PARAM_FIELDS,
    PARAM_LABELS,
    ExplosionParams,
    PhysicalParams,
    RenderConfig,
    map_to_physical,
)
from .prng import SplitMix64, prng_next
from .spectral import Spectrogram, StftConfig, multires_spectral_loss, stft_magnitude
from .wavio import load_real, read_wav, resample_sinc, write_wav

__version__ = "0.1.0"
