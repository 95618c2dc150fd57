"""Numerics for translation-modulation invariant spaces and modulation spaces.

Weight sequences and weight functions, a periodic-grid short-time Fourier
transform with exact discrete inversion, weighted mixed and tensor norms on
the time-frequency plane, and checks of the norm inequalities that tie them
together.
"""
from .errors import *  # noqa: F401,F403
from .modspace import (
    ModulationSpaceSpec,
    field_norm,
    modulation_norm,
    reduced_weights,
    verify_embedding_max,
    verify_embedding_min,
    window_equivalence_check,
)
from .signal import (
    Grid1D,
    MixedNormSpec,
    SampledField,
    SampledSignal,
    convolve,
    fourier,
    inverse_fourier,
    lp_norm,
    mixed_norm,
    modulate,
    multiply,
    translate,
)
from .stft import TimeFrequencyMatrix, analyze, equivalence_constant, gaussian_window, synthesize
from .tensor import (
    Decomposition,
    KernelMatrix,
    frobenius_norm,
    nuclear_norm,
    pi_upper_bound,
    separation_demo,
    spectral_norm,
    verify_elementary_synthesis,
    young_exponent,
)
from .weights import (
    Exponential,
    Polynomial,
    Product,
    SeriesOmega,
    Table,
    WeightSequence,
    associated_function,
    check_m1,
    check_m2,
    check_m6,
    eval_weight,
    translation_weight,
)

__version__ = "0.1.0"
