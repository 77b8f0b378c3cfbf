"""Channel and beampattern simulation for antenna arrays whose per-element
radiation patterns are selected from a finite dictionary of states."""

from .geometry import ArrayGeometry, DirectionAngle, spatial_angles, steering_vector
from .patterns import (
    ElementPattern,
    IsotropicPattern,
    PatternDictionary,
    PatternDomainError,
    PatternFileError,
    SteeredCosinePattern,
    TabulatedPattern,
    amplitude_from_dbi,
    dbi_from_amplitude,
    default_dictionary,
    load_tabulated_pattern,
    selection_matrix,
)
from .channel import (
    ChannelRealization,
    PathSet,
    PropagationPath,
    ScenarioParams,
    channel_conventional,
    channel_era_direct,
    channel_era_factored,
    draw_noise,
    draw_scenario,
    em_domain_channel,
    normalization_factor,
    realize_channels,
    trial_seed,
)
from .beamforming import (
    BeampatternSamples,
    LinkBudget,
    SearchSpaceError,
    SidelobeMetrics,
    azimuth_cut,
    beampattern,
    matched_precoder,
    peak_in_window,
    phase_gradient_precoder,
    power_db,
    receive_signal,
    select_patterns_exhaustive,
    select_patterns_greedy,
    sidelobe_metrics,
    snr_and_rate,
)
from .config import (
    ConfigError,
    RunConfig,
    build_dictionary,
    build_scenario,
    default_config,
    parse_config,
    target_direction,
)
from .reports import RunSummary

__version__ = "0.1.0"
