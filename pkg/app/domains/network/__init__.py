from app.domains.network.architecture import (
    ConvSpec,
    NetworkParameters,
    build_network,
    layer_specs,
    parameter_count,
    weight_gains,
)
from app.domains.network.blocks import brb_forward, ssam_forward
from app.domains.network.generator import (
    draw_random_code,
    generate_cube,
    make_conditional_input,
    measurement_maps,
    network_forward,
    network_output,
    scaled_weights,
)

__all__ = [
    "ConvSpec",
    "NetworkParameters",
    "brb_forward",
    "build_network",
    "draw_random_code",
    "generate_cube",
    "layer_specs",
    "make_conditional_input",
    "measurement_maps",
    "network_forward",
    "network_output",
    "parameter_count",
    "scaled_weights",
    "ssam_forward",
    "weight_gains",
]
