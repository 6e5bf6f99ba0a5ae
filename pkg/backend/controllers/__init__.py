"""Controllers package"""
from . import (
    dirichlet_controller,
    discretize_controller,
    expansion_controller,
    extended_controller,
    fredholm_controller,
    identities_controller,
    scattering_controller,
    spectral_controller,
    verify_controller
)

# Registration order is the order of `--help`
CONTROLLERS = [
    fredholm_controller,
    discretize_controller,
    spectral_controller,
    identities_controller,
    extended_controller,
    scattering_controller,
    expansion_controller,
    dirichlet_controller,
    verify_controller,
]


def register_all(subparsers, parents):
    """Add every sub-command parser"""
    for controller in CONTROLLERS:
        controller.register(subparsers, parents)


__all__ = ['CONTROLLERS', 'register_all']
