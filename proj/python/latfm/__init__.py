"""Fourier-Mukai partner counts and lattice tools for polarized K3 surfaces."""
from ._core import (
    LatfmError,
    build_family,
    determinant,
    disc_iso_alpha,
    discriminant_module,
    distinct_prime_count,
    find_isometry,
    fm_count,
    fm_count_via_cosets,
    k3_gram,
    least_odd_prime_above,
    member_gram,
    modules_isometric,
    moduli_shadow,
    mukai_classes,
    mukai_gram,
    mukai_vectors,
    necessary_conditions,
    orthogonal_group_order,
    polarization_orbits,
    selftest,
    signature,
)

__all__ = [
    "LatfmError",
    "build_family",
    "determinant",
    "disc_iso_alpha",
    "discriminant_module",
    "distinct_prime_count",
    "find_isometry",
    "fm_count",
    "fm_count_via_cosets",
    "k3_gram",
    "least_odd_prime_above",
    "member_gram",
    "modules_isometric",
    "moduli_shadow",
    "mukai_classes",
    "mukai_gram",
    "mukai_vectors",
    "necessary_conditions",
    "orthogonal_group_order",
    "polarization_orbits",
    "selftest",
    "signature",
]
