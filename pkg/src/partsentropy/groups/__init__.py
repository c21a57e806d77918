"""Finite rotation groups and the rigid-motion groups SO(n), SE(n)."""

from .finite import (
    FiniteGroup,
    check_subgroup,
    construct_finite_group,
    cyclic_subgroup,
    find_cyclic_subgroup,
    group_from_json,
    group_to_json,
    subgroup_as_group,
    subgroup_generated,
)
from .haar import (
    SHARD_SIZE,
    HaarDomain,
    MotionSamples,
    haar_sample,
    haar_volume,
    iter_shards,
    sample_motion_arrays,
    sample_shard,
)
from .rigid import (
    RigidMotion,
    RigidMotion2D,
    RigidMotion3D,
    compose,
    inverse,
    motions_close,
    quaternions_to_matrices,
    rotation_2d,
    rotation_about_axis,
    wrap_angle,
    zxz_matrix,
)

__all__ = [
    "FiniteGroup",
    "HaarDomain",
    "MotionSamples",
    "RigidMotion",
    "RigidMotion2D",
    "RigidMotion3D",
    "SHARD_SIZE",
    "check_subgroup",
    "compose",
    "construct_finite_group",
    "cyclic_subgroup",
    "find_cyclic_subgroup",
    "group_from_json",
    "group_to_json",
    "haar_sample",
    "haar_volume",
    "inverse",
    "iter_shards",
    "motions_close",
    "quaternions_to_matrices",
    "rotation_2d",
    "rotation_about_axis",
    "sample_motion_arrays",
    "sample_shard",
    "subgroup_as_group",
    "subgroup_generated",
    "wrap_angle",
    "zxz_matrix",
]
