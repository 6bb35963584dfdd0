from .blaschke import (BlaschkeParams, blaschke_eval, blaschke_derivative, angle_map,
                       inverse_branches, wrap_angle, principal_arg)
from .torus import TorusMapParams, torus_map
from .maps import MapSpec, iterate_trajectory, map_from_config

__all__ = ['BlaschkeParams', 'blaschke_eval', 'blaschke_derivative', 'angle_map', 'inverse_branches',
           'wrap_angle', 'principal_arg', 'TorusMapParams', 'torus_map', 'MapSpec',
           'iterate_trajectory', 'map_from_config']
