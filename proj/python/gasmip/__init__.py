# Copyright 2026 The gasmip Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Gas network MILP linearizations and integrated dispatch models."""

from ._gasmip import (
    GridError,
    InstanceError,
    ModelError,
    abc_entry,
    benchmark_instance,
    compute_z_tables,
    generate_grid,
    interpolate_flow,
    load_instance,
    parse_instance,
    quality_curve,
    single_pipeline_stats,
    solve,
    tightness,
)

__all__ = [
    "GridError",
    "InstanceError",
    "ModelError",
    "abc_entry",
    "benchmark_instance",
    "compute_z_tables",
    "generate_grid",
    "interpolate_flow",
    "load_instance",
    "parse_instance",
    "quality_curve",
    "single_pipeline_stats",
    "solve",
    "tightness",
]
