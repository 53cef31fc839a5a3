# Copyright 2026 The Authors.
#
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

"""Connectivity, linking and minor operations on represented matroids."""

from ._core import (
    Matroid,
    MatlinkError,
    c_conn,
    c_minor,
    classify,
    extend_guts,
    find_removable,
    good_extension,
    kappa,
    linked_subsets,
    linking_certificate,
    min_separation,
    nested_sequence,
    run_command,
    run_suite,
    shrink,
    suite_names,
)

__all__ = [
    "Matroid",
    "MatlinkError",
    "c_conn",
    "c_minor",
    "classify",
    "extend_guts",
    "find_removable",
    "good_extension",
    "kappa",
    "linked_subsets",
    "linking_certificate",
    "min_separation",
    "nested_sequence",
    "run_command",
    "run_suite",
    "shrink",
    "suite_names",
]

__version__ = "0.1.0"
