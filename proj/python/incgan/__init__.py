# Copyright 2026 The incgan Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Class-incremental learning with exemplar or generative replay and bias correction."""

import json as _json

from ._core import (
    ContractError,
    DimensionError,
    FormatError,
    IoError,
    NumericError,
    TrainingError,
    apply_bias,
    combined_loss,
    confusion_matrix,
    cross_entropy,
    distillation_loss,
    gaussian_mixture,
    herding_order,
    predict,
    softmax,
)

__all__ = [
    "ContractError",
    "DimensionError",
    "FormatError",
    "IoError",
    "NumericError",
    "TrainingError",
    "apply_bias",
    "combined_loss",
    "confusion_matrix",
    "cross_entropy",
    "distillation_loss",
    "gaussian_mixture",
    "herding_order",
    "predict",
    "run_protocol",
    "softmax",
]


def run_protocol(**kwargs):
    """Runs the incremental protocol on the default Gaussian mixture and returns the report as a dict."""
    from ._core import _run_protocol_json

    return _json.loads(_run_protocol_json(**kwargs))
