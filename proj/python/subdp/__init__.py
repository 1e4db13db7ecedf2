# Copyright 2026 The SubDP Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Private sublinear estimators with data-dependent noise."""

from subdp._core import (
    BudgetExhausted,
    Error,
    Graph,
    InvalidParameter,
    OracleFailure,
    ParseError,
    RankSession,
    RegimeViolation,
    __version__,
    audit,
    boost_run_count,
    component_count,
    designated_audits,
    exact_f2,
    exact_rank,
    laplace_scale,
    maximum_matching_size,
    private_avg_degree,
    private_cc,
    private_f2,
    private_matching,
    sample_laplace,
    sample_zspareto,
    verify_integral_bound,
    zspareto_cdf,
    zspareto_pdf,
    zspareto_scale,
)

__all__ = [
    "BudgetExhausted",
    "Error",
    "Graph",
    "InvalidParameter",
    "OracleFailure",
    "ParseError",
    "RankSession",
    "RegimeViolation",
    "__version__",
    "audit",
    "boost_run_count",
    "component_count",
    "designated_audits",
    "exact_f2",
    "exact_rank",
    "laplace_scale",
    "maximum_matching_size",
    "private_avg_degree",
    "private_cc",
    "private_f2",
    "private_matching",
    "sample_laplace",
    "sample_zspareto",
    "verify_integral_bound",
    "zspareto_cdf",
    "zspareto_pdf",
    "zspareto_scale",
]
