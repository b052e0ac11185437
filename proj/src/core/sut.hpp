// Copyright 2026 The revnwise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REVNWISE_CORE_SUT_HPP
#define REVNWISE_CORE_SUT_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "core/domain.hpp"
#include "core/oca.hpp"

namespace rnw {

enum class ConcurrencySafety { Safe, Serialize };

/// Aggregation policy for stochastic systems: evaluate `repetitions` times,
/// report the modal abstract tuple (ties resolve to the lexicographically
/// smallest tuple) and average distribution-valued outputs.
struct AggregationPolicy {
    std::size_t repetitions = 1;
};

/// Black-box system contract: a named input domain, named concrete outputs,
/// and a single evaluation entry point. Deterministic systems return
/// identical outputs for identical inputs; stochastic systems do so under a
/// fixed seed and fixed repetitions.
class SystemUnderTest {
public:
    virtual ~SystemUnderTest() = default;

    virtual const InputDomain& input_domain() const = 0;
    virtual const std::vector<std::string>& output_names() const = 0;
    virtual std::vector<ConcreteValue> evaluate(const InputPoint& x) = 0;

    virtual bool stochastic() const { return false; }
    virtual ConcurrencySafety concurrency() const { return ConcurrencySafety::Safe; }
    virtual AggregationPolicy aggregation() const { return {}; }
};

/// Index of each output-space dimension within a SUT's output vector,
/// resolved by name. ValidationError if a dimension has no matching output.
struct SpaceBinding {
    std::vector<std::size_t> sut_output_index;
};

SpaceBinding bind_space(const SystemUnderTest& sut, const OutputSpace& space);

/// One aggregated observation of the SUT at `x`.
struct Observation {
    std::vector<ConcreteValue> concrete;  // aligned with the space's dimensions
    Tuple tuple;
};

/// Evaluate under the SUT's aggregation policy and classify against `space`.
Observation observe(SystemUnderTest& sut, const OutputSpace& space, const SpaceBinding& binding,
                    const InputPoint& x);

/// Brute-force census: abstract-tuple preimage counts over a finite grid.
std::map<Tuple, std::uint64_t> grid_census(SystemUnderTest& sut, const OutputSpace& space,
                                           const SpaceBinding& binding, const InputGrid& grid);

}  // namespace rnw

#endif  // REVNWISE_CORE_SUT_HPP
