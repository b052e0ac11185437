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

#ifndef REVNWISE_CORE_FEASIBILITY_HPP
#define REVNWISE_CORE_FEASIBILITY_HPP

#include <functional>
#include <vector>

#include "core/domain.hpp"

namespace rnw {

/// Feasibility constraints over abstract tuples: explicit forbidden
/// sub-tuples plus an optional full-tuple predicate hook. A full tuple is
/// feasible iff it contains no forbidden sub-tuple and the predicate (when
/// present) accepts it.
class FeasibilityModel {
public:
    FeasibilityModel() = default;

    void forbid(SubTuple sub);
    void set_predicate(std::function<bool(const Tuple&)> pred) { predicate_ = std::move(pred); }

    const std::vector<SubTuple>& forbidden() const { return forbidden_; }
    bool has_predicate() const { return static_cast<bool>(predicate_); }

    /// True iff no forbidden sub-tuple is embedded in the full tuple and the
    /// predicate (if any) accepts it.
    bool feasible(const Tuple& full) const;

    /// Clause-only check usable on partial assignments: does the assignment
    /// (value per dim, npos = unassigned) already embed a forbidden sub-tuple?
    bool violates_clauses(const std::vector<std::size_t>& partial) const;

    static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

private:
    std::vector<SubTuple> forbidden_;
    std::function<bool(const Tuple&)> predicate_;
};

}  // namespace rnw

#endif  // REVNWISE_CORE_FEASIBILITY_HPP
