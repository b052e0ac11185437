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

#include "core/feasibility.hpp"

#include <algorithm>

namespace rnw {

void FeasibilityModel::forbid(SubTuple sub) {
    if (sub.dims.empty()) throw ValidationError("forbidden sub-tuple must cover >= 1 dimension");
    if (sub.dims.size() != sub.classes.size())
        throw ValidationError("forbidden sub-tuple dims/classes arity mismatch");
    for (std::size_t i = 0; i + 1 < sub.dims.size(); ++i)
        if (sub.dims[i] >= sub.dims[i + 1])
            throw ValidationError("forbidden sub-tuple dimensions must be sorted and distinct");
    if (std::find(forbidden_.begin(), forbidden_.end(), sub) == forbidden_.end())
        forbidden_.push_back(std::move(sub));
}

bool FeasibilityModel::feasible(const Tuple& full) const {
    if (violates_clauses(full)) return false;
    if (predicate_ && !predicate_(full)) return false;
    return true;
}

bool FeasibilityModel::violates_clauses(const std::vector<std::size_t>& partial) const {
    for (const auto& f : forbidden_) {
        bool match = true;
        for (std::size_t i = 0; i < f.dims.size(); ++i) {
            const std::size_t d = f.dims[i];
            if (d >= partial.size() || partial[d] == kUnassigned || partial[d] != f.classes[i]) {
                match = false;
                break;
            }
        }
        if (match) return true;
    }
    return false;
}

}  // namespace rnw
