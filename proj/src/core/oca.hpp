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

#ifndef REVNWISE_CORE_OCA_HPP
#define REVNWISE_CORE_OCA_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/domain.hpp"
#include "core/feasibility.hpp"

namespace rnw {

// ---------------------------------------------------------------------------
// Feasible tuple enumeration
// ---------------------------------------------------------------------------

/// Feasible s-tuples for one dimension subset S. `tuples` hold assignments
/// confirmed feasible; `unconfirmed` appear only under a predicate hook when
/// witness search was sampled rather than exhaustive and found no witness.
struct FeasibleSet {
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<std::vector<std::size_t>> unconfirmed;
};

struct FeasibleEnumeration {
    std::size_t strength = 0;
    std::vector<FeasibleSet> subsets;  // all C(q,s) subsets in lexicographic order
    bool witness_exhaustive = true;
    std::uint64_t witness_samples = 0;

    std::size_t total_confirmed() const;
    std::size_t total_unconfirmed() const;
};

struct EnumerationOptions {
    std::uint64_t enumeration_guard = 10'000'000;  // max s-tuples across subsets
    std::uint64_t exhaustive_limit = 1'000'000;    // full-space size for exhaustive witness search
    std::uint64_t sample_budget = 200'000;         // witness samples when above the limit
    std::uint64_t seed = 0;                        // for sampled witness search
};

/// Enumerate, per subset S of size s, the s-tuples not excluded by forbidden
/// sub-tuples. With a predicate hook installed, feasibility is established by
/// searching for a feasible full-tuple witness; witness-less tuples are
/// dropped when the search was exhaustive and reported unconfirmed otherwise.
FeasibleEnumeration enumerate_feasible_tuples(const std::vector<std::size_t>& cardinalities,
                                              std::size_t strength,
                                              const FeasibilityModel& feas,
                                              const EnumerationOptions& opts = {});

FeasibleEnumeration enumerate_feasible_tuples(const OutputSpace& space, std::size_t strength,
                                              const FeasibilityModel& feas,
                                              const EnumerationOptions& opts = {});

// ---------------------------------------------------------------------------
// Output covering arrays
// ---------------------------------------------------------------------------

struct OcaMetadata {
    std::string generator = "greedy-aetg";
    std::uint64_t seed = 0;
    std::size_t candidates = 50;
    std::size_t unconfirmed_targets = 0;  // predicate tuples excluded for lack of a witness
};

/// M x q matrix of class indices covering every confirmed-feasible s-tuple.
struct OutputCoveringArray {
    std::vector<Tuple> rows;
    std::size_t strength = 2;
    std::vector<std::string> dim_names;
    std::vector<std::vector<std::string>> class_labels;  // per dimension, index order
    OcaMetadata meta;

    std::size_t row_count() const { return rows.size(); }
    std::size_t q() const { return dim_names.size(); }
    std::vector<std::size_t> cardinalities() const;

    /// Throws ValidationError when dimension names or class alphabets do not
    /// match the given space.
    void check_compatible(const OutputSpace& space) const;
};

struct GeneratorConfig {
    std::uint64_t seed = 0;
    std::size_t candidates = 50;  // candidate completions scored per row
    EnumerationOptions enumeration;
};

/// Greedy one-row-at-a-time construction: each new row is the best of
/// `candidates` feasible completions by newly covered s-tuples, ties broken
/// by the lexicographically smallest row. Deterministic given the seed.
/// Throws ValidationError listing any confirmed-feasible s-tuple that has no
/// feasible full-width extension.
OutputCoveringArray generate_oca(const OutputSpace& space, std::size_t strength,
                                 const FeasibilityModel& feas, const GeneratorConfig& config = {});

struct VerificationReport {
    std::vector<SubTuple> uncovered;        // confirmed-feasible s-tuples missing from all rows
    std::vector<std::size_t> infeasible_rows;
    std::size_t unconfirmed_targets = 0;

    bool ok() const { return uncovered.empty() && infeasible_rows.empty(); }
};

/// Exhaustive cross-check of every confirmed-feasible s-tuple against every
/// row, plus per-row feasibility. Empty report iff the array is a valid OCA.
VerificationReport verify_oca(const OutputCoveringArray& oca, const FeasibilityModel& feas,
                              const EnumerationOptions& opts = {});

// ---------------------------------------------------------------------------
// Size bounds and preimage counts
// ---------------------------------------------------------------------------

/// Map from an s-tuple to its preimage cardinality on some input enumeration.
using PreimageCounts = std::map<SubTuple, std::uint64_t>;

/// Without preimage counts: max over subsets S of |F_S| (the per-subset
/// demand, which reduces to v^s in the uniform unconstrained case). With
/// counts: max over S of ceil(|F_S| / max_z lambda(z_S)), missing entries
/// treated as 1.
std::uint64_t size_lower_bound(const OutputSpace& space, std::size_t strength,
                               const FeasibilityModel& feas,
                               const std::optional<PreimageCounts>& preimages = std::nullopt,
                               const EnumerationOptions& opts = {});

/// Finite input enumeration: one axis of sample values per input dimension;
/// points are the Cartesian product.
struct InputGrid {
    std::vector<std::vector<InputValue>> axes;

    std::uint64_t total() const;
    InputPoint point(std::uint64_t index) const;
};

/// Builds a uniform grid: `points_per_axis[i]` evenly spaced values for
/// continuous dimensions (all labels for categorical ones).
InputGrid uniform_grid(const InputDomain& domain, const std::vector<std::size_t>& points_per_axis);

/// Exact count of grid points whose abstract output projects onto `target`.
/// `abstract_eval` is the composition of the system under test with the
/// output space's classifiers. Grids above 10^6 points are rejected.
std::uint64_t preimage_count(const std::function<Tuple(const InputPoint&)>& abstract_eval,
                             const SubTuple& target, const InputGrid& grid);

}  // namespace rnw

#endif  // REVNWISE_CORE_OCA_HPP
