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

#ifndef REVNWISE_CORE_DOMAIN_HPP
#define REVNWISE_CORE_DOMAIN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/errors.hpp"

namespace rnw {

// ---------------------------------------------------------------------------
// Input side
// ---------------------------------------------------------------------------

struct ContinuousDim {
    double low = 0.0;
    double high = 1.0;
};

struct CategoricalDim {
    std::vector<std::string> labels;
};

/// One axis of the input domain: a bounded real interval or a label alphabet.
struct InputDimension {
    std::string name;
    std::variant<ContinuousDim, CategoricalDim> kind;

    bool continuous() const { return std::holds_alternative<ContinuousDim>(kind); }
    const ContinuousDim& as_continuous() const { return std::get<ContinuousDim>(kind); }
    const CategoricalDim& as_categorical() const { return std::get<CategoricalDim>(kind); }
};

/// Cartesian product of input dimensions. Immutable after validate().
struct InputDomain {
    std::vector<InputDimension> dimensions;

    std::size_t size() const { return dimensions.size(); }

    /// Throws ValidationError on non-finite or inverted bounds, empty label
    /// lists, or duplicate labels within a dimension.
    void validate() const;
};

/// A concrete point: one real per continuous dimension, one label per
/// categorical dimension, in domain order.
using InputValue = std::variant<double, std::string>;

struct InputPoint {
    std::vector<InputValue> values;

    double real(std::size_t i) const { return std::get<double>(values[i]); }
    const std::string& label(std::size_t i) const { return std::get<std::string>(values[i]); }
};

/// Throws ValidationError if the point has wrong arity, an out-of-bounds
/// real, or a label not in the dimension's alphabet.
void check_point(const InputDomain& domain, const InputPoint& point);

/// True iff every coordinate lies inside its dimension (no exception path).
bool in_domain(const InputDomain& domain, const InputPoint& point);

// ---------------------------------------------------------------------------
// Output side: concrete values and partition schemes
// ---------------------------------------------------------------------------

/// A concrete output component: a scalar, a label, or a vector (used both for
/// probability distributions and for embedding points).
using ConcreteValue = std::variant<double, std::string, std::vector<double>>;

/// Maps reals to cells [b0,b1), [b1,b2), ..., [b_{n-1}, b_n]; the final cell
/// is closed so the upper range bound belongs to the last class.
struct IntervalScheme {
    std::vector<double> breakpoints;  // size = classes + 1, strictly increasing
    std::vector<std::string> classes;
};

/// Maps concrete labels to class labels. Stored as ordered pairs so that the
/// class index order is reproducible and files round-trip losslessly.
struct CategoricalScheme {
    std::vector<std::pair<std::string, std::string>> mapping;  // concrete -> class
};

/// Partitions outcome distributions by whether one outcome exceeds the
/// dominance threshold; anything else falls into the mixed class. A threshold
/// above 0.5 means at most one outcome can dominate.
struct DominanceScheme {
    double threshold = 0.7;  // in (0.5, 1]
    std::vector<std::string> outcomes;          // outcome names, index-aligned with prob vectors
    std::vector<std::string> dominant_classes;  // class label per dominant outcome
    std::string mixed_class = "mixed";
};

/// Nearest-centroid assignment over points; ties resolve to the lowest index.
struct ClusterScheme {
    std::vector<std::vector<double>> centroids;
    std::vector<std::string> classes;  // one label per centroid
};

class PartitionScheme {
public:
    using Variant = std::variant<IntervalScheme, CategoricalScheme, DominanceScheme, ClusterScheme>;

    PartitionScheme() = default;
    explicit PartitionScheme(Variant v);

    const Variant& variant() const { return variant_; }

    /// Number of equivalence classes.
    std::size_t cardinality() const { return class_labels_.size(); }

    /// Class labels in index order (distinct by construction).
    const std::vector<std::string>& class_labels() const { return class_labels_; }

    /// Index of a class label; ValidationError if unknown.
    std::size_t class_index(const std::string& label) const;

    const char* kind_name() const;

private:
    Variant variant_;
    std::vector<std::string> class_labels_;
};

/// Assign a concrete value to exactly one class. Deterministic and total over
/// the scheme's declared range; kind mismatches and out-of-range values raise
/// ClassificationError, a probability vector off unit mass raises
/// ValidationError.
std::size_t classify(const PartitionScheme& scheme, const ConcreteValue& value);

// ---------------------------------------------------------------------------
// Output space and abstract tuples
// ---------------------------------------------------------------------------

struct OutputDimension {
    std::string name;
    PartitionScheme scheme;
};

/// Ordered list of output dimensions with their partitions. q() is the
/// dimension count; cardinalities() is the per-dimension class count vector.
struct OutputSpace {
    std::vector<OutputDimension> dimensions;

    std::size_t q() const { return dimensions.size(); }
    std::vector<std::size_t> cardinalities() const;
    std::size_t cardinality(std::size_t dim) const { return dimensions[dim].scheme.cardinality(); }
    const std::string& label(std::size_t dim, std::size_t cls) const;
    std::size_t dim_index(const std::string& name) const;

    void validate() const;
};

/// A full-width abstract tuple: one class index per output dimension.
using Tuple = std::vector<std::size_t>;

/// An abstract tuple over an explicit dimension subset (sorted indices).
struct SubTuple {
    std::vector<std::size_t> dims;     // sorted, distinct
    std::vector<std::size_t> classes;  // aligned with dims

    bool operator==(const SubTuple&) const = default;
    auto operator<=>(const SubTuple&) const = default;
};

struct SubTupleHash {
    std::size_t operator()(const SubTuple& t) const;
};

/// Product of per-dimension cardinalities (the raw tuple count).
std::uint64_t output_space_cardinality(const OutputSpace& space);

/// Component-wise classification of a concrete output vector.
/// Errors carry the failing dimension index.
Tuple abstract_output(const OutputSpace& space, const std::vector<ConcreteValue>& concrete);

/// Projection of a full tuple onto a sorted dimension subset.
SubTuple project(const Tuple& tuple, const std::vector<std::size_t>& subset);

/// Projection of an already-projected tuple onto a further subset (subset
/// indices refer to original output dimensions and must appear in `tuple`).
SubTuple project(const SubTuple& tuple, const std::vector<std::size_t>& subset);

// ---------------------------------------------------------------------------
// k-means partition construction
// ---------------------------------------------------------------------------

/// Lloyd's algorithm with seeded farthest-point initialization, a 100
/// iteration cap and 1e-9 inertia-change stop. Centroids are ordered by
/// first coordinate (ties by subsequent coordinates) and labeled
/// "cluster_0".."cluster_{k-1}", so refits with the same seed reproduce the
/// scheme bit-for-bit.
PartitionScheme fit_cluster_partition(const std::vector<std::vector<double>>& samples,
                                      std::size_t k, std::uint64_t seed);

}  // namespace rnw

#endif  // REVNWISE_CORE_DOMAIN_HPP
