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

#include "core/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

#include "core/rng.hpp"

namespace rnw {

namespace {

std::string kind_of(const ConcreteValue& v) {
    if (std::holds_alternative<double>(v)) return "real";
    if (std::holds_alternative<std::string>(v)) return "label";
    return "vector";
}

}  // namespace

// ---------------------------------------------------------------------------
// InputDomain / InputPoint
// ---------------------------------------------------------------------------

void InputDomain::validate() const {
    if (dimensions.empty()) throw ValidationError("input domain has no dimensions");
    for (std::size_t i = 0; i < dimensions.size(); ++i) {
        const auto& d = dimensions[i];
        if (d.continuous()) {
            const auto& c = d.as_continuous();
            if (!std::isfinite(c.low) || !std::isfinite(c.high))
                throw ValidationError("dimension " + std::to_string(i) + ": bounds must be finite");
            if (!(c.low < c.high))
                throw ValidationError("dimension " + std::to_string(i) + ": lower bound must be < upper bound");
        } else {
            const auto& labels = d.as_categorical().labels;
            if (labels.empty())
                throw ValidationError("dimension " + std::to_string(i) + ": categorical dimension needs >= 1 label");
            std::unordered_set<std::string> seen(labels.begin(), labels.end());
            if (seen.size() != labels.size())
                throw ValidationError("dimension " + std::to_string(i) + ": duplicate categorical labels");
        }
    }
}

void check_point(const InputDomain& domain, const InputPoint& point) {
    if (point.values.size() != domain.size())
        throw ValidationError("input point arity " + std::to_string(point.values.size()) +
                              " does not match domain arity " + std::to_string(domain.size()));
    for (std::size_t i = 0; i < domain.size(); ++i) {
        const auto& d = domain.dimensions[i];
        if (d.continuous()) {
            if (!std::holds_alternative<double>(point.values[i]))
                throw ValidationError("dimension " + std::to_string(i) + ": expected a real value");
            double v = point.real(i);
            const auto& c = d.as_continuous();
            if (!(v >= c.low && v <= c.high))
                throw ValidationError("dimension " + std::to_string(i) + ": value out of bounds");
        } else {
            if (!std::holds_alternative<std::string>(point.values[i]))
                throw ValidationError("dimension " + std::to_string(i) + ": expected a label");
            const auto& labels = d.as_categorical().labels;
            if (std::find(labels.begin(), labels.end(), point.label(i)) == labels.end())
                throw ValidationError("dimension " + std::to_string(i) + ": unknown label '" + point.label(i) + "'");
        }
    }
}

bool in_domain(const InputDomain& domain, const InputPoint& point) {
    try {
        check_point(domain, point);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// PartitionScheme
// ---------------------------------------------------------------------------

PartitionScheme::PartitionScheme(Variant v) : variant_(std::move(v)) {
    if (const auto* iv = std::get_if<IntervalScheme>(&variant_)) {
        if (iv->classes.empty()) throw ValidationError("interval scheme has no classes");
        if (iv->breakpoints.size() != iv->classes.size() + 1)
            throw ValidationError("interval scheme needs classes+1 breakpoints");
        for (std::size_t i = 0; i + 1 < iv->breakpoints.size(); ++i) {
            if (!(iv->breakpoints[i] < iv->breakpoints[i + 1]))
                throw ValidationError("interval breakpoints must be strictly increasing");
        }
        for (double b : iv->breakpoints)
            if (!std::isfinite(b)) throw ValidationError("interval breakpoints must be finite");
        class_labels_ = iv->classes;
    } else if (const auto* cat = std::get_if<CategoricalScheme>(&variant_)) {
        if (cat->mapping.empty()) throw ValidationError("categorical scheme has an empty mapping");
        std::unordered_set<std::string> keys;
        for (const auto& [concrete, cls] : cat->mapping) {
            if (!keys.insert(concrete).second)
                throw ValidationError("categorical scheme maps '" + concrete + "' twice");
            if (std::find(class_labels_.begin(), class_labels_.end(), cls) == class_labels_.end())
                class_labels_.push_back(cls);  // class order = first appearance
        }
    } else if (const auto* dom = std::get_if<DominanceScheme>(&variant_)) {
        if (!(dom->threshold > 0.5 && dom->threshold <= 1.0))
            throw ValidationError("dominance threshold must lie in (0.5, 1]");
        if (dom->outcomes.size() < 2) throw ValidationError("dominance scheme needs >= 2 outcomes");
        if (dom->dominant_classes.size() != dom->outcomes.size())
            throw ValidationError("dominance scheme needs one class per outcome");
        class_labels_ = dom->dominant_classes;
        class_labels_.push_back(dom->mixed_class);
    } else {
        const auto& cl = std::get<ClusterScheme>(variant_);
        if (cl.centroids.empty()) throw ValidationError("cluster scheme has no centroids");
        if (cl.classes.size() != cl.centroids.size())
            throw ValidationError("cluster scheme needs one class per centroid");
        const std::size_t dim = cl.centroids.front().size();
        if (dim == 0) throw ValidationError("cluster centroids must be non-empty points");
        for (const auto& c : cl.centroids)
            if (c.size() != dim) throw ValidationError("cluster centroids must share one dimensionality");
        class_labels_ = cl.classes;
    }

    std::unordered_set<std::string> seen;
    for (const auto& l : class_labels_)
        if (!seen.insert(l).second)
            throw ValidationError("duplicate class label '" + l + "' within a scheme");
}

std::size_t PartitionScheme::class_index(const std::string& label) const {
    auto it = std::find(class_labels_.begin(), class_labels_.end(), label);
    if (it == class_labels_.end()) throw ValidationError("unknown class label '" + label + "'");
    return static_cast<std::size_t>(it - class_labels_.begin());
}

const char* PartitionScheme::kind_name() const {
    if (std::holds_alternative<IntervalScheme>(variant_)) return "interval";
    if (std::holds_alternative<CategoricalScheme>(variant_)) return "categorical";
    if (std::holds_alternative<DominanceScheme>(variant_)) return "dominance";
    return "cluster";
}

std::size_t classify(const PartitionScheme& scheme, const ConcreteValue& value) {
    return std::visit(
        [&](const auto& s) -> std::size_t {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, IntervalScheme>) {
                if (!std::holds_alternative<double>(value))
                    throw ClassificationError("interval scheme expects a real, got " + kind_of(value));
                const double v = std::get<double>(value);
                if (std::isnan(v)) throw ClassificationError("cannot classify NaN");
                if (v < s.breakpoints.front() || v > s.breakpoints.back())
                    throw ClassificationError("value " + std::to_string(v) + " outside declared range [" +
                                              std::to_string(s.breakpoints.front()) + ", " +
                                              std::to_string(s.breakpoints.back()) + "]");
                // cells are [b_i, b_{i+1}); the final cell is closed on the right
                for (std::size_t i = 0; i + 1 < s.breakpoints.size(); ++i) {
                    if (v < s.breakpoints[i + 1]) return i;
                }
                return s.classes.size() - 1;
            } else if constexpr (std::is_same_v<S, CategoricalScheme>) {
                if (!std::holds_alternative<std::string>(value))
                    throw ClassificationError("categorical scheme expects a label, got " + kind_of(value));
                const auto& lbl = std::get<std::string>(value);
                for (const auto& [concrete, cls] : s.mapping) {
                    if (concrete == lbl) return scheme.class_index(cls);
                }
                throw ClassificationError("label '" + lbl + "' not covered by the categorical scheme");
            } else if constexpr (std::is_same_v<S, DominanceScheme>) {
                if (!std::holds_alternative<std::vector<double>>(value))
                    throw ClassificationError("dominance scheme expects a probability vector, got " + kind_of(value));
                const auto& probs = std::get<std::vector<double>>(value);
                if (probs.size() != s.outcomes.size())
                    throw ClassificationError("probability vector arity " + std::to_string(probs.size()) +
                                              " does not match outcome count " + std::to_string(s.outcomes.size()));
                double sum = 0.0;
                for (double p : probs) {
                    if (p < -1e-12) throw ValidationError("negative probability in outcome distribution");
                    sum += p;
                }
                if (std::abs(sum - 1.0) > 1e-6)
                    throw ValidationError("outcome distribution sums to " + std::to_string(sum) + ", expected 1");
                for (std::size_t i = 0; i < probs.size(); ++i) {
                    if (probs[i] > s.threshold) return i;  // at most one with threshold > 0.5
                }
                return s.outcomes.size();  // mixed class
            } else {
                static_assert(std::is_same_v<S, ClusterScheme>);
                if (!std::holds_alternative<std::vector<double>>(value))
                    throw ClassificationError("cluster scheme expects a point, got " + kind_of(value));
                const auto& pt = std::get<std::vector<double>>(value);
                if (pt.size() != s.centroids.front().size())
                    throw ClassificationError("point dimensionality " + std::to_string(pt.size()) +
                                              " does not match centroids");
                std::size_t best = 0;
                double best_d = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < s.centroids.size(); ++i) {
                    double d = 0.0;
                    for (std::size_t j = 0; j < pt.size(); ++j) {
                        const double diff = pt[j] - s.centroids[i][j];
                        d += diff * diff;
                    }
                    if (d < best_d) {
                        best_d = d;
                        best = i;
                    }
                }
                return best;
            }
        },
        scheme.variant());
}

// ---------------------------------------------------------------------------
// OutputSpace
// ---------------------------------------------------------------------------

std::vector<std::size_t> OutputSpace::cardinalities() const {
    std::vector<std::size_t> w;
    w.reserve(dimensions.size());
    for (const auto& d : dimensions) w.push_back(d.scheme.cardinality());
    return w;
}

const std::string& OutputSpace::label(std::size_t dim, std::size_t cls) const {
    return dimensions[dim].scheme.class_labels()[cls];
}

std::size_t OutputSpace::dim_index(const std::string& name) const {
    for (std::size_t i = 0; i < dimensions.size(); ++i)
        if (dimensions[i].name == name) return i;
    throw ValidationError("unknown output dimension '" + name + "'");
}

void OutputSpace::validate() const {
    if (dimensions.empty()) throw ValidationError("output space needs >= 1 dimension");
    std::unordered_set<std::string> names;
    for (const auto& d : dimensions) {
        if (d.name.empty()) throw ValidationError("output dimension with empty name");
        if (!names.insert(d.name).second)
            throw ValidationError("duplicate output dimension name '" + d.name + "'");
    }
}

std::uint64_t output_space_cardinality(const OutputSpace& space) {
    std::uint64_t total = 1;
    for (const auto& d : space.dimensions) {
        const std::uint64_t c = d.scheme.cardinality();
        if (c != 0 && total > std::numeric_limits<std::uint64_t>::max() / c)
            throw ValidationError("output space cardinality overflows 64 bits");
        total *= c;
    }
    return total;
}

Tuple abstract_output(const OutputSpace& space, const std::vector<ConcreteValue>& concrete) {
    if (concrete.size() != space.q())
        throw ValidationError("concrete output arity " + std::to_string(concrete.size()) +
                              " does not match q=" + std::to_string(space.q()));
    Tuple t(space.q());
    for (std::size_t j = 0; j < space.q(); ++j) {
        try {
            t[j] = classify(space.dimensions[j].scheme, concrete[j]);
        } catch (const std::runtime_error& e) {
            throw ClassificationError("dimension " + std::to_string(j) + " ('" + space.dimensions[j].name +
                                      "'): " + e.what());
        }
    }
    return t;
}

SubTuple project(const Tuple& tuple, const std::vector<std::size_t>& subset) {
    if (subset.empty()) throw ValidationError("projection subset must be non-empty");
    SubTuple out;
    out.dims = subset;
    out.classes.reserve(subset.size());
    std::size_t prev = 0;
    bool first = true;
    for (std::size_t d : subset) {
        if (!first && d <= prev) throw ValidationError("projection subset must be sorted and distinct");
        if (d >= tuple.size())
            throw ValidationError("projection index " + std::to_string(d) + " out of range");
        out.classes.push_back(tuple[d]);
        prev = d;
        first = false;
    }
    return out;
}

SubTuple project(const SubTuple& tuple, const std::vector<std::size_t>& subset) {
    if (subset.empty()) throw ValidationError("projection subset must be non-empty");
    SubTuple out;
    out.dims = subset;
    out.classes.reserve(subset.size());
    for (std::size_t d : subset) {
        auto it = std::lower_bound(tuple.dims.begin(), tuple.dims.end(), d);
        if (it == tuple.dims.end() || *it != d)
            throw ValidationError("projection index " + std::to_string(d) + " not present in tuple");
        out.classes.push_back(tuple.classes[static_cast<std::size_t>(it - tuple.dims.begin())]);
    }
    return out;
}

std::size_t SubTupleHash::operator()(const SubTuple& t) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t x) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (std::size_t d : t.dims) feed(d);
    feed(0xffffffffULL);
    for (std::size_t c : t.classes) feed(c);
    return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// k-means
// ---------------------------------------------------------------------------

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        d += diff * diff;
    }
    return d;
}

}  // namespace

PartitionScheme fit_cluster_partition(const std::vector<std::vector<double>>& samples,
                                      std::size_t k, std::uint64_t seed) {
    if (k < 2) throw ValidationError("k-means needs k >= 2");
    if (samples.size() < k)
        throw ValidationError("k-means needs at least k samples, got " + std::to_string(samples.size()));
    const std::size_t dim = samples.front().size();
    if (dim == 0) throw ValidationError("k-means samples must be non-empty points");
    for (const auto& s : samples)
        if (s.size() != dim) throw ValidationError("k-means samples must share one dimensionality");

    std::set<std::vector<double>> distinct(samples.begin(), samples.end());
    if (distinct.size() < k)
        throw ValidationError("k-means with k=" + std::to_string(k) + " needs k distinct points, got " +
                              std::to_string(distinct.size()) + " distinct");

    // Farthest-point seeding: random first pick, then maximin (ties to the
    // lowest sample index).
    auto rng = make_rng(seed);
    std::vector<std::vector<double>> centroids;
    centroids.push_back(samples[rng() % samples.size()]);
    while (centroids.size() < k) {
        std::size_t far_idx = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) d = std::min(d, sq_dist(samples[i], c));
            if (d > far_d) {
                far_d = d;
                far_idx = i;
            }
        }
        centroids.push_back(samples[far_idx]);
    }

    std::vector<std::size_t> assign(samples.size(), 0);
    double prev_inertia = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 100; ++iter) {
        double inertia = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double d = sq_dist(samples[i], centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            assign[i] = best;
            inertia += best_d;
        }

        std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            for (std::size_t j = 0; j < dim; ++j) sums[assign[i]][j] += samples[i][j];
            counts[assign[i]]++;
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                // re-seed an empty cluster with the point farthest from its centroid
                std::size_t far_idx = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < samples.size(); ++i) {
                    const double d = sq_dist(samples[i], centroids[assign[i]]);
                    if (d > far_d) {
                        far_d = d;
                        far_idx = i;
                    }
                }
                centroids[c] = samples[far_idx];
                continue;
            }
            for (std::size_t j = 0; j < dim; ++j) centroids[c][j] = sums[c][j] / static_cast<double>(counts[c]);
        }

        if (std::abs(prev_inertia - inertia) <= 1e-9) break;
        prev_inertia = inertia;
    }

    std::sort(centroids.begin(), centroids.end());  // by first coordinate, ties by subsequent
    ClusterScheme scheme;
    scheme.centroids = std::move(centroids);
    for (std::size_t c = 0; c < k; ++c) scheme.classes.push_back("cluster_" + std::to_string(c));
    return PartitionScheme(std::move(scheme));
}

}  // namespace rnw
