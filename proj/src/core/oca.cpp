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

#include "core/oca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "core/rng.hpp"

namespace rnw {

namespace {

constexpr std::size_t kUnassigned = FeasibilityModel::kUnassigned;

std::vector<std::vector<std::size_t>> combinations(std::size_t q, std::size_t s) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        // advance
        std::size_t i = s;
        while (i > 0) {
            --i;
            if (idx[i] != i + q - s) {
                ++idx[i];
                for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return out;
        }
    }
}

/// Mixed-radix key of an assignment over one subset.
std::uint64_t pack(const std::vector<std::size_t>& classes, const std::vector<std::uint64_t>& strides) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) key += classes[i] * strides[i];
    return key;
}

std::vector<std::size_t> unpack(std::uint64_t key, const std::vector<std::uint64_t>& strides,
                                const std::vector<std::size_t>& cards) {
    std::vector<std::size_t> classes(strides.size());
    for (std::size_t i = 0; i < strides.size(); ++i) {
        classes[i] = static_cast<std::size_t>(key / strides[i]) % cards[i];
    }
    return classes;
}

std::vector<std::uint64_t> make_strides(const std::vector<std::size_t>& cards) {
    std::vector<std::uint64_t> strides(cards.size());
    std::uint64_t acc = 1;
    for (std::size_t i = cards.size(); i-- > 0;) {
        strides[i] = acc;
        acc *= cards[i];
    }
    return strides;
}

std::string tuple_to_string(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& classes) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) os << ", ";
        os << "d" << dims[i] << "=" << classes[i];
    }
    os << "}";
    return os.str();
}

/// Iterate all assignments over `cards`, invoking fn (returns false to stop).
template <typename Fn>
void odometer(const std::vector<std::size_t>& cards, Fn&& fn) {
    std::vector<std::size_t> a(cards.size(), 0);
    while (true) {
        if (!fn(a)) return;
        std::size_t i = cards.size();
        while (i > 0) {
            --i;
            if (++a[i] < cards[i]) break;
            a[i] = 0;
            if (i == 0) return;
        }
    }
}

struct SubsetState {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> cards;     // per dim in subset
    std::vector<std::uint64_t> strides;
    std::set<std::uint64_t> uncovered;  // ordered for deterministic iteration
};

}  // namespace

std::size_t FeasibleEnumeration::total_confirmed() const {
    std::size_t n = 0;
    for (const auto& s : subsets) n += s.tuples.size();
    return n;
}

std::size_t FeasibleEnumeration::total_unconfirmed() const {
    std::size_t n = 0;
    for (const auto& s : subsets) n += s.unconfirmed.size();
    return n;
}

FeasibleEnumeration enumerate_feasible_tuples(const std::vector<std::size_t>& cardinalities,
                                              std::size_t strength, const FeasibilityModel& feas,
                                              const EnumerationOptions& opts) {
    const std::size_t q = cardinalities.size();
    if (q == 0) throw ValidationError("output space has no dimensions");
    if (strength < 1 || strength > q)
        throw ValidationError("strength must satisfy 1 <= s <= q, got s=" + std::to_string(strength) +
                              ", q=" + std::to_string(q));
    for (std::size_t c : cardinalities)
        if (c == 0) throw ValidationError("dimension with zero classes");

    const auto subsets = combinations(q, strength);

    // Guard the total enumeration size.
    long double total = 0;
    for (const auto& S : subsets) {
        long double prod = 1;
        for (std::size_t d : S) prod *= static_cast<long double>(cardinalities[d]);
        total += prod;
    }
    if (total > static_cast<long double>(opts.enumeration_guard))
        throw ValidationError("feasible-tuple enumeration would visit ~" + std::to_string((double)total) +
                              " tuples (guard " + std::to_string(opts.enumeration_guard) +
                              "); tighten constraints or lower the strength");

    FeasibleEnumeration result;
    result.strength = strength;

    // Clause-level pass: everything not embedding a forbidden sub-tuple.
    for (const auto& S : subsets) {
        FeasibleSet fs;
        fs.dims = S;
        std::vector<std::size_t> sub_cards;
        for (std::size_t d : S) sub_cards.push_back(cardinalities[d]);
        std::vector<std::size_t> partial(q, kUnassigned);
        odometer(sub_cards, [&](const std::vector<std::size_t>& a) {
            for (std::size_t i = 0; i < S.size(); ++i) partial[S[i]] = a[i];
            if (!feas.violates_clauses(partial)) fs.tuples.push_back(a);
            for (std::size_t d : S) partial[d] = kUnassigned;
            return true;
        });
        result.subsets.push_back(std::move(fs));
    }

    if (!feas.has_predicate()) return result;

    // Predicate hook: establish feasibility through full-tuple witnesses.
    long double full_space = 1;
    for (std::size_t c : cardinalities) full_space *= static_cast<long double>(c);
    const bool exhaustive = full_space <= static_cast<long double>(opts.exhaustive_limit);
    result.witness_exhaustive = exhaustive;

    // Witnessed[s][key] marks s-tuples seen in some feasible full tuple.
    std::vector<std::set<std::uint64_t>> witnessed(subsets.size());
    std::vector<std::vector<std::uint64_t>> strides_by_subset;
    for (const auto& S : subsets) {
        std::vector<std::size_t> sub_cards;
        for (std::size_t d : S) sub_cards.push_back(cardinalities[d]);
        strides_by_subset.push_back(make_strides(sub_cards));
    }

    auto mark = [&](const Tuple& full) {
        for (std::size_t si = 0; si < subsets.size(); ++si) {
            std::vector<std::size_t> classes;
            classes.reserve(strength);
            for (std::size_t d : subsets[si]) classes.push_back(full[d]);
            witnessed[si].insert(pack(classes, strides_by_subset[si]));
        }
    };

    if (exhaustive) {
        odometer(cardinalities, [&](const std::vector<std::size_t>& full) {
            if (feas.feasible(full)) mark(full);
            return true;
        });
    } else {
        auto rng = make_rng(opts.seed);
        result.witness_samples = opts.sample_budget;
        Tuple full(q);
        for (std::uint64_t i = 0; i < opts.sample_budget; ++i) {
            for (std::size_t d = 0; d < q; ++d) full[d] = rng() % cardinalities[d];
            if (feas.feasible(full)) mark(full);
        }
    }

    for (std::size_t si = 0; si < subsets.size(); ++si) {
        auto& fs = result.subsets[si];
        std::vector<std::vector<std::size_t>> confirmed, unconfirmed;
        for (auto& t : fs.tuples) {
            if (witnessed[si].count(pack(t, strides_by_subset[si]))) {
                confirmed.push_back(std::move(t));
            } else if (!exhaustive) {
                unconfirmed.push_back(std::move(t));
            }
            // exhaustive + no witness: definitively infeasible, dropped
        }
        fs.tuples = std::move(confirmed);
        fs.unconfirmed = std::move(unconfirmed);
    }
    return result;
}

FeasibleEnumeration enumerate_feasible_tuples(const OutputSpace& space, std::size_t strength,
                                              const FeasibilityModel& feas,
                                              const EnumerationOptions& opts) {
    return enumerate_feasible_tuples(space.cardinalities(), strength, feas, opts);
}

// ---------------------------------------------------------------------------
// OutputCoveringArray
// ---------------------------------------------------------------------------

std::vector<std::size_t> OutputCoveringArray::cardinalities() const {
    std::vector<std::size_t> w;
    for (const auto& labels : class_labels) w.push_back(labels.size());
    return w;
}

void OutputCoveringArray::check_compatible(const OutputSpace& space) const {
    if (space.q() != q()) throw ValidationError("covering array dimension count does not match the space");
    for (std::size_t d = 0; d < q(); ++d) {
        if (space.dimensions[d].name != dim_names[d])
            throw ValidationError("covering array dimension '" + dim_names[d] +
                                  "' does not match space dimension '" + space.dimensions[d].name + "'");
        if (space.dimensions[d].scheme.class_labels() != class_labels[d])
            throw ValidationError("class alphabet mismatch for dimension '" + dim_names[d] + "'");
    }
}

// ---------------------------------------------------------------------------
// Greedy generation
// ---------------------------------------------------------------------------

namespace {

struct GreedyContext {
    std::vector<std::size_t> cards;
    std::vector<SubsetState> subsets;
    std::vector<std::vector<std::size_t>> subsets_by_dim;  // dim -> subset indices
    const FeasibilityModel* feas = nullptr;

    std::size_t uncovered_total() const {
        std::size_t n = 0;
        for (const auto& s : subsets) n += s.uncovered.size();
        return n;
    }

    /// Uncovered targets the complete row would newly cover.
    std::size_t row_gain(const Tuple& row) const {
        std::size_t gain = 0;
        for (const auto& st : subsets) {
            std::vector<std::size_t> classes;
            classes.reserve(st.dims.size());
            for (std::size_t d : st.dims) classes.push_back(row[d]);
            if (st.uncovered.count(pack(classes, st.strides))) ++gain;
        }
        return gain;
    }

    void remove_covered(const Tuple& row) {
        for (auto& st : subsets) {
            std::vector<std::size_t> classes;
            classes.reserve(st.dims.size());
            for (std::size_t d : st.dims) classes.push_back(row[d]);
            st.uncovered.erase(pack(classes, st.strides));
        }
    }
};

/// Fill the unassigned dims of `row` greedily; returns false if some dim has
/// no clause-respecting value.
bool fill_row(GreedyContext& ctx, Tuple& row, std::mt19937_64& rng) {
    const std::size_t q = ctx.cards.size();
    std::vector<std::size_t> order;
    for (std::size_t d = 0; d < q; ++d)
        if (row[d] == kUnassigned) order.push_back(d);
    std::shuffle(order.begin(), order.end(), rng);

    for (std::size_t d : order) {
        std::size_t best_value = kUnassigned;
        std::size_t best_gain = 0;
        const std::size_t rotation = rng() % ctx.cards[d];
        for (std::size_t k = 0; k < ctx.cards[d]; ++k) {
            const std::size_t v = (k + rotation) % ctx.cards[d];
            row[d] = v;
            if (ctx.feas->violates_clauses(row)) {
                row[d] = kUnassigned;
                continue;
            }
            // Gain = uncovered tuples completed by this assignment.
            std::size_t gain = 0;
            for (std::size_t si : ctx.subsets_by_dim[d]) {
                const auto& st = ctx.subsets[si];
                bool complete = true;
                std::vector<std::size_t> classes;
                classes.reserve(st.dims.size());
                for (std::size_t sd : st.dims) {
                    if (row[sd] == kUnassigned) {
                        complete = false;
                        break;
                    }
                    classes.push_back(row[sd]);
                }
                if (complete && st.uncovered.count(pack(classes, st.strides))) ++gain;
            }
            if (best_value == kUnassigned || gain > best_gain) {
                best_value = v;
                best_gain = gain;
            }
            row[d] = kUnassigned;
        }
        if (best_value == kUnassigned) return false;
        row[d] = best_value;
    }
    return true;
}

/// Deterministic exhaustive search for a feasible full extension of one
/// s-tuple (lexicographically first); nullopt when none exists.
std::optional<Tuple> find_extension(const GreedyContext& ctx, const std::vector<std::size_t>& dims,
                                    const std::vector<std::size_t>& classes) {
    const std::size_t q = ctx.cards.size();
    std::vector<std::size_t> free_dims;
    for (std::size_t d = 0; d < q; ++d)
        if (std::find(dims.begin(), dims.end(), d) == dims.end()) free_dims.push_back(d);

    std::vector<std::size_t> free_cards;
    for (std::size_t d : free_dims) free_cards.push_back(ctx.cards[d]);

    Tuple row(q, kUnassigned);
    for (std::size_t i = 0; i < dims.size(); ++i) row[dims[i]] = classes[i];

    std::optional<Tuple> found;
    odometer(free_cards, [&](const std::vector<std::size_t>& a) {
        for (std::size_t i = 0; i < free_dims.size(); ++i) row[free_dims[i]] = a[i];
        if (ctx.feas->feasible(row)) {
            found = row;
            return false;
        }
        return true;
    });
    return found;
}

}  // namespace

OutputCoveringArray generate_oca(const OutputSpace& space, std::size_t strength,
                                 const FeasibilityModel& feas, const GeneratorConfig& config) {
    space.validate();
    const auto cards = space.cardinalities();
    for (std::size_t d = 0; d < cards.size(); ++d) {
        if (cards[d] < 2)
            throw ValidationError("dimension '" + space.dimensions[d].name +
                                  "' has fewer than 2 classes; covering array dimensions need >= 2");
    }
    if (config.candidates == 0) throw ValidationError("candidate count must be >= 1");

    EnumerationOptions eopts = config.enumeration;
    eopts.seed = config.seed;
    const auto enumeration = enumerate_feasible_tuples(cards, strength, feas, eopts);

    GreedyContext ctx;
    ctx.cards = cards;
    ctx.feas = &feas;
    ctx.subsets_by_dim.assign(cards.size(), {});
    for (const auto& fs : enumeration.subsets) {
        SubsetState st;
        st.dims = fs.dims;
        for (std::size_t d : fs.dims) st.cards.push_back(cards[d]);
        st.strides = make_strides(st.cards);
        for (const auto& t : fs.tuples) st.uncovered.insert(pack(t, st.strides));
        const std::size_t si = ctx.subsets.size();
        for (std::size_t d : fs.dims) ctx.subsets_by_dim[d].push_back(si);
        ctx.subsets.push_back(std::move(st));
    }

    auto rng = make_rng(config.seed);
    std::vector<Tuple> rows;
    std::vector<SubTuple> contradictions;

    while (ctx.uncovered_total() > 0) {
        // Pick the seed target deterministically: first subset with uncovered
        // tuples rotates with the row count so all subsets get attention.
        std::vector<std::size_t> nonempty;
        for (std::size_t si = 0; si < ctx.subsets.size(); ++si)
            if (!ctx.subsets[si].uncovered.empty()) nonempty.push_back(si);

        Tuple best_row;
        std::size_t best_gain = 0;

        for (std::size_t c = 0; c < config.candidates; ++c) {
            const auto& st = ctx.subsets[nonempty[rng() % nonempty.size()]];
            // random uncovered target within the subset
            std::uint64_t pos = rng() % st.uncovered.size();
            auto it = st.uncovered.begin();
            std::advance(it, static_cast<long>(pos));
            const auto classes = unpack(*it, st.strides, st.cards);

            Tuple row(cards.size(), kUnassigned);
            for (std::size_t i = 0; i < st.dims.size(); ++i) row[st.dims[i]] = classes[i];
            if (!fill_row(ctx, row, rng)) continue;
            if (feas.has_predicate() && !feas.feasible(row)) continue;

            const std::size_t gain = ctx.row_gain(row);
            if (gain > best_gain || (gain == best_gain && best_gain > 0 && row < best_row)) {
                best_gain = gain;
                best_row = row;
            }
        }

        if (best_gain > 0) {
            ctx.remove_covered(best_row);
            rows.push_back(std::move(best_row));
            continue;
        }

        // Candidates made no progress: force-cover the lexicographically first
        // uncovered target via exhaustive extension search, or record a
        // contradiction.
        auto& st = ctx.subsets[nonempty.front()];
        const std::uint64_t key = *st.uncovered.begin();
        const auto classes = unpack(key, st.strides, st.cards);
        auto ext = find_extension(ctx, st.dims, classes);
        if (ext) {
            ctx.remove_covered(*ext);
            rows.push_back(std::move(*ext));
        } else {
            contradictions.push_back(SubTuple{st.dims, classes});
            st.uncovered.erase(key);
        }
    }

    if (!contradictions.empty()) {
        std::ostringstream os;
        os << "confirmed-feasible s-tuples with no feasible full-width extension:";
        for (const auto& t : contradictions) os << " " << tuple_to_string(t.dims, t.classes);
        throw ValidationError(os.str());
    }

    OutputCoveringArray oca;
    oca.rows = std::move(rows);
    oca.strength = strength;
    for (const auto& d : space.dimensions) {
        oca.dim_names.push_back(d.name);
        oca.class_labels.push_back(d.scheme.class_labels());
    }
    oca.meta.generator = "greedy-aetg";
    oca.meta.seed = config.seed;
    oca.meta.candidates = config.candidates;
    oca.meta.unconfirmed_targets = enumeration.total_unconfirmed();
    return oca;
}

VerificationReport verify_oca(const OutputCoveringArray& oca, const FeasibilityModel& feas,
                              const EnumerationOptions& opts) {
    VerificationReport report;
    const auto cards = oca.cardinalities();
    EnumerationOptions eopts = opts;
    eopts.seed = oca.meta.seed;
    const auto enumeration = enumerate_feasible_tuples(cards, oca.strength, feas, eopts);
    report.unconfirmed_targets = enumeration.total_unconfirmed();

    for (std::size_t r = 0; r < oca.rows.size(); ++r) {
        const auto& row = oca.rows[r];
        if (row.size() != cards.size()) throw ValidationError("row " + std::to_string(r) + " has wrong arity");
        for (std::size_t d = 0; d < row.size(); ++d)
            if (row[d] >= cards[d])
                throw ValidationError("row " + std::to_string(r) + " has out-of-range class index");
        if (!feas.feasible(row)) report.infeasible_rows.push_back(r);
    }

    for (const auto& fs : enumeration.subsets) {
        std::vector<std::size_t> sub_cards;
        for (std::size_t d : fs.dims) sub_cards.push_back(cards[d]);
        const auto strides = make_strides(sub_cards);

        std::set<std::uint64_t> seen;
        for (const auto& row : oca.rows) {
            std::vector<std::size_t> classes;
            classes.reserve(fs.dims.size());
            for (std::size_t d : fs.dims) classes.push_back(row[d]);
            seen.insert(pack(classes, strides));
        }
        for (const auto& t : fs.tuples) {
            if (!seen.count(pack(t, strides))) report.uncovered.push_back(SubTuple{fs.dims, t});
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Bounds and preimages
// ---------------------------------------------------------------------------

std::uint64_t size_lower_bound(const OutputSpace& space, std::size_t strength,
                               const FeasibilityModel& feas,
                               const std::optional<PreimageCounts>& preimages,
                               const EnumerationOptions& opts) {
    const auto enumeration = enumerate_feasible_tuples(space.cardinalities(), strength, feas, opts);
    std::uint64_t bound = 0;
    for (const auto& fs : enumeration.subsets) {
        const std::uint64_t demand = fs.tuples.size();
        if (demand == 0) continue;
        if (!preimages) {
            bound = std::max(bound, demand);
            continue;
        }
        std::uint64_t max_lambda = 1;
        for (const auto& t : fs.tuples) {
            auto it = preimages->find(SubTuple{fs.dims, t});
            if (it != preimages->end()) max_lambda = std::max(max_lambda, std::max<std::uint64_t>(1, it->second));
        }
        bound = std::max(bound, (demand + max_lambda - 1) / max_lambda);
    }
    return bound;
}

std::uint64_t InputGrid::total() const {
    std::uint64_t n = 1;
    for (const auto& axis : axes) {
        if (axis.empty()) throw ValidationError("grid axis with no sample values");
        n *= axis.size();
    }
    return n;
}

InputPoint InputGrid::point(std::uint64_t index) const {
    InputPoint p;
    p.values.resize(axes.size());
    for (std::size_t d = axes.size(); d-- > 0;) {
        p.values[d] = axes[d][index % axes[d].size()];
        index /= axes[d].size();
    }
    return p;
}

InputGrid uniform_grid(const InputDomain& domain, const std::vector<std::size_t>& points_per_axis) {
    if (points_per_axis.size() != domain.size())
        throw ValidationError("points_per_axis arity does not match the domain");
    InputGrid grid;
    for (std::size_t d = 0; d < domain.size(); ++d) {
        std::vector<InputValue> axis;
        const auto& dim = domain.dimensions[d];
        if (dim.continuous()) {
            const std::size_t n = points_per_axis[d];
            if (n == 0) throw ValidationError("grid axis needs >= 1 point");
            const auto& c = dim.as_continuous();
            if (n == 1) {
                axis.push_back((c.low + c.high) / 2.0);
            } else {
                for (std::size_t i = 0; i < n; ++i)
                    axis.push_back(c.low + (c.high - c.low) * static_cast<double>(i) / static_cast<double>(n - 1));
            }
        } else {
            for (const auto& label : dim.as_categorical().labels) axis.push_back(label);
        }
        grid.axes.push_back(std::move(axis));
    }
    return grid;
}

std::uint64_t preimage_count(const std::function<Tuple(const InputPoint&)>& abstract_eval,
                             const SubTuple& target, const InputGrid& grid) {
    const std::uint64_t total = grid.total();
    if (total > 1'000'000)
        throw ValidationError("preimage grid has " + std::to_string(total) + " points (guard 10^6)");
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
        const Tuple t = abstract_eval(grid.point(i));
        if (project(t, target.dims) == target) ++count;
    }
    return count;
}

}  // namespace rnw
