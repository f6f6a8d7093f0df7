// Copyright 2026 The conefact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "conefact/sampling.hpp"
#include "conefact/serialize.hpp"

#include <numeric>
#include <sstream>

namespace conefact {

/// An operation V <- (U_1, ..., U_k): each U_i ⊆ V, pairwise orthogonal.
/// The empty source tuple is the point operation of V.
struct OperadOperation {
    ConeSpec target;
    std::vector<ConeSpec> sources;

    size_t arity() const { return sources.size(); }
    bool operator==(const OperadOperation &other) const = default;
};

enum class OperationErrorKind { not_contained, not_disjoint, undecided, arity_mismatch, target_mismatch };

inline const char *to_string(OperationErrorKind k) {
    switch (k) {
        case OperationErrorKind::not_contained:
            return "NotContained";
        case OperationErrorKind::not_disjoint:
            return "NotDisjoint";
        case OperationErrorKind::undecided:
            return "Undecided";
        case OperationErrorKind::arity_mismatch:
            return "ArityMismatch";
        default:
            return "TargetMismatch";
    }
}

struct OperationError : std::runtime_error {
    OperationErrorKind kind;
    size_t i;
    size_t j;
    OperationError(OperationErrorKind k, size_t i_, size_t j_)
        : std::runtime_error(describe(k, i_, j_)), kind(k), i(i_), j(j_) {}

   private:
    static std::string describe(OperationErrorKind k, size_t i, size_t j) {
        std::ostringstream out;
        out << to_string(k) << "(" << i;
        if (k == OperationErrorKind::not_disjoint || k == OperationErrorKind::undecided) {
            out << "," << j;
        }
        out << ")";
        return out.str();
    }
};

/// Validates and builds an operation. Containment and pairwise disjointness
/// must both be certified; an uncertified pair raises Undecided, and an
/// uncertified containment raises Undecided(i, i).
inline OperadOperation make_operation(const ConeSpec &target, std::vector<ConeSpec> sources) {
    for (size_t i = 0; i < sources.size(); i++) {
        require_same_dim(target.dim(), sources[i].dim());
        Verdict v = contained(sources[i], target).verdict;
        if (v == Verdict::no) {
            throw OperationError(OperationErrorKind::not_contained, i, i);
        }
        if (v == Verdict::unknown) {
            throw OperationError(OperationErrorKind::undecided, i, i);
        }
    }
    for (size_t i = 0; i < sources.size(); i++) {
        for (size_t j = i + 1; j < sources.size(); j++) {
            Verdict v = disjoint(sources[i], sources[j]).verdict;
            if (v == Verdict::no) {
                throw OperationError(OperationErrorKind::not_disjoint, i, j);
            }
            if (v == Verdict::unknown) {
                throw OperationError(OperationErrorKind::undecided, i, j);
            }
        }
    }
    return {target, std::move(sources)};
}

inline OperadOperation identity_operation(const ConeSpec &v) { return {v, {v}}; }

inline OperadOperation point_operation(const ConeSpec &v) { return {v, {}}; }

/// Operadic composition: sources become the concatenation of the inner sources.
inline OperadOperation compose(const OperadOperation &outer, const std::vector<OperadOperation> &inners) {
    if (inners.size() != outer.arity()) {
        throw OperationError(OperationErrorKind::arity_mismatch, inners.size(), outer.arity());
    }
    std::vector<ConeSpec> sources;
    for (size_t i = 0; i < inners.size(); i++) {
        if (inners[i].target != outer.sources[i]) {
            throw OperationError(OperationErrorKind::target_mismatch, i, i);
        }
        sources.insert(sources.end(), inners[i].sources.begin(), inners[i].sources.end());
    }
    // Valid by transitivity of inclusion and heredity of disjointness.
    return {outer.target, std::move(sources)};
}

inline bool is_permutation_of(const std::vector<size_t> &sigma, size_t n) {
    if (sigma.size() != n) {
        return false;
    }
    std::vector<bool> seen(n, false);
    for (size_t s : sigma) {
        if (s >= n || seen[s]) {
            return false;
        }
        seen[s] = true;
    }
    return true;
}

/// Right action: the i-th source of the result is the sigma[i]-th source of op.
inline OperadOperation permute(const OperadOperation &op, const std::vector<size_t> &sigma) {
    if (!is_permutation_of(sigma, op.arity())) {
        throw OperationError(OperationErrorKind::arity_mismatch, sigma.size(), op.arity());
    }
    OperadOperation out{op.target, {}};
    for (size_t s : sigma) {
        out.sources.push_back(op.sources[s]);
    }
    return out;
}

/// Permutation of a concatenation that reorders its blocks by sigma.
inline std::vector<size_t> block_permutation(const std::vector<size_t> &sigma, const std::vector<size_t> &sizes) {
    std::vector<size_t> offset(sizes.size() + 1, 0);
    std::partial_sum(sizes.begin(), sizes.end(), offset.begin() + 1);
    std::vector<size_t> out;
    for (size_t s : sigma) {
        for (size_t j = 0; j < sizes[s]; j++) {
            out.push_back(offset[s] + j);
        }
    }
    return out;
}

/// Direct sum of block permutations.
inline std::vector<size_t> sum_permutation(const std::vector<std::vector<size_t>> &taus) {
    std::vector<size_t> out;
    size_t offset = 0;
    for (const auto &tau : taus) {
        for (size_t s : tau) {
            out.push_back(offset + s);
        }
        offset += tau.size();
    }
    return out;
}

inline Json operation_to_json(const OperadOperation &op) {
    Json sources = Json::array();
    for (const auto &s : op.sources) {
        sources.push_back(cone_to_json(s));
    }
    return Json{{"target", cone_to_json(op.target)}, {"sources", sources}};
}

/// Object universe of the orthogonal site. With `objects` set, operations are
/// drawn from that explicit finite list; otherwise cones are sampled with
/// integer apexes in the window.
struct OrthogonalSite {
    size_t dim = 2;
    int64_t window_radius = 32;
    std::optional<std::vector<ConeSpec>> objects;
};

struct OperadLawReport {
    size_t checked = 0;
    size_t unit = 0;
    size_t associativity = 0;
    size_t equivariance = 0;
    size_t revalidated = 0;
    size_t undecided = 0;
    size_t composite_sources = 0;
    std::vector<Json> violations;

    bool pass() const { return violations.empty(); }

    Json to_json() const {
        return Json{{"checked", checked},
                    {"laws",
                     {{"unit", unit}, {"associativity", associativity}, {"equivariance", equivariance},
                      {"revalidated", revalidated}, {"undecided", undecided}}},
                    {"composite_sources", composite_sources},
                    {"violations", violations}};
    }
};

namespace detail {

inline std::vector<size_t> random_permutation(Rng &rng, size_t n) {
    std::vector<size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    return sigma;
}

/// A random valid operation with the given target: subcones drawn until
/// `max_arity` sources are pairwise certified disjoint (rejection sampling).
inline OperadOperation random_operation(Rng &rng, const OrthogonalSite &site, const ConeSpec &target, size_t max_arity) {
    size_t want = static_cast<size_t>(uniform_int(rng, 0, static_cast<int64_t>(max_arity)));
    std::vector<ConeSpec> sources;
    auto accept = [&](const ConeSpec &c) {
        for (const auto &s : sources) {
            // Continuum disjointness is sound and cheap; make_operation recertifies.
            if (r_disjoint(s, c) != Verdict::yes) {
                return false;
            }
        }
        return true;
    };
    for (int attempt = 0; attempt < 200 && sources.size() < want; attempt++) {
        std::optional<ConeSpec> c;
        if (site.objects) {
            const auto &objs = *site.objects;
            const ConeSpec &pick = objs[static_cast<size_t>(uniform_int(rng, 0, int64_t(objs.size()) - 1))];
            if (r_contained(pick, target) == Verdict::yes) {
                c = pick;
            }
        } else {
            c = random_subcone(rng, target, 3, site.window_radius / 2);
        }
        if (c && accept(*c)) {
            sources.push_back(*c);
        }
    }
    return make_operation(target, std::move(sources));
}

inline ConeSpec random_object(Rng &rng, const OrthogonalSite &site) {
    if (site.objects) {
        const auto &objs = *site.objects;
        return objs[static_cast<size_t>(uniform_int(rng, 0, int64_t(objs.size()) - 1))];
    }
    return random_cone(rng, site.dim, site.window_radius);
}

}  // namespace detail

/// Samples composable triples f, (g_i), (h_ij) and checks the unit laws,
/// associativity, equivariance (outer block permutation and inner
/// permutations), and that composites revalidate. A composite whose
/// revalidation is undecided is counted, not reported as a violation.
inline OperadLawReport check_operad_laws(const OrthogonalSite &site, size_t samples, uint64_t seed) {
    if (site.objects && site.objects->empty()) {
        throw std::invalid_argument("explicit object universe must be nonempty");
    }
    Rng rng(seed);
    OperadLawReport report;
    auto violation = [&](const std::string &law, const OperadOperation &f, const std::string &detail) {
        report.violations.push_back(Json{{"law", law}, {"operation", operation_to_json(f)}, {"detail", detail}});
    };
    for (size_t n = 0; n < samples; n++) {
        ConeSpec v = detail::random_object(rng, site);
        OperadOperation f = detail::random_operation(rng, site, v, 3);
        std::vector<OperadOperation> gs;
        std::vector<std::vector<OperadOperation>> hs;
        for (const auto &u : f.sources) {
            gs.push_back(detail::random_operation(rng, site, u, 3));
            std::vector<OperadOperation> row;
            for (const auto &w : gs.back().sources) {
                row.push_back(detail::random_operation(rng, site, w, 2));
            }
            hs.push_back(std::move(row));
        }
        report.checked++;
        try {
            std::vector<OperadOperation> ids;
            for (const auto &u : f.sources) {
                ids.push_back(identity_operation(u));
            }
            if (compose(f, ids) != f || compose(identity_operation(v), {f}) != f) {
                violation("unit", f, "composite with identities differs");
            }
            report.unit++;

            OperadOperation fg = compose(f, gs);
            report.composite_sources += fg.arity();
            std::vector<OperadOperation> h_flat;
            std::vector<OperadOperation> gh;
            for (size_t i = 0; i < gs.size(); i++) {
                h_flat.insert(h_flat.end(), hs[i].begin(), hs[i].end());
                gh.push_back(compose(gs[i], hs[i]));
            }
            if (compose(fg, h_flat) != compose(f, gh)) {
                violation("associativity", f, "evaluation orders differ");
            }
            report.associativity++;

            auto sigma = detail::random_permutation(rng, f.arity());
            std::vector<size_t> sizes;
            std::vector<OperadOperation> gs_sigma;
            std::vector<std::vector<size_t>> taus;
            std::vector<OperadOperation> gs_tau;
            for (size_t i = 0; i < gs.size(); i++) {
                sizes.push_back(gs[i].arity());
                gs_sigma.push_back(gs[sigma[i]]);
                taus.push_back(detail::random_permutation(rng, gs[i].arity()));
                gs_tau.push_back(permute(gs[i], taus.back()));
            }
            if (permute(fg, block_permutation(sigma, sizes)) != compose(permute(f, sigma), gs_sigma)) {
                violation("equivariance", f, "outer permutation does not commute with composition");
            }
            if (permute(fg, sum_permutation(taus)) != compose(f, gs_tau)) {
                violation("equivariance", f, "inner permutations do not commute with composition");
            }
            report.equivariance++;

            for (const auto &op : {fg, compose(fg, h_flat), permute(fg, block_permutation(sigma, sizes))}) {
                try {
                    make_operation(op.target, op.sources);
                    report.revalidated++;
                } catch (const OperationError &e) {
                    if (e.kind != OperationErrorKind::undecided) {
                        violation("revalidation", op, e.what());
                    } else {
                        report.undecided++;
                    }
                }
            }
        } catch (const OperationError &e) {
            violation("composition", f, e.what());
        }
    }
    return report;
}

}  // namespace conefact
