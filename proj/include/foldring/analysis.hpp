#pragma once

// Obstruction and isotropy analysis.
//
// A model built from (a, b, b', A, H, p) admits a special generic map into
// some R^n only if all of its surgery data vanish; the verdict lists each
// nonvanishing datum as a reason.  The quadratic analysis studies squares
// of degree-2 classes: their vanishing locus inside a coordinate box, the
// primitive directions (lines) it decomposes into, and the maximal rank of
// an isotropic submodule detectable inside the box.  A pair of independent
// directions whose cup product also vanishes spans a rank-2 isotropic
// submodule; its absence certifies that the locus is a genuine union of
// lines rather than a slice of a 2-flat.

#include "foldring/construction.hpp"
#include "foldring/diagnostics.hpp"
#include "foldring/integers.hpp"
#include "foldring/matrix.hpp"
#include "foldring/ring.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace foldring {

enum class ObstructionReason { p_nonzero, a_matrix_nonzero, h_nonzero };

inline std::string reason_name(ObstructionReason r) {
    switch (r) {
        case ObstructionReason::p_nonzero: return "p_nonzero";
        case ObstructionReason::a_matrix_nonzero: return "a_matrix_nonzero";
        case ObstructionReason::h_nonzero: return "H_nonzero";
    }
    return "?";
}

struct ObstructionVerdict {
    bool obstructed = false;
    std::vector<ObstructionReason> reasons;
};

// A model with any nonvanishing surgery datum cannot come from a special
// generic map.  Family 1 ignores the crossing form, so only p and A count
// there; families 5 and 6 add the H clause.
inline ObstructionVerdict special_generic_obstruction(const ConstructionParams& p,
                                                      ModelFamily family) {
    validate_params(p, family);
    ObstructionVerdict v;
    if (std::any_of(p.pontryagin.begin(), p.pontryagin.end(),
                    [](const Int& c) { return c != 0; }))
        v.reasons.push_back(ObstructionReason::p_nonzero);
    if (!p.link_matrix.is_zero()) v.reasons.push_back(ObstructionReason::a_matrix_nonzero);
    if (family != ModelFamily::plain && !p.crossing_form.is_zero())
        v.reasons.push_back(ObstructionReason::h_nonzero);
    v.obstructed = !v.reasons.empty();
    return v;
}

// Square of the degree-2 class with the given coordinates.
inline GradedClass square_of(const ManifoldModel& m, const std::vector<Int>& coeffs) {
    if (coeffs.size() != m.ring.rank_at(2))
        throw dimension_error("square_of: expected " + std::to_string(m.ring.rank_at(2)) +
                              " coefficients, got " + std::to_string(coeffs.size()));
    const GradedClass x{2, coeffs};
    return cup(m.ring, x, x);
}

struct IsotropyReport {
    long search_bound = 0;
    // nonzero tuples in [-bound, bound]^rank2 whose square vanishes, in
    // lexicographic order
    std::vector<std::vector<Int>> vanishing_tuples;
    // primitive directions (gcd 1, first nonzero coordinate positive)
    std::vector<std::vector<Int>> lines;
    bool union_of_lines = true;
    std::optional<std::pair<std::vector<Int>, std::vector<Int>>> witness_pair;
    int max_rank_found = 0;
};

namespace detail {

inline std::vector<Int> primitive_direction(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& c : v) g = gcd(g, c);
    std::vector<Int> out = v;
    if (g > 1)
        for (Int& c : out) c /= g;
    for (const Int& c : out) {
        if (c == 0) continue;
        if (c < 0)
            for (Int& d : out) d = -d;
        break;
    }
    return out;
}

// Lexicographic odometer over [-bound, bound]^r; returns false past the end.
inline bool next_tuple(std::vector<Int>& t, long bound) {
    for (std::size_t i = t.size(); i-- > 0;) {
        if (t[i] < bound) {
            t[i] += 1;
            for (std::size_t j = i + 1; j < t.size(); ++j) t[j] = -bound;
            return true;
        }
    }
    return false;
}

} // namespace detail

// Exhaustive quadratic analysis of degree-2 squares inside the box.
inline IsotropyReport analyze_isotropy(const ManifoldModel& m, long bound) {
    if (bound < 0) throw parameter_error("search bound must be nonnegative");
    IsotropyReport rep;
    rep.search_bound = bound;
    const std::size_t r2 = m.ring.rank_at(2);
    if (r2 == 0 || bound == 0) return rep;

    std::vector<Int> t(r2, Int(-bound));
    std::set<std::vector<Int>> line_set;
    for (;;) {
        const bool zero = std::all_of(t.begin(), t.end(), [](const Int& c) { return c == 0; });
        if (!zero && square_of(m, t).is_zero()) {
            rep.vanishing_tuples.push_back(t);
            line_set.insert(detail::primitive_direction(t));
        }
        if (!detail::next_tuple(t, bound)) break;
    }
    rep.lines.assign(line_set.begin(), line_set.end());

    // Scaling squares by lambda^2 keeps every primitive representative
    // inside the locus; the decisive question is whether two independent
    // directions also pair to zero, which would span a rank-2 isotropic
    // submodule (a 2-flat inside the locus).
    for (std::size_t i = 0; i < rep.lines.size() && !rep.witness_pair; ++i)
        for (std::size_t j = i + 1; j < rep.lines.size(); ++j) {
            const GradedClass u{2, rep.lines[i]};
            const GradedClass v{2, rep.lines[j]};
            if (cup(m.ring, u, v).is_zero()) {
                rep.witness_pair = {rep.lines[i], rep.lines[j]};
                rep.union_of_lines = false;
                break;
            }
        }

    rep.max_rank_found = rep.witness_pair ? 2 : (rep.lines.empty() ? 0 : 1);
    return rep;
}

// The vanishing set of x -> x.x inside the box, as tuples and as primitive
// directions, with the union-of-lines certificate.
inline IsotropyReport vanishing_locus(const ManifoldModel& m, long bound) {
    return analyze_isotropy(m, bound);
}

// Largest rank of an isotropic submodule of the degree-2 lattice whose
// generators fit in the box: 2 with a witness pair, 1 if some nonzero
// square vanishes, 0 otherwise.
inline IsotropyReport isotropic_rank_search(const ManifoldModel& m, long bound) {
    return analyze_isotropy(m, bound);
}

// Invariant-by-invariant comparison: homology ranks, duality determinants
// (up to sign), isotropy ranks at the given bound.  Empty report = the
// invariants cannot tell the models apart.
inline Report compare_models(const ManifoldModel& x, const ManifoldModel& y, long bound) {
    Report rep;
    for (int d = 0; d <= top_degree; ++d)
        if (x.homology_rank[d] != y.homology_rank[d])
            rep.add("rank", "homology_rank[" + std::to_string(d) + "]: " +
                                std::to_string(x.homology_rank[d]) + " vs " +
                                std::to_string(y.homology_rank[d]));

    for (int d : {2, 3}) {
        const bool xs = x.ring.rank_at(d) == x.ring.rank_at(top_degree - d);
        const bool ys = y.ring.rank_at(d) == y.ring.rank_at(top_degree - d);
        if (!xs || !ys) continue; // rank findings already cover this
        if (x.ring.rank_at(d) != y.ring.rank_at(d)) continue;
        const Int dx = abs(determinant(pairing_matrix(x.ring, d)));
        const Int dy = abs(determinant(pairing_matrix(y.ring, d)));
        if (dx != dy)
            rep.add("pairing", "degree " + std::to_string(d) + " pairing determinant: " +
                                   to_decimal(dx) + " vs " + to_decimal(dy));
    }

    const IsotropyReport ix = analyze_isotropy(x, bound);
    const IsotropyReport iy = analyze_isotropy(y, bound);
    if (ix.max_rank_found != iy.max_rank_found)
        rep.add("isotropy", "max isotropic rank at bound " + std::to_string(bound) + ": " +
                                std::to_string(ix.max_rank_found) + " vs " +
                                std::to_string(iy.max_rank_found));
    return rep;
}

} // namespace foldring
