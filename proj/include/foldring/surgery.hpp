#pragma once

// Surgery pipeline on special generic base maps.
//
// An InvariantRecord tracks everything the library knows about a map
// f : M^m -> R^n built by surgery: the free homology ranks of M and of the
// Reeb quotient W_f, the matrices of the pullback q* per degree, and -- in
// ambient dimension (m, n) = (7, 4) with 2-dimensional handles -- the full
// cohomology ring together with the characteristic record.
//
// A NormalSystem is a family of immersed spheres (kind `plain`) or flat
// wedges of sub-spheres (kind `polyhedral`) inside the Reeb space, with
// signed crossing data.  Validation checks the crossing bookkeeping against
// the target intersection form: per unordered pair the signed sum must
// equal the form entry, with at least that many crossings and matching
// parity.  apply_sphere_surgery replays one surgery step; the homology
// gains land in degrees
//
//     plain, dim n/2:   n/2, m-n, n, m-n/2        (+l each)
//     plain, dim k:     k,   m-n, n, m-n+k        (+l each, embedded only)
//     polyhedral:       n/2 and m-n/2 gain +K, m-n and n gain +l
//
// where l is the number of entries and K the total number of sub-spheres.
// The Reeb space is n-dimensional, so its ranks (and q*) only pick up the
// gains in degrees <= n.
//
// Ring replay: a new degree-2 class per sub-sphere x links old classes
// through the pairing lambda_i(x) = sum_r base_class_x[r] * q2(r, i); in
// the canonical pipelines q2 is the identity and lambda is literally the
// linking matrix.  Products among new classes follow the crossing form,
// one degree-3/4 dual pair per entry.

#include "foldring/construction.hpp"
#include "foldring/diagnostics.hpp"
#include "foldring/integers.hpp"
#include "foldring/matrix.hpp"
#include "foldring/ring.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace foldring {

struct SphereEntry {
    int id = 0;                                  // unique among entries
    int dim = 0;                                 // dimension of every sub-sphere
    std::vector<int> sub_ids;                    // globally unique; {id} when plain
    std::vector<std::vector<Int>> base_classes;  // one tuple per sub-sphere

    std::size_t sub_sphere_count() const { return sub_ids.size(); }
};

struct Crossing {
    int first = 0;
    int second = 0;
    int sign = 0; // +1 or -1
};

enum class SystemKind { plain, polyhedral };

inline std::string kind_name(SystemKind k) {
    return k == SystemKind::plain ? "plain" : "polyhedral";
}

struct NormalSystem {
    SystemKind kind = SystemKind::plain;
    std::vector<SphereEntry> spheres;
    std::vector<Crossing> crossings;
    // K x K symmetric form with zero diagonal, K = total sub-spheres,
    // indexed by the position of each sub-id in increasing order.
    IntegerMatrix target_form;
};

// Crossing list realizing `form`: per pair, |form| crossings of the right
// sign, plus `min_extra` cancelling (+1, -1) pairs of slack.
inline std::vector<Crossing> crossings_for_form(const IntegerMatrix& form,
                                                const std::vector<int>& sub_ids,
                                                std::size_t min_extra = 0) {
    if (form.rows() != sub_ids.size() || form.cols() != sub_ids.size())
        throw dimension_error("crossings_for_form: form shape does not match id count");
    std::vector<Crossing> out;
    for (std::size_t x = 0; x < sub_ids.size(); ++x)
        for (std::size_t y = x + 1; y < sub_ids.size(); ++y) {
            const Int& h = form.at(x, y);
            const int sign = h < 0 ? -1 : 1;
            for (Int c = 0; c < abs(h); ++c)
                out.push_back(Crossing{sub_ids[x], sub_ids[y], sign});
            for (std::size_t e = 0; e < min_extra; ++e) {
                out.push_back(Crossing{sub_ids[x], sub_ids[y], 1});
                out.push_back(Crossing{sub_ids[x], sub_ids[y], -1});
            }
        }
    return out;
}

struct InvariantRecord {
    int m = 7;
    int n = 4;
    std::vector<std::size_t> manifold_rank;  // size m + 1
    std::vector<std::size_t> reeb_rank;      // size n + 1
    std::vector<IntegerMatrix> quotient_map; // size n + 1; [d] is reeb x manifold
    std::optional<GradedRing> ring;          // only for (m, n) = (7, 4) pipelines
    CharacteristicRecord characteristic;
    std::vector<std::string> history;
};

namespace detail {

inline std::string int_list(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

} // namespace detail

// Special generic base map on a connected sum of sphere products
// S^{l_j} x S^{m-l_j}; the Reeb space is a wedge of spheres S^{l_j} and q*
// is the identity on their classes.  An empty list gives the m-sphere.
inline InvariantRecord special_generic_base(const std::vector<int>& l_list, int m, int n) {
    if (n < 2 || m <= n)
        throw parameter_error("special generic base requires m > n >= 2");
    for (int l : l_list)
        if (l < 1 || l > n - 1)
            throw parameter_error("handle dimension " + std::to_string(l) +
                                  " outside 1.." + std::to_string(n - 1));

    InvariantRecord rec;
    rec.m = m;
    rec.n = n;
    rec.manifold_rank.assign(m + 1, 0);
    rec.reeb_rank.assign(n + 1, 0);
    rec.manifold_rank[0] = rec.manifold_rank[m] = 1;
    rec.reeb_rank[0] = 1;
    for (int l : l_list) {
        rec.manifold_rank[l] += 1;
        rec.manifold_rank[m - l] += 1;
        rec.reeb_rank[l] += 1;
    }

    rec.quotient_map.assign(n + 1, IntegerMatrix());
    rec.quotient_map[0] = IntegerMatrix::identity(1);
    for (int d = 1; d <= n; ++d) {
        // Manifold classes in degree d: first the handles with l_j = d
        // (pulled back from the Reeb space), then those with m - l_j = d
        // (killed by q*).
        std::size_t pulled = 0, killed = 0;
        for (int l : l_list) {
            if (l == d) ++pulled;
            if (m - l == d) ++killed;
        }
        IntegerMatrix q(pulled, pulled + killed);
        for (std::size_t i = 0; i < pulled; ++i) q.at(i, i) = 1;
        rec.quotient_map[d] = q;
    }

    const bool ring_shape =
        m == 7 && n == 4 &&
        std::all_of(l_list.begin(), l_list.end(), [](int l) { return l == 2; });
    if (ring_shape) {
        ConstructionParams p;
        p.a = l_list.size();
        p.link_matrix = IntegerMatrix(0, p.a);
        p.crossing_form = IntegerMatrix(0, 0);
        ManifoldModel base = build_plain_model(p);
        rec.ring = base.ring;
        rec.characteristic = base.characteristic;
    }

    rec.history.push_back("special_generic_base(l=" + detail::int_list(l_list) +
                          ", m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
    return rec;
}

namespace detail {

// Sorted global sub-id list; positions index the target form.
inline std::vector<int> sorted_sub_ids(const NormalSystem& sys) {
    std::vector<int> ids;
    for (const auto& e : sys.spheres)
        ids.insert(ids.end(), e.sub_ids.begin(), e.sub_ids.end());
    std::sort(ids.begin(), ids.end());
    return ids;
}

} // namespace detail

// Semantic validation of a system against the record it would be applied
// to.  Empty report = applicable.
inline Report validate_normal_system(const NormalSystem& sys, const InvariantRecord& base) {
    Report rep;
    const int m = base.m;
    const int n = base.n;

    if (sys.spheres.empty()) {
        if (sys.target_form.rows() != 0 || sys.target_form.cols() != 0)
            rep.add("target_form", "empty system carries a nonempty target form");
        if (!sys.crossings.empty())
            rep.add("crossings", "empty system carries crossings");
        return rep;
    }

    // ids and sub-ids unique, entries nonempty
    {
        std::vector<int> ids, subs;
        for (const auto& e : sys.spheres) {
            ids.push_back(e.id);
            if (e.sub_ids.empty()) rep.add("spheres", "entry " + std::to_string(e.id) +
                                                          " has no sub-spheres");
            subs.insert(subs.end(), e.sub_ids.begin(), e.sub_ids.end());
            if (sys.kind == SystemKind::plain && e.sub_ids.size() != 1)
                rep.add("kind", "plain system entry " + std::to_string(e.id) +
                                    " has " + std::to_string(e.sub_ids.size()) +
                                    " sub-spheres");
        }
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            rep.add("spheres", "duplicate entry id");
        std::sort(subs.begin(), subs.end());
        if (std::adjacent_find(subs.begin(), subs.end()) != subs.end())
            rep.add("spheres", "duplicate sub-sphere id");
    }

    // one common dimension
    const int k = sys.spheres.front().dim;
    for (const auto& e : sys.spheres)
        if (e.dim != k)
            rep.add("dimension", "mixed sphere dimensions " + std::to_string(k) + " and " +
                                     std::to_string(e.dim));
    if (k <= 0) {
        rep.add("dimension",
                "sphere dimension must be positive; use the point attachment operation");
        return rep;
    }

    const bool half = (n % 2 == 0) && k == n / 2;
    if (sys.kind == SystemKind::polyhedral && !half)
        rep.add("dimension", "polyhedral systems need even n and sub-sphere dimension n/2");

    if (m - n == n)
        rep.add("dimension", "ambient dimensions with m = 2n are not supported");
    if (half) {
        // n/2-dimensional handles: need n/2 < m-n and n < m-n/2 (< m holds
        // since n > 0).
        if (!(n / 2 < m - n && n < m - n / 2))
            rep.add("dimension", "constraints n/2 < m-n and n < m-n/2 fail for m=" +
                                     std::to_string(m) + ", n=" + std::to_string(n));
    } else {
        // embedded case: k <= n/2 (wedge-free), k < m-n, n < m-n+k < m
        if (2 * k > n)
            rep.add("dimension", "sphere dimension " + std::to_string(k) +
                                     " exceeds n/2 = " + std::to_string(n) + "/2");
        if (!(k < m - n && n < m - n + k && m - n + k < m))
            rep.add("dimension", "constraints k < m-n and n < m-n+k < m fail for k=" +
                                     std::to_string(k));
        if (!sys.crossings.empty())
            rep.add("crossings", "spheres of dimension != n/2 must be embedded (no crossings)");
        if (!sys.target_form.is_zero())
            rep.add("target_form", "spheres of dimension != n/2 require a zero target form");
    }

    // base classes measured against the current Reeb ranks
    if (k <= n) {
        const std::size_t want = base.reeb_rank[static_cast<std::size_t>(k)];
        for (const auto& e : sys.spheres) {
            if (e.base_classes.size() != e.sub_ids.size())
                rep.add("base_class", "entry " + std::to_string(e.id) + " has " +
                                          std::to_string(e.base_classes.size()) +
                                          " base tuples for " +
                                          std::to_string(e.sub_ids.size()) + " sub-spheres");
            else
                for (const auto& tuple : e.base_classes)
                    if (tuple.size() != want)
                        rep.add("base_class",
                                "entry " + std::to_string(e.id) + " base tuple length " +
                                    std::to_string(tuple.size()) + ", expected Reeb rank " +
                                    std::to_string(want));
        }
    }

    // crossing bookkeeping against the target form
    const std::vector<int> subs = detail::sorted_sub_ids(sys);
    const std::size_t K = subs.size();
    if (sys.target_form.rows() != K || sys.target_form.cols() != K) {
        rep.add("target_form", "target form is " + std::to_string(sys.target_form.rows()) +
                                   " x " + std::to_string(sys.target_form.cols()) +
                                   ", expected " + std::to_string(K) + " x " +
                                   std::to_string(K));
        return rep;
    }
    if (!sys.target_form.is_symmetric()) rep.add("target_form", "target form is not symmetric");
    if (!sys.target_form.has_zero_diagonal())
        rep.add("target_form", "target form has a nonzero diagonal entry");

    auto position = [&](int id) {
        const auto it = std::lower_bound(subs.begin(), subs.end(), id);
        return (it != subs.end() && *it == id) ? static_cast<long>(it - subs.begin()) : -1L;
    };

    std::map<std::pair<long, long>, std::pair<Int, std::size_t>> tally; // (sum, count)
    for (const auto& c : sys.crossings) {
        if (c.sign != 1 && c.sign != -1) {
            rep.add("crossings", "crossing sign must be +1 or -1");
            continue;
        }
        const long px = position(c.first);
        const long py = position(c.second);
        if (px < 0 || py < 0) {
            rep.add("crossings", "crossing references unknown sub-sphere id " +
                                     std::to_string(px < 0 ? c.first : c.second));
            continue;
        }
        auto key = std::minmax(px, py);
        auto& slot = tally[{key.first, key.second}];
        slot.first += c.sign;
        slot.second += 1;
    }

    for (std::size_t x = 0; x < K; ++x)
        for (std::size_t y = x; y < K; ++y) {
            const Int& want = sys.target_form.at(x, y);
            const auto it = tally.find({static_cast<long>(x), static_cast<long>(y)});
            const Int sum = it == tally.end() ? Int(0) : it->second.first;
            const std::size_t count = it == tally.end() ? 0 : it->second.second;
            const std::string pair_name = "{" + std::to_string(subs[x]) + "," +
                                          std::to_string(subs[y]) + "}";
            if (sum != want)
                rep.add("crossing_sum", "pair " + pair_name + ": signed crossing sum " +
                                            to_decimal(sum) + " != target " + to_decimal(want));
            if (Int(count) < abs(want))
                rep.add("crossing_count", "pair " + pair_name + ": " + std::to_string(count) +
                                              " crossings cannot realize target " +
                                              to_decimal(want));
            if ((Int(count) - abs(want)) % 2 != 0)
                rep.add("crossing_parity", "pair " + pair_name + ": crossing count " +
                                               std::to_string(count) +
                                               " has the wrong parity for target " +
                                               to_decimal(want));
        }

    // fresh labels when a ring is being tracked
    if (base.ring)
        for (int id : subs)
            if (find_basis_index(*base.ring, 2, labels::b_dual2(id)))
                rep.add("spheres", "sub-sphere id " + std::to_string(id) +
                                       " collides with an existing degree-2 class");

    return rep;
}

namespace detail {

// lambda(x) = base_class_x^T . q2 : linking coefficients of sub-sphere x
// against the old degree-2 manifold basis.
inline std::vector<Int> linking_row(const std::vector<Int>& base_class,
                                    const IntegerMatrix& q2) {
    std::vector<Int> row(q2.cols(), Int(0));
    for (std::size_t r = 0; r < q2.rows(); ++r) {
        if (base_class[r] == 0) continue;
        for (std::size_t i = 0; i < q2.cols(); ++i) row[i] += base_class[r] * q2.at(r, i);
    }
    return row;
}

struct SubSphereInfo {
    int id;
    std::size_t entry;        // position of the owning entry (entries sorted by id)
    std::vector<Int> linking; // lambda row
};

// Extends the ring of a (7, 4) record by one sphere-surgery step.
// Pre: rec still holds the pre-surgery ranks, ring and pullback matrices.
inline void extend_ring(InvariantRecord& rec, const NormalSystem& sys,
                        const std::vector<const SphereEntry*>& entries,
                        const std::vector<int>& subs) {
    const GradedRing old = *rec.ring;
    const IntegerMatrix& q2 = rec.quotient_map[2];

    // global sub-sphere table in sorted-id order
    std::vector<SubSphereInfo> table;
    for (int id : subs) {
        for (std::size_t e = 0; e < entries.size(); ++e) {
            const auto& sub = entries[e]->sub_ids;
            const auto it = std::find(sub.begin(), sub.end(), id);
            if (it == sub.end()) continue;
            const std::size_t pos = static_cast<std::size_t>(it - sub.begin());
            table.push_back(SubSphereInfo{id, e,
                                          linking_row(entries[e]->base_classes[pos], q2)});
            break;
        }
    }

    const std::size_t K = table.size();
    const std::size_t l = entries.size();
    const std::size_t o2 = old.rank[2];
    const std::size_t o3 = old.rank[3];
    const std::size_t o4 = old.rank[4];
    const std::size_t o5 = old.rank[5];

    GradedRing r;
    r.rank = old.rank;
    r.rank[2] += K;
    r.rank[3] += l;
    r.rank[4] += l;
    r.rank[5] += K;
    r.basis = old.basis;
    for (const auto& s : table) r.basis[2].push_back(labels::b_dual2(s.id));
    for (std::size_t e = 0; e < l; ++e)
        r.basis[3].push_back(entries[e]->sub_ids.size() == 1
                                 ? labels::t(entries[e]->sub_ids[0])
                                 : labels::tau(entries[e]->id));
    for (std::size_t e = 0; e < l; ++e)
        r.basis[4].push_back(entries[e]->sub_ids.size() == 1
                                 ? labels::b_dual4(entries[e]->sub_ids[0])
                                 : labels::beta(entries[e]->id));
    for (const auto& s : table) r.basis[5].push_back(labels::g(s.id));
    allocate_tables(r);

    // old products persist verbatim (new coordinates stay zero)
    for (int d1 = 0; d1 <= top_degree; ++d1)
        for (int d2 = 0; d1 + d2 <= top_degree; ++d2)
            for (std::size_t i = 0; i < old.rank_at(d1); ++i)
                for (std::size_t j = 0; j < old.rank_at(d2); ++j)
                    for (std::size_t k = 0; k < old.rank_at(d1 + d2); ++k)
                        r.coeff(d1, i, d2, j, k) = old.coeff(d1, i, d2, j, k);

    const auto& H = sys.target_form;
    auto n2 = [&](std::size_t x) { return o2 + x; };      // new degree-2 position
    auto n3 = [&](std::size_t e) { return o3 + e; };      // new degree-3 position
    auto n4 = [&](std::size_t e) { return o4 + e; };      // new degree-4 position
    auto n5 = [&](std::size_t x) { return o5 + x; };      // new degree-5 position
    const std::size_t r4 = r.rank[4];
    const std::size_t r5 = r.rank[5];

    // old2 x new2: linking against the new sphere's degree-4 block
    for (std::size_t i = 0; i < o2; ++i)
        for (std::size_t x = 0; x < K; ++x) {
            std::vector<Int> c4(r4, Int(0));
            c4[n4(table[x].entry)] = table[x].linking[i];
            set_product(r, 2, i, 2, n2(x), c4);
        }

    // new2 x new2: crossing form, one term per side's block
    for (std::size_t x = 0; x < K; ++x)
        for (std::size_t y = x + 1; y < K; ++y) {
            std::vector<Int> c4(r4, Int(0));
            c4[n4(table[x].entry)] += H.at(x, y);
            c4[n4(table[y].entry)] += H.at(y, x);
            set_product(r, 2, n2(x), 2, n2(y), c4);
        }

    // old2 x new3: linking spread over the block members' duals
    for (std::size_t i = 0; i < o2; ++i)
        for (std::size_t e = 0; e < l; ++e) {
            std::vector<Int> c5(r5, Int(0));
            for (std::size_t x = 0; x < K; ++x)
                if (table[x].entry == e) c5[n5(x)] += table[x].linking[i];
            set_product(r, 2, i, 3, n3(e), c5);
        }

    // new2 x new3: the diagonal clause plus the crossing tail
    for (std::size_t x = 0; x < K; ++x)
        for (std::size_t e = 0; e < l; ++e) {
            std::vector<Int> c5(r5, Int(0));
            if (table[x].entry == e) {
                // duals of the old degree-2 classes sit at the same
                // positions in degree 5 (diagonal pairing, kept inductively)
                for (std::size_t i = 0; i < o2; ++i) c5[i] += table[x].linking[i];
                for (std::size_t y = 0; y < K; ++y) c5[n5(y)] += H.at(x, y);
            }
            for (std::size_t y = 0; y < K; ++y)
                if (table[y].entry == e) c5[n5(y)] += H.at(y, x);
            set_product(r, 2, n2(x), 3, n3(e), c5);
        }

    // duality pairings of the new classes
    for (std::size_t x = 0; x < K; ++x) set_product(r, 2, n2(x), 5, n5(x), {Int(1)});
    for (std::size_t e = 0; e < l; ++e) set_product(r, 3, n3(e), 4, n4(e), {Int(1)});

    rec.ring = std::move(r);
    rec.characteristic.p1.resize(rec.ring->rank[4], Int(0));
}

} // namespace detail

// One surgery step.  Throws surgery_error when validation fails; returns
// the input unchanged for an empty system.
inline InvariantRecord apply_sphere_surgery(const InvariantRecord& base,
                                            const NormalSystem& sys) {
    const Report rep = validate_normal_system(sys, base);
    if (!rep.ok())
        throw surgery_error("normal system rejected: " + rep.findings.front().code + ": " +
                            rep.findings.front().detail);
    if (sys.spheres.empty()) return base;

    InvariantRecord rec = base;
    const int m = rec.m;
    const int n = rec.n;
    const int k = sys.spheres.front().dim;

    std::vector<const SphereEntry*> entries;
    for (const auto& e : sys.spheres) entries.push_back(&e);
    std::sort(entries.begin(), entries.end(),
              [](const SphereEntry* x, const SphereEntry* y) { return x->id < y->id; });
    const std::vector<int> subs = detail::sorted_sub_ids(sys);
    const std::size_t l = entries.size();
    const std::size_t K = subs.size();

    // Ring replay first: it reads the pre-surgery degree-2 pullback matrix.
    if (rec.ring && m == 7 && n == 4 && k == 2)
        detail::extend_ring(rec, sys, entries, subs);
    else if (rec.ring)
        rec.ring.reset(); // ring replay is only defined for (7,4) 2-handles

    // manifold gains: (degree, amount)
    std::vector<std::pair<int, std::size_t>> gains;
    if (sys.kind == SystemKind::polyhedral) {
        gains = {{n / 2, K}, {m - n, l}, {n, l}, {m - n / 2, K}};
    } else if (2 * k == n) {
        gains = {{n / 2, l}, {m - n, l}, {n, l}, {m - n / 2, l}};
    } else {
        // Embedded spheres of dimension k < n/2 add two dual pairs: the
        // sphere class and its (m-k)-dual, plus a fresh regular-fiber
        // component and its degree-n dual.  At k = n/2 this is the branch
        // above, and at k = 0 it degenerates to the point attachment.
        gains = {{k, l}, {m - n, l}, {n, l}, {m - k, l}};
    }

    for (const auto& [d, amount] : gains) rec.manifold_rank[d] += amount;

    // Reeb gains are capped at degree n; one class per entry in each degree
    // the Reeb space can see.
    for (const auto& [d, amount] : gains) {
        if (d > n) continue;
        rec.reeb_rank[d] += l;
        IntegerMatrix block(l, amount);
        if (amount == l) {
            for (std::size_t i = 0; i < l; ++i) block.at(i, i) = 1;
        } else {
            // polyhedral degree n/2: each entry's Reeb class pulls back to
            // the sum of its sub-sphere classes
            for (std::size_t x = 0; x < K; ++x) {
                // owning entry of sub-sphere x
                for (std::size_t e = 0; e < l; ++e) {
                    const auto& si = entries[e]->sub_ids;
                    if (std::find(si.begin(), si.end(), subs[x]) != si.end()) {
                        block.at(e, x) = 1;
                        break;
                    }
                }
            }
        }
        rec.quotient_map[d] = block_diag(rec.quotient_map[d], block);
    }

    rec.history.push_back("sphere_surgery(kind=" + kind_name(sys.kind) +
                          ", entries=" + std::to_string(l) + ", subs=" + std::to_string(K) +
                          ", dim=" + std::to_string(k) + ")");
    return rec;
}

// Degenerate surgery along `count` points: one class in degree m-n and one
// in degree n per point, for the manifold and (in range) the Reeb space.
inline InvariantRecord apply_point_surgery(const InvariantRecord& base, std::size_t count) {
    if (count == 0) return base;
    InvariantRecord rec = base;
    const int m = rec.m;
    const int n = rec.n;

    for (int d : {m - n, n}) {
        rec.manifold_rank[d] += count;
        if (d <= n) {
            rec.reeb_rank[d] += count;
            rec.quotient_map[d] =
                block_diag(rec.quotient_map[d], IntegerMatrix::identity(count));
        }
    }

    if (rec.ring && m == 7 && n == 4) {
        GradedRing r = *rec.ring;
        // continue the prime-class numbering past whatever is present
        std::size_t start = 0;
        for (const auto& name : r.basis[3])
            if (name.rfind("t'_", 0) == 0) ++start;
        const std::size_t o3 = r.rank[3];
        const std::size_t o4 = r.rank[4];
        GradedRing grown;
        grown.rank = r.rank;
        grown.rank[3] += count;
        grown.rank[4] += count;
        grown.basis = r.basis;
        for (std::size_t c = 1; c <= count; ++c) {
            grown.basis[3].push_back(labels::tprime(start + c));
            grown.basis[4].push_back(labels::bprime_dual(start + c));
        }
        allocate_tables(grown);
        for (int d1 = 0; d1 <= top_degree; ++d1)
            for (int d2 = 0; d1 + d2 <= top_degree; ++d2)
                for (std::size_t i = 0; i < r.rank_at(d1); ++i)
                    for (std::size_t j = 0; j < r.rank_at(d2); ++j)
                        for (std::size_t k = 0; k < r.rank_at(d1 + d2); ++k)
                            grown.coeff(d1, i, d2, j, k) = r.coeff(d1, i, d2, j, k);
        for (std::size_t c = 0; c < count; ++c)
            set_product(grown, 3, o3 + c, 4, o4 + c, {Int(1)});
        rec.ring = std::move(grown);
        rec.characteristic.p1.resize(rec.ring->rank[4], Int(0));
    }

    rec.history.push_back("point_surgery(count=" + std::to_string(count) + ")");
    return rec;
}

// Installs the first Pontryagin class 4p on the finished record.
inline InvariantRecord realize_pontryagin(const InvariantRecord& base,
                                          const std::vector<Int>& p) {
    InvariantRecord rec = base;
    const std::size_t want =
        rec.ring ? rec.ring->rank[4]
                 : (rec.m >= 4 ? rec.manifold_rank[4] : 0);
    if (p.size() != want)
        throw parameter_error("pontryagin tuple has length " + std::to_string(p.size()) +
                              ", expected " + std::to_string(want));
    rec.characteristic.p1.assign(want, Int(0));
    for (std::size_t i = 0; i < want; ++i) rec.characteristic.p1[i] = 4 * p[i];
    std::string line = "pontryagin([";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) line += ",";
        line += to_decimal(p[i]);
    }
    rec.history.push_back(line + "])");
    return rec;
}

namespace detail {

inline std::string render_class(const GradedRing& r, int degree,
                                const std::vector<Int>& coords) {
    std::string out;
    for (std::size_t k = 0; k < coords.size(); ++k) {
        if (coords[k] == 0) continue;
        if (!out.empty()) out += " + ";
        out += to_decimal(coords[k]) + "*" + label_of(r, degree, k);
    }
    return out.empty() ? "0" : out;
}

} // namespace detail

// Structural sanity of a record: rank symmetry, q* shapes, and (with a
// ring) the full model verification.
inline Report verify_record(const InvariantRecord& rec) {
    Report rep;
    const int m = rec.m;
    const int n = rec.n;

    if (rec.manifold_rank.size() != static_cast<std::size_t>(m + 1) ||
        rec.reeb_rank.size() != static_cast<std::size_t>(n + 1) ||
        rec.quotient_map.size() != static_cast<std::size_t>(n + 1)) {
        rep.add("record_shape", "rank or quotient tables have the wrong length");
        return rep;
    }
    if (rec.manifold_rank[0] != 1 || rec.manifold_rank[m] != 1)
        rep.add("record_ranks", "manifold ranks in degrees 0 and m must be 1");
    for (int d = 0; d <= m; ++d)
        if (rec.manifold_rank[d] != rec.manifold_rank[m - d]) {
            rep.add("record_ranks", "manifold ranks are not duality-symmetric");
            break;
        }
    if (rec.reeb_rank[0] != 1) rep.add("record_ranks", "Reeb rank in degree 0 must be 1");
    for (int d = 0; d <= n; ++d) {
        const auto& q = rec.quotient_map[d];
        if (q.rows() != rec.reeb_rank[d] ||
            q.cols() != rec.manifold_rank[d])
            rep.add("quotient_map", "degree " + std::to_string(d) +
                                        " pullback matrix has the wrong shape");
    }

    if (rec.ring) {
        ManifoldModel model;
        model.ring = *rec.ring;
        for (int d = 0; d <= top_degree && d <= m; ++d)
            model.homology_rank[d] = rec.manifold_rank[d];
        model.characteristic = rec.characteristic;
        model.provenance = "record";
        rep.merge(verify_model(model));
    }
    return rep;
}

// Compares a surgery record against an independently built model: ranks,
// labelled structure constants, characteristic data.  Labels are the
// correspondence -- basis order may differ between the two sides.
inline Report pipeline_equivalence(const InvariantRecord& rec, const ManifoldModel& model) {
    Report rep;
    if (rec.m != top_degree) {
        rep.add("ambient", "record has ambient dimension m = " + std::to_string(rec.m) +
                               ", expected 7");
        return rep;
    }
    for (int d = 0; d <= top_degree; ++d)
        if (rec.manifold_rank[d] != model.homology_rank[d])
            rep.add("rank", "degree " + std::to_string(d) + ": pipeline rank " +
                                std::to_string(rec.manifold_rank[d]) + " vs model rank " +
                                std::to_string(model.homology_rank[d]));
    if (!rec.ring) {
        rep.add("ring", "pipeline record carries no ring");
        return rep;
    }
    const GradedRing& rr = *rec.ring;
    const GradedRing& mr = model.ring;

    // label correspondence per degree
    std::array<std::vector<long>, top_degree + 1> to_model{};
    bool labels_ok = true;
    for (int d = 0; d <= top_degree; ++d) {
        to_model[d].assign(rr.rank[d], -1);
        for (std::size_t i = 0; i < rr.basis[d].size() && i < rr.rank[d]; ++i) {
            const auto j = find_basis_index(mr, d, rr.basis[d][i]);
            if (!j) {
                rep.add("basis", "degree " + std::to_string(d) + " class " +
                                     rr.basis[d][i] + " missing from the model");
                labels_ok = false;
            } else {
                to_model[d][i] = static_cast<long>(*j);
            }
        }
        for (const auto& name : mr.basis[d])
            if (!find_basis_index(rr, d, name)) {
                rep.add("basis", "degree " + std::to_string(d) + " class " + name +
                                     " missing from the pipeline record");
                labels_ok = false;
            }
    }
    if (!labels_ok) return rep;

    for (int d1 = 0; d1 <= top_degree; ++d1)
        for (int d2 = d1; d1 + d2 <= top_degree; ++d2)
            for (std::size_t i = 0; i < rr.rank_at(d1); ++i)
                for (std::size_t j = 0; j < rr.rank_at(d2); ++j) {
                    const int d3 = d1 + d2;
                    bool differ = false;
                    for (std::size_t k = 0; k < rr.rank_at(d3); ++k) {
                        const Int& lhs = rr.coeff(d1, i, d2, j, k);
                        const Int& rhs = mr.coeff(d1, to_model[d1][i], d2, to_model[d2][j],
                                                  to_model[d3][k]);
                        if (lhs != rhs) differ = true;
                    }
                    if (differ) {
                        std::vector<Int> lhs(rr.rank_at(d3)), rhs(rr.rank_at(d3));
                        for (std::size_t k = 0; k < rr.rank_at(d3); ++k) {
                            lhs[k] = rr.coeff(d1, i, d2, j, k);
                            rhs[k] = mr.coeff(d1, to_model[d1][i], d2, to_model[d2][j],
                                              to_model[d3][k]);
                        }
                        rep.add("product",
                                rr.basis[d1][i] + " * " + rr.basis[d2][j] + ": pipeline gives " +
                                    detail::render_class(rr, d3, lhs) + ", model gives " +
                                    detail::render_class(rr, d3, rhs));
                    }
                }

    if (rec.characteristic.sw_vanish != model.characteristic.sw_vanish)
        rep.add("characteristic", "Stiefel-Whitney flags differ");
    if (rec.characteristic.p1.size() != rr.rank[4] ||
        model.characteristic.p1.size() != mr.rank[4]) {
        rep.add("characteristic", "p1 length does not match the degree-4 rank");
    } else {
        for (std::size_t i = 0; i < rr.rank[4]; ++i)
            if (rec.characteristic.p1[i] != model.characteristic.p1[to_model[4][i]])
                rep.add("characteristic", "p1 differs on " + rr.basis[4][i]);
    }
    return rep;
}

// Round fold map on the shell pattern of l concentric fold circles: the
// regular fiber count drops by one across every shell, from l inside the
// innermost circle to 0 outside.
struct RoundFoldDescriptor {
    int shells = 0;
    std::vector<int> radii;        // 1..l
    std::vector<int> fiber_counts; // inner to outer, length l + 1
};

inline RoundFoldDescriptor round_fold_descriptor(int l) {
    if (l < 1) throw parameter_error("round fold descriptor needs at least one shell");
    RoundFoldDescriptor d;
    d.shells = l;
    for (int i = 1; i <= l; ++i) d.radii.push_back(i);
    for (int i = 0; i <= l; ++i) d.fiber_counts.push_back(l - i);
    return d;
}

inline Report validate_round_fold(const RoundFoldDescriptor& d) {
    Report rep;
    if (d.shells < 1) rep.add("round_fold", "shell count must be at least 1");
    if (d.radii.size() != static_cast<std::size_t>(d.shells))
        rep.add("round_fold", "radius list length does not match the shell count");
    for (std::size_t i = 0; i + 1 < d.radii.size(); ++i)
        if (d.radii[i] >= d.radii[i + 1]) rep.add("round_fold", "radii must increase");
    if (d.fiber_counts.size() != static_cast<std::size_t>(d.shells) + 1) {
        rep.add("round_fold", "fiber count list must have one entry per region");
        return rep;
    }
    if (!d.fiber_counts.empty() && d.fiber_counts.back() != 0)
        rep.add("round_fold", "the unbounded region must have fiber count 0");
    for (std::size_t i = 0; i + 1 < d.fiber_counts.size(); ++i)
        if (d.fiber_counts[i] - d.fiber_counts[i + 1] != 1)
            rep.add("round_fold", "fiber count must drop by exactly one across shell " +
                                      std::to_string(i + 1));
    return rep;
}

} // namespace foldring
