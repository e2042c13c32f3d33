#pragma once

// Builders for the cohomology rings of the closed simply connected spin
// 7-manifolds produced by fold-map surgery on a connected sum of a copies
// of S^2 x S^5.  A model is determined by
//
//   a        rank of the base degree-2 block (classes a*_1..a*_a),
//   b        number of attached 2-spheres (classes b*_{j,2}),
//   b'       number of point attachments (classes t'_c / b'*_c),
//   A        b x a linking matrix: A(j, alpha) counts sphere j against the
//            alpha-th base class,
//   H        b x b symmetric crossing form with zero diagonal,
//   p        degree-4 integer tuple; the first Pontryagin class is 4p,
//   blocks   optional partition of the spheres 1..b; spheres in a common
//            block share one degree-4 class and one dual degree-3 class.
//
// Three families share one table layout and differ only in the crossing
// data: family 1 ignores H (all cross terms vanish), family 5 uses H with
// one degree-3/4 pair per sphere, family 6 additionally merges those pairs
// along the blocks.  Degree-2 ranks never merge.
//
// Basis order is fixed and load-bearing for every downstream comparison:
//   degree 2:  a*_1..a*_a, then b*_{1,2}..b*_{b,2}
//   degree 3:  one class per block in block order, then t'_1..t'_{b'}
//   degree 4:  one class per block in block order, then b'*_1..b'*_{b'}
//   degree 5:  f_1..f_a (duals of a*), then g_1..g_b (duals of b*_{.,2})
// Singleton blocks keep the per-sphere labels t_j / b*_{j,4}; larger blocks
// are labelled tau_k / beta_k by block position.

#include "foldring/diagnostics.hpp"
#include "foldring/integers.hpp"
#include "foldring/matrix.hpp"
#include "foldring/ring.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace foldring {

enum class ModelFamily { plain = 1, crossed = 5, blocked = 6 };

inline std::string family_name(ModelFamily f) {
    switch (f) {
        case ModelFamily::plain: return "1";
        case ModelFamily::crossed: return "5";
        case ModelFamily::blocked: return "6";
    }
    return "?";
}

inline std::optional<ModelFamily> family_from_number(int n) {
    switch (n) {
        case 1: return ModelFamily::plain;
        case 5: return ModelFamily::crossed;
        case 6: return ModelFamily::blocked;
        default: return std::nullopt;
    }
}

struct ConstructionParams {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t bprime = 0;
    IntegerMatrix link_matrix;   // b x a
    IntegerMatrix crossing_form; // b x b, symmetric, zero diagonal
    std::vector<Int> pontryagin; // length = #blocks + bprime (p, not 4p)
    std::optional<std::vector<std::vector<std::size_t>>> partition; // 1-based sphere ids
};

namespace labels {

inline std::string unit() { return "1"; }
inline std::string top() { return "mu"; }
inline std::string a_dual(std::size_t j) { return "a*_" + std::to_string(j); }
inline std::string b_dual2(std::size_t j) { return "b*_{" + std::to_string(j) + ",2}"; }
inline std::string b_dual4(std::size_t j) { return "b*_{" + std::to_string(j) + ",4}"; }
inline std::string t(std::size_t j) { return "t_" + std::to_string(j); }
inline std::string tprime(std::size_t c) { return "t'_" + std::to_string(c); }
inline std::string bprime_dual(std::size_t c) { return "b'*_" + std::to_string(c); }
inline std::string f(std::size_t j) { return "f_" + std::to_string(j); }
inline std::string g(std::size_t j) { return "g_" + std::to_string(j); }
inline std::string tau(std::size_t k) { return "tau_" + std::to_string(k); }
inline std::string beta(std::size_t k) { return "beta_" + std::to_string(k); }

} // namespace labels

struct CharacteristicRecord {
    // Vanishing flags for the Stiefel-Whitney classes w1..w5; every
    // constructed model is orientable and spin with w3 = w4 = w5 = 0.
    std::array<bool, 5> sw_vanish{true, true, true, true, true};
    // First Pontryagin class in the degree-4 basis.
    std::vector<Int> p1;
};

inline bool operator==(const CharacteristicRecord& x, const CharacteristicRecord& y) {
    return x.sw_vanish == y.sw_vanish && x.p1 == y.p1;
}

struct ManifoldModel {
    GradedRing ring;
    std::array<std::size_t, top_degree + 1> homology_rank{};
    CharacteristicRecord characteristic;
    std::string provenance;
    // Present when the model was built in-process; reports do not carry it.
    std::optional<ModelFamily> family;
    std::optional<ConstructionParams> params;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> singleton_blocks(std::size_t b) {
    std::vector<std::vector<std::size_t>> blocks(b);
    for (std::size_t j = 1; j <= b; ++j) blocks[j - 1] = {j};
    return blocks;
}

inline void validate_partition(const std::vector<std::vector<std::size_t>>& blocks,
                               std::size_t b) {
    std::vector<bool> seen(b + 1, false);
    for (const auto& block : blocks) {
        if (block.empty()) throw parameter_error("partition: empty block");
        for (std::size_t id : block) {
            if (id < 1 || id > b)
                throw parameter_error("partition: sphere id " + std::to_string(id) +
                                      " outside 1.." + std::to_string(b));
            if (seen[id])
                throw parameter_error("partition: sphere id " + std::to_string(id) +
                                      " repeated");
            seen[id] = true;
        }
    }
    for (std::size_t id = 1; id <= b; ++id)
        if (!seen[id])
            throw parameter_error("partition: sphere id " + std::to_string(id) + " missing");
}

} // namespace detail

// Number of degree-4 classes coming from spheres: one per partition block,
// or one per sphere when no partition is given.
inline std::size_t block_count(const ConstructionParams& p) {
    return p.partition ? p.partition->size() : p.b;
}

inline void validate_params(const ConstructionParams& p, ModelFamily family) {
    if (p.link_matrix.rows() != p.b || p.link_matrix.cols() != p.a)
        throw parameter_error("link matrix must be " + std::to_string(p.b) + " x " +
                              std::to_string(p.a));
    if (family != ModelFamily::plain) {
        if (p.crossing_form.rows() != p.b || p.crossing_form.cols() != p.b)
            throw parameter_error("crossing form must be " + std::to_string(p.b) + " x " +
                                  std::to_string(p.b));
        if (!p.crossing_form.is_symmetric())
            throw parameter_error("crossing form must be symmetric");
        if (!p.crossing_form.has_zero_diagonal())
            throw parameter_error("crossing form must have zero diagonal");
    }
    if (p.partition) detail::validate_partition(*p.partition, p.b);
    const std::size_t blocks =
        family == ModelFamily::blocked ? block_count(p) : p.b;
    if (!p.pontryagin.empty() && p.pontryagin.size() != blocks + p.bprime)
        throw parameter_error("pontryagin tuple has length " +
                              std::to_string(p.pontryagin.size()) + ", expected " +
                              std::to_string(blocks + p.bprime));
}

// Stiefel-Whitney flags plus p1 = 4p in the degree-4 basis.
inline CharacteristicRecord characteristic_record(const ConstructionParams& p,
                                                  ModelFamily family) {
    const std::size_t blocks = family == ModelFamily::blocked ? block_count(p) : p.b;
    const std::size_t len = blocks + p.bprime;
    if (!p.pontryagin.empty() && p.pontryagin.size() != len)
        throw parameter_error("pontryagin tuple has length " +
                              std::to_string(p.pontryagin.size()) + ", expected " +
                              std::to_string(len));
    CharacteristicRecord rec;
    rec.p1.assign(len, Int(0));
    for (std::size_t k = 0; k < p.pontryagin.size(); ++k) rec.p1[k] = 4 * p.pontryagin[k];
    return rec;
}

namespace detail {

// Shared table assembly.  `blocks` is the degree-3/4 merge pattern and
// `crossing` the (possibly zeroed) form; everything else reads off params.
inline ManifoldModel build_from_blocks(const ConstructionParams& p, ModelFamily family,
                                       const std::vector<std::vector<std::size_t>>& blocks,
                                       const IntegerMatrix& crossing) {
    const std::size_t a = p.a;
    const std::size_t b = p.b;
    const std::size_t bp = p.bprime;
    const std::size_t L = blocks.size();

    // block position of each sphere, 0-based
    std::vector<std::size_t> blk(b + 1, 0);
    for (std::size_t k = 0; k < L; ++k)
        for (std::size_t id : blocks[k]) blk[id] = k;

    ManifoldModel model;
    model.family = family;
    model.params = p;

    GradedRing& r = model.ring;
    r.rank = {1, 0, a + b, L + bp, L + bp, a + b, 0, 1};
    model.homology_rank = r.rank;

    r.basis[0] = {labels::unit()};
    for (std::size_t j = 1; j <= a; ++j) r.basis[2].push_back(labels::a_dual(j));
    for (std::size_t j = 1; j <= b; ++j) r.basis[2].push_back(labels::b_dual2(j));
    for (std::size_t k = 0; k < L; ++k)
        r.basis[3].push_back(blocks[k].size() == 1 ? labels::t(blocks[k][0])
                                                   : labels::tau(k + 1));
    for (std::size_t c = 1; c <= bp; ++c) r.basis[3].push_back(labels::tprime(c));
    for (std::size_t k = 0; k < L; ++k)
        r.basis[4].push_back(blocks[k].size() == 1 ? labels::b_dual4(blocks[k][0])
                                                   : labels::beta(k + 1));
    for (std::size_t c = 1; c <= bp; ++c) r.basis[4].push_back(labels::bprime_dual(c));
    for (std::size_t j = 1; j <= a; ++j) r.basis[5].push_back(labels::f(j));
    for (std::size_t j = 1; j <= b; ++j) r.basis[5].push_back(labels::g(j));
    r.basis[7] = {labels::top()};

    allocate_tables(r);

    // positions inside each graded piece
    auto apos = [&](std::size_t alpha) { return alpha - 1; };      // degree 2
    auto b2pos = [&](std::size_t j) { return a + j - 1; };         // degree 2
    auto fpos = [&](std::size_t alpha) { return alpha - 1; };      // degree 5
    auto gpos = [&](std::size_t j) { return a + j - 1; };          // degree 5
    auto tppos = [&](std::size_t c) { return L + c - 1; };         // degree 3
    auto bppos = [&](std::size_t c) { return L + c - 1; };         // degree 4

    const auto& A = p.link_matrix;
    const auto& H = crossing;

    // degree 2 x degree 2 -> degree 4.
    //   a* x a*          = 0
    //   a*_alpha x b*_j  = A(j, alpha) . (block class of j)
    //   b*_i   x b*_j    = H(i, j) . (block of i) + H(j, i) . (block of j)
    for (std::size_t alpha = 1; alpha <= a; ++alpha)
        for (std::size_t j = 1; j <= b; ++j) {
            std::vector<Int> c4(L + bp, Int(0));
            c4[blk[j]] = A.at(j - 1, alpha - 1);
            set_product(r, 2, apos(alpha), 2, b2pos(j), c4);
        }
    for (std::size_t i = 1; i <= b; ++i)
        for (std::size_t j = i + 1; j <= b; ++j) {
            std::vector<Int> c4(L + bp, Int(0));
            c4[blk[i]] += H.at(i - 1, j - 1);
            c4[blk[j]] += H.at(j - 1, i - 1);
            set_product(r, 2, b2pos(i), 2, b2pos(j), c4);
        }

    // degree 2 x degree 3 -> degree 5.  Writing J_k for block k:
    //   a*_alpha x (block k) = sum_{j in J_k} A(j, alpha) g_j
    //   b*_i x (block k)     = [i in J_k] (sum_al A(i, al) f_al + sum_j H(i, j) g_j)
    //                          + sum_{j in J_k} H(j, i) g_j
    //   everything times t'_c = 0
    // The H(j, i) tail on distinct indices is forced by associativity with
    // the degree-2 products above; it vanishes exactly when H = 0.
    for (std::size_t k = 0; k < L; ++k) {
        for (std::size_t alpha = 1; alpha <= a; ++alpha) {
            std::vector<Int> c5(a + b, Int(0));
            for (std::size_t j : blocks[k]) c5[gpos(j)] += A.at(j - 1, alpha - 1);
            set_product(r, 2, apos(alpha), 3, k, c5);
        }
        for (std::size_t i = 1; i <= b; ++i) {
            std::vector<Int> c5(a + b, Int(0));
            if (blk[i] == k) {
                for (std::size_t alpha = 1; alpha <= a; ++alpha)
                    c5[fpos(alpha)] += A.at(i - 1, alpha - 1);
                for (std::size_t j = 1; j <= b; ++j) c5[gpos(j)] += H.at(i - 1, j - 1);
            }
            for (std::size_t j : blocks[k]) c5[gpos(j)] += H.at(j - 1, i - 1);
            set_product(r, 2, b2pos(i), 3, k, c5);
        }
    }

    // Poincare duality pairings: diagonal mu, all cross terms zero.
    for (std::size_t alpha = 1; alpha <= a; ++alpha)
        set_product(r, 2, apos(alpha), 5, fpos(alpha), {Int(1)});
    for (std::size_t j = 1; j <= b; ++j)
        set_product(r, 2, b2pos(j), 5, gpos(j), {Int(1)});
    for (std::size_t k = 0; k < L; ++k) set_product(r, 3, k, 4, k, {Int(1)});
    for (std::size_t c = 1; c <= bp; ++c)
        set_product(r, 3, tppos(c), 4, bppos(c), {Int(1)});

    model.characteristic = characteristic_record(p, family);

    model.provenance = "build(family=" + family_name(family) + ", a=" + std::to_string(a) +
                       ", b=" + std::to_string(b) + ", b'=" + std::to_string(bp) +
                       ", blocks=" + std::to_string(L) + ")";
    return model;
}

} // namespace detail

// Family 1: crossing form ignored, all degree-2 cross terms vanish.
inline ManifoldModel build_plain_model(ConstructionParams p) {
    validate_params(p, ModelFamily::plain);
    p.crossing_form = IntegerMatrix(p.b, p.b);
    p.partition.reset();
    return detail::build_from_blocks(p, ModelFamily::plain, detail::singleton_blocks(p.b),
                                     p.crossing_form);
}

// Family 5: symmetric crossing form, one degree-3/4 pair per sphere.
inline ManifoldModel build_crossed_model(ConstructionParams p) {
    p.partition.reset();
    validate_params(p, ModelFamily::crossed);
    return detail::build_from_blocks(p, ModelFamily::crossed, detail::singleton_blocks(p.b),
                                     p.crossing_form);
}

// Family 6: crossing form plus block merging of the degree-3/4 classes.
// An absent partition means singleton blocks, which reproduces family 5.
inline ManifoldModel build_blocked_model(ConstructionParams p) {
    validate_params(p, ModelFamily::blocked);
    const auto blocks = p.partition ? *p.partition : detail::singleton_blocks(p.b);
    return detail::build_from_blocks(p, ModelFamily::blocked, blocks, p.crossing_form);
}

inline ManifoldModel build_model(ModelFamily family, const ConstructionParams& p) {
    switch (family) {
        case ModelFamily::plain: return build_plain_model(p);
        case ModelFamily::crossed: return build_crossed_model(p);
        case ModelFamily::blocked: return build_blocked_model(p);
    }
    throw parameter_error("unknown model family");
}

struct HomologyTable {
    std::array<std::size_t, top_degree + 1> rank{};
    Report report;
};

// The eight homology ranks plus their consistency findings: agreement with
// the ring, the simply connected pattern, duality symmetry, zero Euler
// characteristic.
inline HomologyTable homology_table(const ManifoldModel& m) {
    HomologyTable t;
    t.rank = m.homology_rank;

    for (int d = 0; d <= top_degree; ++d)
        if (m.homology_rank[d] != m.ring.rank[d])
            t.report.add("homology_vs_ring",
                         "degree " + std::to_string(d) + ": homology rank " +
                             std::to_string(m.homology_rank[d]) + " vs ring rank " +
                             std::to_string(m.ring.rank[d]));

    if (m.homology_rank[0] != 1 || m.homology_rank[7] != 1)
        t.report.add("homology_pattern", "ranks in degrees 0 and 7 must both be 1");
    if (m.homology_rank[1] != 0 || m.homology_rank[6] != 0)
        t.report.add("homology_pattern", "ranks in degrees 1 and 6 must both be 0");

    for (int d = 0; d <= 3; ++d)
        if (m.homology_rank[d] != m.homology_rank[top_degree - d])
            t.report.add("duality_symmetry",
                         "rank[" + std::to_string(d) + "] != rank[" +
                             std::to_string(top_degree - d) + "]");

    long long euler = 0;
    for (int d = 0; d <= top_degree; ++d)
        euler += (d % 2 ? -1 : 1) * static_cast<long long>(m.homology_rank[d]);
    if (euler != 0)
        t.report.add("euler_characteristic",
                     "alternating rank sum is " + std::to_string(euler) + ", expected 0");

    return t;
}

// Aggregate verification: ring audit, homology consistency, unimodular
// duality pairings in degrees 2/5 and 3/4, characteristic sanity.  When the
// model still carries its construction parameters the ranks and p1 are also
// checked against them exactly.
inline Report verify_model(const ManifoldModel& m) {
    Report rep;
    rep.merge(check_ring(m.ring));
    rep.merge(homology_table(m).report);

    for (int d : {2, 3}) {
        if (m.ring.rank_at(d) != m.ring.rank_at(top_degree - d)) {
            rep.add("duality_pairing", "degree " + std::to_string(d) +
                                           " pairing matrix is not square");
            continue;
        }
        if (m.ring.rank_at(top_degree) != 1) continue; // already reported by check_ring
        const IntegerMatrix pm = pairing_matrix(m.ring, d);
        if (!is_unimodular(pm))
            rep.add("duality_pairing", "degree " + std::to_string(d) +
                                           " pairing determinant is " +
                                           to_decimal(determinant(pm)) + ", expected +-1");
    }

    for (std::size_t w = 0; w < m.characteristic.sw_vanish.size(); ++w)
        if (!m.characteristic.sw_vanish[w])
            rep.add("stiefel_whitney", "w" + std::to_string(w + 1) + " flagged nonvanishing");
    if (m.characteristic.p1.size() != m.ring.rank_at(4))
        rep.add("pontryagin", "p1 has length " + std::to_string(m.characteristic.p1.size()) +
                                  ", expected rank[4] = " + std::to_string(m.ring.rank_at(4)));
    for (std::size_t k = 0; k < m.characteristic.p1.size(); ++k)
        if (m.characteristic.p1[k] % 4 != 0)
            rep.add("pontryagin", "p1 coordinate " + std::to_string(k) + " = " +
                                      to_decimal(m.characteristic.p1[k]) +
                                      " is not divisible by 4");

    if (m.params && m.family) {
        const ConstructionParams& p = *m.params;
        const std::size_t L =
            *m.family == ModelFamily::blocked ? block_count(p) : p.b;
        const std::array<std::size_t, 8> want = {
            1, 0, p.a + p.b, L + p.bprime, L + p.bprime, p.a + p.b, 0, 1};
        if (m.homology_rank != want)
            rep.add("parameter_ranks", "homology ranks disagree with construction parameters");
        CharacteristicRecord expect = characteristic_record(p, *m.family);
        if (!(m.characteristic == expect))
            rep.add("parameter_characteristic",
                    "characteristic record disagrees with construction parameters");
        if (*m.family != ModelFamily::plain && !p.crossing_form.is_zero())
            rep.note("off-diagonal products b*_{i,2} * t_j carry the associativity-forced "
                     "value H(j, i) g_j; they vanish only when the crossing form is zero");
    }

    return rep;
}

} // namespace foldring
