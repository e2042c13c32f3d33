#pragma once

// Graded ring skeleton for closed oriented 7-manifolds with free integral
// cohomology.  A GradedRing stores ranks, printable basis labels and the
// full table of structure constants for every degree pair (d1, d2) with
// d1 + d2 <= 7; products landing above the top degree are identically zero
// and are represented by the zero class of the formal degree d1 + d2.
//
// check_ring is the single gatekeeper for algebraic sanity: rank pattern of
// a simply connected closed manifold, unit laws, graded commutativity
// (sign (-1)^{d1 d2}) and associativity on all basis triples of total
// degree <= 7.

#include "foldring/diagnostics.hpp"
#include "foldring/integers.hpp"
#include "foldring/matrix.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace foldring {

constexpr int top_degree = 7;

struct GradedClass {
    int degree = 0;
    std::vector<Int> coords;

    bool is_zero() const {
        for (const Int& c : coords)
            if (c != 0) return false;
        return true;
    }
};

inline bool operator==(const GradedClass& x, const GradedClass& y) {
    return x.degree == y.degree && x.coords == y.coords;
}

inline int commutation_sign(int d1, int d2) { return (d1 * d2) % 2 ? -1 : 1; }

struct GradedRing {
    std::array<std::size_t, top_degree + 1> rank{};
    std::array<std::vector<std::string>, top_degree + 1> basis{};

    // product[d1][d2] is a flat rank[d1] x rank[d2] x rank[d1+d2] tensor,
    // allocated only when d1 + d2 <= 7.
    std::array<std::array<std::vector<Int>, top_degree + 1>, top_degree + 1> product{};

    std::size_t rank_at(int d) const {
        return (d >= 0 && d <= top_degree) ? rank[static_cast<std::size_t>(d)] : 0;
    }

    std::size_t table_index(int d1, std::size_t i, int d2, std::size_t j, std::size_t k) const {
        return (i * rank_at(d2) + j) * rank_at(d1 + d2) + k;
    }

    const Int& coeff(int d1, std::size_t i, int d2, std::size_t j, std::size_t k) const {
        return product[static_cast<std::size_t>(d1)][static_cast<std::size_t>(d2)]
                      [table_index(d1, i, d2, j, k)];
    }

    Int& coeff(int d1, std::size_t i, int d2, std::size_t j, std::size_t k) {
        return product[static_cast<std::size_t>(d1)][static_cast<std::size_t>(d2)]
                      [table_index(d1, i, d2, j, k)];
    }
};

inline bool operator==(const GradedRing& x, const GradedRing& y) {
    return x.rank == y.rank && x.basis == y.basis && x.product == y.product;
}

inline bool operator!=(const GradedRing& x, const GradedRing& y) { return !(x == y); }

// Zero-fills every product table; used by loaders that replay recorded
// structure constants verbatim.
inline void allocate_zero_tables(GradedRing& r) {
    for (int d1 = 0; d1 <= top_degree; ++d1)
        for (int d2 = 0; d1 + d2 <= top_degree; ++d2)
            r.product[d1][d2].assign(r.rank_at(d1) * r.rank_at(d2) * r.rank_at(d1 + d2), Int(0));
}

// Zero-fills every product table and installs the unit laws.  Call once
// after ranks and basis labels are in place, before set_product.
inline void allocate_tables(GradedRing& r) {
    allocate_zero_tables(r);
    for (int d = 0; d <= top_degree; ++d)
        for (std::size_t i = 0; i < r.rank_at(d); ++i) {
            r.coeff(0, 0, d, i, i) = 1;
            r.coeff(d, i, 0, 0, i) = 1;
        }
}

// Writes e_i^{d1} * e_j^{d2} = sum_k coeffs[k] e_k^{d1+d2} together with its
// graded-commutative mirror, so builders only ever spell one side.
inline void set_product(GradedRing& r, int d1, std::size_t i, int d2, std::size_t j,
                        const std::vector<Int>& coeffs) {
    if (d1 + d2 > top_degree) {
        for (const Int& c : coeffs)
            if (c != 0) throw dimension_error("set_product: nonzero product above top degree");
        return;
    }
    if (coeffs.size() != r.rank_at(d1 + d2))
        throw dimension_error("set_product: coefficient length mismatch");
    const int sign = commutation_sign(d1, d2);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        r.coeff(d1, i, d2, j, k) = coeffs[k];
        r.coeff(d2, j, d1, i, k) = sign < 0 ? Int(-coeffs[k]) : coeffs[k];
    }
}

inline GradedClass zero_class(const GradedRing& r, int degree) {
    return GradedClass{degree, std::vector<Int>(r.rank_at(degree))};
}

inline GradedClass basis_class(const GradedRing& r, int degree, std::size_t i) {
    GradedClass c = zero_class(r, degree);
    c.coords.at(i) = 1;
    return c;
}

inline GradedClass cup(const GradedRing& r, const GradedClass& x, const GradedClass& y) {
    if (x.coords.size() != r.rank_at(x.degree) || y.coords.size() != r.rank_at(y.degree))
        throw dimension_error("cup: class coordinate length does not match ring rank");
    const int d3 = x.degree + y.degree;
    GradedClass out = zero_class(r, d3);
    if (d3 > top_degree) return out; // zero class above the top degree
    const std::size_t r3 = r.rank_at(d3);
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i] == 0) continue;
        for (std::size_t j = 0; j < y.coords.size(); ++j) {
            if (y.coords[j] == 0) continue;
            const Int xy = x.coords[i] * y.coords[j];
            for (std::size_t k = 0; k < r3; ++k) {
                const Int& c = r.coeff(x.degree, i, y.degree, j, k);
                if (c != 0) out.coords[k] += xy * c;
            }
        }
    }
    return out;
}

namespace detail {

inline std::string label_of(const GradedRing& r, int d, std::size_t i) {
    const auto& names = r.basis[static_cast<std::size_t>(d)];
    if (i < names.size()) return names[i];
    return "e^" + std::to_string(d) + "_" + std::to_string(i);
}

} // namespace detail

// Full semantic audit of a ring.  An empty report certifies the rank
// pattern, unit laws, graded commutativity and associativity.
inline Report check_ring(const GradedRing& r) {
    Report rep;

    if (r.rank[0] != 1) rep.add("rank", "rank[0] = " + std::to_string(r.rank[0]) + ", expected 1");
    if (r.rank[top_degree] != 1)
        rep.add("rank", "rank[7] = " + std::to_string(r.rank[top_degree]) + ", expected 1");
    if (r.rank[1] != 0) rep.add("rank", "rank[1] = " + std::to_string(r.rank[1]) + ", expected 0");
    if (r.rank[6] != 0) rep.add("rank", "rank[6] = " + std::to_string(r.rank[6]) + ", expected 0");

    for (int d = 0; d <= top_degree; ++d)
        if (r.basis[d].size() != r.rank[d])
            rep.add("labels", "degree " + std::to_string(d) + " has " +
                                  std::to_string(r.basis[d].size()) + " labels for rank " +
                                  std::to_string(r.rank[d]));

    bool shapes_ok = true;
    for (int d1 = 0; d1 <= top_degree; ++d1)
        for (int d2 = 0; d1 + d2 <= top_degree; ++d2) {
            const std::size_t want = r.rank_at(d1) * r.rank_at(d2) * r.rank_at(d1 + d2);
            if (r.product[d1][d2].size() != want) {
                rep.add("table_shape", "product table (" + std::to_string(d1) + "," +
                                           std::to_string(d2) + ") has " +
                                           std::to_string(r.product[d1][d2].size()) +
                                           " entries, expected " + std::to_string(want));
                shapes_ok = false;
            }
        }
    if (!shapes_ok || r.rank[0] != 1 || r.rank[top_degree] != 1) return rep;

    // Unit laws, read straight from the tables.
    for (int d = 0; d <= top_degree; ++d)
        for (std::size_t i = 0; i < r.rank_at(d); ++i)
            for (std::size_t k = 0; k < r.rank_at(d); ++k) {
                const Int want = (i == k) ? 1 : 0;
                if (r.coeff(0, 0, d, i, k) != want || r.coeff(d, i, 0, 0, k) != want) {
                    rep.add("unit_law", "unit does not act as identity on " +
                                            detail::label_of(r, d, i));
                    break;
                }
            }

    // Graded commutativity: table(d1,d2) must be the (-1)^{d1 d2}-twisted
    // transpose of table(d2,d1).
    for (int d1 = 0; d1 <= top_degree; ++d1)
        for (int d2 = d1; d1 + d2 <= top_degree; ++d2) {
            const int sign = commutation_sign(d1, d2);
            for (std::size_t i = 0; i < r.rank_at(d1); ++i)
                for (std::size_t j = 0; j < r.rank_at(d2); ++j)
                    for (std::size_t k = 0; k < r.rank_at(d1 + d2); ++k) {
                        const Int& lhs = r.coeff(d1, i, d2, j, k);
                        const Int& rhs = r.coeff(d2, j, d1, i, k);
                        if (lhs != (sign < 0 ? Int(-rhs) : rhs))
                            rep.add("commutativity",
                                    detail::label_of(r, d1, i) + " * " +
                                        detail::label_of(r, d2, j) + " violates the sign rule");
                    }
        }

    // Associativity on basis triples of total degree <= 7.  Triples with a
    // degree-0 factor reduce to the unit laws checked above, so positive
    // degrees suffice.
    for (int d1 = 1; d1 <= top_degree; ++d1)
        for (int d2 = 1; d1 + d2 <= top_degree; ++d2)
            for (int d3 = 1; d1 + d2 + d3 <= top_degree; ++d3)
                for (std::size_t i = 0; i < r.rank_at(d1); ++i)
                    for (std::size_t j = 0; j < r.rank_at(d2); ++j) {
                        const GradedClass ij =
                            cup(r, basis_class(r, d1, i), basis_class(r, d2, j));
                        for (std::size_t k = 0; k < r.rank_at(d3); ++k) {
                            const GradedClass ek = basis_class(r, d3, k);
                            const GradedClass lhs = cup(r, ij, ek);
                            const GradedClass rhs =
                                cup(r, basis_class(r, d1, i), cup(r, basis_class(r, d2, j), ek));
                            if (!(lhs == rhs))
                                rep.add("associativity",
                                        "(" + detail::label_of(r, d1, i) + " * " +
                                            detail::label_of(r, d2, j) + ") * " +
                                            detail::label_of(r, d3, k) + " != " +
                                            detail::label_of(r, d1, i) + " * (" +
                                            detail::label_of(r, d2, j) + " * " +
                                            detail::label_of(r, d3, k) + ")");
                        }
                    }

    return rep;
}

// Poincare pairing in degree d: entry (i, j) is the mu-coefficient of
// e_i^d * e_j^{7-d}.
inline IntegerMatrix pairing_matrix(const GradedRing& r, int d) {
    if (d < 1 || d > top_degree - 1)
        throw dimension_error("pairing_matrix: degree must lie in 1..6");
    const std::size_t r1 = r.rank_at(d);
    const std::size_t r2 = r.rank_at(top_degree - d);
    IntegerMatrix m(r1, r2);
    if (r.rank_at(top_degree) != 1) throw dimension_error("pairing_matrix: rank[7] must be 1");
    for (std::size_t i = 0; i < r1; ++i)
        for (std::size_t j = 0; j < r2; ++j) m.at(i, j) = r.coeff(d, i, top_degree - d, j, 0);
    return m;
}

inline std::optional<std::size_t> find_basis_index(const GradedRing& r, int degree,
                                                   const std::string& label) {
    const auto& names = r.basis[static_cast<std::size_t>(degree)];
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == label) return i;
    return std::nullopt;
}

} // namespace foldring
