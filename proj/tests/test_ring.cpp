#include <foldring/construction.hpp>
#include <foldring/ring.hpp>

#include <catch_amalgamated.hpp>

using namespace foldring;

namespace {

// S^2 x S^5 cohomology: one class each in degrees 2, 5 and their product mu.
GradedRing sphere_product_ring() {
    GradedRing r;
    r.rank = {1, 0, 1, 0, 0, 1, 0, 1};
    r.basis[0] = {"1"};
    r.basis[2] = {"x"};
    r.basis[5] = {"y"};
    r.basis[7] = {"mu"};
    allocate_tables(r);
    set_product(r, 2, 0, 5, 0, {Int(1)});
    return r;
}

GradedClass lin(const Int& s, const GradedClass& x, const Int& t, const GradedClass& y) {
    GradedClass out = x;
    for (std::size_t i = 0; i < out.coords.size(); ++i)
        out.coords[i] = s * x.coords[i] + t * y.coords[i];
    return out;
}

ConstructionParams p0_params() {
    ConstructionParams p;
    p.a = 1;
    p.b = 2;
    p.link_matrix = IntegerMatrix::from_rows({{1}, {1}});
    p.crossing_form = IntegerMatrix::from_rows({{0, 1}, {1, 0}});
    p.pontryagin = {0, 0};
    return p;
}

} // namespace

TEST_CASE("commutation sign is (-1)^(d1 d2)", "[ring]") {
    REQUIRE(commutation_sign(0, 5) == 1);
    REQUIRE(commutation_sign(2, 2) == 1);
    REQUIRE(commutation_sign(2, 5) == 1);
    REQUIRE(commutation_sign(3, 4) == 1);
    REQUIRE(commutation_sign(3, 3) == -1);
    REQUIRE(commutation_sign(5, 3) == -1);
    REQUIRE(commutation_sign(1, 1) == -1);
}

TEST_CASE("sphere product ring passes all axioms", "[ring]") {
    const GradedRing r = sphere_product_ring();
    REQUIRE(check_ring(r).ok());

    const GradedClass one = basis_class(r, 0, 0);
    const GradedClass x = basis_class(r, 2, 0);
    const GradedClass y = basis_class(r, 5, 0);
    REQUIRE(cup(r, one, x) == x);
    REQUIRE(cup(r, y, one) == y);
    REQUIRE(cup(r, x, y) == basis_class(r, 7, 0));
    REQUIRE(cup(r, y, x) == basis_class(r, 7, 0)); // 2*5 even, no sign
    REQUIRE(cup(r, x, x).is_zero());               // degree 4 has rank 0
    REQUIRE(cup(r, y, y).degree == 10);
    REQUIRE(cup(r, y, y).is_zero()); // above the top degree

    REQUIRE(pairing_matrix(r, 2) == IntegerMatrix::identity(1));
    REQUIRE(pairing_matrix(r, 3) == IntegerMatrix(0, 0));
    REQUIRE_THROWS_AS(pairing_matrix(r, 0), dimension_error);
    REQUIRE_THROWS_AS(pairing_matrix(r, 7), dimension_error);
}

TEST_CASE("cup rejects coordinate vectors of the wrong length", "[ring]") {
    const GradedRing r = sphere_product_ring();
    GradedClass bad{2, {Int(1), Int(0)}};
    REQUIRE_THROWS_AS(cup(r, bad, basis_class(r, 5, 0)), dimension_error);
}

TEST_CASE("set_product installs the graded-commutative mirror", "[ring]") {
    // Even-degree pair: mirror keeps the sign.
    GradedRing r = sphere_product_ring();
    REQUIRE(r.coeff(5, 0, 2, 0, 0) == 1);

    // Odd-degree pair needs an off-pattern rank-1 degree 6 to be visible;
    // check_ring must flag that rank while the mirror still carries -1.
    GradedRing odd;
    odd.rank = {1, 0, 0, 2, 0, 0, 1, 1};
    odd.basis[0] = {"1"};
    odd.basis[3] = {"s", "t"};
    odd.basis[6] = {"z"};
    odd.basis[7] = {"mu"};
    allocate_tables(odd);
    set_product(odd, 3, 0, 3, 1, {Int(1)});
    REQUIRE(odd.coeff(3, 0, 3, 1, 0) == 1);
    REQUIRE(odd.coeff(3, 1, 3, 0, 0) == -1);
    const Report rep = check_ring(odd);
    REQUIRE_FALSE(rep.ok());
    REQUIRE(rep.findings.front().code == "rank");

    // Nonzero products above the top degree are not representable.
    GradedRing s = sphere_product_ring();
    REQUIRE_THROWS_AS(set_product(s, 5, 0, 5, 0, {Int(1)}), dimension_error);
    REQUIRE_NOTHROW(set_product(s, 5, 0, 5, 0, {Int(0)}));
}

TEST_CASE("cup is bilinear on a three-generator degree 2", "[ring]") {
    const ManifoldModel m = build_crossed_model(p0_params());
    const GradedRing& r = m.ring;

    const GradedClass u = basis_class(r, 2, 0);
    const GradedClass v = basis_class(r, 2, 1);
    const GradedClass w = lin(Int(3), basis_class(r, 2, 2), Int(-2), u);
    for (const Int& s : {Int(-3), Int(0), Int(2), Int(7)})
        for (const Int& t : {Int(-1), Int(4)}) {
            const GradedClass left = cup(r, lin(s, u, t, v), w);
            const GradedClass expect = lin(s, cup(r, u, w), t, cup(r, v, w));
            REQUIRE(left.degree == 4);
            REQUIRE(left == expect);
        }
}

TEST_CASE("complementary pairings are transposes", "[ring]") {
    // d(7-d) is even for every d, so no sign enters.
    const ManifoldModel m = build_crossed_model(p0_params());
    REQUIRE(pairing_matrix(m.ring, 5) == pairing_matrix(m.ring, 2).transpose());
    REQUIRE(pairing_matrix(m.ring, 4) == pairing_matrix(m.ring, 3).transpose());
    REQUIRE(pairing_matrix(m.ring, 1) == IntegerMatrix(0, 0));
}

TEST_CASE("check_ring catches seeded defects", "[ring]") {
    const ManifoldModel base = build_crossed_model(p0_params());

    SECTION("one-sided table edit breaks commutativity") {
        GradedRing r = base.ring;
        r.coeff(2, 0, 3, 0, 1) += 1; // mirror at (3,0,2,0,1) left behind
        const Report rep = check_ring(r);
        REQUIRE_FALSE(rep.ok());
        bool seen = false;
        for (const auto& f : rep.findings) seen = seen || f.code == "commutativity";
        REQUIRE(seen);
    }

    SECTION("mirrored but wrong product breaks associativity") {
        GradedRing r = base.ring;
        // b*_{1,2} * t_1 must be f_1 + g_2; zero it consistently
        set_product(r, 2, 1, 3, 0, {Int(0), Int(0), Int(0)});
        const Report rep = check_ring(r);
        REQUIRE_FALSE(rep.ok());
        bool seen = false;
        for (const auto& f : rep.findings) seen = seen || f.code == "associativity";
        REQUIRE(seen);
    }

    SECTION("unit law edit is reported") {
        GradedRing r = base.ring;
        r.coeff(0, 0, 2, 1, 1) = 0;
        const Report rep = check_ring(r);
        REQUIRE_FALSE(rep.ok());
        REQUIRE(rep.findings.front().code == "unit_law");
    }

    SECTION("missing label is reported") {
        GradedRing r = base.ring;
        r.basis[2].pop_back();
        const Report rep = check_ring(r);
        REQUIRE_FALSE(rep.ok());
        REQUIRE(rep.findings.front().code == "labels");
    }
}

TEST_CASE("find_basis_index resolves labels", "[ring]") {
    const ManifoldModel m = build_crossed_model(p0_params());
    REQUIRE(find_basis_index(m.ring, 2, "b*_{2,2}") == 2);
    REQUIRE(find_basis_index(m.ring, 5, "f_1") == 0);
    REQUIRE_FALSE(find_basis_index(m.ring, 2, "b*_{3,2}").has_value());
}
