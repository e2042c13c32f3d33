#include <foldring/analysis.hpp>
#include <foldring/construction.hpp>

#include <catch_amalgamated.hpp>

using namespace foldring;

namespace {

ConstructionParams p0_params() {
    ConstructionParams p;
    p.a = 1;
    p.b = 2;
    p.link_matrix = IntegerMatrix::from_rows({{1}, {1}});
    p.crossing_form = IntegerMatrix::from_rows({{0, 1}, {1, 0}});
    p.pontryagin = {0, 0};
    return p;
}

std::vector<Int> ints(std::initializer_list<int> v) {
    return std::vector<Int>(v.begin(), v.end());
}

} // namespace

TEST_CASE("obstruction clauses fire independently", "[analysis]") {
    // truth table over {p != 0} x {A != 0} x {H != 0}
    for (int mask = 0; mask < 8; ++mask) {
        const bool with_p = mask & 1, with_a = mask & 2, with_h = mask & 4;
        ConstructionParams p;
        p.a = 1;
        p.b = 2;
        p.link_matrix = IntegerMatrix(2, 1);
        p.crossing_form = IntegerMatrix(2, 2);
        p.pontryagin = {0, 0};
        if (with_p) p.pontryagin = {5, 0};
        if (with_a) p.link_matrix.at(0, 0) = 1;
        if (with_h) {
            p.crossing_form.at(0, 1) = 2;
            p.crossing_form.at(1, 0) = 2;
        }

        const ObstructionVerdict crossed =
            special_generic_obstruction(p, ModelFamily::crossed);
        std::vector<std::string> names;
        for (const auto r : crossed.reasons) names.push_back(reason_name(r));
        std::vector<std::string> want;
        if (with_p) want.push_back("p_nonzero");
        if (with_a) want.push_back("a_matrix_nonzero");
        if (with_h) want.push_back("H_nonzero");
        REQUIRE(names == want);
        REQUIRE(crossed.obstructed == (mask != 0));

        // the plain family never consults the crossing form
        const ObstructionVerdict plain = special_generic_obstruction(p, ModelFamily::plain);
        REQUIRE(plain.obstructed == (with_p || with_a));
        for (const auto r : plain.reasons) REQUIRE(reason_name(r) != "H_nonzero");
    }
}

TEST_CASE("squares of degree-2 classes", "[analysis]") {
    const ManifoldModel m = build_crossed_model(p0_params());

    // (x a* + y b*_1 + z b*_2)^2 = (2xy + 2yz) b*_{1,4} + (2xz + 2yz) b*_{2,4}
    REQUIRE(square_of(m, ints({0, 1, 0})).is_zero());
    REQUIRE(square_of(m, ints({1, 1, 0})).coords == ints({2, 0}));
    REQUIRE(square_of(m, ints({1, 1, 1})).coords == ints({4, 4}));
    REQUIRE(square_of(m, ints({-1, 2, 1})).coords == ints({0, 2}));
    REQUIRE_THROWS_AS(square_of(m, ints({1, 0})), dimension_error);

    SECTION("quadratic scaling and polarization") {
        const std::vector<std::vector<Int>> probes = {
            ints({1, 2, 3}), ints({-2, 0, 5}), ints({4, -4, 1})};
        for (const auto& u : probes)
            for (const auto& v : probes) {
                std::vector<Int> doubled = u, sum = u;
                for (std::size_t i = 0; i < u.size(); ++i) {
                    doubled[i] = 2 * u[i];
                    sum[i] = u[i] + v[i];
                }
                const GradedClass qu = square_of(m, u);
                for (std::size_t k = 0; k < qu.coords.size(); ++k)
                    REQUIRE(square_of(m, doubled).coords[k] == 4 * qu.coords[k]);
                // q(u+v) - q(u) - q(v) = 2 u v
                const GradedClass cross =
                    cup(m.ring, GradedClass{2, u}, GradedClass{2, v});
                const GradedClass qs = square_of(m, sum);
                const GradedClass qv = square_of(m, v);
                for (std::size_t k = 0; k < qu.coords.size(); ++k)
                    REQUIRE(qs.coords[k] - qu.coords[k] - qv.coords[k] ==
                            2 * cross.coords[k]);
            }
    }
}

TEST_CASE("vanishing locus of the two-crossing model is four lines", "[analysis]") {
    const ManifoldModel m = build_crossed_model(p0_params());
    const IsotropyReport rep = vanishing_locus(m, 4);

    REQUIRE(rep.search_bound == 4);
    REQUIRE(rep.vanishing_tuples.size() == 32); // 4 lines x 8 nonzero points
    REQUIRE(rep.lines == std::vector<std::vector<Int>>{
                             ints({0, 0, 1}),
                             ints({0, 1, 0}),
                             ints({1, -1, -1}),
                             ints({1, 0, 0}),
                         });
    REQUIRE(rep.union_of_lines);
    REQUIRE_FALSE(rep.witness_pair);
    REQUIRE(rep.max_rank_found == 1);

    // every reported tuple really squares to zero and lies on a reported line
    for (const auto& t : rep.vanishing_tuples) {
        REQUIRE(square_of(m, t).is_zero());
        bool on_line = false;
        for (const auto& l : rep.lines) {
            // t = c l for some integer c
            bool match = true;
            Int c = 0;
            for (std::size_t k = 0; k < t.size(); ++k)
                if (l[k] != 0) {
                    c = t[k] / l[k];
                    break;
                }
            for (std::size_t k = 0; k < t.size(); ++k) match = match && t[k] == c * l[k];
            on_line = on_line || match;
        }
        REQUIRE(on_line);
    }
}

TEST_CASE("the plain counterpart hides a rank-2 isotropic plane", "[analysis]") {
    const ManifoldModel m = build_plain_model(p0_params());
    const IsotropyReport rep = isotropic_rank_search(m, 3);

    // square is (2xy, 2xz): the whole x = 0 plane vanishes
    REQUIRE(rep.max_rank_found == 2);
    REQUIRE_FALSE(rep.union_of_lines);
    REQUIRE(rep.witness_pair);
    const auto& [u, v] = *rep.witness_pair;
    REQUIRE(square_of(m, u).is_zero());
    REQUIRE(square_of(m, v).is_zero());
    REQUIRE(cup(m.ring, GradedClass{2, u}, GradedClass{2, v}).is_zero());
    REQUIRE(u != v);
    REQUIRE(rep.vanishing_tuples.size() == 54); // 48 plane points + 6 axis points
}

TEST_CASE("isotropy search edge cases", "[analysis]") {
    const ManifoldModel m = build_crossed_model(p0_params());
    REQUIRE_THROWS_AS(analyze_isotropy(m, -1), parameter_error);

    const IsotropyReport zero = analyze_isotropy(m, 0);
    REQUIRE(zero.vanishing_tuples.empty());
    REQUIRE(zero.max_rank_found == 0);

    ConstructionParams empty;
    empty.link_matrix = IntegerMatrix(0, 0);
    empty.crossing_form = IntegerMatrix(0, 0);
    const IsotropyReport none = analyze_isotropy(build_crossed_model(empty), 4);
    REQUIRE(none.lines.empty());
    REQUIRE(none.max_rank_found == 0);
}

TEST_CASE("model comparison separates the families", "[analysis]") {
    const ManifoldModel crossed = build_crossed_model(p0_params());

    SECTION("a model is indistinguishable from itself") {
        REQUIRE(compare_models(crossed, crossed, 3).ok());
    }
    SECTION("block merge shows up in the ranks") {
        ConstructionParams p = p0_params();
        p.partition = {{1, 2}};
        p.pontryagin = {0};
        const Report rep = compare_models(crossed, build_blocked_model(p), 3);
        REQUIRE(rep.findings.size() == 2);
        REQUIRE(rep.findings[0].code == "rank"); // degree 3
        REQUIRE(rep.findings[1].code == "rank"); // degree 4
    }
    SECTION("crossing form shows up in the isotropy rank") {
        const Report rep = compare_models(crossed, build_plain_model(p0_params()), 3);
        REQUIRE(rep.findings.size() == 1);
        REQUIRE(rep.findings.front().code == "isotropy");
    }
}
