#include <doctest.h>

#include "configs.hpp"
#include "exphull/mordell.hpp"
#include "exphull/variety.hpp"

using namespace exphull;
using namespace exphull::testcfg;

namespace {

const std::vector<std::string> Y2 = {"y1", "y2"};

Ideal torus2(std::vector<LaurentPoly> gens) { return Ideal(Y2, std::move(gens), {"y1", "y2"}); }

FiniteRankGroup rational_group(const std::vector<std::vector<long>>& gens, int depth) {
    FiniteRankGroup g;
    g.n = static_cast<int>(gens.empty() ? 0 : gens[0].size());
    g.depth = depth;
    for (const auto& t : gens) {
        std::vector<GroupCoord> coords;
        for (long x : t) coords.push_back(coord_from_rational(Rational(x)));
        g.generators.push_back(coords);
    }
    return g;
}

} // namespace

TEST_CASE("radical values") {
    auto two = RadicalValue::from_rational(Rational(2));
    auto half = RadicalValue::from_rational(make_rational(1, 2));
    CHECK(two.mul(half).is_one());
    auto root2 = two.pow(make_rational(1, 2));
    CHECK_FALSE(root2.is_rational());
    CHECK(root2.mul(root2) == two);
    CHECK(root2.rational_part() == Rational(1));
    CHECK(root2.fractional_key() != two.fractional_key());
    auto twelve = RadicalValue::from_rational(Rational(12));
    CHECK(twelve.rational_value() == Rational(12));
    CHECK_THROWS_AS(RadicalValue::from_rational(Rational(-3)).pow(make_rational(1, 2)),
                    DomainError);
    // value identities: 12^(1/2) = 2 * 3^(1/2)
    auto sqrt12 = twelve.pow(make_rational(1, 2));
    CHECK(sqrt12.rational_part() == Rational(2));
}

TEST_CASE("group membership in a torus ideal") {
    auto w = torus2({v(Y2, "y1") + v(Y2, "y2") - c(Y2, 1)});
    auto grp = rational_group({{2, 2}}, 2);
    // 2^(k/2) + 2^(k/2) = 1 only for k = -2
    for (long k = -20; k <= 20; ++k) {
        bool in = group_element_in(w, grp, {k});
        CHECK(in == (k == -2));
    }
}

TEST_CASE("find_cosets_bounded on the unit equation") {
    auto w = torus2({v(Y2, "y1") + v(Y2, "y2") - c(Y2, 1)});
    auto grp = rational_group({{2, 2}}, 2);
    auto dec = find_cosets_bounded(w, grp, 10, 2);
    REQUIRE(dec.cosets.size() == 1);
    const auto& coset = dec.cosets[0];
    CHECK(coset.cocharacters.rows() == 0); // a single point
    CHECK(coset.translate[0].rad.rational_value() == make_rational(1, 2));
    CHECK(coset.translate[1].rad.rational_value() == make_rational(1, 2));
}

TEST_CASE("a subtorus is its own single coset") {
    auto w = torus2({v(Y2, "y1") - v(Y2, "y2")});
    auto grp = rational_group({{2, 2}}, 1);
    auto dec = find_cosets_bounded(w, grp, 3, 2);
    REQUIRE(dec.cosets.size() == 1);
    CHECK(dec.cosets[0].cocharacters == IntMatrix::from_long_rows({{1, 1}}));
    // soundness: translate * T inside W re-verifies
    CHECK(coset_contains(dec.cosets[0], dec.cosets[0].translate, std::nullopt));
}

TEST_CASE("y1 = 2 with the group (2,3)") {
    auto w = torus2({v(Y2, "y1") - c(Y2, 2)});
    auto grp = rational_group({{2, 3}}, 1);
    auto dec = find_cosets_bounded(w, grp, 5, 2);
    REQUIRE(dec.cosets.size() == 1);
    const auto& coset = dec.cosets[0];
    // the coset is (2, 1) * ({1} x G_m): cocharacter lattice spans (0, 1)
    CHECK(coset.cocharacters == IntMatrix::from_long_rows({{0, 1}}));
    std::vector<GroupCoord> rep = {coord_from_rational(Rational(2)),
                                   coord_from_rational(Rational(1))};
    CHECK(coset_contains(coset, rep, std::nullopt));
}

TEST_CASE("verify_decomposition") {
    auto w = torus2({v(Y2, "y1") + v(Y2, "y2") - c(Y2, 1)});
    auto grp = rational_group({{2, 2}}, 2);
    auto dec = find_cosets_bounded(w, grp, 10, 2);
    SUBCASE("the found decomposition verifies at the same bound") {
        CHECK(verify_decomposition(w, grp, dec, 10).is_holds());
    }
    SUBCASE("the empty decomposition fails with the unit-equation point") {
        CosetDecomposition empty;
        auto verdict = verify_decomposition(w, grp, empty, 10);
        REQUIRE(verdict.is_fails());
        REQUIRE(verdict.witness_exponents.has_value());
        CHECK(*verdict.witness_exponents == std::vector<long>{-2});
        // witness re-verifies: in W but no coset listed
        CHECK(group_element_in(w, grp, *verdict.witness_exponents));
    }
    SUBCASE("whole torus as one full coset") {
        auto whole = torus2({});
        CosetDecomposition dec1;
        MLCoset c1;
        c1.translate = {coord_from_rational(Rational(1)), coord_from_rational(Rational(1))};
        c1.cocharacters = IntMatrix::identity(2);
        dec1.cosets.push_back(c1);
        CHECK(verify_decomposition(whole, grp, dec1, 6).is_holds());
    }
}

TEST_CASE("every found coset re-verifies its parametrised containment") {
    // soundness: translate * subtorus inside W by ideal membership with fresh
    // torus parameters, for each coset the finder returns
    std::vector<std::pair<Ideal, FiniteRankGroup>> instances = {
        {torus2({v(Y2, "y1") + v(Y2, "y2") - c(Y2, 1)}), rational_group({{2, 2}}, 2)},
        {torus2({v(Y2, "y1") - v(Y2, "y2")}), rational_group({{2, 2}}, 1)},
        {torus2({v(Y2, "y1") - c(Y2, 2)}), rational_group({{2, 3}}, 1)},
    };
    for (const auto& [w, grp] : instances) {
        auto dec = find_cosets_bounded(w, grp, 4, 2);
        for (const auto& coset : dec.cosets) CHECK(coset_in_variety(w, coset, grp.config));
    }
}

TEST_CASE("monotonicity in word and height bounds") {
    auto w = torus2({v(Y2, "y1") - c(Y2, 2)});
    auto grp = rational_group({{2, 3}}, 1);
    auto small = find_cosets_bounded(w, grp, 3, 1);
    auto large = find_cosets_bounded(w, grp, 6, 2);
    for (const auto& c : small.cosets) {
        bool found = false;
        for (const auto& d : large.cosets) {
            bool sub = true;
            QMatrix qa = QMatrix::from_int(c.cocharacters);
            QMatrix qb = QMatrix::from_int(d.cocharacters);
            for (int i = 0; i < qa.rows() && sub; ++i)
                if (!in_rowspace(qa.row(i), qb)) sub = false;
            if (sub && coset_contains(d, c.translate, std::nullopt)) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("coset_constants") {
    SUBCASE("single coset (2,1) * ({1} x G_m), character [1,0] gives {2}") {
        CosetDecomposition dec;
        MLCoset c1;
        c1.translate = {coord_from_rational(Rational(2)), coord_from_rational(Rational(1))};
        c1.cocharacters = IntMatrix::from_long_rows({{0, 1}});
        dec.cosets.push_back(c1);
        auto values = coset_constants(dec, {Integer(1), Integer(0)});
        REQUIRE(values.size() == 1);
        CHECK(values[0].rad.rational_value() == Rational(2));
    }
    SUBCASE("two translates of the same lattice merge duplicates") {
        CosetDecomposition dec;
        for (long t : {2, 3, 2}) {
            MLCoset c1;
            c1.translate = {coord_from_rational(Rational(t)), coord_from_rational(Rational(1))};
            c1.cocharacters = IntMatrix::from_long_rows({{0, 1}});
            dec.cosets.push_back(c1);
        }
        auto values = coset_constants(dec, {Integer(1), Integer(0)});
        REQUIRE(values.size() == 2);
        CHECK(values[0].rad.rational_value() == Rational(2));
        CHECK(values[1].rad.rational_value() == Rational(3));
    }
    SUBCASE("the character must annihilate the lattice") {
        CosetDecomposition dec;
        MLCoset c1;
        c1.translate = {coord_from_rational(Rational(2)), coord_from_rational(Rational(1))};
        c1.cocharacters = IntMatrix::from_long_rows({{0, 1}});
        dec.cosets.push_back(c1);
        CHECK_THROWS_WITH_AS(coset_constants(dec, {Integer(0), Integer(1)}),
                             doctest::Contains("character not constant"), DomainError);
    }
    SUBCASE("invariance under re-choosing the translate inside the coset") {
        CosetDecomposition a, b;
        MLCoset c1;
        c1.translate = {coord_from_rational(Rational(2)), coord_from_rational(Rational(1))};
        c1.cocharacters = IntMatrix::from_long_rows({{0, 1}});
        a.cosets.push_back(c1);
        MLCoset c2 = c1;
        c2.translate[1] = coord_from_rational(Rational(7)); // same coset, different rep
        b.cosets.push_back(c2);
        CHECK(coset_constants(a, {Integer(1), Integer(0)}) ==
              coset_constants(b, {Integer(1), Integer(0)}));
    }
}

TEST_CASE("normal form decomposition constant") {
    // decomposition of <y1 y2 - 3> as one coset, character [1,1] gives {3}
    auto w = torus2({v(Y2, "y1") * v(Y2, "y2") - c(Y2, 3)});
    FiniteRankGroup grp = rational_group({{3, 1}, {1, 3}}, 1);
    auto dec = find_cosets_bounded(w, grp, 2, 2);
    REQUIRE(dec.cosets.size() >= 1);
    auto values = coset_constants(dec, {Integer(1), Integer(1)});
    REQUIRE(values.size() == 1);
    CHECK(values[0].rad.rational_value() == Rational(3));
}

TEST_CASE("group_from_config") {
    auto cfg = loglog2();
    SUBCASE("the kernel span gives the trivial group") {
        auto grp = group_from_config(cfg, kernel_subspace(cfg), 1);
        CHECK(grp.generators.empty());
    }
    SUBCASE("the full hull gives the two nontrivial exponentials") {
        auto grp = group_from_config(cfg, full_subspace(cfg), 2);
        CHECK(grp.generators.size() == 2);
    }
    SUBCASE("exp(a^2) full hull gives four generators") {
        auto e = exp_a2();
        auto grp = group_from_config(e, full_subspace(e), 1);
        CHECK(grp.generators.size() == 4);
    }
}

TEST_CASE("symbolic group membership through the locus") {
    // group generated by (y_a1,) over the loglog2 config: powers y_a1^k; the
    // torus ideal y1 = 2 over one variable picks out nothing (y_a1 is
    // transcendental), while y1 = y_a2-value 2 matches the monomial y_a2
    auto cfg = loglog2();
    FiniteRankGroup grp;
    grp.n = 1;
    grp.depth = 1;
    grp.config = cfg;
    GroupCoord g1;
    g1.mono[3 + 2] = 1; // y_a2 (locus vars: x_tau x_a1 x_a2 y_tau y_a1 y_a2)
    grp.generators.push_back({g1});
    std::vector<std::string> y1v = {"y1"};
    Ideal w(y1v, {LaurentPoly::variable(y1v, 0) - LaurentPoly::constant(y1v, Rational(2))},
            {"y1"});
    // y_a2 = 2 modulo the locus, so the word k = 1 is a member
    CHECK(group_element_in(w, grp, {1}));
    CHECK_FALSE(group_element_in(w, grp, {2})); // 4 != 2
    CHECK_FALSE(group_element_in(w, grp, {0})); // 1 != 2
}
