#include <catch2/catch_amalgamated.hpp>

#include <weightlab/keylemma.hpp>
#include <weightlab/orbit.hpp>

#include "helpers.hpp"

using namespace weightlab;
using wltest::jordan_block;

TEST_CASE("validate spec examples")
{
    NilpotentOrbit zero(1, {LinMap::zero(1, 1)}, 0);
    CHECK(validate(zero).ok());

    // A known non-commuting pair fails with the witness named.
    Mat a = Mat::Zero(3, 3), b = Mat::Zero(3, 3);
    a(0, 1) = 1;
    b(1, 2) = 1;
    NilpotentOrbit bad(3, {LinMap(a), LinMap(b)}, 0);
    ValidationReport rep = validate(bad);
    CHECK_FALSE(rep.ok());
    bool found = false;
    for (const auto& item : rep.items)
        if (item.name == "commutativity" && !item.pass
            && item.detail.find("N1") != std::string::npos)
            found = true;
    CHECK(found);

    // Tensor square with the product sl2 pairing: all checks pass.
    NilpotentOrbit t22 = gen_sl2_tensor({2, 2});
    REQUIRE(t22.pairing());
    CHECK(validate(t22).ok());

    // A non-nilpotent entry is reported.
    NilpotentOrbit notnil(2, {LinMap::identity(2)}, 0);
    CHECK_FALSE(validate(notnil).ok());
}

TEST_CASE("monodromy logarithm spec examples")
{
    CHECK(monodromy_log(LinMap::identity(3)).is_zero());

    Mat t(2, 2);
    t << Rational(1), Rational(1), Rational(0), Rational(1);
    LinMap n = monodromy_log(LinMap(t));
    CHECK(n.matrix()(0, 1) == 1);
    CHECK(n.matrix()(0, 0) == 0);

    Mat t3(3, 3);
    t3 << Rational(1), Rational(1), Rational(0),
          Rational(0), Rational(1), Rational(1),
          Rational(0), Rational(0), Rational(1);
    LinMap n3 = monodromy_log(LinMap(t3));
    CHECK(n3.matrix()(0, 2) == Rational(-1) / 2);
    CHECK(nilpotent_exp(n3).matrix() == t3);

    CHECK_THROWS_AS(monodromy_log(LinMap(Mat(Rational(2) * Mat::Identity(2, 2)))),
                    contract_error);
}

TEST_CASE("log and exp invert each other on random nilpotents")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        int dim = 2 + static_cast<int>(rng() % 11);
        Mat strict = Mat::Zero(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j)
                strict(i, j) = static_cast<int>(rng() % 5) - 2;
        LinMap n{strict};
        CHECK(monodromy_log(nilpotent_exp(n)) == n);
    }
}

TEST_CASE("w_multi spec examples")
{
    NilpotentOrbit j2 = gen_jordan({2});
    CHECK(j2.w_multi(1) == weight_filtration(j2.nilpotent(0)));
    CHECK_THROWS_AS(j2.w_multi(0), input_error);

    // Tensor square: Clebsch-Gordan V1 (x) V1 = V2 (+) V0, dims (1,2,1).
    NilpotentOrbit t22 = gen_sl2_tensor({2, 2});
    const IncFiltration& w = t22.w_multi(0b11);
    CHECK(graded(w, 2).dim() == 1);
    CHECK(graded(w, 0).dim() == 2);
    CHECK(graded(w, -2).dim() == 1);

    // J2 (x) J3: V1 (x) V2 = V3 (+) V1, graded dims (1,2,2,1) at 3,1,-1,-3.
    NilpotentOrbit t23 = gen_sl2_tensor({2, 3});
    const IncFiltration& w23 = t23.w_multi(0b11);
    CHECK(graded(w23, 3).dim() == 1);
    CHECK(graded(w23, 1).dim() == 2);
    CHECK(graded(w23, -1).dim() == 2);
    CHECK(graded(w23, -3).dim() == 1);
    // Cross-check through the rank sequence of N1 + N2.
    LinMap nsum = t23.sum_over(0b11);
    CHECK(image(nsum).rank() == 4);
    CHECK(image(nsum.power(2)).rank() == 2);
    CHECK(image(nsum.power(3)).rank() == 1);
    CHECK(image(nsum.power(4)).rank() == 0);
}

TEST_CASE("generators are sound")
{
    CHECK(validate(gen_jordan({2})).ok());
    CHECK(validate(gen_jordan({3, 1})).ok());
    CHECK(validate(gen_sl2_tensor({2, 2})).ok());
    CHECK(validate(gen_sl2_tensor({2, 3})).ok());
    CHECK(validate(gen_sl2_tensor({2, 2, 2})).ok());
    CHECK(validate(gen_sl2_tensor({3, 3})).ok());

    NilpotentOrbit t22 = gen_sl2_tensor({2, 2});
    CHECK(t22.dim() == 4);
    CHECK(t22.index_count() == 2);
    CHECK(t22.weight() == 2);
}

TEST_CASE("conjugation equivariance of weight filtrations")
{
    std::mt19937_64 rng(31);
    for (const auto& shape : std::vector<std::vector<int>>{{2}, {3}, {2, 2}}) {
        NilpotentOrbit orbit = shape.size() == 1 ? gen_jordan(shape) : gen_sl2_tensor(shape);
        Mat g = wltest::random_invertible(rng, orbit.dim());
        NilpotentOrbit conj = gen_conjugated(orbit, g);
        CHECK(validate(conj).ok());
        for (Mask j = 1; j <= orbit.index_set(); ++j) {
            if (!subset_of(j, orbit.index_set()) || j == 0)
                continue;
            const IncFiltration& w = orbit.w_multi(j);
            const IncFiltration& wc = conj.w_multi(j);
            for (int k = w.lowest_index() - 1; k <= w.highest_index() + 1; ++k)
                CHECK(wc.at(k) == Subspace(orbit.dim(), g * w.at(k).basis()));
        }
    }
}

TEST_CASE("conjugated tensor orbit keeps hodge and pairing valid")
{
    std::mt19937_64 rng(41);
    NilpotentOrbit t23 = gen_sl2_tensor({2, 3});
    Mat g = wltest::random_invertible(rng, t23.dim());
    NilpotentOrbit conj = gen_conjugated(t23, g);
    REQUIRE(conj.hodge());
    REQUIRE(conj.pairing());
    CHECK(validate(conj).ok());
}
