#include <catch2/catch_amalgamated.hpp>

#include <weightlab/keylemma.hpp>
#include <weightlab/weightcore.hpp>

#include "helpers.hpp"

using namespace weightlab;
using wltest::jordan_block;
using wltest::jordan_type;

/**
 * Jordan-chain oracle for the weight filtration of a nilpotent in Jordan
 * form: a block of size s contributes chain vectors of weights
 * s-1, s-3, ..., -(s-1) from the top of the chain down, and W_k is spanned
 * by the standard basis vectors of weight <= k.
 */
static IncFiltration jordan_weight_oracle(const std::vector<int>& sizes)
{
    int dim = 0;
    for (int s : sizes)
        dim += s;
    std::vector<int> weight(dim);
    int off = 0;
    for (int s : sizes) {
        // e_{off+k} = N^{s-1-k} applied to the top vector, weight 2k-(s-1).
        for (int k = 0; k < s; ++k)
            weight[off + k] = 2 * k - (s - 1);
        off += s;
    }
    IncFiltration w(dim, Direction::increasing);
    int top = *std::max_element(weight.begin(), weight.end());
    int bot = *std::min_element(weight.begin(), weight.end());
    for (int k = bot; k <= top; ++k) {
        std::vector<Vec> gens;
        for (int i = 0; i < dim; ++i)
            if (weight[i] <= k) {
                Vec v = Vec::Zero(dim);
                v(i) = 1;
                gens.push_back(v);
            }
        w.set_step(k, Subspace::span(dim, gens));
    }
    return w;
}

TEST_CASE("weight filtration spec examples")
{
    // N = 0: all mass at weight 0.
    IncFiltration w0 = weight_filtration(LinMap::zero(2, 2));
    CHECK(w0.at(-1).rank() == 0);
    CHECK(w0.at(0) == Subspace::full(2));

    // J2: W_{-1} = span(e0), W_1 = full.
    IncFiltration w2 = weight_filtration(LinMap{jordan_block(2)});
    CHECK(w2 == jordan_weight_oracle({2}));

    // Jordan type (2,1): W_{-1} = im N, W_0 = ker N, W_1 = full.
    LinMap n21{jordan_type({2, 1})};
    IncFiltration w21 = weight_filtration(n21);
    CHECK(w21 == jordan_weight_oracle({2, 1}));
    CHECK(w21.at(-1) == image(n21));
    CHECK(w21.at(0) == kernel(n21));

    // J3: W_{-2} = span(e0), W_0 = span(e0,e1), W_2 = full.
    CHECK(weight_filtration(LinMap{jordan_block(3)}) == jordan_weight_oracle({3}));

    CHECK_THROWS_AS(weight_filtration(LinMap::identity(2)), contract_error);
}

TEST_CASE("weight filtration matches the Jordan oracle on random conjugates")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        // Random Jordan type of total size <= 9.
        std::vector<int> sizes;
        int budget = 2 + static_cast<int>(rng() % 8);
        while (budget > 0) {
            int s = 1 + static_cast<int>(rng() % budget);
            sizes.push_back(s);
            budget -= s;
        }
        int dim = 0;
        for (int s : sizes)
            dim += s;
        Mat g = wltest::random_invertible(rng, dim);
        Mat ginv = wltest::inverse_of(g);
        LinMap n{Mat(g * jordan_type(sizes) * ginv)};
        IncFiltration w = weight_filtration(n);
        CHECK(verify_weight_axioms(n, w).ok);

        IncFiltration std_oracle = jordan_weight_oracle(sizes);
        IncFiltration oracle(dim, Direction::increasing);
        for (const auto& [k, s] : std_oracle.steps())
            oracle.set_step(k, Subspace(dim, g * s.basis()));
        CHECK(w == oracle);
    }
}

TEST_CASE("weight axioms reject shifted and corrupted filtrations")
{
    LinMap j2{jordan_block(2)};
    IncFiltration w = weight_filtration(j2);
    CHECK(verify_weight_axioms(j2, w).ok);
    CHECK_FALSE(verify_weight_axioms(j2, w.shift(1)).ok);

    LinMap j3{jordan_block(3)};
    IncFiltration bad = weight_filtration(j3);
    Vec e0 = Vec::Zero(3);
    e0(0) = 1;
    bad.set_step(0, Subspace::span(3, {e0}));  // wrong middle step
    CHECK_FALSE(verify_weight_axioms(j3, bad).ok);
}

TEST_CASE("uniqueness: perturbing any step breaks the axioms")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<int> sizes = {2 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 2)};
        LinMap n{jordan_type(sizes)};
        IncFiltration w = weight_filtration(n);
        REQUIRE(verify_weight_axioms(n, w).ok);
        for (const auto& [k, s] : w.steps()) {
            if (s.rank() == 0 || s.rank() == w.ambient_dim())
                continue;
            IncFiltration tweaked = w;
            // Drop one basis vector from the step.
            Mat smaller = s.basis().leftCols(s.rank() - 1);
            tweaked.set_step(k, Subspace(w.ambient_dim(), smaller));
            if (tweaked.well_formed())
                CHECK_FALSE(verify_weight_axioms(n, tweaked).ok);
        }
    }
}

TEST_CASE("graded symmetry of centered weight filtrations")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<int> sizes = {1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4)};
        IncFiltration w = weight_filtration(LinMap{jordan_type(sizes)});
        for (int j = 1; j <= w.highest_index() + 1; ++j)
            CHECK(graded(w, j).dim() == graded(w, -j).dim());
    }
}

TEST_CASE("relative weight filtration on the tensor square")
{
    NilpotentOrbit t22 = gen_sl2_tensor({2, 2});
    // Trivial W (single jump) with M = W(N): reduces to the absolute axioms.
    IncFiltration triv(t22.dim(), Direction::increasing);
    triv.set_step(0, Subspace::full(t22.dim()));
    CHECK(verify_relative(t22.sum_over(0b11), triv, t22.w_multi(0b11)));

    // N = N2, W = W(N1), M = W(N1 + N2): the Cattani-Kaplan statement.
    CHECK(verify_relative(t22.nilpotent(1), t22.w_multi(0b01), t22.w_multi(0b11)));
    CHECK(verify_relative(t22, Mask(0b10), Mask(0b01)));

    // Replacing M by W(N2) breaks relativity.
    CHECK_FALSE(verify_relative(t22.nilpotent(1), t22.w_multi(0b01), t22.w_multi(0b10)));
}

TEST_CASE("relativity on random tensor orbits with disjoint subsets")
{
    std::vector<std::vector<int>> shapes = {{2, 2}, {2, 3}, {2, 2, 2}, {3, 2}};
    for (const auto& shape : shapes) {
        NilpotentOrbit orbit = gen_sl2_tensor(shape);
        Mask m = orbit.index_set();
        for (Mask i = 1; i <= m; ++i) {
            if (!subset_of(i, m) || i == 0)
                continue;
            for (Mask j = 1; j <= m; ++j) {
                if (!subset_of(j, m) || j == 0 || (i & j))
                    continue;
                CHECK(verify_relative(orbit, j, i));
            }
        }
    }
}

TEST_CASE("kashiwara splitting at dimension level")
{
    NilpotentOrbit t22 = gen_sl2_tensor({2, 2});
    IncFiltration triv(t22.dim(), Direction::increasing);
    triv.set_step(0, Subspace::full(t22.dim()));
    CHECK(kashiwara_split_check(triv, t22.w_multi(0b11)));

    const IncFiltration& w = t22.w_multi(0b01);
    const IncFiltration& m = t22.w_multi(0b11);
    CHECK(kashiwara_split_check(t22, t22.nilpotent(1), w, m));
    // l = 0 decomposes as 1 + 1 across the two W-levels.
    CHECK(iterated_graded_in(graded(w, -1), {m}, {0}).dim() == 1);
    CHECK(iterated_graded_in(graded(w, 1), {m}, {0}).dim() == 1);
    CHECK(graded(m, 0).dim() == 2);

    NilpotentOrbit t23 = gen_sl2_tensor({2, 3});
    CHECK(kashiwara_split_check(t23, t23.nilpotent(1), t23.w_multi(0b01), t23.w_multi(0b11)));
}

TEST_CASE("zassenhaus commutation")
{
    NilpotentOrbit t22 = gen_sl2_tensor({2, 2});
    CHECK(zassenhaus_check(t22, Mask(0b01), Mask(0b01), 1, 1));
    CHECK(zassenhaus_check(t22, Mask(0b01), Mask(0b10), 1, -1));
    CHECK(iterated_graded({t22.w_multi(0b10), t22.w_multi(0b01)}, {-1, 1}, false).dim() == 1);

    NilpotentOrbit t23 = gen_sl2_tensor({2, 3});
    for (int b = -2; b <= 2; ++b)
        for (int c = -2; c <= 2; ++c)
            CHECK(zassenhaus_check(t23, Mask(0b01), Mask(0b10), b, c));
}

TEST_CASE("key lemma on tensor orbits")
{
    NilpotentOrbit t22 = gen_sl2_tensor({2, 2});

    // |A| = 1 degenerates to the graded dims of W^A itself.
    CheckReport single = key_lemma_check(t22, Mask(0b01));
    CHECK(single.ok());

    CheckReport rep = key_lemma_check(t22, Mask(0b11));
    for (const auto& item : rep.items)
        INFO(item.name << ": " << item.detail);
    CHECK(rep.ok());

    // Gr^{W^A} dims (1,2,1) at r = (2,0,-2): the Clebsch-Gordan profile.
    const IncFiltration& wa = t22.w_multi(0b11);
    CHECK(graded(wa, 2).dim() == 1);
    CHECK(graded(wa, 0).dim() == 2);
    CHECK(graded(wa, -2).dim() == 1);

    NilpotentOrbit t222 = gen_sl2_tensor({2, 2, 2});
    CheckReport rep3 = key_lemma_check(t222, t222.index_set());
    CHECK(rep3.ok());
    const IncFiltration& wa3 = t222.w_multi(t222.index_set());
    CHECK(graded(wa3, 3).dim() == 1);
    CHECK(graded(wa3, 1).dim() == 3);
    CHECK(graded(wa3, -1).dim() == 3);
    CHECK(graded(wa3, -3).dim() == 1);
}

TEST_CASE("lambda independence of multi-index weight filtrations")
{
    for (const auto& shape : std::vector<std::vector<int>>{{2, 2}, {2, 3}}) {
        NilpotentOrbit orbit = gen_sl2_tensor(shape);
        for (Mask j = 1; j <= orbit.index_set(); ++j)
            if (subset_of(j, orbit.index_set()) && j != 0)
                CHECK(lambda_independence_check(orbit, j));
    }
}
