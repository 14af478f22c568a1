#include <catch2/catch_amalgamated.hpp>

#include <weightlab/scat.hpp>

#include <map>
#include <set>

using namespace weightlab;

// Brute-force chain count over the subset lattice, independent of the
// enumeration order used by the library.
static long count_chains_below(Mask top)
{
    long total = 1;  // the chain ending here
    for (Mask sub = (top - 1) & top; sub != 0; sub = (sub - 1) & top)
        total += count_chains_below(sub);
    return total;
}

TEST_CASE("chain enumeration counts")
{
    CHECK(enumerate_chains(full_mask(1)).size() == 1);
    CHECK(enumerate_chains(full_mask(2)).size() == 3);
    CHECK(enumerate_chains(full_mask(3)).size() == 13);
    for (int n = 1; n <= 5; ++n)
        CHECK(static_cast<long>(enumerate_chains(full_mask(n)).size())
              == count_chains_below(full_mask(n)));
    CHECK_THROWS_AS(enumerate_chains(full_mask(7)), resource_error);
}

TEST_CASE("chains are duplicate-free, start at M and strictly decrease")
{
    auto chains = enumerate_chains(full_mask(3));
    std::set<std::vector<Mask>> seen;
    for (const Chain& c : chains) {
        CHECK(c.sets.front() == full_mask(3));
        for (std::size_t i = 1; i < c.sets.size(); ++i) {
            CHECK(subset_of(c.sets[i], c.sets[i - 1]));
            CHECK(c.sets[i] != c.sets[i - 1]);
            CHECK(c.sets[i] != 0);
        }
        seen.insert(c.sets);
    }
    CHECK(seen.size() == chains.size());
}

TEST_CASE("deletions spec examples")
{
    Chain top;
    top.sets = {full_mask(2)};
    CHECK(deletions(top).empty());

    Chain two;
    two.sets = {full_mask(2), Mask(1)};
    auto dels = deletions(two);
    REQUIRE(dels.size() == 1);
    CHECK(dels[0].first == top);
    CHECK(dels[0].second == 1);

    Chain three;
    three.sets = {full_mask(3), Mask(0b011), Mask(0b001)};
    auto d3 = deletions(three);
    REQUIRE(d3.size() == 2);
    CHECK(d3[0].second * d3[1].second == -1);
}

TEST_CASE("simplicial differential squares to zero on the constant functor")
{
    for (int n = 2; n <= 4; ++n) {
        auto chains = enumerate_chains(full_mask(n));
        std::map<std::vector<Mask>, int> id_of;
        for (int i = 0; i < static_cast<int>(chains.size()); ++i)
            id_of[chains[i].sets] = i;
        // d(c) = sum of signed deletions; check all double-deletion paths cancel.
        std::map<std::pair<int, int>, int> dd;  // (source, target) -> coefficient
        for (int i = 0; i < static_cast<int>(chains.size()); ++i) {
            for (auto& [mid, s1] : deletions(chains[i])) {
                for (auto& [tgt, s2] : deletions(mid)) {
                    dd[{i, id_of.at(tgt.sets)}] += s1 * s2;
                }
            }
        }
        for (auto& [key, coeff] : dd) {
            (void)key;
            CHECK(coeff == 0);
        }
    }
}

TEST_CASE("chains through K and the product isomorphism")
{
    Mask m2 = full_mask(2);
    auto sk = chains_through(m2, Mask(1));
    REQUIRE(sk.size() == 1);
    CHECK(sk[0].sets == std::vector<Mask>{m2, Mask(1)});

    // K = M: every chain contains M.
    CHECK(chains_through(m2, m2).size() == enumerate_chains(m2).size());

    // |S_K(M)| = |S(K)| * |S(M-K)| via the explicit bijection.
    Mask m3 = full_mask(3);
    for (Mask k : enumerate_subsets(m3)) {
        if (k == 0 || k == m3)
            continue;
        Mask rest = m3 & ~k;
        auto over_k = enumerate_chains(k);
        auto over_rest = enumerate_chains(rest);
        auto target = chains_through(m3, k);
        std::set<std::vector<Mask>> images;
        for (const Chain& a : over_k)
            for (const Chain& b : over_rest) {
                Chain img = product_iso(k, m3, a, b);
                CHECK(img.sets.front() == m3);
                CHECK(img.contains_set(k));
                CHECK(img.length() == a.length() + b.length());
                images.insert(img.sets);
            }
        CHECK(images.size() == over_k.size() * over_rest.size());
        CHECK(images.size() == target.size());
    }
    CHECK(chains_through(m3, Mask(0b110)).size() == 3);

    CHECK_THROWS_AS(chains_through(m2, Mask(0b100)), input_error);
}

TEST_CASE("biindex enumeration and degrees")
{
    CHECK(enumerate_biindices(full_mask(1)).size() == 2 * 1);
    CHECK(enumerate_biindices(full_mask(2)).size() == 4 * 3);

    Chain top;
    top.sets = {full_mask(2)};
    CHECK(biindex_degree(full_mask(2), Mask(1), top) == 1 + (2 - 1));

    // Maximal chains sit at chain degree zero.
    Chain maxc;
    maxc.sets = {full_mask(2), Mask(1)};
    CHECK(biindex_degree(full_mask(2), 0, maxc) == 0);
}

TEST_CASE("koszul signs alternate by position")
{
    CHECK(koszul_sign(0, 0) == 1);
    CHECK(koszul_sign(Mask(0b001), 1) == -1);
    CHECK(koszul_sign(Mask(0b011), 2) == 1);
    CHECK(koszul_sign(Mask(0b101), 1) == -1);
}
