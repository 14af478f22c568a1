/**
 * The index category S(M) of strictly decreasing chains of nonempty subsets
 * of M starting with M itself, the subcategories S_K(M) of chains through a
 * fixed K, the exterior index set of subsets J of M, and the incidence signs
 * used by every combinatorial complex.
 *
 * Subsets are bitmasks over 0-based indices.  A chain stores its subsets
 * from M down, so sets[0] = M always.
 */

#ifndef WEIGHTLAB_SCAT_HPP
#define WEIGHTLAB_SCAT_HPP

#include <weightlab/qlinalg.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace weightlab {

using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }

inline Mask full_mask(int n) { return (n >= 32) ? ~Mask(0) : ((Mask(1) << n) - 1); }

inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

inline std::vector<int> mask_elements(Mask m)
{
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (m & (Mask(1) << i))
            out.push_back(i);
    return out;
}

/** 1-based label list "1,3,4" for reports. */
inline std::string mask_label(Mask m)
{
    std::string s;
    for (int i : mask_elements(m)) {
        if (!s.empty())
            s += ",";
        s += std::to_string(i + 1);
    }
    return s.empty() ? "-" : s;
}

/**
 * A chain (s.) = (M = s_1 > s_2 > ... > s_p != {}) of strictly decreasing
 * nonempty subsets.
 */
struct Chain {
    std::vector<Mask> sets;

    int length() const { return static_cast<int>(sets.size()); }

    bool contains_set(Mask k) const
    {
        return std::find(sets.begin(), sets.end(), k) != sets.end();
    }

    bool operator==(const Chain& o) const { return sets == o.sets; }
    bool operator<(const Chain& o) const { return sets < o.sets; }

    std::string label() const
    {
        std::string s;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (i)
                s += ">";
            s += "{" + mask_label(sets[i]) + "}";
        }
        return s;
    }
};

constexpr int kMaxChainGround = 6;

namespace detail {

inline void extend_chains(Mask last, const Chain& prefix, std::vector<Chain>& out)
{
    out.push_back(prefix);
    // Enumerate proper nonempty subsets of `last` in increasing mask order.
    for (Mask sub = (last - 1) & last; sub != 0; sub = (sub - 1) & last) {
        Chain next = prefix;
        next.sets.push_back(sub);
        extend_chains(sub, next, out);
    }
}

}  // namespace detail

/**
 * All chains over the ground set M, duplicate-free.  Counts grow quickly
 * (1, 3, 13, 75, ... by ground size), so the ground set is capped.
 */
inline std::vector<Chain> enumerate_chains(Mask m)
{
    if (popcount(m) > kMaxChainGround)
        throw resource_error("enumerate_chains: ground set larger than "
                             + std::to_string(kMaxChainGround));
    if (m == 0)
        throw input_error("enumerate_chains: empty ground set");
    std::vector<Chain> out;
    Chain start;
    start.sets = {m};
    detail::extend_chains(m, start, out);
    std::sort(out.begin(), out.end());
    return out;
}

/**
 * All chains obtained by deleting one subset at position i >= 2 (1-based;
 * the leading M is never deleted), paired with the sign (-1)^i.
 */
inline std::vector<std::pair<Chain, int>> deletions(const Chain& c)
{
    std::vector<std::pair<Chain, int>> out;
    for (int i = 1; i < c.length(); ++i) {
        Chain d = c;
        d.sets.erase(d.sets.begin() + i);
        int sign = ((i + 1) % 2 == 0) ? 1 : -1;  // position i+1 in 1-based labels
        out.emplace_back(d, sign);
    }
    return out;
}

/** The chains through K: S_K(M) = { s. : K appears in s. }. */
inline std::vector<Chain> chains_through(Mask m, Mask k)
{
    if (k == 0 || !subset_of(k, m))
        throw input_error("chains_through: K must be a nonempty subset of M");
    std::vector<Chain> out;
    for (const Chain& c : enumerate_chains(m))
        if (c.contains_set(k))
            out.push_back(c);
    return out;
}

/**
 * The category product S(K) x S(M-K) -> S_K(M):
 * (s., s.') -> (K u s'_1, ..., K u s'_q, s_1 = K, s_2, ..., s_p).
 */
inline Chain product_iso(Mask k, Mask m, const Chain& over_k, const Chain& over_mk)
{
    if (k == 0 || !subset_of(k, m))
        throw input_error("product_iso: K must be a nonempty subset of M");
    Chain out;
    for (Mask s : over_mk.sets)
        out.sets.push_back(k | s);
    for (Mask s : over_k.sets)
        out.sets.push_back(s);
    return out;
}

/** An object (J, s.) of the product category M+. x S(M). */
struct BiIndex {
    Mask J = 0;
    int chain_id = 0;
};

inline std::vector<Mask> enumerate_subsets(Mask m)
{
    std::vector<Mask> out;
    Mask sub = 0;
    for (;;) {
        out.push_back(sub);
        if (sub == m)
            break;
        sub = (sub - m) & m;  // next subset of m
    }
    std::sort(out.begin(), out.end());
    return out;
}

/**
 * Total degree of (J, s.) over ground set M: Koszul degree |J| plus the
 * chain codegree |M| - |s.|, so maximal chains sit at chain degree zero.
 */
inline int biindex_degree(Mask m, Mask j, const Chain& c)
{
    return popcount(j) + (popcount(m) - c.length());
}

inline std::vector<BiIndex> enumerate_biindices(Mask m)
{
    std::vector<Chain> chains = enumerate_chains(m);
    std::vector<BiIndex> out;
    for (Mask j : enumerate_subsets(m))
        for (int c = 0; c < static_cast<int>(chains.size()); ++c)
            out.push_back(BiIndex{j, c});
    return out;
}

/** Koszul insertion sign: parity of |{j in J : j < i}|. */
inline int koszul_sign(Mask j, int i)
{
    Mask below = j & ((Mask(1) << i) - 1);
    return (popcount(below) % 2 == 0) ? 1 : -1;
}

}  // namespace weightlab

#endif  // WEIGHTLAB_SCAT_HPP
