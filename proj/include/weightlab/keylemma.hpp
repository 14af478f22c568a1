/**
 * Orbit-level checks on relative weight filtrations: the key decomposition
 * of Gr^{W^A} into iterated one-variable graded pieces with its bounded
 * refinement, compatibility across partitions, order independence, the
 * Zassenhaus commutation of graded functors, and lambda-independence of
 * W(sum lambda_j N_j).
 */

#ifndef WEIGHTLAB_KEYLEMMA_HPP
#define WEIGHTLAB_KEYLEMMA_HPP

#include <weightlab/orbit.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <vector>

namespace weightlab {

struct CheckItem {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckItem> items;
    bool ok() const
    {
        for (const auto& i : items)
            if (!i.pass)
                return false;
        return true;
    }
    void add(const std::string& name, bool pass, const std::string& detail = "")
    {
        items.push_back({name, pass, detail});
    }
};

/** Indices k with Gr_k nonzero, padded by nothing (exact support). */
inline std::vector<int> graded_support(const IncFiltration& w)
{
    std::vector<int> out;
    for (int k = w.lowest_index(); k <= w.highest_index(); ++k)
        if (graded(w, k).dim() > 0)
            out.push_back(k);
    return out;
}

namespace detail {

/** Dimension table m -> dim of the iterated graded piece along `order`. */
class IteratedDimTable {
public:
    IteratedDimTable(const NilpotentOrbit& orbit, std::vector<int> order)
        : orbit_(orbit), order_(std::move(order))
    {
        for (int i : order_)
            filts_.push_back(orbit.w_multi(Mask(1) << i));
    }

    int dim(const std::vector<int>& m)
    {
        auto it = memo_.find(m);
        if (it != memo_.end())
            return it->second;
        // A layer with W_k = W_{k-1} collapses the whole tower to zero.
        for (std::size_t s = 0; s < order_.size(); ++s)
            if (graded(filts_[s], m[s]).dim() == 0)
                return memo_[m] = 0;
        int d = iterated_graded(filts_, m, false).dim();
        return memo_[m] = d;
    }

    const std::vector<int>& order() const { return order_; }

private:
    const NilpotentOrbit& orbit_;
    std::vector<int> order_;
    std::vector<IncFiltration> filts_;
    std::map<std::vector<int>, int> memo_;
};

inline void enumerate_tuples(const std::vector<std::vector<int>>& ranges, std::size_t pos,
                             std::vector<int>& cur,
                             const std::function<void(const std::vector<int>&)>& fn)
{
    if (pos == ranges.size()) {
        fn(cur);
        return;
    }
    for (int v : ranges[pos]) {
        cur[pos] = v;
        enumerate_tuples(ranges, pos + 1, cur, fn);
    }
}

}  // namespace detail

/**
 * The decomposition of the relative weight filtrations for a subset A of
 * the orbit's index set:
 *   (i)  Gr^{W^A}_l Gr^{W^i}_k Gr^{W^{A-i}}_{k'} = 0 unless l = k + k';
 *   (ii) dim Gr^{W^A}_r = sum over m with sum(m) = r of the iterated
 *        one-variable pieces, with the bounded refinement over caps a;
 *   (iii) the four expressions for a partition A = B u C agree;
 *   (iv) the iterated dimension table is permutation invariant.
 */
inline CheckReport key_lemma_check(const NilpotentOrbit& orbit, Mask a_set,
                                   int cap_grid_radius = 1, unsigned perm_cap = 10,
                                   std::uint64_t seed = 1234)
{
    if (a_set == 0 || !subset_of(a_set, orbit.index_set()))
        throw input_error("key_lemma_check: A must be a nonempty subset of the index set");
    CheckReport rep;
    std::vector<int> elems = mask_elements(a_set);
    const IncFiltration& wa = orbit.w_multi(a_set);
    std::vector<int> supp_a = graded_support(wa);

    // (i) triviality of W^A on the two-variable pieces.
    if (elems.size() >= 2) {
        bool pass = true;
        std::string detail;
        for (int i : elems) {
            Mask rest = a_set & ~(Mask(1) << i);
            const IncFiltration& wi = orbit.w_multi(Mask(1) << i);
            const IncFiltration& wrest = orbit.w_multi(rest);
            for (int kp : graded_support(wrest)) {
                for (int k : graded_support(wi)) {
                    Subquotient pair = iterated_graded({wrest, wi}, {kp, k}, false);
                    if (pair.dim() == 0)
                        continue;
                    for (int l = wa.lowest_index() - 1; l <= wa.highest_index() + 1; ++l) {
                        int d = iterated_graded_in(pair, {wa}, {l}).dim();
                        int expect = (l == k + kp) ? pair.dim() : 0;
                        if (d != expect) {
                            pass = false;
                            std::ostringstream os;
                            os << "i=" << i + 1 << " l=" << l << " k=" << k << " k'=" << kp
                               << " dim=" << d << " expected=" << expect;
                            detail = os.str();
                        }
                    }
                }
            }
        }
        rep.add("key_lemma.i", pass, detail);
    }

    // (ii) plain decomposition and the refinement with caps.
    {
        detail::IteratedDimTable table(orbit, elems);
        std::vector<std::vector<int>> ranges;
        for (int i : elems) {
            const IncFiltration& wi = orbit.w_multi(Mask(1) << i);
            std::vector<int> r;
            for (int k = wi.lowest_index(); k <= wi.highest_index(); ++k)
                r.push_back(k);
            ranges.push_back(r);
        }
        bool pass = true;
        std::string detail_str;
        for (int r = wa.lowest_index() - 1; r <= wa.highest_index() + 1; ++r) {
            int lhs = graded(wa, r).dim();
            int rhs = 0;
            std::vector<int> cur(elems.size());
            detail::enumerate_tuples(ranges, 0, cur, [&](const std::vector<int>& m) {
                int s = 0;
                for (int v : m)
                    s += v;
                if (s == r)
                    rhs += table.dim(m);
            });
            if (lhs != rhs) {
                pass = false;
                std::ostringstream os;
                os << "r=" << r << " lhs=" << lhs << " rhs=" << rhs;
                detail_str = os.str();
            }
        }
        rep.add("key_lemma.ii", pass, detail_str);

        // Refinement (caps a): Gr_r^{W^A} of the intersection of capped
        // levels equals the capped sum.
        bool pass8 = true;
        std::string detail8;
        std::vector<std::vector<int>> cap_ranges;
        for (std::size_t s = 0; s < elems.size(); ++s) {
            std::vector<int> r;
            for (int c = -cap_grid_radius; c <= cap_grid_radius; ++c)
                r.push_back(c);
            cap_ranges.push_back(r);
        }
        std::vector<int> cap(elems.size());
        detail::enumerate_tuples(cap_ranges, 0, cap, [&](const std::vector<int>& caps) {
            Subspace v = Subspace::full(orbit.dim());
            for (std::size_t s = 0; s < elems.size(); ++s)
                v = intersect(v, orbit.w_multi(Mask(1) << elems[s]).at(caps[s]));
            Subquotient seed_sq(v, Subspace::zero(orbit.dim()));
            for (int r : supp_a) {
                int lhs = iterated_graded_in(seed_sq, {wa}, {r}).dim();
                int rhs = 0;
                std::vector<int> cur(elems.size());
                detail::enumerate_tuples(ranges, 0, cur, [&](const std::vector<int>& m) {
                    int sum_m = 0;
                    bool capped = true;
                    for (std::size_t s = 0; s < m.size(); ++s) {
                        sum_m += m[s];
                        if (m[s] > caps[s])
                            capped = false;
                    }
                    if (capped && sum_m == r)
                        rhs += table.dim(m);
                });
                if (lhs != rhs) {
                    pass8 = false;
                    std::ostringstream os;
                    os << "caps=(";
                    for (int c : caps)
                        os << c << ",";
                    os << ") r=" << r << " lhs=" << lhs << " rhs=" << rhs;
                    detail8 = os.str();
                }
            }
        });
        rep.add("key_lemma.ii.bounds", pass8, detail8);
    }

    // (iii) partition compatibility.
    if (elems.size() >= 2) {
        bool pass = true;
        std::string detail_str;
        for (Mask b = (a_set - 1) & a_set; b != 0; b = (b - 1) & a_set) {
            Mask c = a_set & ~b;
            if (c == 0)
                continue;
            const IncFiltration& wb = orbit.w_multi(b);
            const IncFiltration& wc = orbit.w_multi(c);
            for (int bb : graded_support(wb)) {
                for (int cc : graded_support(wc)) {
                    int d1 = iterated_graded({wc, wa}, {cc, bb + cc}, false).dim();
                    int d2 = iterated_graded({wc, wb}, {cc, bb}, false).dim();
                    int d3 = iterated_graded({wb, wa}, {bb, bb + cc}, false).dim();
                    int d4 = iterated_graded({wb, wc}, {bb, cc}, false).dim();
                    if (!(d1 == d2 && d2 == d3 && d3 == d4)) {
                        pass = false;
                        std::ostringstream os;
                        os << "B={" << mask_label(b) << "} C={" << mask_label(c) << "} b=" << bb
                           << " c=" << cc << " dims " << d1 << "," << d2 << "," << d3 << ","
                           << d4;
                        detail_str = os.str();
                    }
                }
            }
        }
        rep.add("key_lemma.iii", pass, detail_str);
    }

    // (iv) order independence of the iterated dimension table.
    {
        std::vector<std::vector<int>> orders;
        std::vector<int> base = elems;
        if (elems.size() <= 4) {
            std::sort(base.begin(), base.end());
            do
                orders.push_back(base);
            while (std::next_permutation(base.begin(), base.end()));
        } else {
            std::mt19937_64 rng(seed);
            orders.push_back(base);
            for (unsigned t = 0; t < perm_cap; ++t) {
                std::vector<int> o = base;
                std::shuffle(o.begin(), o.end(), rng);
                orders.push_back(o);
            }
        }
        std::vector<std::vector<int>> ranges;
        for (int i : elems) {
            const IncFiltration& wi = orbit.w_multi(Mask(1) << i);
            std::vector<int> r;
            for (int k = wi.lowest_index(); k <= wi.highest_index(); ++k)
                r.push_back(k);
            ranges.push_back(r);
        }
        bool pass = true;
        std::string detail_str;
        detail::IteratedDimTable ref(orbit, orders[0]);
        std::map<int, int> pos_in_base;
        for (std::size_t s = 0; s < orders[0].size(); ++s)
            pos_in_base[orders[0][s]] = static_cast<int>(s);
        for (std::size_t oi = 1; oi < orders.size() && pass; ++oi) {
            detail::IteratedDimTable other(orbit, orders[oi]);
            std::vector<int> cur(elems.size());
            detail::enumerate_tuples(ranges, 0, cur, [&](const std::vector<int>& m) {
                // m is indexed along the reference order; permute into the other.
                std::vector<int> mo(m.size());
                for (std::size_t s = 0; s < orders[oi].size(); ++s)
                    mo[s] = m[pos_in_base.at(orders[oi][s])];
                if (ref.dim(m) != other.dim(mo)) {
                    pass = false;
                    std::ostringstream os;
                    os << "order mismatch at m=(";
                    for (int v : m)
                        os << v << ",";
                    os << ")";
                    detail_str = os.str();
                }
            });
        }
        rep.add("key_lemma.iv", pass, detail_str);
    }
    return rep;
}

/** Zassenhaus commutation for two subsets at a single bidegree. */
inline bool zassenhaus_check(const NilpotentOrbit& orbit, Mask b, Mask c, int bi, int ci)
{
    if (b == 0 || c == 0 || !subset_of(b | c, orbit.index_set()))
        throw input_error("zassenhaus_check: subsets out of range");
    return zassenhaus_check(orbit.w_multi(b), orbit.w_multi(c), bi, ci);
}

/**
 * W(sum lambda_j N_j) does not depend on the positive weights lambda.
 * Checks `trials` random positive integer tuples against W^J.
 */
inline bool lambda_independence_check(const NilpotentOrbit& orbit, Mask j, int trials = 5,
                                      std::uint64_t seed = 99)
{
    if (j == 0)
        throw input_error("lambda_independence_check: empty subset");
    const IncFiltration& ref = orbit.w_multi(j);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(1, 9);
    for (int t = 0; t < trials; ++t) {
        Mat acc = Mat::Zero(orbit.dim(), orbit.dim());
        for (int i : mask_elements(j))
            acc += Rational(d(rng)) * orbit.nilpotent(i).matrix();
        if (weight_filtration(LinMap(acc)) != ref)
            return false;
    }
    return true;
}

/** Orbit-level wrappers for the relative filtration checks. */
inline bool verify_relative(const NilpotentOrbit& orbit, Mask j_act, Mask i_base)
{
    if (j_act == 0 || i_base == 0)
        throw input_error("verify_relative: empty subset");
    return verify_relative(orbit.sum_over(j_act), orbit.w_multi(i_base),
                           orbit.w_multi(i_base | j_act));
}

inline bool kashiwara_split_check(const NilpotentOrbit& orbit, const LinMap& n,
                                  const IncFiltration& w, const IncFiltration& m)
{
    require(verify_relative(n, w, m), "kashiwara_split_check: relative axioms fail");
    return kashiwara_split_check(w, m);
}

}  // namespace weightlab

#endif  // WEIGHTLAB_KEYLEMMA_HPP
