/**
 * Weight filtrations of nilpotent endomorphisms and the relative-weight
 * machinery built on top of them: Deligne's characterizing axioms, relative
 * filtrations, the Kashiwara splitting identity, the key decomposition of
 * iterated graded pieces, and the Zassenhaus commutation check.
 */

#ifndef WEIGHTLAB_WEIGHTCORE_HPP
#define WEIGHTLAB_WEIGHTCORE_HPP

#include <weightlab/qlinalg.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

namespace weightlab {

/** Smallest e >= 0 with N^e = 0; throws past the ambient dimension. */
inline int nilpotency_index(const LinMap& n)
{
    require(n.domain_dim() == n.codomain_dim(), "nilpotency_index: not an endomorphism");
    LinMap p = LinMap::identity(n.domain_dim());
    for (int e = 0; e <= n.domain_dim(); ++e) {
        if (p.is_zero())
            return e;
        p = n.compose(p);
    }
    throw contract_error("nilpotency_index: map is not nilpotent");
}

/**
 * The monodromy weight filtration of a nilpotent endomorphism, centered at
 * zero, by the closed formula W_k = sum_{j >= 0} N^j (ker N^{k+2j+1}).
 * The Deligne axioms are re-verified on the result.
 */
inline IncFiltration weight_filtration(const LinMap& n)
{
    const int e = nilpotency_index(n);  // throws if not nilpotent
    const int dim = n.domain_dim();
    const int top = std::max(e - 1, 0);
    IncFiltration w(dim, Direction::increasing);
    std::vector<LinMap> powers;
    powers.push_back(LinMap::identity(dim));
    for (int j = 1; j <= e + 1; ++j)
        powers.push_back(n.compose(powers.back()));
    std::vector<Subspace> kernels(e + 2, Subspace::zero(dim));
    for (int j = 0; j <= e + 1; ++j)
        kernels[j] = kernel(powers[std::min(j, e + 1)]);
    for (int k = -top; k <= top; ++k) {
        Subspace acc = Subspace::zero(dim);
        for (int j = 0; j <= e; ++j) {
            int pw = k + 2 * j + 1;
            if (pw <= 0)
                continue;
            Subspace ker_pw = pw > e ? Subspace::full(dim) : kernels[pw];
            acc = sum(acc, image_of(powers[j], ker_pw));
        }
        w.set_step(k, acc);
    }
    if (w.steps().empty() || !(w.at(top) == Subspace::full(dim)))
        w.set_step(top, Subspace::full(dim));
    require(w.well_formed(), "weight_filtration: non-monotone result");
    return w;
}

/** One failed axiom with the location it failed at. */
struct AxiomWitness {
    int j = 0;
    int dim_src = 0;
    int dim_dst = 0;
    int rank = 0;
    std::string what;
};

struct WeightReport {
    bool ok = true;
    std::vector<AxiomWitness> witnesses;  // one entry per verified j > 0

    void fail(const AxiomWitness& w)
    {
        ok = false;
        witnesses.push_back(w);
    }
};

/**
 * Check the two Deligne axioms for a centered weight filtration:
 * N W_j inside W_{j-2}, and N^j : Gr_j -> Gr_{-j} bijective for j > 0.
 * Returns the report with witness dimensions per power.
 */
inline WeightReport verify_weight_axioms(const LinMap& n, const IncFiltration& w)
{
    WeightReport rep;
    const int dim = n.domain_dim();
    if (w.ambient_dim() != dim)
        throw input_error("verify_weight_axioms: ambient mismatch");
    int lo = w.lowest_index() - 1, hi = w.highest_index() + 1;
    if (!(w.at(hi) == Subspace::full(dim))) {
        rep.fail({hi, 0, 0, 0, "filtration is not exhaustive"});
        return rep;
    }
    for (int j = lo; j <= hi; ++j) {
        if (!w.at(j - 2).contains(image_of(n, w.at(j)))) {
            rep.fail({j, 0, 0, 0, "N W_j not inside W_{j-2}"});
            return rep;
        }
    }
    for (int j = 1; j <= hi; ++j) {
        Subquotient grj = graded(w, j);
        Subquotient grmj = graded(w, -j);
        LinMap ind = induced_map(n.power(j), grj, grmj);
        int rank = image(ind).rank();
        bool bij = (grj.dim() == grmj.dim()) && rank == grj.dim();
        rep.witnesses.push_back({j, grj.dim(), grmj.dim(), rank,
                                 bij ? "bijective" : "not bijective"});
        if (!bij) {
            rep.ok = false;
            return rep;
        }
    }
    return rep;
}

/**
 * Deligne's relative weight filtration condition: M shifts by -2 under N
 * and N^j : Gr^M_{k+j} Gr^W_k -> Gr^M_{k-j} Gr^W_k is bijective for all k
 * and all j > 0.  N must preserve W.
 */
inline bool verify_relative(const LinMap& n, const IncFiltration& w, const IncFiltration& m)
{
    const int dim = n.domain_dim();
    int wlo = w.lowest_index() - 1, whi = w.highest_index() + 1;
    for (int k = wlo; k <= whi; ++k)
        require(w.at(k).contains(image_of(n, w.at(k))),
                "verify_relative: N does not preserve W at level " + std::to_string(k));
    int mlo = m.lowest_index() - 1, mhi = m.highest_index() + 1;
    for (int l = mlo; l <= mhi; ++l)
        if (!m.at(l - 2).contains(image_of(n, m.at(l))))
            return false;
    (void)dim;
    for (int k = wlo; k <= whi; ++k) {
        for (int j = 1; j <= mhi - mlo; ++j) {
            Subquotient src = iterated_graded_in(graded(w, k), {m}, {k + j});
            Subquotient dst = iterated_graded_in(graded(w, k), {m}, {k - j});
            if (src.dim() != dst.dim())
                return false;
            if (src.dim() == 0)
                continue;
            LinMap ind = induced_map(n.power(j), src, dst);
            if (image(ind).rank() != src.dim())
                return false;
        }
    }
    return true;
}

/** Kashiwara splitting at dimension level: dim Gr^M_l = sum_k dim Gr^M_l Gr^W_k. */
inline bool kashiwara_split_check(const IncFiltration& w, const IncFiltration& m)
{
    int mlo = m.lowest_index() - 1, mhi = m.highest_index() + 1;
    int wlo = w.lowest_index() - 1, whi = w.highest_index() + 1;
    for (int l = mlo; l <= mhi; ++l) {
        int lhs = graded(m, l).dim();
        int rhs = 0;
        for (int k = wlo; k <= whi; ++k)
            rhs += iterated_graded_in(graded(w, k), {m}, {l}).dim();
        if (lhs != rhs)
            return false;
    }
    return true;
}

/**
 * Zassenhaus commutation at dimension level:
 * dim Gr^{W^B}_b Gr^{W^C}_c = dim Gr^{W^C}_c Gr^{W^B}_b.
 */
inline bool zassenhaus_check(const IncFiltration& wb, const IncFiltration& wc, int b, int c)
{
    Subquotient bc = iterated_graded({wc, wb}, {c, b}, false);
    Subquotient cb = iterated_graded({wb, wc}, {b, c}, false);
    return bc.dim() == cb.dim();
}

}  // namespace weightlab

#endif  // WEIGHTLAB_WEIGHTCORE_HPP
