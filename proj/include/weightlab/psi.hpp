/**
 * The nearby-cycles complex of a nilpotent orbit with multiplicities: the
 * truncated-polynomial Koszul model of the commuting family N_i - n_i u,
 * its weight and Hodge filtrations, the monodromy endomorphism nu given by
 * column shift, the acyclicity complexes A^K_i, the graded decomposition,
 * primitive parts, and the monodromy-weight comparison.
 *
 * Two column conventions are supported.  In cokernel mode the columns are
 * u-powers i >= 0, the weight level of column i is r + 2i + 1 and the Hodge
 * level r + i + 1; the cokernel of nu is the column-0 layer and carries the
 * weight of the combinatorial complex shifted by +1.  In kernel mode the
 * columns are p <= 0 with weight level r + 2p - 1 and Hodge level r + p;
 * the kernel of nu is the column-0 layer and carries the weight shifted by
 * -1.  In both modes nu shifts the column index by +1 and the differential
 * adds the insertion of -n_i times the column shift to the Koszul insertion
 * of N_i.
 *
 * Total cohomology is computed on a staircase truncation (the column range
 * of a cell grows with |J|), which keeps the model exact for the polynomial
 * module; the filtration and monodromy machinery runs on a uniform column
 * band where nu is a chain map.  Graded pieces in the reported weight
 * window live far from the band boundary and are exact there.
 */

#ifndef WEIGHTLAB_PSI_HPP
#define WEIGHTLAB_PSI_HPP

#include <weightlab/complexes.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace weightlab {

enum class PsiMode { cokernel, kernel };

inline const char* psi_mode_name(PsiMode m)
{
    return m == PsiMode::cokernel ? "cokernel" : "kernel";
}

class PsiComplex {
public:
    PsiComplex(const NilpotentOrbit& orbit, std::vector<int> multiplicities, int p_max,
               PsiMode mode)
        : orbit_(orbit), mults_(std::move(multiplicities)), q_(p_max), mode_(mode),
          cache_(orbit_)
    {
        if (static_cast<int>(mults_.size()) != orbit_.index_count())
            throw input_error("psi: one multiplicity per orbit index required");
        for (int m : mults_)
            if (m < 1)
                throw input_error("psi: multiplicities must be >= 1");
        i0_ = weightlab::support_radius(orbit_);
        band_cap_ = std::max(q_, i0_ + 2);
        total_ = build_model(q_, true);
        band_ = build_model(band_cap_, false);
    }

    const NilpotentOrbit& orbit() const { return orbit_; }
    const std::vector<int>& multiplicities() const { return mults_; }
    PsiMode mode() const { return mode_; }
    int p_max() const { return q_; }
    int band_cap() const { return band_cap_; }
    int support_radius() const { return i0_; }
    const CochainComplex& total_complex() const { return total_; }
    const CochainComplex& band_complex() const { return band_; }

    /** Total cohomology profile of the staircase model. */
    std::map<int, int> total_profile() const { return total_.profile(); }

    /** Columns of a band cell (uniform across cells). */
    std::vector<int> band_cols() const { return cols_for(band_cap_, false, 0); }

    /** Weight level of the combinatorial complex carried by a column. */
    int column_level(int r, int col) const
    {
        return mode_ == PsiMode::cokernel ? r + 2 * col + 1 : r + 2 * col - 1;
    }

    /** Hodge level carried by a column. */
    int column_hodge_level(int r, int col) const
    {
        return mode_ == PsiMode::cokernel ? r + col + 1 : r + col;
    }

    /** The W_r(J, s.) intersection at the weight level of a column. */
    const Subspace& weight_level(Mask j, const Chain& chain, int r, int col)
    {
        return cache_.level(j, chain, column_level(r, col));
    }

    const std::vector<Chain>& chains() const { return chains_; }
    WeightLevelCache& cache() { return cache_; }

    /**
     * The weight-r subspace of a band degree: the direct sum of the
     * per-cell chain-filtration levels.
     */
    Subspace weight_degree_subspace(int r, int degree)
    {
        const auto* blk = band_.block_at(degree);
        if (!blk || blk->total == 0)
            return Subspace::zero(band_.dim_at(degree));
        Mat gens = Mat::Zero(blk->total, blk->total);
        int count = 0;
        for (std::size_t i = 0; i < blk->cells.size(); ++i) {
            const Cell& c = blk->cells[i];
            const Subspace& lev = weight_level(c.J, chains_[c.chain], r, c.col);
            int ld = lev.rank();
            // band terms are full copies of L, so the cell coordinates are
            // the ambient coordinates
            gens.block(blk->offsets[i], count, orbit_.dim(), ld) = lev.basis();
            count += ld;
        }
        return Subspace(blk->total, Mat(gens.leftCols(count)));
    }

    /** Hodge-r subspace of a band degree (requires an orbit filtration F). */
    Subspace hodge_degree_subspace(int r, int degree)
    {
        if (!orbit_.hodge())
            throw input_error("psi: orbit has no Hodge filtration");
        const auto* blk = band_.block_at(degree);
        if (!blk || blk->total == 0)
            return Subspace::zero(band_.dim_at(degree));
        const IncFiltration& f = *orbit_.hodge();
        Mat gens = Mat::Zero(blk->total, blk->total);
        int count = 0;
        for (std::size_t i = 0; i < blk->cells.size(); ++i) {
            const Cell& c = blk->cells[i];
            Subspace lev = f.at(column_hodge_level(r, c.col) - popcount(c.J));
            gens.block(blk->offsets[i], count, orbit_.dim(), lev.rank()) = lev.basis();
            count += lev.rank();
        }
        return Subspace(blk->total, Mat(gens.leftCols(count)));
    }

    /** The graded complex Gr^W_r of the band, restricted to a column range. */
    CochainComplex graded_complex(int r, int col_lo, int col_hi)
    {
        ComplexRecipe rec = band_recipe(band_cap_, false);
        std::vector<int> cols;
        for (int c : band_cols())
            if (c >= col_lo && c <= col_hi)
                cols.push_back(c);
        rec.cols = [cols](Mask) { return cols; };
        rec.term = [this, r](Mask j, int chain_id, int col) {
            const Chain& ch = chains_[chain_id];
            return Subquotient(cache_.level(j, ch, column_level(r, col)),
                               cache_.level(j, ch, column_level(r, col) - 1));
        };
        return build_complex(rec);
    }

    CochainComplex graded_complex(int r)
    {
        auto cols = band_cols();
        return graded_complex(r, cols.front(), cols.back());
    }

    /** The weight-r subcomplex of the band. */
    CochainComplex weight_subcomplex(int r)
    {
        ComplexRecipe rec = band_recipe(band_cap_, false);
        Subspace zero = Subspace::zero(orbit_.dim());
        rec.term = [this, r, zero](Mask j, int chain_id, int col) {
            return Subquotient(cache_.level(j, chains_[chain_id], column_level(r, col)), zero);
        };
        return build_complex(rec);
    }

    /** nu as a chain self-map of the band: column shift by +1. */
    ChainMap nu_map(int power = 1) const
    {
        ChainMap cm;
        auto cols = cols_for(band_cap_, false, 0);
        int top = cols.back(), bot = cols.front();
        for (int d = band_.lo; d <= band_.hi(); ++d) {
            const auto* blk = band_.block_at(d);
            if (!blk || blk->total == 0)
                continue;
            Mat m = Mat::Zero(blk->total, blk->total);
            for (std::size_t i = 0; i < blk->cells.size(); ++i) {
                Cell tgt = blk->cells[i];
                tgt.col += power;
                if (tgt.col > top || tgt.col < bot)
                    continue;
                int ti = blk->find_cell(tgt);
                require(ti >= 0, "nu_map: shifted cell not found");
                m.block(blk->offsets[ti], blk->offsets[i], orbit_.dim(), orbit_.dim()) =
                    Mat::Identity(orbit_.dim(), orbit_.dim());
            }
            cm.blocks[d] = std::move(m);
        }
        return cm;
    }

private:
    std::vector<int> cols_for(int q, bool staircase, int jsize) const
    {
        std::vector<int> out;
        if (mode_ == PsiMode::cokernel) {
            int hi = staircase ? q + jsize : q;
            for (int c = 0; c <= hi; ++c)
                out.push_back(c);
        } else {
            int lo = staircase ? -q + jsize : -q;
            for (int c = lo; c <= 0; ++c)
                out.push_back(c);
        }
        return out;
    }

    ComplexRecipe band_recipe(int q, bool staircase)
    {
        ComplexRecipe rec;
        rec.ground = orbit_.index_set();
        if (chains_.empty())
            chains_ = enumerate_chains(rec.ground);
        rec.chains = chains_;
        rec.cols = [this, q, staircase](Mask j) { return cols_for(q, staircase, popcount(j)); };
        rec.insertions = [this](int i) {
            return std::vector<ComplexRecipe::Insertion>{
                {orbit_.nilpotent(i), 0, 1},
                {LinMap::identity(orbit_.dim()), 1, Rational(-mults_[i])}};
        };
        return rec;
    }

    CochainComplex build_model(int q, bool staircase)
    {
        ComplexRecipe rec = band_recipe(q, staircase);
        Subspace full = Subspace::full(orbit_.dim());
        Subspace zero = Subspace::zero(orbit_.dim());
        rec.term = [full, zero](Mask, int, int) { return Subquotient(full, zero); };
        return build_complex(rec);
    }

    NilpotentOrbit orbit_;
    std::vector<int> mults_;
    int q_;
    PsiMode mode_;
    int i0_ = 0;
    int band_cap_ = 0;
    std::vector<Chain> chains_;
    WeightLevelCache cache_;
    CochainComplex total_;
    CochainComplex band_;
};

/**
 * Build the nearby-cycles model.  When p_max is omitted, the truncation is
 * the smallest q at which the total cohomology profile agrees with the one
 * at q + 1, capped at dim * n + i0.
 */
inline PsiComplex build_psi(const NilpotentOrbit& orbit, const std::vector<int>& multiplicities,
                            int p_max = -1, PsiMode mode = PsiMode::cokernel)
{
    if (p_max >= 0)
        return PsiComplex(orbit, multiplicities, p_max, mode);
    int cap = orbit.dim() * std::max(1, orbit.index_count()) + weightlab::support_radius(orbit);
    std::map<int, int> prev;
    bool have_prev = false;
    for (int q = 1; q <= cap; ++q) {
        PsiComplex psi(orbit, multiplicities, q, mode);
        std::map<int, int> prof = psi.total_profile();
        if (have_prev && prof == prev)
            return PsiComplex(orbit, multiplicities, q - 1, mode);
        prev = prof;
        have_prev = true;
    }
    PsiComplex last(orbit, multiplicities, cap, mode);
    std::ostringstream os;
    os << "psi truncation did not stabilize by q = " << cap << ": profile at cap "
       << profile_str(last.total_profile()) << " vs previous " << profile_str(prev);
    throw resource_error(os.str());
}

/** The column-window of Lemma 5.3 in the current mode. */
inline std::vector<int> psi_graded_window(const PsiComplex& psi, int r)
{
    std::vector<int> out;
    int i0 = psi.support_radius();
    for (int c : psi.band_cols()) {
        int lev = psi.column_level(r, c);
        bool in_window = psi.mode() == PsiMode::cokernel
                             ? (std::abs(r) + 1 <= lev && lev <= i0)
                             : (-i0 + 1 <= lev && lev <= -std::abs(r) - 1);
        if (in_window)
            out.push_back(c);
    }
    return out;
}

/**
 * Graded piece of the weight filtration on the band, with the window
 * assertion of Lemma 5.3: restricting the columns to I(r) leaves the
 * cohomology profile unchanged (all other columns contribute nothing),
 * except that for weights at the edge of the support both profiles are
 * empty anyway.
 */
inline CochainComplex psi_graded(PsiComplex& psi, int r, CheckReport* rep = nullptr)
{
    CochainComplex full = psi.graded_complex(r);
    if (rep) {
        std::vector<int> win = psi_graded_window(psi, r);
        std::map<int, int> wprof;
        if (!win.empty()) {
            CochainComplex wc = psi.graded_complex(r, win.front(), win.back());
            wprof = wc.profile();
        }
        std::map<int, int> fprof = full.profile();
        rep->add("psi.graded_window_r" + std::to_string(r), wprof == fprof,
                 "window " + profile_str(wprof) + " vs full " + profile_str(fprof));
    }
    return full;
}

/** The weight-r subcomplex of the band model. */
inline CochainComplex psi_weight(PsiComplex& psi, int r) { return psi.weight_subcomplex(r); }

/**
 * The acyclic complex A^K_i = s[C^K_{i+2p-1} [p], eta]_{1-i <= p <= 0}: a
 * finite ladder of purity complexes joined by the multiplicity insertion.
 */
inline CochainComplex a_complex(const NilpotentOrbit& orbit, const std::vector<int>& mults,
                                Mask k, int i_level)
{
    if (i_level < 1)
        throw input_error("a_complex: i must be >= 1");
    if (k == 0 || !subset_of(k, orbit.index_set()))
        throw input_error("a_complex: K out of range");
    ComplexRecipe rec;
    rec.ground = k;
    rec.chains = chains_through(k, k);
    rec.deletable = [k](const Chain& ch, int pos) { return ch.sets[pos] != k; };
    std::vector<int> cols;
    for (int p = 1 - i_level; p <= 0; ++p)
        cols.push_back(p);
    rec.cols = [cols](Mask) { return cols; };
    std::vector<int> elem = mask_elements(orbit.index_set());
    rec.insertions = [&orbit, &mults](int i) {
        return std::vector<ComplexRecipe::Insertion>{
            {orbit.nilpotent(i), 0, 1},
            {LinMap::identity(orbit.dim()), 1, Rational(-mults[i])}};
    };
    const IncFiltration& wk = orbit.w_multi(k);
    const std::vector<Chain>& chains = rec.chains;
    rec.term = [&, k, i_level](Mask j, int chain_id, int col) {
        int r_level = i_level + 2 * col - 1;
        const Chain& ch = chains[chain_id];
        int ak = WeightLevelCache::a_index(k, j, r_level);
        Subspace top = wk.at(ak);
        Subspace bot = wk.at(ak - 1);
        Subspace num = top;
        for (Mask s : ch.sets) {
            if (s == k)
                continue;
            int as = WeightLevelCache::a_index(s, j, r_level - 1);
            num = intersect(num, sum(intersect(orbit.w_multi(s).at(as), top), bot));
        }
        num = sum(num, bot);
        return Subquotient(num, bot);
    };
    return build_complex(rec);
}

/**
 * The component complex Psi^{KM}_r of the graded decomposition: the ladder
 * of C^{KM} complexes over the effective column window.
 */
inline CochainComplex psi_km_component(PsiComplex& psi, Mask k, int r)
{
    const NilpotentOrbit& orbit = psi.orbit();
    ComplexRecipe rec;
    rec.ground = orbit.index_set();
    rec.chains = chains_through(rec.ground, k);
    rec.deletable = [k](const Chain& ch, int pos) { return ch.sets[pos] != k; };
    std::vector<int> cols;
    int slack = psi.support_radius() + orbit.index_count() + 1;
    for (int c : psi.band_cols())
        if (std::abs(psi.column_level(r, c)) <= slack)
            cols.push_back(c);
    rec.cols = [cols](Mask) { return cols; };
    const std::vector<int>& mults = psi.multiplicities();
    rec.insertions = [&orbit, &mults](int i) {
        return std::vector<ComplexRecipe::Insertion>{
            {orbit.nilpotent(i), 0, 1},
            {LinMap::identity(orbit.dim()), 1, Rational(-mults[i])}};
    };
    const IncFiltration& wk = orbit.w_multi(k);
    const std::vector<Chain>& chains = rec.chains;
    rec.term = [&orbit, &wk, &chains, &psi, k, r](Mask j, int chain_id, int col) {
        int r_level = psi.column_level(r, col);
        const Chain& ch = chains[chain_id];
        int ak = WeightLevelCache::a_index(k, j, r_level);
        Subspace top = wk.at(ak);
        Subspace bot = wk.at(ak - 1);
        Subspace num = top;
        for (Mask s : ch.sets) {
            if (s == k)
                continue;
            int as = WeightLevelCache::a_index(s, j, r_level - 1);
            num = intersect(num, sum(intersect(orbit.w_multi(s).at(as), top), bot));
        }
        num = sum(num, bot);
        return Subquotient(num, bot);
    };
    return build_complex(rec);
}

/** Gr^W_r Psi decomposes as the sum of the Psi^{KM}_r profiles. */
inline CheckReport psi_decomposition_check(PsiComplex& psi, int r)
{
    CheckReport rep;
    std::map<int, int> lhs = psi.graded_complex(r).profile();
    std::map<int, int> rhs;
    std::ostringstream contrib;
    for (Mask k : enumerate_subsets(psi.orbit().index_set())) {
        if (k == 0)
            continue;
        std::map<int, int> p = psi_km_component(psi, k, r).profile();
        if (!p.empty())
            contrib << " K={" << mask_label(k) << "}:" << profile_str(p);
        for (const auto& [d, h] : p)
            rhs[d] += h;
    }
    rep.add("psi.decomposition_r" + std::to_string(r), lhs == rhs,
            "lhs " + profile_str(lhs) + " rhs " + profile_str(rhs) + contrib.str());
    return rep;
}

/**
 * The two checkable halves of W(nu) = W: nu lowers the weight filtration
 * by two termwise, and nu^r induces cohomology isomorphisms
 * Gr_r -> Gr_{-r} for r >= 1 across the support window.
 */
inline CheckReport monodromy_weight_check(PsiComplex& psi)
{
    CheckReport rep;
    const int i0 = psi.support_radius();
    // (a) nu(W_r) inside W_{r-2}: on a column shift this is the statement
    // that the level of column c in W_r equals the level of column c+1 in
    // W_{r-2}; verify the inclusion on every band cell.
    bool drop_ok = true;
    std::string drop_why;
    for (int r = -i0 - 2; r <= i0 + 2 && drop_ok; ++r) {
        for (const Chain& ch : psi.chains()) {
            for (Mask j : enumerate_subsets(psi.orbit().index_set())) {
                auto cols = psi.band_cols();
                for (std::size_t ci = 0; ci + 1 < cols.size(); ++ci) {
                    const Subspace& src = psi.weight_level(j, ch, r, cols[ci]);
                    const Subspace& dst = psi.weight_level(j, ch, r - 2, cols[ci] + 1);
                    if (!dst.contains(src)) {
                        drop_ok = false;
                        drop_why = "cell J={" + mask_label(j) + "} chain " + ch.label()
                                   + " col " + std::to_string(cols[ci]) + " at r "
                                   + std::to_string(r);
                    }
                }
            }
        }
    }
    rep.add("psi.nu_drops_weight_by_two", drop_ok, drop_why);

    // (b) nu^r : Gr_r -> Gr_{-r} bijective on cohomology.
    for (int r = 1; r <= i0 + 1; ++r) {
        CochainComplex grp = psi.graded_complex(r);
        CochainComplex grm = psi.graded_complex(-r);
        ChainMap nu_r;
        auto cols = psi.band_cols();
        int top = cols.back(), bot = cols.front();
        for (int d = grp.lo; d <= grp.hi(); ++d) {
            const auto* sb = grp.block_at(d);
            const auto* tb = grm.block_at(d);
            if (!sb || !tb || sb->total == 0 || tb->total == 0)
                continue;
            Mat m = Mat::Zero(tb->total, sb->total);
            for (std::size_t i = 0; i < sb->cells.size(); ++i) {
                Cell tgt = sb->cells[i];
                tgt.col += r;
                if (tgt.col > top || tgt.col < bot)
                    continue;
                int ti = tb->find_cell(tgt);
                if (ti < 0)
                    continue;
                LinMap blockmap = induced_map(LinMap::identity(psi.orbit().dim()),
                                              sb->terms[i], tb->terms[ti]);
                if (blockmap.domain_dim() > 0 && blockmap.codomain_dim() > 0)
                    m.block(tb->offsets[ti], sb->offsets[i], blockmap.codomain_dim(),
                            blockmap.domain_dim()) = blockmap.matrix();
            }
            nu_r.blocks[d] = std::move(m);
        }
        nu_r.assert_chain_map(grp, grm);
        std::string why;
        bool ok = nu_r.cohomology_bijective(grp, grm, &why);
        std::map<int, int> pp = grp.profile();
        rep.add("psi.nu_power_iso_r" + std::to_string(r), ok,
                ok ? profile_str(pp) : why);
    }
    return rep;
}

/**
 * Primitive part P(m.): the joint kernel of the induced powers
 * N_i^{m_i - 1} inside the iterated graded piece at m. - 2, as a
 * subquotient of the ambient space.  The dimension is checked against the
 * iterated graded piece of L / sum N_i L at the same indices.
 */
inline Subquotient primitive_part(const NilpotentOrbit& orbit, Mask k,
                                  const std::vector<int>& m)
{
    std::vector<int> elems = mask_elements(k);
    if (m.size() != elems.size())
        throw input_error("primitive_part: index vector length mismatch");
    for (int mi : m)
        if (mi < 2)
            throw input_error("primitive_part: all m_i must be >= 2");
    std::vector<IncFiltration> filts = single_filtrations(orbit, k);
    std::vector<int> base(m.size());
    for (std::size_t s = 0; s < m.size(); ++s)
        base[s] = m[s] - 2;
    Subquotient dom = iterated_graded(filts, base, false);
    Subspace ker_coords = Subspace::full(dom.dim());
    for (std::size_t s = 0; s < elems.size(); ++s) {
        std::vector<int> tgt = base;
        tgt[s] = -m[s];
        Subquotient codom = iterated_graded(filts, tgt, false);
        LinMap pw = orbit.nilpotent(elems[s]).power(m[s] - 1);
        LinMap ind = induced_map(pw, dom, codom);
        ker_coords = intersect(ker_coords, kernel(ind));
    }
    // Lift the kernel back to an ambient subquotient.
    Mat lifted(orbit.dim(), ker_coords.rank());
    for (int j = 0; j < ker_coords.rank(); ++j)
        lifted.col(j) = dom.lift(ker_coords.basis().col(j));
    Subspace num = sum(dom.denominator(), Subspace(orbit.dim(), lifted));
    Subquotient prim(num, dom.denominator());

    Subspace den = Subspace::zero(orbit.dim());
    for (int i : elems)
        den = sum(den, image(orbit.nilpotent(i)));
    Subquotient quot(Subspace::full(orbit.dim()), den);
    int expect = iterated_graded_in(quot, filts, base).dim();
    require(prim.dim() == expect, "primitive_part: dimension " + std::to_string(prim.dim())
                                      + " != graded quotient dimension "
                                      + std::to_string(expect));
    return prim;
}

/**
 * The inverse-isomorphism of the spectral-sequence differential at the
 * bijectivity level: the composite of the powers N_i^{m_i - 2} maps P(m.)
 * isomorphically onto the iterated graded piece at -m. + 2 of the joint
 * kernel of the N_i.
 */
inline bool gamma_check(const NilpotentOrbit& orbit, Mask k, const std::vector<int>& m)
{
    std::vector<int> elems = mask_elements(k);
    if (m.size() != elems.size())
        throw input_error("gamma_check: index vector length mismatch");
    for (int mi : m)
        if (mi < 2)
            throw input_error("gamma_check: all m_i must be >= 2");
    Subquotient prim = primitive_part(orbit, k, m);
    std::vector<IncFiltration> filts = single_filtrations(orbit, k);
    std::vector<int> tgt_idx(m.size());
    for (std::size_t s = 0; s < m.size(); ++s)
        tgt_idx[s] = -m[s] + 2;
    Subquotient target = iterated_graded(filts, tgt_idx, false);

    Mat comp = Mat::Identity(orbit.dim(), orbit.dim());
    for (std::size_t s = 0; s < elems.size(); ++s)
        comp = orbit.nilpotent(elems[s]).power(m[s] - 2).matrix() * comp;
    LinMap gamma_ind = induced_map(LinMap(comp), prim, target);

    Subspace ker_all = Subspace::full(orbit.dim());
    for (int i : elems)
        ker_all = intersect(ker_all, kernel(orbit.nilpotent(i)));
    Subquotient sub = iterated_graded_in(Subquotient(ker_all, Subspace::zero(orbit.dim())),
                                         filts, tgt_idx);
    LinMap incl = induced_map(LinMap::identity(orbit.dim()), sub, target);

    if (prim.dim() != sub.dim())
        return false;
    if (image(gamma_ind).rank() != prim.dim() || image(incl).rank() != sub.dim())
        return false;
    return image(gamma_ind) == image(incl);
}

/**
 * The bridge between the weight on the nearby cycles and the weight on the
 * combinatorial complex.  In cokernel mode the cokernel of nu carries the
 * filtration induced by W_r with the graded dimensions of W_{r+1} on the
 * combinatorial complex; in kernel mode the kernel of nu carries W_{r-1}.
 * Dimensions are compared per band degree over the support window.
 */
inline CheckReport ker_coker_bridge_check(const NilpotentOrbit& orbit,
                                          const std::vector<int>& mults, PsiMode mode,
                                          int p_max = -1)
{
    CheckReport rep;
    PsiComplex psi = p_max >= 0 ? PsiComplex(orbit, mults, p_max, mode)
                                : build_psi(orbit, mults, -1, mode);
    ChainMap nu = psi.nu_map();
    const CochainComplex& band = psi.band_complex();
    WeightLevelCache cache(orbit);
    CochainComplex omega = omega_star(orbit);
    const int i0 = psi.support_radius();
    std::vector<Chain> chains = enumerate_chains(orbit.index_set());

    for (int r = -i0 - 2; r <= i0 + 2; ++r) {
        bool ok = true;
        std::string why;
        int shift = mode == PsiMode::cokernel ? r + 1 : r - 1;
        for (int d = band.lo; d <= band.hi(); ++d) {
            Mat nu_d = nu.at(band, band, d);
            int lhs = 0;
            if (mode == PsiMode::cokernel) {
                Subspace im = image(LinMap(nu_d));
                Subspace wr = psi.weight_degree_subspace(r, d);
                Subspace wr1 = psi.weight_degree_subspace(r - 1, d);
                lhs = sum(wr, im).rank() - sum(wr1, im).rank();
            } else {
                Subspace ker_nu = kernel(LinMap(nu_d));
                Subspace wr = psi.weight_degree_subspace(r, d);
                Subspace wr1 = psi.weight_degree_subspace(r - 1, d);
                lhs = intersect(wr, ker_nu).rank() - intersect(wr1, ker_nu).rank();
            }
            // Graded term dimension of the combinatorial complex at the
            // shifted level.
            int rhs = 0;
            const auto* oblk = omega.block_at(d);
            if (oblk) {
                for (const Cell& c : oblk->cells)
                    rhs += cache.level(c.J, chains[c.chain], shift).rank()
                           - cache.level(c.J, chains[c.chain], shift - 1).rank();
            }
            if (lhs != rhs) {
                ok = false;
                why = "degree " + std::to_string(d) + " r " + std::to_string(r) + ": "
                      + std::to_string(lhs) + " vs " + std::to_string(rhs);
                break;
            }
        }
        rep.add("psi.bridge_" + std::string(psi_mode_name(mode)) + "_r" + std::to_string(r),
                ok, why);
    }
    return rep;
}

}  // namespace weightlab

#endif  // WEIGHTLAB_PSI_HPP
