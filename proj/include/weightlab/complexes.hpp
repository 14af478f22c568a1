/**
 * Builders and checkers for the combinatorial complexes attached to a
 * nilpotent orbit: the Koszul complex, the weighted combinatorial complex
 * over the chain category S(M) with its weight and Hodge filtrations, the
 * graded-weight quotients, the purity complexes C^K_r and C^{KM}_r, the
 * elementary complexes, the diagonal embeddings supported on T(r)/T'(r),
 * the intersection complex IC(L), and the fiber-level decomposition and
 * Kashiwara-Kawai checks.
 *
 * Every complex is assembled from cells (J, s., col) whose terms are
 * subquotients of the orbit's ambient space; differentials are block
 * matrices of induced maps, and d.d = 0 is asserted at construction.
 */

#ifndef WEIGHTLAB_COMPLEXES_HPP
#define WEIGHTLAB_COMPLEXES_HPP

#include <weightlab/keylemma.hpp>
#include <weightlab/orbit.hpp>
#include <weightlab/scat.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace weightlab {

struct Cell {
    Mask J = 0;
    int chain = 0;  // index into the complex's chain table
    int col = 0;    // extra grading slot (column of a double complex, or a
                    // summand id for direct sums); does not affect degree
};

/**
 * A bounded cochain complex of rational spaces.  Terms are grouped by
 * degree; each degree block remembers the cells and subquotients its
 * coordinates came from, so chain maps between complexes can be assembled
 * cell by cell.
 */
class CochainComplex {
public:
    struct DegreeBlock {
        std::vector<Cell> cells;
        std::vector<Subquotient> terms;
        std::vector<int> offsets;  // prefix sums of term dims
        int total = 0;

        int find_cell(const Cell& c) const
        {
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (cells[i].J == c.J && cells[i].chain == c.chain && cells[i].col == c.col)
                    return static_cast<int>(i);
            return -1;
        }
    };

    int lo = 0;  // lowest degree
    std::vector<DegreeBlock> blocks;
    std::vector<Mat> diffs;  // diffs[i] : degree lo+i -> lo+i+1

    int hi() const { return lo + static_cast<int>(blocks.size()) - 1; }

    const DegreeBlock* block_at(int degree) const
    {
        int idx = degree - lo;
        if (idx < 0 || idx >= static_cast<int>(blocks.size()))
            return nullptr;
        return &blocks[idx];
    }

    int dim_at(int degree) const
    {
        const DegreeBlock* b = block_at(degree);
        return b ? b->total : 0;
    }

    Mat diff_at(int degree) const
    {
        int idx = degree - lo;
        if (idx < 0 || idx >= static_cast<int>(diffs.size()))
            return Mat::Zero(dim_at(degree + 1), dim_at(degree));
        return diffs[idx];
    }

    /** ker d_k / im d_{k-1} inside the degree-k coordinate space. */
    Subquotient cohomology(int degree) const
    {
        int n = dim_at(degree);
        Subspace ker = n == 0 ? Subspace::zero(0) : kernel(LinMap(diff_at(degree)));
        Subspace im = n == 0 ? Subspace::zero(0)
                             : image(LinMap(diff_at(degree - 1)));
        return Subquotient(ker, im);
    }

    /** Cohomology dimensions per degree over the full support. */
    std::map<int, int> profile() const
    {
        std::map<int, int> out;
        for (int d = lo; d <= hi(); ++d) {
            int h = dim_at(d) - rank_of(diff_at(d)) - rank_of(diff_at(d - 1));
            if (h != 0)
                out[d] = h;
        }
        return out;
    }

    bool acyclic() const { return profile().empty(); }

    int euler_characteristic() const
    {
        int chi = 0;
        for (int d = lo; d <= hi(); ++d)
            chi += (d % 2 == 0 ? 1 : -1) * dim_at(d);
        return chi;
    }

    void assert_d_squared_zero() const
    {
        for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
            Mat prod = diffs[i + 1] * diffs[i];
            for (int r = 0; r < prod.rows(); ++r)
                for (int c = 0; c < prod.cols(); ++c)
                    require(prod(r, c) == 0, "complex differential does not square to zero");
        }
    }
};

inline std::string profile_str(const std::map<int, int>& p)
{
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [d, h] : p) {
        if (!first)
            os << ", ";
        os << "H^" << d << "=" << h;
        first = false;
    }
    os << "}";
    return os.str();
}

/** A degreewise map between complexes; commutation with d is asserted. */
struct ChainMap {
    std::map<int, Mat> blocks;  // degree -> matrix dim_dst(d) x dim_src(d)

    Mat at(const CochainComplex& src, const CochainComplex& dst, int degree) const
    {
        auto it = blocks.find(degree);
        if (it != blocks.end())
            return it->second;
        return Mat::Zero(dst.dim_at(degree), src.dim_at(degree));
    }

    void assert_chain_map(const CochainComplex& src, const CochainComplex& dst) const
    {
        int lo = std::min(src.lo, dst.lo) - 1;
        int hi = std::max(src.hi(), dst.hi()) + 1;
        for (int d = lo; d <= hi; ++d) {
            Mat lhs = dst.diff_at(d) * at(src, dst, d);
            Mat rhs = at(src, dst, d + 1) * src.diff_at(d);
            require(lhs == rhs, "chain map does not commute with the differential at degree "
                                    + std::to_string(d));
        }
    }

    /** Induced map on cohomology at one degree. */
    LinMap on_cohomology(const CochainComplex& src, const CochainComplex& dst, int degree) const
    {
        return induced_map(LinMap(at(src, dst, degree)), src.cohomology(degree),
                           dst.cohomology(degree));
    }

    /** True iff the induced map on cohomology is bijective in every degree. */
    bool cohomology_bijective(const CochainComplex& src, const CochainComplex& dst,
                              std::string* why = nullptr) const
    {
        int lo = std::min(src.lo, dst.lo);
        int hi = std::max(src.hi(), dst.hi());
        for (int d = lo; d <= hi; ++d) {
            Subquotient hs = src.cohomology(d);
            Subquotient hd = dst.cohomology(d);
            if (hs.dim() != hd.dim()) {
                if (why)
                    *why = "H^" + std::to_string(d) + " dims " + std::to_string(hs.dim())
                           + " vs " + std::to_string(hd.dim());
                return false;
            }
            if (hs.dim() == 0)
                continue;
            LinMap ind = induced_map(LinMap(at(src, dst, d)), hs, hd);
            if (image(ind).rank() != hs.dim()) {
                if (why)
                    *why = "H^" + std::to_string(d) + " induced map has rank "
                           + std::to_string(image(ind).rank()) + " < " + std::to_string(hs.dim());
                return false;
            }
        }
        return true;
    }
};

/**
 * Recipe for assembling a cell complex.  Cells are (J, chain, col) with J a
 * subset of the ground set; the degree of a cell is |J| plus the chain
 * codegree plus a fixed offset.  Differentials are the Koszul insertions of
 * per-index operator families (each may shift the column) plus the signed
 * simplicial deletions, twisted by (-1)^{|J|}.
 */
struct ComplexRecipe {
    Mask ground = 0;
    std::vector<Chain> chains;  // empty => single no-chain slot, no deletions
    std::function<bool(const Chain&, int position)> deletable;  // may be null
    std::function<std::vector<int>(Mask)> cols;                 // may be null => {0}
    struct Insertion {
        LinMap op;
        int col_shift = 0;
        Rational coeff = 1;
    };
    std::function<std::vector<Insertion>(int)> insertions;
    std::function<Subquotient(Mask, int, int)> term;  // (J, chain id, col)
    int degree_offset = 0;
    bool check_d_squared = true;
};

inline CochainComplex build_complex(const ComplexRecipe& r)
{
    const int n = popcount(r.ground);
    const bool with_chains = !r.chains.empty();
    std::vector<int> default_cols = {0};
    auto cols_of = [&](Mask j) { return r.cols ? r.cols(j) : default_cols; };

    // Collect cells by degree.
    std::map<int, CochainComplex::DegreeBlock> by_degree;
    std::map<std::vector<Mask>, int> chain_ids;
    for (int c = 0; c < static_cast<int>(r.chains.size()); ++c)
        chain_ids[r.chains[c].sets] = c;
    for (Mask j : enumerate_subsets(r.ground)) {
        for (int c = 0; c < std::max<int>(1, static_cast<int>(r.chains.size())); ++c) {
            int codeg = with_chains ? n - r.chains[c].length() : 0;
            int degree = popcount(j) + codeg + r.degree_offset;
            for (int col : cols_of(j)) {
                Cell cell{j, c, col};
                CochainComplex::DegreeBlock& blk = by_degree[degree];
                blk.cells.push_back(cell);
                blk.terms.push_back(r.term(j, c, col));
            }
        }
    }
    CochainComplex out;
    if (by_degree.empty())
        return out;
    out.lo = by_degree.begin()->first;
    int hi = by_degree.rbegin()->first;
    out.blocks.resize(hi - out.lo + 1);
    for (auto& [d, blk] : by_degree) {
        blk.offsets.resize(blk.terms.size());
        int acc = 0;
        for (std::size_t i = 0; i < blk.terms.size(); ++i) {
            blk.offsets[i] = acc;
            acc += blk.terms[i].dim();
        }
        blk.total = acc;
        out.blocks[d - out.lo] = std::move(blk);
    }

    // Assemble the block differentials.
    out.diffs.resize(out.blocks.size() > 0 ? out.blocks.size() - 1 : 0);
    for (std::size_t bi = 0; bi + 1 < out.blocks.size(); ++bi) {
        const auto& srcblk = out.blocks[bi];
        const auto& dstblk = out.blocks[bi + 1];
        Mat d = Mat::Zero(dstblk.total, srcblk.total);
        auto add_block = [&](int srci, int dsti, const Mat& m, const Rational& coeff) {
            if (m.rows() == 0 || m.cols() == 0)
                return;
            d.block(dstblk.offsets[dsti], srcblk.offsets[srci], m.rows(), m.cols())
                += coeff * m;
        };
        for (std::size_t ci = 0; ci < srcblk.cells.size(); ++ci) {
            const Cell& cell = srcblk.cells[ci];
            const Subquotient& src_term = srcblk.terms[ci];
            // Koszul insertions.
            for (int i : mask_elements(r.ground)) {
                if (cell.J & (Mask(1) << i))
                    continue;
                for (const auto& ins : r.insertions(i)) {
                    Cell tgt{cell.J | (Mask(1) << i), cell.chain, cell.col + ins.col_shift};
                    auto tcols = cols_of(tgt.J);
                    if (std::find(tcols.begin(), tcols.end(), tgt.col) == tcols.end())
                        continue;
                    int ti = dstblk.find_cell(tgt);
                    if (ti < 0)
                        continue;
                    LinMap blockmap = induced_map(ins.op, src_term, dstblk.terms[ti]);
                    add_block(static_cast<int>(ci), ti, blockmap.matrix(),
                              Rational(koszul_sign(cell.J, i)) * ins.coeff);
                }
            }
            // Simplicial deletions, twisted by (-1)^{|J|}.
            if (with_chains) {
                const Chain& ch = r.chains[cell.chain];
                for (int pos = 1; pos < ch.length(); ++pos) {
                    if (r.deletable && !r.deletable(ch, pos))
                        continue;
                    Chain del = ch;
                    del.sets.erase(del.sets.begin() + pos);
                    auto it = chain_ids.find(del.sets);
                    if (it == chain_ids.end())
                        continue;
                    Cell tgt{cell.J, it->second, cell.col};
                    int ti = dstblk.find_cell(tgt);
                    if (ti < 0)
                        continue;
                    int sign = ((pos + 1) % 2 == 0) ? 1 : -1;
                    if (popcount(cell.J) % 2 != 0)
                        sign = -sign;
                    LinMap blockmap =
                        induced_map(LinMap::identity(src_term.ambient_dim()), src_term,
                                    dstblk.terms[ti]);
                    add_block(static_cast<int>(ci), ti, blockmap.matrix(), Rational(sign));
                }
            }
        }
        out.diffs[bi] = std::move(d);
    }
    if (r.check_d_squared)
        out.assert_d_squared_zero();
    return out;
}

/** Shared cache of the weight-level intersections W_r(J, s.). */
class WeightLevelCache {
public:
    explicit WeightLevelCache(const NilpotentOrbit& orbit) : orbit_(&orbit) {}

    /** W_r(J, s.) = intersection over chain members of W^{s_l}_{a_{s_l}(J, r)}. */
    const Subspace& level(Mask j, const Chain& chain, int r)
    {
        Key key{j, chain.sets, r};
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        Subspace acc = Subspace::full(orbit_->dim());
        for (Mask s : chain.sets)
            acc = intersect(acc, orbit_->w_multi(s).at(a_index(s, j, r)));
        return memo_.emplace(std::move(key), std::move(acc)).first->second;
    }

    /** a_{s}(J, r) = |s| - 2|s n J| + r. */
    static int a_index(Mask s, Mask j, int r)
    {
        return popcount(s) - 2 * popcount(s & j) + r;
    }

private:
    struct Key {
        Mask j;
        std::vector<Mask> chain;
        int r;
        bool operator<(const Key& o) const
        {
            if (j != o.j)
                return j < o.j;
            if (r != o.r)
                return r < o.r;
            return chain < o.chain;
        }
    };
    const NilpotentOrbit* orbit_;
    std::map<Key, Subspace> memo_;
};

/** The Koszul complex of the orbit's commuting nilpotents. */
inline CochainComplex koszul(const NilpotentOrbit& orbit)
{
    ComplexRecipe r;
    r.ground = orbit.index_set();
    r.insertions = [&](int i) {
        return std::vector<ComplexRecipe::Insertion>{{orbit.nilpotent(i), 0, 1}};
    };
    Subspace full = Subspace::full(orbit.dim());
    Subspace zero = Subspace::zero(orbit.dim());
    r.term = [full, zero](Mask, int, int) { return Subquotient(full, zero); };
    return build_complex(r);
}

/** IC(L): the Koszul subcomplex with term N_J L at slot J. */
inline CochainComplex ic_complex(const NilpotentOrbit& orbit)
{
    ComplexRecipe r;
    r.ground = orbit.index_set();
    r.insertions = [&](int i) {
        return std::vector<ComplexRecipe::Insertion>{{orbit.nilpotent(i), 0, 1}};
    };
    Subspace zero = Subspace::zero(orbit.dim());
    r.term = [&orbit, zero](Mask j, int, int) {
        return Subquotient(image(orbit.product_over(j)), zero);
    };
    return build_complex(r);
}

/** The full combinatorial complex over the chain category S(M). */
inline CochainComplex omega_star(const NilpotentOrbit& orbit)
{
    ComplexRecipe r;
    r.ground = orbit.index_set();
    r.chains = enumerate_chains(r.ground);
    r.insertions = [&](int i) {
        return std::vector<ComplexRecipe::Insertion>{{orbit.nilpotent(i), 0, 1}};
    };
    Subspace full = Subspace::full(orbit.dim());
    Subspace zero = Subspace::zero(orbit.dim());
    r.term = [full, zero](Mask, int, int) { return Subquotient(full, zero); };
    return build_complex(r);
}

/** The weight-r subcomplex of the combinatorial complex. */
inline CochainComplex omega_weight(const NilpotentOrbit& orbit, int r_level,
                                   WeightLevelCache* cache = nullptr)
{
    WeightLevelCache local(orbit);
    WeightLevelCache& c = cache ? *cache : local;
    ComplexRecipe r;
    r.ground = orbit.index_set();
    r.chains = enumerate_chains(r.ground);
    r.insertions = [&](int i) {
        return std::vector<ComplexRecipe::Insertion>{{orbit.nilpotent(i), 0, 1}};
    };
    Subspace zero = Subspace::zero(orbit.dim());
    std::vector<Chain>& chains = r.chains;
    r.term = [&, zero](Mask j, int chain_id, int) {
        return Subquotient(c.level(j, chains[chain_id], r_level), zero);
    };
    return build_complex(r);
}

/** The Hodge-level subcomplex F^p, with term F^{p-|J|}L. */
inline CochainComplex omega_hodge(const NilpotentOrbit& orbit, int p)
{
    if (!orbit.hodge())
        throw input_error("omega_hodge: orbit has no Hodge filtration");
    ComplexRecipe r;
    r.ground = orbit.index_set();
    r.chains = enumerate_chains(r.ground);
    r.insertions = [&](int i) {
        return std::vector<ComplexRecipe::Insertion>{{orbit.nilpotent(i), 0, 1}};
    };
    Subspace zero = Subspace::zero(orbit.dim());
    const IncFiltration& f = *orbit.hodge();
    r.term = [&f, zero, p](Mask j, int, int) {
        return Subquotient(f.at(p - popcount(j)), zero);
    };
    return build_complex(r);
}

/** The graded quotient Gr^W_r of the combinatorial complex. */
inline CochainComplex graded_weight(const NilpotentOrbit& orbit, int r_level,
                                    WeightLevelCache* cache = nullptr)
{
    WeightLevelCache local(orbit);
    WeightLevelCache& c = cache ? *cache : local;
    ComplexRecipe r;
    r.ground = orbit.index_set();
    r.chains = enumerate_chains(r.ground);
    r.insertions = [&](int i) {
        return std::vector<ComplexRecipe::Insertion>{{orbit.nilpotent(i), 0, 1}};
    };
    std::vector<Chain>& chains = r.chains;
    r.term = [&, r_level](Mask j, int chain_id, int) {
        const Chain& ch = chains[chain_id];
        return Subquotient(c.level(j, ch, r_level), c.level(j, ch, r_level - 1));
    };
    return build_complex(r);
}

/**
 * Graded support radius i0: the largest |r| at which the weight-r terms of
 * the combinatorial complex still jump.
 */
inline int support_radius(const NilpotentOrbit& orbit)
{
    int top = 0;
    for (Mask s : enumerate_subsets(orbit.index_set()))
        if (s != 0)
            top = std::max({top, std::abs(orbit.w_multi(s).lowest_index()),
                            std::abs(orbit.w_multi(s).highest_index())});
    // a_s(J, r) shifts the probe by at most |s| + 2|J|.
    int slack = 3 * orbit.index_count();
    WeightLevelCache cache(orbit);
    std::vector<Chain> chains = enumerate_chains(orbit.index_set());
    int radius = 0;
    for (int r = -(top + slack); r <= top + slack; ++r) {
        bool jumped = false;
        for (Mask j : enumerate_subsets(orbit.index_set())) {
            for (const Chain& ch : chains)
                if (!(cache.level(j, ch, r) == cache.level(j, ch, r - 1))) {
                    jumped = true;
                    break;
                }
            if (jumped)
                break;
        }
        if (jumped)
            radius = std::max(radius, std::abs(r));
    }
    return radius;
}

/**
 * Hodge numbers of the graded weight pieces: for each weight k, degree d
 * and exponent p, the dimension of Gr_F^p H^d(Gr^W_k), where F acts on the
 * combinatorial complex through F^{p - |J|} per term.  Keys are (k, d, p).
 */
inline std::map<std::tuple<int, int, int>, int> hodge_bigraded_profile(
    const NilpotentOrbit& orbit, WeightLevelCache* cache = nullptr)
{
    if (!orbit.hodge())
        throw input_error("hodge_bigraded_profile: orbit has no Hodge filtration");
    const IncFiltration& f = *orbit.hodge();
    WeightLevelCache local(orbit);
    WeightLevelCache& c = cache ? *cache : local;
    std::map<std::tuple<int, int, int>, int> out;
    const int i0 = support_radius(orbit);
    const int plo = f.lowest_index() - 1;
    const int phi = f.highest_index() + 1;
    for (int k = -i0; k <= i0; ++k) {
        CochainComplex gr = graded_weight(orbit, k, &c);
        for (int d = gr.lo; d <= gr.hi(); ++d) {
            if (gr.dim_at(d) == 0)
                continue;
            Subspace ker = kernel(LinMap(gr.diff_at(d)));
            Subspace im = image(LinMap(gr.diff_at(d - 1)));
            int h_dim = ker.rank() - im.rank();
            if (h_dim == 0)
                continue;
            const auto* blk = gr.block_at(d);
            std::map<int, int> fdims;  // p -> dim F^p H^d
            for (int p = plo; p <= phi; ++p) {
                // Assemble the degree-level F^p subspace cell by cell.
                Mat gens = Mat::Zero(blk->total, blk->total);
                int count = 0;
                for (std::size_t i = 0; i < blk->cells.size(); ++i) {
                    const Subquotient& term = blk->terms[i];
                    if (term.dim() == 0)
                        continue;
                    Subspace lev = f.at(p - popcount(blk->cells[i].J));
                    Subspace inside =
                        sum(intersect(lev, term.numerator()), term.denominator());
                    Mat coords = term.coords(intersect(inside, term.numerator()).basis());
                    Subspace cell_sub(term.dim(), coords);
                    gens.block(blk->offsets[i], count, term.dim(), cell_sub.rank()) =
                        cell_sub.basis();
                    count += cell_sub.rank();
                }
                Subspace fp(blk->total, Mat(gens.leftCols(count)));
                fdims[p] = sum(im, intersect(ker, fp)).rank() - im.rank();
            }
            for (int p = plo; p < phi; ++p) {
                int grf = fdims[p] - fdims[p + 1];
                if (grf != 0)
                    out[{k, d, p}] = grf;
            }
        }
    }
    return out;
}

/**
 * The purity complex attached to K with indices (J, s.) in M+. x S_K(M):
 * terms are the W^K-graded pieces at level a_K(J, r) cut by the other chain
 * filtrations at level a_{s_l}(J, r-1).  With K = M this is C^K_r over
 * K+. x S(K).  Deleting K from a chain is not a morphism of S_K(M) and is
 * excluded from the differential.
 */
inline CochainComplex c_complex(const NilpotentOrbit& orbit, Mask k, Mask ground, int r_level)
{
    if (k == 0 || !subset_of(k, ground) || !subset_of(ground, orbit.index_set()))
        throw input_error("c_complex: need nonempty K inside the ground set");
    ComplexRecipe r;
    r.ground = ground;
    r.chains = chains_through(ground, k);
    r.deletable = [k](const Chain& ch, int pos) { return ch.sets[pos] != k; };
    r.insertions = [&](int i) {
        return std::vector<ComplexRecipe::Insertion>{{orbit.nilpotent(i), 0, 1}};
    };
    const IncFiltration& wk = orbit.w_multi(k);
    std::vector<Chain>& chains = r.chains;
    r.term = [&, k, r_level](Mask j, int chain_id, int) {
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
    return build_complex(r);
}

/** C^K_r over K+. x S(K) for the sub-orbit on K (the pure case). */
inline CochainComplex c_complex_pure(const NilpotentOrbit& orbit, Mask k, int r_level)
{
    return c_complex(orbit, k, k, r_level);
}

/** One-variable weight filtrations along the sorted elements of K. */
inline std::vector<IncFiltration> single_filtrations(const NilpotentOrbit& orbit, Mask k)
{
    std::vector<IncFiltration> out;
    for (int i : mask_elements(k))
        out.push_back(orbit.w_multi(Mask(1) << i));
    return out;
}

/**
 * The elementary complex K(m_1..m_n)L over subsets J of K, with terms the
 * iterated graded pieces at indices m_i - 2[i in J].
 */
inline CochainComplex elementary(const NilpotentOrbit& orbit, Mask k,
                                 const std::vector<int>& m)
{
    std::vector<int> elems = mask_elements(k);
    if (m.size() != elems.size())
        throw input_error("elementary: index vector length mismatch");
    std::vector<IncFiltration> filts = single_filtrations(orbit, k);
    ComplexRecipe r;
    r.ground = k;
    r.insertions = [&](int i) {
        return std::vector<ComplexRecipe::Insertion>{{orbit.nilpotent(i), 0, 1}};
    };
    r.term = [&, m](Mask j, int, int) {
        std::vector<int> idx(m.size());
        for (std::size_t s = 0; s < m.size(); ++s)
            idx[s] = m[s] - 2 * ((j >> elems[s]) & 1);
        return iterated_graded(filts, idx, false);
    };
    return build_complex(r);
}

/**
 * Predicted cohomology of an elementary complex: degree |J(m.)| with
 * J(m.) = { i : m_i > 1 }, carried by the iterated graded piece of the
 * space (ker of the N_i, i outside J(m.)) inside (L / sum_{j in J(m.)} N_j L);
 * zero when some m_i = 1.
 */
inline std::pair<int, int> elementary_cohomology_expected(const NilpotentOrbit& orbit, Mask k,
                                                          const std::vector<int>& m)
{
    std::vector<int> elems = mask_elements(k);
    if (m.size() != elems.size())
        throw input_error("elementary_cohomology_expected: index vector length mismatch");
    for (int mi : m)
        if (mi == 1)
            return {0, 0};
    Mask jm = 0;
    for (std::size_t s = 0; s < m.size(); ++s)
        if (m[s] > 1)
            jm |= Mask(1) << elems[s];
    Subspace den = Subspace::zero(orbit.dim());
    for (int i : mask_elements(jm))
        den = sum(den, image(orbit.nilpotent(i)));
    Subspace num = Subspace::full(orbit.dim());
    for (int i : elems)
        if (!(jm & (Mask(1) << i)))
            num = intersect(num, preimage(orbit.nilpotent(i), den));
    Subquotient seed(num, den);
    std::vector<IncFiltration> filts = single_filtrations(orbit, k);
    std::vector<int> idx(m.size());
    for (std::size_t s = 0; s < m.size(); ++s)
        idx[s] = m[s] - 2 * ((jm >> elems[s]) & 1);
    int dim = iterated_graded_in(seed, filts, idx).dim();
    return {popcount(jm), dim};
}

/**
 * T(r) (r > 0): multi-indices with all m_i >= 2 summing to |K| + r.
 * T'(r) (r < 0): all m_i <= 0 with the same sum.  T(0) is empty by
 * definition and rejected.
 */
inline std::vector<std::vector<int>> t_sets(Mask k, int r)
{
    if (r == 0)
        throw input_error("t_sets: r = 0 has an empty index set by definition");
    const int n = popcount(k);
    const int total = n + r;
    std::vector<std::vector<int>> out;
    if (n == 0)
        return out;
    std::vector<int> cur(n);
    std::function<void(int, int)> rec = [&](int pos, int rest) {
        if (pos == n - 1) {
            if ((r > 0 && rest >= 2) || (r < 0 && rest <= 0)) {
                cur[pos] = rest;
                out.push_back(cur);
            }
            return;
        }
        if (r > 0) {
            for (int v = 2; rest - v >= 2 * (n - 1 - pos); ++v) {
                cur[pos] = v;
                rec(pos + 1, rest - v);
            }
        } else {
            // nonpositive entries only: v <= 0 and the leftover rest - v
            // must stay achievable, i.e. v >= rest
            for (int v = 0; v >= rest; --v) {
                cur[pos] = v;
                rec(pos + 1, rest - v);
            }
        }
    };
    rec(0, total);
    return out;
}

namespace detail {

/** Fully intersected form of an iterated graded piece at multi-index c. */
inline Subquotient box_subquotient(const NilpotentOrbit& orbit, const std::vector<int>& elems,
                                   const std::vector<int>& c)
{
    Subspace num = Subspace::full(orbit.dim());
    for (std::size_t s = 0; s < elems.size(); ++s)
        num = intersect(num, orbit.w_multi(Mask(1) << elems[s]).at(c[s]));
    Subspace den = Subspace::zero(orbit.dim());
    for (std::size_t s = 0; s < elems.size(); ++s) {
        Subspace piece = orbit.w_multi(Mask(1) << elems[s]).at(c[s] - 1);
        for (std::size_t t = 0; t < elems.size(); ++t)
            if (t != s)
                piece = intersect(piece, orbit.w_multi(Mask(1) << elems[t]).at(c[t]));
        den = sum(den, piece);
    }
    return Subquotient(num, den);
}

/** Sign of the permutation listing which element each chain step drops. */
inline int maximal_chain_sign(const Chain& ch)
{
    std::vector<int> dropped;
    for (int i = 0; i + 1 < ch.length(); ++i) {
        Mask diff = ch.sets[i] & ~ch.sets[i + 1];
        dropped.push_back(mask_elements(diff)[0]);
    }
    dropped.push_back(mask_elements(ch.sets.back())[0]);
    int inversions = 0;
    for (std::size_t a = 0; a < dropped.size(); ++a)
        for (std::size_t b = a + 1; b < dropped.size(); ++b)
            if (dropped[a] > dropped[b])
                ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace detail

/**
 * The direct sum of box-form elementary complexes over T(r) (or T'(r) for
 * r < 0, shifted to degree |K| - 1), together with the diagonal chain map
 * into C^K_r.  For r > 0 the diagonal runs over the maximal chains with
 * orientation signs; for r < 0 only the one-element chain (K) receives a
 * component.
 */
struct TEmbedding {
    CochainComplex source;
    CochainComplex target;
    ChainMap map;
    std::vector<std::vector<int>> t_indices;
};

inline TEmbedding embed_t_complex(const NilpotentOrbit& orbit, Mask k, int r_level)
{
    if (r_level == 0)
        throw input_error("embed_t_complex: r = 0 is excluded");
    TEmbedding out;
    out.t_indices = t_sets(k, r_level);
    std::vector<int> elems = mask_elements(k);

    ComplexRecipe src;
    src.ground = k;
    src.degree_offset = (r_level < 0) ? popcount(k) - 1 : 0;
    src.insertions = [&](int i) {
        return std::vector<ComplexRecipe::Insertion>{{orbit.nilpotent(i), 0, 1}};
    };
    std::vector<int> summands(out.t_indices.size());
    for (std::size_t i = 0; i < summands.size(); ++i)
        summands[i] = static_cast<int>(i);
    src.cols = [summands](Mask) { return summands; };
    const auto& tlist = out.t_indices;
    src.term = [&orbit, elems, &tlist](Mask j, int, int col) {
        std::vector<int> c(tlist[col].size());
        for (std::size_t s = 0; s < c.size(); ++s)
            c[s] = tlist[col][s] - 2 * ((j >> elems[s]) & 1);
        return detail::box_subquotient(orbit, elems, c);
    };
    if (tlist.empty()) {
        src.cols = nullptr;
        Subspace z = Subspace::zero(orbit.dim());
        src.term = [z](Mask, int, int) { return Subquotient(z, z); };
    }
    out.source = build_complex(src);
    out.target = c_complex_pure(orbit, k, r_level);
    const std::vector<Chain> tchains = chains_through(k, k);

    // Assemble the diagonal map degree by degree: for r > 0 every maximal
    // chain receives the component with its orientation sign, for r < 0
    // only the one-element chain (K).
    for (int d = out.source.lo; d <= out.source.hi(); ++d) {
        const auto* sb = out.source.block_at(d);
        const auto* tb = out.target.block_at(d);
        if (!sb || !tb || sb->total == 0 || tb->total == 0)
            continue;
        Mat block = Mat::Zero(tb->total, sb->total);
        for (std::size_t si = 0; si < sb->cells.size(); ++si) {
            const Cell& scell = sb->cells[si];
            if (sb->terms[si].dim() == 0)
                continue;
            for (std::size_t ti = 0; ti < tb->cells.size(); ++ti) {
                const Cell& tcell = tb->cells[ti];
                if (tcell.J != scell.J || tb->terms[ti].dim() == 0)
                    continue;
                const Chain& chain = tchains[tcell.chain];
                bool wanted = (r_level > 0) ? (chain.length() == popcount(k))
                                            : (chain.length() == 1);
                if (!wanted)
                    continue;
                int sign = (r_level > 0) ? detail::maximal_chain_sign(chain) : 1;
                LinMap ident = LinMap::identity(orbit.dim());
                LinMap comp = induced_map(ident, sb->terms[si], tb->terms[ti]);
                block.block(tb->offsets[ti], sb->offsets[si], comp.codomain_dim(),
                            comp.domain_dim()) += Rational(sign) * comp.matrix();
            }
        }
        out.map.blocks[d] = std::move(block);
    }
    out.map.assert_chain_map(out.source, out.target);
    return out;
}

/**
 * Purity of C^K_r: cohomology concentrated in degree |K| for r > 0 (in
 * |K| - 1 for r < 0) with dimension given by the graded formula, acyclic
 * at r = 0 and on the ranges where T(r) or T'(r) is empty.
 */
inline CheckReport purity_check(const NilpotentOrbit& orbit, Mask k, int r_level)
{
    CheckReport rep;
    CochainComplex c = c_complex_pure(orbit, k, r_level);
    std::map<int, int> prof = c.profile();
    const int nk = popcount(k);
    if (r_level == 0) {
        rep.add("purity.acyclic_r0", prof.empty(), profile_str(prof));
        return rep;
    }
    int expect_deg = (r_level > 0) ? nk : nk - 1;
    int expect_dim = 0;
    if (r_level > 0) {
        Subspace den = Subspace::zero(orbit.dim());
        for (int i : mask_elements(k))
            den = sum(den, image(orbit.nilpotent(i)));
        Subquotient quot(Subspace::full(orbit.dim()), den);
        expect_dim = iterated_graded_in(quot, {orbit.w_multi(k)}, {r_level - nk}).dim();
    } else {
        Subspace ker_all = Subspace::full(orbit.dim());
        for (int i : mask_elements(k))
            ker_all = intersect(ker_all, kernel(orbit.nilpotent(i)));
        Subquotient sub(ker_all, Subspace::zero(orbit.dim()));
        expect_dim = iterated_graded_in(sub, {orbit.w_multi(k)}, {r_level + nk}).dim();
    }
    bool concentrated = true;
    for (const auto& [d, h] : prof)
        if (d != expect_deg && h != 0)
            concentrated = false;
    int got = prof.count(expect_deg) ? prof.at(expect_deg) : 0;
    std::ostringstream os;
    os << "profile " << profile_str(prof) << ", formula dim " << expect_dim << " at degree "
       << expect_deg;
    rep.add("purity.concentrated", concentrated, os.str());
    rep.add("purity.dimension", got == expect_dim, os.str());
    bool t_empty = (r_level > 0) ? (r_level <= nk - 1) : (r_level >= -nk + 1);
    if (t_empty)
        rep.add("purity.empty_t_acyclic", prof.empty(), profile_str(prof));
    return rep;
}

/**
 * The decomposition of the graded weight: per-degree cohomology of
 * Gr^W_r equals the sum over nonempty K of the C^{KM}_r contributions,
 * and Gr^W_0 is acyclic.
 */
inline CheckReport decomposition_check(const NilpotentOrbit& orbit, int r_level,
                                       WeightLevelCache* cache = nullptr)
{
    CheckReport rep;
    CochainComplex gr = graded_weight(orbit, r_level, cache);
    std::map<int, int> lhs = gr.profile();
    std::map<int, int> rhs;
    std::ostringstream contrib;
    for (Mask k : enumerate_subsets(orbit.index_set())) {
        if (k == 0)
            continue;
        CochainComplex ckm = c_complex(orbit, k, orbit.index_set(), r_level);
        std::map<int, int> p = ckm.profile();
        if (!p.empty())
            contrib << " K={" << mask_label(k) << "}:" << profile_str(p);
        for (const auto& [d, h] : p)
            rhs[d] += h;
    }
    bool equal = lhs == rhs;
    std::ostringstream os;
    os << "lhs " << profile_str(lhs) << " rhs " << profile_str(rhs) << contrib.str();
    rep.add("decomposition.graded_vs_sum", equal, os.str());
    if (r_level == 0)
        rep.add("decomposition.gr0_acyclic", lhs.empty(), profile_str(lhs));
    return rep;
}

/**
 * Kashiwara-Kawai fiber formula: W_{-1} of the combinatorial complex has
 * the cohomology of IC(L) degree by degree, and W_{-1} agrees with W_0.
 */
inline CheckReport kk_check(const NilpotentOrbit& orbit, WeightLevelCache* cache = nullptr)
{
    CheckReport rep;
    WeightLevelCache local(orbit);
    WeightLevelCache& c = cache ? *cache : local;
    std::map<int, int> wm1 = omega_weight(orbit, -1, &c).profile();
    std::map<int, int> w0 = omega_weight(orbit, 0, &c).profile();
    std::map<int, int> ic = ic_complex(orbit).profile();
    rep.add("kk.w_minus1_equals_ic", wm1 == ic,
            "W_{-1} " + profile_str(wm1) + " vs IC " + profile_str(ic));
    rep.add("kk.w_minus1_equals_w0", wm1 == w0,
            "W_{-1} " + profile_str(wm1) + " vs W_0 " + profile_str(w0));
    return rep;
}

/** Cell-diagonal chain self-map of a complex induced by an endomorphism. */
inline ChainMap cellwise_endomorphism(const CochainComplex& c, const LinMap& op)
{
    ChainMap cm;
    for (int d = c.lo; d <= c.hi(); ++d) {
        const auto* blk = c.block_at(d);
        if (!blk || blk->total == 0)
            continue;
        Mat m = Mat::Zero(blk->total, blk->total);
        for (std::size_t i = 0; i < blk->cells.size(); ++i) {
            LinMap b = induced_map(op, blk->terms[i], blk->terms[i]);
            if (b.domain_dim() > 0)
                m.block(blk->offsets[i], blk->offsets[i], b.codomain_dim(), b.domain_dim()) =
                    b.matrix();
        }
        cm.blocks[d] = std::move(m);
    }
    cm.assert_chain_map(c, c);
    return cm;
}

/**
 * The residual-orbit formula: C^{KM}_r is, up to the degree shift of the
 * concentrated C^K_r cohomology, the W_{-1} complex of the orbit induced
 * on H^*(C^K_r) by the leftover nilpotents.
 */
inline CheckReport w_minus1_fiber_check(const NilpotentOrbit& orbit, Mask k, int r_level)
{
    if (r_level == 0)
        throw input_error("w_minus1_fiber_check: r must be nonzero");
    if (k == 0 || k == orbit.index_set())
        throw input_error("w_minus1_fiber_check: K must be a proper nonempty subset");
    CheckReport rep;
    CochainComplex ck = c_complex_pure(orbit, k, r_level);
    const int nk = popcount(k);
    const int deg0 = (r_level > 0) ? nk : nk - 1;
    {
        std::map<int, int> prof = ck.profile();
        bool conc = true;
        for (const auto& [d, h] : prof)
            if (d != deg0 && h != 0)
                conc = false;
        rep.add("w_minus1_fiber.concentrated", conc, profile_str(prof));
        if (!conc)
            return rep;
    }
    Subquotient h = ck.cohomology(deg0);

    // Each leftover N_i is a cell-diagonal chain self-map of C^K_r; its
    // action on the concentrated cohomology defines the residual orbit.
    std::vector<int> rest = mask_elements(orbit.index_set() & ~k);
    std::vector<LinMap> residual;
    for (int i : rest) {
        ChainMap cm = cellwise_endomorphism(ck, orbit.nilpotent(i));
        residual.push_back(cm.on_cohomology(ck, ck, deg0));
    }
    NilpotentOrbit horbit(h.dim(), residual, orbit.weight());

    std::map<int, int> lhs = c_complex(orbit, k, orbit.index_set(), r_level).profile();
    std::map<int, int> rhs_raw = omega_weight(horbit, -1).profile();
    std::map<int, int> rhs;
    for (const auto& [d, v] : rhs_raw)
        rhs[d + deg0] = v;
    rep.add("w_minus1_fiber.profiles", lhs == rhs,
            "C^{KM} " + profile_str(lhs) + " vs shifted W_{-1}(H) " + profile_str(rhs));
    return rep;
}

}  // namespace weightlab

#endif  // WEIGHTLAB_COMPLEXES_HPP
