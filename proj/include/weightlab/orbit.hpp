/**
 * The nilpotent-orbit data model (L, N_i, F, P, m): validation, the
 * logarithm of unipotent monodromy, cached multi-index weight filtrations
 * W^J = W(sum_{j in J} N_j), and the generators used to build test corpora.
 */

#ifndef WEIGHTLAB_ORBIT_HPP
#define WEIGHTLAB_ORBIT_HPP

#include <weightlab/qlinalg.hpp>
#include <weightlab/scat.hpp>
#include <weightlab/weightcore.hpp>

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace weightlab {

struct ValidationItem {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool ok() const
    {
        for (const auto& i : items)
            if (!i.pass)
                return false;
        return true;
    }
};

/**
 * A nilpotent orbit: a rational vector space with pairwise commuting
 * nilpotent endomorphisms indexed by M = {1..n}, a weight, and optionally a
 * decreasing Hodge filtration and a bilinear pairing.  The W^J cache is
 * filled lazily and shared by every complex builder.
 */
class NilpotentOrbit {
public:
    NilpotentOrbit(int dim, std::vector<LinMap> nilpotents, int weight)
        : dim_(dim), nilpotents_(std::move(nilpotents)), weight_(weight),
          cache_(std::make_shared<std::map<Mask, IncFiltration>>())
    {
        for (const auto& n : nilpotents_)
            if (n.domain_dim() != dim || n.codomain_dim() != dim)
                throw input_error("orbit: nilpotent shape mismatch");
        labels_.resize(nilpotents_.size());
        for (std::size_t i = 0; i < labels_.size(); ++i)
            labels_[i] = std::to_string(i + 1);
    }

    int dim() const { return dim_; }
    int weight() const { return weight_; }
    int index_count() const { return static_cast<int>(nilpotents_.size()); }
    Mask index_set() const { return full_mask(index_count()); }
    const LinMap& nilpotent(int i) const { return nilpotents_.at(i); }
    const std::vector<LinMap>& nilpotents() const { return nilpotents_; }
    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }

    const std::optional<IncFiltration>& hodge() const { return hodge_; }
    void set_hodge(IncFiltration f)
    {
        if (f.direction() != Direction::decreasing)
            throw input_error("orbit: hodge filtration must be decreasing");
        hodge_ = std::move(f);
    }

    const std::optional<Mat>& pairing() const { return pairing_; }
    void set_pairing(Mat p)
    {
        if (p.rows() != dim_ || p.cols() != dim_)
            throw input_error("orbit: pairing shape mismatch");
        pairing_ = std::move(p);
    }

    /** N_J = sum of the nilpotents over a nonempty subset. */
    LinMap sum_over(Mask j) const
    {
        if (j == 0 || !subset_of(j, index_set()))
            throw input_error("sum_over: subset out of range");
        Mat acc = Mat::Zero(dim_, dim_);
        for (int i : mask_elements(j))
            acc += nilpotents_[i].matrix();
        return LinMap(acc);
    }

    /** Composition product N_J = prod_{j in J} N_j (context of IC(L)). */
    LinMap product_over(Mask j) const
    {
        Mat acc = Mat::Identity(dim_, dim_);
        for (int i : mask_elements(j))
            acc = nilpotents_[i].matrix() * acc;
        return LinMap(acc);
    }

    /** W^J = W(sum_{j in J} N_j), cached per subset. */
    const IncFiltration& w_multi(Mask j) const
    {
        if (j == 0)
            throw input_error("w_multi: empty subset");
        auto it = cache_->find(j);
        if (it != cache_->end())
            return it->second;
        IncFiltration w = weight_filtration(sum_over(j));
        return cache_->emplace(j, std::move(w)).first->second;
    }

private:
    int dim_;
    std::vector<LinMap> nilpotents_;
    int weight_;
    std::vector<std::string> labels_;
    std::optional<IncFiltration> hodge_;
    std::optional<Mat> pairing_;
    std::shared_ptr<std::map<Mask, IncFiltration>> cache_;
};

/**
 * Orbit validation: pairwise commutativity, nilpotency of each N_i,
 * Griffiths transversality N_i F^p inside F^{p-1} when F is present, and
 * the infinitesimal-isometry identity P(N_i x, y) + P(x, N_i y) = 0 when P
 * is present.  Failures are reported, not thrown.
 */
inline ValidationReport validate(const NilpotentOrbit& orbit)
{
    ValidationReport rep;
    const int n = orbit.index_count();
    {
        ValidationItem item{"commutativity", true, ""};
        for (int i = 0; i < n && item.pass; ++i)
            for (int j = i + 1; j < n; ++j) {
                Mat lhs = orbit.nilpotent(i).matrix() * orbit.nilpotent(j).matrix();
                Mat rhs = orbit.nilpotent(j).matrix() * orbit.nilpotent(i).matrix();
                if (lhs != rhs) {
                    item.pass = false;
                    item.detail = "N" + std::to_string(i + 1) + " and N" + std::to_string(j + 1)
                                  + " do not commute";
                    break;
                }
            }
        rep.items.push_back(item);
    }
    {
        ValidationItem item{"nilpotency", true, ""};
        for (int i = 0; i < n; ++i) {
            try {
                nilpotency_index(orbit.nilpotent(i));
            } catch (const contract_error&) {
                item.pass = false;
                item.detail = "N" + std::to_string(i + 1) + " is not nilpotent";
                break;
            }
        }
        rep.items.push_back(item);
    }
    if (orbit.hodge()) {
        ValidationItem item{"transversality", true, ""};
        const IncFiltration& f = *orbit.hodge();
        for (int i = 0; i < n && item.pass; ++i)
            for (int p = f.lowest_index(); p <= f.highest_index() + 1; ++p) {
                if (!f.at(p - 1).contains(image_of(orbit.nilpotent(i), f.at(p)))) {
                    item.pass = false;
                    item.detail = "N" + std::to_string(i + 1) + " F^" + std::to_string(p)
                                  + " escapes F^" + std::to_string(p - 1);
                    break;
                }
            }
        rep.items.push_back(item);
    }
    if (orbit.pairing()) {
        ValidationItem item{"pairing", true, ""};
        const Mat& p = *orbit.pairing();
        for (int i = 0; i < n; ++i) {
            Mat lhs = orbit.nilpotent(i).matrix().transpose() * p + p * orbit.nilpotent(i).matrix();
            if (lhs != Mat::Zero(orbit.dim(), orbit.dim())) {
                item.pass = false;
                item.detail = "P(N_i x, y) + P(x, N_i y) != 0 for i = " + std::to_string(i + 1);
                break;
            }
        }
        rep.items.push_back(item);
    }
    return rep;
}

/** exp of a nilpotent map; the series terminates. */
inline LinMap nilpotent_exp(const LinMap& n)
{
    const int d = n.domain_dim();
    Mat acc = Mat::Identity(d, d);
    Mat term = Mat::Identity(d, d);
    for (int k = 1; k <= d; ++k) {
        term = (n.matrix() * term) / Rational(k);
        acc += term;
    }
    return LinMap(acc);
}

/**
 * Logarithm of a unipotent map: N = -sum_{k>=1} (1/k) (I - T)^k.  The input
 * must be unipotent, i.e. I - T nilpotent; exp(log T) = T is re-asserted.
 */
inline LinMap monodromy_log(const LinMap& t)
{
    const int d = t.domain_dim();
    require(d == t.codomain_dim(), "monodromy_log: not an endomorphism");
    Mat u = Mat::Identity(d, d) - t.matrix();
    nilpotency_index(LinMap(u));  // throws if not unipotent
    Mat acc = Mat::Zero(d, d);
    Mat pw = Mat::Identity(d, d);
    for (int k = 1; k <= d; ++k) {
        pw = u * pw;
        acc -= pw / Rational(k);
    }
    LinMap n(acc);
    require(nilpotent_exp(n).matrix() == t.matrix(), "monodromy_log: exp(log T) != T");
    return n;
}

/** One nilpotent in Jordan form with the given block sizes. */
inline NilpotentOrbit gen_jordan(const std::vector<int>& sizes)
{
    int dim = 0;
    for (int s : sizes) {
        if (s < 1)
            throw input_error("gen_jordan: block size must be >= 1");
        dim += s;
    }
    Mat m = Mat::Zero(dim, dim);
    int off = 0;
    for (int s : sizes) {
        for (int k = 1; k < s; ++k)
            m(off + k - 1, off + k) = 1;
        off += s;
    }
    int top = 0;
    for (int s : sizes)
        top = std::max(top, s - 1);
    return NilpotentOrbit(dim, {LinMap(m)}, top);
}

namespace detail {

inline Mat kron(const Mat& a, const Mat& b)
{
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace detail

/**
 * Tensor product of single Jordan blocks, one commuting nilpotent per
 * factor.  The Hodge filtration is of Hodge-Tate type: the tensor basis
 * vector e_{k_1} (x) ... (x) e_{k_n} has type (sum k_i, sum k_i) and weight
 * m = sum (s_i - 1), so F^p is spanned by the vectors with sum k_i >= p.
 * The pairing is the product of the standard sl2-invariant forms
 * P(e_a, e_b) = (-1)^a [a + b = s - 1].
 */
inline NilpotentOrbit gen_sl2_tensor(const std::vector<int>& sizes)
{
    const int n = static_cast<int>(sizes.size());
    if (n == 0)
        throw input_error("gen_sl2_tensor: need at least one factor");
    int dim = 1;
    for (int s : sizes) {
        if (s < 1)
            throw input_error("gen_sl2_tensor: factor size must be >= 1");
        dim *= s;
    }
    std::vector<LinMap> nils;
    for (int i = 0; i < n; ++i) {
        Mat acc = Mat::Identity(1, 1);
        for (int j = 0; j < n; ++j) {
            Mat f = (j == i) ? [&] {
                Mat b = Mat::Zero(sizes[j], sizes[j]);
                for (int k = 1; k < sizes[j]; ++k)
                    b(k - 1, k) = 1;
                return b;
            }()
                             : Mat(Mat::Identity(sizes[j], sizes[j]));
            acc = detail::kron(acc, f);
        }
        nils.emplace_back(acc);
    }
    int weight = 0;
    for (int s : sizes)
        weight += s - 1;
    NilpotentOrbit orbit(dim, nils, weight);

    // Hodge level of a tensor basis vector = sum of factor indices.
    std::vector<int> level(dim, 0);
    for (int idx = 0; idx < dim; ++idx) {
        int rest = idx, lv = 0;
        for (int j = n - 1; j >= 0; --j) {
            lv += rest % sizes[j];
            rest /= sizes[j];
        }
        level[idx] = lv;
    }
    IncFiltration f(dim, Direction::decreasing);
    for (int p = 0; p <= weight; ++p) {
        std::vector<Vec> gens;
        for (int idx = 0; idx < dim; ++idx)
            if (level[idx] >= p) {
                Vec v = Vec::Zero(dim);
                v(idx) = 1;
                gens.push_back(v);
            }
        f.set_step(p, Subspace::span(dim, gens));
    }
    orbit.set_hodge(f);

    Mat pairing = Mat::Identity(1, 1);
    for (int j = 0; j < n; ++j) {
        Mat pj = Mat::Zero(sizes[j], sizes[j]);
        for (int a = 0; a < sizes[j]; ++a)
            pj(a, sizes[j] - 1 - a) = (a % 2 == 0) ? 1 : -1;
        pairing = detail::kron(pairing, pj);
    }
    orbit.set_pairing(pairing);
    return orbit;
}

/**
 * Basis-changed copy g N g^{-1} of an orbit (same invariants, non-obvious
 * coordinates).  The Hodge filtration and pairing transform along.
 */
inline NilpotentOrbit gen_conjugated(const NilpotentOrbit& orbit, const Mat& g)
{
    const int d = orbit.dim();
    if (g.rows() != d || g.cols() != d)
        throw input_error("gen_conjugated: shape mismatch");
    if (rank_of(g) != d)
        throw input_error("gen_conjugated: matrix is singular");
    Mat sys(d, 2 * d);
    sys << g, Mat::Identity(d, d);
    rref_in_place(sys);
    Mat ginv = sys.rightCols(d);
    std::vector<LinMap> nils;
    for (const auto& nmap : orbit.nilpotents())
        nils.emplace_back(Mat(g * nmap.matrix() * ginv));
    NilpotentOrbit out(d, nils, orbit.weight());
    out.set_labels(orbit.labels());
    if (orbit.hodge()) {
        IncFiltration f(d, Direction::decreasing);
        for (const auto& [p, s] : orbit.hodge()->steps())
            f.set_step(p, Subspace(d, g * s.basis()));
        out.set_hodge(f);
    }
    if (orbit.pairing())
        out.set_pairing(ginv.transpose() * (*orbit.pairing()) * ginv);
    return out;
}

}  // namespace weightlab

#endif  // WEIGHTLAB_ORBIT_HPP
