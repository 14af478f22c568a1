/**
 * Exact linear algebra over the rationals: canonical subspaces, linear maps,
 * filtrations, subquotients and induced maps.
 *
 * Every object in this library lives in some fixed ambient space Q^n.  A
 * subspace is always stored in reduced column echelon form, which makes
 * equality of subspaces a structural comparison of matrices.  All scalars
 * are arbitrary-precision rationals; there is no floating point anywhere.
 */

#ifndef WEIGHTLAB_QLINALG_HPP
#define WEIGHTLAB_QLINALG_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace weightlab {

typedef boost::multiprecision::mpq_rational Rational;
using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/** Raised when a caller passes structurally invalid input. */
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Raised when an internal contract (precondition or invariant) fails. */
struct contract_error : std::runtime_error {
    explicit contract_error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Raised when a computation exceeds the configured combinatorial bounds. */
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg)
{
    if (!cond)
        throw contract_error(msg);
}

/**
 * Parse a rational from a decimal-integer-or-fraction string such as "-2" or
 * "3/4".  The result is always in canonical (reduced) form; anything else,
 * including decimal points and whitespace, is rejected.
 */
inline Rational parse_rational(const std::string& s)
{
    auto is_digits = [](const std::string& t) {
        if (t.empty())
            return false;
        for (char c : t)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    std::string body = s;
    bool neg = false;
    if (!body.empty() && body[0] == '-') {
        neg = true;
        body = body.substr(1);
    }
    std::string num = body, den = "1";
    auto slash = body.find('/');
    if (slash != std::string::npos) {
        num = body.substr(0, slash);
        den = body.substr(slash + 1);
    }
    if (!is_digits(num) || !is_digits(den))
        throw input_error("malformed rational string: '" + s + "'");
    boost::multiprecision::mpz_int n(num), d(den);
    if (d == 0)
        throw input_error("zero denominator in rational string: '" + s + "'");
    Rational r = Rational(n) / Rational(d);  // division canonicalizes
    return neg ? -r : r;
}

/** Serialize a rational as "p" or "p/q" with q > 0 and gcd(p, q) = 1. */
inline std::string rational_str(const Rational& r)
{
    boost::multiprecision::mpz_int n = numerator(r), d = denominator(r);
    boost::multiprecision::mpz_int g = gcd(n, d);
    if (g != 0) {
        n /= g;
        d /= g;
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (d == 1)
        return n.str();
    return n.str() + "/" + d.str();
}

/**
 * Reduce a matrix to reduced row echelon form in place.
 *
 * @param mat Matrix to reduce.
 * @returns Indices of the pivot columns, in increasing order.
 */
inline std::vector<int> rref_in_place(Mat& mat)
{
    std::vector<int> pivots;
    const int rows = static_cast<int>(mat.rows());
    const int cols = static_cast<int>(mat.cols());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i) {
            if (mat(i, c) != 0) {
                p = i;
                break;
            }
        }
        if (p < 0)
            continue;
        if (p != r)
            mat.row(p).swap(mat.row(r));
        Rational inv = Rational(1) / mat(r, c);
        for (int j = c; j < cols; ++j)
            mat(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || mat(i, c) == 0)
                continue;
            Rational f = mat(i, c);
            for (int j = c; j < cols; ++j)
                mat(i, j) -= f * mat(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank_of(const Mat& mat)
{
    Mat m = mat;
    return static_cast<int>(rref_in_place(m).size());
}

/**
 * A subspace of Q^n held in canonical form: the basis matrix is the reduced
 * column echelon form of any spanning set, with pivot rows increasing from
 * the first coordinate.  Two subspaces are equal iff their basis matrices
 * are identical entry by entry.
 */
class Subspace {
public:
    Subspace() : ambient_(0), basis_(Mat::Zero(0, 0)) {}

    /** Span of the columns of `gens` inside Q^ambient, canonicalized. */
    Subspace(int ambient, const Mat& gens) : ambient_(ambient)
    {
        if (gens.size() > 0 && static_cast<int>(gens.rows()) != ambient)
            throw input_error("canonicalize: generator length "
                              + std::to_string(gens.rows()) + " != ambient dim "
                              + std::to_string(ambient));
        Mat t = gens.transpose();
        std::vector<int> piv = rref_in_place(t);
        basis_ = Mat::Zero(ambient, static_cast<int>(piv.size()));
        for (int i = 0; i < static_cast<int>(piv.size()); ++i)
            basis_.col(i) = t.row(i).transpose();
    }

    static Subspace zero(int ambient) { return Subspace(ambient, Mat::Zero(ambient, 0)); }

    static Subspace full(int ambient)
    {
        return Subspace(ambient, Mat::Identity(ambient, ambient));
    }

    static Subspace span(int ambient, const std::vector<Vec>& vectors)
    {
        Mat g(ambient, static_cast<int>(vectors.size()));
        for (int j = 0; j < static_cast<int>(vectors.size()); ++j) {
            if (static_cast<int>(vectors[j].size()) != ambient)
                throw input_error("canonicalize: vector length mismatch");
            g.col(j) = vectors[j];
        }
        return Subspace(ambient, g);
    }

    int ambient_dim() const { return ambient_; }
    int rank() const { return static_cast<int>(basis_.cols()); }
    const Mat& basis() const { return basis_; }

    bool operator==(const Subspace& o) const
    {
        return ambient_ == o.ambient_ && basis_.rows() == o.basis_.rows()
               && basis_.cols() == o.basis_.cols() && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    /** Membership test by reduction against the canonical basis. */
    bool contains(const Vec& v) const
    {
        if (static_cast<int>(v.size()) != ambient_)
            throw input_error("contains: vector length mismatch");
        Vec w = v;
        // Pivot rows are the leading-one rows of each basis column.
        for (int j = 0; j < basis_.cols(); ++j) {
            int pr = pivot_row(j);
            if (w(pr) != 0)
                w -= w(pr) * basis_.col(j);
        }
        for (int i = 0; i < ambient_; ++i)
            if (w(i) != 0)
                return false;
        return true;
    }

    bool contains(const Subspace& other) const
    {
        if (other.ambient_ != ambient_)
            throw input_error("contains: ambient mismatch");
        for (int j = 0; j < other.basis_.cols(); ++j)
            if (!contains(Vec(other.basis_.col(j))))
                return false;
        return true;
    }

    int pivot_row(int col) const
    {
        for (int i = 0; i < ambient_; ++i)
            if (basis_(i, col) != 0)
                return i;
        throw contract_error("canonical basis has a zero column");
    }

private:
    int ambient_;
    Mat basis_;
};

/** A linear map Q^domain -> Q^codomain given by its matrix. */
class LinMap {
public:
    LinMap() : mat_(Mat::Zero(0, 0)) {}
    explicit LinMap(const Mat& m) : mat_(m) {}

    static LinMap zero(int codomain, int domain) { return LinMap(Mat::Zero(codomain, domain)); }
    static LinMap identity(int dim) { return LinMap(Mat::Identity(dim, dim)); }

    int domain_dim() const { return static_cast<int>(mat_.cols()); }
    int codomain_dim() const { return static_cast<int>(mat_.rows()); }
    const Mat& matrix() const { return mat_; }

    Vec apply(const Vec& v) const { return mat_ * v; }

    LinMap compose(const LinMap& inner) const
    {
        if (inner.codomain_dim() != domain_dim())
            throw input_error("compose: dimension mismatch");
        return LinMap(mat_ * inner.mat_);
    }

    LinMap power(int k) const
    {
        require(domain_dim() == codomain_dim(), "power: map not an endomorphism");
        require(k >= 0, "power: negative exponent");
        Mat acc = Mat::Identity(domain_dim(), domain_dim());
        for (int i = 0; i < k; ++i)
            acc = mat_ * acc;
        return LinMap(acc);
    }

    bool is_zero() const
    {
        for (int i = 0; i < mat_.rows(); ++i)
            for (int j = 0; j < mat_.cols(); ++j)
                if (mat_(i, j) != 0)
                    return false;
        return true;
    }

    bool operator==(const LinMap& o) const
    {
        return mat_.rows() == o.mat_.rows() && mat_.cols() == o.mat_.cols() && mat_ == o.mat_;
    }

private:
    Mat mat_;
};

inline LinMap operator+(const LinMap& a, const LinMap& b)
{
    if (a.domain_dim() != b.domain_dim() || a.codomain_dim() != b.codomain_dim())
        throw input_error("operator+: shape mismatch");
    return LinMap(a.matrix() + b.matrix());
}

inline LinMap operator*(const Rational& c, const LinMap& a) { return LinMap(c * a.matrix()); }

/** Span of the columns of a map's matrix. */
inline Subspace image(const LinMap& f)
{
    return Subspace(f.codomain_dim(), f.matrix());
}

/** Image of a subspace under a map. */
inline Subspace image_of(const LinMap& f, const Subspace& s)
{
    if (s.ambient_dim() != f.domain_dim())
        throw input_error("image_of: ambient mismatch");
    return Subspace(f.codomain_dim(), f.matrix() * s.basis());
}

/**
 * Null space of a map, canonicalized.  Satisfies rank-nullity against
 * image() exactly.
 */
inline Subspace kernel(const LinMap& f)
{
    Mat m = f.matrix();
    std::vector<int> piv = rref_in_place(m);
    const int n = f.domain_dim();
    std::vector<bool> is_pivot(n, false);
    for (int c : piv)
        is_pivot[c] = true;
    Mat gens(n, n - static_cast<int>(piv.size()));
    int k = 0;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c])
            continue;
        Vec v = Vec::Zero(n);
        v(c) = 1;
        for (int i = 0; i < static_cast<int>(piv.size()); ++i)
            v(piv[i]) = -m(i, c);
        gens.col(k++) = v;
    }
    Subspace ker(n, gens);
    require(ker.rank() + static_cast<int>(piv.size()) == n, "kernel: rank-nullity violated");
    return ker;
}

inline Subspace sum(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw input_error("sum: ambient mismatch");
    Mat g(a.ambient_dim(), a.rank() + b.rank());
    g << a.basis(), b.basis();
    return Subspace(a.ambient_dim(), g);
}

inline Subspace intersect(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw input_error("intersect: ambient mismatch");
    if (a.rank() == 0 || b.rank() == 0)
        return Subspace::zero(a.ambient_dim());
    // Solve A x = B y; the intersection is A applied to the x-part of the
    // kernel of [A | -B].
    Mat sys(a.ambient_dim(), a.rank() + b.rank());
    sys << a.basis(), -b.basis();
    Subspace ker = kernel(LinMap(sys));
    Mat xpart = ker.basis().topRows(a.rank());
    return Subspace(a.ambient_dim(), a.basis() * xpart);
}

/** Preimage f^{-1}(s) of a subspace, including the kernel of f. */
inline Subspace preimage(const LinMap& f, const Subspace& s)
{
    if (s.ambient_dim() != f.codomain_dim())
        throw input_error("preimage: ambient mismatch");
    if (s.rank() == 0)
        return kernel(f);
    Mat sys(f.codomain_dim(), f.domain_dim() + s.rank());
    sys << f.matrix(), -s.basis();
    Subspace ker = kernel(LinMap(sys));
    Mat xpart = ker.basis().topRows(f.domain_dim());
    return Subspace(f.domain_dim(), xpart);
}

/**
 * Coordinates of vectors relative to a fixed spanning matrix.  Throws if a
 * vector is outside the span.
 */
inline Mat solve_in_span(const Mat& span_cols, const Mat& targets)
{
    const int n = static_cast<int>(span_cols.rows());
    const int k = static_cast<int>(span_cols.cols());
    const int t = static_cast<int>(targets.cols());
    Mat sys(n, k + t);
    if (k > 0)
        sys.leftCols(k) = span_cols;
    if (t > 0)
        sys.rightCols(t) = targets;
    std::vector<int> piv = rref_in_place(sys);
    Mat coords = Mat::Zero(k, t);
    for (int i = 0; i < static_cast<int>(piv.size()); ++i) {
        if (piv[i] >= k)
            throw contract_error("solve_in_span: target escapes the span");
        for (int j = 0; j < t; ++j)
            coords(piv[i], j) = sys(i, k + j);
    }
    return coords;
}

/**
 * A subquotient numerator/denominator of the ambient space, with a chosen
 * coset-representative basis.  The representatives are the columns of the
 * numerator's canonical basis that survive reduction modulo the denominator,
 * so they are determined by the canonical forms alone.
 */
class Subquotient {
public:
    Subquotient() = default;

    Subquotient(const Subspace& num, const Subspace& den) : num_(num), den_(den)
    {
        if (num.ambient_dim() != den.ambient_dim())
            throw input_error("subquotient: ambient mismatch");
        if (!num.contains(den))
            throw contract_error("subquotient: denominator not contained in numerator");
        Subspace acc = den;
        std::vector<Vec> chosen;
        for (int j = 0; j < num.basis().cols(); ++j) {
            Vec v = num.basis().col(j);
            if (!acc.contains(v)) {
                chosen.push_back(v);
                Mat g(num.ambient_dim(), acc.rank() + 1);
                g << acc.basis(), v;
                acc = Subspace(num.ambient_dim(), g);
            }
        }
        reps_ = Mat(num.ambient_dim(), static_cast<int>(chosen.size()));
        for (int j = 0; j < static_cast<int>(chosen.size()); ++j)
            reps_.col(j) = chosen[j];
        require(num.rank() - den.rank() == static_cast<int>(chosen.size()),
                "subquotient: representative count mismatch");
    }

    int ambient_dim() const { return num_.ambient_dim(); }
    int dim() const { return static_cast<int>(reps_.cols()); }
    const Subspace& numerator() const { return num_; }
    const Subspace& denominator() const { return den_; }
    const Mat& representatives() const { return reps_; }

    /** Coordinates of ambient vectors (columns) in the quotient basis. */
    Mat coords(const Mat& vectors) const
    {
        const int n = ambient_dim();
        Mat span_cols(n, den_.rank() + dim());
        if (den_.rank() > 0)
            span_cols.leftCols(den_.rank()) = den_.basis();
        if (dim() > 0)
            span_cols.rightCols(dim()) = reps_;
        Mat all = solve_in_span(span_cols, vectors);
        return all.bottomRows(dim());
    }

    /** Ambient representative of a coordinate vector. */
    Vec lift(const Vec& coord) const { return reps_ * coord; }

private:
    Subspace num_;
    Subspace den_;
    Mat reps_;
};

/**
 * The well-defined map on subquotients induced by f.  Requires
 * f(src.numerator) inside dst.numerator and f(src.denominator) inside
 * dst.denominator; the violated inclusion is named on failure.
 */
inline LinMap induced_map(const LinMap& f, const Subquotient& src, const Subquotient& dst)
{
    if (f.domain_dim() != src.ambient_dim() || f.codomain_dim() != dst.ambient_dim())
        throw input_error("induced_map: ambient mismatch");
    if (!dst.numerator().contains(image_of(f, src.numerator())))
        throw contract_error("induced_map: f(src.numerator) not inside dst.numerator");
    if (!dst.denominator().contains(image_of(f, src.denominator())))
        throw contract_error("induced_map: f(src.denominator) not inside dst.denominator");
    if (src.dim() == 0 || dst.dim() == 0)
        return LinMap::zero(dst.dim(), src.dim());
    return LinMap(dst.coords(f.matrix() * src.representatives()));
}

enum class Direction { increasing, decreasing };

/**
 * A finite filtration of a fixed ambient space, stored sparsely at the
 * indices where it is recorded.  Queries below/above the recorded range
 * return the zero or full subspace according to the direction: an
 * increasing filtration is zero below and full above, a decreasing one is
 * full below and zero above.
 */
class IncFiltration {
public:
    IncFiltration() : ambient_(0), dir_(Direction::increasing) {}

    IncFiltration(int ambient, Direction dir) : ambient_(ambient), dir_(dir) {}

    int ambient_dim() const { return ambient_; }
    Direction direction() const { return dir_; }
    const std::map<int, Subspace>& steps() const { return steps_; }

    void set_step(int k, const Subspace& s)
    {
        if (s.ambient_dim() != ambient_)
            throw input_error("filtration step: ambient mismatch");
        steps_[k] = s;
    }

    Subspace at(int k) const
    {
        if (dir_ == Direction::increasing) {
            // Largest recorded index <= k.
            auto it = steps_.upper_bound(k);
            if (it == steps_.begin())
                return Subspace::zero(ambient_);
            --it;
            return it->second;
        }
        // Decreasing: smallest recorded index >= k.
        auto it = steps_.lower_bound(k);
        if (it == steps_.end())
            return Subspace::zero(ambient_);
        return it->second;
    }

    int lowest_index() const { return steps_.empty() ? 0 : steps_.begin()->first; }
    int highest_index() const { return steps_.empty() ? 0 : steps_.rbegin()->first; }

    /** Check monotonicity and, for exhaustive filtrations, the end values. */
    bool well_formed() const
    {
        Subspace prev;
        bool first = true;
        for (const auto& [k, s] : steps_) {
            (void)k;
            if (!first) {
                if (dir_ == Direction::increasing && !s.contains(prev))
                    return false;
                if (dir_ == Direction::decreasing && !prev.contains(s))
                    return false;
            }
            prev = s;
            first = false;
        }
        return true;
    }

    bool operator==(const IncFiltration& o) const
    {
        if (ambient_ != o.ambient_ || dir_ != o.dir_)
            return false;
        int lo = std::min(lowest_index(), o.lowest_index()) - 1;
        int hi = std::max(highest_index(), o.highest_index()) + 1;
        for (int k = lo; k <= hi; ++k)
            if (!(at(k) == o.at(k)))
                return false;
        return true;
    }
    bool operator!=(const IncFiltration& o) const { return !(*this == o); }

    /**
     * Index shift: for an increasing filtration (W[m])_r = W_{r-m} (shift to
     * the right), for a decreasing one (F[m])^p = F^{p+m} (shift to the
     * left).
     */
    IncFiltration shift(int m) const
    {
        IncFiltration out(ambient_, dir_);
        for (const auto& [k, s] : steps_)
            out.steps_[dir_ == Direction::increasing ? k + m : k - m] = s;
        return out;
    }

private:
    int ambient_;
    Direction dir_;
    std::map<int, Subspace> steps_;
};

/** The graded piece of a filtration at index k as a subquotient. */
inline Subquotient graded(const IncFiltration& w, int k)
{
    if (w.direction() == Direction::increasing)
        return Subquotient(w.at(k), w.at(k - 1));
    return Subquotient(w.at(k), w.at(k + 1));
}

/**
 * Induced filtration on a subquotient: level k becomes
 * (W_k intersect numerator + denominator) viewed inside the ambient space.
 */
inline Subspace induced_level(const IncFiltration& w, int k, const Subquotient& sq)
{
    return sum(intersect(w.at(k), sq.numerator()), sq.denominator());
}

namespace detail {

/**
 * Stepwise iterated-graded dimension, used as the independent cross-check
 * for the collapsed construction: build the quotient space explicitly at
 * each stage, push the remaining filtrations through, and recurse.
 */
inline int iterated_graded_dim_stepwise(std::vector<std::pair<IncFiltration, int>> rest,
                                        const Subquotient& space)
{
    if (rest.empty())
        return space.dim();
    auto [w, k] = rest.front();
    rest.erase(rest.begin());
    // Coordinates of the induced filtration levels inside `space`.
    Subspace num_k = induced_level(w, k, space);
    Subspace num_k1 = induced_level(w, k - 1, space);
    Mat ck = space.coords(intersect(num_k, space.numerator()).basis());
    Mat ck1 = space.coords(intersect(num_k1, space.numerator()).basis());
    Subspace top(space.dim(), ck);
    Subspace bot(space.dim(), ck1);
    // Rebuild the leftover filtrations inside the quotient coordinates.
    std::vector<std::pair<IncFiltration, int>> pushed;
    for (auto& [v, l] : rest) {
        IncFiltration pv(space.dim(), v.direction());
        for (int idx = v.lowest_index() - 1; idx <= v.highest_index(); ++idx) {
            Subspace lev = induced_level(v, idx, space);
            pv.set_step(idx, Subspace(space.dim(),
                                      space.coords(intersect(lev, space.numerator()).basis())));
        }
        pushed.emplace_back(pv, l);
    }
    return iterated_graded_dim_stepwise(pushed, Subquotient(top, bot));
}

}  // namespace detail

/**
 * Iterated graded piece Gr_{m_k}^{W^k} ... Gr_{m_1}^{W^1} L collapsed to a
 * single subquotient of the ambient space.  The first filtration in the
 * list is applied innermost.  The dimension is cross-checked against the
 * stepwise quotient construction.
 */
inline Subquotient iterated_graded(const std::vector<IncFiltration>& filtrations,
                                   const std::vector<int>& indices,
                                   bool crosscheck = true)
{
    if (filtrations.empty() || filtrations.size() != indices.size())
        throw input_error("iterated_graded: filtration/index count mismatch");
    const int n = filtrations[0].ambient_dim();
    for (const auto& w : filtrations) {
        if (w.ambient_dim() != n)
            throw input_error("iterated_graded: ambient mismatch");
        if (w.direction() != Direction::increasing)
            throw input_error("iterated_graded: increasing filtrations only");
    }
    Subspace num = filtrations[0].at(indices[0]);
    Subspace den = filtrations[0].at(indices[0] - 1);
    for (std::size_t i = 1; i < filtrations.size(); ++i) {
        Subspace nxt_num = sum(intersect(filtrations[i].at(indices[i]), num), den);
        Subspace nxt_den = sum(intersect(filtrations[i].at(indices[i] - 1), num), den);
        num = nxt_num;
        den = nxt_den;
    }
    Subquotient out(num, den);
    if (crosscheck) {
        std::vector<std::pair<IncFiltration, int>> steps;
        for (std::size_t i = 0; i < filtrations.size(); ++i)
            steps.emplace_back(filtrations[i], indices[i]);
        Subquotient whole(Subspace::full(n), Subspace::zero(n));
        int expect = detail::iterated_graded_dim_stepwise(steps, whole);
        require(expect == out.dim(), "iterated_graded: collapsed dimension "
                                     + std::to_string(out.dim())
                                     + " != stepwise dimension " + std::to_string(expect));
    }
    return out;
}

/** Same tower but seeded at an arbitrary subquotient instead of the full space. */
inline Subquotient iterated_graded_in(const Subquotient& seed,
                                      const std::vector<IncFiltration>& filtrations,
                                      const std::vector<int>& indices)
{
    if (filtrations.size() != indices.size())
        throw input_error("iterated_graded_in: filtration/index count mismatch");
    Subspace num = seed.numerator();
    Subspace den = seed.denominator();
    for (std::size_t i = 0; i < filtrations.size(); ++i) {
        Subspace nxt_num = sum(intersect(filtrations[i].at(indices[i]), num), den);
        Subspace nxt_den = sum(intersect(filtrations[i].at(indices[i] - 1), num), den);
        num = nxt_num;
        den = nxt_den;
    }
    return Subquotient(num, den);
}

}  // namespace weightlab

#endif  // WEIGHTLAB_QLINALG_HPP
