/**
 * Shared helpers for the test suites: small matrix constructors and a
 * deterministic random source.  Everything here is test-only and kept
 * independent of the library's own generators so it can serve as an oracle.
 */

#ifndef WEIGHTLAB_TESTS_HELPERS_HPP
#define WEIGHTLAB_TESTS_HELPERS_HPP

#include <weightlab/qlinalg.hpp>

#include <random>
#include <vector>

namespace wltest {

using weightlab::Mat;
using weightlab::Rational;
using weightlab::Vec;

/** Nilpotent Jordan block of size s: e_k -> e_{k-1}, e_0 -> 0. */
inline Mat jordan_block(int s)
{
    Mat m = Mat::Zero(s, s);
    for (int k = 1; k < s; ++k)
        m(k - 1, k) = 1;
    return m;
}

/** Block-diagonal nilpotent of the given Jordan type. */
inline Mat jordan_type(const std::vector<int>& sizes)
{
    int n = 0;
    for (int s : sizes)
        n += s;
    Mat m = Mat::Zero(n, n);
    int off = 0;
    for (int s : sizes) {
        m.block(off, off, s, s) = jordan_block(s);
        off += s;
    }
    return m;
}

inline Mat random_int_matrix(std::mt19937_64& rng, int rows, int cols, int lo = -3, int hi = 3)
{
    std::uniform_int_distribution<int> d(lo, hi);
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = d(rng);
    return m;
}

/** Random invertible integer matrix (retry until nonsingular). */
inline Mat random_invertible(std::mt19937_64& rng, int n)
{
    for (;;) {
        Mat g = random_int_matrix(rng, n, n, -2, 2);
        if (weightlab::rank_of(g) == n)
            return g;
    }
}

inline Mat inverse_of(const Mat& g)
{
    const int n = static_cast<int>(g.rows());
    Mat sys(n, 2 * n);
    sys << g, Mat::Identity(n, n);
    weightlab::rref_in_place(sys);
    return sys.rightCols(n);
}

/** Kronecker product, used to build tensor-orbit oracles. */
inline Mat kron(const Mat& a, const Mat& b)
{
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace wltest

#endif
