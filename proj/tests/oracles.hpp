#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's sigma/T routes.

#include <cmath>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXd;
using Poly = std::map<std::vector<int>, double>;  // exponent tuple -> coefficient

// Expand prod_i (1 + sum_a t_a d[a][i]) for diagonal tuples by choosing, per
// factor, either the 1 or one of the q linear terms.
inline Poly expand_diagonal(const std::vector<std::vector<double>>& d) {
    const int q = static_cast<int>(d.size());
    const int m = static_cast<int>(d.front().size());
    Poly out;
    std::vector<int> choice(static_cast<std::size_t>(m), -1);
    while (true) {
        std::vector<int> exps(static_cast<std::size_t>(q), 0);
        double coef = 1;
        for (int i = 0; i < m; ++i) {
            const int c = choice[static_cast<std::size_t>(i)];
            if (c >= 0) {
                ++exps[static_cast<std::size_t>(c)];
                coef *= d[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            }
        }
        out[exps] += coef;
        int pos = m - 1;
        while (pos >= 0 && choice[static_cast<std::size_t>(pos)] == q - 1) choice[static_cast<std::size_t>(pos--)] = -1;
        if (pos < 0) break;
        ++choice[static_cast<std::size_t>(pos)];
    }
    return out;
}

// Elementary symmetric polynomial e_r of the given values by brute-force
// subset enumeration.
inline double elementary(const std::vector<double>& x, int r) {
    const int n = static_cast<int>(x.size());
    double s = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != r) continue;
        double p = 1;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) p *= x[static_cast<std::size_t>(i)];
        s += p;
    }
    return s;
}

// det(I + sum_a t_a A_a) through Eigen's LU.
inline double newton_polynomial(const std::vector<Mat>& a, const std::vector<double>& t) {
    Mat m = Mat::Identity(a.front().rows(), a.front().cols());
    for (std::size_t k = 0; k < a.size(); ++k) m += t[k] * a[k];
    return m.determinant();
}

// adj(I + sum_a t_a A_a) = det * inverse; its monomial expansion is the
// generating function of the Newton transformations.
inline Mat adjugate_pencil(const std::vector<Mat>& a, const std::vector<double>& t) {
    Mat m = Mat::Identity(a.front().rows(), a.front().cols());
    for (std::size_t k = 0; k < a.size(); ++k) m += t[k] * a[k];
    return m.determinant() * m.inverse();
}

inline double monomial(const std::vector<double>& t, const std::vector<int>& u) {
    double p = 1;
    for (std::size_t k = 0; k < t.size(); ++k) p *= std::pow(t[k], u[k]);
    return p;
}

// All q x s 0/1 matrices with exactly one 1 per column, as words (row of the 1
// in each column), via brute force over all 2^(q s) bit patterns.
inline std::vector<std::vector<int>> selection_matrices(int q, int s) {
    std::vector<std::vector<int>> words;
    const int bits = q * s;
    for (unsigned long mask = 0; mask < (1ul << bits); ++mask) {
        std::vector<int> word;
        bool ok = true;
        for (int col = 0; col < s && ok; ++col) {
            int ones = 0, row_of_one = -1;
            for (int row = 0; row < q; ++row)
                if (mask & (1ul << (row * s + col))) {
                    ++ones;
                    row_of_one = row;
                }
            ok = ones == 1;
            word.push_back(row_of_one);
        }
        if (ok) words.push_back(word);
    }
    return words;
}

}  // namespace oracle
