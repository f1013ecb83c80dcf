#include "gnt/random.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace gnt {

static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t s = mix(seed + 0x9e3779b97f4a7c15ULL);
    for (auto k : keys) s = mix(s ^ mix(k + 0x9e3779b97f4a7c15ULL));
    return Rng(s);
}

std::uint64_t Rng::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

EndoTuple random_tuple(Rng& rng, int q, int m, Ensemble ensemble) {
    std::vector<Matrix> mats;
    for (int a = 0; a < q; ++a) {
        Matrix b(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) b(i, j) = rng.uniform(-1.0, 1.0);
        if (ensemble == Ensemble::symmetric) b = Matrix((b + b.transpose()) / 2);
        mats.push_back(std::move(b));
    }
    return EndoTuple(std::move(mats));
}

Matrix random_invertible(Rng& rng, int m) {
    while (true) {
        Matrix b = Matrix::Identity(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) b(i, j) += 0.5 * rng.uniform(-1.0, 1.0);
        const auto sv = Eigen::JacobiSVD<Matrix>(b).singularValues();
        if (sv(sv.size() - 1) * 10 >= sv(0)) return b;
    }
}

}  // namespace gnt
