#include "gnt/multiindex.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace gnt {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("multi-index needs q >= 1 entries");
    for (int e : entries_)
        if (e < 0) throw std::invalid_argument("multi-index entries must be non-negative");
}

MultiIndex MultiIndex::zero(int q) {
    if (q < 1) throw std::invalid_argument("multi-index needs q >= 1");
    return MultiIndex(std::vector<int>(static_cast<std::size_t>(q), 0));
}

int MultiIndex::weight() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
    if (auto c = weight() <=> other.weight(); c != 0) return c;
    return entries_ <=> other.entries_;
}

std::string MultiIndex::to_string() const {
    std::string s = "[";
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(entries_[k]);
    }
    return s + "]";
}

static void check_axis(int axis, int q) {
    if (axis < 0 || axis >= q) throw std::out_of_range("axis outside 0..q-1");
}

MultiIndex sharp(int axis, const MultiIndex& u) {
    check_axis(axis, u.q());
    auto e = u.entries();
    ++e[static_cast<std::size_t>(axis)];
    return MultiIndex(std::move(e));
}

std::optional<MultiIndex> flat(int axis, const MultiIndex& u) {
    check_axis(axis, u.q());
    if (u[axis] == 0) return std::nullopt;
    auto e = u.entries();
    --e[static_cast<std::size_t>(axis)];
    return MultiIndex(std::move(e));
}

std::optional<MultiIndex> flat(int axis, const std::optional<MultiIndex>& u) {
    if (!u) return std::nullopt;
    return flat(axis, *u);
}

static void compositions(int q, int weight, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
    if (static_cast<int>(prefix.size()) == q - 1) {
        prefix.push_back(weight);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int e = 0; e <= weight; ++e) {
        prefix.push_back(e);
        compositions(q, weight - e, prefix, out);
        prefix.pop_back();
    }
}

std::vector<MultiIndex> enumerate_multiindices_of_weight(int q, int weight) {
    if (q < 1 || weight < 0) throw std::invalid_argument("need q >= 1 and weight >= 0");
    std::vector<MultiIndex> out;
    std::vector<int> prefix;
    compositions(q, weight, prefix, out);
    return out;
}

std::vector<MultiIndex> enumerate_multiindices(int q, int max_weight) {
    if (q < 1 || max_weight < 0) throw std::invalid_argument("need q >= 1 and max_weight >= 0");
    std::vector<MultiIndex> out;
    for (int w = 0; w <= max_weight; ++w) {
        auto layer = enumerate_multiindices_of_weight(q, w);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

SelectionWord::SelectionWord(int q, std::vector<int> letters) : q_(q), letters_(std::move(letters)) {
    if (q < 1) throw std::invalid_argument("selection word needs q >= 1");
    for (int l : letters_) check_axis(l, q);
}

MultiIndex SelectionWord::weight() const {
    std::vector<int> hist(static_cast<std::size_t>(q_), 0);
    for (int l : letters_) ++hist[static_cast<std::size_t>(l)];
    return MultiIndex(std::move(hist));
}

std::vector<SelectionWord> enumerate_selections(int q, int s) {
    if (q < 1 || s < 0) throw std::invalid_argument("need q >= 1 and s >= 0");
    std::vector<SelectionWord> out;
    std::vector<int> letters(static_cast<std::size_t>(s), 0);
    while (true) {
        out.emplace_back(q, letters);
        // odometer increment, last letter fastest
        int pos = s - 1;
        while (pos >= 0 && letters[static_cast<std::size_t>(pos)] == q - 1) {
            letters[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++letters[static_cast<std::size_t>(pos)];
    }
    return out;
}

MonomialBasis::MonomialBasis(int q, int max_weight)
    : q_(q), max_weight_(max_weight), indices_(enumerate_multiindices(q, max_weight)) {
    std::size_t span = 1;
    for (int k = 0; k < q; ++k) span *= static_cast<std::size_t>(max_weight + 1);
    lookup_.assign(span, indices_.size());
    for (std::size_t k = 0; k < indices_.size(); ++k) lookup_[key(indices_[k])] = k;

    for (std::size_t a = 0; a < indices_.size(); ++a) {
        for (std::size_t b = 0; b < indices_.size(); ++b) {
            if (indices_[a].weight() + indices_[b].weight() > max_weight_) continue;
            std::vector<int> sum(static_cast<std::size_t>(q));
            for (int k = 0; k < q; ++k) sum[static_cast<std::size_t>(k)] = indices_[a][k] + indices_[b][k];
            products_.push_back({a, b, *find(MultiIndex(std::move(sum)))});
        }
    }
}

std::size_t MonomialBasis::key(const MultiIndex& u) const {
    std::size_t k = 0;
    for (int e : u.entries()) k = k * static_cast<std::size_t>(max_weight_ + 1) + static_cast<std::size_t>(e);
    return k;
}

std::optional<std::size_t> MonomialBasis::find(const MultiIndex& u) const {
    if (u.q() != q_) throw std::invalid_argument("multi-index has wrong q for this basis");
    if (u.weight() > max_weight_) return std::nullopt;
    return lookup_[key(u)];
}

std::shared_ptr<const MonomialBasis> monomial_basis(int q, int max_weight) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{q, max_weight}];
    if (!slot) slot = std::make_shared<const MonomialBasis>(q, max_weight);
    return slot;
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

}  // namespace gnt
