#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gnt {

// Exponent vector u = (u_1, ..., u_q) of a monomial t^u. Axes are 0-based.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    static MultiIndex zero(int q);

    int q() const { return static_cast<int>(entries_.size()); }
    int weight() const;
    int operator[](int axis) const { return entries_[static_cast<std::size_t>(axis)]; }
    const std::vector<int>& entries() const { return entries_; }

    // Graded lexicographic: lower weight first, ties broken lexicographically.
    std::strong_ordering operator<=>(const MultiIndex& other) const;
    bool operator==(const MultiIndex& other) const = default;

    std::string to_string() const;

private:
    std::vector<int> entries_;
};

// u with entry `axis` incremented.
MultiIndex sharp(int axis, const MultiIndex& u);

// u with entry `axis` decremented; nullopt when that entry is already zero.
std::optional<MultiIndex> flat(int axis, const MultiIndex& u);

// Monadic helper so chained decrements read naturally.
std::optional<MultiIndex> flat(int axis, const std::optional<MultiIndex>& u);

// Every u in N(q) with weight(u) <= max_weight, graded-lex ordered.
std::vector<MultiIndex> enumerate_multiindices(int q, int max_weight);

// Every u with weight(u) == weight, lexicographic.
std::vector<MultiIndex> enumerate_multiindices_of_weight(int q, int weight);

// A 0/1 selection matrix with one 1 per column, stored column by column:
// letter j is the row holding column j's single 1. Product A^i reads the
// letters left to right.
class SelectionWord {
public:
    SelectionWord(int q, std::vector<int> letters);

    int q() const { return q_; }
    int length() const { return static_cast<int>(letters_.size()); }
    const std::vector<int>& letters() const { return letters_; }
    MultiIndex weight() const;

    bool operator==(const SelectionWord& other) const = default;

private:
    int q_;
    std::vector<int> letters_;
};

// All q^s words of length s, lexicographic in the letters.
std::vector<SelectionWord> enumerate_selections(int q, int s);

// Dense index over { u in N(q) : weight(u) <= max_weight } in graded-lex order.
class MonomialBasis {
public:
    MonomialBasis(int q, int max_weight);

    int q() const { return q_; }
    int max_weight() const { return max_weight_; }
    std::size_t size() const { return indices_.size(); }
    const MultiIndex& operator[](std::size_t k) const { return indices_[k]; }
    const std::vector<MultiIndex>& indices() const { return indices_; }

    // Position of u, or nullopt if weight(u) > max_weight.
    std::optional<std::size_t> find(const MultiIndex& u) const;

    // Pairs (a, b, c) with index[a] + index[b] == index[c], all inside the basis.
    struct ProductTerm {
        std::size_t a, b, c;
    };
    const std::vector<ProductTerm>& product_table() const { return products_; }

    bool operator==(const MonomialBasis& other) const {
        return q_ == other.q_ && max_weight_ == other.max_weight_;
    }

private:
    std::size_t key(const MultiIndex& u) const;

    int q_;
    int max_weight_;
    std::vector<MultiIndex> indices_;
    std::vector<std::size_t> lookup_;  // dense table over base (max_weight+1) digits
    std::vector<ProductTerm> products_;
};

// Shared, cached basis for (q, max_weight); safe to call concurrently.
std::shared_ptr<const MonomialBasis> monomial_basis(int q, int max_weight);

long long binomial(int n, int k);

}  // namespace gnt
