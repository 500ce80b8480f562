#pragma once

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "omq/rational.hpp"

namespace omq {

class PlanarBinaryTree;

/// Interned handle; equality and hashing are pointer operations.
using Pbt = const PlanarBinaryTree*;

/// Planar binary tree: a leaf, or an internal vertex with an ordered pair of
/// subtrees. Degree counts internal vertices. Interned like RootedTree.
class PlanarBinaryTree {
  public:
    bool is_leaf() const { return left_ == nullptr; }
    Pbt left() const { return left_; }
    Pbt right() const { return right_; }
    int degree() const { return degree_; }
    const std::string& encoding() const { return encoding_; }

  private:
    friend Pbt pbt_leaf();
    friend Pbt pbt_node(Pbt, Pbt);
    PlanarBinaryTree(Pbt l, Pbt r, int degree, std::string encoding)
        : left_(l), right_(r), degree_(degree), encoding_(std::move(encoding)) {}

    Pbt left_;
    Pbt right_;
    int degree_;
    std::string encoding_;
};

inline Pbt pbt_leaf() {
    static Pbt leaf = new PlanarBinaryTree(nullptr, nullptr, 0, ".");
    return leaf;
}

/// Wire format: leaf ".", node "(" + left + right + ")".
inline Pbt pbt_node(Pbt l, Pbt r) {
    std::string enc = "(" + l->encoding() + r->encoding() + ")";
    static std::mutex mu;
    static std::unordered_map<std::string_view, Pbt> pool;
    std::lock_guard<std::mutex> lock(mu);
    auto it = pool.find(enc);
    if (it != pool.end()) return it->second;
    Pbt t = new PlanarBinaryTree(l, r, 1 + l->degree() + r->degree(), std::move(enc));
    pool.emplace(t->encoding(), t);
    return t;
}

/// The one-vertex tree, image of the pre-Lie generator.
inline Pbt pbt_vertex() {
    static Pbt v = pbt_node(pbt_leaf(), pbt_leaf());
    return v;
}

inline const std::string& pbt_encode(Pbt t) { return t->encoding(); }

namespace detail {
inline Pbt parse_pbt_at(std::string_view text, size_t& pos) {
    if (pos >= text.size()) throw std::invalid_argument("malformed planar tree encoding");
    if (text[pos] == '.') {
        ++pos;
        return pbt_leaf();
    }
    if (text[pos] != '(') throw std::invalid_argument("malformed planar tree encoding");
    ++pos;
    Pbt l = parse_pbt_at(text, pos);
    Pbt r = parse_pbt_at(text, pos);
    if (pos >= text.size() || text[pos] != ')')
        throw std::invalid_argument("malformed planar tree encoding");
    ++pos;
    return pbt_node(l, r);
}
}  // namespace detail

inline Pbt parse_pbt(std::string_view text) {
    size_t pos = 0;
    Pbt t = detail::parse_pbt_at(text, pos);
    if (pos != text.size())
        throw std::invalid_argument("trailing characters in planar tree encoding");
    return t;
}

/// All planar binary trees with n internal vertices, in encoding order.
inline const std::vector<Pbt>& enumerate_pbt(int n) {
    if (n < 0) throw std::invalid_argument("enumerate_pbt requires n >= 0");
    static std::mutex mu;
    // deque so references to earlier levels survive growth
    static std::deque<std::vector<Pbt>> table = {{pbt_leaf()}};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(table.size()) <= n) {
        const int m = static_cast<int>(table.size());
        std::vector<Pbt> out;
        for (int i = 0; i <= m - 1; ++i)
            for (Pbt l : table[i])
                for (Pbt r : table[m - 1 - i]) out.push_back(pbt_node(l, r));
        std::sort(out.begin(), out.end(),
                  [](Pbt a, Pbt b) { return a->encoding() < b->encoding(); });
        table.push_back(std::move(out));
    }
    return table[n];
}

/// Catalan number by the closed binomial formula; independent of enumerate_pbt.
inline BigInt catalan(int n) {
    return binomial(2 * static_cast<unsigned>(n), static_cast<unsigned>(n)) / (n + 1);
}

inline Pbt left_comb(int n) {
    if (n < 1) throw std::invalid_argument("left_comb requires n >= 1");
    Pbt t = pbt_vertex();
    for (int i = 1; i < n; ++i) t = pbt_node(t, pbt_leaf());
    return t;
}

inline Pbt right_comb(int n) {
    if (n < 1) throw std::invalid_argument("right_comb requires n >= 1");
    Pbt t = pbt_vertex();
    for (int i = 1; i < n; ++i) t = pbt_node(pbt_leaf(), t);
    return t;
}

/// Descents of a planar binary tree: leaves are labelled 0..n left to right,
/// and an inner leaf (label not 0 or n) is a descent when it is the left
/// child of its parent. The left comb has no descents under this convention.
inline std::set<int> descent_set(Pbt t) {
    std::set<int> out;
    int index = 0;
    auto walk = [&](auto&& self, Pbt node, bool is_left_child) -> void {
        if (node->is_leaf()) {
            if (is_left_child) out.insert(index);
            ++index;
            return;
        }
        self(self, node->left(), true);
        self(self, node->right(), false);
    };
    walk(walk, t, false);
    out.erase(0);
    out.erase(t->degree());
    return out;
}

inline int major_index(Pbt t) {
    int sum = 0;
    for (int d : descent_set(t)) sum += d;
    return sum;
}

struct PbtLess {
    bool operator()(Pbt a, Pbt b) const {
        if (a->degree() != b->degree()) return a->degree() < b->degree();
        return a->encoding() < b->encoding();
    }
};

}  // namespace omq
