#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "omq/rational.hpp"

namespace omq {

class RootedTree;

/// Interned handle; equal trees are the same object, so equality and hashing
/// are pointer operations.
using Tree = const RootedTree*;

/// Unordered rooted tree in canonical form.
///
/// Children are kept sorted by their canonical encoding, and every distinct
/// shape is constructed exactly once through the intern pool, so structural
/// equality is pointer equality.
class RootedTree {
  public:
    const std::vector<Tree>& children() const { return children_; }
    int degree() const { return degree_; }
    const std::string& encoding() const { return encoding_; }

  private:
    friend Tree make_tree(std::vector<Tree>);
    RootedTree(std::vector<Tree> children, int degree, std::string encoding)
        : children_(std::move(children)), degree_(degree), encoding_(std::move(encoding)) {}

    std::vector<Tree> children_;
    int degree_;
    std::string encoding_;
};

/// Builds (or finds) the canonical tree whose root carries the given subtrees.
inline Tree make_tree(std::vector<Tree> children) {
    std::sort(children.begin(), children.end(),
              [](Tree a, Tree b) { return a->encoding() < b->encoding(); });
    std::string enc = "[";
    int degree = 1;
    for (Tree c : children) {
        enc += c->encoding();
        degree += c->degree();
    }
    enc += "]";

    static std::mutex mu;
    static std::unordered_map<std::string_view, Tree> pool;
    std::lock_guard<std::mutex> lock(mu);
    auto it = pool.find(enc);
    if (it != pool.end()) return it->second;
    Tree t = new RootedTree(std::move(children), degree, std::move(enc));
    pool.emplace(t->encoding(), t);  // nodes live for the process lifetime
    return t;
}

inline Tree single_vertex() {
    static Tree vertex = make_tree({});
    return vertex;
}

inline int degree(Tree t) { return t->degree(); }

/// Wire format: "[" + child encodings in ascending lexicographic order + "]".
inline const std::string& canonical_encode(Tree t) { return t->encoding(); }

namespace detail {
inline Tree parse_tree_at(std::string_view text, size_t& pos) {
    if (pos >= text.size() || text[pos] != '[')
        throw std::invalid_argument("malformed tree encoding");
    ++pos;
    std::vector<Tree> children;
    while (pos < text.size() && text[pos] == '[') children.push_back(parse_tree_at(text, pos));
    if (pos >= text.size() || text[pos] != ']')
        throw std::invalid_argument("malformed tree encoding");
    ++pos;
    return make_tree(std::move(children));
}
}  // namespace detail

inline Tree parse_tree(std::string_view text) {
    size_t pos = 0;
    Tree t = detail::parse_tree_at(text, pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters in tree encoding");
    return t;
}

/// Root with n-1 leaf children.
inline Tree corolla(int n) {
    if (n < 1) throw std::invalid_argument("corolla requires n >= 1");
    return make_tree(std::vector<Tree>(n - 1, single_vertex()));
}

/// Chain of n vertices.
inline Tree linear_tree(int n) {
    if (n < 1) throw std::invalid_argument("linear_tree requires n >= 1");
    Tree t = single_vertex();
    for (int i = 1; i < n; ++i) t = make_tree({t});
    return t;
}

/// Grows a chain of `trunk` vertices under the root of t.
inline Tree chain_below(Tree t, int trunk) {
    for (int i = 0; i < trunk; ++i) t = make_tree({t});
    return t;
}

/// Trunk of `trunk` vertices, one vertex on top of it, and a corolla of
/// `leaves` leaves above that vertex; degree trunk + 1 + leaves.
inline Tree fork(int trunk, int leaves) {
    if (trunk < 0 || leaves < 0) throw std::invalid_argument("fork requires nonnegative sizes");
    return chain_below(corolla(leaves + 1), trunk);
}

/// Order of the automorphism group: product over vertices of the factorials
/// of the multiplicities of identical child subtrees.
inline BigInt aut_count(Tree t) {
    static std::mutex mu;
    static std::unordered_map<Tree, BigInt> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(t);
        if (it != memo.end()) return it->second;
    }
    BigInt a = 1;
    size_t i = 0;
    const auto& kids = t->children();
    while (i < kids.size()) {
        size_t j = i;
        while (j < kids.size() && kids[j] == kids[i]) ++j;
        const BigInt sub = aut_count(kids[i]);
        a *= factorial(static_cast<unsigned>(j - i));
        for (size_t r = i; r < j; ++r) a *= sub;
        i = j;
    }
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(t, a);
    return a;
}

/// All isomorphism classes with n vertices, in canonical-encoding order.
/// A tree of size n is a root carrying a multiset of smaller trees, chosen as
/// a non-increasing sequence to avoid duplicates.
inline const std::vector<Tree>& enumerate_trees(int n) {
    if (n < 1) throw std::invalid_argument("enumerate_trees requires n >= 1");
    static std::mutex mu;
    // a deque keeps earlier levels' references valid while new ones are added
    static std::deque<std::vector<Tree>> table;  // table[k] = trees with k+1 vertices
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(table.size()) < n) {
        const int m = static_cast<int>(table.size()) + 1;
        std::vector<Tree> out;
        if (m == 1) {
            out.push_back(single_vertex());
        } else {
            // flat list of candidate children, ordered by (size, encoding)
            std::vector<Tree> all;
            for (const auto& level : table) all.insert(all.end(), level.begin(), level.end());
            std::vector<Tree> chosen;
            auto rec = [&](auto&& self, int remaining, size_t max_index) -> void {
                if (remaining == 0) {
                    out.push_back(make_tree(chosen));
                    return;
                }
                for (size_t i = 0; i < max_index; ++i) {
                    if (all[i]->degree() > remaining) break;
                    chosen.push_back(all[i]);
                    self(self, remaining - all[i]->degree(), i + 1);
                    chosen.pop_back();
                }
            };
            // children usable for size m have at most m-1 vertices
            size_t limit = 0;
            while (limit < all.size() && all[limit]->degree() <= m - 1) ++limit;
            rec(rec, m - 1, limit);
        }
        std::sort(out.begin(), out.end(),
                  [](Tree a, Tree b) { return a->encoding() < b->encoding(); });
        table.push_back(std::move(out));
    }
    return table[n - 1];
}

/// Number of rooted trees with n vertices, by the classical convolution
/// recurrence; independent of enumerate_trees.
inline BigInt tree_count(int n) {
    if (n < 1) throw std::invalid_argument("tree_count requires n >= 1");
    std::vector<BigInt> a(n + 1);
    a[1] = 1;
    for (int m = 2; m <= n; ++m) {
        BigInt total = 0;
        for (int k = 1; k < m; ++k) {
            BigInt c = 0;
            for (int d = 1; d <= k; ++d)
                if (k % d == 0) c += d * a[d];
            total += c * a[m - k];
        }
        a[m] = total / (m - 1);
    }
    return a[n];
}

/// Key order for series terms: by degree, then canonical encoding.
struct TreeLess {
    bool operator()(Tree a, Tree b) const {
        if (a->degree() != b->degree()) return a->degree() < b->degree();
        return a->encoding() < b->encoding();
    }
};

}  // namespace omq
