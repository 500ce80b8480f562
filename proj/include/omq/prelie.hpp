#pragma once

#include <utility>

#include "omq/series.hpp"

namespace omq {

namespace detail {

/// Result of a basis-level bilinear operation: keys with integer multiplicities.
template <typename Key>
using Expansion = std::vector<std::pair<Key, long long>>;

template <typename Key>
Expansion<Key> collect(std::vector<Key> raw) {
    using Less = typename KeyLessFor<Key>::type;
    std::sort(raw.begin(), raw.end(), Less{});
    Expansion<Key> out;
    for (const Key& k : raw) {
        if (!out.empty() && out.back().first == k)
            ++out.back().second;
        else
            out.emplace_back(k, 1);
    }
    return out;
}

/// Rebuilds t with extra children attached: `extra[i]` lists the new subtrees
/// of the i-th vertex of t in preorder.
inline Tree attach_subtrees(Tree t, const std::vector<std::vector<Tree>>& extra, size_t& cursor) {
    const size_t self = cursor++;
    std::vector<Tree> kids;
    kids.reserve(t->children().size() + extra[self].size());
    for (Tree c : t->children()) kids.push_back(attach_subtrees(c, extra, cursor));
    for (Tree s : extra[self]) kids.push_back(s);
    return make_tree(std::move(kids));
}

inline Tree attach_at(Tree t, size_t vertex, Tree s) {
    std::vector<std::vector<Tree>> extra(t->degree());
    extra[vertex].push_back(s);
    size_t cursor = 0;
    return attach_subtrees(t, extra, cursor);
}

}  // namespace detail

/// Grafting expansion: s attached by a new edge to each vertex of t, with
/// multiplicities counting coinciding shapes. Memoized.
inline const detail::Expansion<Tree>& graft_expansion(Tree t, Tree s) {
    static std::mutex mu;
    static std::map<std::pair<Tree, Tree>, detail::Expansion<Tree>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({t, s});
    if (it != memo.end()) return it->second;
    std::vector<Tree> raw;
    raw.reserve(t->degree());
    for (int v = 0; v < t->degree(); ++v) raw.push_back(detail::attach_at(t, v, s));
    return memo.emplace(std::make_pair(t, s), detail::collect(std::move(raw))).first->second;
}

/// Pre-Lie product t <- s of basis trees as a series.
inline TreeSeries graft(Tree t, Tree s, int order) {
    TreeSeries r(order);
    for (const auto& [k, m] : graft_expansion(t, s)) r.add_term(k, RationalFunction(m));
    return r;
}

/// Bilinear extension of grafting to series; truncates at the order of a.
template <typename Coef>
Series<Tree, Coef> graft(const Series<Tree, Coef>& a, const Series<Tree, Coef>& b) {
    Series<Tree, Coef> r(a.order());
    for (const auto& [ta, ca] : a.terms()) {
        for (const auto& [tb, cb] : b.terms()) {
            if (ta->degree() + tb->degree() > r.order()) continue;
            const Coef prod = ca * cb;
            for (const auto& [k, m] : graft_expansion(ta, tb))
                r.add_term(k, prod * BigRational(m));
        }
    }
    return r;
}

/// Star-product expansion on the forest basis: each root of g independently
/// stays free or attaches to one vertex of f.
inline detail::Expansion<Forest> star_expansion(const Forest& f, const Forest& g) {
    const auto& host = f.components();
    const auto& roots = g.components();

    // per-component vertex offsets of f
    std::vector<int> sizes;
    int total = 0;
    for (Tree t : host) {
        sizes.push_back(t->degree());
        total += t->degree();
    }

    std::vector<Forest> raw;
    // choice[j] in [-1, total): -1 keeps root j free, otherwise a vertex of f
    std::vector<int> choice(roots.size(), -1);
    auto emit = [&]() {
        std::vector<std::vector<std::vector<Tree>>> extra(host.size());
        for (size_t i = 0; i < host.size(); ++i) extra[i].assign(sizes[i], {});
        std::vector<Tree> free_comps;
        for (size_t j = 0; j < roots.size(); ++j) {
            if (choice[j] < 0) {
                free_comps.push_back(roots[j]);
                continue;
            }
            int v = choice[j];
            size_t comp = 0;
            while (v >= sizes[comp]) v -= sizes[comp++];
            extra[comp][v].push_back(roots[j]);
        }
        std::vector<Tree> comps = free_comps;
        for (size_t i = 0; i < host.size(); ++i) {
            size_t cursor = 0;
            comps.push_back(detail::attach_subtrees(host[i], extra[i], cursor));
        }
        raw.emplace_back(std::move(comps));
    };
    auto rec = [&](auto&& self, size_t j) -> void {
        if (j == roots.size()) {
            emit();
            return;
        }
        for (int v = -1; v < total; ++v) {
            choice[j] = v;
            self(self, j + 1);
        }
    };
    rec(rec, 0);
    return detail::collect(std::move(raw));
}

/// Associative product of the enveloping algebra on forest series.
template <typename Coef>
Series<Forest, Coef> star_product(const Series<Forest, Coef>& a, const Series<Forest, Coef>& b) {
    Series<Forest, Coef> r(a.order());
    for (const auto& [fa, ca] : a.terms()) {
        for (const auto& [fb, cb] : b.terms()) {
            if (fa.degree() + fb.degree() > r.order()) continue;
            const Coef prod = ca * cb;
            for (const auto& [k, m] : star_expansion(fa, fb)) r.add_term(k, prod * BigRational(m));
        }
    }
    return r;
}

/// Projection onto the tree span: keeps single-component forests only.
template <typename Coef>
Series<Tree, Coef> project_pi(const Series<Forest, Coef>& s) {
    Series<Tree, Coef> r(s.order());
    for (const auto& [f, c] : s.terms())
        if (f.is_tree()) r.add_term(f.components()[0], c);
    return r;
}

template <typename Coef>
Series<Forest, Coef> as_forest_series(const Series<Tree, Coef>& s) {
    Series<Forest, Coef> r(s.order());
    for (const auto& [t, c] : s.terms()) r.add_term(Forest(t), c);
    return r;
}

/// Sum over all functions from n new leaves to the vertices of t; new leaves
/// never receive attachments. Multiplicities count functions per shape.
inline detail::Expansion<Tree> multi_node_graft(Tree t, int n) {
    const int vertices = t->degree();
    std::map<Tree, long long, TreeLess> acc;
    std::vector<int> counts(vertices, 0);
    const BigInt nf = factorial(static_cast<unsigned>(n));
    auto rec = [&](auto&& self, int vertex, int remaining) -> void {
        if (vertex == vertices - 1) {
            counts[vertex] = remaining;
            // number of functions realizing these leaf counts: n! / prod k_v!
            BigInt ways = nf;
            for (int c : counts) ways /= factorial(static_cast<unsigned>(c));
            std::vector<std::vector<Tree>> extra(vertices);
            for (int v = 0; v < vertices; ++v)
                extra[v].assign(static_cast<size_t>(counts[v]), single_vertex());
            size_t cursor = 0;
            acc[detail::attach_subtrees(t, extra, cursor)] += ways.convert_to<long long>();
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            counts[vertex] = k;
            self(self, vertex + 1, remaining - k);
        }
    };
    rec(rec, 0, n);
    detail::Expansion<Tree> out(acc.begin(), acc.end());
    return out;
}

/// Substitution of a series into the marked vertex of a fork: n-fold symmetric
/// leaf attachment followed by a trunk of `trunk` vertices below. The 1/n!
/// prefactor is the caller's responsibility.
template <typename Coef>
Series<Tree, Coef> fork_substitute(int trunk, int leaves, const Series<Tree, Coef>& s) {
    Series<Tree, Coef> r(s.order());
    for (const auto& [t, c] : s.terms()) {
        if (t->degree() + trunk + leaves > r.order()) continue;
        for (const auto& [k, m] : multi_node_graft(t, leaves))
            r.add_term(chain_below(k, trunk), c * BigRational(m));
    }
    return r;
}

/// exp of s in the completed enveloping algebra: sum of star powers / k!.
inline ForestSeries exp_forest(const TreeSeries& s, int order) {
    if (s.min_degree() < 1) throw std::invalid_argument("exp_forest needs a series without degree-0 part");
    ForestSeries acc(order);
    acc.add_term(Forest{}, RationalFunction::one());
    const ForestSeries base = as_forest_series(s.truncated(order));
    ForestSeries power = base;
    BigRational inv_factorial(1);
    for (int k = 1; !power.empty(); ++k) {
        inv_factorial /= k;
        acc += power.scaled(RationalFunction(inv_factorial));
        power = star_product(power, base);
    }
    return acc;
}

/// Left action of the exponential group element on s:
/// sum_{k>=1} (1/k!) ((s <- s) <- ...) <- s with k factors.
inline TreeSeries exp_star_action(const TreeSeries& s, int order) {
    if (s.min_degree() < 1)
        throw std::invalid_argument("exp_star_action needs a series without degree-0 part");
    TreeSeries acc(order);
    TreeSeries chain = s.truncated(order);
    BigRational inv_factorial(1);
    for (int k = 1; !chain.empty(); ++k) {
        inv_factorial /= k;
        acc += chain.scaled(RationalFunction(inv_factorial));
        chain = graft(chain, s.truncated(order));
    }
    return acc;
}

/// Right action of exp(a) - 1 on x, expanded as iterated single-tree grafts
/// with factorial weights: sum_{k>=1} (1/k!) ((x <- a) <- ...) <- a.
template <typename Coef>
Series<Tree, Coef> act_exp_minus_one(const Series<Tree, Coef>& x, const Series<Tree, Coef>& a) {
    Series<Tree, Coef> acc(x.order());
    Series<Tree, Coef> chain = x;
    BigRational inv_factorial(1);
    for (int k = 1; !chain.empty(); ++k) {
        chain = graft(chain, a);
        inv_factorial /= k;
        acc += chain.scaled(inv_factorial);
    }
    return acc;
}

}  // namespace omq
