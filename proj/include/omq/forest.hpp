#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "omq/rooted_tree.hpp"

namespace omq {

/// Multiset of rooted trees; the empty forest is the unit of the enveloping
/// algebra. Components are kept sorted, so forests compare structurally.
class Forest {
  public:
    Forest() = default;

    explicit Forest(std::vector<Tree> components) : comps_(std::move(components)) {
        std::sort(comps_.begin(), comps_.end(), TreeLess{});
        for (Tree t : comps_) degree_ += t->degree();
    }

    explicit Forest(Tree t) : Forest(std::vector<Tree>{t}) {}

    const std::vector<Tree>& components() const { return comps_; }
    int degree() const { return degree_; }
    bool empty() const { return comps_.empty(); }
    size_t size() const { return comps_.size(); }

    bool is_tree() const { return comps_.size() == 1; }

    friend bool operator==(const Forest& a, const Forest& b) { return a.comps_ == b.comps_; }
    friend bool operator<(const Forest& a, const Forest& b) {
        if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
        return std::lexicographical_compare(a.comps_.begin(), a.comps_.end(), b.comps_.begin(),
                                            b.comps_.end(), TreeLess{});
    }

    /// Wire format: comma-joined sorted tree encodings inside braces.
    std::string encode() const {
        std::string out = "{";
        for (size_t i = 0; i < comps_.size(); ++i) {
            if (i) out += ",";
            out += comps_[i]->encoding();
        }
        out += "}";
        return out;
    }

  private:
    std::vector<Tree> comps_;
    int degree_ = 0;
};

inline Forest parse_forest(std::string_view text) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw std::invalid_argument("malformed forest encoding");
    std::vector<Tree> comps;
    std::string_view body = text.substr(1, text.size() - 2);
    size_t start = 0;
    int depth = 0;
    for (size_t i = 0; i < body.size(); ++i) {
        if (body[i] == '[') ++depth;
        if (body[i] == ']') --depth;
        if (body[i] == ',' && depth == 0) {
            comps.push_back(parse_tree(body.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (start < body.size()) comps.push_back(parse_tree(body.substr(start)));
    return Forest(std::move(comps));
}

struct ForestLess {
    bool operator()(const Forest& a, const Forest& b) const { return a < b; }
};

}  // namespace omq
