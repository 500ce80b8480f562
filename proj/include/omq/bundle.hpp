#pragma once

#include <chrono>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "omq/dendriform.hpp"
#include "omq/omega.hpp"

namespace omq {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kBundleSchemaVersion = 1;

inline nlohmann::json rf_to_json(const RationalFunction& f) {
    auto poly = [](const QPolynomial& p) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : p.coefficients()) arr.push_back(to_string(c));
        if (p.is_zero()) arr.push_back("0");
        return arr;
    };
    return nlohmann::json{{"num", poly(f.num())}, {"den", poly(f.den())}};
}

inline RationalFunction rf_from_json(const nlohmann::json& j) {
    auto poly = [](const nlohmann::json& arr) {
        std::vector<BigRational> coeffs;
        for (const auto& item : arr) coeffs.push_back(parse_rational(item.get<std::string>()));
        return QPolynomial(std::move(coeffs));
    };
    return RationalFunction(poly(j.at("num")), poly(j.at("den")));
}

struct BundleTerm {
    int degree = 0;
    std::string key;
    RationalFunction coeff;

    friend bool operator==(const BundleTerm& a, const BundleTerm& b) {
        return a.degree == b.degree && a.key == b.key && a.coeff == b.coeff;
    }
};

/// A computed series with provenance, for export and re-import.
/// Terms are sorted by (degree, key); the JSON form round-trips losslessly.
struct SeriesBundle {
    std::string kind;
    int order = 0;
    std::vector<BundleTerm> terms;
    std::map<std::string, std::string> meta;

    friend bool operator==(const SeriesBundle& a, const SeriesBundle& b) {
        return a.kind == b.kind && a.order == b.order && a.terms == b.terms && a.meta == b.meta;
    }
};

inline const std::vector<std::string>& bundle_kinds() {
    static const std::vector<std::string> kinds = {
        "omega", "omega-q", "omega-0", "omega-inf", "qlog", "carlitz", "dend-omega-q"};
    return kinds;
}

namespace detail {
inline void append_tree_terms(SeriesBundle& b, const TreeSeries& s) {
    for (const auto& [t, c] : s.terms()) b.terms.push_back({t->degree(), canonical_encode(t), c});
}

inline void append_scalar_terms(SeriesBundle& b, const std::vector<RationalFunction>& values,
                                const std::string& prefix, int first_index) {
    for (size_t i = 0; i < values.size(); ++i) {
        if (values[i].is_zero()) continue;
        const int n = first_index + static_cast<int>(i);
        b.terms.push_back({n, prefix + std::to_string(n), values[i]});
    }
}
}  // namespace detail

/// Computes the requested series. `mode` selects the computation route where
/// two are available; empty picks the default for the kind.
inline SeriesBundle compute_bundle(const std::string& kind, int order, std::string mode = "") {
    const auto start = std::chrono::steady_clock::now();
    SeriesBundle b;
    b.kind = kind;
    b.order = order;
    if (kind == "omega") {
        mode = "recursion";
        detail::append_tree_terms(b, omega_classical(order));
    } else if (kind == "omega-q") {
        if (mode.empty()) mode = "recursion";
        if (mode == "recursion")
            detail::append_tree_terms(b, omega_q(order));
        else if (mode == "forks")
            detail::append_tree_terms(b, omega_q_via_forks(order));
        else
            throw std::invalid_argument("omega-q mode must be 'recursion' or 'forks'");
    } else if (kind == "omega-0") {
        mode = "specialization";
        detail::append_tree_terms(b, specialize(omega_q(order), SpecialPoint::Zero));
    } else if (kind == "omega-inf") {
        if (mode.empty()) mode = "limit";
        if (mode == "limit")
            detail::append_tree_terms(b, omega_infinity(order, InfinityMode::Limit));
        else if (mode == "closed-form")
            detail::append_tree_terms(b, omega_infinity(order, InfinityMode::ClosedForm));
        else
            throw std::invalid_argument("omega-inf mode must be 'limit' or 'closed-form'");
    } else if (kind == "qlog") {
        mode = "linear-tree image";
        detail::append_scalar_terms(b, extract_qlog(omega_q(order)), "x^", 1);
    } else if (kind == "carlitz") {
        mode = "corolla image";
        detail::append_scalar_terms(b, extract_carlitz(omega_q(order)), "beta_", 0);
    } else if (kind == "dend-omega-q") {
        if (mode.empty()) mode = "recursion";
        DendSeries s(order);
        if (mode == "recursion")
            s = omega_q_dend_recursive(order);
        else if (mode == "explicit")
            s = omega_q_dend_explicit(order);
        else
            throw std::invalid_argument("dend-omega-q mode must be 'recursion' or 'explicit'");
        for (const auto& [t, c] : s.part.terms()) b.terms.push_back({t->degree(), pbt_encode(t), c});
    } else {
        throw std::invalid_argument("unknown series kind: " + kind);
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    b.meta["tool_version"] = kToolVersion;
    b.meta["mode"] = mode;
    b.meta["elapsed_ms"] = std::to_string(elapsed.count());
    return b;
}

inline nlohmann::json to_json(const SeriesBundle& b) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : b.terms)
        terms.push_back({{"degree", t.degree}, {"key", t.key}, {"coeff", rf_to_json(t.coeff)}});
    return nlohmann::json{{"schema_version", kBundleSchemaVersion},
                          {"kind", b.kind},
                          {"order", b.order},
                          {"terms", std::move(terms)},
                          {"meta", b.meta}};
}

inline SeriesBundle bundle_from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<int>() != kBundleSchemaVersion)
        throw std::invalid_argument("unsupported bundle schema version");
    SeriesBundle b;
    b.kind = j.at("kind").get<std::string>();
    b.order = j.at("order").get<int>();
    for (const auto& t : j.at("terms"))
        b.terms.push_back({t.at("degree").get<int>(), t.at("key").get<std::string>(),
                           rf_from_json(t.at("coeff"))});
    for (const auto& [k, v] : j.at("meta").items()) b.meta[k] = v.get<std::string>();
    return b;
}

/// Plain-text rendering, one degree per block, denominators in cyclotomic
/// factored form.
inline std::string render_text(const SeriesBundle& b) {
    std::ostringstream out;
    out << "# " << b.kind << ", order " << b.order;
    if (auto it = b.meta.find("mode"); it != b.meta.end()) out << ", " << it->second;
    out << "\n";
    int current = -1;
    for (const auto& t : b.terms) {
        if (t.degree != current) {
            current = t.degree;
            out << "degree " << current << ":\n";
        }
        out << "  " << t.key << " : " << text_form(t.coeff) << "\n";
    }
    return out.str();
}

}  // namespace omq
