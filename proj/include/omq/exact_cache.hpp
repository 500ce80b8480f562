#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "omq/qpolynomial.hpp"

namespace omq {

/// Directory named by OMEGAQ_CACHE_DIR, if set. When absent every memoized
/// table is in-memory only.
inline std::optional<std::filesystem::path> exact_cache_dir() {
    const char* dir = std::getenv("OMEGAQ_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    return std::filesystem::path(dir);
}

namespace detail {
// one line per entry: "<index> <c0> <c1> ..." with rational coefficients
inline void write_poly_line(std::ostream& out, unsigned idx, const QPolynomial& p) {
    out << idx;
    for (const auto& c : p.coefficients()) out << ' ' << to_string(c);
    out << '\n';
}
}  // namespace detail

/// Seeds the cyclotomic and Bernoulli tables from the cache directory.
/// Unreadable or malformed files are ignored.
inline void load_exact_tables() {
    const auto dir = exact_cache_dir();
    if (!dir) return;
    {
        std::ifstream in(*dir / "cyclotomic.tbl");
        auto& table = detail::cyclotomic_table();
        std::lock_guard<std::mutex> lock(table.mu);
        std::string line;
        while (in && std::getline(in, line)) {
            std::istringstream fields(line);
            unsigned d = 0;
            if (!(fields >> d) || d == 0) continue;
            std::vector<BigRational> coeffs;
            std::string tok;
            bool bad = false;
            while (fields >> tok) {
                try {
                    coeffs.push_back(parse_rational(tok));
                } catch (const std::invalid_argument&) {
                    bad = true;
                    break;
                }
            }
            if (!bad && !coeffs.empty()) table.entries.emplace(d, QPolynomial(std::move(coeffs)));
        }
    }
    {
        std::ifstream in(*dir / "bernoulli.tbl");
        auto& table = detail::bernoulli_table();
        std::lock_guard<std::mutex> lock(table.mu);
        std::string line;
        while (in && std::getline(in, line)) {
            std::istringstream fields(line);
            size_t k = 0;
            std::string tok;
            if (!(fields >> k >> tok)) continue;
            if (k != table.values.size()) continue;  // values are consecutive from 0
            try {
                table.values.push_back(parse_rational(tok));
            } catch (const std::invalid_argument&) {
                break;
            }
        }
    }
}

/// Writes the current tables back to the cache directory, if configured.
inline void flush_exact_tables() {
    const auto dir = exact_cache_dir();
    if (!dir) return;
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    if (ec) return;
    {
        auto& table = detail::cyclotomic_table();
        std::lock_guard<std::mutex> lock(table.mu);
        std::ofstream out(*dir / "cyclotomic.tbl", std::ios::trunc);
        for (const auto& [d, p] : table.entries) detail::write_poly_line(out, d, p);
    }
    {
        auto& table = detail::bernoulli_table();
        std::lock_guard<std::mutex> lock(table.mu);
        std::ofstream out(*dir / "bernoulli.tbl", std::ios::trunc);
        for (size_t k = 0; k < table.values.size(); ++k)
            out << k << ' ' << to_string(table.values[k]) << '\n';
    }
}

}  // namespace omq
