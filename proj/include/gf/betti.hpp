#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

namespace gf {

/// Map from cohomological degree to dimension; the universal output currency.
struct BettiTable {
    std::map<int, std::int64_t> dims;

    std::int64_t at(int degree) const {
        auto it = dims.find(degree);
        return it == dims.end() ? 0 : it->second;
    }

    void set(int degree, std::int64_t dim) { dims[degree] = dim; }

    /// Copy with zero entries dropped.
    BettiTable nonzero() const {
        BettiTable out;
        for (const auto& [k, d] : dims)
            if (d != 0) out.dims.emplace(k, d);
        return out;
    }

    std::int64_t euler_characteristic() const {
        std::int64_t chi = 0;
        for (const auto& [k, d] : dims) chi += (k % 2 == 0 ? d : -d);
        return chi;
    }

    bool operator==(const BettiTable& other) const { return dims == other.dims; }

    std::string to_string() const {
        std::ostringstream os;
        os << "{";
        bool first = true;
        for (const auto& [k, d] : dims) {
            if (!first) os << ", ";
            first = false;
            os << k << ":" << d;
        }
        os << "}";
        return os.str();
    }
};

} // namespace gf
