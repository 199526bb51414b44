#pragma once

#include <future>
#include <string>
#include <utility>
#include <vector>

#include "betti.hpp"
#include "error.hpp"
#include "matrix.hpp"

namespace gf {

/// One finite (degree, weight) window of a cochain complex: dimensions per
/// degree plus the differentials d_k : degree k -> degree k+1.
/// Shape compatibility and d.d = 0 are verified eagerly on construction so
/// that structure-constant bugs surface at the source.
class ComplexSlice {
public:
    ComplexSlice(std::vector<std::size_t> spaces, std::vector<RationalMatrix> maps)
        : spaces_(std::move(spaces)), maps_(std::move(maps)) {
        if (spaces_.empty())
            throw ShapeMismatchError("complex slice needs at least one degree");
        if (maps_.size() + 1 != spaces_.size())
            throw ShapeMismatchError("complex slice: " + std::to_string(spaces_.size()) +
                                     " spaces need " + std::to_string(spaces_.size() - 1) +
                                     " maps, got " + std::to_string(maps_.size()));
        for (std::size_t k = 0; k < maps_.size(); ++k) {
            if (maps_[k].cols() != spaces_[k] || maps_[k].rows() != spaces_[k + 1])
                throw ShapeMismatchError("complex slice: d_" + std::to_string(k) +
                                         " has shape " + std::to_string(maps_[k].rows()) + "x" +
                                         std::to_string(maps_[k].cols()) + ", expected " +
                                         std::to_string(spaces_[k + 1]) + "x" +
                                         std::to_string(spaces_[k]));
        }
        for (std::size_t k = 0; k + 1 < maps_.size(); ++k) {
            if (!(maps_[k + 1] * maps_[k]).is_zero())
                throw ShapeMismatchError("complex slice: d_" + std::to_string(k + 1) + " . d_" +
                                         std::to_string(k) + " != 0");
        }
    }

    const std::vector<std::size_t>& spaces() const { return spaces_; }
    const std::vector<RationalMatrix>& maps() const { return maps_; }

    /// dims[k] = spaces[k] - rank(d_k) - rank(d_{k-1}) for every degree of
    /// the slice. Ranks of distinct maps may be computed concurrently.
    BettiTable cohomology_dims(bool parallel = false) const {
        std::vector<std::size_t> ranks(maps_.size(), 0);
        if (parallel && maps_.size() > 1) {
            std::vector<std::future<std::size_t>> jobs;
            jobs.reserve(maps_.size());
            for (const auto& m : maps_)
                jobs.push_back(std::async(std::launch::async, [&m] { return m.rank(); }));
            for (std::size_t k = 0; k < jobs.size(); ++k) ranks[k] = jobs[k].get();
        } else {
            for (std::size_t k = 0; k < maps_.size(); ++k) ranks[k] = maps_[k].rank();
        }
        BettiTable table;
        for (std::size_t k = 0; k < spaces_.size(); ++k) {
            std::int64_t dim = static_cast<std::int64_t>(spaces_[k]);
            if (k < maps_.size()) dim -= static_cast<std::int64_t>(ranks[k]);
            if (k > 0) dim -= static_cast<std::int64_t>(ranks[k - 1]);
            table.set(static_cast<int>(k), dim);
        }
        return table;
    }

private:
    std::vector<std::size_t> spaces_;
    std::vector<RationalMatrix> maps_;
};

} // namespace gf
