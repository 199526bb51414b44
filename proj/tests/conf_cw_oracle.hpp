#pragma once

// Independent oracle for the S_k action on the homology of the configuration
// space of k points on the circle. Each component (a cyclic order) carries an
// explicit cell circle with k vertices (the equally spaced configurations);
// relabeling permutations act cellularly. H_0 and H_1 with their induced
// actions are computed from the chain level, not from character shortcuts.

#include <map>
#include <utility>
#include <vector>

#include <gf/circle.hpp>
#include <gf/invariants.hpp>
#include <gf/matrix.hpp>

namespace gftest {

struct ConfCwModel {
    int k = 0;
    std::vector<gf::CyclicOrder> components;
    // vertex (component c, slot j): index c * k + j; edges likewise
    std::size_t vertices = 0, edges = 0;

    gf::RationalMatrix boundary; // d_1 : edges -> vertices

    explicit ConfCwModel(int k_) : k(k_), components(gf::conf_components(k_)) {
        const std::size_t per = static_cast<std::size_t>(k);
        vertices = components.size() * per;
        edges = components.size() * per;
        boundary = gf::RationalMatrix(vertices, edges);
        for (std::size_t c = 0; c < components.size(); ++c)
            for (std::size_t j = 0; j < per; ++j) {
                // edge j runs from vertex j to vertex j+1 (mod k)
                boundary.add_at(c * per + (j + 1) % per, c * per + j, 1);
                boundary.add_at(c * per + j, c * per + j, -1);
            }
    }

    std::size_t component_index(const gf::CyclicOrder& c) const {
        for (std::size_t i = 0; i < components.size(); ++i)
            if (components[i] == c) return i;
        throw std::logic_error("unknown component");
    }

    // cellular action: the configuration with basepoint slot j in component C
    // maps to basepoint slot j + (position of sigma^{-1}(1) in C) - 1 of
    // sigma . C; edges map to edges with orientation preserved
    std::pair<std::size_t, std::size_t> map_cell(const gf::Permutation& sigma, std::size_t c,
                                                 std::size_t j) const {
        const auto& order = components[c];
        const gf::CyclicOrder target = gf::apply_permutation(sigma, order);
        const std::size_t tc = component_index(target);
        const int preimage_of_1 = sigma.inverse()(0) + 1; // 1-based label
        std::size_t t_star = 0;
        for (std::size_t t = 0; t < order.size(); ++t)
            if (order[t] == preimage_of_1) t_star = t;
        const std::size_t tj = (j + t_star) % static_cast<std::size_t>(k);
        return {tc, tj};
    }

    gf::RationalMatrix vertex_action(const gf::Permutation& sigma) const {
        const std::size_t per = static_cast<std::size_t>(k);
        gf::RationalMatrix m(vertices, vertices);
        for (std::size_t c = 0; c < components.size(); ++c)
            for (std::size_t j = 0; j < per; ++j) {
                auto [tc, tj] = map_cell(sigma, c, j);
                m.set(tc * per + tj, c * per + j, 1);
            }
        return m;
    }

    gf::RationalMatrix edge_action(const gf::Permutation& sigma) const {
        // the action is a rotation on each component circle, so edge j of C
        // maps to edge (j + t_star) of sigma.C with orientation +1
        return vertex_action(sigma); // identical index bookkeeping
    }

    /// Verifies the action is chain-level: d . rho_edges = rho_vertices . d.
    bool chain_map(const gf::Permutation& sigma) const {
        auto lhs = boundary * edge_action(sigma);
        auto rhs = vertex_action(sigma) * boundary;
        return lhs == rhs;
    }

    /// dim of invariants of H_0 under the S_k action twisted by sign^t.
    std::size_t h0_invariant_dim(int sign_twist) const {
        // H_0 = vertices / im d_1; representatives: vertex 0 of each component
        // invariance system: for generators sigma of S_k, (rho - twist) x in im(d)
        std::vector<gf::Permutation> gens = generators();
        // basis of H_0: component classes; action permutes components
        const std::size_t nc = components.size();
        gf::RationalMatrix system(gens.size() * nc, nc);
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            const int twist = twist_sign(gens[gi], sign_twist);
            for (std::size_t c = 0; c < nc; ++c) {
                auto [tc, tj] = map_cell(gens[gi], c, 0);
                (void)tj; // all vertices of a component are homologous
                system.add_at(gi * nc + tc, c, twist);
                system.add_at(gi * nc + c, c, -1);
            }
        }
        return nc - system.rank();
    }

    /// dim of invariants of H_1 under the S_k action twisted by sign^t.
    std::size_t h1_invariant_dim(int sign_twist) const {
        // H_1 = ker d_1: spanned by the full circles z_C = sum_j e_{C,j};
        // compute the kernel honestly and express the action on it
        auto kernel = boundary.kernel_basis();
        const std::size_t nz = kernel.size();
        // matrix of kernel basis vectors (columns)
        gf::RationalMatrix kmat(edges, nz);
        for (std::size_t v = 0; v < nz; ++v)
            for (const auto& [i, val] : kernel[v])
                kmat.set(static_cast<std::size_t>(i), v, val);

        std::vector<gf::Permutation> gens = generators();
        gf::RationalMatrix system(gens.size() * edges, nz);
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            const int twist = twist_sign(gens[gi], sign_twist);
            gf::RationalMatrix moved = edge_action(gens[gi]) * kmat;
            for (const auto& [key, val] : moved.entries())
                system.add_at(gi * edges + key.first, key.second, gf::Rational(twist * val));
            for (const auto& [key, val] : kmat.entries())
                system.add_at(gi * edges + key.first, key.second, -val);
        }
        // x invariant iff rho(kmat x) * twist = kmat x for all generators
        return nz - system.rank();
    }

private:
    std::vector<gf::Permutation> generators() const {
        std::vector<gf::Permutation> gens;
        if (k >= 2) gens.push_back(gf::Permutation::transposition(k, 0, 1));
        if (k >= 3) gens.push_back(gf::Permutation::full_cycle(k));
        return gens;
    }

    static int twist_sign(const gf::Permutation& sigma, int sign_twist) {
        int s = 1;
        for (int t = 0; t < sign_twist; ++t) s *= sigma.sign();
        return s;
    }
};

} // namespace gftest
