#include "tfd/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfd/errors.hpp"

namespace tfd {

namespace {

std::string tuple_name(const std::array<int, 4>& t) {
    return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
           std::to_string(t[2]) + "," + std::to_string(t[3]) + ")";
}

// Inserts or cross-checks one closure image of a user entry.
void put(std::map<std::array<int, 4>, cd>& table, const std::array<int, 4>& t,
         cd v) {
    const auto [it, inserted] = table.emplace(t, v);
    if (!inserted && std::abs(it->second - v) > 1e-14) {
        throw ConfigError("vertex table: conflicting values for tuple " +
                          tuple_name(t));
    }
}

}  // namespace

InteractionModel::InteractionModel(Statistics st, std::vector<double> omega0,
                                   double lambda,
                                   const std::vector<VertexEntry>& entries)
    : st_(st), omega0_(std::move(omega0)), lambda_(lambda) {
    if (st_ == Statistics::Fermion) {
        throw UnsupportedError(
            "InteractionModel: fermionic contact vertices are not supported");
    }
    const int nm = n_modes();
    for (const VertexEntry& e : entries) {
        for (int idx : {e.j, e.k, e.l, e.m}) {
            if (idx < 0 || idx >= nm) {
                throw ConfigError("vertex table: mode index " +
                                  std::to_string(idx) + " out of range");
            }
        }
        // Bosonic pair symmetries of both the entry and its Hermitian
        // partner.
        for (auto [a, b] : {std::pair{e.j, e.k}, std::pair{e.k, e.j}}) {
            for (auto [c, d] : {std::pair{e.l, e.m}, std::pair{e.m, e.l}}) {
                put(table_, {a, b, c, d}, e.value);
                put(table_, {c, d, a, b}, std::conj(e.value));
            }
        }
    }
}

cd InteractionModel::vertex(int j, int k, int l, int m) const {
    const auto it = table_.find({j, k, l, m});
    return it == table_.end() ? cd(0.0, 0.0) : it->second;
}

double InteractionModel::hermiticity_defect() const {
    double worst = 0.0;
    for (const auto& [t, v] : table_) {
        worst = std::max(
            worst, std::abs(v - std::conj(vertex(t[2], t[3], t[0], t[1]))));
    }
    return worst;
}

namespace {

// Dense single-mode ladder matrix a_j on the truncated Fock space.
MatC lowering_matrix(const FockSpace& f, int j) {
    MatC a = MatC::Zero(static_cast<Eigen::Index>(f.dim()),
                        static_cast<Eigen::Index>(f.dim()));
    for (std::size_t i = 0; i < f.dim(); ++i) {
        std::size_t out = 0;
        double amp = 0.0;
        if (f.lower(i, j, out, amp)) {
            a(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(i)) =
                amp;
        }
    }
    return a;
}

}  // namespace

MatC InteractionModel::interaction_fock_matrix(const FockSpace& f) const {
    if (f.n_modes() != n_modes()) {
        throw DimensionError("interaction_fock_matrix: space has " +
                             std::to_string(f.n_modes()) + " modes, model " +
                             std::to_string(n_modes()));
    }
    std::vector<MatC> a, ad;
    for (int j = 0; j < n_modes(); ++j) {
        a.push_back(lowering_matrix(f, j));
        ad.push_back(a.back().adjoint());
    }
    const Eigen::Index d = static_cast<Eigen::Index>(f.dim());
    MatC h = MatC::Zero(d, d);
    for (const auto& [t, v] : table_) {
        h += (lambda_ * v) * (ad[t[0]] * ad[t[1]] * a[t[2]] * a[t[3]]);
    }
    return h;
}

MatC InteractionModel::total_fock_matrix(const FockSpace& f) const {
    MatC h = interaction_fock_matrix(f);
    for (int j = 0; j < n_modes(); ++j) {
        const MatC a = lowering_matrix(f, j);
        h += omega0_[static_cast<std::size_t>(j)] * (a.adjoint() * a);
    }
    return h;
}

InteractionModel resonant_ladder_model(double lambda) {
    return InteractionModel(Statistics::Boson, {1.0, 2.0, 3.0}, lambda,
                            {{0, 2, 1, 1, cd(1.0, 0.0)}});
}

InteractionModel augmented_ladder_model(double lambda) {
    return InteractionModel(Statistics::Boson, {1.0, 2.0, 3.0}, lambda,
                            {{0, 2, 1, 1, cd(1.0, 0.0)},
                             {0, 0, 1, 1, cd(0.5, 0.0)},
                             {1, 1, 2, 2, cd(0.4, 0.0)}});
}

}  // namespace tfd
