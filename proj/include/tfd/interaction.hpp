#pragma once

#include <array>
#include <map>
#include <vector>

#include "tfd/liouville.hpp"
#include "tfd/modes.hpp"

namespace tfd {

// Two-body contact coupling H_int = lambda sum V_{jklm} a+_j a+_k a_l a_m.
// The user supplies a sparse list of representative entries; the stored
// table is closed under the bosonic index symmetries (j <-> k, l <-> m) and
// under Hermitian pairing V_{jklm} = conj(V_{lmjk}).  Conflicting closures
// are rejected.  Only bosonic vertices are supported.
struct VertexEntry {
    int j, k, l, m;
    cd value;
};

class InteractionModel {
public:
    InteractionModel(Statistics st, std::vector<double> omega0, double lambda,
                     const std::vector<VertexEntry>& entries);

    Statistics statistics() const { return st_; }
    int n_modes() const { return static_cast<int>(omega0_.size()); }
    double lambda() const { return lambda_; }
    const std::vector<double>& omega0() const { return omega0_; }

    // Symmetrized coefficient; zero when the tuple is not in the table.
    cd vertex(int j, int k, int l, int m) const;
    const std::map<std::array<int, 4>, cd>& table() const { return table_; }

    // max |V_{jklm} - conj(V_{lmjk})| over the stored table (zero by
    // construction; exposed as a verification hook).
    double hermiticity_defect() const;

    // lambda * sum V_{jklm} a+_j a+_k a_l a_m on a truncated Fock space.
    MatC interaction_fock_matrix(const FockSpace& f) const;

    // H0 + H_int with H0 = sum_j omega0_j a+_j a_j.
    MatC total_fock_matrix(const FockSpace& f) const;

private:
    Statistics st_;
    std::vector<double> omega0_;
    double lambda_;
    std::map<std::array<int, 4>, cd> table_;
};

// Desk-scale reference model: three modes with bare frequencies (1, 2, 3)
// and the resonant pair-exchange vertex a+_0 a+_2 a_1 a_1 (+ images), which
// opens the 0 + 2 <-> 1 + 1 collision channel.
InteractionModel resonant_ladder_model(double lambda);

// The reference model plus two off-resonant vertices (a+_0 a+_0 a_1 a_1 at
// 0.5 and a+_1 a+_1 a_2 a_2 at 0.4) that generate nonzero principal-value
// energy shifts.
InteractionModel augmented_ladder_model(double lambda);

}  // namespace tfd
