#include "tfd/superops.hpp"

#include <vector>

namespace tfd {

namespace {
using Trip = Eigen::Triplet<cd>;

SpMatC from_triplets(std::size_t dim, std::vector<Trip>& trips) {
    SpMatC m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    return m;
}
}  // namespace

SpMatC check_annihilator(const LiouvilleSpace& L, int j) {
    const auto& F = L.fock();
    std::vector<Trip> trips;
    trips.reserve(L.dim());
    for (std::size_t i = 0; i < L.dim(); ++i) {
        std::size_t kt;
        double amp;
        if (F.lower(L.ket_of(i), j, kt, amp))
            trips.emplace_back(static_cast<Eigen::Index>(L.pair_index(kt, L.bra_of(i))),
                               static_cast<Eigen::Index>(i), cd(amp, 0.0));
    }
    return from_triplets(L.dim(), trips);
}

SpMatC tilde_annihilator(const LiouvilleSpace& L, int j) {
    const auto& F = L.fock();
    const Statistics st = L.statistics();
    std::vector<Trip> trips;
    trips.reserve(L.dim());
    for (std::size_t i = 0; i < L.dim(); ++i) {
        // |m><n| a_j^dagger = conj-transpose of a_j|n>: lower the bra index.
        std::size_t bt;
        double amp;
        if (!F.lower(L.bra_of(i), j, bt, amp)) continue;
        const cd phase = sqrt_sigma(st) *
                         static_cast<double>(sigma_pow(st, L.mu(i) - L.nu(i)));
        trips.emplace_back(static_cast<Eigen::Index>(L.pair_index(L.ket_of(i), bt)),
                           static_cast<Eigen::Index>(i), phase * amp);
    }
    return from_triplets(L.dim(), trips);
}

SpMatC check_creator(const LiouvilleSpace& L, int j) {
    return SpMatC(check_annihilator(L, j).adjoint());
}

SpMatC tilde_creator(const LiouvilleSpace& L, int j) {
    return SpMatC(tilde_annihilator(L, j).adjoint());
}

SpMatC check_number(const LiouvilleSpace& L, int j) {
    std::vector<Trip> trips;
    trips.reserve(L.dim());
    for (std::size_t i = 0; i < L.dim(); ++i) {
        const int mj = L.fock().occ(L.ket_of(i))[static_cast<std::size_t>(j)];
        if (mj != 0)
            trips.emplace_back(static_cast<Eigen::Index>(i),
                               static_cast<Eigen::Index>(i),
                               cd(static_cast<double>(mj), 0.0));
    }
    return from_triplets(L.dim(), trips);
}

SpMatC tilde_number(const LiouvilleSpace& L, int j) {
    std::vector<Trip> trips;
    trips.reserve(L.dim());
    for (std::size_t i = 0; i < L.dim(); ++i) {
        const int nj = L.fock().occ(L.bra_of(i))[static_cast<std::size_t>(j)];
        if (nj != 0)
            trips.emplace_back(static_cast<Eigen::Index>(i),
                               static_cast<Eigen::Index>(i),
                               cd(static_cast<double>(nj), 0.0));
    }
    return from_triplets(L.dim(), trips);
}

VecC identity_superstate(const LiouvilleSpace& L) {
    VecC v = VecC::Zero(static_cast<Eigen::Index>(L.dim()));
    for (std::size_t k = 0; k < L.fock_dim(); ++k)
        v(static_cast<Eigen::Index>(L.pair_index(k, k))) = cd(1.0, 0.0);
    return v;
}

VecC identity_bra_times(const LiouvilleSpace& L, const SpMatC& op) {
    const VecC I = identity_superstate(L);
    return VecC(op.transpose() * I);
}

SpMatC tilde_conjugation_matrix(const LiouvilleSpace& L) {
    const Statistics st = L.statistics();
    std::vector<Trip> trips;
    trips.reserve(L.dim());
    for (std::size_t i = 0; i < L.dim(); ++i) {
        const long k = L.mu(i) + L.nu(i);
        const cd phase = sqrt_sigma_pow(st, k * k);
        const std::size_t target = L.pair_index(L.bra_of(i), L.ket_of(i));
        trips.emplace_back(static_cast<Eigen::Index>(target),
                           static_cast<Eigen::Index>(i), phase);
    }
    return from_triplets(L.dim(), trips);
}

SpMatC tilde_of(const LiouvilleSpace& L, const SpMatC& X) {
    const SpMatC P = tilde_conjugation_matrix(L);
    SpMatC Xc = X.conjugate();
    SpMatC Pc = P.conjugate();
    SpMatC result = P * Xc * Pc;
    result.prune(cd(0, 0));
    result.makeCompressed();
    return result;
}

VecC tilde_of_state(const LiouvilleSpace& L, const VecC& v) {
    const SpMatC P = tilde_conjugation_matrix(L);
    return VecC(P * v.conjugate());
}

SpMatC hat_from_single_body(const LiouvilleSpace& L, const MatC& h, cd c) {
    const int N = L.n_modes();
    if (h.rows() != N || h.cols() != N)
        throw DimensionError("hat_from_single_body: coefficient matrix size");
    const auto dim = static_cast<Eigen::Index>(L.dim());
    SpMatC H(dim, dim);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const cd hij = h(i, j);
            if (hij == cd(0, 0)) continue;
            const SpMatC cpart = check_creator(L, i) * check_annihilator(L, j);
            const SpMatC tpart = tilde_creator(L, i) * tilde_annihilator(L, j);
            H += hij * cpart - std::conj(hij) * tpart;
        }
    }
    const cd c0 = c - std::conj(c);
    if (c0 != cd(0, 0)) {
        SpMatC id(dim, dim);
        id.setIdentity();
        H += c0 * id;
    }
    H.makeCompressed();
    return H;
}

SpMatC left_mult(const LiouvilleSpace& L, const MatC& A) {
    const auto d = static_cast<Eigen::Index>(L.fock_dim());
    if (A.rows() != d || A.cols() != d)
        throw DimensionError("left_mult: Fock matrix size");
    std::vector<Trip> trips;
    for (Eigen::Index mp = 0; mp < d; ++mp)
        for (Eigen::Index m = 0; m < d; ++m) {
            if (A(mp, m) == cd(0, 0)) continue;
            for (Eigen::Index n = 0; n < d; ++n)
                trips.emplace_back(mp * d + n, m * d + n, A(mp, m));
        }
    return from_triplets(L.dim(), trips);
}

SpMatC right_mult(const LiouvilleSpace& L, const MatC& A) {
    const auto d = static_cast<Eigen::Index>(L.fock_dim());
    if (A.rows() != d || A.cols() != d)
        throw DimensionError("right_mult: Fock matrix size");
    std::vector<Trip> trips;
    for (Eigen::Index n = 0; n < d; ++n)
        for (Eigen::Index np = 0; np < d; ++np) {
            if (A(n, np) == cd(0, 0)) continue;
            for (Eigen::Index m = 0; m < d; ++m)
                trips.emplace_back(m * d + np, m * d + n, A(n, np));
        }
    return from_triplets(L.dim(), trips);
}

SpMatC hat_commutator(const LiouvilleSpace& L, const MatC& H_fock) {
    SpMatC H = left_mult(L, H_fock);
    H -= right_mult(L, H_fock);
    H.prune(cd(0, 0));
    H.makeCompressed();
    return H;
}

}  // namespace tfd
