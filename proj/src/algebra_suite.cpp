#include "tfd/algebra_suite.hpp"

#include <algorithm>
#include <cmath>

#include "tfd/states.hpp"
#include "tfd/superops.hpp"

namespace tfd {

double AlgebraReport::max_residual() const {
    double r = 0.0;
    for (const auto& c : checks) r = std::max(r, c.residual);
    return r;
}

bool AlgebraReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const AlgebraCheck& c) { return c.pass(); });
}

namespace {

// sigma-graded commutator [A,B]_sigma = AB - sigma BA.
SpMatC graded_comm(const SpMatC& A, const SpMatC& B, int s) {
    SpMatC r = A * B;
    r -= static_cast<double>(s) * SpMatC(B * A);
    return r;
}

double interior_column_max(const LiouvilleSpace& L, const SpMatC& M) {
    double r = 0.0;
    for (int col = 0; col < M.outerSize(); ++col) {
        if (!L.interior(static_cast<std::size_t>(col))) continue;
        for (SpMatC::InnerIterator it(M, col); it; ++it)
            r = std::max(r, std::abs(it.value()));
    }
    return r;
}

double full_max(const SpMatC& M) {
    double r = 0.0;
    for (int col = 0; col < M.outerSize(); ++col)
        for (SpMatC::InnerIterator it(M, col); it; ++it)
            r = std::max(r, std::abs(it.value()));
    return r;
}

SpMatC sparse_identity(std::size_t dim) {
    SpMatC id(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    id.setIdentity();
    return id;
}

// Dense Fock-space matrix of a_j.
MatC fock_annihilator(const FockSpace& F, int j) {
    const auto d = static_cast<Eigen::Index>(F.dim());
    MatC A = MatC::Zero(d, d);
    for (std::size_t i = 0; i < F.dim(); ++i) {
        std::size_t out;
        double amp;
        if (F.lower(i, j, out, amp))
            A(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(i)) = amp;
    }
    return A;
}

}  // namespace

AlgebraReport run_algebra_suite(const LiouvilleSpace& L, double interior_tol) {
    AlgebraReport rep;
    const Statistics st = L.statistics();
    const int s = sigma(st);
    const cd rs = sqrt_sigma(st);
    const bool fermionic = (st == Statistics::Fermion);
    const double core_tol = fermionic ? 0.0 : interior_tol;
    const int N = L.n_modes();

    std::vector<SpMatC> ac, acd, at, atd;
    for (int j = 0; j < N; ++j) {
        ac.push_back(check_annihilator(L, j));
        at.push_back(tilde_annihilator(L, j));
        acd.push_back(check_creator(L, j));
        atd.push_back(tilde_creator(L, j));
    }
    const SpMatC id = sparse_identity(L.dim());
    const VecC I = identity_superstate(L);

    auto add = [&rep](const std::string& name, double residual, double tol) {
        rep.checks.push_back({name, residual, tol});
    };

    // Canonical pairs: [a_j, a_k^dag]_sigma = delta_jk within each sector.
    {
        double r1 = 0.0, r2 = 0.0;
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                SpMatC c1 = graded_comm(ac[j], acd[k], s);
                SpMatC c2 = graded_comm(at[j], atd[k], s);
                if (j == k) {
                    c1 -= id;
                    c2 -= id;
                }
                r1 = std::max(r1, interior_column_max(L, c1));
                r2 = std::max(r2, interior_column_max(L, c2));
            }
        add("commutator_check_canonical", r1, core_tol);
        add("commutator_tilde_canonical", r2, core_tol);
    }

    // Like-type annihilator pairs vanish.
    {
        double r = 0.0;
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                r = std::max(r, interior_column_max(L, graded_comm(ac[j], ac[k], s)));
                r = std::max(r, interior_column_max(L, graded_comm(at[j], at[k], s)));
            }
        add("commutator_like_pairs_vanish", r, core_tol);
    }

    // All check/tilde mixed pairs vanish.
    {
        double r = 0.0;
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                r = std::max(r, interior_column_max(L, graded_comm(ac[j], at[k], s)));
                r = std::max(r, interior_column_max(L, graded_comm(ac[j], atd[k], s)));
                r = std::max(r, interior_column_max(L, graded_comm(acd[j], at[k], s)));
                r = std::max(r, interior_column_max(L, graded_comm(acd[j], atd[k], s)));
            }
        add("commutator_mixed_vanish", r, core_tol);
    }

    // Number superoperators are exactly diagonal with occupation eigenvalues.
    {
        double r = 0.0;
        for (int j = 0; j < N; ++j) {
            SpMatC d1 = SpMatC(acd[j] * ac[j]) - check_number(L, j);
            SpMatC d2 = SpMatC(atd[j] * at[j]) - tilde_number(L, j);
            r = std::max(r, full_max(d1));
            r = std::max(r, full_max(d2));
        }
        // Bosonic products pay (sqrt m)^2 - m roundoff; fermions are exact.
        add("number_superoperator_spectra", r, core_tol);
    }

    // Right/left thermal-state relations on |I>> (exact on truncation).
    {
        double rket = 0.0, rbra = 0.0;
        for (int j = 0; j < N; ++j) {
            rket = std::max(rket, (VecC(at[j] * I) - rs * VecC(acd[j] * I))
                                      .cwiseAbs()
                                      .maxCoeff());
            rket = std::max(rket, (VecC(atd[j] * I) - rs * VecC(ac[j] * I))
                                      .cwiseAbs()
                                      .maxCoeff());
            const cd srs = static_cast<double>(s) * rs;
            rbra = std::max(rbra, (identity_bra_times(L, at[j]) -
                                   srs * identity_bra_times(L, acd[j]))
                                      .cwiseAbs()
                                      .maxCoeff());
            rbra = std::max(rbra, (identity_bra_times(L, atd[j]) -
                                   srs * identity_bra_times(L, ac[j]))
                                      .cwiseAbs()
                                      .maxCoeff());
        }
        add("identity_ket_relations", rket, 0.0);
        add("identity_bra_relations", rbra, 0.0);
    }

    // Tilde conjugation maps check to tilde generators and back.
    {
        double r = 0.0;
        for (int j = 0; j < N; ++j) {
            r = std::max(r, full_max(SpMatC(tilde_of(L, ac[j]) - at[j])));
            r = std::max(r, full_max(SpMatC(tilde_of(L, acd[j]) - atd[j])));
            r = std::max(r, full_max(SpMatC(tilde_of(L, at[j]) - ac[j])));
        }
        add("tilde_exchanges_sectors", r, 0.0);
    }

    // Antilinearity and the product rule.
    {
        const cd c1(0.7, -0.4), c2(-0.3, 1.1);
        SpMatC X = c1 * ac[0] + c2 * acd[N - 1];
        SpMatC want = std::conj(c1) * at[0] + std::conj(c2) * atd[N - 1];
        double r = full_max(SpMatC(tilde_of(L, X) - want));
        SpMatC prod = ac[0] * acd[N - 1];
        SpMatC wprod = at[0] * atd[N - 1];
        r = std::max(r, full_max(SpMatC(tilde_of(L, prod) - wprod)));
        add("tilde_antilinear_product", r, core_tol);
    }

    // Involution and the state-level morphism tilde(Xv) = tilde(X) tilde(v).
    {
        SpMatC X = ac[0] * atd[N - 1];
        double r = full_max(SpMatC(tilde_of(L, tilde_of(L, X)) - X));
        VecC v = VecC::Zero(static_cast<Eigen::Index>(L.dim()));
        for (Eigen::Index i = 0; i < v.size(); ++i)
            v(i) = cd(std::cos(0.3 * static_cast<double>(i + 1)),
                      std::sin(0.17 * static_cast<double>(i + 2)));
        VecC lhs = tilde_of_state(L, VecC(X * v));
        VecC rhs = VecC(tilde_of(L, X) * tilde_of_state(L, v));
        r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
        add("tilde_involution_morphism", r, interior_tol);
    }

    // |I>> is tilde-invariant.
    add("identity_superstate_tilde_invariant",
        (tilde_of_state(L, I) - I).cwiseAbs().maxCoeff(), 0.0);

    // Adjoint-tilde action on |I>>: for even A = a_j^dag a_k the tilde
    // adjoint acts like the check operator; for odd A = a_j it picks up
    // sqrt(sigma).
    {
        double r = 0.0;
        for (int j = 0; j < N; ++j) {
            r = std::max(r, (VecC(atd[j] * I) - rs * VecC(ac[j] * I))
                                .cwiseAbs()
                                .maxCoeff());
        }
        SpMatC Acheck = acd[0] * ac[N - 1];
        SpMatC Atilde_dag = SpMatC(atd[0] * at[N - 1]).adjoint();
        r = std::max(r, (VecC(Atilde_dag * I) - VecC(Acheck * I)).cwiseAbs().maxCoeff());
        add("tilde_adjoint_on_identity", r, 0.0);
    }

    // Reconstruct every basis superstate from creation strings applied to
    // the pair vacuum with the statistics phase (sigma sqrt(sigma))^{nu^2}.
    {
        const auto& F = L.fock();
        double r = 0.0;
        for (std::size_t i = 0; i < L.dim(); ++i) {
            const auto& m = F.occ(L.ket_of(i));
            const auto& n = F.occ(L.bra_of(i));
            VecC v = VecC::Zero(static_cast<Eigen::Index>(L.dim()));
            v(static_cast<Eigen::Index>(L.pair_index(0, 0))) = cd(1.0, 0.0);
            for (int j = N; j-- > 0;)
                for (int p = 0; p < n[static_cast<std::size_t>(j)]; ++p)
                    v = atd[j] * v;
            for (int j = N; j-- > 0;)
                for (int p = 0; p < m[static_cast<std::size_t>(j)]; ++p)
                    v = acd[j] * v;
            const long nu = L.nu(i);
            cd pre = fermionic ? sqrt_sigma_pow(st, 3 * nu * nu) : cd(1.0, 0.0);
            double fac = 1.0;
            for (int j = 0; j < N; ++j) {
                for (int p = 2; p <= m[static_cast<std::size_t>(j)]; ++p)
                    fac *= static_cast<double>(p);
                for (int p = 2; p <= n[static_cast<std::size_t>(j)]; ++p)
                    fac *= static_cast<double>(p);
            }
            v = (pre / std::sqrt(fac)) * v;
            VecC e = VecC::Zero(static_cast<Eigen::Index>(L.dim()));
            e(static_cast<Eigen::Index>(i)) = cd(1.0, 0.0);
            r = std::max(r, (v - e).cwiseAbs().maxCoeff());
        }
        add("basis_generation_phases", r, fermionic ? 0.0 : interior_tol);
    }

    // Single-body hat map vs the left/right commutator oracle.
    {
        MatC h = MatC::Zero(N, N);
        for (int j = 0; j < N; ++j) h(j, j) = cd(1.0 + 0.5 * j, 0.0);
        if (N > 1) {
            h(0, N - 1) = cd(0.2, 0.1);
            h(N - 1, 0) = cd(0.2, -0.1);
        }
        MatC Hf = MatC::Zero(static_cast<Eigen::Index>(L.fock_dim()),
                             static_cast<Eigen::Index>(L.fock_dim()));
        for (int i2 = 0; i2 < N; ++i2)
            for (int j2 = 0; j2 < N; ++j2)
                if (h(i2, j2) != cd(0, 0))
                    Hf += h(i2, j2) * (fock_annihilator(L.fock(), i2).adjoint() *
                                       fock_annihilator(L.fock(), j2));
        SpMatC direct = hat_from_single_body(L, h, cd(0.7, 0.0));
        SpMatC oracle = hat_commutator(L, Hf);
        add("hat_map_matches_commutator", full_max(SpMatC(direct - oracle)),
            interior_tol);
        add("hat_of_identity_vanishes",
            full_max(hat_from_single_body(L, MatC::Zero(N, N), cd(2.5, 0.0))), 0.0);
    }

    // <<I|I>> counts the Fock dimension.
    add("identity_pairing_counts_dimension",
        std::abs(I.dot(I).real() - static_cast<double>(L.fock_dim())), 0.0);

    // Trace pairing against an independently accumulated truncated moment.
    {
        std::vector<double> n(static_cast<std::size_t>(N), fermionic ? 0.5 : 0.25);
        VecC rho = geometric_superstate(L, n);
        double r = 0.0;
        for (int j = 0; j < N; ++j) {
            const SpMatC num = check_creator(L, j) * check_annihilator(L, j);
            const cd measured = identity_bra_times(L, num).cwiseProduct(rho).sum();
            long double expect = 0.0L;
            for (std::size_t k = 0; k < L.fock_dim(); ++k)
                expect += static_cast<long double>(
                              L.fock().occ(k)[static_cast<std::size_t>(j)]) *
                          static_cast<long double>(
                              rho(static_cast<Eigen::Index>(L.pair_index(k, k)))
                                  .real());
            r = std::max(r, std::abs(measured.real() - static_cast<double>(expect)));
            r = std::max(r, std::abs(measured.imag()));
        }
        add("trace_pairing_occupation", r, interior_tol);
    }

    return rep;
}

}  // namespace tfd
