#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "phasespace/amplifier.hpp"
#include "phasespace/quasiprob.hpp"
#include "test_support.hpp"

namespace ps = phasespace;
using ps::Complex;
using ps::testing::near_complex;
using ps::testing::near_relative;

namespace {

const double kInvPi = 1.0 / ps::kPi;

double laguerre(int n, double x) {
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

// Closed-form W(x, p) of |n⟩ in quadrature variables.
double wigner_fock_oracle(int n, double x, double p) {
    const double r2 = x * x + p * p;
    return (n % 2 ? -1.0 : 1.0) * kInvPi * std::exp(-r2) * laguerre(n, 2.0 * r2);
}

// (1/π)⟨α|ρ|α⟩ from Fock coefficients.
double q_fock_oracle(const ps::FockDensityMatrix& rho, Complex alpha) {
    const auto c = ps::coherent_fock_coeffs(alpha, rho.n_max);
    Complex s{};
    for (int j = 0; j <= rho.n_max; ++j) {
        for (int k = 0; k <= rho.n_max; ++k) s += std::conj(c[j]) * rho(j, k) * c[k];
    }
    return kInvPi * s.real();
}

// W(x, p) of a cat from its coherent dyads: the Wigner function of |γ⟩⟨β| is
// (2/π)⟨β|γ⟩ e^{-2(α-γ)(α*-β*)} in the α plane, and half of that per unit dx dp.
double wigner_cat_oracle(const ps::CatStateSpec& spec, double x, double p) {
    const Complex a = ps::alpha_from_quadratures(x, p);
    Complex s{};
    for (const auto& d : ps::cat_dyads(spec)) {
        s += d.kappa * ps::coherent_overlap(d.beta, d.gamma) * std::exp(-2.0 * (a - d.gamma) * std::conj(a - d.beta));
    }
    return kInvPi * s.real();
}

ps::GridSpec xp_grid(double half, int n) {
    return ps::GridSpec::make(-half, half, -half, half, n, n, ps::AxisSemantics::XPQuadratures);
}

} // namespace

TEST(PTerm, CentersAndKind) {
    const Complex beta(0.7, -0.3), gamma(-1.1, 0.5), kappa(0.2, 0.1);
    const auto t = ps::PTerm::from_dyad({kappa, beta, gamma});
    EXPECT_EQ(t.kind, ps::TermKind::OffDiagonal);
    EXPECT_TRUE(near_complex(t.center_r, (std::conj(beta) + gamma) / 2.0, 1e-16));
    EXPECT_TRUE(near_complex(t.center_i, Complex(0.0, 1.0) * (std::conj(beta) - gamma) / 2.0, 1e-16));
    EXPECT_TRUE(near_complex(t.center_r + Complex(0.0, 1.0) * t.center_i, gamma, 1e-15));
    EXPECT_TRUE(near_complex(t.center_r - Complex(0.0, 1.0) * t.center_i, std::conj(beta), 1e-15));
    EXPECT_TRUE(near_complex(t.weight(), kappa * ps::coherent_overlap(beta, gamma), 1e-16));

    const auto d = ps::PTerm::from_dyad({1.0, beta, beta});
    EXPECT_EQ(d.kind, ps::TermKind::Diagonal);
    EXPECT_TRUE(near_complex(d.center_r, beta.real(), 0.0));
    EXPECT_TRUE(near_complex(d.center_i, beta.imag(), 0.0));
    EXPECT_EQ(ps::to_string(ps::TermKind::Diagonal), "diagonal");
}

TEST(PTerm, ScaledCenters) {
    const auto t = ps::PTerm::from_dyad({1.0, Complex(1.0, 0.2), Complex(-0.5, 0.4)});
    const auto s = t.with_scaled_centers(2.5);
    EXPECT_TRUE(near_complex(s.center_r, 2.5 * t.center_r, 1e-15));
    EXPECT_TRUE(near_complex(s.center_i, 2.5 * t.center_i, 1e-15));
    EXPECT_EQ(s.weight(), t.weight());
}

TEST(PCatTerms, CoherentStateHasOneDiagonalTerm) {
    const auto rep = ps::p_cat_terms(ps::CatStateSpec::coherent(Complex(1.2, -0.4)));
    ASSERT_EQ(rep.terms.size(), 1u);
    EXPECT_EQ(rep.terms[0].kind, ps::TermKind::Diagonal);
    EXPECT_TRUE(near_complex(rep.terms[0].weight(), 1.0, 1e-15));
}

TEST(PCatTerms, WeightsOfTheFourTerms) {
    const Complex a1(1.0, 0.5), a2(-0.8, 0.1), z(0.3, -0.6);
    const ps::CatStateSpec spec(a1, a2, z);
    const double A2 = spec.norm() * spec.norm();
    const auto rep = ps::p_cat_terms(spec);
    ASSERT_EQ(rep.terms.size(), 4u);
    EXPECT_TRUE(near_complex(rep.terms[0].weight(), A2, 1e-15));
    EXPECT_TRUE(near_complex(rep.terms[1].weight(), A2 * std::norm(z), 1e-15));
    EXPECT_TRUE(near_complex(rep.terms[2].weight(), A2 * z * ps::coherent_overlap(a1, a2), 1e-15));
    EXPECT_TRUE(near_complex(rep.terms[3].weight(), A2 * std::conj(z) * ps::coherent_overlap(a2, a1), 1e-15));
    EXPECT_TRUE(near_complex(rep.terms[3].weight(), std::conj(rep.terms[2].weight()), 1e-15));
}

TEST(PCatTerms, EvenCatCrossTermCenters) {
    const double a0 = 1.7;
    const auto rep = ps::p_cat_terms(ps::CatStateSpec(a0, -a0, std::polar(1.0, 0.9)));
    EXPECT_TRUE(near_complex(rep.terms[2].center_r, 0.0, 1e-15));
    EXPECT_TRUE(near_complex(rep.terms[2].center_i, Complex(0.0, a0), 1e-15));
}

TEST(PCatTerms, PartnerTermIsTheSwap) {
    const auto rep = ps::p_cat_terms(ps::CatStateSpec(Complex(0.4, 1.0), Complex(-1.0, 0.2), Complex(0.5, 0.5)));
    const auto& t2 = rep.terms[2];
    const auto& t3 = rep.terms[3];
    EXPECT_EQ(t2.beta, t3.gamma);
    EXPECT_EQ(t2.gamma, t3.beta);
    EXPECT_TRUE(near_complex(t3.kappa, std::conj(t2.kappa), 1e-16));
}

TEST(QFunction, CoherentPeak) {
    const Complex a(0.9, -1.3);
    EXPECT_NEAR(ps::q_function(ps::CatStateSpec::coherent(a), a), kInvPi, 1e-15);
}

TEST(QFunction, DecaysFarAway) {
    const ps::CatStateSpec spec(2.0, -2.0, 1.0);
    EXPECT_LT(ps::q_function(spec, Complex(12.0, 5.0)), 1e-40);
}

TEST(QFunction, CatAtOriginMatchesFockAmplitude) {
    const ps::CatStateSpec spec(2.0, -2.0, 1.0);
    const Complex psi0 = spec.norm() * (ps::coherent_fock_coeffs(2.0, 0)[0] + ps::coherent_fock_coeffs(-2.0, 0)[0]);
    EXPECT_NEAR(ps::q_function(spec, 0.0), kInvPi * std::norm(psi0), 1e-10);
}

TEST(QFunction, MatchesFockOracleOnDisk) {
    const ps::CatStateSpec specs[] = {{2.0, -2.0, 1.0}, {Complex(1.0, 1.0), Complex(-0.5, 0.3), Complex(0.0, 1.0)}};
    for (const auto& spec : specs) {
        const auto rho = ps::cat_density_matrix(spec, 40);
        for (double r = 0.0; r <= 4.0; r += 1.0) {
            for (double th = 0.0; th < 6.2; th += 0.7) {
                const Complex a = std::polar(r, th);
                const double q = ps::q_function(spec, a);
                EXPECT_NEAR(q, q_fock_oracle(rho, a), 1e-10) << a;
                EXPECT_GE(q, 0.0);
            }
        }
    }
}

TEST(QFunction, TermsSumToFunction) {
    const ps::CatStateSpec spec(Complex(0.5, 1.0), Complex(1.0, -1.0), Complex(-0.7, 0.2));
    const auto rep = ps::p_cat_terms(spec);
    const Complex a(0.3, -0.2);
    Complex s{};
    for (const auto& t : rep.terms) s += ps::q_term(t, a);
    EXPECT_NEAR(s.real(), ps::q_function(spec, a), 1e-15);
    EXPECT_LE(std::abs(s.imag()), 1e-15);
}

TEST(QTilde, OriginIsWeight) {
    const auto rep = ps::p_cat_terms(ps::CatStateSpec(Complex(1.0, 0.2), Complex(-1.0, 0.3), Complex(0.0, 1.0)));
    for (const auto& t : rep.terms) EXPECT_TRUE(near_complex(ps::q_tilde_term(t, 0.0), t.weight(), 1e-16));
}

TEST(QTilde, DiagonalTermHasGaussianModulus) {
    const auto t = ps::PTerm::from_dyad({0.7, Complex(1.1, -0.6), Complex(1.1, -0.6)});
    for (Complex xi : {Complex(0.5, 0.0), Complex(-1.0, 2.0), Complex(3.0, 1.0)}) {
        EXPECT_NEAR(std::abs(ps::q_tilde_term(t, xi)), 0.7 * std::exp(-std::norm(xi) / 4.0), 1e-15);
    }
}

TEST(QTilde, MatchesBruteForceFourierIntegral) {
    const auto rep = ps::p_cat_terms(ps::CatStateSpec(Complex(1.0, 0.5), Complex(-1.0, 0.2), Complex(0.6, -0.4)));
    const double h = 0.05;
    const int n = 361; // [-9, 9]
    std::vector<double> axis(n);
    for (int i = 0; i < n; ++i) axis[i] = -9.0 + i * h;
    for (const auto& t : rep.terms) {
        std::vector<Complex> q(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) q[i * n + j] = ps::q_term(t, Complex(axis[i], axis[j]));
        }
        for (Complex xi : {Complex(0.0, 0.0), Complex(1.0, -0.5), Complex(-2.0, 2.5), Complex(0.0, 4.0), Complex(3.0, -2.0)}) {
            Complex s{};
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    s += q[i * n + j] * std::exp(Complex(0.0, -(xi.real() * axis[i] + xi.imag() * axis[j])));
                }
            }
            EXPECT_TRUE(near_complex(s * h * h, ps::q_tilde_term(t, xi), 1e-7)) << "xi=" << xi;
        }
    }
}

TEST(PRegularized, PeakOfDiagonalTerm) {
    const Complex a(0.4, -1.0);
    const auto rep = ps::p_cat_terms(ps::CatStateSpec::coherent(a));
    for (double s : {0.1, 0.5}) {
        EXPECT_TRUE(near_complex(ps::p_regularized_eval(rep, s, a), 1.0 / (2.0 * ps::kPi * s * s), 1e-12));
    }
}

TEST(PRegularized, DiagonalTermIntegratesToOne) {
    const Complex a(0.4, -1.0);
    const auto rep = ps::p_cat_terms(ps::CatStateSpec::coherent(a));
    const auto spec = ps::GridSpec::make(-2.0, 3.0, -3.5, 1.5, 201, 201, ps::AxisSemantics::AlphaPlane);
    const auto g = ps::sample(spec, [&](Complex al) { return ps::p_regularized_eval(rep, 0.2, al); });
    EXPECT_TRUE(near_complex(g.integral(), 1.0, 1e-8));
}

TEST(PRegularized, MatchesAmplifiedP) {
    const ps::CatStateSpec spec(1.5, -1.5, 1.0);
    for (double g : {1.5, 2.0}) {
        const ps::AmplifierGain gain(g);
        ps::PRepresentation scaled;
        for (const auto& t : ps::p_cat_terms(spec).terms) scaled.terms.push_back(t.with_scaled_centers(g));
        for (Complex a : {Complex(0.0), Complex(1.0, 0.5), Complex(-2.0, 1.0), Complex(3.0, -0.2)}) {
            const Complex reg = ps::p_regularized_eval(scaled, gain.sigma(), a);
            EXPECT_NEAR(reg.real(), ps::amplified_p(spec, gain, a), 1e-10);
            EXPECT_LE(std::abs(reg.imag()), 1e-10);
        }
    }
}

TEST(PRegularized, OverflowGuardPropagates) {
    const auto rep = ps::p_cat_terms(ps::CatStateSpec(2.0, -2.0, 1.0));
    EXPECT_THROW(ps::p_regularized_eval(rep, 0.05, 0.0), ps::RegularizationError);
}

TEST(WignerFock, OriginValues) {
    const auto g = ps::wigner_fock(0, xp_grid(6.0, 13));
    EXPECT_NEAR(g.at(6, 6).real(), kInvPi, 1e-12);
    const auto g2 = ps::wigner_fock(2, xp_grid(6.0, 13));
    EXPECT_NEAR(g2.at(6, 6).real(), kInvPi, 1e-6);
    const auto g1 = ps::wigner_fock(1, xp_grid(6.0, 13));
    EXPECT_NEAR(g1.at(6, 6).real(), -kInvPi, 1e-12);
}

TEST(WignerFock, MatchesLaguerreOracle) {
    const auto spec = xp_grid(5.0, 41);
    for (int n : {0, 1, 2, 3, 5}) {
        const auto g = ps::wigner_fock(n, spec);
        double worst = 0.0;
        for (int i = 0; i < spec.nx; ++i) {
            for (int j = 0; j < spec.ny; ++j) {
                worst = std::max(worst, std::abs(g.at(i, j) - wigner_fock_oracle(n, spec.x(i), spec.y(j))));
            }
        }
        EXPECT_LT(worst, 1e-12) << "n=" << n;
    }
}

TEST(WignerFock, SecondFockStateIsNegativeSomewhere) {
    const auto g = ps::wigner_fock(2, xp_grid(6.0, 61));
    EXPECT_LT(g.min_real(), 0.0);
    EXPECT_LE(g.max_abs_imag(), 1e-14);
}

TEST(WignerFock, MarginalIsPositionDensity) {
    const auto spec = xp_grid(6.0, 201);
    for (int n : {0, 1, 2}) {
        const auto g = ps::wigner_fock(n, spec);
        for (int i = 0; i < spec.nx; ++i) {
            double marginal = 0.0;
            for (int j = 0; j < spec.ny; ++j) marginal += g.at(i, j).real();
            marginal *= spec.dy();
            const double psi = ps::hermite_function(n, spec.x(i));
            EXPECT_NEAR(marginal, psi * psi, 1e-6);
        }
    }
}

TEST(WignerFock, NormalizedOverThePlane) {
    const auto g = ps::wigner_fock(3, xp_grid(7.0, 141));
    EXPECT_TRUE(near_complex(g.integral(), 1.0, 1e-8));
}

TEST(WignerFock, RequiresQuadratureGridAndWarnsWhenSmall) {
    const auto alpha = ps::GridSpec::make(-3, 3, -3, 3, 5, 5, ps::AxisSemantics::AlphaPlane);
    EXPECT_THROW(ps::wigner_fock(0, alpha), ps::DomainError);
    EXPECT_THROW(ps::wigner_fock(-1, xp_grid(3.0, 5)), ps::DomainError);
    ps::Warnings w;
    ps::wigner_fock(4, xp_grid(3.0, 11), &w);
    EXPECT_TRUE(w.contains("truncation"));
    ps::Warnings quiet;
    ps::wigner_fock(1, xp_grid(8.0, 11), &quiet);
    EXPECT_TRUE(quiet.empty());
}

TEST(WignerDensity, FockProjectorMatchesFockPath) {
    auto rho = ps::FockDensityMatrix::zero(4);
    rho.entries(2, 2) = 1.0;
    const auto spec = xp_grid(5.0, 31);
    EXPECT_LT(ps::Grid2D::max_abs_difference(ps::wigner_density(rho, spec), ps::wigner_fock(2, spec)), 1e-13);
}

TEST(WignerDensity, CatMatchesDyadOracle) {
    const ps::CatStateSpec specs[] = {{1.5, -1.5, 1.0}, {Complex(1.0, 0.5), Complex(-0.5, -1.0), Complex(0.0, 1.0)}};
    const auto grid = xp_grid(5.0, 41);
    for (const auto& spec : specs) {
        const auto w = ps::wigner_density(ps::cat_density_matrix(spec, 40), grid);
        double worst = 0.0;
        for (int i = 0; i < grid.nx; ++i) {
            for (int j = 0; j < grid.ny; ++j) {
                worst = std::max(worst, std::abs(w.at(i, j) - wigner_cat_oracle(spec, grid.x(i), grid.y(j))));
            }
        }
        EXPECT_LT(worst, 1e-10);
        EXPECT_LE(w.max_abs_imag(), 1e-12);
    }
}
