#include "wellfn/kernel.hpp"

#include "wellfn/reference.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <omp.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace wellfn;

namespace {

const AquiferCase pumping_case{};

}  // namespace

TEST(TheisU, CaseArithmetic) {
    EXPECT_DOUBLE_EQ(theis_u(1050.0, 2.0, 0.2, 10000.0), 2.75625);
    EXPECT_DOUBLE_EQ(theis_u(1050.0, 18.0, 0.2, 10000.0), 0.30625);
    EXPECT_DOUBLE_EQ(theis_u(4200.0, 1.0, 0.2, 10000.0), 88.2);
    EXPECT_THROW(theis_u(0.0, 1.0, 0.2, 1.0), std::domain_error);
    EXPECT_THROW(theis_u(1.0, -1.0, 0.2, 1.0), std::domain_error);
}

TEST(Drawdown, ZeroPumping) {
    AquiferCase c = pumping_case;
    c.pumping_rate = 0.0;
    EXPECT_EQ(drawdown(1050.0, 2.0, c, reference_route), 0.0);
}

TEST(Drawdown, NormalizedEqualsWellFunction) {
    AquiferCase c = pumping_case;
    c.pumping_rate = 4.0 * std::numbers::pi * c.transmissivity;
    // E1(2.75625), 50 digits
    EXPECT_LT(oracle::rel_err(drawdown(1050.0, 2.0, c, reference_route), 0.017834264878547022937), 1e-13);
}

TEST(Drawdown, IncreasesWithTime) {
    for (ApproxKind k : closed_form_kinds) {
        double prev = 0.0;
        for (double t = 0.5; t < 40.0; t *= 1.3) {
            const double s = drawdown(2100.0, t, pumping_case, k);
            EXPECT_GT(s, prev) << to_string(k) << " t = " << t;
            prev = s;
        }
    }
}

TEST(DiscreteKernel, FirstSample) {
    const KernelSample s = discrete_kernel(1050.0, 2.0, pumping_case, reference_route);
    EXPECT_DOUBLE_EQ(s.u_on, 2.75625);
    EXPECT_DOUBLE_EQ(s.u_off, 5.5125);
    // (E1(2.75625) - E1(5.5125)) / (4 pi 1e4), 50 digits
    EXPECT_LT(oracle::rel_err(s.U, 1.3689361242462259583e-7), 1e-13);
    EXPECT_EQ(s.pe_percent, 0.0);
}

TEST(DiscreteKernel, OffTermVanishesAsTimeApproachesPulseEnd) {
    // U -> W(r^2 S / (4 T tau)) / (4 pi T) as t -> tau+
    const double limit = e1(1050.0 * 1050.0 * 0.2 / (4.0 * 1e4 * 1.0)) / (4.0 * std::numbers::pi * 1e4);
    double prev_gap = INFINITY;
    // the subtracted term shrinks toward rounding level by u_off ~ 30
    for (double t : {3.0, 2.0, 1.5, 1.25}) {
        const KernelSample s = discrete_kernel(1050.0, t, pumping_case, reference_route);
        const double on = e1(s.u_on) / (4.0 * std::numbers::pi * 1e4);
        const double gap = on - s.U;
        EXPECT_GT(gap, 0.0) << "t = " << t;
        EXPECT_LT(gap, prev_gap) << "t = " << t;
        prev_gap = gap;
    }
    EXPECT_LT(oracle::rel_err(discrete_kernel(1050.0, 1.0 + 1e-4, pumping_case, reference_route).U, limit), 1e-3);
    EXPECT_THROW(discrete_kernel(1050.0, 1.0, pumping_case, reference_route), std::domain_error);
    EXPECT_THROW(discrete_kernel(1050.0, 0.5, pumping_case, reference_route), std::domain_error);
}

TEST(DiscreteKernel, FarRadiusEarlyTimeStaysPositive) {
    for (ApproxKind k : closed_form_kinds) {
        const KernelSample s = discrete_kernel(4200.0, 2.0, pumping_case, k);
        EXPECT_DOUBLE_EQ(s.u_off, 88.2);
        EXPECT_GT(s.U, 0.0) << to_string(k);
        EXPECT_GT(s.U_ref, 0.0);
    }
}

TEST(DiscreteKernel, OffTermDroppedBeyondUnderflowCap) {
    AquiferCase c = pumping_case;
    c.storativity = 1.0;
    c.transmissivity = 1.0;
    // u_on = 25^2/(4*2) = 78.1, u_off = 625/4 = 156.25: both below the cap
    EXPECT_FALSE(discrete_kernel(25.0, 2.0, c, reference_route).off_term_dropped);
    // u_on = 75^2/(4 * 2.01) = 699.6, u_off = 75^2/(4 * 0.01) = 140625
    const KernelSample s = discrete_kernel(75.0, 2.01, c, reference_route);
    EXPECT_TRUE(s.off_term_dropped);
    EXPECT_GT(s.U, 0.0);
}

TEST(DiscreteKernel, SuperpositionOfShiftedDrawdowns) {
    for (double r : pumping_case.radii) {
        for (double t : pumping_case.times()) {
            const KernelSample k = discrete_kernel(r, t, pumping_case, reference_route);
            const double diff = drawdown(r, t, pumping_case, reference_route) -
                                drawdown(r, t - pumping_case.tau, pumping_case, reference_route);
            EXPECT_LT(oracle::rel_err(diff / pumping_case.pumping_rate, k.U), 1e-12);
        }
    }
}

TEST(KernelSweep, GridShapeAndOrder) {
    const auto samples = kernel_sweep(pumping_case, ApproxKind::proposed);
    ASSERT_EQ(samples.size(), 4u * 17u);
    EXPECT_EQ(samples.front().r, 1050.0);
    EXPECT_EQ(samples.front().t, 2.0);
    EXPECT_EQ(samples[16].t, 18.0);
    EXPECT_EQ(samples[17].r, 2100.0);
    for (const auto& s : samples) {
        EXPECT_LT(s.u_on, s.u_off);
        EXPECT_GT(s.U, 0.0);
    }
}

TEST(KernelSweep, ReferenceAgainstItselfIsExact) {
    for (const auto& s : kernel_sweep(pumping_case, reference_route)) {
        EXPECT_EQ(s.pe_percent, 0.0);
    }
}

TEST(KernelSweep, ProposedWithinTolerance) {
    const auto samples = kernel_sweep(pumping_case, ApproxKind::proposed);
    const KernelSummary p = summarize(samples, ApproxKind::proposed);
    EXPECT_LE(p.max_abs_pe, 0.15);
    EXPECT_GT(p.u_min, 0.30);
    EXPECT_LT(p.u_max, 89.0);
    const KernelSummary so = summarize(kernel_sweep(pumping_case, ApproxKind::swamee_ojha), ApproxKind::swamee_ojha);
    EXPECT_GT(so.max_abs_pe, 5.0 * p.max_abs_pe);
    EXPECT_GT(p.amplification, 0.0);
}

TEST(KernelSweep, ParallelMatchesSerial) {
    for (int threads : {1, 3}) {
        omp_set_num_threads(threads);
        const auto a = kernel_sweep(pumping_case, ApproxKind::barry);
        const auto b = kernel_sweep_serial(pumping_case, ApproxKind::barry);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].U, b[i].U);
            EXPECT_EQ(a[i].pe_percent, b[i].pe_percent);
        }
    }
}

TEST(AquiferCase, Validation) {
    AquiferCase c = pumping_case;
    c.t_start = 1.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = pumping_case;
    c.storativity = 1.5;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = pumping_case;
    c.radii.clear();
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_NO_THROW(pumping_case.validate());
    EXPECT_EQ(pumping_case.times().size(), 17u);
}

TEST(AquiferConfig, ParsesKeyValueLines) {
    const std::string text =
        "# test case\n"
        "T = 5000\n"
        "S=0.1\n"
        "radii = 100, 200\n"
        "t_start=3  # trailing comment\n"
        "t_end=5\n";
    const AquiferCase c = parse_aquifer_config(text);
    EXPECT_EQ(c.transmissivity, 5000.0);
    EXPECT_EQ(c.storativity, 0.1);
    ASSERT_EQ(c.radii.size(), 2u);
    EXPECT_EQ(c.radii[1], 200.0);
    EXPECT_EQ(c.times().size(), 3u);
    EXPECT_EQ(c.tau, 1.0);
    EXPECT_THROW(parse_aquifer_config("porosity=0.3\n"), std::invalid_argument);
    EXPECT_THROW(parse_aquifer_config("T=abc\n"), std::invalid_argument);
    EXPECT_THROW(parse_aquifer_config("just words\n"), std::invalid_argument);
}
