#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "phasespace/grid.hpp"
#include "phasespace/io.hpp"
#include "phasespace/reconstruct.hpp"
#include "test_support.hpp"

namespace ps = phasespace;
using ps::Complex;
using ps::testing::near_complex;

namespace {

ps::GridDocument sample_document() {
    const auto spec = ps::GridSpec::make(-1.5, 2.0, -1.0, 0.5, 8, 5, ps::AxisSemantics::AlphaPlane);
    ps::GridDocument doc{ps::sample(spec, [](Complex a) { return std::exp(-std::norm(a)) * Complex(1.0 / 3.0, a.imag()); }),
                         ps::Json::object(), ps::Json::object()};
    doc.meta["field"] = "q";
    doc.meta["gain"] = 2.0;
    doc.meta["alpha1"] = ps::Json::array({2.0, -0.1});
    doc.summary["integral"] = ps::Json::array({0.99, 0.0});
    doc.summary["has_negative_values"] = false;
    return doc;
}

} // namespace

TEST(AxisSemantics, NamesRoundTrip) {
    for (auto s : {ps::AxisSemantics::AlphaPlane, ps::AxisSemantics::XPQuadratures}) {
        EXPECT_EQ(ps::axis_semantics_from_string(ps::to_string(s)), s);
    }
    EXPECT_THROW(ps::axis_semantics_from_string("polar"), ps::DomainError);
}

TEST(QuadratureConvention, AlphaFromXP) {
    const Complex a = ps::alpha_from_quadratures(1.0, -2.0);
    EXPECT_TRUE(near_complex(a, Complex(1.0, -2.0) / std::sqrt(2.0), 1e-16));
    const auto [x, p] = ps::quadratures_from_alpha(a);
    EXPECT_NEAR(x, 1.0, 1e-15);
    EXPECT_NEAR(p, -2.0, 1e-15);
}

TEST(GridSpec, ValidatesAndSpaces) {
    EXPECT_THROW(ps::GridSpec::make(0.0, 1.0, 0.0, 1.0, 1, 5, ps::AxisSemantics::AlphaPlane), ps::DomainError);
    EXPECT_THROW(ps::GridSpec::make(1.0, 1.0, 0.0, 1.0, 3, 5, ps::AxisSemantics::AlphaPlane), ps::DomainError);
    EXPECT_THROW(ps::GridSpec::make(0.0, NAN, 0.0, 1.0, 3, 5, ps::AxisSemantics::AlphaPlane), ps::DomainError);
    const auto g = ps::GridSpec::make(-2.0, 2.0, -1.0, 1.0, 5, 3, ps::AxisSemantics::AlphaPlane);
    EXPECT_DOUBLE_EQ(g.dx(), 1.0);
    EXPECT_DOUBLE_EQ(g.dy(), 1.0);
    EXPECT_DOUBLE_EQ(g.x(4), 2.0);
    EXPECT_EQ(g.size(), 15u);
    const auto p = g.padded(2, 1);
    EXPECT_EQ(p.nx, 9);
    EXPECT_EQ(p.ny, 5);
    EXPECT_DOUBLE_EQ(p.x_min, -4.0);
    EXPECT_DOUBLE_EQ(p.dx(), g.dx());
    EXPECT_THROW(g.padded(-1, 0), ps::DomainError);
}

TEST(Grid2D, SamplingLayoutAndStatistics) {
    const auto spec = ps::GridSpec::make(-1.0, 1.0, 0.0, 2.0, 3, 5, ps::AxisSemantics::AlphaPlane);
    const auto g = ps::sample(spec, [](Complex a) { return a; });
    EXPECT_EQ(g.at(2, 1), Complex(1.0, 0.5));
    EXPECT_EQ(g.values[2 * 5 + 1], g.at(2, 1));
    EXPECT_DOUBLE_EQ(g.min_real(), -1.0);
    EXPECT_DOUBLE_EQ(g.max_real(), 1.0);
    EXPECT_DOUBLE_EQ(g.max_abs_imag(), 2.0);
    const auto ones = ps::sample(spec, [](Complex) { return Complex(1.0); });
    EXPECT_TRUE(near_complex(ones.integral(), 15 * 1.0 * 0.5, 1e-14));
}

TEST(Grid2D, XPGridsReceiveAlpha) {
    const auto spec = ps::GridSpec::make(-1.0, 1.0, -1.0, 1.0, 3, 3, ps::AxisSemantics::XPQuadratures);
    const auto g = ps::sample(spec, [](Complex a) { return a; });
    EXPECT_TRUE(near_complex(g.at(2, 0), Complex(1.0, -1.0) / std::sqrt(2.0), 1e-16));
}

TEST(Grid2D, DifferenceRequiresMatchingShape) {
    const auto a = ps::Grid2D::zeros(ps::GridSpec::make(0, 1, 0, 1, 3, 3, ps::AxisSemantics::AlphaPlane));
    const auto b = ps::Grid2D::zeros(ps::GridSpec::make(0, 1, 0, 1, 3, 4, ps::AxisSemantics::AlphaPlane));
    EXPECT_THROW(ps::Grid2D::max_abs_difference(a, b), ps::DomainError);
}

TEST(GridCsv, LayoutAndRoundTrip) {
    const auto doc = sample_document();
    std::ostringstream out;
    ps::write_grid_csv(out, doc);
    const std::string text = out.str();
    EXPECT_NE(text.find("\nx,y,re,im\n"), std::string::npos);
    EXPECT_EQ(text.rfind("# semantics: alpha_plane", 0), 0u);
    EXPECT_NE(text.find("# has_negative_values: false"), std::string::npos);

    std::istringstream in(text);
    const auto back = ps::read_grid_csv(in);
    EXPECT_EQ(back.grid.spec.nx, 8);
    EXPECT_EQ(back.grid.spec.ny, 5);
    EXPECT_EQ(back.grid.spec.semantics, ps::AxisSemantics::AlphaPlane);
    EXPECT_EQ(back.grid.values, doc.grid.values); // %.17g is exact for doubles
    EXPECT_EQ(back.meta, doc.meta);
    EXPECT_EQ(back.summary, doc.summary);
}

TEST(GridCsv, RejectsMalformedInput) {
    std::istringstream bad_header("# semantics: alpha_plane\nx;y;re;im\n");
    EXPECT_THROW(ps::read_grid_csv(bad_header), ps::DomainError);
    std::istringstream missing("x,y,re,im\n0,0,1,0\n");
    EXPECT_THROW(ps::read_grid_csv(missing), ps::DomainError);
    std::istringstream short_rows(
        "# semantics: alpha_plane\n# x_min: 0\n# x_max: 1\n# nx: 2\n# y_min: 0\n# y_max: 1\n# ny: 2\nx,y,re,im\n0,0,1,0\n");
    EXPECT_THROW(ps::read_grid_csv(short_rows), ps::DomainError);
}

TEST(GridJson, LayoutAndRoundTrip) {
    const auto doc = sample_document();
    std::ostringstream out;
    ps::write_grid_json(out, doc);
    const auto j = ps::Json::parse(out.str());
    EXPECT_EQ(j.at("nx"), 8);
    EXPECT_EQ(j.at("axes").at("semantics"), "alpha_plane");
    EXPECT_EQ(j.at("values").size(), 40u);
    EXPECT_EQ(j.at("meta").at("field"), "q");

    std::istringstream in(out.str());
    const auto back = ps::read_grid_json(in);
    EXPECT_EQ(back.grid.values, doc.grid.values);
    EXPECT_EQ(back.meta, doc.meta);
    EXPECT_EQ(back.summary, doc.summary);
    EXPECT_DOUBLE_EQ(back.grid.spec.x_max, 2.0);
}

TEST(DensityMatrixJson, RoundTrip) {
    const auto rho = ps::cat_density_matrix(ps::CatStateSpec(Complex(1.0, 0.3), Complex(-1.0, 0.2), Complex(0.0, 1.0)), 6);
    const auto j = ps::to_json(rho);
    EXPECT_EQ(j.at("n_max"), 6);
    EXPECT_EQ(j.at("entries").size(), 49u);
    EXPECT_EQ(j.at("entries")[1][0].get<double>(), rho(0, 1).real()); // row-major
    const auto back = ps::density_matrix_from_json(ps::Json::parse(j.dump()));
    EXPECT_EQ(ps::FockDensityMatrix::max_abs_difference(rho, back), 0.0);
    auto broken = j;
    broken["n_max"] = 7;
    EXPECT_THROW(ps::density_matrix_from_json(broken), ps::DomainError);
}

TEST(RoundTripReportJson, CarriesFields) {
    const auto report = ps::roundtrip_report(ps::CatStateSpec(1.0, -1.0, 1.0), 20);
    const auto j = ps::to_json(report);
    EXPECT_EQ(j.at("n_max"), 20);
    EXPECT_TRUE(j.contains("max_abs_deviation"));
    EXPECT_TRUE(j.contains("trace_deviation"));
    EXPECT_EQ(j.at("per_term_checks").size(), 4u);
}
