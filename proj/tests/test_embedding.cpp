#include <doctest.h>

#include <stdexcept>

#include "mvrkm/embedding.hpp"
#include "test_helpers.hpp"

using namespace mvrkm;
using mvrkm::testing::random_matrix;

namespace {

TimeSeries series_1d(std::initializer_list<double> values) {
    TimeSeries s;
    s.values.resize(static_cast<Index>(values.size()), 1);
    Index i = 0;
    for (double v : values) s.values(i++, 0) = v;
    return s;
}

} // namespace

TEST_SUITE_BEGIN("embedding");

TEST_CASE("standardize: constant series with external unit-variance stats maps to zero") {
    TimeSeries ref = series_1d({4.0, 6.0}); // mean 5, population std 1
    TimeSeries s = series_1d({5.0, 5.0, 5.0});
    const TimeSeries out = standardize(s, ref);
    CHECK(out.values.cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(out.standardization.has_value());
    CHECK(out.standardization->mean(0) == 5.0);
    CHECK(out.standardization->stddev(0) == 1.0);
}

TEST_CASE("standardize: own statistics, population convention") {
    const TimeSeries out = standardize(series_1d({0.0, 2.0}));
    CHECK(out.values(0, 0) == doctest::Approx(-1.0));
    CHECK(out.values(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("standardize: round trip recovers the series") {
    TimeSeries s;
    s.values = random_matrix(30, 3, 17u, -5.0, 5.0);
    const TimeSeries back = destandardize(standardize(s));
    CHECK((back.values - s.values).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK_FALSE(back.standardization.has_value());
}

TEST_CASE("standardize: zero-variance column error names the column") {
    TimeSeries s;
    s.values = random_matrix(10, 3, 2u);
    s.values.col(1).setConstant(7.0);
    CHECK_THROWS_WITH_AS(standardize(s), doctest::Contains("column 1"), std::invalid_argument);
}

TEST_CASE("lag_embed: univariate enumeration at p=1") {
    const LaggedDataset d = lag_embed(series_1d({1, 2, 3, 4, 5}), 1);
    REQUIRE(d.size() == 3);
    Matrix X(3, 2), Y(3, 1);
    X << 2, 1, 3, 2, 4, 3;
    Y << 3, 4, 5;
    CHECK((d.X - X).cwiseAbs().maxCoeff() == 0.0);
    CHECK((d.Y - Y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lag_embed: length p+2 yields exactly one pair") {
    const LaggedDataset d = lag_embed(series_1d({1, 2, 3, 4}), 2);
    REQUIRE(d.size() == 1);
    Matrix X(1, 3);
    X << 3, 2, 1;
    CHECK((d.X - X).cwiseAbs().maxCoeff() == 0.0);
    CHECK(d.Y(0, 0) == 4.0);
}

TEST_CASE("lag_embed: per-dimension block layout") {
    TimeSeries s;
    s.values.resize(3, 2);
    s.values << 1, 10, 2, 20, 3, 30;
    const LaggedDataset d = lag_embed(s, 1);
    REQUIRE(d.size() == 1);
    Matrix X(1, 4), Y(1, 2);
    X << 2, 1, 20, 10;
    Y << 3, 30;
    CHECK((d.X - X).cwiseAbs().maxCoeff() == 0.0);
    CHECK((d.Y - Y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lag_embed: too-short series names the lag") {
    CHECK_THROWS_WITH_AS(lag_embed(series_1d({1, 2, 3}), 2), doctest::Contains("lag 2"),
                         std::invalid_argument);
}

TEST_CASE("lag_embed: index bookkeeping round trip") {
    TimeSeries s;
    s.values = random_matrix(40, 3, 23u);
    for (int p : {1, 3, 7}) {
        const LaggedDataset d = lag_embed(s, p);
        REQUIRE(d.size() == s.n() - p - 1);
        for (Index i = 0; i < d.size(); ++i) {
            for (Index k = 0; k < s.d(); ++k) {
                // newest entry of dimension k's block is series point i+p
                CHECK(d.X(i, k * (p + 1)) == s.values(i + p, k));
                // oldest entry is series point i
                CHECK(d.X(i, k * (p + 1) + p) == s.values(i, k));
            }
            CHECK((d.Y.row(i) - s.values.row(i + p + 1)).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("initial_window: newest first") {
    CHECK(initial_window(series_1d({1, 2, 3}), 1).isApprox((Vector(2) << 3, 2).finished()));
    CHECK(initial_window(series_1d({1, 2, 3}), 2).isApprox((Vector(3) << 3, 2, 1).finished()));
}

TEST_CASE("initial_window: consistent with lag_embed over the extended series") {
    TimeSeries s;
    s.values = random_matrix(25, 2, 41u);
    const int p = 4;
    // The window over the first n-1 points is the lag_embed row whose target
    // is the final point.
    TimeSeries head{s.values.topRows(24), std::nullopt};
    const Vector w = initial_window(head, p);
    const LaggedDataset d = lag_embed(s, p);
    CHECK((w.transpose() - d.X.row(d.size() - 1)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((d.Y.row(d.size() - 1) - s.values.row(24)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("shift_window: inserts newest and drops oldest per block") {
    Vector w(4); // d=2, p=1: blocks (x_t, x_{t-1}) per dimension
    w << 2, 1, 20, 10;
    Vector y(2);
    y << 3, 30;
    shift_window(w, y, 1);
    CHECK(w.isApprox((Vector(4) << 3, 2, 30, 20).finished()));
}

TEST_CASE("shift_window: repeated shifts reproduce lag_embed rows") {
    TimeSeries s;
    s.values = random_matrix(15, 2, 67u);
    const int p = 3;
    const LaggedDataset d = lag_embed(s, p);
    Vector w = d.X.row(0).transpose();
    for (Index i = 1; i < d.size(); ++i) {
        shift_window(w, s.values.row(i + p).transpose(), p);
        CHECK((w.transpose() - d.X.row(i)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_SUITE_END();
