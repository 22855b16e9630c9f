#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "linkenh/analysis.hpp"

using namespace linkenh;

TEST_CASE("theoretical_cer reproduces the frozen reference values") {
    CHECK(theoretical_cer(1e-3) == doctest::Approx(0.31899942).epsilon(1e-8));
    CHECK(theoretical_cer(1e-8) ==
          doctest::Approx(3.8399926e-6).epsilon(1e-7));
    CHECK(theoretical_cer(0.0) == 0.0);
    CHECK(theoretical_cer(1.0) == 1.0);
    CHECK_THROWS(theoretical_cer(-0.1));
    CHECK_THROWS(theoretical_cer(1.1));
}

TEST_CASE("closed form and binomial sum agree to 12 significant digits") {
    for (double p : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9}) {
        const double a = theoretical_cer(p);
        const double b = theoretical_cer_sum(p);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(a, b));
    }
}

TEST_CASE("theoretical_pe against the arbitrary-precision oracle") {
    // expected values computed once with a 30-digit big-float implementation
    // of the same tail sum and frozen here
    struct Case { double p; int m, t; double expected; };
    const Case cases[] = {
        {0.007972055930055972, 8, 10, 3.6590490224964831e-7},
        {1e-2, 8, 10, 2.8375948904808361e-6},
        {0.05, 8, 10, 0.041013769594110719},
        {1e-2, 8, 2, 0.0072236197997702077},
        {0.2, 4, 2, 0.160417581400064},
        {1e-4, 8, 1, 2.5081372152080965e-6},
    };
    for (const auto& c : cases)
        CHECK(theoretical_pe(c.p, c.m, c.t) ==
              doctest::Approx(c.expected).epsilon(1e-7)); // 6+ significant digits
}

TEST_CASE("theoretical_pe edge cases") {
    CHECK(theoretical_pe(0.0, 8, 10) == 0.0);
    CHECK(theoretical_pe(1.0, 8, 0) == 1.0); // only the j = 255 term: 255/255
    CHECK_THROWS(theoretical_pe(1.2, 8, 10));
    CHECK_THROWS(theoretical_pe(0.5, 8, 255));
}

TEST_CASE("monotone in p, anti-monotone in t") {
    const double ps[] = {1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.3};
    for (int t : {1, 4, 10, 16}) {
        double prev = -1.0;
        for (double p : ps) {
            const double v = theoretical_pe(p, 8, t);
            CHECK(v >= prev);
            prev = v;
        }
    }
    for (double p : ps) {
        double prev = 2.0;
        for (int t : {0, 1, 2, 4, 8, 10, 16}) {
            const double v = theoretical_pe(p, 8, t);
            CHECK(v <= prev);
            prev = v;
        }
    }
}

TEST_CASE("symbol/bit conversions") {
    CHECK(symbol_error_prob(1e-3, 8) ==
          doctest::Approx(0.007972055930055972).epsilon(1e-12));
    CHECK(symbol_error_prob(0.0, 8) == 0.0);
    CHECK(output_ber_estimate(1.0, 8) == doctest::Approx(128.0 / 255.0));
}

TEST_CASE("redundancy curves: t=0 is near-identity, columns monotone") {
    const double bers[] = {1e-5, 1e-4, 1e-3, 1e-2};
    const int ts[] = {0, 1, 2, 4, 8, 10, 16};
    auto rows = redundancy_curves(bers, ts, 8);
    REQUIRE(rows.size() == 28);

    for (const auto& r : rows) {
        if (r.t == 0) {
            // no correction: output within conversion round-off of input
            CHECK(r.output_estimate ==
                  doctest::Approx(r.input_ber).epsilon(0.3));
        }
    }
    // larger t gives smaller output at fixed input
    for (size_t i = 0; i + 1 < rows.size(); ++i)
        if (rows[i].input_ber == rows[i + 1].input_ber)
            CHECK(rows[i + 1].output_estimate <= rows[i].output_estimate);
}

TEST_CASE("curves CSV format") {
    const double bers[] = {1e-3};
    const int ts[] = {10};
    auto rows = redundancy_curves(bers, ts, 8);
    std::ostringstream os;
    write_curves_csv(os, rows);
    const std::string s = os.str();
    CHECK(s.rfind("input_ber,t,n,k,output_estimate\n", 0) == 0);
    CHECK(s.find(",10,255,235,") != std::string::npos);
}

TEST_CASE("cer table CSV") {
    const double bers[] = {1e-3, 1e-8};
    std::ostringstream os;
    write_cer_table_csv(os, bers);
    const std::string s = os.str();
    CHECK(s.rfind("ber,cer\n", 0) == 0);
    CHECK(s.find("0.31899942") != std::string::npos);
}
