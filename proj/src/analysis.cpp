#include "linkenh/analysis.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace linkenh {

namespace {
void check_prob(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("probability outside [0,1]");
}

double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
           std::lgamma(n - k + 1.0);
}
} // namespace

double theoretical_cer(double p_e, int payload_bits) {
    check_prob(p_e);
    return -std::expm1(payload_bits * std::log1p(-p_e));
}

double theoretical_cer_sum(double p_e, int payload_bits) {
    check_prob(p_e);
    if (p_e == 0.0) return 0.0;
    if (p_e == 1.0) return 1.0;
    double sum = 0.0, c = 0.0; // Kahan
    for (int i = 1; i <= payload_bits; ++i) {
        const double lt = log_choose(payload_bits, i) + i * std::log(p_e) +
                          (payload_bits - i) * std::log1p(-p_e);
        const double y = std::exp(lt) - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double theoretical_pe(double p, int m, int t) {
    check_prob(p);
    const int n = (1 << m) - 1;
    if (t >= n)
        throw std::domain_error("theoretical_pe: t must be < 2^m - 1");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0; // only the j = n term survives: n/n
    double sum = 0.0, c = 0.0;
    for (int j = t + 1; j <= n; ++j) {
        const double lt = std::log(static_cast<double>(j)) +
                          log_choose(n, j) + j * std::log(p) +
                          (n - j) * std::log1p(-p);
        const double y = std::exp(lt) - c;
        const double tt = sum + y;
        c = (tt - sum) - y;
        sum = tt;
    }
    return sum / n;
}

double symbol_error_prob(double ber, int m) {
    check_prob(ber);
    return -std::expm1(m * std::log1p(-ber));
}

double output_ber_estimate(double pe_value, int m) {
    return pe_value * static_cast<double>(1 << (m - 1)) /
           static_cast<double>((1 << m) - 1);
}

std::vector<CurveRow> redundancy_curves(std::span<const double> ber_grid,
                                        std::span<const int> t_list, int m) {
    const int n = (1 << m) - 1;
    std::vector<CurveRow> rows;
    rows.reserve(ber_grid.size() * t_list.size());
    for (double ber : ber_grid) {
        const double p = symbol_error_prob(ber, m);
        for (int t : t_list) {
            CurveRow row;
            row.input_ber = ber;
            row.t = t;
            row.n = n;
            row.k = n - 2 * t;
            row.output_estimate = output_ber_estimate(theoretical_pe(p, m, t), m);
            rows.push_back(row);
        }
    }
    return rows;
}

void write_curves_csv(std::ostream& os, std::span<const CurveRow> rows) {
    os << "input_ber,t,n,k,output_estimate\n";
    for (const auto& r : rows) {
        os.precision(9);
        os << r.input_ber << ',' << r.t << ',' << r.n << ',' << r.k << ','
           << r.output_estimate << '\n';
    }
}

void write_cer_table_csv(std::ostream& os, std::span<const double> bers) {
    os << "ber,cer\n";
    os.precision(8);
    for (double b : bers)
        os << b << ',' << theoretical_cer(b) << '\n';
}

} // namespace linkenh
