#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace linkenh {

// CER = 1 - (1 - p_e)^payload_bits, evaluated stably for tiny p_e.
double theoretical_cer(double p_e, int payload_bits = 384);

// Same quantity via the binomial sum; kept as the second algebraic route.
double theoretical_cer_sum(double p_e, int payload_bits = 384);

// Decoded symbol-error probability of an RS code over GF(2^m) with
// correction capability t, given channel symbol-error probability p:
//   P_E = (1/(2^m-1)) * sum_{j=t+1}^{2^m-1} j C(2^m-1,j) p^j (1-p)^(2^m-1-j)
// Tail terms are accumulated in the log domain with compensated summation.
double theoretical_pe(double p, int m, int t);

// channel bit error rate -> symbol error probability, p = 1-(1-ber)^m
double symbol_error_prob(double ber, int m);

// decoded symbol error probability -> output BER estimate,
// P_E * 2^(m-1)/(2^m-1) (average bit errors per errored symbol)
double output_ber_estimate(double pe_value, int m);

struct CurveRow {
    double input_ber;
    int t;
    int n;
    int k;
    double output_estimate;
};

// Output BER estimate sweep per (input BER, t).
std::vector<CurveRow> redundancy_curves(std::span<const double> ber_grid,
                                        std::span<const int> t_list,
                                        int m = 8);

// CSV: input_ber,t,n,k,output_estimate; one header row, deterministic order.
void write_curves_csv(std::ostream& os, std::span<const CurveRow> rows);

// CSV: ber,cer rows for the given grid.
void write_cer_table_csv(std::ostream& os, std::span<const double> bers);

} // namespace linkenh
