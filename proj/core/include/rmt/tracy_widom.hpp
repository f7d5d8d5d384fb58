#pragma once

#include <vector>

namespace rmt {

struct AiryValue {
    double x = 0.0;
    double ai = 0.0;
    double ai_prime = 0.0;
};

// Ai and Ai' on the documented range |x| <= 40.
AiryValue airy(double x);

// closed-form tail integrals of the Airy function
double airy_sq_tail(double x);    // int_x^inf Ai(t)^2 dt
double airy_t_sq_tail(double x);  // int_x^inf t Ai(t)^2 dt
double airy_tail(double x);       // int_x^inf Ai(t) dt (quadrature)

// Hastings-McLeod solution of q'' = xq + 2q^3, q ~ Ai at +inf, on an
// ascending grid within [-10, 10]. Integrated backward from x0 = 8.
std::vector<double> hastings_mcleod(const std::vector<double>& grid, double x0 = 8.0);

struct TWTable {
    std::vector<double> grid;    // ascending s
    std::vector<double> q;       // Hastings-McLeod values
    std::vector<double> I;       // int_s^inf (t-s) q^2(t) dt
    std::vector<double> J;       // int_s^inf q(t) dt
    std::vector<double> q2int;   // int_s^inf q^2(t) dt  (= -dI/ds)
    std::vector<double> f1;      // F1(s) = exp(-(J+I)/2)
    std::vector<double> f2;      // F2(s) = exp(-I)
};

TWTable tw_table(const std::vector<double>& grid, double x0 = 8.0);

// default grid: uniform step 0.02 on [-10, 6]; built once and shared
const TWTable& default_tw_table();

// CDF evaluation from the table by cubic Hermite interpolation (derivative
// known analytically from q and the stored integrals).
double tw_cdf(const TWTable& table, double s, int beta);

// inverse CDF; throws when prob is outside the tabulated range
double tw_quantile(const TWTable& table, double prob, int beta);

}  // namespace rmt
