#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

#include "camedit/image.hpp"

namespace camedit::stats {

/// 2x2 table of displacement classes between ordered pixel pairs:
///
///                 |dy| <= k   |dy| > k
///     |dx| <= k       a           b
///     |dx| >  k       c           d
struct ContingencyTable {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;
    std::uint64_t d = 0;

    std::uint64_t row1() const { return a + b; }
    std::uint64_t row2() const { return c + d; }
    std::uint64_t col1() const { return a + c; }
    std::uint64_t col2() const { return b + d; }
    std::uint64_t total() const { return a + b + c + d; }
    std::uint64_t min_cell() const;

    ContingencyTable transposed() const { return {a, c, b, d}; }

    friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

/// Thrown when a test needs nonzero margins and the table has a zero one.
class DegenerateTable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class TestMethod { chi_square, fisher };
enum class FisherMode { point, two_sided };

std::string_view to_string(TestMethod method);
FisherMode parse_fisher_mode(std::string_view text);
std::string_view to_string(FisherMode mode);

struct TestResult {
    double p = 1.0;
    double statistic = 0.0;  // chi-square value, or the point probability for Fisher
    TestMethod method = TestMethod::fisher;
    bool dependent = false;  // p < alpha
};

inline constexpr double kDefaultAlpha = 0.05;

/// Counts every ordered pair (P, Q), P != Q, so the total is m(m-1).
ContingencyTable build_table(std::span<const PixelCoord> points, int k);

double log_binomial(std::uint64_t n, std::uint64_t k);

/// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

/// Upper tail of the chi-square distribution with `df` degrees of freedom.
double chi_square_sf(double x, double df);

/// Pearson statistic with expected counts from the margins, no continuity correction.
double chi_square_statistic(const ContingencyTable& t);

/// Pearson test, 1 degree of freedom. Throws DegenerateTable on a zero margin.
TestResult chi_square_p(const ContingencyTable& t, double alpha = kDefaultAlpha);

/// Hypergeometric probability of the observed table given its margins.
double fisher_point_probability(const ContingencyTable& t);

/// p is the point probability itself.
TestResult fisher_point_p(const ContingencyTable& t, double alpha = kDefaultAlpha);

/// Sum over tables with the observed margins whose point probability does not
/// exceed the observed one (relative slack 1e-7).
TestResult fisher_two_sided(const ContingencyTable& t, double alpha = kDefaultAlpha);

/// Any cell below 5 goes to Fisher; otherwise (cells >= 5) chi-square.
TestResult independence_test(const ContingencyTable& t, double alpha = kDefaultAlpha,
                             FisherMode mode = FisherMode::point);

}  // namespace camedit::stats
