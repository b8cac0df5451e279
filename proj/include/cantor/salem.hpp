#pragma once

// Salem-type functions driven by a matrix P = ||p_{i,n}||:
// F(x) = beta_{e_1,1} + sum_{k>=2} beta_{e_k,k} prod_{j<k} p_{e_j,j}
// with optional digit reflection i -> q_n - 1 - i at even or odd levels.

#include "cantor/basis.hpp"
#include "cantor/codec.hpp"
#include "cantor/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

struct SalemMatrix {
    /// Column n holds p_{0,n}, ..., p_{q_n - 1,n}; columns from period_start
    /// (0-based) on repeat forever.
    std::vector<std::vector<Rational>> columns;
    std::size_t period_start = 0;

    /// A single column repeated at every level.
    static SalemMatrix constant(std::vector<Rational> column);

    /// Column at level n >= 1.
    const std::vector<Rational>& column(std::size_t n) const;
    int size_at(std::size_t n) const { return static_cast<int>(column(n).size()); }
    std::size_t preperiod_length() const { return period_start; }
    std::size_t period_length() const { return columns.size() - period_start; }
    /// max |p_{i,n}| over all levels.
    Rational bound() const;
    /// The base sequence q_n = column sizes, capped by its maximum.
    BaseSpec spec() const;
};

struct MatrixViolation {
    int condition = 0;  // 1..4
    std::size_t level = 0;
    std::optional<std::size_t> index;
    std::string message;
};

std::vector<MatrixViolation> validate_matrix(const SalemMatrix& p);
void require_valid_matrix(const SalemMatrix& p);

SalemMatrix parse_salem_matrix_json(std::string_view json_text);
std::string salem_matrix_to_json(const SalemMatrix& p);

enum class SwapMode {
    Plain,     // F
    EvenSwap,  // reflected at even levels
    OddSwap,   // reflected at odd levels
};

std::string to_string(SwapMode m);
SwapMode parse_swap_mode(std::string_view text);

/// The polarity of the representation each mode reads its digits from.
Polarity mode_polarity(SwapMode m);

/// beta_{i,n} = p_{0,n} + ... + p_{i-1,n}.
Rational beta(const SalemMatrix& p, int i, std::size_t n);

/// Digit after the mode's reflection at level n.
int reflect_digit(const SalemMatrix& p, SwapMode mode, int i, std::size_t n);

/// Value of the Salem-type function. Without m, Zeros/Periodic tails give the
/// exact sum and Truncated tails are evaluated through all known digits. With
/// m, the sum is cut after level m and the certified tail bound added; the
/// enclosures for increasing m are nested.
Enclosure eval_salem(const Representation& x, const SalemMatrix& p, SwapMode mode,
                     std::optional<std::size_t> m = std::nullopt);

/// x as printed for the reflected-at-even-levels family:
/// sum (1 + e_n) (-1)^{n+1} / (q_1...q_n).
Rational example2_decode(const Representation& x);

/// Value of x in the reading used by the mode (positive Cantor series,
/// example2_decode, or nega-q).
Rational mode_argument(const Representation& x, SwapMode mode);

enum class ProductLimit { ToZero, Nonzero, Divergent, Oscillating };
std::string to_string(ProductLimit c);

struct TheoremReport {
    bool alternation = false;  // p_{e,n} p_{e-1,n} < 0 for all n and e != 0
    std::optional<std::size_t> alternation_failure_level;
    ProductLimit first_column = ProductLimit::ToZero;  // prod q_k p_{0,k}
    ProductLimit last_column = ProductLimit::ToZero;   // prod q_k p_{q_k-1,k}
    Rational first_period_product;
    Rational last_period_product;
    bool limits_nonzero = false;
    /// q_n p_{q_n-1,n} >= 1 or q_n p_{q_n-1,n} <= 1 (always true).
    bool extra_condition = false;
    bool plain_hypotheses = false;    // alternation, limits, extra condition
    bool swapped_hypotheses = false;  // alternation, limits
};

TheoremReport theorem_conditions(const SalemMatrix& p);

struct QuotientSample {
    std::size_t n = 0;
    Rational dx;
    Rational dy;
    Rational quotient;
};

/// (F(x_n) - F(x0)) / (x_n - x0) where x_n changes digit n + 1 of x0 by one
/// (up when possible, down otherwise) and keeps every other digit.
std::vector<QuotientSample> difference_quotient_probe(const SalemMatrix& p, SwapMode mode, const Representation& x0,
                                                      std::size_t depth);

struct SalemCell {
    std::vector<int> base;
    Enclosure x;
    Enclosure y;
};

/// Plain mode: rank-m cylinders of the positive system with their image
/// enclosures, ordered by x.
std::vector<SalemCell> salem_graph_cells(const SalemMatrix& p, std::size_t depth,
                                         std::uint64_t max_cells = cell_budget());

}  // namespace cantor
