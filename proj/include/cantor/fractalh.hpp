#pragma once

// The run-decoding map h on nega-q digits: a block u^{a-1} a of the argument
// becomes the single digit a of the image, for a in {1, ..., q-1} \ {u}.

#include "cantor/codec.hpp"
#include "cantor/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace cantor {

struct FractalParams {
    int q = 4;
    int u = 0;

    /// {1, ..., q-1} \ {u}, ascending.
    std::vector<int> theta() const;
    int tau() const { return static_cast<int>(theta().size()); }
    bool allows(int alpha) const { return alpha >= 1 && alpha < q && alpha != u; }
    friend bool operator==(const FractalParams&, const FractalParams&) = default;
};

/// Throws std::invalid_argument unless q >= 4 and 0 <= u < q.
void require_valid(const FractalParams& p);

enum class RunTail { Periodic, Truncated };

struct RunDigits {
    FractalParams params;
    std::vector<int> alphas;
    RunTail tail = RunTail::Periodic;
    std::vector<int> tail_alphas;  // Periodic only

    int alpha_at(std::size_t n) const;  // n >= 1
    friend bool operator==(const RunDigits&, const RunDigits&) = default;
};

void validate_run_digits(const RunDigits& x);

/// Raw nega-q representation u^{a_1-1} a_1 u^{a_2-1} a_2 ...
Representation expand_runs(const RunDigits& x);

struct RunParse {
    std::optional<std::vector<int>> alphas;  // set on success
    std::size_t failure_position = 0;        // 1-based, on failure
    std::size_t pending_run = 0;             // trailing u-run not yet closed
    bool member() const { return alphas.has_value(); }
};

RunParse parse_run_structure(const std::vector<int>& raw, const FractalParams& params);

/// Inverse of expand_runs for raw representations that begin on a run
/// boundary; throws std::invalid_argument when raw is not in the run language.
RunDigits parse_runs(const Representation& raw, const FractalParams& params);

/// h(x): the nega-q representation with digits a_1 a_2 ...
Representation h_forward(const RunDigits& x);

struct HInverse {
    RunDigits x;
    Enclosure raw_value;     // decode of the expanded digits
    Enclosure closed_value;  // -u/(q+1) + sum (a_n - u) / (-q)^{a_1 + ... + a_n}
};

HInverse h_inverse(const Representation& y, const FractalParams& params);

/// -u/(q+1) + sum (a_n - u) / (-q)^{a_1 + ... + a_n}.
Enclosure h_inverse_closed_form(const RunDigits& x);

enum class DimensionMethod { MoranRoot, LogRatio, BoxSlope };
std::string to_string(DimensionMethod m);

struct DimensionResult {
    Enclosure value;
    DimensionMethod method = DimensionMethod::MoranRoot;
    /// MoranRoot: certified bound on |sum q^{-p a} - 1| at the midpoint.
    Rational residual;
    /// MoranRoot: enclosure of t = q^{-a0}, the root of sum_{p in theta} t^p = 1.
    std::optional<Enclosure> t;
};

/// Solution a0 of sum_{p in theta} q^{-p a0} = 1.
DimensionResult dim_D(const FractalParams& params, const Rational& tol);

/// True when sum q^{-p a} >= 1 at a = value.lo and <= 1 at a = value.hi,
/// checked with exact integer powers.
bool moran_brackets_one(const FractalParams& params, const DimensionResult& r);

/// log_q |theta|.
DimensionResult dim_E(const FractalParams& params, const Rational& tol);

enum class Monotonicity { Decreasing, Increasing, NonMonotone };
std::string to_string(Monotonicity m);
Monotonicity monotonicity_class(const FractalParams& params);

struct OrderPair {
    RunDigits a;
    RunDigits b;
    Rational xa, xb, ya, yb;
};

enum class ScanVerdict { Consistent, Inconsistent, Inconclusive };
std::string to_string(ScanVerdict v);

struct WitnessScan {
    Monotonicity expected = Monotonicity::Decreasing;
    std::size_t samples = 0;
    std::size_t ordered = 0;
    std::size_t anti_ordered = 0;
    std::optional<OrderPair> ordered_example;
    std::optional<OrderPair> anti_example;
    ScanVerdict verdict = ScanVerdict::Inconclusive;
};

/// Random periodic RunDigits (preperiod length <= 3, period length 1..3).
RunDigits random_run_digits(const FractalParams& params, std::mt19937_64& rng);

/// Compares x-order with h-order on random pairs and checks the result
/// against monotonicity_class.
WitnessScan monotonicity_witness_scan(const FractalParams& params, std::size_t samples, std::uint64_t seed = 1);

/// h(sigma^{a_1+...+a_n} x) - sigma^n(h x).
Enclosure shift_commutation_residual(const RunDigits& x, std::size_t n);

/// Number of rank-m covering rectangles (one per alpha prefix of length m).
Integer count_graph_squares(const FractalParams& params, std::size_t m, std::uint64_t max_cells = cell_budget());

struct Box {
    Enclosure x;
    Enclosure y;
};

/// Covering rectangles of the graph of h at rank m: the raw cylinder of the
/// run pattern times the image cylinder of the alphas, ordered by x.
std::vector<Box> h_graph_boxes(const FractalParams& params, std::size_t m, std::uint64_t max_cells = cell_budget());

/// Grid cells [ox + i s, ox + (i+1) s] x [oy + j s, oy + (j+1) s] meeting the
/// union of the boxes.
Integer count_grid_cells(const std::vector<Box>& boxes, const Rational& origin_x, const Rational& origin_y,
                         const Rational& side, std::uint64_t max_cells = cell_budget());

/// Slope of log N(m) against m log(base) between the first and last sample.
Enclosure box_slope(const std::vector<std::pair<std::size_t, Integer>>& counts, int base, const Rational& tol);

struct BoxDimension {
    DimensionResult result;
    std::vector<std::pair<std::size_t, Integer>> counts;
};

BoxDimension box_dim_estimate(const FractalParams& params, std::size_t m_lo, std::size_t m_hi,
                              const Rational& tol = Rational(1, 1000000000), std::uint64_t max_cells = cell_budget());

struct ProbeSample {
    std::size_t n = 0;
    Rational quotient;
    long predicted_exponent = 0;  // c_1 + ... + c_{n-1} + alt + c - n
    Rational predicted;           // (alt - c)/(alt (-q)^c - c (-q)^alt) (-q)^exponent
};

/// Difference quotients (h(x_n) - h(x_0)) / (x_n - x_0) where x_0 has alphas
/// prefix[0..n-1), c, tail and x_n has alt in place of c, n = 1..prefix.size()+1.
std::vector<ProbeSample> nondiff_probe_h(const std::vector<int>& prefix, int c, int alt, const FractalParams& params,
                                         const std::vector<int>& tail = {});

}  // namespace cantor
